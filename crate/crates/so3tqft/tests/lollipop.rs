use proptest::prelude::*;
use so3tqft::cyclo::{make_context, CycloElem};
use so3tqft::lollipop::{
    exponent_b, exponent_bsharp, graft, grafting_exponent, index_identity, oddity, tensor_rescale_exponent,
    LollipopTree, Node,
};
use so3tqft::recoupling::{admissible, RecouplingTable};

/// Count of colorings with even loop colors in `[0, p−3]` and every vertex
/// admissible: the other standard basis of the same space.
fn even_loop_count(tree: &LollipopTree, p: usize) -> usize {
    let g = tree.graph();
    let m = p as i64 - 2;
    let n = g.kinds.len();
    let mut colors = vec![-1i64; n];
    if g.trunk_forced_zero {
        colors[0] = 0;
    }
    for (e, k) in g.kinds.iter().enumerate() {
        if let so3tqft::lollipop::EdgeKind::PointEdge(k) = k {
            colors[e] = g.point_colors[*k];
        }
    }
    if let Some(c) = g.trunk_point {
        colors[0] = c;
    }
    if g.trunk_forced_zero && colors[0] > 0 {
        // A sphere with a single nonzero point carries no vectors.
        return 0;
    }
    fn rec(g: &so3tqft::lollipop::Graph, p: usize, m: i64, e: usize, colors: &mut Vec<i64>) -> usize {
        if e == colors.len() {
            let ok = g.vertices.iter().all(|v| admissible(p, colors[v[0]], colors[v[1]], colors[v[2]]));
            return usize::from(ok);
        }
        if colors[e] >= 0 {
            return rec(g, p, m, e + 1, colors);
        }
        let loop_edge = g.loop_edges.contains(&e);
        let mut total = 0;
        for c in 0..=m {
            if loop_edge && c % 2 == 1 {
                continue;
            }
            colors[e] = c;
            total += rec(g, p, m, e + 1, colors);
        }
        colors[e] = -1;
        total
    }
    rec(&g, p, m, 0, &mut colors)
}

/// Verlinde formula `Σ_j (Δ_j / D)^{2−2g} Π_k S_{c_k j}/Δ_j` over even `j`.
fn verlinde(p: u64, genus: i64, points: &[i64]) -> CycloElem {
    let ctx = make_context(p).unwrap();
    let t = RecouplingTable::new(&ctx);
    let dconst = ctx.d_const().clone();
    let mut acc = ctx.zero();
    for j in (0..=p as i64 - 3).step_by(2) {
        let dj = t.loop_value(j).unwrap();
        let mut term = (&dj / &dconst).powi(2 - 2 * genus).unwrap();
        for &c in points {
            term = &term * &t.encircle_eigenvalue(c, j).unwrap();
        }
        acc = &acc + &term;
    }
    acc
}

#[test]
fn known_dimensions() {
    assert_eq!(LollipopTree::torus().dim(5).unwrap(), 2);
    assert_eq!(LollipopTree::eyeglass().dim(5).unwrap(), 5);
    assert_eq!(LollipopTree::torus().dim(7).unwrap(), 3);
    for p in [5usize, 7, 11, 13] {
        let d = (p - 1) / 2;
        assert_eq!(LollipopTree::torus().dim(p).unwrap(), d);
        assert_eq!(LollipopTree::eyeglass().dim(p).unwrap(), d * (d + 1) * (2 * d + 1) / 6);
    }
    assert_eq!(LollipopTree::standard(0, &[]).dim(5).unwrap(), 1);
    assert_eq!(LollipopTree::standard(0, &[2]).dim(5).unwrap(), 0);
    assert_eq!(LollipopTree::standard(0, &[0]).dim(5).unwrap(), 1);
}

#[test]
fn enumeration_matches_dp_and_even_basis() {
    for p in [5usize, 7] {
        for genus in 0..=3 {
            for pts in [vec![], vec![2], vec![1, 1], vec![2, 2], vec![1, 3, 2], vec![1, 1, 1, 1]] {
                if genus == 0 && pts.is_empty() {
                    continue;
                }
                let tree = LollipopTree::standard(genus, &pts);
                let cols = tree.small_colorings(p).unwrap();
                let st = tree.stats(p).unwrap();
                assert_eq!(cols.len() as u128, st.dim, "{tree} p={p}");
                assert_eq!(cols.len(), even_loop_count(&tree, p), "{tree} p={p}");
                let n: i64 = cols.iter().map(exponent_b).sum();
                let ns: i64 = cols.iter().map(exponent_bsharp).sum();
                assert_eq!((n as i128, ns as i128), (st.n, st.n_sharp));
            }
        }
    }
    let t = LollipopTree::tripod();
    assert_eq!(t.small_colorings(7).unwrap().len(), even_loop_count(&t, 7));
}

#[test]
fn verlinde_agrees() {
    for p in [5u64, 7, 11] {
        for genus in 0..=3i64 {
            for pts in [vec![], vec![2], vec![1, 1], vec![2, 2, 2], vec![1, 2, 3]] {
                if genus == 0 && pts.len() < 2 {
                    continue;
                }
                let tree = LollipopTree::standard(genus as usize, &pts);
                let dim = tree.dim(p as usize).unwrap();
                let v = verlinde(p, genus, &pts);
                assert_eq!(v.as_rational(), Some(num_rational::BigRational::from_integer((dim as i64).into())), "{tree} p={p}");
            }
        }
    }
}

#[test]
fn exponent_examples() {
    let eye = LollipopTree::eyeglass().small_colorings(5).unwrap();
    let c = eye.iter().find(|c| c.a == vec![1, 1] && c.b == vec![0, 0]).unwrap();
    assert_eq!((exponent_b(c), exponent_bsharp(c)), (1, 1));
    let tor = LollipopTree::torus().small_colorings(5).unwrap();
    assert_eq!(tor.iter().map(|c| (exponent_b(c), exponent_bsharp(c))).collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
    let id = index_identity(&LollipopTree::torus(), 5).unwrap();
    assert_eq!((id.n, id.n_sharp, id.rhs, id.holds), (1, 1, 2, true));
    let id = index_identity(&LollipopTree::eyeglass(), 5).unwrap();
    assert_eq!((id.n, id.n_sharp, id.rhs, id.holds), (5, 5, 10, true));
    let id = index_identity(&LollipopTree::standard(0, &[1, 1]), 5).unwrap();
    assert_eq!((id.n, id.n_sharp, id.rhs), (0, 0, 0));
}

#[test]
fn oddity_rules() {
    // Genus two with one point colored 2 at p = 5.
    let tree = LollipopTree::standard(2, &[2]);
    let cols = tree.small_colorings(5).unwrap();
    let odd: Vec<_> = cols.iter().filter(|c| oddity(c, 5) == 1).collect();
    assert!(!odd.is_empty());
    assert!(odd.iter().all(|c| c.e == 1 && c.a == vec![1, 1]));
    for c in LollipopTree::torus().small_colorings(7).unwrap() {
        assert_eq!(oddity(&c, 7), 0);
    }
    // Nontrivial oddity occurs exactly for genus ≥ 2 and point colors summing to ≥ p − 3.
    for p in [5usize, 7] {
        for genus in 1..=3 {
            for pts in [vec![2], vec![1, 1], vec![2, 2], vec![4], vec![1, 3], vec![3, 3], vec![2, 4]] {
                if pts.iter().any(|&c| c > p as i64 - 2) {
                    continue;
                }
                let tree = LollipopTree::standard(genus, &pts);
                let any = tree.small_colorings(p).unwrap().iter().any(|c| oddity(c, p) == 1);
                if any {
                    assert!(genus >= 2 && pts.iter().sum::<i64>() >= p as i64 - 3, "{tree} p={p}");
                }
                if genus >= 2 && pts == [p as i64 - 3] {
                    assert!(any, "{tree} p={p}");
                }
            }
        }
    }
    let odd1 = odd[0].clone();
    assert_eq!(tensor_rescale_exponent(&[odd1.clone(), odd1.clone()], 5), 1);
    assert_eq!(tensor_rescale_exponent(&[odd1.clone(), odd1.clone(), odd1.clone()], 5), 1);
    assert_eq!(tensor_rescale_exponent(&cols[..1], 5), 0);
}

#[test]
fn grafting() {
    let d = 2;
    assert_eq!(grafting_exponent(0, 0, &[(0, 0), (0, 0)], 5), d - 1);
    assert_eq!(grafting_exponent(4, 0, &[(2, 1), (2, 1)], 5), -1);
    let t1 = LollipopTree::standard(2, &[2]);
    let g = graft(&[t1.clone(), t1.clone()]).unwrap();
    assert_eq!((g.genus(), g.points()), (4, 2));
    assert!(graft(&[LollipopTree::eyeglass(), t1]).is_err());
    // p = 7, n = 3: E ≥ 0 for every admissible choice of (A_i, e_i) and e.
    let d = 3;
    for a1 in 0..=6 {
        for e1 in 0..d {
            for a2 in 0..=6 {
                for e2 in 0..d {
                    for a3 in 0..=6 {
                        for e3 in 0..d {
                            if e1 > a1 || e2 > a2 || e3 > a3 {
                                continue;
                            }
                            for e in 0..d {
                                let a = a1 + a2 + a3;
                                assert!(grafting_exponent(a, e, &[(a1, e1), (a2, e2), (a3, e3)], 7) >= 0);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn text_round_trip() {
    for s in ["L;-", "(L L);-", "(L (L L));-", "((L L) L);((1 1) 2)", "-;(1 1)", "L;2"] {
        let t: LollipopTree = s.parse().unwrap();
        assert_eq!(t.to_string(), s);
    }
    assert!("(L 2);-".parse::<LollipopTree>().is_err());
    assert_eq!(LollipopTree::figure_one().genus(), 5);
    assert_eq!(LollipopTree::figure_one().points(), 6);
}

fn arb_tree() -> impl Strategy<Value = LollipopTree> {
    let loops = prop_oneof![Just(0usize), Just(1), Just(2), Just(3)];
    let pts = prop::collection::vec(0i64..=5, 0..=3);
    (loops, pts, any::<bool>()).prop_map(|(g, pts, bal)| {
        let mut t = LollipopTree::standard(g, &pts);
        if bal && g == 3 {
            t.loop_side = Some(Node::join(Node::Loop, Node::join(Node::Loop, Node::Loop)));
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn involution_preserves_colorings(tree in arb_tree()) {
        let p = 7;
        let d = 3;
        let cols = tree.small_colorings(p).unwrap();
        let set: std::collections::BTreeSet<_> = cols.iter().map(|c| (c.a.clone(), c.b.clone(), c.c.clone())).collect();
        for c in &cols {
            let b2: Vec<i64> = c.a.iter().zip(&c.b).map(|(a, b)| d - 1 - a - b).collect();
            prop_assert!(set.contains(&(c.a.clone(), b2, c.c.clone())));
            prop_assert!(exponent_b(c) >= 0 && exponent_bsharp(c) >= 0);
            prop_assert!(c.e <= c.a_sum());
        }
        prop_assert!(index_identity(&tree, p).unwrap().holds);
    }
}
