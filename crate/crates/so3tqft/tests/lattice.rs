use so3tqft::cyclo::{make_context, CycloElem, PrimeContext};
use so3tqft::lattice::{det_valuation, GramMethod, HandlebodyVector, HoleCurve, Space};
use so3tqft::linalg;
use so3tqft::lollipop::{LollipopTree, SmallColoring};

fn space(tree: &LollipopTree, p: u64) -> Space {
    Space::new(tree, &make_context(p).unwrap()).unwrap()
}

fn find(s: &Space, f: impl Fn(&SmallColoring) -> bool) -> usize {
    s.colorings.iter().position(f).expect("coloring")
}

/// `Z = S Λ S⁻¹` with `Λ = diag(S_{1j}/S_{0j})`, from pairing against the
/// complementary solid torus.
fn hopf_solve_z(s: &Space) -> Vec<Vec<CycloElem>> {
    let t = s.table();
    let ctx = s.ctx();
    let d = ctx.d();
    let sm = t.hopf_matrix().unwrap();
    let inv = linalg::inverse(&sm, &ctx.one()).unwrap();
    let lam: Vec<Vec<CycloElem>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        &sm[1][j] / &sm[0][j]
                    } else {
                        ctx.zero()
                    }
                })
                .collect()
        })
        .collect();
    linalg::mat_mul(&linalg::mat_mul(&sm, &lam, &ctx.zero()), &inv, &ctx.zero())
}

#[test]
fn torus_z_matrix_matches_hopf_solve() {
    for p in [5, 7, 11] {
        let s = space(&LollipopTree::torus(), p);
        let z = hopf_solve_z(&s);
        for i in 0..s.dim() {
            let img = s.z_multiply(&s.basis_vector(i), 0).unwrap();
            assert_eq!(img.coords, z[i], "p={p} e_{i}");
        }
    }
}

#[test]
fn z_commutes_across_holes() {
    let s = space(&LollipopTree::eyeglass(), 7);
    for i in 0..s.dim() {
        let v = s.basis_vector(i);
        let (Ok(a), Ok(b)) = (s.z_multiply(&v, 0), s.z_multiply(&v, 1)) else { continue };
        if let (Ok(x), Ok(y)) = (s.z_multiply(&a, 1), s.z_multiply(&b, 0)) {
            assert_eq!(x, y);
        }
    }
}

#[test]
fn inadmissible_branch_dropped() {
    let s = space(&LollipopTree::eyeglass(), 7);
    let i = find(&s, |c| c.a == vec![1, 1] && c.b == vec![0, 0]);
    let img = s.z_multiply(&s.basis_vector(i), 0).unwrap();
    let supp = img.support();
    assert_eq!(supp.len(), 1);
    assert_eq!(s.colorings[supp[0]].loop_colors(), vec![2, 1]);
}

#[test]
fn surgery_gram_matches_fusion() {
    for (tree, p) in [(LollipopTree::torus(), 5), (LollipopTree::torus(), 7), (LollipopTree::eyeglass(), 5)] {
        let s = space(&tree, p);
        let f = s.gram_graph_diagonal(GramMethod::Fusion).unwrap();
        let g = s.gram_graph_diagonal(GramMethod::Surgery).unwrap();
        assert_eq!(f, g, "{tree} p={p}");
        for x in &f {
            assert_eq!(s.ctx().h_valuation(x).unwrap(), Some((s.genus() * (s.ctx().d() - 1)) as u32));
        }
    }
    let s = space(&LollipopTree::torus(), 5);
    for x in s.gram_graph_diagonal(GramMethod::Fusion).unwrap() {
        assert_eq!(&x, s.ctx().d_const());
    }
}

#[test]
fn surgery_graph_basis_is_orthogonal() {
    let s = space(&LollipopTree::eyeglass(), 5);
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            if i != j {
                assert!(s.surgery_pairing(i, j, &[]).unwrap().is_zero(), "{i} {j}");
            }
        }
    }
}

#[test]
fn z_coefficients_match_surgery() {
    for p in [5, 7] {
        let s = space(&LollipopTree::eyeglass(), p);
        for i in 0..s.dim() {
            let v = s.basis_vector(i);
            for hole in 0..2 {
                let Ok(z) = s.z_multiply(&v, hole) else { continue };
                let w = s.curve_multiply_surgery(&v, HoleCurve::Hole(hole)).unwrap();
                assert_eq!(z, w, "p={p} {:?} hole {hole}", s.colorings[i]);
            }
        }
    }
}

fn check_duality(tree: &LollipopTree, p: u64) {
    let s = space(tree, p);
    let ctx = s.ctx().clone();
    let g = s.gram_graph(GramMethod::Fusion).unwrap();
    let expect = (s.genus() * (ctx.d() - 1) * s.dim()) as u32;
    assert_eq!(det_valuation(&ctx, &g).unwrap(), Some(expect), "{tree} p={p}");
    let gb = s.gram_b().unwrap();
    assert!(gb.all_in_o(), "{tree} p={p}: Gram(B) not integral");
    assert!(gb.is_hermitian());
    let dp = s.dual_pairing().unwrap();
    assert!(dp.all_in_o(), "{tree} p={p}: pairing not integral");
    assert!(ctx.is_unit(&dp.det(&ctx).unwrap()).unwrap(), "{tree} p={p}: det not a unit");
}

#[test]
fn duality_torus() {
    check_duality(&LollipopTree::torus(), 5);
    check_duality(&LollipopTree::torus(), 7);
    check_duality(&LollipopTree::torus(), 11);
}

#[test]
fn duality_eyeglass() {
    check_duality(&LollipopTree::eyeglass(), 5);
    check_duality(&LollipopTree::eyeglass(), 7);
}

#[test]
fn duality_other_trees() {
    check_duality(&"(L L);-".parse().unwrap(), 5);
    check_duality(&"L;(2 2)".parse().unwrap(), 5);
    check_duality(&"(L L);(2 2)".parse().unwrap(), 5);
    check_duality(&LollipopTree::tripod(), 5);
}

#[test]
fn bases_are_triangular() {
    let s = space(&LollipopTree::eyeglass(), 7);
    let b = s.basis_b().unwrap();
    let bs = s.basis_bsharp().unwrap();
    for (k, col) in s.colorings.iter().enumerate() {
        for v in [&b[k], &bs[k]] {
            for j in v.support() {
                let c = &s.colorings[j];
                assert_eq!(c.a, col.a);
                assert!(c.b.iter().zip(&col.b).all(|(x, y)| x <= y));
            }
        }
        // b♯ = h^{-n} b with n = e or e + 1.
        let n = if col.is_odd() { col.e + 1 } else { col.e };
        let ratio = b[k].scale(&s.ctx().h_inv().powi(n).unwrap());
        assert_eq!(ratio, bs[k]);
    }
}

#[test]
fn genus_one_basis_is_powers_of_v() {
    let ctx = make_context(7).unwrap();
    let s = Space::new(&LollipopTree::torus(), &ctx).unwrap();
    let b = s.basis_b().unwrap();
    let mut v = s.basis_vector(0);
    for (k, bk) in b.iter().enumerate() {
        assert_eq!(bk, &v, "v^{k}");
        v = s.v_multiply(&v, 0).unwrap();
    }
}

fn vacuum(s: &Space) -> HandlebodyVector {
    s.basis_vector(find(s, |c| c.loop_colors().iter().all(|&l| l == 0)))
}

#[test]
fn eyeglass_expansion_identity() {
    for p in [5, 7] {
        let s = space(&LollipopTree::eyeglass(), p);
        let ctx: PrimeContext = s.ctx().clone();
        let h = ctx.h();
        let one = vacuum(&s);
        let v1 = s.v_multiply(&one, 0).unwrap();
        let v2 = s.v_multiply(&one, 1).unwrap();
        let v1v2 = s.v_multiply(&v1, 1).unwrap();
        let z12 = s.curve_multiply_surgery(&one, HoleCurve::Both).unwrap();
        let v12 = z12.add(&one.scale(&ctx.int(2))).scale(ctx.h_inv());
        let inner = v1v2
            .scale(&(&h * &h))
            .add(&v1.scale(&(&h * &ctx.int(-2))))
            .add(&v2.scale(&(&h * &ctx.int(-2))))
            .add(&one.scale(&(&(&h * &h) * &ctx.zeta_pow(-1)).scale_int(&(-2).into())));
        let rhs = v12.scale(&h).add(&inner.scale(&ctx.qint(2).inverse().unwrap()));
        let lhs = s.basis_vector(find(&s, |c| c.a == vec![1, 1] && c.b == vec![0, 0]));
        assert_eq!(lhs, rhs, "p={p}");
    }
}

/// `x ∈ S` iff `(x, b♯) ∈ O` for every `b♯ ∈ B♯`.
fn in_lattice(s: &Space, x: &HandlebodyVector) -> bool {
    let diag = s.gram_graph_diagonal(GramMethod::Fusion).unwrap();
    s.basis_bsharp().unwrap().iter().all(|y| s.pairing(&diag, x, y).in_o())
}

#[test]
fn eyeglass_and_tripod_divisible_by_h() {
    let s = space(&LollipopTree::eyeglass(), 5);
    let g = s.basis_vector(find(&s, |c| c.a == vec![1, 1] && c.b == vec![0, 0]));
    assert!(in_lattice(&s, &g.scale(s.ctx().h_inv())));
    assert!(!in_lattice(&s, &g.scale(&s.ctx().h_inv().pow(2))));
    let s = space(&LollipopTree::tripod(), 5);
    let g = s.basis_vector(find(&s, |c| c.a == vec![1, 1, 1] && c.b == vec![0, 0, 0]));
    assert!(in_lattice(&s, &g.scale(s.ctx().h_inv())));
}

#[test]
fn vgraphs_pair_integrally() {
    for (tree, p) in [(LollipopTree::eyeglass(), 5), (LollipopTree::eyeglass(), 7), (LollipopTree::tripod(), 5)] {
        let s = space(&tree, p);
        for v in s.vgraph_sample(20, 5).unwrap() {
            assert!(in_lattice(&s, &v), "{tree} p={p}");
        }
    }
}

#[test]
fn torsion_eyeglass_p7() {
    let s = space(&LollipopTree::eyeglass(), 7);
    let r = s.torsion_report().unwrap();
    assert_eq!(r.radical_dim, s.colorings.iter().filter(|c| c.is_odd()).count());
    assert!(r.symmetric);
    assert!(r.holds());
}

#[test]
fn torsion_tripod_p7() {
    let s = space(&LollipopTree::tripod(), 7);
    let r = s.torsion_report().unwrap();
    assert!(r.odd_colorings > 0);
    assert_eq!(r.radical_dim, r.odd_colorings);
    assert!(r.symmetric && r.skew && r.skew_nondegenerate, "{r:?}");
}

#[test]
fn torsion_genus_one_p7() {
    let r = space(&LollipopTree::torus(), 7).torsion_report().unwrap();
    assert_eq!(r.radical_dim, 0);
    assert!(r.holds());
}
