use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use so3tqft::cyclo::make_context;
use so3tqft::planar::{shapes, Morse};
use so3tqft::recoupling::RecouplingTable;

fn tet_inputs(m: i64) -> Vec<[i64; 6]> {
    let mut v = Vec::new();
    for a in 0..=m {
        for b in 0..=m {
            for e in 0..=m {
                for c in 0..=m {
                    for d in 0..=m {
                        for f in 0..=m {
                            v.push([a, b, e, c, d, f]);
                        }
                    }
                }
            }
        }
    }
    v
}

#[test]
fn exhaustive_planar_oracle_p5() {
    let ctx = make_context(5).unwrap();
    let t = RecouplingTable::new(&ctx);
    let m = 3;
    for n in 0..=m {
        assert_eq!(shapes::unknot(n, 0).bracket(&ctx).unwrap(), t.loop_value(n).unwrap());
        let curl = shapes::unknot(n, 1).bracket(&ctx).unwrap();
        assert_eq!(curl, &t.twist(n).unwrap() * &t.loop_value(n).unwrap());
        for j in 0..=m {
            assert_eq!(shapes::hopf(n, j).bracket(&ctx).unwrap(), t.hopf_entry(n, j).unwrap());
            for k in 0..=m {
                assert_eq!(shapes::theta(n, j, k).bracket(&ctx).unwrap(), t.theta(n, j, k).unwrap(), "theta {n} {j} {k}");
            }
        }
    }
    for [a, b, e, c, d, f] in tet_inputs(m) {
        let g = shapes::tetrahedron(a, b, e, c, d, f).bracket(&ctx).unwrap();
        assert_eq!(g, t.tet(a, b, e, c, d, f).unwrap(), "tet {a} {b} {e} {c} {d} {f}");
    }
}

#[test]
fn random_planar_oracle_p7() {
    let ctx = make_context(7).unwrap();
    let t = RecouplingTable::new(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 50 {
        let x: [i64; 6] = std::array::from_fn(|_| rng.gen_range(0..=5));
        let [a, b, e, c, d, f] = x;
        let triples = [(a, d, e), (b, c, e), (a, b, f), (c, d, f)];
        if !triples.iter().all(|&(u, v, w)| t.admissible(u, v, w)) {
            continue;
        }
        done += 1;
        let g = shapes::tetrahedron(a, b, e, c, d, f).bracket(&ctx).unwrap();
        assert_eq!(g, t.tet(a, b, e, c, d, f).unwrap(), "tet {x:?}");
        assert_eq!(shapes::theta(a, d, e).bracket(&ctx).unwrap(), t.theta(a, d, e).unwrap());
        assert_eq!(shapes::hopf(a, b).bracket(&ctx).unwrap(), t.hopf_entry(a, b).unwrap());
        assert_eq!(shapes::unknot(c, 1).bracket(&ctx).unwrap(), &t.twist(c).unwrap() * &t.loop_value(c).unwrap());
        assert_eq!(shapes::unknot(f, 0).bracket(&ctx).unwrap(), t.loop_value(f).unwrap());
    }
}

fn h_tangle(a: i64, b: i64, j: i64, c: i64, d: i64) -> so3tqft::planar::ColoredDiagram {
    let mut m = Morse::with_bottom(&[(a, None), (b, None)]);
    m.merge(0, j, None).split(0, (d, None), (c, None));
    m.finish()
}

fn i_tangle(a: i64, b: i64, i: i64, c: i64, d: i64) -> so3tqft::planar::ColoredDiagram {
    let mut m = Morse::with_bottom(&[(a, None), (b, None)]);
    m.split(0, (d, None), (i, None)).merge(1, c, None);
    m.finish()
}

#[test]
fn sixj_recouples_tangles() {
    for p in [5usize, 7] {
        let ctx = make_context(p as u64).unwrap();
        let t = RecouplingTable::new(&ctx);
        let m = p as i64 - 2;
        let mut checked = 0;
        for [a, b, c, d] in (0..(m + 1).pow(4)).map(|n| {
            let k = m + 1;
            [n % k, n / k % k, n / k / k % k, n / k / k / k]
        }) {
            if (a + b + c + d) % 2 != 0 || [a + b, c + d, a + d, b + c].iter().any(|&s| s > m) {
                continue;
            }
            for j in 0..=m {
                if !t.admissible(a, b, j) || !t.admissible(c, d, j) {
                    continue;
                }
                let lhs = h_tangle(a, b, j, c, d).bracket_relative(&ctx).unwrap();
                let mut rhs = so3tqft::planar::TLVector::zero(lhs.points);
                for i in 0..=m {
                    let coeff = t.sixj(a, b, i, c, d, j).unwrap();
                    if coeff.is_zero() {
                        continue;
                    }
                    let v = i_tangle(a, b, i, c, d).bracket_relative(&ctx).unwrap();
                    rhs = rhs.add(&v.scale(&coeff));
                }
                assert_eq!(lhs, rhs, "p={p} {a} {b} {j} {c} {d}");
                checked += 1;
            }
        }
        assert!(checked > 10, "{checked}");
    }
}
