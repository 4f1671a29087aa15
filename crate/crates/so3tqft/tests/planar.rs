use so3tqft::cyclo::make_context;
use so3tqft::planar::{shapes, ColoredDiagram, Morse};
use so3tqft::recoupling::RecouplingTable;

#[test]
fn basic_brackets() {
    let ctx = make_context(5).unwrap();
    assert!(ColoredDiagram::new().bracket(&ctx).unwrap().is_one());
    let u = shapes::unknot(1, 0).bracket(&ctx).unwrap();
    assert_eq!(u, -(&ctx.zeta() + &ctx.zeta_pow(-1)));
    let t = RecouplingTable::new(&ctx);
    for n in 0..=3 {
        assert_eq!(shapes::unknot(n, 0).bracket(&ctx).unwrap(), t.loop_value(n).unwrap(), "loop {n}");
    }
}

#[test]
fn curls() {
    let ctx = make_context(7).unwrap();
    let t = RecouplingTable::new(&ctx);
    for n in 0..=3 {
        for f in [-1i64, 1, 2] {
            let v = shapes::unknot(n, f).bracket(&ctx).unwrap();
            let expect = &t.twist(n).unwrap().powi(f).unwrap() * &t.loop_value(n).unwrap();
            assert_eq!(v, expect, "n={n} f={f}");
        }
    }
    let mut m = Morse::new();
    m.cup(0, 1, None).twist(0, true).cap(0);
    let v = m.finish().bracket(&ctx).unwrap();
    assert_eq!(v, &t.twist(1).unwrap() * &t.loop_value(1).unwrap());
}

#[test]
fn hopf_and_theta_small() {
    let ctx = make_context(5).unwrap();
    let t = RecouplingTable::new(&ctx);
    for i in 0..=3 {
        for j in 0..=3 {
            assert_eq!(shapes::hopf(i, j).bracket(&ctx).unwrap(), t.hopf_entry(i, j).unwrap(), "hopf {i} {j}");
        }
    }
    assert_eq!(shapes::theta(1, 1, 2).bracket(&ctx).unwrap(), t.theta(1, 1, 2).unwrap());
    assert_eq!(shapes::face_count(&shapes::tetrahedron(1, 1, 1, 1, 1, 1)), 4);
}

#[test]
fn three_ball_lemma_identities() {
    use so3tqft::planar::tangles::check_lemmas;
    for p in [5, 7] {
        let ctx = make_context(p).unwrap();
        let r = check_lemmas(&ctx, 5, 2024).unwrap();
        assert!(r.crossing_expansion, "{r:?}");
        assert!(r.ibar_expansion, "{r:?}");
        assert!(r.two_y_identity, "{r:?}");
    }
}
