use so3tqft::cyclo::{make_context, IdealRing};
use so3tqft::fkb::{
    embedding_obstruction, fkb_generators, fkb_generators_signed, fkb_ideal, fkb_ideal_by_intersection, fkb_report,
    ideal_from_generators, one_plus_two_zeta_cubed, KnotInSolidTorus,
};
use so3tqft::ideal::IdealLattice;
use so3tqft::recoupling::RecouplingTable;

fn table5() -> RecouplingTable {
    RecouplingTable::new(&make_context(5).unwrap())
}

#[test]
fn l9a12_ideal_by_framing() {
    let t = table5();
    let ctx = t.ctx();
    let target = one_plus_two_zeta_cubed(ctx);
    assert_eq!(target.index().unwrap(), 11.into());
    let n = KnotInSolidTorus::l9a12(0);
    for k in 1..=10 {
        let j = fkb_ideal(&n.with_framing(k), &t, true).unwrap();
        if k % 5 == 0 {
            assert_eq!(j, target, "k={k}");
            assert_eq!(j.index().unwrap(), 11.into());
            assert!(embedding_obstruction(&j, &ctx.one()));
        } else {
            assert!(j.is_unit(), "k={k}");
            assert!(!embedding_obstruction(&j, &ctx.one()));
        }
    }
}

#[test]
fn linking_number_is_two() {
    let n = KnotInSolidTorus::l9a12(0);
    assert_eq!(n.diagram.linking(n.axis, n.surgery.unwrap()).unwrap().abs(), 2);
}

#[test]
fn mirror_gives_conjugate_ideal() {
    let t = table5();
    let ctx = t.ctx();
    let n = KnotInSolidTorus::l9a12(5).mirror();
    let j = fkb_ideal(&n, &t, true).unwrap();
    let g = &ctx.one() + &ctx.zeta_pow(2).scale_int(&2.into());
    assert_eq!(j, IdealLattice::from_generators(ctx, &[g], IdealRing::OPlus).unwrap());
    assert_ne!(j, one_plus_two_zeta_cubed(ctx));
}

#[test]
fn generators_split_and_are_integral() {
    let t = table5();
    for k in [1, 2, 5, -3] {
        let r = fkb_report(&KnotInSolidTorus::l9a12(k), &t, true).unwrap();
        assert!(r.generators_in_oplus_or_i_oplus, "k={k}");
        assert_eq!(r.generators.len(), 2);
    }
}

#[test]
fn ideal_ignores_sign_of_d() {
    let t = table5();
    for k in [0, 3, 5, -5] {
        let n = KnotInSolidTorus::l9a12(k);
        let a = ideal_from_generators(t.ctx(), &fkb_generators_signed(&n, &t, 1).unwrap(), true).unwrap();
        let b = ideal_from_generators(t.ctx(), &fkb_generators_signed(&n, &t, -1).unwrap(), true).unwrap();
        assert_eq!(a, b, "k={k}");
    }
}

#[test]
fn twist_route_matches_intersection() {
    let t = table5();
    for k in [1, 4, 5, 10] {
        let n = KnotInSolidTorus::l9a12(k);
        assert_eq!(fkb_ideal(&n, &t, true).unwrap(), fkb_ideal_by_intersection(&n, &t).unwrap(), "k={k}");
    }
}

#[test]
fn ideal_ignores_generator_order_and_units() {
    let t = table5();
    let ctx = t.ctx();
    let mut g = fkb_generators(&KnotInSolidTorus::l9a12(5), &t).unwrap();
    let a = ideal_from_generators(ctx, &g, false).unwrap();
    g.reverse();
    g[0] = &g[0] * &ctx.zeta4p_pow(7);
    assert_eq!(a, ideal_from_generators(ctx, &g, false).unwrap());
}

#[test]
fn solid_torus_is_unit() {
    for p in [5, 7] {
        let t = RecouplingTable::new(&make_context(p).unwrap());
        let n = KnotInSolidTorus::solid_torus();
        let g = fkb_generators(&n, &t).unwrap();
        assert!(g[0].is_one());
        assert!(fkb_ideal(&n, &t, true).unwrap().is_unit());
    }
}

#[test]
fn generators_at_p7() {
    let t = RecouplingTable::new(&make_context(7).unwrap());
    let j = fkb_ideal(&KnotInSolidTorus::l9a12(7), &t, true).unwrap();
    assert!(!j.is_zero());
}
