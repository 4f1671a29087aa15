use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use so3tqft::cyclo::{make_context, CycloElem, IdealRing, RingKind};
use so3tqft::ideal::IdealLattice;

#[test]
fn contexts() {
    let c5 = make_context(5).unwrap();
    assert_eq!((c5.ring_kind(), c5.degree(), c5.d()), (RingKind::ZZeta4P, 8, 2));
    let c7 = make_context(7).unwrap();
    assert_eq!((c7.ring_kind(), c7.degree(), c7.d()), (RingKind::ZZetaP, 6, 3));
    assert!(make_context(4).is_err());
    assert!(make_context(3).is_err());
    assert!(make_context(9).is_err());
}

#[test]
fn conj_of_h() {
    for p in [5, 7, 11, 13] {
        let ctx = make_context(p).unwrap();
        let h = ctx.h();
        assert_eq!(h.conj(), -(&ctx.zeta_pow(-1) * &h));
        assert_eq!(ctx.i().conj(), -ctx.i());
    }
}

#[test]
fn two_minus_q2() {
    let ctx = make_context(5).unwrap();
    let x = &ctx.int(2) - &ctx.qint(2);
    let h = ctx.h();
    assert_eq!(x, -(&ctx.zeta_pow(-1) * &(&h * &h)));
    assert_eq!(ctx.h_valuation(&x).unwrap(), Some(2));
}

#[test]
fn valuations() {
    for p in [5u64, 7, 11, 13] {
        let ctx = make_context(p).unwrap();
        assert_eq!(ctx.h_valuation(&ctx.int(p as i64)).unwrap(), Some(p as u32 - 1));
        for n in 1..=p as i64 - 2 {
            assert_eq!(ctx.h_valuation(&ctx.qint(n)).unwrap(), Some(0));
        }
        assert_eq!(ctx.h_valuation(&ctx.zero()).unwrap(), None);
        assert!(ctx.h_valuation(ctx.h_inv()).is_err());
    }
}

#[test]
fn units() {
    let ctx = make_context(5).unwrap();
    let a4 = ctx.a_pow(4);
    let x = &(&a4 - &ctx.one()) + &ctx.a_pow(-4);
    assert!(ctx.is_unit(&x).unwrap());
    assert!(!ctx.is_unit(&ctx.h()).unwrap());
    let y = ctx.from_zeta_coeffs(&[1, 0, 0, 2]);
    assert!(!ctx.is_unit(&y).unwrap());
    assert_eq!(ctx.norm_p(&y).unwrap(), BigRational::from_integer(BigInt::from(11)));
}

#[test]
fn a_is_primitive_2p_root() {
    for p in [5u64, 7, 11, 13] {
        let ctx = make_context(p).unwrap();
        let a = ctx.a_pow(1);
        assert_eq!(a.pow(2), ctx.zeta());
        assert!(a.pow(2 * p as u32).is_one());
        assert!(!a.pow(p as u32).is_one());
        assert!(!a.pow(2).is_one());
    }
}

#[test]
fn d_constant() {
    for p in [5u64, 7, 11, 13] {
        let ctx = make_context(p).unwrap();
        let d = ctx.d_const().clone();
        let s = &ctx.zeta() - &ctx.zeta_pow(-1);
        let rhs = (-ctx.int(p as i64)) / (&s * &s);
        assert_eq!(&d * &d, rhs);
        assert!(d.in_o());
        assert_eq!(ctx.h_valuation(&d).unwrap(), Some(ctx.d() as u32 - 1));
        let (re, im) = d.approx();
        assert!(re > 0.0 && im.abs() < 1e-9);
    }
}

#[test]
fn ideals() {
    let ctx = make_context(5).unwrap();
    let zero = IdealLattice::from_generators(&ctx, &[ctx.zero()], IdealRing::OPlus).unwrap();
    assert!(zero.is_zero());
    let g = ctx.from_zeta_coeffs(&[1, 0, 0, 2]);
    let g2 = &g * &ctx.from_zeta_coeffs(&[3, 1, -1]);
    let j = IdealLattice::from_generators(&ctx, &[g.clone(), g2.clone()], IdealRing::OPlus).unwrap();
    assert_eq!(j.index(), Some(BigInt::from(11)));
    assert!(j.contains(&g2));
    assert!(!j.contains(&ctx.one()));
    let k = IdealLattice::from_generators(&ctx, &[ctx.h(), ctx.int(2)], IdealRing::OPlus).unwrap();
    assert!(k.is_unit());
    let o = IdealLattice::from_generators(&ctx, &[g.clone()], IdealRing::O).unwrap();
    assert_eq!(o.index(), Some(BigInt::from(121)));
    assert_eq!(o.intersect_oplus(&ctx), j);
    assert!(IdealLattice::from_generators(&ctx, &[ctx.i()], IdealRing::OPlus).is_err());
}

#[test]
fn ideal_oracle_from_explicit_lattice() {
    // Oracle: 5 = h⁴·u with u ∈ O⁺, so 1 = 5 − 2·2 lies in (h, 2).
    let ctx = make_context(5).unwrap();
    let h = ctx.h();
    let u = ctx.int(5) / h.pow(4);
    assert!(u.in_o_plus());
    let k = IdealLattice::from_generators(&ctx, &[h.clone(), ctx.int(2)], IdealRing::OPlus).unwrap();
    assert!(k.contains(&(&(&h.pow(4) * &u) - &ctx.int(4))));
    assert_eq!(k, IdealLattice::unit(&ctx, IdealRing::OPlus));
}

#[test]
fn serde_roundtrip() {
    let ctx = make_context(7).unwrap();
    let x = &ctx.from_zeta_coeffs(&[1, -2, 3]) / &ctx.int(6);
    let s = serde_json::to_string(&x).unwrap();
    assert!(s.contains("zeta4p-power-basis"));
    let r: so3tqft::cyclo::CycloRepr = serde_json::from_str(&s).unwrap();
    assert_eq!(CycloElem::from_repr(ctx.field(), &r).unwrap(), x);
}

fn elem(p: u64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, (p - 1) as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn valuation_superadditive(a in elem(7), b in elem(7)) {
        let ctx = make_context(7).unwrap();
        let x = ctx.from_zeta_coeffs(&a);
        let y = ctx.from_zeta_coeffs(&b);
        let vx = ctx.h_valuation(&x).unwrap();
        let vy = ctx.h_valuation(&y).unwrap();
        let vxy = ctx.h_valuation(&(&x * &y)).unwrap();
        match (vx, vy) {
            (Some(i), Some(j)) => prop_assert_eq!(vxy, Some(i + j)),
            _ => prop_assert_eq!(vxy, None),
        }
    }

    #[test]
    fn conj_is_involutive_automorphism(a in elem(5), b in elem(5), k in 0i64..20) {
        let ctx = make_context(5).unwrap();
        let x = &ctx.from_zeta_coeffs(&a) + &(&ctx.zeta4p_pow(k) * &ctx.from_zeta_coeffs(&b));
        let y = ctx.from_zeta_coeffs(&b);
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert!((&x * &x.conj()).conj() == &x * &x.conj());
    }

    #[test]
    fn inverse_is_exact(a in elem(5), k in 0i64..20) {
        let ctx = make_context(5).unwrap();
        let x = &ctx.from_zeta_coeffs(&a) + &ctx.zeta4p_pow(k);
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn ideal_independent_of_order_and_units(a in elem(5), b in elem(5), u in 0i64..5) {
        let ctx = make_context(5).unwrap();
        let x = ctx.from_zeta_coeffs(&a);
        let y = ctx.from_zeta_coeffs(&b);
        let unit = &ctx.qint(2) * &ctx.zeta_pow(u);
        let j1 = IdealLattice::from_generators(&ctx, &[x.clone(), y.clone()], IdealRing::OPlus).unwrap();
        let j2 = IdealLattice::from_generators(&ctx, &[&y * &unit, x], IdealRing::OPlus).unwrap();
        prop_assert_eq!(j1, j2);
    }
}
