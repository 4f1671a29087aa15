use so3tqft::cyclo::make_context;
use so3tqft::invariants::{
    cut_bound, eval_surgery, lollipop_divisibility_suite, mapping_torus_closed, mapping_torus_invariant,
    mapping_torus_trace, split_basic_lollipop, SurgeryPresentation,
};
use so3tqft::lollipop::LollipopTree;
use so3tqft::recoupling::RecouplingTable;

fn table(p: u64) -> RecouplingTable {
    RecouplingTable::new(&make_context(p).unwrap())
}

#[test]
fn calibration() {
    for p in [5, 7] {
        let t = table(p);
        let ctx = t.ctx();
        let empty = SurgeryPresentation::unlink(&[]).unwrap();
        assert!(eval_surgery(&empty, &t).unwrap().value.is_one());
        for f in [1, -1] {
            let u = SurgeryPresentation::unlink(&[f]).unwrap();
            assert!(eval_surgery(&u, &t).unwrap().value.is_one(), "p={p} framing {f}");
        }
        let s1s2 = SurgeryPresentation::unlink(&[0]).unwrap();
        assert_eq!(&eval_surgery(&s1s2, &t).unwrap().value, ctx.d_const());
    }
}

#[test]
fn handle_slides() {
    let t = table(5);
    let pairs = [((1, 1), (2, 1)), ((0, 1), (1, 1)), ((1, -1), (0, -1))];
    for ((a, b), (c, e)) in pairs {
        let u = eval_surgery(&SurgeryPresentation::unlink(&[a, b]).unwrap(), &t).unwrap().value;
        for positive in [true, false] {
            let h = eval_surgery(&SurgeryPresentation::hopf(c, e, positive).unwrap(), &t).unwrap().value;
            assert_eq!(u, h, "unlink({a},{b}) vs hopf({c},{e})");
        }
    }
}

#[test]
fn lens_space_multiplicativity() {
    let t = table(7);
    let one = |f: i64| eval_surgery(&SurgeryPresentation::unlink(&[f]).unwrap(), &t).unwrap().value;
    for (f, g) in [(2, 3), (0, -2), (4, 0)] {
        let both = eval_surgery(&SurgeryPresentation::unlink(&[f, g]).unwrap(), &t).unwrap().value;
        assert_eq!(both, &one(f) * &one(g));
    }
}

#[test]
fn mapping_torus_paths_agree() {
    for p in [5u64, 7, 11, 13] {
        let t = table(p);
        let ctx = t.ctx();
        let d = ctx.d() as u32;
        for n in 0..=2 * p as i64 {
            let r = mapping_torus_invariant(&t, n).unwrap();
            assert_eq!(r.value, mapping_torus_trace(&t, n).unwrap());
            if n % p as i64 != 0 {
                assert_eq!(r.o_p, Some(2 * d - 2), "p={p} n={n}");
                assert_eq!(r.cut_bound, Some(2));
            } else {
                let dim = LollipopTree::eyeglass().dim(p as usize).unwrap();
                let expect = ctx.d_const().scale_int(&dim.into());
                assert_eq!(mapping_torus_closed(ctx, n), expect);
            }
        }
    }
}

#[test]
fn cut_bound_examples() {
    assert_eq!(cut_bound(2, 2), 2);
    assert_eq!(cut_bound(0, 2), 0);
    assert_eq!(cut_bound(4, 3), 2);
}

#[test]
fn lollipop_suite() {
    let ctx = make_context(5).unwrap();
    assert!(split_basic_lollipop(5).evaluate(&ctx).unwrap().is_zero());
    let r = lollipop_divisibility_suite(&ctx, 100, 11).unwrap();
    assert_eq!(r.samples.len(), 100);
    for s in &r.samples {
        assert!(s.pass, "{s:?}");
    }
    assert!(r.pass);
}
