//! Arithmetic in `Q(ζ_4p)`: the constants `h` and `D`, valuations and an ideal.
use so3tqft::{make_context, IdealLattice, IdealRing};

fn main() -> so3tqft::Result<()> {
    let ctx = make_context(5)?;
    let h = ctx.h();
    println!("h = {h}, v(h) = {:?}", ctx.h_valuation(&h)?);
    println!("D = {}, v(D) = {:?}", ctx.d_const(), ctx.h_valuation(ctx.d_const())?);
    println!("δ = {}", ctx.delta());
    let g = &ctx.one() + &ctx.zeta_pow(3).scale_int(&2.into());
    let ideal = IdealLattice::from_generators(&ctx, &[g], IdealRing::OPlus)?;
    println!("(1 + 2ζ³): index {:?}, hnf {:?}", ideal.index(), ideal.to_repr().hnf);
    Ok(())
}
