//! Seeded random v-graphs and their divisibility by powers of `h`.
use so3tqft::invariants::lollipop_divisibility_suite;
use so3tqft::make_context;

fn main() -> so3tqft::Result<()> {
    let r = lollipop_divisibility_suite(&make_context(5)?, 20, 1)?;
    for s in &r.samples {
        println!("#{:>2} sticks {:?} bound {} valuation {:?}", s.index, s.sticks, s.bound, s.valuation);
    }
    println!("split lollipop vanishes: {}, all pass: {}", r.split_basic_zero, r.pass);
    Ok(())
}
