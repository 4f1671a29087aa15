//! Loop, theta and tetrahedron values, twists and the surgery element ω.
use so3tqft::make_context;
use so3tqft::recoupling::RecouplingTable;

fn main() -> so3tqft::Result<()> {
    let t = RecouplingTable::new(&make_context(5)?);
    for n in 0..=3 {
        println!("Δ_{n} = {}, μ_{n} = {}", t.loop_value(n)?, t.twist(n)?);
    }
    println!("θ(1,1,2) = {}", t.theta(1, 1, 2)?);
    println!("Tet(1,1,2,1,1,2) = {}", t.tet(1, 1, 2, 1, 1, 2)?);
    for (k, c) in t.omega()?.coords.iter().enumerate() {
        println!("ω_{k} = {c}");
    }
    Ok(())
}
