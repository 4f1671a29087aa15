//! Gram matrices of the lattice bases and unimodularity of the dual pairing.
use so3tqft::lattice::{det_valuation, GramMethod, Space};
use so3tqft::lollipop::LollipopTree;
use so3tqft::make_context;

fn main() -> so3tqft::Result<()> {
    let ctx = make_context(5)?;
    let s = Space::new(&LollipopTree::eyeglass(), &ctx)?;
    let g = s.gram_graph(GramMethod::Fusion)?;
    println!("dim {}, v(det Gram(G)) = {:?}", s.dim(), det_valuation(&ctx, &g)?);
    let gb = s.gram_b()?;
    println!("Gram(B) integral: {}", gb.all_in_o());
    for row in &gb.entries {
        println!("  {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" | "));
    }
    let dp = s.dual_pairing()?;
    println!("det of B against B♯ is a unit: {}", ctx.is_unit(&dp.det(&ctx)?)?);
    Ok(())
}
