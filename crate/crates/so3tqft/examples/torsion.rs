//! The mod-`h` Gram matrix and the skew form on odd colorings.
use so3tqft::lattice::Space;
use so3tqft::lollipop::LollipopTree;
use so3tqft::make_context;

fn main() -> so3tqft::Result<()> {
    let ctx = make_context(7)?;
    for tree in [LollipopTree::eyeglass(), LollipopTree::tripod()] {
        let r = Space::new(&tree, &ctx)?.torsion_report()?;
        println!(
            "{tree}: dim {} radical {} odd {} symmetric {} skew {} non-degenerate {}",
            r.dim, r.radical_dim, r.odd_colorings, r.symmetric, r.skew, r.skew_nondegenerate
        );
    }
    Ok(())
}
