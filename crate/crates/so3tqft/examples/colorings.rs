//! Small colorings of lollipop trees, dimensions and the index identity.
use so3tqft::lollipop::{exponent_b, exponent_bsharp, index_identity, LollipopTree};

fn main() -> so3tqft::Result<()> {
    let tree = LollipopTree::eyeglass();
    for c in tree.small_colorings(5)? {
        println!("a={:?} b={:?} e={} exponents ({}, {})", c.a, c.b, c.e, exponent_b(&c), exponent_bsharp(&c));
    }
    for tree in [LollipopTree::torus(), LollipopTree::tripod(), "(L L);(1 1)".parse()?] {
        let id = index_identity(&tree, 7)?;
        println!("{tree}: dim {} N {} N' {} rhs {}", tree.dim(7)?, id.n, id.n_sharp, id.rhs);
    }
    Ok(())
}
