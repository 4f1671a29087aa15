//! Kauffman bracket of colored diagrams, read from text or built with `Morse`.
use so3tqft::make_context;
use so3tqft::planar::{shapes, ColoredDiagram, Morse};

fn main() -> so3tqft::Result<()> {
    let ctx = make_context(7)?;
    let mut trefoil = ColoredDiagram::parse("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n")?;
    trefoil.recolor_component(1, 2)?;
    println!("2-colored trefoil: {}", trefoil.bracket(&ctx)?);
    println!("theta(2,2,2): {}", shapes::theta(2, 2, 2).bracket(&ctx)?);
    let mut m = Morse::new();
    m.cup(0, 3, None).cup(2, 1, None).pure_braid(1, 2, true).cap(2).cap(0);
    println!("Hopf link colored (3, 1): {}", m.finish().bracket(&ctx)?);
    Ok(())
}
