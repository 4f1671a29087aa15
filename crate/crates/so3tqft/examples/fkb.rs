//! Obstruction ideals of surgeries on L9a12 in the solid torus.
use so3tqft::fkb::{fkb_report, KnotInSolidTorus};
use so3tqft::make_context;
use so3tqft::recoupling::RecouplingTable;

fn main() -> so3tqft::Result<()> {
    let t = RecouplingTable::new(&make_context(5)?);
    for k in 1..=10 {
        let r = fkb_report(&KnotInSolidTorus::l9a12(k), &t, true)?;
        println!(
            "k={k:>2}: index {:?}, (1+2z^3): {}, S^3 obstructed: {}",
            r.index, r.equals_one_plus_two_zeta_cubed, r.obstructs_s3
        );
    }
    Ok(())
}
