//! The mapping-torus family, its valuations and cut-number bounds.
use so3tqft::invariants::mapping_torus_invariant;
use so3tqft::make_context;
use so3tqft::recoupling::RecouplingTable;

fn main() -> so3tqft::Result<()> {
    let t = RecouplingTable::new(&make_context(5)?);
    for n in 0..=10 {
        let r = mapping_torus_invariant(&t, n)?;
        println!("n={n:>2}: o_p {:?}, cut bound {:?}", r.o_p, r.cut_bound);
    }
    Ok(())
}
