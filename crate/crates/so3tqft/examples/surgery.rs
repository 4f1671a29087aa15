//! Invariants of closed 3-manifolds from surgery presentations.
use so3tqft::invariants::{eval_surgery, SurgeryPresentation};
use so3tqft::make_context;
use so3tqft::recoupling::RecouplingTable;

fn main() -> so3tqft::Result<()> {
    let t = RecouplingTable::new(&make_context(7)?);
    for f in [1, 0, 2, 3, -5] {
        let r = eval_surgery(&SurgeryPresentation::unlink(&[f])?, &t)?;
        println!("unknot with framing {f}: {} (o_p {:?})", r.value, r.o_p);
    }
    let a = eval_surgery(&SurgeryPresentation::unlink(&[1, 1])?, &t)?.value;
    let b = eval_surgery(&SurgeryPresentation::hopf(2, 1, true)?, &t)?.value;
    println!("handle slide unlink(1,1) = Hopf(2,1): {}", a == b);
    Ok(())
}
