//! Skein identities between four-point tangles under random closures.
use so3tqft::make_context;
use so3tqft::planar::tangles::check_lemmas;

fn main() -> so3tqft::Result<()> {
    for p in [5, 7] {
        let r = check_lemmas(&make_context(p)?, 5, 2024)?;
        println!("{}", serde_json::to_string(&r).expect("serializable"));
    }
    Ok(())
}
