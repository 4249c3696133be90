//! The verification suite, once on clean tables and once with a corrupted
//! pushforward multiplicity.

use spinpic::verify::{run_checks, verify_range, GenusModel, Mutation};
use spinpic::GenusCtx;

fn main() -> spinpic::Result<()> {
    for r in verify_range(3, 25)? {
        println!(
            "g={:<3} {:>4} checks  {}",
            r.genus,
            r.checks,
            if r.ok() { "OK" } else { "FAIL" }
        );
    }

    let mut model = GenusModel::standard(GenusCtx::new(9)?)?;
    model.apply(Mutation::Pushforward { row: 1, col: 2 });
    for c in run_checks(&model).iter().filter(|c| !c.passed) {
        println!(
            "caught: {} (expected {}, got {})",
            c.name, c.expected, c.got
        );
    }
    Ok(())
}
