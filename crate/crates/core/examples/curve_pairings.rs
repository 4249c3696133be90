//! Test curves paired against the named classes.

use spinpic::catalog::{canonical_s, thetanull_class};
use spinpic::testcurves::{intersect, standard_curves};
use spinpic::{AnyClass, GenusCtx, Side};

fn main() -> spinpic::Result<()> {
    let ctx = GenusCtx::new(7)?;
    let theta: AnyClass = thetanull_class(ctx)?.into();
    let k: AnyClass = canonical_s(ctx)?.into();
    println!("{:<4} {:>16} {:>16}", "", "theta_null", "K");
    for c in standard_curves(ctx)?.iter().filter(|c| c.side == Side::S) {
        println!(
            "{:<4} {:>16} {:>16}",
            c.name.to_string(),
            intersect(c, &theta)?.to_string(),
            intersect(c, &k)?.to_string()
        );
    }
    Ok(())
}
