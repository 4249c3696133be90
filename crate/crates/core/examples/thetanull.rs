//! Re-derives the theta-null class from the pencil relations and checks its
//! pushforward.
//!
//! cargo run --example thetanull -- 6

use spinpic::catalog::{m1_theta_class, thetanull_class};
use spinpic::testcurves::solve_thetanull;
use spinpic::transfer::pushforward;
use spinpic::GenusCtx;

fn main() -> spinpic::Result<()> {
    let g = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let ctx = GenusCtx::new(g)?;
    let sol = solve_thetanull(ctx)?;
    for (name, i) in sol.system.row_names.iter().zip(0..) {
        println!(
            "{:<20} {:?} = {}",
            name,
            sol.system.matrix.row(i),
            sol.system.rhs[i]
        );
    }
    println!("theta_null = {}", sol.class);
    assert_eq!(sol.class, thetanull_class(ctx)?);

    let pushed = pushforward(&sol.class);
    println!("pushforward = {pushed}");
    assert_eq!(pushed, m1_theta_class(ctx)?);
    Ok(())
}
