//! Pullback and pushforward between Pic(M_g) and Pic(S_g+).

use spinpic::transfer::{even_degree, pullback, pushforward, spin_counts};
use spinpic::{ClassM, GenusCtx};

fn main() -> spinpic::Result<()> {
    let ctx = GenusCtx::new(6)?;
    let x = ClassM::parse("13*lambda - 2*d0 - 3*d1 - 2*d2 - 2*d3", ctx)?;
    let up = pullback(&x);
    let down = pushforward(&up);
    println!("x                 = {x}");
    println!("pullback(x)       = {up}");
    println!("pushforward(...)  = {down}");
    assert_eq!(down, x.scale(&even_degree(ctx)));

    let counts = spin_counts(ctx);
    println!("even theta characteristics: {}", counts.n_even);
    for id in counts.identities() {
        println!(
            "  {:<28} {}",
            id.name,
            if id.holds { "holds" } else { "FAILS" }
        );
    }
    Ok(())
}
