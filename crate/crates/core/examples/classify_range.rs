//! Kodaira-type certificates for a range of genera.
//!
//! cargo run --example classify_range -- 3 30

use spinpic::kodaira::classify;
use spinpic::GenusCtx;

fn main() -> spinpic::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<u32>().expect("genus"));
    let from = args.next().unwrap_or(3);
    let to = args.next().unwrap_or(22);
    for g in from..=to {
        let cert = classify(GenusCtx::new(g)?, None)?.to_json();
        let evidence = match (&cert.rk, &cert.nu) {
            (Some(rk), _) => format!("R.K = {rk}"),
            (_, Some(nu)) => format!("nu = {nu}"),
            _ => String::new(),
        };
        println!(
            "g={g:<3} {:<18} {evidence:<24} {:?}",
            cert.verdict.to_string(),
            cert.flags
        );
    }
    Ok(())
}
