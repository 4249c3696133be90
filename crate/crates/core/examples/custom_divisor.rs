//! Classifying with a user-supplied divisor read from JSON.

use spinpic::catalog::DivisorSpec;
use spinpic::kodaira::classify;
use spinpic::GenusCtx;

const FILE: &str = r#"{
  "name": "toy",
  "genus": 10,
  "a": "7",
  "b0": "1",
  "b": ["2", "4", "6", "8", "10"]
}"#;

fn main() -> spinpic::Result<()> {
    let d = DivisorSpec::from_json(FILE)?;
    println!("D = {} (slope {})", d.class().expect("complete"), d.slope());
    let cert = classify(GenusCtx::new(10)?, Some(d))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&cert.to_json()).expect("json")
    );

    let steep = DivisorSpec::from_json(&FILE.replace("\"7\"", "\"8\""))?;
    match classify(GenusCtx::new(10)?, Some(steep)) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
