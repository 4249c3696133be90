//! The `spinpic` command line.
//!
//! [`run`] takes the full argument vector and returns the exit code with the
//! captured output, so the binary is a thin shell around it and tests can
//! drive it in-process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{
    bn_class, canonical_m, canonical_s, choose_d, m1_theta_class, thetanull_class, DivisorSpec,
};
use crate::error::{Error, Result};
use crate::kodaira::{classify, Evidence, KodairaCertificate};
use crate::picard::{parse_class, AnyClass, GenusCtx};
use crate::report::{Failure, Report};
use crate::testcurves::{
    curve, curve_table, intersect, solve_thetanull_with, standard_curves, CurveName,
};
use crate::transfer::spin_counts;
use crate::verify::{verify_range, GenusReport};

#[derive(Parser, Debug)]
#[command(
    name = "spinpic",
    version,
    about = "Exact divisor classes on M_g and S_g+"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the Kodaira type of S_g+.
    Classify {
        #[arg(short = 'g', long = "genus")]
        genus: u32,
        /// JSON divisor file replacing the default divisor D.
        #[arg(long)]
        divisor_file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print a named class.
    Class {
        #[arg(value_enum)]
        name: ClassName,
        #[arg(short = 'g', long = "genus")]
        genus: u32,
        #[arg(long)]
        divisor_file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Intersect a test curve with a class, or dump the curve table.
    Pair {
        #[arg(required_unless_present = "dump")]
        curve: Option<String>,
        /// A class name (e.g. canonical-s) or an expression like "lambda - 1/2*d0".
        #[arg(required_unless_present = "dump", allow_hyphen_values = true)]
        class: Option<String>,
        #[arg(short = 'g', long = "genus")]
        genus: u32,
        #[arg(long, conflicts_with_all = ["curve", "class"])]
        dump: bool,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive the theta-null class from the pencil relations.
    SolveThetanull {
        #[arg(short = 'g', long = "genus")]
        genus: u32,
        #[arg(long)]
        json: bool,
    },
    /// Degrees of the spin covering and their identities.
    Counts {
        #[arg(short = 'g', long = "genus")]
        genus: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run every check over a range of genera.
    Verify {
        #[arg(long, default_value_t = 3)]
        from: u32,
        #[arg(long, default_value_t = 22)]
        to: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassName {
    #[value(name = "canonical-m")]
    CanonicalM,
    #[value(name = "canonical-s")]
    CanonicalS,
    Thetanull,
    Bn,
    M1,
    #[value(name = "D")]
    D,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug)]
struct Style {
    color: bool,
}

impl Style {
    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn status(&self, ok: bool) -> String {
        if ok {
            self.paint("32", "OK")
        } else {
            self.paint("31", "FAIL")
        }
    }
}

/// Runs the command line `args` (including the program name). ANSI styling
/// is used only when `color` is set.
pub fn run<I, T>(args: I, color: bool) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let style = Style { color };
    let mut out = Outcome::default();
    match dispatch(cli.command, style, &mut out) {
        Ok(ok) => out.code = if ok { 0 } else { 1 },
        Err(e) => {
            let _ = writeln!(out.stderr, "error: {e}");
            out.code = match e {
                Error::Uncertified { .. } | Error::IdentityFailure(_) => 1,
                _ => 2,
            };
        }
    }
    out
}

fn load_divisor(path: Option<&Path>, ctx: GenusCtx) -> Result<Option<DivisorSpec>> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidDivisor(format!("{}: {e}", path.display())))?;
    let spec = DivisorSpec::from_json(&text)?;
    ctx.ensure_same(&spec.ctx)?;
    Ok(Some(spec))
}

fn dispatch(cmd: Command, style: Style, out: &mut Outcome) -> Result<bool> {
    match cmd {
        Command::Classify {
            genus,
            divisor_file,
            json,
        } => {
            let ctx = GenusCtx::new(genus)?;
            let user = load_divisor(divisor_file.as_deref(), ctx)?;
            let cert = classify(ctx, user)?;
            if json {
                let payload = serde_json::to_value(cert.to_json()).expect("certificate serializes");
                emit(
                    out,
                    Report::new("classify", payload, vec![]).for_genus(genus),
                );
            } else {
                out.stdout.push_str(&classify_text(&cert));
            }
            Ok(true)
        }
        Command::Class {
            name,
            genus,
            divisor_file,
            json,
        } => {
            let ctx = GenusCtx::new(genus)?;
            let user = load_divisor(divisor_file.as_deref(), ctx)?;
            let class = named_class(name, ctx, user, &mut out.stderr)?;
            if json {
                let payload = json!({ "name": name_text(name), "side": class.side().name(), "class": class.render() });
                emit(out, Report::new("class", payload, vec![]).for_genus(genus));
            } else {
                let _ = writeln!(out.stdout, "{}", class.render());
            }
            Ok(true)
        }
        Command::Pair {
            genus, dump: true, ..
        } => {
            let ctx = GenusCtx::new(genus)?;
            let table = curve_table(&standard_curves(ctx)?);
            let _ = writeln!(
                out.stdout,
                "{}",
                serde_json::to_string_pretty(&table).expect("table serializes")
            );
            Ok(true)
        }
        Command::Pair {
            curve: c,
            class,
            genus,
            json,
            ..
        } => {
            let ctx = GenusCtx::new(genus)?;
            let (c, class) = (c.unwrap_or_default(), class.unwrap_or_default());
            let functional = curve(ctx, c.parse::<CurveName>()?)?;
            let x = match ClassName::from_str(&class, false) {
                Ok(name) => named_class(name, ctx, None, &mut out.stderr)?,
                Err(_) => parse_class(&class, ctx, functional.side)?,
            };
            let value = intersect(&functional, &x)?;
            if json {
                let payload = json!({ "curve": c, "class": x.render(), "value": value });
                emit(out, Report::new("pair", payload, vec![]).for_genus(genus));
            } else {
                let _ = writeln!(out.stdout, "{value}");
            }
            Ok(true)
        }
        Command::SolveThetanull { genus, json } => {
            let ctx = GenusCtx::new(genus)?;
            let sol = solve_thetanull_with(ctx, &standard_curves(ctx)?)?;
            let closed = thetanull_class(ctx)?;
            let failures = if sol.class == closed {
                vec![]
            } else {
                vec![Failure {
                    check: "solved theta_null = closed form".into(),
                    expected: closed.render(),
                    got: sol.class.render(),
                }]
            };
            let ok = failures.is_empty();
            if json {
                let rows: Vec<Value> = sol
                    .system
                    .row_names
                    .iter()
                    .enumerate()
                    .map(|(i, name)| {
                        json!({ "name": name, "coefficients": sol.system.matrix.row(i), "rhs": sol.system.rhs[i] })
                    })
                    .collect();
                let unknowns: serde_json::Map<String, Value> = sol
                    .system
                    .unknowns
                    .iter()
                    .zip(sol.unknowns.iter())
                    .map(|(l, v)| (format!("{}_bar", l.ascii()), json!(v)))
                    .collect();
                let payload = json!({
                    "rows": rows,
                    "unknowns": unknowns,
                    "class": sol.class.render(),
                    "closed_form": closed.render(),
                    "match": ok,
                });
                emit(
                    out,
                    Report::new("solve-thetanull", payload, failures).for_genus(genus),
                );
            } else {
                let s = &mut out.stdout;
                let labels: Vec<String> = sol
                    .system
                    .unknowns
                    .iter()
                    .map(|l| format!("{}_bar", l.ascii()))
                    .collect();
                let _ = writeln!(s, "unknowns: {}", labels.join(", "));
                for (i, name) in sol.system.row_names.iter().enumerate() {
                    let row: Vec<String> = sol
                        .system
                        .matrix
                        .row(i)
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    let _ = writeln!(
                        s,
                        "  [{}] = {}    ({name})",
                        row.join(", "),
                        sol.system.rhs[i]
                    );
                }
                for (l, v) in labels.iter().zip(sol.unknowns.iter()) {
                    let _ = writeln!(s, "{l} = {v}");
                }
                let _ = writeln!(s, "theta_null = {}", sol.class.render());
                let verdict = if ok {
                    style.paint("32", "MATCH")
                } else {
                    style.paint("31", "MISMATCH")
                };
                let _ = writeln!(s, "{verdict} closed form {}", closed.render());
            }
            Ok(ok)
        }
        Command::Counts { genus, json } => {
            let ctx = GenusCtx::new(genus)?;
            let counts = spin_counts(ctx);
            let ids = counts.identities();
            let failures: Vec<Failure> = ids
                .iter()
                .filter(|c| !c.holds)
                .map(|c| Failure {
                    check: c.name.clone(),
                    expected: c.rhs.to_string(),
                    got: c.lhs.to_string(),
                })
                .collect();
            let ok = failures.is_empty();
            let strs =
                |v: &[num_bigint::BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
            if json {
                let payload = json!({
                    "deg_pi_total": counts.deg_pi_total.to_string(),
                    "n_even": counts.n_even.to_string(),
                    "n_odd": counts.n_odd.to_string(),
                    "deg_a0": counts.deg_a0.to_string(),
                    "deg_b0": counts.deg_b0.to_string(),
                    "deg_ai": strs(&counts.deg_ai),
                    "deg_bi": strs(&counts.deg_bi),
                    "identities": ids.iter().map(|c| json!({
                        "name": c.name, "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string(), "holds": c.holds,
                    })).collect::<Vec<_>>(),
                });
                emit(
                    out,
                    Report::new("counts", payload, failures).for_genus(genus),
                );
            } else {
                let s = &mut out.stdout;
                let _ = writeln!(s, "deg_pi_total  {}", counts.deg_pi_total);
                let _ = writeln!(s, "n_even        {}", counts.n_even);
                let _ = writeln!(s, "n_odd         {}", counts.n_odd);
                let _ = writeln!(s, "deg_a0        {}", counts.deg_a0);
                let _ = writeln!(s, "deg_b0        {}", counts.deg_b0);
                for (i, (a, b)) in counts.deg_ai.iter().zip(&counts.deg_bi).enumerate() {
                    let _ = writeln!(s, "deg_a{0:<2}  {a}    deg_b{0:<2}  {b}", i + 1);
                }
                for c in &ids {
                    let _ = writeln!(
                        s,
                        "{:<4} {}  ({} = {})",
                        style.status(c.holds),
                        c.name,
                        c.lhs,
                        c.rhs
                    );
                }
            }
            Ok(ok)
        }
        Command::Verify { from, to, json } => {
            if from > to {
                return Err(Error::Syntax(format!("--from {from} exceeds --to {to}")));
            }
            GenusCtx::new(from)?.require_classifiable()?;
            let reports = verify_range(from, to)?;
            let failures: Vec<Failure> = reports
                .iter()
                .flat_map(|r| {
                    r.failures.iter().map(move |c| Failure {
                        check: format!("g={}: {}", r.genus, c.name),
                        expected: c.expected.clone(),
                        got: c.got.clone(),
                    })
                })
                .collect();
            let ok = failures.is_empty();
            if json {
                let payload = serde_json::to_value(&reports).expect("reports serialize");
                emit(
                    out,
                    Report::new("verify", payload, failures).for_range(from, to),
                );
            } else {
                out.stdout.push_str(&verify_text(&reports, style));
            }
            Ok(ok)
        }
    }
}

fn emit(out: &mut Outcome, report: Report) {
    out.stdout.push_str(&report.to_json());
    out.stdout.push('\n');
}

fn name_text(name: ClassName) -> &'static str {
    match name {
        ClassName::CanonicalM => "canonical-m",
        ClassName::CanonicalS => "canonical-s",
        ClassName::Thetanull => "thetanull",
        ClassName::Bn => "bn",
        ClassName::M1 => "m1",
        ClassName::D => "D",
    }
}

fn named_class(
    name: ClassName,
    ctx: GenusCtx,
    user: Option<DivisorSpec>,
    notes: &mut String,
) -> Result<AnyClass> {
    Ok(match name {
        ClassName::CanonicalM => canonical_m(ctx)?.into(),
        ClassName::CanonicalS => canonical_s(ctx)?.into(),
        ClassName::Thetanull => thetanull_class(ctx)?.into(),
        ClassName::Bn => bn_class(ctx)?.0.into(),
        ClassName::M1 => m1_theta_class(ctx)?.into(),
        ClassName::D => {
            let d = choose_d(ctx, user)?;
            match d.class() {
                Some(c) => c.into(),
                None => {
                    let _ = writeln!(
                        notes,
                        "note: boundary coefficients b1..b{} of {} are unknown; showing a*lambda - b0*d0",
                        ctx.h(),
                        d.provenance
                    );
                    d.partial_class().into()
                }
            }
        }
    })
}

fn classify_text(cert: &KodairaCertificate) -> String {
    let mut s = String::new();
    let j = cert.to_json();
    let _ = writeln!(s, "genus {}: {}", j.genus, j.verdict);
    match &cert.evidence {
        Evidence::Negativity { rk } => {
            let _ = writeln!(s, "  R.K      {rk}");
        }
        Evidence::Decomposition(dec) => {
            let _ = writeln!(s, "  D        {}", dec.d.provenance);
            let _ = writeln!(s, "  slope    {}", dec.d.slope());
            let _ = writeln!(s, "  nu       {}", dec.nu);
            let list = |v: &Option<Vec<crate::Rational>>| match v {
                Some(v) => v
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
                None => "unknown".to_string(),
            };
            let _ = writeln!(s, "  c        {}", list(&dec.c));
            let _ = writeln!(s, "  c'       {}", list(&dec.c_prime));
        }
    }
    if !j.flags.is_empty() {
        let flags: Vec<String> = j
            .flags
            .iter()
            .map(|f| {
                serde_json::to_value(f)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default()
            })
            .collect();
        let _ = writeln!(s, "  flags    {}", flags.join(", "));
    }
    for a in &j.annotations {
        let _ = writeln!(s, "  note     {a}");
    }
    for c in &j.citations {
        let _ = writeln!(s, "  cites    {c}");
    }
    s
}

fn verify_text(reports: &[GenusReport], style: Style) -> String {
    let mut s = String::new();
    let mut failed = 0;
    for r in reports {
        let flags: Vec<String> = r
            .flags
            .iter()
            .map(|f| {
                serde_json::to_value(f)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default()
            })
            .collect();
        let flags = if flags.is_empty() {
            String::new()
        } else {
            format!("  [{}]", flags.join(", "))
        };
        let _ = writeln!(
            s,
            "g={:<3} {:<4} {:>3} checks{flags}",
            r.genus,
            style.status(r.ok()),
            r.checks
        );
        for f in &r.failures {
            failed += 1;
            let _ = writeln!(s, "    {}: expected {}, got {}", f.name, f.expected, f.got);
        }
    }
    let _ = writeln!(
        s,
        "{} genera, {failed} failures: {}",
        reports.len(),
        style.status(failed == 0)
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(
            std::iter::once("spinpic").chain(args.iter().copied()),
            false,
        )
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(go(&[]).code, 2);
        assert_eq!(go(&["class", "nope", "-g", "5"]).code, 2);
        assert_eq!(go(&["class", "bn", "-g", "10"]).code, 2);
        assert_eq!(go(&["pair", "F9", "lambda", "-g", "5"]).code, 2);
        assert_eq!(go(&["pair", "B", "a0", "-g", "5"]).code, 2);
        assert_eq!(go(&["classify", "-g", "2"]).code, 2);
    }

    #[test]
    fn pair_accepts_negative_expressions() {
        let o = go(&["pair", "B", "-lambda + d0", "-g", "3"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.trim(), "32");
    }

    #[test]
    fn class_d_incomplete_notes_on_stderr() {
        let o = go(&["class", "D", "-g", "10"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.trim(), "7*lambda - d0");
        assert!(o.stderr.contains("unknown"));
    }

    #[test]
    fn color_only_when_asked() {
        let plain = go(&["counts", "-g", "4"]);
        assert!(!plain.stdout.contains('\x1b'));
        let colored = run(["spinpic", "counts", "-g", "4"], true);
        assert!(colored.stdout.contains("\x1b[32m"));
    }
}
