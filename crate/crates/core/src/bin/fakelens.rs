use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fakelens::best::{r_minus, r_plus, tables_document, TablesDocument, DEFAULT_BUDGET};
use fakelens::expr::Expr;
use fakelens::structure::{structure_set, tables_json};
use fakelens::valuation::w_l;
use fakelens::verify::{self, Suite, VerifyConfig, DEFAULT_SEED};
use fakelens::{Error, Sign};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "fakelens", version, about = "Structure sets of fake lens spaces with fundamental group of order 2^K")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Free rank and torsion of the structure set of L^(2d-1).
    StructureSet {
        #[arg(long = "d")]
        d: u32,
        #[arg(long = "K")]
        level: u32,
    },
    /// The p, q, r polynomial tables and B-basis scalings.
    Tables {
        #[arg(long = "max-n")]
        max_n: usize,
        /// Restrict the r tables to one family: + or -.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Option<Sign>,
    },
    /// Evaluate w_l of an expression in chi, f, fk(k), fpk(k).
    Wl {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "K")]
        level: u32,
        /// A single l; all l in [0, K) when omitted.
        #[arg(long = "l")]
        l: Option<u32>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        /// Maximum number of vectors an enumeration may visit.
        #[arg(long, env = "FAKELENS_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Seed for the randomised property checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The polynomial r^-_n or r^+_n.
    BestPoly {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Sign,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

/// A finished report and whether it counts as success.
struct Report {
    body: String,
    ok: bool,
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn int_list(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn tables_text(doc: &TablesDocument) -> String {
    let mut s = String::new();
    writeln!(s, "schema_version = {}", doc.schema_version).unwrap();
    writeln!(s, "max_n = {}", doc.max_n).unwrap();
    for e in &doc.p {
        writeln!(s, "p[{}] = {}", e.index, int_list(&e.coeffs)).unwrap();
    }
    for e in &doc.q {
        writeln!(s, "q[{}] = {}", e.index, int_list(&e.coeffs)).unwrap();
    }
    if let Some(rs) = &doc.r_minus {
        for e in rs {
            let bits: Vec<i64> = e.chosen_bits.values().map(|&b| b as i64).collect();
            writeln!(s, "r_minus[{}] = {}", e.n, int_list(&e.coeffs)).unwrap();
            writeln!(s, "r_minus_bits[{}] = {}", e.n, int_list(&bits)).unwrap();
        }
    }
    if let Some(rs) = &doc.r_plus {
        for e in rs {
            writeln!(s, "r_plus[{}] = {}", e.index, int_list(&e.coeffs)).unwrap();
        }
    }
    for e in &doc.b_scalings {
        let ex: Vec<i64> = e.exponents.iter().map(|&x| x as i64).collect();
        writeln!(s, "b_scaling_exponents[K={}] = {}", e.level, int_list(&ex)).unwrap();
    }
    s
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::StructureSet { d, level } => {
            let s = structure_set(*d, *level)?;
            let body = if json_out {
                let mut v = serde_json::to_value(&s).expect("serialisable");
                v["schema_version"] = json!(SCHEMA_VERSION);
                v["command"] = json!("structure-set");
                render_json(&v)
            } else {
                let mut out = String::new();
                writeln!(out, "d = {}\nK = {}\nN = {}\nfree_rank = {}", s.d, s.level, s.n, s.free_rank).unwrap();
                match &s.torsion {
                    Some(t) => {
                        let parts: Vec<String> = t.iter().map(|e| format!("{}:{}", e.label, e.order)).collect();
                        writeln!(out, "torsion = {}", parts.join(" ")).unwrap();
                    }
                    None => writeln!(out, "torsion = unsupported").unwrap(),
                }
                if let Some(h) = &s.basis_provenance {
                    writeln!(out, "basis_provenance = {h}").unwrap();
                }
                out
            };
            Ok(Report { body, ok: true })
        }
        Command::Tables { max_n, sign } => {
            let body = match (json_out, sign) {
                (true, None) => tables_json(*max_n)?,
                (true, Some(_)) => {
                    render_json(&serde_json::to_value(tables_document(*max_n, *sign)?).expect("serialisable"))
                }
                (false, _) => tables_text(&tables_document(*max_n, *sign)?),
            };
            Ok(Report { body, ok: true })
        }
        Command::Wl { expr, level, l } => {
            let g = expr.parse::<Expr>()?.eval(*level)?;
            let ls: Vec<u32> = match l {
                Some(l) => vec![*l],
                None => (0..*level).collect(),
            };
            let mut values = Vec::new();
            for &l in &ls {
                values.push((l, w_l(&g, l)?));
            }
            let body = if json_out {
                let vals: Vec<Value> = values
                    .iter()
                    .map(|(l, v)| {
                        json!({
                            "l": l,
                            "value": v.to_string(),
                            "rational": v.to_rational().map(|r| r.to_string()),
                        })
                    })
                    .collect();
                render_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "wl",
                    "expr": expr,
                    "K": level,
                    "values": vals,
                }))
            } else {
                values
                    .iter()
                    .map(|(l, v)| {
                        let r = v.to_rational().map_or("inf".to_string(), |r| r.to_string());
                        format!("w_{l} = {r}\n")
                    })
                    .collect()
            };
            Ok(Report { body, ok: true })
        }
        Command::Verify { suite, budget, seed } => {
            let reports = verify::run(*suite, &VerifyConfig { budget: *budget, seed: *seed })?;
            let ok = reports.iter().all(|r| r.passed());
            let body = if json_out {
                render_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "verify",
                    "suite": suite.name(),
                    "budget": budget,
                    "seed": seed,
                    "passed": ok,
                    "reports": reports,
                }))
            } else {
                let mut out = String::new();
                for r in &reports {
                    for c in &r.checks {
                        let tag = if c.passed() { "PASS" } else { "FAIL" };
                        writeln!(out, "{tag} {}: {} ({} cases)", r.suite, c.name, c.cases).unwrap();
                        for f in &c.first_failures {
                            writeln!(out, "  failed: {f}").unwrap();
                        }
                    }
                    for n in &r.notes {
                        writeln!(out, "note {}: {n}", r.suite).unwrap();
                    }
                }
                writeln!(out, "result: {}", if ok { "pass" } else { "fail" }).unwrap();
                out
            };
            Ok(Report { body, ok })
        }
        Command::BestPoly { n, sign } => {
            let (poly, bits) = match sign {
                Sign::Minus => {
                    let rec = r_minus(*n)?;
                    (rec.polynomial, Some(rec.chosen_bits))
                }
                Sign::Plus => (r_plus(*n)?, None),
            };
            let body = if json_out {
                let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
                render_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "best-poly",
                    "n": n,
                    "sign": sign_str(*sign),
                    "polynomial": poly.to_string(),
                    "coeffs": coeffs,
                    "chosen_bits": bits,
                }))
            } else {
                let mut out = format!("{poly}\n");
                if let Some(bits) = bits {
                    let parts: Vec<String> = bits.iter().map(|(l, a)| format!("{l}: {a}")).collect();
                    writeln!(out, "chosen_bits = {{{}}}", parts.join(", ")).unwrap();
                }
                out
            };
            Ok(Report { body, ok: true })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Inconsistency(_) | Error::RMinusNotUnique { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &report.body),
                None => {
                    print!("{}", report.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error[io]: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(exit_code(&e))
        }
    }
}
