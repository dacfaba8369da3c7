use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use finrank::congruence::{PrimePolicy, DEFAULT_BUDGET};
use finrank::error::Error;
use finrank::structure::Outcome;
use finrank::toolkit::{self, GroupFile, Options, BUDGET_ENV};
use finrank::unipotent::rank_u;

#[derive(Parser)]
#[command(name = "finrank", version, about = "Rank computations for finitely generated matrix groups over number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Use this congruence prime instead of the smallest valid one.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Cap on the number of elements enumerated in a congruence image.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Starting precision, in bits, of the logarithmic embedding.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Print a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Re-run every exact certificate check before answering.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the group has finite Pruefer rank.
    IsFiniteRank { file: PathBuf },
    /// Hirsch number (torsion-free rank).
    Hirsch { file: PathBuf },
    /// Upper bound for the Pruefer rank.
    RankBound { file: PathBuf },
    /// Whether <H> has finite index in <G>, for H a subgroup of G.
    FiniteIndex { g: PathBuf, h: PathBuf },
    /// Generators of the completely reducible part, as a group file.
    CrPart { file: PathBuf },
    /// Hirsch number of a group of unipotent matrices.
    UnipotentRank { file: PathBuf },
}

enum Answer {
    Definite(Value),
    Unknown(Value),
}

fn load(path: &Path) -> Result<GroupFile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema { path: "$".into(), msg: format!("cannot read {}: {e}", path.display()) })?;
    GroupFile::from_json(&text)
}

fn unknown(key: &str, e: &Error) -> Value {
    json!({ key: "unknown", "reason": e.to_string() })
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run(cmd: &Command, opts: &Options) -> Result<Answer, Error> {
    let start = Instant::now();
    match cmd {
        Command::IsFiniteRank { file } => {
            let f = load(file)?;
            let v = toolkit::finite_rank(&f.field, &f.generators, opts)?;
            let mut out = json!({
                "route": v.route,
                "prime_used": v.prime,
                "image_order": v.image_order,
                "certificates": { "kernel_generators": v.kernel.len(), "witness": v.witness.as_ref().map(|w| w.summary()) },
                "timings": { "total": ms(start) },
            });
            match &v.outcome {
                Outcome::True => out["finite_rank"] = json!(true),
                Outcome::False => {
                    out["finite_rank"] = json!(false);
                    out["obstruction"] = json!(v.obstruction);
                }
                Outcome::Unknown(u) => {
                    out["finite_rank"] = json!("unknown");
                    out["reason"] = json!(u.to_string());
                    return Ok(Answer::Unknown(out));
                }
            }
            Ok(Answer::Definite(out))
        }
        Command::Hirsch { file } => {
            let f = load(file)?;
            match toolkit::hirsch_number(&f.field, &f.generators, opts) {
                Ok(r) => Ok(Answer::Definite(serde_json::to_value(r).expect("report serializes"))),
                Err(e) if e.is_unknown() => Ok(Answer::Unknown(unknown("hirsch", &e))),
                Err(e) => Err(e),
            }
        }
        Command::RankBound { file } => {
            let f = load(file)?;
            match toolkit::rank_bound(&f.field, &f.generators, opts) {
                Ok(r) => Ok(Answer::Definite(serde_json::to_value(r).expect("report serializes"))),
                Err(e) if e.is_unknown() => Ok(Answer::Unknown(unknown("prufer_upper_bound", &e))),
                Err(e) => Err(e),
            }
        }
        Command::FiniteIndex { g, h } => {
            let (g, h) = (load(g)?, load(h)?);
            if g.field.minpoly() != h.field.minpoly() {
                return Err(Error::InvalidField("G and H are defined over different fields".into()));
            }
            if g.dim() != h.dim() && !g.generators.is_empty() && !h.generators.is_empty() {
                return Err(Error::DimensionMismatch { expected: g.dim(), found: h.dim() });
            }
            match toolkit::is_of_finite_index(&g.field, &g.generators, &h.generators, opts) {
                Ok(r) => {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    v["timings"] = json!({ "total": ms(start) });
                    Ok(Answer::Definite(v))
                }
                Err(e) if e.is_unknown() => Ok(Answer::Unknown(unknown("finite_index", &e))),
                Err(e) => Err(e),
            }
        }
        Command::CrPart { file } => {
            let f = load(file)?;
            match toolkit::cr_part(&f.field, &f.generators, opts) {
                Ok((v, part)) => {
                    let mut group = GroupFile::new(f.field.clone(), part.generators);
                    group.name = f.name.map(|n| format!("{n} (completely reducible part)"));
                    Ok(Answer::Definite(json!({
                        "group": group.to_value(),
                        "prime_used": v.prime,
                        "certificates": { "block_form": part.form.summary() },
                        "timings": { "total": ms(start) },
                    })))
                }
                Err(e) if e.is_unknown() => Ok(Answer::Unknown(unknown("group", &e))),
                Err(e) => Err(e),
            }
        }
        Command::UnipotentRank { file } => {
            let f = load(file)?;
            let r = rank_u(&f.field, f.dim(), &f.generators)?;
            Ok(Answer::Definite(json!({ "unipotent_rank": r, "timings": { "total": ms(start) } })))
        }
    }
}

fn headline(cmd: &Command, v: &Value) -> String {
    let key = match cmd {
        Command::IsFiniteRank { .. } => "finite_rank",
        Command::Hirsch { .. } => "hirsch",
        Command::RankBound { .. } => "prufer_upper_bound",
        Command::FiniteIndex { .. } => "finite_index",
        Command::CrPart { .. } => "group",
        Command::UnipotentRank { .. } => "unipotent_rank",
    };
    if let Command::CrPart { .. } = cmd {
        if v["group"].is_object() {
            return serde_json::to_string(&v["group"]).expect("json prints");
        }
    }
    let mut line = match &v[key] {
        Value::String(s) => format!("{}: {s}", key.replace('_', " ")),
        other => format!("{}: {other}", key.replace('_', " ")),
    };
    if let Some(p) = v["prime_used"].as_u64() {
        line.push_str(&format!(" (prime {p})"));
    }
    if let Some(r) = v["reason"].as_str().or(v["obstruction"].as_str()) {
        line.push_str(&format!("\n{r}"));
    }
    line
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = &cli.flags;
    let opts = Options { prime: f.prime.map_or(PrimePolicy::Smallest, PrimePolicy::Fixed), budget: f.budget, precision: f.precision, verify: f.verify };
    let (value, code) = match run(&cli.command, &opts) {
        Ok(Answer::Definite(v)) => (v, 0),
        Ok(Answer::Unknown(v)) => (v, 2),
        Err(e) => {
            let mut v = json!({ "error": e.to_string() });
            if let Error::Schema { path, .. } = &e {
                v["path"] = json!(path);
            }
            if f.json {
                println!("{}", serde_json::to_string_pretty(&v).expect("json prints"));
            } else {
                eprintln!("error: {e}");
            }
            return ExitCode::from(1);
        }
    };
    if f.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json prints"));
    } else {
        println!("{}", headline(&cli.command, &value));
    }
    ExitCode::from(code)
}
