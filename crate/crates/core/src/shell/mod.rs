//! Command-line front end, report rendering, benchmarking and the SVG wheel.
//!
//! Every command renders either human-readable text or, with `--json`, a
//! single JSON document. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (`prime --quiet`: n is prime) |
//! | 1 | `prime --quiet`: n is composite; `verify`: mismatches found |
//! | 2 | invalid arguments or input outside a resource cap |
//! | 3 | internal error |

pub mod bench;
pub mod wheel;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::oracle::{self, VerifyOptions};
use crate::pipeline::{self, PrimalityKind, SearchStrategy};
use crate::qgrid;

pub use bench::{bench, BenchReport};
pub use wheel::{emit_wheel_svg, WheelRender};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Built-in cap for `density`.
pub const DENSITY_CAP: u64 = 1_000_000_000;

/// Environment variable that can lower (never raise) the resource caps.
pub const MAX_LIMIT_ENV: &str = "QP_MAX_LIMIT";

#[derive(Debug, Parser)]
#[command(
    name = "qprime",
    version,
    about = "Quasi-prime grid primality, factorization and prime wheels"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Staged primality test with a witness for composites.
    Prime {
        n: u64,
        #[arg(long, default_value = "asc", value_parser = parse_strategy)]
        strategy: SearchStrategy,
        /// No output; exit 0 for prime, 1 for composite.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Prime factorization, with the grid pair for quasi-primes.
    Factor {
        n: u64,
        #[arg(long, default_value = "asc", value_parser = parse_strategy)]
        strategy: SearchStrategy,
    },
    /// Print a block of the quasi-prime grid (axis indices, inclusive).
    Qgrid {
        #[arg(long, value_parser = parse_range)]
        rows: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range)]
        cols: RangeInclusive<u64>,
    },
    /// Render an s-sided prime wheel as SVG.
    Wheel {
        #[arg(long, default_value_t = 24)]
        sides: u64,
        #[arg(long, default_value_t = 1008)]
        limit: u64,
        /// Output file; the SVG goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the pipeline against the sieve on [2, limit].
    Verify {
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value = "asc", value_parser = parse_strategy)]
        strategy: SearchStrategy,
        /// Compare factorizations on every k-th value (0 = off).
        #[arg(long, default_value_t = 97)]
        factor_stride: u64,
    },
    /// Time the staged pipeline against naive trial division.
    Bench {
        #[arg(long)]
        limit: u64,
    },
    /// Fraction of [1, limit] surviving the prefilter.
    Density {
        #[arg(long)]
        limit: u64,
    },
}

fn parse_strategy(s: &str) -> std::result::Result<SearchStrategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Accepts `A..B`, `A..=B` (both inclusive) or a single `A`.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("invalid range bound {t:?}"))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            Ok(a..=a)
        }
    }
}

/// Applies `QP_MAX_LIMIT`, if set, on top of a built-in cap.
pub fn effective_cap(builtin: u64) -> u64 {
    std::env::var(MAX_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .map_or(builtin, |env| env.min(builtin))
}

fn check_cap(what: &'static str, limit: u64, builtin: u64) -> Result<()> {
    crate::error::check_resource(what, limit, effective_cap(builtin))
}

struct Output {
    json: Value,
    text: String,
    code: i32,
    // Raw payload (SVG) written to stdout instead of the summary.
    raw: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            code: EXIT_OK,
            raw: None,
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Executes a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let quiet = matches!(cli.command, Command::Prime { quiet: true, .. });
    match execute(&cli.command) {
        Ok(output) => {
            let written = if quiet {
                Ok(())
            } else if let Some(raw) = &output.raw {
                out.write_all(raw.as_bytes())
            } else if cli.json {
                writeln!(out, "{}", output.json)
            } else {
                out.write_all(output.text.as_bytes())
            };
            match written {
                Ok(()) => output.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INTERNAL
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    match *cmd {
        Command::Prime { n, strategy, quiet } => cmd_prime(n, strategy, quiet),
        Command::Factor { n, strategy } => cmd_factor(n, strategy),
        Command::Qgrid { ref rows, ref cols } => cmd_qgrid(rows.clone(), cols.clone()),
        Command::Wheel {
            sides,
            limit,
            ref out,
        } => cmd_wheel(sides, limit, out.as_deref()),
        Command::Verify {
            limit,
            strategy,
            factor_stride,
        } => cmd_verify(VerifyOptions {
            limit,
            strategy,
            factor_stride,
        }),
        Command::Bench { limit } => cmd_bench(limit),
        Command::Density { limit } => cmd_density(limit),
    }
}

fn cmd_prime(n: u64, strategy: SearchStrategy, quiet: bool) -> Result<Output> {
    let v = pipeline::is_prime(n, strategy)?;
    if v.kind == PrimalityKind::Invalid {
        return Err(Error::Invalid { n, min: 2 });
    }
    let mut text = format!("{n}: {}", v.kind.as_str());
    if let Some(w) = v.witness {
        let (a, b) = w.pair();
        text += &format!(" = {a} x {b}");
        if let pipeline::Witness::Grid(c) = w {
            text += &format!(" (grid cell {}, {})", c.i, c.j);
        }
    }
    text += &format!(
        " [stage {}, strategy {strategy}]\n",
        json!(v.stage).as_str().unwrap_or("")
    );

    let mut output = Output::new(serde_json::to_value(v).map_err(internal)?, text);
    if quiet && v.kind == PrimalityKind::Composite {
        output.code = EXIT_NEGATIVE;
    }
    Ok(output)
}

fn cmd_factor(n: u64, strategy: SearchStrategy) -> Result<Output> {
    let f = pipeline::full_factorize(n)?;
    let pair = match pipeline::factor_on_grid(n, strategy) {
        Ok(p) => Some(p),
        Err(Error::NoFactors(_) | Error::NotQuasiPrime(_) | Error::Invalid { .. }) => None,
        Err(e) => return Err(e),
    };
    let joined: Vec<String> = f.primes.iter().map(u64::to_string).collect();
    let mut text = format!("{n} = {}\n", joined.join(" x "));
    if let Some(p) = pair {
        text += &format!("grid pair ({strategy}): {} x {}\n", p.a, p.b);
    }
    if !f.outside_quasi_prime_domain.is_empty() {
        text += &format!(
            "stripped before grid search (not quasi-prime factors): {:?}\n",
            f.outside_quasi_prime_domain
        );
    }
    let json = json!({
        "n": n,
        "factors": f.primes,
        "outside_quasi_prime_domain": f.outside_quasi_prime_domain,
        "grid_pair": pair.map(|p| [p.a, p.b]),
        "strategy": strategy,
    });
    Ok(Output::new(json, text))
}

fn cmd_qgrid(rows: RangeInclusive<u64>, cols: RangeInclusive<u64>) -> Result<Output> {
    let region = qgrid::region(rows, cols)?;
    let json = serde_json::to_value(&region).map_err(internal)?;
    Ok(Output::new(json, region.to_text()))
}

fn cmd_wheel(sides: u64, limit: u64, out: Option<&std::path::Path>) -> Result<Output> {
    check_cap("wheel limit", limit, wheel::WHEEL_CAP)?;
    let render = WheelRender::build(sides, limit)?;
    let svg = emit_wheel_svg(&render);
    let json = json!({
        "sides": render.sides(),
        "limit": render.limit(),
        "rings": render.rings(),
        "highlighted": render.highlighted(),
        "primes": render.cells().iter().filter(|c| c.prime).count(),
        "off_pattern_primes": render.off_pattern_primes(),
        "out": out.map(|p| p.display().to_string()),
    });
    let text = format!(
        "{}-sided wheel, 1..={}: {} rings, spokes {:?} highlighted, off-pattern primes {:?}\n",
        render.sides(),
        render.limit(),
        render.rings(),
        render.highlighted(),
        render.off_pattern_primes()
    );
    match out {
        Some(path) => {
            std::fs::write(path, svg.as_bytes())
                .map_err(|e| Error::Internal(format!("writing {}: {e}", path.display())))?;
            Ok(Output::new(json, text))
        }
        None => Ok(Output {
            raw: Some(svg),
            ..Output::new(json, text)
        }),
    }
}

fn cmd_verify(opts: VerifyOptions) -> Result<Output> {
    check_cap("verify limit", opts.limit, oracle::VERIFY_CAP)?;
    let report = oracle::verify(opts)?;
    let mut text = format!(
        "verified [2, {}] with strategy {}: {} primality checks, {} factorizations, {} mismatches\n",
        report.limit,
        report.strategy,
        report.primality_checked,
        report.factorizations_checked,
        report.mismatches.len()
    );
    for m in report.mismatches.iter().take(20) {
        text += &format!(
            "  {} ({}): pipeline {} / oracle {}\n",
            m.n, m.check, m.pipeline, m.oracle
        );
    }
    let code = if report.is_clean() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Output {
        code,
        ..Output::new(serde_json::to_value(&report).map_err(internal)?, text)
    })
}

fn cmd_bench(limit: u64) -> Result<Output> {
    check_cap("bench limit", limit, bench::BENCH_CAP)?;
    let report = bench(limit)?;
    Ok(Output::new(
        serde_json::to_value(&report).map_err(internal)?,
        report.to_text(),
    ))
}

fn cmd_density(limit: u64) -> Result<Output> {
    check_cap("density limit", limit, DENSITY_CAP)?;
    let r = pipeline::survivor_density(limit)?;
    let mut text = format!(
        "[1, {}]: {} survivors, fraction {:.6} (4/15 = {:.6})\n",
        r.limit,
        r.survivors,
        r.fraction,
        4.0 / 15.0
    );
    for (stage, count) in &r.per_stage_rejections {
        text += &format!(
            "  rejected at {:<18} {count}\n",
            json!(stage).as_str().unwrap_or("")
        );
    }
    Ok(Output::new(
        serde_json::to_value(&r).map_err(internal)?,
        text,
    ))
}

fn internal(e: serde_json::Error) -> Error {
    Error::Internal(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("qprime").chain(args.iter().copied()))
            .expect("arguments parse");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..10").unwrap(), 1..=10);
        assert_eq!(parse_range("1..=10").unwrap(), 1..=10);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("a..3").is_err());
        assert!(parse_range("1..").is_err());
    }

    #[test]
    fn prime_json() {
        let (code, out, _) = run_args(&["--json", "prime", "91"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["n"], 91);
        assert_eq!(v["verdict"], "composite");
        assert_eq!(v["witness"], json!([7, 13]));
        assert_eq!(v["stage"], "grid_search");
        assert_eq!(v["strategy"], "asc");
    }

    #[test]
    fn prime_quiet_codes() {
        assert_eq!(
            run_args(&["prime", "91", "--quiet"]),
            (1, String::new(), String::new())
        );
        assert_eq!(
            run_args(&["prime", "97", "-q"]),
            (0, String::new(), String::new())
        );
        assert_eq!(run_args(&["prime", "2", "-q"]).0, 0);
        assert_eq!(run_args(&["prime", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn prime_text() {
        let (_, out, _) = run_args(&["prime", "25"]);
        assert_eq!(
            out,
            "25: composite = 5 x 5 (grid cell 1, 1) [stage last_digit, strategy asc]\n"
        );
    }

    #[test]
    fn factor_json() {
        let (code, out, _) = run_args(&["--json", "factor", "625", "--strategy", "balanced"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["factors"], json!([5, 5, 5, 5]));
        assert_eq!(v["grid_pair"], json!([25, 25]));
        let (_, out, _) = run_args(&["--json", "factor", "360"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["grid_pair"], Value::Null);
        assert_eq!(v["outside_quasi_prime_domain"], json!([2, 2, 2, 3, 3]));
    }

    #[test]
    fn qgrid_outputs() {
        let (_, out, _) = run_args(&["--json", "qgrid", "--rows", "1..2", "--cols", "1..2"]);
        assert_eq!(out.trim(), "[[25,35],[35,49]]");
        let (code, _, err) = run_args(&["qgrid", "--rows", "1..200", "--cols", "1..200"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("resource limit"));
    }

    #[test]
    fn density_and_verify() {
        let (code, out, _) = run_args(&["--json", "density", "--limit", "3000"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["survivors"], 800);
        let (code, out, _) = run_args(&["--json", "verify", "--limit", "5000"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["mismatches"], json!([]));
        assert_eq!(run_args(&["density", "--limit", "50"]).0, EXIT_USAGE);
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(exit_code_for(&Error::Internal("x".into())), EXIT_INTERNAL);
        assert_eq!(exit_code_for(&Error::NoFactors(7)), EXIT_USAGE);
    }
}
