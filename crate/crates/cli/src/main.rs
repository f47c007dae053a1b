//! `ribbon-tr`: lattice counts, recursion polynomials and the verification
//! suites from the command line.
//!
//! Exit status is 0 on success, 1 when a verification check fails and 2 on
//! invalid arguments.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ribbon_tr::emit::{intersection_label, render, Format};
use ribbon_tr::exactmath::format_fraction;
use ribbon_tr::lattice::{Census, LatticeCounter};
use ribbon_tr::transform::{intersection_classes, ClassicalIntersections};
use ribbon_tr::verify::{self, SuiteSelection, VerifyOptions};
use ribbon_tr::{Engine, Family, SurfaceType};

const CACHE_ENV: &str = "RIBBON_TR_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "ribbon-tr",
    version,
    about = "Exact ribbon-graph counts and volume polynomials"
)]
struct Cli {
    /// Directory for census cache files (falls back to $RIBBON_TR_CACHE_DIR).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weighted count N_{g,n}(p), or a census of all p with bounded sum.
    Count {
        /// Surface type as `g,n`.
        #[arg(long, value_parser = parse_gn)]
        gn: (u32, usize),
        /// Perimeters, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "max_sum",
            required_unless_present = "max_sum"
        )]
        p: Vec<i64>,
        /// Tabulate every positive p with p_1 + ... + p_n <= MAX_SUM.
        #[arg(long)]
        max_sum: Option<u32>,
        #[arg(long, value_enum, default_value_t = CountFormat::Text)]
        format: CountFormat,
    },
    /// A polynomial of the family L, VE or VS.
    Poly {
        #[arg(value_parser = parse_family)]
        kind: Family,
        g: u32,
        n: usize,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Run verification suites.
    Verify {
        /// golden, ratio, leading, series, eo, symplectic or all.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteSelection,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        level: i64,
        #[arg(long, default_value_t = 16)]
        max_sum: u32,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        points: usize,
        /// Emit JSON lines instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Intersection numbers read off V^S_{g,n}.
    Intersect { g: u32, n: usize },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyFormat {
    Text,
    Latex,
    Json,
}

fn parse_gn(s: &str) -> std::result::Result<(u32, usize), String> {
    let (g, n) = s.split_once(',').ok_or("expected g,n")?;
    let g = g
        .trim()
        .parse()
        .map_err(|_| format!("invalid genus {g:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("invalid n {n:?}"))?;
    Ok((g, n))
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: ribbon_tr::Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<SuiteSelection, String> {
    s.parse().map_err(|e: ribbon_tr::Error| e.to_string())
}

fn stable(g: u32, n: usize) -> Result<()> {
    if !SurfaceType::new(g, n).is_stable() {
        bail!("(g, n) = ({g}, {n}) is not stable: need 2g - 2 + n > 0");
    }
    Ok(())
}

/// Usage errors exit with 2; a completed run returns whether all checks passed.
fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    match cli.command {
        Command::Count {
            gn: (g, n),
            p,
            max_sum,
            format,
        } => {
            stable(g, n)?;
            let counter = LatticeCounter::new();
            if let Some(max_sum) = max_sum {
                let cache = cli
                    .cache
                    .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
                let census = match cache {
                    Some(dir) => Census::compute_cached(&counter, &dir, g, n, max_sum)?,
                    None => Census::compute(&counter, g, n, max_sum)?,
                };
                match format {
                    CountFormat::Csv => write!(out, "{}", census.to_csv()?)?,
                    CountFormat::Text => {
                        for (p, v) in &census.entries {
                            let ps: Vec<String> = p.iter().map(u32::to_string).collect();
                            writeln!(out, "{} {}", ps.join(","), v)?;
                        }
                    }
                    CountFormat::Json => {
                        let rows: Vec<serde_json::Value> = census
                            .entries
                            .iter()
                            .map(|(p, v)| serde_json::json!({"p": p, "value": format_fraction(v)}))
                            .collect();
                        let doc = serde_json::json!({"g": g, "n": n, "max_sum": max_sum, "entries": rows});
                        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                    }
                }
            } else {
                if p.len() != n {
                    bail!("expected {n} perimeters, got {}", p.len());
                }
                let p: Vec<u32> = p
                    .iter()
                    .map(|&x| u32::try_from(x).ok().filter(|&x| x > 0))
                    .collect::<Option<_>>()
                    .context("perimeters must be positive integers")?;
                let v = counter.count(g, &p)?;
                match format {
                    CountFormat::Text => writeln!(out, "{v}")?,
                    CountFormat::Csv => {
                        let census = Census {
                            g,
                            n,
                            max_sum: p.iter().sum(),
                            entries: [(p, v)].into_iter().collect(),
                        };
                        write!(out, "{}", census.to_csv()?)?;
                    }
                    CountFormat::Json => {
                        let doc = serde_json::json!({"g": g, "n": n, "p": p, "value": format_fraction(&v)});
                        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                    }
                }
            }
            Ok(true)
        }
        Command::Poly { kind, g, n, format } => {
            stable(g, n)?;
            let poly = Engine::new().polynomial(kind, g, n)?;
            let format = match format {
                PolyFormat::Text => Format::Text,
                PolyFormat::Latex => Format::Latex,
                PolyFormat::Json => Format::Json,
            };
            let s = render(&poly, format)?;
            write!(out, "{s}")?;
            if !s.ends_with('\n') {
                writeln!(out)?;
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            seed,
            level,
            max_sum,
            trials,
            points,
            json,
        } => {
            if level < 1 || max_sum < 1 || trials < 1 || points < 1 {
                bail!("--level, --max-sum, --trials and --points must be positive");
            }
            let opts = VerifyOptions {
                seed,
                level,
                max_sum,
                trials,
                points,
            };
            let report = verify::run(&Engine::new(), &LatticeCounter::new(), suite, &opts)?;
            if json {
                write!(out, "{}", report.to_json_lines()?)?;
            } else {
                write!(out, "{}", report.to_text())?;
            }
            Ok(report.passed())
        }
        Command::Intersect { g, n } => {
            stable(g, n)?;
            let numbers = Engine::new().intersection_numbers(g, n)?;
            let classical = ClassicalIntersections::new();
            for (d, v) in intersection_classes(&numbers) {
                let c = classical.value(g, &d);
                write!(out, "{} = {} (literal)", intersection_label(&d), v)?;
                if c != ribbon_tr::Rational::from_integer(0.into()) {
                    write!(out, "  classical = {}  literal/classical = {}", c, &v / &c)?;
                }
                writeln!(out)?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
