//! The `abelia` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use abelia_core::arith::DEFAULT_SIEVE_BUDGET;
use abelia_core::constants::{constants_report, DEFAULT_PRIME_CUTOFF};
use abelia_core::counting::{c3_count_for_a, ellipse_rows, reducible_asymptotic, stabilized_point_count};
use abelia_core::dirichlet::{main_term, second_order_constant, SecondTerm};
use abelia_core::enumerate::{fast_c3_count_toric, root_height_box};
use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Map};

use crate::error::{AppError, AppResult};
use crate::output::{real, Emitter, Format};
use crate::rows::{cubic_record, family_at_height, param_cubic, param_element, parse_int_pair, parse_pair, parse_rational};
use crate::verify::{report_json, run_suite, Suite, Tolerances, VerifyOptions};
use crate::{cache, parallel};

/// Default `X` for the Tauberian fit in `verify`.
const TAUBERIAN_X: u64 = 100_000_000;

#[derive(Debug, Parser)]
#[command(name = "abelia", version, about = "Count trace-one cubics with cyclic Galois group")]
pub struct Cli {
    /// Table size N or summation bound X
    #[arg(long, global = true)]
    pub limit: Option<u64>,
    /// Height bound H (toric unless stated otherwise)
    #[arg(long, global = true)]
    pub height: Option<f64>,
    /// Largest prime in the Euler products
    #[arg(long, global = true)]
    pub prime_cutoff: Option<u64>,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Coefficient table cache file (default: $ABELIA_CACHE_DIR/coefficients.bin)
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// `spec`, `fallback`, or a JSON file of tolerance overrides
    #[arg(long, global = true, default_value = "spec")]
    pub tolerance_profile: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dirichlet coefficients d_1..d_N
    Coeffs,
    /// Partial sum of the coefficients against the main term
    Sum,
    /// C3 counts per a, by toric height, or by root height
    #[command(group(ArgGroup::new("mode").required(true).args(["per_a", "toric", "root_height"])))]
    Count {
        #[arg(long, allow_negative_numbers = true)]
        per_a: Option<i64>,
        #[arg(long)]
        toric: Option<f64>,
        #[arg(long)]
        root_height: Option<f64>,
    },
    /// Laurent constants and Euler products
    Constants,
    /// Census of reducible family polynomials up to --height
    Reducible {
        /// Emit per-height ellipse rows instead of the census
        #[arg(long)]
        ellipse: bool,
    },
    /// Correspondence between cubics and elements of Q(√−3)
    #[command(group(ArgGroup::new("input").required(true).args(["cubic", "element"])))]
    Param {
        /// `a,b` of t^3 - t^2 + a t + b
        #[arg(long, allow_hyphen_values = true)]
        cubic: Option<String>,
        /// `u,v` of u + vζ (rationals allowed)
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Every family polynomial at the given heights²
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        heights: Vec<u64>,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("abelia: {e}");
            e.exit_code()
        }
    }
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> AppResult<T> {
    value.ok_or_else(|| AppError::Usage(format!("--{flag} is required")))
}

/// `⌊H²⌋`, with a relative slack of 1e-9 so `--height 2.6457513110645907`
/// lands on 7.
pub fn height_squared_floor(h: f64) -> AppResult<u64> {
    if !h.is_finite() || h < 1.0 {
        return Err(AppError::Usage(format!("height must be at least 1, got {h}")));
    }
    let n = (h * h * (1.0 + 1e-9)).floor();
    if n > DEFAULT_SIEVE_BUDGET as f64 {
        return Err(AppError::Core(abelia_core::Error::Budget { requested: n as u64, limit: DEFAULT_SIEVE_BUDGET }));
    }
    Ok(n as u64)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> AppResult<i32> {
    let threads = parallel::resolve_threads(cli.threads);
    let cache_path = cli.cache.clone().or_else(cache::default_path);
    let cutoff = cli.prime_cutoff.unwrap_or(DEFAULT_PRIME_CUTOFF);
    let mut emit = Emitter::new(cli.format, out);
    let table = |limit: u64| cache::load_or_sieve(cache_path.as_deref(), limit, DEFAULT_SIEVE_BUDGET, threads);
    let mut code = 0;
    match &cli.command {
        Command::Coeffs => {
            let t = table(required(cli.limit, "limit")?)?;
            for (i, &d) in t.values().iter().enumerate() {
                let mut m = Map::new();
                m.insert("n".into(), json!(i + 1));
                m.insert("d".into(), json!(d));
                emit.record(&m)?;
            }
        }
        Command::Sum => {
            let x = required(cli.limit, "limit")?;
            if x < 2 {
                return Err(AppError::Usage("--limit must be at least 2".into()));
            }
            let report = constants_report(&parallel::euler_data(cutoff, threads)?);
            let (c2, c1) = (report.c2.value.to_f64(), report.c1.value.to_f64());
            let s = match &cache_path {
                Some(_) => table(x)?.partial_sum(x)?,
                None => parallel::partial_sum(x, threads),
            };
            let xf = x as f64;
            let (standard, printed) = report.second_term_candidates();
            emit.value(json!({
                "x": x,
                "partial_sum": s,
                "main_term_standard": real(main_term(xf, c2, c1, SecondTerm::Standard), 12),
                "main_term_as_printed": real(main_term(xf, c2, c1, SecondTerm::AsPrinted), 12),
                "leading_ratio": real(s as f64 / (c2 / 4.0 * xf * xf.ln()), 10),
                "r": real(second_order_constant(s, xf, c2), 10),
                "candidate_standard": real(standard, 10),
                "candidate_as_printed": real(printed, 10),
                "prime_cutoff": cutoff,
            }))?;
        }
        Command::Count { per_a, toric, root_height } => {
            if let Some(a) = per_a {
                emit.value(json!({ "a": a, "c3_count": c3_count_for_a(*a)? }))?;
            } else if let Some(h) = toric {
                let n = height_squared_floor(*h)?;
                let t = table(n)?;
                let census = parallel::reducible_census(n, threads);
                emit.value(json!({
                    "height": real(*h, 17),
                    "height_squared_max": n,
                    "c3_count": fast_c3_count_toric(n, &t, &census)?,
                    "partial_sum": t.partial_sum(n)?,
                    "disc_zero": census.disc_zero,
                    "disc_nonzero": census.disc_nonzero,
                }))?;
            } else if let Some(h) = root_height {
                let (a_lim, b_lim) = root_height_box(*h)?;
                emit.value(json!({
                    "root_height": real(*h, 17),
                    "a_bound": a_lim,
                    "b_bound": b_lim,
                    "c3_count": parallel::count_c3_root_height(*h, threads)?,
                }))?;
            }
        }
        Command::Constants => {
            let report = constants_report(&parallel::euler_data(cutoff, threads)?);
            emit.value(report_json(&report))?;
        }
        Command::Reducible { ellipse } => {
            let h = required(cli.height, "height")?;
            let n = height_squared_floor(h)?;
            if *ellipse {
                for row in ellipse_rows(1, n)? {
                    emit.value(json!({
                        "n": row.n, "on_ellipse": row.on_ellipse, "c3_count": row.c3_count, "split_weighted": row.split_weighted,
                    }))?;
                }
            } else {
                let census = parallel::reducible_census(n, threads);
                emit.value(json!({
                    "height": real(h, 17),
                    "height_squared_max": n,
                    "disc_zero": census.disc_zero,
                    "disc_nonzero": census.disc_nonzero,
                    "total": census.total(),
                    "weighted": census.weighted(),
                    "asymptotic_disc_nonzero": real(reducible_asymptotic(h), 12),
                    "stabilized_points": stabilized_point_count(n),
                }))?;
            }
        }
        Command::Param { cubic, element } => {
            let record = if let Some(c) = cubic {
                let (a, b) = parse_int_pair(c)?;
                param_cubic(a, b)?
            } else {
                let (u, v) = parse_pair(element.as_deref().unwrap_or_default())?;
                param_element(parse_rational(&u)?, parse_rational(&v)?)?
            };
            emit.record(&record)?;
        }
        Command::Table { heights } => {
            for &n in heights {
                for f in family_at_height(n)? {
                    emit.record(&cubic_record(&f)?)?;
                }
            }
        }
        Command::Verify { suite } => {
            let opts = VerifyOptions {
                threads,
                tolerances: Tolerances::from_profile(&cli.tolerance_profile)?,
                prime_cutoff: cutoff,
                tauberian_x: cli.limit.unwrap_or(TAUBERIAN_X),
                ..VerifyOptions::default()
            };
            let checks = run_suite(*suite, &opts)?;
            for c in &checks {
                emit.value(c.to_json())?;
            }
            if let Some(bad) = checks.iter().find(|c| !c.passed) {
                emit.value(json!({ "first_counterexample": { "check": bad.id, "value": bad.counterexample } }))?;
                code = 1;
            }
        }
    }
    emit.flush()?;
    Ok(code)
}
