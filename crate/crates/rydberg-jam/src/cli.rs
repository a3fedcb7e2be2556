//! Command-line surface. Every command writes CSV (or SVG for `plot`) to
//! `--out` or stdout and is deterministic given its flags.
//!
//! Exit codes: 0 success, 2 usage error, 3 computational failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use rydberg_jam_core::complexity::{complexity, kmer_rho_star, rho_star, ComplexityPoint};
use rydberg_jam_core::genfunc::{growth_rate, jammed_counts, kmer_counts};
use rydberg_jam_core::model::{ModelParams, DEFAULT_ENUMERATION_CAP};
use rydberg_jam_core::rsa::{
    jamming_limit_quadrature, kmer_jamming_limit, renyi_constant, scaled_jamming_limit,
    scaled_limit_table, SimConfig, DEFAULT_TOLERANCE,
};

use crate::export;
use crate::parallel::{complexity_grid, enumerate_parallel, simulate_parallel};
use crate::selfcheck::run_self_check;
use crate::svg::{Marker, PlotSpec, Series};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

/// Largest `b` (or `k`) accepted by `compare` and `plot`.
pub const MAX_TABLE_SIZE: usize = 200;

/// Points per curve in the complexity figures.
const CURVE_POINTS: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "rydberg-jam",
    version,
    about = "Exact counts, complexity and jamming limits of 1D blockade packings"
)]
pub struct Cli {
    /// Run the cross-module identity suite before any command.
    #[arg(long, global = true)]
    pub self_check: bool,

    /// Output file; stdout if absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// `f(rho)` for `b = 1..=b_max`.
    Complexity,
    /// `rho_star` and `rho_inf` against `b`.
    Compare,
    /// `b rho_star` and `b rho_inf` against `b`.
    Scaled,
    /// k-mer `rho_star` and `rho_inf` against `k`.
    Kmer,
    /// `f(rho)` for one `b` with its equilibrium and jamming markers.
    Panel,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count jammed configurations of one length, by number of excitations.
    Enumerate {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        length: usize,
        /// Read counts off the generating function instead of scanning all
        /// 2^L configurations.
        #[arg(long)]
        genfunc: bool,
        /// Longest length the brute-force scan accepts.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Generating-function coefficients for every length up to `--l-max`.
    #[command(group(ArgGroup::new("model").required(true).args(["b", "kmer"])))]
    Coeffs {
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, value_name = "K")]
        kmer: Option<usize>,
        #[arg(long)]
        l_max: usize,
    },
    /// Complexity `f(rho)` on a density grid (coverage grid for `--kmer`).
    #[command(group(ArgGroup::new("model").required(true).args(["b", "kmer"])))]
    Complexity {
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, value_name = "K")]
        kmer: Option<usize>,
        /// Single density; excludes the grid flags.
        #[arg(long, conflicts_with_all = ["rho_min", "rho_max", "steps"])]
        rho: Option<f64>,
        /// Defaults to the lower end of the support.
        #[arg(long)]
        rho_min: Option<f64>,
        /// Defaults to the upper end of the support.
        #[arg(long)]
        rho_max: Option<f64>,
        /// Grid points, endpoints included.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Also draw the curve with `rho_star` and `ln w_b` markers.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Equilibrium density and jamming limit for one `b`.
    RhoStar {
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Equilibrium densities against jamming limits over a range of `b` or `k`.
    Compare {
        #[arg(long, conflicts_with_all = ["kmer", "k_max"])]
        b_max: Option<usize>,
        /// Tabulate k-mer coverages for `k = 2..=k_max` instead.
        #[arg(long)]
        kmer: bool,
        #[arg(long, requires = "kmer")]
        k_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Random-sequential-adsorption limit by quadrature.
    #[command(group(ArgGroup::new("model").required(true).args(["b", "b_max", "kmer"])))]
    JammingLimit {
        #[arg(long)]
        b: Option<usize>,
        /// Table of `b rho_inf` from two quadrature routes.
        #[arg(long)]
        b_max: Option<usize>,
        #[arg(long, value_name = "K")]
        kmer: Option<usize>,
        /// Use the `y = 1 - t/b` substitution for a single `b`.
        #[arg(long)]
        scaled: bool,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Rényi's parking constant.
    Renyi {
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Monte Carlo random sequential adsorption.
    Simulate {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SimFormat::Csv)]
        format: SimFormat,
        /// Append one line per trial (JSON lines only).
        #[arg(long)]
        per_trial: bool,
    },
    /// Render a figure as SVG.
    Plot {
        #[arg(long, value_enum)]
        figure: Figure,
        /// Blockade range for `panel`.
        #[arg(long, default_value_t = 1)]
        b: usize,
        #[arg(long, default_value_t = 10)]
        b_max: usize,
        #[arg(long, default_value_t = 20)]
        k_max: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failure(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(e.into())
    }
}

type CliResult = Result<(), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn params(b: usize) -> Result<ModelParams, CliError> {
    ModelParams::new(b).map_err(|e| usage(e.to_string()))
}

fn kmer_params(k: usize) -> Result<ModelParams, CliError> {
    ModelParams::from_kmer(k).map_err(|_| usage(format!("k-mer size must be >= 2, got {k}")))
}

fn check_tol(tol: f64) -> CliResult {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(usage(format!(
            "--tol must be positive and finite, got {tol}"
        )))
    }
}

fn check_table_size(flag: &str, n: usize, min: usize) -> CliResult {
    if (min..=MAX_TABLE_SIZE).contains(&n) {
        Ok(())
    } else {
        Err(usage(format!(
            "{flag} must lie in {min}..={MAX_TABLE_SIZE}, got {n}"
        )))
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// `steps` evenly spaced points on `[lo, hi]`, endpoints exact.
fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

/// `(1/(2b+1), 1/(b+1))`, the densities where `f > 0`.
fn support(b: usize) -> (f64, f64) {
    (1.0 / (2 * b + 1) as f64, 1.0 / (b + 1) as f64)
}

fn density_grid(
    rho: Option<f64>,
    rho_min: Option<f64>,
    rho_max: Option<f64>,
    steps: usize,
    default: (f64, f64),
) -> Result<Vec<f64>, CliError> {
    if let Some(r) = rho {
        if !(0.0..=1.0).contains(&r) {
            return Err(usage(format!("--rho must lie in [0, 1], got {r}")));
        }
        return Ok(vec![r]);
    }
    let lo = rho_min.unwrap_or(default.0);
    let hi = rho_max.unwrap_or(default.1);
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) {
        return Err(usage(format!(
            "grid bounds must lie in [0, 1], got [{lo}, {hi}]"
        )));
    }
    if lo > hi {
        return Err(usage(format!("--rho-min {lo} exceeds --rho-max {hi}")));
    }
    if steps == 0 || (steps == 1 && lo != hi) {
        return Err(usage(
            "--steps must be >= 2 unless --rho-min equals --rho-max",
        ));
    }
    Ok(linspace(lo, hi, steps))
}

fn cmd_enumerate(
    out: Option<&Path>,
    b: usize,
    length: usize,
    genfunc: bool,
    cap: usize,
) -> CliResult {
    let p = params(b)?;
    if genfunc {
        let table = jammed_counts(p, length);
        export::write_enumeration_from_table(open_out(out)?, &table, length)?;
        return Ok(());
    }
    let counts = enumerate_parallel(length, p, cap).map_err(|e| {
        usage(format!(
            "{e}; pass --genfunc for exact counts at any length, or raise --cap"
        ))
    })?;
    export::write_enumeration(open_out(out)?, &counts)?;
    Ok(())
}

fn cmd_coeffs(
    out: Option<&Path>,
    b: Option<usize>,
    kmer: Option<usize>,
    l_max: usize,
) -> CliResult {
    let table = match (b, kmer) {
        (Some(b), _) => jammed_counts(params(b)?, l_max),
        (_, Some(k)) => kmer_counts(k, l_max).map_err(|e| usage(e.to_string()))?,
        _ => unreachable!("clap requires one of --b, --kmer"),
    };
    export::write_coefficients(open_out(out)?, &table)?;
    Ok(())
}

struct ComplexityArgs {
    b: Option<usize>,
    kmer: Option<usize>,
    rho: Option<f64>,
    rho_min: Option<f64>,
    rho_max: Option<f64>,
    steps: usize,
    svg: Option<PathBuf>,
}

fn cmd_complexity(out: Option<&Path>, a: ComplexityArgs) -> CliResult {
    // A k-mer coverage `c` is density `c / k` of the model with `b = k - 1`.
    let (key, value, p, scale) = match (a.b, a.kmer) {
        (Some(b), _) => ("b", b, params(b)?, 1.0),
        (_, Some(k)) => ("k", k, kmer_params(k)?, k as f64),
        _ => unreachable!("clap requires one of --b, --kmer"),
    };
    let (lo, hi) = support(p.b());
    let grid = density_grid(
        a.rho,
        a.rho_min,
        a.rho_max,
        a.steps,
        (scale * lo, (scale * hi).min(1.0)),
    )?;
    let model_grid: Vec<f64> = grid.iter().map(|c| c / scale).collect();
    let points: Vec<ComplexityPoint> = complexity_grid(p, &model_grid)
        .map_err(|e| anyhow!(e))?
        .into_iter()
        .zip(&grid)
        .map(|(pt, &c)| ComplexityPoint { rho: c, ..pt })
        .collect();
    export::write_complexity(open_out(out)?, key, value, &points)?;

    if let Some(path) = a.svg {
        let eq = rho_star(p);
        let mut spec = PlotSpec::new(
            &format!("Complexity, {key} = {value}"),
            if scale == 1.0 {
                "density rho"
            } else {
                "coverage rho"
            },
            "f(rho)",
        );
        spec.series.push(Series {
            label: format!("{key} = {value}"),
            points: points.iter().map(|pt| (pt.rho, pt.f)).collect(),
        });
        let star = scale * eq.rho_star;
        if points.first().is_some_and(|f| f.rho <= star)
            && points.last().is_some_and(|l| star <= l.rho)
        {
            spec.x_markers.push(Marker {
                label: "rho*".into(),
                value: star,
            });
        }
        spec.y_markers.push(Marker {
            label: "ln w".into(),
            value: eq.f_at_star,
        });
        write_file(&path, &spec.render().map_err(|e| anyhow!(e))?)?;
    }
    Ok(())
}

fn equilibrium_row(b: usize, tol: f64) -> export::EquilibriumRow {
    let p = ModelParams::new(b).expect("b >= 1");
    let eq = rho_star(p);
    let rho_inf = match jamming_limit_quadrature(p, tol) {
        Ok(r) => Some(r.value),
        Err(e) => {
            log::error!("b = {b}: {e}");
            None
        }
    };
    export::EquilibriumRow {
        b,
        rho_star: eq.rho_star,
        rho_inf,
        f_at_star: eq.f_at_star,
        ln_w_b: growth_rate(p).ln_w(),
    }
}

fn failed_rows(n: usize) -> CliResult {
    if n == 0 {
        Ok(())
    } else {
        Err(CliError::Failure(anyhow!(
            "{n} row(s) failed; see cells marked 'error'"
        )))
    }
}

fn cmd_rho_star(out: Option<&Path>, b: usize, tol: f64) -> CliResult {
    params(b)?;
    check_tol(tol)?;
    let row = equilibrium_row(b, tol);
    export::write_equilibrium(open_out(out)?, &[row])?;
    failed_rows(row.rho_inf.is_none() as usize)
}

fn kmer_rows(k_max: usize, tol: f64) -> Vec<(usize, f64, Option<f64>)> {
    (2..=k_max)
        .into_par_iter()
        .map(|k| {
            let star = kmer_rho_star(k).expect("k >= 2");
            let inf = match kmer_jamming_limit(k, tol) {
                Ok(r) => Some(r.value),
                Err(e) => {
                    log::error!("k = {k}: {e}");
                    None
                }
            };
            (k, star, inf)
        })
        .collect()
}

fn cmd_compare(
    out: Option<&Path>,
    b_max: Option<usize>,
    kmer: bool,
    k_max: Option<usize>,
    tol: f64,
) -> CliResult {
    check_tol(tol)?;
    if kmer {
        let k_max = k_max.unwrap_or(20);
        check_table_size("--k-max", k_max, 2)?;
        let rows = kmer_rows(k_max, tol);
        export::write_kmer_equilibrium(open_out(out)?, &rows)?;
        return failed_rows(rows.iter().filter(|r| r.2.is_none()).count());
    }
    let b_max = b_max.unwrap_or(10);
    check_table_size("--b-max", b_max, 1)?;
    let rows: Vec<export::EquilibriumRow> = (1..=b_max)
        .into_par_iter()
        .map(|b| equilibrium_row(b, tol))
        .collect();
    export::write_equilibrium(open_out(out)?, &rows)?;
    failed_rows(rows.iter().filter(|r| r.rho_inf.is_none()).count())
}

fn cmd_jamming_limit(
    out: Option<&Path>,
    b: Option<usize>,
    b_max: Option<usize>,
    kmer: Option<usize>,
    scaled: bool,
    tol: f64,
) -> CliResult {
    check_tol(tol)?;
    if scaled && b.is_none() {
        return Err(usage("--scaled applies to a single --b"));
    }
    match (b, b_max, kmer) {
        (Some(b), _, _) => {
            let p = params(b)?;
            let r = if scaled {
                let bf = b as f64;
                let s = scaled_jamming_limit(p, tol * bf).map_err(|e| anyhow!(e))?;
                rydberg_jam_core::QuadratureResult {
                    value: s.value / bf,
                    abs_error_estimate: s.abs_error_estimate / bf,
                    evaluations: s.evaluations,
                }
            } else {
                jamming_limit_quadrature(p, tol).map_err(|e| anyhow!(e))?
            };
            export::write_quadrature(open_out(out)?, "b", b, &r)?;
        }
        (_, Some(b_max), _) => {
            check_table_size("--b-max", b_max, 1)?;
            let rows = scaled_limit_table(b_max, tol).map_err(|e| anyhow!(e))?;
            export::write_scaled_limits(open_out(out)?, &rows)?;
        }
        (_, _, Some(k)) => {
            kmer_params(k)?;
            let r = kmer_jamming_limit(k, tol).map_err(|e| anyhow!(e))?;
            export::write_quadrature(open_out(out)?, "k", k, &r)?;
        }
        _ => unreachable!("clap requires one of --b, --b-max, --kmer"),
    }
    Ok(())
}

fn cmd_renyi(out: Option<&Path>, tol: f64) -> CliResult {
    check_tol(tol)?;
    let r = renyi_constant(tol).map_err(|e| anyhow!(e))?;
    export::write_renyi(open_out(out)?, &r)?;
    Ok(())
}

fn cmd_simulate(
    out: Option<&Path>,
    b: usize,
    length: usize,
    trials: usize,
    seed: u64,
    format: SimFormat,
    per_trial: bool,
) -> CliResult {
    let p = params(b)?;
    if per_trial && format != SimFormat::Jsonl {
        return Err(usage("--per-trial requires --format jsonl"));
    }
    let config = SimConfig::new(length, p, trials, seed).map_err(|e| usage(e.to_string()))?;
    let summary = simulate_parallel(&config);
    let w = open_out(out)?;
    match format {
        SimFormat::Csv => export::write_simulation_csv(w, length, b, &summary)?,
        SimFormat::Jsonl => export::write_simulation_jsonl(w, length, b, &summary, per_trial)?,
    }
    Ok(())
}

fn curve(b: usize) -> Vec<(f64, f64)> {
    let p = ModelParams::new(b).expect("b >= 1");
    let (lo, hi) = support(b);
    linspace(lo, hi, CURVE_POINTS)
        .into_iter()
        .map(|r| (r, complexity(p, r).expect("density in [0, 1]").f))
        .collect()
}

fn figure(
    which: Figure,
    b: usize,
    b_max: usize,
    k_max: usize,
    tol: f64,
) -> Result<PlotSpec, CliError> {
    let quad = |b: usize| -> Result<f64, CliError> {
        Ok(
            jamming_limit_quadrature(ModelParams::new(b).expect("b >= 1"), tol)
                .map_err(|e| anyhow!("b = {b}: {e}"))?
                .value,
        )
    };
    let spec = match which {
        Figure::Complexity => {
            check_table_size("--b-max", b_max, 1)?;
            let mut s = PlotSpec::new(
                "Complexity of jammed configurations",
                "density rho",
                "f(rho)",
            );
            s.series = (1..=b_max)
                .map(|b| Series {
                    label: format!("b = {b}"),
                    points: curve(b),
                })
                .collect();
            s
        }
        Figure::Panel => {
            let p = params(b)?;
            let eq = rho_star(p);
            let mut s = PlotSpec::new(&format!("Complexity, b = {b}"), "density rho", "f(rho)");
            s.series.push(Series {
                label: format!("b = {b}"),
                points: curve(b),
            });
            s.x_markers.push(Marker {
                label: "rho*".into(),
                value: eq.rho_star,
            });
            s.x_markers.push(Marker {
                label: "rho_inf".into(),
                value: quad(b)?,
            });
            s.y_markers.push(Marker {
                label: "ln w".into(),
                value: growth_rate(p).ln_w(),
            });
            s
        }
        Figure::Compare | Figure::Scaled => {
            check_table_size("--b-max", b_max, 1)?;
            let scaled = which == Figure::Scaled;
            let rows: Vec<(f64, f64, f64)> = (1..=b_max)
                .into_par_iter()
                .map(|b| {
                    let p = ModelParams::new(b).expect("b >= 1");
                    let w = if scaled { b as f64 } else { 1.0 };
                    Ok((b as f64, w * rho_star(p).rho_star, w * quad(b)?))
                })
                .collect::<Result<_, CliError>>()?;
            let (title, y) = if scaled {
                ("Scaled equilibrium density and jamming limit", "b rho")
            } else {
                ("Equilibrium density and jamming limit", "rho")
            };
            let mut s = PlotSpec::new(title, "blockade range b", y);
            s.series.push(Series {
                label: if scaled { "b rho*" } else { "rho*" }.into(),
                points: rows.iter().map(|r| (r.0, r.1)).collect(),
            });
            s.series.push(Series {
                label: if scaled { "b rho_inf" } else { "rho_inf" }.into(),
                points: rows.iter().map(|r| (r.0, r.2)).collect(),
            });
            if scaled {
                let renyi = renyi_constant(tol).map_err(|e| anyhow!(e))?.value;
                s.y_markers.push(Marker {
                    label: "1".into(),
                    value: 1.0,
                });
                s.y_markers.push(Marker {
                    label: "Renyi".into(),
                    value: renyi,
                });
            }
            s
        }
        Figure::Kmer => {
            check_table_size("--k-max", k_max, 2)?;
            let rows = kmer_rows(k_max, tol);
            let failed = rows.iter().filter(|r| r.2.is_none()).count();
            failed_rows(failed)?;
            let mut s = PlotSpec::new(
                "k-mer equilibrium coverage and jamming limit",
                "k",
                "coverage",
            );
            s.series.push(Series {
                label: "rho*".into(),
                points: rows.iter().map(|r| (r.0 as f64, r.1)).collect(),
            });
            s.series.push(Series {
                label: "rho_inf".into(),
                points: rows
                    .iter()
                    .map(|r| (r.0 as f64, r.2.expect("checked above")))
                    .collect(),
            });
            let argmin = rows
                .iter()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("k_max >= 2");
            s.x_markers.push(Marker {
                label: format!("min rho* (k = {})", argmin.0),
                value: argmin.0 as f64,
            });
            s
        }
    };
    Ok(spec)
}

fn cmd_plot(
    out: Option<&Path>,
    which: Figure,
    b: usize,
    b_max: usize,
    k_max: usize,
    tol: f64,
) -> CliResult {
    check_tol(tol)?;
    let spec = figure(which, b, b_max, k_max, tol)?;
    let svg = spec.render().map_err(|e| anyhow!(e))?;
    let mut w = open_out(out)?;
    w.write_all(svg.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn self_check() -> CliResult {
    let results = run_self_check();
    let mut err = io::stderr().lock();
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        writeln!(err, "{status} {}  {}", r.name, r.detail)?;
    }
    failed_rows(results.iter().filter(|r| !r.pass).count())
        .map_err(|_| CliError::Failure(anyhow!("self-check failed")))
}

pub fn run(cli: Cli) -> CliResult {
    if cli.self_check {
        self_check()?;
    }
    let out = cli.out.as_deref();
    let Some(command) = cli.command else {
        return if cli.self_check {
            Ok(())
        } else {
            Err(usage("no command given; see --help"))
        };
    };
    match command {
        Command::Enumerate {
            b,
            length,
            genfunc,
            cap,
        } => cmd_enumerate(out, b, length, genfunc, cap),
        Command::Coeffs { b, kmer, l_max } => cmd_coeffs(out, b, kmer, l_max),
        Command::Complexity {
            b,
            kmer,
            rho,
            rho_min,
            rho_max,
            steps,
            svg,
        } => cmd_complexity(
            out,
            ComplexityArgs {
                b,
                kmer,
                rho,
                rho_min,
                rho_max,
                steps,
                svg,
            },
        ),
        Command::RhoStar { b, tol } => cmd_rho_star(out, b, tol),
        Command::Compare {
            b_max,
            kmer,
            k_max,
            tol,
        } => cmd_compare(out, b_max, kmer, k_max, tol),
        Command::JammingLimit {
            b,
            b_max,
            kmer,
            scaled,
            tol,
        } => cmd_jamming_limit(out, b, b_max, kmer, scaled, tol),
        Command::Renyi { tol } => cmd_renyi(out, tol),
        Command::Simulate {
            b,
            length,
            trials,
            seed,
            format,
            per_trial,
        } => cmd_simulate(out, b, length, trials, seed, format, per_trial),
        Command::Plot {
            figure,
            b,
            b_max,
            k_max,
            tol,
        } => cmd_plot(out, figure, b, b_max, k_max, tol),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
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
    match run(cli) {
        Ok(()) => EXIT_SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Failure(err) => eprintln!("error: {err:#}"),
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(0.35, 0.5, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 0.35);
        assert_eq!(g[4], 0.5);
        assert!((g[2] - 0.425).abs() < 1e-15);
    }

    #[test]
    fn grid_validation() {
        assert!(density_grid(None, Some(0.5), Some(0.4), 5, (0.0, 1.0)).is_err());
        assert!(density_grid(None, Some(-0.1), None, 5, (0.0, 1.0)).is_err());
        assert!(density_grid(None, None, None, 1, (0.2, 0.3)).is_err());
        assert_eq!(
            density_grid(None, Some(0.3), Some(0.3), 1, (0.0, 1.0)).unwrap(),
            [0.3]
        );
        assert_eq!(
            density_grid(Some(0.8), None, None, 101, (0.0, 1.0)).unwrap(),
            [0.8]
        );
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
