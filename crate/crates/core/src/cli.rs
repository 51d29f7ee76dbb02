//! Command-line front end. Exit codes: 0 success, 1 validation failure,
//! 2 usage, configuration or runtime error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::experiments::{run_preset, Preset, SweepOptions};
use crate::metrics;
use crate::optimizer::{self, Bisection};
use crate::outage;
use crate::params::{NetworkParams, OptimizationResult};
use crate::quadrature::QuadratureSpec;
use crate::report::{Row, Table};
use crate::simulator::{estimate_pco, estimate_pso, SimulationConfig};
use crate::validation::{self, ValidationOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fdsec", version, about = "Outage, throughput and energy-efficiency analysis of FD-jamming ad hoc networks")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Directory receiving the CSV output.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Overrides the configured random seed.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Overrides the Monte Carlo trial count; 0 skips simulation in sweeps.
    #[arg(long, global = true, value_name = "N")]
    pub trials: Option<u64>,
    /// Quadrature relative tolerance, or bisection width for `optimize`.
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    Asln,
    Nst,
    Nsee,
    NseeConstrained,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate outage probabilities and metrics on a `q` grid.
    Analytic,
    /// Optimal FD fraction for one objective.
    Optimize {
        #[arg(value_enum)]
        objective: Objective,
    },
    /// Monte Carlo outage estimates with standard errors.
    Simulate,
    /// Run a built-in preset sweep.
    Sweep {
        #[arg(long, value_name = "NAME")]
        preset: Preset,
    },
    /// Compare Monte Carlo against the analytic expressions.
    Validate,
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
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
    match execute(&cli) {
        Ok(Outcome { path, passed }) => {
            println!("wrote {}", path.display());
            if passed {
                EXIT_OK
            } else {
                eprintln!("validation failed; see {}", path.display());
                EXIT_VALIDATION
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn main() -> ! {
    std::process::exit(run(std::env::args_os()))
}

struct Outcome {
    path: PathBuf,
    passed: bool,
}

fn load_config(common: &CommonArgs) -> Result<RunConfig> {
    match &common.config {
        Some(path) => RunConfig::load(path),
        None => Err(Error::Config("this subcommand needs --config PATH".into())),
    }
}

fn quad_spec(common: &CommonArgs) -> Result<QuadratureSpec> {
    let mut quad = QuadratureSpec::default();
    if let Some(tol) = common.tol {
        quad.rel_tol = tol;
    }
    quad.validate()?;
    Ok(quad)
}

fn write(table: &Table, dir: &Path, stem: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{stem}.csv"));
    table.write_csv(&path)?;
    Ok(path)
}

fn stem(cfg: &RunConfig, fallback: &str) -> Result<String> {
    Ok(cfg.run_name()?.unwrap_or_else(|| fallback.to_owned()))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    let (table, name, passed) = match &cli.command {
        Command::Analytic => {
            let cfg = load_config(common)?;
            (analytic(&cfg, &quad_spec(common)?)?, stem(&cfg, "analytic")?, true)
        }
        Command::Optimize { objective } => {
            let cfg = load_config(common)?;
            let fallback = objective.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
            (optimize(&cfg, *objective, common.tol)?, stem(&cfg, &fallback)?, true)
        }
        Command::Simulate => {
            let cfg = load_config(common)?;
            (simulate(&cfg, common, &quad_spec(common)?)?, stem(&cfg, "simulate")?, true)
        }
        Command::Sweep { preset } => {
            let defaults = SweepOptions::default();
            let opts = SweepOptions {
                trials: common.trials.unwrap_or(defaults.trials),
                seed: common.seed.unwrap_or(defaults.seed),
                quad: quad_spec(common)?,
            };
            (run_preset(*preset, &opts)?, preset.name().to_owned(), true)
        }
        Command::Validate => {
            let defaults = ValidationOptions::default();
            let opts = ValidationOptions {
                trials: common.trials.unwrap_or(defaults.trials),
                seed: common.seed.unwrap_or(defaults.seed),
                quad: quad_spec(common)?,
                ..defaults
            };
            if opts.trials == 0 {
                return Err(Error::Config("validate needs at least one trial".into()));
            }
            let outcomes = validation::run_all(&opts)?;
            for o in outcomes.iter().filter(|o| !o.passed) {
                eprintln!("FAIL {} [{}]: {} vs {} (tol {})", o.check, o.case, o.value, o.reference, o.tolerance);
            }
            let passed = outcomes.iter().all(|o| o.passed);
            (validation::to_table(&outcomes)?, "validate".to_owned(), passed)
        }
    };
    let path = write(&table, &common.out, &name)?;
    Ok(Outcome { path, passed })
}

const OUTAGE_QUANTITIES: [&str; 6] = ["pco_exact", "pco_upper", "pco_lower", "pso_upper", "pso_hd_closed", "pso_fd_approx"];
const METRIC_QUANTITIES: [&str; 3] = ["asln", "nst", "nsee"];

fn static_name(name: &str) -> Result<&'static str> {
    OUTAGE_QUANTITIES
        .iter()
        .chain(&METRIC_QUANTITIES)
        .find(|q| **q == name)
        .copied()
        .ok_or_else(|| {
            Error::Config(format!(
                "unknown analytic quantity {name:?}; expected all, {}, {}",
                OUTAGE_QUANTITIES.join(", "),
                METRIC_QUANTITIES.join(", ")
            ))
        })
}

/// `all` expands to every outage quantity plus ASLN, and NST/NSEE when a
/// `[constraints]` section is present.
fn expand_quantities(cfg: &RunConfig, requested: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for name in requested {
        if name == "all" {
            out.extend(OUTAGE_QUANTITIES);
            out.push("asln");
            if cfg.has_section("constraints") {
                out.extend(["nst", "nsee"]);
            }
        } else {
            out.push(static_name(name)?);
        }
    }
    let mut unique = Vec::with_capacity(out.len());
    for q in out {
        if !unique.contains(&q) {
            unique.push(q);
        }
    }
    Ok(unique)
}

fn analytic(cfg: &RunConfig, quad: &QuadratureSpec) -> Result<Table> {
    let params = cfg.network()?;
    let rates = cfg.rates()?;
    let spec = cfg.analytic()?;
    let quantities = expand_quantities(cfg, &spec.quantities)?;
    let constraints = if quantities.iter().any(|q| *q == "nst" || *q == "nsee") {
        Some(cfg.constraints(&params)?)
    } else {
        None
    };
    let (tau_t, tau_e) = (rates.tau_t(), rates.tau_e());
    let mut table = Table::new();
    for &q in &spec.q {
        let mut row = Row::new().text("mode", spec.mode.to_string()).num("q", q);
        for &name in &quantities {
            let value = match name {
                "pco_exact" => outage::pco_exact(&params, spec.mode, q, tau_t, quad),
                "pco_upper" => outage::pco_bounds(&params, spec.mode, q, tau_t).map(|b| b.0),
                "pco_lower" => outage::pco_bounds(&params, spec.mode, q, tau_t).map(|b| b.1),
                "pso_upper" => outage::pso_upper(&params, spec.mode, q, tau_e, quad),
                "pso_hd_closed" => outage::pso_hd_closed(&params, q, tau_e),
                "pso_fd_approx" => outage::pso_fd_approx(&params, q, tau_e),
                "asln" => metrics::asln(&params, &rates, q),
                "nst" => metrics::nst(&params, constraints.as_ref().expect("constraints loaded"), q),
                "nsee" => metrics::nsee(&params, constraints.as_ref().expect("constraints loaded"), q),
                _ => unreachable!("validated quantity name"),
            };
            // Metrics are undefined at some grid points (ASLN at q = 0); leave those cells empty.
            let value = match value {
                Err(Error::Domain(_)) if METRIC_QUANTITIES.contains(&name) => None,
                other => Some(other?),
            };
            row = row.opt_num(name, value);
        }
        table.push(row.num("tau_t", tau_t).num("tau_e", tau_e).network(&params))?;
    }
    Ok(table)
}

fn optimize(cfg: &RunConfig, objective: Objective, tol: Option<f64>) -> Result<Table> {
    let params = cfg.network()?;
    let mut bisection = Bisection::default();
    if let Some(tol) = tol {
        bisection.tol = tol;
    }
    let keys = ["q_star", "objective_value", "case_tag", "residual"];
    let name = match objective {
        Objective::Asln => "asln",
        Objective::Nst => "nst",
        Objective::Nsee => "nsee",
        Objective::NseeConstrained => "nsee_constrained",
    };
    let row = Row::new().text("objective", name);
    let row = match objective {
        Objective::Asln => {
            let rates = cfg.rates()?;
            let r = optimizer::optimize_asln_with(&params, &rates, &bisection)?;
            row.optimum(keys, &r).num("tau_t", rates.tau_t()).num("tau_e", rates.tau_e())
        }
        _ => {
            let c = cfg.constraints(&params)?;
            let (r, omega_min): (OptimizationResult, Option<f64>) = match objective {
                Objective::Nst => (optimizer::optimize_nst_with(&params, &c, &bisection)?, None),
                Objective::Nsee => (optimizer::optimize_nsee_with(&params, &c, &bisection)?, None),
                _ => {
                    let omega_min = cfg.omega_min()?;
                    (optimizer::optimize_nsee_constrained(&params, &c, omega_min)?, Some(omega_min))
                }
            };
            row.optimum(keys, &r)
                .num("sigma", c.sigma())
                .num("epsilon", c.epsilon())
                .opt_num("q_m", c.q_m())
                .opt_num("omega_min", omega_min)
        }
    };
    let mut table = Table::new();
    table.push(row.network(&params))?;
    Ok(table)
}

fn simulate(cfg: &RunConfig, common: &CommonArgs, quad: &QuadratureSpec) -> Result<Table> {
    let params: NetworkParams = cfg.network()?;
    let rates = cfg.rates()?;
    let spec = cfg.simulation()?;
    let trials = common.trials.unwrap_or(spec.trials);
    let seed = common.seed.unwrap_or(spec.seed);
    let mut table = Table::new();
    for &q in &spec.q {
        let (threshold, mut sim) = if spec.measure == "pco" {
            (rates.tau_t(), SimulationConfig::for_connection(&params, spec.mode, q, trials, seed)?)
        } else {
            (rates.tau_e(), SimulationConfig::for_secrecy(&params, spec.mode, q, rates.tau_e(), trials, seed)?)
        };
        if let Some(w) = spec.window_radius {
            sim.window_radius = w;
            if spec.eavesdropper_radius.is_none() {
                sim.eavesdropper_radius = None;
            }
        }
        if let Some(e) = spec.eavesdropper_radius {
            sim.eavesdropper_radius = Some(e);
        }
        let sim = sim.validated(&params)?;
        let (est, analytic_name, analytic) = if spec.measure == "pco" {
            (estimate_pco(&params, &sim, threshold)?, "pco_exact", outage::pco_exact(&params, spec.mode, q, threshold, quad)?)
        } else {
            (estimate_pso(&params, &sim, threshold)?, "pso_upper", outage::pso_upper(&params, spec.mode, q, threshold, quad)?)
        };
        let row = Row::new()
            .text("measure", spec.measure.clone())
            .text("mode", spec.mode.to_string())
            .num("q", q)
            .num("p_hat", est.p_hat)
            .num("std_err", est.std_err)
            .text("analytic", analytic_name)
            .num("analytic_value", analytic)
            .int("trials", est.trials)
            .int("seed", seed)
            .int("ill_conditioned", est.ill_conditioned)
            .num("window_radius", sim.window_radius)
            .opt_num("eavesdropper_radius", sim.eavesdropper_radius)
            .num("threshold", threshold)
            .network(&params);
        table.push(row)?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run(["fdsec"]), EXIT_ERROR);
        assert_eq!(run(["fdsec", "sweep", "--preset", "fig99"]), EXIT_ERROR);
        assert_eq!(run(["fdsec", "optimize", "nst"]), EXIT_ERROR);
    }

    #[test]
    fn quantity_names_are_checked() {
        let cfg = RunConfig::parse("").unwrap();
        assert!(expand_quantities(&cfg, &["bogus".into()]).is_err());
        assert_eq!(expand_quantities(&cfg, &["all".into()]).unwrap().len(), 7);
    }
}
