//! Built-in parameter sweeps, one per plotted curve family. Every preset
//! returns a single table; a `curve` column distinguishes the curves.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics;
use crate::optimizer;
use crate::outage;
use crate::params::{DuplexMode, NetworkInputs, NetworkParams, OutageConstraints, RateThresholds};
use crate::quadrature::QuadratureSpec;
use crate::report::{Row, Table};
use crate::simulator::{estimate_pco, estimate_pso, SimulationConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Connection outage vs `q` for several `η`, with Monte Carlo.
    Fig1,
    /// Secrecy outage vs `λ_e`, exact bound, small-`r_o` approximation and
    /// Monte Carlo.
    Fig2,
    /// ASLN-optimal `q` vs `λ_l`.
    Fig3,
    /// ASLN vs `N_e` at the optimum and at fixed `q`.
    Fig4,
    /// NST-optimal `q` vs `λ_l`.
    Fig5,
    /// NST vs `σ` at the optimum and at fixed `q`.
    Fig6,
    /// NSEE-optimal `q` vs `ρ`.
    Fig7,
    /// Maximum NSEE vs `λ_l`, with and without a throughput floor.
    Fig8,
    /// NSEE vs `ρ` at the optimum and at fixed `q`.
    NseeRho,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::Fig1,
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
        Preset::NseeRho,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::NseeRho => "nsee-rho",
        }
    }

    /// Whether the preset runs Monte Carlo trials.
    pub fn uses_simulation(self) -> bool {
        matches!(self, Preset::Fig1 | Preset::Fig2)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                Error::Config(format!("unknown preset {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    /// Monte Carlo trials per point; zero skips simulation.
    pub trials: u64,
    pub seed: u64,
    pub quad: QuadratureSpec,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { trials: 10_000, seed: 1, quad: QuadratureSpec::default() }
    }
}

/// `start, start + step, ...` up to and including `stop` (to within a
/// small fraction of the step).
pub fn linspace_step(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

/// `per_decade` points per decade from `10^lo` to `10^hi` inclusive.
pub fn logspace(lo: i32, hi: i32, per_decade: usize) -> Vec<f64> {
    let n = (hi - lo) as usize * per_decade;
    (0..=n).map(|i| 10f64.powf(lo as f64 + i as f64 / per_decade as f64)).collect()
}

fn net(inputs: NetworkInputs) -> Result<NetworkParams> {
    NetworkParams::new(inputs)
}

/// Run one preset.
pub fn run_preset(preset: Preset, opts: &SweepOptions) -> Result<Table> {
    match preset {
        Preset::Fig1 => fig1(opts),
        Preset::Fig2 => fig2(opts),
        Preset::Fig3 => fig3(),
        Preset::Fig4 => fig4(),
        Preset::Fig5 => fig5(),
        Preset::Fig6 => fig6(),
        Preset::Fig7 => fig7(),
        Preset::Fig8 => fig8(),
        Preset::NseeRho => nsee_rho(),
    }
}

fn mc_columns(row: Row, prefix: [&'static str; 2], est: Option<(f64, f64)>) -> Row {
    row.opt_num(prefix[0], est.map(|e| e.0)).opt_num(prefix[1], est.map(|e| e.1))
}

fn fig1(opts: &SweepOptions) -> Result<Table> {
    let tau_t = 1.0;
    let mut table = Table::new();
    for eta in [0.0, 0.01, 0.1, 1.0] {
        let params = net(NetworkInputs { alpha: 4.0, lambda_l: 3e-3, lambda_e: 0.0, r_o: 1.0, eta, ..Default::default() })?;
        for q in linspace_step(0.0, 1.0, 0.1) {
            let exact = outage::pco_exact(&params, DuplexMode::Fd, q, tau_t, &opts.quad)?;
            let (upper, lower) = outage::pco_bounds(&params, DuplexMode::Fd, q, tau_t)?;
            let mc = if opts.trials > 0 {
                let cfg = SimulationConfig::for_connection(&params, DuplexMode::Fd, q, opts.trials, opts.seed)?;
                let est = estimate_pco(&params, &cfg, tau_t)?;
                Some((est.p_hat, est.std_err))
            } else {
                None
            };
            let row = Row::new()
                .text("curve", format!("eta={eta}"))
                .num("q", q)
                .num("eta", eta)
                .num("pco_exact", exact)
                .num("pco_upper", upper)
                .num("pco_lower", lower);
            let row = mc_columns(row, ["pco_mc", "pco_mc_stderr"], mc)
                .text("mode", "FD")
                .num("tau_t", tau_t)
                .int("trials", opts.trials)
                .int("seed", opts.seed)
                .network(&params);
            table.push(row)?;
        }
    }
    Ok(table)
}

fn fig2(opts: &SweepOptions) -> Result<Table> {
    let tau_e = 1.0;
    let mut table = Table::new();
    for r_o in [0.05, 0.5] {
        for lambda_f in [1e-3, 1e-2] {
            for lambda_e in logspace(-4, -2, 4) {
                // all receivers are FD, so the FD density is lambda_l
                let params = net(NetworkInputs {
                    alpha: 4.0,
                    lambda_l: lambda_f,
                    lambda_e,
                    n_e: 2,
                    r_o,
                    p_j: 10.0,
                    ..Default::default()
                })?;
                let upper = outage::pso_upper(&params, DuplexMode::Fd, 1.0, tau_e, &opts.quad)?;
                let approx = outage::pso_fd_approx(&params, 1.0, tau_e)?;
                let hd = outage::pso_hd_closed(&params, 1.0, tau_e)?;
                let mc = if opts.trials > 0 {
                    let cfg = SimulationConfig::for_secrecy(&params, DuplexMode::Fd, 1.0, tau_e, opts.trials, opts.seed)?;
                    let est = estimate_pso(&params, &cfg, tau_e)?;
                    Some((est.p_hat, est.std_err))
                } else {
                    None
                };
                let row = Row::new()
                    .text("curve", format!("r_o={r_o},lambda_f={lambda_f}"))
                    .num("lambda_e", lambda_e)
                    .num("lambda_f", lambda_f)
                    .num("pso_fd_upper", upper)
                    .num("pso_fd_approx", approx)
                    .num("pso_hd_closed", hd);
                let row = mc_columns(row, ["pso_mc", "pso_mc_stderr"], mc)
                    .text("mode", "FD")
                    .num("q", 1.0)
                    .num("tau_e", tau_e)
                    .int("trials", opts.trials)
                    .int("seed", opts.seed)
                    .network(&params);
                table.push(row)?;
            }
        }
    }
    Ok(table)
}

const OPT_ASLN: [&str; 4] = ["q_star", "asln_star", "case_tag", "residual"];
const OPT_NST: [&str; 4] = ["q_star", "nst_star", "case_tag", "residual"];
const OPT_NSEE: [&str; 4] = ["q_star", "nsee_star", "case_tag", "residual"];

fn fig3() -> Result<Table> {
    let rates = RateThresholds::from_thresholds(2.0, 1.0)?;
    let mut table = Table::new();
    for r_o in [1.0, 2.0] {
        for rho in [1.0, 10.0] {
            for lambda_l in logspace(-4, -1, 4) {
                let params = net(NetworkInputs {
                    alpha: 4.0,
                    lambda_l,
                    lambda_e: 1e-3,
                    n_e: 6,
                    r_o,
                    p_j: rho,
                    eta: 0.1,
                    ..Default::default()
                })?;
                let best = optimizer::optimize_asln(&params, &rates)?;
                table.push(
                    Row::new()
                        .text("curve", format!("r_o={r_o},rho={rho}"))
                        .optimum(OPT_ASLN, &best)
                        .num("tau_t", rates.tau_t())
                        .num("tau_e", rates.tau_e())
                        .network(&params),
                )?;
            }
        }
    }
    Ok(table)
}

fn fig4() -> Result<Table> {
    let rates = RateThresholds::from_thresholds(2.0, 1.0)?;
    let eta = 10f64.powf(-0.7);
    let mut table = Table::new();
    for rho in [1.0, 10.0] {
        for label in ["optimal", "0.1", "0.5", "1"] {
            for n_e in 1..=10u32 {
                let params = net(NetworkInputs {
                    alpha: 3.0,
                    lambda_l: 1e-2,
                    lambda_e: 1e-3,
                    n_e,
                    r_o: 1.0,
                    p_j: rho,
                    eta,
                    ..Default::default()
                })?;
                let q = match label {
                    "optimal" => optimizer::optimize_asln(&params, &rates)?.q_star.expect("ASLN is always feasible"),
                    fixed => fixed.parse().expect("numeric label"),
                };
                table.push(
                    Row::new()
                        .text("curve", format!("q={label},rho={rho}"))
                        .text("q_label", label)
                        .num("q", q)
                        .num("asln", metrics::asln(&params, &rates, q)?)
                        .num("tau_t", rates.tau_t())
                        .num("tau_e", rates.tau_e())
                        .network(&params),
                )?;
            }
        }
    }
    Ok(table)
}

fn fig5() -> Result<Table> {
    let epsilon = 0.05;
    let mut table = Table::new();
    for r_o in [1.0, 2.0] {
        for sigma in [0.1, 0.3] {
            for lambda_l in logspace(-4, 0, 4) {
                let params = net(NetworkInputs {
                    alpha: 4.0,
                    lambda_l,
                    lambda_e: 1e-4,
                    n_e: 4,
                    r_o,
                    p_j: 2.0,
                    ..Default::default()
                })?;
                let c = OutageConstraints::new(&params, sigma, epsilon)?;
                let best = optimizer::optimize_nst(&params, &c)?;
                let dense = optimizer::nst_q_dense_limit(&params, &c).ok();
                table.push(
                    Row::new()
                        .text("curve", format!("r_o={r_o},sigma={sigma}"))
                        .optimum(OPT_NST, &best)
                        .opt_num("q_m", c.q_m())
                        .opt_num("q_dense_limit", dense)
                        .num("sigma", sigma)
                        .num("epsilon", epsilon)
                        .network(&params),
                )?;
            }
        }
    }
    Ok(table)
}

fn fig6() -> Result<Table> {
    let epsilon = 0.01;
    let mut table = Table::new();
    for alpha in [3.0, 4.0] {
        let params = net(NetworkInputs { alpha, lambda_l: 1e-3, lambda_e: 1e-4, n_e: 4, r_o: 1.0, ..Default::default() })?;
        for label in ["optimal", "0.5", "0.1"] {
            for sigma in linspace_step(0.02, 0.98, 0.02) {
                let c = OutageConstraints::new(&params, sigma, epsilon)?;
                let q = match label {
                    "optimal" => optimizer::optimize_nst(&params, &c)?.q_star,
                    fixed => Some(fixed.parse().expect("numeric label")),
                };
                let nst = match q {
                    Some(q) => metrics::nst(&params, &c, q)?,
                    None => 0.0,
                };
                table.push(
                    Row::new()
                        .text("curve", format!("alpha={alpha},q={label}"))
                        .text("q_label", label)
                        .opt_num("q", q)
                        .num("nst", nst)
                        .num("sigma", sigma)
                        .num("epsilon", epsilon)
                        .network(&params),
                )?;
            }
        }
    }
    Ok(table)
}

fn nsee_base(rho: f64) -> NetworkInputs {
    NetworkInputs { alpha: 4.0, lambda_l: 1e-3, lambda_e: 1e-4, n_e: 4, r_o: 1.0, p_j: rho, p_c: 1.0, ..Default::default() }
}

fn fig7() -> Result<Table> {
    let mut table = Table::new();
    for (sigma, epsilon) in [(0.1, 0.01), (0.1, 0.05), (0.3, 0.01), (0.3, 0.05)] {
        for rho in logspace(-1, 2, 4) {
            let params = net(nsee_base(rho))?;
            let c = OutageConstraints::new(&params, sigma, epsilon)?;
            let best = optimizer::optimize_nsee(&params, &c)?;
            table.push(
                Row::new()
                    .text("curve", format!("sigma={sigma},epsilon={epsilon}"))
                    .num("rho", rho)
                    .optimum(OPT_NSEE, &best)
                    .num("sigma", sigma)
                    .num("epsilon", epsilon)
                    .network(&params),
            )?;
        }
    }
    Ok(table)
}

fn fig8() -> Result<Table> {
    let (sigma, epsilon, omega_min) = (0.3, 0.03, 1e-3);
    let mut table = Table::new();
    for rho in [1.0, 10.0] {
        for n_e in [2u32, 4] {
            for lambda_l in logspace(-7, -1, 4) {
                let params = net(NetworkInputs { lambda_l, n_e, ..nsee_base(rho) })?;
                let c = OutageConstraints::new(&params, sigma, epsilon)?;
                let free = optimizer::optimize_nsee(&params, &c)?;
                let floor = optimizer::optimize_nsee_constrained(&params, &c, omega_min)?;
                table.push(
                    Row::new()
                        .text("curve", format!("rho={rho},n_e={n_e}"))
                        .optimum(OPT_NSEE, &free)
                        .optimum(["q_star_constrained", "nsee_constrained", "case_tag_constrained", "residual_constrained"], &floor)
                        .num("omega_min", omega_min)
                        .num("sigma", sigma)
                        .num("epsilon", epsilon)
                        .network(&params),
                )?;
            }
        }
    }
    Ok(table)
}

fn nsee_rho() -> Result<Table> {
    let (sigma, epsilon) = (0.3, 0.02);
    let mut table = Table::new();
    for label in ["optimal", "0.3", "0.5", "1"] {
        for rho in logspace(-1, 2, 4) {
            let params = net(nsee_base(rho))?;
            let c = OutageConstraints::new(&params, sigma, epsilon)?;
            let q = match label {
                "optimal" => optimizer::optimize_nsee(&params, &c)?.q_star,
                fixed => Some(fixed.parse().expect("numeric label")),
            };
            let psi = match q {
                Some(q) => metrics::nsee(&params, &c, q)?,
                None => 0.0,
            };
            table.push(
                Row::new()
                    .text("curve", format!("q={label}"))
                    .num("rho", rho)
                    .text("q_label", label)
                    .opt_num("q", q)
                    .num("nsee", psi)
                    .num("sigma", sigma)
                    .num("epsilon", epsilon)
                    .network(&params),
            )?;
        }
    }
    Ok(table)
}
