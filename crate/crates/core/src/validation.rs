//! Cross-checks between the simulator and the analytic expressions, run by
//! the `validate` subcommand. Each check yields one row per evaluated point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::outage;
use crate::params::{DuplexMode, NetworkInputs, NetworkParams};
use crate::quadrature::QuadratureSpec;
use crate::report::{Row, Table};
use crate::simulator::{estimate_pco, estimate_pso, SimulationConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub trials: u64,
    pub seed: u64,
    pub quad: QuadratureSpec,
    /// Random instances for the deterministic checks.
    pub samples: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { trials: 100_000, seed: 1, quad: QuadratureSpec::default(), samples: 200 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub case: String,
    pub value: f64,
    pub reference: f64,
    /// Allowed deviation (absolute unless the check says otherwise).
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn row(&self) -> Row {
        Row::new()
            .text("check", self.check)
            .text("case", self.case.clone())
            .num("value", self.value)
            .num("reference", self.reference)
            .num("tolerance", self.tolerance)
            .text("passed", if self.passed { "true" } else { "false" })
    }
}

/// Monte Carlo connection outage within three standard errors of the
/// exact expression over the `q × η` grid of the `fig1` preset.
pub fn check_pco_monte_carlo(opts: &ValidationOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for eta in [0.0, 0.1, 1.0] {
        let params = NetworkParams::new(NetworkInputs {
            alpha: 4.0,
            lambda_l: 3e-3,
            lambda_e: 0.0,
            r_o: 1.0,
            eta,
            ..Default::default()
        })?;
        for q in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let exact = outage::pco_exact(&params, DuplexMode::Fd, q, 1.0, &opts.quad)?;
            let cfg = SimulationConfig::for_connection(&params, DuplexMode::Fd, q, opts.trials, opts.seed)?;
            let est = estimate_pco(&params, &cfg, 1.0)?;
            let tol = 3.0 * est.std_err;
            out.push(CheckOutcome {
                check: "pco_monte_carlo",
                case: format!("q={q},eta={eta}"),
                value: est.p_hat,
                reference: exact,
                tolerance: tol,
                passed: (est.p_hat - exact).abs() <= tol,
            });
        }
    }
    Ok(out)
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

/// A random network for the deterministic checks.
pub fn random_params<R: Rng>(rng: &mut R) -> Result<NetworkParams> {
    NetworkParams::new(NetworkInputs {
        alpha: rng.random_range(2.2..6.0),
        lambda_l: log_uniform(rng, 1e-4, 1e-1),
        lambda_e: log_uniform(rng, 1e-5, 1e-2),
        n_e: rng.random_range(1..=8),
        r_o: rng.random_range(0.2..3.0),
        p_t: 1.0,
        p_j: log_uniform(rng, 0.1, 10.0),
        eta: rng.random::<f64>(),
        p_c: 0.0,
    })
}

/// Lower bound ≤ exact ≤ upper bound on random instances.
pub fn check_pco_bounds(opts: &ValidationOptions) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.samples);
    for i in 0..opts.samples {
        let params = random_params(&mut rng)?;
        let q = rng.random::<f64>();
        let tau = log_uniform(&mut rng, 0.1, 10.0);
        let mode = if rng.random::<bool>() { DuplexMode::Fd } else { DuplexMode::Hd };
        let exact = outage::pco_exact(&params, mode, q, tau, &opts.quad)?;
        let (upper, lower) = outage::pco_bounds(&params, mode, q, tau)?;
        let slack = 1e-9;
        // value: worst violation (positive means outside the sandwich)
        let violation = (lower - exact).max(exact - upper);
        out.push(CheckOutcome {
            check: "pco_bound_sandwich",
            case: format!("instance={i}"),
            value: violation,
            reference: 0.0,
            tolerance: slack,
            passed: violation <= slack,
        });
    }
    Ok(out)
}

/// HD secrecy outage by quadrature against its closed form (relative).
pub fn check_pso_closed_form(opts: &ValidationOptions) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let mut out = Vec::with_capacity(opts.samples);
    for i in 0..opts.samples {
        let params = random_params(&mut rng)?;
        let q = rng.random_range(0.05..1.0);
        let tau = log_uniform(&mut rng, 0.1, 10.0);
        let quad = outage::pso_upper(&params, DuplexMode::Hd, q, tau, &opts.quad)?;
        let closed = outage::pso_hd_closed(&params, q, tau)?;
        let rel = (quad - closed).abs() / closed.max(f64::MIN_POSITIVE);
        out.push(CheckOutcome {
            check: "pso_hd_closed_form",
            case: format!("instance={i}"),
            value: quad,
            reference: closed,
            tolerance: 1e-6,
            passed: rel <= 1e-6,
        });
    }
    Ok(out)
}

/// Parameters of the secrecy Monte Carlo grid: all receivers FD with
/// density `lambda_f`.
pub fn secrecy_grid_params(r_o: f64, lambda_f: f64) -> Result<NetworkParams> {
    NetworkParams::new(NetworkInputs {
        alpha: 4.0,
        lambda_l: lambda_f,
        lambda_e: 1e-3,
        n_e: 2,
        r_o,
        p_j: 10.0,
        ..Default::default()
    })
}

/// Monte Carlo secrecy outage below the analytic upper bound plus three
/// standard errors, and the small-`r_o` approximation improving as `r_o`
/// shrinks.
pub fn check_pso_monte_carlo(opts: &ValidationOptions) -> Result<Vec<CheckOutcome>> {
    let tau_e = 1.0;
    let mut out = Vec::new();
    for r_o in [0.05, 0.5] {
        for lambda_f in [1e-3, 1e-2] {
            let params = secrecy_grid_params(r_o, lambda_f)?;
            for mode in [DuplexMode::Hd, DuplexMode::Fd] {
                let bound = outage::pso_upper(&params, mode, 1.0, tau_e, &opts.quad)?;
                let cfg = SimulationConfig::for_secrecy(&params, mode, 1.0, tau_e, opts.trials, opts.seed)?;
                let est = estimate_pso(&params, &cfg, tau_e)?;
                let tol = 3.0 * est.std_err;
                out.push(CheckOutcome {
                    check: "pso_monte_carlo",
                    case: format!("r_o={r_o},lambda_f={lambda_f},mode={mode}"),
                    value: est.p_hat,
                    reference: bound,
                    tolerance: tol,
                    passed: est.p_hat <= bound + tol,
                });
            }
        }
    }
    let approx_error = |r_o: f64| -> Result<f64> {
        let params = secrecy_grid_params(r_o, 1e-3)?;
        let exact = outage::pso_upper(&params, DuplexMode::Fd, 1.0, tau_e, &opts.quad)?;
        Ok((outage::pso_fd_approx(&params, 1.0, tau_e)? - exact).abs())
    };
    let (small, large) = (approx_error(0.05)?, approx_error(0.5)?);
    out.push(CheckOutcome {
        check: "pso_approx_error_shrinks",
        case: "r_o=0.05 vs r_o=0.5".into(),
        value: small,
        reference: large,
        tolerance: 0.0,
        passed: small < large,
    });
    Ok(out)
}

/// Every check in order.
pub fn run_all(opts: &ValidationOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = check_pco_monte_carlo(opts)?;
    out.extend(check_pco_bounds(opts)?);
    out.extend(check_pso_closed_form(opts)?);
    out.extend(check_pso_monte_carlo(opts)?);
    Ok(out)
}

pub fn to_table(outcomes: &[CheckOutcome]) -> Result<Table> {
    let mut table = Table::new();
    for o in outcomes {
        table.push(o.row())?;
    }
    Ok(table)
}
