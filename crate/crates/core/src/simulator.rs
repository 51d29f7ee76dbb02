//! Monte Carlo estimates of connection and secrecy outage on a truncated
//! disk. Every trial draws its own network and fading from a ChaCha stream
//! indexed by the trial number, so results do not depend on the thread count.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::linalg::{Hermitian, PivotedCholesky};
use crate::params::{DuplexMode, NetworkParams};

/// Condition estimate above which an MMSE solve is not trusted.
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub window_radius: f64,
    pub trials: u64,
    pub seed: u64,
    /// Mode of the typical link.
    pub mode: DuplexMode,
    pub q: f64,
    /// Radius of the disk holding eavesdroppers; defaults to the window.
    pub eavesdropper_radius: Option<f64>,
}

impl SimulationConfig {
    /// Window of `100 r_o`, suitable for connection outage at moderate
    /// densities.
    pub fn for_connection(params: &NetworkParams, mode: DuplexMode, q: f64, trials: u64, seed: u64) -> Result<Self> {
        SimulationConfig {
            window_radius: 100.0 * params.r_o(),
            trials,
            seed,
            mode,
            q,
            eavesdropper_radius: None,
        }
        .validated(params)
    }

    /// Eavesdroppers are kept within the radius where the secrecy-outage
    /// integrand is still above `e^{-(40 + 10 (N_e - 1))}`; jammers extend
    /// a further five mean jammer spacings beyond that.
    pub fn for_secrecy(
        params: &NetworkParams,
        mode: DuplexMode,
        q: f64,
        tau_e: f64,
        trials: u64,
        seed: u64,
    ) -> Result<Self> {
        let jammer_density = q * params.lambda_l();
        let floor = 100.0 * params.r_o();
        let (window, eve) = if jammer_density > 0.0 && params.rho() > 0.0 {
            let a = params.kappa() * jammer_density * params.rho_delta() * tau_e.powf(params.delta());
            let order = (params.n_e() - 1) as f64;
            let eve = ((40.0 + 10.0 * order) / a).sqrt() + params.r_o();
            let window = (eve + 5.0 / jammer_density.sqrt()).max(floor);
            (window, eve.min(window))
        } else {
            (floor, floor)
        };
        SimulationConfig { window_radius: window, trials, seed, mode, q, eavesdropper_radius: Some(eve) }
            .validated(params)
    }

    pub fn validated(self, params: &NetworkParams) -> Result<Self> {
        if !(self.window_radius >= 20.0 * params.r_o()) || !self.window_radius.is_finite() {
            return domain(format!(
                "window radius {} must be at least 20 r_o = {}",
                self.window_radius,
                20.0 * params.r_o()
            ));
        }
        if self.trials == 0 {
            return domain("trials must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.q) {
            return domain(format!("q must lie in [0, 1], got {}", self.q));
        }
        if let Some(r) = self.eavesdropper_radius {
            if !(r > 0.0 && r <= self.window_radius) {
                return domain(format!("eavesdropper radius {r} must lie in (0, window radius]"));
            }
        }
        Ok(self)
    }

    fn eve_radius(&self) -> f64 {
        self.eavesdropper_radius.unwrap_or(self.window_radius)
    }
}

pub type Point = [f64; 2];

/// A receiver and its transmitter at distance `r_o`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pair {
    pub receiver: Point,
    pub transmitter: Point,
}

/// One draw of the network, excluding the typical pair, which sits at the
/// origin (receiver) and `(r_o, 0)` (transmitter).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NetworkRealization {
    pub hd_pairs: Vec<Pair>,
    pub fd_pairs: Vec<Pair>,
    pub eavesdroppers: Vec<Point>,
}

impl NetworkRealization {
    pub fn typical_transmitter(params: &NetworkParams) -> Point {
        [params.r_o(), 0.0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub p_hat: f64,
    pub std_err: f64,
    pub trials: u64,
    /// Trials counted as outage because an MMSE solve was ill-conditioned.
    pub ill_conditioned: u64,
}

impl OutageEstimate {
    fn from_counts(outages: u64, trials: u64, ill_conditioned: u64) -> Self {
        let p_hat = outages as f64 / trials as f64;
        OutageEstimate {
            p_hat,
            std_err: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
            trials,
            ill_conditioned,
        }
    }
}

/// The random stream for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let draw: f64 = Poisson::new(mean).expect("positive finite mean").sample(rng);
    draw as usize
}

fn uniform_in_disk<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> Point {
    let r = radius * rng.random::<f64>().sqrt();
    let (s, c) = (2.0 * PI * rng.random::<f64>()).sin_cos();
    [r * c, r * s]
}

fn dist2(a: Point, b: Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

/// `d^{-α}` from the squared distance.
fn path_loss(d2: f64, alpha: f64) -> f64 {
    if alpha == 4.0 {
        1.0 / (d2 * d2)
    } else {
        d2.powf(-0.5 * alpha)
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// Draw receivers (Poisson in the window, thinned by `q` into FD and HD),
/// displace each transmitter by `r_o` at a uniform angle, and scatter
/// eavesdroppers over the eavesdropper disk.
pub fn sample_network<R: Rng + ?Sized>(params: &NetworkParams, config: &SimulationConfig, rng: &mut R) -> NetworkRealization {
    let r_o = params.r_o();
    let area = PI * config.window_radius * config.window_radius;
    let count = poisson_count(params.lambda_l() * area, rng);
    let mut out = NetworkRealization::default();
    for _ in 0..count {
        let receiver = uniform_in_disk(config.window_radius, rng);
        let (s, c) = (2.0 * PI * rng.random::<f64>()).sin_cos();
        let pair = Pair { receiver, transmitter: [receiver[0] + r_o * c, receiver[1] + r_o * s] };
        if rng.random::<f64>() < config.q {
            out.fd_pairs.push(pair);
        } else {
            out.hd_pairs.push(pair);
        }
    }
    let eve_radius = config.eve_radius();
    let eves = poisson_count(params.lambda_e() * PI * eve_radius * eve_radius, rng);
    out.eavesdroppers = (0..eves).map(|_| uniform_in_disk(eve_radius, rng)).collect();
    out
}

/// SIR of the typical receiver: Rayleigh-faded interference from every
/// other transmitter and FD receiver, plus constant residual
/// self-interference `η P_j` in FD mode.
pub fn simulate_sir_typical<R: Rng + ?Sized>(
    params: &NetworkParams,
    realization: &NetworkRealization,
    mode: DuplexMode,
    rng: &mut R,
) -> f64 {
    let alpha = params.alpha();
    let origin = [0.0, 0.0];
    let mut interference = 0.0;
    let mut fade = || -> f64 { Exp1.sample(rng) };
    for pair in &realization.hd_pairs {
        interference += params.p_t() * fade() * path_loss(dist2(pair.transmitter, origin), alpha);
    }
    for pair in &realization.fd_pairs {
        interference += params.p_t() * fade() * path_loss(dist2(pair.transmitter, origin), alpha);
        interference += params.p_j() * fade() * path_loss(dist2(pair.receiver, origin), alpha);
    }
    interference += mode.indicator() * params.eta() * params.p_j();
    let signal = params.p_t() * fade() * params.r_o().powf(-alpha);
    if interference == 0.0 {
        return f64::INFINITY;
    }
    signal / interference
}

/// SIR of an MMSE eavesdropper with `N_e` antennas at `eve`. Only FD
/// receivers (and the typical receiver in FD mode) jam. With fewer jammers
/// than antennas the eavesdropper nulls them all and the SIR is infinite.
/// An ill-conditioned interference covariance is reported as
/// [`Error::Numerical`].
pub fn simulate_eavesdropper_sir<R: Rng + ?Sized>(
    params: &NetworkParams,
    realization: &NetworkRealization,
    mode: DuplexMode,
    eve: Point,
    rng: &mut R,
) -> Result<f64> {
    let n = params.n_e() as usize;
    let alpha = params.alpha();
    let jammers = realization.fd_pairs.len() + usize::from(mode.is_fd());
    let signal_gain = params.p_t() * path_loss(dist2(eve, NetworkRealization::typical_transmitter(params)), alpha);
    let mut g = vec![Complex64::new(0.0, 0.0); n];
    g.iter_mut().for_each(|v| *v = complex_gaussian(rng));
    if jammers < n {
        return Ok(f64::INFINITY);
    }
    let mut cov = Hermitian::zeros(n);
    let mut h = vec![Complex64::new(0.0, 0.0); n];
    let typical = mode.is_fd().then_some([0.0, 0.0]);
    for x in realization.fd_pairs.iter().map(|p| p.receiver).chain(typical) {
        h.iter_mut().for_each(|v| *v = complex_gaussian(rng));
        cov.add_rank_one(params.p_j() * path_loss(dist2(x, eve), alpha), &h);
    }
    mmse_sir(signal_gain, &g, &cov)
}

/// `signal_gain · gᴴ R⁻¹ g`, guarded by the pivot-ratio condition estimate.
pub fn mmse_sir(signal_gain: f64, g: &[Complex64], cov: &Hermitian) -> Result<f64> {
    let factor = PivotedCholesky::new(cov)
        .ok_or_else(|| Error::Numerical("interference covariance is not positive definite".into()))?;
    let cond = factor.condition_estimate();
    if !(cond <= CONDITION_LIMIT) {
        return Err(Error::Numerical(format!("interference covariance condition estimate {cond:e}")));
    }
    Ok(signal_gain * factor.inverse_quadratic_form(g))
}

fn sum_counts(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    (a.0 + b.0, a.1 + b.1)
}

/// Fraction of trials in which the typical SIR falls below `tau_t`.
pub fn estimate_pco(params: &NetworkParams, config: &SimulationConfig, tau_t: f64) -> Result<OutageEstimate> {
    let config = config.validated(params)?;
    if !(tau_t >= 0.0) {
        return domain(format!("tau_t must be non-negative, got {tau_t}"));
    }
    let no_eves = params.with(|i| i.lambda_e = 0.0)?;
    let (outages, _) = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.seed, t);
            let net = sample_network(&no_eves, &config, &mut rng);
            let sir = simulate_sir_typical(params, &net, config.mode, &mut rng);
            (u64::from(sir < tau_t), 0)
        })
        .reduce(|| (0, 0), sum_counts);
    Ok(OutageEstimate::from_counts(outages, config.trials, 0))
}

/// Fraction of trials in which at least one eavesdropper reaches SIR
/// `tau_e`. Ill-conditioned solves count as outage.
pub fn estimate_pso(params: &NetworkParams, config: &SimulationConfig, tau_e: f64) -> Result<OutageEstimate> {
    let config = config.validated(params)?;
    if !(tau_e > 0.0) {
        return domain(format!("tau_e must be positive, got {tau_e}"));
    }
    let (outages, ill) = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.seed, t);
            let net = sample_network(params, &config, &mut rng);
            for &eve in &net.eavesdroppers {
                match simulate_eavesdropper_sir(params, &net, config.mode, eve, &mut rng) {
                    Ok(sir) if sir >= tau_e => return (1, 0),
                    Ok(_) => {}
                    Err(_) => return (1, 1),
                }
            }
            (0, 0)
        })
        .reduce(|| (0, 0), sum_counts);
    Ok(OutageEstimate::from_counts(outages, config.trials, ill))
}
