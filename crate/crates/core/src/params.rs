//! Network parameters, wiretap-code thresholds and outage targets.
//!
//! Every type here is validated on construction and immutable afterwards;
//! derived constants are computed once and cached alongside the raw inputs.

use std::f64::consts::PI;
use std::fmt;

use statrs::function::gamma::gamma;

use crate::error::{domain, Result};

/// Raw physical and geometric inputs, before validation.
///
/// Powers and densities are in normalized units; `eta` is a linear
/// coefficient (convert from dB at the boundary).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkInputs {
    /// Path-loss exponent, must exceed 2.
    pub alpha: f64,
    /// Density of legitimate receivers.
    pub lambda_l: f64,
    /// Density of eavesdroppers.
    pub lambda_e: f64,
    /// Eavesdropper antenna count.
    pub n_e: u32,
    /// Legitimate link distance.
    pub r_o: f64,
    /// Legitimate transmit power.
    pub p_t: f64,
    /// Jamming power of a full-duplex receiver.
    pub p_j: f64,
    /// Residual self-interference coefficient in `[0, 1]`.
    pub eta: f64,
    /// Circuit power.
    pub p_c: f64,
}

impl Default for NetworkInputs {
    fn default() -> Self {
        NetworkInputs {
            alpha: 4.0,
            lambda_l: 1e-3,
            lambda_e: 1e-4,
            n_e: 1,
            r_o: 1.0,
            p_t: 1.0,
            p_j: 1.0,
            eta: 0.0,
            p_c: 0.0,
        }
    }
}

/// Validated network parameters with the derived constants `delta`,
/// `kappa`, `rho` and `rho_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    inputs: NetworkInputs,
    delta: f64,
    kappa: f64,
    rho: f64,
    rho_c: f64,
}

/// `pi * Gamma(1 + 2/alpha) * Gamma(1 - 2/alpha)`.
pub fn kappa_for(alpha: f64) -> f64 {
    let delta = 2.0 / alpha;
    PI * gamma(1.0 + delta) * gamma(1.0 - delta)
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be finite, got {v}"))
    }
}

impl NetworkParams {
    pub fn new(inputs: NetworkInputs) -> Result<Self> {
        let NetworkInputs { alpha, lambda_l, lambda_e, n_e, r_o, p_t, p_j, eta, p_c } = inputs;
        for (name, v) in [
            ("alpha", alpha),
            ("lambda_l", lambda_l),
            ("lambda_e", lambda_e),
            ("r_o", r_o),
            ("p_t", p_t),
            ("p_j", p_j),
            ("eta", eta),
            ("p_c", p_c),
        ] {
            check_finite(name, v)?;
        }
        if alpha <= 2.0 {
            return domain(format!("alpha must exceed 2, got {alpha}"));
        }
        if lambda_l <= 0.0 {
            return domain(format!("lambda_l must be positive, got {lambda_l}"));
        }
        if lambda_e < 0.0 {
            return domain(format!("lambda_e must be non-negative, got {lambda_e}"));
        }
        if n_e == 0 {
            return domain("n_e must be at least 1");
        }
        if r_o <= 0.0 {
            return domain(format!("r_o must be positive, got {r_o}"));
        }
        if p_t <= 0.0 {
            return domain(format!("p_t must be positive, got {p_t}"));
        }
        if p_j < 0.0 {
            return domain(format!("p_j must be non-negative, got {p_j}"));
        }
        if p_c < 0.0 {
            return domain(format!("p_c must be non-negative, got {p_c}"));
        }
        if !(0.0..=1.0).contains(&eta) {
            return domain(format!("eta must lie in [0, 1], got {eta}"));
        }
        Ok(NetworkParams {
            inputs,
            delta: 2.0 / alpha,
            kappa: kappa_for(alpha),
            rho: p_j / p_t,
            rho_c: p_j / (p_t + p_c),
        })
    }

    /// Rebuild with some inputs changed.
    pub fn with(&self, edit: impl FnOnce(&mut NetworkInputs)) -> Result<Self> {
        let mut inputs = self.inputs;
        edit(&mut inputs);
        Self::new(inputs)
    }

    pub fn inputs(&self) -> &NetworkInputs {
        &self.inputs
    }
    pub fn alpha(&self) -> f64 {
        self.inputs.alpha
    }
    pub fn lambda_l(&self) -> f64 {
        self.inputs.lambda_l
    }
    pub fn lambda_e(&self) -> f64 {
        self.inputs.lambda_e
    }
    pub fn n_e(&self) -> u32 {
        self.inputs.n_e
    }
    pub fn r_o(&self) -> f64 {
        self.inputs.r_o
    }
    pub fn p_t(&self) -> f64 {
        self.inputs.p_t
    }
    pub fn p_j(&self) -> f64 {
        self.inputs.p_j
    }
    pub fn eta(&self) -> f64 {
        self.inputs.eta
    }
    pub fn p_c(&self) -> f64 {
        self.inputs.p_c
    }
    /// `2 / alpha`.
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    /// Jamming-to-transmit power ratio.
    pub fn rho(&self) -> f64 {
        self.rho
    }
    /// Jamming power relative to the per-link transmit plus circuit power.
    pub fn rho_c(&self) -> f64 {
        self.rho_c
    }
    /// `rho^delta`, the effective jamming gain that shows up everywhere.
    pub fn rho_delta(&self) -> f64 {
        self.rho.powf(self.delta)
    }
}

/// Receiver operating mode of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DuplexMode {
    Hd,
    Fd,
}

impl DuplexMode {
    /// The indicator `1_FD(S)`.
    pub fn indicator(self) -> f64 {
        match self {
            DuplexMode::Hd => 0.0,
            DuplexMode::Fd => 1.0,
        }
    }

    pub fn is_fd(self) -> bool {
        self == DuplexMode::Fd
    }
}

impl fmt::Display for DuplexMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DuplexMode::Hd => "HD",
            DuplexMode::Fd => "FD",
        })
    }
}

impl std::str::FromStr for DuplexMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hd" => Ok(DuplexMode::Hd),
            "fd" => Ok(DuplexMode::Fd),
            other => domain(format!("unknown duplex mode `{other}` (expected HD or FD)")),
        }
    }
}

/// Wiretap code rates (bits per channel use) and the SIR thresholds they
/// imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateThresholds {
    r_t: f64,
    r_s: f64,
    tau_t: f64,
    tau_e: f64,
}

impl RateThresholds {
    /// From codeword rate `r_t` and secrecy rate `r_s`.
    pub fn from_rates(r_t: f64, r_s: f64) -> Result<Self> {
        if !(r_t > 0.0 && r_t.is_finite()) {
            return domain(format!("r_t must be positive, got {r_t}"));
        }
        if !(0.0..=r_t).contains(&r_s) {
            return domain(format!("r_s must lie in [0, r_t], got {r_s}"));
        }
        let r_e = r_t - r_s;
        Ok(RateThresholds { r_t, r_s, tau_t: r_t.exp2() - 1.0, tau_e: r_e.exp2() - 1.0 })
    }

    /// From SIR thresholds directly; the rates are recovered as
    /// `log2(1 + tau)`.
    pub fn from_thresholds(tau_t: f64, tau_e: f64) -> Result<Self> {
        if !(tau_t > 0.0 && tau_t.is_finite()) {
            return domain(format!("tau_t must be positive, got {tau_t}"));
        }
        if !(tau_e > 0.0 && tau_e <= tau_t) {
            return domain(format!("tau_e must lie in (0, tau_t], got {tau_e}"));
        }
        let r_t = tau_t.ln_1p() / std::f64::consts::LN_2;
        let r_e = tau_e.ln_1p() / std::f64::consts::LN_2;
        Ok(RateThresholds { r_t, r_s: r_t - r_e, tau_t, tau_e })
    }

    pub fn r_t(&self) -> f64 {
        self.r_t
    }
    pub fn r_s(&self) -> f64 {
        self.r_s
    }
    /// Redundancy rate `r_t - r_s`.
    pub fn r_e(&self) -> f64 {
        self.r_t - self.r_s
    }
    pub fn tau_t(&self) -> f64 {
        self.tau_t
    }
    pub fn tau_e(&self) -> f64 {
        self.tau_e
    }
}

/// Connection and secrecy outage targets with the derived feasibility data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageConstraints {
    sigma: f64,
    epsilon: f64,
    sigma_o: f64,
    epsilon_o: f64,
    delta_cap: f64,
    q_m: Option<f64>,
    feasible: bool,
}

impl OutageConstraints {
    pub fn new(params: &NetworkParams, sigma: f64, epsilon: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) {
            return domain(format!("sigma must lie in (0, 1), got {sigma}"));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return domain(format!("epsilon must lie in (0, 1), got {epsilon}"));
        }
        if params.lambda_e() <= 0.0 {
            return domain("outage constraints need lambda_e > 0");
        }
        let sigma_o = -(-sigma).ln_1p();
        let epsilon_o = -(-epsilon).ln_1p();
        let delta_cap = sigma_o * epsilon_o
            / (PI * params.lambda_e() * params.n_e() as f64 * params.r_o().powi(2));
        let q_m = (delta_cap > 1.0).then(|| 1.0 / ((delta_cap - 1.0) * params.rho_delta()));
        let feasible = params.rho() > 0.0 && delta_cap > 1.0 + 1.0 / params.rho_delta();
        Ok(OutageConstraints { sigma, epsilon, sigma_o, epsilon_o, delta_cap, q_m, feasible })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    /// `ln(1 / (1 - sigma))`.
    pub fn sigma_o(&self) -> f64 {
        self.sigma_o
    }
    /// `ln(1 / (1 - epsilon))`.
    pub fn epsilon_o(&self) -> f64 {
        self.epsilon_o
    }
    pub fn delta_cap(&self) -> f64 {
        self.delta_cap
    }
    /// Minimum FD fraction for a positive secrecy rate; present when the
    /// `delta_cap > 1`.
    pub fn q_m(&self) -> Option<f64> {
        self.q_m
    }
    /// True iff some `q` in `(q_m, 1]` yields a positive secrecy throughput.
    pub fn is_feasible(&self) -> bool {
        self.feasible
    }
}

/// Which branch of the optimal-fraction case analysis produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// No fraction meets the outage targets.
    Infeasible,
    /// The objective increases all the way to `q = 1`.
    BoundaryOne,
    /// Unique stationary point found by bisection.
    InteriorRoot,
    /// Pinned to a throughput level crossing by an NST floor.
    ConstrainedRoot,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Infeasible => "infeasible",
            CaseTag::BoundaryOne => "boundary_one",
            CaseTag::InteriorRoot => "interior_root",
            CaseTag::ConstrainedRoot => "constrained_root",
        })
    }
}

/// Optimal FD fraction for one objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationResult {
    pub q_star: Option<f64>,
    pub objective: f64,
    pub case_tag: CaseTag,
    /// `|g(q_star)|` for the root equation `g`; zero for boundary cases.
    pub residual: f64,
}

impl OptimizationResult {
    pub fn infeasible() -> Self {
        OptimizationResult { q_star: None, objective: 0.0, case_tag: CaseTag::Infeasible, residual: 0.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base() -> NetworkInputs {
        NetworkInputs { alpha: 4.0, lambda_l: 1e-3, lambda_e: 1e-4, n_e: 4, r_o: 1.0, ..Default::default() }
    }

    #[test]
    fn derived_constants_alpha_4() {
        let p = NetworkParams::new(base()).unwrap();
        assert_eq!(p.delta(), 0.5);
        assert_relative_eq!(p.kappa(), PI * PI / 2.0, max_relative = 1e-13);
        assert_eq!(p.rho(), 1.0);
    }

    #[test]
    fn kappa_matches_high_precision_table() {
        // mpmath, 40 digits
        let table = [
            (2.1, 63.066_829_834_846_704_681_652),
            (2.5, 13.432_939_139_042_422_165_330),
            (3.0, 7.597_625_010_352_075_162_108),
            (4.0, 4.934_802_200_544_679_309_417),
            (6.0, 3.798_812_505_176_037_581_054),
        ];
        for (alpha, want) in table {
            assert_relative_eq!(kappa_for(alpha), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn kappa_exceeds_pi_and_rho_c_below_rho() {
        for alpha in [2.05, 2.5, 3.0, 5.0, 10.0] {
            let p = NetworkParams::new(NetworkInputs { alpha, p_c: 0.3, p_j: 2.0, ..base() }).unwrap();
            assert!(p.kappa() > PI);
            assert!(p.delta() > 0.0 && p.delta() < 1.0);
            assert!(p.rho_c() <= p.rho());
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        let err = NetworkParams::new(NetworkInputs { alpha: 2.0, ..base() }).unwrap_err();
        assert!(err.to_string().contains("alpha must exceed 2"));
        assert!(NetworkParams::new(NetworkInputs { lambda_l: 0.0, ..base() }).is_err());
        assert!(NetworkParams::new(NetworkInputs { lambda_e: -1.0, ..base() }).is_err());
        assert!(NetworkParams::new(NetworkInputs { n_e: 0, ..base() }).is_err());
        assert!(NetworkParams::new(NetworkInputs { eta: 1.5, ..base() }).is_err());
        assert!(NetworkParams::new(NetworkInputs { p_t: 0.0, ..base() }).is_err());
        assert!(NetworkParams::new(NetworkInputs { r_o: f64::NAN, ..base() }).is_err());
    }

    #[test]
    fn thresholds_from_rates() {
        let r = RateThresholds::from_rates(2.0, 1.0).unwrap();
        assert_eq!(r.tau_t(), 3.0);
        assert_eq!(r.tau_e(), 1.0);
        assert_eq!(r.r_e(), 1.0);
        let r = RateThresholds::from_rates(1.5, 0.0).unwrap();
        assert_eq!(r.tau_t(), r.tau_e());
        assert!(RateThresholds::from_rates(1.0, 1.5).is_err());
        let r = RateThresholds::from_thresholds(2.0, 1.0).unwrap();
        assert_relative_eq!(r.r_t(), 3f64.log2(), max_relative = 1e-15);
        assert_relative_eq!(r.r_e(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn constraint_reference_instance() {
        let p = NetworkParams::new(NetworkInputs { lambda_e: 1e-4, n_e: 4, ..base() }).unwrap();
        let c = OutageConstraints::new(&p, 0.3, 0.02).unwrap();
        // mpmath, 40 digits
        assert_relative_eq!(c.sigma_o(), 0.356_674_943_938_732_4, max_relative = 1e-13);
        assert_relative_eq!(c.epsilon_o(), 0.020_202_707_317_519_45, max_relative = 1e-13);
        assert_relative_eq!(c.delta_cap(), 5.734_193_046_680_511, max_relative = 1e-12);
        assert_relative_eq!(c.q_m().unwrap(), 0.211_229_240_155_547_3, max_relative = 1e-12);
        assert!(c.is_feasible());
    }

    #[test]
    fn feasibility_boundary_is_strict() {
        // rho = 1 makes the threshold exactly 2; pick lambda_e so delta_cap = 2.
        let sigma: f64 = 0.5;
        let epsilon: f64 = 0.5;
        let so = -(-sigma).ln_1p();
        let eo = -(-epsilon).ln_1p();
        let lambda_e = so * eo / (PI * 2.0);
        let p = NetworkParams::new(NetworkInputs { lambda_e, n_e: 1, ..base() }).unwrap();
        let c = OutageConstraints::new(&p, sigma, epsilon).unwrap();
        assert_relative_eq!(c.delta_cap(), 2.0, max_relative = 1e-15);
        assert!(!c.is_feasible());
    }

    #[test]
    fn epsilon_towards_one_drives_q_m_to_zero() {
        let p = NetworkParams::new(base()).unwrap();
        let mut last = f64::INFINITY;
        for eps in [0.5, 0.9, 0.99, 0.999_999] {
            let q_m = OutageConstraints::new(&p, 0.3, eps).unwrap().q_m().unwrap();
            assert!(q_m < last);
            last = q_m;
        }
        assert!(last < 0.02);
    }

    #[test]
    fn q_m_decreases_in_rho_and_delta() {
        let mut prev = f64::INFINITY;
        for rho in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let p = NetworkParams::new(NetworkInputs { p_j: rho, ..base() }).unwrap();
            let q_m = OutageConstraints::new(&p, 0.3, 0.02).unwrap().q_m().unwrap();
            assert!(q_m < prev);
            prev = q_m;
        }
        let p = NetworkParams::new(base()).unwrap();
        let mut prev = f64::INFINITY;
        for sigma in [0.2, 0.3, 0.4, 0.5] {
            let c = OutageConstraints::new(&p, sigma, 0.02).unwrap();
            assert!(c.q_m().unwrap() < prev);
            prev = c.q_m().unwrap();
        }
    }

    #[test]
    fn constraint_domain_errors() {
        let p = NetworkParams::new(base()).unwrap();
        assert!(OutageConstraints::new(&p, 0.0, 0.1).is_err());
        assert!(OutageConstraints::new(&p, 0.3, 1.0).is_err());
        let p0 = p.with(|i| i.lambda_e = 0.0).unwrap();
        assert!(OutageConstraints::new(&p0, 0.3, 0.1).is_err());
    }
}
