//! Network-wide objectives: area secure link number (ASLN), network-wide
//! secrecy throughput (NST) and secrecy energy efficiency (NSEE), plus the
//! auxiliary functions whose signs drive the optimizers.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::params::{NetworkParams, OutageConstraints, RateThresholds};

fn check_open_fraction(q: f64) -> Result<()> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        domain(format!("q must lie in (0, 1], got {q}"))
    }
}

/// Constants of the ASLN shape function `F(q) = (qA + 1 - q) e^{-Bq - C/q}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AslnAux {
    /// Self-interference survival `e^{-ρ η r_o^α τ_t}`.
    pub a: f64,
    /// Jamming cost to legitimate links, `κ r_o² τ_t^δ ρ^δ λ_l`.
    pub b: f64,
    /// Eavesdropping pressure, `π λ_e N_e / (κ λ_l ρ^δ τ_e^δ)`.
    pub c: f64,
}

impl AslnAux {
    pub fn new(params: &NetworkParams, rates: &RateThresholds) -> Result<Self> {
        if params.rho() <= 0.0 {
            return domain("ASLN optimization needs a positive jamming power");
        }
        let tau_t = rates.tau_t();
        let tau_e = rates.tau_e();
        let delta = params.delta();
        let rd = params.rho_delta();
        let a = (-params.rho() * params.eta() * params.r_o().powf(params.alpha()) * tau_t).exp();
        let b = params.kappa() * params.r_o().powi(2) * tau_t.powf(delta) * rd * params.lambda_l();
        let c = PI * params.lambda_e() * params.n_e() as f64
            / (params.kappa() * params.lambda_l() * rd * tau_e.powf(delta));
        Ok(AslnAux { a, b, c })
    }

    /// `F(q)`.
    pub fn f(&self, q: f64) -> f64 {
        (q * self.a + 1.0 - q) * (-self.b * q - self.c / q).exp()
    }

    /// `K(q)`, which has the sign of `F'(q)`.
    pub fn k(&self, q: f64) -> f64 {
        (self.a + 1.0 / q - 1.0) * (1.0 + self.c / q - self.b * q) - 1.0 / q
    }

    /// `F'(q) = K(q) e^{-Bq - C/q}`.
    pub fn f_prime(&self, q: f64) -> f64 {
        self.k(q) * (-self.b * q - self.c / q).exp()
    }
}

/// ASLN with the robust-design outage expressions (upper-bounded connection
/// outage, large-antenna secrecy outage).
pub fn asln(params: &NetworkParams, rates: &RateThresholds, q: f64) -> Result<f64> {
    check_open_fraction(q)?;
    let aux = AslnAux::new(params, rates)?;
    let lead = params.lambda_l()
        * (-params.kappa() * params.r_o().powi(2) * rates.tau_t().powf(params.delta()) * params.lambda_l()).exp();
    Ok(lead * aux.f(q))
}

/// Outage probabilities of both link types, as fed to [`asln_general`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkOutages {
    pub pco_hd: f64,
    pub pco_fd: f64,
    pub pso_hd: f64,
    pub pso_fd: f64,
}

/// ASLN from arbitrary outage probabilities:
/// `q λ_l (1 - p_co^FD)(1 - p_so^FD) + (1 - q) λ_l (1 - p_co^HD)(1 - p_so^HD)`.
pub fn asln_general(lambda_l: f64, q: f64, outages: &LinkOutages) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return domain(format!("q must lie in [0, 1], got {q}"));
    }
    for p in [outages.pco_hd, outages.pco_fd, outages.pso_hd, outages.pso_fd] {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("outage probabilities must lie in [0, 1], got {p}"));
        }
    }
    Ok(q * lambda_l * (1.0 - outages.pco_fd) * (1.0 - outages.pso_fd)
        + (1.0 - q) * lambda_l * (1.0 - outages.pco_hd) * (1.0 - outages.pso_hd))
}

/// `(F(q), K(q))`.
pub fn asln_aux(params: &NetworkParams, rates: &RateThresholds, q: f64) -> Result<(f64, f64)> {
    check_open_fraction(q)?;
    let aux = AslnAux::new(params, rates)?;
    Ok((aux.f(q), aux.k(q)))
}

/// Constants of the perfect-SIC throughput design: `w1(q) = 1 + τ_t^o(q)`,
/// `w2(q) = 1 + τ_e^o(q)`, and the case thresholds `X`, `Y` on
/// `π λ_e N_e / ε_o`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NstAux {
    pub beta1: f64,
    pub beta2: f64,
    pub x_thresh: f64,
    pub y_thresh: f64,
    rho_delta: f64,
    delta: f64,
    half_alpha: f64,
}

impl NstAux {
    pub fn new(params: &NetworkParams, constraints: &OutageConstraints) -> Result<Self> {
        if params.rho() <= 0.0 {
            return domain("throughput design needs a positive jamming power");
        }
        let half_alpha = 0.5 * params.alpha();
        let kappa = params.kappa();
        let lambda_l = params.lambda_l();
        let r_o2 = params.r_o().powi(2);
        let rd = params.rho_delta();
        let delta = params.delta();
        let beta1 = (constraints.sigma_o() / (kappa * lambda_l * r_o2)).powf(half_alpha);
        let beta2 = (PI * params.lambda_e() * params.n_e() as f64 / (kappa * lambda_l * constraints.epsilon_o()))
            .powf(half_alpha);
        let x_thresh = constraints.sigma_o() / (r_o2 * (1.0 + 1.0 / rd));
        let y_thresh = ((kappa * lambda_l).powf(-half_alpha) * params.rho().powf(-(1.0 + delta))
            + (1.0 + 1.0 / rd) * x_thresh.powf(-half_alpha))
        .powf(-delta);
        Ok(NstAux { beta1, beta2, x_thresh, y_thresh, rho_delta: rd, delta, half_alpha })
    }

    /// `τ_t^o(q) = w1(q) - 1`.
    pub fn tau_t(&self, q: f64) -> f64 {
        self.beta1 * (1.0 + self.rho_delta * q).powf(-self.half_alpha)
    }

    /// `τ_e^o(q) = w2(q) - 1`.
    pub fn tau_e(&self, q: f64) -> f64 {
        self.beta2 * (self.rho_delta * q).powf(-self.half_alpha)
    }

    pub fn w1(&self, q: f64) -> f64 {
        1.0 + self.tau_t(q)
    }

    pub fn w2(&self, q: f64) -> f64 {
        1.0 + self.tau_e(q)
    }

    /// `w(q) = ln(w1/w2)`; negative below `q_m`.
    pub fn w(&self, q: f64) -> f64 {
        self.tau_t(q).ln_1p() - self.tau_e(q).ln_1p()
    }

    /// Analytic `w'(q) = w1'/w1 - w2'/w2`.
    pub fn w_prime(&self, q: f64) -> f64 {
        let t1 = self.tau_t(q);
        let t2 = self.tau_e(q);
        let rdq = self.rho_delta * q;
        // w_i'/w_i with (w_i - 1)/w_i = t_i/(1 + t_i)
        let d1 = -self.rho_delta * (t1 / (1.0 + t1)) / (self.delta * (1.0 + rdq));
        let d2 = -(t2 / (1.0 + t2)) / (self.delta * q);
        d1 - d2
    }

    /// `φ(q)`, with `sign(w'(q)) = -sign(φ(q))`; equal to the left-hand side
    /// of the interior optimality equation.
    pub fn phi(&self, q: f64) -> f64 {
        let t1 = self.tau_t(q);
        let t2 = self.tau_e(q);
        let rdq = self.rho_delta * q;
        let ratio = (t2 / (1.0 + t2)) / (t1 / (1.0 + t1));
        1.0 - (1.0 + rdq) / rdq * ratio
    }

    /// Left-hand side of the interior optimality equation in its
    /// `β`-polynomial form; algebraically identical to [`NstAux::phi`].
    pub fn root_lhs(&self, q: f64) -> f64 {
        let rdq = self.rho_delta * q;
        let num = 1.0 + rdq + (1.0 + rdq).powf(1.0 + self.half_alpha) / self.beta1;
        let den = rdq + rdq.powf(1.0 + self.half_alpha) / self.beta2;
        1.0 - num / den
    }
}

/// Constant `W` of the energy-efficiency boundary test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NseeAux {
    pub w_cap: f64,
}

impl NseeAux {
    pub fn new(nst: &NstAux, rho_delta: f64) -> Self {
        let w_cap = 1.0 - 1.0 / nst.w2(1.0) - (1.0 - 1.0 / nst.w1(1.0)) / (1.0 + 1.0 / rho_delta);
        NseeAux { w_cap }
    }
}

/// `J(q) = w(q) / (1 + ρ_c q)`.
pub fn j_of(nst: &NstAux, rho_c: f64, q: f64) -> f64 {
    nst.w(q) / (1.0 + rho_c * q)
}

/// `Q(q) = w'(q)(1 + ρ_c q) - ρ_c w(q)`, which has the sign of `J'(q)`.
pub fn q_of(nst: &NstAux, rho_c: f64, q: f64) -> f64 {
    nst.w_prime(q) * (1.0 + rho_c * q) - rho_c * nst.w(q)
}

/// `(τ_t^o, τ_e^o)`, the SIR thresholds meeting the outage targets exactly
/// under perfect self-interference cancellation.
pub fn nst_thresholds(params: &NetworkParams, constraints: &OutageConstraints, q: f64) -> Result<(f64, f64)> {
    check_open_fraction(q)?;
    let aux = NstAux::new(params, constraints)?;
    Ok((aux.tau_t(q), aux.tau_e(q)))
}

/// Network-wide secrecy throughput `λ_l (1 - σ) [ln((1 + τ_t^o)/(1 + τ_e^o))]⁺`
/// in nats/s/Hz per unit area. Zero at or below `q_m`.
pub fn nst(params: &NetworkParams, constraints: &OutageConstraints, q: f64) -> Result<f64> {
    if q == 0.0 {
        return Ok(0.0);
    }
    check_open_fraction(q)?;
    let aux = NstAux::new(params, constraints)?;
    Ok(params.lambda_l() * (1.0 - constraints.sigma()) * aux.w(q).max(0.0))
}

fn check_above_q_m(constraints: &OutageConstraints, q: f64) -> Result<()> {
    match constraints.q_m() {
        Some(q_m) if q_m < 1.0 && q >= q_m && q <= 1.0 => Ok(()),
        Some(q_m) => domain(format!("q must lie in [q_m, 1] = [{q_m}, 1], got {q}")),
        None => domain("no positive secrecy rate is reachable (delta_cap <= 1)"),
    }
}

/// `(w(q), φ(q))` on `[q_m, 1]`.
pub fn nst_aux(params: &NetworkParams, constraints: &OutageConstraints, q: f64) -> Result<(f64, f64)> {
    check_above_q_m(constraints, q)?;
    let aux = NstAux::new(params, constraints)?;
    Ok((aux.w(q), aux.phi(q)))
}

/// Network-wide secrecy energy efficiency `Ω / (λ_l (P_t + P_c) + q λ_l P_j)`.
pub fn nsee(params: &NetworkParams, constraints: &OutageConstraints, q: f64) -> Result<f64> {
    let omega = nst(params, constraints, q)?;
    if omega == 0.0 {
        return Ok(0.0);
    }
    let lambda_l = params.lambda_l();
    Ok(omega / (lambda_l * (params.p_t() + params.p_c()) + q * lambda_l * params.p_j()))
}

/// `(J(q), Q(q), W)` on `[q_m, 1]`.
pub fn nsee_aux(params: &NetworkParams, constraints: &OutageConstraints, q: f64) -> Result<(f64, f64, f64)> {
    check_above_q_m(constraints, q)?;
    let aux = NstAux::new(params, constraints)?;
    let rho_c = params.rho_c();
    let w_cap = NseeAux::new(&aux, params.rho_delta()).w_cap;
    Ok((j_of(&aux, rho_c, q), q_of(&aux, rho_c, q), w_cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::NetworkInputs;
    use approx::assert_relative_eq;

    fn nst_reference() -> (NetworkParams, OutageConstraints) {
        let p = NetworkParams::new(NetworkInputs {
            alpha: 4.0,
            lambda_l: 1e-3,
            lambda_e: 1e-4,
            n_e: 4,
            r_o: 1.0,
            ..Default::default()
        })
        .unwrap();
        let c = OutageConstraints::new(&p, 0.3, 0.02).unwrap();
        (p, c)
    }

    fn fig4(eta: f64, rho: f64) -> NetworkParams {
        NetworkParams::new(NetworkInputs {
            alpha: 3.0,
            lambda_l: 1e-2,
            lambda_e: 1e-3,
            n_e: 4,
            r_o: 1.0,
            p_j: rho,
            eta,
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn k_has_the_sign_of_f_prime() {
        let params = fig4(10f64.powf(-0.7), 1.0);
        let rates = RateThresholds::from_thresholds(2.0, 1.0).unwrap();
        let aux = AslnAux::new(&params, &rates).unwrap();
        let h = 1e-6;
        for i in 1..100 {
            let q = i as f64 / 100.0;
            let fd = (aux.f(q + h) - aux.f(q - h)) / (2.0 * h);
            assert_relative_eq!(fd, aux.f_prime(q), max_relative = 1e-5, epsilon = 1e-12);
            assert_eq!(fd.signum(), aux.k(q).signum());
        }
    }

    #[test]
    fn k_boundary_values() {
        let aux = AslnAux { a: 0.7, b: 0.3, c: 0.05 };
        assert_relative_eq!(aux.k(1.0), 0.7 * (1.0 + 0.05 - 0.3) - 1.0, max_relative = 1e-15);
        // K(q) ~ C/q² near 0
        let q = 1e-6;
        assert_relative_eq!(aux.k(q) * q * q, aux.c, max_relative = 1e-4);
        let tie = AslnAux { a: 1.0, b: 0.5, c: 0.5 };
        assert_eq!(tie.k(1.0), 0.0);
    }

    #[test]
    fn asln_decreases_without_eavesdroppers() {
        let params = fig4(0.2, 1.0).with(|i| i.lambda_e = 0.0).unwrap();
        let rates = RateThresholds::from_thresholds(2.0, 1.0).unwrap();
        let mut last = f64::INFINITY;
        for i in 1..=200 {
            let n = asln(&params, &rates, i as f64 / 200.0).unwrap();
            assert!(n < last);
            last = n;
        }
    }

    #[test]
    fn perfect_sic_stationary_point() {
        let params = fig4(0.0, 1.0).with(|i| i.lambda_e = 1e-4).unwrap();
        let rates = RateThresholds::from_thresholds(2.0, 1.0).unwrap();
        let aux = AslnAux::new(&params, &rates).unwrap();
        assert_eq!(aux.a, 1.0);
        let q = (aux.c / aux.b).sqrt();
        assert!(q < 1.0);
        assert!(aux.k(q).abs() < 1e-12);
    }

    #[test]
    fn asln_general_matches_robust_form() {
        use crate::outage::{pco_bounds, pso_large_ne};
        use crate::params::DuplexMode;
        let params = fig4(0.2, 2.0);
        let rates = RateThresholds::from_thresholds(2.0, 1.0).unwrap();
        let q = 0.4;
        let (pco_fd, _) = pco_bounds(&params, DuplexMode::Fd, q, 2.0).unwrap();
        let (pco_hd, _) = pco_bounds(&params, DuplexMode::Hd, q, 2.0).unwrap();
        let pso = pso_large_ne(&params, q, 1.0).unwrap();
        let general = asln_general(
            params.lambda_l(),
            q,
            &LinkOutages { pco_hd, pco_fd, pso_hd: pso, pso_fd: pso },
        )
        .unwrap();
        assert_relative_eq!(general, asln(&params, &rates, q).unwrap(), max_relative = 1e-12);
        assert!(asln_general(1.0, 0.5, &LinkOutages { pco_hd: 1.5, pco_fd: 0.0, pso_hd: 0.0, pso_fd: 0.0 }).is_err());
    }

    #[test]
    fn throughput_thresholds_reference() {
        let (p, c) = nst_reference();
        let (tt, te) = nst_thresholds(&p, &c, 0.5).unwrap();
        // mpmath
        assert_relative_eq!(tt, 2321.791_333_314_563_8, max_relative = 1e-12);
        assert!(tt > te);
        let mut last = (f64::INFINITY, f64::INFINITY);
        for i in 1..=20 {
            let (tt, te) = nst_thresholds(&p, &c, i as f64 / 20.0).unwrap();
            assert!(tt < last.0 && te < last.1);
            last = (tt, te);
        }
        assert!(nst_thresholds(&p, &c, 0.0).is_err());
    }

    #[test]
    fn thresholds_cross_at_q_m() {
        let (p, c) = nst_reference();
        let q_m = c.q_m().unwrap();
        let aux = NstAux::new(&p, &c).unwrap();
        assert_relative_eq!(aux.tau_t(q_m), aux.tau_e(q_m), max_relative = 1e-12);
        for q in [q_m * 0.5, q_m * 0.99] {
            assert!(aux.tau_t(q) < aux.tau_e(q));
        }
        for q in [q_m * 1.01, 0.5, 1.0] {
            assert!(aux.tau_t(q) > aux.tau_e(q));
        }
        assert!(nst(&p, &c, q_m).unwrap().abs() < 1e-15);
        assert_eq!(nst(&p, &c, 0.5 * q_m).unwrap(), 0.0);
        assert!(nst(&p, &c, 0.5).unwrap() > 0.0);
    }

    #[test]
    fn phi_at_q_m_and_monotone() {
        let (p, c) = nst_reference();
        let q_m = c.q_m().unwrap();
        let (w, phi) = nst_aux(&p, &c, q_m).unwrap();
        assert!(w.abs() < 1e-12);
        assert_relative_eq!(phi, -1.0 / (p.rho_delta() * q_m), max_relative = 1e-9);
        let aux = NstAux::new(&p, &c).unwrap();
        let mut last = f64::NEG_INFINITY;
        for i in 1..=1000 {
            let q = q_m + (1.0 - q_m) * i as f64 / 1000.0;
            let phi = aux.phi(q);
            assert!(phi > last);
            assert_relative_eq!(phi, aux.root_lhs(q), max_relative = 1e-9, epsilon = 1e-12);
            last = phi;
        }
        assert!(nst_aux(&p, &c, 0.5 * q_m).is_err());
    }

    #[test]
    fn w_prime_matches_finite_difference() {
        let (p, c) = nst_reference();
        let aux = NstAux::new(&p, &c).unwrap();
        let h = 1e-6;
        for q in [0.25, 0.4, 0.6, 0.9, 0.999] {
            let fd = (aux.w(q + h) - aux.w(q - h)) / (2.0 * h);
            assert_relative_eq!(fd, aux.w_prime(q), max_relative = 1e-5);
            assert_eq!(aux.w_prime(q).signum(), -aux.phi(q).signum());
        }
    }

    #[test]
    fn throughput_vanishes_as_sigma_to_one() {
        let (p, _) = nst_reference();
        let c = OutageConstraints::new(&p, 1.0 - 1e-12, 0.02).unwrap();
        assert!(nst(&p, &c, 0.8).unwrap() < 1e-12);
    }

    #[test]
    fn nsee_identity_and_zero() {
        let (p, _) = nst_reference();
        let p = p.with(|i| {
            i.p_c = 0.5;
            i.p_j = 2.0;
        })
        .unwrap();
        let c = OutageConstraints::new(&p, 0.3, 0.02).unwrap();
        let aux = NstAux::new(&p, &c).unwrap();
        for q in [0.3, 0.6, 1.0] {
            let psi = nsee(&p, &c, q).unwrap();
            let lhs = psi * (p.p_t() + p.p_c()) / (1.0 - c.sigma());
            assert_relative_eq!(lhs, aux.w(q) / (1.0 + p.rho_c() * q), max_relative = 1e-12);
            let (j, _, _) = nsee_aux(&p, &c, q).unwrap();
            assert_relative_eq!(lhs, j, max_relative = 1e-12);
        }
        let q_m = c.q_m().unwrap();
        assert_eq!(nsee(&p, &c, 0.5 * q_m).unwrap(), 0.0);
    }

    #[test]
    fn q_positive_at_q_m_and_boundary_test_agrees() {
        for (p_j, p_c) in [(1.0, 0.0), (1.0, 5.0), (4.0, 1.0), (0.3, 0.1)] {
            let (p, _) = nst_reference();
            let p = p.with(|i| {
                i.p_j = p_j;
                i.p_c = p_c;
            })
            .unwrap();
            let c = OutageConstraints::new(&p, 0.3, 0.02).unwrap();
            if !c.is_feasible() {
                continue;
            }
            let aux = NstAux::new(&p, &c).unwrap();
            let q_m = c.q_m().unwrap();
            let (_, q_at_m, w_cap) = nsee_aux(&p, &c, q_m).unwrap();
            assert!(q_at_m > 0.0);
            let (_, q_at_1, _) = nsee_aux(&p, &c, 1.0).unwrap();
            let by_w = w_cap / aux.w(1.0) > p.delta() * p.rho_c() / (1.0 + p.rho_c());
            assert_eq!(q_at_1 > 0.0, by_w);
        }
    }

    #[test]
    fn q_tends_to_w_prime_without_jamming_cost() {
        let (p, _) = nst_reference();
        let p = p.with(|i| i.p_c = 1e12).unwrap();
        let c = OutageConstraints::new(&p, 0.3, 0.02).unwrap();
        let aux = NstAux::new(&p, &c).unwrap();
        let (_, q, _) = nsee_aux(&p, &c, 0.6).unwrap();
        assert_relative_eq!(q, aux.w_prime(0.6), max_relative = 1e-9);
    }

    #[test]
    fn y_threshold_below_x() {
        let (p, c) = nst_reference();
        let aux = NstAux::new(&p, &c).unwrap();
        assert!(aux.y_thresh < aux.x_thresh);
        let z = PI * p.lambda_e() * p.n_e() as f64 / c.epsilon_o();
        assert!(z < aux.x_thresh);
    }
}
