//! Connection and secrecy outage probabilities of a typical link.
//!
//! Exact (integral) forms, closed-form bounds and the small-distance
//! approximation of the full-duplex secrecy outage.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Result};
use crate::params::{DuplexMode, NetworkParams};
use crate::quadrature::{integrate, integrate_pieces, QuadratureSpec};

fn check_fraction(q: f64) -> Result<()> {
    if (0.0..=1.0).contains(&q) {
        Ok(())
    } else {
        domain(format!("q must lie in [0, 1], got {q}"))
    }
}

fn check_threshold(name: &str, tau: f64) -> Result<()> {
    if tau >= 0.0 && tau.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be a non-negative finite threshold, got {tau}"))
    }
}

/// Exponent of the self-interference factor, `1_FD * rho * eta * r_o^alpha * tau_t`.
fn self_interference_exponent(params: &NetworkParams, mode: DuplexMode, tau_t: f64) -> f64 {
    mode.indicator() * params.rho() * params.eta() * params.r_o().powf(params.alpha()) * tau_t
}

/// Laplace-transform exponent of the FD-pair interference per unit FD
/// density:
///
/// `∫_0^∞ ∫_0^{2π} (1 - 1/(1 + ρ s v^-α) · 1/(1 + s d^-α)) v dθ dv`
///
/// with `s = r_o^α τ_t` and `d² = v² + r_o² - 2 v r_o cos θ` the distance
/// from the origin to the jammer's paired transmitter.
pub fn fd_pair_laplace_exponent(params: &NetworkParams, tau_t: f64, quad: &QuadratureSpec) -> Result<f64> {
    quad.validate()?;
    let alpha = params.alpha();
    let r_o = params.r_o();
    let rho = params.rho();
    let s = r_o.powf(alpha) * tau_t;
    if s == 0.0 {
        return Ok(0.0);
    }
    let inner_tol = 0.1 * quad.rel_tol;
    let max_panels = quad.max_panels;

    // θ-integral at fixed v, times v. The integrand is symmetric in θ.
    let ring = |v: f64| -> Result<f64> {
        let x = rho * s * v.powf(-alpha);
        let f = |theta: f64| {
            let d2 = (v * v + r_o * r_o - 2.0 * v * r_o * theta.cos()).max(0.0);
            let y = s * d2.powf(-0.5 * alpha);
            if y.is_infinite() {
                return 1.0;
            }
            // 1 - 1/((1+x)(1+y)) without cancellation
            (x + y + x * y) / ((1.0 + x) * (1.0 + y))
        };
        let est = integrate(f, 0.0, PI, inner_tol, 0.0, max_panels)?;
        Ok(2.0 * est.value * v)
    };

    let mut failure = None;
    let mut guarded = |v: f64| match ring(v) {
        Ok(val) => val,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let near = integrate_pieces(&mut guarded, &[0.0, 0.5 * r_o, r_o, 2.0 * r_o], quad.rel_tol, 0.0, max_panels)?;
    // Tail [2 r_o, ∞): v = 2 r_o y^(-β) with β = 1/(α-2) flattens the
    // v^(1-α) decay into a bounded integrand on (0, 1].
    let beta = 1.0 / (alpha - 2.0);
    let v0 = 2.0 * r_o;
    let tail = integrate(
        |y: f64| {
            if y <= 0.0 {
                return 0.0;
            }
            let v = v0 * y.powf(-beta);
            let jac = v0 * beta * y.powf(-beta - 1.0);
            let val = guarded(v) * jac;
            if val.is_finite() {
                val
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        quad.rel_tol,
        0.0,
        max_panels,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(near.value + tail.value)
}

/// Exact connection outage probability of a typical `mode`-link.
pub fn pco_exact(
    params: &NetworkParams,
    mode: DuplexMode,
    q: f64,
    tau_t: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_fraction(q)?;
    check_threshold("tau_t", tau_t)?;
    let lambda_l = params.lambda_l();
    let hd = params.kappa() * (1.0 - q) * lambda_l * params.r_o().powi(2) * tau_t.powf(params.delta());
    let fd = if q > 0.0 { q * lambda_l * fd_pair_laplace_exponent(params, tau_t, quad)? } else { 0.0 };
    let exponent = self_interference_exponent(params, mode, tau_t) + hd + fd;
    Ok(-(-exponent).exp_m1())
}

/// Closed-form `(upper, lower)` bounds on the connection outage probability.
pub fn pco_bounds(params: &NetworkParams, mode: DuplexMode, q: f64, tau_t: f64) -> Result<(f64, f64)> {
    check_fraction(q)?;
    check_threshold("tau_t", tau_t)?;
    let si = self_interference_exponent(params, mode, tau_t);
    let base = params.kappa() * params.r_o().powi(2) * tau_t.powf(params.delta()) * params.lambda_l();
    let rd = params.rho_delta();
    let delta = params.delta();
    let upper = si + base * (1.0 + rd * q);
    let lower = si + base * (1.0 + 0.5 * ((1.0 + delta) * rd - (1.0 - delta)) * q);
    Ok((-(-upper).exp_m1(), -(-lower).exp_m1()))
}

/// Secrecy outage exponent `π λ_e N_e / (κ q λ_l ρ^δ τ_e^δ)`, or `None`
/// when it diverges (no jamming at all).
fn hd_secrecy_exponent(params: &NetworkParams, q: f64, tau_e: f64) -> Option<f64> {
    let jam = params.kappa() * q * params.lambda_l() * params.rho_delta() * tau_e.powf(params.delta());
    if jam > 0.0 {
        Some(PI * params.lambda_e() * params.n_e() as f64 / jam)
    } else {
        None
    }
}

fn secrecy_inputs(params: &NetworkParams, q: f64, tau_e: f64) -> Result<()> {
    check_fraction(q)?;
    if !(tau_e > 0.0 && tau_e.is_finite()) {
        return domain(format!("tau_e must be positive, got {tau_e}"));
    }
    let _ = params;
    Ok(())
}

/// Closed-form secrecy outage probability of an HD link (also the
/// large-antenna form used for both modes).
///
/// Returns 1 when `q = 0` or `rho = 0` with eavesdroppers present.
pub fn pso_hd_closed(params: &NetworkParams, q: f64, tau_e: f64) -> Result<f64> {
    secrecy_inputs(params, q, tau_e)?;
    if params.lambda_e() == 0.0 {
        return Ok(0.0);
    }
    Ok(match hd_secrecy_exponent(params, q, tau_e) {
        Some(x) => -(-x).exp_m1(),
        None => 1.0,
    })
}

/// Large-`N_e` secrecy outage shared by both modes; the same expression as
/// [`pso_hd_closed`].
pub fn pso_large_ne(params: &NetworkParams, q: f64, tau_e: f64) -> Result<f64> {
    pso_hd_closed(params, q, tau_e)
}

/// Small-`r_o` approximation of the FD secrecy outage probability.
pub fn pso_fd_approx(params: &NetworkParams, q: f64, tau_e: f64) -> Result<f64> {
    secrecy_inputs(params, q, tau_e)?;
    if params.lambda_e() == 0.0 {
        return Ok(0.0);
    }
    let rt = params.rho() * tau_e;
    let factor = 1.0 - (rt / params.n_e() as f64) / (1.0 + rt);
    Ok(match hd_secrecy_exponent(params, q, tau_e) {
        Some(x) => -(-x * factor).exp_m1(),
        None => 1.0,
    })
}

/// Upper bound on the secrecy outage probability of a typical `mode`-link,
/// evaluated by two-dimensional quadrature of every `(n, i)` term.
pub fn pso_upper(
    params: &NetworkParams,
    mode: DuplexMode,
    q: f64,
    tau_e: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    secrecy_inputs(params, q, tau_e)?;
    quad.validate()?;
    if params.lambda_e() == 0.0 {
        return Ok(0.0);
    }
    let delta = params.delta();
    let a = params.kappa() * q * params.lambda_l() * params.rho_delta() * tau_e.powf(delta);
    if a <= 0.0 {
        return Ok(1.0);
    }
    let mut sum = 0.0;
    for n in 0..params.n_e() as usize {
        for i in 0..=n.min(1) {
            sum += xi_term(params, mode, tau_e, a, n - i, i, quad)?;
        }
    }
    Ok(-(-params.lambda_e() * sum).exp_m1())
}

/// `a^k / k! · Ξ_{n,i}` with `k = n - i`, after substituting `u = a v²`:
///
/// `1/(2a) ∫_0^U ∫_0^{2π} Λ_i(θ, √(u/a)) u^k e^{-u} / k! dθ du`.
fn xi_term(
    params: &NetworkParams,
    mode: DuplexMode,
    tau_e: f64,
    a: f64,
    k: usize,
    i: usize,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let ln_k_fact = ln_gamma(k as f64 + 1.0);
    let weight = |u: f64| {
        if u <= 0.0 {
            if k == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            (k as f64 * u.ln() - u - ln_k_fact).exp()
        }
    };
    let upper = quad.tail_cut.upper_limit(k);

    if !mode.is_fd() {
        // Λ^HD is 1 for i = 0 and 0 otherwise.
        if i > 0 {
            return Ok(0.0);
        }
        let est = integrate(weight, 0.0, upper, quad.rel_tol, 0.0, quad.max_panels)?;
        return Ok(2.0 * PI * est.value / (2.0 * a));
    }

    let alpha = params.alpha();
    let r_o = params.r_o();
    let rt = params.rho() * tau_e;
    let inner_tol = 0.1 * quad.rel_tol;
    let max_panels = quad.max_panels;
    let ring = |u: f64| -> Result<f64> {
        let v = (u / a).sqrt();
        let lambda = |theta: f64| {
            let d2 = (v * v + r_o * r_o - 2.0 * v * r_o * theta.cos()).max(0.0);
            let x = rt * (v * v / d2).powf(0.5 * alpha);
            if x.is_infinite() {
                return if i == 0 { 0.0 } else { 1.0 };
            }
            if i == 0 {
                1.0 / (1.0 + x)
            } else {
                x / (1.0 + x)
            }
        };
        let est = integrate(lambda, 0.0, PI, inner_tol, 0.0, max_panels)?;
        Ok(2.0 * est.value)
    };
    let mut failure = None;
    let integrand = |u: f64| {
        let w = weight(u);
        if w == 0.0 {
            return 0.0;
        }
        match ring(u) {
            Ok(val) => val * w,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let u_o = a * r_o * r_o;
    let mut breaks = vec![0.0];
    for b in [0.5 * u_o, u_o, 2.0 * u_o] {
        if b < upper {
            breaks.push(b);
        }
    }
    breaks.push(upper);
    let est = integrate_pieces(integrand, &breaks, quad.rel_tol, 0.0, max_panels)?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(est.value / (2.0 * a))
}
