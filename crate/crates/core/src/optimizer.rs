//! Optimal FD fraction for each objective. Each optimizer first decides the
//! case (infeasible, boundary at `q = 1`, or interior) from closed-form tests,
//! then bisects the sign-carrying auxiliary function.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::metrics::{self, AslnAux, NseeAux, NstAux};
use crate::params::{CaseTag, NetworkParams, OptimizationResult, OutageConstraints, RateThresholds};

/// Lower end of the ASLN bracket; `K(q) → +∞` as `q → 0⁺`.
pub const ASLN_Q_LO: f64 = 1e-12;
/// Offset above `q_m` for the throughput and efficiency brackets.
pub const Q_M_OFFSET: f64 = 1e-12;

/// Bisection stopping rule. The defaults run to (near) machine resolution
/// so that the residual of the root equation is dominated by roundoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for Bisection {
    fn default() -> Self {
        Bisection { tol: 1e-15, max_iter: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `f(x)`, whose magnitude is the reported residual.
    pub f_x: f64,
    pub iterations: usize,
}

/// Bisection on a sign-changing bracket. Stops when the bracket is no wider
/// than `tol`, when `f` hits zero exactly, or when the bracket can no longer
/// be split in floating point. Returns whichever end point has the smaller
/// `|f|`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<Root> {
    if !(tol > 0.0) {
        return domain(format!("bisection tolerance must be positive, got {tol}"));
    }
    if !(lo < hi) {
        return domain(format!("bisection needs lo < hi, got [{lo}, {hi}]"));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Root { x: a, f_x: fa, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, f_x: fb, iterations: 0 });
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi, f_lo: fa, f_hi: fb });
    }
    let best = |a: f64, fa: f64, b: f64, fb: f64, it: usize| {
        if fa.abs() <= fb.abs() {
            Root { x: a, f_x: fa, iterations: it }
        } else {
            Root { x: b, f_x: fb, iterations: it }
        }
    };
    for it in 1..=max_iter {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Ok(best(a, fa, b, fb, it));
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(Root { x: mid, f_x: fm, iterations: it });
        }
        if fm.is_nan() {
            return Err(Error::Numerical(format!("objective is NaN at {mid}")));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        if b - a <= tol {
            return Ok(best(a, fa, b, fb, it));
        }
    }
    Err(Error::Convergence { iterations: max_iter, width: b - a })
}

/// Exhaustive search over `lo, lo + step, ...` (and `hi` itself). The first
/// maximizer wins ties.
pub fn grid_oracle<F: FnMut(f64) -> f64>(mut objective: F, lo: f64, hi: f64, step: f64) -> Result<(f64, f64)> {
    if !(step > 0.0) || !(lo < hi) {
        return domain(format!("grid needs step > 0 and lo < hi, got step {step} on [{lo}, {hi}]"));
    }
    let n = ((hi - lo) / step).floor() as usize;
    let mut best = (lo, objective(lo));
    let mut consider = |q: f64, best: &mut (f64, f64)| {
        let v = objective(q);
        if v > best.1 {
            *best = (q, v);
        }
    };
    for i in 1..=n {
        let q = lo + i as f64 * step;
        if q < hi {
            consider(q, &mut best);
        }
    }
    consider(hi, &mut best);
    Ok(best)
}

/// Maximize the area secure link number over `q`.
pub fn optimize_asln(params: &NetworkParams, rates: &RateThresholds) -> Result<OptimizationResult> {
    optimize_asln_with(params, rates, &Bisection::default())
}

pub fn optimize_asln_with(
    params: &NetworkParams,
    rates: &RateThresholds,
    bisection: &Bisection,
) -> Result<OptimizationResult> {
    if params.lambda_e() <= 0.0 {
        return domain("ASLN optimization needs eavesdroppers (lambda_e > 0); without them q* is 0");
    }
    let aux = AslnAux::new(params, rates)?;
    let k1 = aux.k(1.0);
    let (q_star, case_tag, residual) = if k1 >= 0.0 {
        (1.0, CaseTag::BoundaryOne, 0.0)
    } else {
        let root = bisect(|q| aux.k(q), ASLN_Q_LO, 1.0, bisection.tol, bisection.max_iter)?;
        (root.x, CaseTag::InteriorRoot, root.f_x.abs())
    };
    Ok(OptimizationResult {
        q_star: Some(q_star),
        objective: metrics::asln(params, rates, q_star)?,
        case_tag,
        residual,
    })
}

/// Stationary point of the ASLN under perfect self-interference
/// cancellation, `sqrt(C/B)`; not clamped to 1.
pub fn asln_q_closed_sic(params: &NetworkParams, rates: &RateThresholds) -> Result<f64> {
    if params.eta() != 0.0 {
        return domain(format!("closed form needs eta = 0, got {}", params.eta()));
    }
    if params.rho() <= 0.0 {
        return domain("closed form needs a positive jamming power");
    }
    let delta = params.delta();
    Ok((PI * params.lambda_e() * params.n_e() as f64 / (rates.tau_t() * rates.tau_e()).powf(delta)).sqrt()
        / (params.kappa() * params.lambda_l() * params.rho_delta() * params.r_o()))
}

/// `π λ_e N_e / ε_o`, compared against the thresholds `X` and `Y`.
fn eavesdropping_load(params: &NetworkParams, constraints: &OutageConstraints) -> f64 {
    PI * params.lambda_e() * params.n_e() as f64 / constraints.epsilon_o()
}

fn feasible_aux(params: &NetworkParams, constraints: &OutageConstraints) -> Result<Option<NstAux>> {
    if params.rho() <= 0.0 {
        return Ok(None);
    }
    let aux = NstAux::new(params, constraints)?;
    if eavesdropping_load(params, constraints) >= aux.x_thresh {
        return Ok(None);
    }
    Ok(Some(aux))
}

fn bracket_lo(constraints: &OutageConstraints) -> Result<f64> {
    let q_m = constraints
        .q_m()
        .ok_or_else(|| Error::Numerical("feasible instance without a crossing point q_m".into()))?;
    Ok(q_m + Q_M_OFFSET)
}

/// Maximize the network-wide secrecy throughput over `q`.
pub fn optimize_nst(params: &NetworkParams, constraints: &OutageConstraints) -> Result<OptimizationResult> {
    optimize_nst_with(params, constraints, &Bisection::default())
}

pub fn optimize_nst_with(
    params: &NetworkParams,
    constraints: &OutageConstraints,
    bisection: &Bisection,
) -> Result<OptimizationResult> {
    let Some(aux) = feasible_aux(params, constraints)? else {
        return Ok(OptimizationResult::infeasible());
    };
    let z = eavesdropping_load(params, constraints);
    // The Y test and the sign of φ(1) are equivalent; checking both keeps
    // roundoff at the boundary from producing an unbracketed root.
    let (q_star, case_tag, residual) = if z >= aux.y_thresh || aux.phi(1.0) <= 0.0 {
        (1.0, CaseTag::BoundaryOne, 0.0)
    } else {
        let lo = bracket_lo(constraints)?;
        let root = bisect(|q| aux.phi(q), lo, 1.0, bisection.tol, bisection.max_iter)?;
        (root.x, CaseTag::InteriorRoot, aux.root_lhs(root.x).abs())
    };
    Ok(OptimizationResult {
        q_star: Some(q_star),
        objective: metrics::nst(params, constraints, q_star)?,
        case_tag,
        residual,
    })
}

/// Limit of the throughput-optimal fraction as `λ_l → ∞`:
/// `ρ^{-δ} / (Δ^{1/(1+δ)} - 1)`.
pub fn nst_q_dense_limit(params: &NetworkParams, constraints: &OutageConstraints) -> Result<f64> {
    let cap = constraints.delta_cap();
    if cap <= 1.0 {
        return domain(format!("dense limit needs delta_cap > 1, got {cap}"));
    }
    if params.rho() <= 0.0 {
        return domain("dense limit needs a positive jamming power");
    }
    Ok(1.0 / (params.rho_delta() * (cap.powf(1.0 / (1.0 + params.delta())) - 1.0)))
}

/// Maximize the network-wide secrecy energy efficiency over `q`.
pub fn optimize_nsee(params: &NetworkParams, constraints: &OutageConstraints) -> Result<OptimizationResult> {
    optimize_nsee_with(params, constraints, &Bisection::default())
}

pub fn optimize_nsee_with(
    params: &NetworkParams,
    constraints: &OutageConstraints,
    bisection: &Bisection,
) -> Result<OptimizationResult> {
    let Some(aux) = feasible_aux(params, constraints)? else {
        return Ok(OptimizationResult::infeasible());
    };
    let rho_c = params.rho_c();
    let (q_star, case_tag, residual) = if metrics::q_of(&aux, rho_c, 1.0) >= 0.0 {
        (1.0, CaseTag::BoundaryOne, 0.0)
    } else {
        let lo = bracket_lo(constraints)?;
        let root = bisect(|q| metrics::q_of(&aux, rho_c, q), lo, 1.0, bisection.tol, bisection.max_iter)?;
        (root.x, CaseTag::InteriorRoot, root.f_x.abs())
    };
    Ok(OptimizationResult {
        q_star: Some(q_star),
        objective: metrics::nsee(params, constraints, q_star)?,
        case_tag,
        residual,
    })
}

/// `true` when the closed-form `W` test places the NSEE optimum at `q = 1`.
pub fn nsee_boundary_by_w(params: &NetworkParams, constraints: &OutageConstraints) -> Result<Option<bool>> {
    let Some(aux) = feasible_aux(params, constraints)? else {
        return Ok(None);
    };
    let w_cap = NseeAux::new(&aux, params.rho_delta()).w_cap;
    let rho_c = params.rho_c();
    Ok(Some(w_cap / aux.w(1.0) > params.delta() * rho_c / (1.0 + rho_c)))
}

/// Throughput level crossings `q_st^(1) < q_st^(2)` bounding the region
/// where `Ω(q) > omega_min`; `None` when no fraction exceeds `omega_min`.
pub fn throughput_level_crossings(
    params: &NetworkParams,
    constraints: &OutageConstraints,
    omega_min: f64,
) -> Result<Option<(f64, f64)>> {
    if !(omega_min >= 0.0) {
        return domain(format!("omega_min must be non-negative, got {omega_min}"));
    }
    let best = optimize_nst(params, constraints)?;
    let Some(q_st) = best.q_star else {
        return Ok(None);
    };
    if best.objective <= omega_min {
        return Ok(None);
    }
    let q_m = constraints.q_m().expect("feasible instance has q_m");
    let bis = Bisection::default();
    let gap = |q: f64| metrics::nst(params, constraints, q).map(|o| o - omega_min).unwrap_or(f64::NAN);
    let lower = if omega_min == 0.0 {
        q_m
    } else {
        bisect(gap, q_m, q_st, bis.tol, bis.max_iter)?.x
    };
    let upper = if gap(1.0) >= 0.0 { 1.0 } else { bisect(gap, q_st, 1.0, bis.tol, bis.max_iter)?.x };
    Ok(Some((lower, upper)))
}

/// Maximize the NSEE subject to `Ω(q) > omega_min`. When the floor cannot be
/// met the result is `Infeasible` with zero objective.
pub fn optimize_nsee_constrained(
    params: &NetworkParams,
    constraints: &OutageConstraints,
    omega_min: f64,
) -> Result<OptimizationResult> {
    let Some((lower, upper)) = throughput_level_crossings(params, constraints, omega_min)? else {
        return Ok(OptimizationResult::infeasible());
    };
    let free = optimize_nsee(params, constraints)?;
    let q_ee = free.q_star.expect("feasible instance has an NSEE optimum");
    if q_ee >= lower && q_ee <= upper {
        return Ok(free);
    }
    let q = q_ee.clamp(lower, upper);
    let omega = metrics::nst(params, constraints, q)?;
    Ok(OptimizationResult {
        q_star: Some(q),
        objective: metrics::nsee(params, constraints, q)?,
        case_tag: CaseTag::ConstrainedRoot,
        residual: (omega - omega_min).abs(),
    })
}
