//! One-dimensional searches along a dual direction.
//!
//! Every search works with `g(t) = f*(x* − t·a) + t·β`, whose derivative
//! `g'(t) = β − ⟨a, ∇f*(x* − t·a)⟩` is nondecreasing. Minimizing `g` over
//! `t ∈ ℝ` is the Bregman projection onto the hyperplane `⟨a, x⟩ = β`;
//! restricting to `t ≥ 0` gives the projection onto the halfspace
//! `⟨a, x⟩ ≤ β`.

use crate::error::{Error, Result};
use crate::objectives::Objective;
use crate::vector::{dot, norm2_sq};

/// Where the step size may live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `t ≥ 0`: halfspace targets.
    Nonnegative,
    /// `t ∈ ℝ`: hyperplane targets.
    Real,
}

/// `g'(t)` for a general objective.
pub fn linesearch_derivative(
    obj: &dyn Objective,
    x_star: &[f64],
    a: &[f64],
    beta: f64,
    t: f64,
) -> f64 {
    let shifted: Vec<f64> = x_star.iter().zip(a).map(|(s, ai)| s - t * ai).collect();
    beta - dot(a, &obj.grad_conjugate(&shifted))
}

/// `g(t)` for a general objective.
pub fn linesearch_value(obj: &dyn Objective, x_star: &[f64], a: &[f64], beta: f64, t: f64) -> f64 {
    let shifted: Vec<f64> = x_star.iter().zip(a).map(|(s, ai)| s - t * ai).collect();
    obj.conjugate(&shifted) + t * beta
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Zone {
    Above,
    Dead,
    Below,
}

impl Zone {
    fn sign(self) -> f64 {
        match self {
            Zone::Above => 1.0,
            Zone::Dead => 0.0,
            Zone::Below => -1.0,
        }
    }
}

/// Exact minimizer of `g(t) = ½‖S_λ(x* − t·a)‖² + t·β` by walking the
/// kinks of the piecewise-linear derivative.
///
/// Between consecutive kinks `g'(t) = s·t + b` with `s = Σ a_j²` over the
/// coordinates where `|x*_j − t·a_j| > λ`. The walk stops on the first
/// interval where `g'` reaches zero; on a flat stretch (`s = b = 0`) the
/// interval's left end is returned.
pub fn exact_linesearch_elasticnet(
    x_star: &[f64],
    a: &[f64],
    beta: f64,
    lambda: f64,
    domain: Domain,
) -> Result<f64> {
    if x_star.len() != a.len() {
        return Err(Error::DimensionMismatch {
            expected: x_star.len(),
            found: a.len(),
        });
    }
    if a.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroDirection);
    }

    let t0 = match domain {
        Domain::Nonnegative => 0.0,
        Domain::Real => f64::NEG_INFINITY,
    };

    let mut zones = vec![Zone::Dead; a.len()];
    let mut events: Vec<(f64, usize, Zone)> = Vec::with_capacity(2 * a.len());
    let mut slope = 0.0;
    let mut intercept = beta;

    for (j, (&xs, &aj)) in x_star.iter().zip(a).enumerate() {
        if aj == 0.0 {
            continue;
        }
        // u_j(t) = x*_j − t a_j crosses +λ at k_hi and −λ at k_lo
        let k_hi = (xs - lambda) / aj;
        let k_lo = (xs + lambda) / aj;
        let zone = match domain {
            Domain::Real => {
                if aj > 0.0 {
                    Zone::Above
                } else {
                    Zone::Below
                }
            }
            Domain::Nonnegative => zone_right_of(xs, aj, lambda),
        };
        zones[j] = zone;
        slope += aj * aj * zone.sign().abs();
        intercept -= aj * (xs - lambda * zone.sign()) * zone.sign().abs();

        let ordered = if aj > 0.0 {
            [(k_hi, Zone::Dead), (k_lo, Zone::Below)]
        } else {
            [(k_lo, Zone::Dead), (k_hi, Zone::Above)]
        };
        for (t, to) in ordered {
            if t > t0 {
                events.push((t, j, to));
            }
        }
    }
    events.sort_by(|p, q| p.0.total_cmp(&q.0));

    let mut t_prev = t0;
    for (t_next, j, to) in events {
        if slope * t_next + intercept >= 0.0 {
            return Ok(root_in(slope, intercept, t_prev, t_next));
        }
        let (xs, aj) = (x_star[j], a[j]);
        let from = zones[j];
        if from != to {
            slope += aj * aj * (to.sign().abs() - from.sign().abs());
            intercept -= aj * (xs - lambda * to.sign()) * to.sign().abs();
            intercept += aj * (xs - lambda * from.sign()) * from.sign().abs();
            zones[j] = to;
        }
        t_prev = t_next;
    }
    Ok(root_in(slope, intercept, t_prev, f64::INFINITY))
}

fn zone_right_of(u: f64, a: f64, lambda: f64) -> Zone {
    if u > lambda || (u == lambda && a < 0.0) {
        Zone::Above
    } else if u < -lambda || (u == -lambda && a > 0.0) {
        Zone::Below
    } else {
        Zone::Dead
    }
}

fn root_in(slope: f64, intercept: f64, lo: f64, hi: f64) -> f64 {
    if lo.is_finite() && slope * lo + intercept >= 0.0 {
        return lo;
    }
    if slope > 0.0 {
        (-intercept / slope).clamp(lo, hi)
    } else {
        // flat and negative cannot happen on the last interval; keep the
        // right end for the interior case
        hi.min(f64::MAX)
    }
}

const BRACKET_DOUBLINGS: usize = 200;
const BISECTION_STEPS: usize = 200;

/// Exact line search for any objective: uses the kink walk when `f` is a
/// coordinatewise elastic net, bracketing and bisection on `g'` otherwise.
pub fn exact_linesearch(
    obj: &dyn Objective,
    x_star: &[f64],
    a: &[f64],
    beta: f64,
    domain: Domain,
) -> Result<f64> {
    if let Some(lambda) = obj.l1_weight() {
        return exact_linesearch_elasticnet(x_star, a, beta, lambda, domain);
    }
    let a_sq = norm2_sq(a);
    if a_sq == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let gp = |t: f64| linesearch_derivative(obj, x_star, a, beta, t);
    let g0 = gp(0.0);
    if g0 == 0.0 || (g0 > 0.0 && domain == Domain::Nonnegative) {
        return Ok(0.0);
    }
    let guess = (obj.alpha() * g0.abs() / a_sq).max(f64::MIN_POSITIVE);
    // bracket [lo, hi] with g'(lo) < 0 <= g'(hi)
    let (mut lo, mut hi);
    if g0 < 0.0 {
        lo = 0.0;
        hi = guess;
        let mut n = 0;
        while gp(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
            n += 1;
            if n > BRACKET_DOUBLINGS {
                return Err(Error::NoConvergence {
                    iterations: n,
                    residual: gp(hi),
                });
            }
        }
    } else {
        hi = 0.0;
        lo = -guess;
        let mut n = 0;
        while gp(lo) >= 0.0 {
            hi = lo;
            lo *= 2.0;
            n += 1;
            if n > BRACKET_DOUBLINGS {
                return Err(Error::NoConvergence {
                    iterations: n,
                    residual: gp(lo),
                });
            }
        }
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gp(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Geometric increase of a safe step: returns `c^p·t̃` for the largest
/// `p ≤ p_cap` with `g'(c^p·t̃) ≤ 0`, i.e.
/// `β ≤ ⟨d, ∇f*(x* − c^p·t̃·d)⟩`. `p = 0` is accepted unconditionally.
pub fn inexact_linesearch(
    obj: &dyn Objective,
    x_star: &[f64],
    direction: &[f64],
    beta: f64,
    t_tilde: f64,
    c: f64,
    p_cap: u32,
) -> f64 {
    let mut t = t_tilde;
    for _ in 0..p_cap {
        let next = c * t;
        if linesearch_derivative(obj, x_star, direction, beta, next) <= 0.0 {
            t = next;
        } else {
            break;
        }
    }
    t
}
