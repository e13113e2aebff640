//! Associated Legendre functions off the cut (z > 1) and Ferrers functions on it.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

use super::gamma::{double_factorial, is_integer, is_nonpositive_integer, ln_factorial, ln_gamma};
use super::hypergeometric::{regularized_2f1_scaled, Scaled};

/// Closest approach to the branch point z = 1 that is evaluated.
pub const BRANCH_GUARD: f64 = 1e-6;

/// Q̂_ν^μ(z) = e^{−iπμ} Q_ν^μ(z), real for z > 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseFreeQ {
    pub value: f64,
    /// The removed factor is e^{iπ·phase_exponent}.
    pub phase_exponent: f64,
}

fn check_argument(func: &'static str, z: f64) -> Result<()> {
    if z.is_nan() || z <= 1.0 {
        return Err(Error::Domain { func, arg: z });
    }
    if z - 1.0 < BRANCH_GUARD {
        return Err(Error::SlowConvergence { z });
    }
    Ok(())
}

pub(crate) fn legendre_q_hat_scaled(nu: f64, mu: f64, z: f64) -> Result<Scaled> {
    check_argument("legendre_q_hat", z)?;
    if is_nonpositive_integer(nu + mu + 1.0) {
        return Err(Error::Pole {
            func: "legendre_q_hat",
            arg: nu + mu,
        });
    }
    let (lg, sg) = ln_gamma(nu + mu + 1.0)?;
    let ln_pre = 0.5 * PI.ln() + lg + 0.5 * mu * ((z - 1.0) * (z + 1.0)).ln()
        - (nu + 1.0) * 2f64.ln()
        - (nu + mu + 1.0) * z.ln();
    let f = regularized_2f1_scaled(0.5 * (nu + mu + 1.0), 0.5 * (nu + mu + 2.0), nu + 1.5, 1.0 / (z * z))?;
    Ok(f.mul_ln(ln_pre, sg))
}

/// Phase-free associated Legendre function of the second kind, z > 1.
///
/// Uses the 1/z² hypergeometric representation with the lower parameter
/// regularized, so degrees ν ∈ {−3/2, −5/2, …} are evaluated by continuity.
pub fn legendre_q_hat(nu: f64, mu: f64, z: f64) -> Result<PhaseFreeQ> {
    let v = legendre_q_hat_scaled(nu, mu, z)?.value();
    if !v.is_finite() {
        return Err(Error::Overflow {
            func: "legendre_q_hat",
            arg: z,
        });
    }
    Ok(PhaseFreeQ {
        value: v,
        phase_exponent: mu,
    })
}

/// Q̂_ν^μ(z) from the 2/(1−z) representation, valid for z > 3.
pub fn legendre_q_hat_far(nu: f64, mu: f64, z: f64) -> Result<f64> {
    if z.is_nan() || z <= 3.0 {
        return Err(Error::Domain {
            func: "legendre_q_hat_far",
            arg: z,
        });
    }
    if is_nonpositive_integer(nu + mu + 1.0) || is_nonpositive_integer(nu + 1.0) {
        return Err(Error::Pole {
            func: "legendre_q_hat_far",
            arg: nu,
        });
    }
    let (l1, s1) = ln_gamma(nu + 1.0)?;
    let (l2, s2) = ln_gamma(nu + mu + 1.0)?;
    let ln_pre = nu * 2f64.ln() + l1 + l2 + 0.5 * mu * (z + 1.0).ln() - (0.5 * mu + nu + 1.0) * (z - 1.0).ln();
    let f = regularized_2f1_scaled(nu + 1.0, nu + mu + 1.0, 2.0 * nu + 2.0, 2.0 / (1.0 - z))?;
    Ok(f.mul_ln(ln_pre, s1 * s2).value())
}

fn integer_degree(nu: f64) -> Option<u32> {
    if !is_integer(nu) {
        return None;
    }
    // P_ν = P_{−ν−1}
    let l = if nu < 0.0 { -nu - 1.0 } else { nu };
    if l <= u32::MAX as f64 {
        Some(l as u32)
    } else {
        None
    }
}

/// P_l^m(w), w > 1, integer 0 ≤ m ≤ l, by upward recurrence in degree.
fn legendre_p_recurrence(l: u32, m: u32, w: f64) -> f64 {
    let mut pmm = double_factorial(2 * m as i32 - 1) * ((w - 1.0) * (w + 1.0)).powf(0.5 * m as f64);
    if l == m {
        return pmm;
    }
    let mut pm1 = (2 * m + 1) as f64 * w * pmm;
    for k in (m + 1)..l {
        let kf = k as f64;
        let mf = m as f64;
        let next = ((2.0 * kf + 1.0) * w * pm1 - (kf + mf) * pmm) / (kf - mf + 1.0);
        pmm = pm1;
        pm1 = next;
    }
    pm1
}

pub(crate) fn legendre_p_gt1_scaled(nu: f64, mu: f64, w: f64) -> Result<Scaled> {
    if w.is_nan() || w <= 1.0 {
        return Err(Error::Domain {
            func: "legendre_p_gt1",
            arg: w,
        });
    }
    if let (Some(l), true) = (integer_degree(nu), is_integer(mu)) {
        let m = mu.abs() as u32;
        if m <= l && l <= 150 {
            let p = legendre_p_recurrence(l, m, w);
            if mu >= 0.0 {
                return Ok(Scaled::from_f64(p));
            }
            let ln_ratio = ln_factorial(l - m) - ln_factorial(l + m);
            return Ok(Scaled::from_f64(p).mul_ln(ln_ratio, 1.0));
        }
    }
    let x = (w - 1.0) / (w + 1.0);
    let ln_pre = -0.5 * mu * x.ln() + nu * (0.5 * (w + 1.0)).ln();
    let f = regularized_2f1_scaled(-nu, -nu - mu, 1.0 - mu, x)?;
    Ok(f.mul_ln(ln_pre, 1.0))
}

/// Associated Legendre function of the first kind P_ν^μ(w) for w > 1.
pub fn legendre_p_gt1(nu: f64, mu: f64, w: f64) -> Result<f64> {
    let v = legendre_p_gt1_scaled(nu, mu, w)?.value();
    if !v.is_finite() {
        return Err(Error::Overflow {
            func: "legendre_p_gt1",
            arg: w,
        });
    }
    Ok(v)
}

/// Ferrers function of the first kind 𝖯_l^m(x) on [−1, 1].
///
/// Includes the (−1)^m Condon–Shortley factor; zero when |m| > l.
pub fn ferrers_p(l: u32, m: i32, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 || (x.abs() == 1.0 && m != 0) {
        return Err(Error::Domain {
            func: "ferrers_p",
            arg: x,
        });
    }
    let k = m.unsigned_abs();
    if k > l {
        return Ok(0.0);
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut pmm = sign * double_factorial(2 * k as i32 - 1) * ((1.0 - x) * (1.0 + x)).powf(0.5 * k as f64);
    let p = if l == k {
        pmm
    } else {
        let mut pm1 = (2 * k + 1) as f64 * x * pmm;
        for j in (k + 1)..l {
            let jf = j as f64;
            let kf = k as f64;
            let next = ((2.0 * jf + 1.0) * x * pm1 - (jf + kf) * pmm) / (jf - kf + 1.0);
            pmm = pm1;
            pm1 = next;
        }
        pm1
    };
    if m >= 0 {
        Ok(p)
    } else {
        Ok(sign * (ln_factorial(l - k) - ln_factorial(l + k)).exp() * p)
    }
}
