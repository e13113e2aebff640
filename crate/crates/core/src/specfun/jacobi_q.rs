//! Jacobi function of the second kind.

use crate::error::{Error, Result};

use super::gamma::{is_nonpositive_integer, ln_gamma};
use super::hypergeometric::{regularized_2f1_scaled, Scaled};
use super::legendre::BRANCH_GUARD;

fn check(gamma: f64, alpha: f64, beta: f64, z: f64) -> Result<()> {
    if z.is_nan() || z <= 1.0 {
        return Err(Error::Domain {
            func: "jacobi_q2",
            arg: z,
        });
    }
    if z - 1.0 < BRANCH_GUARD {
        return Err(Error::SlowConvergence { z });
    }
    for p in [alpha + gamma + 1.0, beta + gamma + 1.0] {
        if is_nonpositive_integer(p) {
            return Err(Error::Pole {
                func: "jacobi_q2",
                arg: p - 1.0,
            });
        }
    }
    Ok(())
}

/// Q_γ^{(α,β)}(z) for z > 1.
///
/// The defining series in 2/(1−z) only converges for z > 3; a Pfaff
/// transformation moves it to 2/(1+z), which covers the whole ray z > 1.
pub fn jacobi_q2(gamma: f64, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    let v = jacobi_q2_scaled(gamma, alpha, beta, z)?.value();
    if !v.is_finite() {
        return Err(Error::Overflow {
            func: "jacobi_q2",
            arg: z,
        });
    }
    Ok(v)
}

pub(crate) fn jacobi_q2_scaled(gamma: f64, alpha: f64, beta: f64, z: f64) -> Result<Scaled> {
    check(gamma, alpha, beta, z)?;
    let (l1, s1) = ln_gamma(alpha + gamma + 1.0)?;
    let (l2, s2) = ln_gamma(beta + gamma + 1.0)?;
    let ln_pre =
        (alpha + beta + gamma) * 2f64.ln() + l1 + l2 - alpha * (z - 1.0).ln() - (beta + gamma + 1.0) * (z + 1.0).ln();
    let f = regularized_2f1_scaled(
        gamma + 1.0,
        beta + gamma + 1.0,
        alpha + beta + 2.0 * gamma + 2.0,
        2.0 / (1.0 + z),
    )?;
    Ok(f.mul_ln(ln_pre, s1 * s2))
}

/// Q_γ^{(α,β)}(z) summed directly in 2/(1−z); requires z > 3.
pub fn jacobi_q2_far(gamma: f64, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    check(gamma, alpha, beta, z)?;
    if z <= 3.0 {
        return Err(Error::Domain {
            func: "jacobi_q2_far",
            arg: z,
        });
    }
    let (l1, s1) = ln_gamma(alpha + gamma + 1.0)?;
    let (l2, s2) = ln_gamma(beta + gamma + 1.0)?;
    let ln_pre =
        (alpha + beta + gamma) * 2f64.ln() + l1 + l2 - (alpha + gamma + 1.0) * (z - 1.0).ln() - beta * (z + 1.0).ln();
    let f = regularized_2f1_scaled(
        gamma + 1.0,
        alpha + gamma + 1.0,
        alpha + beta + 2.0 * gamma + 2.0,
        2.0 / (1.0 - z),
    )?;
    Ok(f.mul_ln(ln_pre, s1 * s2).value())
}
