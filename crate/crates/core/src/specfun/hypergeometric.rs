//! Gauss ₂F₁ and terminating ₃F₂ at unit argument.

use crate::error::{Error, Result};
use crate::summation::Compensated;

use super::gamma::{is_nonpositive_integer, ln_gamma, pochhammer};

const MAX_TERMS: usize = 100_000;
const RESCALE_AT: f64 = 1e200;

/// A real number held as `mant · e^log`, used when intermediate series
/// values would leave the double range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub mant: f64,
    pub log: f64,
}

impl Scaled {
    pub fn from_f64(v: f64) -> Self {
        Self { mant: v, log: 0.0 }
    }

    pub fn value(self) -> f64 {
        if self.mant == 0.0 {
            return 0.0;
        }
        self.mant.signum() * (self.mant.abs().ln() + self.log).exp()
    }

    pub fn mul_ln(self, ln: f64, sign: f64) -> Self {
        Self {
            mant: self.mant * sign,
            log: self.log + ln,
        }
    }
}

/// Degree at which the series terminates, if an upper parameter is in −N₀.
fn termination(upper: &[f64]) -> Option<usize> {
    upper
        .iter()
        .filter(|p| is_nonpositive_integer(**p))
        .map(|p| (-p) as usize)
        .min()
}

fn check_lower(lower: f64, stop: Option<usize>) -> Result<()> {
    if is_nonpositive_integer(lower) {
        match stop {
            Some(n) if n <= (-lower) as usize => Ok(()),
            _ => Err(Error::ParameterPole { c: lower }),
        }
    } else {
        Ok(())
    }
}

pub(crate) fn series_2f1_scaled(a: f64, b: f64, c: f64, x: f64) -> Result<Scaled> {
    let stop = termination(&[a, b]);
    check_lower(c, stop)?;
    if stop.is_none() && x.abs() >= 1.0 {
        return Err(Error::Domain {
            func: "gauss_2f1",
            arg: x,
        });
    }
    let mut acc = Compensated::new();
    acc.add(1.0);
    let mut term = 1.0;
    let mut log = 0.0;
    let mut small = 0;
    let limit = stop.unwrap_or(MAX_TERMS);
    for k in 0..limit {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        acc.add(term);
        if stop.is_none() {
            if term.abs() < 1e-16 * acc.value().abs() {
                small += 1;
                if small >= 3 {
                    return Ok(Scaled { mant: acc.value(), log });
                }
            } else {
                small = 0;
            }
        }
        if acc.value().abs() > RESCALE_AT {
            acc.scale(1.0 / RESCALE_AT);
            term /= RESCALE_AT;
            log += RESCALE_AT.ln();
        }
    }
    if stop.is_none() {
        return Err(Error::Convergence { terms: MAX_TERMS });
    }
    Ok(Scaled { mant: acc.value(), log })
}

/// ₂F₁(a, b; c; x) by term-ratio recursion with compensated accumulation.
///
/// Terminating series (a or b in −N₀) are summed exactly for any x.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        check_lower(c, termination(&[a, b]).or(Some(0)))?;
        return Ok(1.0);
    }
    let s = series_2f1_scaled(a, b, c, x)?;
    let v = s.value();
    if !v.is_finite() {
        return Err(Error::Overflow {
            func: "gauss_2f1",
            arg: x,
        });
    }
    Ok(v)
}

/// ₂F₁(a, b; c; x)/Γ(c) in scaled form; finite for every c.
pub(crate) fn regularized_2f1_scaled(a: f64, b: f64, c: f64, x: f64) -> Result<Scaled> {
    if is_nonpositive_integer(c) {
        let stop = termination(&[a, b]);
        let n = (-c) as u32;
        if let Some(t) = stop {
            if t <= n as usize {
                // the terminating sum ends before the vanishing 1/Γ(c+k) begins
                return Ok(Scaled::from_f64(0.0));
            }
        }
        let m = n + 1;
        let pre = pochhammer(a, m) * pochhammer(b, m) / super::gamma::factorial(m) * x.powi(m as i32);
        if pre == 0.0 {
            return Ok(Scaled::from_f64(0.0));
        }
        let f = series_2f1_scaled(a + m as f64, b + m as f64, m as f64 + 1.0, x)?;
        return Ok(f.mul_ln(pre.abs().ln(), pre.signum()));
    }
    let f = series_2f1_scaled(a, b, c, x)?;
    let (lg, sg) = ln_gamma(c)?;
    Ok(f.mul_ln(-lg, sg))
}

/// ₂F₁(a, b; c; x)/Γ(c).
pub fn gauss_2f1_regularized(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    Ok(regularized_2f1_scaled(a, b, c, x)?.value())
}

/// Terminating ₃F₂(a1, a2, a3; b1, b2; 1).
pub fn hyp_3f2_unit(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<f64> {
    let stop = termination(&[a1, a2, a3]).ok_or(Error::NonTerminating)?;
    check_lower(b1, Some(stop))?;
    check_lower(b2, Some(stop))?;
    let mut acc = Compensated::new();
    acc.add(1.0);
    let mut term = 1.0;
    for k in 0..stop {
        let kf = k as f64;
        term *= (a1 + kf) * (a2 + kf) * (a3 + kf) / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
        acc.add(term);
    }
    Ok(acc.value())
}
