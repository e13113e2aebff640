//! Gamma function, its logarithm, and Pochhammer symbols.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ is finite in double precision.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

pub(crate) fn is_integer(x: f64) -> bool {
    x == x.floor() && x.is_finite()
}

/// sin(πx) with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    if is_integer(x) {
        return 0.0;
    }
    let mut r = x % 2.0;
    if r > 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn lanczos_sum(x: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

fn factorial_exact(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma_unchecked(1.0 - x));
    }
    if is_integer(x) && x <= 171.0 {
        return factorial_exact(x as u32 - 1);
    }
    let y = x - 1.0;
    let t = y + LANCZOS_G + 0.5;
    let h = 0.5 * (y + 0.5);
    // split the power so t^(y+1/2) e^{-t} stays representable near the top of the range
    let p = t.powf(h);
    (2.0 * PI).sqrt() * p * (p * (-t).exp()) * lanczos_sum(y)
}

/// Γ(x) for real x.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain { func: "gamma", arg: x });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { func: "gamma", arg: x });
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow { func: "gamma", arg: x });
    }
    let v = gamma_unchecked(x);
    if !v.is_finite() {
        return Err(Error::Overflow { func: "gamma", arg: x });
    }
    Ok(v)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::Domain {
            func: "ln_gamma",
            arg: x,
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            func: "ln_gamma",
            arg: x,
        });
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> (f64, f64) {
    if x < 0.5 {
        let s = sin_pi(x);
        let (lg, sg) = ln_gamma_unchecked(1.0 - x);
        return (PI.ln() - s.abs().ln() - lg, s.signum() * sg);
    }
    if x < 30.0 {
        let g = gamma_unchecked(x);
        return (g.abs().ln(), g.signum());
    }
    let y = x - 1.0;
    let t = y + LANCZOS_G + 0.5;
    let lg = 0.5 * (2.0 * PI).ln() + (y + 0.5) * t.ln() - t + lanczos_sum(y).ln();
    (lg, 1.0)
}

/// 1/Γ(x), which is entire: zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > GAMMA_MAX_ARG {
        let (lg, _) = ln_gamma_unchecked(x);
        return (-lg).exp();
    }
    1.0 / gamma_unchecked(x)
}

/// Rising factorial (z)_n = z(z+1)…(z+n−1).
pub fn pochhammer(z: f64, n: u32) -> f64 {
    let mut p = 1.0;
    for i in 0..n {
        p *= z + i as f64;
    }
    p
}

/// n! as a double (exact up to 22!, correctly rounded beyond).
pub fn factorial(n: u32) -> f64 {
    if n <= 170 {
        factorial_exact(n)
    } else {
        f64::INFINITY
    }
}

/// ln n!.
pub fn ln_factorial(n: u32) -> f64 {
    if n <= 170 {
        factorial_exact(n).ln()
    } else {
        ln_gamma_unchecked(n as f64 + 1.0).0
    }
}

/// Double factorial with (−1)!! = 0!! = 1.
pub fn double_factorial(n: i32) -> f64 {
    if n <= 0 {
        return 1.0;
    }
    let mut p = 1.0;
    let mut k = n;
    while k > 1 {
        p *= k as f64;
        k -= 2;
    }
    p
}

/// Neumann factor ε_n = 2 − δ_{n,0}.
pub fn neumann(n: i64) -> f64 {
    if n == 0 {
        1.0
    } else {
        2.0
    }
}
