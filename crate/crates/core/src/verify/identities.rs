//! Special-function identities checked on random parameter grids.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::orthopoly::{chebyshev_t, gegenbauer_c, jacobi_p, jacobi_p_explicit};
use crate::specfun::{factorial, gamma, jacobi_q2, legendre_p_gt1, legendre_q_hat, neumann, pochhammer};

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// P_{−μ−1/2}^{−ν−1/2}(z/√(z²−1)) against √(2/π)(z²−1)^{1/4}/Γ(ν+μ+1) · Q̂_ν^μ(z).
pub fn whipple_residual(nu: f64, mu: f64, z: f64) -> Result<f64> {
    let w = z / (z * z - 1.0).sqrt();
    let lhs = legendre_p_gt1(-mu - 0.5, -nu - 0.5, w)?;
    let rhs = (2.0 / PI).sqrt() * (z * z - 1.0).powf(0.25) / gamma(nu + mu + 1.0)? * legendre_q_hat(nu, mu, z)?.value;
    Ok(rel(lhs, rhs))
}

/// Q_{n+ν−1}^{(a,a)}(z), a = μ − ν + 1/2, against
/// 2^a Γ(μ+n+1/2)/(Γ(ν+n)(z²−1)^{(μ−ν)/2+1/4}) · Q̂_{n+μ−1/2}^{ν−μ−1/2}(z).
pub fn bridge_residual(n: u32, nu: f64, mu: f64, z: f64) -> Result<f64> {
    let nf = n as f64;
    let a = mu - nu + 0.5;
    let lhs = jacobi_q2(nf + nu - 1.0, a, a, z)?;
    let rhs = 2f64.powf(a) * gamma(mu + nf + 0.5)? / (gamma(nu + nf)? * (z * z - 1.0).powf(0.5 * (mu - nu) + 0.25))
        * legendre_q_hat(nf + mu - 0.5, nu - mu - 0.5, z)?.value;
    Ok(rel(lhs, rhs))
}

/// C_n^λ(x) against (2λ)_n/(λ+1/2)_n · P_n^{(λ−1/2, λ−1/2)}(x).
pub fn gegenbauer_jacobi_residual(n: u32, lambda: f64, x: f64) -> Result<f64> {
    let lhs = gegenbauer_c(n, lambda, x)?;
    let rhs = pochhammer(2.0 * lambda, n) / pochhammer(lambda + 0.5, n) * jacobi_p(n, lambda - 0.5, lambda - 0.5, x);
    Ok(rel(lhs, rhs))
}

/// ((n+μ)/μ) C_n^μ(x) against ε_n T_n(x) at small μ.
pub fn chebyshev_limit_residual(n: u32, x: f64, mu: f64) -> Result<f64> {
    let lhs = (n as f64 + mu) / mu * gegenbauer_c(n, mu, x)?;
    let rhs = neumann(n as i64) * chebyshev_t(n, x);
    Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
}

/// Jacobi polynomial with parameters (−α−n−1, −β−n−1) against the Jacobi
/// function of the second kind of degree k − n − 1, 0 ≤ k ≤ n.
pub fn note_pq_residual(n: u32, k: u32, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    let (nf, kf) = (n as f64, k as f64);
    let lhs = jacobi_p_explicit(n - k, -alpha - nf - 1.0, -beta - nf - 1.0, z);
    let sign = if (n + k) % 2 == 0 { 1.0 } else { -1.0 };
    let ln_pre = (alpha + nf + 1.0) * (z - 1.0).ln() + (beta + nf + 1.0) * (z + 1.0).ln()
        - (alpha + beta + 2.0 * nf + 1.0) * 2f64.ln();
    let rhs = sign * gamma(alpha + beta + nf + kf + 2.0)? * ln_pre.exp()
        / (factorial(n - k) * gamma(alpha + kf + 1.0)? * gamma(beta + kf + 1.0)?)
        * jacobi_q2(kf - nf - 1.0, alpha + nf + 1.0, beta + nf + 1.0, z)?;
    Ok(rel(lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub points: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

fn check(name: &str, points: usize, tol: f64, mut f: impl FnMut() -> Result<f64>) -> Result<IdentityCheck> {
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        worst = worst.max(f()?);
    }
    Ok(IdentityCheck {
        name: name.into(),
        points,
        max_residual: worst,
        tol,
        pass: worst < tol,
    })
}

/// Runs every identity on `points` seeded random parameter sets.
pub fn identity_suite(seed: u64, points: usize) -> Result<Vec<IdentityCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    out.push(check("whipple", points, 1e-9, || {
        let (nu, mu) = (rng.gen_range(-0.4..3.0), rng.gen_range(-0.4..3.0));
        whipple_residual(nu, mu, rng.gen_range(1.1..10.0))
    })?);
    out.push(check("jacobi_q_bridge", points, 1e-9, || {
        let n = rng.gen_range(0..=5);
        let (nu, mu) = (rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0));
        bridge_residual(n, nu, mu, rng.gen_range(1.1..10.0))
    })?);
    out.push(check("gegenbauer_jacobi", points, 1e-9, || {
        let n = rng.gen_range(0..=10);
        gegenbauer_jacobi_residual(n, rng.gen_range(0.05..4.0), rng.gen_range(-1.0..1.0))
    })?);
    out.push(check("chebyshev_limit", points, 1e-5, || {
        let n = rng.gen_range(0..=10);
        chebyshev_limit_residual(n, rng.gen_range(-1.0..1.0), 1e-7)
    })?);
    out.push(check("jacobi_p_q_reflection", points, 1e-9, || {
        let n = rng.gen_range(0..=5);
        let k = rng.gen_range(0..=n);
        let (a, b) = (rng.gen_range(-0.9..2.5), rng.gen_range(-0.9..2.5));
        note_pq_residual(n, k, a, b, rng.gen_range(1.1..10.0))
    })?);
    Ok(out)
}
