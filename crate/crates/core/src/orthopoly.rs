//! Jacobi, Gegenbauer and Chebyshev polynomials, Jacobi normalization
//! constants, and Jacobi connection coefficients.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{gauss_2f1, hyp_3f2_unit, ln_factorial, ln_gamma, pochhammer};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::invalid(format!(
                "Jacobi parameters must exceed -1 (alpha = {alpha}, beta = {beta})"
            )));
        }
        if alpha < 0.0 && beta < 0.0 && alpha + beta + 1.0 == 0.0 {
            return Err(Error::invalid(
                "alpha + beta + 1 must be nonzero when both parameters lie in (-1, 0)",
            ));
        }
        Ok(Self { alpha, beta })
    }
}

/// P_n^{(α,β)}(x) by the three-term recurrence.
pub fn jacobi_p(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut it = JacobiSeq::new(alpha, beta, x);
    let mut v = it.next_value();
    for _ in 0..n {
        v = it.next_value();
    }
    v
}

/// Successive values P_0, P_1, … at a fixed point.
pub struct JacobiSeq {
    a: f64,
    b: f64,
    x: f64,
    n: u32,
    p0: f64,
    p1: f64,
}

impl JacobiSeq {
    pub fn new(alpha: f64, beta: f64, x: f64) -> Self {
        Self {
            a: alpha,
            b: beta,
            x,
            n: 0,
            p0: 0.0,
            p1: 0.0,
        }
    }

    pub fn next_value(&mut self) -> f64 {
        let (a, b, x) = (self.a, self.b, self.x);
        let v = match self.n {
            0 => 1.0,
            1 => (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0),
            n => {
                let nf = n as f64;
                let s = 2.0 * nf + a + b;
                let a1 = 2.0 * nf * (nf + a + b) * (s - 2.0);
                let a2 = (s - 1.0) * (a * a - b * b);
                let a3 = (s - 2.0) * (s - 1.0) * s;
                let a4 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s;
                ((a2 + a3 * x) * self.p1 - a4 * self.p0) / a1
            }
        };
        self.p0 = self.p1;
        self.p1 = v;
        self.n += 1;
        v
    }
}

/// P_n^{(α,β)}(x) from the terminating hypergeometric definition.
pub fn jacobi_p_hypergeometric(n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let pre = pochhammer(alpha + 1.0, n) / crate::specfun::factorial(n);
    Ok(pre * gauss_2f1(-(n as f64), n as f64 + alpha + beta + 1.0, alpha + 1.0, 0.5 * (1.0 - x))?)
}

/// P_n^{(α,β)}(x) from the explicit two-binomial sum; valid for every real
/// α, β, including parameters below −1.
pub fn jacobi_p_explicit(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let u = 0.5 * (x - 1.0);
    let v = 0.5 * (x + 1.0);
    let mut acc = crate::summation::Compensated::new();
    for k in 0..=n {
        let c1 = pochhammer(alpha + k as f64 + 1.0, n - k) / crate::specfun::factorial(n - k);
        let c2 = pochhammer(beta + (n - k) as f64 + 1.0, k) / crate::specfun::factorial(k);
        acc.add(c1 * c2 * u.powi(k as i32) * v.powi((n - k) as i32));
    }
    acc.value()
}

/// Normalization constant N_n^{α,β}: ∫ (N P_n)² w = 1.
pub fn jacobi_norm(n: u32, alpha: f64, beta: f64) -> f64 {
    let nf = n as f64;
    // (2n+α+β+1)Γ(n+α+β+1) written as Γ(α+β+2) at n = 0
    let (lead, sign) = if n == 0 {
        let (l, s) = ln_gamma(alpha + beta + 2.0).unwrap_or((f64::NAN, 1.0));
        (l, s)
    } else {
        let (l, s) = ln_gamma(nf + alpha + beta + 1.0).unwrap_or((f64::NAN, 1.0));
        (l + (2.0 * nf + alpha + beta + 1.0).ln(), s)
    };
    let (la, _) = ln_gamma(nf + alpha + 1.0).unwrap_or((f64::NAN, 1.0));
    let (lb, _) = ln_gamma(nf + beta + 1.0).unwrap_or((f64::NAN, 1.0));
    let ln_sq = lead + ln_factorial(n) - (alpha + beta + 1.0) * 2f64.ln() - la - lb;
    debug_assert!(sign > 0.0);
    (0.5 * ln_sq).exp()
}

/// C_n^μ(x) by recurrence.
pub fn gegenbauer_c(n: u32, mu: f64, x: f64) -> Result<f64> {
    if mu == 0.0 {
        return Err(Error::ZeroParameter);
    }
    Ok(gegenbauer_unchecked(n, mu, x))
}

pub(crate) fn gegenbauer_unchecked(n: u32, mu: f64, x: f64) -> f64 {
    let mut it = GegenbauerSeq::new(mu, x);
    let mut v = it.next_value();
    for _ in 0..n {
        v = it.next_value();
    }
    v
}

/// Successive values C_0^μ, C_1^μ, … at a fixed point.
pub struct GegenbauerSeq {
    mu: f64,
    x: f64,
    n: u32,
    p0: f64,
    p1: f64,
}

impl GegenbauerSeq {
    pub fn new(mu: f64, x: f64) -> Self {
        Self {
            mu,
            x,
            n: 0,
            p0: 0.0,
            p1: 0.0,
        }
    }

    pub fn next_value(&mut self) -> f64 {
        let v = match self.n {
            0 => 1.0,
            1 => 2.0 * self.mu * self.x,
            n => {
                let nf = n as f64;
                (2.0 * (nf + self.mu - 1.0) * self.x * self.p1 - (nf + 2.0 * self.mu - 2.0) * self.p0) / nf
            }
        };
        self.p0 = self.p1;
        self.p1 = v;
        self.n += 1;
        v
    }
}

/// T_n(x) by recurrence.
pub fn chebyshev_t(n: u32, x: f64) -> f64 {
    let mut it = ChebyshevSeq::new(x);
    let mut v = it.next_value();
    for _ in 0..n {
        v = it.next_value();
    }
    v
}

/// Successive values T_0, T_1, … at a fixed point.
pub struct ChebyshevSeq {
    x: f64,
    n: u32,
    p0: f64,
    p1: f64,
}

impl ChebyshevSeq {
    pub fn new(x: f64) -> Self {
        Self {
            x,
            n: 0,
            p0: 0.0,
            p1: 0.0,
        }
    }

    pub fn next_value(&mut self) -> f64 {
        let v = match self.n {
            0 => 1.0,
            1 => self.x,
            _ => 2.0 * self.x * self.p1 - self.p0,
        };
        self.p0 = self.p1;
        self.p1 = v;
        self.n += 1;
        v
    }
}

/// Coefficients expressing P_n^{(γ,δ)} in the basis P_k^{(α,β)}, k ≤ n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectionTable {
    pub source: JacobiParams,
    pub target: JacobiParams,
    pub degree: u32,
    pub coefficients: Vec<f64>,
}

impl ConnectionTable {
    /// Σ_k c_{n,k} P_k^{(α,β)}(x).
    pub fn evaluate(&self, x: f64) -> f64 {
        let mut seq = JacobiSeq::new(self.target.alpha, self.target.beta, x);
        let mut acc = crate::summation::Compensated::new();
        for c in &self.coefficients {
            acc.add(c * seq.next_value());
        }
        acc.value()
    }
}

/// Connection coefficients c_{n,k}(γ, δ; α, β).
pub fn connection_coeffs(n: u32, gamma: f64, delta: f64, alpha: f64, beta: f64) -> Result<ConnectionTable> {
    let source = JacobiParams::new(gamma, delta)?;
    let target = JacobiParams::new(alpha, beta)?;
    let mut coefficients = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let kf = k as f64;
        let nf = n as f64;
        let lead = pochhammer(gamma + kf + 1.0, n - k) * pochhammer(nf + gamma + delta + 1.0, k)
            / crate::specfun::factorial(n - k);
        // Γ(α+β+k+1)/Γ(α+β+2k+1) = 1/(α+β+k+1)_k
        let ratio = 1.0 / pochhammer(alpha + beta + kf + 1.0, k);
        let f = hyp_3f2_unit(
            -nf + kf,
            nf + kf + gamma + delta + 1.0,
            alpha + kf + 1.0,
            gamma + kf + 1.0,
            alpha + beta + 2.0 * kf + 2.0,
        )?;
        coefficients.push(lead * ratio * f);
    }
    Ok(ConnectionTable {
        source,
        target,
        degree: n,
        coefficients,
    })
}

type CacheKey = (u32, [u64; 4]);

/// Thread-safe memo of connection tables keyed by exact parameter bits.
#[derive(Default)]
pub struct ConnectionCache {
    map: RwLock<HashMap<CacheKey, Arc<ConnectionTable>>>,
}

impl ConnectionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: u32, gamma: f64, delta: f64, alpha: f64, beta: f64) -> Result<Arc<ConnectionTable>> {
        let key = (n, [gamma.to_bits(), delta.to_bits(), alpha.to_bits(), beta.to_bits()]);
        if let Some(t) = self.map.read().ok().and_then(|m| m.get(&key).cloned()) {
            return Ok(t);
        }
        let t = Arc::new(connection_coeffs(n, gamma, delta, alpha, beta)?);
        if let Ok(mut m) = self.map.write() {
            m.entry(key).or_insert_with(|| t.clone());
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.map.read().map(|m| m.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Process-wide connection-coefficient cache.
pub fn connection_cache() -> &'static ConnectionCache {
    static CACHE: OnceLock<ConnectionCache> = OnceLock::new();
    CACHE.get_or_init(ConnectionCache::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre_on;
    use std::f64::consts::PI;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_p(0, 0.3, -0.5, 0.2), 1.0);
        assert!((jacobi_p(3, 0.5, -0.2, 1.0) - 2.1875).abs() < 1e-14);
        // n = 2, α = β = 1 at x = 0.3: (α+1)_2/2!·Σ_k (−2)_k(5)_k/((2)_k k!)·0.35^k
        let u: f64 = 0.35;
        let want = 3.0 * (1.0 - 2.0 * 5.0 / 2.0 * u + 2.0 * 30.0 / (6.0 * 2.0) * u * u);
        assert!((jacobi_p(2, 1.0, 1.0, 0.3) - want).abs() < 1e-14);
    }

    #[test]
    fn explicit_sum_matches_recurrence() {
        for n in 0..8 {
            for &(a, b, x) in &[(0.3, -0.4, 0.2), (2.0, 1.5, -0.7), (-0.5, -0.2, 0.9)] {
                let r = jacobi_p(n, a, b, x);
                let e = jacobi_p_explicit(n, a, b, x);
                assert!((r - e).abs() < 1e-12 * r.abs().max(1.0), "n={n}");
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert!((jacobi_norm(0, 0.0, 0.0) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((jacobi_norm(1, 0.0, 0.0) - 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn norm_by_quadrature() {
        // x = cos θ makes (1−x)^{1/2}(1+x)^{3/2} dx smooth in θ
        let (n, a, b) = (2, 0.5, 1.5);
        let nn = jacobi_norm(n, a, b);
        let (th, w) = gauss_legendre_on(64, 0.0, PI);
        let v: f64 = th
            .iter()
            .zip(&w)
            .map(|(&t, &w)| {
                let x = t.cos();
                let p = nn * jacobi_p(n, a, b, x);
                w * p * p * (1.0 - x).powf(a) * (1.0 + x).powf(b) * t.sin()
            })
            .sum();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn side_condition() {
        assert!(JacobiParams::new(-0.5, -0.5).is_err());
        assert!(JacobiParams::new(-0.3, -0.5).is_ok());
        assert!(JacobiParams::new(-1.0, 0.5).is_err());
    }

    #[test]
    fn gegenbauer_examples() {
        assert!((gegenbauer_c(1, 0.75, 0.4).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(gegenbauer_c(0, 2.0, 0.1).unwrap(), 1.0);
        assert_eq!(gegenbauer_c(3, 0.0, 0.1), Err(Error::ZeroParameter));
        let (n, nu, x) = (4, 1.2, -0.3);
        let c = gegenbauer_c(n, nu, x).unwrap();
        let j = pochhammer(2.0 * nu, n) / pochhammer(nu + 0.5, n) * jacobi_p(n, nu - 0.5, nu - 0.5, x);
        assert!((c - j).abs() < 1e-12 * c.abs());
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_t(0, 0.3), 1.0);
        assert_eq!(chebyshev_t(1, 0.3), 0.3);
        assert!((chebyshev_t(5, 0.9) - (5.0 * 0.9f64.acos()).cos()).abs() < 1e-14);
        let (n, x, mu) = (3, 0.2, 1e-7);
        let lim = (n as f64 + mu) / mu * gegenbauer_c(n, mu, x).unwrap();
        assert!((lim - 2.0 * chebyshev_t(n, x)).abs() < 1e-5);
    }

    #[test]
    fn connection_identity_and_degree_zero() {
        let t = connection_coeffs(4, 0.3, 0.7, 0.3, 0.7).unwrap();
        for (k, c) in t.coefficients.iter().enumerate() {
            let want = if k == 4 { 1.0 } else { 0.0 };
            assert!((c - want).abs() < 1e-13, "k={k}");
        }
        assert_eq!(
            connection_coeffs(0, 1.0, 0.5, 0.2, 0.2).unwrap().coefficients,
            vec![1.0]
        );
    }

    #[test]
    fn connection_reconstruction() {
        let t = connection_coeffs(3, 1.0, 0.5, 0.2, 0.2).unwrap();
        for i in 0..20 {
            let x = ((2 * i + 1) as f64 * PI / 40.0).cos();
            let d = t.evaluate(x) - jacobi_p(3, 1.0, 0.5, x);
            assert!(d.abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn cache_returns_same_table() {
        let c = ConnectionCache::new();
        let a = c.get(3, 1.0, 0.5, 0.2, 0.2).unwrap();
        let b = c.get(3, 1.0, 0.5, 0.2, 0.2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(c.len(), 1);
    }
}
