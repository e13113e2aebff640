//! Series expansions of the Euler kernel (z − x)^{−ν} and of ‖x − x′‖^ν.
//!
//! Every Legendre function of the second kind appears in phase-free form, so
//! the complex prefactors of the printed expansions cancel and all sums are
//! real.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{toroidal_chi, KernelGeometry};
use crate::orthopoly::{ChebyshevSeq, GegenbauerSeq, JacobiParams, JacobiSeq};
use crate::specfun::{
    factorial, is_nonpositive_integer, jacobi_q2_scaled, legendre_p_gt1, legendre_p_gt1_scaled, legendre_q_hat_scaled,
    ln_factorial, ln_gamma, pochhammer, BRANCH_GUARD,
};
use crate::summation::{Compensated, PartialSum, SeriesRunner, Truncation};

/// Closest approach of χ to 1 accepted by [`azimuthal_power`].
pub const CHI_GUARD: f64 = 1e-6;
/// Smallest relative radius gap accepted by [`multipole_power`].
pub const RADIUS_GUARD: f64 = 1e-6;

/// ν and the truncation policy for one expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionParams {
    pub nu: f64,
    pub truncation: Truncation,
}

fn run(tr: Truncation, mut term: impl FnMut(usize) -> Result<f64>) -> Result<PartialSum> {
    let mut r = SeriesRunner::new(tr);
    let mut n = 0;
    loop {
        if r.exhausted() {
            return Err(Error::Convergence { terms: r.count() });
        }
        if r.push(term(n)?) {
            return Ok(r.finish(true));
        }
        n += 1;
    }
}

fn check_zx(z: f64, x: f64) -> Result<()> {
    if !(z > 1.0) {
        return Err(Error::Domain {
            func: "euler_kernel",
            arg: z,
        });
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            func: "euler_kernel",
            arg: x,
        });
    }
    Ok(())
}

fn neumann(n: usize) -> f64 {
    if n == 0 {
        1.0
    } else {
        2.0
    }
}

/// (z − x)^p as the finite Chebyshev sum with p + 1 terms.
pub fn fourier_integer_power(p: u32, z: f64, x: f64) -> Result<f64> {
    let mut acc = Compensated::new();
    for t in fourier_integer_terms(p, z, x)? {
        acc.add(t);
    }
    Ok(acc.value())
}

/// Largest degree for which [`scaled_legendre_poly`] is used.
const POLY_DEGREE_MAX: u32 = 24;

/// (z² − 1)^{p/2} P_p^n(z/√(z² − 1)) for integers 0 ≤ n ≤ p, expanded as a
/// polynomial in z and z² − 1 from the n-th derivative of P_p.
fn scaled_legendre_poly(p: u32, n: u32, z: f64) -> f64 {
    let s = z * z - 1.0;
    let binom = |a: u32, b: u32| factorial(a) / (factorial(b) * factorial(a - b));
    let mut acc = Compensated::new();
    let mut k = 0;
    while 2 * k + n <= p {
        let e = p - 2 * k;
        let c = binom(p, k) * binom(2 * p - 2 * k, p) * factorial(e) / factorial(e - n);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(sign * c * z.powi((e - n) as i32) * s.powi(k as i32));
        k += 1;
    }
    acc.value() * 0.5f64.powi(p as i32)
}

/// The p + 1 terms of [`fourier_integer_power`].
pub fn fourier_integer_terms(p: u32, z: f64, x: f64) -> Result<Vec<f64>> {
    check_zx(z, x)?;
    let s = z * z - 1.0;
    let w = z / s.sqrt();
    let mut t = ChebyshevSeq::new(x);
    let mut out = Vec::with_capacity(p as usize + 1);
    for n in 0..=p {
        let c = neumann(n as usize) * pochhammer(-(p as f64), n) * factorial(p - n) / factorial(p + n);
        let leg = if p <= POLY_DEGREE_MAX {
            scaled_legendre_poly(p, n, z)
        } else {
            s.powf(0.5 * p as f64) * legendre_p_gt1(p as f64, n as f64, w)?
        };
        out.push(c * leg * t.next_value());
    }
    Ok(out)
}

/// n-th Chebyshev coefficient of (z − x)^{−q}, including the Neumann factor.
pub fn fourier_negative_coefficient(q: u32, z: f64, n: usize) -> Result<f64> {
    if q == 0 {
        return Err(Error::invalid("q must be positive"));
    }
    let s = z * z - 1.0;
    let w = z / s.sqrt();
    let p = legendre_p_gt1_scaled(q as f64 - 1.0, -(n as f64), w)?;
    let ln = -0.5 * q as f64 * s.ln() - ln_factorial(q - 1) + ln_factorial(n as u32 + q - 1);
    Ok(neumann(n) * p.mul_ln(ln, 1.0).value())
}

/// (z − x)^{−q} as an infinite Chebyshev series.
pub fn fourier_negative_power(q: u32, z: f64, x: f64, tr: Truncation) -> Result<PartialSum> {
    check_zx(z, x)?;
    let mut t = ChebyshevSeq::new(x);
    run(tr, |n| Ok(fourier_negative_coefficient(q, z, n)? * t.next_value()))
}

/// ln|(ν)_n| and its sign, or None when the symbol vanishes.
fn ln_pochhammer(nu: f64, n: usize) -> Option<(f64, f64)> {
    if is_nonpositive_integer(nu) && n as f64 > -nu {
        return None;
    }
    if !is_nonpositive_integer(nu) {
        let (a, sa) = ln_gamma(nu + n as f64).ok()?;
        let (b, sb) = ln_gamma(nu).ok()?;
        return Some((a - b, sa * sb));
    }
    let mut l = 0.0;
    let mut s = 1.0;
    for i in 0..n {
        let f = nu + i as f64;
        l += f.abs().ln();
        s *= f.signum();
    }
    Some((l, s))
}

/// Jacobi-polynomial expansion of (z − x)^{−ν}. For ν ∈ −N₀ the series
/// terminates and exactly 1 − ν terms are summed.
pub fn euler_kernel_jacobi(nu: f64, alpha: f64, beta: f64, z: f64, x: f64, tr: Truncation) -> Result<PartialSum> {
    check_zx(z, x)?;
    JacobiParams::new(alpha, beta)?;
    let ln_pre = (alpha + 1.0 - nu) * (z - 1.0).ln() + (beta + 1.0 - nu) * (z + 1.0).ln()
        - (alpha + beta + 1.0 - nu) * 2f64.ln();
    let mut p = JacobiSeq::new(alpha, beta, x);
    let term = |n: usize, pn: f64| -> Result<f64> {
        let nf = n as f64;
        let Some((lp, sp)) = ln_pochhammer(nu, n) else {
            return Ok(0.0);
        };
        // (α+β+2n+1)Γ(α+β+n+1), written as Γ(α+β+2) at n = 0
        let (lc, sc) = if n == 0 {
            ln_gamma(alpha + beta + 2.0)?
        } else {
            let (l, s) = ln_gamma(alpha + beta + nf + 1.0)?;
            (l + (alpha + beta + 2.0 * nf + 1.0).ln(), s)
        };
        let (la, _) = ln_gamma(alpha + nf + 1.0)?;
        let (lb, _) = ln_gamma(beta + nf + 1.0)?;
        let q = jacobi_q2_scaled(nf + nu - 1.0, alpha + 1.0 - nu, beta + 1.0 - nu, z)?;
        Ok(q.mul_ln(ln_pre + lp + lc - la - lb, sp * sc).value() * pn)
    };
    if is_nonpositive_integer(nu) {
        let count = (-nu) as usize + 1;
        let mut r = SeriesRunner::new(tr);
        for n in 0..count {
            r.push(term(n, p.next_value())?);
        }
        return Ok(r.finish(true));
    }
    run(tr, |n| term(n, p.next_value()))
}

/// The finite Jacobi expansion of (z − x)^n written with Jacobi polynomials
/// of negative parameters in z.
pub fn koekoek_power(n: u32, alpha: f64, beta: f64, z: f64, x: f64) -> Result<f64> {
    check_zx(z, x)?;
    JacobiParams::new(alpha, beta)?;
    let nf = n as f64;
    let ab = alpha + beta;
    let mut acc = Compensated::new();
    let mut p = JacobiSeq::new(alpha, beta, x);
    for k in 0..=n {
        let kf = k as f64;
        // (−2)^n n! Γ(α+β+1)(α+β+2k+1)(α+β+1)_k/Γ(α+β+n+k+2); Γ(α+β+1)(α+β+1)_k = Γ(α+β+k+1)
        let (l1, s1) = if k == 0 {
            // Γ(α+β+1)(α+β+1) = Γ(α+β+2)
            ln_gamma(ab + 2.0)?
        } else {
            let (l, s) = ln_gamma(ab + kf + 1.0)?;
            (l + (ab + 2.0 * kf + 1.0).abs().ln(), s * (ab + 2.0 * kf + 1.0).signum())
        };
        let (l2, s2) = ln_gamma(ab + nf + kf + 2.0)?;
        let c = (-2f64).powi(n as i32) * factorial(n) * s1 * s2 * (l1 - l2).exp();
        let pz = crate::orthopoly::jacobi_p_explicit(n - k, -alpha - nf - 1.0, -beta - nf - 1.0, z);
        acc.add(c * pz * p.next_value());
    }
    Ok(acc.value())
}

fn check_nu_not_nonpositive_integer(nu: f64) -> Result<()> {
    if is_nonpositive_integer(nu) {
        return Err(Error::ExclusionSet {
            nu,
            set: "{0, -1, -2, ...}".into(),
        });
    }
    Ok(())
}

/// Gegenbauer expansion of (z − x)^{−ν}.
pub fn euler_kernel_gegenbauer(nu: f64, mu: f64, z: f64, x: f64, tr: Truncation) -> Result<PartialSum> {
    check_zx(z, x)?;
    check_nu_not_nonpositive_integer(nu)?;
    if mu == 0.0 {
        return Err(Error::ZeroParameter);
    }
    if !(mu > -0.5) {
        return Err(Error::invalid(format!("mu must exceed -1/2 (mu = {mu})")));
    }
    let (lgm, sgm) = ln_gamma(mu)?;
    let (lgn, sgn) = ln_gamma(nu)?;
    let ln_pre = (mu + 0.5) * 2f64.ln() + lgm - 0.5 * PI.ln() - lgn - ((nu - mu) / 2.0 - 0.25) * (z * z - 1.0).ln();
    let sign = sgm * sgn;
    let mut c = GegenbauerSeq::new(mu, x);
    run(tr, |n| {
        let nf = n as f64;
        let q = legendre_q_hat_scaled(nf + mu - 0.5, nu - mu - 0.5, z)?;
        Ok((nf + mu) * q.mul_ln(ln_pre, sign).value() * c.next_value())
    })
}

/// Chebyshev expansion of (z − x)^{−ν}.
pub fn euler_kernel_chebyshev(nu: f64, z: f64, x: f64, tr: Truncation) -> Result<PartialSum> {
    check_zx(z, x)?;
    check_nu_not_nonpositive_integer(nu)?;
    let (lgn, sgn) = ln_gamma(nu)?;
    let ln_pre = 0.5 * 2f64.ln() - 0.5 * PI.ln() - lgn - (nu / 2.0 - 0.25) * (z * z - 1.0).ln();
    let mut t = ChebyshevSeq::new(x);
    run(tr, |n| {
        let q = legendre_q_hat_scaled(n as f64 - 0.5, nu - 0.5, z)?;
        Ok(neumann(n) * q.mul_ln(ln_pre, sgn).value() * t.next_value())
    })
}

fn check_power_exclusion(nu: f64) -> Result<()> {
    if nu >= 0.0 && crate::specfun::is_integer(nu) && (nu as i64) % 2 == 0 {
        return Err(Error::ExclusionSet {
            nu,
            set: "{0, 2, 4, ...}".into(),
        });
    }
    Ok(())
}

/// Gegenbauer (multipole) expansion of ‖x − x′‖^ν on R^d in terms of r, r′
/// and the separation angle.
pub fn multipole_power(d: u32, nu: f64, r: f64, rp: f64, cos_gamma: f64, tr: Truncation) -> Result<PartialSum> {
    if d < 3 {
        return Err(Error::invalid("multipole expansion needs d >= 3"));
    }
    check_power_exclusion(nu)?;
    if !(r > 0.0 && rp > 0.0) {
        return Err(Error::invalid("radii must be positive"));
    }
    if (r - rp).abs() / r.max(rp) < RADIUS_GUARD {
        return Err(Error::CoincidentRadius { r, rp });
    }
    if !(-1.0..=1.0).contains(&cos_gamma) {
        return Err(Error::Domain {
            func: "multipole_power",
            arg: cos_gamma,
        });
    }
    let df = d as f64;
    let (big, small) = (r.max(rp), r.min(rp));
    let z = (r * r + rp * rp) / (2.0 * r * rp);
    let (lgd, _) = ln_gamma(0.5 * (df - 2.0))?;
    let (lgn, sgn) = ln_gamma(-0.5 * nu)?;
    let ln_pre = lgd - 2f64.ln() - 0.5 * PI.ln() - lgn + 0.5 * (nu + df - 1.0) * (big * big - small * small).ln()
        - 0.5 * (df - 1.0) * (r * rp).ln();
    let mut c = GegenbauerSeq::new(0.5 * df - 1.0, cos_gamma);
    run(tr, |n| {
        let nf = n as f64;
        let q = legendre_q_hat_scaled(nf + 0.5 * (df - 3.0), 0.5 * (1.0 - nu - df), z)?;
        Ok((2.0 * nf + df - 2.0) * q.mul_ln(ln_pre, sgn).value() * c.next_value())
    })
}

/// Toroidal data (χ, 2RR′, φ − φ′) of a geometry, checked against the
/// singular set.
pub fn azimuthal_geometry(g: &KernelGeometry) -> Result<(f64, f64, f64)> {
    let chi = toroidal_chi(g)?;
    if chi <= 1.0 + CHI_GUARD {
        return Err(Error::SingularConfiguration { chi });
    }
    Ok((chi, 2.0 * g.big_r() * g.big_rp(), g.delta_phi()))
}

/// m-th azimuthal Fourier coefficient of ‖x − x′‖^ν, including ε_m, so
/// that ‖x − x′‖^ν = Σ_m A_m cos(m(φ − φ′)).
pub fn azimuthal_coefficient(nu: f64, chi: f64, two_rr: f64, m: usize) -> Result<f64> {
    check_power_exclusion(nu)?;
    if chi - 1.0 < BRANCH_GUARD {
        return Err(Error::SingularConfiguration { chi });
    }
    let (lgn, sgn) = ln_gamma(-0.5 * nu)?;
    let ln_pre =
        0.5 * nu * two_rr.ln() + 0.5 * 2f64.ln() + 0.25 * (nu + 1.0) * (chi * chi - 1.0).ln() - 0.5 * PI.ln() - lgn;
    let q = legendre_q_hat_scaled(m as f64 - 0.5, -0.5 * (nu + 1.0), chi)?;
    Ok(neumann(m) * q.mul_ln(ln_pre, sgn).value())
}

/// Azimuthal Fourier series of ‖x − x′‖^ν from toroidal data.
pub fn azimuthal_power_toroidal(nu: f64, chi: f64, two_rr: f64, delta_phi: f64, tr: Truncation) -> Result<PartialSum> {
    check_power_exclusion(nu)?;
    if chi <= 1.0 + CHI_GUARD {
        return Err(Error::SingularConfiguration { chi });
    }
    if !(two_rr > 0.0) {
        return Err(Error::Axis);
    }
    run(tr, |m| {
        Ok(azimuthal_coefficient(nu, chi, two_rr, m)? * (m as f64 * delta_phi).cos())
    })
}

/// Azimuthal Fourier series of ‖x − x′‖^ν.
pub fn azimuthal_power(nu: f64, g: &KernelGeometry, tr: Truncation) -> Result<PartialSum> {
    let (chi, two_rr, dphi) = azimuthal_geometry(g)?;
    azimuthal_power_toroidal(nu, chi, two_rr, dphi, tr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr() -> Truncation {
        Truncation::new(1e-14, 2000)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn integer_power_examples() {
        assert!((fourier_integer_power(0, 2.0, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!((fourier_integer_power(1, 2.0, 0.5).unwrap() - 1.5).abs() < 1e-14);
        assert!(rel(fourier_integer_power(3, 1.5, -0.2).unwrap(), 4.913) < 1e-13);
    }

    #[test]
    fn negative_power_examples() {
        let s = fourier_negative_power(1, 3.0, 0.0, Truncation::new(1e-12, 60)).unwrap();
        assert!(rel(s.value, 1.0 / 3.0) < 1e-10);
        let s = fourier_negative_power(2, 1.5, 0.9, tr()).unwrap();
        assert!(rel(s.value, 0.6f64.powi(-2)) < 1e-12);
        let s = fourier_negative_power(3, 1.5, -0.9, tr()).unwrap();
        assert!(rel(s.value, 2.4f64.powi(-3)) < 1e-12);
    }

    #[test]
    fn negative_power_coefficients_by_quadrature() {
        let (q, chi) = (2, 1.7);
        for n in 0..=10 {
            let c = fourier_negative_coefficient(q, chi, n).unwrap();
            let integral = crate::quadrature::periodic_trapezoid(512, |t| {
                (chi - t.cos()).powi(-(q as i32)) * (n as f64 * t).cos()
            });
            assert!(
                (c - integral / PI * if n == 0 { 0.5 } else { 1.0 }).abs() < 1e-12,
                "n={n}"
            );
        }
    }

    #[test]
    fn jacobi_examples() {
        let s = euler_kernel_jacobi(1.0, 0.0, 0.0, 3.0, 0.2, tr()).unwrap();
        assert!(rel(s.value, 1.0 / 2.8) < 1e-12);
        let s = euler_kernel_jacobi(0.5, 0.3, -0.4, 2.0, -0.7, tr()).unwrap();
        assert!(rel(s.value, 2.7f64.powf(-0.5)) < 1e-12);
        let s = euler_kernel_jacobi(2.5, 1.5, 0.5, 1.2, 0.9, tr()).unwrap();
        assert!(rel(s.value, 0.3f64.powf(-2.5)) < 1e-10);
    }

    #[test]
    fn jacobi_terminates_for_negative_integers() {
        for n in 0..4u32 {
            let s = euler_kernel_jacobi(-(n as f64), 0.4, -0.3, 1.8, 0.35, tr()).unwrap();
            assert_eq!(s.terms_used, n as usize + 1);
            assert!(rel(s.value, 1.45f64.powi(n as i32)) < 1e-12, "n={n}");
            let k = koekoek_power(n, 0.4, -0.3, 1.8, 0.35).unwrap();
            assert!(rel(k, 1.45f64.powi(n as i32)) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn gegenbauer_examples() {
        let s = euler_kernel_gegenbauer(1.0, 0.5, 2.5, 0.3, tr()).unwrap();
        assert!(rel(s.value, 1.0 / 2.2) < 1e-12);
        let s = euler_kernel_gegenbauer(2.0, 1.0, 4.0, -0.8, tr()).unwrap();
        assert!(rel(s.value, 4.8f64.powi(-2)) < 1e-12);
        let s = euler_kernel_gegenbauer(0.7, -0.3, 1.4, 0.1, tr()).unwrap();
        assert!(rel(s.value, 1.3f64.powf(-0.7)) < 1e-11);
        let j = euler_kernel_jacobi(0.7, 0.3, 0.3, 1.4, 0.1, tr()).unwrap();
        let g = euler_kernel_gegenbauer(0.7, 0.8, 1.4, 0.1, tr()).unwrap();
        assert!(rel(j.value, g.value) < 1e-10);
        assert_eq!(
            euler_kernel_gegenbauer(-2.0, 1.0, 2.0, 0.0, tr()).unwrap_err(),
            Error::ExclusionSet {
                nu: -2.0,
                set: "{0, -1, -2, ...}".into()
            }
        );
    }

    #[test]
    fn chebyshev_examples() {
        let s = euler_kernel_chebyshev(1.0, 3.0, 0.0, tr()).unwrap();
        assert!(rel(s.value, 1.0 / 3.0) < 1e-12);
        let s = euler_kernel_chebyshev(0.5, 1.5, 0.5, tr()).unwrap();
        assert!(rel(s.value, 1.0) < 1e-12);
        let c = euler_kernel_chebyshev(2.0, 1.3, -0.4, tr()).unwrap();
        let f = fourier_negative_power(2, 1.3, -0.4, tr()).unwrap();
        assert!(rel(c.value, f.value) < 1e-10);
    }

    #[test]
    fn multipole_examples() {
        let s = multipole_power(3, -1.0, 1.0, 2.0, 0.3, tr()).unwrap();
        assert!(rel(s.value, 3.8f64.powf(-0.5)) < 1e-12);
        let s = multipole_power(4, -2.0, 0.5, 1.0, -0.4, tr()).unwrap();
        assert!(rel(s.value, 1.0 / (0.25 + 1.0 + 0.4)) < 1e-12);
        let s = multipole_power(5, 1.0, 1.0, 3.0, 1.0, tr()).unwrap();
        assert!(rel(s.value, 2.0) < 1e-12);
        assert!(matches!(
            multipole_power(3, 2.0, 1.0, 2.0, 0.0, tr()),
            Err(Error::ExclusionSet { .. })
        ));
        assert!(matches!(
            multipole_power(3, -1.0, 1.0, 1.0, 0.0, tr()),
            Err(Error::CoincidentRadius { .. })
        ));
    }

    #[test]
    fn azimuthal_examples() {
        // χ = 1.5, 2RR′ = 2, Δφ = π/2 ⇒ ‖x−x′‖² = 3
        let s = azimuthal_power_toroidal(-1.0, 1.5, 2.0, 0.5 * PI, tr()).unwrap();
        assert!(rel(s.value, 3f64.powf(-0.5)) < 1e-12);
        let s = azimuthal_power_toroidal(-2.5, 1.5, 2.0, 0.0, tr()).unwrap();
        assert!(rel(s.value, (2.0f64 * 0.5).powf(-1.25)) < 1e-12);
        let g = KernelGeometry::new(vec![0.3, -1.1, 0.7, 0.2], vec![1.4, 0.5, -0.2, 0.9]).unwrap();
        let s = azimuthal_power(1.0, &g, tr()).unwrap();
        assert!(rel(s.value, g.distance()) < 1e-12);
        let (chi, rr, dphi) = azimuthal_geometry(&g).unwrap();
        let c = euler_kernel_chebyshev(-0.5, chi, dphi.cos(), tr()).unwrap();
        assert!(rel(s.value, rr.sqrt() * c.value) < 1e-12);
    }
}
