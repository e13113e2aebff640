//! Fundamental solution of the polyharmonic equation and its forms in
//! rotationally-invariant coordinates.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{factorial, gamma};

/// Two points in R^d with the derived radial, angular and toroidal data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelGeometry {
    pub x: Vec<f64>,
    pub xp: Vec<f64>,
}

impl KernelGeometry {
    pub fn new(x: Vec<f64>, xp: Vec<f64>) -> Result<Self> {
        if x.len() != xp.len() || x.len() < 2 {
            return Err(Error::invalid("points must share a dimension of at least 2"));
        }
        if x.iter().chain(&xp).any(|v| !v.is_finite()) {
            return Err(Error::invalid("coordinates must be finite"));
        }
        Ok(Self { x, xp })
    }

    /// Builds the geometry from cylindrical data: radii R, R′, azimuths φ, φ′
    /// and the remaining coordinates x₃…x_d.
    pub fn from_cylindrical(r: f64, phi: f64, rest: &[f64], rp: f64, phip: f64, restp: &[f64]) -> Result<Self> {
        let mut x = vec![r * phi.cos(), r * phi.sin()];
        x.extend_from_slice(rest);
        let mut xp = vec![rp * phip.cos(), rp * phip.sin()];
        xp.extend_from_slice(restp);
        Self::new(x, xp)
    }

    pub fn dimension(&self) -> usize {
        self.x.len()
    }

    pub fn r(&self) -> f64 {
        norm(&self.x)
    }

    pub fn rp(&self) -> f64 {
        norm(&self.xp)
    }

    pub fn distance(&self) -> f64 {
        self.x
            .iter()
            .zip(&self.xp)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn cos_gamma(&self) -> Result<f64> {
        let (r, rp) = (self.r(), self.rp());
        if r == 0.0 || rp == 0.0 {
            return Err(Error::invalid("separation angle undefined at the origin"));
        }
        let dot: f64 = self.x.iter().zip(&self.xp).map(|(a, b)| a * b).sum();
        Ok((dot / (r * rp)).clamp(-1.0, 1.0))
    }

    /// Cylindrical radius √(x₁² + x₂²).
    pub fn big_r(&self) -> f64 {
        self.x[0].hypot(self.x[1])
    }

    pub fn big_rp(&self) -> f64 {
        self.xp[0].hypot(self.xp[1])
    }

    /// φ − φ′.
    pub fn delta_phi(&self) -> f64 {
        self.x[1].atan2(self.x[0]) - self.xp[1].atan2(self.xp[0])
    }

    fn axial_sq(&self) -> f64 {
        self.x[2..]
            .iter()
            .zip(&self.xp[2..])
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Toroidal parameter χ = (R² + R′² + Σ_{i≥3}(x_i − x_i′)²)/(2RR′).
pub fn toroidal_chi(g: &KernelGeometry) -> Result<f64> {
    let (r, rp) = (g.big_r(), g.big_rp());
    if r * rp == 0.0 {
        return Err(Error::Axis);
    }
    Ok((r * r + rp * rp + g.axial_sq()) / (2.0 * r * rp))
}

/// Dimension and order of the polyharmonic operator (−Δ)^k on R^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolyharmonicOrder {
    pub d: u32,
    pub k: u32,
}

/// Which formula the fundamental solution uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KernelBranch {
    /// d even, k ≥ d/2: ‖x−x′‖^{2p}(log‖x−x′‖ − β_{p,d}) with p = k − d/2
    Logarithmic { p: u32 },
    /// pure power ‖x−x′‖^{2k−d}
    Power { exponent: i64 },
}

impl PolyharmonicOrder {
    pub fn new(d: u32, k: u32) -> Result<Self> {
        if d < 2 || k < 1 {
            return Err(Error::invalid(format!("need d >= 2 and k >= 1 (d = {d}, k = {k})")));
        }
        Ok(Self { d, k })
    }

    pub fn branch(&self) -> KernelBranch {
        if self.d % 2 == 0 && 2 * self.k >= self.d {
            KernelBranch::Logarithmic { p: self.k - self.d / 2 }
        } else {
            KernelBranch::Power {
                exponent: 2 * self.k as i64 - self.d as i64,
            }
        }
    }
}

/// β_{p,d} = ½[H_p + H_{d/2+p−1} − H_{d/2−1}] as an exact rational.
pub fn harmonic_beta(p: u32, d: u32) -> Result<BigRational> {
    if d % 2 == 1 || d == 0 {
        return Err(Error::OddDimension(d));
    }
    let h = |j: u32| {
        (1..=j).fold(BigRational::zero(), |acc, i| {
            acc + BigRational::new(BigInt::from(1), BigInt::from(i))
        })
    };
    let half = d / 2;
    let sum = h(p) + h(half + p - 1) - h(half - 1);
    Ok(sum / BigRational::from_integer(BigInt::from(2)))
}

pub fn harmonic_beta_f64(p: u32, d: u32) -> Result<f64> {
    harmonic_beta(p, d)?
        .to_f64()
        .ok_or_else(|| Error::invalid("beta not representable"))
}

/// 𝒢_k^d(x, x′).
pub fn fundamental_solution(order: PolyharmonicOrder, g: &KernelGeometry) -> Result<f64> {
    if g.dimension() != order.d as usize {
        return Err(Error::invalid("geometry dimension does not match the operator"));
    }
    let dist = g.distance();
    if dist == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let (d, k) = (order.d as f64, order.k);
    match order.branch() {
        KernelBranch::Logarithmic { p } => {
            let sign = if (k + order.d / 2 + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let denom = factorial(k - 1) * factorial(p) * 2f64.powi(2 * k as i32 - 1) * PI.powf(0.5 * d);
            let beta = harmonic_beta_f64(p, order.d)?;
            Ok(sign * dist.powi(2 * p as i32) / denom * (dist.ln() - beta))
        }
        KernelBranch::Power { exponent } => {
            let c = gamma(0.5 * d - k as f64)? / (factorial(k - 1) * 2f64.powi(2 * k as i32) * PI.powf(0.5 * d));
            Ok(c * dist.powf(exponent as f64))
        }
    }
}

const CHI_GUARD: f64 = 1e-12;

/// 𝔥 in toroidal form: (2RR′)^{−q}[χ − cos(φ−φ′)]^{−q} = ‖x−x′‖^{−2q}.
pub fn kernel_h(q: u32, g: &KernelGeometry) -> Result<f64> {
    let chi = toroidal_chi(g)?;
    if chi <= 1.0 + CHI_GUARD {
        return Err(Error::SingularConfiguration { chi });
    }
    let rr = 2.0 * g.big_r() * g.big_rp();
    Ok((rr * (chi - g.delta_phi().cos())).powi(-(q as i32)))
}

/// 𝔩 in toroidal form, the two-term logarithmic expression with p = k − d/2.
pub fn kernel_l(p: u32, d: u32, g: &KernelGeometry) -> Result<f64> {
    let beta = harmonic_beta_f64(p, d)?;
    let chi = toroidal_chi(g)?;
    if chi <= 1.0 + CHI_GUARD {
        return Err(Error::SingularConfiguration { chi });
    }
    let rr = 2.0 * g.big_r() * g.big_rp();
    let w = chi - g.delta_phi().cos();
    let f = (rr * w).powi(p as i32);
    Ok(f * (0.5 * rr.ln() - beta) + 0.5 * f * w.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> KernelGeometry {
        KernelGeometry::new(vec![0.3, -1.1, 0.7, 0.2], vec![1.4, 0.5, -0.2, 0.9]).unwrap()
    }

    #[test]
    fn beta_examples() {
        for d in [2, 4, 6, 10] {
            assert!(harmonic_beta(0, d).unwrap().is_zero());
        }
        let r = |n: i64, m: i64| BigRational::new(BigInt::from(n), BigInt::from(m));
        assert_eq!(harmonic_beta(1, 4).unwrap(), r(3, 4));
        assert_eq!(harmonic_beta(2, 2).unwrap(), r(3, 2));
        assert_eq!(harmonic_beta(1, 3), Err(Error::OddDimension(3)));
    }

    #[test]
    fn fundamental_solution_constants() {
        let g3 = KernelGeometry::new(vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 2.0]).unwrap();
        let v = fundamental_solution(PolyharmonicOrder::new(3, 1).unwrap(), &g3).unwrap();
        assert!((v - 1.0 / (8.0 * PI)).abs() < 1e-16);
        let g2 = KernelGeometry::new(vec![0.0, 0.0], vec![3.0, 4.0]).unwrap();
        let v = fundamental_solution(PolyharmonicOrder::new(2, 1).unwrap(), &g2).unwrap();
        assert!((v + 5f64.ln() / (2.0 * PI)).abs() < 1e-15);
        let g4 = pair();
        let v = fundamental_solution(PolyharmonicOrder::new(4, 1).unwrap(), &g4).unwrap();
        let dd = g4.distance();
        assert!((v - 1.0 / (4.0 * PI * PI * dd * dd)).abs() < 1e-15);
        let same = KernelGeometry::new(vec![1.0, 2.0], vec![1.0, 2.0]).unwrap();
        assert_eq!(
            fundamental_solution(PolyharmonicOrder::new(2, 1).unwrap(), &same),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn branch_selection() {
        let b = |d, k| PolyharmonicOrder::new(d, k).unwrap().branch();
        assert_eq!(b(4, 2), KernelBranch::Logarithmic { p: 0 });
        assert_eq!(b(4, 1), KernelBranch::Power { exponent: -2 });
        assert_eq!(b(3, 5), KernelBranch::Power { exponent: 7 });
    }

    #[test]
    fn chi_examples() {
        let g = KernelGeometry::new(vec![1.0, 0.0, 0.5], vec![1.0, 0.0, 0.5]).unwrap();
        assert!((toroidal_chi(&g).unwrap() - 1.0).abs() < 1e-15);
        let g = KernelGeometry::from_cylindrical(1.0, 0.3, &[0.0], 2.0, 1.0, &[0.0]).unwrap();
        assert!((toroidal_chi(&g).unwrap() - 1.25).abs() < 1e-15);
        let g = KernelGeometry::new(vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(toroidal_chi(&g), Err(Error::Axis));
    }

    #[test]
    fn toroidal_distance() {
        let g = pair();
        let chi = toroidal_chi(&g).unwrap();
        let rec = (2.0 * g.big_r() * g.big_rp() * (chi - g.delta_phi().cos())).sqrt();
        assert!((rec - g.distance()).abs() < 1e-13 * g.distance());
    }

    #[test]
    fn kernel_h_examples() {
        let g = pair();
        let dd = g.distance();
        assert!((kernel_h(1, &g).unwrap() - dd.powi(-2)).abs() < 1e-13 * dd.powi(-2));
        let h1 = kernel_h(1, &g).unwrap();
        assert!((kernel_h(3, &g).unwrap() - h1.powi(3)).abs() < 1e-13 * h1.powi(3));
        // φ = φ′, 2RR′ = 1, χ = 2
        let g = KernelGeometry::from_cylindrical(0.5, 0.4, &[1.0], 1.0, 0.4, &[0.0]).unwrap();
        assert!((toroidal_chi(&g).unwrap() - 2.25).abs() < 1e-15);
        let g = KernelGeometry::from_cylindrical(0.5, 0.4, &[0.75f64.sqrt()], 1.0, 0.4, &[0.0]).unwrap();
        assert!((kernel_h(1, &g).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kernel_l_examples() {
        let g = KernelGeometry::new(vec![0.2, 1.3], vec![-0.4, 0.1]).unwrap();
        let dd = g.distance();
        let want = dd * dd * (dd.ln() - 1.0);
        assert!((kernel_l(1, 2, &g).unwrap() - want).abs() < 1e-12 * want.abs());
        let p0 = kernel_l(0, 4, &pair()).unwrap();
        assert!((p0 - pair().distance().ln()).abs() < 1e-13);
        // unit separation gives −β
        let g = KernelGeometry::new(vec![1.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert!((kernel_l(2, 4, &g).unwrap() + harmonic_beta_f64(2, 4).unwrap()).abs() < 1e-14);
    }
}
