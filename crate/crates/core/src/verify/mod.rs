//! Numerical certification of the polyspherical power-law addition theorems.
//!
//! Every theorem is checked in phase-free form: the left side is
//! Q̂_{|m|−1/2}^{−(ν+1)/2}(χ) and the right side is a truncated nested sum of
//! node factors times Q̂ of the radial argument z = (r² + r′²)/(2rr′). The
//! complex prefactors of the printed statements cancel against the phases of
//! Q = e^{iπμ} Q̂, leaving real prefactors throughout.
//!
//! Angle vectors use the theorem's own numbering: θ₁…θ_{d−2}, φ for the
//! standard tree, and ϑ₁…ϑ_{2^{q−1}−1}, φ₁…φ_{2^{q−1}} (heap order) for the
//! Hopf tree.

mod identities;
mod reductions;
mod theorems;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansions::{CHI_GUARD, RADIUS_GUARD};
use crate::quadrature::periodic_trapezoid;
use crate::specfun::{gamma, is_integer, legendre_q_hat};

pub use identities::{
    bridge_residual, chebyshev_limit_residual, gegenbauer_jacobi_residual, identity_suite, note_pq_residual,
    whipple_residual, IdentityCheck,
};
pub use reductions::{heine_toroidal_q, reduction_b2a, reduction_ba, reduction_ca2};
pub use theorems::{
    swap_hopf_azimuths, verify, verify_b2a, verify_ba, verify_ca2, verify_hopf, verify_standard, verify_tree,
};

/// Default per-level truncation cap.
pub const DEFAULT_CAP: usize = 80;

/// Points used for the trapezoid check of the left-hand side.
pub const LHS_QUADRATURE_POINTS: usize = 1024;

/// The five addition theorems, labelled as on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    #[serde(rename = "T4.1")]
    Standard,
    #[serde(rename = "T4.2")]
    Hopf,
    #[serde(rename = "C4.3")]
    Ba,
    #[serde(rename = "C4.4")]
    B2a,
    #[serde(rename = "C4.5")]
    Ca2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::Standard,
        TheoremId::Hopf,
        TheoremId::Ba,
        TheoremId::B2a,
        TheoremId::Ca2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::Standard => "T4.1",
            TheoremId::Hopf => "T4.2",
            TheoremId::Ba => "C4.3",
            TheoremId::B2a => "C4.4",
            TheoremId::Ca2 => "C4.5",
        }
    }

    /// Number of angles in a point's angle vector for the given order.
    pub fn angle_count(self, order: u32) -> usize {
        match self {
            TheoremId::Standard => order.saturating_sub(1) as usize,
            TheoremId::Hopf => (1usize << order.min(30)) - 1,
            TheoremId::Ba => 2,
            TheoremId::B2a | TheoremId::Ca2 => 3,
        }
    }

    /// Default dimension (T4.1) or Hopf exponent (T4.2).
    pub fn default_order(self) -> u32 {
        match self {
            TheoremId::Standard | TheoremId::Ba => 3,
            TheoremId::Hopf | TheoremId::Ca2 => 2,
            TheoremId::B2a => 4,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown theorem '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremConfig {
    pub theorem: TheoremId,
    /// d for T4.1, q for T4.2; ignored by the corollaries.
    pub order: u32,
    pub nu: f64,
    pub m: i64,
    pub r: f64,
    pub rp: f64,
    pub angles: Vec<f64>,
    pub angles_p: Vec<f64>,
    /// One cap per summation level, outermost first; the last entry repeats.
    pub caps: Vec<usize>,
    pub tol: f64,
    #[serde(skip)]
    pub trace: bool,
}

impl TheoremConfig {
    pub fn new(theorem: TheoremId, nu: f64, m: i64, r: f64, rp: f64, angles: Vec<f64>, angles_p: Vec<f64>) -> Self {
        Self {
            theorem,
            order: theorem.default_order(),
            nu,
            m,
            r,
            rp,
            angles,
            angles_p,
            caps: vec![DEFAULT_CAP],
            tol: 1e-6,
            trace: false,
        }
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = order;
        self
    }

    pub fn with_caps(mut self, caps: Vec<usize>) -> Self {
        self.caps = caps;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    TruncationInsufficient,
}

/// One summation level of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelReport {
    pub name: String,
    pub lower: usize,
    pub cap: usize,
    pub terms_used: usize,
    /// Geometric extrapolation of the neglected tail of this level.
    pub tail: f64,
}

/// Partial right-hand side with one level truncated at `index`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub level: usize,
    pub index: usize,
    pub term: f64,
    pub partial: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub label: String,
    pub dimension: usize,
    pub nu: f64,
    pub m: i64,
    pub chi: f64,
    pub z: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_quadrature: Option<f64>,
    pub tail_estimate: f64,
    pub levels: Vec<LevelReport>,
    pub tol: f64,
    pub status: Status,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRow>,
}

impl VerificationReport {
    pub fn terms_used(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.terms_used).collect()
    }
}

/// Everything [`assemble`] needs besides the right-hand side itself.
pub(crate) struct Plan {
    pub label: String,
    pub dimension: usize,
    pub nu: f64,
    pub m: i64,
    pub chi: f64,
    pub z: f64,
    pub lhs: f64,
    pub lhs_quadrature: Option<f64>,
    pub names: Vec<String>,
    pub lower: Vec<usize>,
    pub caps: Vec<usize>,
    pub tol: f64,
    pub trace: bool,
}

/// Expands a user cap list to one cap per level.
pub(crate) fn resolve_caps(caps: &[usize], levels: usize) -> Result<Vec<usize>> {
    if caps.len() > levels {
        return Err(Error::invalid(format!(
            "{} caps given for {levels} summation levels",
            caps.len()
        )));
    }
    let last = caps.last().copied().unwrap_or(DEFAULT_CAP);
    Ok((0..levels).map(|k| caps.get(k).copied().unwrap_or(last)).collect())
}

/// ρ from the last ten level increments; tail = M ρ⁵/(1 − ρ) with M the
/// largest of the last five.
fn extrapolate_tail(g: &[f64]) -> f64 {
    let mag: Vec<f64> = g.iter().map(|v| v.abs()).collect();
    let max = |s: &[f64]| s.iter().copied().fold(0.0, f64::max);
    if mag.len() < 10 {
        return max(&mag[mag.len().saturating_sub(5)..]);
    }
    let last = max(&mag[mag.len() - 5..]);
    let prior = max(&mag[mag.len() - 10..mag.len() - 5]);
    if last == 0.0 {
        return 0.0;
    }
    if prior == 0.0 {
        return f64::INFINITY;
    }
    let rho = (last / prior).powf(0.2);
    if rho >= 1.0 {
        f64::INFINITY
    } else {
        last * rho.powi(5) / (1.0 - rho)
    }
}

/// Evaluates the right-hand side at the caps, estimates each level's tail
/// from its last increments, and classifies the result.
pub(crate) fn assemble(plan: Plan, rhs: impl Fn(&[usize]) -> Result<f64>) -> Result<VerificationReport> {
    let full = rhs(&plan.caps)?;
    let scale = plan.lhs.abs().max(f64::MIN_POSITIVE);
    let mut levels = Vec::with_capacity(plan.caps.len());
    let mut trace = Vec::new();
    for (k, (&lower, &cap)) in plan.lower.iter().zip(&plan.caps).enumerate() {
        let mut g = Vec::new();
        if cap >= lower {
            let start = if plan.trace {
                lower
            } else {
                cap.saturating_sub(10).max(lower)
            };
            let at = |i: usize| -> Result<f64> {
                if i == cap {
                    return Ok(full);
                }
                let mut c = plan.caps.clone();
                c[k] = i;
                rhs(&c)
            };
            let mut prev = if start == lower { 0.0 } else { at(start - 1)? };
            for i in start..=cap {
                let p = at(i)?;
                g.push(p - prev);
                if plan.trace {
                    trace.push(TraceRow {
                        level: k,
                        index: i,
                        term: p - prev,
                        partial: p,
                        rel_err: (p - plan.lhs).abs() / scale,
                    });
                }
                prev = p;
            }
        }
        levels.push(LevelReport {
            name: plan.names[k].clone(),
            lower,
            cap,
            terms_used: (cap + 1).saturating_sub(lower),
            tail: extrapolate_tail(&g),
        });
    }
    let tail_estimate: f64 = levels.iter().map(|l| l.tail).sum();
    let abs_err = (full - plan.lhs).abs();
    let rel_err = abs_err / scale;
    let status = if rel_err < plan.tol {
        Status::Pass
    } else if tail_estimate > 0.5 * plan.tol * scale {
        Status::TruncationInsufficient
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        label: plan.label,
        dimension: plan.dimension,
        nu: plan.nu,
        m: plan.m,
        chi: plan.chi,
        z: plan.z,
        lhs: plan.lhs,
        rhs: full,
        abs_err,
        rel_err,
        lhs_quadrature: plan.lhs_quadrature,
        tail_estimate,
        levels,
        tol: plan.tol,
        status,
        pass: status == Status::Pass,
        trace,
    })
}

/// ν ∈ {2|m|, 2|m| + 2, …} is excluded.
pub fn check_exclusion(nu: f64, m: i64) -> Result<()> {
    let lo = 2 * m.abs();
    if !nu.is_finite() {
        return Err(Error::invalid("nu must be finite"));
    }
    if is_integer(nu) && nu >= lo as f64 && (nu as i64 - lo) % 2 == 0 {
        return Err(Error::ExclusionSet {
            nu,
            set: format!("{{{}, {}, {}, ...}}", lo, lo + 2, lo + 4),
        });
    }
    Ok(())
}

/// Radial data (z, (r_>² − r_<²)/(rr′)) after the radius checks.
pub(crate) fn radial(r: f64, rp: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && rp > 0.0 && r.is_finite() && rp.is_finite()) {
        return Err(Error::invalid("radii must be positive and finite"));
    }
    if (r - rp).abs() / r.max(rp) < RADIUS_GUARD {
        return Err(Error::CoincidentRadius { r, rp });
    }
    Ok(((r * r + rp * rp) / (2.0 * r * rp), (r * r - rp * rp).abs() / (r * rp)))
}

pub(crate) fn check_chi(chi: f64) -> Result<()> {
    if !(chi > 1.0 + CHI_GUARD) {
        return Err(Error::SingularConfiguration { chi });
    }
    Ok(())
}

/// Rejects polar angles on the boundary of (lo, hi).
pub(crate) fn check_interior(node: usize, angle: f64, hi: f64, label: &'static str) -> Result<()> {
    if !(angle > 1e-12 && angle < hi - 1e-12) {
        return Err(Error::AngleRange {
            node,
            angle,
            range: label,
        });
    }
    Ok(())
}

/// Q̂_{|m|−1/2}^{−(ν+1)/2}(χ).
pub fn lhs_value(nu: f64, m: i64, chi: f64) -> Result<f64> {
    check_chi(chi)?;
    Ok(legendre_q_hat(m.abs() as f64 - 0.5, -0.5 * (nu + 1.0), chi)?.value)
}

/// The left-hand side recovered from the m-th azimuthal Fourier coefficient
/// of (χ − cos ψ)^{ν/2} by the n-point trapezoid rule.
pub fn lhs_by_quadrature(nu: f64, m: i64, chi: f64, n: usize) -> Result<f64> {
    check_chi(chi)?;
    let mf = m.abs() as f64;
    let coeff = periodic_trapezoid(n, |t| (chi - t.cos()).powf(0.5 * nu) * (mf * t).cos()) / (2.0 * PI);
    let norm = 2f64.sqrt() * (chi * chi - 1.0).powf(0.25 * (nu + 1.0)) / (PI.sqrt() * gamma(-0.5 * nu)?);
    Ok(coeff / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exclusion_sets() {
        assert!(check_exclusion(2.0, 1).is_err());
        assert!(check_exclusion(6.0, -2).is_err());
        assert!(check_exclusion(0.0, 1).is_ok());
        assert!(check_exclusion(3.0, 0).is_ok());
        assert!(check_exclusion(-2.0, 0).is_ok());
        assert!(matches!(check_exclusion(0.0, 0), Err(Error::ExclusionSet { .. })));
    }

    #[test]
    fn theorem_labels_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.label().parse::<TheoremId>().unwrap(), t);
        }
        assert!("T9.9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn caps_expand() {
        assert_eq!(resolve_caps(&[12], 3).unwrap(), vec![12, 12, 12]);
        assert_eq!(resolve_caps(&[5, 7], 3).unwrap(), vec![5, 7, 7]);
        assert_eq!(resolve_caps(&[], 2).unwrap(), vec![DEFAULT_CAP; 2]);
        assert!(resolve_caps(&[1, 2, 3], 2).is_err());
    }

    #[test]
    fn tail_extrapolation() {
        let g: Vec<f64> = (0..10).map(|k| 0.5f64.powi(k)).collect();
        let t = extrapolate_tail(&g);
        // exact tail Σ_{k≥10} 2^{−k} = 2^{−9}
        assert!((t - 0.5f64.powi(9)).abs() < 1e-12);
        assert_eq!(extrapolate_tail(&[0.0; 10]), 0.0);
        assert!(extrapolate_tail(&[1.0; 10]).is_infinite());
    }

    #[test]
    fn lhs_quadrature_agrees() {
        for &(nu, m, chi) in &[(-1.0, 0, 1.25), (-2.5, 2, 1.7), (1.0, 1, 3.0), (-2.0, 1, 1.3)] {
            let a = lhs_value(nu, m, chi).unwrap();
            let b = lhs_by_quadrature(nu, m, chi, LHS_QUADRATURE_POINTS).unwrap();
            assert!(((a - b) / a).abs() < 1e-10, "{nu} {m} {chi}: {a} {b}");
        }
    }
}
