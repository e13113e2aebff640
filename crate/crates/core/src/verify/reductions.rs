//! Elementary forms of the three- and four-dimensional theorems at the
//! Laplace exponents ν = −1 (R³) and ν = −2 (R⁴).

use std::f64::consts::PI;

use crate::error::Result;
use crate::orthopoly::{GegenbauerSeq, JacobiSeq};
use crate::polyspherical::Tree;
use crate::quadrature::periodic_trapezoid;
use crate::specfun::{ferrers_p, legendre_q_hat, neumann};
use crate::summation::Compensated;

use super::theorems::{check_len, check_polar, lf};
use super::{
    assemble, check_chi, lhs_by_quadrature, radial, resolve_caps, Plan, TheoremConfig, VerificationReport,
    LHS_QUADRATURE_POINTS,
};

/// Toroidal Q_{m−1/2}(χ) = (1/(2√2)) ∫₀^{2π} cos(mt)/√(χ − cos t) dt by the
/// n-point trapezoid rule.
pub fn heine_toroidal_q(m: i64, chi: f64, n: usize) -> Result<f64> {
    check_chi(chi)?;
    let mf = m.abs() as f64;
    Ok(periodic_trapezoid(n, |t| (mf * t).cos() / (chi - t.cos()).sqrt()) / (2.0 * 2f64.sqrt()))
}

/// (χ² − 1)^{−1/2} (χ + √(χ² − 1))^{−|m|}.
fn elementary_lhs(chi: f64, m: i64) -> f64 {
    let s = (chi * chi - 1.0).sqrt();
    (chi + s).powi(-(m.abs() as i32)) / s
}

fn plan(
    cfg: &TheoremConfig,
    label: &str,
    nu: f64,
    dimension: usize,
    chi: f64,
    z: f64,
    lhs: f64,
    lhs_quadrature: f64,
    names: &[&str],
    lower: Vec<usize>,
    caps: Vec<usize>,
) -> Plan {
    Plan {
        label: label.into(),
        dimension,
        nu,
        m: cfg.m,
        chi,
        z,
        lhs,
        lhs_quadrature: Some(lhs_quadrature),
        names: names.iter().map(|s| s.to_string()).collect(),
        lower,
        caps,
        tol: cfg.tol,
        trace: cfg.trace,
    }
}

/// ν = −1 on type-ba coordinates:
/// Q_{m−1/2}(χ) = π √(sin θ sin θ′) Σ_{l≥|m|} (l−m)!/(l+m)! (r_</r_>)^{l+1/2} 𝖯_l^m 𝖯_l^m′.
/// `cfg.nu` is ignored.
pub fn reduction_ba(cfg: &TheoremConfig) -> Result<VerificationReport> {
    check_len(cfg, 2)?;
    check_polar(&Tree::standard(3).expect("d = 3"), (&cfg.angles, &cfg.angles_p))?;
    let (z, _) = radial(cfg.r, cfg.rp)?;
    let (r, rp) = (cfg.r, cfg.rp);
    let (th, thp) = (cfg.angles[0], cfg.angles_p[0]);
    let ss = th.sin() * thp.sin();
    let chi = (r * r + rp * rp - 2.0 * r * rp * th.cos() * thp.cos()) / (2.0 * r * rp * ss);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let ratio = r.min(rp) / r.max(rp);
    let caps = resolve_caps(&cfg.caps, 1)?;
    let mut terms = Vec::new();
    for l in am..=caps[0] {
        let w = (lf(l - am) - lf(l + am) + (l as f64 + 0.5) * ratio.ln()).exp();
        terms.push(w * ferrers_p(l as u32, am as i32, th.cos())? * ferrers_p(l as u32, am as i32, thp.cos())?);
    }
    let pre = PI * ss.sqrt();
    let lhs = legendre_q_hat(am as f64 - 0.5, 0.0, chi)?.value;
    let quad = heine_toroidal_q(cfg.m, chi, LHS_QUADRATURE_POINTS)?;
    let p = plan(cfg, "C4.3/nu=-1", -1.0, 3, chi, z, lhs, quad, &["l"], vec![am], caps);
    assemble(p, |c| {
        let mut acc = Compensated::new();
        for v in terms.iter().take((c[0] + 1).saturating_sub(am)) {
            acc.add(*v);
        }
        Ok(pre * acc.value())
    })
}

/// ν = −2 on type-b²a coordinates; the left side is
/// (χ² − 1)^{−1/2} (χ + √(χ² − 1))^{−|m|}. `cfg.nu` is ignored.
pub fn reduction_b2a(cfg: &TheoremConfig) -> Result<VerificationReport> {
    check_len(cfg, 3)?;
    check_polar(&Tree::standard(4).expect("d = 4"), (&cfg.angles, &cfg.angles_p))?;
    let (z, _) = radial(cfg.r, cfg.rp)?;
    let (r, rp) = (cfg.r, cfg.rp);
    let (a, b) = (&cfg.angles, &cfg.angles_p);
    let (s1, s2) = (a[0].sin() * b[0].sin(), a[1].sin() * b[1].sin());
    let chi = (r * r + rp * rp - 2.0 * r * rp * a[0].cos() * b[0].cos() - 2.0 * r * rp * s1 * a[1].cos() * b[1].cos())
        / (2.0 * r * rp * s1 * s2);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let ratio = (r.min(rp) / r.max(rp)).ln();
    let caps = resolve_caps(&cfg.caps, 2)?;
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for l2 in am..=caps[0] {
        let ln_a = 2.0 * l2 as f64 * 2f64.ln() + ((2 * l2 + 1) as f64).ln() + 2.0 * lf(l2) + lf(l2 - am) - lf(l2 + am)
            + l2 as f64 * s1.ln();
        let pp = ferrers_p(l2 as u32, am as i32, a[1].cos())? * ferrers_p(l2 as u32, am as i32, b[1].cos())?;
        let mut ca = GegenbauerSeq::new(l2 as f64 + 1.0, a[0].cos());
        let mut cb = GegenbauerSeq::new(l2 as f64 + 1.0, b[0].cos());
        let row = (l2..=caps[1])
            .map(|l1| {
                let ln_b = lf(l1 - l2) - lf(l1 + l2 + 1) + (l1 + 1) as f64 * ratio;
                (ln_a + ln_b).exp() * pp * ca.next_value() * cb.next_value()
            })
            .collect();
        rows.push((l2, row));
    }
    let pre = 2.0 * s1 * s2;
    let lhs = elementary_lhs(chi, cfg.m);
    let quad =
        (2.0 / PI).sqrt() * (chi * chi - 1.0).powf(-0.25) * lhs_by_quadrature(-2.0, cfg.m, chi, LHS_QUADRATURE_POINTS)?;
    let p = plan(
        cfg,
        "C4.4/nu=-2",
        -2.0,
        4,
        chi,
        z,
        lhs,
        quad,
        &["l2", "l1"],
        vec![am, am],
        caps,
    );
    assemble(p, |c| {
        let mut acc = Compensated::new();
        for (start, row) in rows.iter().take_while(|(l2, _)| *l2 <= c[0]) {
            for (j, v) in row.iter().enumerate() {
                if start + j > c[1] {
                    break;
                }
                acc.add(*v);
            }
        }
        Ok(pre * acc.value())
    })
}

/// ν = −2 on type-ca² coordinates (ϑ, φ₁, φ₂); same elementary left side.
/// `cfg.nu` is ignored.
pub fn reduction_ca2(cfg: &TheoremConfig) -> Result<VerificationReport> {
    check_len(cfg, 3)?;
    check_polar(&Tree::hopf(2).expect("q = 2"), (&cfg.angles, &cfg.angles_p))?;
    let (z, _) = radial(cfg.r, cfg.rp)?;
    let (r, rp) = (cfg.r, cfg.rp);
    let (a, b) = (&cfg.angles, &cfg.angles_p);
    let (cc, ss) = (a[0].cos() * b[0].cos(), a[0].sin() * b[0].sin());
    let dphi2 = a[2] - b[2];
    let chi = (r * r + rp * rp - 2.0 * r * rp * ss * dphi2.cos()) / (2.0 * r * rp * cc);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let ratio = (r.min(rp) / r.max(rp)).ln();
    let caps = resolve_caps(&cfg.caps, 2)?;
    let (x, xp) = ((2.0 * a[0]).cos(), (2.0 * b[0]).cos());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for m2 in 0..=caps[0] {
        let w = neumann(m2 as i64) * (m2 as f64 * dphi2).cos();
        let mut pa = JacobiSeq::new(m2 as f64, am as f64, x);
        let mut pb = JacobiSeq::new(m2 as f64, am as f64, xp);
        let row = (0..=caps[1])
            .map(|n| {
                let k = lf(am + m2 + n) + lf(n) - lf(am + n) - lf(m2 + n)
                    + m2 as f64 * ss.ln()
                    + (am + m2 + 2 * n + 1) as f64 * ratio;
                w * k.exp() * pa.next_value() * pb.next_value()
            })
            .collect();
        rows.push(row);
    }
    let pre = 2.0 * cc.powi(am as i32 + 1);
    let lhs = elementary_lhs(chi, cfg.m);
    let quad =
        (2.0 / PI).sqrt() * (chi * chi - 1.0).powf(-0.25) * lhs_by_quadrature(-2.0, cfg.m, chi, LHS_QUADRATURE_POINTS)?;
    let p = plan(
        cfg,
        "C4.5/nu=-2",
        -2.0,
        4,
        chi,
        z,
        lhs,
        quad,
        &["m2", "n"],
        vec![0, 0],
        caps,
    );
    assemble(p, |c| {
        let mut acc = Compensated::new();
        for row in rows.iter().take(c[0] + 1) {
            for v in row.iter().take(c[1] + 1) {
                acc.add(*v);
            }
        }
        Ok(pre * acc.value())
    })
}
