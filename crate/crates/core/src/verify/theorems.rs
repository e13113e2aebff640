//! Right-hand sides of the five addition theorems, plus the fixed-azimuth
//! identity on an arbitrary tree that serves as their common oracle.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::orthopoly::{GegenbauerSeq, JacobiSeq};
use crate::polyspherical::{
    check_angles, cos_separation, degree_shell_sums, hopf_heap_angles_to_preorder, FixedAzimuth, NodeType, Tree,
};
use crate::specfun::{ferrers_p, legendre_q_hat_scaled, ln_factorial, ln_gamma, neumann};
use crate::summation::Compensated;

use super::{
    assemble, check_chi, check_exclusion, check_interior, lhs_by_quadrature, lhs_value, radial, resolve_caps, Plan,
    TheoremConfig, TheoremId, VerificationReport, LHS_QUADRATURE_POINTS,
};

pub(super) fn lf(n: usize) -> f64 {
    ln_factorial(n as u32)
}

/// Q̂_{l+shift}^{mu}(z) for l = start..=lmax, zero below `start`.
fn q_table(shift: f64, mu: f64, z: f64, start: usize, lmax: usize) -> Result<Vec<f64>> {
    let mut q = vec![0.0; lmax + 1];
    for (l, v) in q.iter_mut().enumerate().skip(start) {
        *v = legendre_q_hat_scaled(l as f64 + shift, mu, z)?.value();
    }
    Ok(q)
}

pub(super) fn check_len(cfg: &TheoremConfig, n: usize) -> Result<()> {
    if cfg.angles.len() != n || cfg.angles_p.len() != n {
        return Err(Error::invalid(format!(
            "{} expects {n} angles per point, got {} and {}",
            cfg.theorem,
            cfg.angles.len(),
            cfg.angles_p.len()
        )));
    }
    Ok(())
}

pub(super) fn check_polar(t: &Tree, preorder: (&[f64], &[f64])) -> Result<()> {
    check_angles(t, preorder.0)?;
    check_angles(t, preorder.1)?;
    for (i, n) in t.nodes().iter().enumerate() {
        let (hi, label) = match n.node_type {
            NodeType::A => continue,
            NodeType::C => (FRAC_PI_2, "(0, π/2)"),
            _ => (PI, "(0, π)"),
        };
        check_interior(i, preorder.0[i], hi, label)?;
        check_interior(i, preorder.1[i], hi, label)?;
    }
    Ok(())
}

fn plan(
    cfg: &TheoremConfig,
    label: String,
    dimension: usize,
    chi: f64,
    z: f64,
    names: Vec<String>,
    lower: Vec<usize>,
    caps: Vec<usize>,
) -> Result<Plan> {
    Ok(Plan {
        label,
        dimension,
        nu: cfg.nu,
        m: cfg.m,
        chi,
        z,
        lhs: lhs_value(cfg.nu, cfg.m, chi)?,
        lhs_quadrature: Some(lhs_by_quadrature(cfg.nu, cfg.m, chi, LHS_QUADRATURE_POINTS)?),
        names,
        lower,
        caps,
        tol: cfg.tol,
        trace: cfg.trace,
    })
}

/// Dispatches on `cfg.theorem`.
pub fn verify(cfg: &TheoremConfig) -> Result<VerificationReport> {
    match cfg.theorem {
        TheoremId::Standard => verify_standard(cfg),
        TheoremId::Hopf => verify_hopf(cfg),
        TheoremId::Ba => verify_ba(cfg),
        TheoremId::B2a => verify_b2a(cfg),
        TheoremId::Ca2 => verify_ca2(cfg),
    }
}

/// Type-ba coordinates (θ, φ): a single sum of Ferrers pairs.
///
/// Q̂_{m−1/2}^{−(ν+1)/2}(χ) = √π 2^{−(ν+3)/2} (sin θ sin θ′)^{−ν/2}
/// (χ²−1)^{−(ν+1)/4} ((r_>²−r_<²)/(rr′))^{(ν+2)/2}
/// Σ_{l≥m} (2l+1) (l−m)!/(l+m)! Q̂_l^{−(ν+2)/2}(z) 𝖯_l^m(cos θ) 𝖯_l^m(cos θ′).
pub fn verify_ba(cfg: &TheoremConfig) -> Result<VerificationReport> {
    check_len(cfg, 2)?;
    check_exclusion(cfg.nu, cfg.m)?;
    let t = Tree::standard(3).expect("d = 3");
    check_polar(&t, (&cfg.angles, &cfg.angles_p))?;
    let (z, w0) = radial(cfg.r, cfg.rp)?;
    let (r, rp, nu) = (cfg.r, cfg.rp, cfg.nu);
    let (th, thp) = (cfg.angles[0], cfg.angles_p[0]);
    let ssp = th.sin() * thp.sin();
    let chi = (r * r + rp * rp - 2.0 * r * rp * th.cos() * thp.cos()) / (2.0 * r * rp * ssp);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let caps = resolve_caps(&cfg.caps, 1)?;
    let q = q_table(0.0, -0.5 * (nu + 2.0), z, am, caps[0].max(am))?;
    let mut terms = Vec::new();
    for l in am..=caps[0] {
        let w = (2 * l + 1) as f64 * (lf(l - am) - lf(l + am)).exp();
        terms.push(w * ferrers_p(l as u32, am as i32, th.cos())? * ferrers_p(l as u32, am as i32, thp.cos())? * q[l]);
    }
    let pre = (0.5 * PI.ln()
        - 0.5 * (nu + 3.0) * 2f64.ln()
        - 0.5 * nu * ssp.ln()
        - 0.25 * (nu + 1.0) * (chi * chi - 1.0).ln()
        + 0.5 * (nu + 2.0) * w0.ln())
    .exp();
    let p = plan(cfg, "C4.3".into(), 3, chi, z, vec!["l".into()], vec![am], caps)?;
    assemble(p, |c| {
        let mut acc = Compensated::new();
        for v in terms.iter().take((c[0] + 1).saturating_sub(am)) {
            acc.add(*v);
        }
        Ok(pre * acc.value())
    })
}

/// Sums a triangular table `rows[i][j]` over i ≤ cap0 − lo0 and over the
/// column index capped at cap1, where row i starts at column `start(i)`.
fn sum_table(rows: &[(usize, Vec<f64>)], lo0: usize, cap0: usize, cap1: usize) -> f64 {
    let mut acc = Compensated::new();
    for (i, (start, row)) in rows.iter().enumerate() {
        if lo0 + i > cap0 {
            break;
        }
        for (j, v) in row.iter().enumerate() {
            if start + j > cap1 {
                break;
            }
            acc.add(*v);
        }
    }
    acc.value()
}

/// Type-b²a coordinates (θ₁, θ₂, φ): Ferrers pairs in θ₂ and Gegenbauer
/// pairs C_{l₁−l₂}^{l₂+1} in θ₁.
pub fn verify_b2a(cfg: &TheoremConfig) -> Result<VerificationReport> {
    check_len(cfg, 3)?;
    check_exclusion(cfg.nu, cfg.m)?;
    let t = Tree::standard(4).expect("d = 4");
    check_polar(&t, (&cfg.angles, &cfg.angles_p))?;
    let (z, w0) = radial(cfg.r, cfg.rp)?;
    let (r, rp, nu) = (cfg.r, cfg.rp, cfg.nu);
    let (a, b) = (&cfg.angles, &cfg.angles_p);
    let (s1, s2) = (a[0].sin() * b[0].sin(), a[1].sin() * b[1].sin());
    let chi = (r * r + rp * rp - 2.0 * r * rp * a[0].cos() * b[0].cos() - 2.0 * r * rp * s1 * a[1].cos() * b[1].cos())
        / (2.0 * r * rp * s1 * s2);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let caps = resolve_caps(&cfg.caps, 2)?;
    let q = q_table(0.5, -0.5 * (nu + 3.0), z, am, caps[1].max(am))?;
    let mut rows = Vec::new();
    for l2 in am..=caps[0] {
        let ln_a = 2.0 * l2 as f64 * 2f64.ln() + ((2 * l2 + 1) as f64).ln() + 2.0 * lf(l2) + lf(l2 - am) - lf(l2 + am)
            + l2 as f64 * s1.ln();
        let pp = ferrers_p(l2 as u32, am as i32, a[1].cos())? * ferrers_p(l2 as u32, am as i32, b[1].cos())?;
        let mut ca = GegenbauerSeq::new(l2 as f64 + 1.0, a[0].cos());
        let mut cb = GegenbauerSeq::new(l2 as f64 + 1.0, b[0].cos());
        let mut row = Vec::new();
        for l1 in l2..=caps[1] {
            let ln_b = ((l1 + 1) as f64).ln() + lf(l1 - l2) - lf(l1 + l2 + 1);
            row.push((ln_a + ln_b).exp() * pp * ca.next_value() * cb.next_value() * q[l1]);
        }
        rows.push((l2, row));
    }
    let pre = (-0.5 * (nu + 1.0) * 2f64.ln() + 0.5 * (nu + 3.0) * w0.ln()
        - 0.25 * (nu + 1.0) * (chi * chi - 1.0).ln()
        - 0.5 * nu * (s1 * s2).ln())
    .exp();
    let p = plan(
        cfg,
        "C4.4".into(),
        4,
        chi,
        z,
        vec!["l2".into(), "l1".into()],
        vec![am, am],
        caps,
    )?;
    assemble(p, |c| Ok(pre * sum_table(&rows, am, c[0], c[1])))
}

/// Type-ca² coordinates (ϑ, φ₁, φ₂): cosine series in φ₂ − φ₂′ with
/// non-symmetric Jacobi pairs P_n^{(m₂,|m₁|)}(cos 2ϑ).
pub fn verify_ca2(cfg: &TheoremConfig) -> Result<VerificationReport> {
    check_len(cfg, 3)?;
    check_exclusion(cfg.nu, cfg.m)?;
    let t = Tree::hopf(2).expect("q = 2");
    check_polar(&t, (&cfg.angles, &cfg.angles_p))?;
    let (z, w0) = radial(cfg.r, cfg.rp)?;
    let (r, rp, nu) = (cfg.r, cfg.rp, cfg.nu);
    let (a, b) = (&cfg.angles, &cfg.angles_p);
    let (cc, ss) = (a[0].cos() * b[0].cos(), a[0].sin() * b[0].sin());
    let dphi2 = a[2] - b[2];
    let chi = (r * r + rp * rp - 2.0 * r * rp * ss * dphi2.cos()) / (2.0 * r * rp * cc);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let caps = resolve_caps(&cfg.caps, 2)?;
    let q = q_table(0.5, -0.5 * (nu + 3.0), z, am, am + caps[0] + 2 * caps[1])?;
    let (x, xp) = ((2.0 * a[0]).cos(), (2.0 * b[0]).cos());
    let mut rows = Vec::new();
    for m2 in 0..=caps[0] {
        let w = neumann(m2 as i64) * (m2 as f64 * dphi2).cos() * ss.powi(m2 as i32);
        let mut pa = JacobiSeq::new(m2 as f64, am as f64, x);
        let mut pb = JacobiSeq::new(m2 as f64, am as f64, xp);
        let mut row = Vec::new();
        for n in 0..=caps[1] {
            let k = ((2 * n + am + m2 + 1) as f64).ln() + lf(am + m2 + n) + lf(n) - lf(am + n) - lf(m2 + n);
            row.push(w * k.exp() * q[2 * n + am + m2] * pa.next_value() * pb.next_value());
        }
        rows.push((0, row));
    }
    let pre = (-0.5 * (nu + 1.0) * 2f64.ln() - 0.25 * (nu + 1.0) * (chi * chi - 1.0).ln()
        + 0.5 * (nu + 3.0) * w0.ln()
        + (am as f64 - 0.5 * nu) * cc.ln())
    .exp();
    let p = plan(
        cfg,
        "C4.5".into(),
        4,
        chi,
        z,
        vec!["m2".into(), "n".into()],
        vec![0, 0],
        caps,
    )?;
    assemble(p, |c| Ok(pre * sum_table(&rows, 0, c[0], c[1])))
}

/// ln of Θ_j^d(l, l′; θ) Θ_j^d(l, l′; θ′) without the angular factors.
fn ln_theta_pair(d: usize, j: usize, l: usize, lp: usize) -> Result<f64> {
    let e = d - j - 1;
    let (lg, _) = ln_gamma(lp as f64 + 0.5 * (d - j + 1) as f64)?;
    Ok(2.0 * lg - 2.0 * ((2 * lp + e) as f64).ln()
        + (2 * lp + e) as f64 * 2f64.ln()
        + ((2 * l + e) as f64).ln()
        + lf(l - lp)
        - PI.ln()
        - lf(l + lp + e - 1))
}

/// Standard polyspherical coordinates (θ₁, …, θ_{d−2}, φ) on R^d.
///
/// The nested sum runs l_{d−2} ≥ |m| outermost down to l₁ innermost; the
/// innermost Ferrers level carries (2l+1)(l−m)!/(l+m)!, twice the product
/// of normalized factors, and the real prefactor is
/// π^{(d−2)/2}/(2√2) (2rr′∏ sin θ_i sin θ_i′)^{−ν/2} (χ²−1)^{−(ν+1)/4}
/// (r_>²−r_<²)^{(ν+d−1)/2}/(rr′)^{(d−1)/2}.
pub fn verify_standard(cfg: &TheoremConfig) -> Result<VerificationReport> {
    let d = cfg.order as usize;
    if d < 3 {
        return Err(Error::invalid("the standard-tree theorem needs d >= 3"));
    }
    check_len(cfg, d - 1)?;
    check_exclusion(cfg.nu, cfg.m)?;
    let t = Tree::standard(d).ok_or_else(|| Error::invalid("dimension too small"))?;
    check_polar(&t, (&cfg.angles, &cfg.angles_p))?;
    let (z, _) = radial(cfg.r, cfg.rp)?;
    let (r, rp, nu) = (cfg.r, cfg.rp, cfg.nu);
    let (a, b) = (&cfg.angles, &cfg.angles_p);
    let mut sum = 0.0;
    let mut sines = 1.0;
    for i in 0..d - 2 {
        sum += a[i].cos() * b[i].cos() * sines;
        sines *= a[i].sin() * b[i].sin();
    }
    let chi = (r * r + rp * rp - 2.0 * r * rp * sum) / (2.0 * r * rp * sines);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let levels = d - 2;
    let caps = resolve_caps(&cfg.caps, levels)?;

    // level 0: l_{d−2}, Ferrers pair in θ_{d−2}
    let (x, xp) = (a[d - 3].cos(), b[d - 3].cos());
    let mut v0 = Vec::new();
    for l in am..=caps[0] {
        let w = (2 * l + 1) as f64 * (lf(l - am) - lf(l + am)).exp();
        v0.push(w * ferrers_p(l as u32, am as i32, x)? * ferrers_p(l as u32, am as i32, xp)?);
    }
    // level k ≥ 1: l_j with j = d − 2 − k; table[k][l′ − am] = (l′, ΘΘ′ for l = l′..)
    let mut tables: Vec<Vec<Vec<f64>>> = vec![Vec::new()];
    for k in 1..levels {
        let j = d - 2 - k;
        let (th, thp) = (a[j - 1], b[j - 1]);
        let lam_off = 0.5 * (d - j - 1) as f64;
        let ss = (th.sin() * thp.sin()).ln();
        let mut tab = Vec::new();
        for lp in am..=caps[k - 1] {
            let mut ca = GegenbauerSeq::new(lp as f64 + lam_off, th.cos());
            let mut cb = GegenbauerSeq::new(lp as f64 + lam_off, thp.cos());
            let mut row = Vec::new();
            for l in lp..=caps[k] {
                let c = ln_theta_pair(d, j, l, lp)? + lp as f64 * ss;
                row.push(c.exp() * ca.next_value() * cb.next_value());
            }
            tab.push(row);
        }
        tables.push(tab);
    }
    let q = q_table(
        0.5 * (d as f64 - 3.0),
        0.5 * (1.0 - nu - d as f64),
        z,
        am,
        caps[levels - 1].max(am),
    )?;
    let big = r.max(rp);
    let small = r.min(rp);
    let pre = (0.5 * (d as f64 - 2.0) * PI.ln()
        - 1.5 * 2f64.ln()
        - 0.5 * nu * (2.0 * r * rp * sines).ln()
        - 0.25 * (nu + 1.0) * (chi * chi - 1.0).ln()
        + 0.5 * (nu + d as f64 - 1.0) * (big * big - small * small).ln()
        - 0.5 * (d as f64 - 1.0) * (r * rp).ln())
    .exp();
    let names = (0..levels).map(|k| format!("l{}", d - 2 - k)).collect();
    let p = plan(cfg, "T4.1".into(), d, chi, z, names, vec![am; levels], caps)?;
    assemble(p, |c| {
        let mut v: Vec<f64> = v0.iter().take((c[0] + 1).saturating_sub(am)).copied().collect();
        for (k, tab) in tables.iter().enumerate().skip(1) {
            let len = (c[k] + 1).saturating_sub(am);
            let mut next = vec![Compensated::new(); len];
            for (ip, (&w, row)) in v.iter().zip(tab).enumerate() {
                for (o, val) in row.iter().enumerate() {
                    let i = ip + o;
                    if i >= len {
                        break;
                    }
                    next[i].add(w * val);
                }
            }
            v = next.iter().map(Compensated::value).collect();
        }
        let mut acc = Compensated::new();
        for (i, w) in v.iter().enumerate() {
            acc.add(w * q[am + i]);
        }
        Ok(pre * acc.value())
    })
}

/// Generalized Hopf coordinates on R^{2^q}; angles in heap order
/// (ϑ₁, …, ϑ_{2^{q−1}−1}, φ₁, …, φ_{2^{q−1}}) and m is m₁.
///
/// Levels: all non-chosen azimuthal numbers m₂, … share level 0; the
/// surrogate numbers n at depth k of the tree form level q − 1 − k.
pub fn verify_hopf(cfg: &TheoremConfig) -> Result<VerificationReport> {
    let qe = cfg.order;
    if !(2..=6).contains(&qe) {
        return Err(Error::invalid("the Hopf-tree theorem is implemented for 2 <= q <= 6"));
    }
    let count = (1usize << qe) - 1;
    check_len(cfg, count)?;
    check_exclusion(cfg.nu, cfg.m)?;
    let t = Tree::hopf(qe).expect("q in range");
    let pa = hopf_heap_angles_to_preorder(qe, &cfg.angles);
    let pb = hopf_heap_angles_to_preorder(qe, &cfg.angles_p);
    check_polar(&t, (&pa, &pb))?;
    let (z, w0) = radial(cfg.r, cfg.rp)?;
    let (r, rp, nu) = (cfg.r, cfg.rp, cfg.nu);
    let (a, b) = (&cfg.angles, &cfg.angles_p);
    let half = 1usize << (qe - 1);
    let mut cc = 1.0;
    for j in 1..qe {
        let h = 1usize << (j - 1);
        cc *= a[h - 1].cos() * b[h - 1].cos();
    }
    let cos_gamma = cos_separation(&t, &pa, &pb)?;
    let dphi1 = a[half - 1] - b[half - 1];
    let chi = (r * r + rp * rp - 2.0 * r * rp * cos_gamma + 2.0 * r * rp * cc * dphi1.cos()) / (2.0 * r * rp * cc);
    check_chi(chi)?;
    let am = cfg.m.unsigned_abs() as usize;
    let levels = qe as usize;
    let caps = resolve_caps(&cfg.caps, levels)?;

    fn bound(h: usize, half: usize, am: usize, caps: &[usize], qe: u32) -> usize {
        if h >= half {
            return if h == half { am } else { caps[0] };
        }
        let depth = h.ilog2();
        let level = 1 + (qe - 2 - depth) as usize;
        bound(2 * h, half, am, caps, qe) + bound(2 * h + 1, half, am, caps, qe) + 2 * caps[level]
    }
    let lmax = bound(1, half, am, &caps, qe).max(am);
    let df = (1usize << qe) as f64;
    let q = q_table(0.5 * (df - 3.0), 0.5 * (1.0 - nu - df), z, am, lmax)?;
    let pre = (-0.5 * (nu + 1.0) * 2f64.ln() - 0.5 * nu * cc.ln() - 0.25 * (nu + 1.0) * (chi * chi - 1.0).ln()
        + 0.5 * (nu + df - 1.0) * w0.ln())
    .exp();

    struct Dp<'a> {
        a: &'a [f64],
        b: &'a [f64],
        half: usize,
        am: usize,
        qe: u32,
    }
    impl Dp<'_> {
        fn node(&self, h: usize, caps: &[usize]) -> Vec<f64> {
            if h >= self.half {
                if h == self.half {
                    let mut v = vec![0.0; self.am + 1];
                    v[self.am] = 1.0;
                    return v;
                }
                let dphi = self.a[h - 1] - self.b[h - 1];
                return (0..=caps[0])
                    .map(|m| neumann(m as i64) * (m as f64 * dphi).cos())
                    .collect();
            }
            let depth = h.ilog2();
            let off = (1usize << (self.qe - 2 - depth)) - 1;
            let ncap = caps[1 + (self.qe - 2 - depth) as usize];
            let left = self.node(2 * h, caps);
            let right = self.node(2 * h + 1, caps);
            let (th, thp) = (self.a[h - 1], self.b[h - 1]);
            let (c, s) = ((th.cos() * thp.cos()).ln(), (th.sin() * thp.sin()).ln());
            let (x, xp) = ((2.0 * th).cos(), (2.0 * thp).cos());
            let mut out = vec![0.0; left.len() + right.len() - 1 + 2 * ncap];
            for (la, &wa) in left.iter().enumerate() {
                if wa == 0.0 {
                    continue;
                }
                for (lb, &wb) in right.iter().enumerate() {
                    if wb == 0.0 {
                        continue;
                    }
                    let (al, be) = (la + off, lb + off);
                    let amp = la as f64 * c + lb as f64 * s;
                    let mut p = JacobiSeq::new(be as f64, al as f64, x);
                    let mut pp = JacobiSeq::new(be as f64, al as f64, xp);
                    for n in 0..=ncap {
                        let norm =
                            ((2 * n + al + be + 1) as f64).ln() + lf(n + al + be) + lf(n) - lf(n + al) - lf(n + be);
                        out[la + lb + 2 * n] += wa * wb * (norm + amp).exp() * p.next_value() * pp.next_value();
                    }
                }
            }
            out
        }
    }
    let dp = Dp { a, b, half, am, qe };
    let mut names = vec!["m".to_string()];
    for depth in (0..qe - 1).rev() {
        names.push(format!("n@depth{depth}"));
    }
    let p = plan(cfg, "T4.2".into(), 1 << qe, chi, z, names, vec![0; levels], caps)?;
    assemble(p, |c| {
        let root = dp.node(1, c);
        let mut acc = Compensated::new();
        for (l, w) in root.iter().enumerate().skip(am) {
            acc.add(w * q[l]);
        }
        Ok(pre * acc.value())
    })
}

/// Fixed-azimuth identity on any tree with d ≥ 3, angles in preorder:
///
/// Q̂_{|m|−1/2}^{−(ν+1)/2}(χ) = √2 π^{d/2} (2RR′)^{−ν/2} (χ²−1)^{−(ν+1)/4}
/// (r_>²−r_<²)^{(ν+d−1)/2}/(rr′)^{(d−1)/2} Σ_l Q̂_{l+(d−3)/2}^{(1−ν−d)/2}(z) S_l,
///
/// where R is the cylindrical radius in the plane of the chosen type-a node
/// and S_l the fixed-azimuth shell sums of the normalized harmonics.
#[allow(clippy::too_many_arguments)]
pub fn verify_tree(
    t: &Tree,
    node: usize,
    nu: f64,
    m: i64,
    r: f64,
    rp: f64,
    a: &[f64],
    b: &[f64],
    lmax: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let d = t.dimension();
    if d < 3 {
        return Err(Error::invalid("the tree identity needs d >= 3"));
    }
    check_angles(t, a)?;
    check_angles(t, b)?;
    check_exclusion(nu, m)?;
    let (z, _) = radial(r, rp)?;
    let mut rho = 1.0;
    for (anc, right) in t.path_to(node) {
        rho *= if right {
            a[anc].sin() * b[anc].sin()
        } else {
            a[anc].cos() * b[anc].cos()
        };
    }
    if !(rho > 0.0) {
        return Err(Error::Axis);
    }
    let cos_gamma = cos_separation(t, a, b)?;
    let dphi = a[node] - b[node];
    let chi = (r * r + rp * rp - 2.0 * r * rp * cos_gamma + 2.0 * r * rp * rho * dphi.cos()) / (2.0 * r * rp * rho);
    check_chi(chi)?;
    let sums = degree_shell_sums(t, a, b, lmax, Some(FixedAzimuth { node, m }))?;
    let am = m.unsigned_abs() as usize;
    let df = d as f64;
    let q = q_table(0.5 * (df - 3.0), 0.5 * (1.0 - nu - df), z, am, lmax.max(am))?;
    let terms: Vec<f64> = (am..=lmax).map(|l| sums[l] * q[l]).collect();
    let (big, small) = (r.max(rp), r.min(rp));
    let pre = (0.5 * 2f64.ln() + 0.5 * df * PI.ln()
        - 0.5 * nu * (2.0 * r * rp * rho).ln()
        - 0.25 * (nu + 1.0) * (chi * chi - 1.0).ln()
        + 0.5 * (nu + df - 1.0) * (big * big - small * small).ln()
        - 0.5 * (df - 1.0) * (r * rp).ln())
    .exp();
    let p = Plan {
        label: format!("{t} node {node}"),
        dimension: d,
        nu,
        m,
        chi,
        z,
        lhs: lhs_value(nu, m, chi)?,
        lhs_quadrature: Some(lhs_by_quadrature(nu, m, chi, LHS_QUADRATURE_POINTS)?),
        names: vec!["l".into()],
        lower: vec![am],
        caps: vec![lmax],
        tol,
        trace: false,
    };
    assemble(p, |c| {
        let mut acc = Compensated::new();
        for v in terms.iter().take((c[0] + 1).saturating_sub(am)) {
            acc.add(*v);
        }
        Ok(pre * acc.value())
    })
}

/// Exchanges the roles of φ₁ and φ₂ on the four-dimensional Hopf tree:
/// (ϑ, φ₁, φ₂) ↦ (π/2 − ϑ, φ₂, φ₁) for both points.
pub fn swap_hopf_azimuths(cfg: &TheoremConfig) -> Result<TheoremConfig> {
    if cfg.angles.len() != 3 || cfg.angles_p.len() != 3 {
        return Err(Error::invalid("the azimuth swap acts on (ϑ, φ1, φ2)"));
    }
    let map = |v: &[f64]| vec![FRAC_PI_2 - v[0], v[2], v[1]];
    let mut out = cfg.clone();
    out.angles = map(&cfg.angles);
    out.angles_p = map(&cfg.angles_p);
    Ok(out)
}
