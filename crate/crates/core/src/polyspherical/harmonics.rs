//! Normalized hyperspherical harmonics built as products of node eigenfactors.
//!
//! A [`QuantumKey`] holds one integer per branching node in preorder: the
//! azimuthal number m at type-a nodes and the degree l elsewhere. A type-a
//! child contributes |m| as its degree to the parent.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orthopoly::{jacobi_norm, jacobi_p, JacobiSeq};
use crate::specfun::{ferrers_p, gamma, ln_factorial};

use super::coords::{check_angles, cos_separation};
use super::tree::{Child, NodeType, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumKey(pub Vec<i64>);

impl QuantumKey {
    pub fn zeros(t: &Tree) -> Self {
        QuantumKey(vec![0; t.branch_count()])
    }

    /// Degree of the harmonic: the root quantum number (|m| for the tree "a").
    pub fn degree(&self, t: &Tree) -> i64 {
        effective_l(t, self, 0)
    }
}

fn effective_l(t: &Tree, key: &QuantumKey, i: usize) -> i64 {
    match t.node(i).node_type {
        NodeType::A => key.0[i].abs(),
        _ => key.0[i],
    }
}

fn child_l(t: &Tree, key: &QuantumKey, c: Child) -> i64 {
    match c {
        Child::Leaf(_) => 0,
        Child::Branch(j) => effective_l(t, key, j),
    }
}

fn inadmissible(t: &Tree, key: &QuantumKey, why: &str) -> Error {
    Error::InadmissibleKey(format!("{:?} on {}: {}", key.0, t, why))
}

/// Checks the per-node admissibility rules.
pub fn check_key(t: &Tree, key: &QuantumKey) -> Result<()> {
    if key.0.len() != t.branch_count() {
        return Err(inadmissible(t, key, "wrong length"));
    }
    for (i, n) in t.nodes().iter().enumerate() {
        let l = key.0[i];
        let la = child_l(t, key, n.left);
        let lb = child_l(t, key, n.right);
        let ok = match n.node_type {
            NodeType::A => true,
            NodeType::B => l >= lb,
            NodeType::BPrime => l >= la,
            NodeType::C => l >= la + lb && (l - la - lb) % 2 == 0,
        };
        if !ok {
            return Err(inadmissible(t, key, &format!("node {i} violates its rule")));
        }
    }
    Ok(())
}

/// N_n^{α,α} sin^{lβ}θ P_n^{(α,α)}(cos θ).
fn b_factor(n: u32, alpha: f64, lb: i64, theta: f64) -> f64 {
    jacobi_norm(n, alpha, alpha) * theta.sin().powi(lb as i32) * jacobi_p(n, alpha, alpha, theta.cos())
}

/// N_n^{β,β} cos^{lα}θ P_n^{(β,β)}(sin θ).
fn bprime_factor(n: u32, beta: f64, la: i64, theta: f64) -> f64 {
    jacobi_norm(n, beta, beta) * theta.cos().powi(la as i32) * jacobi_p(n, beta, beta, theta.sin())
}

/// 2^{(α+β)/2+1} N_n^{α,β} sin^{lβ}ϑ cos^{lα}ϑ P_n^{(β,α)}(cos 2ϑ).
fn c_factor(n: u32, alpha: f64, beta: f64, la: i64, lb: i64, theta: f64) -> f64 {
    2f64.powf(0.5 * (alpha + beta) + 1.0)
        * jacobi_norm(n, alpha, beta)
        * theta.sin().powi(lb as i32)
        * theta.cos().powi(la as i32)
        * jacobi_p(n, beta, alpha, (2.0 * theta).cos())
}

/// Eigenfactor of branching node `i` at its angle.
pub fn node_factor(t: &Tree, i: usize, key: &QuantumKey, angle: f64) -> Result<Complex64> {
    check_key(t, key)?;
    Ok(node_factor_unchecked(t, i, key, angle))
}

fn node_factor_unchecked(t: &Tree, i: usize, key: &QuantumKey, angle: f64) -> Complex64 {
    let n = t.node(i);
    let l = key.0[i];
    let la = child_l(t, key, n.left);
    let lb = child_l(t, key, n.right);
    let v = match n.node_type {
        NodeType::A => {
            return Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), l as f64 * angle);
        }
        NodeType::B => b_factor((l - lb) as u32, lb as f64 + 0.5 * n.s_right(), lb, angle),
        NodeType::BPrime => bprime_factor((l - la) as u32, la as f64 + 0.5 * n.s_left(), la, angle),
        NodeType::C => c_factor(
            ((l - la - lb) / 2) as u32,
            la as f64 + 0.5 * n.s_left(),
            lb as f64 + 0.5 * n.s_right(),
            la,
            lb,
            angle,
        ),
    };
    Complex64::new(v, 0.0)
}

/// Y_K at a point on the unit sphere given by its angle vector.
pub fn harmonic(t: &Tree, key: &QuantumKey, angles: &[f64]) -> Result<Complex64> {
    check_key(t, key)?;
    check_angles(t, angles)?;
    Ok((0..t.branch_count())
        .map(|i| node_factor_unchecked(t, i, key, angles[i]))
        .product())
}

/// Every admissible key whose root quantum number equals `degree`.
pub fn enumerate_keys(t: &Tree, degree: u32) -> Vec<QuantumKey> {
    gen(t, 0, degree as i64).into_iter().map(QuantumKey).collect()
}

fn gen(t: &Tree, i: usize, l: i64) -> Vec<Vec<i64>> {
    let n = t.node(i);
    let sub = |c: Child, lc: i64| match c {
        Child::Leaf(_) => vec![Vec::new()],
        Child::Branch(j) => gen(t, j, lc),
    };
    let mut out = Vec::new();
    match n.node_type {
        NodeType::A => {
            out.push(vec![l]);
            if l != 0 {
                out.push(vec![-l]);
            }
        }
        NodeType::B | NodeType::BPrime => {
            let c = if n.node_type == NodeType::B { n.right } else { n.left };
            for lc in 0..=l {
                for s in sub(c, lc) {
                    let mut k = vec![l];
                    k.extend(s);
                    out.push(k);
                }
            }
        }
        NodeType::C => {
            for la in 0..=l {
                for lb in (0..=l - la).filter(|lb| (l - la - lb) % 2 == 0) {
                    let left = sub(n.left, la);
                    let right = sub(n.right, lb);
                    for a in &left {
                        for b in &right {
                            let mut k = vec![l];
                            k.extend(a);
                            k.extend(b);
                            out.push(k);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Dimension of the degree-n harmonic space on S^{d−1}.
pub fn harmonic_dimension(d: usize, n: u32) -> u64 {
    fn binom(n: i64, k: i64) -> u64 {
        if n < k || k < 0 {
            return 0;
        }
        let mut r: u128 = 1;
        for i in 0..k {
            r = r * (n - i) as u128 / (i + 1) as u128;
        }
        r as u64
    }
    let (n, d) = (n as i64, d as i64);
    binom(n + d - 1, d - 1) - binom(n + d - 3, d - 1)
}

/// Σ_K Y_n^K(a) conj(Y_n^K(b)) over all keys of degree n.
pub fn addition_sum(t: &Tree, n: u32, a: &[f64], b: &[f64]) -> Result<Complex64> {
    let mut s = Complex64::new(0.0, 0.0);
    for k in enumerate_keys(t, n) {
        s += harmonic(t, &k, a)? * harmonic(t, &k, b)?.conj();
    }
    Ok(s)
}

/// (2n+d−2)Γ(d/2)/(2(d−2)π^{d/2}) C_n^{d/2−1}(cos γ); the d = 2 limit is
/// (1 + [n>0]) cos(nγ)/(2π).
pub fn addition_theorem_rhs(d: usize, n: u32, cos_gamma: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::invalid("dimension must be at least 2"));
    }
    if d == 2 {
        let e = if n == 0 { 1.0 } else { 2.0 };
        return Ok(e * crate::orthopoly::chebyshev_t(n, cos_gamma) / (2.0 * PI));
    }
    let df = d as f64;
    let mu = 0.5 * df - 1.0;
    let c = crate::orthopoly::gegenbauer_c(n, mu, cos_gamma)?;
    Ok((2.0 * n as f64 + df - 2.0) * gamma(0.5 * df)? / (2.0 * (df - 2.0) * PI.powf(0.5 * df)) * c)
}

/// Residual of the addition theorem at one point pair.
pub fn addition_residual(t: &Tree, n: u32, a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    let s = addition_sum(t, n, a, b)?;
    let rhs = addition_theorem_rhs(t.dimension(), n, cos_separation(t, a, b)?)?;
    Ok(((s.re - rhs).abs(), s.im.abs()))
}

/// Phase relating the node-factor product on "ba" to the standard spherical
/// harmonic with the Condon–Shortley convention.
pub fn condon_shortley_phase(m: i64) -> f64 {
    if m > 0 && m % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Standard spherical harmonic √((2l+1)(l−m)!/(4π(l+m)!)) 𝖯_l^m(cos θ) e^{imφ}.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return Err(Error::InadmissibleKey(format!("l = {l}, m = {m}")));
    }
    let ln_ratio = ln_factorial((l as i64 - m as i64) as u32) - ln_factorial((l as i64 + m as i64) as u32);
    let norm = ((2.0 * l as f64 + 1.0) / (4.0 * PI) * ln_ratio.exp()).sqrt();
    let p = if theta == 0.0 || theta == PI {
        if m == 0 {
            theta.cos().powi(l as i32)
        } else {
            0.0
        }
    } else {
        ferrers_p(l, m, theta.cos())?
    };
    Ok(Complex64::from_polar(norm * p, m as f64 * phi))
}

/// Restriction for [`degree_shell_sums`]: one type-a node held at a fixed m
/// with its azimuthal phase removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedAzimuth {
    pub node: usize,
    pub m: i64,
}

/// S_l for l = 0..=lmax: the real part of Σ_K Y_K(a) conj(Y_K(b)) over keys of
/// degree l. With `fixed`, only keys carrying m at that node count and the
/// factor e^{im(φ−φ′)} of that node is dropped.
pub fn degree_shell_sums(t: &Tree, a: &[f64], b: &[f64], lmax: usize, fixed: Option<FixedAzimuth>) -> Result<Vec<f64>> {
    check_angles(t, a)?;
    check_angles(t, b)?;
    if let Some(f) = fixed {
        if f.node >= t.branch_count() || t.node(f.node).node_type != NodeType::A {
            return Err(Error::invalid(format!("node {} is not azimuthal", f.node)));
        }
    }
    Ok(shell(t, 0, a, b, lmax, fixed))
}

fn shell(t: &Tree, i: usize, a: &[f64], b: &[f64], lmax: usize, fixed: Option<FixedAzimuth>) -> Vec<f64> {
    let n = t.node(i);
    let mut out = vec![0.0; lmax + 1];
    let sub = |c: Child| match c {
        Child::Leaf(_) => {
            let mut v = vec![0.0; lmax + 1];
            v[0] = 1.0;
            v
        }
        Child::Branch(j) => shell(t, j, a, b, lmax, fixed),
    };
    let (x, y) = (a[i], b[i]);
    match n.node_type {
        NodeType::A => match fixed {
            Some(f) if f.node == i => {
                let l = f.m.unsigned_abs() as usize;
                if l <= lmax {
                    out[l] = 1.0 / (2.0 * PI);
                }
            }
            _ => {
                for (l, o) in out.iter_mut().enumerate() {
                    let e = if l == 0 { 1.0 } else { 2.0 };
                    *o = e * (l as f64 * (x - y)).cos() / (2.0 * PI);
                }
            }
        },
        NodeType::B | NodeType::BPrime => {
            let (c, s) = if n.node_type == NodeType::B {
                (n.right, n.s_right())
            } else {
                (n.left, n.s_left())
            };
            let fc = sub(c);
            for (lc, &w) in fc.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let al = lc as f64 + 0.5 * s;
                let (px, py, ex, ey) = if n.node_type == NodeType::B {
                    (x.cos(), y.cos(), x.sin(), y.sin())
                } else {
                    (x.sin(), y.sin(), x.cos(), y.cos())
                };
                let amp = (ex * ey).powi(lc as i32);
                let mut sx = JacobiSeq::new(al, al, px);
                let mut sy = JacobiSeq::new(al, al, py);
                for l in lc..=lmax {
                    let k = (l - lc) as u32;
                    let nn = jacobi_norm(k, al, al);
                    out[l] += w * amp * nn * nn * sx.next_value() * sy.next_value();
                }
            }
        }
        NodeType::C => {
            let fl = sub(n.left);
            let fr = sub(n.right);
            let (cx, cy) = ((2.0 * x).cos(), (2.0 * y).cos());
            for (la, &wa) in fl.iter().enumerate() {
                if wa == 0.0 {
                    continue;
                }
                for (lb, &wb) in fr.iter().enumerate().take(lmax + 1 - la) {
                    if wb == 0.0 {
                        continue;
                    }
                    let al = la as f64 + 0.5 * n.s_left();
                    let be = lb as f64 + 0.5 * n.s_right();
                    let amp = 2f64.powf(al + be + 2.0)
                        * (x.sin() * y.sin()).powi(lb as i32)
                        * (x.cos() * y.cos()).powi(la as i32);
                    let mut sx = JacobiSeq::new(be, al, cx);
                    let mut sy = JacobiSeq::new(be, al, cy);
                    let mut k = 0u32;
                    let mut l = la + lb;
                    while l <= lmax {
                        let nn = jacobi_norm(k, al, be);
                        out[l] += wa * wb * amp * nn * nn * sx.next_value() * sy.next_value();
                        k += 1;
                        l += 2;
                    }
                }
            }
        }
    }
    out
}
