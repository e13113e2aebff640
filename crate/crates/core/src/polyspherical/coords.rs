//! Coordinate transforms, separation angle, and surface measure on a tree.
//!
//! Angle vectors hold one angle per branching node in preorder.

use crate::error::{Error, Result};

use super::tree::{Child, NodeType, Tree};

const RANGE_SLACK: f64 = 1e-12;

/// Checks length and per-node ranges of an angle vector.
pub fn check_angles(t: &Tree, angles: &[f64]) -> Result<()> {
    if angles.len() != t.branch_count() {
        return Err(Error::invalid(format!(
            "expected {} angles for {}, got {}",
            t.branch_count(),
            t,
            angles.len()
        )));
    }
    for (i, (&a, n)) in angles.iter().zip(t.nodes()).enumerate() {
        let (lo, hi) = n.node_type.range();
        let ok = match n.node_type {
            NodeType::A => a >= lo - RANGE_SLACK && a < hi,
            _ => a >= lo - RANGE_SLACK && a <= hi + RANGE_SLACK,
        };
        if !ok || !a.is_finite() {
            return Err(Error::AngleRange {
                node: i,
                angle: a,
                range: n.node_type.range_label(),
            });
        }
    }
    Ok(())
}

/// Cartesian point: each leaf is r times the cos (left) or sin (right) of
/// every angle on its root path.
pub fn to_cartesian(t: &Tree, r: f64, angles: &[f64]) -> Result<Vec<f64>> {
    check_angles(t, angles)?;
    if !(r >= 0.0) {
        return Err(Error::invalid("radius must be non-negative"));
    }
    let mut x = vec![0.0; t.dimension()];
    fill(t, 0, r, angles, &mut x);
    Ok(x)
}

fn fill(t: &Tree, i: usize, scale: f64, angles: &[f64], x: &mut [f64]) {
    let n = t.node(i);
    let (s, c) = angles[i].sin_cos();
    for (child, f) in [(n.left, c), (n.right, s)] {
        match child {
            Child::Leaf(k) => x[k] = scale * f,
            Child::Branch(j) => fill(t, j, scale * f, angles, x),
        }
    }
}

/// cos γ between two directions given by angle vectors on the same tree.
pub fn cos_separation(t: &Tree, a: &[f64], b: &[f64]) -> Result<f64> {
    check_angles(t, a)?;
    check_angles(t, b)?;
    Ok(sep(t, 0, a, b))
}

fn sep(t: &Tree, i: usize, a: &[f64], b: &[f64]) -> f64 {
    let n = t.node(i);
    let sub = |c: Child| match c {
        Child::Leaf(_) => 1.0,
        Child::Branch(j) => sep(t, j, a, b),
    };
    a[i].cos() * b[i].cos() * sub(n.left) + a[i].sin() * b[i].sin() * sub(n.right)
}

/// Surface-measure density ∏ cos^{dimL−1}ψ sin^{dimR−1}ψ over branching nodes.
pub fn surface_measure(t: &Tree, angles: &[f64]) -> Result<f64> {
    check_angles(t, angles)?;
    Ok(t.nodes()
        .iter()
        .zip(angles)
        .map(|(n, &a)| a.cos().powi(n.left_leaves as i32 - 1) * a.sin().powi(n.right_leaves as i32 - 1))
        .product())
}

/// Preorder index of every heap-numbered node (1-based heap index `h` at
/// position `h − 1`) of the Hopf tree on R^{2^q}.
pub fn hopf_heap_to_preorder(q: u32) -> Vec<usize> {
    let count = (1usize << q) - 1;
    let mut map = vec![0; count];
    let mut next = 0;
    fn walk(h: usize, count: usize, next: &mut usize, map: &mut [usize]) {
        if h > count {
            return;
        }
        map[h - 1] = *next;
        *next += 1;
        walk(2 * h, count, next, map);
        walk(2 * h + 1, count, next, map);
    }
    walk(1, count, &mut next, &mut map);
    map
}

/// Reorders a heap-numbered Hopf angle list (ϑ₁…ϑ_{2^{q−1}−1}, φ₁…φ_{2^{q−1}})
/// into preorder.
pub fn hopf_heap_angles_to_preorder(q: u32, heap: &[f64]) -> Vec<f64> {
    let map = hopf_heap_to_preorder(q);
    let mut out = vec![0.0; heap.len()];
    for (h, &p) in map.iter().enumerate() {
        out[p] = heap[h];
    }
    out
}

/// cos γ on the Hopf tree via the ₍q₎𝖦 recursion; angles are heap-numbered.
pub fn hopf_g_recursion(q: u32, heap: &[f64], heap2: &[f64]) -> Result<f64> {
    let count = (1usize << q) - 1;
    if q == 0 || heap.len() != count || heap2.len() != count {
        return Err(Error::invalid(format!(
            "Hopf recursion at q = {q} needs {count} angles"
        )));
    }
    fn g(q: u32, s: u32, r: usize, a: &[f64], b: &[f64]) -> f64 {
        if s == 0 {
            return 1.0;
        }
        let k = r - 1 + (1usize << (q - s));
        let (x, y) = (a[k - 1], b[k - 1]);
        x.cos() * y.cos() * g(q, s - 1, 2 * r - 1, a, b) + x.sin() * y.sin() * g(q, s - 1, 2 * r, a, b)
    }
    Ok(g(q, q, 1, heap, heap2))
}
