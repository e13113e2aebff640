//! Tree enumeration: total trees b_d and mirror-equivalence classes a_d.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::tree::Shape;

/// b_1, …, b_d by the convolution recurrence (Catalan numbers C_{d−1}).
pub fn tree_count_table(d: usize) -> Vec<BigUint> {
    let mut b: Vec<BigUint> = vec![BigUint::zero(); d + 1];
    if d >= 1 {
        b[1] = BigUint::one();
    }
    for n in 2..=d {
        let mut s = BigUint::zero();
        for i in 1..n {
            s += &b[i] * &b[n - i];
        }
        b[n] = s;
    }
    b.into_iter().skip(1).collect()
}

/// Total number of trees with d leaves.
pub fn count_trees(d: usize) -> BigUint {
    tree_count_table(d).pop().unwrap_or_default()
}

/// a_1, …, a_d by the odd/even split recurrence (Wedderburn–Etherington).
pub fn class_count_table(d: usize) -> Vec<BigUint> {
    let mut a: Vec<BigUint> = vec![BigUint::zero(); d + 1];
    if d >= 1 {
        a[1] = BigUint::one();
    }
    for n in 2..=d {
        let mut s = BigUint::zero();
        let half = n / 2;
        let upper = if n % 2 == 1 { half } else { half - 1 };
        for i in 1..=upper {
            s += &a[i] * &a[n - i];
        }
        if n % 2 == 0 {
            let h = &a[half];
            s += (h * (h + BigUint::one())) >> 1u32;
        }
        a[n] = s;
    }
    a.into_iter().skip(1).collect()
}

/// Number of mirror-equivalence classes of trees with d leaves.
pub fn count_equivalence_classes(d: usize) -> BigUint {
    class_count_table(d).pop().unwrap_or_default()
}

/// Every binary tree shape with `d` leaves, by brute force.
pub fn all_shapes(d: usize) -> Vec<Shape> {
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for i in 1..d {
        let left = all_shapes(i);
        let right = all_shapes(d - i);
        for l in &left {
            for r in &right {
                out.push(Shape::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Number of distinct mirror-canonical shapes among `all_shapes(d)`.
pub fn brute_force_classes(d: usize) -> usize {
    all_shapes(d)
        .iter()
        .map(Shape::canonical)
        .collect::<BTreeSet<_>>()
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_sequences() {
        let b: Vec<u64> = tree_count_table(13)
            .iter()
            .skip(1)
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(b, vec![1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012]);
        let a: Vec<u64> = class_count_table(13)
            .iter()
            .skip(1)
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(a, vec![1, 1, 2, 3, 6, 11, 23, 46, 98, 207, 451, 983]);
    }

    #[test]
    fn catalan_closed_form() {
        // C_{d−1} = binom(2d−2, d−1)/d
        for d in 1..40usize {
            let n = d - 1;
            let mut c = BigUint::one();
            for k in 0..n {
                c = c * BigUint::from(2 * n - k) / BigUint::from(k + 1);
            }
            c /= BigUint::from(n + 1);
            assert_eq!(count_trees(d), c, "d={d}");
        }
    }

    #[test]
    fn brute_force_agrees() {
        for d in 1..=7 {
            assert_eq!(BigUint::from(all_shapes(d).len()), count_trees(d));
            assert_eq!(BigUint::from(brute_force_classes(d)), count_equivalence_classes(d));
        }
    }
}
