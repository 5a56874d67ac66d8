use super::Subspace;
use crate::field::{Elem, Field};
use crate::{Caps, Error, Result};

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Total number of subspaces of `GF(q)^n`.
pub fn count_subspaces(n: u32, q: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every subspace of `F^ambient`, by dimension and then by pivot pattern and
/// free entries. Each appears exactly once because reduced echelon forms are
/// canonical.
pub fn all_subspaces(field: &Field, ambient: &[String], caps: &Caps) -> Result<Vec<Subspace>> {
    let n = ambient.len();
    let q = field.order();
    let total = count_subspaces(n as u32, q as u64);
    if total > caps.subspaces as u128 {
        return Err(Error::cap("subspace count", total, caps.subspaces as u128));
    }
    let mut sorted = ambient.to_vec();
    sorted.sort();
    let mut out = Vec::with_capacity(total as usize);
    for d in 0..=n {
        for pivots in combinations(n, d) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| ((p + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
                .collect();
            let count = (q as u64).pow(free.len() as u32);
            for mut idx in 0..count {
                let mut rows: Vec<Vec<Elem>> = vec![vec![0; n]; d];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i][p] = 1;
                }
                for &(i, j) in &free {
                    rows[i][j] = (idx % q as u64) as Elem;
                    idx /= q as u64;
                }
                out.push(Subspace::from_sorted(field, sorted.clone(), rows));
            }
        }
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_of_order, make_field};
    use crate::linalg::numbered_labels;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(count_subspaces(3, 2), 16);
        assert_eq!(count_subspaces(4, 2), 67);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for (q, n) in [(2, 3), (2, 4), (3, 3), (4, 2)] {
            let f = field_of_order(q).unwrap();
            let all = all_subspaces(&f, &numbered_labels("e", n), &Caps::default()).unwrap();
            assert_eq!(all.len() as u128, count_subspaces(n as u32, q as u64));
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = make_field(2, 1).unwrap();
        let caps = Caps {
            subspaces: 10,
            ..Caps::default()
        };
        assert!(all_subspaces(&f, &numbered_labels("e", 3), &caps).unwrap_err().is_cap_exceeded());
    }
}
