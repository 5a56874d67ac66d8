//! Exact linear algebra over finite fields.
//!
//! Matrices and subspaces are keyed by string labels. Labels are kept in
//! sorted order, so reduced row echelon forms (and therefore equality of
//! subspaces) do not depend on the order in which a caller listed them.

mod lattice;
mod matrix;
mod subspace;

pub use lattice::{all_subspaces, count_subspaces, gaussian_binomial};
pub use matrix::{rref, Matrix, Rref};
pub use subspace::{min_weight, orth_complement, row_space_equal, Subspace, Weight};

use crate::field::{Elem, FiniteField};

/// `n` labels `prefix0, prefix1, ...`, zero-padded so that string order
/// equals numeric order.
pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("{prefix}{i:0width$}")).collect()
}

/// Reduces `rows` to reduced row echelon form in place, drops zero rows and
/// returns the pivot columns.
pub(crate) fn rref_in_place(f: &FiniteField, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = f.inv(rows[r][c]).unwrap();
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let factor = rows[i][c];
            if factor != 0 {
                let neg = f.neg(factor);
                for j in c..ncols {
                    let t = rows[r][j];
                    if t != 0 {
                        rows[i][j] = f.add(rows[i][j], f.mul(neg, t));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank_of_rows(f: &FiniteField, rows: &[Vec<Elem>]) -> usize {
    let mut rows = rows.to_vec();
    rref_in_place(f, &mut rows).len()
}

/// Rank of the columns `cols` of the matrix whose rows are `rows`.
pub(crate) fn column_rank(f: &FiniteField, rows: &[Vec<Elem>], cols: &[usize]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let mut sub: Vec<Vec<Elem>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    rref_in_place(f, &mut sub).len()
}

/// Basis (in reduced echelon form) of `{x : rows * x^T = 0}` for rows already
/// in reduced row echelon form with the given pivots.
pub(crate) fn null_space_of_rref(f: &FiniteField, rows: &[Vec<Elem>], pivots: &[usize], ncols: usize) -> Vec<Vec<Elem>> {
    let mut is_pivot = vec![None; ncols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(rows[i][free]);
        }
        out.push(v);
    }
    rref_in_place(f, &mut out);
    out
}

/// All vectors `c` with `c * rows = 0`, as a basis of the left kernel.
pub(crate) fn left_kernel(f: &FiniteField, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let m = rows.len();
    let mut t: Vec<Vec<Elem>> = (0..ncols).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    if t.is_empty() {
        // no constraints: every combination works
        return (0..m)
            .map(|i| {
                let mut v = vec![0; m];
                v[i] = 1;
                v
            })
            .collect();
    }
    let pivots = rref_in_place(f, &mut t);
    null_space_of_rref(f, &t, &pivots, m)
}

#[cfg(test)]
pub(crate) fn dot(f: &FiniteField, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub(crate) fn normalize(f: &FiniteField, v: &mut [Elem]) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    let inv = f.inv(lead).unwrap();
    if inv != 1 {
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    true
}
