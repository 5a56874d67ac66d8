use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use super::{null_space_of_rref, numbered_labels, rref_in_place, Matrix};
use crate::field::{Elem, Field};
use crate::{Caps, Error, Result};

/// A subspace `U` of `F^E`, stored as a reduced row echelon basis over the
/// sorted ambient labels. Two subspaces are equal exactly when their stored
/// forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: Vec<String>,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl Subspace {
    /// The span of `vectors`, whose coordinates follow the order of `ambient`.
    pub fn from_vectors(field: &Field, ambient: Vec<String>, vectors: Vec<Vec<Elem>>) -> Result<Self> {
        let m = Matrix::with_columns(field, ambient, vectors)?;
        Ok(Self::row_space(&m))
    }

    /// Row space of a matrix, on its column labels.
    pub fn row_space(a: &Matrix) -> Self {
        Self::from_sorted(a.field(), a.col_labels().to_vec(), a.rows_vec())
    }

    /// `ambient` must already be sorted and duplicate-free.
    pub(crate) fn from_sorted(field: &Field, ambient: Vec<String>, mut vectors: Vec<Vec<Elem>>) -> Self {
        debug_assert!(ambient.windows(2).all(|w| w[0] < w[1]));
        vectors.retain(|v| v.iter().any(|&x| x != 0));
        let pivots = rref_in_place(field, &mut vectors);
        Subspace {
            field: field.clone(),
            ambient,
            basis: vectors,
            pivots,
        }
    }

    pub fn zero(field: &Field, ambient: Vec<String>) -> Result<Self> {
        Self::from_vectors(field, ambient, Vec::new())
    }

    pub fn full(field: &Field, ambient: Vec<String>) -> Result<Self> {
        let n = ambient.len();
        let vectors = (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect();
        Self::from_vectors(field, ambient, vectors)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis rows in reduced row echelon form (coordinates in sorted label order).
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    /// Pivot coordinates of the echelon basis, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The echelon basis as a matrix with rows `r0, r1, ...`.
    pub fn generator_matrix(&self) -> Matrix {
        Matrix::new(
            &self.field,
            numbered_labels("r", self.dim()),
            self.ambient.clone(),
            self.basis.clone(),
        )
        .expect("a stored basis is a valid matrix")
    }

    /// Reduces `v` modulo the basis; the result is zero iff `v` lies in the span.
    pub(crate) fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &b) in v.iter_mut().zip(row) {
                    if b != 0 {
                        *x = f.add(*x, f.mul(neg, b));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.ambient.len() && self.reduce(v).iter().all(|&x| x == 0)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("subspaces over different fields".into()));
        }
        if self.ambient != other.ambient {
            return Err(Error::LabelMismatch("subspaces of different ambient spaces".into()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Self::from_sorted(&self.field, self.ambient.clone(), vs))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(orth_complement(&orth_complement(self).sum(&orth_complement(other))?))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.field == other.field && self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    /// Projection onto the coordinates `keep` (indices into the ambient labels).
    pub(crate) fn restrict_indices(&self, keep: &[usize]) -> Subspace {
        let ambient = keep.iter().map(|&i| self.ambient[i].clone()).collect();
        let vs = self.basis.iter().map(|v| keep.iter().map(|&i| v[i]).collect()).collect();
        Self::from_sorted(&self.field, ambient, vs)
    }

    /// Rebuilds on a relabeled ambient set (`new_labels[i]` replaces `ambient()[i]`).
    pub fn relabel(&self, new_labels: &[String]) -> Result<Subspace> {
        if new_labels.len() != self.ambient.len() {
            return Err(Error::ShapeMismatch("relabeling must cover every coordinate".into()));
        }
        Self::from_vectors(&self.field, new_labels.to_vec(), self.basis.clone())
    }

    /// Every vector of the subspace (exponential; tests and tiny instances only).
    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let q = f.order() as u64;
        let total = q.pow(self.dim() as u32);
        (0..total).map(|idx| combination(f, &self.basis, idx, self.ambient.len())).collect()
    }
}

fn combination(f: &Field, basis: &[Vec<Elem>], mut idx: u64, n: usize) -> Vec<Elem> {
    let q = f.order() as u64;
    let mut v = vec![0; n];
    for row in basis {
        let c = (idx % q) as Elem;
        idx /= q;
        if c != 0 {
            for (x, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *x = f.add(*x, f.mul(c, b));
                }
            }
        }
    }
    v
}

/// `U^perp`: all vectors orthogonal to every vector of `U`.
pub fn orth_complement(u: &Subspace) -> Subspace {
    let n = u.ambient.len();
    let basis = null_space_of_rref(&u.field, &u.basis, &u.pivots, n);
    Subspace::from_sorted(&u.field, u.ambient.clone(), basis)
}

/// Whether two matrices over the same field and column labels have the same row space.
pub fn row_space_equal(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch("matrices over different fields".into()));
    }
    if a.col_labels() != b.col_labels() {
        return Err(Error::LabelMismatch("column labels differ".into()));
    }
    Ok(Subspace::row_space(a) == Subspace::row_space(b))
}

/// Minimum Hamming weight of a nonzero vector, with the lexicographically
/// least vector attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weight {
    pub weight: usize,
    pub witness: Vec<Elem>,
}

const CHUNKS: u64 = 256;

/// Minimum weight of a nonzero vector of `U`, by enumerating all `q^dim`
/// combinations. `None` when `U = {0}`.
pub fn min_weight(u: &Subspace, caps: &Caps) -> Result<Option<Weight>> {
    let d = u.dim();
    if d == 0 {
        return Ok(None);
    }
    let q = u.field.order() as u128;
    let total = q.checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > caps.codewords as u128 {
        return Err(Error::cap("codewords (q^dim)", total, caps.codewords as u128));
    }
    let total = total as u64;
    let n = u.ambient.len();
    if q == 2 && n <= 64 {
        return Ok(Some(min_weight_binary(u, total)));
    }
    let f = &u.field;
    let chunk = total.div_ceil(CHUNKS).max(1);
    let best = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = (c * chunk).max(1);
            let hi = ((c + 1) * chunk).min(total);
            let mut best: Option<(usize, Vec<Elem>)> = None;
            for idx in lo..hi {
                let v = combination(f, &u.basis, idx, n);
                let w = v.iter().filter(|&&x| x != 0).count();
                if best.as_ref().is_none_or(|(bw, bv)| (w, &v) < (*bw, bv)) {
                    best = Some((w, v));
                }
            }
            best
        })
        .reduce(|| None, |a, b| match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(if a <= b { a } else { b }),
        })
        .expect("a nonzero subspace has a nonzero vector");
    Ok(Some(Weight {
        weight: best.0,
        witness: best.1,
    }))
}

/// Whether bit vector `a` precedes `b` lexicographically, coordinate 0 first.
fn bits_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) == 0
}

fn min_weight_binary(u: &Subspace, total: u64) -> Weight {
    let masks: Vec<u64> = u
        .basis
        .iter()
        .map(|row| row.iter().enumerate().fold(0u64, |m, (j, &x)| m | ((x as u64) << j)))
        .collect();
    let combine = |g: u64| -> u64 {
        masks
            .iter()
            .enumerate()
            .filter(|(i, _)| g >> i & 1 == 1)
            .fold(0, |acc, (_, m)| acc ^ m)
    };
    let chunk = total.div_ceil(CHUNKS).max(1);
    let better = |a: (u32, u64), b: (u32, u64)| a.0 < b.0 || (a.0 == b.0 && bits_lex_less(a.1, b.1));
    let (w, v) = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(total);
            // Gray code walk: consecutive codes differ in one basis vector.
            let mut v = combine(lo ^ (lo >> 1));
            let mut best = (u32::MAX, u64::MAX);
            for i in lo..hi {
                if i > lo {
                    v ^= masks[i.trailing_zeros() as usize];
                }
                if v != 0 {
                    let cand = (v.count_ones(), v);
                    if better(cand, best) {
                        best = cand;
                    }
                }
            }
            best
        })
        .reduce(|| (u32::MAX, u64::MAX), |a, b| if better(b, a) { b } else { a });
    let n = u.ambient.len();
    Weight {
        weight: w as usize,
        witness: (0..n).map(|j| (v >> j & 1) as Elem).collect(),
    }
}
