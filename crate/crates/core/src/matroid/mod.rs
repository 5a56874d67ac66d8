//! Represented matroids and the search routines that act on them.
//!
//! A represented matroid is a pair `(E, U)` with `U` a subspace of `F^E`.
//! Deletion is coordinate projection, contraction keeps the vectors that vanish
//! on the contracted set, and the dual is the orthogonal complement. Because
//! `U` is stored in canonical echelon form, these identities hold as exact
//! equalities, not merely up to isomorphism:
//!
//! ```
//! use matrep::{make_field, Matrix, ReprMatroid};
//!
//! let f = make_field(3, 1)?;
//! let a = Matrix::from_rows(&f, vec![vec![1, 0, 1, 2], vec![0, 1, 1, 1]])?;
//! let m = ReprMatroid::from_generator(&a);
//! let x = ["c1"];
//! assert_eq!(m.delete(&x)?.dual(), m.dual().contract(&x)?);
//! assert_eq!(m.dual().dual(), m);
//! # Ok::<(), matrep::Error>(())
//! ```
//!
//! Searches that need ranks of many subsets (isomorphism, minors,
//! connectivity) work on a [`RankTable`], which any [`Matroid`] can produce.

mod connectivity;
mod iso;
mod minor;
mod oracle;
mod projective;

pub use connectivity::{vertical_connectivity, VerticalConnectivity};
pub use iso::{find_embedding, find_isomorphism, for_each_isomorphism, isomorphic};
pub use minor::{has_minor, MinorWitness};
pub use oracle::{OracleMatroid, RankTable};
pub use projective::{confined_to, projective_scaling, projectively_equivalent};

use serde::Serialize;

use crate::field::{Elem, Field};
use crate::linalg::{column_rank, left_kernel, min_weight, normalize, orth_complement, Matrix, Subspace};
use crate::{Caps, Error, Result};

/// Anything with a ground set and a rank function.
pub trait Matroid: Sync {
    /// Ground set labels; element `i` of every index-based method is `labels()[i]`.
    fn labels(&self) -> &[String];

    /// Rank of the elements with the given indices.
    fn rank_indices(&self, idx: &[usize]) -> usize;

    fn len(&self) -> usize {
        self.labels().len()
    }

    fn is_empty(&self) -> bool {
        self.labels().is_empty()
    }

    fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.len()).collect();
        self.rank_indices(&all)
    }

    /// Rank of a subset given as a bit mask (ground sets of at most 64 elements).
    fn rank_mask(&self, mask: u64) -> usize {
        self.rank_indices(&mask_indices(mask))
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    fn rank_of(&self, labels: &[&str]) -> Result<usize> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::NotSubset(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.rank_indices(&idx))
    }

    /// Size of a smallest circuit together with one such circuit; `None` when
    /// every set is independent.
    fn girth(&self, caps: &Caps) -> Result<Option<Vec<String>>> {
        girth_by_circuits(self, caps)
    }

    /// Size of a smallest cocircuit with a witness; `None` when the rank is zero.
    fn cogirth(&self, caps: &Caps) -> Result<Option<Vec<String>>> {
        cogirth_by_cocircuits(self, caps)
    }
}

pub(crate) fn mask_indices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

fn for_each_subset_of_size(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut f)
}

/// Girth by scanning subsets in order of size: the first dependent set found
/// is a smallest circuit. Independent of any representation.
pub fn girth_by_circuits<M: Matroid + ?Sized>(m: &M, caps: &Caps) -> Result<Option<Vec<String>>> {
    let n = m.len();
    caps.check_elements("ground set for circuit enumeration", n, caps.subset_elements)?;
    for k in 1..=n {
        let mut found = None;
        for_each_subset_of_size(n, k, |s| {
            if m.rank_indices(s) < s.len() {
                found = Some(s.iter().map(|&i| m.labels()[i].clone()).collect());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Cogirth by scanning for the smallest set whose complement is not spanning.
pub fn cogirth_by_cocircuits<M: Matroid + ?Sized>(m: &M, caps: &Caps) -> Result<Option<Vec<String>>> {
    let n = m.len();
    caps.check_elements("ground set for cocircuit enumeration", n, caps.subset_elements)?;
    let r = m.rank();
    for k in 1..=n {
        let mut found = None;
        for_each_subset_of_size(n, k, |s| {
            let rest: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
            if m.rank_indices(&rest) < r {
                found = Some(s.iter().map(|&i| m.labels()[i].clone()).collect());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Whether the matroid has no loops and no parallel pairs.
pub fn is_simple<M: Matroid + ?Sized>(m: &M) -> bool {
    let n = m.len();
    (0..n).all(|i| m.rank_indices(&[i]) == 1) && (0..n).all(|i| ((i + 1)..n).all(|j| m.rank_indices(&[i, j]) == 2))
}

/// An `F`-represented matroid `(E, U)`.
#[derive(Clone, Debug)]
pub struct ReprMatroid {
    space: Subspace,
    // column bit masks over the echelon basis, for binary spaces of dimension <= 64
    binary_cols: Option<Vec<u64>>,
}

impl PartialEq for ReprMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl Eq for ReprMatroid {}

impl std::hash::Hash for ReprMatroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.space.hash(state)
    }
}

impl ReprMatroid {
    pub fn from_subspace(space: Subspace) -> Self {
        let binary_cols = (space.field().order() == 2 && space.dim() <= 64).then(|| {
            (0..space.ambient().len())
                .map(|j| {
                    space
                        .basis()
                        .iter()
                        .enumerate()
                        .fold(0u64, |m, (i, row)| m | ((row[j] as u64) << i))
                })
                .collect()
        });
        ReprMatroid { space, binary_cols }
    }

    /// `M(A)`: the column labels of `A` with the row space of `A`.
    pub fn from_generator(a: &Matrix) -> Self {
        Self::from_subspace(Subspace::row_space(a))
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn ground(&self) -> &[String] {
        self.space.ambient()
    }

    /// The canonical generator: the echelon basis of `U`.
    pub fn generator(&self) -> Matrix {
        self.space.generator_matrix()
    }

    fn indices_of<S: AsRef<str>>(&self, xs: &[S]) -> Result<Vec<usize>> {
        let mut idx = xs
            .iter()
            .map(|x| {
                self.ground()
                    .binary_search_by(|l| l.as_str().cmp(x.as_ref()))
                    .map_err(|_| Error::NotSubset(x.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    fn complement_of(&self, idx: &[usize]) -> Vec<usize> {
        (0..self.ground().len()).filter(|i| idx.binary_search(i).is_err()).collect()
    }

    /// `M \ X`: restriction of `U` to `E - X`.
    pub fn delete<S: AsRef<str>>(&self, x: &[S]) -> Result<ReprMatroid> {
        let idx = self.indices_of(x)?;
        Ok(self.delete_indices(&idx))
    }

    pub(crate) fn delete_indices(&self, idx: &[usize]) -> ReprMatroid {
        let keep = self.complement_of(idx);
        Self::from_subspace(self.space.restrict_indices(&keep))
    }

    /// `M / X`: vectors of `U` vanishing on `X`, restricted to `E - X`.
    pub fn contract<S: AsRef<str>>(&self, x: &[S]) -> Result<ReprMatroid> {
        let idx = self.indices_of(x)?;
        Ok(self.contract_indices(&idx))
    }

    pub(crate) fn contract_indices(&self, idx: &[usize]) -> ReprMatroid {
        let f = self.field();
        let basis = self.space.basis();
        let on_x: Vec<Vec<Elem>> = basis.iter().map(|row| idx.iter().map(|&j| row[j]).collect()).collect();
        let combos = left_kernel(f, &on_x, idx.len());
        let n = self.ground().len();
        let vectors: Vec<Vec<Elem>> = combos
            .iter()
            .map(|c| {
                let mut v = vec![0; n];
                for (ci, row) in c.iter().zip(basis) {
                    if *ci != 0 {
                        for (x, &b) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(*ci, b));
                        }
                    }
                }
                v
            })
            .collect();
        let keep = self.complement_of(idx);
        let full = Subspace::from_sorted(f, self.ground().to_vec(), vectors);
        Self::from_subspace(full.restrict_indices(&keep))
    }

    /// `M / C \ D` for disjoint label sets.
    pub fn minor<S: AsRef<str>, T: AsRef<str>>(&self, contract: &[S], delete: &[T]) -> Result<ReprMatroid> {
        let c = self.indices_of(contract)?;
        let d = self.indices_of(delete)?;
        if c.iter().any(|i| d.binary_search(i).is_ok()) {
            return Err(Error::LabelClash("contracted and deleted sets overlap".into()));
        }
        let del: Vec<String> = d.iter().map(|&i| self.ground()[i].clone()).collect();
        self.contract_indices(&c).delete(&del)
    }

    /// `M* = (E, U^perp)`.
    pub fn dual(&self) -> ReprMatroid {
        Self::from_subspace(orth_complement(&self.space))
    }

    /// Restriction to the given labels.
    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Result<ReprMatroid> {
        let idx = self.indices_of(keep)?;
        Ok(Self::from_subspace(self.space.restrict_indices(&idx)))
    }

    /// Renames elements: `new_labels[i]` replaces `ground()[i]`.
    pub fn relabel(&self, new_labels: &[String]) -> Result<ReprMatroid> {
        Ok(Self::from_subspace(self.space.relabel(new_labels)?))
    }

    /// Direct sum on disjoint ground sets.
    pub fn direct_sum(&self, other: &ReprMatroid) -> Result<ReprMatroid> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch("direct sum over different fields".into()));
        }
        let (n1, n2) = (self.ground().len(), other.ground().len());
        let mut labels = self.ground().to_vec();
        labels.extend(other.ground().iter().cloned());
        let mut vectors = Vec::new();
        for row in self.space.basis() {
            let mut v = row.clone();
            v.resize(n1 + n2, 0);
            vectors.push(v);
        }
        for row in other.space.basis() {
            let mut v = vec![0; n1];
            v.extend_from_slice(row);
            vectors.push(v);
        }
        Ok(Self::from_subspace(Subspace::from_vectors(self.field(), labels, vectors)?))
    }

    pub fn rank_of_labels<S: AsRef<str>>(&self, s: &[S]) -> Result<usize> {
        let idx = self.indices_of(s)?;
        Ok(self.rank_indices(&idx))
    }

    pub fn loops(&self) -> Vec<String> {
        (0..self.ground().len())
            .filter(|&j| self.space.basis().iter().all(|row| row[j] == 0))
            .map(|j| self.ground()[j].clone())
            .collect()
    }

    /// Nonloop elements grouped into parallel classes, each sorted, classes
    /// ordered by their least label.
    pub fn parallel_classes(&self) -> Vec<Vec<String>> {
        let f = self.field();
        let mut classes: Vec<(Vec<Elem>, Vec<String>)> = Vec::new();
        for j in 0..self.ground().len() {
            let mut col: Vec<Elem> = self.space.basis().iter().map(|row| row[j]).collect();
            if !normalize(f, &mut col) {
                continue;
            }
            match classes.iter_mut().find(|(c, _)| *c == col) {
                Some((_, members)) => members.push(self.ground()[j].clone()),
                None => classes.push((col, vec![self.ground()[j].clone()])),
            }
        }
        classes.into_iter().map(|(_, m)| m).collect()
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty() && self.parallel_classes().iter().all(|c| c.len() == 1)
    }

    /// Deletes loops and all but the least label of each parallel class.
    pub fn simplify(&self) -> ReprMatroid {
        let keep: Vec<String> = self.parallel_classes().into_iter().map(|c| c[0].clone()).collect();
        self.restrict(&keep).expect("kept labels come from the ground set")
    }
}

impl Matroid for ReprMatroid {
    fn labels(&self) -> &[String] {
        self.ground()
    }

    fn rank_indices(&self, idx: &[usize]) -> usize {
        if let Some(cols) = &self.binary_cols {
            // xor basis keyed by leading bit
            let mut basis = [0u64; 64];
            let mut r = 0;
            for &j in idx {
                let mut v = cols[j];
                while v != 0 {
                    let top = 63 - v.leading_zeros() as usize;
                    if basis[top] == 0 {
                        basis[top] = v;
                        r += 1;
                        break;
                    }
                    v ^= basis[top];
                }
            }
            r
        } else {
            column_rank(self.field(), self.space.basis(), idx)
        }
    }

    fn rank(&self) -> usize {
        self.space.dim()
    }

    /// Smallest circuit as the support of a minimum-weight vector of `U^perp`.
    fn girth(&self, caps: &Caps) -> Result<Option<Vec<String>>> {
        Ok(min_weight(&orth_complement(&self.space), caps)?.map(|w| support_labels(self.ground(), &w.witness)))
    }

    /// Smallest cocircuit as the support of a minimum-weight vector of `U`.
    fn cogirth(&self, caps: &Caps) -> Result<Option<Vec<String>>> {
        Ok(min_weight(&self.space, caps)?.map(|w| support_labels(self.ground(), &w.witness)))
    }
}

fn support_labels(labels: &[String], v: &[Elem]) -> Vec<String> {
    v.iter()
        .zip(labels)
        .filter(|(&x, _)| x != 0)
        .map(|(_, l)| l.clone())
        .collect()
}

/// Girth as a number, for callers that do not need the circuit.
pub fn girth<M: Matroid + ?Sized>(m: &M, caps: &Caps) -> Result<Option<usize>> {
    Ok(m.girth(caps)?.map(|c| c.len()))
}

pub fn cogirth<M: Matroid + ?Sized>(m: &M, caps: &Caps) -> Result<Option<usize>> {
    Ok(m.cogirth(caps)?.map(|c| c.len()))
}

/// A set witness returned by searches, in label form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub x: Vec<String>,
    pub y: Vec<String>,
}
