//! Elementary projections and lifts, the lattice distance between two
//! represented matroids on the same ground set, and rank perturbations.
//!
//! An elementary projection of `(E, U)` is `(E, U')` with `U'` a subspace of
//! `U` of codimension at most one; an elementary lift goes the other way. The
//! distance is therefore the shortest path between `U1` and `U2` in the
//! subspace lattice of `F^E` with steps of one dimension.
//!
//! ```
//! use matrep::{make_field, Caps, Matrix, ReprMatroid};
//! use matrep::perturb::{dist, pert_bounds, pert_exact};
//!
//! let f = make_field(2, 1)?;
//! let m1 = ReprMatroid::from_generator(&Matrix::from_rows(&f, vec![vec![1, 0, 0], vec![0, 1, 0]])?);
//! let m2 = ReprMatroid::from_generator(&Matrix::from_rows(&f, vec![vec![1, 0, 0], vec![0, 0, 1]])?);
//! let caps = Caps::default();
//! let p = pert_exact(&m1, &m2, &caps)?.value;
//! let d = dist(&m1, &m2, &caps)?;
//! assert!(p <= d && d <= 2 * p);
//! assert_eq!(pert_bounds(&m1, &m2)?.lo, p);
//! # Ok::<(), matrep::Error>(())
//! ```

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::field::{Elem, Field};
use crate::linalg::{all_subspaces, left_kernel, numbered_labels, rref_in_place, Matrix, Subspace};
use crate::matroid::{Matroid, ReprMatroid};
use crate::{Caps, Error, Result};

fn check_pair(m1: &ReprMatroid, m2: &ReprMatroid) -> Result<()> {
    if m1.field() != m2.field() {
        return Err(Error::FieldMismatch("matroids over different fields".into()));
    }
    if m1.ground() != m2.ground() {
        return Err(Error::LabelMismatch("ground sets differ".into()));
    }
    Ok(())
}

/// Nonzero vectors of `F^d` with leading nonzero entry 1.
fn projective_points(f: &Field, d: usize) -> Vec<Vec<Elem>> {
    let q = f.order() as u64;
    (1..q.pow(d as u32))
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let x = (code % q) as Elem;
                    code /= q;
                    x
                })
                .collect::<Vec<_>>()
        })
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

fn hyperplane_count(q: u64, d: usize) -> u128 {
    ((q as u128).pow(d as u32) - 1) / (q as u128 - 1)
}

/// `M` together with every `(E, U')` for `U'` a hyperplane of `U`.
pub fn elementary_projections(m: &ReprMatroid, caps: &Caps) -> Result<Vec<ReprMatroid>> {
    let f = m.field();
    let d = m.rank();
    let count = hyperplane_count(f.order() as u64, d);
    if count > caps.subspaces as u128 {
        return Err(Error::cap("hyperplanes of U", count, caps.subspaces as u128));
    }
    let basis = m.space().basis();
    let mut out = vec![m.clone()];
    for phi in projective_points(f, d) {
        // coefficient vectors c with c . phi = 0 span the hyperplane ker(phi)
        let col: Vec<Vec<Elem>> = phi.iter().map(|&x| vec![x]).collect();
        let vectors: Vec<Vec<Elem>> = left_kernel(f, &col, 1)
            .iter()
            .map(|c| combine(f, c, basis, m.ground().len()))
            .collect();
        out.push(ReprMatroid::from_subspace(Subspace::from_vectors(
            f,
            m.ground().to_vec(),
            vectors,
        )?));
    }
    Ok(out)
}

fn combine(f: &Field, c: &[Elem], basis: &[Vec<Elem>], n: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    for (&ci, row) in c.iter().zip(basis) {
        if ci != 0 {
            for (x, &b) in v.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(ci, b));
            }
        }
    }
    v
}

/// `M` together with every `(E, U')` containing `U` with one more dimension:
/// the duals of the projections of `M*`.
pub fn elementary_lifts(m: &ReprMatroid, caps: &Caps) -> Result<Vec<ReprMatroid>> {
    Ok(elementary_projections(&m.dual(), caps)?.iter().map(ReprMatroid::dual).collect())
}

/// All subspaces of `F^E` with the one-dimension-step adjacency.
pub struct SubspaceLattice {
    spaces: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    adj: Vec<Vec<usize>>,
}

impl SubspaceLattice {
    pub fn new(field: &Field, ambient: &[String], caps: &Caps) -> Result<Self> {
        let spaces = all_subspaces(field, ambient, caps)?;
        let index: HashMap<Subspace, usize> = spaces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let points = projective_points(field, ambient.len());
        let mut adj = vec![Vec::new(); spaces.len()];
        for (i, s) in spaces.iter().enumerate() {
            for p in &points {
                if s.contains(p) {
                    continue;
                }
                let mut vs = s.basis().to_vec();
                vs.push(p.clone());
                let up = Subspace::from_vectors(field, s.ambient().to_vec(), vs)?;
                let j = index[&up];
                if !adj[i].contains(&j) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Ok(SubspaceLattice { spaces, index, adj })
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    /// Breadth-first distances from `u` to every subspace, indexed like [`spaces`](Self::spaces).
    pub fn distances_from(&self, u: &Subspace) -> Result<Vec<usize>> {
        let s = *self
            .index
            .get(u)
            .ok_or_else(|| Error::LabelMismatch("subspace is not in this lattice".into()))?;
        let mut dist = vec![usize::MAX; self.spaces.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in &self.adj[a] {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        Ok(dist)
    }

    pub fn distance(&self, u1: &Subspace, u2: &Subspace) -> Result<usize> {
        let d = self.distances_from(u1)?;
        let j = *self
            .index
            .get(u2)
            .ok_or_else(|| Error::LabelMismatch("subspace is not in this lattice".into()))?;
        Ok(d[j])
    }
}

/// Fewest elementary lifts and projections turning `M1` into `M2`.
pub fn dist(m1: &ReprMatroid, m2: &ReprMatroid, caps: &Caps) -> Result<usize> {
    check_pair(m1, m2)?;
    let lattice = SubspaceLattice::new(m1.field(), m1.ground(), caps)?;
    lattice.distance(m1.space(), m2.space())
}

/// Bounds on the least `t` such that `M1` and `M2` have generator matrices
/// on a common row set differing by a matrix of rank `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PertBounds {
    /// `max(dim U1 - dim(U1 ∩ U2), dim U2 - dim(U1 ∩ U2))`.
    pub lo: usize,
    /// `rank(a1 - a2)` for the explicit generators below.
    pub hi: usize,
    /// Whether `lo == hi`, so that the value is known exactly.
    pub exact: bool,
    #[serde(skip)]
    pub a1: Matrix,
    #[serde(skip)]
    pub a2: Matrix,
}

/// The containment lower bound and a construction meeting it.
///
/// If `A1` and `A2` share rows, the row space of `A1` lies in that of `A2`
/// plus that of `A1 - A2`, which gives `lo`. For the upper bound, write
/// `U1 = I + span(x)` and `U2 = I + span(y)` with `I = U1 ∩ U2`, pair `x_i`
/// with `y_i` and pad the shorter list with zero rows.
pub fn pert_bounds(m1: &ReprMatroid, m2: &ReprMatroid) -> Result<PertBounds> {
    check_pair(m1, m2)?;
    let f = m1.field();
    let (u1, u2) = (m1.space(), m2.space());
    let inter = u1.intersection(u2)?;
    let n = m1.ground().len();
    let extend = |u: &Subspace| -> Vec<Vec<Elem>> {
        let mut cur = inter.clone();
        let mut extra = Vec::new();
        for v in u.basis() {
            if !cur.contains(v) {
                extra.push(v.clone());
                let mut vs = cur.basis().to_vec();
                vs.push(v.clone());
                cur = Subspace::from_vectors(f, u.ambient().to_vec(), vs).expect("same ambient");
            }
        }
        extra
    };
    let (x, y) = (extend(u1), extend(u2));
    let lo = x.len().max(y.len());
    let rows = inter.dim() + lo;
    let mut r1: Vec<Vec<Elem>> = inter.basis().to_vec();
    let mut r2 = r1.clone();
    for i in 0..lo {
        r1.push(x.get(i).cloned().unwrap_or_else(|| vec![0; n]));
        r2.push(y.get(i).cloned().unwrap_or_else(|| vec![0; n]));
    }
    let labels = numbered_labels("r", rows);
    let a1 = Matrix::new(f, labels.clone(), m1.ground().to_vec(), r1)?;
    let a2 = Matrix::new(f, labels, m1.ground().to_vec(), r2)?;
    let hi = a1.sub(&a2)?.rank();
    Ok(PertBounds {
        lo,
        hi,
        exact: lo == hi,
        a1,
        a2,
    })
}

/// The least `rank(A1 - A2)` found by exhaustive search, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PertExact {
    pub value: usize,
    pub a1: Matrix,
    pub a2: Matrix,
}

/// Exact perturbation distance at a common row count `dim U1 + dim U2`.
///
/// Row operations applied to both matrices leave `rank(A1 - A2)` unchanged,
/// so `A1` may be taken as the echelon basis of `U1` padded with zero rows.
/// The search then chooses each row of `A2` from `U2`, requiring `A2` to span
/// `U2`; rows facing zero rows of `A1` are chosen as a multiset. Branches
/// whose partial difference already has rank at least the incumbent are cut,
/// as are branches that can no longer span `U2`. The incumbent starts from
/// the explicit construction of [`pert_bounds`], never from `lo`.
pub fn pert_exact(m1: &ReprMatroid, m2: &ReprMatroid, caps: &Caps) -> Result<PertExact> {
    let bounds = pert_bounds(m1, m2)?;
    let f = m1.field();
    let (d1, d2) = (m1.rank(), m2.rank());
    let n = m1.ground().len();
    let rows = d1 + d2;
    let count = (f.order() as u128).checked_pow(d2 as u32).unwrap_or(u128::MAX);
    if count > caps.codewords as u128 {
        return Err(Error::cap("vectors of U2", count, caps.codewords as u128));
    }
    let candidates = m2.space().vectors();
    let mut b1: Vec<Vec<Elem>> = m1.space().basis().to_vec();
    b1.resize(rows, vec![0; n]);
    let mut search = Search {
        f,
        d1,
        d2,
        b1: &b1,
        candidates: &candidates,
        best: bounds.hi,
        best_rows: None,
        nodes: 0,
        limit: caps.search_nodes,
    };
    let mut chosen = Vec::with_capacity(rows);
    search.rec(&mut chosen, &[], &[], 0)?;
    let labels = numbered_labels("r", rows);
    let (value, a1, a2) = match search.best_rows {
        Some(a2_rows) => {
            let a1 = Matrix::new(f, labels.clone(), m1.ground().to_vec(), b1.clone())?;
            let a2 = Matrix::new(f, labels, m1.ground().to_vec(), a2_rows)?;
            (search.best, a1, a2)
        }
        None => (bounds.hi, bounds.a1, bounds.a2),
    };
    Ok(PertExact { value, a1, a2 })
}

struct Search<'a> {
    f: &'a Field,
    d1: usize,
    d2: usize,
    b1: &'a [Vec<Elem>],
    candidates: &'a [Vec<Elem>],
    best: usize,
    best_rows: Option<Vec<Vec<Elem>>>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// `diff` and `span` are echelon bases of the rows of `A1 - A2` and of
    /// `A2` chosen so far; `min_idx` enforces the multiset order on padding rows.
    fn rec(&mut self, chosen: &mut Vec<usize>, diff: &[Vec<Elem>], span: &[Vec<Elem>], min_idx: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::cap("perturbation search nodes", self.nodes, self.limit));
        }
        let i = chosen.len();
        let total = self.b1.len();
        if i == total {
            if span.len() == self.d2 && diff.len() < self.best {
                self.best = diff.len();
                self.best_rows = Some(chosen.iter().map(|&k| self.candidates[k].clone()).collect());
            }
            return Ok(());
        }
        if span.len() + (total - i) < self.d2 {
            return Ok(());
        }
        let start = if i >= self.d1 { min_idx } else { 0 };
        for k in start..self.candidates.len() {
            let a = &self.candidates[k];
            let row: Vec<Elem> = self.b1[i].iter().zip(a).map(|(&x, &y)| self.f.sub(x, y)).collect();
            let mut nd = diff.to_vec();
            nd.push(row);
            rref_in_place(self.f, &mut nd);
            if nd.len() >= self.best {
                continue;
            }
            let mut ns = span.to_vec();
            ns.push(a.clone());
            rref_in_place(self.f, &mut ns);
            chosen.push(k);
            let next_min = if i >= self.d1 { k } else { 0 };
            self.rec(chosen, &nd, &ns, next_min)?;
            chosen.pop();
            if self.best == 0 {
                break;
            }
        }
        Ok(())
    }
}

/// `M(A + P)` for the canonical generator `A` of `M`, with `rank(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbed {
    pub matroid: ReprMatroid,
    pub budget: usize,
}

pub fn apply_perturbation(m: &ReprMatroid, p: &Matrix) -> Result<Perturbed> {
    let a = m.generator();
    if p.row_labels() != a.row_labels() || p.col_labels() != a.col_labels() {
        return Err(Error::ShapeMismatch(format!(
            "perturbation must have rows {:?} and the ground set as columns",
            a.row_labels()
        )));
    }
    Ok(Perturbed {
        matroid: ReprMatroid::from_generator(&a.add(p)?),
        budget: p.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::linalg::count_subspaces;
    use std::collections::HashSet;

    fn gf2() -> Field {
        make_field(2, 1).unwrap()
    }

    fn m(rows: Vec<Vec<Elem>>, n: usize) -> ReprMatroid {
        ReprMatroid::from_generator(&Matrix::with_columns(&gf2(), numbered_labels("e", n), rows).unwrap())
    }

    #[test]
    fn projection_examples() {
        let caps = Caps::default();
        let a = m(vec![vec![1, 1, 0]], 3);
        let p = elementary_projections(&a, &caps).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0], a);
        assert_eq!(p[1].rank(), 0);
        let b = m(vec![vec![1, 0, 0], vec![0, 1, 1]], 3);
        assert_eq!(elementary_projections(&b, &caps).unwrap().len(), 4);
        let full = m(vec![vec![1, 0], vec![0, 1]], 2);
        assert_eq!(elementary_lifts(&full, &caps).unwrap(), vec![full.clone()]);
        let zero = m(vec![], 3);
        let lifts = elementary_lifts(&zero, &caps).unwrap();
        assert_eq!(lifts.len(), 8);
        for l in &lifts {
            assert!(elementary_projections(l, &caps).unwrap().contains(&zero));
        }
    }

    /// One-element extensions `W` of `F^(E + e)`: projections are `W / e`
    /// for `W \ e = M`, lifts are `W \ e` for `W / e = M`.
    #[test]
    fn characterization_matches_extension_definition() {
        let caps = Caps::default();
        let f = gf2();
        for n in 0..=3usize {
            let ground = numbered_labels("e", n);
            let mut ext = ground.clone();
            ext.push("z".into());
            let exts = all_subspaces(&f, &ext, &caps).unwrap();
            for u in all_subspaces(&f, &ground, &caps).unwrap() {
                let mm = ReprMatroid::from_subspace(u);
                let mut proj = HashSet::new();
                let mut lift = HashSet::new();
                for w in &exts {
                    let wm = ReprMatroid::from_subspace(w.clone());
                    if wm.delete(&["z"]).unwrap() == mm {
                        proj.insert(wm.contract(&["z"]).unwrap());
                    }
                    if wm.contract(&["z"]).unwrap() == mm {
                        lift.insert(wm.delete(&["z"]).unwrap());
                    }
                }
                let p: HashSet<_> = elementary_projections(&mm, &caps).unwrap().into_iter().collect();
                let l: HashSet<_> = elementary_lifts(&mm, &caps).unwrap().into_iter().collect();
                assert_eq!(p, proj);
                assert_eq!(l, lift);
            }
        }
    }

    #[test]
    fn dist_examples() {
        let caps = Caps::default();
        let a = m(vec![vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = m(vec![vec![1, 0, 0], vec![0, 0, 1]], 3);
        let c = m(vec![vec![1, 0, 0]], 3);
        assert_eq!(dist(&a, &a, &caps).unwrap(), 0);
        assert_eq!(dist(&a, &c, &caps).unwrap(), 1);
        assert_eq!(dist(&a, &b, &caps).unwrap(), 2);
    }

    #[test]
    fn dist_is_the_hasse_metric() {
        let caps = Caps::default();
        let f = gf2();
        let ground = numbered_labels("e", 4);
        let lattice = SubspaceLattice::new(&f, &ground, &caps).unwrap();
        assert_eq!(lattice.len() as u128, count_subspaces(4, 2));
        let all = lattice.spaces().to_vec();
        let table: Vec<Vec<usize>> = all.iter().map(|u| lattice.distances_from(u).unwrap()).collect();
        for (i, u) in all.iter().enumerate() {
            for (j, v) in all.iter().enumerate() {
                let inter = u.intersection(v).unwrap().dim();
                assert_eq!(table[i][j], u.dim() + v.dim() - 2 * inter);
                assert_eq!(table[i][j], table[j][i]);
                for k in 0..all.len() {
                    assert!(table[i][k] <= table[i][j] + table[j][k]);
                }
            }
        }
    }

    #[test]
    fn pert_examples() {
        let caps = Caps::default();
        let a = m(vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0]], 4);
        let b = pert_bounds(&a, &a).unwrap();
        assert_eq!((b.lo, b.hi), (0, 0));
        assert_eq!(pert_exact(&a, &a, &caps).unwrap().value, 0);
        let f = gf2();
        let gen = a.generator();
        let p = Matrix::new(&f, gen.row_labels().to_vec(), gen.col_labels().to_vec(), vec![vec![0, 0, 1, 1], vec![0, 0, 0, 0]]).unwrap();
        let pert = apply_perturbation(&a, &p).unwrap();
        assert_eq!(pert.budget, 1);
        let e = pert_exact(&a, &pert.matroid, &caps).unwrap();
        assert!(e.value <= 1);
        assert!(pert_bounds(&a, &pert.matroid).unwrap().lo <= 1);
        let d = e.a1.sub(&e.a2).unwrap().rank();
        assert_eq!(d, e.value);
        assert_eq!(ReprMatroid::from_generator(&e.a1), a);
        assert_eq!(ReprMatroid::from_generator(&e.a2), pert.matroid);
    }

    #[test]
    fn apply_perturbation_round_trip() {
        let f = gf2();
        let fano_cols: Vec<Vec<Elem>> = (1..8u32).map(|c| (0..3).map(|i| c >> i & 1).collect()).collect();
        let fano = ReprMatroid::from_generator(
            &Matrix::from_columns(&f, numbered_labels("r", 3), numbered_labels("p", 7), &fano_cols).unwrap(),
        );
        let g = fano.generator();
        let zero = Matrix::zeros(&f, g.row_labels().to_vec(), g.col_labels().to_vec()).unwrap();
        assert_eq!(apply_perturbation(&fano, &zero).unwrap().matroid, fano);
        let mut p = zero.clone();
        p.set("r0", "p6", 1).unwrap();
        let out = apply_perturbation(&fano, &p).unwrap();
        assert_eq!(out.matroid.len(), 7);
        assert!(pert_exact(&fano, &out.matroid, &Caps::default()).unwrap().value <= 1);
        let back = ReprMatroid::from_generator(&g.add(&p).unwrap().sub(&p).unwrap());
        assert_eq!(back, fano);
        let wrong = Matrix::zeros(&f, numbered_labels("r", 2), g.col_labels().to_vec()).unwrap();
        assert!(matches!(apply_perturbation(&fano, &wrong), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn exhaustive_gf2_cubed() {
        let caps = Caps::default();
        let f = gf2();
        let ground = numbered_labels("e", 3);
        let lattice = SubspaceLattice::new(&f, &ground, &caps).unwrap();
        let all: Vec<ReprMatroid> = lattice.spaces().iter().cloned().map(ReprMatroid::from_subspace).collect();
        for (i, a) in all.iter().enumerate() {
            let dists = lattice.distances_from(a.space()).unwrap();
            for (j, b) in all.iter().enumerate() {
                let bounds = pert_bounds(a, b).unwrap();
                let exact = pert_exact(a, b, &caps).unwrap();
                assert!(bounds.lo <= exact.value && exact.value <= bounds.hi);
                assert!(exact.value <= dists[j] && dists[j] <= 2 * exact.value, "{i} {j}");
            }
        }
    }
}
