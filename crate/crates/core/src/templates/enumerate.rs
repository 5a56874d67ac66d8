use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{complement, Template};
use crate::field::Elem;
use crate::linalg::{numbered_labels, rref_in_place, Matrix, Subspace};
use crate::matroid::{for_each_isomorphism, projectively_equivalent, Matroid, ReprMatroid};
use crate::{Caps, Error, Result};

pub(crate) enum Choice {
    Values(Vec<Elem>),
    /// The column is `e_row` plus column `source`, filled in after every
    /// other slot.
    Unit { row: usize, source: usize },
}

/// A block of cells and the values it ranges over.
pub(crate) struct Slot {
    pub cells: Vec<(usize, usize)>,
    pub choices: Vec<Choice>,
}

/// A conforming matrix shape: fixed entries in `base`, the rest in `slots`.
pub(crate) struct Layout {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub base: Vec<Vec<Elem>>,
    pub slots: Vec<Slot>,
}

impl Layout {
    fn count(&self) -> u128 {
        self.slots
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.choices.len() as u128))
    }

    fn assemble(&self, f: &crate::field::FiniteField, mut idx: u64) -> Vec<Vec<Elem>> {
        let mut m = self.base.clone();
        let mut units = Vec::new();
        for slot in &self.slots {
            let n = slot.choices.len() as u64;
            let k = (idx % n) as usize;
            idx /= n;
            match &slot.choices[k] {
                Choice::Values(v) => {
                    for (&(i, j), &x) in slot.cells.iter().zip(v) {
                        m[i][j] = x;
                    }
                }
                Choice::Unit { row, source } => units.push((slot.cells[0].1, *row, *source)),
            }
        }
        for (j, row, source) in units {
            for (i, r) in m.iter_mut().enumerate() {
                r[j] = f.add(r[source], (i == row) as Elem);
            }
        }
        m
    }
}

/// A conforming matrix `A` (rows `B`, columns `E - B`) and its matroid.
#[derive(Clone, Debug)]
pub struct Conforming {
    pub a: Matrix,
    pub matroid: ReprMatroid,
}

impl Template {
    /// Columns of `[I | A]` (rows first, then columns of `A`) to contract,
    /// and the ones kept, ordered by label.
    fn minor_plan(&self, layout: &Layout) -> (Vec<usize>, Vec<(String, usize)>) {
        let nb = layout.rows.len();
        let (contract, delete): (&[String], Vec<String>) = match self {
            Template::Subfield(t) => (t.c(), t.d().to_vec()),
            Template::Frame(t) => {
                let mut delete = complement(&layout.rows, &[t.x()]);
                delete.extend(t.y1().iter().cloned());
                (t.c(), delete)
            }
        };
        let index = |l: &String| match layout.rows.binary_search(l) {
            Ok(i) => i,
            Err(_) => nb + layout.cols.binary_search(l).expect("template column"),
        };
        let mut keep: Vec<(String, usize)> = layout
            .rows
            .iter()
            .chain(&layout.cols)
            .filter(|l| !contract.contains(l) && !delete.contains(l))
            .map(|l| (l.clone(), index(l)))
            .collect();
        keep.sort();
        (contract.iter().map(index).collect(), keep)
    }
    fn layout(&self, rows: &[String], cols: &[String], caps: &Caps) -> Result<Layout> {
        match self {
            Template::Subfield(t) => t.layout(rows, cols, caps),
            Template::Frame(t) => t.layout(rows, cols, caps),
        }
    }

    /// Elements of the matroid that come from the template rather than from
    /// free rows and columns.
    fn fixed_elements(&self) -> usize {
        match self {
            Template::Subfield(t) => t.y().len(),
            Template::Frame(t) => t.x().len() + t.y0().len(),
        }
    }
}

const BLOCK: u64 = 1 << 12;

/// Every matroid conforming to the template with `free_rows` rows and
/// `free_cols` columns beyond the template's own, labelled `b0, b1, ...` and
/// `n0, n1, ...`. Matrices giving the same matroid are reported once (the
/// first in enumeration order), sorted by the echelon basis of the matroid.
pub fn enumerate_conforming(t: &Template, free_rows: usize, free_cols: usize, caps: &Caps) -> Result<Vec<Conforming>> {
    let rows = numbered_labels("b", free_rows);
    let cols = numbered_labels("n", free_cols);
    let taken = t.labels();
    if let Some(l) = rows.iter().chain(&cols).find(|l| taken.contains(*l)) {
        return Err(Error::LabelClash(format!("template label `{l}` collides with a free label")));
    }
    let layout = t.layout(&rows, &cols, caps)?;
    let total = layout.count();
    if total > caps.enumeration as u128 {
        return Err(Error::cap("template enumeration", total, caps.enumeration));
    }
    let total = total as u64;
    let f = t.field();
    let (contract, keep) = t.minor_plan(&layout);
    let ground: Vec<String> = keep.iter().map(|(l, _)| l.clone()).collect();
    let keep: Vec<usize> = keep.into_iter().map(|(_, i)| i).collect();
    let nb = layout.rows.len();
    // echelon basis of M([I | A]) / contract restricted to keep
    let minor_basis = |a: &[Vec<Elem>]| -> Vec<Vec<Elem>> {
        let order: Vec<usize> = contract.iter().copied().chain(keep.iter().copied()).collect();
        let mut rows: Vec<Vec<Elem>> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                order
                    .iter()
                    .map(|&j| if j < nb { (j == i) as Elem } else { r[j - nb] })
                    .collect()
            })
            .collect();
        let pivots = rref_in_place(f, &mut rows);
        let mut rest: Vec<Vec<Elem>> = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= contract.len())
            .map(|(r, _)| r[contract.len()..].to_vec())
            .collect();
        rref_in_place(f, &mut rest);
        rest
    };
    let blocks: Vec<Vec<(Vec<Vec<Elem>>, Vec<Vec<Elem>>)>> = (0..total.div_ceil(BLOCK))
        .into_par_iter()
        .map(|blk| {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for idx in blk * BLOCK..((blk + 1) * BLOCK).min(total) {
                let entries = layout.assemble(f, idx);
                let basis = minor_basis(&entries);
                if seen.insert(basis.clone()) {
                    out.push((basis, entries));
                }
            }
            out
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out: Vec<(Vec<Vec<Elem>>, Vec<Vec<Elem>>)> =
        blocks.into_iter().flatten().filter(|(b, _)| seen.insert(b.clone())).collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out.into_iter()
        .map(|(basis, entries)| {
            let a = Matrix::new(f, layout.rows.clone(), layout.cols.clone(), entries)?;
            let space = Subspace::from_vectors(f, ground.clone(), basis)?;
            Ok(Conforming {
                a,
                matroid: ReprMatroid::from_subspace(space),
            })
        })
        .collect()
}

/// Evidence that a matroid lies in `M(Φ)`.
#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    /// The conforming matrix.
    #[serde(skip)]
    pub a: Matrix,
    /// `(element of M(A), element of M)` pairs of the isomorphism.
    pub map: Vec<(String, String)>,
}

/// Memoized enumerations for one template, for repeated membership queries.
pub struct ConformingClass {
    template: Template,
    caps: Caps,
    cache: HashMap<(usize, usize), Arc<Vec<Conforming>>>,
}

impl ConformingClass {
    pub fn new(template: Template, caps: Caps) -> Self {
        ConformingClass {
            template,
            caps,
            cache: HashMap::new(),
        }
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    /// See [`enumerate_conforming`].
    pub fn matrices(&mut self, free_rows: usize, free_cols: usize) -> Result<Arc<Vec<Conforming>>> {
        if let Some(v) = self.cache.get(&(free_rows, free_cols)) {
            return Ok(v.clone());
        }
        let v = Arc::new(enumerate_conforming(&self.template, free_rows, free_cols, &self.caps)?);
        self.cache.insert((free_rows, free_cols), v.clone());
        Ok(v)
    }

    /// Whether `M` is, after relabelling, projectively equivalent to some
    /// conforming matroid.
    ///
    /// Free rows range over `0..=r(M) + |C|` for subfield templates, which
    /// covers every case: `M([I | A])` has rank `|B|`, and deleting `D` and
    /// contracting `C` leave `r(M) >= |B - D| - |C|`. For frame templates the
    /// range is `0..=r(M) + |C| + |D|`, a search bound.
    pub fn member(&mut self, m: &ReprMatroid) -> Result<Option<Membership>> {
        if m.field() != self.template.field() {
            return Err(Error::FieldMismatch("matroid and template over different fields".into()));
        }
        self.caps.check_elements("membership", m.len(), self.caps.iso_elements)?;
        let fixed = self.template.fixed_elements();
        if m.len() < fixed {
            return Ok(None);
        }
        let (c, d) = match &self.template {
            Template::Subfield(t) => (t.c().len(), 0),
            Template::Frame(t) => (t.c().len(), t.d().len()),
        };
        let bound = m.rank() + c + d;
        let caps = self.caps.clone();
        for nb in 0..=bound {
            let ne = match self.template {
                Template::Subfield(_) if nb + fixed > m.len() => break,
                Template::Subfield(_) => m.len() - fixed - nb,
                Template::Frame(_) => m.len() - fixed,
            };
            for cand in self.matrices(nb, ne)?.iter() {
                if cand.matroid.rank() != m.rank() {
                    continue;
                }
                let mut found = None;
                for_each_isomorphism(&cand.matroid, m, &caps, |phi| {
                    let labels: Vec<String> = phi.iter().map(|&j| m.ground()[j].clone()).collect();
                    let moved = cand.matroid.relabel(&labels).expect("bijection onto the ground set");
                    if projectively_equivalent(&moved, m).expect("same field and ground set") {
                        found = Some(
                            cand.matroid
                                .ground()
                                .iter()
                                .cloned()
                                .zip(labels)
                                .collect::<Vec<_>>(),
                        );
                        true
                    } else {
                        false
                    }
                })?;
                if let Some(map) = found {
                    return Ok(Some(Membership { a: cand.a.clone(), map }));
                }
            }
        }
        Ok(None)
    }
}

/// One-off membership query; see [`ConformingClass::member`].
pub fn member_of(t: &Template, m: &ReprMatroid, caps: &Caps) -> Result<Option<Membership>> {
    ConformingClass::new(t.clone(), caps.clone()).member(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{graphic, pg, Graph};
    use crate::field::{make_field, MultSubgroup};
    use crate::matroid::{confined_to, isomorphic};
    use crate::templates::{FrameTemplate, SubfieldTemplate};

    #[test]
    fn empty_subfield_template_counts() {
        let f = make_field(2, 1).unwrap();
        let t = Template::Subfield(SubfieldTemplate::empty(&f, 1).unwrap());
        let all = enumerate_conforming(&t, 2, 2, &Caps::default()).unwrap();
        assert_eq!(all.len(), 16);
        for c in &all {
            assert!(t.check(&c.a).unwrap().conforms);
            assert_eq!(t.matroid_of(&c.a).unwrap(), c.matroid);
        }
        // over GF(4) with F0 = GF(2) only binary matrices appear
        let f4 = make_field(2, 2).unwrap();
        let t4 = Template::Subfield(SubfieldTemplate::empty(&f4, 1).unwrap());
        assert_eq!(enumerate_conforming(&t4, 1, 3, &Caps::default()).unwrap().len(), 8);
    }

    #[test]
    fn enumeration_respects_the_cap() {
        let f = make_field(2, 1).unwrap();
        let t = Template::Subfield(SubfieldTemplate::empty(&f, 1).unwrap());
        let caps = Caps {
            enumeration: 100,
            ..Caps::default()
        };
        let err = enumerate_conforming(&t, 3, 3, &caps).unwrap_err();
        assert!(err.is_cap_exceeded());
    }

    #[test]
    fn subfield_members_are_confined() {
        let f4 = make_field(2, 2).unwrap();
        let f2 = make_field(2, 1).unwrap();
        let t = Template::Subfield(SubfieldTemplate::empty(&f4, 1).unwrap());
        for c in enumerate_conforming(&t, 2, 3, &Caps::default()).unwrap() {
            assert!(confined_to(&c.matroid, &f2).unwrap().is_some());
        }
    }

    #[test]
    fn frame_matroids_over_trivial_gamma_are_graphic() {
        let f = make_field(3, 1).unwrap();
        let caps = Caps::default();
        let t = Template::Frame(FrameTemplate::trivial(&MultSubgroup::trivial(&f)).unwrap());
        let mut class = ConformingClass::new(t.clone(), caps.clone());
        // every graph with at most 4 edges on at most 5 vertices
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| ((a + 1)..5).map(move |b| (a, b))).collect();
        let mut graphs = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            if mask.count_ones() <= 4 {
                let edges: Vec<(usize, usize)> =
                    (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
                graphs.push(graphic(&Graph::from_edges(5, &edges).unwrap(), &f).unwrap());
            }
        }
        for g in graphs.iter().step_by(37) {
            assert!(class.member(g).unwrap().is_some(), "{g:?}");
        }
        for ne in 0..=4 {
            for nb in 0..=3 {
                for c in enumerate_conforming(&t, nb, ne, &caps).unwrap() {
                    assert!(t.check(&c.a).unwrap().conforms);
                    // loops and parallel columns are multigraph features; compare simplifications
                    let loopless = c.matroid.simplify();
                    let found = graphs
                        .iter()
                        .filter(|g| g.len() == loopless.len())
                        .any(|g| isomorphic(g, &loopless, &caps).unwrap());
                    assert!(found, "{:?}", c.a);
                }
            }
        }
    }

    #[test]
    fn fano_is_binary_but_not_graphic() {
        let f = make_field(2, 1).unwrap();
        let caps = Caps::default();
        let fano = pg(3, &f, &caps).unwrap();
        let frame = Template::Frame(FrameTemplate::trivial(&MultSubgroup::trivial(&f)).unwrap());
        let sub = Template::Subfield(SubfieldTemplate::empty(&f, 1).unwrap());
        assert!(member_of(&sub, &fano, &caps).unwrap().is_some());
        let k4 = graphic(&Graph::complete(4), &f).unwrap();
        let w = member_of(&frame, &k4, &caps).unwrap().unwrap();
        assert_eq!(w.map.len(), 6);
        assert!(member_of(&frame, &fano, &caps).unwrap().is_none());
    }
}
