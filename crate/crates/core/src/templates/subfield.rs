use std::collections::BTreeSet;

use super::enumerate::{Choice, Layout, Slot};
use super::{augment, check_disjoint, check_embedding, complement, positions, sorted, Verdict};
use crate::field::{subfield_of_degree, Elem, Field, Subfield};
use crate::linalg::{Matrix, Subspace};
use crate::matroid::ReprMatroid;
use crate::{Caps, Error, Result};

/// A template `(C, D, Y, A1, A2, Λ, Δ)` over a subfield `F0` of `F`.
///
/// `A1` is indexed by `D x C` over `F`, `A2` by `D x Y` with entries in `F0`.
/// `Λ` is a subspace of `F0^D` and `Δ` a subspace of `F0^(C ∪ Y)`, both with
/// coordinates in sorted label order.
#[derive(Clone, Debug)]
pub struct SubfieldTemplate {
    field: Field,
    sub: Subfield,
    c: Vec<String>,
    d: Vec<String>,
    y: Vec<String>,
    a1: Matrix,
    a2: Matrix,
    lambda: Subspace,
    delta: Subspace,
}

impl SubfieldTemplate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: &Field,
        sub_degree: u32,
        mut c: Vec<String>,
        mut d: Vec<String>,
        mut y: Vec<String>,
        a1: Matrix,
        a2: Matrix,
        lambda: Subspace,
        delta: Subspace,
    ) -> Result<Self> {
        let sub = subfield_of_degree(field, sub_degree)?;
        c.sort();
        d.sort();
        y.sort();
        check_disjoint(&[("C", &c), ("D", &d), ("Y", &y)])?;
        let bad = |what: &str| Err(Error::InvalidTemplate(what.to_string()));
        if a1.field() != field || a1.row_labels() != d.as_slice() || a1.col_labels() != c.as_slice() {
            return bad("A1 must be a D x C matrix over F");
        }
        if a2.field() != field || a2.row_labels() != d.as_slice() || a2.col_labels() != y.as_slice() {
            return bad("A2 must be a D x Y matrix over F");
        }
        if a2.entries().iter().any(|&x| !sub.contains(x)) {
            return bad("A2 must have entries in the subfield");
        }
        if lambda.field() != &sub.field || lambda.ambient() != d.as_slice() {
            return bad("Lambda must be a subspace of F0^D");
        }
        if delta.field() != &sub.field || delta.ambient() != sorted(&[&c, &y]).as_slice() {
            return bad("Delta must be a subspace of F0^(C u Y)");
        }
        Ok(SubfieldTemplate {
            field: field.clone(),
            sub,
            c,
            d,
            y,
            a1,
            a2,
            lambda,
            delta,
        })
    }

    /// The template with every set empty, so every matrix over `F0` conforms.
    pub fn empty(field: &Field, sub_degree: u32) -> Result<Self> {
        let sub = subfield_of_degree(field, sub_degree)?;
        let z = Matrix::zeros(field, vec![], vec![])?;
        let s = Subspace::zero(&sub.field, vec![])?;
        Self::new(field, sub_degree, vec![], vec![], vec![], z.clone(), z, s.clone(), s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn subfield(&self) -> &Subfield {
        &self.sub
    }

    pub fn c(&self) -> &[String] {
        &self.c
    }

    pub fn d(&self) -> &[String] {
        &self.d
    }

    pub fn y(&self) -> &[String] {
        &self.y
    }

    pub fn a1(&self) -> &Matrix {
        &self.a1
    }

    pub fn a2(&self) -> &Matrix {
        &self.a2
    }

    pub fn lambda(&self) -> &Subspace {
        &self.lambda
    }

    pub fn delta(&self) -> &Subspace {
        &self.delta
    }

    pub fn labels(&self) -> BTreeSet<String> {
        self.c.iter().chain(&self.d).chain(&self.y).cloned().collect()
    }

    fn in_sub(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        v.iter().map(|&x| self.sub.project(x)).collect()
    }

    /// Checks the clauses in order and reports the first one violated.
    /// Template labels that are not rows and columns of `A` are an error.
    pub fn conforms(&self, a: &Matrix) -> Result<Verdict> {
        if a.field() != &self.field {
            return Err(Error::FieldMismatch("matrix and template over different fields".into()));
        }
        check_embedding(a, &[&self.d], &[&self.c, &self.y])?;
        let (rl, cl) = (a.row_labels(), a.col_labels());
        let di = positions(rl, &self.d);
        let ci = positions(cl, &self.c);
        let yi = positions(cl, &self.y);
        for (k, &i) in di.iter().enumerate() {
            for (l, &j) in ci.iter().enumerate() {
                if a.at(i, j) != self.a1.at(k, l) {
                    return Ok(Verdict::fail("clause-ii"));
                }
            }
            for (l, &j) in yi.iter().enumerate() {
                if a.at(i, j) != self.a2.at(k, l) {
                    return Ok(Verdict::fail("clause-ii"));
                }
            }
        }
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                if !(di.contains(&i) && ci.contains(&j)) && !self.sub.contains(a.at(i, j)) {
                    return Ok(Verdict::fail("clause-ii"));
                }
            }
        }
        let rest = positions(cl, &complement(cl, &[&self.c, &self.y]));
        for &j in &rest {
            let col: Vec<Elem> = di.iter().map(|&i| a.at(i, j)).collect();
            if !self.in_sub(&col).is_some_and(|v| self.lambda.contains(&v)) {
                return Ok(Verdict::fail("clause-iii"));
            }
        }
        let cy = positions(cl, &sorted(&[&self.c, &self.y]));
        for i in (0..a.nrows()).filter(|i| !di.contains(i)) {
            let row: Vec<Elem> = cy.iter().map(|&j| a.at(i, j)).collect();
            if !self.in_sub(&row).is_some_and(|v| self.delta.contains(&v)) {
                return Ok(Verdict::fail("clause-iv"));
            }
        }
        Ok(Verdict::ok())
    }

    /// `M([I | A]) / C \ D` for a conforming `A`.
    pub fn matroid_of(&self, a: &Matrix) -> Result<ReprMatroid> {
        let v = self.conforms(a)?;
        if let Some(clause) = v.violated {
            return Err(Error::NotConforming(clause.to_string()));
        }
        ReprMatroid::from_generator(&augment(a)?).minor(&self.c, &self.d)
    }

    /// Cells of a conforming matrix with `rows` free rows and `cols` free
    /// columns, and the choices each block of cells ranges over.
    pub(crate) fn layout(&self, rows: &[String], cols: &[String], caps: &Caps) -> Result<Layout> {
        let b = sorted(&[&self.d, rows]);
        let e = sorted(&[&self.c, &self.y, cols]);
        let mut base = vec![vec![0; e.len()]; b.len()];
        let di = positions(&b, &self.d);
        for (k, &i) in di.iter().enumerate() {
            for (l, &j) in positions(&e, &self.c).iter().enumerate() {
                base[i][j] = self.a1.at(k, l);
            }
            for (l, &j) in positions(&e, &self.y).iter().enumerate() {
                base[i][j] = self.a2.at(k, l);
            }
        }
        let embed = |v: Vec<Elem>| -> Vec<Elem> { v.into_iter().map(|x| self.sub.embed[x as usize]).collect() };
        let lambda = bounded_vectors(&self.lambda, caps)?;
        let delta = bounded_vectors(&self.delta, caps)?;
        let ri = positions(&b, rows);
        let mut slots = Vec::new();
        // a free column: a vector of Λ on D and anything over F0 on the free rows
        let q0 = self.sub.order() as u64;
        bounded_count(q0, rows.len(), caps)?;
        let tails = Subspace::full(&self.sub.field, rows.to_vec())?.vectors();
        for &j in &positions(&e, cols) {
            let mut choices = Vec::with_capacity(lambda.len() * tails.len());
            for l in &lambda {
                for t in &tails {
                    let mut v = vec![0; b.len()];
                    for (&i, &x) in di.iter().zip(l) {
                        v[i] = x;
                    }
                    for (&i, &x) in ri.iter().zip(t) {
                        v[i] = x;
                    }
                    choices.push(Choice::Values(embed(v)));
                }
            }
            slots.push(Slot {
                cells: (0..b.len()).map(|i| (i, j)).collect(),
                choices,
            });
        }
        let cy = positions(&e, &sorted(&[&self.c, &self.y]));
        for &i in &ri {
            slots.push(Slot {
                cells: cy.iter().map(|&j| (i, j)).collect(),
                choices: delta.iter().map(|v| Choice::Values(embed(v.clone()))).collect(),
            });
        }
        Ok(Layout { rows: b, cols: e, base, slots })
    }
}

fn bounded_count(q: u64, dim: usize, caps: &Caps) -> Result<u64> {
    let n = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if n > caps.enumeration as u128 {
        return Err(Error::cap("template enumeration", n, caps.enumeration));
    }
    Ok(n as u64)
}

fn bounded_vectors(s: &Subspace, caps: &Caps) -> Result<Vec<Vec<Elem>>> {
    bounded_count(s.field().order() as u64, s.dim(), caps)?;
    Ok(s.vectors())
}
