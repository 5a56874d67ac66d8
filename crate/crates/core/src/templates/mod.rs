//! Subfield and frame templates: the block structures a matrix `A` over
//! `F^(B x (E-B))` must have to conform, the represented matroids built from
//! conforming matrices, and bounded enumeration and membership for the class
//! `M(Φ)` of matroids conforming to a template.
//!
//! Template labels are fixed symbols. A matrix is checked against a template
//! with its own row labels as `B` and column labels as `E - B`; the caller
//! chooses where template labels sit in the instance. Enumeration adds free
//! rows `b0, b1, ...` and free columns `n0, n1, ...` around the template.
//!
//! ```
//! use matrep::{make_field, Caps, Matrix};
//! use matrep::templates::{SubfieldTemplate, Template, ConformingClass};
//!
//! let f = make_field(2, 1)?;
//! let t = Template::Subfield(SubfieldTemplate::empty(&f, 1)?);
//! let mut class = ConformingClass::new(t, Caps::default());
//! assert_eq!(class.matrices(2, 2)?.len(), 16);
//! # Ok::<(), matrep::Error>(())
//! ```

mod enumerate;
mod frame;
mod subfield;

pub use enumerate::{enumerate_conforming, member_of, Conforming, ConformingClass, Membership};
pub use frame::{conform_frame, FrameConformance, FrameTemplate, GammaGroup};
pub use subfield::SubfieldTemplate;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Either kind of template.
#[derive(Clone, Debug)]
pub enum Template {
    Subfield(SubfieldTemplate),
    Frame(FrameTemplate),
}

impl Template {
    pub fn field(&self) -> &Field {
        match self {
            Template::Subfield(t) => t.field(),
            Template::Frame(t) => t.field(),
        }
    }

    /// Every label the template mentions.
    pub fn labels(&self) -> BTreeSet<String> {
        match self {
            Template::Subfield(t) => t.labels(),
            Template::Frame(t) => t.labels(),
        }
    }

    /// Whether `A` (rows `B`, columns `E - B`) conforms.
    pub fn check(&self, a: &Matrix) -> Result<Verdict> {
        match self {
            Template::Subfield(t) => t.conforms(a),
            Template::Frame(t) => Ok(t.conforms(a)?.verdict()),
        }
    }

    /// The matroid a conforming `A` stands for.
    pub fn matroid_of(&self, a: &Matrix) -> Result<crate::ReprMatroid> {
        match self {
            Template::Subfield(t) => t.matroid_of(a),
            Template::Frame(t) => t.matroid_of(a),
        }
    }
}

/// Outcome of a conformance check: the first violated clause, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub conforms: bool,
    pub violated: Option<&'static str>,
}

impl Verdict {
    pub(crate) fn ok() -> Self {
        Verdict {
            conforms: true,
            violated: None,
        }
    }

    pub(crate) fn fail(clause: &'static str) -> Self {
        Verdict {
            conforms: false,
            violated: Some(clause),
        }
    }
}

pub(crate) fn check_disjoint(sets: &[(&str, &[String])]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (name, set) in sets {
        for l in set.iter() {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidTemplate(format!("label `{l}` of {name} is used twice")));
            }
        }
    }
    Ok(())
}

pub(crate) fn sorted(parts: &[&[String]]) -> Vec<String> {
    let mut v: Vec<String> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    v.sort();
    v
}

/// Template rows must be row labels of `A` and template columns column labels.
pub(crate) fn check_embedding(a: &Matrix, rows: &[&[String]], cols: &[&[String]]) -> Result<()> {
    let (rl, cl) = (a.row_labels(), a.col_labels());
    if let Some(l) = rl.iter().find(|l| cl.binary_search(l).is_ok()) {
        return Err(Error::LabelClash(format!("`{l}` labels both a row and a column")));
    }
    for set in rows {
        if let Some(l) = set.iter().find(|l| rl.binary_search(l).is_err()) {
            return Err(Error::LabelClash(format!("template row `{l}` is not a row of the matrix")));
        }
    }
    for set in cols {
        if let Some(l) = set.iter().find(|l| cl.binary_search(l).is_err()) {
            return Err(Error::LabelClash(format!("template column `{l}` is not a column of the matrix")));
        }
    }
    Ok(())
}

/// `[I | A]` with rows `B` and columns `B ∪ (E - B)`.
pub(crate) fn augment(a: &Matrix) -> Result<Matrix> {
    let rows = a.row_labels().to_vec();
    let mut cols = rows.clone();
    cols.extend(a.col_labels().iter().cloned());
    let entries: Vec<Vec<Elem>> = (0..a.nrows())
        .map(|i| {
            let mut r: Vec<Elem> = (0..a.nrows()).map(|k| (k == i) as Elem).collect();
            r.extend_from_slice(a.row(i));
            r
        })
        .collect();
    Matrix::new(a.field(), rows, cols, entries)
}

/// Indices of `labels` within `all` (both sorted).
pub(crate) fn positions(all: &[String], labels: &[String]) -> Vec<usize> {
    labels
        .iter()
        .map(|l| all.binary_search(l).expect("label checked to be present"))
        .collect()
}

pub(crate) fn complement(all: &[String], remove: &[&[String]]) -> Vec<String> {
    all.iter()
        .filter(|l| !remove.iter().any(|set| set.contains(l)))
        .cloned()
        .collect()
}
