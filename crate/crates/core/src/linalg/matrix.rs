use std::collections::HashMap;

use super::{numbered_labels, rref_in_place};
use crate::field::{Elem, Field};
use crate::{Error, Result};

/// A dense matrix over a finite field with labeled rows and columns.
///
/// Rows and columns carry no intrinsic order: entries are addressed by label,
/// and both label sets are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: Vec<String>,
    cols: Vec<String>,
    data: Vec<Elem>,
}

fn sort_permutation(labels: &[String]) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    perm.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    for w in perm.windows(2) {
        if labels[w[0]] == labels[w[1]] {
            return Err(Error::DuplicateLabel(labels[w[0]].clone()));
        }
    }
    Ok(perm)
}

impl Matrix {
    /// Builds a matrix from rows listed in the order of `rows`/`cols`; the
    /// stored form is re-sorted by label.
    pub fn new(field: &Field, rows: Vec<String>, cols: Vec<String>, entries: Vec<Vec<Elem>>) -> Result<Self> {
        if entries.len() != rows.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} row labels but {} rows of entries",
                rows.len(),
                entries.len()
            )));
        }
        for r in &entries {
            if r.len() != cols.len() {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} for {} column labels",
                    r.len(),
                    cols.len()
                )));
            }
            if let Some(&bad) = r.iter().find(|&&x| !field.contains(x)) {
                return Err(Error::BadElement {
                    code: bad,
                    order: field.order(),
                });
            }
        }
        let rp = sort_permutation(&rows)?;
        let cp = sort_permutation(&cols)?;
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in &rp {
            for &j in &cp {
                data.push(entries[i][j]);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rp.iter().map(|&i| rows[i].clone()).collect(),
            cols: cp.iter().map(|&j| cols[j].clone()).collect(),
            data,
        })
    }

    /// Rows labeled `r0, r1, ...` and columns `c0, c1, ...`.
    pub fn from_rows(field: &Field, entries: Vec<Vec<Elem>>) -> Result<Self> {
        let ncols = entries.first().map_or(0, Vec::len);
        Self::new(field, numbered_labels("r", entries.len()), numbered_labels("c", ncols), entries)
    }

    /// Rows labeled `r0, r1, ...`, columns labeled as given.
    pub fn with_columns(field: &Field, cols: Vec<String>, entries: Vec<Vec<Elem>>) -> Result<Self> {
        Self::new(field, numbered_labels("r", entries.len()), cols, entries)
    }

    /// Builds from column vectors (each of length `rows.len()`).
    pub fn from_columns(field: &Field, rows: Vec<String>, cols: Vec<String>, columns: &[Vec<Elem>]) -> Result<Self> {
        if columns.len() != cols.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} column labels but {} columns",
                cols.len(),
                columns.len()
            )));
        }
        if columns.iter().any(|c| c.len() != rows.len()) {
            return Err(Error::ShapeMismatch("column length differs from the row count".into()));
        }
        let entries = (0..rows.len()).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        Self::new(field, rows, cols, entries)
    }

    pub fn zeros(field: &Field, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        let entries = vec![vec![0; cols.len()]; rows.len()];
        Self::new(field, rows, cols, entries)
    }

    /// Identity matrix whose row and column label sets are both `labels`.
    pub fn identity(field: &Field, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let entries = (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect();
        Self::new(field, labels.clone(), labels, entries)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.rows.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.cols.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols.len() + j]
    }

    pub fn get(&self, row: &str, col: &str) -> Option<Elem> {
        Some(self.at(self.row_index(row)?, self.col_index(col)?))
    }

    pub fn set(&mut self, row: &str, col: &str, value: Elem) -> Result<()> {
        if !self.field.contains(value) {
            return Err(Error::BadElement {
                code: value,
                order: self.field.order(),
            });
        }
        let i = self.row_index(row).ok_or_else(|| Error::NotSubset(row.to_string()))?;
        let j = self.col_index(col).ok_or_else(|| Error::NotSubset(col.to_string()))?;
        let n = self.cols.len();
        self.data[i * n + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        let n = self.cols.len();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows.len()).map(|i| self.at(i, j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Elem>> {
        (0..self.rows.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns_vec(&self) -> Vec<Vec<Elem>> {
        (0..self.cols.len()).map(|j| self.column(j)).collect()
    }

    /// The submatrix on the given row and column labels.
    pub fn submatrix<R: AsRef<str>, C: AsRef<str>>(&self, rows: &[R], cols: &[C]) -> Result<Matrix> {
        let ri = rows
            .iter()
            .map(|r| self.row_index(r.as_ref()).ok_or_else(|| Error::NotSubset(r.as_ref().to_string())))
            .collect::<Result<Vec<_>>>()?;
        let ci = cols
            .iter()
            .map(|c| self.col_index(c.as_ref()).ok_or_else(|| Error::NotSubset(c.as_ref().to_string())))
            .collect::<Result<Vec<_>>>()?;
        let entries = ri.iter().map(|&i| ci.iter().map(|&j| self.at(i, j)).collect()).collect();
        Matrix::new(
            &self.field,
            rows.iter().map(|r| r.as_ref().to_string()).collect(),
            cols.iter().map(|c| c.as_ref().to_string()).collect(),
            entries,
        )
    }

    pub fn transpose(&self) -> Matrix {
        let entries = (0..self.ncols()).map(|j| self.column(j)).collect();
        Matrix::new(&self.field, self.cols.clone(), self.rows.clone(), entries).expect("labels already valid")
    }

    fn check_conformal(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrices over different fields".into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrices have different row or column labels".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_conformal(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_conformal(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Product `self * other`; the column labels of `self` must equal the row
    /// labels of `other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrices over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("inner labels differ".into()));
        }
        let f = &self.field;
        let entries = (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| (0..self.ncols()).fold(0, |acc, t| f.add(acc, f.mul(self.at(i, t), other.at(t, j)))))
                    .collect()
            })
            .collect();
        Matrix::new(f, self.rows.clone(), other.cols.clone(), entries)
    }

    /// Side-by-side concatenation `[self | other]` (same row labels, disjoint columns).
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrices over different fields".into()));
        }
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("row labels differ".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        let entries = (0..self.nrows())
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Matrix::new(&self.field, self.rows.clone(), cols, entries)
    }

    /// Renames columns; labels missing from `map` are kept.
    pub fn relabel_columns(&self, map: &HashMap<String, String>) -> Result<Matrix> {
        let cols = self.cols.iter().map(|c| map.get(c).cloned().unwrap_or_else(|| c.clone())).collect();
        Matrix::new(&self.field, self.rows.clone(), cols, self.rows_vec())
    }

    pub fn rank(&self) -> usize {
        super::rank_of_rows(&self.field, &self.rows_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same labels as the input; zero rows at the bottom.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<String>,
}

/// Reduced row echelon form with respect to the sorted column order.
pub fn rref(a: &Matrix) -> Rref {
    let mut rows = a.rows_vec();
    let pivots = rref_in_place(&a.field, &mut rows);
    let rank = rows.len();
    rows.resize(a.nrows(), vec![0; a.ncols()]);
    Rref {
        matrix: Matrix {
            field: a.field.clone(),
            rows: a.rows.clone(),
            cols: a.cols.clone(),
            data: rows.concat(),
        },
        rank,
        pivots: pivots.iter().map(|&j| a.cols[j].clone()).collect(),
    }
}
