use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::Matroid;
use crate::{Caps, Error, Result};

type RankFn = Arc<dyn Fn(&[usize]) -> usize + Send + Sync>;

/// A matroid given by a rank function on index sets.
#[derive(Clone)]
pub struct OracleMatroid {
    labels: Vec<String>,
    rank_fn: RankFn,
}

impl fmt::Debug for OracleMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleMatroid").field("labels", &self.labels).finish_non_exhaustive()
    }
}

/// Largest ground set on which [`OracleMatroid::check_axioms`] runs.
pub const AXIOM_CHECK_ELEMENTS: usize = 12;

impl OracleMatroid {
    /// Wraps a rank function. Element `i` is `labels[i]`; labels must be distinct.
    pub fn new(labels: Vec<String>, rank_fn: impl Fn(&[usize]) -> usize + Send + Sync + 'static) -> Result<Self> {
        check_distinct(&labels)?;
        Ok(OracleMatroid {
            labels,
            rank_fn: Arc::new(rank_fn),
        })
    }

    /// Like [`new`](Self::new), then verifies the rank axioms when the ground
    /// set is small enough to do so exhaustively.
    pub fn checked(labels: Vec<String>, rank_fn: impl Fn(&[usize]) -> usize + Send + Sync + 'static) -> Result<Self> {
        let m = Self::new(labels, rank_fn)?;
        if m.labels.len() <= AXIOM_CHECK_ELEMENTS {
            m.check_axioms()?;
        }
        Ok(m)
    }

    /// Normalization, unit increase and submodularity on every subset.
    /// Submodularity is checked in its local form
    /// `r(S+e) + r(S+f) >= r(S+e+f) + r(S)`, equivalent given unit increase.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.labels.len();
        if n > AXIOM_CHECK_ELEMENTS {
            return Err(Error::cap("ground set for axiom check", n as u64, AXIOM_CHECK_ELEMENTS as u64));
        }
        let r: Vec<usize> = (0..1u64 << n).map(|s| self.rank_mask(s)).collect();
        check_rank_vector(&r, n)
    }
}

fn check_distinct(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn check_rank_vector<T: Copy + Into<usize>>(r: &[T], n: usize) -> Result<()> {
    let r = |s: usize| -> usize { r[s].into() };
    if r(0) != 0 {
        return Err(Error::NotAMatroid("rank of the empty set is not 0".into()));
    }
    for s in 0..1usize << n {
        for e in (0..n).filter(|e| s >> e & 1 == 0) {
            let se = s | 1 << e;
            if r(se) != r(s) && r(se) != r(s) + 1 {
                return Err(Error::NotAMatroid(format!("unit increase fails at set {s:#b} plus element {e}")));
            }
            for f in ((e + 1)..n).filter(|f| s >> f & 1 == 0) {
                if r(se) + r(s | 1 << f) < r(se | 1 << f) + r(s) {
                    return Err(Error::NotAMatroid(format!(
                        "submodularity fails at set {s:#b} with elements {e}, {f}"
                    )));
                }
            }
        }
    }
    Ok(())
}

impl Matroid for OracleMatroid {
    fn labels(&self) -> &[String] {
        &self.labels
    }

    fn rank_indices(&self, idx: &[usize]) -> usize {
        (self.rank_fn)(idx)
    }
}

/// Ranks of all `2^n` subsets, indexed by bit mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    labels: Vec<String>,
    ranks: Vec<u8>,
}

impl RankTable {
    pub fn build<M: Matroid + ?Sized>(m: &M, caps: &Caps) -> Result<Self> {
        let n = m.len();
        caps.check_elements("ground set for a rank table", n, caps.subset_elements.min(30))?;
        let ranks = (0..1u64 << n).into_par_iter().map(|s| m.rank_mask(s) as u8).collect();
        Ok(RankTable {
            labels: m.labels().to_vec(),
            ranks,
        })
    }

    /// A table from explicit ranks, validated against the matroid axioms.
    pub fn from_ranks(labels: Vec<String>, ranks: Vec<u8>) -> Result<Self> {
        check_distinct(&labels)?;
        let n = labels.len();
        if n > 30 || ranks.len() != 1usize << n {
            return Err(Error::ShapeMismatch(format!("{} ranks for {} elements", ranks.len(), n)));
        }
        check_rank_vector(&ranks, n)?;
        Ok(RankTable { labels, ranks })
    }

    #[inline]
    pub fn rank_of_mask(&self, mask: usize) -> usize {
        self.ranks[mask] as usize
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }
}

impl Matroid for RankTable {
    fn labels(&self) -> &[String] {
        &self.labels
    }

    fn rank_indices(&self, idx: &[usize]) -> usize {
        self.ranks[idx.iter().fold(0usize, |m, &i| m | 1 << i)] as usize
    }

    fn rank_mask(&self, mask: u64) -> usize {
        self.ranks[mask as usize] as usize
    }

    fn rank(&self) -> usize {
        *self.ranks.last().unwrap_or(&0) as usize
    }
}
