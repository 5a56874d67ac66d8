//! Enumeration and search limits.
//!
//! Almost every interesting question in this crate is exponential in the size
//! of the ground set or the dimension of a subspace. Each search checks its
//! input against one of these limits before starting and fails with
//! [`Error::CapExceeded`](crate::Error::CapExceeded) instead of running away.

use serde::{Deserialize, Serialize};

/// Limits shared by the exhaustive routines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest field order accepted by [`make_field`](crate::make_field).
    pub field_order: u32,
    /// Largest `q^dim` for codeword enumeration (minimum weight, girth, cogirth).
    pub codewords: u64,
    /// Largest ground set for subset enumeration (rank tables, circuit search).
    pub subset_elements: usize,
    /// Largest ground set for isomorphism and embedding search.
    pub iso_elements: usize,
    /// Largest ground set for minor search.
    pub minor_elements: usize,
    /// Largest ground set for vertical connectivity.
    pub vconn_elements: usize,
    /// Largest number of subspaces in a lattice walked by `dist`.
    pub subspaces: u64,
    /// Node budget for branch-and-bound searches.
    pub search_nodes: u64,
    /// Largest number of matrices produced by template enumeration.
    pub enumeration: u64,
    /// Largest number of points in a constructed geometry.
    pub points: u64,
    /// Largest ground set for (alpha, t)-frame recognition.
    pub frame_elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_order: 1 << 16,
            codewords: 1 << 24,
            subset_elements: 22,
            iso_elements: 12,
            minor_elements: 14,
            vconn_elements: 16,
            subspaces: 1 << 16,
            search_nodes: 1 << 28,
            enumeration: 1 << 22,
            points: 1 << 20,
            frame_elements: 12,
        }
    }
}

impl Caps {
    pub(crate) fn check_elements(&self, what: &'static str, n: usize, limit: usize) -> crate::Result<()> {
        if n > limit {
            Err(crate::Error::cap(what, n as u64, limit as u64))
        } else {
            Ok(())
        }
    }
}
