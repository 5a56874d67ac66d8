use rayon::prelude::*;

use super::{Matroid, RankTable, Separation};
use crate::{Caps, Result};

/// Vertical connectivity: the largest `k` such that no partition `(X, Y)`
/// with both sides non-spanning has `r(X) + r(Y) - r(M) < k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerticalConnectivity {
    /// `k` together with a vertical separation attaining `k - 1`.
    Finite { k: usize, separation: Separation },
    /// No partition has two non-spanning sides.
    Unbounded,
}

impl VerticalConnectivity {
    pub fn value(&self) -> Option<usize> {
        match self {
            VerticalConnectivity::Finite { k, .. } => Some(*k),
            VerticalConnectivity::Unbounded => None,
        }
    }
}

pub fn vertical_connectivity<M: Matroid + ?Sized>(m: &M, caps: &Caps) -> Result<VerticalConnectivity> {
    let n = m.len();
    caps.check_elements("ground set for vertical connectivity", n, caps.vconn_elements)?;
    if n < 2 {
        return Ok(VerticalConnectivity::Unbounded);
    }
    let t = RankTable::build(m, caps)?;
    let full = (1usize << n) - 1;
    let r = t.rank_of_mask(full);
    // X always contains element 0, so each partition is seen once
    let best = (0..1usize << (n - 1))
        .into_par_iter()
        .filter_map(|rest| {
            let x = rest << 1 | 1;
            let y = full & !x;
            let (rx, ry) = (t.rank_of_mask(x), t.rank_of_mask(y));
            (rx < r && ry < r).then_some((rx + ry - r, x))
        })
        .min();
    Ok(match best {
        None => VerticalConnectivity::Unbounded,
        Some((lambda, x)) => {
            let side = |keep: bool| {
                (0..n)
                    .filter(|i| (x >> i & 1 == 1) == keep)
                    .map(|i| m.labels()[i].clone())
                    .collect()
            };
            VerticalConnectivity::Finite {
                k: lambda + 1,
                separation: Separation {
                    x: side(true),
                    y: side(false),
                },
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::numbered_labels;
    use crate::matroid::OracleMatroid;

    fn u(m: usize, n: usize) -> OracleMatroid {
        OracleMatroid::new(numbered_labels("u", n), move |s| s.len().min(m)).unwrap()
    }

    #[test]
    fn examples() {
        let caps = Caps::default();
        let free2 = u(2, 2);
        let v = vertical_connectivity(&free2, &caps).unwrap();
        assert_eq!(v.value(), Some(1));
        assert_eq!(vertical_connectivity(&u(2, 3), &caps).unwrap(), VerticalConnectivity::Unbounded);
        assert_eq!(vertical_connectivity(&u(3, 4), &caps).unwrap().value(), Some(2));
    }

    #[test]
    fn cap() {
        assert!(vertical_connectivity(&u(3, 17), &Caps::default()).unwrap_err().is_cap_exceeded());
    }
}
