use rayon::prelude::*;
use serde::Serialize;

use super::iso::{embed_search, host_ranks};
use super::{Matroid, RankTable};
use crate::{Caps, Result};

/// Disjoint sets with `M / contract \ delete` isomorphic to the target, and
/// the isomorphism as (target element, element of `M`) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    pub map: Vec<(String, String)>,
}

fn independent_sets_of_size<M: Matroid + ?Sized>(m: &M, rank: &dyn Fn(u64) -> usize, k: usize) -> Vec<u64> {
    let n = m.len();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, mask: u64, cur: &mut Vec<usize>, rank: &dyn Fn(u64) -> usize, out: &mut Vec<u64>) {
        if cur.len() == k {
            out.push(mask);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            let next = mask | 1 << i;
            // every prefix of an independent set is independent
            if rank(next) != cur.len() + 1 {
                continue;
            }
            cur.push(i);
            rec(i + 1, n, k, next, cur, rank, out);
            cur.pop();
        }
    }
    rec(0, n, k, 0, &mut cur, rank, &mut out);
    out
}

/// Searches for disjoint `C, D` with `M / C \ D` isomorphic to `N`.
///
/// Every minor can be written with `C` independent of size `r(M) - r(N)`, so
/// the search ranges over such `C` in lexicographic order and, for each,
/// looks for a rank-preserving injection of `N` into `M / C`. The first
/// witness in that order is returned regardless of the number of workers.
pub fn has_minor<M: Matroid + ?Sized, N: Matroid + ?Sized>(
    m: &M,
    n: &N,
    caps: &Caps,
) -> Result<Option<MinorWitness>> {
    caps.check_elements("ground set for minor search", m.len(), caps.minor_elements)?;
    caps.check_elements("minor ground set", n.len(), caps.subset_elements)?;
    let (rm, rn) = (m.rank(), n.rank());
    if rn > rm || n.len() + (rm - rn) > m.len() {
        return Ok(None);
    }
    let k = rm - rn;
    let host = host_ranks(m, caps)?;
    let small = RankTable::build(n, caps)?;
    let small_single: Vec<usize> = (0..n.len()).map(|i| small.rank_of_mask(1 << i)).collect();
    let cs = independent_sets_of_size(m, host.as_ref(), k);
    let found = cs.par_iter().find_map_first(|&cmask| {
        let r = |s: u64| host(s | cmask) - k;
        let mut phi_found = None;
        embed_search(
            &small,
            m.len(),
            &r,
            &|i, j| cmask >> j & 1 == 0 && small_single[i] == r(1 << j),
            &mut |phi| {
                phi_found = Some(phi.to_vec());
                true
            },
        );
        phi_found.map(|phi| (cmask, phi))
    });
    Ok(found.map(|(cmask, phi)| {
        let image: u64 = phi.iter().fold(0, |acc, &j| acc | 1 << j);
        let labels = m.labels();
        MinorWitness {
            contract: (0..m.len()).filter(|j| cmask >> j & 1 == 1).map(|j| labels[j].clone()).collect(),
            delete: (0..m.len())
                .filter(|j| (cmask | image) >> j & 1 == 0)
                .map(|j| labels[j].clone())
                .collect(),
            map: phi
                .iter()
                .enumerate()
                .map(|(i, &j)| (n.labels()[i].clone(), labels[j].clone()))
                .collect(),
        }
    }))
}
