use super::{Matroid, RankTable};
use crate::{Caps, Error, Result};

/// Depth-first search for injections `phi` from the small matroid's elements
/// into host elements such that `small.rank(S) == host_rank(phi(S))` for
/// every subset `S`. Calls `visit` on each complete injection; stops as soon
/// as `visit` returns true. Returns whether it was stopped.
pub(crate) fn embed_search(
    small: &RankTable,
    host_n: usize,
    host_rank: &(dyn Fn(u64) -> usize + Sync),
    allowed: &(dyn Fn(usize, usize) -> bool + Sync),
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = small.len();
    let mut img = vec![0u64; 1usize << n];
    let mut phi = Vec::with_capacity(n);
    rec(small, host_n, host_rank, allowed, visit, &mut img, &mut phi, 0)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    small: &RankTable,
    host_n: usize,
    host_rank: &(dyn Fn(u64) -> usize + Sync),
    allowed: &(dyn Fn(usize, usize) -> bool + Sync),
    visit: &mut dyn FnMut(&[usize]) -> bool,
    img: &mut [u64],
    phi: &mut Vec<usize>,
    used: u64,
) -> bool {
    let i = phi.len();
    if i == small.len() {
        return visit(phi);
    }
    let bit = 1usize << i;
    'cand: for j in 0..host_n {
        if used >> j & 1 == 1 || !allowed(i, j) {
            continue;
        }
        for s in 0..bit {
            let t = img[s] | 1 << j;
            img[s | bit] = t;
            if small.rank_of_mask(s | bit) != host_rank(t) {
                continue 'cand;
            }
        }
        phi.push(j);
        if rec(small, host_n, host_rank, allowed, visit, img, phi, used | 1 << j) {
            return true;
        }
        phi.pop();
    }
    false
}

/// Host rank function: a table lookup when the host is small, direct rank
/// evaluation otherwise.
pub(crate) fn host_ranks<'a, M: Matroid + ?Sized>(
    m: &'a M,
    caps: &Caps,
) -> Result<Box<dyn Fn(u64) -> usize + Sync + 'a>> {
    if m.len() > 64 {
        return Err(Error::cap("host ground set", m.len() as u64, 64u64));
    }
    if m.len() <= caps.subset_elements.min(22) {
        let t = RankTable::build(m, caps)?;
        Ok(Box::new(move |s| t.rank_of_mask(s as usize)))
    } else {
        Ok(Box::new(move |s| m.rank_mask(s)))
    }
}

/// An injection of `small` into `big` preserving the rank of every subset,
/// given as the image label of each element of `small`.
pub fn find_embedding<M: Matroid + ?Sized, N: Matroid + ?Sized>(
    small: &M,
    big: &N,
    caps: &Caps,
) -> Result<Option<Vec<String>>> {
    caps.check_elements("embedded matroid", small.len(), caps.subset_elements)?;
    if small.len() > big.len() || small.rank() > big.rank() {
        return Ok(None);
    }
    let t = RankTable::build(small, caps)?;
    let host = host_ranks(big, caps)?;
    let single: Vec<usize> = (0..big.len()).map(|j| host(1 << j)).collect();
    let mut found = None;
    embed_search(
        &t,
        big.len(),
        host.as_ref(),
        &|i, j| t.rank_of_mask(1 << i) == single[j],
        &mut |phi| {
            found = Some(phi.iter().map(|&j| big.labels()[j].clone()).collect());
            true
        },
    );
    Ok(found)
}

/// Per-element counts of `(|S|, r(S))` over the subsets containing it.
fn signatures(t: &RankTable) -> Vec<Vec<u32>> {
    let n = t.len();
    let width = n + 1;
    let mut sig = vec![vec![0u32; width * width]; n];
    for s in 1..1usize << n {
        let key = (s.count_ones() as usize) * width + t.rank_of_mask(s);
        let mut m = s;
        while m != 0 {
            sig[m.trailing_zeros() as usize][key] += 1;
            m &= m - 1;
        }
    }
    sig
}

fn prepare<M: Matroid + ?Sized, N: Matroid + ?Sized>(
    m1: &M,
    m2: &N,
    caps: &Caps,
) -> Result<Option<(RankTable, RankTable, Vec<Vec<u32>>, Vec<Vec<u32>>)>> {
    caps.check_elements("ground set for isomorphism", m1.len().max(m2.len()), caps.iso_elements)?;
    if m1.len() != m2.len() || m1.rank() != m2.rank() {
        return Ok(None);
    }
    let t1 = RankTable::build(m1, caps)?;
    let t2 = RankTable::build(m2, caps)?;
    let (s1, s2) = (signatures(&t1), signatures(&t2));
    let mut a = s1.clone();
    let mut b = s2.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    Ok(Some((t1, t2, s1, s2)))
}

/// Calls `visit` with every rank-preserving bijection (`phi[i]` is the index
/// in `m2` of element `i` of `m1`) until it returns true.
pub fn for_each_isomorphism<M: Matroid + ?Sized, N: Matroid + ?Sized>(
    m1: &M,
    m2: &N,
    caps: &Caps,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<bool> {
    let Some((t1, t2, s1, s2)) = prepare(m1, m2, caps)? else {
        return Ok(false);
    };
    Ok(embed_search(
        &t1,
        t2.len(),
        &|s| t2.rank_of_mask(s as usize),
        &|i, j| s1[i] == s2[j],
        &mut visit,
    ))
}

pub fn find_isomorphism<M: Matroid + ?Sized, N: Matroid + ?Sized>(
    m1: &M,
    m2: &N,
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    for_each_isomorphism(m1, m2, caps, |phi| {
        found = Some(phi.to_vec());
        true
    })?;
    Ok(found)
}

/// Whether some bijection of ground sets preserves the rank of every subset.
pub fn isomorphic<M: Matroid + ?Sized, N: Matroid + ?Sized>(m1: &M, m2: &N, caps: &Caps) -> Result<bool> {
    Ok(find_isomorphism(m1, m2, caps)?.is_some())
}
