//! Growth-rate functions: closed forms for the size of the largest simple
//! rank-`r` member of a minor-closed class, an exhaustive search for the
//! same quantity at small rank, and recognition of `(α, t)`-frame matroids.
//!
//! The closed forms are only eventually exact. Each value carries a
//! `pre_asymptotic` flag, set when the formula drops below `r`, which no
//! simple rank-`r` matroid can do.
//!
//! ```
//! use matrep::growth::{h_exponential, h_gamma_frame};
//!
//! assert_eq!(h_exponential(2, 0, 0, 4)?.value, 15);
//! assert_eq!(h_exponential(2, 1, 1, 3)?.value, 13);
//! assert_eq!(h_gamma_frame(2, 3), 9);
//! # Ok::<(), matrep::Error>(())
//! ```

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::pg;
use crate::field::{prime_power, Field};
use crate::matroid::{has_minor, Matroid, RankTable, ReprMatroid};
use crate::{Caps, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthValue {
    pub value: i128,
    pub pre_asymptotic: bool,
}

impl GrowthValue {
    fn new(value: i128, r: u32) -> Self {
        GrowthValue {
            value,
            pre_asymptotic: value < r as i128,
        }
    }
}

fn check_q(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::DomainError(format!("{q} is not a prime power")));
    }
    Ok(())
}

fn overflow() -> Error {
    Error::DomainError("value does not fit in 128 bits".into())
}

/// `(q^e - 1) / (q - 1)`, the number of points of `PG(e - 1, q)`.
fn points(q: u64, e: u32) -> Result<i128> {
    let qe = (q as i128).checked_pow(e).ok_or_else(overflow)?;
    Ok((qe - 1) / (q as i128 - 1))
}

/// `(q^(2k) - 1) / (q^2 - 1)`, the largest allowed defect.
pub fn max_defect(q: u64, k: u32) -> Result<i128> {
    check_q(q)?;
    let q2k = (q as i128).checked_pow(2 * k).ok_or_else(overflow)?;
    Ok((q2k - 1) / (q as i128 * q as i128 - 1))
}

/// `(q^(r+k) - 1) / (q - 1) - q d` for `0 <= d <= (q^(2k) - 1) / (q^2 - 1)`.
pub fn h_exponential(q: u64, k: u32, d: u128, r: u32) -> Result<GrowthValue> {
    let max = max_defect(q, k)?;
    if d as i128 > max || d > i128::MAX as u128 {
        return Err(Error::DefectOutOfRange { d, max: max as u128 });
    }
    let value = points(q, r.checked_add(k).ok_or_else(overflow)?)? - q as i128 * d as i128;
    Ok(GrowthValue::new(value, r))
}

/// `α C(r, 2) + r`, the size of the full rank-`r` `Γ`-frame matroid when
/// `α = |Γ|`.
pub fn h_gamma_frame(alpha: u64, r: u64) -> u128 {
    alpha as u128 * (r as u128 * r.saturating_sub(1) as u128 / 2) + r as u128
}

/// `(q^(r+1) - 1) / (q - 1) - q`: `h_exponential` with `k = 1, d = 1`.
pub fn h_nelson_two_field(q: u64, r: u32) -> Result<GrowthValue> {
    check_q(q)?;
    Ok(GrowthValue::new(points(q, r + 1)? - q as i128, r))
}

/// `(q^(r+n) - 1) / (q - 1) - q (q^(2n) - 1) / (q^2 - 1)` for `n >= 3`:
/// `h_exponential` with `k = n` and the largest defect.
pub fn h_nelson_pg_excluded(q: u64, n: u32, r: u32) -> Result<GrowthValue> {
    check_q(q)?;
    if n < 3 {
        return Err(Error::DomainError(format!("n = {n} must be at least 3")));
    }
    let value = points(q, r + n)? - q as i128 * max_defect(q, n)?;
    Ok(GrowthValue::new(value, r))
}

/// A largest simple rank-`r` restriction of `PG(r - 1, q)` with no
/// `forbidden` minor.
#[derive(Clone, Debug, Serialize)]
pub struct Extremal {
    pub value: usize,
    /// Point labels of the witness, as in [`pg`].
    pub points: Vec<String>,
    #[serde(skip)]
    pub witness: ReprMatroid,
}

/// Exhaustive search for the growth-rate value of the class of
/// `F`-represented matroids with no `forbidden` minor.
///
/// Every simple rank-`r` member is a restriction of `PG(r - 1, F)`, and the
/// projective group moves any basis to the standard one, so the search keeps
/// the unit vectors and branches on the other points in order, dropping a
/// point as soon as adding it creates the minor. Among sets of the largest
/// size the one with the least sorted point list is returned. `None` when
/// even the standard basis has the minor.
pub fn h_exhaustive(f: &Field, r: usize, forbidden: Option<&ReprMatroid>, caps: &Caps) -> Result<Option<Extremal>> {
    if r == 0 {
        return Err(Error::DomainError("rank must be at least 1".into()));
    }
    let geometry = pg(r, f, caps)?;
    let labels = geometry.ground().to_vec();
    let finish = |chosen: Vec<usize>| -> Result<Option<Extremal>> {
        let points: Vec<String> = chosen.iter().map(|&i| labels[i].clone()).collect();
        Ok(Some(Extremal {
            value: points.len(),
            witness: geometry.restrict(&points)?,
            points,
        }))
    };
    let Some(n) = forbidden else {
        return finish((0..labels.len()).collect());
    };
    let generator = geometry.generator();
    let is_unit = |j: usize| generator.column(j).iter().filter(|&&x| x != 0).count() == 1;
    let basis: Vec<usize> = (0..labels.len()).filter(|&j| is_unit(j)).collect();
    let others: Vec<usize> = (0..labels.len()).filter(|&j| !is_unit(j)).collect();
    let contains_minor = |set: &[usize]| -> Result<bool> {
        let mut s: Vec<usize> = set.to_vec();
        s.sort_unstable();
        let names: Vec<&str> = s.iter().map(|&i| labels[i].as_str()).collect();
        Ok(has_minor(&geometry.restrict(&names)?, n, caps)?.is_some())
    };
    if contains_minor(&basis)? {
        return Ok(None);
    }
    struct Search<'a> {
        others: &'a [usize],
        best: Vec<usize>,
        nodes: u64,
    }
    fn dfs(
        s: &mut Search,
        i: usize,
        current: &mut Vec<usize>,
        test: &dyn Fn(&[usize]) -> Result<bool>,
        limit: u64,
    ) -> Result<()> {
        s.nodes += 1;
        if s.nodes > limit {
            return Err(Error::cap("growth search nodes", s.nodes, limit));
        }
        if current.len() + (s.others.len() - i) <= s.best.len() {
            return Ok(());
        }
        if i == s.others.len() {
            s.best = current.clone();
            return Ok(());
        }
        current.push(s.others[i]);
        if !test(current)? {
            dfs(s, i + 1, current, test, limit)?;
        }
        current.pop();
        dfs(s, i + 1, current, test, limit)
    }
    // `current` and `best` both include the basis, so sizes compare directly
    let mut search = Search {
        others: &others,
        best: Vec::new(),
        nodes: 0,
    };
    let mut current = basis;
    dfs(&mut search, 0, &mut current, &contains_minor, caps.search_nodes)?;
    let mut chosen = search.best;
    chosen.sort_unstable();
    finish(chosen)
}

/// A basis `V ∪ T` certifying an `(α, t)`-frame matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaTWitness {
    pub v: Vec<String>,
    pub t: Vec<String>,
}

/// Searches bases `B` and splits `B = V ∪ T` with `|T| = t` such that
/// every fundamental circuit of an element outside `B` meets `V` in at most
/// two elements, and each pair `u, v` of `V` has at least `α` elements (or
/// exactly `α` with `exact`) in the span of `T ∪ {u, v}` but in neither the
/// span of `T ∪ {u}` nor that of `T ∪ {v}`.
pub fn is_alpha_t_frame<M: Matroid + ?Sized>(
    m: &M,
    alpha: usize,
    t: usize,
    exact: bool,
    caps: &Caps,
) -> Result<Option<AlphaTWitness>> {
    caps.check_elements("ground set for frame recognition", m.len(), caps.frame_elements)?;
    let table = RankTable::build(m, caps)?;
    let n = m.len();
    let r = m.rank();
    if t > r {
        return Ok(None);
    }
    let rk = |s: u64| table.rank_of_mask(s as usize);
    let bases: Vec<u64> = (0u64..1 << n)
        .filter(|&s| s.count_ones() as usize == r && rk(s) == r)
        .collect();
    let bits = |s: u64| (0..n).filter(move |&i| s >> i & 1 == 1);
    let check = |b: u64, tm: u64| -> bool {
        let vm = b & !tm;
        for e in (0..n).filter(|&e| b >> e & 1 == 0) {
            let hits = bits(vm).filter(|&x| rk((b & !(1 << x)) | (1 << e)) == r).count();
            if hits > 2 {
                return false;
            }
        }
        let vs: Vec<usize> = bits(vm).collect();
        for (i, &u) in vs.iter().enumerate() {
            for &w in &vs[i + 1..] {
                let (su, sw) = (tm | 1 << u, tm | 1 << w);
                let suw = su | sw;
                let (ru, rw, ruw) = (rk(su), rk(sw), rk(suw));
                let count = (0..n)
                    .filter(|&e| {
                        let x = 1u64 << e;
                        rk(suw | x) == ruw && rk(su | x) > ru && rk(sw | x) > rw
                    })
                    .count();
                if count < alpha || (exact && count != alpha) {
                    return false;
                }
            }
        }
        true
    };
    let found = bases.par_iter().find_map_first(|&b| {
        let members: Vec<usize> = bits(b).collect();
        let mut tm = None;
        for_each_combination(&members, t, &mut |tset| {
            let mask = tset.iter().fold(0u64, |acc, &i| acc | 1 << i);
            if check(b, mask) {
                tm = Some(mask);
                true
            } else {
                false
            }
        });
        tm.map(|tm| (b, tm))
    });
    Ok(found.map(|(b, tm)| {
        let name = |s: u64| bits(s).map(|i| m.labels()[i].clone()).collect::<Vec<_>>();
        AlphaTWitness {
            v: name(b & !tm),
            t: name(tm),
        }
    }))
}

fn for_each_combination(items: &[usize], k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if go(items, k, i + 1, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(items, k, 0, &mut Vec::new(), visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gamma_frame_full, graphic, Graph};
    use crate::field::{make_field, MultSubgroup};
    use crate::matroid::isomorphic;

    #[test]
    fn closed_forms() {
        assert_eq!(h_exponential(2, 0, 0, 4).unwrap(), GrowthValue { value: 15, pre_asymptotic: false });
        assert_eq!(h_exponential(2, 1, 1, 3).unwrap().value, 13);
        assert_eq!(h_exponential(3, 0, 0, 3).unwrap().value, 13);
        assert!(matches!(h_exponential(2, 1, 2, 3), Err(Error::DefectOutOfRange { d: 2, max: 1 })));
        assert!(matches!(h_exponential(6, 1, 0, 3), Err(Error::DomainError(_))));
        assert_eq!(h_gamma_frame(1, 3), 6);
        assert_eq!(h_gamma_frame(2, 3), 9);
        assert_eq!(h_nelson_two_field(2, 3).unwrap().value, 13);
        let v = h_nelson_pg_excluded(2, 3, 1).unwrap();
        assert_eq!(v, GrowthValue { value: -27, pre_asymptotic: true });
        assert!(h_nelson_pg_excluded(2, 2, 1).is_err());
        for q in [2u64, 3, 4, 5, 7] {
            for r in 1..8 {
                assert_eq!(h_nelson_two_field(q, r).unwrap(), h_exponential(q, 1, 1, r).unwrap());
                for n in 3..5 {
                    let d = max_defect(q, n).unwrap() as u128;
                    assert_eq!(h_nelson_pg_excluded(q, n, r).unwrap(), h_exponential(q, n, d, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn gamma_frame_count_matches_construction() {
        let caps = Caps::default();
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let f = crate::field::field_of_order(q).unwrap();
            for gamma in crate::field::mult_subgroups(&f) {
                for r in 1..=8u64 {
                    let m = gamma_frame_full(r as usize, &gamma, &caps).unwrap();
                    assert_eq!(m.len() as u128, h_gamma_frame(gamma.order() as u64, r));
                }
            }
        }
    }

    #[test]
    fn exhaustive_without_forbidden_minor_is_the_geometry() {
        let caps = Caps::default();
        for q in [2u32, 3] {
            let f = crate::field::field_of_order(q).unwrap();
            for r in 1..=4u32 {
                let e = h_exhaustive(&f, r as usize, None, &caps).unwrap().unwrap();
                assert_eq!(e.value as i128, h_exponential(q as u64, 0, 0, r).unwrap().value);
            }
        }
    }

    /// Largest rank-3 subset of the Fano points with no 6-element restriction
    /// isomorphic to `M(K4)`. In rank 3 an `M(K4)` minor can only be a
    /// restriction, so this is independent of the minor search.
    fn k4_free_oracle() -> usize {
        let caps = Caps::default();
        let f = make_field(2, 1).unwrap();
        let fano = pg(3, &f, &caps).unwrap();
        let k4 = graphic(&Graph::complete(4), &f).unwrap();
        let labels = fano.ground().to_vec();
        let mut best = 0;
        for mask in 0u32..128 {
            let s: Vec<&str> = (0..7).filter(|i| mask >> i & 1 == 1).map(|i| labels[i].as_str()).collect();
            let m = fano.restrict(&s).unwrap();
            if m.rank() != 3 {
                continue;
            }
            let has_k4 = (0..7).filter(|i| mask >> i & 1 == 1).any(|drop| {
                let t: Vec<&str> = s.iter().copied().filter(|&l| l != labels[drop]).collect();
                t.len() == 6 && isomorphic(&fano.restrict(&t).unwrap(), &k4, &caps).unwrap()
            }) || (s.len() == 6 && isomorphic(&m, &k4, &caps).unwrap());
            if !has_k4 {
                best = best.max(s.len());
            }
        }
        best
    }

    #[test]
    fn exhaustive_with_forbidden_minors() {
        let caps = Caps::default();
        let f = make_field(2, 1).unwrap();
        let fano = pg(3, &f, &caps).unwrap();
        let k4 = graphic(&Graph::complete(4), &f).unwrap();
        let no_fano = h_exhaustive(&f, 3, Some(&fano), &caps).unwrap().unwrap();
        assert_eq!(no_fano.value, 6);
        assert!(isomorphic(&no_fano.witness, &k4, &caps).unwrap());
        let oracle = k4_free_oracle();
        assert_eq!(oracle, 5);
        let no_k4 = h_exhaustive(&f, 3, Some(&k4), &caps).unwrap().unwrap();
        assert_eq!(no_k4.value, oracle);
        // M(K4) is a minor of the Fano plane, so forbidding it can only lower h
        assert!(no_k4.value <= no_fano.value);
        // graphic-witness class stays within C(r + 1, 2)
        assert!(no_fano.value <= 6);
        // a forbidden free matroid of rank 3 already sits in the basis
        let u33 = crate::constructions::uniform_repr(3, 3, &f).unwrap();
        assert!(h_exhaustive(&f, 3, Some(&u33), &caps).unwrap().is_none());
    }

    #[test]
    fn alpha_t_frames() {
        let caps = Caps::default();
        let f = make_field(3, 1).unwrap();
        let k4 = graphic(&Graph::complete(4), &f).unwrap();
        let w = is_alpha_t_frame(&k4, 1, 0, true, &caps).unwrap().unwrap();
        assert_eq!(w.v.len(), 3);
        assert!(w.t.is_empty());
        let k5 = graphic(&Graph::complete(5), &f).unwrap();
        assert!(is_alpha_t_frame(&k5, 1, 0, false, &caps).unwrap().is_some());
        assert!(is_alpha_t_frame(&k5, 2, 0, false, &caps).unwrap().is_none());
        let gamma = MultSubgroup::full(&f);
        let full = gamma_frame_full(3, &gamma, &caps).unwrap();
        assert!(is_alpha_t_frame(&full, 2, 0, true, &caps).unwrap().is_some());
        let free = crate::constructions::uniform_repr(3, 3, &f).unwrap();
        assert!(is_alpha_t_frame(&free, 1, 0, false, &caps).unwrap().is_none());
        assert!(is_alpha_t_frame(&free, 0, 0, false, &caps).unwrap().is_some());
    }
}
