use std::collections::VecDeque;

use super::ReprMatroid;
use crate::field::{subfield_matching, Elem, FiniteField};
use crate::linalg::{numbered_labels, Matrix};
use crate::{Error, Result};

/// Solves `value[b] = step(value[a], w)` for every edge `(a, b, w)` by
/// propagation from an arbitrary root in each component. `None` if the
/// constraints are inconsistent.
fn propagate<T: Copy + Eq>(
    n: usize,
    edges: &[(usize, usize, T)],
    root: T,
    step: impl Fn(T, T) -> T,
    back: impl Fn(T, T) -> T,
) -> Option<Vec<T>> {
    let mut adj: Vec<Vec<(usize, T, bool)>> = vec![Vec::new(); n];
    for &(a, b, w) in edges {
        adj[a].push((b, w, true));
        adj[b].push((a, w, false));
    }
    let mut val: Vec<Option<T>> = vec![None; n];
    for s in 0..n {
        if val[s].is_some() {
            continue;
        }
        val[s] = Some(root);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            let va = val[a].unwrap();
            for &(b, w, forward) in &adj[a] {
                let vb = if forward { step(va, w) } else { back(va, w) };
                match val[b] {
                    None => {
                        val[b] = Some(vb);
                        queue.push_back(b);
                    }
                    Some(x) if x != vb => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(val.into_iter().map(Option::unwrap).collect())
}

fn check_same_ground(m1: &ReprMatroid, m2: &ReprMatroid) -> Result<()> {
    if m1.field() != m2.field() {
        return Err(Error::FieldMismatch("matroids over different fields".into()));
    }
    if m1.ground() != m2.ground() {
        return Err(Error::LabelMismatch("ground sets differ".into()));
    }
    Ok(())
}

/// A nonsingular diagonal `D` (as its diagonal) with `U2 = U1 D`, if any.
///
/// With both subspaces in reduced echelon form, `U1 D = U2` forces equal
/// pivots and zero patterns and `d_j = d_p * B2[i][j] / B1[i][j]` for each
/// nonzero entry in row `i` with pivot `p`. These equations are solved
/// exactly by propagation, so no search over scalings is needed.
pub fn projective_scaling(m1: &ReprMatroid, m2: &ReprMatroid) -> Result<Option<Vec<Elem>>> {
    check_same_ground(m1, m2)?;
    let (s1, s2) = (m1.space(), m2.space());
    if s1.pivots() != s2.pivots() {
        return Ok(None);
    }
    let f = m1.field();
    let n = m1.ground().len();
    let mut edges = Vec::new();
    for ((b1, b2), &p) in s1.basis().iter().zip(s2.basis()).zip(s1.pivots()) {
        for j in 0..n {
            match (b1[j], b2[j]) {
                (0, 0) => {}
                (0, _) | (_, 0) => return Ok(None),
                (x, y) if j != p => edges.push((p, j, f.div(y, x).unwrap())),
                _ => {}
            }
        }
    }
    Ok(propagate(n, &edges, 1, |a, w| f.mul(a, w), |b, w| f.div(b, w).unwrap()))
}

/// Whether `U2 = {x D : x in U1}` for some nonsingular diagonal `D`.
pub fn projectively_equivalent(m1: &ReprMatroid, m2: &ReprMatroid) -> Result<bool> {
    Ok(projective_scaling(m1, m2)?.is_some())
}

/// A generator matrix over `sub` projectively equivalent to a generator of
/// `M`, if one exists. Entries are codes of `sub`.
///
/// Scaling the columns of the echelon basis by `d_j` gives entries
/// `B[i][j] d_j / d_p`, which lie in the subfield exactly when
/// `log d_j - log d_p + log B[i][j]` vanishes modulo `(q - 1) / (q0 - 1)`.
/// Those congruences are solved by propagation as in [`projective_scaling`].
/// Every projectively equivalent matrix has the same echelon form up to the
/// scaling, so this decides confinement.
pub fn confined_to(m: &ReprMatroid, sub: &FiniteField) -> Result<Option<Matrix>> {
    let f = m.field();
    let sf = subfield_matching(f, sub)?;
    let modulus = (f.order() - 1) / (sf.order() - 1);
    let n = m.ground().len();
    let basis = m.space().basis();
    let mut edges = Vec::new();
    for (row, &p) in basis.iter().zip(m.space().pivots()) {
        for (j, &x) in row.iter().enumerate() {
            if x != 0 && j != p {
                let l = f.log(x).unwrap() % modulus;
                edges.push((p, j, (modulus - l) % modulus));
            }
        }
    }
    let Some(logs) = propagate(
        n,
        &edges,
        0u32,
        |a, w| (a + w) % modulus,
        |b, w| (b + modulus - w) % modulus,
    ) else {
        return Ok(None);
    };
    let d: Vec<Elem> = logs.iter().map(|&l| f.exp(l as u64)).collect();
    let rows: Vec<Vec<Elem>> = basis
        .iter()
        .zip(m.space().pivots())
        .map(|(row, &p)| {
            let inv = f.inv(d[p]).unwrap();
            row.iter()
                .zip(&d)
                .map(|(&x, &dj)| {
                    sf.project(f.mul(f.mul(x, dj), inv))
                        .expect("propagated scaling lands in the subfield")
                })
                .collect()
        })
        .collect();
    Ok(Some(Matrix::new(
        &sf.field,
        numbered_labels("r", rows.len()),
        m.ground().to_vec(),
        rows,
    )?))
}
