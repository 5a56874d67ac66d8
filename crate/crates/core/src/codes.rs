//! Represented matroids read as linear codes: the row space of a generator is
//! the code, so length is `|E|`, dimension is `r(M)` and distance is the
//! cogirth. Also the binary entropy threshold, the graphic threshold formula,
//! the cut-code degree bound and a Monte Carlo estimate of maximum-likelihood
//! decoding error over a binary symmetric channel.
//!
//! ```
//! use matrep::codes::{shannon_f, theta_binary};
//!
//! let p = theta_binary(0.5)?;
//! assert!((p - 0.110).abs() < 1e-3);
//! assert!((shannon_f(p)? - 0.5).abs() < 1e-9);
//! # Ok::<(), matrep::Error>(())
//! ```

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{graphic, Graph};
use crate::linalg::min_weight;
use crate::matroid::{Matroid, ReprMatroid};
use crate::{make_field, Caps, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    /// `None` for the zero code.
    pub d: Option<usize>,
    pub rate: f64,
    pub rel_dist: Option<f64>,
}

pub fn code_params(m: &ReprMatroid, caps: &Caps) -> Result<CodeParams> {
    let n = m.len();
    if n == 0 {
        return Err(Error::EmptyCode);
    }
    let k = m.rank();
    let d = min_weight(m.space(), caps)?.map(|w| w.weight);
    Ok(CodeParams {
        n,
        k,
        d,
        rate: k as f64 / n as f64,
        rel_dist: d.map(|d| d as f64 / n as f64),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub index: usize,
    pub params: CodeParams,
    pub good: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub rows: Vec<ProbeRow>,
    /// Largest `ε` with `rate >= ε` and `rel_dist >= ε` for every code seen.
    pub sustained: f64,
}

/// Checks `rate >= eps` and `rel_dist >= eps` for each code of a family.
pub fn good_family_probe<I>(family: I, eps: f64, caps: &Caps) -> Result<Probe>
where
    I: IntoIterator<Item = ReprMatroid>,
{
    let mut rows = Vec::new();
    let mut sustained = f64::INFINITY;
    for (index, m) in family.into_iter().enumerate() {
        let params = code_params(&m, caps)?;
        let rel = params.rel_dist.unwrap_or(0.0);
        sustained = sustained.min(params.rate.min(rel));
        rows.push(ProbeRow {
            index,
            good: params.rate >= eps && rel >= eps,
            params,
        });
    }
    Ok(Probe {
        rows,
        sustained: if sustained.is_finite() { sustained } else { 0.0 },
    })
}

/// `f(p) = 1 + p log2 p + (1 - p) log2 (1 - p)` on `[0, 1/2]`, with
/// `f(0) = 1`.
pub fn shannon_f(p: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::DomainError(format!("p = {p} is outside [0, 1/2]")));
    }
    let h = |x: f64| if x == 0.0 { 0.0 } else { x * x.log2() };
    Ok(1.0 + h(p) + h(1.0 - p))
}

/// Absolute tolerance of [`theta_binary`].
pub const THETA_TOLERANCE: f64 = 1e-12;

/// `f^{-1}(R)` on `(0, 1/2)` by bisection.
pub fn theta_binary(rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::DomainError(format!("R = {rate} is outside (0, 1)")));
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    // f is decreasing: f(lo) > R > f(hi)
    while hi - lo > THETA_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if shannon_f(mid)? > rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(1 - sqrt R)^2 / (2 (1 + R))`. The formula is a conjecture, not a
/// theorem; see [`THETA_GRAPHIC_CONJECTURAL`].
pub fn theta_graphic(rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::DomainError(format!("R = {rate} is outside (0, 1)")));
    }
    let s = 1.0 - rate.sqrt();
    Ok(s * s / (2.0 * (1.0 + rate)))
}

/// Whether [`theta_graphic`] is only conjectured to be the threshold.
pub const THETA_GRAPHIC_CONJECTURAL: bool = true;

/// [`theta_graphic`] in exact arithmetic, when `R` is the square of a
/// rational; `Ok(None)` otherwise.
pub fn theta_graphic_exact(rate: Rational64) -> Result<Option<Rational64>> {
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    if rate <= zero || rate >= one {
        return Err(Error::DomainError(format!("R = {rate} is outside (0, 1)")));
    }
    let isqrt = |x: i64| -> Option<i64> {
        let r = (x as f64).sqrt().round() as i64;
        (r - 1..=r + 1).find(|&s| s >= 0 && s * s == x)
    };
    let (Some(a), Some(b)) = (isqrt(*rate.numer()), isqrt(*rate.denom())) else {
        return Ok(None);
    };
    let s = one - Rational64::new(a, b);
    Ok(Some(s * s / (Rational64::from_integer(2) * (one + rate))))
}

/// One row of the threshold table.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdRow {
    pub rate: f64,
    pub theta_binary: f64,
    pub theta_graphic: f64,
    pub theta_graphic_conjectural: bool,
}

pub fn threshold_row(rate: f64) -> Result<ThresholdRow> {
    Ok(ThresholdRow {
        rate,
        theta_binary: theta_binary(rate)?,
        theta_graphic: theta_graphic(rate)?,
        theta_graphic_conjectural: THETA_GRAPHIC_CONJECTURAL,
    })
}

/// Distance of the cut code of a graph against its degree bounds.
///
/// The rate hypothesis can be read with the cut code's own rate
/// `(|V| - 1) / |E|` or with the cycle-code rate `(|E| - |V| + 1) / |E|`,
/// and the degree bound as `1 / (2 (1 - R))` or `2 / (1 - R)`. All four are
/// reported; `holds` is the conclusion `d <= min degree <= 2|E| / |V|`,
/// which does not depend on the reading.
#[derive(Clone, Debug, Serialize)]
pub struct CutCodeReport {
    pub vertices: usize,
    pub edges: usize,
    pub distance: usize,
    pub min_degree: usize,
    pub average_degree: f64,
    pub cut_rate: f64,
    pub cycle_rate: f64,
    pub delta_stated: f64,
    pub delta_corrected: f64,
    pub holds: bool,
}

pub fn cut_code_distance_bound(g: &Graph, rate: f64, caps: &Caps) -> Result<CutCodeReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::DomainError(format!("R = {rate} is outside (0, 1)")));
    }
    let (nv, ne) = (g.num_vertices(), g.num_edges());
    if ne == 0 {
        return Err(Error::EmptyCode);
    }
    let m = graphic(g, &make_field(2, 1)?)?;
    let distance = min_weight(m.space(), caps)?.map_or(0, |w| w.weight);
    let min_degree = g.min_degree().unwrap_or(0);
    let average_degree = 2.0 * ne as f64 / nv as f64;
    Ok(CutCodeReport {
        vertices: nv,
        edges: ne,
        distance,
        min_degree,
        average_degree,
        cut_rate: (nv - 1) as f64 / ne as f64,
        cycle_rate: (ne + 1 - nv) as f64 / ne as f64,
        delta_stated: 1.0 / (2.0 * (1.0 - rate)),
        delta_corrected: 2.0 / (1.0 - rate),
        holds: distance <= min_degree && min_degree as f64 <= average_degree,
    })
}

/// Monte Carlo estimate of block error under nearest-codeword decoding.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MlEstimate {
    pub p: f64,
    /// Block errors, with ties among `T` nearest codewords counted as
    /// `(T - 1) / T`.
    pub errors: f64,
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Wilson score interval for `successes` out of `trials` at `z` standard
/// deviations.
pub fn wilson(successes: f64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let ph = successes / n;
    let z2 = z * z;
    let centre = (ph + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (ph * (1.0 - ph) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Trials per random stream; streams are keyed by `(seed, block)` so the
/// estimate does not depend on how blocks are spread over threads.
const TRIAL_BLOCK: u64 = 1 << 14;

fn binary_codewords(code: &ReprMatroid, caps: &Caps) -> Result<Vec<u64>> {
    if code.field().order() != 2 {
        return Err(Error::NotBinary(code.field().order()));
    }
    let n = code.len();
    if n > 64 {
        return Err(Error::cap("binary code length", n as u64, 64u64));
    }
    let k = code.rank();
    let count = 1u128 << k;
    if count > caps.codewords as u128 {
        return Err(Error::cap("codewords", count, caps.codewords));
    }
    let rows: Vec<u64> = code
        .space()
        .basis()
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &x)| acc | ((x as u64) << j)))
        .collect();
    Ok((0..count as u64)
        .map(|idx| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| idx >> i & 1 == 1)
                .fold(0, |acc, (_, &r)| acc ^ r)
        })
        .collect())
}

/// Error contribution of decoding `received` when `sent` was transmitted.
fn decode_error(codewords: &[u64], sent: u64, received: u64) -> f64 {
    let mut best = u32::MAX;
    let mut ties = 0u32;
    let mut sent_is_nearest = false;
    for &c in codewords {
        let w = (c ^ received).count_ones();
        if w < best {
            best = w;
            ties = 1;
            sent_is_nearest = c == sent;
        } else if w == best {
            ties += 1;
            sent_is_nearest |= c == sent;
        }
    }
    if sent_is_nearest {
        (ties - 1) as f64 / ties as f64
    } else {
        1.0
    }
}

fn simulate(code: &ReprMatroid, p: f64, seed: u64, trials: u64, random_codeword: bool, caps: &Caps) -> Result<MlEstimate> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::DomainError(format!("p = {p} is outside [0, 1/2]")));
    }
    let codewords = binary_codewords(code, caps)?;
    let n = code.len();
    let blocks = trials.div_ceil(TRIAL_BLOCK);
    let per_block: Vec<f64> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = TRIAL_BLOCK.min(trials - b * TRIAL_BLOCK);
            let mut errors = 0.0;
            for _ in 0..count {
                let mut e = 0u64;
                for j in 0..n {
                    if rng.gen::<f64>() < p {
                        e |= 1 << j;
                    }
                }
                let sent = if random_codeword {
                    codewords[rng.gen_range(0..codewords.len())]
                } else {
                    0
                };
                errors += decode_error(&codewords, sent, sent ^ e);
            }
            errors
        })
        .collect();
    let errors: f64 = per_block.iter().sum();
    let (ci_lo, ci_hi) = wilson(errors, trials, 1.96);
    Ok(MlEstimate {
        p,
        errors,
        rate: if trials == 0 { 0.0 } else { errors / trials as f64 },
        ci_lo,
        ci_hi,
        trials,
        seed,
    })
}

/// Sends the zero codeword `trials` times through a binary symmetric channel
/// with crossover `p` and decodes to a nearest codeword. The interval is the
/// 95% Wilson interval.
pub fn ml_error_mc(code: &ReprMatroid, p: f64, seed: u64, trials: u64, caps: &Caps) -> Result<MlEstimate> {
    simulate(code, p, seed, trials, false, caps)
}

/// As [`ml_error_mc`] but sending a uniformly random codeword each trial.
pub fn ml_error_mc_random_codeword(code: &ReprMatroid, p: f64, seed: u64, trials: u64, caps: &Caps) -> Result<MlEstimate> {
    simulate(code, p, seed, trials, true, caps)
}

/// Exact block error of nearest-codeword decoding with the same tie rule,
/// summed over every error pattern through a syndrome table: an error
/// pattern `e` is decoded correctly with probability `1 / T` when `e` has the
/// least weight in its coset and `T` coset members share that weight.
pub fn ml_error_exact(code: &ReprMatroid, p: f64) -> Result<f64> {
    if code.field().order() != 2 {
        return Err(Error::NotBinary(code.field().order()));
    }
    let n = code.len();
    if n > 24 {
        return Err(Error::cap("binary code length for the syndrome table", n as u64, 24u64));
    }
    let checks: Vec<u64> = code
        .dual()
        .space()
        .basis()
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &x)| acc | ((x as u64) << j)))
        .collect();
    let syndrome = |e: u64| -> usize {
        checks
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &h)| acc | ((((h & e).count_ones() & 1) as usize) << i))
    };
    let mut least = vec![(u32::MAX, 0u32); 1 << checks.len()];
    for e in 0..(1u64 << n) {
        let s = syndrome(e);
        let w = e.count_ones();
        match w.cmp(&least[s].0) {
            std::cmp::Ordering::Less => least[s] = (w, 1),
            std::cmp::Ordering::Equal => least[s].1 += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    let mut total = 0.0;
    for e in 0..(1u64 << n) {
        let w = e.count_ones();
        let (lw, t) = least[syndrome(e)];
        let err = if w == lw { (t - 1) as f64 / t as f64 } else { 1.0 };
        total += err * p.powi(w as i32) * (1.0 - p).powi((n as u32 - w) as i32);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::pg;
    use crate::linalg::Matrix;
    use crate::matroid::girth;

    fn repetition(n: usize) -> ReprMatroid {
        let f = make_field(2, 1).unwrap();
        ReprMatroid::from_generator(&Matrix::from_rows(&f, vec![vec![1; n]]).unwrap())
    }

    #[test]
    fn parameters() {
        let caps = Caps::default();
        let f = make_field(2, 1).unwrap();
        let fano = pg(3, &f, &caps).unwrap();
        let p = code_params(&fano, &caps).unwrap();
        assert_eq!((p.n, p.k, p.d), (7, 3, Some(4)));
        assert!((p.rate - 3.0 / 7.0).abs() < 1e-15);
        let r = code_params(&repetition(6), &caps).unwrap();
        assert_eq!((r.n, r.k, r.d), (6, 1, Some(6)));
        let free = ReprMatroid::from_generator(&Matrix::identity(&f, crate::linalg::numbered_labels("e", 4)).unwrap());
        assert_eq!(code_params(&free, &caps).unwrap().d, Some(1));
        let empty = ReprMatroid::from_generator(&Matrix::from_rows(&f, vec![]).unwrap());
        assert!(matches!(code_params(&empty, &caps), Err(Error::EmptyCode)));
    }

    #[test]
    fn dual_distance_is_girth() {
        use rand::SeedableRng;
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = make_field(3, 1).unwrap();
        for _ in 0..50 {
            let n = rng.gen_range(1..8);
            let k = rng.gen_range(0..=n);
            let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..3)).collect()).collect();
            let m = ReprMatroid::from_generator(&Matrix::with_columns(&f, crate::linalg::numbered_labels("e", n), rows).unwrap());
            assert_eq!(code_params(&m.dual(), &caps).unwrap().d, girth(&m, &caps).unwrap());
        }
    }

    #[test]
    fn entropy_and_inverse() {
        assert_eq!(shannon_f(0.5).unwrap(), 0.0);
        assert_eq!(shannon_f(0.0).unwrap(), 1.0);
        assert!(shannon_f(1e-9).unwrap() > 0.999_999);
        assert!(shannon_f(0.6).is_err());
        let mut prev = 0.5;
        for i in 1..20 {
            let r = i as f64 * 0.05;
            let t = theta_binary(r).unwrap();
            assert!((shannon_f(t).unwrap() - r).abs() <= 1e-9);
            assert!(t < prev);
            prev = t;
        }
        // f(0.11) = 0.500 to three places
        assert!((shannon_f(0.11).unwrap() - 0.5).abs() < 1e-3);
        assert!(theta_binary(0.0).is_err() && theta_binary(1.0).is_err());
    }

    #[test]
    fn graphic_threshold() {
        assert!((theta_graphic(0.25).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(theta_graphic_exact(Rational64::new(1, 4)).unwrap(), Some(Rational64::new(1, 10)));
        // (1 - 2/3)^2 / (2 * 13/9) = 1/26
        assert_eq!(theta_graphic_exact(Rational64::new(4, 9)).unwrap(), Some(Rational64::new(1, 26)));
        assert_eq!(theta_graphic_exact(Rational64::new(1, 2)).unwrap(), None);
        assert!((theta_graphic(1e-12).unwrap() - 0.5).abs() < 1e-5);
        assert!(theta_graphic(1.0 - 1e-12).unwrap() < 1e-12);
    }

    #[test]
    fn cut_code_examples() {
        let caps = Caps::default();
        let k4 = cut_code_distance_bound(&Graph::complete(4), 0.5, &caps).unwrap();
        assert_eq!((k4.distance, k4.min_degree), (3, 3));
        assert!(k4.holds);
        assert_eq!(k4.delta_stated, 1.0);
        assert_eq!(k4.delta_corrected, 4.0);
        let path = cut_code_distance_bound(&Graph::path(5), 0.5, &caps).unwrap();
        assert_eq!(path.distance, 1);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(cut_code_distance_bound(&two, 0.5, &caps), Err(Error::Disconnected)));
    }

    fn binomial_tail(n: u32, t: u32, p: f64) -> f64 {
        (t..=n)
            .map(|k| {
                let c = (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
                c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
            })
            .sum()
    }

    #[test]
    fn exact_error_matches_closed_forms() {
        let caps = Caps::default();
        let rep = ml_error_exact(&repetition(5), 0.1).unwrap();
        assert!((rep - binomial_tail(5, 3, 0.1)).abs() < 1e-15);
        assert!((rep - 0.00856).abs() < 1e-5);
        let f = make_field(2, 1).unwrap();
        let hamming = pg(3, &f, &caps).unwrap().dual();
        let p: f64 = 0.01;
        let sphere = 1.0 - (1.0 - p).powi(7) - 7.0 * p * (1.0 - p).powi(6);
        assert!((ml_error_exact(&hamming, p).unwrap() - sphere).abs() < 1e-15);
        // even repetition length has ties: weight-2 errors of length 4 decode half the time
        let rep4 = ml_error_exact(&repetition(4), 0.1).unwrap();
        let expected = binomial_tail(4, 3, 0.1) + 0.5 * 6.0 * 0.01 * 0.81;
        assert!((rep4 - expected).abs() < 1e-15);
    }

    #[test]
    fn simulation_tracks_exact_value() {
        let caps = Caps::default();
        let code = repetition(5);
        assert_eq!(ml_error_mc(&code, 0.0, 1, 1000, &caps).unwrap().errors, 0.0);
        let est = ml_error_mc(&code, 0.1, 7, 200_000, &caps).unwrap();
        let exact = ml_error_exact(&code, 0.1).unwrap();
        let (lo, hi) = wilson(est.errors, est.trials, 3.0);
        assert!(lo <= exact && exact <= hi, "{est:?}");
        let random = ml_error_mc_random_codeword(&pg(3, &make_field(2, 1).unwrap(), &caps).unwrap(), 0.1, 3, 100_000, &caps).unwrap();
        let zero = ml_error_mc(&pg(3, &make_field(2, 1).unwrap(), &caps).unwrap(), 0.1, 5, 100_000, &caps).unwrap();
        assert!(random.ci_lo <= zero.ci_hi && zero.ci_lo <= random.ci_hi);
    }

    #[test]
    fn simulation_is_reproducible_and_monotone() {
        let caps = Caps::default();
        let code = repetition(5);
        let a = ml_error_mc(&code, 0.2, 42, 50_000, &caps).unwrap();
        let b = ml_error_mc(&code, 0.2, 42, 50_000, &caps).unwrap();
        assert_eq!(a, b);
        let rates: Vec<MlEstimate> = [0.05, 0.1, 0.2, 0.3, 0.4]
            .iter()
            .map(|&p| ml_error_mc(&code, p, 9, 20_000, &caps).unwrap())
            .collect();
        for w in rates.windows(2) {
            assert!(w[0].ci_lo <= w[1].ci_hi);
        }
        let f3 = make_field(3, 1).unwrap();
        let ternary = ReprMatroid::from_generator(&Matrix::from_rows(&f3, vec![vec![1, 1]]).unwrap());
        assert!(matches!(ml_error_mc(&ternary, 0.1, 0, 10, &caps), Err(Error::NotBinary(3))));
    }

    #[test]
    fn probe_flags_cycle_codes() {
        let caps = Caps::default();
        let f = make_field(2, 1).unwrap();
        // the cycle code of K_n is the dual of M(K_n): distance 3
        let family = (4..8).map(|n| graphic(&Graph::complete(n), &f).unwrap().dual());
        let probe = good_family_probe(family, 0.2, &caps).unwrap();
        assert_eq!(probe.rows[0].params.d, Some(3));
        assert!(!probe.rows.last().unwrap().good);
        let reps = good_family_probe((2..6).map(repetition), 0.3, &caps).unwrap();
        assert!(!reps.rows.last().unwrap().good);
        assert!((reps.sustained - 0.2).abs() < 1e-12);
    }
}
