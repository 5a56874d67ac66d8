//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria 1-10 run inside a one-thread pool and again inside an
//! eight-thread pool; criterion 11 compares the transcripts of the two runs
//! and the bytes written by the binary under `--workers 1` and `--workers 8`.

use std::fmt::Write as _;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use matrep::codes::{
    cut_code_distance_bound, ml_error_exact, ml_error_mc, shannon_f, theta_binary, theta_graphic,
    theta_graphic_exact,
};
use matrep::constructions::{gamma_frame_full, graphic, pg, reid, Graph};
use matrep::field::mult_subgroups;
use matrep::growth::h_exhaustive;
use matrep::io::write_matrix;
use matrep::linalg::numbered_labels;
use matrep::matroid::{find_embedding, girth_by_circuits, isomorphic, Matroid};
use matrep::perturb::{pert_bounds, pert_exact, SubspaceLattice};
use matrep::templates::{enumerate_conforming, ConformingClass, FrameTemplate, SubfieldTemplate, Template};
use matrep::{field_of_order, make_field, Caps, Field, Matrix, MultSubgroup, ReprMatroid};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// Everything the criterion computed, for the determinism comparison.
    transcript: String,
}

type Check = fn() -> Result<Outcome, matrep::Error>;

fn random_matroid(rng: &mut ChaCha8Rng, f: &Field, max_n: usize) -> ReprMatroid {
    let n = rng.gen_range(1..=max_n);
    let rows = rng.gen_range(0..=n);
    let q = f.order();
    let data = (0..rows).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
    let a = Matrix::new(f, numbered_labels("r", rows), numbered_labels("e", n), data).unwrap();
    ReprMatroid::from_generator(&a)
}

fn c1_duality() -> Result<Outcome, matrep::Error> {
    let start = Instant::now();
    let caps = Caps::default();
    let fields = [make_field(2, 1)?, make_field(3, 1)?, make_field(2, 2)?];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut transcript = String::new();
    let mut bad = 0;
    for i in 0..500 {
        let m = random_matroid(&mut rng, &fields[i % 3], 10);
        let x: Vec<String> = m.ground().iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
        let minor_dual = m.delete(&x)?.dual() == m.dual().contract(&x)?;
        let involution = m.dual().dual() == m;
        let g = girth_by_circuits(&m, &caps)?.map(|c| c.len());
        let cg = m.dual().cogirth(&caps)?.map(|c| c.len());
        if !(minor_dual && involution && g == cg) {
            bad += 1;
        }
        let _ = writeln!(transcript, "{i} n={} r={} |X|={} girth={g:?}", m.len(), m.rank(), x.len());
    }
    let secs = start.elapsed();
    Ok(Outcome {
        pass: bad == 0 && secs < Duration::from_secs(60),
        detail: format!("500 matroids over GF(2), GF(3), GF(4); {bad} failures; {:.1} s (limit 60 s)", secs.as_secs_f64()),
        transcript,
    })
}

fn c2_girth_oracle() -> Result<Outcome, matrep::Error> {
    let caps = Caps::default();
    let f = make_field(2, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut transcript = String::new();
    let mut mismatches = 0;
    for i in 0..1000 {
        let m = random_matroid(&mut rng, &f, 8);
        let kernel = m.girth(&caps)?.map(|c| c.len());
        let circuits = girth_by_circuits(&m, &caps)?.map(|c| c.len());
        mismatches += (kernel != circuits) as usize;
        let _ = writeln!(transcript, "{i} {kernel:?}");
    }
    Ok(Outcome {
        pass: mismatches == 0,
        detail: format!("1000 binary matrices with |E| <= 8; {mismatches} mismatches"),
        transcript,
    })
}

fn c3_perturbation() -> Result<Outcome, matrep::Error> {
    let caps = Caps::default();
    let f = make_field(2, 1)?;
    let mut transcript = String::new();
    let mut violations = 0;
    let mut timing = Duration::ZERO;
    let mut pairs = Vec::new();
    for n in [3, 4] {
        let start = Instant::now();
        let lattice = SubspaceLattice::new(&f, &numbered_labels("e", n), &caps)?;
        let all: Vec<ReprMatroid> = lattice.spaces().iter().cloned().map(ReprMatroid::from_subspace).collect();
        for a in &all {
            let dists = lattice.distances_from(a.space())?;
            for (j, b) in all.iter().enumerate() {
                let bounds = pert_bounds(a, b)?;
                let exact = pert_exact(a, b, &caps)?.value;
                let d = dists[j];
                if !(exact <= d && d <= 2 * exact && bounds.lo <= exact && exact <= bounds.hi) {
                    violations += 1;
                }
                let _ = write!(transcript, "{exact}{d}{}{} ", bounds.lo, bounds.hi);
            }
            transcript.push('\n');
        }
        pairs.push(all.len() * all.len());
        timing = start.elapsed();
    }
    Ok(Outcome {
        pass: violations == 0 && pairs == [256, 4489] && timing < Duration::from_secs(600),
        detail: format!(
            "{} + {} ordered pairs; {violations} violations; GF(2)^4 in {:.1} s (limit 600 s)",
            pairs[0],
            pairs[1],
            timing.as_secs_f64()
        ),
        transcript,
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn c4_counts() -> Result<Outcome, matrep::Error> {
    let caps = Caps::default();
    let mut transcript = String::new();
    let mut wrong = 0;
    let mut checked = 0;
    for q in [2u32, 3, 4, 5] {
        let f = field_of_order(q)?;
        for r in 1..=8usize {
            // sizes after simplification, so repeated points would show up
            let points = pg(r, &f, &caps)?.simplify().len() as u128;
            let expected = ((q as u128).pow(r as u32) - 1) / (q as u128 - 1);
            wrong += (points != expected) as usize;
            checked += 1;
            let _ = write!(transcript, "pg {q} {r} {points};");
            for gamma in mult_subgroups(&f) {
                let size = gamma_frame_full(r, &gamma, &caps)?.simplify().len() as u128;
                let expected = gamma.order() as u128 * binomial(r as u64, 2) + r as u128;
                wrong += (size != expected) as usize;
                checked += 1;
                let _ = write!(transcript, " frame {} {size};", gamma.order());
            }
            transcript.push('\n');
        }
    }
    Ok(Outcome {
        pass: wrong == 0,
        detail: format!("{checked} sizes for q in {{2,3,4,5}}, r <= 8, every subgroup; {wrong} wrong"),
        transcript,
    })
}

fn c5_reid() -> Result<Outcome, matrep::Error> {
    let caps = Caps {
        iso_elements: 13,
        ..Caps::default()
    };
    let gf2 = make_field(2, 1)?;
    let r2 = reid(&gf2)?;
    let fano = isomorphic(&r2, &pg(3, &gf2, &caps)?, &caps)?;
    let mut sizes = Vec::new();
    for q in [2u32, 3, 4, 5] {
        sizes.push((q, reid(&field_of_order(q)?)?.len()));
    }
    let sizes_ok = sizes.iter().all(|&(q, s)| s == 2 * q as usize + 3);
    let ternary = find_embedding(&r2, &pg(3, &field_of_order(3)?, &caps)?, &caps)?;
    Ok(Outcome {
        pass: fano && sizes_ok && ternary.is_none(),
        detail: format!(
            "reid(GF(2)) ~ Fano: {fano}; sizes {sizes:?}; embedding into PG(2,3): {}",
            if ternary.is_none() { "none" } else { "found" }
        ),
        transcript: format!("{fano} {sizes:?} {ternary:?}"),
    })
}

fn c6_thresholds() -> Result<Outcome, matrep::Error> {
    let mut transcript = String::new();
    let mut worst = 0.0f64;
    let (mut prev_b, mut prev_g) = (f64::INFINITY, f64::INFINITY);
    let mut monotone = true;
    for k in 1..=19 {
        let r = k as f64 / 20.0;
        let tb = theta_binary(r)?;
        let tg = theta_graphic(r)?;
        worst = worst.max((shannon_f(tb)? - r).abs());
        monotone &= tb < prev_b && tg < prev_g;
        (prev_b, prev_g) = (tb, tg);
        let _ = writeln!(transcript, "{r} {tb} {tg}");
    }
    let exact = theta_graphic_exact(Rational64::new(1, 4))?;
    Ok(Outcome {
        pass: worst <= 1e-9 && monotone && exact == Some(Rational64::new(1, 10)),
        detail: format!(
            "19-point grid: max |f(theta_B(R)) - R| = {worst:.1e} (limit 1e-9); decreasing: {monotone}; theta_G(1/4) = {}",
            exact.map_or("none".to_string(), |r| r.to_string())
        ),
        transcript,
    })
}

fn binary(rows: &[&str]) -> ReprMatroid {
    let f = make_field(2, 1).unwrap();
    let data = rows.iter().map(|r| r.bytes().map(|b| (b - b'0') as u32).collect()).collect();
    ReprMatroid::from_generator(&Matrix::from_rows(&f, data).unwrap())
}

fn hamming74() -> ReprMatroid {
    binary(&["1000011", "0100101", "0010110", "0001111"])
}

fn c7_ml_simulation() -> Result<Outcome, matrep::Error> {
    let caps = Caps::default();
    const Z95: f64 = 1.959963984540054;
    let rep5 = binary(&["11111"]);
    let p = 0.1f64;
    let tail: f64 = (3..=5).map(|k| binomial(5, k) as f64 * p.powi(k as i32) * (1.0 - p).powi(5 - k as i32)).sum();
    let rep_mc = ml_error_mc(&rep5, p, 7, 1_000_000, &caps)?;
    let rep_sigma = (rep_mc.ci_hi - rep_mc.ci_lo) / (2.0 * Z95);
    let rep_ok = (tail - 0.00856).abs() < 1e-15 && (rep_mc.rate - 0.00856).abs() <= 3.0 * rep_sigma;

    let ham = hamming74();
    let p = 0.01f64;
    let exact = ml_error_exact(&ham, p)?;
    // a perfect code decodes exactly the patterns of weight at most one
    let sphere = 1.0 - (1.0 - p).powi(7) - 7.0 * p * (1.0 - p).powi(6);
    let ham_mc = ml_error_mc(&ham, p, 7, 1_000_000, &caps)?;
    let ham_sigma = (ham_mc.ci_hi - ham_mc.ci_lo) / (2.0 * Z95);
    let ham_ok = (exact - sphere).abs() < 1e-12 && (ham_mc.rate - exact).abs() <= 3.0 * ham_sigma;
    Ok(Outcome {
        pass: rep_ok && ham_ok,
        detail: format!(
            "rep-5: {:.6} vs 0.00856, {:.2} sigma; [7,4]: {:.3e} vs {exact:.3e}, {:.2} sigma",
            rep_mc.rate,
            (rep_mc.rate - 0.00856).abs() / rep_sigma,
            ham_mc.rate,
            (ham_mc.rate - exact).abs() / ham_sigma
        ),
        transcript: format!("{rep_mc:?}\n{ham_mc:?}\n{exact}"),
    })
}

fn c8_cut_codes() -> Result<Outcome, matrep::Error> {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut transcript = String::new();
    let mut failures = 0;
    let mut reported = 0;
    for rate in [0.25, 0.5] {
        let mut kept = 0;
        while kept < 100 {
            let n = rng.gen_range(3..=10);
            let density = rng.gen_range(0.0..0.6);
            let g = Graph::random_connected(n, density, &mut rng);
            let r = cut_code_distance_bound(&g, rate, &caps)?;
            if r.cut_rate < rate {
                continue;
            }
            kept += 1;
            let oracle = g.min_edge_cut()?.unwrap_or(0);
            if !r.holds || r.distance != oracle || r.distance > r.min_degree {
                failures += 1;
            }
            reported += (r.delta_stated.is_finite() && r.delta_corrected.is_finite()) as usize;
            let _ = writeln!(transcript, "{}", serde_json::to_string(&r).unwrap());
        }
    }
    Ok(Outcome {
        pass: failures == 0 && reported == 200,
        detail: format!(
            "100 graphs each at R = 0.25, 0.5; {failures} failures; both delta values reported for {reported}/200 \
             (R = 0.25: stated {}, corrected {}; R = 0.5: stated {}, corrected {})",
            1.0 / (2.0 * 0.75),
            2.0 / 0.75,
            1.0 / (2.0 * 0.5),
            2.0 / 0.5
        ),
        transcript,
    })
}

fn c9_templates() -> Result<Outcome, matrep::Error> {
    let caps = Caps::default();
    let f = make_field(2, 1)?;
    let templates = [
        ("subfield", Template::Subfield(SubfieldTemplate::empty(&f, 1)?)),
        ("frame", Template::Frame(FrameTemplate::trivial(&MultSubgroup::trivial(&f))?)),
    ];
    let mut transcript = String::new();
    let mut total = 0;
    let mut missed = 0;
    for (name, t) in &templates {
        let mut class = ConformingClass::new(t.clone(), caps.clone());
        for rows in 0..=6 {
            for cols in 0..=6 - rows {
                let all = enumerate_conforming(t, rows, cols, &caps)?;
                for c in &all {
                    total += 1;
                    missed += class.member(&c.matroid)?.is_none() as usize;
                }
                let _ = writeln!(transcript, "{name} {rows} {cols} {}", all.len());
            }
        }
    }
    let fano = pg(3, &f, &caps)?;
    let rejected = ConformingClass::new(templates[1].1.clone(), caps.clone()).member(&fano)?.is_none();
    Ok(Outcome {
        pass: missed == 0 && rejected,
        detail: format!("{total} enumerated matroids with |E| <= 6, {missed} not recognised; Fano rejected by the frame template: {rejected}"),
        transcript,
    })
}

fn c10_growth() -> Result<Outcome, matrep::Error> {
    let caps = Caps::default();
    let f = make_field(2, 1)?;
    let mut transcript = String::new();
    let mut ok = true;
    for r in 1..=4usize {
        let v = h_exhaustive(&f, r, None, &caps)?.map(|e| e.value);
        ok &= v == Some((1 << r) - 1);
        let _ = write!(transcript, "{v:?} ");
    }
    let fano = pg(3, &f, &caps)?;
    let no_fano = h_exhaustive(&f, 3, Some(&fano), &caps)?.map(|e| e.value);
    ok &= no_fano == Some(6);

    // Oracle: in rank 3 an M(K4) minor of a rank-3 matroid is a restriction,
    // so test every point set of PG(2,2) for a six-point subset ~ M(K4).
    let k4 = graphic(&Graph::complete(4), &f)?;
    let labels = fano.ground().to_vec();
    let mut oracle = 0;
    for mask in 0u32..128 {
        let set: Vec<&String> = (0..7).filter(|i| mask >> i & 1 == 1).map(|i| &labels[i]).collect();
        let m = fano.restrict(&set)?;
        if m.rank() < 3 || set.len() <= oracle {
            continue;
        }
        let mut has = false;
        for drop in 0u32..128 {
            if drop & !mask != 0 || (mask & !drop).count_ones() != 6 {
                continue;
            }
            let six: Vec<&String> = (0..7).filter(|i| (mask & !drop) >> i & 1 == 1).map(|i| &labels[i]).collect();
            has |= isomorphic(&fano.restrict(&six)?, &k4, &caps)?;
        }
        if !has {
            oracle = set.len();
        }
    }
    const PINNED: usize = 5;
    let no_k4 = h_exhaustive(&f, 3, Some(&k4), &caps)?.map(|e| e.value);
    ok &= oracle == PINNED && no_k4 == Some(PINNED);
    let _ = write!(transcript, "{no_fano:?} {oracle} {no_k4:?}");
    Ok(Outcome {
        pass: ok,
        detail: format!("h(r) = 2^r - 1 for r <= 4; no Fano at r = 3: {no_fano:?}; no M(K4): {no_k4:?}, oracle {oracle}"),
        transcript,
    })
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

/// Runs the binary once per worker count and returns the outputs that differ.
fn cli_differences(dir: &Path) -> Vec<String> {
    let caps = Caps::default();
    let f = make_field(2, 1).unwrap();
    write(dir, "fano.mat", &write_matrix(&pg(3, &f, &caps).unwrap().generator()));
    write(dir, "k4.mat", &write_matrix(&graphic(&Graph::complete(4), &f).unwrap().generator()));
    write(dir, "rep5.mat", "gf 2 1\ncols a b c d e\n1 1 1 1 1\n");
    write(dir, "ham.mat", &write_matrix(&hamming74().generator()));
    write(dir, "u1.mat", "gf 2 1\ncols a b c d\n1 1 0 0\n0 0 1 1\n");
    write(dir, "u2.mat", "gf 2 1\ncols a b c d\n1 0 1 0\n");
    write(dir, "sub.tmpl", "field 2 1\nsubfield 1\nsets\nA1=\nA2=\nLambda=zero\nDelta=zero\n");
    write(dir, "frame.tmpl", "field 2 1\nframe\nGamma=1\nsets\nA1=\nLambda=zero\nDelta=zero\n");
    let commands: &[&[&str]] = &[
        &["girth", "fano.mat"],
        &["cogirth", "ham.mat"],
        &["dual", "fano.mat"],
        &["vconn", "k4.mat"],
        &["minor", "fano.mat", "--has", "k4.mat"],
        &["construct", "pg", "--rank", "4", "--q", "3"],
        &["construct", "gammaframe", "--rank", "4", "--q", "5", "--gamma-order", "4"],
        &["construct", "reid", "--q", "4"],
        &["perturb", "dist", "u1.mat", "u2.mat"],
        &["perturb", "pert", "u1.mat", "u2.mat", "--exact"],
        &["template", "enumerate", "sub.tmpl", "--rows", "2", "--cols", "2"],
        &["template", "member", "frame.tmpl", "k4.mat"],
        &["threshold", "--grid", "19"],
        &["mlsim", "rep5.mat", "--p", "0.1", "--trials", "100000", "--seed", "7"],
        &["code", "params", "ham.mat"],
        &["code", "cut", "--vertices", "8", "--R", "0.25", "--count", "20", "--seed", "3"],
        &["growth", "exhaustive", "--q", "2", "--rank", "3", "--forbid", "k4.mat"],
        &["growth", "formula", "--kind", "two-field", "--q", "3", "--r-max", "6"],
    ];
    let mut diffs = Vec::new();
    for args in commands {
        let run = |w: &str| {
            let out = Command::new(env!("CARGO_BIN_EXE_matrep"))
                .current_dir(dir)
                .args(["--workers", w])
                .args(*args)
                .output()
                .unwrap();
            (out.status.code(), out.stdout)
        };
        let (one, eight) = (run("1"), run("8"));
        if one != eight || one.0 != Some(0) {
            diffs.push(args.join(" "));
        }
    }
    diffs
}

fn main() {
    let checks: [(&str, Check); 10] = [
        ("duality suite", c1_duality),
        ("girth oracle", c2_girth_oracle),
        ("perturbation bounds", c3_perturbation),
        ("geometry counts", c4_counts),
        ("Reid geometries", c5_reid),
        ("thresholds", c6_thresholds),
        ("ML simulation", c7_ml_simulation),
        ("cut codes", c8_cut_codes),
        ("template round trip", c9_templates),
        ("growth", c10_growth),
    ];
    let mut failed = 0;
    let mut transcripts = Vec::new();
    for (i, (name, check)) in checks.iter().enumerate() {
        let (line, transcript) = match in_pool(1, check) {
            Ok(o) => {
                failed += !o.pass as usize;
                (format!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail), Some(o.transcript))
            }
            Err(e) => {
                failed += 1;
                (format!("FAIL {name}: error {e}"), None)
            }
        };
        println!("criterion {:>2} {line}", i + 1);
        transcripts.push(transcript);
    }

    let mut differing: Vec<String> = checks
        .iter()
        .zip(&transcripts)
        .enumerate()
        .filter(|(_, ((_, check), t))| in_pool(8, check).ok().map(|o| o.transcript) != **t)
        .map(|(i, _)| format!("criterion {}", i + 1))
        .collect();
    let dir = tempfile::tempdir().unwrap();
    differing.extend(cli_differences(dir.path()));
    let pass = differing.is_empty();
    failed += !pass as usize;
    println!(
        "criterion 11 {} determinism: library criteria 1-10 with 1 and 8 threads, 18 commands with --workers 1 and 8; {}",
        if pass { "PASS" } else { "FAIL" },
        if pass { "identical".to_string() } else { format!("differences in {}", differing.join(", ")) }
    );
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
