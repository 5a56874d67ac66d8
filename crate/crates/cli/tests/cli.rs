use std::path::Path;
use std::process::{Command, Output};

use matrep::io::{read_matrix, write_matrix};
use matrep::{field_of_order, Matrix, ReprMatroid};
use proptest::prelude::*;
use tempfile::TempDir;

fn matrep(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matrep"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let fano = stdout(&matrep(dir.path(), &["construct", "pg", "--rank", "3", "--q", "2"]));
    std::fs::write(dir.path().join("fano.mat"), fano).unwrap();
    std::fs::write(
        dir.path().join("frame.tmpl"),
        "field 2 1\nframe\nGamma=1\nsets\nA1=\nLambda=zero\nDelta=zero\n",
    )
    .unwrap();
    dir
}

#[test]
fn girth_of_the_fano_plane() {
    let dir = setup();
    let out = stdout(&matrep(dir.path(), &["girth", "fano.mat"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["girth"], 3);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    let out = stdout(&matrep(dir.path(), &["cogirth", "fano.mat"]));
    assert!(out.starts_with("{\"cogirth\":4,"));
}

#[test]
fn graphic_threshold_at_one_quarter() {
    let dir = setup();
    let out = stdout(&matrep(dir.path(), &["threshold", "--R", "0.25"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("R,theta_B,theta_G,theta_G_exact,theta_G_conjectural"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "0.25");
    assert_eq!(row[2], "0.1");
    assert_eq!(row[3], "1/10");
}

#[test]
fn nonconforming_matrix_names_the_clause() {
    let dir = setup();
    // two nonzeros in a column, both 1, but not of the form e_i - e_j over GF(3)
    std::fs::write(
        dir.path().join("t3.tmpl"),
        "field 3 1\nframe\nGamma=1\nsets\nA1=\nLambda=zero\nDelta=zero\n",
    )
    .unwrap();
    std::fs::write(dir.path().join("a.mat"), "gf 3 1\nrows b0 b1\ncols n0\n1\n1\n").unwrap();
    let out = matrep(dir.path(), &["template", "check", "t3.tmpl", "a.mat"]);
    assert_eq!(stdout(&out), "{\"conforms\":false,\"violated\":\"clause-iii\"}\n");
}

#[test]
fn exit_codes() {
    let dir = setup();
    assert_eq!(matrep(dir.path(), &["girth", "missing.mat"]).status.code(), Some(2));
    std::fs::write(dir.path().join("bad.mat"), "gf 2 1\ncols a b\n1 7\n").unwrap();
    let out = matrep(dir.path(), &["girth", "bad.mat"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = matrep(dir.path(), &["girth", "fano.mat", "--cap-codewords", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(matrep(dir.path(), &["threshold", "--R", "1.5"]).status.code(), Some(2));
    assert_eq!(matrep(dir.path(), &["girth", "fano.mat", "--cap-iso", "0"]).status.code(), Some(2));
    assert_eq!(matrep(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn seed_is_echoed_and_output_file_written() {
    let dir = setup();
    std::fs::write(dir.path().join("rep3.mat"), "gf 2 1\ncols a b c\n1 1 1\n").unwrap();
    let args = ["mlsim", "rep3.mat", "--p", "0.2", "--trials", "5000", "--seed", "42", "--output", "out.csv"];
    let out = matrep(dir.path(), &args);
    assert!(stdout(&out).is_empty());
    let csv = std::fs::read_to_string(dir.path().join("out.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("p,err,ci_lo,ci_hi,trials,seed"));
    assert!(lines.next().unwrap().ends_with(",5000,42"));
}

#[test]
fn frame_template_membership() {
    let dir = setup();
    let k4 = stdout(&matrep(dir.path(), &["construct", "kn", "--n", "4"]));
    std::fs::write(dir.path().join("k4.mat"), k4).unwrap();
    let out = stdout(&matrep(dir.path(), &["template", "member", "frame.tmpl", "k4.mat"]));
    assert!(out.starts_with("{\"member\":true,"));
    let out = stdout(&matrep(dir.path(), &["template", "member", "frame.tmpl", "fano.mat"]));
    assert_eq!(out, "{\"member\":false,\"matrix\":null,\"map\":null}\n");
}

#[test]
fn growth_formula_table() {
    let dir = setup();
    let out = stdout(&matrep(dir.path(), &["growth", "formula", "--kind", "gamma-frame", "--alpha", "2", "--r-max", "3"]));
    assert_eq!(out, "r,value,pre_asymptotic\n1,1,\n2,4,\n3,9,\n");
    let out = stdout(&matrep(dir.path(), &["growth", "formula", "--kind", "two-field", "--q", "2", "--r-max", "2", "--format", "json"]));
    assert_eq!(out, "[{\"r\":1,\"value\":1,\"pre_asymptotic\":false},{\"r\":2,\"value\":5,\"pre_asymptotic\":false}]\n");
}

/// Matrices written by one subcommand are read back by the others.
#[test]
fn emitted_matrices_are_consumable() {
    let dir = setup();
    let p = dir.path();
    let producers: &[&[&str]] = &[
        &["construct", "ag", "--rank", "3", "--q", "3"],
        &["construct", "uniform", "--rank", "2", "--n", "5", "--q", "4"],
        &["construct", "bicircular", "--complete", "4", "--q", "5"],
        &["construct", "reid", "--q", "3"],
        &["construct", "gammaframe", "--rank", "3", "--q", "4", "--gamma-order", "3"],
        &["dual", "fano.mat"],
        &["minor", "fano.mat", "--contract", "p0", "--delete", "p1"],
    ];
    for (i, args) in producers.iter().enumerate() {
        let text = stdout(&matrep(p, args));
        let name = format!("m{i}.mat");
        std::fs::write(p.join(&name), &text).unwrap();
        assert_eq!(write_matrix(&read_matrix(&text).unwrap()), text);
        for consumer in [&["girth", &name][..], &["cogirth", &name], &["vconn", &name], &["dual", &name], &["code", "params", &name]] {
            stdout(&matrep(p, consumer));
        }
        std::fs::write(p.join("d.mat"), stdout(&matrep(p, &["dual", &name]))).unwrap();
        let back = stdout(&matrep(p, &["dual", "d.mat"]));
        let a = ReprMatroid::from_generator(&read_matrix(&text).unwrap());
        assert_eq!(ReprMatroid::from_generator(&read_matrix(&back).unwrap()), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dual_round_trip_through_files(q in prop::sample::select(vec![2u32, 3, 4]), rows in 1usize..4, cols in 1usize..6, codes in prop::collection::vec(0u32..4, 24)) {
        let dir = tempfile::tempdir().unwrap();
        let f = field_of_order(q).unwrap();
        let data = (0..rows).map(|i| codes[i * 6..i * 6 + cols].iter().map(|x| x % q).collect()).collect();
        let a = Matrix::from_rows(&f, data).unwrap();
        std::fs::write(dir.path().join("a.mat"), write_matrix(&a)).unwrap();
        let once = stdout(&matrep(dir.path(), &["dual", "a.mat"]));
        std::fs::write(dir.path().join("b.mat"), &once).unwrap();
        let twice = stdout(&matrep(dir.path(), &["dual", "b.mat"]));
        let m = ReprMatroid::from_generator(&a);
        prop_assert_eq!(ReprMatroid::from_generator(&read_matrix(&twice).unwrap()), m.clone());
        prop_assert_eq!(twice, write_matrix(&m.generator()));
    }
}
