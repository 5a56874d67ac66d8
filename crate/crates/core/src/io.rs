//! Plain-text formats for matrices and templates.
//!
//! A matrix file names the field, optionally its modulus, the row and column
//! labels, and then one line of element codes per row:
//!
//! ```text
//! # the Fano plane
//! gf 2 1
//! rows r0 r1 r2
//! cols a b c d e f g
//! 1 0 0 1 1 0 1
//! 0 1 0 1 0 1 1
//! 0 0 1 0 1 1 1
//! ```
//!
//! `poly c0 c1 ... ck` gives the monic modulus, lowest coefficient first;
//! without it the default modulus of [`make_field`] is used. Missing `rows`
//! or `cols` lines default to `r0, r1, ...` and `e0, e1, ...`. Blank lines
//! and text after `#` are ignored.
//!
//! A template file gives the field (`field p k`, then an optional `poly`
//! line), the kind (`subfield d` with `d` the degree of `F0`, or `frame`),
//! for frames the group `Gamma=`, the label sets, the matrix blocks and the
//! two groups:
//!
//! ```text
//! field 3 1
//! frame
//! Gamma=1
//! sets C=c D= X=x Y0= Y1=y
//! A1=
//! 1 1
//! Lambda=zero
//! Delta=full
//! ```
//!
//! Subfield templates use `sets C= D= Y=` and blocks `A1=` and `A2=`. Lists
//! inside a word are comma-separated and missing sets are empty. Matrix
//! blocks list rows and columns in sorted label order. `Lambda=` and
//! `Delta=` are `full`, `zero`, or empty and followed by generator lines in
//! sorted coordinate order; frame generators must span a `Γ`-closed group.
//!
//! ```
//! use matrep::io::{read_matrix, write_matrix};
//!
//! let text = "gf 2 1\ncols a b c\n1 0 1\n0 1 1\n";
//! let a = read_matrix(text)?;
//! assert_eq!(a.rank(), 2);
//! assert_eq!(read_matrix(&write_matrix(&a))?, a);
//! # Ok::<(), matrep::Error>(())
//! ```

use std::fmt::Write as _;

use crate::field::{make_field, make_field_with_modulus, subfield_of_degree, Elem, Field, MultSubgroup};
use crate::linalg::{numbered_labels, Matrix, Subspace};
use crate::templates::{FrameTemplate, GammaGroup, SubfieldTemplate, Template};
use crate::{Error, Result};

struct Line<'a> {
    number: usize,
    words: Vec<&'a str>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let words: Vec<&str> = l.split_whitespace().collect();
            (!words.is_empty()).then_some(Line { number: i + 1, words })
        })
        .collect()
}

fn is_data(l: &Line) -> bool {
    l.words[0].chars().all(|c| c.is_ascii_digit())
}

fn parse_num<T: std::str::FromStr>(l: &Line, w: &str) -> Result<T> {
    w.parse().map_err(|_| Error::parse(l.number, format!("`{w}` is not a number")))
}

fn parse_codes(l: &Line, f: &Field) -> Result<Vec<Elem>> {
    l.words
        .iter()
        .map(|w| {
            let x: Elem = parse_num(l, w)?;
            if !f.contains(x) {
                return Err(Error::parse(l.number, format!("{x} is not an element of GF({})", f.order())));
            }
            Ok(x)
        })
        .collect()
}

/// Reads `<key> p k` and an optional `poly` line starting at `*pos`.
fn parse_field(ls: &[Line], pos: &mut usize, key: &str) -> Result<Field> {
    let l = ls.get(*pos).ok_or_else(|| Error::parse(0, format!("missing `{key} p k` line")))?;
    if l.words[0] != key || l.words.len() != 3 {
        return Err(Error::parse(l.number, format!("expected `{key} p k`")));
    }
    let p: u32 = parse_num(l, l.words[1])?;
    let k: u32 = parse_num(l, l.words[2])?;
    *pos += 1;
    if let Some(m) = ls.get(*pos).filter(|m| m.words[0] == "poly") {
        let coeffs = m.words[1..].iter().map(|w| parse_num(m, w)).collect::<Result<Vec<u32>>>()?;
        if coeffs.len() != k as usize + 1 {
            return Err(Error::parse(m.number, format!("a degree-{k} modulus has {} coefficients", k + 1)));
        }
        *pos += 1;
        make_field_with_modulus(p, &coeffs).map_err(|e| Error::parse(m.number, e.to_string()))
    } else {
        make_field(p, k).map_err(|e| Error::parse(l.number, e.to_string()))
    }
}

fn write_field(out: &mut String, key: &str, f: &Field) {
    let _ = writeln!(out, "{key} {} {}", f.characteristic(), f.degree());
    if f.degree() > 1 {
        let coeffs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "poly {}", coeffs.join(" "));
    }
}

fn labels_line(ls: &[Line], pos: &mut usize, key: &str) -> Option<Vec<String>> {
    let l = ls.get(*pos).filter(|l| l.words[0] == key)?;
    *pos += 1;
    Some(l.words[1..].iter().map(|w| w.to_string()).collect())
}

fn data_block(ls: &[Line], pos: &mut usize, f: &Field) -> Result<Vec<Vec<Elem>>> {
    let mut rows = Vec::new();
    while let Some(l) = ls.get(*pos).filter(|l| is_data(l)) {
        rows.push(parse_codes(l, f)?);
        *pos += 1;
    }
    Ok(rows)
}

fn block_matrix(
    ls: &[Line],
    pos: &mut usize,
    key: &str,
    f: &Field,
    rows: Vec<String>,
    cols: Vec<String>,
) -> Result<Matrix> {
    let l = ls.get(*pos).filter(|l| l.words == [key]);
    let Some(l) = l else {
        let n = ls.get(*pos).map_or(0, |l| l.number);
        return Err(Error::parse(n, format!("expected `{key}`")));
    };
    let number = l.number;
    *pos += 1;
    let data = data_block(ls, pos, f)?;
    if data.len() != rows.len() || data.iter().any(|r| r.len() != cols.len()) {
        return Err(Error::parse(
            number,
            format!("`{key}` must be {} x {}", rows.len(), cols.len()),
        ));
    }
    Matrix::new(f, rows, cols, data)
}

pub fn read_matrix(text: &str) -> Result<Matrix> {
    let ls = lines(text);
    let mut pos = 0;
    let f = parse_field(&ls, &mut pos, "gf")?;
    let rows = labels_line(&ls, &mut pos, "rows");
    let cols = labels_line(&ls, &mut pos, "cols");
    let mut data = data_block(&ls, &mut pos, &f)?;
    if let Some(l) = ls.get(pos) {
        return Err(Error::parse(l.number, format!("unexpected `{}`", l.words[0])));
    }
    // rows of a matrix without columns are blank lines
    if let (Some(r), Some(c)) = (&rows, &cols) {
        if c.is_empty() && data.is_empty() {
            data = vec![Vec::new(); r.len()];
        }
    }
    let ncols = cols.as_ref().map_or_else(|| data.first().map_or(0, |r| r.len()), |c| c.len());
    if let Some((i, _)) = data.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(Error::parse(0, format!("row {i} does not have {ncols} entries")));
    }
    let rows = rows.unwrap_or_else(|| numbered_labels("r", data.len()));
    if rows.len() != data.len() {
        return Err(Error::parse(0, format!("{} row labels for {} rows", rows.len(), data.len())));
    }
    let cols = cols.unwrap_or_else(|| numbered_labels("e", ncols));
    Matrix::new(&f, rows, cols, data)
}

fn write_rows(out: &mut String, a: &Matrix) {
    for i in 0..a.nrows() {
        let row: Vec<String> = a.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

pub fn write_matrix(a: &Matrix) -> String {
    let mut out = String::new();
    write_field(&mut out, "gf", a.field());
    let _ = writeln!(out, "rows {}", a.row_labels().join(" "));
    let _ = writeln!(out, "cols {}", a.col_labels().join(" "));
    write_rows(&mut out, a);
    out
}

/// Splits `KEY=a,b,c` into its list; an empty value gives an empty list.
fn list_value<'a>(word: &'a str, key: &str) -> Option<Vec<&'a str>> {
    let v = word.strip_prefix(key)?.strip_prefix('=')?;
    Some(v.split(',').filter(|x| !x.is_empty()).collect())
}

fn parse_sets(ls: &[Line], pos: &mut usize, keys: &[&str]) -> Result<Vec<Vec<String>>> {
    let Some(l) = ls.get(*pos).filter(|l| l.words[0] == "sets") else {
        let n = ls.get(*pos).map_or(0, |l| l.number);
        return Err(Error::parse(n, "expected `sets` line"));
    };
    *pos += 1;
    let mut out = vec![None; keys.len()];
    for w in &l.words[1..] {
        let Some((i, v)) = keys.iter().enumerate().find_map(|(i, k)| Some((i, list_value(w, k)?))) else {
            return Err(Error::parse(l.number, format!("unknown set `{w}`")));
        };
        if out[i].is_some() {
            return Err(Error::parse(l.number, format!("set {} given twice", keys[i])));
        }
        let mut v: Vec<String> = v.into_iter().map(str::to_string).collect();
        v.sort();
        out[i] = Some(v);
    }
    Ok(out.into_iter().map(Option::unwrap_or_default).collect())
}

enum Spec {
    Full,
    Zero,
    Gens(Vec<Vec<Elem>>),
}

fn group_spec(ls: &[Line], pos: &mut usize, key: &str, f: &Field) -> Result<Spec> {
    let found = ls.get(*pos).filter(|l| l.words.len() == 1).and_then(|l| {
        let v = l.words[0].strip_prefix(key)?.strip_prefix('=')?;
        Some((l.number, v))
    });
    let Some((number, v)) = found else {
        let n = ls.get(*pos).map_or(0, |l| l.number);
        return Err(Error::parse(n, format!("expected `{key}=`")));
    };
    *pos += 1;
    match v {
        "full" => Ok(Spec::Full),
        "zero" => Ok(Spec::Zero),
        "" => Ok(Spec::Gens(data_block(ls, pos, f)?)),
        w => Err(Error::parse(number, format!("unknown `{key}` form `{w}`"))),
    }
}

fn sorted_union(parts: &[&[String]]) -> Vec<String> {
    let mut v: Vec<String> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    v.sort();
    v
}

fn parse_subfield(ls: &[Line], pos: &mut usize, f: &Field, deg: u32) -> Result<SubfieldTemplate> {
    let sub = subfield_of_degree(f, deg)?;
    let [c, d, y]: [Vec<String>; 3] = parse_sets(ls, pos, &["C", "D", "Y"])?.try_into().unwrap();
    let a1 = block_matrix(ls, pos, "A1=", f, d.clone(), c.clone())?;
    let a2 = block_matrix(ls, pos, "A2=", f, d.clone(), y.clone())?;
    let space = |spec: Spec, ambient: Vec<String>| -> Result<Subspace> {
        match spec {
            Spec::Full => Subspace::full(&sub.field, ambient),
            Spec::Zero => Subspace::zero(&sub.field, ambient),
            Spec::Gens(g) => {
                let g = g
                    .into_iter()
                    .map(|v| {
                        v.iter()
                            .map(|&x| sub.project(x))
                            .collect::<Option<Vec<Elem>>>()
                            .ok_or_else(|| Error::InvalidTemplate("generator outside the subfield".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Subspace::from_vectors(&sub.field, ambient, g)
            }
        }
    };
    let lambda = space(group_spec(ls, pos, "Lambda", f)?, d.clone())?;
    let delta = space(group_spec(ls, pos, "Delta", f)?, sorted_union(&[&c, &y]))?;
    SubfieldTemplate::new(f, deg, c, d, y, a1, a2, lambda, delta)
}

fn parse_frame(ls: &[Line], pos: &mut usize, f: &Field) -> Result<FrameTemplate> {
    let found = ls.get(*pos).filter(|l| l.words.len() == 1).and_then(|l| Some((l, list_value(l.words[0], "Gamma")?)));
    let Some((l, els)) = found else {
        let n = ls.get(*pos).map_or(0, |l| l.number);
        return Err(Error::parse(n, "expected `Gamma=`"));
    };
    let els = els.iter().map(|w| parse_num(l, w)).collect::<Result<Vec<Elem>>>()?;
    let gamma = MultSubgroup::from_elements(f, &els).map_err(|e| Error::parse(l.number, e.to_string()))?;
    *pos += 1;
    let [c, d, x, y0, y1]: [Vec<String>; 5] =
        parse_sets(ls, pos, &["C", "D", "X", "Y0", "Y1"])?.try_into().unwrap();
    let a1 = block_matrix(ls, pos, "A1=", f, sorted_union(&[&d, &x]), sorted_union(&[&c, &y0, &y1]))?;
    let group = |spec: Spec, ambient: Vec<String>| -> Result<GammaGroup> {
        match spec {
            Spec::Full => GammaGroup::full(&gamma, ambient),
            Spec::Zero => GammaGroup::zero(&gamma, ambient),
            Spec::Gens(g) => GammaGroup::new(&gamma, ambient, g),
        }
    };
    let lambda = group(group_spec(ls, pos, "Lambda", f)?, d.clone())?;
    let delta = group(group_spec(ls, pos, "Delta", f)?, sorted_union(&[&c, &y0, &y1]))?;
    FrameTemplate::new(&gamma, c, d, x, y0, y1, a1, lambda, delta)
}

pub fn read_template(text: &str) -> Result<Template> {
    let ls = lines(text);
    let mut pos = 0;
    let f = parse_field(&ls, &mut pos, "field")?;
    let kind = ls.get(pos).ok_or_else(|| Error::parse(0, "missing template kind"))?;
    pos += 1;
    let t = match kind.words.as_slice() {
        ["subfield", d] => Template::Subfield(parse_subfield(&ls, &mut pos, &f, parse_num(kind, d)?)?),
        ["frame"] => Template::Frame(parse_frame(&ls, &mut pos, &f)?),
        _ => return Err(Error::parse(kind.number, "expected `subfield d` or `frame`")),
    };
    if let Some(l) = ls.get(pos) {
        return Err(Error::parse(l.number, format!("unexpected `{}`", l.words[0])));
    }
    Ok(t)
}

fn write_sets(out: &mut String, sets: &[(&str, &[String])]) {
    let words: Vec<String> = sets.iter().map(|(k, v)| format!("{k}={}", v.join(","))).collect();
    let _ = writeln!(out, "sets {}", words.join(" "));
}

fn write_vectors(out: &mut String, key: &str, vs: &[Vec<Elem>]) {
    let _ = writeln!(out, "{key}=");
    for v in vs {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

pub fn write_template(t: &Template) -> String {
    let mut out = String::new();
    write_field(&mut out, "field", t.field());
    match t {
        Template::Subfield(t) => {
            let _ = writeln!(out, "subfield {}", t.subfield().degree());
            write_sets(&mut out, &[("C", t.c()), ("D", t.d()), ("Y", t.y())]);
            out.push_str("A1=\n");
            write_rows(&mut out, t.a1());
            out.push_str("A2=\n");
            write_rows(&mut out, t.a2());
            let embed = |s: &Subspace| -> Vec<Vec<Elem>> {
                s.basis()
                    .iter()
                    .map(|v| v.iter().map(|&x| t.subfield().embed[x as usize]).collect())
                    .collect()
            };
            write_vectors(&mut out, "Lambda", &embed(t.lambda()));
            write_vectors(&mut out, "Delta", &embed(t.delta()));
        }
        Template::Frame(t) => {
            out.push_str("frame\n");
            let els: Vec<String> = t.gamma().elements().iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "Gamma={}", els.join(","));
            write_sets(&mut out, &[("C", t.c()), ("D", t.d()), ("X", t.x()), ("Y0", t.y0()), ("Y1", t.y1())]);
            out.push_str("A1=\n");
            write_rows(&mut out, t.a1());
            write_vectors(&mut out, "Lambda", &t.lambda().generators());
            write_vectors(&mut out, "Delta", &t.delta().generators());
        }
    }
    out
}
