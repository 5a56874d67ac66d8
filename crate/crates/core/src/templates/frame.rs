use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::enumerate::{Choice, Layout, Slot};
use super::{augment, check_disjoint, check_embedding, complement, positions, sorted, Verdict};
use crate::constructions::is_gamma_frame_column;
use crate::field::{make_field, Elem, Field, MultSubgroup};
use crate::linalg::{numbered_labels, Matrix, Subspace};
use crate::matroid::ReprMatroid;
use crate::{Caps, Error, Result};

/// An additive subgroup of `F^S` closed under scaling by `Γ`.
///
/// Additive subgroups of `F^S` are exactly the subspaces over the prime field,
/// so the group is stored as a prime-field subspace of the coordinate
/// expansion of `F^S` (each entry split into its base-`p` digits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGroup {
    gamma: MultSubgroup,
    ambient: Vec<String>,
    span: Subspace,
}

impl GammaGroup {
    /// The subgroup generated by `generators`, which must already be closed
    /// under `Γ`; otherwise `InvalidTemplate`.
    pub fn new(gamma: &MultSubgroup, ambient: Vec<String>, generators: Vec<Vec<Elem>>) -> Result<Self> {
        let g = Self::span_of(gamma, ambient, generators)?;
        let f = gamma.field();
        for v in g.generators() {
            for &c in gamma.elements() {
                let w: Vec<Elem> = v.iter().map(|&x| f.mul(c, x)).collect();
                if !g.contains(&w) {
                    return Err(Error::InvalidTemplate(format!(
                        "subgroup is not closed under scaling by {c}"
                    )));
                }
            }
        }
        Ok(g)
    }

    /// The smallest `Γ`-closed subgroup containing `generators`.
    pub fn closure(gamma: &MultSubgroup, ambient: Vec<String>, generators: Vec<Vec<Elem>>) -> Result<Self> {
        let f = gamma.field();
        let scaled = generators
            .iter()
            .flat_map(|v| gamma.elements().iter().map(move |&c| v.iter().map(|&x| f.mul(c, x)).collect()))
            .collect();
        Self::span_of(gamma, ambient, scaled)
    }

    pub fn zero(gamma: &MultSubgroup, ambient: Vec<String>) -> Result<Self> {
        Self::span_of(gamma, ambient, vec![])
    }

    pub fn full(gamma: &MultSubgroup, ambient: Vec<String>) -> Result<Self> {
        let f = gamma.field();
        let n = ambient.len();
        let gens = (0..n)
            .flat_map(|i| {
                (0..f.degree()).map(move |t| {
                    let mut v = vec![0; n];
                    v[i] = f.characteristic().pow(t);
                    v
                })
            })
            .collect();
        Self::span_of(gamma, ambient, gens)
    }

    fn span_of(gamma: &MultSubgroup, ambient: Vec<String>, generators: Vec<Vec<Elem>>) -> Result<Self> {
        let f = gamma.field();
        let n = ambient.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ambient[a].cmp(&ambient[b]));
        let ambient_sorted: Vec<String> = order.iter().map(|&i| ambient[i].clone()).collect();
        if ambient_sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(format!("{ambient_sorted:?}")));
        }
        let mut expanded = Vec::with_capacity(generators.len());
        for v in generators {
            if v.len() != n || v.iter().any(|&x| !f.contains(x)) {
                return Err(Error::InvalidTemplate("generator does not match the ambient coordinates".into()));
            }
            let permuted: Vec<Elem> = order.iter().map(|&i| v[i]).collect();
            expanded.push(expand(f, &permuted));
        }
        let prime = make_field(f.characteristic(), 1)?;
        let span = Subspace::from_vectors(&prime, numbered_labels("x", n * f.degree() as usize), expanded)?;
        Ok(GammaGroup {
            gamma: gamma.clone(),
            ambient: ambient_sorted,
            span,
        })
    }

    pub fn gamma(&self) -> &MultSubgroup {
        &self.gamma
    }

    pub fn field(&self) -> &Field {
        self.gamma.field()
    }

    /// Coordinate labels in sorted order.
    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.ambient.len() && self.span.contains(&expand(self.field(), v))
    }

    /// Number of elements, `p^dim`.
    pub fn size(&self) -> u128 {
        (self.field().characteristic() as u128).saturating_pow(self.span.dim() as u32)
    }

    /// A basis over the prime field, as vectors of `F^S`.
    pub fn generators(&self) -> Vec<Vec<Elem>> {
        self.span.basis().iter().map(|w| collapse(self.field(), w)).collect()
    }

    pub fn elements(&self, caps: &Caps) -> Result<Vec<Vec<Elem>>> {
        if self.size() > caps.enumeration as u128 {
            return Err(Error::cap("subgroup elements", self.size(), caps.enumeration));
        }
        Ok(self.span.vectors().iter().map(|w| collapse(self.field(), w)).collect())
    }
}

fn expand(f: &Field, v: &[Elem]) -> Vec<Elem> {
    let p = f.characteristic();
    v.iter()
        .flat_map(|&x| {
            let mut x = x;
            (0..f.degree()).map(move |_| {
                let d = x % p;
                x /= p;
                d
            })
        })
        .collect()
}

fn collapse(f: &Field, w: &[Elem]) -> Vec<Elem> {
    let p = f.characteristic();
    w.chunks(f.degree() as usize)
        .map(|digits| digits.iter().rev().fold(0, |acc, &d| acc * p + d))
        .collect()
}

/// A template `(Γ, C, D, X, Y0, Y1, A1, Λ, Δ)`.
///
/// `A1` is indexed by `(D ∪ X) x (C ∪ Y0 ∪ Y1)`, `Λ` is a `Γ`-closed subgroup
/// of `F^D` and `Δ` one of `F^(C ∪ Y0 ∪ Y1)`.
#[derive(Clone, Debug)]
pub struct FrameTemplate {
    gamma: MultSubgroup,
    c: Vec<String>,
    d: Vec<String>,
    x: Vec<String>,
    y0: Vec<String>,
    y1: Vec<String>,
    a1: Matrix,
    lambda: GammaGroup,
    delta: GammaGroup,
}

/// Result of checking a matrix against a frame template. For a conforming
/// matrix, `z` is the lexicographically least valid set of unit-derived
/// columns (by characteristic vector over the sorted columns) and
/// `assignment` names the `Y1` column added to each of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameConformance {
    pub conforms: bool,
    pub violated: Option<&'static str>,
    pub z: Vec<String>,
    pub assignment: Vec<(String, String)>,
}

impl FrameConformance {
    pub fn verdict(&self) -> Verdict {
        Verdict {
            conforms: self.conforms,
            violated: self.violated,
        }
    }

    fn fail(clause: &'static str) -> Self {
        FrameConformance {
            conforms: false,
            violated: Some(clause),
            z: vec![],
            assignment: vec![],
        }
    }
}

/// How a column outside `C ∪ Y0 ∪ Y1` fits the template.
enum Role {
    Plain,
    Unit(Option<usize>),
    Fails(&'static str),
}

struct Blocks {
    d: Vec<usize>,
    x: Vec<usize>,
    free: Vec<usize>,
    t: Vec<usize>,
    y1: Vec<usize>,
    rest: Vec<usize>,
}

impl FrameTemplate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        gamma: &MultSubgroup,
        mut c: Vec<String>,
        mut d: Vec<String>,
        mut x: Vec<String>,
        mut y0: Vec<String>,
        mut y1: Vec<String>,
        a1: Matrix,
        lambda: GammaGroup,
        delta: GammaGroup,
    ) -> Result<Self> {
        for s in [&mut c, &mut d, &mut x, &mut y0, &mut y1] {
            s.sort();
        }
        check_disjoint(&[("C", &c), ("D", &d), ("X", &x), ("Y0", &y0), ("Y1", &y1)])?;
        let bad = |what: &str| Err(Error::InvalidTemplate(what.to_string()));
        let f = gamma.field();
        if a1.field() != f
            || a1.row_labels() != sorted(&[&d, &x]).as_slice()
            || a1.col_labels() != sorted(&[&c, &y0, &y1]).as_slice()
        {
            return bad("A1 must be a (D u X) x (C u Y0 u Y1) matrix over F");
        }
        if lambda.gamma() != gamma || lambda.ambient() != d.as_slice() {
            return bad("Lambda must be a Gamma-closed subgroup of F^D");
        }
        if delta.gamma() != gamma || delta.ambient() != sorted(&[&c, &y0, &y1]).as_slice() {
            return bad("Delta must be a Gamma-closed subgroup of F^(C u Y0 u Y1)");
        }
        Ok(FrameTemplate {
            gamma: gamma.clone(),
            c,
            d,
            x,
            y0,
            y1,
            a1,
            lambda,
            delta,
        })
    }

    /// The template with every set empty: the conforming matrices are the
    /// `Γ`-frame matrices.
    pub fn trivial(gamma: &MultSubgroup) -> Result<Self> {
        let z = Matrix::zeros(gamma.field(), vec![], vec![])?;
        let g = GammaGroup::zero(gamma, vec![])?;
        Self::new(gamma, vec![], vec![], vec![], vec![], vec![], z, g.clone(), g)
    }

    pub fn field(&self) -> &Field {
        self.gamma.field()
    }

    pub fn gamma(&self) -> &MultSubgroup {
        &self.gamma
    }

    pub fn c(&self) -> &[String] {
        &self.c
    }

    pub fn d(&self) -> &[String] {
        &self.d
    }

    pub fn x(&self) -> &[String] {
        &self.x
    }

    pub fn y0(&self) -> &[String] {
        &self.y0
    }

    pub fn y1(&self) -> &[String] {
        &self.y1
    }

    pub fn a1(&self) -> &Matrix {
        &self.a1
    }

    pub fn lambda(&self) -> &GammaGroup {
        &self.lambda
    }

    pub fn delta(&self) -> &GammaGroup {
        &self.delta
    }

    pub fn labels(&self) -> BTreeSet<String> {
        [&self.c, &self.d, &self.x, &self.y0, &self.y1]
            .into_iter()
            .flatten()
            .cloned()
            .collect()
    }

    fn t_labels(&self) -> Vec<String> {
        sorted(&[&self.c, &self.y0, &self.y1])
    }

    fn blocks(&self, a: &Matrix) -> Result<Blocks> {
        if a.field() != self.field() {
            return Err(Error::FieldMismatch("matrix and template over different fields".into()));
        }
        check_embedding(a, &[&self.d, &self.x], &[&self.c, &self.y0, &self.y1])?;
        let (rl, cl) = (a.row_labels(), a.col_labels());
        let t = self.t_labels();
        Ok(Blocks {
            d: positions(rl, &self.d),
            x: positions(rl, &self.x),
            free: positions(rl, &complement(rl, &[&self.d, &self.x])),
            t: positions(cl, &t),
            y1: positions(cl, &self.y1),
            rest: positions(cl, &complement(cl, &[&t])),
        })
    }

    /// The clauses that do not depend on `Z`: the `A1` block and `Δ` rows.
    fn fixed_clauses(&self, a: &Matrix, bl: &Blocks) -> Option<&'static str> {
        let dx = positions(a.row_labels(), &sorted(&[&self.d, &self.x]));
        for (k, &i) in dx.iter().enumerate() {
            for (l, &j) in bl.t.iter().enumerate() {
                if a.at(i, j) != self.a1.at(k, l) {
                    return Some("clause-ii");
                }
            }
        }
        for &i in &bl.free {
            let row: Vec<Elem> = bl.t.iter().map(|&j| a.at(i, j)).collect();
            if !self.delta.contains(&row) {
                return Some("clause-v");
            }
        }
        None
    }

    fn plain_column(&self, col: &[Elem], bl: &Blocks) -> Option<&'static str> {
        if bl.x.iter().any(|&i| col[i] != 0) {
            return Some("clause-ii");
        }
        let free: Vec<Elem> = bl.free.iter().map(|&i| col[i]).collect();
        if !is_gamma_frame_column(&self.gamma, &free) {
            return Some("clause-iii");
        }
        let dpart: Vec<Elem> = bl.d.iter().map(|&i| col[i]).collect();
        if !self.lambda.contains(&dpart) {
            return Some("clause-iv");
        }
        None
    }

    fn unit_column(col: &[Elem], bl: &Blocks) -> bool {
        bl.d.iter().chain(&bl.x).all(|&i| col[i] == 0)
            && bl.free.iter().filter(|&&i| col[i] != 0).count() == 1
            && bl.free.iter().all(|&i| col[i] == 0 || col[i] == 1)
    }

    /// Role of column `j`. With `derived`, a unit column is sought as
    /// `A[:, j] - A[:, k]` over `k` in `Y1`; otherwise as `A[:, j]` itself.
    fn role(&self, a: &Matrix, j: usize, bl: &Blocks, derived: bool) -> Role {
        let col = a.column(j);
        let plain = self.plain_column(&col, bl);
        if plain.is_none() {
            return Role::Plain;
        }
        if !derived {
            if Self::unit_column(&col, bl) {
                return Role::Unit(None);
            }
        } else {
            let f = self.field();
            for &k in &bl.y1 {
                let diff: Vec<Elem> = col.iter().zip(a.column(k)).map(|(&x, y)| f.sub(x, y)).collect();
                if Self::unit_column(&diff, bl) {
                    return Role::Unit(Some(k));
                }
            }
        }
        Role::Fails(plain.unwrap())
    }

    fn check(&self, a: &Matrix, derived: bool) -> Result<FrameConformance> {
        let bl = self.blocks(a)?;
        let fixed = self.fixed_clauses(a, &bl);
        let mut worst = fixed;
        let mut z = Vec::new();
        let mut assignment = Vec::new();
        for &j in &bl.rest {
            match self.role(a, j, &bl, derived) {
                Role::Plain => {}
                Role::Unit(src) => {
                    z.push(a.col_labels()[j].clone());
                    if let Some(k) = src {
                        assignment.push((a.col_labels()[j].clone(), a.col_labels()[k].clone()));
                    }
                }
                Role::Fails(clause) => worst = Some(worst.map_or(clause, |w| w.min(clause))),
            }
        }
        Ok(match worst {
            Some(clause) => FrameConformance::fail(clause),
            None => FrameConformance {
                conforms: true,
                violated: None,
                z,
                assignment,
            },
        })
    }

    /// Whether `A'` respects the template; `z` is the least valid `Z`.
    pub fn respects(&self, a_prime: &Matrix) -> Result<FrameConformance> {
        self.check(a_prime, false)
    }

    /// Whether `A` conforms: some `A'` respecting the template with some `Z`
    /// and `Y1` assignment produces `A`. Each column is decided on its own,
    /// preferring to leave it out of `Z`, which gives the least `Z`.
    pub fn conforms(&self, a: &Matrix) -> Result<FrameConformance> {
        self.check(a, true)
    }

    /// `M([I | A]) / C \ ((B - X) ∪ Y1)` for a conforming `A`.
    pub fn matroid_of(&self, a: &Matrix) -> Result<ReprMatroid> {
        let v = self.conforms(a)?;
        if let Some(clause) = v.violated {
            return Err(Error::NotConforming(clause.to_string()));
        }
        let mut delete = complement(a.row_labels(), &[&self.x]);
        delete.extend(self.y1.iter().cloned());
        ReprMatroid::from_generator(&augment(a)?).minor(&self.c, &delete)
    }

    pub(crate) fn layout(&self, rows: &[String], cols: &[String], caps: &Caps) -> Result<Layout> {
        let b = sorted(&[&self.d, &self.x, rows]);
        let t = self.t_labels();
        let e = sorted(&[&t, cols]);
        let mut base = vec![vec![0; e.len()]; b.len()];
        let dx = positions(&b, &sorted(&[&self.d, &self.x]));
        let ti = positions(&e, &t);
        for (k, &i) in dx.iter().enumerate() {
            for (l, &j) in ti.iter().enumerate() {
                base[i][j] = self.a1.at(k, l);
            }
        }
        let di = positions(&b, &self.d);
        let ri = positions(&b, rows);
        let lambda = self.lambda.elements(caps)?;
        let delta = self.delta.elements(caps)?;
        let frame_cols = frame_columns(&self.gamma, rows.len());
        let y1 = positions(&e, &self.y1);
        let mut slots = Vec::new();
        for &j in &positions(&e, cols) {
            let mut choices = Vec::new();
            for l in &lambda {
                for fc in &frame_cols {
                    let mut v = vec![0; b.len()];
                    for (&i, &x) in di.iter().zip(l) {
                        v[i] = x;
                    }
                    for (&i, &x) in ri.iter().zip(fc) {
                        v[i] = x;
                    }
                    choices.push(Choice::Values(v));
                }
            }
            for &r in &ri {
                for &k in &y1 {
                    choices.push(Choice::Unit { row: r, source: k });
                }
            }
            slots.push(Slot {
                cells: (0..b.len()).map(|i| (i, j)).collect(),
                choices,
            });
        }
        for &i in &ri {
            slots.push(Slot {
                cells: ti.iter().map(|&j| (i, j)).collect(),
                choices: delta.iter().map(|v| Choice::Values(v.clone())).collect(),
            });
        }
        Ok(Layout { rows: b, cols: e, base, slots })
    }
}

/// Distinct `Γ`-frame columns of length `n`, in a fixed order.
fn frame_columns(gamma: &MultSubgroup, n: usize) -> Vec<Vec<Elem>> {
    let f = gamma.field();
    let mut out = BTreeSet::new();
    out.insert(vec![0; n]);
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        out.insert(v);
        for j in (i + 1)..n {
            for &g in gamma.elements() {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = f.neg(g);
                out.insert(v.clone());
                v[i] = f.neg(g);
                v[j] = 1;
                out.insert(v);
            }
        }
    }
    out.into_iter().collect()
}

/// The matrix `A` obtained from `A'` by adding, to each column `i` of `Z`,
/// the column `assignment[i]` of `Y1`.
///
/// `A'` must respect the template with this `Z`; an assignment that misses a
/// column of `Z`, names a column outside `Z`, or sends one outside `Y1` is a
/// `BadAssignment`.
pub fn conform_frame(
    t: &FrameTemplate,
    a_prime: &Matrix,
    z: &[String],
    assignment: &[(String, String)],
) -> Result<Matrix> {
    let bl = t.blocks(a_prime)?;
    if let Some(clause) = t.fixed_clauses(a_prime, &bl) {
        return Err(Error::NotConforming(clause.to_string()));
    }
    let map: HashMap<&str, &str> = assignment.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    if map.len() != assignment.len() {
        return Err(Error::BadAssignment("a column of Z is assigned twice".into()));
    }
    for (i, j) in &map {
        if !z.iter().any(|l| l == i) {
            return Err(Error::BadAssignment(format!("`{i}` is not in Z")));
        }
        if !t.y1.iter().any(|l| l == j) {
            return Err(Error::BadAssignment(format!("`{j}` is not in Y1")));
        }
    }
    let mut a = a_prime.clone();
    for &j in &bl.rest {
        let label = &a_prime.col_labels()[j];
        let col = a_prime.column(j);
        if z.contains(label) {
            if !FrameTemplate::unit_column(&col, &bl) {
                return Err(Error::NotConforming(format!("column `{label}` of Z is not a unit column")));
            }
            let src = map
                .get(label.as_str())
                .ok_or_else(|| Error::BadAssignment(format!("column `{label}` of Z has no assignment")))?;
            let k = a_prime.col_index(src).expect("Y1 is embedded");
            for i in 0..a.nrows() {
                let v = t.field().add(col[i], a_prime.at(i, k));
                a.set(&a_prime.row_labels()[i].clone(), label, v)?;
            }
        } else if let Some(clause) = t.plain_column(&col, &bl) {
            return Err(Error::NotConforming(clause.to_string()));
        }
    }
    if let Some(bad) = z.iter().find(|l| !bl.rest.iter().any(|&j| &a_prime.col_labels()[j] == *l)) {
        return Err(Error::BadAssignment(format!("`{bad}` is not a free column")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{graphic, Graph};
    use crate::field::make_field;
    use crate::matroid::isomorphic;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn gamma_groups() {
        let f = make_field(2, 2).unwrap();
        let w = f.generator();
        let full = MultSubgroup::full(&f);
        let trivial = MultSubgroup::trivial(&f);
        // over GF(4) the additive span of (w) is {0, w}: closed under {1} only
        let g = GammaGroup::new(&trivial, s(&["a"]), vec![vec![w]]).unwrap();
        assert_eq!(g.size(), 2);
        assert!(g.contains(&[w]) && !g.contains(&[1]));
        assert!(matches!(
            GammaGroup::new(&full, s(&["a"]), vec![vec![w]]),
            Err(Error::InvalidTemplate(_))
        ));
        let c = GammaGroup::closure(&full, s(&["a"]), vec![vec![w]]).unwrap();
        assert_eq!(c, GammaGroup::full(&full, s(&["a"])).unwrap());
        assert_eq!(c.elements(&Caps::default()).unwrap().len(), 4);
        // coordinates are sorted with the labels
        let h = GammaGroup::new(&trivial, s(&["b", "a"]), vec![vec![1, 0]]).unwrap();
        assert!(h.contains(&[0, 1]));
    }

    #[test]
    fn expansion_round_trips() {
        let f = make_field(3, 2).unwrap();
        let v: Vec<Elem> = (0..9).collect();
        assert_eq!(collapse(&f, &expand(&f, &v)), v);
    }

    #[test]
    fn frame_columns_match_the_predicate() {
        let f = make_field(5, 1).unwrap();
        let gamma = MultSubgroup::of_order(&f, 2).unwrap();
        let cols = frame_columns(&gamma, 3);
        let mut brute = 0;
        for idx in 0..125u32 {
            let v = vec![idx % 5, (idx / 5) % 5, idx / 25];
            let ok = is_gamma_frame_column(&gamma, &v);
            brute += ok as usize;
            assert_eq!(ok, cols.contains(&v));
        }
        assert_eq!(brute, cols.len());
    }

    #[test]
    fn trivial_template_gives_graphic_matroid_of_triangle() {
        let f = make_field(3, 1).unwrap();
        let t = FrameTemplate::trivial(&MultSubgroup::trivial(&f)).unwrap();
        // signed incidence of K3 with one vertex row removed, plus unit columns
        let a = Matrix::new(&f, s(&["b0", "b1"]), s(&["e0", "e1", "e2"]), vec![vec![1, 1, 0], vec![2, 0, 1]]).unwrap();
        assert!(t.conforms(&a).unwrap().conforms);
        let m = t.matroid_of(&a).unwrap();
        let k3 = graphic(&Graph::complete(3), &f).unwrap();
        assert!(isomorphic(&m, &k3, &Caps::default()).unwrap());
        let bad = Matrix::new(&f, s(&["b0", "b1"]), s(&["e0"]), vec![vec![1], vec![1]]).unwrap();
        assert_eq!(t.conforms(&bad).unwrap().violated, Some("clause-iii"));
    }

    /// Over GF(3), Γ = {1}: X = {x}, Y1 = {y}, A1 = [1] on x-y.
    fn with_y1() -> FrameTemplate {
        let f = make_field(3, 1).unwrap();
        let gamma = MultSubgroup::trivial(&f);
        FrameTemplate::new(
            &gamma,
            vec![],
            vec![],
            s(&["x"]),
            vec![],
            s(&["y"]),
            Matrix::new(&f, s(&["x"]), s(&["y"]), vec![vec![1]]).unwrap(),
            GammaGroup::zero(&gamma, vec![]).unwrap(),
            GammaGroup::full(&gamma, s(&["y"])).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn unit_columns_shifted_by_y1() {
        let t = with_y1();
        let f = t.field().clone();
        // rows b0, x; columns n0, n1, y
        let a_prime = Matrix::new(&f, s(&["b0", "x"]), s(&["n0", "n1", "y"]), vec![vec![1, 0, 2], vec![0, 0, 1]]).unwrap();
        let r = t.respects(&a_prime).unwrap();
        assert!(r.conforms);
        assert!(r.z.is_empty());
        // n0 is a plain unit column; put it in Z anyway
        let a = conform_frame(&t, &a_prime, &s(&["n0"]), &[("n0".into(), "y".into())]).unwrap();
        assert_eq!(a.column(0), vec![0, 1]);
        let c = t.conforms(&a).unwrap();
        assert!(c.conforms);
        assert_eq!(c.z, s(&["n0"]));
        assert_eq!(c.assignment, vec![("n0".to_string(), "y".to_string())]);
        assert!(matches!(
            conform_frame(&t, &a_prime, &s(&["n0"]), &[("n0".into(), "n1".into())]),
            Err(Error::BadAssignment(_))
        ));
        assert!(matches!(
            conform_frame(&t, &a_prime, &s(&["n0"]), &[]),
            Err(Error::BadAssignment(_))
        ));
        // n1 is the zero column, not a unit column
        assert!(matches!(
            conform_frame(&t, &a_prime, &s(&["n1"]), &[("n1".into(), "y".into())]),
            Err(Error::NotConforming(_))
        ));
        // the matroid keeps X and the free columns and drops B - X and Y1
        assert_eq!(t.matroid_of(&a).unwrap().ground(), &["n0", "n1", "x"]);
    }

    #[test]
    fn nonzero_x_row_outside_z_violates_clause_ii() {
        let t = with_y1();
        let f = t.field().clone();
        let a = Matrix::new(&f, s(&["b0", "x"]), s(&["n0", "y"]), vec![vec![2, 0], vec![1, 1]]).unwrap();
        assert_eq!(t.conforms(&a).unwrap().violated, Some("clause-ii"));
    }
}
