//! Named matroids: projective and affine geometries, uniform, graphic and
//! bicircular matroids, Reid geometries and full Γ-frame matroids, plus the
//! frame-matrix predicates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Elem, Field, MultSubgroup};
use crate::linalg::{numbered_labels, rank_of_rows, Matrix};
use crate::matroid::{Matroid, OracleMatroid, RankTable, ReprMatroid};
use crate::{Caps, Error, Result};

/// A simple graph. Edge `i` has label `edge_labels()[i]`, endpoints stored
/// with the smaller vertex index first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut norm = Vec::with_capacity(edges.len());
        let mut pairs = std::collections::HashSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) uses a missing vertex")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !pairs.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
            norm.push(e);
        }
        Ok(Graph { vertices, edges: norm })
    }

    /// Vertices `v0, v1, ...`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(numbered_labels("v", n), edges.to_vec())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect::<Vec<_>>();
        Self::from_edges(n, &edges).expect("complete graphs are simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("paths are simple")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("a cycle needs at least 3 vertices".into()));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// A uniformly random labeled spanning tree (random attachment) plus each
    /// remaining pair independently with probability `p`.
    pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Self {
        let mut edges = Vec::new();
        let mut present = std::collections::HashSet::new();
        for v in 1..n {
            let u = rng.gen_range(0..v);
            edges.push((u, v));
            present.insert((u, v));
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if !present.contains(&(a, b)) && rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        Self::from_edges(n, &edges).expect("generated edges are simple")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `e0, e1, ...` in edge order.
    pub fn edge_labels(&self) -> Vec<String> {
        numbered_labels("e", self.edges.len())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.num_vertices()).map(|v| self.degree(v)).min()
    }

    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.num_vertices());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        (0..self.num_vertices()).filter(|&v| uf.find(v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    /// Length of a shortest cycle, by breadth-first search from every vertex.
    pub fn girth(&self) -> Option<usize> {
        let n = self.num_vertices();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Fewest edges whose removal disconnects the graph, by trying every
    /// vertex bipartition. `None` for graphs with fewer than two vertices.
    pub fn min_edge_cut(&self) -> Result<Option<usize>> {
        let n = self.num_vertices();
        if n > 24 {
            return Err(Error::cap("vertices for edge-cut enumeration", n as u64, 24u64));
        }
        if n < 2 {
            return Ok(None);
        }
        let full = (1u32 << n) - 1;
        // one side always holds vertex 0
        let best = (0..1u32 << (n - 1))
            .map(|side| side << 1 | 1)
            .filter(|&s| s != full)
            .map(|s| self.edges.iter().filter(|&&(a, b)| (s >> a & 1) != (s >> b & 1)).count())
            .min();
        Ok(best)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn points_count(q: u64, m: u32) -> u128 {
    ((q as u128).pow(m) - 1) / (q as u128 - 1)
}

/// Nonzero vectors of `F^m` whose first nonzero coordinate is 1, in order of
/// their base-q integer code (coordinate 0 least significant).
fn projective_points(f: &Field, m: usize) -> Vec<Vec<Elem>> {
    let q = f.order() as u64;
    let total = q.pow(m as u32);
    let mut out = Vec::new();
    for mut code in 1..total {
        let mut v = vec![0; m];
        for x in v.iter_mut() {
            *x = (code % q) as Elem;
            code /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn from_columns(f: &Field, rank: usize, prefix: &str, cols: &[Vec<Elem>]) -> Result<ReprMatroid> {
    let a = Matrix::from_columns(f, numbered_labels("r", rank), numbered_labels(prefix, cols.len()), cols)?;
    Ok(ReprMatroid::from_generator(&a))
}

/// `PG(m-1, F)`: one element per one-dimensional subspace of `F^m`.
pub fn pg(m: usize, f: &Field, caps: &Caps) -> Result<ReprMatroid> {
    if m == 0 {
        return Err(Error::DomainError("projective geometry needs rank at least 1".into()));
    }
    let count = points_count(f.order() as u64, m as u32);
    if count > caps.points as u128 {
        return Err(Error::cap("projective geometry points", count, caps.points as u128));
    }
    from_columns(f, m, "p", &projective_points(f, m))
}

/// `AG(m-1, F)`: the points of `PG(m-1, F)` off the hyperplane `x_0 = 0`.
pub fn ag(m: usize, f: &Field, caps: &Caps) -> Result<ReprMatroid> {
    if m == 0 {
        return Err(Error::DomainError("affine geometry needs rank at least 1".into()));
    }
    let count = (f.order() as u128).pow(m as u32 - 1);
    if count > caps.points as u128 {
        return Err(Error::cap("affine geometry points", count, caps.points as u128));
    }
    let pts: Vec<_> = projective_points(f, m).into_iter().filter(|v| v[0] == 1).collect();
    from_columns(f, m, "p", &pts)
}

/// `U_{m,n}` as a rank oracle on `u0, u1, ...`.
pub fn uniform(m: usize, n: usize) -> Result<OracleMatroid> {
    if m > n {
        return Err(Error::DomainError(format!("U_{{{m},{n}}} needs m <= n")));
    }
    OracleMatroid::new(numbered_labels("u", n), move |s| s.len().min(m))
}

/// `U_{m,n}` represented over `F`. Ranks 0, 1, `n-1` and `n` work over every
/// field; otherwise the columns are Vandermonde vectors at distinct field
/// elements plus the point at infinity, which needs `n <= q + 1`.
pub fn uniform_repr(m: usize, n: usize, f: &Field) -> Result<ReprMatroid> {
    if m > n {
        return Err(Error::DomainError(format!("U_{{{m},{n}}} needs m <= n")));
    }
    let q = f.order() as usize;
    let cols: Vec<Vec<Elem>> = if m == 0 {
        vec![Vec::new(); n]
    } else if m == n {
        (0..n).map(|j| (0..m).map(|i| (i == j) as Elem).collect()).collect()
    } else if m == 1 {
        vec![vec![1]; n]
    } else if m + 1 == n {
        let minus_one = f.neg(1);
        let mut cols: Vec<Vec<Elem>> = (0..m).map(|j| (0..m).map(|i| (i == j) as Elem).collect()).collect();
        cols.push(vec![minus_one; m]);
        cols
    } else {
        if n > q + 1 {
            return Err(Error::FieldTooSmall(format!(
                "U_{{{m},{n}}} needs at least {} field elements, GF({q}) has {q}",
                n - 1
            )));
        }
        let mut cols: Vec<Vec<Elem>> = f
            .elements()
            .take(n.min(q))
            .map(|t| (0..m).map(|i| f.pow(t, i as u64)).collect())
            .collect();
        if n == q + 1 {
            let mut inf = vec![0; m];
            inf[m - 1] = 1;
            cols.push(inf);
        }
        cols
    };
    let a = Matrix::from_columns(f, numbered_labels("r", m), numbered_labels("u", n), &cols)?;
    Ok(ReprMatroid::from_generator(&a))
}

/// `M(G)` from the signed incidence matrix: edge `(a, b)` with `a < b` has
/// `+1` in row `a` and `-1` in row `b`.
pub fn graphic(g: &Graph, f: &Field) -> Result<ReprMatroid> {
    let minus_one = f.neg(1);
    let cols: Vec<Vec<Elem>> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let mut c = vec![0; g.num_vertices()];
            c[a] = 1;
            c[b] = minus_one;
            c
        })
        .collect();
    let a = Matrix::from_columns(f, g.vertices().to_vec(), g.edge_labels(), &cols)?;
    Ok(ReprMatroid::from_generator(&a))
}

/// Rank of an edge set in the bicircular matroid: vertices touched minus the
/// number of acyclic components.
fn bicircular_rank(n: usize, edges: &[(usize, usize)], s: &[usize]) -> usize {
    let mut uf = UnionFind::new(n);
    let mut touched = vec![false; n];
    let mut cyclic = vec![false; n];
    for &i in s {
        let (a, b) = edges[i];
        touched[a] = true;
        touched[b] = true;
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra == rb {
            cyclic[ra] = true;
        } else {
            uf.union(ra, rb);
            let root = uf.find(ra);
            cyclic[root] = cyclic[ra] || cyclic[rb];
        }
    }
    let vs = touched.iter().filter(|&&t| t).count();
    let acyclic = (0..n).filter(|&v| touched[v] && uf.find(v) == v && !cyclic[v]).count();
    vs - acyclic
}

/// `BM(G)` as a rank oracle on the edge labels.
pub fn bicircular(g: &Graph) -> OracleMatroid {
    let n = g.num_vertices();
    let edges = g.edges().to_vec();
    OracleMatroid::new(g.edge_labels(), move |s| bicircular_rank(n, &edges, s))
        .expect("edge labels are distinct")
}

/// Gain assignments tried by [`bicircular_repr`] before giving up.
pub const BICIRCULAR_ATTEMPTS: usize = 1024;

/// A represented bicircular matroid: edge `i = (a, b)` gets the column
/// `e_a - g^(k_i) e_b` for a fixed generator `g`. A set of such columns
/// realises `BM(G)` exactly when no cycle is balanced, that is, when no
/// cycle has signed exponent sum divisible by `q - 1`. The exponents
/// `k_i = i + 1` are tried first, then assignments drawn from a fixed-seed
/// stream; each candidate is compared with the oracle on every subset. After
/// [`BICIRCULAR_ATTEMPTS`] failures the result is `FieldTooSmall`.
pub fn bicircular_repr(g: &Graph, f: &Field, caps: &Caps) -> Result<ReprMatroid> {
    let oracle = RankTable::build(&bicircular(g), caps)?;
    let order = f.order() as u64 - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    // over GF(2) every gain is 1 and one attempt decides
    let attempts = if order == 1 { 1 } else { BICIRCULAR_ATTEMPTS };
    for attempt in 0..attempts {
        let cols: Vec<Vec<Elem>> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let k = if attempt == 0 { i as u64 + 1 } else { rng.gen_range(0..order) };
                let mut c = vec![0; g.num_vertices()];
                c[a] = 1;
                c[b] = f.neg(f.exp(k));
                c
            })
            .collect();
        let a = Matrix::from_columns(f, g.vertices().to_vec(), g.edge_labels(), &cols)?;
        let m = ReprMatroid::from_generator(&a);
        if RankTable::build(&m, caps)? == oracle {
            return Ok(m);
        }
    }
    Err(Error::FieldTooSmall(format!(
        "no unbalanced gain assignment found in GF({})",
        f.order()
    )))
}

/// The Reid geometry: the points of `PG(2, F)` on two lines through `e`
/// together with two further points `a, b` on a third line through `e`.
///
/// Coordinates: `e = (1,0,0)`, full lines `span(e, (0,1,0))` and
/// `span(e, (0,0,1))`, and `a = (0,1,1)`, `b = (1,1,1)` on `span(e, (0,1,1))`.
pub fn reid(f: &Field) -> Result<ReprMatroid> {
    reid_from(f, &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, 1], &[1, 1, 1])
}

/// A Reid geometry from explicit choices: lines `span(e, d1)` and
/// `span(e, d3)` and points `a, b` on a third line through `e`.
pub fn reid_from(f: &Field, e: &[Elem], d1: &[Elem], d3: &[Elem], a: &[Elem], b: &[Elem]) -> Result<ReprMatroid> {
    let rank = |vs: &[&[Elem]]| rank_of_rows(f, &vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>());
    if [e, d1, d3, a, b].iter().any(|v| v.len() != 3 || v.iter().any(|&x| !f.contains(x))) {
        return Err(Error::DomainError("Reid coordinates must be vectors in F^3".into()));
    }
    let ok = rank(&[e, d1, d3]) == 3
        && rank(&[e, a, b]) == 2
        && rank(&[e, a]) == 2
        && rank(&[e, b]) == 2
        && rank(&[a, b]) == 2
        && rank(&[e, d1, a]) == 3
        && rank(&[e, d3, a]) == 3;
    if !ok {
        return Err(Error::DomainError(
            "need two lines through e and two distinct points of a third line through e other than e".into(),
        ));
    }
    let mut pts: Vec<Vec<Elem>> = Vec::new();
    let push = |v: Vec<Elem>, pts: &mut Vec<Vec<Elem>>| {
        let mut v = v;
        crate::linalg::normalize(f, &mut v);
        if !pts.contains(&v) {
            pts.push(v);
        }
    };
    for d in [d1, d3] {
        push(e.to_vec(), &mut pts);
        push(d.to_vec(), &mut pts);
        for t in f.elements().filter(|&t| t != 0) {
            push((0..3).map(|i| f.add(e[i], f.mul(t, d[i]))).collect(), &mut pts);
        }
    }
    push(a.to_vec(), &mut pts);
    push(b.to_vec(), &mut pts);
    from_columns(f, 3, "p", &pts)
}

/// All unit vectors `e_i` and all `e_i - gamma e_j` for `i < j`, `gamma` in `Γ`.
pub fn gamma_frame_full(r: usize, gamma: &MultSubgroup, caps: &Caps) -> Result<ReprMatroid> {
    if r == 0 {
        return Err(Error::DomainError("rank must be at least 1".into()));
    }
    let f = gamma.field();
    let count = r as u128 + gamma.order() as u128 * (r as u128 * (r as u128 - 1) / 2);
    if count > caps.points as u128 {
        return Err(Error::cap("frame matroid elements", count, caps.points as u128));
    }
    let mut cols: Vec<Vec<Elem>> = (0..r).map(|i| (0..r).map(|k| (k == i) as Elem).collect()).collect();
    for i in 0..r {
        for j in (i + 1)..r {
            for &g in gamma.elements() {
                let mut c = vec![0; r];
                c[i] = 1;
                c[j] = f.neg(g);
                cols.push(c);
            }
        }
    }
    from_columns(f, r, "f", &cols)
}

/// Every column has at most two nonzero entries.
pub fn is_frame_matrix(a: &Matrix) -> bool {
    (0..a.ncols()).all(|j| a.column(j).iter().filter(|&&x| x != 0).count() <= 2)
}

/// A frame matrix whose one-entry columns hold a 1 and whose two-entry
/// columns hold a 1 and, in the other row, `-gamma` with `gamma` in `Γ`.
pub fn is_gamma_frame_matrix(a: &Matrix, gamma: &MultSubgroup) -> bool {
    let f = a.field();
    if f != gamma.field() {
        return false;
    }
    (0..a.ncols()).all(|j| is_gamma_frame_column(gamma, &a.column(j)))
}

pub(crate) fn is_gamma_frame_column(gamma: &MultSubgroup, col: &[Elem]) -> bool {
    let f = gamma.field();
    let nz: Vec<Elem> = col.iter().copied().filter(|&x| x != 0).collect();
    match nz.as_slice() {
        [] => true,
        [x] => *x == 1,
        [x, y] => (*x == 1 && gamma.contains(f.neg(*y))) || (*y == 1 && gamma.contains(f.neg(*x))),
        _ => false,
    }
}

/// Whether `basis` is a basis of `M'` such that every other element is
/// spanned by at most two basis elements; then `M' \ basis` is a frame
/// matroid. Deciding frameness of a matroid without a given `M'` would need a
/// search over all extensions and is not attempted.
pub fn is_frame_extension<M: Matroid + ?Sized>(m_prime: &M, basis: &[&str]) -> Result<bool> {
    let b: Vec<usize> = basis
        .iter()
        .map(|l| m_prime.index_of(l).ok_or_else(|| Error::NotSubset(l.to_string())))
        .collect::<Result<_>>()?;
    if m_prime.rank_indices(&b) != b.len() || b.len() != m_prime.rank() {
        return Ok(false);
    }
    Ok((0..m_prime.len()).filter(|e| !b.contains(e)).all(|e| {
        m_prime.rank_indices(&[e]) == 0
            || b.iter().any(|&x| m_prime.rank_indices(&[x, e]) == 1)
            || b.iter().enumerate().any(|(i, &x)| b[i + 1..].iter().any(|&y| m_prime.rank_indices(&[x, y, e]) == 2))
    }))
}
