use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matrep::codes::{self, ThresholdRow};
use matrep::constructions::{self, Graph};
use matrep::field::{make_field_capped, prime_power, subfield_of_degree, MultSubgroup};
use matrep::growth;
use matrep::io::{read_matrix, read_template, write_matrix, write_template};
use matrep::matroid::{self, Matroid, RankTable, VerticalConnectivity};
use matrep::perturb;
use matrep::templates::{self, Template};
use matrep::{Caps, Error, Field, ReprMatroid};
use num_rational::Rational64;
use rand::SeedableRng;
use serde::Serialize;

mod output;

use output::{Out, Table};

#[derive(Parser)]
#[command(name = "matrep", version, about = "Represented matroids over finite fields")]
struct Cli {
    /// Worker threads for parallel searches (results do not depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized commands; echoed in their output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write results here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CapArgs {
    #[arg(long, global = true)]
    cap_field_order: Option<u32>,
    #[arg(long, global = true)]
    cap_codewords: Option<u64>,
    #[arg(long, global = true)]
    cap_subset: Option<usize>,
    #[arg(long, global = true)]
    cap_iso: Option<usize>,
    #[arg(long, global = true)]
    cap_minor: Option<usize>,
    #[arg(long, global = true)]
    cap_vconn: Option<usize>,
    #[arg(long, global = true)]
    cap_subspaces: Option<u64>,
    #[arg(long, global = true)]
    cap_nodes: Option<u64>,
    #[arg(long, global = true)]
    cap_enumeration: Option<u64>,
    #[arg(long, global = true)]
    cap_points: Option<u64>,
    #[arg(long, global = true)]
    cap_frame: Option<usize>,
}

impl CapArgs {
    fn caps(&self) -> Result<Caps, String> {
        let mut c = Caps::default();
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => {$(
                if let Some(v) = self.$flag {
                    if v == 0 {
                        return Err(format!("--{} must be positive", stringify!($flag).replace('_', "-")));
                    }
                    c.$field = v;
                }
            )*};
        }
        set!(cap_field_order => field_order, cap_codewords => codewords, cap_subset => subset_elements,
             cap_iso => iso_elements, cap_minor => minor_elements, cap_vconn => vconn_elements,
             cap_subspaces => subspaces, cap_nodes => search_nodes, cap_enumeration => enumeration,
             cap_points => points, cap_frame => frame_elements);
        Ok(c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a standard matroid as a matrix file or a JSON rank table.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Smallest circuit.
    Girth { matrix: PathBuf },
    /// Smallest cocircuit.
    Cogirth { matrix: PathBuf },
    /// Generator matrix of the dual.
    Dual { matrix: PathBuf },
    /// Contract and delete labels, or search for a minor isomorphic to `--has`.
    Minor {
        matrix: PathBuf,
        #[arg(long, value_delimiter = ',')]
        contract: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        #[arg(long, conflicts_with_all = ["contract", "delete"])]
        has: Option<PathBuf>,
    },
    /// Vertical connectivity with a separation attaining it.
    Vconn { matrix: PathBuf },
    /// Whether the matroid is projectively equivalent to one over the
    /// subfield of the given degree.
    Confine {
        matrix: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    Perturb {
        #[command(subcommand)]
        what: Perturb,
    },
    Template {
        #[command(subcommand)]
        what: TemplateCmd,
    },
    Code {
        #[command(subcommand)]
        what: CodeCmd,
    },
    /// Binary and graphic thresholds at the given rates.
    Threshold {
        #[arg(long = "R", value_delimiter = ',', required_unless_present = "grid")]
        rates: Vec<String>,
        /// Use the rates 1/(N+1), ..., N/(N+1) instead.
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Monte Carlo block error of nearest-codeword decoding on a binary
    /// symmetric channel.
    Mlsim {
        matrix: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Send a random codeword instead of zero.
        #[arg(long)]
        random_codeword: bool,
        /// Also report the exact value from the syndrome table.
        #[arg(long)]
        exact: bool,
    },
    Growth {
        #[command(subcommand)]
        what: GrowthCmd,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// The complete graph on N vertices.
    #[arg(long, conflicts_with = "edges")]
    complete: Option<usize>,
    /// Edges as `a-b` vertex index pairs, comma-separated.
    #[arg(long, value_delimiter = ',')]
    edges: Vec<String>,
}

impl GraphArgs {
    fn graph(&self) -> Result<Graph, Failure> {
        if let Some(n) = self.complete {
            return Ok(Graph::complete(n));
        }
        if self.edges.is_empty() {
            return Err(Failure::input("give --complete N or --edges"));
        }
        let mut pairs = Vec::new();
        for e in &self.edges {
            let (a, b) = e
                .split_once('-')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Failure::input(format!("bad edge `{e}`")))?;
            pairs.push((a, b));
        }
        let n = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Ok(Graph::from_edges(n, &pairs)?)
    }
}

#[derive(Subcommand)]
enum Construct {
    Pg {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
    },
    Ag {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
    },
    /// `U_{m,n}`; a rank table unless `--q` is given.
    Uniform {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
    },
    /// The cycle matroid of `K_n`.
    Kn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Bicircular matroid of a graph; a rank table unless `--q` is given.
    Bicircular {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        q: Option<u32>,
    },
    Reid {
        #[arg(long)]
        q: u32,
    },
    /// The full rank-r Γ-frame matroid, Γ the subgroup of the given order.
    Gammaframe {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        gamma_order: u32,
    },
}

#[derive(Subcommand)]
enum Perturb {
    /// Distance in the graph of elementary projections and lifts.
    Dist { a: PathBuf, b: PathBuf },
    /// Bounds on the perturbation distance, or its exact value.
    Pert {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// `M(A + P)` for the canonical generator `A`.
    Apply { matrix: PathBuf, perturbation: PathBuf },
}

#[derive(Subcommand)]
enum TemplateCmd {
    /// Whether a matrix conforms, naming the first violated clause.
    Check { template: PathBuf, matrix: PathBuf },
    /// Generator matrix of the matroid of a conforming matrix.
    Realize { template: PathBuf, matrix: PathBuf },
    /// All conforming matrices with the given numbers of free rows and columns.
    Enumerate {
        template: PathBuf,
        #[arg(long, default_value_t = 0)]
        rows: usize,
        #[arg(long, default_value_t = 0)]
        cols: usize,
        /// Only report the count.
        #[arg(long)]
        count: bool,
    },
    /// Search for a conforming matrix whose matroid is the given one.
    Member { template: PathBuf, matrix: PathBuf },
    /// Rewrite a template file in canonical form.
    Show { template: PathBuf },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Length, dimension, distance, rate and relative distance.
    Params { matrix: PathBuf },
    /// Cut-code distance against degree bounds on random connected graphs.
    Cut {
        #[arg(long)]
        vertices: usize,
        /// Probability of each non-tree edge.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long = "R")]
        rate: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaKind {
    Exponential,
    GammaFrame,
    TwoField,
    PgExcluded,
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Closed-form growth rates for r = 1..=r-max.
    Formula {
        #[arg(long, value_enum)]
        kind: FormulaKind,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        d: Option<u128>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        r_max: u32,
    },
    /// Largest simple rank-r restriction of PG(r-1, q) with no forbidden minor.
    Exhaustive {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        forbid: Option<PathBuf>,
    },
    /// Search for a basis certifying an (α, t)-frame matroid.
    Alphat {
        matrix: PathBuf,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        exact: bool,
    },
}

/// A failure and its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_cap_exceeded() { 3 } else { 2 },
            msg: e.to_string(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<matrep::Matrix, Failure> {
    read_matrix(&read_file(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_matroid(path: &Path) -> Result<ReprMatroid, Failure> {
    Ok(ReprMatroid::from_generator(&load_matrix(path)?))
}

fn load_template(path: &Path) -> Result<Template, Failure> {
    read_template(&read_file(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn field_of(q: u32, caps: &Caps) -> Result<Field, Failure> {
    let (p, k) = prime_power(q as u64).ok_or_else(|| Failure::input(format!("{q} is not a prime power")))?;
    Ok(make_field_capped(p, k, caps)?)
}

fn matrix_out(m: &ReprMatroid) -> Out {
    Out::Text(write_matrix(&m.generator()))
}

#[derive(Serialize)]
struct RankTableOut<'a> {
    labels: &'a [String],
    ranks: &'a [u8],
}

fn rank_table_out<M: Matroid>(m: &M, caps: &Caps) -> Result<Out, Failure> {
    let t = RankTable::build(m, caps)?;
    Out::json(&RankTableOut {
        labels: t.labels(),
        ranks: t.ranks(),
    })
}

fn construct(what: &Construct, caps: &Caps) -> Result<Out, Failure> {
    Ok(match what {
        Construct::Pg { rank, q } => matrix_out(&constructions::pg(*rank, &field_of(*q, caps)?, caps)?),
        Construct::Ag { rank, q } => matrix_out(&constructions::ag(*rank, &field_of(*q, caps)?, caps)?),
        Construct::Uniform { rank, n, q: Some(q) } => {
            matrix_out(&constructions::uniform_repr(*rank, *n, &field_of(*q, caps)?)?)
        }
        Construct::Uniform { rank, n, q: None } => rank_table_out(&constructions::uniform(*rank, *n)?, caps)?,
        Construct::Kn { n, q } => matrix_out(&constructions::graphic(&Graph::complete(*n), &field_of(*q, caps)?)?),
        Construct::Bicircular { graph, q: Some(q) } => {
            matrix_out(&constructions::bicircular_repr(&graph.graph()?, &field_of(*q, caps)?, caps)?)
        }
        Construct::Bicircular { graph, q: None } => rank_table_out(&constructions::bicircular(&graph.graph()?), caps)?,
        Construct::Reid { q } => matrix_out(&constructions::reid(&field_of(*q, caps)?)?),
        Construct::Gammaframe { rank, q, gamma_order } => {
            let gamma = MultSubgroup::of_order(&field_of(*q, caps)?, *gamma_order)?;
            matrix_out(&constructions::gamma_frame_full(*rank, &gamma, caps)?)
        }
    })
}

#[derive(Serialize)]
struct Girth {
    girth: Option<usize>,
    witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct Cogirth {
    cogirth: Option<usize>,
    witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct HasMinor {
    has_minor: bool,
    witness: Option<matroid::MinorWitness>,
}

#[derive(Serialize)]
struct Vconn {
    vconn: Option<usize>,
    separation: Option<matroid::Separation>,
}

#[derive(Serialize)]
struct Confine {
    confined: bool,
    /// A matrix over the subfield, in matrix-file form.
    witness: Option<String>,
}

#[derive(Serialize)]
struct Dist {
    dist: usize,
}

#[derive(Serialize)]
struct PertWitness {
    a1: String,
    a2: String,
}

#[derive(Serialize)]
struct Pert {
    lo: usize,
    hi: usize,
    exact: Option<usize>,
    witness: PertWitness,
}

#[derive(Serialize)]
struct Enumerated {
    count: usize,
    matrices: Option<Vec<String>>,
}

#[derive(Serialize)]
struct Member {
    member: bool,
    matrix: Option<String>,
    map: Option<Vec<(String, String)>>,
}

#[derive(Serialize)]
struct Alphat {
    frame: bool,
    witness: Option<growth::AlphaTWitness>,
}

fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn parse_rational(s: &str) -> Option<Rational64> {
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        return (b != 0).then(|| Rational64::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let denom = 10i64.pow(frac.len() as u32);
    let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some(Rational64::new(int * denom + frac, denom))
}

fn threshold(rates: &[String], grid: Option<u32>) -> Result<Out, Failure> {
    let rates: Vec<(f64, Option<Rational64>)> = match grid {
        Some(n) => (1..=n as i64)
            .map(|i| {
                let r = Rational64::new(i, n as i64 + 1);
                (*r.numer() as f64 / *r.denom() as f64, Some(r))
            })
            .collect(),
        None => rates
            .iter()
            .map(|s| {
                let x: f64 = s.trim().parse().map_err(|_| Failure::input(format!("bad rate `{s}`")))?;
                Ok((x, parse_rational(s.trim())))
            })
            .collect::<Result<_, Failure>>()?,
    };
    let mut t = Table::new(&["R", "theta_B", "theta_G", "theta_G_exact", "theta_G_conjectural"]);
    for (x, exact) in rates {
        let ThresholdRow {
            rate,
            theta_binary,
            theta_graphic,
            theta_graphic_conjectural,
        } = codes::threshold_row(x)?;
        let exact = match exact {
            Some(r) => codes::theta_graphic_exact(r)?,
            None => None,
        };
        let g = exact.map_or(theta_graphic, |r| *r.numer() as f64 / *r.denom() as f64);
        t.push(vec![
            rate.to_string(),
            theta_binary.to_string(),
            g.to_string(),
            fmt_opt(exact),
            theta_graphic_conjectural.to_string(),
        ]);
    }
    Ok(Out::Table(t))
}

fn formula(
    kind: FormulaKind,
    q: Option<u64>,
    k: Option<u32>,
    d: Option<u128>,
    n: Option<u32>,
    alpha: Option<u64>,
    r_max: u32,
) -> Result<Out, Failure> {
    let need = |x: Option<u64>, name: &str| x.ok_or_else(|| Failure::input(format!("this formula needs --{name}")));
    let need32 = |x: Option<u32>, name: &str| x.ok_or_else(|| Failure::input(format!("this formula needs --{name}")));
    let mut t = Table::new(&["r", "value", "pre_asymptotic"]);
    for r in 1..=r_max {
        let v = match kind {
            FormulaKind::Exponential => growth::h_exponential(
                need(q, "q")?,
                need32(k, "k")?,
                d.ok_or_else(|| Failure::input("this formula needs --d"))?,
                r,
            )?,
            FormulaKind::TwoField => growth::h_nelson_two_field(need(q, "q")?, r)?,
            FormulaKind::PgExcluded => growth::h_nelson_pg_excluded(need(q, "q")?, need32(n, "n")?, r)?,
            FormulaKind::GammaFrame => {
                let v = growth::h_gamma_frame(need(alpha, "alpha")?, r as u64);
                t.push(vec![r.to_string(), v.to_string(), String::new()]);
                continue;
            }
        };
        t.push(vec![r.to_string(), v.value.to_string(), v.pre_asymptotic.to_string()]);
    }
    Ok(Out::Table(t))
}

fn run(cli: &Cli, caps: &Caps) -> Result<Out, Failure> {
    Ok(match &cli.command {
        Command::Construct { what } => construct(what, caps)?,
        Command::Girth { matrix } => {
            let w = load_matroid(matrix)?.girth(caps)?;
            Out::json(&Girth {
                girth: w.as_ref().map(Vec::len),
                witness: w,
            })?
        }
        Command::Cogirth { matrix } => {
            let w = load_matroid(matrix)?.cogirth(caps)?;
            Out::json(&Cogirth {
                cogirth: w.as_ref().map(Vec::len),
                witness: w,
            })?
        }
        Command::Dual { matrix } => matrix_out(&load_matroid(matrix)?.dual()),
        Command::Minor {
            matrix,
            contract,
            delete,
            has,
        } => {
            let m = load_matroid(matrix)?;
            match has {
                Some(n) => {
                    let w = matroid::has_minor(&m, &load_matroid(n)?, caps)?;
                    Out::json(&HasMinor {
                        has_minor: w.is_some(),
                        witness: w,
                    })?
                }
                None => matrix_out(&m.minor(contract, delete)?),
            }
        }
        Command::Vconn { matrix } => {
            let v = matroid::vertical_connectivity(&load_matroid(matrix)?, caps)?;
            let separation = match &v {
                VerticalConnectivity::Finite { separation, .. } => Some(separation.clone()),
                VerticalConnectivity::Unbounded => None,
            };
            Out::json(&Vconn {
                vconn: v.value(),
                separation,
            })?
        }
        Command::Confine { matrix, degree } => {
            let m = load_matroid(matrix)?;
            let sub = subfield_of_degree(m.field(), *degree)?;
            let w = matroid::confined_to(&m, &sub.field)?;
            Out::json(&Confine {
                confined: w.is_some(),
                witness: w.as_ref().map(write_matrix),
            })?
        }
        Command::Perturb { what } => match what {
            Perturb::Dist { a, b } => Out::json(&Dist {
                dist: perturb::dist(&load_matroid(a)?, &load_matroid(b)?, caps)?,
            })?,
            Perturb::Pert { a, b, exact } => {
                let (m1, m2) = (load_matroid(a)?, load_matroid(b)?);
                let bounds = perturb::pert_bounds(&m1, &m2)?;
                let (value, a1, a2) = if *exact {
                    let e = perturb::pert_exact(&m1, &m2, caps)?;
                    (Some(e.value), e.a1, e.a2)
                } else {
                    (bounds.exact.then_some(bounds.lo), bounds.a1, bounds.a2)
                };
                Out::json(&Pert {
                    lo: bounds.lo,
                    hi: bounds.hi,
                    exact: value,
                    witness: PertWitness {
                        a1: write_matrix(&a1),
                        a2: write_matrix(&a2),
                    },
                })?
            }
            Perturb::Apply { matrix, perturbation } => {
                let p = perturb::apply_perturbation(&load_matroid(matrix)?, &load_matrix(perturbation)?)?;
                matrix_out(&p.matroid)
            }
        },
        Command::Template { what } => match what {
            TemplateCmd::Check { template, matrix } => {
                Out::json(&load_template(template)?.check(&load_matrix(matrix)?)?)?
            }
            TemplateCmd::Realize { template, matrix } => {
                matrix_out(&load_template(template)?.matroid_of(&load_matrix(matrix)?)?)
            }
            TemplateCmd::Enumerate {
                template,
                rows,
                cols,
                count,
            } => {
                let all = templates::enumerate_conforming(&load_template(template)?, *rows, *cols, caps)?;
                Out::json(&Enumerated {
                    count: all.len(),
                    matrices: (!count).then(|| all.iter().map(|c| write_matrix(&c.a)).collect()),
                })?
            }
            TemplateCmd::Member { template, matrix } => {
                let m = templates::member_of(&load_template(template)?, &load_matroid(matrix)?, caps)?;
                Out::json(&Member {
                    member: m.is_some(),
                    matrix: m.as_ref().map(|m| write_matrix(&m.a)),
                    map: m.map(|m| m.map),
                })?
            }
            TemplateCmd::Show { template } => Out::Text(write_template(&load_template(template)?)),
        },
        Command::Code { what } => match what {
            CodeCmd::Params { matrix } => {
                let p = codes::code_params(&load_matroid(matrix)?, caps)?;
                let mut t = Table::new(&["n", "k", "d", "rate", "rel_dist"]);
                t.push(vec![
                    p.n.to_string(),
                    p.k.to_string(),
                    fmt_opt(p.d),
                    p.rate.to_string(),
                    fmt_opt(p.rel_dist),
                ]);
                Out::Table(t)
            }
            CodeCmd::Cut {
                vertices,
                density,
                rate,
                count,
            } => {
                if !(0.0..=1.0).contains(density) {
                    return Err(Failure::input("--density must lie in [0, 1]"));
                }
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
                let mut t = Table::new(&[
                    "index",
                    "vertices",
                    "edges",
                    "distance",
                    "min_degree",
                    "average_degree",
                    "cut_rate",
                    "cycle_rate",
                    "delta_stated",
                    "delta_corrected",
                    "holds",
                    "seed",
                ]);
                for i in 0..*count {
                    let g = Graph::random_connected(*vertices, *density, &mut rng);
                    let r = codes::cut_code_distance_bound(&g, *rate, caps)?;
                    t.push(vec![
                        i.to_string(),
                        r.vertices.to_string(),
                        r.edges.to_string(),
                        r.distance.to_string(),
                        r.min_degree.to_string(),
                        r.average_degree.to_string(),
                        r.cut_rate.to_string(),
                        r.cycle_rate.to_string(),
                        r.delta_stated.to_string(),
                        r.delta_corrected.to_string(),
                        r.holds.to_string(),
                        cli.seed.to_string(),
                    ]);
                }
                Out::Table(t)
            }
        },
        Command::Threshold { rates, grid } => threshold(rates, *grid)?,
        Command::Mlsim {
            matrix,
            p,
            trials,
            random_codeword,
            exact,
        } => {
            let m = load_matroid(matrix)?;
            let e = if *random_codeword {
                codes::ml_error_mc_random_codeword(&m, *p, cli.seed, *trials, caps)?
            } else {
                codes::ml_error_mc(&m, *p, cli.seed, *trials, caps)?
            };
            let mut header = vec!["p", "err", "ci_lo", "ci_hi", "trials", "seed"];
            let mut row = vec![
                e.p.to_string(),
                e.rate.to_string(),
                e.ci_lo.to_string(),
                e.ci_hi.to_string(),
                e.trials.to_string(),
                e.seed.to_string(),
            ];
            if *exact {
                header.push("exact");
                row.push(codes::ml_error_exact(&m, *p)?.to_string());
            }
            let mut t = Table::new(&header);
            t.push(row);
            Out::Table(t)
        }
        Command::Growth { what } => match what {
            GrowthCmd::Formula {
                kind,
                q,
                k,
                d,
                n,
                alpha,
                r_max,
            } => formula(*kind, *q, *k, *d, *n, *alpha, *r_max)?,
            GrowthCmd::Exhaustive { q, rank, forbid } => {
                let forbidden = forbid.as_deref().map(load_matroid).transpose()?;
                let e = growth::h_exhaustive(&field_of(*q, caps)?, *rank, forbidden.as_ref(), caps)?;
                Out::json(&e)?
            }
            GrowthCmd::Alphat { matrix, alpha, t, exact } => {
                let w = growth::is_alpha_t_frame(&load_matroid(matrix)?, *alpha, *t, *exact, caps)?;
                Out::json(&Alphat {
                    frame: w.is_some(),
                    witness: w,
                })?
            }
        },
    })
}

fn emit(cli: &Cli, out: Out) -> Result<(), Failure> {
    let text = out.render(cli.format)?;
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let caps = cli.caps.caps().map_err(Failure::input)?;
        if let Some(w) = cli.workers {
            if w == 0 {
                return Err(Failure::input("--workers must be positive"));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build_global()
                .map_err(|e| Failure::input(e.to_string()))?;
        }
        let out = run(&cli, &caps)?;
        emit(&cli, out)
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("matrep: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
