//! Deterministic generators for the example state sets and their graphs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{alpha, chromatic_number, find_isomorphism, is_chordal, simplicial_vertices, Graph, SearchBudget};
use crate::linalg::{gram, vectors_rank, ComplexVector, Tolerance, C64};
use crate::states::{build_graphs, validate_orthonormal, ProductStateSet, RawProduct};

/// The two five-state subsets of the nine domino states (figure labels).
pub const SUBSET_EX_A: [usize; 5] = [2, 4, 6, 8, 9];
pub const SUBSET_EX_B: [usize; 5] = [2, 6, 7, 8, 9];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    /// Qubit-qutrit set distinguished by Alice measuring `|+>, |->`.
    PaperExample1,
    /// Two-qubit four-cycle, not one-way distinguishable.
    PaperExample2,
    /// Four-cycle in `C^4 (x) C^2`, distinguishable.
    PaperExample3,
    /// Qubit-qutrit set whose Bob complement is two triangles sharing a vertex.
    PaperExample4,
    /// `G_B = C_5`, `G_A = P_3 + P_2` in `C^3 (x) C^3`.
    MinDimC5,
    /// The nine domino states.
    BennettNWE,
    /// Domino states with the given 1-based figure labels.
    BennettSubset(Vec<usize>),
    TilesUPB,
    Bullseye(usize),
    BullseyeRecursive(usize),
    CycleRep(usize),
    PathRep(usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Bullseye(d) if *d < 3 => Err(Error::InvalidSpec(format!("bullseye needs d >= 3, got {d}"))),
            FamilySpec::BullseyeRecursive(d) if *d < 3 || d % 2 == 0 => {
                Err(Error::InvalidSpec(format!("recursive bullseye needs odd d >= 3, got {d}")))
            }
            FamilySpec::CycleRep(n) if *n < 4 => Err(Error::InvalidSpec(format!("cycle representation needs n >= 4, got {n}"))),
            FamilySpec::PathRep(n) if *n < 2 => Err(Error::InvalidSpec(format!("path representation needs n >= 2, got {n}"))),
            FamilySpec::BennettSubset(labels) => {
                let mut sorted = labels.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if labels.is_empty() || sorted.len() != labels.len() || labels.iter().any(|&l| l == 0 || l > 9) {
                    return Err(Error::InvalidSpec(format!("subset labels must be distinct values in 1..=9, got {labels:?}")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::PaperExample1 => write!(f, "example1"),
            FamilySpec::PaperExample2 => write!(f, "example2"),
            FamilySpec::PaperExample3 => write!(f, "example3"),
            FamilySpec::PaperExample4 => write!(f, "example4"),
            FamilySpec::MinDimC5 => write!(f, "min-dim-c5"),
            FamilySpec::BennettNWE => write!(f, "bennett"),
            FamilySpec::BennettSubset(l) => {
                let s: Vec<String> = l.iter().map(|x| x.to_string()).collect();
                write!(f, "bennett-subset:{}", s.join(","))
            }
            FamilySpec::TilesUPB => write!(f, "tiles"),
            FamilySpec::Bullseye(d) => write!(f, "bullseye:{d}"),
            FamilySpec::BullseyeRecursive(d) => write!(f, "bullseye-recursive:{d}"),
            FamilySpec::CycleRep(n) => write!(f, "cycle-rep:{n}"),
            FamilySpec::PathRep(n) => write!(f, "path-rep:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses names such as `example1`, `bennett`, `bennett-subset:2,4,6,8,9`,
    /// `tiles`, `bullseye:4`, `cycle-rep:6`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let int = |a: Option<&str>| -> Result<usize> {
            a.ok_or_else(|| Error::InvalidSpec(format!("{name} needs a parameter, e.g. {name}:5")))?
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad parameter in {s:?}")))
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "example1" => FamilySpec::PaperExample1,
            "example2" => FamilySpec::PaperExample2,
            "example3" => FamilySpec::PaperExample3,
            "example4" => FamilySpec::PaperExample4,
            "min-dim-c5" => FamilySpec::MinDimC5,
            "bennett" => FamilySpec::BennettNWE,
            "bennett-subset" => {
                let list = arg.ok_or_else(|| Error::InvalidSpec("bennett-subset needs labels, e.g. bennett-subset:2,4,6,8,9".into()))?;
                let labels = list
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidSpec(format!("bad label list {list:?}")))?;
                FamilySpec::BennettSubset(labels)
            }
            "tiles" => FamilySpec::TilesUPB,
            "bullseye" => FamilySpec::Bullseye(int(arg)?),
            "bullseye-recursive" => FamilySpec::BullseyeRecursive(int(arg)?),
            "cycle-rep" => FamilySpec::CycleRep(int(arg)?),
            "path-rep" => FamilySpec::PathRep(int(arg)?),
            _ => return Err(Error::InvalidSpec(format!("unknown family {name:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `sum_j coef_j |idx_j>` in `C^d`.
fn ket(d: usize, terms: &[(usize, f64)]) -> ComplexVector {
    let mut e = vec![c(0.0); d];
    for &(i, x) in terms {
        e[i] += c(x);
    }
    ComplexVector::new(e)
}

fn state(label: impl Into<String>, a: ComplexVector, b: ComplexVector) -> RawProduct {
    RawProduct::new(label, a, b)
}

fn numbered(states: Vec<(ComplexVector, ComplexVector)>) -> Vec<RawProduct> {
    states
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| state((k + 1).to_string(), a, b))
        .collect()
}

fn ingest(raw: Vec<RawProduct>) -> Result<ProductStateSet> {
    ProductStateSet::ingest(raw, &Tolerance::default())
}

/// Generates with the default seed 0.
pub fn generate(spec: &FamilySpec) -> Result<ProductStateSet> {
    generate_seeded(spec, 0)
}

/// Generates a family; `seed` only affects the randomized constructions.
pub fn generate_seeded(spec: &FamilySpec, seed: u64) -> Result<ProductStateSet> {
    spec.validate()?;
    match spec {
        FamilySpec::PaperExample1 => ingest(numbered(vec![
            (ket(2, &[(0, 1.0)]), ket(3, &[(0, 1.0)])),
            (ket(2, &[(0, 1.0), (1, 1.0)]), ket(3, &[(1, 1.0)])),
            (ket(2, &[(0, 1.0), (1, -1.0)]), ket(3, &[(1, 1.0)])),
            (ket(2, &[(0, 1.0), (1, 1.0)]), ket(3, &[(2, 1.0)])),
        ])),
        FamilySpec::PaperExample2 => ingest(numbered(vec![
            (ket(2, &[(0, 1.0)]), ket(2, &[(0, 1.0)])),
            (ket(2, &[(0, 1.0), (1, 1.0)]), ket(2, &[(1, 1.0)])),
            (ket(2, &[(0, 1.0), (1, -1.0)]), ket(2, &[(1, 1.0)])),
            (ket(2, &[(1, 1.0)]), ket(2, &[(0, 1.0)])),
        ])),
        FamilySpec::PaperExample3 => ingest(numbered(vec![
            (ket(4, &[(0, 1.0), (1, 1.0)]), ket(2, &[(0, 1.0)])),
            (ket(4, &[(1, 1.0), (2, 1.0)]), ket(2, &[(1, 1.0)])),
            (ket(4, &[(0, 1.0), (3, 1.0)]), ket(2, &[(1, 1.0)])),
            (ket(4, &[(2, 1.0), (3, 1.0)]), ket(2, &[(0, 1.0)])),
        ])),
        FamilySpec::PaperExample4 => ingest(numbered(vec![
            (ket(2, &[(0, 1.0)]), ket(3, &[(0, 1.0)])),
            (ket(2, &[(0, 1.0)]), ket(3, &[(1, 1.0)])),
            (ket(2, &[(1, 1.0)]), ket(3, &[(0, 1.0), (1, 1.0)])),
            (ket(2, &[(1, 1.0)]), ket(3, &[(0, 1.0), (1, -1.0)])),
            (ket(2, &[(0, 1.0), (1, 1.0)]), ket(3, &[(2, 1.0)])),
        ])),
        FamilySpec::MinDimC5 => ingest(numbered(vec![
            (ket(3, &[(0, 1.0)]), ket(3, &[(0, 1.0)])),
            (ket(3, &[(0, 1.0), (1, 1.0)]), ket(3, &[(2, 1.0)])),
            (ket(3, &[(1, 1.0)]), ket(3, &[(0, 1.0), (1, 1.0)])),
            (ket(3, &[(2, 1.0)]), ket(3, &[(0, 1.0), (1, -1.0), (2, 1.0)])),
            (ket(3, &[(2, 1.0)]), ket(3, &[(1, 1.0), (2, 1.0)])),
        ])),
        FamilySpec::BennettNWE => ingest(bennett_states()),
        FamilySpec::BennettSubset(labels) => {
            let all = bennett_states();
            ingest(labels.iter().map(|&l| all[l - 1].clone()).collect())
        }
        FamilySpec::TilesUPB => {
            let all = bennett_states();
            let mut raw: Vec<RawProduct> = [2, 4, 6, 8].iter().map(|&l| all[l - 1].clone()).collect();
            let stopper = ket(3, &[(0, 1.0), (1, -1.0), (2, 1.0)]);
            raw.push(state("stopper", stopper.clone(), stopper));
            ingest(raw)
        }
        FamilySpec::Bullseye(d) => ingest(bullseye_states(*d, None)),
        FamilySpec::BullseyeRecursive(d) => ingest(recursive_bullseye_states(*d, &mut ChaCha8Rng::seed_from_u64(seed))),
        FamilySpec::CycleRep(n) => representation(*n, true, seed),
        FamilySpec::PathRep(n) => representation(*n, false, seed),
    }
}

/// Domino states labelled as in the figure: centre 1, then 2..9.
fn bennett_states() -> Vec<RawProduct> {
    let k = |t: &[(usize, f64)]| ket(3, t);
    numbered(vec![
        (k(&[(1, 1.0)]), k(&[(1, 1.0)])),
        (k(&[(0, 1.0)]), k(&[(0, 1.0), (1, 1.0)])),
        (k(&[(0, 1.0)]), k(&[(0, 1.0), (1, -1.0)])),
        (k(&[(2, 1.0)]), k(&[(1, 1.0), (2, 1.0)])),
        (k(&[(2, 1.0)]), k(&[(1, 1.0), (2, -1.0)])),
        (k(&[(1, 1.0), (2, 1.0)]), k(&[(0, 1.0)])),
        (k(&[(1, 1.0), (2, -1.0)]), k(&[(0, 1.0)])),
        (k(&[(0, 1.0), (1, 1.0)]), k(&[(2, 1.0)])),
        (k(&[(0, 1.0), (1, -1.0)]), k(&[(2, 1.0)])),
    ])
}

/// Orthogonality graph of the nine domino states (figure adjacency).
pub fn bennett_graph() -> Graph {
    let edges = [
        (3, 9), (9, 7), (7, 5), (2, 8), (8, 6), (6, 4),
        (3, 2), (5, 4),
        (3, 8), (8, 7), (7, 4), (2, 9), (9, 6), (6, 5),
        (1, 6), (1, 7), (1, 8), (1, 9),
    ];
    Graph::from_one_based(9, &edges).expect("static edge list")
}

/// `F~|k>`: column `k` of the `(d-1)`-point Fourier matrix, padded with a zero.
fn fourier_ket(d: usize, k: usize) -> ComplexVector {
    let m = d - 1;
    let norm = (m as f64).sqrt().recip();
    let mut e = vec![c(0.0); d];
    for (j, z) in e.iter_mut().enumerate().take(m) {
        let angle = 2.0 * std::f64::consts::PI * ((j * k) % m) as f64 / m as f64;
        *z = C64::from_polar(norm, angle);
    }
    ComplexVector::new(e)
}

/// Cyclic shift `|j> -> |j+1 mod d>`.
fn shift(v: &ComplexVector) -> ComplexVector {
    let d = v.dim();
    let e = v.entries();
    ComplexVector::new((0..d).map(|j| e[(j + d - 1) % d]).collect())
}

/// Rings of the bullseye domino layout in `C^d (x) C^d`:
/// top `|0> (x) F~|k>`, right `F~|k> (x) |d-1>`, left `XF~|k> (x) |0>`,
/// bottom `|d-1> (x) XF~|k>`. The inner `(d-2) x (d-2)` block holds either
/// one uniform state or the supplied core states.
fn bullseye_states(d: usize, core: Option<Vec<RawProduct>>) -> Vec<RawProduct> {
    let mut out = Vec::with_capacity(4 * d - 3);
    let basis = |i| ComplexVector::basis(d, i);
    for k in 0..d - 1 {
        out.push(state(format!("1,{k}"), basis(0), fourier_ket(d, k)));
    }
    for k in 0..d - 1 {
        out.push(state(format!("2,{k}"), fourier_ket(d, k), basis(d - 1)));
    }
    for k in 0..d - 1 {
        out.push(state(format!("3,{k}"), shift(&fourier_ket(d, k)), basis(0)));
    }
    for k in 0..d - 1 {
        out.push(state(format!("4,{k}"), basis(d - 1), shift(&fourier_ket(d, k))));
    }
    match core {
        None => {
            let inner: Vec<(usize, f64)> = (1..d - 1).map(|i| (i, 1.0)).collect();
            out.push(state("0", ket(d, &inner), ket(d, &inner)));
        }
        Some(states) => out.extend(states),
    }
    out
}

/// Recursive bullseye: the core of `G_d` is `G_{d-2}` embedded in the inner
/// block after a random local unitary on each side.
fn recursive_bullseye_states(d: usize, rng: &mut ChaCha8Rng) -> Vec<RawProduct> {
    if d == 1 {
        return vec![state("0", ComplexVector::basis(1, 0), ComplexVector::basis(1, 0))];
    }
    let inner = recursive_bullseye_states(d - 2, rng);
    let m = d - 2;
    let ua = random_unitary(m, rng);
    let ub = random_unitary(m, rng);
    let embed = |u: &nalgebra::DMatrix<C64>, v: &ComplexVector| {
        let w = u * v.as_dvector();
        let mut e = vec![c(0.0); d];
        for i in 0..m {
            e[i + 1] = w[i];
        }
        ComplexVector::new(e)
    };
    let core = inner
        .into_iter()
        .map(|p| {
            let label = p.label.clone().unwrap_or_default();
            state(format!("c{label}"), embed(&ua, &p.alice), embed(&ub, &p.bob))
        })
        .collect();
    bullseye_states(d, Some(core))
}

fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_vector(dim: usize, rng: &mut ChaCha8Rng) -> nalgebra::DVector<C64> {
    nalgebra::DVector::from_fn(dim, |_, _| random_complex(rng))
}

fn random_unitary(m: usize, rng: &mut ChaCha8Rng) -> nalgebra::DMatrix<C64> {
    let a = nalgebra::DMatrix::from_fn(m, m, |_, _| random_complex(rng));
    a.qr().q()
}

/// Removes the components along `against` (orthonormalized internally).
fn project_out(v: &mut nalgebra::DVector<C64>, against: &[nalgebra::DVector<C64>]) {
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::new();
    for a in against {
        let mut w = a.clone();
        for b in &basis {
            let z = b.dotc(&w);
            w -= b * z;
        }
        let n = w.norm();
        if n > 1e-10 {
            basis.push(w / C64::new(n, 0.0));
        }
    }
    for _ in 0..2 {
        for b in &basis {
            let z = b.dotc(v);
            *v -= b * z;
        }
    }
}

/// Orthogonal representation of `C_n` in `C^(n-2)` (or `P_n` in `C^(n-1)`),
/// built one vector at a time: each new vector is a random vector projected
/// away from its earlier non-neighbours. Bob's vectors live in `C^3`, each
/// orthogonal to its graph neighbours. Restarts with derived seeds until
/// every neighbouring overlap exceeds `1e-3` and the rank is exact.
fn representation(n: usize, cyclic: bool, seed: u64) -> Result<ProductStateSet> {
    const RESTARTS: u64 = 64;
    let dim = if cyclic { n - 2 } else { n - 1 };
    let g = if cyclic { Graph::cycle(n) } else { Graph::path(n) };
    let tol = Tolerance::default();
    for attempt in 0..RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(RESTARTS).wrapping_add(attempt));
        let mut alice: Vec<nalgebra::DVector<C64>> = Vec::with_capacity(n);
        let mut bob: Vec<nalgebra::DVector<C64>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut a = random_vector(dim, &mut rng);
            let earlier: Vec<_> = (0..i).filter(|&j| !g.has_edge(i, j)).map(|j| alice[j].clone()).collect();
            project_out(&mut a, &earlier);
            alice.push(a);
            let mut b = random_vector(3, &mut rng);
            let nb: Vec<_> = (0..i).filter(|&j| g.has_edge(i, j)).map(|j| bob[j].clone()).collect();
            project_out(&mut b, &nb);
            bob.push(b);
        }
        let raw: Vec<RawProduct> = alice
            .into_iter()
            .zip(bob)
            .enumerate()
            .map(|(k, (a, b))| state((k + 1).to_string(), ComplexVector::from_dvector(a), ComplexVector::from_dvector(b)))
            .collect();
        let Ok(set) = ProductStateSet::ingest(raw, &tol) else {
            continue;
        };
        let graphs = build_graphs(&set, &tol);
        let strong = g.edges().iter().all(|&(u, v)| graphs.alice_gram.get(u, v).norm() > 1e-3);
        let bob_ok = g
            .complement()
            .edges()
            .iter()
            .all(|&(u, v)| graphs.bob_gram.get(u, v).norm() > 1e-3);
        if strong && bob_ok && graphs.g_alice == g && vectors_rank(set.alice(), &tol)? == dim {
            return Ok(set);
        }
        log::debug!("representation attempt {attempt} rejected");
    }
    Err(Error::AssertionFailure(format!(
        "no representation of {} in dimension {dim} after {RESTARTS} restarts",
        if cyclic { "cycle" } else { "path" }
    )))
}

/// `B_d`: cliques `K_{d-1}` (top, bottom) and independent sets (right,
/// left) joined in a path top-right-left-bottom, plus a centre vertex joined
/// to right and left. Vertex order matches the generated states.
pub fn bullseye_graph(d: usize) -> Graph {
    bullseye_around(d, &Graph::empty(1))
}

/// `G_d` with `G_1 = K_1`, collapsed to `B_d` when the core is a single vertex.
pub fn recursive_bullseye_graph(d: usize) -> Graph {
    if d <= 1 {
        return Graph::empty(1);
    }
    bullseye_around(d, &recursive_bullseye_graph(d - 2))
}

fn bullseye_around(d: usize, core: &Graph) -> Graph {
    let m = d - 1;
    let n = 4 * m + core.n();
    let ring = |r: usize| (r * m..(r + 1) * m).collect::<Vec<usize>>();
    let (top, right, left, bottom) = (ring(0), ring(1), ring(2), ring(3));
    let centre: Vec<usize> = (4 * m..n).collect();
    let mut g = Graph::empty(n);
    for clique in [&top, &bottom] {
        for (a, &u) in clique.iter().enumerate() {
            for &v in &clique[a + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    for (x, y) in [(&top, &right), (&right, &left), (&left, &bottom), (&centre, &right), (&centre, &left)] {
        for &u in x {
            for &v in y {
                g.add_edge(u, v);
            }
        }
    }
    for (u, v) in core.edges() {
        g.add_edge(centre[u], centre[v]);
    }
    g
}

/// Graph facts checked for a family, with each check's outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: String,
    pub states: usize,
    pub facts: Vec<(String, bool)>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(|(_, ok)| *ok)
    }
}

/// Computes the published graph facts of a family and fails with
/// `AssertionFailure` naming the first violated one.
pub fn family_invariant_report(spec: &FamilySpec) -> Result<FamilyReport> {
    let tol = Tolerance::default();
    let budget = SearchBudget::default();
    let set = generate(spec)?;
    let graphs = build_graphs(&set, &tol);
    let mut facts: Vec<(String, bool)> = Vec::new();
    let mut fact = |name: String, ok: bool| facts.push((name, ok));
    fact("mutually orthogonal".into(), validate_orthonormal(&set, &graphs, &tol).is_ok());
    let ga = &graphs.g_alice;
    let gb = &graphs.g_bob;
    match spec {
        FamilySpec::BennettNWE => {
            fact("G_A equals the figure's graph".into(), *ga == bennett_graph());
            fact("G_A = complement(G_B)".into(), *ga == gb.complement());
            fact("alpha = 3".into(), alpha(ga, &budget)?.0 == 3);
            fact("not chordal".into(), !is_chordal(ga).is_chordal());
            fact("no simplicial vertices".into(), simplicial_vertices(ga).is_empty());
        }
        FamilySpec::BennettSubset(labels) => {
            let idx: Vec<usize> = labels.iter().map(|l| l - 1).collect();
            fact("G_A is the induced figure subgraph".into(), *ga == bennett_graph().induced(&idx));
            fact("G_A = complement(G_B)".into(), *ga == gb.complement());
            if labels.len() == 5 {
                fact("chi(G_B) = 3".into(), chromatic_number(gb, &budget)?.0 == 3);
                fact("G_A not chordal".into(), !is_chordal(ga).is_chordal());
                fact("G_B chordal".into(), is_chordal(gb).is_chordal());
            }
        }
        FamilySpec::TilesUPB => {
            fact("G_A is a 5-cycle".into(), find_isomorphism(ga, &Graph::cycle(5)).is_some());
            fact("G_A = complement(G_B)".into(), *ga == gb.complement());
        }
        FamilySpec::Bullseye(d) | FamilySpec::BullseyeRecursive(d) => {
            let d = *d;
            let expected = match spec {
                FamilySpec::Bullseye(_) => {
                    fact(format!("{} = 4d - 3 states", set.len()), set.len() == 4 * d - 3);
                    bullseye_graph(d)
                }
                _ => {
                    fact(format!("{} = d^2 states", set.len()), set.len() == d * d);
                    recursive_bullseye_graph(d)
                }
            };
            fact("G_A matches the layout".into(), *ga == expected);
            fact("G_A = complement(G_B)".into(), *ga == gb.complement());
            fact("self-complementary".into(), find_isomorphism(ga, &ga.complement()).is_some());
            fact(format!("alpha = {d}"), alpha(ga, &budget)?.0 == d);
            fact("no simplicial vertices".into(), simplicial_vertices(ga).is_empty());
        }
        FamilySpec::CycleRep(n) | FamilySpec::PathRep(n) => {
            let (target, dim) = match spec {
                FamilySpec::CycleRep(_) => (Graph::cycle(*n), n - 2),
                _ => (Graph::path(*n), n - 1),
            };
            fact("pattern is exact".into(), *ga == target);
            fact(format!("rank {dim}"), vectors_rank(set.alice(), &tol)? == dim);
            fact("Bob graph is the complement".into(), *gb == target.complement());
            let g = gram(set.alice())?;
            let min_edge = target.edges().iter().map(|&(u, v)| g.get(u, v).norm()).fold(f64::INFINITY, f64::min);
            fact("edge overlaps >= 1e-3".into(), min_edge >= 1e-3);
        }
        FamilySpec::MinDimC5 => {
            fact("G_B is C_5".into(), find_isomorphism(gb, &Graph::cycle(5)).is_some());
            let p3p2 = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).expect("static");
            fact("G_A = P_3 + P_2".into(), *ga == p3p2);
            fact("chi(G_B) = 3".into(), chromatic_number(gb, &budget)?.0 == 3);
        }
        FamilySpec::PaperExample1 => {
            let expected = Graph::from_one_based(4, &[(1, 2), (1, 3), (2, 4), (1, 4)])?;
            fact("G_A = {12, 13, 24, 14}".into(), *ga == expected);
            fact("G_B = {23}".into(), *gb == Graph::from_one_based(4, &[(2, 3)])?);
        }
        FamilySpec::PaperExample2 | FamilySpec::PaperExample3 => {
            let c4 = Graph::from_one_based(4, &[(1, 2), (1, 3), (2, 4), (3, 4)])?;
            fact("G_A = C_4".into(), *ga == c4);
            fact("G_B = {14, 23}".into(), *gb == Graph::from_one_based(4, &[(1, 4), (2, 3)])?);
        }
        FamilySpec::PaperExample4 => {
            let triangles = Graph::from_cliques(5, &[vec![0, 1, 4], vec![2, 3, 4]]);
            fact("complement(G_B) = two triangles sharing a vertex".into(), gb.complement() == triangles);
        }
    }
    let report = FamilyReport {
        family: spec.to_string(),
        states: set.len(),
        facts,
    };
    if let Some((name, _)) = report.facts.iter().find(|(_, ok)| !ok) {
        return Err(Error::AssertionFailure(format!("{}: {name}", report.family)));
    }
    Ok(report)
}
