//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use chordal_locc::criteria::{converse_theorem_checks, decide, DecisionOptions, Direction, Status, Verdict};
use chordal_locc::decomposition::{
    chordal_decompose, chordal_decompose_traced, feasibility_search, spanning_obstruction, FeasibilityOptions, SupportPattern,
};
use chordal_locc::families::{family_invariant_report, generate, FamilySpec, SUBSET_EX_A, SUBSET_EX_B};
use chordal_locc::graph::{
    alpha, chromatic_number, clique_cover_at_most, edge_clique_cover_number, eta_plus_bounds, find_isomorphism, is_chordal,
    maximal_cliques, Graph, SearchBudget,
};
use chordal_locc::linalg::{vectors_rank, ComplexVector, FrameMap, Tolerance, C64};
use chordal_locc::locc::{match_operators, povm_to_decomposition, simulate, synthesize_protocol, validate_povm, OneWayProtocol};
use chordal_locc::states::{build_graphs, ProductStateSet};
use common::*;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

const SUCCESS_TOL: f64 = 1e-9;

fn opts() -> DecisionOptions {
    DecisionOptions::default()
}

fn family(spec: &FamilySpec) -> ProductStateSet {
    generate(spec).expect("family generation")
}

fn run(set: &ProductStateSet, dir: Direction) -> Result<Verdict, String> {
    decide(set, dir, &opts()).map_err(|e| e.to_string())
}

fn kind_name(v: &Verdict) -> &'static str {
    v.kind().map(|k| k.as_str()).unwrap_or("none")
}

fn min_success(v: &Verdict) -> f64 {
    v.simulation.as_ref().map(|s| s.min_success).unwrap_or(f64::NAN)
}

fn expect_distinguishable(v: &Verdict) -> Result<(), String> {
    ensure!(v.status == Status::Distinguishable, "status {:?} ({})", v.status, kind_name(v));
    let s = min_success(v);
    ensure!(s >= 1.0 - SUCCESS_TOL, "min success {s}");
    Ok(())
}

fn expect_indistinguishable(v: &Verdict, kind: Option<&str>) -> Result<(), String> {
    ensure!(v.status == Status::Indistinguishable, "status {:?} ({})", v.status, kind_name(v));
    if let Some(k) = kind {
        ensure!(kind_name(v) == k, "certificate {} instead of {k}", kind_name(v));
    }
    Ok(())
}

fn projector(v: &[C64]) -> DMatrix<C64> {
    ComplexVector::new(v.to_vec()).normalized().unwrap().outer()
}

fn standard_basis(d: usize) -> Vec<DMatrix<C64>> {
    (0..d).map(|i| ComplexVector::basis(d, i).outer()).collect()
}

fn nonzero_ops(p: &OneWayProtocol) -> Vec<DMatrix<C64>> {
    p.alice.operators().into_iter().filter(|m| m.norm() > 1e-9).collect()
}

/// Compares two measurements through their action on the span of `states`.
fn span_equivalent(states: &[ComplexVector], a: &[DMatrix<C64>], b: &[DMatrix<C64>], tol: f64) -> bool {
    let x = FrameMap::new(states).unwrap();
    let compress = |ops: &[DMatrix<C64>]| -> Vec<DMatrix<C64>> {
        ops.iter().map(|m| x.compress(m).as_matrix().clone()).filter(|m| m.norm() > tol).collect()
    };
    match_operators(&compress(a), &compress(b), tol).is_some()
}

fn criterion_1() -> Outcome {
    let set = family(&FamilySpec::PaperExample1);
    let v = run(&set, Direction::AliceFirst)?;
    expect_distinguishable(&v)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus_minus = [projector(&[C64::new(s, 0.0), C64::new(s, 0.0)]), projector(&[C64::new(s, 0.0), C64::new(-s, 0.0)])];
    let ops = nonzero_ops(v.protocol.as_ref().unwrap());
    ensure!(match_operators(&ops, &plus_minus, 1e-7).is_some(), "Alice POVM is not {{|+><+|, |-><-|}}: {} outcomes", ops.len());
    Ok(format!("{}, min success {:.12}", kind_name(&v), min_success(&v)))
}

fn criterion_2() -> Outcome {
    let set = family(&FamilySpec::PaperExample2);
    let v = run(&set, Direction::AliceFirst)?;
    expect_indistinguishable(&v, Some("NonChordalSandwichAtMinDim"))?;
    let c4_edges = vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]];
    let obs = spanning_obstruction(set.alice(), &c4_edges, &Tolerance::default());
    ensure!(obs.is_some(), "no spanning obstruction on the C_4 edge sets");
    Ok(format!("{}, obstruction joint rank {}", kind_name(&v), obs.unwrap().joint_rank))
}

fn criterion_3() -> Outcome {
    let set = family(&FamilySpec::PaperExample3);
    let tol = Tolerance::default();
    let graphs = build_graphs(&set, &tol);
    ensure!(!is_chordal(&graphs.g_alice).is_chordal(), "G_A is chordal");
    ensure!(!is_chordal(&graphs.g_bob.complement()).is_chordal(), "complement(G_B) is chordal");
    let chi = chromatic_number(&graphs.g_bob, &SearchBudget::default()).unwrap().0;
    ensure!(set.d_a() == 4 && chi == 2, "d_A = {}, chi(G_B) = {chi}", set.d_a());
    let v = run(&set, Direction::AliceFirst)?;
    expect_distinguishable(&v)?;
    ensure!(kind_name(&v) == "FeasibleDecomposition", "certificate {}", kind_name(&v));
    let ops = nonzero_ops(v.protocol.as_ref().unwrap());
    ensure!(span_equivalent(set.alice(), &ops, &standard_basis(4), 1e-6), "measurement differs from the standard basis on the state span");
    Ok(format!("{}, d_A = 4 > chi = 2, min success {:.12}", kind_name(&v), min_success(&v)))
}

fn criterion_4() -> Outcome {
    let ex4 = family(&FamilySpec::PaperExample4);
    let v4 = run(&ex4, Direction::AliceFirst)?;
    expect_distinguishable(&v4)?;
    let c5 = family(&FamilySpec::MinDimC5);
    family_invariant_report(&FamilySpec::MinDimC5).map_err(|e| e.to_string())?;
    let v = run(&c5, Direction::AliceFirst)?;
    expect_distinguishable(&v)?;
    let conv = converse_theorem_checks(&c5, &v, &opts()).map_err(|e| e.to_string())?;
    ensure!(conv.applicable && conv.projective_basis, "measurement is not projective: {}", conv.reason);
    ensure!(conv.unique, "alternative decompositions gave a different measurement");
    let basis: Vec<DMatrix<C64>> = conv.basis.iter().map(ComplexVector::outer).collect();
    ensure!(match_operators(&basis, &standard_basis(3), 1e-6).is_some(), "basis is not the standard basis");
    Ok(format!(
        "example4 {}, five-state {} with unique standard basis over {} alternatives",
        kind_name(&v4),
        kind_name(&v),
        conv.alternatives_checked
    ))
}

fn criterion_5() -> Outcome {
    let set = family(&FamilySpec::BennettNWE);
    let tol = Tolerance::default();
    let graphs = build_graphs(&set, &tol);
    let gbc = graphs.g_bob.complement();
    ensure!(graphs.g_alice == gbc, "G_A differs from complement(G_B)");
    let v = run(&set, Direction::AliceFirst)?;
    expect_indistinguishable(&v, Some("MinDimNoSimplicial"))?;
    let p = &v.parameters;
    ensure!(p.alpha_bob_complement == Some(3), "alpha = {:?}", p.alpha_bob_complement);
    ensure!(p.simplicial_vertices.as_ref().is_some_and(Vec::is_empty), "simplicial vertices {:?}", p.simplicial_vertices);
    let eta = eta_plus_bounds(&gbc, &SearchBudget::default()).unwrap();
    ensure!(eta.exact() == Some(3), "eta+ bounds [{}, {}]", eta.lower, eta.upper);
    let b = run(&set, Direction::BobFirst)?;
    expect_indistinguishable(&b, None)?;
    Ok(format!("alice-first {}, bob-first {}, alpha 3, eta+ = 3", kind_name(&v), kind_name(&b)))
}

fn criterion_6() -> Outcome {
    let tol = Tolerance::default();
    let mut out = Vec::new();
    for labels in [SUBSET_EX_A, SUBSET_EX_B] {
        let set = family(&FamilySpec::BennettSubset(labels.to_vec()));
        let graphs = build_graphs(&set, &tol);
        let a = run(&set, Direction::AliceFirst)?;
        expect_indistinguishable(&a, None).map_err(|e| format!("{labels:?} alice-first: {e}"))?;
        let chi = chromatic_number(&graphs.g_bob, &SearchBudget::default()).unwrap().0;
        ensure!(chi == set.d_a(), "{labels:?}: chi(G_B) = {chi}, d_A = {}", set.d_a());
        let sandwich = chordal_locc::graph::chordal_sandwich(&graphs.g_alice, &graphs.g_bob.complement(), &SearchBudget::default()).unwrap();
        ensure!(sandwich.is_none(), "{labels:?}: a chordal sandwich exists");
        ensure!(is_chordal(&graphs.g_bob).is_chordal(), "{labels:?}: G_B is not chordal");
        let b = run(&set, Direction::BobFirst)?;
        expect_distinguishable(&b).map_err(|e| format!("{labels:?} bob-first: {e}"))?;
        out.push(format!("{labels:?} {} / {}", kind_name(&a), kind_name(&b)));
    }
    Ok(out.join("; "))
}

fn criterion_7() -> Outcome {
    let set = family(&FamilySpec::TilesUPB);
    let v = run(&set, Direction::AliceFirst)?;
    expect_indistinguishable(&v, Some("AlphaLessThanChi"))?;
    match v.certificate.as_ref().unwrap() {
        chordal_locc::criteria::Certificate::AlphaLessThanChi { alpha, chi, .. } => {
            ensure!((*alpha, *chi) == (2, 3), "alpha = {alpha}, chi = {chi}");
        }
        _ => unreachable!(),
    }
    Ok("AlphaLessThanChi, alpha 2, chi 3".into())
}

fn criterion_8() -> Outcome {
    let tol = Tolerance::default();
    let mut out = Vec::new();
    for d in 3..=5 {
        let start = Instant::now();
        let spec = FamilySpec::Bullseye(d);
        let set = family(&spec);
        ensure!(set.len() == 4 * d - 3, "bullseye:{d} has {} states", set.len());
        family_invariant_report(&spec).map_err(|e| e.to_string())?;
        let graphs = build_graphs(&set, &tol);
        ensure!(find_isomorphism(&graphs.g_alice, &graphs.g_bob.complement()).is_some(), "bullseye:{d}: G_A not isomorphic to complement(G_B)");
        for dir in [Direction::AliceFirst, Direction::BobFirst] {
            let v = run(&set, dir)?;
            expect_indistinguishable(&v, None).map_err(|e| format!("bullseye:{d} {dir:?}: {e}"))?;
        }
        let secs = start.elapsed().as_secs_f64();
        ensure!(secs < 10.0, "bullseye:{d} took {secs:.1} s");
        out.push(format!("d={d} {:.2}s", secs));
    }
    Ok(out.join(", "))
}

fn criterion_9() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let n = rng.random_range(1..=8);
        let g = random_chordal_graph(n, &mut rng);
        let m = random_conforming_psd(&g, &mut rng);
        let peo = is_chordal(&g).ordering().cloned().ok_or("generator produced a non-chordal graph")?;
        let (d, mins) = chordal_decompose_traced(&m, &SupportPattern::new(g.clone()), &peo, &tol).map_err(|e| format!("trial {trial}: {e}"))?;
        let scale = m.frobenius_norm();
        let residual = (d.sum() - m.as_matrix()).norm();
        ensure!(residual <= 1e-8 * scale.max(f64::MIN_POSITIVE), "trial {trial}: residual {residual:e}");
        ensure!(d.terms.iter().all(|t| g.is_clique(&t.support)), "trial {trial}: term support is not a clique");
        let low = mins.iter().copied().fold(f64::INFINITY, f64::min);
        ensure!(mins.iter().all(|&x| x >= -1e-8), "trial {trial}: remainder eigenvalue {low:e}");
        worst = worst.max(residual / scale.max(1e-300));
    }
    Ok(format!("200 graphs, worst relative residual {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut instances, mut found) = (0, 0);
    let mut worst: f64 = 0.0;
    while instances < 100 {
        let n = rng.random_range(2..=6);
        let g = if instances % 2 == 0 { random_chordal_graph(n, &mut rng) } else { random_graph(n, 0.5, &mut rng) };
        let d_a = rng.random_range(2..=n.max(2));
        let Some(set) = sandwich_instance(&g, d_a, 3, &mut rng) else { continue };
        instances += 1;
        let graphs = build_graphs(&set, &tol);
        let gbc = graphs.g_bob.complement();
        let decomp = match is_chordal(&graphs.g_alice).ordering() {
            Some(peo) => chordal_decompose(&graphs.alice_gram, &SupportPattern::new(graphs.g_alice.clone()), peo, &tol).ok(),
            None => {
                let fo = FeasibilityOptions { max_iter: 5000, ..Default::default() };
                feasibility_search(&graphs.alice_gram, &maximal_cliques(&gbc), &fo).found().cloned()
            }
        };
        let Some(decomp) = decomp else { continue };
        found += 1;
        let p = synthesize_protocol(&set, &decomp, &tol).map_err(|e| format!("instance {instances}: {e}"))?;
        ensure!(validate_povm(&p.alice, set.d_a(), &tol).passed, "instance {instances}: POVM fails validation");
        let rep = simulate(&p, &set, &tol);
        ensure!(rep.support_violations.is_empty(), "instance {instances}: support violations {:?}", rep.support_violations);
        let back = povm_to_decomposition(set.alice(), &p.alice, &tol).map_err(|e| format!("instance {instances}: {e}"))?;
        let scale = graphs.alice_gram.frobenius_norm();
        let residual = (back.sum() - graphs.alice_gram.as_matrix()).norm();
        ensure!(residual <= 1e-7 * scale, "instance {instances}: recovered residual {residual:e}");
        ensure!(back.terms.iter().all(|t| gbc.is_clique(&t.support)), "instance {instances}: recovered support off the pattern");
        worst = worst.max(residual / scale);
    }
    ensure!(found >= 50, "only {found} of 100 instances had a decomposition");
    Ok(format!("{found}/100 decomposable, worst recovered residual {worst:.2e}"))
}

mod brute {
    //! Exhaustive oracles over vertex bitmasks, independent of the library.
    use chordal_locc::graph::Graph;

    pub fn adjacency(g: &Graph) -> Vec<u32> {
        (0..g.n()).map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u)).collect()
    }

    fn is_clique(adj: &[u32], s: u32) -> bool {
        (0..adj.len()).all(|v| s & 1 << v == 0 || (adj[v] | 1 << v) & s == s)
    }

    fn is_independent(adj: &[u32], s: u32) -> bool {
        (0..adj.len()).all(|v| s & 1 << v == 0 || adj[v] & s == 0)
    }

    /// Connected with every vertex of degree two inside `s`.
    fn is_cycle(adj: &[u32], s: u32) -> bool {
        if (0..adj.len()).any(|v| s & 1 << v != 0 && (adj[v] & s).count_ones() != 2) {
            return false;
        }
        let mut seen = 1u32 << s.trailing_zeros();
        loop {
            let next = seen | (0..adj.len()).filter(|&v| seen & 1 << v != 0).fold(0, |m, v| m | adj[v] & s);
            if next == seen {
                return seen == s;
            }
            seen = next;
        }
    }

    pub fn chordal(adj: &[u32]) -> bool {
        let full = (1u32 << adj.len()) - 1;
        (1..=full).all(|s| s.count_ones() < 4 || !is_cycle(adj, s))
    }

    pub fn alpha(adj: &[u32]) -> usize {
        let full = (1u32 << adj.len()) - 1;
        (0..=full).filter(|&s| is_independent(adj, s)).map(u32::count_ones).max().unwrap() as usize
    }

    pub fn chromatic(adj: &[u32]) -> usize {
        let n = adj.len();
        let full = (1usize << n) - 1;
        let indep: Vec<bool> = (0..=full).map(|s| is_independent(adj, s as u32)).collect();
        let mut best = vec![usize::MAX; full + 1];
        best[0] = 0;
        for s in 1..=full {
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut sub = rest;
            loop {
                let class = sub | low;
                if indep[class] && best[s ^ class] != usize::MAX {
                    best[s] = best[s].min(best[s ^ class] + 1);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        best[full]
    }

    /// Fewest cliques covering every vertex and edge.
    pub fn clique_cover(adj: &[u32]) -> usize {
        let n = adj.len();
        if n == 0 {
            return 0;
        }
        let full = (1u32 << n) - 1;
        let cliques: Vec<u32> = (1..=full).filter(|&s| is_clique(adj, s)).collect();
        let maximal: Vec<u32> = cliques.iter().copied().filter(|&c| !cliques.iter().any(|&d| d != c && d & c == c)).collect();
        let covered = |pick: u32| {
            let chosen: Vec<u32> = (0..maximal.len()).filter(|&i| pick & 1 << i != 0).map(|i| maximal[i]).collect();
            let verts = chosen.iter().fold(0, |m, c| m | c) == full;
            let edges = (0..n).all(|u| (u + 1..n).all(|v| adj[u] & 1 << v == 0 || chosen.iter().any(|c| c & (1 << u | 1 << v) == (1 << u | 1 << v))));
            verts && edges
        };
        (1..1u32 << maximal.len()).filter(|&p| covered(p)).map(u32::count_ones).min().unwrap() as usize
    }
}

fn check_graph(g: &Graph, budget: &SearchBudget) -> Result<(), String> {
    let adj = brute::adjacency(g);
    let edges = g.edges();
    ensure!(is_chordal(g).is_chordal() == brute::chordal(&adj), "is_chordal disagrees on {edges:?}");
    ensure!(alpha(g, budget).unwrap().0 == brute::alpha(&adj), "alpha disagrees on {edges:?}");
    ensure!(chromatic_number(g, budget).unwrap().0 == brute::chromatic(&adj), "chi disagrees on {edges:?}");
    ensure!(edge_clique_cover_number(g, budget).unwrap().0 == brute::clique_cover(&adj), "cc disagrees on {edges:?}");
    Ok(())
}

/// The graphs with cc <= 2 are exactly the unions of two cliques covering V.
fn two_clique_graphs(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), code);
        for v in 0..n {
            match c % 3 {
                0 => a.push(v),
                1 => b.push(v),
                _ => {
                    a.push(v);
                    b.push(v);
                }
            }
            c /= 3;
        }
        let cliques: Vec<Vec<usize>> = [a, b].into_iter().filter(|x| !x.is_empty()).collect();
        out.push(Graph::from_cliques(n, &cliques));
    }
    out
}

fn criterion_11() -> Outcome {
    let budget = SearchBudget::default();
    let mut checked = 0;
    for n in 0usize..=6 {
        let pairs = n * n.saturating_sub(1) / 2;
        let family: std::collections::HashSet<Vec<(usize, usize)>> = two_clique_graphs(n).iter().map(Graph::edges).collect();
        for bits in 0..1u64 << pairs {
            let g = Graph::from_pair_mask(n, bits);
            check_graph(&g, &budget)?;
            let cc2 = clique_cover_at_most(&g, 2, &budget).unwrap();
            ensure!(cc2.is_some() == family.contains(&g.edges()), "cc <= 2 test disagrees on {:?}", g.edges());
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let g = random_graph(7, rng.random_range(0.2..0.8), &mut rng);
        check_graph(&g, &budget)?;
    }
    let mut two_clique = 0;
    for n in 1..=7 {
        for g in two_clique_graphs(n) {
            ensure!(brute::chordal(&brute::adjacency(&g)), "two-clique graph {:?} is not chordal", g.edges());
            two_clique += 1;
        }
    }
    Ok(format!("{checked} graphs n <= 6 exhaustive, 300 at n = 7, {two_clique} two-clique covers n <= 7 chordal"))
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with = subsets(&items[1..], k - 1);
    for s in &mut with {
        s.insert(0, items[0]);
    }
    with.extend(subsets(&items[1..], k));
    with
}

fn criterion_12() -> Outcome {
    let tol = Tolerance::default();
    for n in 4..=7 {
        let set = family(&FamilySpec::CycleRep(n));
        let graphs = build_graphs(&set, &tol);
        ensure!(graphs.g_alice == Graph::cycle(n), "cycle-rep:{n} is not a representation of C_{n}");
        for removed in 0..n {
            let path: Vec<usize> = (0..n).filter(|&v| v != removed).collect();
            for sub in subsets(&path, n - 2) {
                let vs: Vec<ComplexVector> = sub.iter().map(|&i| set.alice()[i].clone()).collect();
                let r = vectors_rank(&vs, &tol).unwrap();
                ensure!(r == n - 2, "cycle-rep:{n}: states {sub:?} have rank {r}");
            }
        }
        let edges: Vec<Vec<usize>> = Graph::cycle(n).edges().into_iter().map(|(u, v)| vec![u, v]).collect();
        ensure!(spanning_obstruction(set.alice(), &edges, &tol).is_some(), "cycle-rep:{n}: no obstruction on edge sets");
    }
    Ok("n = 4..7 path subsets full rank, edge-set obstruction present".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("first worked example distinguishable by |+>,|-> measurement", criterion_1),
        ("second worked example blocked at minimal dimension", criterion_2),
        ("third worked example via feasible decomposition", criterion_3),
        ("chordal example and five-state minimal-dimension converse", criterion_4),
        ("nine-state domino basis", criterion_5),
        ("five-state domino subsets", criterion_6),
        ("Tiles UPB alpha below chi", criterion_7),
        ("Bullseye families d = 3..5", criterion_8),
        ("chordal peeling on 200 random instances", criterion_9),
        ("decomposition and POVM equivalence on 100 instances", criterion_10),
        ("graph oracles against brute force", criterion_11),
        ("cycle representations path independence", criterion_12),
    ];
    // Panics are reported as failures instead of aborting the run.
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({detail}; {secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

