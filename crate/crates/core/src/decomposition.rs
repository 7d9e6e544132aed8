//! Clique-supported PSD decompositions of Gram matrices: chordal peeling,
//! alternating-projection feasibility search, verification and spanning
//! obstructions.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EliminationOrdering, Graph};
use crate::linalg::{orthonormal_complement, orthonormal_span, psd_check, vectors_rank, ComplexVector, HermitianMatrix, Tolerance, C64};

/// Off-diagonal zero pattern `S_G` of a graph. Diagonal entries are free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportPattern {
    pub graph: Graph,
}

impl SupportPattern {
    pub fn new(graph: Graph) -> Self {
        SupportPattern { graph }
    }

    /// First entry `(i, j)`, `i < j`, that is nonzero off the edges.
    pub fn violation(&self, m: &HermitianMatrix, tol: &Tolerance) -> Option<(usize, usize)> {
        let n = m.n();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.graph.has_edge(i, j) && m.get(i, j).norm() > tol.zero_tol {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn conforms(&self, m: &HermitianMatrix, tol: &Tolerance) -> bool {
        m.n() == self.graph.n() && self.violation(m, tol).is_none()
    }
}

/// Rank-one term `v v^*`; `v` vanishes outside `support`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub support: Vec<usize>,
    pub vector: ComplexVector,
}

impl DecompositionTerm {
    pub fn matrix(&self) -> DMatrix<C64> {
        self.vector.outer()
    }
}

/// `target ~ sum_k v_k v_k^*` with the Frobenius residual recorded.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub terms: Vec<DecompositionTerm>,
    pub target: HermitianMatrix,
    pub residual_norm: f64,
}

impl Decomposition {
    /// Builds a decomposition and computes its residual against `target`.
    pub fn new(terms: Vec<DecompositionTerm>, target: HermitianMatrix) -> Self {
        let mut d = Decomposition {
            terms,
            target,
            residual_norm: 0.0,
        };
        d.residual_norm = (d.sum() - d.target.as_matrix()).norm();
        d
    }

    pub fn n(&self) -> usize {
        self.target.n()
    }

    pub fn sum(&self) -> DMatrix<C64> {
        let n = self.n();
        self.terms.iter().fold(DMatrix::zeros(n, n), |acc, t| acc + t.matrix())
    }

    /// Terms summed per distinct support, in order of first appearance.
    pub fn blocks(&self) -> Vec<(Vec<usize>, HermitianMatrix)> {
        let mut out: Vec<(Vec<usize>, DMatrix<C64>)> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|(s, _)| *s == t.support) {
                Some((_, m)) => *m += t.matrix(),
                None => out.push((t.support.clone(), t.matrix())),
            }
        }
        out.into_iter()
            .map(|(s, m)| (s, HermitianMatrix::new(m).expect("square")))
            .collect()
    }

    /// Rank-one refinement of PSD blocks. Eigenvalues at or below
    /// `drop_below` are discarded; the discarded mass shows up in the residual.
    pub fn from_blocks(blocks: &[(Vec<usize>, HermitianMatrix)], target: HermitianMatrix, drop_below: f64, tol: &Tolerance) -> Self {
        let mut terms = Vec::new();
        for (support, block) in blocks {
            let (values, vectors) = block.eigen();
            for (k, &lambda) in values.iter().enumerate() {
                if lambda <= drop_below {
                    continue;
                }
                let mut v = vectors.column(k).into_owned() * C64::new(lambda.sqrt(), 0.0);
                let mut trimmed = Vec::new();
                for i in 0..v.len() {
                    if support.contains(&i) && v[i].norm() > tol.zero_tol {
                        trimmed.push(i);
                    } else {
                        v[i] = C64::new(0.0, 0.0);
                    }
                }
                if !trimmed.is_empty() {
                    terms.push(DecompositionTerm {
                        support: support.clone(),
                        vector: ComplexVector::from_dvector(v),
                    });
                }
            }
        }
        Decomposition::new(terms, target)
    }

    pub fn to_record(&self) -> DecompositionRecord {
        DecompositionRecord {
            terms: self
                .terms
                .iter()
                .map(|t| TermRecord {
                    support: t.support.iter().map(|&i| i + 1).collect(),
                    vector: t.vector.clone(),
                })
                .collect(),
            residual: self.residual_norm,
        }
    }

    /// Rebuilds from the file form; the residual is recomputed against `target`.
    pub fn from_record(record: &DecompositionRecord, target: HermitianMatrix) -> Result<Self> {
        let n = target.n();
        let mut terms = Vec::with_capacity(record.terms.len());
        for t in &record.terms {
            if t.vector.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: t.vector.dim(),
                });
            }
            if t.support.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::Parse(format!("support {:?} out of range 1..={n}", t.support)));
            }
            terms.push(DecompositionTerm {
                support: t.support.iter().map(|&i| i - 1).collect(),
                vector: t.vector.clone(),
            });
        }
        Ok(Decomposition::new(terms, target))
    }
}

/// File form: `{"terms": [{"support": [..], "vector": [[re, im], ..]}], "residual": r}`
/// with 1-based supports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub terms: Vec<TermRecord>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub support: Vec<usize>,
    pub vector: ComplexVector,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

fn require_psd(m: &HermitianMatrix, tol: &Tolerance) -> Result<()> {
    let (ok, min_eigenvalue) = psd_check(m, tol);
    if !ok {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(())
}

/// Rank-one peeling along a perfect elimination ordering.
pub fn chordal_decompose(m: &HermitianMatrix, pattern: &SupportPattern, peo: &EliminationOrdering, tol: &Tolerance) -> Result<Decomposition> {
    peel(m, pattern, peo, tol, None)
}

/// As [`chordal_decompose`], also returning the minimum eigenvalue of the
/// remainder after every subtraction.
pub fn chordal_decompose_traced(
    m: &HermitianMatrix,
    pattern: &SupportPattern,
    peo: &EliminationOrdering,
    tol: &Tolerance,
) -> Result<(Decomposition, Vec<f64>)> {
    let mut trace = Vec::new();
    let d = peel(m, pattern, peo, tol, Some(&mut trace))?;
    Ok((d, trace))
}

fn peel(
    m: &HermitianMatrix,
    pattern: &SupportPattern,
    peo: &EliminationOrdering,
    tol: &Tolerance,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<Decomposition> {
    let g = &pattern.graph;
    if m.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: m.n(),
        });
    }
    peo.verify(g).map_err(|vertex| Error::InvalidOrdering { vertex })?;
    if let Some((row, col)) = pattern.violation(m, tol) {
        return Err(Error::PatternViolation { row, col });
    }
    require_psd(m, tol)?;
    let n = m.n();
    let pos = peo.positions(n);
    let mut r = m.as_matrix().clone();
    let mut terms = Vec::new();
    for &i in &peo.order {
        let pivot = r[(i, i)].re;
        if pivot < -tol.psd_tol {
            return Err(Error::NegativePivot { vertex: i, value: pivot });
        }
        if pivot <= tol.zero_tol {
            continue;
        }
        let mut support = vec![i];
        support.extend(g.neighbors(i).filter(|&u| pos[u] > pos[i]));
        support.sort_unstable();
        let scale = C64::new(pivot.sqrt().recip(), 0.0);
        let mut v = nalgebra::DVector::<C64>::zeros(n);
        for &j in &support {
            v[j] = r[(j, i)] * scale;
        }
        r -= &v * v.adjoint();
        // the pivot row is eliminated exactly
        for j in 0..n {
            r[(i, j)] = C64::new(0.0, 0.0);
            r[(j, i)] = C64::new(0.0, 0.0);
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(HermitianMatrix::new(r.clone()).expect("square").min_eigenvalue());
        }
        terms.push(DecompositionTerm {
            support,
            vector: ComplexVector::from_dvector(v),
        });
    }
    Ok(Decomposition::new(terms, m.clone()))
}

/// Options for the alternating-projection search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityOptions {
    pub max_iter: usize,
    /// Converged when `|sum_k M_k - M|_F <= rel_gap * |M|_F`.
    pub rel_gap: f64,
    pub tol: Tolerance,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        FeasibilityOptions {
            max_iter: 50_000,
            rel_gap: 1e-7,
            tol: Tolerance::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityDiagnostics {
    pub iterations: usize,
    /// Final relative gap `|sum_k M_k - M|_F / |M|_F` of the PSD iterate.
    pub gap: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeasibilityOutcome {
    Found(Decomposition),
    /// The search did not converge; this is not a proof of infeasibility.
    Unknown(FeasibilityDiagnostics),
}

impl FeasibilityOutcome {
    pub fn found(&self) -> Option<&Decomposition> {
        match self {
            FeasibilityOutcome::Found(d) => Some(d),
            FeasibilityOutcome::Unknown(_) => None,
        }
    }
}

/// Dykstra alternating projection between block PSD cones supported on
/// `patterns` and the affine set `sum_k M_k = M`.
pub fn feasibility_search(m: &HermitianMatrix, patterns: &[Vec<usize>], opts: &FeasibilityOptions) -> FeasibilityOutcome {
    let n = m.n();
    let tol = &opts.tol;
    let unknown = |iterations, gap, reason: String| {
        FeasibilityOutcome::Unknown(FeasibilityDiagnostics { iterations, gap, reason })
    };
    if let Some(bad) = patterns.iter().flatten().find(|&&i| i >= n) {
        return unknown(0, f64::INFINITY, format!("pattern vertex {bad} out of range"));
    }
    if let Err(e) = require_psd(m, tol) {
        return unknown(0, f64::INFINITY, e.to_string());
    }
    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return FeasibilityOutcome::Found(Decomposition::new(Vec::new(), m.clone()));
    }
    let target = m.as_matrix();

    let mut count = DMatrix::<f64>::zeros(n, n);
    for p in patterns {
        for &i in p {
            for &j in p {
                count[(i, j)] += 1.0;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if count[(i, j)] == 0.0 && target[(i, j)].norm() > tol.zero_tol {
                let (a, b) = (i.min(j), i.max(j));
                return unknown(0, f64::INFINITY, format!("entry ({a}, {b}) is nonzero but lies in no pattern"));
            }
        }
    }

    // block variables start at the even split of M over the patterns covering each entry
    let mut x: Vec<DMatrix<C64>> = patterns
        .iter()
        .map(|p| DMatrix::from_fn(p.len(), p.len(), |a, b| target[(p[a], p[b])] / count[(p[a], p[b])]))
        .collect();
    let mut p_inc: Vec<DMatrix<C64>> = x.iter().map(|b| DMatrix::zeros(b.nrows(), b.ncols())).collect();
    let mut q_inc = p_inc.clone();
    let mut y = x.clone();

    let stop = 0.1 * opts.rel_gap * norm;
    let mut gap = f64::INFINITY;
    let mut iterations = 0;
    for it in 0..opts.max_iter {
        iterations = it + 1;
        for k in 0..x.len() {
            let shifted = &x[k] + &p_inc[k];
            y[k] = project_psd(&shifted);
            p_inc[k] = shifted - &y[k];
        }
        gap = (assemble(patterns, &y, n) - target).norm();
        if gap <= stop {
            break;
        }
        let shifted: Vec<DMatrix<C64>> = (0..x.len()).map(|k| &y[k] + &q_inc[k]).collect();
        let correction = (target - assemble(patterns, &shifted, n)).component_div(&count.map(|c| C64::new(c.max(1.0), 0.0)));
        for k in 0..x.len() {
            let pk = &patterns[k];
            let next = DMatrix::from_fn(pk.len(), pk.len(), |a, b| shifted[k][(a, b)] + correction[(pk[a], pk[b])]);
            q_inc[k] = &shifted[k] - &next;
            x[k] = next;
        }
    }
    let rel = gap / norm;
    if gap > opts.rel_gap * norm {
        return unknown(iterations, rel, "alternating projection did not converge".into());
    }
    let blocks: Vec<(Vec<usize>, HermitianMatrix)> = patterns
        .iter()
        .zip(&y)
        .map(|(p, b)| (p.clone(), HermitianMatrix::new(embed(p, b, n)).expect("square")))
        .collect();
    let decomposition = Decomposition::from_blocks(&blocks, m.clone(), tol.rank_tol * m.trace(), tol);
    if decomposition.residual_norm > tol.rank_tol * norm {
        return unknown(
            iterations,
            decomposition.residual_norm / norm,
            "rank-one refinement exceeded the residual tolerance".into(),
        );
    }
    FeasibilityOutcome::Found(decomposition)
}

fn project_psd(b: &DMatrix<C64>) -> DMatrix<C64> {
    let h = HermitianMatrix::new(b.clone()).expect("square");
    let (values, vectors) = h.eigen();
    let mut out = DMatrix::zeros(b.nrows(), b.ncols());
    for (k, &lambda) in values.iter().enumerate() {
        if lambda > 0.0 {
            let v = vectors.column(k);
            out += v * v.adjoint() * C64::new(lambda, 0.0);
        }
    }
    out
}

fn embed(p: &[usize], block: &DMatrix<C64>, n: usize) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(n, n);
    for (a, &i) in p.iter().enumerate() {
        for (b, &j) in p.iter().enumerate() {
            out[(i, j)] = block[(a, b)];
        }
    }
    out
}

fn assemble(patterns: &[Vec<usize>], blocks: &[DMatrix<C64>], n: usize) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(n, n);
    for (p, b) in patterns.iter().zip(blocks) {
        for (a, &i) in p.iter().enumerate() {
            for (c, &j) in p.iter().enumerate() {
                out[(i, j)] += b[(a, c)];
            }
        }
    }
    out
}

/// A POVM element allowed to fire only on a candidate set must annihilate
/// every state outside it, so it lives in the orthogonal complement of
/// their span. When those complements jointly span less than `C^d`, the
/// elements cannot sum to the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanningObstruction {
    pub dim: usize,
    pub candidate_sets: Vec<Vec<usize>>,
    /// Rank of the states outside each candidate set.
    pub complement_ranks: Vec<usize>,
    /// Dimension of the sum of the allowed subspaces; below `dim`.
    pub joint_rank: usize,
}

impl SpanningObstruction {
    /// Recomputes every rank.
    pub fn verify(&self, states: &[ComplexVector], tol: &Tolerance) -> bool {
        spanning_obstruction(states, &self.candidate_sets, tol).as_ref() == Some(self)
    }
}

pub fn spanning_obstruction(states: &[ComplexVector], candidate_sets: &[Vec<usize>], tol: &Tolerance) -> Option<SpanningObstruction> {
    let dim = states.first()?.dim();
    if candidate_sets.is_empty() {
        return None;
    }
    let mut ranks = Vec::with_capacity(candidate_sets.len());
    let mut allowed: Vec<ComplexVector> = Vec::new();
    for set in candidate_sets {
        let outside: Vec<ComplexVector> = (0..states.len())
            .filter(|i| !set.contains(i))
            .map(|i| states[i].clone())
            .collect();
        let span = orthonormal_span(&outside, dim, tol).ok()?;
        ranks.push(span.len());
        allowed.extend(orthonormal_complement(&span, dim, tol));
    }
    let joint_rank = if allowed.is_empty() { 0 } else { vectors_rank(&allowed, tol).ok()? };
    (joint_rank < dim).then(|| SpanningObstruction {
        dim,
        candidate_sets: candidate_sets.to_vec(),
        complement_ranks: ranks,
        joint_rank,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub residual: f64,
    pub violations: Vec<String>,
}

impl DecompositionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks supports are cliques of the pattern, vectors vanish off their
/// supports, and the terms sum to `m` within `rank_tol * |m|_F`.
pub fn verify_decomposition(m: &HermitianMatrix, decomp: &Decomposition, pattern: &SupportPattern, tol: &Tolerance) -> DecompositionReport {
    let mut violations = Vec::new();
    let n = m.n();
    if pattern.graph.n() != n {
        violations.push(format!("pattern has {} vertices, matrix has {n}", pattern.graph.n()));
    }
    for (k, t) in decomp.terms.iter().enumerate() {
        if t.vector.dim() != n {
            violations.push(format!("term {k} has dimension {}", t.vector.dim()));
            continue;
        }
        if t.support.iter().any(|&i| i >= n) {
            violations.push(format!("term {k} support {:?} out of range", t.support));
            continue;
        }
        if pattern.graph.n() == n && !pattern.graph.is_clique(&t.support) {
            violations.push(format!("term {k} support {:?} is not a clique", t.support));
        }
        for (i, z) in t.vector.entries().iter().enumerate() {
            if !t.support.contains(&i) && z.norm() > tol.zero_tol {
                violations.push(format!("term {k} is nonzero at {i} outside its support"));
                break;
            }
        }
    }
    let residual = if decomp.terms.iter().all(|t| t.vector.dim() == n) {
        (decomp.sum() - m.as_matrix()).norm()
    } else {
        f64::INFINITY
    };
    let bound = tol.rank_tol * m.frobenius_norm().max(1.0);
    if residual > bound {
        violations.push(format!("residual {residual:.3e} exceeds {bound:.3e}"));
    }
    DecompositionReport { residual, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_chordal;
    use crate::linalg::gram;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn example3_gram() -> HermitianMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = |a: usize, b: usize| {
            let mut e = vec![0.0; 4];
            e[a] = s;
            e[b] = s;
            ComplexVector::from_real(&e)
        };
        gram(&[v(0, 1), v(1, 2), v(0, 3), v(2, 3)]).unwrap()
    }

    #[test]
    fn identity_peels_into_singletons() {
        let m = HermitianMatrix::identity(4);
        let p = SupportPattern::new(Graph::empty(4));
        let peo = EliminationOrdering::new(vec![0, 1, 2, 3]);
        let d = chordal_decompose(&m, &p, &peo, &Tolerance::default()).unwrap();
        assert_eq!(d.terms.len(), 4);
        for (k, t) in d.terms.iter().enumerate() {
            assert_eq!(t.support, vec![k]);
            assert_eq!(t.vector, ComplexVector::basis(4, k));
        }
        assert!(verify_decomposition(&m, &d, &p, &Tolerance::default()).is_clean());
    }

    #[test]
    fn cycle_pattern_is_rejected() {
        let m = example3_gram();
        // vertices 0-1-3-2 form the cycle in the gram's pattern
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_chordal(&g).ordering().is_none());
        let err = chordal_decompose(&m, &SupportPattern::new(g), &EliminationOrdering::new(vec![0, 1, 2, 3]), &Tolerance::default());
        assert!(matches!(err, Err(Error::InvalidOrdering { .. })));
    }

    #[test]
    fn pattern_violation_and_not_psd() {
        let tol = Tolerance::default();
        let m = HermitianMatrix::new(DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.5), c(0.5), c(1.0)])).unwrap();
        let empty = SupportPattern::new(Graph::empty(2));
        let order = EliminationOrdering::new(vec![0, 1]);
        assert!(matches!(chordal_decompose(&m, &empty, &order, &tol), Err(Error::PatternViolation { row: 0, col: 1 })));
        let bad = HermitianMatrix::new(DMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(2.0), c(1.0)])).unwrap();
        let full = SupportPattern::new(Graph::complete(2));
        assert!(matches!(chordal_decompose(&bad, &full, &order, &tol), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn example3_feasibility_over_edges() {
        let m = example3_gram();
        let edges = vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]];
        let d = match feasibility_search(&m, &edges, &FeasibilityOptions::default()) {
            FeasibilityOutcome::Found(d) => d,
            other => panic!("{other:?}"),
        };
        let pattern = SupportPattern::new(Graph::from_cliques(4, &edges));
        assert!(verify_decomposition(&m, &d, &pattern, &Tolerance::default()).is_clean());
        // each edge block equals (1/2)(e_i + e_j)(e_i + e_j)^*
        for (support, block) in d.blocks() {
            let (i, j) = (support[0], support[1]);
            assert!((block.get(i, i).re - 0.5).abs() < 1e-7);
            assert!((block.get(i, j).re - 0.5).abs() < 1e-7);
        }
    }

    #[test]
    fn example2_obstruction_and_no_convergence() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let states = vec![
            ComplexVector::from_real(&[1.0, 0.0]),
            ComplexVector::from_real(&[s, s]),
            ComplexVector::from_real(&[s, -s]),
            ComplexVector::from_real(&[0.0, 1.0]),
        ];
        let edges = vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]];
        let tol = Tolerance::default();
        let ob = spanning_obstruction(&states, &edges, &tol).unwrap();
        assert!(ob.verify(&states, &tol));
        let opts = FeasibilityOptions {
            max_iter: 2000,
            ..FeasibilityOptions::default()
        };
        match feasibility_search(&gram(&states).unwrap(), &edges, &opts) {
            FeasibilityOutcome::Unknown(diag) => assert!(diag.gap > 1e-2),
            FeasibilityOutcome::Found(_) => panic!("infeasible instance reported feasible"),
        }
    }

    #[test]
    fn partial_complements_can_still_obstruct() {
        let k = |v: &[f64]| ComplexVector::from_real(v);
        let states = vec![
            k(&[1.0, 0.0, 0.0]),
            k(&[0.0, 0.0, 1.0]),
            k(&[1.0, 1.0, 0.0]),
            k(&[1.0, -1.0, 1.0]),
            k(&[0.0, 1.0, 1.0]),
        ];
        let sets = vec![vec![0, 2, 3], vec![0, 2, 4], vec![1, 3], vec![1, 4]];
        let tol = Tolerance::default();
        let ob = spanning_obstruction(&states, &sets, &tol).unwrap();
        assert_eq!(ob.complement_ranks, vec![2, 2, 3, 3]);
        assert_eq!(ob.joint_rank, 2);
        assert!(ob.verify(&states, &tol));
        // adding a set whose complement allows |2> restores the span
        let mut more = sets.clone();
        more.push(vec![1, 3, 4]);
        assert!(spanning_obstruction(&states, &more, &tol).is_none());
    }

    #[test]
    fn identity_over_singletons() {
        let m = HermitianMatrix::identity(3);
        let sets = vec![vec![0], vec![1], vec![2]];
        assert!(feasibility_search(&m, &sets, &FeasibilityOptions::default()).found().is_some());
    }

    #[test]
    fn uncovered_entry_is_unknown() {
        let m = HermitianMatrix::new(DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.5), c(0.5), c(1.0)])).unwrap();
        match feasibility_search(&m, &[vec![0], vec![1]], &FeasibilityOptions::default()) {
            FeasibilityOutcome::Unknown(d) => assert_eq!(d.iterations, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verify_flags_non_clique_support() {
        let m = HermitianMatrix::identity(2);
        let term = DecompositionTerm {
            support: vec![0, 1],
            vector: ComplexVector::from_real(&[1.0, 0.0]),
        };
        let d = Decomposition::new(vec![term], m.clone());
        let r = verify_decomposition(&m, &d, &SupportPattern::new(Graph::empty(2)), &Tolerance::default());
        assert!(r.violations.iter().any(|v| v.contains("not a clique")));
        assert!(r.violations.iter().any(|v| v.contains("residual")));
    }

    #[test]
    fn record_round_trip() {
        let m = HermitianMatrix::identity(2);
        let d = Decomposition::new(
            vec![DecompositionTerm {
                support: vec![1],
                vector: ComplexVector::basis(2, 1),
            }],
            m.clone(),
        );
        let js = serde_json::to_string(&d).unwrap();
        assert!(js.contains(r#""support":[2]"#));
        let rec: DecompositionRecord = serde_json::from_str(&js).unwrap();
        assert_eq!(Decomposition::from_record(&rec, m).unwrap(), d);
    }
}
