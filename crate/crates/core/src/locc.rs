//! One-way LOCC protocols: synthesis from a decomposition, conversion back,
//! the two-clique construction, POVM validation and exact simulation.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::CliqueCover;
use crate::linalg::{
    least_squares_preimage, orthonormal_complement, orthonormal_span, support, ComplexVector, FrameMap, HermitianMatrix,
    Tolerance, C64,
};
use crate::states::{build_graphs, ProductStateSet};

/// Weighted rank-one piece `weight |direction><direction|` of outcome `outcome`.
#[derive(Clone, Debug, PartialEq)]
pub struct PovmElement {
    pub outcome: usize,
    pub weight: f64,
    pub direction: ComplexVector,
    /// States allowed to produce this outcome (0-based).
    pub support: Vec<usize>,
}

impl PovmElement {
    pub fn operator(&self) -> DMatrix<C64> {
        self.direction.outer() * C64::new(self.weight, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    pub dim: usize,
    pub elements: Vec<PovmElement>,
}

impl Povm {
    pub fn num_outcomes(&self) -> usize {
        self.elements.iter().map(|e| e.outcome + 1).max().unwrap_or(0)
    }

    /// Dense operator of outcome `k`.
    pub fn operator(&self, k: usize) -> DMatrix<C64> {
        self.elements
            .iter()
            .filter(|e| e.outcome == k)
            .fold(DMatrix::zeros(self.dim, self.dim), |acc, e| acc + e.operator())
    }

    pub fn operators(&self) -> Vec<DMatrix<C64>> {
        (0..self.num_outcomes()).map(|k| self.operator(k)).collect()
    }

    /// Support set of outcome `k`.
    pub fn outcome_support(&self, k: usize) -> Vec<usize> {
        self.elements
            .iter()
            .find(|e| e.outcome == k)
            .map(|e| e.support.clone())
            .unwrap_or_default()
    }

    /// `<a|E_k|a>`.
    pub fn probability(&self, k: usize, a: &ComplexVector) -> f64 {
        self.elements
            .iter()
            .filter(|e| e.outcome == k)
            .map(|e| e.weight * e.direction.inner(a).norm_sqr())
            .sum()
    }

    /// `X^* E_k X` per outcome.
    pub fn compressed(&self, states: &[ComplexVector]) -> Result<Vec<HermitianMatrix>> {
        let x = FrameMap::new(states)?;
        Ok(self.operators().iter().map(|e| x.compress(e)).collect())
    }
}

/// Bob's measurement after Alice reports outcome `outcome`.
#[derive(Clone, Debug, PartialEq)]
pub struct BobPlan {
    pub outcome: usize,
    pub basis: Vec<ComplexVector>,
    /// State announced for each basis vector; `None` is inconclusive.
    pub targets: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneWayProtocol {
    pub alice: Povm,
    pub bob_plans: Vec<BobPlan>,
}

/// Orthonormal basis of `C^d_B` whose leading vectors are the clique's Bob states.
fn bob_plan(set: &ProductStateSet, outcome: usize, clique: &[usize], tol: &Tolerance) -> Result<BobPlan> {
    let bob = set.bob();
    for (a, &i) in clique.iter().enumerate() {
        for &j in &clique[a + 1..] {
            if bob[i].inner(&bob[j]).norm() > tol.zero_tol {
                return Err(Error::NonOrthogonalBobClique {
                    support: clique.to_vec(),
                });
            }
        }
    }
    let mut basis: Vec<ComplexVector> = Vec::new();
    let mut targets = Vec::new();
    for &i in clique {
        let mut w = bob[i].as_dvector().clone();
        for b in &basis {
            let c = b.as_dvector().dotc(&w);
            w -= b.as_dvector() * c;
        }
        basis.push(ComplexVector::from_dvector(w).normalized()?);
        targets.push(Some(i));
    }
    for extra in orthonormal_complement(&basis, set.d_b(), tol) {
        basis.push(extra);
        targets.push(None);
    }
    Ok(BobPlan { outcome, basis, targets })
}

fn inverse_sqrt(s: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let h = HermitianMatrix::new(s.clone())?;
    let (values, vectors) = h.eigen();
    let mut out = DMatrix::zeros(s.nrows(), s.ncols());
    for (k, &lambda) in values.iter().enumerate() {
        if lambda <= 0.0 {
            return Err(Error::NotPsd { min_eigenvalue: lambda });
        }
        let v = vectors.column(k);
        out += v * v.adjoint() * C64::new(lambda.powf(-0.5), 0.0);
    }
    Ok(out)
}

/// Builds Alice's POVM from a decomposition of her Gram matrix: each term
/// `v` becomes `|phi><phi|` with `X^* phi = v`. The elements are then
/// rescaled by `S^(-1/2)`, `S` their sum on the span of Alice's states, and
/// the identity on the orthogonal complement joins the last outcome.
pub fn synthesize_protocol(set: &ProductStateSet, decomp: &Decomposition, tol: &Tolerance) -> Result<OneWayProtocol> {
    let n = set.len();
    if decomp.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: decomp.n(),
        });
    }
    let d = set.d_a();
    let q = orthonormal_span(set.alice(), d, tol)?;
    let r = q.len();
    let q_mat = FrameMap::new(&q)?.matrix().clone();
    let reduced: Vec<ComplexVector> = set
        .alice()
        .iter()
        .map(|a| ComplexVector::from_dvector(q_mat.adjoint() * a.as_dvector()))
        .collect();
    let x = FrameMap::new(&reduced)?;

    // outcomes are the distinct supports in order of first appearance
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let mut raw: Vec<(usize, DVector<C64>)> = Vec::new();
    for t in &decomp.terms {
        if t.vector.norm() <= tol.zero_tol {
            continue;
        }
        let k = match supports.iter().position(|s| *s == t.support) {
            Some(k) => k,
            None => {
                supports.push(t.support.clone());
                supports.len() - 1
            }
        };
        let pre = least_squares_preimage(&x, &t.vector, tol)?;
        raw.push((k, pre.direction.as_dvector() * C64::new(pre.scale, 0.0)));
    }
    if raw.is_empty() {
        return Err(Error::ZeroVector {
            context: "decomposition has no nonzero terms".into(),
        });
    }
    let s = raw.iter().fold(DMatrix::<C64>::zeros(r, r), |acc, (_, phi)| acc + phi * phi.adjoint());
    let drift = (&s - DMatrix::<C64>::identity(r, r)).norm();
    if drift > tol.rank_tol.sqrt() {
        return Err(Error::NotInRange { residual: drift });
    }
    let fix = inverse_sqrt(&s)?;

    let mut elements = Vec::new();
    for (k, phi) in raw {
        let full = &q_mat * (&fix * phi);
        let weight = full.norm_squared();
        if weight <= tol.zero_tol * tol.zero_tol {
            continue;
        }
        elements.push(PovmElement {
            outcome: k,
            weight,
            direction: ComplexVector::from_dvector(full).normalized()?,
            support: supports[k].clone(),
        });
    }
    let last = supports.len() - 1;
    for extra in orthonormal_complement(&q, d, tol) {
        elements.push(PovmElement {
            outcome: last,
            weight: 1.0,
            direction: extra,
            support: supports[last].clone(),
        });
    }
    let bob_plans = supports
        .iter()
        .enumerate()
        .map(|(k, s)| bob_plan(set, k, s, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(OneWayProtocol {
        alice: Povm { dim: d, elements },
        bob_plans,
    })
}

/// Blocks `M_k = X^* E_k X` refined into rank-one terms supported on the
/// states each outcome can fire on.
pub fn povm_to_decomposition(alice_states: &[ComplexVector], povm: &Povm, tol: &Tolerance) -> Result<Decomposition> {
    let blocks_raw = povm.compressed(alice_states)?;
    let target = crate::linalg::gram(alice_states)?;
    let blocks: Vec<(Vec<usize>, HermitianMatrix)> = blocks_raw
        .into_iter()
        .map(|m| (support(&m, tol), m))
        .filter(|(s, _)| !s.is_empty())
        .collect();
    let drop = tol.rank_tol * target.trace();
    Ok(Decomposition::from_blocks(&blocks, target, drop, tol))
}

/// Protocol from at most two cliques `V_1, V_2` of `complement(g_bob)` that
/// cover all states and every edge of `g_alice`. Alice projects onto the
/// span of the states only in `V_1` and its complement.
pub fn two_clique_protocol(set: &ProductStateSet, cover: &CliqueCover, tol: &Tolerance) -> Result<OneWayProtocol> {
    let n = set.len();
    let d = set.d_a();
    let graphs = build_graphs(set, tol);
    let upper = graphs.g_bob.complement();
    if cover.is_empty() || cover.len() > 2 {
        return Err(Error::InvalidCover(format!("expected one or two cliques, got {}", cover.len())));
    }
    for c in &cover.cliques {
        if c.iter().any(|&v| v >= n) || !upper.is_clique(c) {
            return Err(Error::InvalidCover(format!("{c:?} is not a clique of the Bob complement")));
        }
    }
    if let Some(v) = (0..n).find(|v| !cover.cliques.iter().any(|c| c.contains(v))) {
        return Err(Error::InvalidCover(format!("state {v} is not covered")));
    }
    for (u, v) in graphs.g_alice.edges() {
        if !cover.cliques.iter().any(|c| c.contains(&u) && c.contains(&v)) {
            return Err(Error::InvalidCover(format!("Alice edge ({u}, {v}) lies in no clique")));
        }
    }

    let identity_basis: Vec<ComplexVector> = (0..d).map(|j| ComplexVector::basis(d, j)).collect();
    let mut parts: Vec<(Vec<usize>, Vec<ComplexVector>)> = Vec::new();
    if cover.len() == 1 {
        parts.push((cover.cliques[0].clone(), identity_basis));
    } else {
        let (v1, v2) = (&cover.cliques[0], &cover.cliques[1]);
        let only_first: Vec<ComplexVector> = v1
            .iter()
            .filter(|i| !v2.contains(i))
            .map(|&i| set.alice()[i].clone())
            .collect();
        let p1 = orthonormal_span(&only_first, d, tol)?;
        let rest = orthonormal_complement(&p1, d, tol);
        for (clique, basis) in [(v1, p1), (v2, rest)] {
            if !basis.is_empty() {
                parts.push((clique.clone(), basis));
            }
        }
    }
    let mut elements = Vec::new();
    let mut bob_plans = Vec::new();
    for (k, (clique, basis)) in parts.into_iter().enumerate() {
        for direction in basis {
            elements.push(PovmElement {
                outcome: k,
                weight: 1.0,
                direction,
                support: clique.clone(),
            });
        }
        bob_plans.push(bob_plan(set, k, &clique, tol)?);
    }
    Ok(OneWayProtocol {
        alice: Povm { dim: d, elements },
        bob_plans,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PovmReport {
    /// `|sum_k E_k - I|_F`.
    pub completeness_residual: f64,
    pub min_weight: f64,
    pub passed: bool,
}

/// Passes iff every weight is positive and the completeness residual is at
/// most `psd_tol * sqrt(d)`.
pub fn validate_povm(povm: &Povm, d: usize, tol: &Tolerance) -> PovmReport {
    let mut total = DMatrix::<C64>::zeros(d, d);
    let mut dims_ok = povm.dim == d;
    for e in &povm.elements {
        if e.direction.dim() != d {
            dims_ok = false;
            break;
        }
        total += e.operator();
    }
    let residual = if dims_ok {
        (total - DMatrix::<C64>::identity(d, d)).norm()
    } else {
        f64::INFINITY
    };
    let min_weight = povm.elements.iter().map(|e| e.weight).fold(f64::INFINITY, f64::min);
    PovmReport {
        completeness_residual: residual,
        min_weight,
        passed: dims_ok && min_weight > 0.0 && residual <= tol.psd_tol * (d as f64).sqrt(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeProbability {
    pub outcome: usize,
    /// Announced state, `None` for an inconclusive result.
    pub bob_result: Option<usize>,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportViolation {
    pub state: usize,
    pub outcome: usize,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub per_state_success: Vec<f64>,
    pub min_success: f64,
    pub outcome_table: Vec<Vec<OutcomeProbability>>,
    /// Outcomes firing on states outside their support.
    pub support_violations: Vec<SupportViolation>,
    pub perfect: bool,
}

/// Exact Born-rule evaluation of the protocol on every state.
pub fn simulate(protocol: &OneWayProtocol, set: &ProductStateSet, tol: &Tolerance) -> ProtocolReport {
    let n = set.len();
    let outcomes = protocol.alice.num_outcomes();
    let mut per_state = Vec::with_capacity(n);
    let mut table = Vec::with_capacity(n);
    let mut violations = Vec::new();
    for i in 0..n {
        let a = &set.alice()[i];
        let b = &set.bob()[i];
        let mut success = 0.0;
        let mut rows = Vec::new();
        for k in 0..outcomes {
            let p = protocol.alice.probability(k, a);
            if p > tol.zero_tol && !protocol.alice.outcome_support(k).contains(&i) {
                violations.push(SupportViolation {
                    state: i,
                    outcome: k,
                    probability: p,
                });
            }
            let Some(plan) = protocol.bob_plans.iter().find(|pl| pl.outcome == k) else {
                if p > 0.0 {
                    rows.push(OutcomeProbability {
                        outcome: k,
                        bob_result: None,
                        probability: p,
                    });
                }
                continue;
            };
            for (basis, target) in plan.basis.iter().zip(&plan.targets) {
                let q = p * basis.inner(b).norm_sqr();
                if *target == Some(i) {
                    success += q;
                }
                if q > tol.zero_tol {
                    match rows.iter_mut().find(|r: &&mut OutcomeProbability| r.outcome == k && r.bob_result == *target) {
                        Some(r) => r.probability += q,
                        None => rows.push(OutcomeProbability {
                            outcome: k,
                            bob_result: *target,
                            probability: q,
                        }),
                    }
                }
            }
        }
        per_state.push(success);
        table.push(rows);
    }
    let min_success = per_state.iter().copied().fold(f64::INFINITY, f64::min);
    ProtocolReport {
        perfect: min_success >= 1.0 - tol.zero_tol && violations.is_empty(),
        per_state_success: per_state,
        min_success,
        outcome_table: table,
        support_violations: violations,
    }
}

/// A bijection `pi` with `|a_k - b_pi(k)|_F <= tol` for all `k`, if one exists.
pub fn match_operators(a: &[DMatrix<C64>], b: &[DMatrix<C64>], tol: f64) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut pi = Vec::with_capacity(a.len());
    fn go(a: &[DMatrix<C64>], b: &[DMatrix<C64>], tol: f64, used: &mut [bool], pi: &mut Vec<usize>) -> bool {
        let k = pi.len();
        if k == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if !used[j] && a[k].shape() == b[j].shape() && (&a[k] - &b[j]).norm() <= tol {
                used[j] = true;
                pi.push(j);
                if go(a, b, tol, used, pi) {
                    return true;
                }
                pi.pop();
                used[j] = false;
            }
        }
        false
    }
    go(a, b, tol, &mut used, &mut pi).then_some(pi)
}

#[derive(Serialize, Deserialize)]
struct ElementRecord {
    outcome: usize,
    weight: f64,
    direction: ComplexVector,
    support: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PlanRecord {
    outcome: usize,
    basis: Vec<ComplexVector>,
    /// 1-based state index per basis vector, `null` when inconclusive.
    targets: Vec<Option<usize>>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ProtocolRecord {
    #[serde(rename = "dA")]
    d_a: usize,
    alice: Vec<ElementRecord>,
    bob: Vec<PlanRecord>,
}

impl OneWayProtocol {
    /// Serializable form; `labels` names each Bob result by state label.
    pub fn to_json_value(&self, labels: &[String]) -> serde_json::Value {
        serde_json::to_value(self.record(Some(labels))).expect("protocol serializes")
    }

    fn record(&self, labels: Option<&[String]>) -> ProtocolRecord {
        ProtocolRecord {
            d_a: self.alice.dim,
            alice: self
                .alice
                .elements
                .iter()
                .map(|e| ElementRecord {
                    outcome: e.outcome + 1,
                    weight: e.weight,
                    direction: e.direction.clone(),
                    support: e.support.iter().map(|&i| i + 1).collect(),
                })
                .collect(),
            bob: self
                .bob_plans
                .iter()
                .map(|p| PlanRecord {
                    outcome: p.outcome + 1,
                    basis: p.basis.clone(),
                    targets: p.targets.iter().map(|t| t.map(|i| i + 1)).collect(),
                    labels: p
                        .targets
                        .iter()
                        .map(|t| match (t, labels) {
                            (Some(i), Some(l)) => l.get(*i).cloned().unwrap_or_else(|| (i + 1).to_string()),
                            (Some(i), None) => (i + 1).to_string(),
                            (None, _) => "inconclusive".to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl Serialize for OneWayProtocol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record(None).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OneWayProtocol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ProtocolRecord::deserialize(d)?;
        let one_based = |i: usize| i.checked_sub(1).ok_or_else(|| D::Error::custom("indices are 1-based"));
        let mut elements = Vec::with_capacity(r.alice.len());
        for e in r.alice {
            elements.push(PovmElement {
                outcome: one_based(e.outcome)?,
                weight: e.weight,
                direction: e.direction,
                support: e.support.into_iter().map(one_based).collect::<std::result::Result<_, _>>()?,
            });
        }
        let mut bob_plans = Vec::with_capacity(r.bob.len());
        for p in r.bob {
            if p.targets.len() != p.basis.len() {
                return Err(D::Error::custom("each basis vector needs a target"));
            }
            bob_plans.push(BobPlan {
                outcome: one_based(p.outcome)?,
                basis: p.basis,
                targets: p
                    .targets
                    .into_iter()
                    .map(|t| t.map(one_based).transpose())
                    .collect::<std::result::Result<_, _>>()?,
            });
        }
        Ok(OneWayProtocol {
            alice: Povm { dim: r.d_a, elements },
            bob_plans,
        })
    }
}
