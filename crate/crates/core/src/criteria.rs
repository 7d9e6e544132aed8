//! The verdict engine: runs the structural criteria in a fixed order and
//! returns the first decisive certificate, with a simulated protocol for
//! every positive answer.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decomposition::{
    chordal_decompose, feasibility_search, spanning_obstruction, verify_decomposition, Decomposition,
    FeasibilityDiagnostics, FeasibilityOptions, FeasibilityOutcome, SpanningObstruction, SupportPattern,
};
use crate::error::{Error, Result};
use crate::graph::{
    alpha, cc2_sandwich, chordal_sandwich, chromatic_number, clique_cover_at_most, clique_number, is_chordal,
    is_proper_coloring, lex_bfs_from, maximal_cliques, simplicial_vertices, Chordality, CliqueCover, Coloring,
    EliminationOrdering, Graph, SearchBudget,
};
use crate::linalg::{ComplexVector, Tolerance, C64};
use crate::locc::{match_operators, simulate, synthesize_protocol, two_clique_protocol, OneWayProtocol, ProtocolReport};
use crate::states::{build_graphs, validate_orthonormal, ProductStateSet, StateGraphs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    AliceFirst,
    BobFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Distinguishable,
    Indistinguishable,
    Unknown,
}

/// Stable identifiers of the certificate kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    ChordalAliceGraph,
    ChordalBobComplement,
    EdgeCliqueCoverLE2,
    SingleQubitSandwich,
    ChordalSandwich,
    FeasibleDecomposition,
    MinDimNoSimplicial,
    AlphaLessThanChi,
    NonChordalSandwichAtMinDim,
    SpanningObstruction,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::ChordalAliceGraph => "ChordalAliceGraph",
            CertificateKind::ChordalBobComplement => "ChordalBobComplement",
            CertificateKind::EdgeCliqueCoverLE2 => "EdgeCliqueCoverLE2",
            CertificateKind::SingleQubitSandwich => "SingleQubitSandwich",
            CertificateKind::ChordalSandwich => "ChordalSandwich",
            CertificateKind::FeasibleDecomposition => "FeasibleDecomposition",
            CertificateKind::MinDimNoSimplicial => "MinDimNoSimplicial",
            CertificateKind::AlphaLessThanChi => "AlphaLessThanChi",
            CertificateKind::NonChordalSandwichAtMinDim => "NonChordalSandwichAtMinDim",
            CertificateKind::SpanningObstruction => "SpanningObstruction",
        }
    }

    pub fn is_positive(&self) -> bool {
        !matches!(
            self,
            CertificateKind::MinDimNoSimplicial
                | CertificateKind::AlphaLessThanChi
                | CertificateKind::NonChordalSandwichAtMinDim
                | CertificateKind::SpanningObstruction
        )
    }
}

/// How the absence of a good sandwich graph at minimal dimension was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SandwichRule {
    /// Exhaustive chordal sandwich search came back empty.
    NoChordalSandwich,
    /// `d_A = 2` and no sandwich graph has an edge clique cover of size two.
    NoTwoCliqueSandwich,
}

/// Certificate payloads. All vertex indices are 0-based and refer to the
/// decision frame (roles swapped for Bob-first verdicts).
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    ChordalAliceGraph {
        ordering: EliminationOrdering,
        decomposition: Decomposition,
    },
    ChordalBobComplement {
        ordering: EliminationOrdering,
        decomposition: Decomposition,
    },
    EdgeCliqueCoverLE2 {
        cover: CliqueCover,
    },
    SingleQubitSandwich {
        graph: Graph,
        cover: CliqueCover,
    },
    ChordalSandwich {
        graph: Graph,
        ordering: EliminationOrdering,
        decomposition: Decomposition,
    },
    FeasibleDecomposition {
        decomposition: Decomposition,
        iterations: usize,
    },
    MinDimNoSimplicial {
        d_a: usize,
        /// Independent set of size `d_A` in the Bob complement, pinning `eta_+ = d_A`.
        independent_set: Vec<usize>,
    },
    /// `alpha(G_A) < chi(G_B) = d_A`.
    AlphaLessThanChi {
        alpha: usize,
        independent_set: Vec<usize>,
        chi: usize,
        coloring: Coloring,
    },
    NonChordalSandwichAtMinDim {
        chi: usize,
        coloring: Coloring,
        rule: SandwichRule,
    },
    SpanningObstruction {
        obstruction: SpanningObstruction,
    },
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn val<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn cover_json(c: &CliqueCover) -> Value {
    Value::from(c.cliques.iter().map(|q| one_based(q)).collect::<Vec<_>>())
}

fn coloring_json(c: &Coloring) -> Value {
    json!({ "colors": one_based(&c.colors), "num_colors": c.num_colors })
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::ChordalAliceGraph { .. } => CertificateKind::ChordalAliceGraph,
            Certificate::ChordalBobComplement { .. } => CertificateKind::ChordalBobComplement,
            Certificate::EdgeCliqueCoverLE2 { .. } => CertificateKind::EdgeCliqueCoverLE2,
            Certificate::SingleQubitSandwich { .. } => CertificateKind::SingleQubitSandwich,
            Certificate::ChordalSandwich { .. } => CertificateKind::ChordalSandwich,
            Certificate::FeasibleDecomposition { .. } => CertificateKind::FeasibleDecomposition,
            Certificate::MinDimNoSimplicial { .. } => CertificateKind::MinDimNoSimplicial,
            Certificate::AlphaLessThanChi { .. } => CertificateKind::AlphaLessThanChi,
            Certificate::NonChordalSandwichAtMinDim { .. } => CertificateKind::NonChordalSandwichAtMinDim,
            Certificate::SpanningObstruction { .. } => CertificateKind::SpanningObstruction,
        }
    }

    /// The decomposition behind a positive certificate, if any.
    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            Certificate::ChordalAliceGraph { decomposition, .. }
            | Certificate::ChordalBobComplement { decomposition, .. }
            | Certificate::ChordalSandwich { decomposition, .. }
            | Certificate::FeasibleDecomposition { decomposition, .. } => Some(decomposition),
            _ => None,
        }
    }

    /// JSON payload with 1-based vertex labels.
    pub fn payload_json(&self) -> Value {
        match self {
            Certificate::ChordalAliceGraph { ordering, decomposition } | Certificate::ChordalBobComplement { ordering, decomposition } => {
                json!({ "ordering": one_based(&ordering.order), "decomposition": val(decomposition) })
            }
            Certificate::EdgeCliqueCoverLE2 { cover } => json!({ "cover": cover_json(cover) }),
            Certificate::SingleQubitSandwich { graph, cover } => json!({ "graph": val(graph), "cover": cover_json(cover) }),
            Certificate::ChordalSandwich {
                graph,
                ordering,
                decomposition,
            } => json!({
                "graph": val(graph),
                "ordering": one_based(&ordering.order),
                "decomposition": val(decomposition),
            }),
            Certificate::FeasibleDecomposition { decomposition, iterations } => {
                json!({ "decomposition": val(decomposition), "iterations": iterations })
            }
            Certificate::MinDimNoSimplicial { d_a, independent_set } => json!({
                "dA": d_a,
                "eta_plus": d_a,
                "independent_set": one_based(independent_set),
                "simplicial_vertices": [],
            }),
            Certificate::AlphaLessThanChi {
                alpha,
                independent_set,
                chi,
                coloring,
            } => json!({
                "alpha": alpha,
                "independent_set": one_based(independent_set),
                "chi": chi,
                "coloring": coloring_json(coloring),
            }),
            Certificate::NonChordalSandwichAtMinDim { chi, coloring, rule } => {
                json!({ "chi": chi, "coloring": coloring_json(coloring), "rule": val(rule) })
            }
            Certificate::SpanningObstruction { obstruction } => json!({
                "dim": obstruction.dim,
                "candidate_sets": obstruction.candidate_sets.iter().map(|s| one_based(s)).collect::<Vec<_>>(),
                "complement_ranks": obstruction.complement_ranks,
                "joint_rank": obstruction.joint_rank,
            }),
        }
    }

    /// Re-checks the certificate from scratch against `set`, which must be
    /// in the decision frame.
    pub fn verify(&self, set: &ProductStateSet, tol: &Tolerance, budget: &SearchBudget) -> Result<bool> {
        let graphs = build_graphs(set, tol);
        let ga = &graphs.g_alice;
        let gbc = graphs.g_bob.complement();
        let gram = &graphs.alice_gram;
        let decomposition_ok = |d: &Decomposition, pattern: &Graph| {
            verify_decomposition(gram, d, &SupportPattern::new(pattern.clone()), tol).is_clean()
        };
        let sandwiched = |g: &Graph| g.n() == ga.n() && ga.is_subgraph_of(g) && g.is_subgraph_of(&gbc);
        let min_dim = |chi: usize, coloring: &Coloring| -> Result<bool> {
            Ok(set.d_a() == chi
                && coloring.num_colors == chi
                && is_proper_coloring(&graphs.g_bob, &coloring.colors)
                && chromatic_number(&graphs.g_bob, budget)?.0 == chi)
        };
        Ok(match self {
            Certificate::ChordalAliceGraph { ordering, decomposition } => {
                ordering.verify(ga).is_ok() && decomposition_ok(decomposition, ga)
            }
            Certificate::ChordalBobComplement { ordering, decomposition } => {
                ordering.verify(&gbc).is_ok() && decomposition_ok(decomposition, &gbc)
            }
            Certificate::EdgeCliqueCoverLE2 { cover } => cover.len() <= 2 && cover.verify(&gbc).is_ok(),
            Certificate::SingleQubitSandwich { graph, cover } => {
                set.d_a() == 2 && sandwiched(graph) && cover.len() <= 2 && cover.verify(graph).is_ok()
            }
            Certificate::ChordalSandwich {
                graph,
                ordering,
                decomposition,
            } => sandwiched(graph) && ordering.verify(graph).is_ok() && decomposition_ok(decomposition, graph),
            Certificate::FeasibleDecomposition { decomposition, .. } => decomposition_ok(decomposition, &gbc),
            Certificate::MinDimNoSimplicial { d_a, independent_set } => {
                let mut s = independent_set.clone();
                s.sort_unstable();
                s.dedup();
                *d_a == set.d_a()
                    && s.len() == *d_a
                    && s.iter().all(|&v| v < gbc.n())
                    && gbc.is_independent(&s)
                    && simplicial_vertices(&gbc).is_empty()
            }
            Certificate::AlphaLessThanChi {
                alpha: a,
                independent_set,
                chi,
                coloring,
            } => {
                *a < *chi
                    && independent_set.len() == *a
                    && ga.is_independent(independent_set)
                    && alpha(ga, budget)?.0 == *a
                    && min_dim(*chi, coloring)?
            }
            Certificate::NonChordalSandwichAtMinDim { chi, coloring, rule } => {
                let none = match rule {
                    SandwichRule::NoChordalSandwich => chordal_sandwich(ga, &gbc, budget)?.is_none(),
                    SandwichRule::NoTwoCliqueSandwich => set.d_a() == 2 && cc2_sandwich(ga, &gbc)?.is_none(),
                };
                none && min_dim(*chi, coloring)?
            }
            Certificate::SpanningObstruction { obstruction } => {
                let covered = maximal_cliques(&gbc)
                    .iter()
                    .all(|q| obstruction.candidate_sets.iter().any(|s| q.iter().all(|v| s.contains(v))));
                covered && obstruction.verify(set.alice(), tol)
            }
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DecisionOptions {
    pub tol: Tolerance,
    pub budget: SearchBudget,
    pub feasibility: FeasibilityOptions,
}

/// Every parameter the pipeline computed, `None` where it never got that far.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DecisionParameters {
    pub n: usize,
    #[serde(rename = "dA")]
    pub d_a: usize,
    #[serde(rename = "dB")]
    pub d_b: usize,
    pub alice_chordal: bool,
    pub bob_complement_chordal: bool,
    pub cc_at_most_two: Option<bool>,
    pub chi_bob: Option<usize>,
    pub alpha_alice: Option<usize>,
    pub alpha_bob_complement: Option<usize>,
    /// 1-based.
    pub simplicial_vertices: Option<Vec<usize>>,
    pub chordal_sandwich_exists: Option<bool>,
    pub maximal_cliques: Option<usize>,
    pub feasibility: Option<FeasibilityDiagnostics>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub direction: Direction,
    pub certificate: Option<Certificate>,
    /// Present on Distinguishable; acts on the decision frame.
    pub protocol: Option<OneWayProtocol>,
    pub simulation: Option<ProtocolReport>,
    pub parameters: DecisionParameters,
    pub diagnostics: Vec<String>,
    pub labels: Vec<String>,
}

impl Verdict {
    pub fn kind(&self) -> Option<CertificateKind> {
        self.certificate.as_ref().map(Certificate::kind)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status,
            "direction": self.direction,
            "certificate": self.certificate.as_ref().map(|c| json!({ "kind": c.kind().as_str(), "payload": c.payload_json() })),
            "protocol": self.protocol.as_ref().map(|p| p.to_json_value(&self.labels)),
            "simulation": self.simulation.as_ref().map(|r| json!({
                "min_success": r.min_success,
                "per_state_success": r.per_state_success,
                "perfect": r.perfect,
            })),
            "parameters": self.parameters,
            "diagnostics": self.diagnostics,
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Set in the frame where the first measurer is called Alice.
pub fn decision_frame(set: &ProductStateSet, direction: Direction) -> ProductStateSet {
    match direction {
        Direction::AliceFirst => set.clone(),
        Direction::BobFirst => set.swapped(),
    }
}

struct Pipeline<'a> {
    set: &'a ProductStateSet,
    opts: &'a DecisionOptions,
    graphs: StateGraphs,
    gbc: Graph,
    params: DecisionParameters,
    notes: Vec<String>,
}

enum Step {
    Decided(Box<Verdict>),
    Continue,
}

impl<'a> Pipeline<'a> {
    fn done(&mut self, status: Status, cert: Certificate, protocol: Option<(OneWayProtocol, ProtocolReport)>) -> Step {
        let (protocol, simulation) = match protocol {
            Some((p, r)) => (Some(p), Some(r)),
            None => (None, None),
        };
        Step::Decided(Box::new(Verdict {
            status,
            direction: Direction::AliceFirst,
            certificate: Some(cert),
            protocol,
            simulation,
            parameters: std::mem::take(&mut self.params),
            diagnostics: std::mem::take(&mut self.notes),
            labels: self.set.labels().to_vec(),
        }))
    }

    fn note_err(&mut self, stage: &str, e: &Error) {
        log::info!("{stage}: {e}");
        self.notes.push(format!("{stage}: {e}"));
    }

    /// Synthesizes and simulates; `None` when the protocol is not perfect.
    fn protocol_from(&mut self, stage: &str, d: &Decomposition) -> Option<(OneWayProtocol, ProtocolReport)> {
        match synthesize_protocol(self.set, d, &self.opts.tol) {
            Ok(p) => self.check(stage, p),
            Err(e) => {
                self.note_err(stage, &e);
                None
            }
        }
    }

    fn check(&mut self, stage: &str, p: OneWayProtocol) -> Option<(OneWayProtocol, ProtocolReport)> {
        let r = simulate(&p, self.set, &self.opts.tol);
        if r.perfect {
            Some((p, r))
        } else {
            self.notes.push(format!("{stage}: protocol simulated to min success {:.3e}", r.min_success));
            None
        }
    }

    fn chordal_step(&mut self, g: &Graph, ordering: &EliminationOrdering, stage: &str) -> Option<(Decomposition, OneWayProtocol, ProtocolReport)> {
        let pattern = SupportPattern::new(g.clone());
        match chordal_decompose(&self.graphs.alice_gram, &pattern, ordering, &self.opts.tol) {
            Ok(d) => self.protocol_from(stage, &d).map(|(p, r)| (d, p, r)),
            Err(e) => {
                self.note_err(stage, &e);
                None
            }
        }
    }

    fn run(&mut self) -> Step {
        let tol = self.opts.tol;
        let budget = self.opts.budget.clone();
        let ga = self.graphs.g_alice.clone();
        let gbc = self.gbc.clone();
        let d_a = self.set.d_a();

        // (a) chordal Alice graph or Bob complement
        for (which, g) in [(CertificateKind::ChordalAliceGraph, &ga), (CertificateKind::ChordalBobComplement, &gbc)] {
            if let Chordality::Chordal(ordering) = is_chordal(g) {
                if let Some((decomposition, p, r)) = self.chordal_step(g, &ordering, which.as_str()) {
                    let cert = match which {
                        CertificateKind::ChordalAliceGraph => Certificate::ChordalAliceGraph { ordering, decomposition },
                        _ => Certificate::ChordalBobComplement { ordering, decomposition },
                    };
                    return self.done(Status::Distinguishable, cert, Some((p, r)));
                }
            }
        }

        // (b) Bob complement covered by at most two cliques
        match clique_cover_at_most(&gbc, 2, &budget) {
            Ok(Some(cover)) => {
                self.params.cc_at_most_two = Some(true);
                match two_clique_protocol(self.set, &cover, &tol) {
                    Ok(p) => {
                        if let Some(pr) = self.check("EdgeCliqueCoverLE2", p) {
                            return self.done(Status::Distinguishable, Certificate::EdgeCliqueCoverLE2 { cover }, Some(pr));
                        }
                    }
                    Err(e) => self.note_err("EdgeCliqueCoverLE2", &e),
                }
            }
            Ok(None) => self.params.cc_at_most_two = Some(false),
            Err(e) => self.note_err("edge clique cover", &e),
        }

        let chi = match chromatic_number(&self.graphs.g_bob, &budget) {
            Ok((chi, coloring)) => {
                self.params.chi_bob = Some(chi);
                Some((chi, coloring))
            }
            Err(e) => {
                self.note_err("chromatic number", &e);
                None
            }
        };
        let at_min_dim = chi.as_ref().filter(|(c, _)| *c == d_a).cloned();

        // (c) single-qubit Alice: sandwich with edge clique cover <= 2
        if d_a == 2 {
            match cc2_sandwich(&ga, &gbc) {
                Ok(Some((graph, cover))) => match two_clique_protocol(self.set, &cover, &tol) {
                    Ok(p) => {
                        if let Some(pr) = self.check("SingleQubitSandwich", p) {
                            return self.done(Status::Distinguishable, Certificate::SingleQubitSandwich { graph, cover }, Some(pr));
                        }
                    }
                    Err(e) => self.note_err("SingleQubitSandwich", &e),
                },
                Ok(None) => {
                    if let Some((chi, coloring)) = at_min_dim.clone() {
                        let rule = match chordal_sandwich(&ga, &gbc, &budget) {
                            Ok(None) => {
                                self.params.chordal_sandwich_exists = Some(false);
                                SandwichRule::NoChordalSandwich
                            }
                            Ok(Some(_)) => {
                                // excluded by theory; leave it to the later steps
                                self.notes.push("chordal sandwich found despite no two-clique sandwich at dA = 2".into());
                                self.params.chordal_sandwich_exists = Some(true);
                                return self.after_min_dim(chi);
                            }
                            Err(e) => {
                                self.note_err("chordal sandwich", &e);
                                SandwichRule::NoTwoCliqueSandwich
                            }
                        };
                        return self.done(
                            Status::Indistinguishable,
                            Certificate::NonChordalSandwichAtMinDim { chi, coloring, rule },
                            None,
                        );
                    }
                }
                Err(e) => self.note_err("two-clique sandwich", &e),
            }
        }

        // (d) minimal dimension: a perfect protocol forces an independent set
        // of size chi(G_B) in G_A
        if let Some((chi, coloring)) = at_min_dim.clone() {
            match alpha(&ga, &budget) {
                Ok((a, independent_set)) => {
                    self.params.alpha_alice = Some(a);
                    if a < chi {
                        return self.done(
                            Status::Indistinguishable,
                            Certificate::AlphaLessThanChi {
                                alpha: a,
                                independent_set,
                                chi,
                                coloring,
                            },
                            None,
                        );
                    }
                }
                Err(e) => self.note_err("independence number", &e),
            }
        }
        self.after_min_dim(chi.map(|c| c.0).unwrap_or(0))
    }

    fn after_min_dim(&mut self, chi: usize) -> Step {
        let tol = self.opts.tol;
        let budget = self.opts.budget.clone();
        let ga = self.graphs.g_alice.clone();
        let gbc = self.gbc.clone();
        let d_a = self.set.d_a();

        // (e) no simplicial vertices with eta_+ pinned to dA
        let simplicial = simplicial_vertices(&gbc);
        self.params.simplicial_vertices = Some(one_based(&simplicial));
        if simplicial.is_empty() {
            match alpha(&gbc, &budget) {
                Ok((a, independent_set)) => {
                    self.params.alpha_bob_complement = Some(a);
                    if a == d_a {
                        return self.done(Status::Indistinguishable, Certificate::MinDimNoSimplicial { d_a, independent_set }, None);
                    }
                }
                Err(e) => self.note_err("independence number", &e),
            }
        }

        // (d, continued) chordal sandwich
        match chordal_sandwich(&ga, &gbc, &budget) {
            Ok(Some(graph)) => {
                self.params.chordal_sandwich_exists = Some(true);
                let ordering = is_chordal(&graph).ordering().cloned().expect("sandwich search returns chordal graphs");
                if let Some((decomposition, p, r)) = self.chordal_step(&graph, &ordering, "ChordalSandwich") {
                    return self.done(
                        Status::Distinguishable,
                        Certificate::ChordalSandwich {
                            graph,
                            ordering,
                            decomposition,
                        },
                        Some((p, r)),
                    );
                }
            }
            Ok(None) => {
                self.params.chordal_sandwich_exists = Some(false);
                if chi == d_a {
                    let coloring = chromatic_number(&self.graphs.g_bob, &budget).map(|c| c.1);
                    match coloring {
                        Ok(coloring) => {
                            return self.done(
                                Status::Indistinguishable,
                                Certificate::NonChordalSandwichAtMinDim {
                                    chi,
                                    coloring,
                                    rule: SandwichRule::NoChordalSandwich,
                                },
                                None,
                            )
                        }
                        Err(e) => self.note_err("chromatic number", &e),
                    }
                }
            }
            Err(e) => self.note_err("chordal sandwich", &e),
        }

        // (f) spanning obstruction over the maximal cliques of the Bob complement
        let cliques = maximal_cliques(&gbc);
        self.params.maximal_cliques = Some(cliques.len());
        if let Some(obstruction) = spanning_obstruction(self.set.alice(), &cliques, &tol) {
            return self.done(Status::Indistinguishable, Certificate::SpanningObstruction { obstruction }, None);
        }

        // (g) numerical feasibility search
        match feasibility_search(&self.graphs.alice_gram, &cliques, &self.opts.feasibility) {
            FeasibilityOutcome::Found(decomposition) => {
                if let Some(pr) = self.protocol_from("FeasibleDecomposition", &decomposition) {
                    return self.done(
                        Status::Distinguishable,
                        Certificate::FeasibleDecomposition {
                            decomposition,
                            iterations: 0,
                        },
                        Some(pr),
                    );
                }
            }
            FeasibilityOutcome::Unknown(diag) => {
                self.notes.push(format!(
                    "feasibility search inconclusive after {} iterations (relative gap {:.3e}): {}",
                    diag.iterations, diag.gap, diag.reason
                ));
                self.params.feasibility = Some(diag);
            }
        }
        Step::Continue
    }
}

/// Decides one-way distinguishability with the given party measuring first.
pub fn decide(set: &ProductStateSet, direction: Direction, opts: &DecisionOptions) -> Result<Verdict> {
    let frame = decision_frame(set, direction);
    let graphs = build_graphs(&frame, &opts.tol);
    validate_orthonormal(&frame, &graphs, &opts.tol)?;
    let gbc = graphs.g_bob.complement();
    let params = DecisionParameters {
        n: frame.len(),
        d_a: frame.d_a(),
        d_b: frame.d_b(),
        alice_chordal: is_chordal(&graphs.g_alice).is_chordal(),
        bob_complement_chordal: is_chordal(&gbc).is_chordal(),
        ..Default::default()
    };
    let mut pipeline = Pipeline {
        set: &frame,
        opts,
        graphs,
        gbc,
        params,
        notes: Vec::new(),
    };
    let mut verdict = match pipeline.run() {
        Step::Decided(v) => *v,
        Step::Continue => Verdict {
            status: Status::Unknown,
            direction,
            certificate: None,
            protocol: None,
            simulation: None,
            parameters: std::mem::take(&mut pipeline.params),
            diagnostics: std::mem::take(&mut pipeline.notes),
            labels: frame.labels().to_vec(),
        },
    };
    verdict.direction = direction;
    if let Some(Certificate::FeasibleDecomposition { iterations, .. }) = verdict.certificate.as_mut() {
        *iterations = verdict.parameters.feasibility.as_ref().map_or(0, |f| f.iterations);
    }
    Ok(verdict)
}

/// Checks of the minimal-dimension converse on a Distinguishable verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub applicable: bool,
    pub reason: String,
    /// Alice's measurement is an orthonormal basis of `C^dA`.
    pub projective_basis: bool,
    /// The basis vectors, one per outcome, when projective.
    pub basis: Vec<ComplexVector>,
    /// `chi(G_B) <= alpha(G_A)`.
    pub alpha_alice_at_least_chi: bool,
    /// `alpha(complement G_B) = chi(G_B)`, i.e. `omega(G_B) = chi(G_B)`.
    /// Informational: it fails on distinguishable sets such as `G_B = C_5`.
    pub weakly_perfect: bool,
    pub chordal_sandwich_exists: bool,
    /// Every alternative decomposition produced the same measurement.
    pub unique: bool,
    pub alternatives_checked: usize,
}

impl ConverseReport {
    fn not_applicable(reason: impl Into<String>) -> Self {
        ConverseReport {
            applicable: false,
            reason: reason.into(),
            projective_basis: false,
            basis: Vec::new(),
            alpha_alice_at_least_chi: false,
            weakly_perfect: false,
            chordal_sandwich_exists: false,
            unique: false,
            alternatives_checked: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.applicable && self.projective_basis && self.alpha_alice_at_least_chi && self.chordal_sandwich_exists && self.unique
    }
}

const OPERATOR_MATCH_TOL: f64 = 1e-6;

fn projective_basis(ops: &[DMatrix<C64>], d: usize, tol: f64) -> Option<Vec<ComplexVector>> {
    let nonzero: Vec<&DMatrix<C64>> = ops.iter().filter(|m| m.norm() > tol).collect();
    if nonzero.len() != d {
        return None;
    }
    let mut basis = Vec::with_capacity(d);
    for m in nonzero {
        if (m * m - m).norm() > tol || (m.trace().re - 1.0).abs() > tol {
            return None;
        }
        let h = crate::linalg::HermitianMatrix::new(m.clone()).ok()?;
        let (_, vecs) = h.eigen();
        basis.push(ComplexVector::from_dvector(vecs.column(0).into_owned()));
    }
    Some(basis)
}

/// Alice operators of every alternative protocol obtainable from chordal
/// peelings (all Lex-BFS starts) and the feasibility search.
fn alternative_measurements(set: &ProductStateSet, opts: &DecisionOptions) -> Vec<Vec<DMatrix<C64>>> {
    let tol = &opts.tol;
    let graphs = build_graphs(set, tol);
    let ga = &graphs.g_alice;
    let gbc = graphs.g_bob.complement();
    let mut patterns = Vec::new();
    for g in [ga.clone(), gbc.clone()] {
        if is_chordal(&g).is_chordal() {
            patterns.push(g);
        }
    }
    if let Ok(Some(g)) = chordal_sandwich(ga, &gbc, &opts.budget) {
        patterns.push(g);
    }
    let mut decomps = Vec::new();
    for g in &patterns {
        let pattern = SupportPattern::new(g.clone());
        for start in 0..g.n() {
            let mut order = lex_bfs_from(g, start);
            order.reverse();
            let peo = EliminationOrdering::new(order);
            if peo.verify(g).is_err() {
                continue;
            }
            if let Ok(d) = chordal_decompose(&graphs.alice_gram, &pattern, &peo, tol) {
                decomps.push(d);
            }
        }
    }
    if let FeasibilityOutcome::Found(d) = feasibility_search(&graphs.alice_gram, &maximal_cliques(&gbc), &opts.feasibility) {
        decomps.push(d);
    }
    decomps
        .iter()
        .filter_map(|d| synthesize_protocol(set, d, tol).ok())
        .filter(|p| simulate(p, set, tol).perfect)
        .map(|p| p.alice.operators())
        .collect()
}

/// Conclusions 1 through 4 of the minimal-dimension converse, checked on
/// the verdict's protocol and on independently synthesized alternatives.
pub fn converse_theorem_checks(set: &ProductStateSet, verdict: &Verdict, opts: &DecisionOptions) -> Result<ConverseReport> {
    let frame = decision_frame(set, verdict.direction);
    let graphs = build_graphs(&frame, &opts.tol);
    let d = frame.d_a();
    let (chi, _) = chromatic_number(&graphs.g_bob, &opts.budget)?;
    if chi != d {
        return Ok(ConverseReport::not_applicable(format!("not applicable: dA = {d} but chi(G_B) = {chi}")));
    }
    let Some(protocol) = verdict.protocol.as_ref().filter(|_| verdict.status == Status::Distinguishable) else {
        return Ok(ConverseReport::not_applicable(format!("not applicable: verdict is {:?}", verdict.status)));
    };
    let ops = protocol.alice.operators();
    let basis = projective_basis(&ops, d, OPERATOR_MATCH_TOL);
    let gbc = graphs.g_bob.complement();
    let alpha_c = alpha(&gbc, &opts.budget)?.0;
    let alpha_a = alpha(&graphs.g_alice, &opts.budget)?.0;
    let omega_b = clique_number(&graphs.g_bob, &opts.budget)?;
    let weakly_perfect = alpha_c == chi && omega_b == chi;
    let chordal_sandwich_exists = chordal_sandwich(&graphs.g_alice, &gbc, &opts.budget)?.is_some();
    let reference: Vec<DMatrix<C64>> = ops.iter().filter(|m| m.norm() > OPERATOR_MATCH_TOL).cloned().collect();
    let alternatives = alternative_measurements(&frame, opts);
    let unique = alternatives.iter().all(|alt| {
        let alt: Vec<DMatrix<C64>> = alt.iter().filter(|m| m.norm() > OPERATOR_MATCH_TOL).cloned().collect();
        match_operators(&reference, &alt, OPERATOR_MATCH_TOL).is_some()
    });
    Ok(ConverseReport {
        applicable: true,
        reason: "dA = chi(G_B) and the verdict is distinguishable".into(),
        projective_basis: basis.is_some(),
        basis: basis.unwrap_or_default(),
        alpha_alice_at_least_chi: chi <= alpha_a,
        weakly_perfect,
        chordal_sandwich_exists,
        unique,
        alternatives_checked: alternatives.len(),
    })
}
