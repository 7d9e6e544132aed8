//! Bipartite product-state sets and their Alice/Bob orthogonality graphs.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{gram, ComplexVector, HermitianMatrix, Tolerance};

/// One raw `|a> (x) |b>` pair before normalization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawProduct {
    pub label: Option<String>,
    #[serde(rename = "A")]
    pub alice: ComplexVector,
    #[serde(rename = "B")]
    pub bob: ComplexVector,
}

impl RawProduct {
    pub fn new(label: impl Into<String>, alice: ComplexVector, bob: ComplexVector) -> Self {
        RawProduct {
            label: Some(label.into()),
            alice,
            bob,
        }
    }
}

/// Normalized product states `|a_k> (x) |b_k>` in `C^dA (x) C^dB`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductStateSet {
    d_a: usize,
    d_b: usize,
    alice: Vec<ComplexVector>,
    bob: Vec<ComplexVector>,
    labels: Vec<String>,
}

impl ProductStateSet {
    /// Validates dimensions and normalizes every component. Missing labels
    /// default to the 1-based position.
    pub fn ingest(raw: Vec<RawProduct>, tol: &Tolerance) -> Result<Self> {
        let first = raw.first().ok_or_else(|| Error::Parse("state set is empty".into()))?;
        let (d_a, d_b) = (first.alice.dim(), first.bob.dim());
        if d_a == 0 || d_b == 0 {
            return Err(Error::Parse("local dimensions must be positive".into()));
        }
        let mut set = ProductStateSet {
            d_a,
            d_b,
            alice: Vec::with_capacity(raw.len()),
            bob: Vec::with_capacity(raw.len()),
            labels: Vec::with_capacity(raw.len()),
        };
        for (k, p) in raw.into_iter().enumerate() {
            for (v, d) in [(&p.alice, d_a), (&p.bob, d_b)] {
                if v.dim() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: v.dim(),
                    });
                }
            }
            let label = p.label.unwrap_or_else(|| (k + 1).to_string());
            for (v, side) in [(&p.alice, "Alice"), (&p.bob, "Bob")] {
                if v.norm() <= tol.zero_tol || !v.norm().is_finite() {
                    return Err(Error::ZeroVector {
                        context: format!("{side} part of state {label}"),
                    });
                }
            }
            set.alice.push(p.alice.normalized()?);
            set.bob.push(p.bob.normalized()?);
            set.labels.push(label);
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.alice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alice.is_empty()
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn alice(&self) -> &[ComplexVector] {
        &self.alice
    }

    pub fn bob(&self) -> &[ComplexVector] {
        &self.bob
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The same states with the roles of Alice and Bob exchanged.
    pub fn swapped(&self) -> ProductStateSet {
        ProductStateSet {
            d_a: self.d_b,
            d_b: self.d_a,
            alice: self.bob.clone(),
            bob: self.alice.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Sub-collection in the given order.
    pub fn subset(&self, indices: &[usize]) -> ProductStateSet {
        ProductStateSet {
            d_a: self.d_a,
            d_b: self.d_b,
            alice: indices.iter().map(|&i| self.alice[i].clone()).collect(),
            bob: indices.iter().map(|&i| self.bob[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// Index of the state with the given label.
    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn to_raw(&self) -> Vec<RawProduct> {
        (0..self.len())
            .map(|k| RawProduct::new(self.labels[k].clone(), self.alice[k].clone(), self.bob[k].clone()))
            .collect()
    }

    pub fn from_json(s: &str, tol: &Tolerance) -> Result<Self> {
        let raw: StateSetJson = serde_json::from_str(s)?;
        raw.into_set(tol)
    }
}

#[derive(Serialize, Deserialize)]
struct StateSetJson {
    #[serde(rename = "dA")]
    d_a: usize,
    #[serde(rename = "dB")]
    d_b: usize,
    states: Vec<RawProduct>,
}

impl StateSetJson {
    fn into_set(self, tol: &Tolerance) -> Result<ProductStateSet> {
        if self.states.is_empty() {
            return Err(Error::Parse("state set is empty".into()));
        }
        let set = ProductStateSet::ingest(self.states, tol)?;
        if set.d_a != self.d_a || set.d_b != self.d_b {
            let (expected, found) = if set.d_a != self.d_a {
                (self.d_a, set.d_a)
            } else {
                (self.d_b, set.d_b)
            };
            return Err(Error::DimensionMismatch { expected, found });
        }
        Ok(set)
    }
}

impl Serialize for ProductStateSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateSetJson {
            d_a: self.d_a,
            d_b: self.d_b,
            states: self.to_raw(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProductStateSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        StateSetJson::deserialize(d)?
            .into_set(&Tolerance::default())
            .map_err(serde::de::Error::custom)
    }
}

/// Orthogonality graphs and Gram matrices of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct StateGraphs {
    pub g_alice: Graph,
    pub g_bob: Graph,
    pub alice_gram: HermitianMatrix,
    pub bob_gram: HermitianMatrix,
}

fn overlap_graph(m: &HermitianMatrix, tol: &Tolerance) -> Graph {
    let n = m.n();
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, j).norm() > tol.zero_tol {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Edge `(i, j)` whenever the local parts overlap by more than `zero_tol`.
pub fn build_graphs(set: &ProductStateSet, tol: &Tolerance) -> StateGraphs {
    let alice_gram = gram(&set.alice).expect("ingest enforces one dimension");
    let bob_gram = gram(&set.bob).expect("ingest enforces one dimension");
    StateGraphs {
        g_alice: overlap_graph(&alice_gram, tol),
        g_bob: overlap_graph(&bob_gram, tol),
        alice_gram,
        bob_gram,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthonormalityReport {
    /// Largest `|<a_i|a_j><b_i|b_j>|` over distinct pairs.
    pub max_overlap: f64,
    /// Pairs whose overlap lies in `(zero_tol / 10, 10 zero_tol]`, with the modulus.
    pub near_threshold: Vec<(usize, usize, f64)>,
}

/// Confirms the product states are mutually orthogonal.
pub fn validate_orthonormal(set: &ProductStateSet, graphs: &StateGraphs, tol: &Tolerance) -> Result<OrthonormalityReport> {
    let n = set.len();
    let mut bad = Vec::new();
    let mut near = Vec::new();
    let mut max_overlap: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let z = (graphs.alice_gram.get(i, j) * graphs.bob_gram.get(i, j)).norm();
            max_overlap = max_overlap.max(z);
            if z > tol.zero_tol {
                bad.push((i, j));
            }
            if z > 0.1 * tol.zero_tol && z <= 10.0 * tol.zero_tol {
                near.push((i, j, z));
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::NotMutuallyOrthogonal { pairs: bad });
    }
    Ok(OrthonormalityReport {
        max_overlap,
        near_threshold: near,
    })
}
