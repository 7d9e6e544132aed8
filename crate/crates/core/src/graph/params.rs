use serde::{Deserialize, Serialize};

use super::{alpha, chromatic_number, edge_clique_cover_number, CliqueCover, Coloring, Graph};
use crate::error::Result;

/// Limits for the exact combinatorial searches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest vertex count for exact α / χ / clique search.
    pub exact_vertex_limit: usize,
    /// Largest vertex count for the exact edge clique cover search.
    pub cover_vertex_limit: usize,
    /// Fall back to the greedy cover above `cover_vertex_limit`.
    pub heuristic_cover: bool,
    /// Largest number of free edges in a chordal sandwich search.
    pub sandwich_free_edges: usize,
    /// Node cap for each branch-and-bound search.
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exact_vertex_limit: 64,
            cover_vertex_limit: 12,
            heuristic_cover: false,
            sandwich_free_edges: 25,
            node_limit: 50_000_000,
        }
    }
}

/// Lower and upper bounds on the minimum rank over PSD matrices with the
/// zero pattern of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaPlusBounds {
    pub lower: usize,
    pub upper: usize,
    pub certified: bool,
    pub independent_set: Vec<usize>,
    pub complement_coloring: Coloring,
}

impl EtaPlusBounds {
    pub fn exact(&self) -> Option<usize> {
        self.certified.then_some(self.lower)
    }
}

/// α(G) ≤ η₊(G) ≤ χ(complement G).
pub fn eta_plus_bounds(g: &Graph, budget: &SearchBudget) -> Result<EtaPlusBounds> {
    let (lower, independent_set) = alpha(g, budget)?;
    let (upper, complement_coloring) = chromatic_number(&g.complement(), budget)?;
    Ok(EtaPlusBounds {
        lower,
        upper,
        certified: lower == upper,
        independent_set,
        complement_coloring,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphParameters {
    pub alpha: usize,
    pub alpha_witness: Vec<usize>,
    pub chi: usize,
    pub coloring: Coloring,
    pub cc_edge: usize,
    pub cover: CliqueCover,
    pub eta_plus_lower: usize,
    pub eta_plus_upper: usize,
}

/// Exact α, χ, edge clique cover number and η₊ bounds of `g`.
pub fn graph_parameters(g: &Graph, budget: &SearchBudget) -> Result<GraphParameters> {
    let eta = eta_plus_bounds(g, budget)?;
    let (chi, coloring) = chromatic_number(g, budget)?;
    let (cc_edge, cover) = edge_clique_cover_number(g, budget)?;
    Ok(GraphParameters {
        alpha: eta.lower,
        alpha_witness: eta.independent_set,
        chi,
        coloring,
        cc_edge,
        cover,
        eta_plus_lower: eta.lower,
        eta_plus_upper: eta.upper,
    })
}
