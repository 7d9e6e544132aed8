//! Simple undirected graphs on vertices `0..n` and the exact combinatorial
//! parameters the distinguishability criteria consume.
//!
//! Vertices are 0-based in the Rust API. The JSON form (`{"n", "edges"}`)
//! and DOT export use 1-based labels.

mod chordal;
mod cliques;
mod coloring;
mod cover;
mod iso;
mod params;
mod sandwich;

pub use chordal::{
    find_chordless_cycle, is_chordal, lex_bfs, lex_bfs_from, simplicial_vertices, Chordality,
    EliminationOrdering,
};
pub use cliques::{alpha, clique_number, maximal_cliques, maximum_clique};
pub use coloring::{chromatic_number, is_proper_coloring, Coloring};
pub use cover::{clique_cover_at_most, edge_clique_cover_number, greedy_edge_clique_cover, CliqueCover};
pub use iso::find_isomorphism;
pub use params::{eta_plus_bounds, graph_parameters, EtaPlusBounds, GraphParameters, SearchBudget};
pub use sandwich::{cc2_sandwich, chordal_sandwich};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Simple graph stored as adjacency bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Builds a graph from 0-based pairs; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from 1-based pairs as written in the JSON schema.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 {
                return Err(Error::Parse("vertex labels are 1-based".into()));
            }
            zero.push((u - 1, v - 1));
        }
        Graph::from_edges(n, &zero)
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// Graph on `n` vertices given by `bits` over the lexicographic pair list.
    pub fn from_pair_mask(n: usize, bits: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if bits >> k & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.adj[i].ones() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Induced subgraph, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// `self <= other` on the shared vertex set.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.adj[v].is_subset(&other.adj[v]))
    }

    pub fn union(&self, other: &Graph) -> Graph {
        assert_eq!(self.n, other.n);
        let mut g = self.clone();
        for v in 0..self.n {
            g.adj[v].union_with(&other.adj[v]);
        }
        g
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Graph whose edges are all pairs inside some listed vertex set.
    pub fn from_cliques(n: usize, cliques: &[Vec<usize>]) -> Graph {
        let mut g = Graph::empty(n);
        for c in cliques {
            for (a, &u) in c.iter().enumerate() {
                for &v in &c[a + 1..] {
                    if u != v {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        g
    }

    /// Adjacency rows as `u64` masks; callers check `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.adj
            .iter()
            .map(|row| row.ones().fold(0u64, |m, j| m | (1u64 << j)))
            .collect()
    }

    /// DOT description with 1-based vertex labels.
    pub fn to_dot(&self, name: &str, labels: Option<&[String]>) -> String {
        let mut s = format!("graph {} {{\n", dot_id(name));
        for v in 0..self.n {
            let label = labels
                .and_then(|l| l.get(v).cloned())
                .unwrap_or_else(|| (v + 1).to_string());
            s.push_str(&format!("  {} [label=\"{}\"];\n", v + 1, label.replace('"', "\\\"")));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {} -- {};\n", u + 1, v + 1));
        }
        s.push_str("}\n");
        s
    }
}

fn dot_id(name: &str) -> String {
    let ok = !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.starts_with(|c: char| c.is_ascii_digit());
    if ok {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', "\\\""))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let pairs: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_one_based(raw.n, &pairs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn c4_example() -> Graph {
        // edges {12, 13, 24, 34} in 1-based labels
        Graph::from_one_based(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        assert_eq!(Graph::complete(4).complement().edge_count(), 0);
    }

    #[test]
    fn complement_of_c4_is_matching() {
        let c = c4_example().complement();
        assert_eq!(c.edges(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn complement_of_c5_is_isomorphic() {
        let c5 = Graph::cycle(5);
        let map = find_isomorphism(&c5, &c5.complement()).expect("pentagon is self-complementary");
        assert_eq!(c5.permuted(&map), c5.complement());
    }

    #[test]
    fn json_uses_one_based_labels() {
        let g = c4_example();
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(js, r#"{"n":4,"edges":[[1,2],[1,3],[2,4],[3,4]]}"#);
        let back: Graph = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,1]]}"#).is_err());
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn dot_export_lists_edges() {
        let dot = Graph::path(3).to_dot("P3", None);
        assert!(dot.starts_with("graph P3 {"));
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.contains("2 -- 3;"));
    }

    #[test]
    fn subgraph_relation() {
        let p = Graph::path(4);
        let k = Graph::complete(4);
        assert!(p.is_subgraph_of(&k));
        assert!(!k.is_subgraph_of(&p));
        assert!(!p.is_subgraph_of(&Graph::complete(5)));
    }
}
