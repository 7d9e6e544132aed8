use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{maximal_cliques, Graph, SearchBudget};
use crate::error::{Error, Result};

/// Cliques covering every vertex and every edge of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Checks that each set is a clique of `g` and that all vertices and
    /// edges are covered.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut seen = vec![false; n];
        for c in &self.cliques {
            if let Some(&v) = c.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidCover(format!("vertex {v} out of range")));
            }
            if !g.is_clique(c) {
                return Err(Error::InvalidCover(format!("{c:?} is not a clique")));
            }
            for &v in c {
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidCover(format!("vertex {v} is not covered")));
        }
        for (u, v) in g.edges() {
            if !self.cliques.iter().any(|c| c.contains(&u) && c.contains(&v)) {
                return Err(Error::InvalidCover(format!("edge ({u}, {v}) is not covered")));
            }
        }
        Ok(())
    }
}

/// Cover elements: every edge, plus each isolated vertex.
struct CoverProblem {
    universe: usize,
    cliques: Vec<Vec<usize>>,
    sets: Vec<FixedBitSet>,
    /// For each element, the indices of the cliques covering it.
    covering: Vec<Vec<usize>>,
}

impl CoverProblem {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let edges = g.edges();
        let isolated: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 0).collect();
        let universe = edges.len() + isolated.len();
        let cliques = maximal_cliques(g);
        let mut sets = Vec::with_capacity(cliques.len());
        for c in &cliques {
            let mut s = FixedBitSet::with_capacity(universe);
            for (e, &(u, v)) in edges.iter().enumerate() {
                if c.contains(&u) && c.contains(&v) {
                    s.insert(e);
                }
            }
            for (k, v) in isolated.iter().enumerate() {
                if c.contains(v) {
                    s.insert(edges.len() + k);
                }
            }
            sets.push(s);
        }
        let mut covering = vec![Vec::new(); universe];
        for (i, s) in sets.iter().enumerate() {
            for e in s.ones() {
                covering[e].push(i);
            }
        }
        CoverProblem {
            universe,
            cliques,
            sets,
            covering,
        }
    }

    fn greedy(&self) -> Vec<usize> {
        let mut covered = FixedBitSet::with_capacity(self.universe);
        let mut chosen = Vec::new();
        while covered.count_ones(..) < self.universe {
            let best = (0..self.sets.len())
                .max_by_key(|&i| (self.sets[i].difference(&covered).count(), std::cmp::Reverse(i)))
                .expect("every element lies in a maximal clique");
            covered.union_with(&self.sets[best]);
            chosen.push(best);
        }
        chosen
    }

    /// Depth-bounded exact search; `nodes` is shared across calls.
    fn search(&self, k: usize, nodes: &mut u64, node_limit: u64) -> Result<Option<Vec<usize>>> {
        let max_set = self.sets.iter().map(|s| s.count_ones(..)).max().unwrap_or(0);
        let mut chosen = Vec::new();
        let covered = FixedBitSet::with_capacity(self.universe);
        let found = self.branch(&covered, k, max_set, &mut chosen, nodes, node_limit)?;
        Ok(found.then_some(chosen))
    }

    fn branch(
        &self,
        covered: &FixedBitSet,
        depth: usize,
        max_set: usize,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        node_limit: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > node_limit {
            return Err(Error::budget("edge clique cover", format!("more than {node_limit} search nodes")));
        }
        let remaining = self.universe - covered.count_ones(..);
        if remaining == 0 {
            return Ok(true);
        }
        if depth == 0 || depth * max_set < remaining {
            return Ok(false);
        }
        // branch on the uncovered element with the fewest covering cliques
        let element = (0..self.universe)
            .filter(|&e| !covered.contains(e))
            .min_by_key(|&e| self.covering[e].len())
            .expect("remaining > 0");
        for &i in &self.covering[element] {
            let mut next = covered.clone();
            next.union_with(&self.sets[i]);
            chosen.push(i);
            if self.branch(&next, depth - 1, max_set, chosen, nodes, node_limit)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    fn cover(&self, idx: &[usize]) -> CliqueCover {
        let mut cliques: Vec<Vec<usize>> = idx.iter().map(|&i| self.cliques[i].clone()).collect();
        cliques.sort();
        CliqueCover { cliques }
    }
}

/// Greedy cover by maximal cliques; an upper bound on the cover number.
pub fn greedy_edge_clique_cover(g: &Graph) -> CliqueCover {
    let p = CoverProblem::new(g);
    p.cover(&p.greedy())
}

/// Minimum number of cliques covering all vertices and edges, with witness.
/// Above `cover_vertex_limit` the greedy cover is returned when
/// `heuristic_cover` is set.
pub fn edge_clique_cover_number(g: &Graph, budget: &SearchBudget) -> Result<(usize, CliqueCover)> {
    if g.n() == 0 {
        return Ok((0, CliqueCover { cliques: Vec::new() }));
    }
    if g.n() > budget.cover_vertex_limit {
        if budget.heuristic_cover {
            let c = greedy_edge_clique_cover(g);
            return Ok((c.len(), c));
        }
        return Err(Error::budget(
            "edge clique cover",
            format!("{} vertices exceed exact bound {}", g.n(), budget.cover_vertex_limit),
        ));
    }
    let p = CoverProblem::new(g);
    let greedy = p.greedy();
    let mut nodes = 0;
    for k in 1..greedy.len() {
        if let Some(idx) = p.search(k, &mut nodes, budget.node_limit)? {
            return Ok((k, p.cover(&idx)));
        }
    }
    Ok((greedy.len(), p.cover(&greedy)))
}

/// A cover with at most `k` cliques, if one exists. No vertex limit applies;
/// intended for small `k`.
pub fn clique_cover_at_most(g: &Graph, k: usize, budget: &SearchBudget) -> Result<Option<CliqueCover>> {
    if g.n() == 0 {
        return Ok(Some(CliqueCover { cliques: Vec::new() }));
    }
    let p = CoverProblem::new(g);
    let mut nodes = 0;
    Ok(p.search(k, &mut nodes, budget.node_limit)?.map(|idx| p.cover(&idx)))
}
