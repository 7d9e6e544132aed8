use super::{is_chordal, maximal_cliques, Chordality, CliqueCover, Graph, SearchBudget};
use crate::error::{Error, Result};

fn check_bounds(lo: &Graph, hi: &Graph) -> Result<()> {
    if lo.n() != hi.n() {
        return Err(Error::InvalidSandwich(format!(
            "vertex counts differ ({} vs {})",
            lo.n(),
            hi.n()
        )));
    }
    if let Some((u, v)) = lo.edges().into_iter().find(|&(u, v)| !hi.has_edge(u, v)) {
        return Err(Error::InvalidSandwich(format!("lower edge ({u}, {v}) missing from upper graph")));
    }
    Ok(())
}

/// A chordal graph `g` with `lo <= g <= hi`, if one exists.
///
/// Branches on the chords of a chordless cycle of the current graph: every
/// chordal supergraph must contain one of them. Chords already tried in a
/// sibling branch are forbidden in later siblings.
pub fn chordal_sandwich(lo: &Graph, hi: &Graph, budget: &SearchBudget) -> Result<Option<Graph>> {
    check_bounds(lo, hi)?;
    if is_chordal(lo).is_chordal() {
        return Ok(Some(lo.clone()));
    }
    if is_chordal(hi).is_chordal() {
        return Ok(Some(hi.clone()));
    }
    let free = hi.edge_count() - lo.edge_count();
    if free > budget.sandwich_free_edges {
        return Err(Error::budget(
            "chordal sandwich",
            format!("{free} free edges exceed bound {}", budget.sandwich_free_edges),
        ));
    }
    let mut search = SandwichSearch {
        hi,
        forbidden: Graph::empty(lo.n()),
        nodes: 0,
        node_limit: budget.node_limit,
    };
    search.branch(lo.clone())
}

struct SandwichSearch<'a> {
    hi: &'a Graph,
    forbidden: Graph,
    nodes: u64,
    node_limit: u64,
}

impl SandwichSearch<'_> {
    fn branch(&mut self, g: Graph) -> Result<Option<Graph>> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::budget("chordal sandwich", format!("more than {} search nodes", self.node_limit)));
        }
        let cycle = match is_chordal(&g) {
            Chordality::Chordal(_) => return Ok(Some(g)),
            Chordality::NotChordal { cycle } => cycle,
        };
        let k = cycle.len();
        let mut chords = Vec::new();
        for i in 0..k {
            for j in (i + 2)..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (u, v) = (cycle[i].min(cycle[j]), cycle[i].max(cycle[j]));
                if self.hi.has_edge(u, v) && !self.forbidden.has_edge(u, v) {
                    chords.push((u, v));
                }
            }
        }
        chords.sort_unstable();
        let mut added = Vec::new();
        let mut result = None;
        for &(u, v) in &chords {
            let mut next = g.clone();
            next.add_edge(u, v);
            if let Some(found) = self.branch(next)? {
                result = Some(found);
                break;
            }
            self.forbidden.add_edge(u, v);
            added.push((u, v));
        }
        for (u, v) in added {
            self.forbidden.remove_edge(u, v);
        }
        Ok(result)
    }
}

/// A graph `g` with `lo <= g <= hi` whose edge clique cover number is at
/// most two, returned with its cover.
///
/// Cover cliques can be taken maximal in `hi`, so pairs of maximal cliques
/// of `hi` are enumerated.
pub fn cc2_sandwich(lo: &Graph, hi: &Graph) -> Result<Option<(Graph, CliqueCover)>> {
    check_bounds(lo, hi)?;
    let n = lo.n();
    if n == 0 {
        return Ok(Some((Graph::empty(0), CliqueCover { cliques: Vec::new() })));
    }
    let cliques = maximal_cliques(hi);
    let lo_edges = lo.edges();
    for i in 0..cliques.len() {
        for j in i..cliques.len() {
            let (a, b) = (&cliques[i], &cliques[j]);
            let mut seen = vec![false; n];
            for &v in a.iter().chain(b) {
                seen[v] = true;
            }
            if seen.iter().any(|s| !s) {
                continue;
            }
            let inside = |u: usize, v: usize| (a.contains(&u) && a.contains(&v)) || (b.contains(&u) && b.contains(&v));
            if lo_edges.iter().all(|&(u, v)| inside(u, v)) {
                let cover = if i == j {
                    vec![a.clone()]
                } else {
                    vec![a.clone(), b.clone()]
                };
                let g = Graph::from_cliques(n, &cover);
                return Ok(Some((g, CliqueCover { cliques: cover })));
            }
        }
    }
    Ok(None)
}
