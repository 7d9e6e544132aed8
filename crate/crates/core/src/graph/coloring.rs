use serde::{Deserialize, Serialize};

use super::{maximum_clique, Graph, SearchBudget};
use crate::error::{Error, Result};

/// Colour classes `0..num_colors` per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.n() && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

/// Exact chromatic number by DSATUR branch and bound, seeded with the
/// clique number as lower bound.
pub fn chromatic_number(g: &Graph, budget: &SearchBudget) -> Result<(usize, Coloring)> {
    let n = g.n();
    if n == 0 {
        return Ok((0, Coloring { colors: Vec::new(), num_colors: 0 }));
    }
    let clique = maximum_clique(g, budget)?;
    let adj = g.masks();

    let greedy = dsatur_greedy(&adj, n);
    let greedy_count = greedy.iter().max().map_or(0, |&c| c + 1);
    let mut search = ColorSearch {
        adj: &adj,
        n,
        best: greedy,
        best_count: greedy_count,
        lower: clique.len(),
        nodes: 0,
        node_limit: budget.node_limit,
    };
    if search.best_count > search.lower {
        let mut colors = vec![usize::MAX; n];
        // pin the clique to distinct colours to break symmetry
        for (c, &v) in clique.iter().enumerate() {
            colors[v] = c;
        }
        let colored = clique.len();
        search.branch(&mut colors, colored, clique.len())?;
    }
    let num_colors = search.best_count;
    Ok((num_colors, Coloring { colors: search.best, num_colors }))
}

fn dsatur_greedy(adj: &[u64], n: usize) -> Vec<usize> {
    let mut colors = vec![usize::MAX; n];
    for _ in 0..n {
        let v = pick_vertex(adj, &colors);
        let used = neighbor_colors(adj, &colors, v);
        colors[v] = (0..).find(|c| used >> c & 1 == 0).unwrap();
    }
    colors
}

fn neighbor_colors(adj: &[u64], colors: &[usize], v: usize) -> u64 {
    let mut used = 0u64;
    let mut nb = adj[v];
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if colors[u] != usize::MAX {
            used |= 1u64 << colors[u];
        }
    }
    used
}

/// Uncoloured vertex of maximum saturation, then maximum degree, then minimum index.
fn pick_vertex(adj: &[u64], colors: &[usize]) -> usize {
    let mut best = usize::MAX;
    let mut key = (0u32, 0u32);
    for v in 0..colors.len() {
        if colors[v] != usize::MAX {
            continue;
        }
        let k = (neighbor_colors(adj, colors, v).count_ones(), adj[v].count_ones());
        if best == usize::MAX || k > key {
            best = v;
            key = k;
        }
    }
    best
}

struct ColorSearch<'a> {
    adj: &'a [u64],
    n: usize,
    best: Vec<usize>,
    best_count: usize,
    lower: usize,
    nodes: u64,
    node_limit: u64,
}

impl ColorSearch<'_> {
    fn branch(&mut self, colors: &mut Vec<usize>, colored: usize, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::budget("chromatic number", format!("more than {} search nodes", self.node_limit)));
        }
        if used >= self.best_count {
            return Ok(());
        }
        if colored == self.n {
            self.best = colors.clone();
            self.best_count = used;
            return Ok(());
        }
        let v = pick_vertex(self.adj, colors);
        let forbidden = neighbor_colors(self.adj, colors, v);
        for c in 0..=used {
            if forbidden >> c & 1 == 1 {
                continue;
            }
            let next_used = used.max(c + 1);
            if next_used >= self.best_count {
                continue;
            }
            colors[v] = c;
            self.branch(colors, colored + 1, next_used)?;
            colors[v] = usize::MAX;
            if self.best_count == self.lower {
                return Ok(());
            }
        }
        Ok(())
    }
}
