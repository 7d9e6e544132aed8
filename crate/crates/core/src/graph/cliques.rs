use fixedbitset::FixedBitSet;

use super::{Graph, SearchBudget};
use crate::error::{Error, Result};

/// All maximal cliques (Bron-Kerbosch with Tomita pivoting). Each clique is
/// sorted; the list is sorted lexicographically. Isolated vertices appear
/// as singletons.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, p, x, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<usize>>) {
    if p.is_clear() {
        if x.is_clear() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| (p.intersection(g.neighbor_set(u)).count(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.difference(g.neighbor_set(pivot)).collect();
    for v in candidates {
        let nv = g.neighbor_set(v);
        let mut p2 = p.clone();
        p2.intersect_with(nv);
        let mut x2 = x.clone();
        x2.intersect_with(nv);
        r.push(v);
        bron_kerbosch(g, r, p2, x2, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

fn check_size(g: &Graph, budget: &SearchBudget, search: &'static str) -> Result<()> {
    let limit = budget.exact_vertex_limit.min(64);
    if g.n() > limit {
        return Err(Error::budget(search, format!("{} vertices exceed exact bound {limit}", g.n())));
    }
    Ok(())
}

/// A maximum clique, found by branch and bound with a greedy colouring bound.
pub fn maximum_clique(g: &Graph, budget: &SearchBudget) -> Result<Vec<usize>> {
    check_size(g, budget, "maximum clique")?;
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = g.masks();
    let mut state = CliqueSearch {
        adj: &adj,
        best: 0,
        best_len: 0,
        nodes: 0,
        node_limit: budget.node_limit,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    state.expand(0, 0, all)?;
    Ok((0..n).filter(|&v| state.best >> v & 1 == 1).collect())
}

struct CliqueSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_len: u32,
    nodes: u64,
    node_limit: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: u64, len: u32, mut cand: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::budget("maximum clique", format!("more than {} search nodes", self.node_limit)));
        }
        if cand == 0 {
            if len > self.best_len {
                self.best_len = len;
                self.best = current;
            }
            return Ok(());
        }
        // greedy colouring of the candidates gives an upper bound per vertex
        let (order, colors) = self.color_sort(cand);
        for idx in (0..order.len()).rev() {
            if len + colors[idx] <= self.best_len {
                return Ok(());
            }
            let v = order[idx];
            self.expand(current | 1 << v, len + 1, cand & self.adj[v])?;
            cand &= !(1u64 << v);
        }
        Ok(())
    }

    fn color_sort(&self, cand: u64) -> (Vec<usize>, Vec<u32>) {
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut avail = uncolored;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1u64 << v);
                avail &= !self.adj[v];
                uncolored &= !(1u64 << v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }
}

pub fn clique_number(g: &Graph, budget: &SearchBudget) -> Result<usize> {
    Ok(maximum_clique(g, budget)?.len())
}

/// Independence number with a maximum independent set as witness.
pub fn alpha(g: &Graph, budget: &SearchBudget) -> Result<(usize, Vec<usize>)> {
    let set = maximum_clique(&g.complement(), budget)?;
    Ok((set.len(), set))
}
