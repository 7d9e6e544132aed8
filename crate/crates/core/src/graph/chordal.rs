use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Vertex order; a perfect elimination ordering when every vertex's later
/// neighbours form a clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrdering {
    pub order: Vec<usize>,
}

impl EliminationOrdering {
    pub fn new(order: Vec<usize>) -> Self {
        EliminationOrdering { order }
    }

    /// `position[v]` is the index of `v` in the order.
    pub fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Neighbours of `v` that come after it, sorted by vertex index.
    pub fn later_neighbors(&self, g: &Graph, v: usize) -> Vec<usize> {
        let pos = self.positions(g.n());
        g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect()
    }

    /// Checks the perfect elimination property. On failure returns the
    /// first vertex whose later neighbourhood is not a clique.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), usize> {
        let n = g.n();
        let mut seen = vec![false; n];
        if self.order.len() != n || self.order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(self.order.first().copied().unwrap_or(0));
        }
        let pos = self.positions(n);
        for &v in &self.order {
            let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
            if !g.is_clique(&later) {
                return Err(v);
            }
        }
        Ok(())
    }
}

/// Outcome of a chordality test, carrying a checkable witness either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrdering),
    /// An induced cycle of length at least four, listed in cyclic order.
    NotChordal { cycle: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }

    pub fn ordering(&self) -> Option<&EliminationOrdering> {
        match self {
            Chordality::Chordal(o) => Some(o),
            Chordality::NotChordal { .. } => None,
        }
    }
}

/// Lexicographic breadth-first search; returns the visit order.
/// Ties are broken toward the smallest vertex index.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    lex_bfs_from(g, 0)
}

/// Lex-BFS whose first visited vertex is `start` (when `start < n`).
pub fn lex_bfs_from(g: &Graph, start: usize) -> Vec<usize> {
    let n = g.n();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let pick = if step == 0 && start < n {
            start
        } else {
            let mut best: Option<usize> = None;
            for v in (0..n).filter(|&v| !visited[v]) {
                match best {
                    None => best = Some(v),
                    Some(b) if labels[v] > labels[b] => best = Some(v),
                    _ => {}
                }
            }
            best.expect("unvisited vertex remains")
        };
        visited[pick] = true;
        order.push(pick);
        // labels hold decreasing step numbers, so lexicographic comparison ranks earlier numbering higher
        let stamp = n - step;
        for u in g.neighbors(pick) {
            if !visited[u] {
                labels[u].push(stamp);
            }
        }
    }
    order
}

/// Decides chordality: the reversed Lex-BFS order is verified as a perfect
/// elimination ordering, and a chordless cycle is extracted otherwise.
pub fn is_chordal(g: &Graph) -> Chordality {
    let mut order = lex_bfs(g);
    order.reverse();
    let peo = EliminationOrdering::new(order);
    match peo.verify(g) {
        Ok(()) => Chordality::Chordal(peo),
        Err(v) => {
            let later = peo.later_neighbors(g, v);
            let hint = first_nonadjacent_pair(g, &later).map(|(a, b)| (v, a, b));
            let cycle = hint
                .and_then(|(v, a, b)| cycle_through(g, v, a, b))
                .or_else(|| find_chordless_cycle(g, false))
                .expect("a graph without a perfect elimination ordering has a chordless cycle");
            Chordality::NotChordal { cycle }
        }
    }
}

fn first_nonadjacent_pair(g: &Graph, vs: &[usize]) -> Option<(usize, usize)> {
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if !g.has_edge(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Chordless cycle `v, a, ..., b` where `a`, `b` are non-adjacent neighbours
/// of `v`: a shortest `a`-`b` path avoiding `v` and its other neighbours.
fn cycle_through(g: &Graph, v: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for u in g.neighbors(v) {
        if u != a && u != b {
            blocked[u] = true;
        }
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([a]);
    prev[a] = a;
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for y in g.neighbors(x) {
            if !blocked[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if prev[b] == usize::MAX {
        return None;
    }
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

/// Searches for a chordless cycle of length >= 4. With `shortest`, every
/// candidate triple is tried and a shortest witness is returned.
pub fn find_chordless_cycle(g: &Graph, shortest: bool) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                if let Some(c) = cycle_through(g, v, a, b) {
                    if !shortest {
                        return Some(c);
                    }
                    if best.as_ref().is_none_or(|bc| c.len() < bc.len()) {
                        if c.len() == 4 {
                            return Some(c);
                        }
                        best = Some(c);
                    }
                }
            }
        }
    }
    best
}

/// Vertices whose neighbourhood is a clique.
pub fn simplicial_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| {
            let nb: Vec<usize> = g.neighbors(v).collect();
            g.is_clique(&nb)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::bennett_graph;

    fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
        let k = cycle.len();
        if k < 4 {
            return false;
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if g.has_edge(cycle[i], cycle[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn complete_graphs_are_chordal() {
        for n in 0..7 {
            let g = Graph::complete(n);
            let res = is_chordal(&g);
            assert!(res.ordering().unwrap().verify(&g).is_ok());
        }
    }

    #[test]
    fn c4_is_not_chordal() {
        let g = Graph::cycle(4);
        match is_chordal(&g) {
            Chordality::NotChordal { cycle } => {
                assert_eq!(cycle.len(), 4);
                assert!(is_induced_cycle(&g, &cycle));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn bennett_graph_has_chordless_four_cycle() {
        let g = bennett_graph();
        match is_chordal(&g) {
            Chordality::NotChordal { cycle } => assert!(is_induced_cycle(&g, &cycle)),
            other => panic!("expected witness, got {other:?}"),
        }
        // the cycle 2-9-7-8 (1-based) is induced
        assert!(is_induced_cycle(&g, &[1, 8, 6, 7]));
    }

    #[test]
    fn simplicial_examples() {
        assert_eq!(simplicial_vertices(&Graph::path(3)), vec![0, 2]);
        for n in 4..9 {
            assert!(simplicial_vertices(&Graph::cycle(n)).is_empty());
        }
        assert!(simplicial_vertices(&bennett_graph()).is_empty());
    }

    #[test]
    fn lex_bfs_start_is_respected() {
        let g = Graph::path(5);
        assert_eq!(lex_bfs_from(&g, 2)[0], 2);
        let mut o = lex_bfs_from(&g, 2);
        o.reverse();
        assert!(EliminationOrdering::new(o).verify(&g).is_ok());
    }

    #[test]
    fn verify_rejects_non_permutations() {
        let g = Graph::path(3);
        assert!(EliminationOrdering::new(vec![0, 0, 1]).verify(&g).is_err());
        assert!(EliminationOrdering::new(vec![0, 1]).verify(&g).is_err());
        assert_eq!(EliminationOrdering::new(vec![1, 0, 2]).verify(&g), Err(1));
    }
}
