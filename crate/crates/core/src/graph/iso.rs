use std::collections::BTreeMap;

use super::Graph;

/// Stable colouring by iterated neighbourhood refinement, starting from degrees.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut table = BTreeMap::new();
        for s in &signatures {
            let next = table.len();
            table.entry(s.clone()).or_insert(next);
        }
        let next: Vec<usize> = signatures.iter().map(|s| table[s]).collect();
        let classes = table.len();
        let old_classes = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colors = next;
        if classes == old_classes {
            return colors;
        }
    }
}

/// A vertex map `m` with `g.permuted(&m) == h`, if the graphs are isomorphic.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    // refine both graphs jointly so colour ids are comparable
    let joint = disjoint_union(g, h);
    let colors = refine(&joint);
    let (cg, ch) = colors.split_at(n);
    let mut hist_g = cg.to_vec();
    let mut hist_h = ch.to_vec();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    // vertices in rare colour classes first
    let class_size = |c: usize| cg.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&v| (class_size(cg[v]), v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, cg, ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let n = g.n();
    let mut u = Graph::empty(2 * n);
    for (a, b) in g.edges() {
        u.add_edge(a, b);
    }
    for (a, b) in h.edges() {
        u.add_edge(n + a, n + b);
    }
    u
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..h.n() {
        if used[w] || ch[w] != cg[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
