//! Random instance builders shared by the integration suites.
#![allow(dead_code)]

use chordal_locc::graph::Graph;
use chordal_locc::linalg::{ComplexVector, HermitianMatrix, Tolerance, C64};
use chordal_locc::states::{ProductStateSet, RawProduct};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Chordal graph grown one vertex at a time, each new vertex joined to a
/// random subset of an existing maximal clique. Vertices are then shuffled.
pub fn random_chordal_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        let anchor = rng.random_range(0..v);
        let mut clique = vec![anchor];
        for u in 0..v {
            if u != anchor && clique.iter().all(|&w| g.has_edge(u, w)) && rng.random_bool(0.6) {
                clique.push(u);
            }
        }
        if rng.random_bool(0.15) {
            continue;
        }
        clique.retain(|_| rng.random_bool(0.8));
        for u in clique {
            g.add_edge(u, v);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    g.permuted(&perm)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_vector<R: Rng>(dim: usize, rng: &mut R) -> DVector<C64> {
    DVector::from_fn(dim, |_, _| random_complex(rng))
}

/// Sum over the maximal cliques of a few random rank-one terms supported
/// on each clique; lies in `S_G` and is PSD by construction.
pub fn random_conforming_psd<R: Rng>(g: &Graph, rng: &mut R) -> HermitianMatrix {
    let n = g.n();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for clique in chordal_locc::graph::maximal_cliques(g) {
        for _ in 0..rng.random_range(1..=2) {
            let mut v = DVector::<C64>::zeros(n);
            for &i in &clique {
                v[i] = random_complex(rng);
            }
            m += &v * v.adjoint();
        }
    }
    HermitianMatrix::new(m).expect("hermitian by construction")
}

fn project_out(v: &mut DVector<C64>, against: &[DVector<C64>]) {
    let mut basis: Vec<DVector<C64>> = Vec::new();
    for a in against {
        let mut w = a.clone();
        for b in &basis {
            let z = b.dotc(&w);
            w -= b * z;
        }
        let norm = w.norm();
        if norm > 1e-10 {
            basis.push(w / C64::new(norm, 0.0));
        }
    }
    for _ in 0..2 {
        for b in &basis {
            let z = b.dotc(v);
            *v -= b * z;
        }
    }
}

/// Vectors in `C^dim` with `v_i ⊥ v_j` whenever `orthogonal(i, j)`, built by
/// sequential projection; `None` if some vector collapses.
pub fn sequential_representation<R: Rng>(n: usize, dim: usize, orthogonal: impl Fn(usize, usize) -> bool, rng: &mut R) -> Option<Vec<ComplexVector>> {
    let mut out: Vec<DVector<C64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = random_vector(dim, rng);
        let earlier: Vec<DVector<C64>> = (0..i).filter(|&j| orthogonal(i, j)).map(|j| out[j].clone()).collect();
        project_out(&mut v, &earlier);
        if v.norm() < 1e-6 {
            return None;
        }
        out.push(v);
    }
    Some(out.into_iter().map(ComplexVector::from_dvector).collect())
}

/// Product states with `G_A <= g <= complement(G_B)`: Alice parts are
/// orthogonal across non-edges of `g`, Bob parts across edges.
pub fn sandwich_instance<R: Rng>(g: &Graph, d_a: usize, d_b: usize, rng: &mut R) -> Option<ProductStateSet> {
    let n = g.n();
    let alice = sequential_representation(n, d_a, |i, j| !g.has_edge(i, j), rng)?;
    let bob = sequential_representation(n, d_b, |i, j| g.has_edge(i, j), rng)?;
    let raw: Vec<RawProduct> = alice
        .into_iter()
        .zip(bob)
        .enumerate()
        .map(|(k, (a, b))| RawProduct::new((k + 1).to_string(), a, b))
        .collect();
    ProductStateSet::ingest(raw, &Tolerance::default()).ok()
}

/// Instance whose Bob complement is the union of two random cliques covering V.
pub fn two_clique_instance<R: Rng>(n: usize, rng: &mut R) -> Option<(ProductStateSet, Vec<Vec<usize>>)> {
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    for v in 0..n {
        match rng.random_range(0..3) {
            0 => v1.push(v),
            1 => v2.push(v),
            _ => {
                v1.push(v);
                v2.push(v);
            }
        }
    }
    let cliques: Vec<Vec<usize>> = [v1, v2].into_iter().filter(|c| !c.is_empty()).collect();
    let g = Graph::from_cliques(n, &cliques);
    let set = sandwich_instance(&g, n, n, rng)?;
    Some((set, cliques))
}
