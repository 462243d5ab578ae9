//! Seedable random instance families.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{MultiGraph, VertexId};

/// Erdős–Rényi graph on `0..n`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(u), VertexId(v)).expect("in range");
            }
        }
    }
    g
}

/// `gnp` plus, per edge, extra parallel copies with probability `p_multi`
/// each, and self-loops with probability `p_loop` per vertex.
pub fn random_multigraph<R: Rng>(n: usize, p: f64, p_multi: f64, p_loop: f64, rng: &mut R) -> MultiGraph {
    let mut g = gnp(n, p, rng);
    let edges: Vec<_> = g.edges().collect();
    for (u, v, _) in edges {
        while rng.gen_bool(p_multi) {
            g.add_edge(u, v).expect("present");
        }
    }
    for v in 0..n as u32 {
        if rng.gen_bool(p_loop) {
            g.add_edge(VertexId(v), VertexId(v)).expect("present");
        }
    }
    g
}

/// Uniformly random labelled tree on the given vertices (random attachment).
pub fn random_tree<R: Rng>(g: &mut MultiGraph, vertices: &[VertexId], rng: &mut R) {
    for i in 1..vertices.len() {
        let parent = vertices[rng.gen_range(0..i)];
        g.add_edge(parent, vertices[i]).expect("present");
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlantedParams {
    pub cliques: usize,
    pub trees: usize,
    pub noise: usize,
    pub min_clique: usize,
    pub max_clique: usize,
    pub max_tree: usize,
    /// Probability that a noise vertex is joined to a given other vertex.
    pub noise_density: f64,
}

impl PlantedParams {
    pub fn new(cliques: usize, trees: usize, noise: usize) -> Self {
        Self {
            cliques,
            trees,
            noise,
            min_clique: 3,
            max_clique: 6,
            max_tree: 8,
            noise_density: 0.3,
        }
    }
}

/// Disjoint random cliques and trees plus `noise` extra vertices with random
/// edges; the noise vertices form a solution. Returns the graph and the noise
/// vertices.
pub fn planted<R: Rng>(params: &PlantedParams, rng: &mut R) -> (MultiGraph, Vec<VertexId>) {
    let mut g = MultiGraph::new();
    for _ in 0..params.cliques {
        let size = rng.gen_range(params.min_clique..=params.max_clique);
        let vs: Vec<_> = (0..size).map(|_| g.add_vertex()).collect();
        for i in 0..size {
            for j in i + 1..size {
                g.add_edge(vs[i], vs[j]).expect("present");
            }
        }
    }
    for _ in 0..params.trees {
        let size = rng.gen_range(1..=params.max_tree);
        let mut vs: Vec<_> = (0..size).map(|_| g.add_vertex()).collect();
        vs.shuffle(rng);
        random_tree(&mut g, &vs, rng);
    }
    let base: Vec<VertexId> = g.vertices().collect();
    let noise: Vec<VertexId> = (0..params.noise).map(|_| g.add_vertex()).collect();
    for (i, &x) in noise.iter().enumerate() {
        for &u in base.iter().chain(&noise[..i]) {
            if rng.gen_bool(params.noise_density) {
                g.add_edge(x, u).expect("present");
            }
        }
    }
    (g, noise)
}
