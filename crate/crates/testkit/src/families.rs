//! Instance families aimed at individual reduction rules. Each case comes with
//! a modulator that leaves only cliques and trees, so a rule can be invoked on
//! it directly.

use ctvd_core::generate::{planted, random_multigraph, random_tree, PlantedParams};
use ctvd_core::kernel::rules::tree_expansion_threshold;
use ctvd_core::kernel::trace::RuleId;
use ctvd_core::solvers::approx_deletion_set;
use ctvd_core::{MultiGraph, VertexId, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Debug)]
pub struct RuleCase {
    pub graph: MultiGraph,
    pub k: i64,
    pub s: VertexSet,
}

impl RuleCase {
    fn new(graph: MultiGraph, k: i64, s: impl IntoIterator<Item = VertexId>) -> Self {
        Self { graph, k, s: s.into_iter().collect() }
    }
}

/// A random case on which `rule` is likely, but not certain, to fire.
pub fn case_for<R: Rng>(rule: RuleId, rng: &mut R) -> RuleCase {
    match rule {
        RuleId::Modulator => planted_case(PlantedParams::new(2, 2, 2), rng),
        RuleId::Multiplicity => multiplicity(rng),
        RuleId::IsolatedComponent => {
            let mut p = PlantedParams::new(rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=2));
            p.noise_density = 0.08;
            planted_case(p, rng)
        }
        RuleId::PendantDedup => pendant_dedup(rng),
        RuleId::Tail => hanging_paths(rng, false),
        RuleId::Overbridge => hanging_paths(rng, true),
        RuleId::CliqueExpansion => hubs_and_cliques(rng, 3..=5, false),
        RuleId::UnmarkedCliqueVertex => hubs_and_cliques(rng, 9..=14, true),
        RuleId::FarLeaf => far_leaf(rng),
        RuleId::PendantTree => pendant_trees(rng),
        RuleId::Flower => flower(rng),
        RuleId::TreeExpansion => tree_expansion(rng),
    }
}

fn planted_case<R: Rng>(p: PlantedParams, rng: &mut R) -> RuleCase {
    let (g, noise) = planted(&p, rng);
    let k = rng.gen_range(0..=noise.len() as i64 + 1);
    RuleCase::new(g, k, noise)
}

fn clique(g: &mut MultiGraph, size: usize) -> Vec<VertexId> {
    let vs: Vec<_> = (0..size).map(|_| g.add_vertex()).collect();
    for i in 0..size {
        for j in i + 1..size {
            g.add_edge(vs[i], vs[j]).expect("present");
        }
    }
    vs
}

fn tree<R: Rng>(g: &mut MultiGraph, size: usize, rng: &mut R) -> Vec<VertexId> {
    let vs: Vec<_> = (0..size).map(|_| g.add_vertex()).collect();
    random_tree(g, &vs, rng);
    vs
}

fn path(g: &mut MultiGraph, len: usize) -> Vec<VertexId> {
    let vs: Vec<_> = (0..len).map(|_| g.add_vertex()).collect();
    for w in vs.windows(2) {
        g.add_edge(w[0], w[1]).expect("present");
    }
    vs
}

/// Random edges among the hubs.
fn wire_hubs<R: Rng>(g: &mut MultiGraph, hubs: &[VertexId], p: f64, rng: &mut R) {
    for (i, &a) in hubs.iter().enumerate() {
        for &b in &hubs[i + 1..] {
            if rng.gen_bool(p) {
                g.add_edge(a, b).expect("present");
            }
        }
    }
}

fn multiplicity<R: Rng>(rng: &mut R) -> RuleCase {
    let n = rng.gen_range(3..=10);
    let mut g = random_multigraph(n, rng.gen_range(0.2..0.6), 0.5, 0.2, rng);
    let u = VertexId(rng.gen_range(0..n as u32));
    let v = VertexId(rng.gen_range(0..n as u32));
    for _ in 0..3 {
        g.add_edge(u, v).expect("present");
    }
    let s = approx_deletion_set(&g).s;
    let k = rng.gen_range(0..=s.len() as i64);
    RuleCase::new(g, k, s)
}

fn sparse_planted<R: Rng>(rng: &mut R) -> (MultiGraph, Vec<VertexId>, Vec<VertexId>) {
    let mut p = PlantedParams::new(rng.gen_range(0..=2), rng.gen_range(1..=3), rng.gen_range(1..=3));
    p.noise_density = rng.gen_range(0.1..0.3);
    let (g, noise) = planted(&p, rng);
    let trees: Vec<VertexId> = g
        .vertices()
        .filter(|&v| !noise.contains(&v) && !in_triangle(&g, v))
        .collect();
    (g, noise, trees)
}

fn in_triangle(g: &MultiGraph, v: VertexId) -> bool {
    let nb: Vec<_> = g.neighbor_ids(v).filter(|&u| u != v).collect();
    nb.iter().any(|&a| nb.iter().any(|&b| a < b && g.has_edge(a, b)))
}

fn pendant_dedup<R: Rng>(rng: &mut R) -> RuleCase {
    let (mut g, noise, trees) = sparse_planted(rng);
    let anchors: Vec<VertexId> = noise.iter().chain(&trees).copied().collect();
    let centre = *anchors.choose(rng).expect("noise is non-empty");
    for _ in 0..rng.gen_range(2..=4) {
        let leaf = g.add_vertex();
        g.add_edge(centre, leaf).expect("present");
    }
    let k = rng.gen_range(0..=noise.len() as i64);
    RuleCase::new(g, k, noise)
}

/// Paths hanging off (or, with `bridge`, strung between) modulator vertices.
fn hanging_paths<R: Rng>(rng: &mut R, bridge: bool) -> RuleCase {
    let (mut g, noise, trees) = sparse_planted(rng);
    for _ in 0..rng.gen_range(1..=2) {
        let p = path(&mut g, rng.gen_range(2..=6));
        let a = *noise.choose(rng).expect("noise");
        g.add_edge(a, p[0]).expect("present");
        if bridge {
            let b = if trees.is_empty() || rng.gen_bool(0.5) {
                *noise.choose(rng).expect("noise")
            } else {
                *trees.choose(rng).expect("tree vertex")
            };
            g.add_edge(b, *p.last().expect("path")).expect("present");
        }
    }
    let k = rng.gen_range(0..=noise.len() as i64);
    RuleCase::new(g, k, noise)
}

/// Hubs forming the modulator, each clique attached to at least one hub.
fn hubs_and_cliques<R: Rng>(rng: &mut R, sizes: std::ops::RangeInclusive<usize>, few: bool) -> RuleCase {
    let mut g = MultiGraph::new();
    let hubs: Vec<VertexId> = (0..rng.gen_range(1..=if few { 2 } else { 3 })).map(|_| g.add_vertex()).collect();
    wire_hubs(&mut g, &hubs, 0.4, rng);
    let cliques = if few {
        rng.gen_range(1..=2)
    } else {
        rng.gen_range(2 * hubs.len()..=3 * hubs.len() + 2)
    };
    for _ in 0..cliques {
        let size = rng.gen_range(sizes.clone());
        let vs = clique(&mut g, size);
        let density = rng.gen_range(0.1..0.7);
        for &h in &hubs {
            for &u in &vs {
                if rng.gen_bool(density / hubs.len() as f64) {
                    g.add_edge(h, u).expect("present");
                }
            }
        }
        if !vs.iter().any(|&u| hubs.iter().any(|&h| g.has_edge(h, u))) {
            g.add_edge(*hubs.choose(rng).expect("hub"), *vs.choose(rng).expect("clique")).expect("present");
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let t = tree(&mut g, rng.gen_range(1..=4), rng);
        g.add_edge(*hubs.choose(rng).expect("hub"), t[0]).expect("present");
    }
    let k = rng.gen_range(0..=hubs.len() as i64 + 1);
    RuleCase::new(g, k, hubs)
}

fn far_leaf<R: Rng>(rng: &mut R) -> RuleCase {
    let mut g = MultiGraph::new();
    let hubs: Vec<VertexId> = (0..rng.gen_range(1..=3)).map(|_| g.add_vertex()).collect();
    wire_hubs(&mut g, &hubs, 0.5, rng);
    for _ in 0..rng.gen_range(1..=3) {
        let t = tree(&mut g, rng.gen_range(3..=9), rng);
        for _ in 0..rng.gen_range(1..=2) {
            g.add_edge(*hubs.choose(rng).expect("hub"), *t.choose(rng).expect("tree")).expect("present");
        }
    }
    if rng.gen_bool(0.5) {
        let c = clique(&mut g, rng.gen_range(3..=5));
        g.add_edge(*hubs.choose(rng).expect("hub"), c[0]).expect("present");
    }
    let k = rng.gen_range(0..=hubs.len() as i64);
    RuleCase::new(g, k, hubs)
}

fn pendant_trees<R: Rng>(rng: &mut R) -> RuleCase {
    let mut g = MultiGraph::new();
    let hubs: Vec<VertexId> = (0..rng.gen_range(1..=3)).map(|_| g.add_vertex()).collect();
    wire_hubs(&mut g, &hubs, 0.5, rng);
    for _ in 0..rng.gen_range(1..=3) {
        let c = clique(&mut g, rng.gen_range(3..=4));
        for &u in &c {
            if rng.gen_bool(0.5) {
                g.add_edge(*hubs.choose(rng).expect("hub"), u).expect("present");
            }
        }
    }
    for _ in 0..rng.gen_range(1..=3) {
        let t = tree(&mut g, rng.gen_range(2..=6), rng);
        g.add_edge(*hubs.choose(rng).expect("hub"), *t.choose(rng).expect("tree")).expect("present");
    }
    let k = rng.gen_range(0..=hubs.len() as i64);
    RuleCase::new(g, k, hubs)
}

/// A trunk vertex of a new small tree, joined to `v` at two distinct
/// vertices, or twice to a single vertex.
fn petal<R: Rng>(g: &mut MultiGraph, v: VertexId, rng: &mut R) -> Vec<VertexId> {
    let t = tree(g, rng.gen_range(1..=3), rng);
    if t.len() == 1 {
        g.set_multiplicity(v, t[0], 2).expect("present");
    } else {
        g.add_edge(v, t[0]).expect("present");
        g.add_edge(v, t[t.len() - 1]).expect("present");
    }
    t
}

fn flower<R: Rng>(rng: &mut R) -> RuleCase {
    let mut g = MultiGraph::new();
    let v = g.add_vertex();
    let others: Vec<VertexId> = (0..rng.gen_range(0..=2)).map(|_| g.add_vertex()).collect();
    let k = rng.gen_range(0..=2i64);
    let petals = 3 * k as usize + rng.gen_range(2..=4);
    let mut outside = Vec::new();
    for _ in 0..petals {
        outside.extend(petal(&mut g, v, rng));
    }
    for &w in &others {
        g.add_edge(v, w).expect("present");
        for &u in &outside {
            if rng.gen_bool(0.15) {
                g.add_edge(w, u).expect("present");
            }
        }
    }
    let mut s = others;
    s.push(v);
    RuleCase::new(g, k, s)
}

fn tree_expansion<R: Rng>(rng: &mut R) -> RuleCase {
    let mut g = MultiGraph::new();
    let v = g.add_vertex();
    let others: Vec<VertexId> = (0..rng.gen_range(1..=3)).map(|_| g.add_vertex()).collect();
    wire_hubs(&mut g, &others, 0.3, rng);
    let k = rng.gen_range(0..=2i64);
    for _ in 0..rng.gen_range(0..=k) {
        let t = petal(&mut g, v, rng);
        if rng.gen_bool(0.5) {
            g.add_edge(*others.choose(rng).expect("hub"), t[0]).expect("present");
        }
    }
    let trees = tree_expansion_threshold(k) as usize + rng.gen_range(1..=12);
    for _ in 0..trees {
        let t = tree(&mut g, rng.gen_range(1..=3), rng);
        g.add_edge(v, t[0]).expect("present");
        g.add_edge(*others.choose(rng).expect("hub"), *t.choose(rng).expect("tree")).expect("present");
    }
    let mut s = others;
    s.push(v);
    RuleCase::new(g, k, s)
}
