//! Local-ratio 2-approximation for feedback vertex set with unit weights
//! (semidisjoint-cycle / degree-weighted reductions and a reverse-deletion
//! cleanup).

use std::collections::BTreeMap;

use crate::graph::{MultiGraph, VertexId, VertexSet};

const EPS: f64 = 1e-9;

/// Returns a feedback vertex set of a simple graph at most twice the minimum.
pub fn approx_fvs(g: &MultiGraph) -> VertexSet {
    let mut h = g.clone();
    let mut weight: BTreeMap<VertexId, f64> = h.vertices().map(|v| (v, 1.0)).collect();
    let mut picked: Vec<VertexId> = Vec::new();
    strip_low_degree(&mut h);
    while !h.is_empty() {
        if let Some(cycle) = semidisjoint_cycle(&h) {
            let gamma = cycle
                .iter()
                .map(|v| weight[v])
                .fold(f64::INFINITY, f64::min);
            for v in &cycle {
                *weight.get_mut(v).expect("weighted") -= gamma;
            }
        } else {
            let gamma = h
                .vertices()
                .map(|v| weight[&v] / (deg(&h, v) - 1) as f64)
                .fold(f64::INFINITY, f64::min);
            for v in h.vertices().collect::<Vec<_>>() {
                *weight.get_mut(&v).expect("weighted") -= gamma * (deg(&h, v) - 1) as f64;
            }
        }
        let zeroed: Vec<VertexId> = h.vertices().filter(|v| weight[v] <= EPS).collect();
        for v in zeroed {
            h.remove_vertex(v).expect("present");
            picked.push(v);
        }
        strip_low_degree(&mut h);
    }

    let mut result: VertexSet = picked.iter().copied().collect();
    for &v in picked.iter().rev() {
        result.remove(&v);
        if !is_forest(&g.without(&result)) {
            result.insert(v);
        }
    }
    result
}

fn deg(g: &MultiGraph, v: VertexId) -> usize {
    g.degree(v).expect("present")
}

fn strip_low_degree(g: &mut MultiGraph) {
    loop {
        let low: Vec<VertexId> = g.vertices().filter(|&v| deg(g, v) <= 1).collect();
        if low.is_empty() {
            return;
        }
        for v in low {
            g.remove_vertex(v).expect("present");
        }
    }
}

/// A cycle in which every vertex but at most one has degree two. Assumes
/// minimum degree two.
fn semidisjoint_cycle(g: &MultiGraph) -> Option<Vec<VertexId>> {
    for v in g.vertices() {
        if deg(g, v) != 2 {
            continue;
        }
        let mut nbrs = g.neighbor_ids(v);
        let (a, b) = (nbrs.next()?, nbrs.next()?);
        let (left, l_end) = walk(g, v, a);
        let (right, r_end) = walk(g, v, b);
        let mut cycle: Vec<VertexId> = left.into_iter().chain([v]).chain(right).collect();
        match (l_end, r_end) {
            (None, _) | (_, None) => {
                cycle.sort();
                cycle.dedup();
                return Some(cycle);
            }
            (Some(x), Some(y)) if x == y => {
                cycle.push(x);
                return Some(cycle);
            }
            _ => {}
        }
    }
    None
}

/// Follows degree-2 vertices from `prev` through `cur`; returns them and the
/// first vertex of other degree, or `None` when the walk returns to its start.
fn walk(g: &MultiGraph, start: VertexId, mut cur: VertexId) -> (Vec<VertexId>, Option<VertexId>) {
    let mut prev = start;
    let mut seen = Vec::new();
    loop {
        if cur == start {
            return (seen, None);
        }
        if deg(g, cur) != 2 {
            return (seen, Some(cur));
        }
        seen.push(cur);
        let next = g.neighbor_ids(cur).find(|&w| w != prev).expect("two neighbors");
        prev = cur;
        cur = next;
    }
}

pub(crate) fn is_forest(g: &MultiGraph) -> bool {
    g.is_simple()
        && g.edge_count() + crate::graph::connected_components(g).len() == g.vertex_count()
}
