//! Proptest strategies for small multigraphs.

use ctvd_core::{MultiGraph, VertexId};
use proptest::prelude::*;

/// Graphs on at most `max_n` vertices. With `max_mult > 1`, repeated pairs and
/// self-loops appear with the given multiplicity cap.
pub fn graph(max_n: usize, max_mult: u32) -> impl Strategy<Value = MultiGraph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = if n == 0 { 0 } else { n * (n + 1) / 2 };
        prop::collection::vec((0..n.max(1) as u32, 0..n.max(1) as u32, 1..=max_mult), 0..=pairs)
            .prop_map(move |edges| build(n, max_mult, &edges))
    })
}

fn build(n: usize, max_mult: u32, edges: &[(u32, u32, u32)]) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for &(u, v, m) in edges {
        if max_mult == 1 && u == v {
            continue;
        }
        let (u, v) = (VertexId(u), VertexId(v));
        let m = if max_mult == 1 { 1 } else { m };
        let cur = g.multiplicity(u, v);
        g.set_multiplicity(u, v, (cur + m).min(max_mult)).expect("in range");
    }
    g
}

/// Simple graphs with each pair present independently.
pub fn simple_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    graph(max_n, 1)
}
