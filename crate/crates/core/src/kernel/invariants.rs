//! Structural properties every fixpoint of the rule set must have.

use crate::graph::{classify_unchecked, components_within, ComponentKind, MultiGraph, VertexSet};
use crate::obstructions::{find_degree2_overbridge, find_degree2_tail};

/// Describes every violated fixpoint property; empty means all hold.
pub fn fixpoint_violations(g: &MultiGraph, s: &VertexSet) -> Vec<String> {
    let mut bad = Vec::new();
    if g.max_multiplicity() > 2 {
        bad.push(format!("multiplicity {} above two", g.max_multiplicity()));
    }
    for u in g.vertices() {
        let pendants = g.neighbor_ids(u).filter(|&p| g.degree(p) == Ok(1)).count();
        if pendants > 1 {
            bad.push(format!("{u} has {pendants} pendant neighbors"));
        }
    }
    if let Some(t) = find_degree2_tail(g, 3) {
        bad.push(format!("degree-2 tail with {} vertices", t.len()));
    }
    if let Some(o) = find_degree2_overbridge(g, 5) {
        bad.push(format!("degree-2 overbridge with {} vertices", o.len()));
    }
    let outside: VertexSet = g.vertices().filter(|v| !s.contains(v)).collect();
    for comp in components_within(g, &outside) {
        let touches = comp.iter().any(|&u| g.neighbor_ids(u).any(|w| s.contains(&w)));
        if !touches {
            bad.push(format!("component at {} does not touch S", first(&comp)));
        }
        let kind = classify_unchecked(g, &comp);
        if kind == ComponentKind::Neither {
            bad.push(format!("component at {} is neither clique nor tree", first(&comp)));
        }
        let is_tree_side = kind == ComponentKind::Tree;
        if is_tree_side && comp.len() >= 2 {
            let leaving: u64 = comp
                .iter()
                .flat_map(|&u| g.neighbors(u))
                .filter(|(w, _)| !comp.contains(w))
                .map(|(_, m)| u64::from(m))
                .sum();
            if leaving == 1 {
                bad.push(format!("pendant tree at {} has {} vertices", first(&comp), comp.len()));
            }
        }
    }
    bad
}

fn first(c: &VertexSet) -> crate::graph::VertexId {
    *c.iter().next().expect("non-empty")
}
