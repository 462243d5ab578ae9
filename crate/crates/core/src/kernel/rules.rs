//! The reduction rules. Each one inspects a state and proposes a
//! [`TraceRecord`] describing its edits, or `None` when it does not apply.

use std::collections::BTreeMap;

use super::marking::mark_clique;
use super::trace::{RuleId, TraceRecord};
use super::{KernelError, KernelState};
use crate::expansion::{flower_or_hitting_set, new_q_expansion, q_expansion, Bipartition, FlowerResult};
use crate::graph::{components_within, VertexId, VertexSet};
use crate::obstructions::{find_degree2_overbridge, find_degree2_tail};

pub type RuleOutcome = Result<Option<TraceRecord>, KernelError>;

pub fn propose(st: &KernelState, rule: RuleId) -> RuleOutcome {
    match rule {
        RuleId::Modulator => Ok(None),
        RuleId::Multiplicity => rr_multiplicity(st),
        RuleId::IsolatedComponent => rr_isolated_component(st),
        RuleId::PendantDedup => rr_pendant_dedup(st),
        RuleId::Tail => rr_tail(st),
        RuleId::Overbridge => rr_overbridge(st),
        RuleId::CliqueExpansion => rr_clique_expansion(st),
        RuleId::UnmarkedCliqueVertex => rr_unmarked_clique_vertex(st),
        RuleId::FarLeaf => rr_far_leaf(st),
        RuleId::PendantTree => rr_pendant_tree(st),
        RuleId::Flower => rr_flower(st),
        RuleId::TreeExpansion => rr_tree_expansion(st),
    }
}

fn record(st: &KernelState, rule: RuleId) -> TraceRecord {
    TraceRecord::new(rule, st.k)
}

/// Caps every edge and self-loop multiplicity at two.
pub fn rr_multiplicity(st: &KernelState) -> RuleOutcome {
    let g = &st.graph;
    let mut rec = record(st, RuleId::Multiplicity);
    for (u, v, m) in g.edges() {
        if m > 2 {
            rec = rec.set(u, v, 2);
        }
    }
    for (v, m) in g.loops() {
        if m > 2 {
            rec = rec.set(v, v, 2);
        }
    }
    Ok((!rec.edits.is_empty()).then_some(rec))
}

/// Deletes a component of `G - S` with no neighbor in `S`.
pub fn rr_isolated_component(st: &KernelState) -> RuleOutcome {
    let outside = st.outside_s();
    for comp in components_within(&st.graph, &outside) {
        let touches_s = comp
            .iter()
            .any(|&u| st.graph.neighbor_ids(u).any(|w| st.s.contains(&w)));
        if !touches_s {
            let rec = record(st, RuleId::IsolatedComponent)
                .param("component", comp.iter().copied())
                .delete(comp);
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

/// When a vertex has two pendant neighbors, deletes the one with larger id.
pub fn rr_pendant_dedup(st: &KernelState) -> RuleOutcome {
    let g = &st.graph;
    for u in g.vertices() {
        let pendants: Vec<VertexId> = g
            .neighbor_ids(u)
            .filter(|&p| g.degree(p) == Ok(1))
            .collect();
        if pendants.len() >= 2 {
            let drop = *pendants.last().expect("two pendants");
            let rec = record(st, RuleId::PendantDedup)
                .param("center", [u])
                .param("kept", [pendants[0]])
                .delete([drop]);
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

/// Shortens a degree-2 tail `v1 .. vl` (l >= 3) to `v1 v2`.
pub fn rr_tail(st: &KernelState) -> RuleOutcome {
    let Some(tail) = find_degree2_tail(&st.graph, 3) else {
        return Ok(None);
    };
    let rec = record(st, RuleId::Tail)
        .param("path", tail.vertices.iter().copied())
        .delete(tail.vertices[2..].iter().copied());
    Ok(Some(rec))
}

/// Replaces a degree-2 overbridge `v1 .. vl` (l >= 5) by `v1 v2 v(l-1) vl`.
pub fn rr_overbridge(st: &KernelState) -> RuleOutcome {
    let Some(bridge) = find_degree2_overbridge(&st.graph, 5) else {
        return Ok(None);
    };
    let p = &bridge.vertices;
    let l = p.len();
    let rec = record(st, RuleId::Overbridge)
        .param("path", p.iter().copied())
        .delete(p[2..l - 2].iter().copied())
        .set(p[1], p[l - 2], 1);
    Ok(Some(rec))
}

/// 2-expansion of `S` into the clique components of `G - S`; the expanded
/// part of `S` is deleted and paid for.
pub fn rr_clique_expansion(st: &KernelState) -> RuleOutcome {
    let cliques = st.clique_components();
    if st.s.is_empty() || cliques.len() < 2 * st.s.len() {
        return Ok(None);
    }
    let h = component_bipartition(st, st.s.iter().copied().collect(), &cliques);
    let cert = q_expansion(&h, 2).map_err(|e| KernelError::Internal(format!("clique expansion: {e}")))?;
    let rec = record(st, RuleId::CliqueExpansion)
        .param("expanded", cert.x_hat.iter().copied())
        .param("cliques", cert.y_hat.iter().copied())
        .delete(cert.x_hat.iter().copied())
        .spend(cert.x_hat.len());
    Ok(Some(rec))
}

/// Bipartite graph between `a_side` and components (named by their smallest
/// vertex), with `a ~ C` when `a` is adjacent to some vertex of `C`.
fn component_bipartition(st: &KernelState, a_side: Vec<VertexId>, comps: &[VertexSet]) -> Bipartition {
    let mut edges = Vec::new();
    for &a in &a_side {
        for comp in comps {
            if st.graph.neighbor_ids(a).any(|u| comp.contains(&u)) {
                edges.push((a, representative(comp)));
            }
        }
    }
    Bipartition {
        a_side,
        b_side: comps.iter().map(representative).collect(),
        edges,
    }
}

fn representative(comp: &VertexSet) -> VertexId {
    *comp.iter().next().expect("non-empty component")
}

/// Deletes a clique vertex left unmarked by [`mark_clique`].
pub fn rr_unmarked_clique_vertex(st: &KernelState) -> RuleOutcome {
    let k = st.k.max(0) as usize;
    for clique in st.clique_components() {
        let marking = mark_clique(&st.graph, &st.s, k, &clique);
        let first = marking.unmarked().next();
        if let Some(v) = first {
            let rec = record(st, RuleId::UnmarkedCliqueVertex)
                .param("clique", clique.iter().copied())
                .delete([v]);
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

/// Deletes a leaf of a tree of `G[V2]` when neither the leaf nor its tree
/// neighbor sees `S`.
pub fn rr_far_leaf(st: &KernelState) -> RuleOutcome {
    let g = &st.graph;
    let sees_s = |u: VertexId| g.neighbor_ids(u).any(|w| st.s.contains(&w));
    for tree in st.tree_components() {
        if tree.len() < 2 {
            continue;
        }
        for &leaf in &tree {
            let inside: Vec<VertexId> = g.neighbor_ids(leaf).filter(|w| tree.contains(w)).collect();
            if inside.len() == 1 && !sees_s(leaf) && !sees_s(inside[0]) {
                let rec = record(st, RuleId::FarLeaf)
                    .param("tree_neighbor", [inside[0]])
                    .delete([leaf]);
                return Ok(Some(rec));
            }
        }
    }
    Ok(None)
}

/// Collapses a tree of `G[V2]` joined to the rest of the graph by a single
/// edge to the endpoint of that edge.
pub fn rr_pendant_tree(st: &KernelState) -> RuleOutcome {
    let g = &st.graph;
    for tree in st.tree_components() {
        if tree.len() < 2 {
            continue;
        }
        let mut leaving = 0u64;
        let mut attach = None;
        for &u in &tree {
            for (w, m) in g.neighbors(u) {
                if !tree.contains(&w) {
                    leaving += u64::from(m);
                    attach = Some(u);
                }
            }
        }
        if leaving == 1 {
            let u = attach.expect("one leaving edge");
            let rec = record(st, RuleId::PendantTree)
                .param("attachment", [u])
                .delete(tree.iter().copied().filter(|&w| w != u));
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

fn flower_order(st: &KernelState) -> usize {
    3 * st.k.max(0) as usize + 1
}

/// Deletes `v ∈ S` and decrements the budget when `G[V2 ∪ {v}]` has a
/// `v`-flower with `3k + 2` petals.
pub fn rr_flower(st: &KernelState) -> RuleOutcome {
    for &v in &st.s {
        let outcome = flower_at(st, v)?;
        if let FlowerResult::Flower { petals } = outcome {
            let mut rec = record(st, RuleId::Flower).param("center", [v]);
            for p in petals {
                rec = rec.param("petal", p[1..].iter().copied());
            }
            return Ok(Some(rec.delete([v]).spend(1)));
        }
    }
    Ok(None)
}

fn flower_at(st: &KernelState, v: VertexId) -> Result<FlowerResult, KernelError> {
    let mut keep = st.v2.clone();
    keep.insert(v);
    flower_or_hitting_set(&st.graph.induced(&keep), v, flower_order(st))
        .map_err(|e| KernelError::Internal(format!("flower at {v}: {e}")))
}

/// Degree threshold above which a modulator vertex triggers tree expansion.
pub fn tree_expansion_threshold(k: i64) -> u64 {
    60 * (k.max(0) as u64 + 1)
}

/// New 4-expansion of `H_v ∪ S \ {v}` into the trees of `G[V2 \ H_v]` that
/// touch `v`; cuts `v` from the saturated trees and doubles its edges to the
/// expanded side.
pub fn rr_tree_expansion(st: &KernelState) -> RuleOutcome {
    let g = &st.graph;
    let threshold = tree_expansion_threshold(st.k);
    for &v in &st.s {
        let degree: u64 = g
            .neighbors(v)
            .filter(|(u, _)| st.v2.contains(u))
            .map(|(_, m)| u64::from(m))
            .sum();
        if degree <= threshold {
            continue;
        }
        let h_v = match flower_at(st, v)? {
            FlowerResult::Hitting { z } => z,
            FlowerResult::Flower { .. } => {
                return Err(KernelError::Internal(format!("flower at {v} during tree expansion")))
            }
        };
        let rest: VertexSet = st.v2.difference(&h_v).copied().collect();
        let comps: Vec<VertexSet> = components_within(g, &rest)
            .into_iter()
            .filter(|c| g.neighbor_ids(v).any(|u| c.contains(&u)))
            .collect();
        if comps.len() <= 4 * (st.s.len() + h_v.len()) {
            return Err(KernelError::Internal(format!(
                "tree expansion at {v}: only {} components for |S| = {}, |H_v| = {}",
                comps.len(),
                st.s.len(),
                h_v.len()
            )));
        }
        let a_side: Vec<VertexId> = h_v
            .iter()
            .chain(st.s.iter().filter(|&&w| w != v))
            .copied()
            .collect::<VertexSet>()
            .into_iter()
            .collect();
        let h = component_bipartition(st, a_side, &comps);
        let cert = new_q_expansion(&h, 4).map_err(|e| KernelError::Internal(format!("tree expansion: {e}")))?;
        let by_rep: BTreeMap<VertexId, &VertexSet> = comps.iter().map(|c| (representative(c), c)).collect();
        let saturated = cert.saturated();
        let kept = cert
            .y_hat
            .iter()
            .copied()
            .find(|b| !saturated.contains(b))
            .ok_or_else(|| KernelError::Internal(format!("tree expansion at {v}: every tree saturated")))?;
        let mut rec = record(st, RuleId::TreeExpansion)
            .param("center", [v])
            .param("hitting_set", h_v.iter().copied())
            .param("expanded", cert.x_hat.iter().copied())
            .param("saturated", saturated.iter().copied())
            .param("kept", [kept]);
        for b in &saturated {
            for u in by_rep[b].iter().copied() {
                if g.has_edge(v, u) {
                    rec = rec.set(v, u, 0);
                }
            }
        }
        for &a in &cert.x_hat {
            rec = rec.set(v, a, 2);
        }
        return Ok(Some(rec));
    }
    Ok(None)
}
