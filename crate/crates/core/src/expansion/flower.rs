//! Flowers around a vertex whose removal leaves a forest.
//!
//! Petals are cycles through `v`: either a double edge `v u` or a tree path
//! between two neighbors of `v`. A greedy post-order pass packs the maximum
//! number of vertex-disjoint petals and, at the same time, yields a hitting
//! set with one vertex per petal.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{components_within, MultiGraph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowerResult {
    /// At least `order + 1` cycles through `v`, pairwise meeting only in `v`.
    /// Each petal starts with `v` followed by the cycle's other vertices.
    Flower { petals: Vec<Vec<VertexId>> },
    /// `g - z` has no cycle through `v`.
    Hitting { z: VertexSet },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowerError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("graph minus the center is not a forest")]
    NotAForest,
    #[error("edge {0}-{1} has multiplicity above two")]
    HighMultiplicity(VertexId, VertexId),
}

pub fn flower_or_hitting_set(
    g: &MultiGraph,
    v: VertexId,
    order: usize,
) -> Result<FlowerResult, FlowerError> {
    if !g.contains(v) {
        return Err(FlowerError::UnknownVertex(v));
    }
    let rest: VertexSet = g.vertices().filter(|&u| u != v).collect();
    let forest = g.induced(&rest);
    if !forest.is_simple() || forest.edge_count() + connected_count(&forest) != rest.len() {
        return Err(FlowerError::NotAForest);
    }
    let mut double = BTreeSet::new();
    let mut terminal = BTreeSet::new();
    for (u, m) in g.neighbors(v) {
        match m {
            1 => {
                terminal.insert(u);
            }
            2 => {
                double.insert(u);
            }
            _ => return Err(FlowerError::HighMultiplicity(v, u)),
        }
    }

    let mut petals = Vec::new();
    let mut z = VertexSet::new();
    for tree in components_within(&forest, &rest) {
        pack_tree(&forest, &tree, v, &terminal, &double, &mut petals, &mut z);
    }
    if petals.len() > order {
        Ok(FlowerResult::Flower { petals })
    } else {
        Ok(FlowerResult::Hitting { z })
    }
}

fn connected_count(g: &MultiGraph) -> usize {
    components_within(g, &g.vertex_set()).len()
}

/// Post-order over one tree rooted at its smallest vertex. Each vertex hands
/// its parent at most one open path, listed from a terminal up to that vertex.
fn pack_tree(
    forest: &MultiGraph,
    tree: &VertexSet,
    v: VertexId,
    terminal: &BTreeSet<VertexId>,
    double: &BTreeSet<VertexId>,
    petals: &mut Vec<Vec<VertexId>>,
    z: &mut VertexSet,
) {
    let root = *tree.iter().next().expect("non-empty tree");
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for c in forest.neighbor_ids(x) {
            if c != root && !parent.contains_key(&c) {
                parent.insert(c, x);
                order.push(c);
            }
        }
        i += 1;
    }
    let mut open: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &x in order.iter().rev() {
        let children = forest
            .neighbor_ids(x)
            .filter(|c| parent.get(c) == Some(&x));
        let mut paths: Vec<Vec<VertexId>> = children.filter_map(|c| open.remove(&c)).collect();
        if double.contains(&x) {
            petals.push(vec![v, x]);
            z.insert(x);
            continue;
        }
        if terminal.contains(&x) {
            paths.push(Vec::new());
        }
        paths.sort_by_key(|p| p.first().copied().unwrap_or(x));
        match paths.len() {
            0 => {}
            1 => {
                let mut p = paths.pop().expect("one path");
                p.push(x);
                open.insert(x, p);
            }
            _ => {
                let mut petal = vec![v];
                petal.extend(paths[0].iter().copied());
                petal.push(x);
                petal.extend(paths[1].iter().rev().copied());
                petals.push(petal);
                z.insert(x);
            }
        }
    }
}

/// Whether `g` has a cycle through `v`: a neighbor reached twice by distinct
/// edges, searching `g - v` from each neighbor.
pub fn has_cycle_through(g: &MultiGraph, v: VertexId) -> bool {
    if g.neighbors(v).any(|(_, m)| m >= 2) {
        return true;
    }
    let rest: VertexSet = g.vertices().filter(|&u| u != v).collect();
    components_within(g, &rest)
        .iter()
        .any(|c| g.neighbor_ids(v).filter(|u| c.contains(u)).count() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petal_sets_disjoint(petals: &[Vec<VertexId>]) -> bool {
        let mut seen = BTreeSet::new();
        petals.iter().all(|p| p[1..].iter().all(|&u| seen.insert(u)))
    }

    #[test]
    fn three_triangles() {
        let g = MultiGraph::from_edges(7, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)]);
        match flower_or_hitting_set(&g, VertexId(0), 2).unwrap() {
            FlowerResult::Flower { petals } => {
                assert_eq!(petals.len(), 3);
                assert!(petal_sets_disjoint(&petals));
            }
            other => panic!("expected flower, got {other:?}"),
        }
    }

    #[test]
    fn star_has_empty_hitting_set() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            flower_or_hitting_set(&g, VertexId(0), 3).unwrap(),
            FlowerResult::Hitting { z: VertexSet::new() }
        );
    }

    #[test]
    fn double_attachments_to_two_trees() {
        // v=0 doubly attached to 1 (tree 1-2) and to 3 (tree 3-4)
        let g = MultiGraph::from_edges(5, &[(0, 1), (0, 1), (1, 2), (0, 3), (0, 3), (3, 4)]);
        match flower_or_hitting_set(&g, VertexId(0), 1).unwrap() {
            FlowerResult::Flower { petals } => {
                assert_eq!(petals.len(), 2);
                assert!(petal_sets_disjoint(&petals));
            }
            other => panic!("expected flower, got {other:?}"),
        }
    }

    #[test]
    fn hitting_set_breaks_every_cycle() {
        // v=0 attached to every vertex of the path 1-2-3-4-5
        let g = MultiGraph::from_edges(
            6,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5)],
        );
        let FlowerResult::Hitting { z } = flower_or_hitting_set(&g, VertexId(0), 5).unwrap() else {
            panic!("expected hitting set");
        };
        assert!(z.len() <= 10);
        assert!(!has_cycle_through(&g.without(&z), VertexId(0)));
    }

    #[test]
    fn rejects_cyclic_remainder() {
        let g = MultiGraph::from_edges(4, &[(1, 2), (2, 3), (1, 3), (0, 1)]);
        assert_eq!(flower_or_hitting_set(&g, VertexId(0), 1), Err(FlowerError::NotAForest));
    }
}
