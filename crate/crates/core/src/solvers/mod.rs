//! Exact branching oracle and the factor-6 modulator approximation.

mod fvs;

use crate::graph::{
    classify_unchecked, connected_components, is_clique_or_tree_graph, ComponentKind, MultiGraph,
    VertexId, VertexSet,
};
use crate::obstructions::{find_any_obstruction, find_small_obstruction};

pub use fvs::approx_fvs;

/// Approximation guarantee of [`approx_deletion_set`].
pub const APPROX_FACTOR: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub feasible: bool,
    /// A minimum solution when feasible.
    pub solution: Option<VertexSet>,
    /// Its size.
    pub optimum: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    pub s: VertexSet,
    pub factor: usize,
}

/// Minimum solution of size at most `k`, if one exists.
///
/// Each connected component is solved separately by iterative deepening,
/// branching on the vertices of one obstruction and pruning with a greedy
/// packing of vertex-disjoint obstructions.
pub fn brute_force(g: &MultiGraph, k: usize) -> SolveResult {
    let mut solution = VertexSet::new();
    for comp in connected_components(g) {
        let budget = k - solution.len();
        let sub = g.induced(&comp);
        match solve_component(&sub, budget) {
            Some(x) => solution.extend(x),
            None => {
                return SolveResult {
                    feasible: false,
                    solution: None,
                    optimum: None,
                }
            }
        }
    }
    SolveResult {
        feasible: true,
        optimum: Some(solution.len()),
        solution: Some(solution),
    }
}

/// Size-minimum solution with no budget limit.
pub fn minimum_deletion_set(g: &MultiGraph) -> VertexSet {
    let mut solution = VertexSet::new();
    for comp in connected_components(g) {
        let sub = g.induced(&comp);
        let x = solve_component(&sub, comp.len()).expect("deleting everything is a solution");
        solution.extend(x);
    }
    solution
}

/// Optimal deletion set of size at most `budget` for a connected graph.
fn solve_component(g: &MultiGraph, budget: usize) -> Option<VertexSet> {
    if is_clique_or_tree_graph(g) {
        return Some(VertexSet::new());
    }
    let lb = disjoint_obstruction_bound(g).max(1);
    (lb..=budget).find_map(|b| {
        let mut chosen = Vec::new();
        branch(g, b, &mut chosen).then(|| chosen.into_iter().collect())
    })
}

fn branch(g: &MultiGraph, budget: usize, chosen: &mut Vec<VertexId>) -> bool {
    let Some(obs) = find_any_obstruction(g) else {
        return true;
    };
    if budget == 0 || disjoint_obstruction_bound(g) > budget {
        return false;
    }
    let mut candidates = obs.witness.clone();
    candidates.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v).expect("present")), v));
    for v in candidates {
        let mut h = g.clone();
        h.remove_vertex(v).expect("present");
        chosen.push(v);
        if branch(&h, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Lower bound: number of vertex-disjoint obstructions found greedily.
fn disjoint_obstruction_bound(g: &MultiGraph) -> usize {
    let mut h = g.clone();
    let mut count = 0;
    while let Some(o) = find_any_obstruction(&h) {
        for v in o.witness {
            h.remove_vertex(v).expect("present");
        }
        count += 1;
    }
    count
}

/// Modulator with `|s| <= 6 * opt`.
///
/// First every vertex of each small obstruction (self-loop, multi-edge, paw,
/// diamond, C4) found is deleted; these obstructions are pairwise disjoint, so
/// this costs at most four times the optimum. Every remaining component that
/// is not a clique is then triangle-free, and a 2-approximate feedback vertex
/// set of it finishes the job.
pub fn approx_deletion_set(g: &MultiGraph) -> Modulator {
    let mut s = VertexSet::new();
    let mut h = g.clone();
    while let Some(o) = find_small_obstruction(&h) {
        for v in o.witness {
            h.remove_vertex(v).expect("present");
            s.insert(v);
        }
    }
    for comp in connected_components(&h) {
        if classify_unchecked(&h, &comp) == ComponentKind::Neither {
            s.extend(approx_fvs(&h.induced(&comp)));
        }
    }
    debug_assert!(is_clique_or_tree_graph(&g.without(&s)));
    Modulator {
        s,
        factor: APPROX_FACTOR,
    }
}
