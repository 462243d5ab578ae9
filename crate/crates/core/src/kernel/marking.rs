use crate::graph::{MultiGraph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueMarking {
    pub clique: VertexSet,
    pub marked: VertexSet,
}

impl CliqueMarking {
    pub fn unmarked(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.clique.iter().copied().filter(|v| !self.marked.contains(v))
    }
}

/// Marks, for every non-empty `Z ⊆ S` with `|Z| <= 3` and every adjacency
/// profile `f: Z -> {0, 1}`, up to `k + 4` clique vertices matching the
/// profile. Smaller ids win, except that for a single `z` with `f(z) = 1`
/// vertices joined to `z` by a double edge are taken first.
pub fn mark_clique(g: &MultiGraph, s: &VertexSet, k: usize, clique: &VertexSet) -> CliqueMarking {
    let s: Vec<VertexId> = s.iter().copied().collect();
    let members: Vec<VertexId> = clique.iter().copied().collect();
    let quota = k + 4;
    let mut marked = VertexSet::new();
    for z in subsets_up_to_three(s.len()) {
        let zs: Vec<VertexId> = z.iter().map(|&i| s[i]).collect();
        for f in 0u32..(1 << zs.len()) {
            let wants = |i: usize| f >> i & 1 == 1;
            let mut candidates: Vec<VertexId> = members
                .iter()
                .copied()
                .filter(|&v| zs.iter().enumerate().all(|(i, &z)| g.has_edge(v, z) == wants(i)))
                .collect();
            if zs.len() == 1 && wants(0) {
                candidates.sort_by_key(|&v| (g.multiplicity(v, zs[0]) < 2, v));
            }
            marked.extend(candidates.into_iter().take(quota));
        }
    }
    CliqueMarking {
        clique: clique.clone(),
        marked,
    }
}

fn subsets_up_to_three(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n {
        out.push(vec![a]);
        for b in a + 1..n {
            out.push(vec![a, b]);
            for c in b + 1..n {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}
