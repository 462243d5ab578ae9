//! Slow, definitional reference implementations. Nothing here calls into the
//! algorithms under test; only the graph container is shared.

use std::collections::{BTreeMap, BTreeSet};

use ctvd_core::expansion::{Bipartition, ExpansionCertificate};
use ctvd_core::{MultiGraph, VertexId, VertexSet};

/// Connected components by repeated depth-first search.
pub fn components(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in g.vertices() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            comp.push(u);
            for (w, _) in g.neighbors(u) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Simple, and every component is complete or has exactly `n - 1` edges.
pub fn is_cliques_or_trees(g: &MultiGraph) -> bool {
    if g.loops().next().is_some() || g.edges().any(|(_, _, m)| m > 1) {
        return false;
    }
    components(g).iter().all(|c| {
        let n = c.len();
        let m = c.iter().map(|&u| g.neighbors(u).count()).sum::<usize>() / 2;
        m + 1 == n || m == n * (n - 1) / 2
    })
}

fn subsets_of_size(items: &[VertexId], size: usize, f: &mut dyn FnMut(&[VertexId]) -> bool) -> bool {
    fn rec(
        items: &[VertexId],
        size: usize,
        start: usize,
        cur: &mut Vec<VertexId>,
        f: &mut dyn FnMut(&[VertexId]) -> bool,
    ) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            if rec(items, size, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(items, size, 0, &mut Vec::new(), f)
}

/// Smallest deletion set of size at most `k` by plain subset enumeration.
pub fn exhaustive_solution(g: &MultiGraph, k: usize) -> Option<VertexSet> {
    let vs: Vec<VertexId> = g.vertices().collect();
    for size in 0..=k.min(vs.len()) {
        let mut found = None;
        subsets_of_size(&vs, size, &mut |x| {
            let x: VertexSet = x.iter().copied().collect();
            if is_cliques_or_trees(&g.without(&x)) {
                found = Some(x);
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn exhaustive_feasible(g: &MultiGraph, k: i64) -> bool {
    k >= 0 && exhaustive_solution(g, k as usize).is_some()
}

pub fn exhaustive_optimum(g: &MultiGraph) -> usize {
    exhaustive_solution(g, g.vertex_count())
        .expect("deleting everything works")
        .len()
}

/// Induced-subgraph census: does some vertex subset induce a paw, a diamond
/// or a chordless cycle of length at least four?
pub fn has_induced_paw_diamond_or_hole(g: &MultiGraph) -> bool {
    let vs: Vec<VertexId> = g.vertices().collect();
    for size in 4..=vs.len() {
        let hit = subsets_of_size(&vs, size, &mut |sub| {
            let degs: Vec<usize> = sub
                .iter()
                .map(|&u| sub.iter().filter(|&&w| w != u && g.multiplicity(u, w) > 0).count())
                .collect();
            let edges = degs.iter().sum::<usize>() / 2;
            let connected = components(&g.induced(&sub.iter().copied().collect())).len() == 1;
            if !connected {
                return false;
            }
            if size == 4 {
                let mut sorted = degs.clone();
                sorted.sort();
                let paw = edges == 4 && sorted == [1, 2, 2, 3];
                let diamond = edges == 5;
                if paw || diamond {
                    return true;
                }
            }
            degs.iter().all(|&d| d == 2)
        });
        if hit {
            return true;
        }
    }
    false
}

/// Every cycle through `v` as a vertex list starting at `v`, each listed
/// once. Double edges at `v` count as two-vertex cycles.
pub fn cycles_through(g: &MultiGraph, v: VertexId) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for (u, m) in g.neighbors(v) {
        if m >= 2 {
            out.push(vec![v, u]);
        }
    }
    fn dfs(g: &MultiGraph, v: VertexId, path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let last = *path.last().expect("non-empty");
        for (w, _) in g.neighbors(last) {
            if w == v && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w != v && !path.contains(&w) {
                path.push(w);
                dfs(g, v, path, out);
                path.pop();
            }
        }
    }
    dfs(g, v, &mut vec![v], &mut out);
    out
}

/// Largest number of cycles through `v` pairwise meeting only in `v`.
pub fn max_petal_packing(g: &MultiGraph, v: VertexId) -> usize {
    let cycles: Vec<BTreeSet<VertexId>> = cycles_through(g, v)
        .into_iter()
        .map(|c| c[1..].iter().copied().collect())
        .collect();
    fn best(cycles: &[BTreeSet<VertexId>], used: &mut BTreeSet<VertexId>, from: usize) -> usize {
        let mut top = 0;
        for i in from..cycles.len() {
            if cycles[i].is_disjoint(used) {
                used.extend(cycles[i].iter().copied());
                top = top.max(1 + best(cycles, used, i + 1));
                for x in &cycles[i] {
                    used.remove(x);
                }
            }
        }
        top
    }
    best(&cycles, &mut BTreeSet::new(), 0)
}

/// Is the vertex list a cycle of `g` through its first vertex?
pub fn is_cycle(g: &MultiGraph, cycle: &[VertexId]) -> bool {
    let distinct: BTreeSet<_> = cycle.iter().collect();
    if distinct.len() != cycle.len() || cycle.iter().any(|&u| !g.contains(u)) {
        return false;
    }
    match cycle.len() {
        0 | 1 => false,
        2 => g.multiplicity(cycle[0], cycle[1]) >= 2,
        n => (0..n).all(|i| g.multiplicity(cycle[i], cycle[(i + 1) % n]) > 0),
    }
}

/// Contract check for q-expansions written from the definitions.
pub fn expansion_is_valid(h: &Bipartition, c: &ExpansionCertificate, q: usize, deficiency: bool) -> bool {
    let edges: BTreeSet<(VertexId, VertexId)> = h.edges.iter().copied().collect();
    let x: BTreeSet<VertexId> = c.x_hat.iter().copied().collect();
    let y: BTreeSet<VertexId> = c.y_hat.iter().copied().collect();
    let a_all: BTreeSet<VertexId> = h.a_side.iter().copied().collect();
    let b_all: BTreeSet<VertexId> = h.b_side.iter().copied().collect();
    if c.q != q || !x.is_subset(&a_all) || !y.is_subset(&b_all) {
        return false;
    }
    let mut per_a: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    for &(a, b) in &c.m {
        if !edges.contains(&(a, b)) || !x.contains(&a) || !y.contains(&b) || !covered.insert(b) {
            return false;
        }
        *per_a.entry(a).or_default() += 1;
    }
    if x.iter().any(|a| per_a.get(a).copied().unwrap_or(0) != q) {
        return false;
    }
    if covered.len() != q * x.len() {
        return false;
    }
    if edges.iter().any(|(a, b)| y.contains(b) && !x.contains(a)) {
        return false;
    }
    if deficiency {
        b_all.len() - y.len() <= q * (a_all.len() - x.len())
    } else {
        !x.is_empty()
    }
}
