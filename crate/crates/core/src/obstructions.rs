//! Forbidden-structure detection: self-loops, multi-edges, paws, diamonds and
//! holes (chordless cycles of length at least four), plus the degree-2 paths
//! consumed by the path-shortening rules.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{components_within, MultiGraph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObstructionKind {
    Paw,
    Diamond,
    Hole,
    MultiEdge,
    SelfLoop,
}

/// A witness that a graph is not a disjoint union of cliques and trees.
///
/// Witness layouts:
/// * `Paw`: `[u1, u2, u3, u4]`, triangle `u1 u2 u3` and `u4` adjacent to `u1` only.
/// * `Diamond`: `[u1, u2, u3, u4]`, triangle `u1 u2 u3` and `u4` adjacent to `u1, u2`.
/// * `Hole`: the cycle in order.
/// * `MultiEdge`: `[u, v]`; `SelfLoop`: `[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub witness: Vec<VertexId>,
}

impl Obstruction {
    fn new(kind: ObstructionKind, witness: Vec<VertexId>) -> Self {
        Self { kind, witness }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.witness.iter().copied().collect()
    }

    /// Re-checks the witness against `g` using adjacency queries only.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        let w = &self.witness;
        let distinct = self.vertex_set().len() == w.len();
        if !distinct || w.iter().any(|&v| !g.contains(v)) {
            return false;
        }
        let adj = |a: usize, b: usize| g.has_edge(w[a], w[b]);
        match self.kind {
            ObstructionKind::SelfLoop => w.len() == 1 && g.loop_count(w[0]) > 0,
            ObstructionKind::MultiEdge => w.len() == 2 && g.multiplicity(w[0], w[1]) >= 2,
            ObstructionKind::Paw => {
                w.len() == 4
                    && adj(0, 1)
                    && adj(1, 2)
                    && adj(0, 2)
                    && adj(0, 3)
                    && !adj(1, 3)
                    && !adj(2, 3)
            }
            ObstructionKind::Diamond => {
                w.len() == 4
                    && adj(0, 1)
                    && adj(1, 2)
                    && adj(0, 2)
                    && adj(0, 3)
                    && adj(1, 3)
                    && !adj(2, 3)
            }
            ObstructionKind::Hole => {
                let n = w.len();
                n >= 4
                    && (0..n).all(|i| {
                        (i + 1..n).all(|j| {
                            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
                            adj(i, j) == consecutive
                        })
                    })
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("hole search needs a simple graph")]
    NotSimple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    Tail,
    Overbridge,
}

/// A maximal path whose internal vertices have degree exactly two.
///
/// Tails are stored from the high-degree end: `vertices[0]` has degree above
/// two and the last vertex is pendant. Overbridges have both end degrees above
/// two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree2Path {
    pub kind: PathKind,
    pub vertices: Vec<VertexId>,
}

impl Degree2Path {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn common_neighbors(g: &MultiGraph, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let (small, large) = if g.neighbor_count(a) <= g.neighbor_count(b) {
        (a, b)
    } else {
        (b, a)
    };
    g.neighbor_ids(small).filter(|&x| g.has_edge(x, large)).collect()
}

/// Finds a self-loop, multi-edge, diamond, paw or induced C4, preferring kinds
/// in that order.
pub fn find_small_obstruction(g: &MultiGraph) -> Option<Obstruction> {
    if let Some((v, _)) = g.loops().next() {
        return Some(Obstruction::new(ObstructionKind::SelfLoop, vec![v]));
    }
    if let Some((u, v, _)) = g.edges().find(|&(_, _, m)| m >= 2) {
        return Some(Obstruction::new(ObstructionKind::MultiEdge, vec![u, v]));
    }
    find_diamond(g)
        .or_else(|| find_paw(g))
        .or_else(|| find_c4(g))
}

fn find_diamond(g: &MultiGraph) -> Option<Obstruction> {
    for (u, v, _) in g.edges() {
        let common = common_neighbors(g, u, v);
        for (i, &x) in common.iter().enumerate() {
            for &y in &common[i + 1..] {
                if !g.has_edge(x, y) {
                    return Some(Obstruction::new(ObstructionKind::Diamond, vec![u, v, x, y]));
                }
            }
        }
    }
    None
}

fn find_paw(g: &MultiGraph) -> Option<Obstruction> {
    for (a, b, _) in g.edges() {
        for c in common_neighbors(g, a, b) {
            if c < b {
                continue;
            }
            let tri = [a, b, c];
            for i in 0..3 {
                let t = tri[i];
                let (o1, o2) = (tri[(i + 1) % 3], tri[(i + 2) % 3]);
                let pendant = g
                    .neighbor_ids(t)
                    .find(|&x| x != o1 && x != o2 && !g.has_edge(x, o1) && !g.has_edge(x, o2));
                if let Some(x) = pendant {
                    return Some(Obstruction::new(ObstructionKind::Paw, vec![t, o1, o2, x]));
                }
            }
        }
    }
    None
}

fn find_c4(g: &MultiGraph) -> Option<Obstruction> {
    for u in g.vertices() {
        let nbrs: Vec<_> = g.neighbor_ids(u).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let opposite = common_neighbors(g, a, b)
                    .into_iter()
                    .find(|&w| w != u && !g.has_edge(w, u));
                if let Some(w) = opposite {
                    return Some(Obstruction::new(ObstructionKind::Hole, vec![u, a, w, b]));
                }
            }
        }
    }
    None
}

/// Maximum cardinality search order (visit order).
pub fn maximum_cardinality_search(g: &MultiGraph) -> Vec<VertexId> {
    let mut weight: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
    let mut order = Vec::with_capacity(weight.len());
    while !weight.is_empty() {
        // Highest weight, smallest id on ties.
        let (&v, _) = weight
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .expect("non-empty");
        weight.remove(&v);
        order.push(v);
        for u in g.neighbor_ids(v) {
            if let Some(w) = weight.get_mut(&u) {
                *w += 1;
            }
        }
    }
    order
}

/// Checks whether the reverse of an MCS visit order is a perfect elimination
/// ordering. Returns the first vertex whose earlier-visited neighbors do not
/// form a clique.
fn peo_violation(g: &MultiGraph, visit: &[VertexId]) -> Option<VertexId> {
    let pos: BTreeMap<VertexId, usize> = visit.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (i, &v) in visit.iter().enumerate() {
        let earlier: Vec<VertexId> = g.neighbor_ids(v).filter(|u| pos[u] < i).collect();
        // Tarjan-Yannakakis: the latest earlier neighbor must be adjacent to
        // all other earlier neighbors.
        if let Some(&parent) = earlier.iter().max_by_key(|u| pos[u]) {
            if earlier.iter().any(|&u| u != parent && !g.has_edge(u, parent)) {
                return Some(v);
            }
        }
    }
    None
}

pub fn is_chordal(g: &MultiGraph) -> bool {
    peo_violation(g, &maximum_cardinality_search(g)).is_none()
}

/// A hole through `v`, if one exists: two non-adjacent neighbors `x, y` of
/// `v` joined by a shortest path whose interior avoids `N[v]`.
fn hole_through(g: &MultiGraph, v: VertexId) -> Option<Vec<VertexId>> {
    let mut closed: VertexSet = g.neighbor_ids(v).collect();
    closed.insert(v);
    let outside: VertexSet = g.vertices().filter(|u| !closed.contains(u)).collect();
    for comp in components_within(g, &outside) {
        let attached: Vec<VertexId> = g
            .neighbor_ids(v)
            .filter(|&x| g.neighbor_ids(x).any(|w| comp.contains(&w)))
            .collect();
        for (i, &x) in attached.iter().enumerate() {
            for &y in &attached[i + 1..] {
                if g.has_edge(x, y) {
                    continue;
                }
                let path = shortest_path_through(g, x, y, &comp)?;
                let mut cycle = vec![v];
                cycle.extend(path);
                return Some(cycle);
            }
        }
    }
    None
}

/// Shortest path `x .. y` whose interior lies in `interior`.
fn shortest_path_through(
    g: &MultiGraph,
    x: VertexId,
    y: VertexId,
    interior: &VertexSet,
) -> Option<Vec<VertexId>> {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([x]);
    parent.insert(x, x);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbor_ids(u) {
            if parent.contains_key(&w) {
                continue;
            }
            if w == y {
                if u == x {
                    continue;
                }
                let mut path = vec![y, u];
                let mut cur = u;
                while cur != x {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if interior.contains(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Finds a chordless cycle with at least `min_len` (and at least four)
/// vertices.
///
/// For `min_len <= 4` this is polynomial: an MCS chordality test followed by
/// hole extraction. Longer minimum lengths fall back to an exhaustive search
/// over induced paths, intended for small graphs.
pub fn find_hole(g: &MultiGraph, min_len: usize) -> Result<Option<Vec<VertexId>>, ObstructionError> {
    if !g.is_simple() {
        return Err(ObstructionError::NotSimple);
    }
    let min_len = min_len.max(4);
    if min_len == 4 {
        let visit = maximum_cardinality_search(g);
        let Some(start) = peo_violation(g, &visit) else {
            return Ok(None);
        };
        let candidates = std::iter::once(start).chain(g.vertices().filter(|&v| v != start));
        for v in candidates {
            if let Some(h) = hole_through(g, v) {
                return Ok(Some(h));
            }
        }
        unreachable!("non-chordal graph without a hole");
    }
    Ok(long_hole_search(g, min_len))
}

fn long_hole_search(g: &MultiGraph, min_len: usize) -> Option<Vec<VertexId>> {
    fn extend(g: &MultiGraph, path: &mut Vec<VertexId>, min_len: usize) -> bool {
        let start = path[0];
        let last = *path.last().expect("non-empty");
        let nbrs: Vec<VertexId> = g.neighbor_ids(last).collect();
        for w in nbrs {
            if w <= start || path.contains(&w) {
                continue;
            }
            // w may touch only `last` and possibly the start vertex.
            let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
            let inner_chord = interior.iter().any(|&p| g.has_edge(p, w));
            if inner_chord {
                continue;
            }
            let closes = path.len() >= 2 && g.has_edge(w, start);
            if closes {
                if path.len() + 1 >= min_len {
                    path.push(w);
                    return true;
                }
                continue;
            }
            path.push(w);
            if extend(g, path, min_len) {
                return true;
            }
            path.pop();
        }
        false
    }
    for s in g.vertices() {
        let mut path = vec![s];
        if extend(g, &mut path, min_len) {
            return Some(path);
        }
    }
    None
}

/// Returns an obstruction iff `g` is not a simple disjoint union of cliques
/// and trees.
pub fn find_any_obstruction(g: &MultiGraph) -> Option<Obstruction> {
    if let Some(o) = find_small_obstruction(g) {
        return Some(o);
    }
    find_hole(g, 4)
        .expect("small-obstruction-free graphs are simple")
        .map(|h| Obstruction::new(ObstructionKind::Hole, h))
}

/// Interior vertex of a degree-2 path: degree two, no loop, two distinct
/// neighbors.
fn is_chain_vertex(g: &MultiGraph, v: VertexId) -> bool {
    g.loop_count(v) == 0 && g.neighbor_count(v) == 2 && g.neighbors(v).all(|(_, m)| m == 1)
}

fn deg(g: &MultiGraph, v: VertexId) -> usize {
    g.degree(v).expect("vertex in graph")
}

/// Walks from `prev` into `cur` along chain vertices; returns the visited
/// chain vertices and the first non-chain vertex reached (None if the walk
/// closes on itself).
fn walk_chain(
    g: &MultiGraph,
    mut prev: VertexId,
    mut cur: VertexId,
    origin: VertexId,
) -> (Vec<VertexId>, Option<VertexId>) {
    let mut chain = Vec::new();
    loop {
        if cur == origin {
            return (chain, None);
        }
        if !is_chain_vertex(g, cur) {
            return (chain, Some(cur));
        }
        chain.push(cur);
        let next = g.neighbor_ids(cur).find(|&w| w != prev).expect("two neighbors");
        prev = cur;
        cur = next;
    }
}

/// The first maximal degree-2 tail with at least `min_len` vertices, scanning
/// pendant vertices in id order.
pub fn find_degree2_tail(g: &MultiGraph, min_len: usize) -> Option<Degree2Path> {
    for p in g.vertices() {
        if deg(g, p) != 1 {
            continue;
        }
        let (first, _) = g.neighbors(p).next().expect("pendant has a neighbor");
        let (chain, end) = walk_chain(g, p, first, p);
        let Some(end) = end else { continue };
        if deg(g, end) <= 2 {
            continue;
        }
        let mut vertices = vec![end];
        vertices.extend(chain.iter().rev());
        vertices.push(p);
        if vertices.len() >= min_len {
            return Some(Degree2Path {
                kind: PathKind::Tail,
                vertices,
            });
        }
    }
    None
}

/// The first maximal degree-2 overbridge with at least `min_len` vertices.
/// Only paths with at least one interior vertex are reported, and the two
/// ends must be distinct.
pub fn find_degree2_overbridge(g: &MultiGraph, min_len: usize) -> Option<Degree2Path> {
    let mut seen = BTreeSet::new();
    for v in g.vertices() {
        if seen.contains(&v) || !is_chain_vertex(g, v) {
            continue;
        }
        let mut nbrs = g.neighbor_ids(v);
        let (a, b) = (nbrs.next().expect("two"), nbrs.next().expect("two"));
        let (left, left_end) = walk_chain(g, v, a, v);
        let (right, right_end) = walk_chain(g, v, b, v);
        seen.insert(v);
        seen.extend(left.iter().copied());
        seen.extend(right.iter().copied());
        let (Some(x), Some(y)) = (left_end, right_end) else {
            continue;
        };
        if x == y || deg(g, x) <= 2 || deg(g, y) <= 2 {
            continue;
        }
        let mut vertices = vec![x];
        vertices.extend(left.iter().rev());
        vertices.push(v);
        vertices.extend(right.iter());
        vertices.push(y);
        if vertices.first() > vertices.last() {
            vertices.reverse();
        }
        if vertices.len() >= min_len {
            return Some(Degree2Path {
                kind: PathKind::Overbridge,
                vertices,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    fn diamond() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)])
    }

    fn cycle(n: u32) -> MultiGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n as usize, &e)
    }

    #[test]
    fn small_obstruction_examples() {
        let forest = MultiGraph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]);
        assert_eq!(find_small_obstruction(&forest), None);
        let d = find_small_obstruction(&diamond()).unwrap();
        assert_eq!(d.kind, ObstructionKind::Diamond);
        assert!(d.verify(&diamond()));
        let double = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]);
        let m = find_small_obstruction(&double).unwrap();
        assert_eq!(m.kind, ObstructionKind::MultiEdge);
        assert_eq!(m.witness, ids(&[0, 1]));
    }

    #[test]
    fn preference_order() {
        // Self-loop wins over a paw elsewhere.
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (4, 4)]);
        assert_eq!(find_small_obstruction(&g).unwrap().kind, ObstructionKind::SelfLoop);
        let paw = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]);
        let o = find_small_obstruction(&paw).unwrap();
        assert_eq!(o.kind, ObstructionKind::Paw);
        assert!(o.verify(&paw));
        let c4 = find_small_obstruction(&cycle(4)).unwrap();
        assert_eq!(c4.kind, ObstructionKind::Hole);
        assert!(c4.verify(&cycle(4)));
    }

    #[test]
    fn hole_examples() {
        let tree = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(find_hole(&tree, 4), Ok(None));
        let k5 = MultiGraph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        );
        assert_eq!(find_hole(&k5, 4), Ok(None));
        let c5 = find_hole(&cycle(5), 4).unwrap().unwrap();
        assert_eq!(c5.len(), 5);
        // C6 with the long chord 0-3 splits into two C4s.
        let mut g = cycle(6);
        g.add_edge(VertexId(0), VertexId(3)).unwrap();
        let h = find_hole(&g, 4).unwrap().unwrap();
        assert_eq!(h.len(), 4);
        assert!(Obstruction::new(ObstructionKind::Hole, h).verify(&g));
        assert_eq!(find_hole(&g, 5), Ok(None));
        let double = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]);
        assert_eq!(find_hole(&double, 4), Err(ObstructionError::NotSimple));
    }

    #[test]
    fn long_hole_search_respects_min_len() {
        let c7 = cycle(7);
        assert_eq!(find_hole(&c7, 7).unwrap().unwrap().len(), 7);
        assert_eq!(find_hole(&c7, 8), Ok(None));
    }

    #[test]
    fn any_obstruction_examples() {
        let mut edges = vec![];
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((i, j));
            }
        }
        for i in 5..11 {
            edges.push((i, i + 1));
        }
        let k5_p7 = MultiGraph::from_edges(12, &edges);
        assert_eq!(find_any_obstruction(&k5_p7), None);
        let c7 = find_any_obstruction(&cycle(7)).unwrap();
        assert_eq!(c7.kind, ObstructionKind::Hole);
        assert_eq!(c7.witness.len(), 7);
        // triangle plus a vertex hanging off it: connected, triangle, non-edge
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
        let o = find_any_obstruction(&g).unwrap();
        assert!(matches!(o.kind, ObstructionKind::Paw | ObstructionKind::Diamond));
    }

    #[test]
    fn tail_examples() {
        let star = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(find_degree2_tail(&star, 3), None);
        assert_eq!(find_degree2_tail(&star, 2).unwrap().len(), 2);
        // triangle 0,1,2 with path 3-4-5-6 hanging from 0
        let g = MultiGraph::from_edges(
            7,
            &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6)],
        );
        let t = find_degree2_tail(&g, 3).unwrap();
        assert_eq!(t.kind, PathKind::Tail);
        assert_eq!(t.vertices, ids(&[0, 3, 4, 5, 6]));
        assert_eq!(find_degree2_tail(&cycle(5), 1), None);
    }

    #[test]
    fn overbridge_examples() {
        // triangles 0-1-2 and 3-4-5 joined by 0 - 6..10 - 3
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 6)];
        for i in 6..10 {
            edges.push((i, i + 1));
        }
        edges.push((10, 3));
        let g = MultiGraph::from_edges(11, &edges);
        let o = find_degree2_overbridge(&g, 5).unwrap();
        assert_eq!(o.kind, PathKind::Overbridge);
        assert_eq!(o.len(), 7);
        assert_eq!(o.vertices, ids(&[0, 6, 7, 8, 9, 10, 3]));
        assert_eq!(find_degree2_overbridge(&cycle(4), 1), None);
        let k4 = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(find_degree2_overbridge(&k4, 1), None);
    }

    #[test]
    fn cycle_hanging_on_one_vertex_is_not_an_overbridge() {
        // 0 has degree 4: a triangle-free pendant cycle 0-1-2-3-4-0 plus 0-5, 0-6.
        let g = MultiGraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (0, 6)]);
        assert_eq!(find_degree2_overbridge(&g, 1), None);
    }

    #[test]
    fn mcs_detects_chordality() {
        assert!(is_chordal(&diamond()));
        assert!(!is_chordal(&cycle(4)));
        assert!(!is_chordal(&cycle(6)));
    }
}
