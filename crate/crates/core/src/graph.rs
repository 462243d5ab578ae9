//! Undirected multigraphs with stable vertex identities, plus the solution
//! checker that defines what a valid cliques-or-trees deletion set is.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Opaque vertex identifier. Identifiers are handed out monotonically and a
/// deleted identifier is never handed out again by the same graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("vertex set is not a connected component")]
    NotAComponent,
}

/// Undirected multigraph. Edge multiplicities and self-loop counts are stored
/// explicitly; an absent pair has multiplicity zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    adj: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
    loops: BTreeMap<VertexId, u32>,
    next_id: u32,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph on `0..n` from an edge list; repeated pairs accumulate
    /// multiplicity and `(u, u)` adds a self-loop.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))
                .expect("edge endpoint out of range");
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.adj.insert(id, BTreeMap::new());
        id
    }

    /// Inserts a vertex with a caller-chosen identifier. Later calls to
    /// [`MultiGraph::add_vertex`] never collide with it.
    pub fn insert_vertex(&mut self, id: VertexId) -> Result<(), GraphError> {
        if self.adj.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        self.adj.insert(id, BTreeMap::new());
        self.next_id = self.next_id.max(id.0 + 1);
        Ok(())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Distinct non-loop pairs `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.adj.iter().flat_map(|(&u, nbrs)| {
            nbrs.iter()
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &m)| (u, v, m))
        })
    }

    /// Vertices with at least one self-loop, with their loop counts.
    pub fn loops(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.loops.iter().map(|(&v, &m)| (v, m))
    }

    /// Number of distinct adjacent pairs (loops excluded).
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Sum of all edge multiplicities, self-loops included.
    pub fn total_multiplicity(&self) -> u64 {
        self.edges().map(|(_, _, m)| m as u64).sum::<u64>()
            + self.loops.values().map(|&m| m as u64).sum::<u64>()
    }

    /// Multiplicity of the pair; for `u == v` this is the self-loop count.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        if u == v {
            return self.loops.get(&u).copied().unwrap_or(0);
        }
        self.adj
            .get(&u)
            .and_then(|n| n.get(&v))
            .copied()
            .unwrap_or(0)
    }

    pub fn loop_count(&self, v: VertexId) -> u32 {
        self.loops.get(&v).copied().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.multiplicity(u, v) > 0
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let m = self.multiplicity(u, v);
        self.set_multiplicity(u, v, m + 1)
    }

    /// Sets the multiplicity of `uv` (self-loop count when `u == v`); zero
    /// removes the edge.
    pub fn set_multiplicity(&mut self, u: VertexId, v: VertexId, m: u32) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            if m == 0 {
                self.loops.remove(&u);
            } else {
                self.loops.insert(u, m);
            }
            return Ok(());
        }
        for (a, b) in [(u, v), (v, u)] {
            let nbrs = self.adj.get_mut(&a).expect("checked");
            if m == 0 {
                nbrs.remove(&b);
            } else {
                nbrs.insert(b, m);
            }
        }
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let nbrs = self.adj.remove(&v).ok_or(GraphError::UnknownVertex(v))?;
        for u in nbrs.keys() {
            if let Some(n) = self.adj.get_mut(u) {
                n.remove(&v);
            }
        }
        self.loops.remove(&v);
        Ok(())
    }

    /// Neighbors of `v` (self excluded) with multiplicities, in id order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(|n| n.iter().map(|(&u, &m)| (u, m)))
    }

    pub fn neighbor_ids(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.neighbors(v).map(|(u, _)| u)
    }

    /// Number of distinct neighbors, ignoring multiplicity and loops.
    pub fn neighbor_count(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    /// Degree counting multiplicities; a self-loop contributes two.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check(v)?;
        let d: u64 = self.neighbors(v).map(|(_, m)| m as u64).sum();
        Ok((d + 2 * self.loop_count(v) as u64) as usize)
    }

    /// No self-loops and no pair with multiplicity above one.
    pub fn is_simple(&self) -> bool {
        self.loops.is_empty() && self.edges().all(|(_, _, m)| m == 1)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.edges()
            .map(|(_, _, m)| m)
            .chain(self.loops.values().copied())
            .max()
            .unwrap_or(0)
    }

    /// Induced subgraph on `keep`; vertex identities are preserved.
    pub fn induced(&self, keep: &VertexSet) -> MultiGraph {
        let mut adj = BTreeMap::new();
        for &v in keep {
            if let Some(nbrs) = self.adj.get(&v) {
                let kept = nbrs
                    .iter()
                    .filter(|(u, _)| keep.contains(u))
                    .map(|(&u, &m)| (u, m))
                    .collect();
                adj.insert(v, kept);
            }
        }
        let loops = self
            .loops
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, &m)| (v, m))
            .collect();
        MultiGraph {
            adj,
            loops,
            next_id: self.next_id,
        }
    }

    /// `self - remove`, identities preserved.
    pub fn without(&self, remove: &VertexSet) -> MultiGraph {
        let keep = self.vertices().filter(|v| !remove.contains(v)).collect();
        self.induced(&keep)
    }
}

/// A multigraph together with a non-negative deletion budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: MultiGraph,
    pub k: usize,
}

impl Instance {
    pub fn new(graph: MultiGraph, k: usize) -> Self {
        Self { graph, k }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Clique,
    Tree,
    Neither,
}

/// Degree of `v` with multiplicities taken into account.
pub fn degree(g: &MultiGraph, v: VertexId) -> Result<usize, GraphError> {
    g.degree(v)
}

/// Vertex sets of the connected components, ordered by smallest member.
pub fn connected_components(g: &MultiGraph) -> Vec<VertexSet> {
    components_within(g, &g.vertex_set())
}

/// Components of `g[within]`.
pub fn components_within(g: &MultiGraph, within: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for &start in within {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut queue = VecDeque::from([start]);
        comp.insert(start);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbor_ids(u) {
                if within.contains(&w) && seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Classifies a connected component. K1 and K2 are reported as trees.
pub fn classify_component(g: &MultiGraph, comp: &VertexSet) -> Result<ComponentKind, GraphError> {
    let Some(&first) = comp.iter().next() else {
        return Err(GraphError::NotAComponent);
    };
    for &v in comp {
        if !g.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        if g.neighbor_ids(v).any(|u| !comp.contains(&u)) {
            return Err(GraphError::NotAComponent);
        }
    }
    let reached = components_within(g, comp);
    if reached.len() != 1 || !reached[0].contains(&first) {
        return Err(GraphError::NotAComponent);
    }
    Ok(classify_unchecked(g, comp))
}

/// Classifies `g[comp]`, assuming it is connected. Edges leaving `comp` are
/// ignored, so this also classifies components of induced subgraphs.
pub(crate) fn classify_unchecked(g: &MultiGraph, comp: &VertexSet) -> ComponentKind {
    let n = comp.len();
    let mut pairs = 0usize;
    for &v in comp {
        if g.loop_count(v) > 0 {
            return ComponentKind::Neither;
        }
        for (u, m) in g.neighbors(v).filter(|(u, _)| comp.contains(u)) {
            if m > 1 {
                return ComponentKind::Neither;
            }
            if v < u {
                pairs += 1;
            }
        }
    }
    if pairs + 1 == n {
        ComponentKind::Tree
    } else if pairs == n * (n - 1) / 2 {
        ComponentKind::Clique
    } else {
        ComponentKind::Neither
    }
}

/// True iff every component of `g` is a clique or a tree and `g` is simple.
pub fn is_clique_or_tree_graph(g: &MultiGraph) -> bool {
    connected_components(g)
        .iter()
        .all(|c| classify_unchecked(g, c) != ComponentKind::Neither)
}

/// Whether deleting `x` (with `|x| <= k`) leaves a simple graph whose
/// components are all cliques or trees.
pub fn is_solution(g: &MultiGraph, x: &VertexSet, k: usize) -> bool {
    x.len() <= k && is_clique_or_tree_graph(&g.without(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn set(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    fn c4() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn paw() -> MultiGraph {
        // triangle 0-1-2, pendant 3 on 0
        MultiGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)])
    }

    #[test]
    fn degree_examples() {
        let g = MultiGraph::with_vertices(1);
        assert_eq!(degree(&g, v(0)), Ok(0));
        let tri = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(degree(&tri, v(1)), Ok(2));
        let double = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]);
        assert_eq!(degree(&double, v(0)), Ok(2));
        let looped = MultiGraph::from_edges(1, &[(0, 0)]);
        assert_eq!(degree(&looped, v(0)), Ok(2));
        assert_eq!(degree(&tri, v(9)), Err(GraphError::UnknownVertex(v(9))));
    }

    #[test]
    fn components_examples() {
        assert!(connected_components(&MultiGraph::new()).is_empty());
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let sizes: Vec<_> = connected_components(&g).iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 2]);
        let iso = MultiGraph::with_vertices(5);
        assert_eq!(connected_components(&iso).len(), 5);
    }

    #[test]
    fn classify_examples() {
        let k3 = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(classify_component(&k3, &set(&[0, 1, 2])), Ok(ComponentKind::Clique));
        let p4 = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(classify_component(&p4, &set(&[0, 1, 2, 3])), Ok(ComponentKind::Tree));
        assert_eq!(
            classify_component(&paw(), &set(&[0, 1, 2, 3])),
            Ok(ComponentKind::Neither)
        );
        let k2 = MultiGraph::from_edges(2, &[(0, 1)]);
        assert_eq!(classify_component(&k2, &set(&[0, 1])), Ok(ComponentKind::Tree));
        let k1 = MultiGraph::with_vertices(1);
        assert_eq!(classify_component(&k1, &set(&[0])), Ok(ComponentKind::Tree));
        assert_eq!(
            classify_component(&p4, &set(&[0, 1])),
            Err(GraphError::NotAComponent)
        );
        let double = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]);
        assert_eq!(classify_component(&double, &set(&[0, 1])), Ok(ComponentKind::Neither));
    }

    #[test]
    fn is_solution_examples() {
        assert!(is_solution(&c4(), &set(&[2]), 1));
        assert!(!is_solution(&c4(), &set(&[]), 0));
        assert!(!is_solution(&paw(), &set(&[]), 0));
        assert!(is_solution(&paw(), &set(&[3]), 1));
        assert!(!is_solution(&paw(), &set(&[3]), 0));
    }

    #[test]
    fn deleted_ids_are_not_reused() {
        let mut g = MultiGraph::with_vertices(3);
        g.remove_vertex(v(2)).unwrap();
        assert_eq!(g.add_vertex(), v(3));
    }

    #[test]
    fn multiplicity_is_symmetric() {
        let mut g = MultiGraph::with_vertices(2);
        g.set_multiplicity(v(0), v(1), 3).unwrap();
        assert_eq!(g.multiplicity(v(1), v(0)), 3);
        assert_eq!(g.total_multiplicity(), 3);
        g.set_multiplicity(v(1), v(0), 0).unwrap();
        assert!(!g.has_edge(v(0), v(1)));
    }
}
