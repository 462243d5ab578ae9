//! The reduction engine: computes a modulator, applies the rules to a
//! fixpoint and reports the kernel together with a replayable trace.

pub mod bounds;
pub mod invariants;
pub mod marking;
pub mod rules;
pub mod trace;

use thiserror::Error;

use crate::graph::{
    classify_unchecked, components_within, ComponentKind, GraphError, Instance, MultiGraph,
    VertexSet,
};
use crate::solvers::{approx_deletion_set, APPROX_FACTOR};
use bounds::{kernel_bound, BoundReport};
use trace::{apply_edits, KernelTrace, RuleId, TraceRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("graph edit failed: {0}")]
    Graph(#[from] GraphError),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// Deliberate faults for mutation testing of the verification harness.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Faults {
    /// Budget-spending rules keep `k` unchanged.
    pub keep_budget: bool,
    /// The tail rule also deletes the tail's anchor, without paying for it.
    pub drop_tail_anchor: bool,
}

#[derive(Clone, Debug)]
pub struct KernelState {
    pub graph: MultiGraph,
    pub k: i64,
    pub s: VertexSet,
    /// Vertices of clique components of `G - S` with at least three vertices.
    pub v1: VertexSet,
    /// The other vertices outside `S`; `G[v2]` is a forest.
    pub v2: VertexSet,
    pub trace: KernelTrace,
    #[doc(hidden)]
    pub faults: Faults,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Applied(RuleId),
    Fixpoint,
    /// The instance was recognised as a no-instance.
    Rejected(String),
}

impl KernelState {
    /// Starts from `inst` with a freshly computed modulator.
    pub fn new(inst: &Instance) -> Self {
        let s = approx_deletion_set(&inst.graph).s;
        let k = inst.k as i64;
        let mut st = Self::with_modulator(inst.graph.clone(), k, s)
            .expect("approximate modulator is valid");
        st.trace
            .records
            .push(TraceRecord::new(RuleId::Modulator, k).param("s", st.s.iter().copied()));
        st
    }

    /// Starts from a caller-supplied modulator, which must leave only clique
    /// and tree components.
    pub fn with_modulator(graph: MultiGraph, k: i64, s: VertexSet) -> Result<Self, KernelError> {
        let mut st = Self {
            graph,
            k,
            s,
            v1: VertexSet::new(),
            v2: VertexSet::new(),
            trace: KernelTrace::default(),
            faults: Faults::default(),
        };
        if !st.repartition() {
            return Err(KernelError::Internal("modulator leaves an obstruction".into()));
        }
        Ok(st)
    }

    pub fn outside_s(&self) -> VertexSet {
        self.graph.vertices().filter(|v| !self.s.contains(v)).collect()
    }

    /// Recomputes `v1`/`v2`; false if `G - S` is not a cliques-or-trees graph.
    fn repartition(&mut self) -> bool {
        self.v1.clear();
        self.v2.clear();
        let mut ok = true;
        for comp in components_within(&self.graph, &self.outside_s()) {
            match classify_unchecked(&self.graph, &comp) {
                ComponentKind::Clique if comp.len() >= 3 => self.v1.extend(comp),
                ComponentKind::Neither => {
                    ok = false;
                    self.v2.extend(comp);
                }
                _ => self.v2.extend(comp),
            }
        }
        ok
    }

    pub fn clique_components(&self) -> Vec<VertexSet> {
        components_within(&self.graph, &self.v1)
    }

    pub fn tree_components(&self) -> Vec<VertexSet> {
        components_within(&self.graph, &self.v2)
    }

    /// What `rule` would do in the current state.
    pub fn propose(&self, rule: RuleId) -> rules::RuleOutcome {
        let mut rec = rules::propose(self, rule)?;
        if let Some(r) = rec.as_mut() {
            if r.edits.is_empty() {
                return Err(KernelError::Internal(format!("{rule} proposed no edits")));
            }
            if self.faults.keep_budget {
                r.k_after = r.k_before;
            }
            if self.faults.drop_tail_anchor && rule == RuleId::Tail {
                let anchor = r.params[0].1[0];
                r.edits.push(trace::Edit::DeleteVertex(anchor));
            }
        }
        Ok(rec)
    }

    /// Applies a record produced by [`KernelState::propose`].
    pub fn apply(&mut self, rec: TraceRecord) -> Result<(), KernelError> {
        apply_edits(&mut self.graph, &rec.edits)?;
        for v in rec.deleted() {
            self.s.remove(&v);
        }
        self.k = rec.k_after;
        self.trace.records.push(rec);
        self.repartition();
        Ok(())
    }

    /// A copy of the state after `rule`, or `None` if it does not apply.
    pub fn fire(&self, rule: RuleId) -> Result<Option<KernelState>, KernelError> {
        let Some(rec) = self.propose(rule)? else {
            return Ok(None);
        };
        let mut next = self.clone();
        next.apply(rec)?;
        Ok(Some(next))
    }

    /// Applies the first applicable rule in priority order, then restores
    /// the modulator invariants.
    pub fn step(&mut self) -> Result<Step, KernelError> {
        for rule in RuleId::PRIORITY {
            if let Some(rec) = self.propose(rule)? {
                self.apply(rec)?;
                return Ok(self.after_rule(rule));
            }
        }
        Ok(Step::Fixpoint)
    }

    fn modulator_too_large(&self) -> bool {
        self.s.len() as i64 > APPROX_FACTOR as i64 * self.k
    }

    fn after_rule(&mut self, rule: RuleId) -> Step {
        if self.k < 0 {
            return Step::Rejected("budget exhausted".into());
        }
        let valid = self.modulator_is_valid();
        if !valid || self.modulator_too_large() {
            self.s = approx_deletion_set(&self.graph).s;
            self.repartition();
            self.trace.records.push(
                TraceRecord::new(RuleId::Modulator, self.k).param("s", self.s.iter().copied()),
            );
            if self.modulator_too_large() {
                return Step::Rejected(format!(
                    "modulator of size {} exceeds {}k",
                    self.s.len(),
                    APPROX_FACTOR
                ));
            }
        }
        Step::Applied(rule)
    }

    fn modulator_is_valid(&self) -> bool {
        components_within(&self.graph, &self.outside_s())
            .iter()
            .all(|c| classify_unchecked(&self.graph, c) != ComponentKind::Neither)
    }

    pub fn bound_report(&self) -> BoundReport {
        let k = self.k.max(0) as usize;
        BoundReport {
            k,
            s: self.s.len(),
            clique_components: self.clique_components().len(),
            v1: self.v1.len(),
            v2: self.v2.len(),
            total: self.graph.vertex_count(),
            bound: kernel_bound(k, self.s.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub instance: Instance,
    pub s: VertexSet,
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub bounds: BoundReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelResult {
    Kernel(Kernel),
    NoInstance { reason: String },
}

impl KernelResult {
    /// The instance to hand on: the kernel, or the canonical no-instance.
    pub fn instance(&self) -> Instance {
        match self {
            KernelResult::Kernel(k) => k.instance.clone(),
            KernelResult::NoInstance { .. } => canonical_no_instance(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernelization {
    pub result: KernelResult,
    pub trace: KernelTrace,
}

/// A 4-cycle with budget zero.
pub fn canonical_no_instance() -> Instance {
    Instance::new(MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]), 0)
}

pub fn kernelize(inst: &Instance) -> Result<Kernelization, KernelError> {
    kernelize_with(inst, Faults::default())
}

#[doc(hidden)]
pub fn kernelize_with(inst: &Instance, faults: Faults) -> Result<Kernelization, KernelError> {
    let mut st = KernelState::new(inst);
    st.faults = faults;
    let mut rejection = st
        .modulator_too_large()
        .then(|| format!("modulator of size {} exceeds {}k", st.s.len(), APPROX_FACTOR));
    while rejection.is_none() {
        match st.step()? {
            Step::Applied(_) => {}
            Step::Fixpoint => break,
            Step::Rejected(reason) => rejection = Some(reason),
        }
    }
    let result = match rejection {
        Some(reason) => KernelResult::NoInstance { reason },
        None => KernelResult::Kernel(Kernel {
            instance: Instance::new(st.graph.clone(), st.k as usize),
            bounds: st.bound_report(),
            s: st.s.clone(),
            v1: st.v1.clone(),
            v2: st.v2.clone(),
        }),
    };
    Ok(Kernelization {
        result,
        trace: st.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    fn run(edges: &[(u32, u32)], n: usize, k: usize) -> Kernelization {
        kernelize(&Instance::new(MultiGraph::from_edges(n, edges), k)).unwrap()
    }

    #[test]
    fn valid_graph_with_zero_budget_empties() {
        let out = run(&[(0, 1), (1, 2), (0, 2), (3, 4)], 5, 0);
        let KernelResult::Kernel(k) = out.result else { panic!("expected kernel") };
        assert!(k.instance.graph.is_empty());
    }

    #[test]
    fn c4_with_zero_budget_is_rejected() {
        let out = run(&[(0, 1), (1, 2), (2, 3), (3, 0)], 4, 0);
        assert!(matches!(out.result, KernelResult::NoInstance { .. }));
        assert_eq!(out.result.instance(), canonical_no_instance());
    }

    #[test]
    fn triple_edge_is_capped() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        let st = KernelState::with_modulator(g, 1, [VertexId(0)].into()).unwrap();
        let next = st.fire(RuleId::Multiplicity).unwrap().unwrap();
        assert_eq!(next.graph.multiplicity(VertexId(0), VertexId(1)), 2);
        let simple = KernelState::with_modulator(MultiGraph::from_edges(2, &[(0, 1)]), 1, VertexSet::new()).unwrap();
        assert!(simple.fire(RuleId::Multiplicity).unwrap().is_none());
    }

    #[test]
    fn isolated_component_is_removed() {
        // s = 0 with pendant 1; triangle 2,3,4 elsewhere
        let g = MultiGraph::from_edges(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]);
        let st = KernelState::with_modulator(g, 1, [VertexId(0)].into()).unwrap();
        let next = st.fire(RuleId::IsolatedComponent).unwrap().unwrap();
        assert_eq!(next.graph.vertex_count(), 2);
    }

    #[test]
    fn pendant_dedup_leaves_one_leaf() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let mut st = KernelState::with_modulator(g, 0, VertexSet::new()).unwrap();
        while let Some(next) = st.fire(RuleId::PendantDedup).unwrap() {
            st = next;
        }
        assert_eq!(st.graph.vertex_count(), 2);
        // a path with three edges: its ends hang off distinct vertices
        let path = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let st = KernelState::with_modulator(path, 0, VertexSet::new()).unwrap();
        assert!(st.fire(RuleId::PendantDedup).unwrap().is_none());
    }

    #[test]
    fn tail_is_truncated() {
        // triangle 0,1,2 and path 2-3-4-5-6-7
        let g = MultiGraph::from_edges(8, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]);
        let st = KernelState::with_modulator(g, 1, [VertexId(2)].into()).unwrap();
        let next = st.fire(RuleId::Tail).unwrap().unwrap();
        assert_eq!(next.graph.vertex_set(), (0..4).map(VertexId).collect());
    }

    #[test]
    fn overbridge_is_shortened() {
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 6)];
        for i in 6..10 {
            edges.push((i, i + 1));
        }
        edges.push((10, 3));
        let g = MultiGraph::from_edges(11, &edges);
        let st = KernelState::with_modulator(g, 2, [VertexId(0), VertexId(3)].into()).unwrap();
        let next = st.fire(RuleId::Overbridge).unwrap().unwrap();
        assert_eq!(next.graph.vertex_count(), 8);
        assert!(next.graph.has_edge(VertexId(6), VertexId(10)));
        assert!(st.fire(RuleId::Overbridge).unwrap().unwrap().fire(RuleId::Overbridge).unwrap().is_none());
    }

    #[test]
    fn clique_expansion_deletes_shared_vertex() {
        // s = 0 adjacent to triangles 1,2,3 and 4,5,6
        let g = MultiGraph::from_edges(7, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (0, 1), (0, 4)]);
        let st = KernelState::with_modulator(g, 1, [VertexId(0)].into()).unwrap();
        let next = st.fire(RuleId::CliqueExpansion).unwrap().unwrap();
        assert!(!next.graph.contains(VertexId(0)));
        assert_eq!(next.k, 0);
    }

    #[test]
    fn far_leaf_and_pendant_tree() {
        // s = 0; path 1-2-3 with only 1 adjacent to s, and 4 also adjacent to s, 3
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 1)]);
        let st = KernelState::with_modulator(g, 1, [VertexId(0)].into()).unwrap();
        let next = st.fire(RuleId::FarLeaf).unwrap().unwrap();
        assert!(!next.graph.contains(VertexId(3)));
        // tree 1..=6 attached to s by a single edge
        let g = MultiGraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6)]);
        let st = KernelState::with_modulator(g, 1, [VertexId(0)].into()).unwrap();
        let next = st.fire(RuleId::PendantTree).unwrap().unwrap();
        assert_eq!(next.graph.vertex_count(), 2);
    }

    #[test]
    fn flower_with_zero_budget_rejects() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
        let mut st = KernelState::with_modulator(g, 0, [VertexId(0)].into()).unwrap();
        let rec = st.propose(RuleId::Flower).unwrap().unwrap();
        st.apply(rec).unwrap();
        assert_eq!(st.k, -1);
        assert_eq!(st.after_rule(RuleId::Flower), Step::Rejected("budget exhausted".into()));
    }

    #[test]
    fn trace_replay_matches_output() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4), (2, 4)];
        let inst = Instance::new(MultiGraph::from_edges(9, &edges), 3);
        let out = kernelize(&inst).unwrap();
        let KernelResult::Kernel(kernel) = &out.result else { panic!("expected kernel") };
        let (g, k) = out.trace.replay(&inst.graph, 3).unwrap();
        assert_eq!(g, kernel.instance.graph);
        assert_eq!(k, kernel.instance.k as i64);
    }
}
