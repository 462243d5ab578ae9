use std::fmt;

use crate::graph::{GraphError, MultiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// Not a reduction: records a (re)computed modulator.
    Modulator,
    Multiplicity,
    IsolatedComponent,
    PendantDedup,
    Tail,
    Overbridge,
    CliqueExpansion,
    UnmarkedCliqueVertex,
    FarLeaf,
    PendantTree,
    Flower,
    TreeExpansion,
}

impl RuleId {
    /// The reduction rules in the order the engine tries them.
    pub const PRIORITY: [RuleId; 11] = [
        RuleId::Multiplicity,
        RuleId::IsolatedComponent,
        RuleId::PendantDedup,
        RuleId::Tail,
        RuleId::Overbridge,
        RuleId::CliqueExpansion,
        RuleId::UnmarkedCliqueVertex,
        RuleId::FarLeaf,
        RuleId::PendantTree,
        RuleId::Flower,
        RuleId::TreeExpansion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Modulator => "modulator",
            RuleId::Multiplicity => "rr_multiplicity",
            RuleId::IsolatedComponent => "rr_isolated_component",
            RuleId::PendantDedup => "rr_pendant_dedup",
            RuleId::Tail => "rr_tail",
            RuleId::Overbridge => "rr_overbridge",
            RuleId::CliqueExpansion => "rr_clique_expansion",
            RuleId::UnmarkedCliqueVertex => "rr_unmarked_clique_vertex",
            RuleId::FarLeaf => "rr_far_leaf",
            RuleId::PendantTree => "rr_pendant_tree",
            RuleId::Flower => "rr_flower",
            RuleId::TreeExpansion => "rr_tree_expansion",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        std::iter::once(RuleId::Modulator)
            .chain(RuleId::PRIORITY)
            .find(|r| r.name() == name)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A primitive graph change. `SetMultiplicity(u, u, m)` sets a loop count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edit {
    DeleteVertex(VertexId),
    SetMultiplicity(VertexId, VertexId, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub rule: RuleId,
    pub k_before: i64,
    pub k_after: i64,
    /// Named vertex lists describing what the rule looked at.
    pub params: Vec<(String, Vec<VertexId>)>,
    pub edits: Vec<Edit>,
}

impl TraceRecord {
    pub fn new(rule: RuleId, k: i64) -> Self {
        Self {
            rule,
            k_before: k,
            k_after: k,
            params: Vec::new(),
            edits: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        self.params.push((name.to_string(), vertices.into_iter().collect()));
        self
    }

    pub fn delete(mut self, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        self.edits.extend(vertices.into_iter().map(Edit::DeleteVertex));
        self
    }

    pub fn set(mut self, u: VertexId, v: VertexId, m: u32) -> Self {
        self.edits.push(Edit::SetMultiplicity(u, v, m));
        self
    }

    pub fn spend(mut self, amount: usize) -> Self {
        self.k_after = self.k_before - amount as i64;
        self
    }

    pub fn deleted(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.edits.iter().filter_map(|e| match e {
            Edit::DeleteVertex(v) => Some(*v),
            Edit::SetMultiplicity(..) => None,
        })
    }
}

pub fn apply_edits(g: &mut MultiGraph, edits: &[Edit]) -> Result<(), GraphError> {
    for e in edits {
        match *e {
            Edit::DeleteVertex(v) => g.remove_vertex(v)?,
            Edit::SetMultiplicity(u, v, m) => g.set_multiplicity(u, v, m)?,
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KernelTrace {
    pub records: Vec<TraceRecord>,
}

impl KernelTrace {
    /// Re-applies every recorded edit to `input`, returning the final graph
    /// and budget.
    pub fn replay(&self, input: &MultiGraph, k: i64) -> Result<(MultiGraph, i64), GraphError> {
        let mut g = input.clone();
        let mut k = k;
        for r in &self.records {
            apply_edits(&mut g, &r.edits)?;
            k = r.k_after;
        }
        Ok((g, k))
    }

    /// Rules fired, modulator records excluded.
    pub fn rules_fired(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.rule != RuleId::Modulator)
            .count()
    }
}
