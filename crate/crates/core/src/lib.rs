//! Kernelization for Cliques-or-Trees Vertex Deletion: delete at most `k`
//! vertices so that the remaining graph is simple and every connected
//! component is a clique or a tree.
//!
//! The pipeline computes an approximate deletion set `S`, then applies a
//! fixed sequence of reduction rules until none fires, producing an
//! equivalent instance whose size is bounded in `|S|` and `k`.

pub mod expansion;
pub mod generate;
pub mod graph;
pub mod kernel;
pub mod obstructions;
pub mod solvers;

pub use graph::{Instance, MultiGraph, VertexId, VertexSet};
pub use kernel::{kernelize, KernelResult, Kernelization};
