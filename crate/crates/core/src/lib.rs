//! Minor-embedding toolkit for quantum-annealing hardware built around the
//! TRIAD family: triangular complete-graph hosts with geometric layouts.
//!
//! The crate covers the full reduction path for an Ising instance on an
//! arbitrary graph G:
//!
//! * [`hardware`] — generators for TRIAD hardware (virtual and chopped),
//!   K_c/K_{c,c} decomposition of complete graphs, and the physical
//!   constraint checker (degree and coupler length).
//! * [`embedding`] — minor-embedding representation, verification against
//!   the three definitional conditions, classification, construction via
//!   the complete-graph route, and graph contraction.
//! * [`reduction`] — the embedded Hamiltonian H_emb with chain-strength
//!   policies, unembedding, and the dual-oracle reduction check.
//! * [`solve`] — exhaustive ground-state oracle (Gray-code sweep, exact
//!   integer path, deterministic across worker counts).
//! * [`manifest`] / [`export`] — stable JSON manifests and DOT/SVG views.
//!
//! Weights are exact rationals in memory ([`weight::Weight`]) and reals at
//! the JSON boundary.

pub mod decompose;
pub mod embedding;
pub mod error;
pub mod export;
pub mod graph;
pub mod hardware;
pub mod ising;
pub mod manifest;
pub mod reduction;
pub mod solve;
pub mod weight;

pub use crate::decompose::{decompose_complete, BlockKind, CompleteDecomposition, DecompositionBlock};
pub use crate::embedding::{
    classify_embedding, contract, embed_via_complete, embedded_subgraph, ensure_verified,
    verify_embedding, EmbeddingClass, MinorEmbedding, Violation,
};
pub use crate::error::{Error, Result};
pub use crate::export::{export_manifest, ExportFormat};
pub use crate::graph::{complete_graph, Graph};
pub use crate::hardware::{
    check_physical, triad_chopped, triad_virtual, ChopMode, ConstraintReport, CouplerKind,
    HardwareGraph, PhysicalViolation, QubitMeta,
};
pub use crate::ising::{energy, IsingInstance, SpinAssignment};
pub use crate::manifest::{Artifact, EmbeddingDoc, HardwareRef, Manifest, ReportDoc};
pub use crate::reduction::{
    embed_ising, reduction_check, unembed, ChainStrengthPolicy, EmbeddedIsing, ReductionReport,
    UnembedMode,
};
pub use crate::solve::{solve_exhaustive, GroundStateResult, SolveOptions, DEFAULT_SOLVE_CAP};
pub use crate::weight::{weight_from_f64, weight_from_int, weight_to_f64, Weight};
