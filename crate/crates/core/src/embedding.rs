//! Minor-embeddings: representation, verification, classification,
//! construction via the complete-graph route, and edge contraction.
//!
//! An embedding maps each logical vertex to a vertex model (a connected set
//! of hardware qubits) and each logical edge to a hardware coupler bridging
//! the two models.  Verification checks exactly those conditions and
//! reports every violation rather than stopping at the first.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{norm_edge, Graph};
use crate::hardware::{triad_chopped, ChopMode, HardwareGraph, QubitMeta};

/// A (candidate) minor-embedding of a logical graph into hardware.
///
/// Construction is permissive: nothing is checked until
/// [`verify_embedding`] runs, so broken embeddings can be represented —
/// that is what the verifier exists to detect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawEmbedding", try_from = "RawEmbedding")]
pub struct MinorEmbedding {
    logical: Graph,
    models: Vec<Vec<usize>>,
    tau: BTreeMap<(usize, usize), (usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TauEntry {
    edge: (usize, usize),
    coupler: (usize, usize),
}

/// Wire form: tau as a sorted list of edge/coupler records.
#[derive(Serialize, Deserialize)]
struct RawEmbedding {
    logical_graph: Graph,
    models: Vec<Vec<usize>>,
    tau: Vec<TauEntry>,
}

impl From<MinorEmbedding> for RawEmbedding {
    fn from(emb: MinorEmbedding) -> Self {
        let tau = emb
            .tau
            .into_iter()
            .map(|(edge, coupler)| TauEntry { edge, coupler })
            .collect();
        RawEmbedding { logical_graph: emb.logical, models: emb.models, tau }
    }
}

impl TryFrom<RawEmbedding> for MinorEmbedding {
    type Error = Error;

    fn try_from(raw: RawEmbedding) -> Result<Self> {
        let tau = raw.tau.into_iter().map(|t| (t.edge, t.coupler)).collect();
        Ok(MinorEmbedding::new(raw.logical_graph, raw.models, tau))
    }
}

impl MinorEmbedding {
    /// Assemble an embedding; tau keys and coupler pairs are normalized to
    /// `(min, max)` order.
    pub fn new(
        logical: Graph,
        models: Vec<Vec<usize>>,
        tau: BTreeMap<(usize, usize), (usize, usize)>,
    ) -> Self {
        let tau = tau
            .into_iter()
            .map(|((a, b), (u, v))| (norm_edge(a, b), norm_edge(u, v)))
            .collect();
        Self { logical, models, tau }
    }

    pub fn logical_graph(&self) -> &Graph {
        &self.logical
    }

    pub fn models(&self) -> &[Vec<usize>] {
        &self.models
    }

    pub fn model(&self, vertex: usize) -> &[usize] {
        &self.models[vertex]
    }

    pub fn tau(&self) -> &BTreeMap<(usize, usize), (usize, usize)> {
        &self.tau
    }

    pub fn tau_of(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        self.tau.get(&norm_edge(a, b)).copied()
    }

    /// Mutable access for constructing negative test cases.
    pub fn models_mut(&mut self) -> &mut Vec<Vec<usize>> {
        &mut self.models
    }

    pub fn tau_mut(&mut self) -> &mut BTreeMap<(usize, usize), (usize, usize)> {
        &mut self.tau
    }
}

/// One verification failure, naming the offending vertex/edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    ModelCount { got: usize, expected: usize },
    EmptyModel { vertex: usize },
    QubitOutOfRange { vertex: usize, qubit: usize },
    DuplicateQubit { vertex: usize, qubit: usize },
    OverlappingModels { vertex_a: usize, vertex_b: usize, qubit: usize },
    DisconnectedModel { vertex: usize },
    MissingTau { edge: (usize, usize) },
    UnknownEdge { edge: (usize, usize) },
    NotACoupler { edge: (usize, usize), coupler: (usize, usize) },
    TauDoesNotBridge { edge: (usize, usize), coupler: (usize, usize) },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ModelCount { got, expected } => {
                write!(f, "expected {expected} vertex models, found {got}")
            }
            Self::EmptyModel { vertex } => write!(f, "model for vertex {vertex} is empty"),
            Self::QubitOutOfRange { vertex, qubit } => {
                write!(f, "model for vertex {vertex} lists qubit {qubit}, which is not in the hardware")
            }
            Self::DuplicateQubit { vertex, qubit } => {
                write!(f, "model for vertex {vertex} lists qubit {qubit} more than once")
            }
            Self::OverlappingModels { vertex_a, vertex_b, qubit } => {
                write!(f, "models for vertices {vertex_a} and {vertex_b} overlap at qubit {qubit}")
            }
            Self::DisconnectedModel { vertex } => {
                write!(f, "model for vertex {vertex} is disconnected")
            }
            Self::MissingTau { edge: (a, b) } => {
                write!(f, "no coupler assigned to logical edge ({a}, {b})")
            }
            Self::UnknownEdge { edge: (a, b) } => {
                write!(f, "tau entry for ({a}, {b}), which is not a logical edge")
            }
            Self::NotACoupler { edge: (a, b), coupler: (u, v) } => {
                write!(f, "logical edge ({a}, {b}) maps to ({u}, {v}), which is not a hardware coupler")
            }
            Self::TauDoesNotBridge { edge: (a, b), coupler: (u, v) } => {
                write!(f, "coupler ({u}, {v}) does not bridge the models of logical edge ({a}, {b})")
            }
        }
    }
}

/// Check the three definitional conditions — disjoint models, connected
/// models, bridging tau couplers — plus referential sanity.  Returns every
/// violation found; an empty list means the embedding verifies.
pub fn verify_embedding(emb: &MinorEmbedding, hardware: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = emb.logical_graph().vertex_count();
    if emb.models().len() != n {
        out.push(Violation::ModelCount { got: emb.models().len(), expected: n });
        return out; // per-vertex checks would misattribute offenders
    }
    let nq = hardware.vertex_count();
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, model) in emb.models().iter().enumerate() {
        if model.is_empty() {
            out.push(Violation::EmptyModel { vertex: v });
            continue;
        }
        let mut seen = BTreeSet::new();
        let mut in_range = true;
        for &q in model {
            if q >= nq {
                out.push(Violation::QubitOutOfRange { vertex: v, qubit: q });
                in_range = false;
                continue;
            }
            if !seen.insert(q) {
                out.push(Violation::DuplicateQubit { vertex: v, qubit: q });
                continue;
            }
            match owner.get(&q) {
                Some(&prev) => {
                    out.push(Violation::OverlappingModels { vertex_a: prev, vertex_b: v, qubit: q })
                }
                None => {
                    owner.insert(q, v);
                }
            }
        }
        if in_range {
            let qubits: Vec<usize> = seen.into_iter().collect();
            if !hardware.is_connected_subset(&qubits) {
                out.push(Violation::DisconnectedModel { vertex: v });
            }
        }
    }
    for &(a, b) in emb.logical_graph().edges() {
        match emb.tau_of(a, b) {
            None => out.push(Violation::MissingTau { edge: (a, b) }),
            Some((u, v)) => {
                if !hardware.has_edge(u, v) {
                    out.push(Violation::NotACoupler { edge: (a, b), coupler: (u, v) });
                    continue;
                }
                let (ma, mb) = (emb.model(a), emb.model(b));
                let bridges = (ma.contains(&u) && mb.contains(&v)) || (ma.contains(&v) && mb.contains(&u));
                if !bridges {
                    out.push(Violation::TauDoesNotBridge { edge: (a, b), coupler: (u, v) });
                }
            }
        }
    }
    for &(a, b) in emb.tau().keys() {
        if !emb.logical_graph().has_edge(a, b) {
            out.push(Violation::UnknownEdge { edge: (a, b) });
        }
    }
    out
}

/// Like [`verify_embedding`] but folded into the crate's error type.
pub fn ensure_verified(emb: &MinorEmbedding, hardware: &Graph) -> Result<()> {
    let violations = verify_embedding(emb, hardware);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidEmbedding(violations))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingClass {
    /// Every model is a single qubit.
    Subgraph,
    /// Every model induces a path.
    TopologicalMinor,
    GeneralMinor,
}

impl std::fmt::Display for EmbeddingClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Subgraph => "subgraph",
            Self::TopologicalMinor => "topological_minor",
            Self::GeneralMinor => "general_minor",
        })
    }
}

/// Classify a verified embedding into the most specific of the three kinds.
pub fn classify_embedding(emb: &MinorEmbedding, hardware: &Graph) -> Result<EmbeddingClass> {
    ensure_verified(emb, hardware)?;
    if emb.models().iter().all(|m| m.len() == 1) {
        return Ok(EmbeddingClass::Subgraph);
    }
    let induces_path = |model: &Vec<usize>| {
        let induced = hardware.induced_edges(model);
        if induced.len() + 1 != model.len() {
            return false; // a connected model with extra edges has a cycle
        }
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for &(u, v) in &induced {
            *deg.entry(u).or_insert(0) += 1;
            *deg.entry(v).or_insert(0) += 1;
        }
        deg.values().all(|&d| d <= 2)
    };
    if emb.models().iter().all(induces_path) {
        Ok(EmbeddingClass::TopologicalMinor)
    } else {
        Ok(EmbeddingClass::GeneralMinor)
    }
}

/// Embed an arbitrary graph by building the chopped TRIAD host for K_n and
/// restricting the canonical embedding's tau to the edges of `g`.  The
/// hardware keeps its unused couplers; they simply carry no logical edge.
pub fn embed_via_complete(
    g: &Graph,
    deg: usize,
    mode: ChopMode,
) -> Result<(HardwareGraph, MinorEmbedding)> {
    if deg < 3 {
        return Err(Error::InvalidParameter(format!("degree bound must be >= 3, got {deg}")));
    }
    let n = g.vertex_count();
    if n < 2 {
        // Degenerate hosts: K_0 and K_1 need no couplers at all.
        let coords = vec![(0.0, 0.0); n];
        let meta = (0..n).map(|q| QubitMeta { chain: q, pos_lo: 1, pos_hi: 1 }).collect();
        let hw = HardwareGraph::new(Graph::new(n, Vec::new())?, coords, Some(deg), meta, Vec::new())?;
        let models = (0..n).map(|q| vec![q]).collect();
        return Ok((hw, MinorEmbedding::new(g.clone(), models, BTreeMap::new())));
    }
    let (hw, canonical) = triad_chopped(n, deg, mode)?;
    let tau = g
        .edges()
        .iter()
        .map(|&(a, b)| ((a, b), canonical.tau_of(a, b).expect("canonical tau covers K_n")))
        .collect();
    let emb = MinorEmbedding::new(g.clone(), canonical.models().to_vec(), tau);
    Ok((hw, emb))
}

/// Contract a partition of `graph` into its labeled minor: one vertex per
/// class, an edge wherever any coupler joins two classes.  Labels must be
/// dense (`0..k`) and every class must induce a connected subgraph.
pub fn contract(graph: &Graph, partition: &[usize]) -> Result<Graph> {
    if partition.len() != graph.vertex_count() {
        return Err(Error::DomainMismatch(format!(
            "partition labels {} vertices but the graph has {}",
            partition.len(),
            graph.vertex_count()
        )));
    }
    let k = partition.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &c) in partition.iter().enumerate() {
        classes[c].push(v);
    }
    for (c, members) in classes.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::InvalidParameter(format!("partition label {c} has no members")));
        }
        if !graph.is_connected_subset(members) {
            return Err(Error::InvalidParameter(format!("partition class {c} is disconnected")));
        }
    }
    let mut edges = BTreeSet::new();
    for &(u, v) in graph.edges() {
        let (a, b) = (partition[u], partition[v]);
        if a != b {
            edges.insert(norm_edge(a, b));
        }
    }
    Graph::new(k, edges)
}

/// The embedded subgraph G_emb: model qubits (relabeled densely, models
/// first-to-last), model-internal couplers, and tau couplers.  Also returns
/// the model partition, so `contract(&sub, &partition)` recovers the
/// logical graph.
pub fn embedded_subgraph(emb: &MinorEmbedding, hardware: &Graph) -> Result<(Graph, Vec<usize>)> {
    ensure_verified(emb, hardware)?;
    let mut relabel = BTreeMap::new();
    let mut partition = Vec::new();
    for (v, model) in emb.models().iter().enumerate() {
        for &q in model {
            relabel.insert(q, relabel.len());
            partition.push(v);
        }
    }
    let mut edges = BTreeSet::new();
    for model in emb.models() {
        for (u, v) in hardware.induced_edges(model) {
            edges.insert(norm_edge(relabel[&u], relabel[&v]));
        }
    }
    for &(u, v) in emb.tau().values() {
        edges.insert(norm_edge(relabel[&u], relabel[&v]));
    }
    Ok((Graph::new(partition.len(), edges)?, partition))
}
