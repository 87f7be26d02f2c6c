//! Reduction through minor-embedding: turn an Ising instance on a logical
//! graph into an embedded instance on hardware, and map solutions back.
//!
//! Each logical bias is split equally (exact rationals) over its model's
//! qubits; each logical coupling rides its tau coupler; every model-internal
//! coupler carries the model's ferromagnetic chain strength F_i.  With every
//! chain uniform, the chain couplers contribute exactly `aligned_offset`,
//! so ground energies satisfy E_emb = E + aligned_offset whenever F is
//! strong enough — which the `auto_sufficient` policy guarantees.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::embedding::{ensure_verified, MinorEmbedding, Violation};
use crate::error::{Error, Result};
use crate::graph::{norm_edge, Graph};
use crate::ising::{energy, IsingInstance, SpinAssignment};
use crate::solve::{solve_exhaustive, GroundStateResult, SolveOptions};
use crate::weight::{weight_from_f64, weight_to_f64, ExactSum, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStrengthPolicy {
    /// F_i = -(1 + |h_i| + sum of |J_ij| over incident edges): cutting a
    /// chain always costs more than any energy the cut could recover.
    AutoSufficient,
    /// One fixed (negative) strength for every chain.
    Explicit(Weight),
}

/// The embedded Ising instance H_emb with its bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawEmbedded", try_from = "RawEmbedded")]
pub struct EmbeddedIsing {
    instance: IsingInstance,
    /// F_i per logical vertex.
    chain_strength: Vec<Weight>,
    /// Hardware coupler -> logical vertex whose chain it belongs to.
    chain_couplers: BTreeMap<(usize, usize), usize>,
    embedding: MinorEmbedding,
    /// Chain couplers' total energy under any chain-aligned assignment.
    aligned_offset: Weight,
}

impl EmbeddedIsing {
    pub fn instance(&self) -> &IsingInstance {
        &self.instance
    }

    pub fn chain_strength(&self) -> &[Weight] {
        &self.chain_strength
    }

    pub fn chain_couplers(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.chain_couplers
    }

    pub fn embedding(&self) -> &MinorEmbedding {
        &self.embedding
    }

    pub fn aligned_offset(&self) -> Weight {
        self.aligned_offset
    }

}

/// Wire form: weights cross the boundary as reals.
#[derive(Serialize, Deserialize)]
struct RawEmbedded {
    instance: IsingInstance,
    chain_strength: Vec<f64>,
    chain_couplers: Vec<ChainCouplerEntry>,
    embedding: MinorEmbedding,
    aligned_offset: f64,
}

#[derive(Serialize, Deserialize)]
struct ChainCouplerEntry {
    coupler: (usize, usize),
    vertex: usize,
}

impl From<EmbeddedIsing> for RawEmbedded {
    fn from(e: EmbeddedIsing) -> Self {
        RawEmbedded {
            chain_strength: e.chain_strength.iter().map(weight_to_f64).collect(),
            chain_couplers: e
                .chain_couplers
                .iter()
                .map(|(&coupler, &vertex)| ChainCouplerEntry { coupler, vertex })
                .collect(),
            aligned_offset: weight_to_f64(&e.aligned_offset),
            instance: e.instance,
            embedding: e.embedding,
        }
    }
}

impl TryFrom<RawEmbedded> for EmbeddedIsing {
    type Error = Error;

    fn try_from(raw: RawEmbedded) -> Result<Self> {
        let n = raw.embedding.models().len();
        if raw.chain_strength.len() != n {
            return Err(Error::DomainMismatch(format!(
                "{} chain strengths for {n} vertex models",
                raw.chain_strength.len()
            )));
        }
        let chain_strength = raw
            .chain_strength
            .iter()
            .map(|&f| weight_from_f64(f))
            .collect::<Result<Vec<_>>>()?;
        if let Some(f) = chain_strength.iter().find(|&&f| f >= Weight::from_integer(0)) {
            return Err(Error::InvalidParameter(format!(
                "chain strength {f} is not negative"
            )));
        }
        let mut chain_couplers = BTreeMap::new();
        for entry in raw.chain_couplers {
            let (u, v) = entry.coupler;
            if raw.instance.graph().edge_index(u, v).is_none() {
                return Err(Error::InvalidParameter(format!(
                    "chain coupler ({u}, {v}) is not a coupler of the embedded instance"
                )));
            }
            if entry.vertex >= n {
                return Err(Error::InvalidParameter(format!(
                    "chain coupler ({u}, {v}) names logical vertex {} of {n}",
                    entry.vertex
                )));
            }
            if chain_couplers.insert(norm_edge(u, v), entry.vertex).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate chain coupler ({u}, {v})"
                )));
            }
        }
        Ok(EmbeddedIsing {
            instance: raw.instance,
            chain_strength,
            chain_couplers,
            embedding: raw.embedding,
            aligned_offset: weight_from_f64(raw.aligned_offset)?,
        })
    }
}

/// Build the embedded instance for `inst` through `emb` on `hardware`.
///
/// The instance keeps every hardware qubit as a vertex (uncovered qubits get
/// zero bias) but its graph keeps only the couplers that carry weight:
/// chain couplers and tau couplers.
pub fn embed_ising(
    inst: &IsingInstance,
    emb: &MinorEmbedding,
    hardware: &Graph,
    policy: ChainStrengthPolicy,
) -> Result<EmbeddedIsing> {
    ensure_verified(emb, hardware)?;
    if inst.graph() != emb.logical_graph() {
        return Err(Error::DomainMismatch(
            "instance graph differs from the embedding's logical graph".into(),
        ));
    }
    let n = inst.graph().vertex_count();
    let chain_strength: Vec<Weight> = match policy {
        ChainStrengthPolicy::Explicit(f) => {
            if f >= Weight::from_integer(0) {
                return Err(Error::InvalidParameter(
                    "explicit chain strength must be negative (ferromagnetic)".into(),
                ));
            }
            vec![f; n]
        }
        ChainStrengthPolicy::AutoSufficient => {
            let mut margin: Vec<Weight> = inst
                .biases()
                .iter()
                .map(|h| Weight::from_integer(1) + h.abs())
                .collect();
            for (&(a, b), j) in inst.graph().edges().iter().zip(inst.couplings()) {
                margin[a] += j.abs();
                margin[b] += j.abs();
            }
            margin.into_iter().map(|m| -m).collect()
        }
    };

    let nq = hardware.vertex_count();
    let mut h_hw = vec![Weight::from_integer(0); nq];
    for (v, model) in emb.models().iter().enumerate() {
        let share = inst.biases()[v] / Weight::from_integer(model.len() as i64);
        for &q in model {
            h_hw[q] = share;
        }
    }

    let mut couplings: BTreeMap<(usize, usize), Weight> = BTreeMap::new();
    let mut chain_couplers = BTreeMap::new();
    for (v, model) in emb.models().iter().enumerate() {
        for (u, w) in hardware.induced_edges(model) {
            let e = norm_edge(u, w);
            couplings.insert(e, chain_strength[v]);
            chain_couplers.insert(e, v);
        }
    }
    for (&(a, b), j) in inst.graph().edges().iter().zip(inst.couplings()) {
        let coupler = emb.tau_of(a, b).expect("verified embedding covers every edge");
        couplings.insert(coupler, *j);
    }

    let graph = Graph::new(nq, couplings.keys().copied())?;
    debug_assert!(graph.edges().iter().eq(couplings.keys()));
    let j_hw: Vec<Weight> = couplings.into_values().collect();
    let instance = IsingInstance::new(graph, h_hw, j_hw)?;

    let mut acc = ExactSum::zero();
    for &v in chain_couplers.values() {
        acc.add(&chain_strength[v])?;
    }
    let aligned_offset = acc.into_weight()?;

    Ok(EmbeddedIsing { instance, chain_strength, chain_couplers, embedding: emb.clone(), aligned_offset })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnembedMode {
    /// Error on any non-uniform chain.
    Strict,
    /// Per-model majority vote; ties resolve to -1.
    Majority,
}

/// Map a hardware assignment back to the logical graph.
pub fn unembed(s_hw: &SpinAssignment, emb: &MinorEmbedding, mode: UnembedMode) -> Result<SpinAssignment> {
    let mut spins = Vec::with_capacity(emb.models().len());
    for (v, model) in emb.models().iter().enumerate() {
        if model.is_empty() {
            return Err(Error::InvalidEmbedding(vec![Violation::EmptyModel { vertex: v }]));
        }
        if let Some(&q) = model.iter().find(|&&q| q >= s_hw.len()) {
            return Err(Error::DomainMismatch(format!(
                "model qubit {q} is outside the hardware assignment of {} spins",
                s_hw.len()
            )));
        }
        match mode {
            UnembedMode::Strict => {
                let first = s_hw.get(model[0]);
                if model.iter().any(|&q| s_hw.get(q) != first) {
                    return Err(Error::BrokenChain { vertex: v });
                }
                spins.push(first);
            }
            UnembedMode::Majority => {
                let up = model.iter().filter(|&&q| s_hw.get(q) == 1).count();
                spins.push(if 2 * up > model.len() { 1 } else { -1 });
            }
        }
    }
    SpinAssignment::new(spins)
}

/// Outcome of the dual-oracle reduction check.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub original: GroundStateResult,
    pub embedded: GroundStateResult,
    pub aligned_offset: Weight,
    /// min(embedded) = min(original) + aligned_offset, exactly.
    pub offset_identity: bool,
    /// Every chain is uniform in the embedded canonical argmin.
    pub chains_aligned: bool,
    /// Logical vertices whose chains are broken in the embedded argmin.
    pub broken_chains: Vec<usize>,
    /// Strict unembedding of the embedded argmin attains min(original).
    pub unembed_attains_minimum: bool,
}

impl ReductionReport {
    pub fn ok(&self) -> bool {
        self.offset_identity && self.chains_aligned && self.unembed_attains_minimum
    }
}

/// Solve both sides exhaustively and compare them through the offset
/// identity.  The two solves run concurrently; results are deterministic.
pub fn reduction_check(
    inst: &IsingInstance,
    emb: &MinorEmbedding,
    hardware: &Graph,
    policy: ChainStrengthPolicy,
    opts: &SolveOptions,
) -> Result<ReductionReport> {
    let embedded = embed_ising(inst, emb, hardware, policy)?;
    let (original, solved_emb) = rayon::join(
        || solve_exhaustive(inst, opts),
        || solve_exhaustive(embedded.instance(), opts),
    );
    let (original, solved_emb) = (original?, solved_emb?);

    let offset_identity = solved_emb.min_energy == original.min_energy + embedded.aligned_offset();
    let mut broken_chains = Vec::new();
    for (v, model) in emb.models().iter().enumerate() {
        let first = solved_emb.canonical_argmin.get(model[0]);
        if model.iter().any(|&q| solved_emb.canonical_argmin.get(q) != first) {
            broken_chains.push(v);
        }
    }
    let chains_aligned = broken_chains.is_empty();
    let unembed_attains_minimum = if chains_aligned {
        let s = unembed(&solved_emb.canonical_argmin, emb, UnembedMode::Strict)?;
        energy(inst, &s)? == original.min_energy
    } else {
        false
    };

    Ok(ReductionReport {
        original,
        embedded: solved_emb,
        aligned_offset: embedded.aligned_offset(),
        offset_identity,
        chains_aligned,
        broken_chains,
        unembed_attains_minimum,
    })
}
