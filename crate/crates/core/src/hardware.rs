//! TRIAD hardware-graph generators and the physical-constraint checker.
//!
//! The TRIAD family realizes K_n as a minor: one chain of n-1 "virtual"
//! qubits per logical vertex, every virtual qubit carrying exactly one
//! inter-chain coupler.  Chain i's positions 1..=i serve the smaller
//! partners (position k serves k-1) and positions i+1..=n-1 serve the
//! larger ones (position k serves k), so the logical edge {i,j} with i<j
//! becomes the coupler v[i,j]-v[j,i+1].
//!
//! Layout places each pair cell (i,j) on an integer grid: chain i's qubit
//! serving j sits at (j, i+0.25), chain j's at (j+0.25, i).  Every chain is
//! an L-shaped run (a column, a bend, a row), so coupler lengths stay below
//! 1.5 grid units no matter how large n grows.
//!
//! Chopping merges each chain's virtual qubits into contiguous segments so
//! the physical degree stays within a bound `deg`: interior segments hold
//! at most deg-2 positions, terminal segments deg-1, giving
//! max(1, ceil((n-3)/(deg-2))) physical qubits per chain.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embedding::MinorEmbedding;
use crate::error::{Error, Result};
use crate::graph::{complete_graph, norm_edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplerKind {
    IntraChain,
    InterChain,
}

/// Provenance of one physical qubit: which chain it belongs to and which
/// contiguous range of virtual positions (1-based) it absorbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitMeta {
    pub chain: usize,
    pub pos_lo: usize,
    pub pos_hi: usize,
}

/// A hardware graph: qubits with 2D coordinates, couplers with kinds, an
/// optional degree bound, and per-qubit chain provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHardware")]
pub struct HardwareGraph {
    graph: Graph,
    coords: Vec<(f64, f64)>,
    degree_bound: Option<usize>,
    qubit_meta: Vec<QubitMeta>,
    coupler_kind: Vec<CouplerKind>,
}

#[derive(Deserialize)]
struct RawHardware {
    graph: Graph,
    coords: Vec<(f64, f64)>,
    degree_bound: Option<usize>,
    qubit_meta: Vec<QubitMeta>,
    coupler_kind: Vec<CouplerKind>,
}

impl TryFrom<RawHardware> for HardwareGraph {
    type Error = Error;

    fn try_from(raw: RawHardware) -> Result<Self> {
        HardwareGraph::new(raw.graph, raw.coords, raw.degree_bound, raw.qubit_meta, raw.coupler_kind)
    }
}

impl HardwareGraph {
    pub fn new(
        graph: Graph,
        coords: Vec<(f64, f64)>,
        degree_bound: Option<usize>,
        qubit_meta: Vec<QubitMeta>,
        coupler_kind: Vec<CouplerKind>,
    ) -> Result<Self> {
        if coords.len() != graph.vertex_count() {
            return Err(Error::InvalidHardware(format!(
                "{} coordinates for {} qubits",
                coords.len(),
                graph.vertex_count()
            )));
        }
        if let Some((q, _)) = coords.iter().enumerate().find(|(_, c)| !c.0.is_finite() || !c.1.is_finite()) {
            return Err(Error::InvalidHardware(format!("non-finite coordinate on qubit {q}")));
        }
        if qubit_meta.len() != graph.vertex_count() {
            return Err(Error::InvalidHardware(format!(
                "{} metadata entries for {} qubits",
                qubit_meta.len(),
                graph.vertex_count()
            )));
        }
        if coupler_kind.len() != graph.edge_count() {
            return Err(Error::InvalidHardware(format!(
                "{} kind entries for {} couplers",
                coupler_kind.len(),
                graph.edge_count()
            )));
        }
        if degree_bound == Some(0) {
            return Err(Error::InvalidHardware("degree bound must be positive".into()));
        }
        Ok(Self { graph, coords, degree_bound, qubit_meta, coupler_kind })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coords(&self) -> &[(f64, f64)] {
        &self.coords
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.degree_bound
    }

    pub fn qubit_meta(&self) -> &[QubitMeta] {
        &self.qubit_meta
    }

    /// Kinds aligned with `graph().edges()` order.
    pub fn coupler_kind(&self) -> &[CouplerKind] {
        &self.coupler_kind
    }

    pub fn chain_count(&self) -> usize {
        self.qubit_meta.iter().map(|m| m.chain + 1).max().unwrap_or(0)
    }

    /// Euclidean length of the coupler at edge index `idx`.
    pub fn coupler_length(&self, idx: usize) -> f64 {
        let (u, v) = self.graph.edges()[idx];
        let (ux, uy) = self.coords[u];
        let (vx, vy) = self.coords[v];
        ((ux - vx).powi(2) + (uy - vy).powi(2)).sqrt()
    }

    /// Check the structural invariants: degree bound respected, each chain's
    /// position ranges tile 1..=n-1 contiguously, every chain induces a path,
    /// and coupler kinds agree with chain membership.
    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(Error::InvalidHardware(msg));
        if let Some(bound) = self.degree_bound {
            for (q, d) in self.graph.degrees().into_iter().enumerate() {
                if d > bound {
                    return err(format!("qubit {q} has degree {d}, exceeding bound {bound}"));
                }
            }
        }
        let n_chains = self.chain_count();
        let mut chains: Vec<Vec<usize>> = vec![Vec::new(); n_chains];
        for (q, m) in self.qubit_meta.iter().enumerate() {
            if m.pos_lo > m.pos_hi {
                return err(format!("qubit {q} has an empty position range"));
            }
            chains[m.chain].push(q);
        }
        // Every chain must tile the same position range 1..=per.
        let per = self.qubit_meta.iter().map(|m| m.pos_hi).max().unwrap_or(0);
        for (c, qubits) in chains.iter_mut().enumerate() {
            if qubits.is_empty() {
                return err(format!("chain {c} has no qubits"));
            }
            qubits.sort_by_key(|&q| self.qubit_meta[q].pos_lo);
            let mut next = 1;
            for &q in qubits.iter() {
                let m = &self.qubit_meta[q];
                if m.pos_lo != next {
                    return err(format!(
                        "chain {c}: expected a segment starting at position {next}, qubit {q} starts at {}",
                        m.pos_lo
                    ));
                }
                next = m.pos_hi + 1;
            }
            if next != per + 1 {
                return err(format!("chain {c} covers positions 1..{}, expected 1..{per}", next - 1));
            }
            for w in qubits.windows(2) {
                if !self.graph.has_edge(w[0], w[1]) {
                    return err(format!("chain {c}: segments {} and {} are not coupled", w[0], w[1]));
                }
            }
        }
        for (idx, &(u, v)) in self.graph.edges().iter().enumerate() {
            let (mu, mv) = (&self.qubit_meta[u], &self.qubit_meta[v]);
            let same_chain = mu.chain == mv.chain;
            match self.coupler_kind[idx] {
                CouplerKind::IntraChain => {
                    if !same_chain {
                        return err(format!("coupler ({u}, {v}) marked intra-chain but spans chains"));
                    }
                    if mu.pos_hi + 1 != mv.pos_lo && mv.pos_hi + 1 != mu.pos_lo {
                        return err(format!(
                            "coupler ({u}, {v}) joins non-adjacent segments of chain {}",
                            mu.chain
                        ));
                    }
                }
                CouplerKind::InterChain => {
                    if same_chain {
                        return err(format!("coupler ({u}, {v}) marked inter-chain inside chain {}", mu.chain));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Layout slot of chain `i`'s virtual qubit at position `k` (1-based):
/// positions up to `i` descend the column at x = i+0.25, later positions
/// run along the row at y = i+0.25.
fn virtual_slot(i: usize, k: usize) -> (f64, f64) {
    if k <= i {
        (i as f64 + 0.25, (k - 1) as f64)
    } else {
        (k as f64, i as f64 + 0.25)
    }
}

/// Build the virtual TRIAD graph for K_n: n chains of n-1 virtual qubits,
/// max degree 3, with its canonical minor-embedding of K_n.
pub fn triad_virtual(n: usize) -> Result<(HardwareGraph, MinorEmbedding)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("triad_virtual needs n >= 2, got {n}")));
    }
    let per = n - 1;
    let qid = |i: usize, k: usize| i * per + (k - 1);
    let mut edges = Vec::new();
    let mut kinds = BTreeMap::new();
    for i in 0..n {
        for k in 1..per {
            let e = (qid(i, k), qid(i, k + 1));
            edges.push(e);
            kinds.insert(e, CouplerKind::IntraChain);
        }
    }
    let mut tau = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let e = norm_edge(qid(i, j), qid(j, i + 1));
            edges.push(e);
            kinds.insert(e, CouplerKind::InterChain);
            tau.insert((i, j), e);
        }
    }
    let graph = Graph::new(n * per, edges)?;
    let coords = (0..n * per).map(|q| virtual_slot(q / per, q % per + 1)).collect();
    let meta = (0..n * per)
        .map(|q| QubitMeta { chain: q / per, pos_lo: q % per + 1, pos_hi: q % per + 1 })
        .collect();
    let kind_vec = graph.edges().iter().map(|e| kinds[e]).collect();
    let hw = HardwareGraph::new(graph, coords, Some(3), meta, kind_vec)?;
    let models = (0..n).map(|i| (1..=per).map(|k| qid(i, k)).collect()).collect();
    let emb = MinorEmbedding::new(complete_graph(n), models, tau);
    Ok((hw, emb))
}

/// How to merge virtual positions into physical qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChopMode {
    /// Fewest segments respecting the degree bound: terminal segments take
    /// up to deg-1 positions, interior segments up to deg-2.
    Optimal,
    /// Every segment takes exactly this many positions (the last may be
    /// shorter).  Needs c+2 <= deg when a chain splits at all.
    Uniform(usize),
}

/// Segment sizes for one chain of n-1 virtual positions.
fn segment_sizes(n: usize, deg: usize, mode: ChopMode) -> Result<Vec<usize>> {
    let per = n - 1;
    match mode {
        ChopMode::Optimal => {
            let s = if n <= 3 { 1 } else { (n - 3).div_ceil(deg - 2) };
            let base = per / s;
            let rem = per % s;
            let mut sizes = vec![base; s];
            // Distribute the remainder: last, then first, then interiors.
            let mut order = Vec::with_capacity(s);
            order.push(s - 1);
            if s >= 2 {
                order.push(0);
            }
            order.extend(1..s - 1);
            for t in order.into_iter().take(rem) {
                sizes[t] += 1;
            }
            Ok(sizes)
        }
        ChopMode::Uniform(c) => {
            if c < 1 {
                return Err(Error::InvalidParameter("uniform segment size must be >= 1".into()));
            }
            let s = per.div_ceil(c);
            if s > 1 && c + 2 > deg {
                return Err(Error::InvalidParameter(format!(
                    "uniform segments of {c} positions need degree {} but the bound is {deg}",
                    c + 2
                )));
            }
            if s == 1 && per > deg {
                return Err(Error::InvalidParameter(format!(
                    "a single segment of {per} positions exceeds the degree bound {deg}"
                )));
            }
            let mut sizes = vec![c; s];
            sizes[s - 1] = per - c * (s - 1);
            Ok(sizes)
        }
    }
}

/// Build the chopped TRIAD graph for K_n under degree bound `deg`, with its
/// canonical minor-embedding of K_n.  Physical qubit i*S + t is chain i's
/// t-th segment; its coordinate is the centroid of the merged virtual slots.
pub fn triad_chopped(n: usize, deg: usize, mode: ChopMode) -> Result<(HardwareGraph, MinorEmbedding)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("triad_chopped needs n >= 2, got {n}")));
    }
    if deg < 3 {
        return Err(Error::InvalidParameter(format!("degree bound must be >= 3, got {deg}")));
    }
    let sizes = segment_sizes(n, deg, mode)?;
    let s = sizes.len();
    let per = n - 1;
    let mut seg_of = vec![0usize; per + 1];
    let mut starts = vec![0usize; s];
    {
        let mut pos = 1;
        for (t, &sz) in sizes.iter().enumerate() {
            starts[t] = pos;
            for _ in 0..sz {
                seg_of[pos] = t;
                pos += 1;
            }
        }
    }
    let qid = |i: usize, t: usize| i * s + t;
    let mut edges = Vec::new();
    let mut kinds = BTreeMap::new();
    for i in 0..n {
        for t in 0..s - 1 {
            let e = (qid(i, t), qid(i, t + 1));
            edges.push(e);
            kinds.insert(e, CouplerKind::IntraChain);
        }
    }
    let mut tau = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let e = norm_edge(qid(i, seg_of[j]), qid(j, seg_of[i + 1]));
            edges.push(e);
            kinds.insert(e, CouplerKind::InterChain);
            tau.insert((i, j), e);
        }
    }
    let graph = Graph::new(n * s, edges)?;
    let coords = (0..n * s)
        .map(|q| {
            let (i, t) = (q / s, q % s);
            let (mut x, mut y) = (0.0, 0.0);
            for k in starts[t]..starts[t] + sizes[t] {
                let (sx, sy) = virtual_slot(i, k);
                x += sx;
                y += sy;
            }
            (x / sizes[t] as f64, y / sizes[t] as f64)
        })
        .collect();
    let meta = (0..n * s)
        .map(|q| {
            let (i, t) = (q / s, q % s);
            QubitMeta { chain: i, pos_lo: starts[t], pos_hi: starts[t] + sizes[t] - 1 }
        })
        .collect();
    let kind_vec = graph.edges().iter().map(|e| kinds[e]).collect();
    let hw = HardwareGraph::new(graph, coords, Some(deg), meta, kind_vec)?;
    let models = (0..n).map(|i| (0..s).map(|t| qid(i, t)).collect()).collect();
    let emb = MinorEmbedding::new(complete_graph(n), models, tau);
    Ok((hw, emb))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhysicalViolation {
    OverDegree { qubit: usize, degree: usize, bound: usize },
    LongCoupler { coupler: (usize, usize), length: f64, bound: f64 },
}

impl std::fmt::Display for PhysicalViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::OverDegree { qubit, degree, bound } => {
                write!(f, "qubit {qubit}: degree {degree} exceeds {bound}")
            }
            Self::LongCoupler { coupler: (u, v), length, bound } => {
                write!(f, "coupler ({u}, {v}): length {length} exceeds {bound}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub max_degree: usize,
    pub degree_ok: bool,
    pub max_edge_length: f64,
    pub length_ok: bool,
    pub violations: Vec<PhysicalViolation>,
}

/// Check `hw` against a degree bound and an edge-length bound (grid units).
pub fn check_physical(hw: &HardwareGraph, deg_max: usize, len_max: f64) -> ConstraintReport {
    let mut violations = Vec::new();
    let mut max_degree = 0;
    for (q, d) in hw.graph().degrees().into_iter().enumerate() {
        max_degree = max_degree.max(d);
        if d > deg_max {
            violations.push(PhysicalViolation::OverDegree { qubit: q, degree: d, bound: deg_max });
        }
    }
    let mut max_edge_length = 0.0f64;
    for (idx, &e) in hw.graph().edges().iter().enumerate() {
        let len = hw.coupler_length(idx);
        max_edge_length = max_edge_length.max(len);
        if len > len_max {
            violations.push(PhysicalViolation::LongCoupler { coupler: e, length: len, bound: len_max });
        }
    }
    ConstraintReport {
        max_degree,
        degree_ok: max_degree <= deg_max,
        max_edge_length,
        length_ok: max_edge_length <= len_max,
        violations,
    }
}
