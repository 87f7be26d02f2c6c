//! Ising instances and exact energy evaluation.
//!
//! An instance assigns a bias `h_i` to every vertex and a coupling `J_uv`
//! to every edge of its graph; the energy of a spin assignment `s` is
//! `sum_i h_i s_i + sum_uv J_uv s_u s_v`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weight::{weight_from_f64, weight_from_int, weight_to_f64, ExactSum, Weight};

/// Weights are exact rationals internally but cross the serialization
/// boundary as reals (shortest round-trip decimals).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawIsing", try_from = "RawIsing")]
pub struct IsingInstance {
    graph: Graph,
    /// Bias per vertex, indexed by vertex label.
    h: Vec<Weight>,
    /// Coupling per edge, aligned with `graph.edges()` order.
    j: Vec<Weight>,
}

impl IsingInstance {
    pub fn new(graph: Graph, h: Vec<Weight>, j: Vec<Weight>) -> Result<Self> {
        if h.len() != graph.vertex_count() {
            return Err(Error::DomainMismatch(format!(
                "{} biases for {} vertices",
                h.len(),
                graph.vertex_count()
            )));
        }
        if j.len() != graph.edge_count() {
            return Err(Error::DomainMismatch(format!(
                "{} couplings for {} edges",
                j.len(),
                graph.edge_count()
            )));
        }
        Ok(Self { graph, h, j })
    }

    pub fn from_f64(graph: Graph, h: &[f64], j: &[f64]) -> Result<Self> {
        let h = h.iter().map(|&v| weight_from_f64(v)).collect::<Result<_>>()?;
        let j = j.iter().map(|&v| weight_from_f64(v)).collect::<Result<_>>()?;
        Self::new(graph, h, j)
    }

    pub fn from_ints(graph: Graph, h: &[i64], j: &[i64]) -> Result<Self> {
        let h = h.iter().map(|&v| weight_from_int(v)).collect();
        let j = j.iter().map(|&v| weight_from_int(v)).collect();
        Self::new(graph, h, j)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn biases(&self) -> &[Weight] {
        &self.h
    }

    pub fn couplings(&self) -> &[Weight] {
        &self.j
    }

    pub fn coupling(&self, u: usize, v: usize) -> Option<&Weight> {
        self.graph.edge_index(u, v).map(|i| &self.j[i])
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.h.iter().chain(self.j.iter())
    }
}

#[derive(Serialize, Deserialize)]
struct RawIsing {
    graph: Graph,
    h: Vec<f64>,
    j: Vec<f64>,
}

impl From<IsingInstance> for RawIsing {
    fn from(inst: IsingInstance) -> Self {
        RawIsing {
            h: inst.h.iter().map(weight_to_f64).collect(),
            j: inst.j.iter().map(weight_to_f64).collect(),
            graph: inst.graph,
        }
    }
}

impl TryFrom<RawIsing> for IsingInstance {
    type Error = Error;

    fn try_from(raw: RawIsing) -> Result<Self> {
        IsingInstance::from_f64(raw.graph, &raw.h, &raw.j)
    }
}

/// A spin per vertex, each `-1` or `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<i8>", try_from = "Vec<i8>")]
pub struct SpinAssignment {
    spins: Vec<i8>,
}

impl From<SpinAssignment> for Vec<i8> {
    fn from(s: SpinAssignment) -> Self {
        s.spins
    }
}

impl TryFrom<Vec<i8>> for SpinAssignment {
    type Error = Error;

    fn try_from(spins: Vec<i8>) -> Result<Self> {
        SpinAssignment::new(spins)
    }
}

impl SpinAssignment {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = spins.iter().find(|s| **s != -1 && **s != 1) {
            return Err(Error::InvalidParameter(format!("spin value {bad} is not -1 or +1")));
        }
        Ok(Self { spins })
    }

    /// Spins from a bitmask: bit `v` set means spin `+1` on vertex `v`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        let spins = (0..len)
            .map(|v| if mask >> v & 1 == 1 { 1 } else { -1 })
            .collect();
        Self { spins }
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn get(&self, v: usize) -> i8 {
        self.spins[v]
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn flipped(&self) -> Self {
        Self {
            spins: self.spins.iter().map(|s| -s).collect(),
        }
    }
}

/// Exact energy of `s` under `inst`.
pub fn energy(inst: &IsingInstance, s: &SpinAssignment) -> Result<Weight> {
    if s.len() != inst.graph().vertex_count() {
        return Err(Error::DomainMismatch(format!(
            "assignment covers {} spins but the instance has {} vertices",
            s.len(),
            inst.graph().vertex_count()
        )));
    }
    let mut acc = ExactSum::zero();
    for (v, h) in inst.biases().iter().enumerate() {
        acc.add_scaled(h, s.get(v) as i64)?;
    }
    for (&(u, v), j) in inst.graph().edges().iter().zip(inst.couplings()) {
        acc.add_scaled(j, (s.get(u) * s.get(v)) as i64)?;
    }
    acc.into_weight()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn w(v: i64) -> Weight {
        weight_from_int(v)
    }

    #[test]
    fn single_vertex_bias() {
        let inst = IsingInstance::from_ints(complete_graph(1), &[1], &[]).unwrap();
        let s = SpinAssignment::new(vec![1]).unwrap();
        assert_eq!(energy(&inst, &s).unwrap(), w(1));
    }

    #[test]
    fn antiferromagnetic_pair() {
        let inst = IsingInstance::from_ints(complete_graph(2), &[0, 0], &[1]).unwrap();
        let s = SpinAssignment::new(vec![1, -1]).unwrap();
        assert_eq!(energy(&inst, &s).unwrap(), w(-1));
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let inst = IsingInstance::from_ints(complete_graph(2), &[0, 0], &[1]).unwrap();
        let s = SpinAssignment::new(vec![1]).unwrap();
        assert!(matches!(energy(&inst, &s), Err(Error::DomainMismatch(_))));
    }

    /// Straight-line re-evaluation, written independently of `energy`.
    fn energy_oracle(n: usize, h: &[i64], couplings: &[((usize, usize), i64)], spins: &[i8]) -> i64 {
        let mut e = 0i64;
        for i in 0..n {
            e += h[i] * spins[i] as i64;
        }
        for &((u, v), j) in couplings {
            e += j * (spins[u] as i64) * (spins[v] as i64);
        }
        e
    }

    #[test]
    fn random_k4_matches_independent_summation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = complete_graph(4);
        for _ in 0..50 {
            let h: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
            let j: Vec<i64> = (0..6).map(|_| rng.gen_range(-2..=2)).collect();
            let inst = IsingInstance::from_ints(g.clone(), &h, &j).unwrap();
            let mask: u64 = rng.gen_range(0..16);
            let s = SpinAssignment::from_mask(mask, 4);
            let pairs: Vec<((usize, usize), i64)> = g
                .edges()
                .iter()
                .copied()
                .zip(j.iter().copied())
                .collect();
            let expect = energy_oracle(4, &h, &pairs, s.spins());
            assert_eq!(energy(&inst, &s).unwrap(), w(expect));
        }
    }

    proptest! {
        /// With h = 0 the energy is invariant under flipping every spin.
        #[test]
        fn spin_flip_symmetry(mask in 0u64..64, j in proptest::collection::vec(-3i64..=3, 3)) {
            let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
            let inst = IsingInstance::from_ints(g, &[0, 0, 0], &j).unwrap();
            let s = SpinAssignment::from_mask(mask & 7, 3);
            prop_assert_eq!(energy(&inst, &s).unwrap(), energy(&inst, &s.flipped()).unwrap());
        }

        /// Energy of a disjoint union is the sum of component energies.
        #[test]
        fn disjoint_union_is_additive(
            mask in 0u64..256,
            ja in -3i64..=3,
            jb in -3i64..=3,
            h in proptest::collection::vec(-3i64..=3, 4),
        ) {
            // components: edge {0,1} and edge {2,3}
            let union = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
            let inst = IsingInstance::from_ints(union, &h, &[ja, jb]).unwrap();
            let s = SpinAssignment::from_mask(mask & 15, 4);

            let left = IsingInstance::from_ints(
                complete_graph(2), &h[..2], &[ja]).unwrap();
            let right = IsingInstance::from_ints(
                complete_graph(2), &h[2..], &[jb]).unwrap();
            let sl = SpinAssignment::new(s.spins()[..2].to_vec()).unwrap();
            let sr = SpinAssignment::new(s.spins()[2..].to_vec()).unwrap();

            let total = energy(&inst, &s).unwrap();
            let parts = energy(&left, &sl).unwrap() + energy(&right, &sr).unwrap();
            prop_assert_eq!(total, parts);
        }
    }
}
