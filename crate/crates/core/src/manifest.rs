//! Versioned JSON manifests — the stable on-disk format for every artifact
//! the toolkit reads or writes.
//!
//! Canonical rendering sorts object keys and prints floats in shortest
//! round-trip form, so identical artifacts serialize byte-identically.

use serde::{Deserialize, Serialize};

use crate::embedding::{MinorEmbedding, Violation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hardware::{triad_chopped, triad_virtual, ChopMode, HardwareGraph};
use crate::ising::IsingInstance;
use crate::reduction::{EmbeddedIsing, ReductionReport};
use crate::solve::GroundStateResult;
use crate::weight::weight_to_f64;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: String,
    #[serde(flatten)]
    pub artifact: Artifact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "artifact_kind", content = "payload", rename_all = "snake_case")]
pub enum Artifact {
    Graph(Graph),
    Ising(IsingInstance),
    Hardware(Box<HardwareGraph>),
    Embedding(EmbeddingDoc),
    EmbeddedIsing(Box<EmbeddedIsing>),
    Report(ReportDoc),
}

/// How an embedding manifest names its host hardware: by generator
/// parameters when the host is a TRIAD family member, inline otherwise.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HardwareRef {
    TriadVirtual { n: usize },
    TriadChopped { n: usize, deg: usize, mode: ChopMode },
    Inline { hardware: Box<HardwareGraph> },
}

impl HardwareRef {
    pub fn realize(&self) -> Result<HardwareGraph> {
        match self {
            HardwareRef::TriadVirtual { n } => Ok(triad_virtual(*n)?.0),
            HardwareRef::TriadChopped { n, deg, mode } => Ok(triad_chopped(*n, *deg, *mode)?.0),
            HardwareRef::Inline { hardware } => Ok((**hardware).clone()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub hardware_ref: HardwareRef,
    #[serde(flatten)]
    pub embedding: MinorEmbedding,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "report_kind", rename_all = "snake_case")]
pub enum ReportDoc {
    GroundState {
        min_energy: f64,
        degeneracy: u64,
        canonical_argmin: Vec<i8>,
        exact: bool,
    },
    ReductionCheck {
        min_original: f64,
        min_embedded: f64,
        aligned_offset: f64,
        offset_identity: bool,
        chains_aligned: bool,
        broken_chains: Vec<usize>,
        unembed_attains_minimum: bool,
        ok: bool,
    },
    Verification {
        ok: bool,
        violations: Vec<String>,
    },
}

impl ReportDoc {
    pub fn ground_state(r: &GroundStateResult) -> Self {
        ReportDoc::GroundState {
            min_energy: weight_to_f64(&r.min_energy),
            degeneracy: r.degeneracy,
            canonical_argmin: r.canonical_argmin.spins().to_vec(),
            exact: r.exact,
        }
    }

    pub fn reduction_check(r: &ReductionReport) -> Self {
        ReportDoc::ReductionCheck {
            min_original: weight_to_f64(&r.original.min_energy),
            min_embedded: weight_to_f64(&r.embedded.min_energy),
            aligned_offset: weight_to_f64(&r.aligned_offset),
            offset_identity: r.offset_identity,
            chains_aligned: r.chains_aligned,
            broken_chains: r.broken_chains.clone(),
            unembed_attains_minimum: r.unembed_attains_minimum,
            ok: r.ok(),
        }
    }

    pub fn verification(violations: &[Violation]) -> Self {
        ReportDoc::Verification {
            ok: violations.is_empty(),
            violations: violations.iter().map(ToString::to_string).collect(),
        }
    }
}

impl Manifest {
    pub fn new(artifact: Artifact) -> Self {
        Self { format_version: FORMAT_VERSION.into(), artifact }
    }

    /// Sorted keys, shortest round-trip floats, trailing newline.
    pub fn to_canonical_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest = serde_json::from_str(text)?;
        if m.format_version != FORMAT_VERSION {
            return Err(Error::InvalidParameter(format!(
                "unsupported manifest format_version {:?}",
                m.format_version
            )));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use crate::ising::SpinAssignment;
    use crate::reduction::{embed_ising, ChainStrengthPolicy};
    use crate::solve::{solve_exhaustive, SolveOptions};
    use crate::weight::weight_from_int;

    fn reserialize(m: &Manifest) -> (String, String) {
        let first = m.to_canonical_json().unwrap();
        let parsed = Manifest::from_json(&first).unwrap();
        (first, parsed.to_canonical_json().unwrap())
    }

    #[test]
    fn graph_manifest_round_trips_byte_identically() {
        let m = Manifest::new(Artifact::Graph(complete_graph(4)));
        let (a, b) = reserialize(&m);
        assert_eq!(a, b);
        assert!(a.contains("\"artifact_kind\": \"graph\""));
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn ising_manifest_round_trips() {
        let inst =
            IsingInstance::from_f64(complete_graph(3), &[0.5, -1.0, 0.0], &[1.0, -2.0, 0.25])
                .unwrap();
        let m = Manifest::new(Artifact::Ising(inst.clone()));
        let (a, b) = reserialize(&m);
        assert_eq!(a, b);
        match Manifest::from_json(&a).unwrap().artifact {
            Artifact::Ising(back) => assert_eq!(back, inst),
            other => panic!("wrong kind: {other:?}"),
        }
    }

    #[test]
    fn hardware_and_embedding_manifests_round_trip() {
        let (hw, emb) = triad_virtual(4).unwrap();
        let m = Manifest::new(Artifact::Hardware(Box::new(hw.clone())));
        let (a, b) = reserialize(&m);
        assert_eq!(a, b);

        let doc =
            EmbeddingDoc { hardware_ref: HardwareRef::TriadVirtual { n: 4 }, embedding: emb };
        let m = Manifest::new(Artifact::Embedding(doc));
        let (a, b) = reserialize(&m);
        assert_eq!(a, b);
        // pinned schema keys inside the payload
        for key in ["logical_graph", "hardware_ref", "models", "tau"] {
            assert!(a.contains(&format!("\"{key}\"")), "missing {key}");
        }
    }

    #[test]
    fn embedded_ising_manifest_round_trips_exactly() {
        let (hw, emb) = triad_virtual(3).unwrap();
        let inst = IsingInstance::from_ints(complete_graph(3), &[1, 0, -2], &[1, -1, 2]).unwrap();
        let embedded =
            embed_ising(&inst, &emb, hw.graph(), ChainStrengthPolicy::AutoSufficient).unwrap();
        let m = Manifest::new(Artifact::EmbeddedIsing(Box::new(embedded.clone())));
        let (a, b) = reserialize(&m);
        assert_eq!(a, b);
        match Manifest::from_json(&a).unwrap().artifact {
            Artifact::EmbeddedIsing(back) => assert_eq!(*back, embedded),
            other => panic!("wrong kind: {other:?}"),
        }
    }

    #[test]
    fn report_manifests_round_trip() {
        let inst = IsingInstance::from_ints(complete_graph(2), &[0, 0], &[1]).unwrap();
        let solved = solve_exhaustive(&inst, &SolveOptions::default()).unwrap();
        let m = Manifest::new(Artifact::Report(ReportDoc::ground_state(&solved)));
        let (a, b) = reserialize(&m);
        assert_eq!(a, b);
        assert!(a.contains("\"report_kind\": \"ground_state\""));

        let m = Manifest::new(Artifact::Report(ReportDoc::verification(&[])));
        let (a, b) = reserialize(&m);
        assert_eq!(a, b);
        assert!(a.contains("\"ok\": true"));
    }

    #[test]
    fn hardware_refs_realize_to_their_generators() {
        let by_ref = HardwareRef::TriadVirtual { n: 5 }.realize().unwrap();
        assert_eq!(by_ref, triad_virtual(5).unwrap().0);
        let by_ref = HardwareRef::TriadChopped { n: 8, deg: 4, mode: ChopMode::Optimal }
            .realize()
            .unwrap();
        assert_eq!(by_ref, triad_chopped(8, 4, ChopMode::Optimal).unwrap().0);
        let inline =
            HardwareRef::Inline { hardware: Box::new(by_ref.clone()) }.realize().unwrap();
        assert_eq!(inline, by_ref);
    }

    #[test]
    fn chop_mode_wire_form() {
        assert_eq!(serde_json::to_string(&ChopMode::Optimal).unwrap(), "\"optimal\"");
        assert_eq!(serde_json::to_string(&ChopMode::Uniform(4)).unwrap(), "{\"uniform\":4}");
        let back: ChopMode = serde_json::from_str("{\"uniform\":4}").unwrap();
        assert_eq!(back, ChopMode::Uniform(4));
    }

    #[test]
    fn unknown_format_version_is_rejected() {
        let m = Manifest::new(Artifact::Graph(complete_graph(2)));
        let text = m.to_canonical_json().unwrap().replace("\"1\"", "\"99\"");
        assert!(Manifest::from_json(&text).is_err());
    }

    #[test]
    fn invalid_payloads_fail_to_parse() {
        // self-loop must be rejected during deserialization, not later
        let text = r#"{
            "format_version": "1",
            "artifact_kind": "graph",
            "payload": { "vertex_count": 2, "edges": [[0, 0]] }
        }"#;
        assert!(Manifest::from_json(text).is_err());
        // spins outside ±1
        let text = r#"{
            "format_version": "1",
            "artifact_kind": "ising",
            "payload": {
                "graph": { "vertex_count": 1, "edges": [] },
                "h": [0.0],
                "j": []
            }
        }"#;
        let m = Manifest::from_json(text).unwrap();
        match m.artifact {
            Artifact::Ising(inst) => {
                assert_eq!(inst.biases(), &[weight_from_int(0)]);
                assert!(serde_json::from_str::<SpinAssignment>("[1, 2]").is_err());
            }
            other => panic!("wrong kind: {other:?}"),
        }
    }
}
