//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the default harness so every criterion reports exactly one
//! line, in order, with a nonzero exit if any fail.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triad_core::manifest::{Artifact, EmbeddingDoc, HardwareRef, Manifest, ReportDoc};
use triad_core::{
    check_physical, complete_graph, decompose_complete, embed_ising, embed_via_complete,
    reduction_check, solve_exhaustive, triad_chopped, triad_virtual, verify_embedding,
    ChainStrengthPolicy, ChopMode, CouplerKind, Graph, HardwareGraph, IsingInstance,
    PhysicalViolation, SolveOptions, Violation, DEFAULT_SOLVE_CAP,
};

mod common;

static LAST_PANIC: Mutex<Option<String>> = Mutex::new(None);

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("1 (TRIAD structure)", c1_triad_structure),
        ("2 (chopping formula)", c2_chopping_formula),
        ("3 (qubit-count scaling)", c3_qubit_count_scaling),
        ("4 (decomposition)", c4_decomposition),
        ("5 (reduction correctness)", c5_reduction_correctness),
        ("6 (minor-universality)", c6_minor_universality),
        ("7 (physical constraints)", c7_physical_constraints),
        ("8 (verifier soundness)", c8_verifier_soundness),
        ("9 (determinism)", c9_determinism),
    ];
    std::panic::set_hook(Box::new(|info| {
        *LAST_PANIC.lock().unwrap() = Some(info.to_string());
    }));
    let mut failures = 0u32;
    for (name, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(_) => {
                failures += 1;
                let msg = LAST_PANIC
                    .lock()
                    .unwrap()
                    .take()
                    .unwrap_or_else(|| "panicked".into());
                println!("criterion {name}: FAIL — {msg}");
            }
        }
    }
    let _ = std::panic::take_hook();
    if failures > 0 {
        println!("{failures} of 9 acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}

fn chains_of(hw: &HardwareGraph) -> Vec<Vec<(usize, usize)>> {
    let mut chains = vec![Vec::new(); hw.chain_count()];
    for m in hw.qubit_meta() {
        chains[m.chain].push((m.pos_lo, m.pos_hi));
    }
    for spans in &mut chains {
        spans.sort_unstable();
    }
    chains
}

fn c1_triad_structure() {
    let start = Instant::now();
    let (hw8, _) = triad_virtual(8).unwrap();
    assert_eq!(hw8.graph().vertex_count(), 56);
    let chains = chains_of(&hw8);
    assert_eq!(chains.len(), 8);
    assert!(chains.iter().all(|c| c.len() == 7));
    let (hw3, _) = triad_virtual(3).unwrap();
    assert!(chains_of(&hw3).iter().all(|c| c.len() == 2));

    for n in 2..=64usize {
        let (hw, emb) = triad_virtual(n).unwrap();
        assert_eq!(hw.graph().vertex_count(), n * (n - 1), "qubits at n={n}");
        let intra = hw
            .coupler_kind()
            .iter()
            .filter(|k| **k == CouplerKind::IntraChain)
            .count();
        let inter = hw.coupler_kind().len() - intra;
        assert_eq!(intra, n * (n - 2), "intra couplers at n={n}");
        assert_eq!(inter, n * (n - 1) / 2, "inter couplers at n={n}");
        assert!(hw.graph().max_degree() <= 3, "degree at n={n}");
        assert_eq!(emb.logical_graph(), &complete_graph(n));
        assert!(
            verify_embedding(&emb, hw.graph()).is_empty(),
            "canonical embedding fails at n={n}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}, budget 1s");
}

fn c2_chopping_formula() {
    let start = Instant::now();
    let (hw, _) = triad_chopped(8, 6, ChopMode::Optimal).unwrap();
    for spans in chains_of(&hw) {
        let sizes: Vec<usize> = spans.iter().map(|(lo, hi)| hi - lo + 1).collect();
        assert_eq!(sizes, [3, 4], "chop sizes for n=8 deg=6");
    }

    for n in 4..=64usize {
        for deg in 3..=8usize {
            let (hw, emb) = triad_chopped(n, deg, ChopMode::Optimal).unwrap();
            let per_chain = (n - 3).div_ceil(deg - 2);
            let chains = chains_of(&hw);
            assert_eq!(chains.len(), n);
            assert!(
                chains.iter().all(|c| c.len() == per_chain),
                "per-chain count at n={n} deg={deg}"
            );
            assert!(hw.graph().max_degree() <= deg, "degree at n={n} deg={deg}");
            assert!(
                verify_embedding(&emb, hw.graph()).is_empty(),
                "embedding fails at n={n} deg={deg}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget 5s");
}

fn c3_qubit_count_scaling() {
    for n in 4..=64usize {
        for deg in 3..=8usize {
            let (hw, _) = triad_chopped(n, deg, ChopMode::Optimal).unwrap();
            let qubits = hw.graph().vertex_count();
            assert!(
                qubits * deg >= n * (n - 1),
                "qubits={qubits} below n(n-1)/deg at n={n} deg={deg}"
            );
        }
    }
}

fn c4_decomposition() {
    let d = decompose_complete(8, 4).unwrap();
    let blocks = d.blocks();
    assert_eq!(blocks.len(), 3);
    assert_eq!(blocks[0].left, vec![0, 1, 2, 3]);
    assert!(blocks[0].right.is_none());
    assert_eq!(blocks[1].left, vec![0, 1, 2, 3]);
    assert_eq!(blocks[1].right.as_deref(), Some(&[4, 5, 6, 7][..]));
    assert_eq!(blocks[2].left, vec![4, 5, 6, 7]);
    assert!(blocks[2].right.is_none());
    let counts: Vec<usize> = blocks.iter().map(|b| b.edge_count()).collect();
    assert_eq!(counts, [6, 16, 6]);
    assert_eq!(d.total_edges(), 28);

    for c in [2usize, 4] {
        for k in 0..=3u32 {
            let n = c << k;
            let d = decompose_complete(n, c).unwrap();
            assert!(d.is_edge_partition(), "partition fails at n={n} c={c}");
        }
    }
}

fn c5_reduction_correctness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = SolveOptions::default();
    for n in [3usize, 4, 5] {
        let g = complete_graph(n);
        let hosts = [
            triad_virtual(n).unwrap(),
            triad_chopped(n, 3, ChopMode::Optimal).unwrap(),
        ];
        for _ in 0..100 {
            let h: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let j: Vec<i64> = (0..g.edge_count()).map(|_| rng.gen_range(-2..=2)).collect();
            let inst = IsingInstance::from_ints(g.clone(), &h, &j).unwrap();
            for (hw, emb) in &hosts {
                let report = reduction_check(
                    &inst,
                    emb,
                    hw.graph(),
                    ChainStrengthPolicy::AutoSufficient,
                    &opts,
                )
                .unwrap();
                assert!(report.original.exact && report.embedded.exact, "inexact arithmetic");
                assert!(report.offset_identity, "offset identity: n={n} h={h:?} j={j:?}");
                assert!(report.chains_aligned, "broken chains: n={n} h={h:?} j={j:?}");
                assert!(
                    report.unembed_attains_minimum,
                    "unembed misses minimum: n={n} h={h:?} j={j:?}"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget 60s");
}

fn c6_minor_universality() {
    for (n, expected) in [1usize, 1, 2, 4, 11, 34, 156].into_iter().enumerate() {
        let reps = common::nonisomorphic_graphs(n);
        assert_eq!(reps.len(), expected, "class count at n={n}");
        for g in reps {
            let (hw, emb) = embed_via_complete(&g, 6, ChopMode::Optimal).unwrap();
            let violations = verify_embedding(&emb, hw.graph());
            assert!(
                violations.is_empty(),
                "graph {:?} on {n} vertices: {violations:?}",
                g.edges()
            );
        }
    }
}

fn c7_physical_constraints() {
    for n in 2..=64usize {
        let (hw, _) = triad_virtual(n).unwrap();
        let report = check_physical(&hw, 3, 1.5);
        assert!(
            report.degree_ok && report.length_ok,
            "virtual n={n}: {:?}",
            report.violations
        );
    }
    for n in 4..=64usize {
        for deg in 3..=8usize {
            let (hw, _) = triad_chopped(n, deg, ChopMode::Optimal).unwrap();
            let report = check_physical(&hw, deg, 1.5 * (deg - 1) as f64);
            assert!(
                report.degree_ok && report.length_ok,
                "chopped n={n} deg={deg}: {:?}",
                report.violations
            );
        }
    }

    // planted over-degree: join two interior (degree-3) qubits
    let (hw, _) = triad_virtual(4).unwrap();
    let mut edges = hw.graph().edges().to_vec();
    edges.push((1, 10));
    let mut kinds = hw.coupler_kind().to_vec();
    kinds.push(CouplerKind::InterChain);
    let bad = HardwareGraph::new(
        Graph::new(12, edges).unwrap(),
        hw.coords().to_vec(),
        None,
        hw.qubit_meta().to_vec(),
        kinds,
    )
    .unwrap();
    let report = check_physical(&bad, 3, 100.0);
    assert!(!report.degree_ok);
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, PhysicalViolation::OverDegree { qubit: 1 | 10, .. })));

    // planted long coupler: move one qubit far away
    let mut coords = hw.coords().to_vec();
    coords[5] = (50.0, 50.0);
    let bad = HardwareGraph::new(
        hw.graph().clone(),
        coords,
        hw.degree_bound(),
        hw.qubit_meta().to_vec(),
        hw.coupler_kind().to_vec(),
    )
    .unwrap();
    let report = check_physical(&bad, 3, 1.5);
    assert!(!report.length_ok);
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, PhysicalViolation::LongCoupler { .. })));
}

fn c8_verifier_soundness() {
    let (hw, base) = triad_virtual(5).unwrap();
    let hardware = hw.graph();
    // chain i occupies qubits 4i..4i+3, positions 1..4
    let q = |chain: usize, pos: usize| chain * 4 + pos - 1;

    // condition 1: every model induces a connected subgraph
    let mut emb = base.clone();
    emb.models_mut()[0].remove(1); // drop v[0,2]; v[0,1] detaches
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(v, Violation::DisconnectedModel { vertex: 0 })),
        "split chain: {violations:?}"
    );

    let mut emb = base.clone();
    emb.models_mut()[2].clear();
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(v, Violation::EmptyModel { vertex: 2 })),
        "emptied model: {violations:?}"
    );

    let mut emb = base.clone();
    emb.models_mut()[1].push(q(3, 4)); // far qubit, not adjacent to chain 1
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(v, Violation::DisconnectedModel { vertex: 1 })),
        "detached extra qubit: {violations:?}"
    );

    // condition 2: models are pairwise disjoint
    let mut emb = base.clone();
    emb.models_mut()[1].push(q(0, 1)); // v[0,1] is adjacent to v[1,1], stays connected
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(
            v,
            Violation::OverlappingModels { vertex_a: 0, vertex_b: 1, qubit } if *qubit == q(0, 1)
        )),
        "single shared qubit: {violations:?}"
    );

    let mut emb = base.clone();
    emb.models_mut()[2] = emb.models_mut()[3].clone();
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(
            v,
            Violation::OverlappingModels { vertex_a: 2, vertex_b: 3, .. }
        )),
        "duplicated model: {violations:?}"
    );

    let mut emb = base.clone();
    emb.models_mut()[0].push(q(4, 1)); // v[4,1] bridges to v[0,4], stays connected
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(
            v,
            Violation::OverlappingModels { vertex_a: 0, vertex_b: 4, qubit } if *qubit == q(4, 1)
        )),
        "annexed qubit: {violations:?}"
    );

    // condition 3: every logical edge is realized by a bridging coupler
    let mut emb = base.clone();
    emb.tau_mut().remove(&(0, 1));
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(v, Violation::MissingTau { edge: (0, 1) })),
        "removed tau: {violations:?}"
    );

    let mut emb = base.clone();
    emb.tau_mut().insert((0, 1), (q(0, 1), q(0, 3))); // not a coupler
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(
            v,
            Violation::NotACoupler { edge: (0, 1), .. }
        )),
        "tau on a non-coupler: {violations:?}"
    );

    let mut emb = base.clone();
    emb.tau_mut().insert((0, 1), (q(0, 1), q(0, 2))); // real coupler inside model 0
    let violations = verify_embedding(&emb, hardware);
    assert!(
        violations.iter().any(|v| matches!(
            v,
            Violation::TauDoesNotBridge { edge: (0, 1), .. }
        )),
        "non-bridging tau: {violations:?}"
    );
}

fn c9_determinism() {
    // byte-identical manifests across repeated full pipeline runs
    let pipeline = || -> String {
        let g = complete_graph(5);
        let inst = IsingInstance::from_ints(
            g.clone(),
            &[1, -2, 0, 2, -1],
            &[1, -1, 2, 0, -2, 1, 1, -1, 0, 2],
        )
        .unwrap();
        let (hw, emb) = triad_chopped(5, 3, ChopMode::Optimal).unwrap();
        let embedded =
            embed_ising(&inst, &emb, hw.graph(), ChainStrengthPolicy::AutoSufficient).unwrap();
        let solved = solve_exhaustive(embedded.instance(), &SolveOptions::default()).unwrap();
        let checked = reduction_check(
            &inst,
            &emb,
            hw.graph(),
            ChainStrengthPolicy::AutoSufficient,
            &SolveOptions::default(),
        )
        .unwrap();
        [
            Manifest::new(Artifact::Graph(g)),
            Manifest::new(Artifact::Ising(inst)),
            Manifest::new(Artifact::Embedding(EmbeddingDoc {
                hardware_ref: HardwareRef::TriadChopped { n: 5, deg: 3, mode: ChopMode::Optimal },
                embedding: emb,
            })),
            Manifest::new(Artifact::Hardware(Box::new(hw))),
            Manifest::new(Artifact::EmbeddedIsing(Box::new(embedded))),
            Manifest::new(Artifact::Report(ReportDoc::ground_state(&solved))),
            Manifest::new(Artifact::Report(ReportDoc::reduction_check(&checked))),
        ]
        .iter()
        .map(|m| m.to_canonical_json().unwrap())
        .collect::<Vec<_>>()
        .join("\n")
    };
    assert_eq!(pipeline(), pipeline(), "pipeline reruns differ");

    // solver results independent of worker count
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = complete_graph(16);
    for round in 0..20 {
        let h: Vec<i64> = (0..16).map(|_| rng.gen_range(-2..=2)).collect();
        let j: Vec<i64> = (0..g.edge_count()).map(|_| rng.gen_range(-2..=2)).collect();
        let inst = IsingInstance::from_ints(g.clone(), &h, &j).unwrap();
        let solve = |workers: usize| {
            solve_exhaustive(
                &inst,
                &SolveOptions { cap: DEFAULT_SOLVE_CAP, workers: Some(workers) },
            )
            .unwrap()
        };
        let base = solve(1);
        for workers in [2usize, 4] {
            let r = solve(workers);
            assert_eq!(r.min_energy, base.min_energy, "round {round} workers {workers}");
            assert_eq!(
                r.canonical_argmin, base.canonical_argmin,
                "round {round} workers {workers}"
            );
            assert_eq!(r.degeneracy, base.degeneracy, "round {round} workers {workers}");
        }
    }
}
