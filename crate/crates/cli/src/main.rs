//! `triad` — command-line surface for the TRIAD minor-embedding toolkit.
//!
//! Subcommands chain through JSON manifests: `gen` produces hardware and
//! its canonical embedding, `embed` maps an arbitrary graph through the
//! complete-graph route, `reduce` builds the embedded Ising instance,
//! `solve` runs the exhaustive oracle, `check` confirms the reduction
//! end-to-end, and `export` renders DOT or SVG.
//!
//! Exit codes: 0 success, 1 verification or check failure, 2 usage or
//! parse error.  File arguments accept `-` for stdin/stdout.

use std::io::{Read as _, Write as _};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use triad_core::manifest::{Artifact, EmbeddingDoc, HardwareRef, Manifest, ReportDoc};
use triad_core::weight::display_weight;
use triad_core::{
    embed_ising, embed_via_complete, export_manifest, reduction_check, solve_exhaustive,
    triad_chopped, triad_virtual, verify_embedding, weight_from_f64, ChainStrengthPolicy,
    ChopMode, ExportFormat, Graph, HardwareGraph, IsingInstance, SolveOptions,
};

const SOLVE_CAP_ENV: &str = "TRIAD_SOLVE_CAP";

#[derive(Parser)]
#[command(
    name = "triad",
    version,
    about = "TRIAD hardware generators, minor-embedding, and exact Ising reduction checks",
    after_help = "Artifacts are versioned JSON manifests; pass '-' to read stdin or write \
                  stdout.\nTRIAD_SOLVE_CAP overrides the exhaustive solver's spin cap \
                  (default 26)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate hardware and its canonical complete-graph embedding
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Embed a graph via the complete-graph route into chopped hardware
    Embed {
        /// Graph manifest
        graph: String,
        /// Degree bound of the generated hardware (>= 3)
        #[arg(long)]
        deg: usize,
        /// Chopping mode: `optimal` or `uniform:<positions>`
        #[arg(long, default_value = "optimal", value_parser = parse_mode)]
        mode: ChopMode,
        /// Embedding manifest to write
        #[arg(short, long, default_value = "embedding.json")]
        out: String,
    },
    /// Verify an embedding manifest against its hardware
    Verify {
        /// Embedding manifest
        embedding: String,
        /// Optional verification report manifest to write
        #[arg(long)]
        report: Option<String>,
    },
    /// Build the embedded Ising instance for an instance and an embedding
    Reduce {
        /// Ising manifest on the logical graph
        ising: String,
        /// Embedding manifest
        embedding: String,
        /// `auto` or an explicit negative value
        #[arg(long, default_value = "auto", value_parser = parse_strength, allow_negative_numbers = true)]
        chain_strength: ChainStrengthPolicy,
        /// Embedded-Ising manifest to write
        #[arg(short, long, default_value = "embedded.json")]
        out: String,
    },
    /// Exhaustively solve an Ising or embedded-Ising manifest
    Solve {
        /// Ising or embedded-Ising manifest
        input: String,
        /// Optional ground-state report manifest to write
        #[arg(long)]
        report: Option<String>,
    },
    /// Solve both sides of a reduction and check the offset identity
    Check {
        /// Ising manifest on the logical graph
        ising: String,
        /// Embedding manifest
        embedding: String,
        /// `auto` or an explicit negative value
        #[arg(long, default_value = "auto", value_parser = parse_strength, allow_negative_numbers = true)]
        chain_strength: ChainStrengthPolicy,
        /// Optional reduction report manifest to write
        #[arg(long)]
        report: Option<String>,
    },
    /// Render a manifest as DOT or SVG
    Export {
        /// Any non-report manifest
        input: String,
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Output file
        #[arg(short, long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Virtual TRIAD: n chains of n-1 virtual qubits, degree <= 3
    TriadVirtual {
        /// Number of logical vertices (>= 2)
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "hardware.json")]
        hardware_out: String,
        #[arg(long, default_value = "embedding.json")]
        embedding_out: String,
    },
    /// Chopped TRIAD: chains merged into segments under a degree bound
    TriadChopped {
        /// Number of logical vertices (>= 2)
        #[arg(long)]
        n: usize,
        /// Degree bound (>= 3)
        #[arg(long)]
        deg: usize,
        /// Chopping mode: `optimal` or `uniform:<positions>`
        #[arg(long, default_value = "optimal", value_parser = parse_mode)]
        mode: ChopMode,
        #[arg(long, default_value = "hardware.json")]
        hardware_out: String,
        #[arg(long, default_value = "embedding.json")]
        embedding_out: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Svg,
}

fn parse_mode(s: &str) -> std::result::Result<ChopMode, String> {
    if s == "optimal" {
        return Ok(ChopMode::Optimal);
    }
    if let Some(c) = s.strip_prefix("uniform:") {
        return c
            .parse()
            .map(ChopMode::Uniform)
            .map_err(|e| format!("uniform segment size: {e}"));
    }
    Err("expected `optimal` or `uniform:<positions>`".into())
}

fn parse_strength(s: &str) -> std::result::Result<ChainStrengthPolicy, String> {
    if s == "auto" {
        return Ok(ChainStrengthPolicy::AutoSufficient);
    }
    let v: f64 = s.parse().map_err(|e| format!("chain strength: {e}"))?;
    let w = weight_from_f64(v).map_err(|e| e.to_string())?;
    Ok(ChainStrengthPolicy::Explicit(w))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Gen { family } => cmd_gen(family),
        Cmd::Embed { graph, deg, mode, out } => cmd_embed(&graph, deg, mode, &out),
        Cmd::Verify { embedding, report } => cmd_verify(&embedding, report.as_deref()),
        Cmd::Reduce { ising, embedding, chain_strength, out } => {
            cmd_reduce(&ising, &embedding, chain_strength, &out)
        }
        Cmd::Solve { input, report } => cmd_solve(&input, report.as_deref()),
        Cmd::Check { ising, embedding, chain_strength, report } => {
            cmd_check(&ising, &embedding, chain_strength, report.as_deref())
        }
        Cmd::Export { input, format, out } => cmd_export(&input, format, &out),
    }
}

// ---- manifest IO ----------------------------------------------------------

fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn write_text(path: &str, text: &str) -> Result<()> {
    if path == "-" {
        std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout")
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {path}"))
    }
}

fn read_manifest(path: &str) -> Result<Manifest> {
    Manifest::from_json(&read_text(path)?).with_context(|| format!("parsing {path}"))
}

fn write_manifest(path: &str, artifact: Artifact) -> Result<()> {
    write_text(path, &Manifest::new(artifact).to_canonical_json()?)
}

fn kind_name(a: &Artifact) -> &'static str {
    match a {
        Artifact::Graph(_) => "graph",
        Artifact::Ising(_) => "ising",
        Artifact::Hardware(_) => "hardware",
        Artifact::Embedding(_) => "embedding",
        Artifact::EmbeddedIsing(_) => "embedded_ising",
        Artifact::Report(_) => "report",
    }
}

fn expect_graph(path: &str) -> Result<Graph> {
    match read_manifest(path)?.artifact {
        Artifact::Graph(g) => Ok(g),
        other => bail!("{path}: expected a graph manifest, found {}", kind_name(&other)),
    }
}

fn expect_ising(path: &str) -> Result<IsingInstance> {
    match read_manifest(path)?.artifact {
        Artifact::Ising(inst) => Ok(inst),
        other => bail!("{path}: expected an ising manifest, found {}", kind_name(&other)),
    }
}

fn expect_embedding(path: &str) -> Result<EmbeddingDoc> {
    match read_manifest(path)?.artifact {
        Artifact::Embedding(doc) => Ok(doc),
        other => bail!("{path}: expected an embedding manifest, found {}", kind_name(&other)),
    }
}

/// Summary lines go to stderr when a manifest streams to stdout.
fn summary(to_stdout: bool, line: &str) {
    if to_stdout {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
}

fn solve_options() -> Result<SolveOptions> {
    let mut opts = SolveOptions::default();
    if let Ok(v) = std::env::var(SOLVE_CAP_ENV) {
        opts.cap = v.parse().with_context(|| format!("{SOLVE_CAP_ENV}={v:?}"))?;
    }
    Ok(opts)
}

fn fmt_spins(spins: &[i8]) -> String {
    let parts: Vec<&str> = spins.iter().map(|&s| if s > 0 { "+1" } else { "-1" }).collect();
    parts.join(",")
}

// ---- subcommands ----------------------------------------------------------

fn cmd_gen(family: GenFamily) -> Result<ExitCode> {
    let (hw, emb, hardware_ref, line, hw_out, emb_out) = match family {
        GenFamily::TriadVirtual { n, hardware_out, embedding_out } => {
            let (hw, emb) = triad_virtual(n)?;
            let line = format!(
                "qubits={} couplers={}",
                hw.graph().vertex_count(),
                hw.graph().edge_count()
            );
            (hw, emb, HardwareRef::TriadVirtual { n }, line, hardware_out, embedding_out)
        }
        GenFamily::TriadChopped { n, deg, mode, hardware_out, embedding_out } => {
            let (hw, emb) = triad_chopped(n, deg, mode)?;
            let line = format!(
                "qubits={} per-chain={} sizes={}",
                hw.graph().vertex_count(),
                chain_sizes(&hw, 0).len(),
                chain_sizes(&hw, 0)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            (hw, emb, HardwareRef::TriadChopped { n, deg, mode }, line, hardware_out, embedding_out)
        }
    };
    let streams = hw_out == "-" || emb_out == "-";
    write_manifest(&hw_out, Artifact::Hardware(Box::new(hw)))?;
    write_manifest(&emb_out, Artifact::Embedding(EmbeddingDoc { hardware_ref, embedding: emb }))?;
    summary(streams, &line);
    Ok(ExitCode::SUCCESS)
}

/// Segment sizes of one chain, in position order.
fn chain_sizes(hw: &HardwareGraph, chain: usize) -> Vec<usize> {
    let mut spans: Vec<(usize, usize)> = hw
        .qubit_meta()
        .iter()
        .filter(|m| m.chain == chain)
        .map(|m| (m.pos_lo, m.pos_hi))
        .collect();
    spans.sort_unstable();
    spans.into_iter().map(|(lo, hi)| hi - lo + 1).collect()
}

fn cmd_embed(graph: &str, deg: usize, mode: ChopMode, out: &str) -> Result<ExitCode> {
    let g = expect_graph(graph)?;
    let (hw, emb) = embed_via_complete(&g, deg, mode)?;
    let violations = verify_embedding(&emb, hw.graph());
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("violation: {v}");
        }
        return Ok(ExitCode::from(1));
    }
    let hardware_ref = if g.vertex_count() >= 2 {
        HardwareRef::TriadChopped { n: g.vertex_count(), deg, mode }
    } else {
        HardwareRef::Inline { hardware: Box::new(hw.clone()) }
    };
    let line = format!(
        "models={} host-qubits={}",
        emb.models().len(),
        hw.graph().vertex_count()
    );
    write_manifest(out, Artifact::Embedding(EmbeddingDoc { hardware_ref, embedding: emb }))?;
    summary(out == "-", &line);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(embedding: &str, report: Option<&str>) -> Result<ExitCode> {
    let doc = expect_embedding(embedding)?;
    let hw = doc.hardware_ref.realize()?;
    let violations = verify_embedding(&doc.embedding, hw.graph());
    if let Some(path) = report {
        write_manifest(path, Artifact::Report(ReportDoc::verification(&violations)))?;
    }
    if violations.is_empty() {
        println!("ok");
        Ok(ExitCode::SUCCESS)
    } else {
        for v in &violations {
            println!("violation: {v}");
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_reduce(
    ising: &str,
    embedding: &str,
    policy: ChainStrengthPolicy,
    out: &str,
) -> Result<ExitCode> {
    let inst = expect_ising(ising)?;
    let doc = expect_embedding(embedding)?;
    let hw = doc.hardware_ref.realize()?;
    let embedded = embed_ising(&inst, &doc.embedding, hw.graph(), policy)?;
    let line = format!(
        "hardware-qubits={} couplers={} offset={}",
        embedded.instance().graph().vertex_count(),
        embedded.instance().graph().edge_count(),
        display_weight(&embedded.aligned_offset())
    );
    write_manifest(out, Artifact::EmbeddedIsing(Box::new(embedded)))?;
    summary(out == "-", &line);
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(input: &str, report: Option<&str>) -> Result<ExitCode> {
    let inst = match read_manifest(input)?.artifact {
        Artifact::Ising(inst) => inst,
        Artifact::EmbeddedIsing(e) => e.instance().clone(),
        other => bail!(
            "{input}: expected an ising or embedded_ising manifest, found {}",
            kind_name(&other)
        ),
    };
    let result = solve_exhaustive(&inst, &solve_options()?)?;
    if let Some(path) = report {
        write_manifest(path, Artifact::Report(ReportDoc::ground_state(&result)))?;
    }
    println!(
        "min={} degeneracy={} argmin={}",
        display_weight(&result.min_energy),
        result.degeneracy,
        fmt_spins(result.canonical_argmin.spins())
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    ising: &str,
    embedding: &str,
    policy: ChainStrengthPolicy,
    report: Option<&str>,
) -> Result<ExitCode> {
    let inst = expect_ising(ising)?;
    let doc = expect_embedding(embedding)?;
    let hw = doc.hardware_ref.realize()?;
    let result = reduction_check(&inst, &doc.embedding, hw.graph(), policy, &solve_options()?)?;
    if let Some(path) = report {
        write_manifest(path, Artifact::Report(ReportDoc::reduction_check(&result)))?;
    }
    if result.ok() {
        println!("OK: E_emb_min = E_min + offset");
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "FAIL: min(embedded)={} vs min(original)={} + offset={}",
            display_weight(&result.embedded.min_energy),
            display_weight(&result.original.min_energy),
            display_weight(&result.aligned_offset)
        );
        if !result.chains_aligned {
            println!("broken chains: {:?}", result.broken_chains);
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_export(input: &str, format: FormatArg, out: &str) -> Result<ExitCode> {
    let m = read_manifest(input)?;
    let rendered = export_manifest(
        &m,
        match format {
            FormatArg::Dot => ExportFormat::Dot,
            FormatArg::Svg => ExportFormat::Svg,
        },
    )?;
    write_text(out, &rendered)?;
    Ok(ExitCode::SUCCESS)
}
