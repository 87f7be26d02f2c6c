//! DOT and SVG 1.1 rendering of manifests.  Hardware draws at its layout
//! coordinates with one hue per chain; plain graphs fall back to a circular
//! layout; tau and inter-chain couplers draw bold.  Output is deterministic.

use std::collections::BTreeSet;

use crate::embedding::MinorEmbedding;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hardware::{CouplerKind, HardwareGraph};
use crate::manifest::{Artifact, Manifest};
use crate::reduction::EmbeddedIsing;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Svg,
}

const NODE_RADIUS: f64 = 0.1;
const PX_PER_UNIT: f64 = 80.0;

struct Scene {
    positions: Vec<(f64, f64)>,
    fills: Vec<String>,
    /// (u, v, bold)
    edges: Vec<(usize, usize, bool)>,
}

fn circular_positions(n: usize) -> Vec<(f64, f64)> {
    let radius = (0.5 * n as f64 / std::f64::consts::PI).max(1.0);
    (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n.max(1) as f64
                - std::f64::consts::FRAC_PI_2;
            (radius * angle.cos(), radius * angle.sin())
        })
        .collect()
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> (u8, u8, u8) {
    let f = h * 6.0 - (h * 6.0).floor();
    let p = v * (1.0 - s);
    let q = v * (1.0 - f * s);
    let t = v * (1.0 - (1.0 - f) * s);
    let (r, g, b) = match ((h * 6.0).floor() as i64).rem_euclid(6) {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    (
        (r * 255.0).round() as u8,
        (g * 255.0).round() as u8,
        (b * 255.0).round() as u8,
    )
}

fn group_color(i: usize, total: usize) -> String {
    let (r, g, b) = hsv_to_rgb(i as f64 / total.max(1) as f64, 0.55, 0.88);
    format!("#{r:02x}{g:02x}{b:02x}")
}

const UNGROUPED_FILL: &str = "#d8d8d8";

fn scene_from_graph(g: &Graph) -> Scene {
    Scene {
        positions: circular_positions(g.vertex_count()),
        fills: vec![UNGROUPED_FILL.to_string(); g.vertex_count()],
        edges: g.edges().iter().map(|&(u, v)| (u, v, false)).collect(),
    }
}

fn scene_from_hardware(hw: &HardwareGraph) -> Scene {
    let chains = hw.chain_count();
    Scene {
        positions: hw.coords().to_vec(),
        fills: hw.qubit_meta().iter().map(|m| group_color(m.chain, chains)).collect(),
        edges: hw
            .graph()
            .edges()
            .iter()
            .enumerate()
            .map(|(idx, &(u, v))| (u, v, hw.coupler_kind()[idx] == CouplerKind::InterChain))
            .collect(),
    }
}

fn scene_from_embedding(emb: &MinorEmbedding, hw: &HardwareGraph) -> Scene {
    let total = emb.models().len();
    let mut fills = vec![UNGROUPED_FILL.to_string(); hw.graph().vertex_count()];
    for (v, model) in emb.models().iter().enumerate() {
        for &q in model {
            if q < fills.len() {
                fills[q] = group_color(v, total);
            }
        }
    }
    let tau: BTreeSet<(usize, usize)> = emb.tau().values().copied().collect();
    Scene {
        positions: hw.coords().to_vec(),
        fills,
        edges: hw
            .graph()
            .edges()
            .iter()
            .map(|&(u, v)| (u, v, tau.contains(&(u, v))))
            .collect(),
    }
}

fn scene_from_embedded(e: &EmbeddedIsing) -> Scene {
    let g = e.instance().graph();
    let total = e.embedding().models().len();
    let mut fills = vec![UNGROUPED_FILL.to_string(); g.vertex_count()];
    for (v, model) in e.embedding().models().iter().enumerate() {
        for &q in model {
            if q < fills.len() {
                fills[q] = group_color(v, total);
            }
        }
    }
    Scene {
        positions: circular_positions(g.vertex_count()),
        fills,
        edges: g
            .edges()
            .iter()
            .map(|&(u, v)| (u, v, !e.chain_couplers().contains_key(&(u, v))))
            .collect(),
    }
}

fn render_dot(scene: &Scene) -> String {
    let mut out = String::from("graph artifact {\n");
    out.push_str("  layout=neato;\n");
    out.push_str(
        "  node [shape=circle fixedsize=true width=0.25 fontsize=8 style=filled];\n",
    );
    for (q, &(x, y)) in scene.positions.iter().enumerate() {
        out.push_str(&format!(
            "  q{q} [pos=\"{x:.3},{y:.3}!\" fillcolor=\"{}\"];\n",
            scene.fills[q]
        ));
    }
    for &(u, v, bold) in &scene.edges {
        if bold {
            out.push_str(&format!("  q{u} -- q{v} [style=bold];\n"));
        } else {
            out.push_str(&format!("  q{u} -- q{v};\n"));
        }
    }
    out.push_str("}\n");
    out
}

fn render_svg(scene: &Scene) -> String {
    let pad = 0.4;
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(&(x, y)) = scene.positions.first() {
        (min_x, min_y, max_x, max_y) = (x, y, x, y);
    }
    for &(x, y) in &scene.positions {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{:.0}\" height=\"{:.0}\" viewBox=\"{x0:.3} {y0:.3} {w:.3} {h:.3}\">\n",
        w * PX_PER_UNIT,
        h * PX_PER_UNIT
    );
    for &(u, v, bold) in &scene.edges {
        let (x1, y1) = scene.positions[u];
        let (x2, y2) = scene.positions[v];
        let (width, color) = if bold { (0.06, "#303030") } else { (0.025, "#9a9a9a") };
        out.push_str(&format!(
            "  <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" \
             stroke=\"{color}\" stroke-width=\"{width}\"/>\n"
        ));
    }
    for (q, &(x, y)) in scene.positions.iter().enumerate() {
        out.push_str(&format!(
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{NODE_RADIUS}\" \
             fill=\"{}\" stroke=\"#404040\" stroke-width=\"0.012\"/>\n",
            scene.fills[q]
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Render a manifest to the requested format.  Reports have no visual form.
pub fn export_manifest(m: &Manifest, format: ExportFormat) -> Result<String> {
    let scene = match &m.artifact {
        Artifact::Graph(g) => scene_from_graph(g),
        Artifact::Ising(inst) => scene_from_graph(inst.graph()),
        Artifact::Hardware(hw) => scene_from_hardware(hw),
        Artifact::Embedding(doc) => scene_from_embedding(&doc.embedding, &doc.hardware_ref.realize()?),
        Artifact::EmbeddedIsing(e) => scene_from_embedded(e),
        Artifact::Report(_) => {
            return Err(Error::InvalidParameter(
                "report manifests have no visual form".into(),
            ))
        }
    };
    Ok(match format {
        ExportFormat::Dot => render_dot(&scene),
        ExportFormat::Svg => render_svg(&scene),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use crate::hardware::triad_virtual;
    use crate::manifest::{EmbeddingDoc, HardwareRef, ReportDoc};

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    #[test]
    fn virtual_four_renders_twelve_dot_nodes() {
        let (hw, _) = triad_virtual(4).unwrap();
        let m = Manifest::new(Artifact::Hardware(Box::new(hw)));
        let dot = export_manifest(&m, ExportFormat::Dot).unwrap();
        assert_eq!(count(&dot, "[pos="), 12);
        assert_eq!(count(&dot, " -- "), 8 + 6); // intra + inter
        assert_eq!(count(&dot, "style=bold"), 6);
        assert!(dot.starts_with("graph artifact {"));
    }

    #[test]
    fn svg_draws_one_circle_per_qubit_at_point_one_radius() {
        let (hw, _) = triad_virtual(8).unwrap();
        let m = Manifest::new(Artifact::Hardware(Box::new(hw)));
        let svg = export_manifest(&m, ExportFormat::Svg).unwrap();
        assert_eq!(count(&svg, "<circle"), 56);
        assert_eq!(count(&svg, "r=\"0.1\""), 56);
        assert!(svg.contains("version=\"1.1\""));
        // deterministic
        assert_eq!(svg, export_manifest(&m, ExportFormat::Svg).unwrap());
    }

    #[test]
    fn embeddings_draw_tau_couplers_bold() {
        let (_, emb) = triad_virtual(4).unwrap();
        let doc = EmbeddingDoc { hardware_ref: HardwareRef::TriadVirtual { n: 4 }, embedding: emb };
        let m = Manifest::new(Artifact::Embedding(doc));
        let svg = export_manifest(&m, ExportFormat::Svg).unwrap();
        assert_eq!(count(&svg, "stroke-width=\"0.06\""), 6);
        let dot = export_manifest(&m, ExportFormat::Dot).unwrap();
        assert_eq!(count(&dot, "style=bold"), 6);
    }

    #[test]
    fn plain_graphs_use_the_circular_fallback() {
        let m = Manifest::new(Artifact::Graph(complete_graph(5)));
        let svg = export_manifest(&m, ExportFormat::Svg).unwrap();
        assert_eq!(count(&svg, "<circle"), 5);
        assert_eq!(count(&svg, "<line"), 10);
    }

    #[test]
    fn empty_graph_renders_without_panicking() {
        let m = Manifest::new(Artifact::Graph(complete_graph(0)));
        let svg = export_manifest(&m, ExportFormat::Svg).unwrap();
        assert_eq!(count(&svg, "<circle"), 0);
        assert!(export_manifest(&m, ExportFormat::Dot).is_ok());
    }

    #[test]
    fn reports_have_no_visual_form() {
        let m = Manifest::new(Artifact::Report(ReportDoc::verification(&[])));
        assert!(export_manifest(&m, ExportFormat::Dot).is_err());
    }
}
