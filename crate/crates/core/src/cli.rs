//! Command-line front end: JSON input documents, decision reports,
//! certificate files and SVG rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cycles::{
    canonical_target, decide, display_label, oracle_decide, Answer, Certificate, ColoringKind,
    Evidence, Target, TargetName, ThicknessColoring, DEFAULT_BUDGET,
};
use crate::error::Error;
use crate::geometry::Point;
use crate::graphs::{
    crossing_component_graph, crossing_subgraph, edge_crossing_graph, AbstractGraph, GeometricGraph,
};
use crate::hom::{verify_map, HomKind, VertexMap};
use crate::realizations::{build_poset, sample_realizations};

pub type Drawing = GeometricGraph<BigRational>;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: String,
    pub x: Value,
    pub y: Value,
}

/// On-disk form of a geometric graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[String; 2]>,
}

/// Accepts `"p/q"`, `"p"` or a JSON integer. Floats are rejected.
pub fn parse_rational(v: &Value) -> Result<BigRational, Error> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            if s.contains('/') {
                let (p, q) = s.split_once('/').expect("checked");
                let p = BigInt::from_str(p.trim())
                    .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
                let q = BigInt::from_str(q.trim())
                    .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
                if q == BigInt::from(0) {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(p, q))
            } else {
                BigInt::from_str(s)
                    .map(BigRational::from_integer)
                    .map_err(|_| Error::Parse(format!("`{s}` is not an integer or p/q rational")))
            }
        }
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(BigRational::from_integer(
            BigInt::from_str(&n.to_string()).expect("integer"),
        )),
        Value::Number(n) => Err(Error::Parse(format!(
            "floating-point coordinate {n} rejected; write it as \"p/q\""
        ))),
        other => Err(Error::Parse(format!(
            "coordinate must be a string, got {other}"
        ))),
    }
}

/// Integers print bare, everything else as `p/q` in lowest terms.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

pub fn drawing_from_document(doc: &InputDocument) -> Result<Drawing, Error> {
    let mut graph = AbstractGraph::new();
    let mut coords = Vec::with_capacity(doc.vertices.len());
    for v in &doc.vertices {
        graph.add_vertex(v.id.clone())?;
        coords.push(Point::new(parse_rational(&v.x)?, parse_rational(&v.y)?));
    }
    for [a, b] in &doc.edges {
        graph.add_edge_by_id(a, b)?;
    }
    GeometricGraph::new(graph, coords)
}

pub fn document_from_drawing(g: &Drawing) -> InputDocument {
    InputDocument {
        vertices: (0..g.vertex_count())
            .map(|v| VertexEntry {
                id: g.graph().id(v).to_string(),
                x: Value::String(format_rational(&g.coord(v).x)),
                y: Value::String(format_rational(&g.coord(v).y)),
            })
            .collect(),
        edges: g
            .graph()
            .edges()
            .iter()
            .map(|&(a, b)| [g.graph().id(a).to_string(), g.graph().id(b).to_string()])
            .collect(),
    }
}

pub fn parse_drawing(text: &str) -> Result<Drawing, Error> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    drawing_from_document(&doc)
}

pub fn load_drawing(path: &Path) -> Result<Drawing, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_drawing(&text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub colors: BTreeMap<String, usize>,
    pub modulus: usize,
    pub kind: ColoringKind,
}

/// Certificate file: vertex id -> target vertex label, plus the edge coloring
/// that produced it when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub target: TargetName,
    pub map: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringDocument>,
}

impl CertificateDocument {
    pub fn from_certificate<T>(g: &GeometricGraph<T>, cert: &Certificate) -> Self {
        CertificateDocument {
            target: cert.target,
            map: (0..g.vertex_count())
                .map(|v| (g.graph().id(v).to_string(), cert.map.image(v)))
                .collect(),
            coloring: cert.coloring.as_ref().map(|c| ColoringDocument {
                colors: c.to_ids(g),
                modulus: c.modulus,
                kind: c.kind,
            }),
        }
    }

    /// Resolves ids against `g`.
    pub fn to_certificate<T>(&self, g: &GeometricGraph<T>) -> Result<Certificate, Error> {
        let target_size = canonical_target(self.target).drawing.vertex_count();
        let mut map = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let id = g.graph().id(v);
            let w = *self
                .map
                .get(id)
                .ok_or_else(|| Error::Certificate(format!("vertex `{id}` is not mapped")))?;
            if w >= target_size {
                return Err(Error::Certificate(format!(
                    "vertex `{id}` maps to {w}, outside the target"
                )));
            }
            map.push(w);
        }
        if let Some(extra) = self.map.keys().find(|k| g.graph().vertex(k).is_none()) {
            return Err(Error::UnknownVertex(extra.clone()));
        }
        let coloring = match &self.coloring {
            None => None,
            Some(c) => {
                let mut colors = Vec::with_capacity(g.edge_count());
                for e in 0..g.edge_count() {
                    let id = g.graph().edge_id(e);
                    colors.push(*c.colors.get(&id).ok_or_else(|| {
                        Error::InvalidColoring(format!("edge `{id}` has no color"))
                    })?);
                }
                Some(ThicknessColoring {
                    colors,
                    modulus: c.modulus,
                    kind: c.kind,
                })
            }
        };
        Ok(Certificate {
            target: self.target,
            map: VertexMap(map),
            coloring,
        })
    }
}

/// Checks the map as a geometric homomorphism into its target and, if
/// present, the coloring against the drawing.
pub fn verify_certificate<T>(g: &GeometricGraph<T>, cert: &Certificate) -> Result<(), Error> {
    let t = canonical_target(cert.target);
    verify_map(g, &t.drawing, &cert.map, HomKind::Geometric)
        .map_err(|v| Error::Certificate(v.to_string()))?;
    if let Some(c) = &cert.coloring {
        c.validate(g)?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportAnswer {
    Yes,
    No,
    Inconclusive,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecisionReport {
    pub target: String,
    pub answer: ReportAnswer,
    pub certificate: Option<CertificateDocument>,
    pub evidence: Value,
    pub oracle_agreement: Option<bool>,
}

impl DecisionReport {
    pub fn exit_code(&self) -> i32 {
        match self.answer {
            ReportAnswer::Yes => EXIT_YES,
            ReportAnswer::No => EXIT_NO,
            ReportAnswer::Inconclusive => EXIT_BUDGET,
            ReportAnswer::Error => EXIT_INPUT,
        }
    }
}

fn error_report(target: Target, err: &Error) -> DecisionReport {
    let answer = match err {
        Error::BudgetExceeded(_) => ReportAnswer::Inconclusive,
        _ => ReportAnswer::Error,
    };
    DecisionReport {
        target: target.name().to_string(),
        answer,
        certificate: None,
        evidence: serde_json::json!({ "reason": "error", "message": err.to_string() }),
        oracle_agreement: None,
    }
}

/// Runs the decider for `target` on a loaded drawing.
pub fn check_drawing(g: &Drawing, target: Target, oracle: bool, budget: u64) -> DecisionReport {
    let decision = match decide(g, target, budget) {
        Ok(d) => d,
        Err(e) => return error_report(target, &e),
    };
    let oracle_agreement = if oracle {
        oracle_decide(g, target, budget)
            .ok()
            .map(|o| o.answer == decision.answer)
    } else {
        None
    };
    DecisionReport {
        target: target.name().to_string(),
        answer: match decision.answer {
            Answer::Yes => ReportAnswer::Yes,
            Answer::No => ReportAnswer::No,
        },
        certificate: decision
            .certificate
            .as_ref()
            .map(|c| CertificateDocument::from_certificate(g, c)),
        evidence: evidence_json(&decision.evidence),
        oracle_agreement,
    }
}

fn evidence_json(e: &Evidence) -> Value {
    serde_json::to_value(e).expect("evidence serializes")
}

/// JSON summary of the edge-crossing graph and the crossing structures.
pub fn ex_summary(g: &Drawing) -> Value {
    let ex = edge_crossing_graph(g);
    let sub = crossing_subgraph(g);
    let cg = crossing_component_graph(g);
    let ids = |vs: &[usize]| {
        vs.iter()
            .map(|&v| g.graph().id(v).to_string())
            .collect::<Vec<_>>()
    };
    let edge_ids = |es: &[usize]| es.iter().map(|&e| g.graph().edge_id(e)).collect::<Vec<_>>();
    serde_json::json!({
        "edge_crossing_graph": {
            "vertices": ex.ids(),
            "edges": ex.edges().iter().map(|&(a, b)| [ex.id(a), ex.id(b)]).collect::<Vec<_>>(),
        },
        "crossing_subgraph": {
            "vertices": sub.drawing.vertex_count(),
            "edges": sub.drawing.edge_count(),
        },
        "component_graph": {
            "components": cg.components.iter().map(|c| serde_json::json!({
                "vertices": ids(&c.vertices),
                "edges": edge_ids(&c.edges),
                "self_crossing": c.self_crossing,
            })).collect::<Vec<_>>(),
            "edges": cg.graph.edges(),
        },
    })
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// SVG 1.1 drawing. Crossing edges and crossing points are drawn in red;
/// with a certificate, each vertex carries its target label (C5 labels in
/// the 1..5 numbering).
pub fn render_svg(g: &Drawing, overlay: Option<&Certificate>) -> String {
    const SIZE: f64 = 600.0;
    const MARGIN: f64 = 40.0;
    let pts: Vec<(f64, f64)> = g
        .coords()
        .iter()
        .map(|p| (to_f64(&p.x), to_f64(&p.y)))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let px = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, SIZE - MARGIN - (y - y0) * scale);

    let crossing = g.crossings().crossing_edges();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (e, &(a, b)) in g.graph().edges().iter().enumerate() {
        let ((ax, ay), (bx, by)) = (px(pts[a]), px(pts[b]));
        let (class, color) = if crossing.binary_search(&e).is_ok() {
            ("edge crossing-edge", "#c0392b")
        } else {
            ("edge", "#333333")
        };
        let _ = writeln!(
            s,
            r#"<line class="{class}" data-id="{}" x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="{color}" stroke-width="2"/>"#,
            xml_escape(&g.graph().edge_id(e))
        );
    }
    for &(e, f) in g.crossings().pairs() {
        let (a, b) = g.graph().edges()[e];
        let (c, d) = g.graph().edges()[f];
        if let Some(p) = line_intersection(pts[a], pts[b], pts[c], pts[d]) {
            let (cx, cy) = px(p);
            let _ = writeln!(
                s,
                r##"<circle class="crossing" cx="{cx:.2}" cy="{cy:.2}" r="4" fill="#c0392b"/>"##
            );
        }
    }
    for v in 0..g.vertex_count() {
        let (cx, cy) = px(pts[v]);
        let _ = writeln!(
            s,
            r#"<circle class="vertex" cx="{cx:.2}" cy="{cy:.2}" r="6" fill="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text class="vertex-id" x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{}</text>"#,
            cx + 8.0,
            cy - 8.0,
            xml_escape(g.graph().id(v))
        );
        if let Some(cert) = overlay {
            let w = cert.map.image(v);
            let label = if cert.target == TargetName::C5Convex {
                display_label(w)
            } else {
                w
            };
            let _ = writeln!(
                s,
                r##"<text class="label" x="{:.2}" y="{:.2}" font-size="14" font-weight="bold" font-family="sans-serif" fill="#1f618d">{label}</text>"##,
                cx + 8.0,
                cy + 18.0
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn line_intersection(
    p: (f64, f64),
    q: (f64, f64),
    r: (f64, f64),
    t: (f64, f64),
) -> Option<(f64, f64)> {
    let d = (q.0 - p.0) * (t.1 - r.1) - (q.1 - p.1) * (t.0 - r.0);
    if d == 0.0 {
        return None;
    }
    let u = ((r.0 - p.0) * (t.1 - r.1) - (r.1 - p.1) * (t.0 - r.0)) / d;
    Some((p.0 + u * (q.0 - p.0), p.1 + u * (q.1 - p.1)))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PosetGraph {
    C4,
    C5,
    K5,
}

#[derive(Debug, Parser)]
#[command(
    name = "geocycle",
    version,
    about = "Geocolorability of geometric graphs by cycles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a drawing maps to the target's canonical drawing.
    Check {
        file: PathBuf,
        #[arg(long, value_parser = parse_target)]
        target: Target,
        /// Also run the brute-force search and report agreement.
        #[arg(long)]
        oracle: bool,
        /// Search node budget.
        #[arg(long, env = "GEOCYCLE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the certificate of a yes answer here.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
        /// Re-read the emitted certificate and verify it from scratch.
        #[arg(long)]
        verify: bool,
    },
    /// Print the edge-crossing graph and crossing structures as JSON.
    Ex { file: PathBuf },
    /// Sample realizations of a small graph and order them.
    Poset {
        #[arg(value_enum)]
        graph: PosetGraph,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write an SVG drawing.
    Render {
        file: PathBuf,
        out: PathBuf,
        /// Certificate whose labels are drawn next to the vertices.
        #[arg(long)]
        overlay: Option<PathBuf>,
    },
    /// Verify a certificate file against a drawing.
    Verify { file: PathBuf, certificate: PathBuf },
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load_certificate(path: &Path) -> Result<CertificateDocument, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

fn load_warning(g: &Drawing, err: &mut dyn Write) {
    let iso = g.isolated_vertices();
    if !iso.is_empty() {
        let ids: Vec<_> = iso.iter().map(|&v| g.graph().id(v)).collect();
        let _ = writeln!(err, "warning: isolated vertices: {}", ids.join(", "));
    }
}

/// Runs a parsed command, writing to the given streams, and returns the exit
/// code.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Check {
            file,
            target,
            oracle,
            budget,
            certificate_out,
            verify,
        } => {
            let g = match load_drawing(&file) {
                Ok(g) => g,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    let report = error_report(target, &e);
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap());
                    return EXIT_INPUT;
                }
            };
            load_warning(&g, err);
            let report = check_drawing(&g, target, oracle, budget);
            if let Some(msg) = report.evidence.get("message").and_then(Value::as_str) {
                let _ = writeln!(err, "error: {msg}");
            }
            if let Some(cert) = &report.certificate {
                let text = serde_json::to_string_pretty(cert).unwrap();
                if let Some(path) = &certificate_out {
                    if let Err(e) = std::fs::write(path, &text) {
                        let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                if verify {
                    let reread: Result<CertificateDocument, _> = serde_json::from_str(&text);
                    let checked = reread
                        .map_err(|e| Error::Parse(e.to_string()))
                        .and_then(|d| d.to_certificate(&g))
                        .and_then(|c| verify_certificate(&g, &c));
                    if let Err(e) = checked {
                        let _ = writeln!(err, "error: certificate failed verification: {e}");
                        return EXIT_INPUT;
                    }
                    let _ = writeln!(err, "certificate verified");
                }
            }
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap());
            report.exit_code()
        }
        Command::Ex { file } => match load_drawing(&file) {
            Ok(g) => {
                load_warning(&g, err);
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&ex_summary(&g)).unwrap()
                );
                EXIT_YES
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_INPUT
            }
        },
        Command::Poset {
            graph,
            trials,
            seed,
        } => {
            let g = match graph {
                PosetGraph::C4 => AbstractGraph::cycle(4),
                PosetGraph::C5 => AbstractGraph::cycle(5),
                PosetGraph::K5 => AbstractGraph::complete(5),
            };
            let classes = match sample_realizations(&g, trials, seed) {
                Ok(c) => c,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_INPUT;
                }
            };
            let poset = build_poset(classes);
            let _ = writeln!(out, "classes: {}", poset.classes.len());
            for (i, c) in poset.classes.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  [{i}] crossings={} observed={}",
                    c.crossing_count(),
                    c.observed
                );
            }
            let covers: Vec<_> = poset
                .covers
                .iter()
                .map(|(a, b)| format!("{a}<{b}"))
                .collect();
            let _ = writeln!(out, "covers: {}", covers.join(" "));
            let _ = writeln!(out, "maximal: {:?}", poset.maximal());
            let _ = writeln!(
                out,
                "chain: {}",
                if poset.is_chain() { "yes" } else { "no" }
            );
            EXIT_YES
        }
        Command::Render {
            file,
            out: path,
            overlay,
        } => {
            let result = load_drawing(&file).and_then(|g| {
                load_warning(&g, err);
                let cert = match &overlay {
                    Some(p) => Some(load_certificate(p)?.to_certificate(&g)?),
                    None => None,
                };
                std::fs::write(&path, render_svg(&g, cert.as_ref()))
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
            });
            match result {
                Ok(()) => EXIT_YES,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Command::Verify { file, certificate } => {
            let loaded = load_drawing(&file).and_then(|g| {
                let doc = load_certificate(&certificate)?;
                Ok((g, doc))
            });
            let (g, doc) = match loaded {
                Ok(x) => x,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_INPUT;
                }
            };
            match doc
                .to_certificate(&g)
                .and_then(|c| verify_certificate(&g, &c))
            {
                Ok(()) => {
                    let _ = writeln!(out, "valid");
                    EXIT_YES
                }
                Err(e) => {
                    let _ = writeln!(out, "invalid: {e}");
                    EXIT_NO
                }
            }
        }
    }
}

/// Entry point used by the binary.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
        }
    };
    execute(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pentagram_doc() -> &'static str {
        r#"{"vertices":[
            {"id":"a","x":"0","y":"0"},{"id":"b","x":"2","y":"4"},{"id":"c","x":"4","y":"16"},
            {"id":"d","x":"1","y":"1"},{"id":"e","x":"3","y":"9"}],
           "edges":[["a","b"],["b","c"],["c","d"],["d","e"],["e","a"]]}"#
    }

    #[test]
    fn parses_rationals_and_rejects_floats() {
        let r = parse_rational(&Value::String("6/4".into())).unwrap();
        assert_eq!(format_rational(&r), "3/2");
        assert_eq!(
            format_rational(&parse_rational(&serde_json::json!(7)).unwrap()),
            "7"
        );
        assert!(matches!(
            parse_rational(&serde_json::json!(1.5)),
            Err(Error::Parse(_))
        ));
        assert!(parse_rational(&Value::String("1.5".into())).is_err());
        assert!(parse_rational(&Value::String("1/0".into())).is_err());
    }

    #[test]
    fn pentagram_checks_yes_for_c5() {
        let g = parse_drawing(pentagram_doc()).unwrap();
        assert_eq!(g.crossings().len(), 5);
        let r = check_drawing(&g, Target::C5, true, DEFAULT_BUDGET);
        assert_eq!(r.answer, ReportAnswer::Yes);
        assert_eq!(r.oracle_agreement, Some(true));
        let cert = r.certificate.unwrap().to_certificate(&g).unwrap();
        verify_certificate(&g, &cert).unwrap();
        let r3 = check_drawing(&g, Target::C3, false, DEFAULT_BUDGET);
        assert_eq!(r3.exit_code(), EXIT_NO);
    }

    #[test]
    fn svg_highlights_crossings() {
        let g = parse_drawing(pentagram_doc()).unwrap();
        let svg = render_svg(&g, None);
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 5);
        assert!(!svg.contains(r#"class="label""#));
    }

    #[test]
    fn tampered_certificate_rejected() {
        let g = parse_drawing(pentagram_doc()).unwrap();
        let r = check_drawing(&g, Target::C5, false, DEFAULT_BUDGET);
        let mut doc = r.certificate.unwrap();
        let a = doc.map["a"];
        doc.map.insert("a".into(), (a + 1) % 5);
        let cert = doc.to_certificate(&g).unwrap();
        assert!(verify_certificate(&g, &cert).is_err());
    }

    proptest! {
        #[test]
        fn document_round_trip(
            pts in proptest::collection::vec((-50i64..50, 1i64..7, -50i64..50, 1i64..7), 3..7),
            mask in any::<u32>(),
        ) {
            let coords: Vec<Point<BigRational>> = pts
                .iter()
                .map(|&(a, b, c, d)| Point::new(
                    BigRational::new(a.into(), b.into()),
                    BigRational::new(c.into(), d.into()),
                ))
                .collect();
            let n = coords.len();
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| e)
                .collect();
            let Ok(g) = GeometricGraph::from_parts(coords, &edges) else {
                return Ok(());
            };
            let text = serde_json::to_string(&document_from_drawing(&g)).unwrap();
            let back = parse_drawing(&text).unwrap();
            prop_assert_eq!(back.graph(), g.graph());
            prop_assert_eq!(back.coords(), g.coords());
            prop_assert_eq!(back.crossings(), g.crossings());
        }
    }
}
