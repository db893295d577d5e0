//! Text formats: graph, chain, stage-list and tower JSON, and DOT.
//!
//! Every writer emits compact JSON (or DOT) followed by a newline, and every
//! reader accepts exactly what the writer emits, so files round-trip byte
//! for byte. Rationals are strings `"p/q"` in lowest terms, `"p"` when
//! integral.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::decompose::{Attach, FactorizationStage};
use crate::error::{Error, Result};
use crate::graph::{ContractionStep, Vertex, WeightedDualGraph};
use crate::hj::HJChain;
use crate::sim::{CurveKind, DecoratedGraph, X_BOUNDARY, Y_BOUNDARY};
use crate::tower::{ChartTower, Predicate, RationalPoint, StageCertificate, TowerStage};

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn to_line<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let r = BigRational::from_str(t).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(r)
}

pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

/// `"s,t"` as a point.
pub fn parse_point(s: &str) -> Result<RationalPoint> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected `s,t`, got `{s}`")))?;
    Ok(RationalPoint::new(parse_rational(a)?, parse_rational(b)?))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    weight: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_side: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y_side: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    minus_one: Option<String>,
}

impl GraphDoc {
    fn of(g: &WeightedDualGraph) -> Self {
        GraphDoc {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexDoc { id: v.id.clone(), weight: v.weight, label: v.label.clone() })
                .collect(),
            edges: g.edges().to_vec(),
            x_side: None,
            y_side: None,
            minus_one: None,
        }
    }

    fn graph(self) -> Result<WeightedDualGraph> {
        let vs = self
            .vertices
            .into_iter()
            .map(|v| Vertex { id: v.id, weight: v.weight, label: v.label })
            .collect();
        WeightedDualGraph::from_parts(vs, self.edges)
    }
}

pub fn graph_to_json(g: &WeightedDualGraph) -> String {
    to_line(&GraphDoc::of(g))
}

/// Reads a graph; chain markers, if present, are ignored.
pub fn graph_from_json(s: &str) -> Result<WeightedDualGraph> {
    let doc: GraphDoc = serde_json::from_str(s).map_err(parse_err)?;
    doc.graph()
}

pub fn chain_to_json(c: &HJChain) -> String {
    let mut doc = GraphDoc::of(c.graph());
    doc.x_side = Some(c.x_side_id().to_string());
    doc.y_side = Some(c.y_side_id().to_string());
    doc.minus_one = Some(c.minus_one_id().to_string());
    to_line(&doc)
}

pub fn chain_from_json(s: &str) -> Result<HJChain> {
    let doc: GraphDoc = serde_json::from_str(s).map_err(parse_err)?;
    let markers = (doc.x_side.clone(), doc.y_side.clone(), doc.minus_one.clone());
    let (Some(x), Some(y), Some(e)) = markers else {
        return Err(Error::Parse("chain needs x_side, y_side and minus_one".into()));
    };
    let chain = HJChain::from_graph(&doc.graph()?, &x)?;
    if chain.y_side_id() != y || chain.minus_one_id() != e {
        return Err(Error::NotHjChain("chain markers disagree with the graph".into()));
    }
    Ok(chain)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AttachDoc {
    Word(String),
    Node { node: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageDoc {
    k: u64,
    m: u64,
    attach: AttachDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<String>,
}

pub fn stages_to_json(stages: &[FactorizationStage]) -> String {
    let docs: Vec<StageDoc> = stages
        .iter()
        .map(|s| StageDoc {
            k: s.k,
            m: s.m,
            attach: match &s.attach {
                Attach::Generic => AttachDoc::Word("generic".into()),
                Attach::Node(n) => AttachDoc::Node { node: n.clone() },
            },
            c: s.c.as_ref().map(rational_string),
        })
        .collect();
    to_line(&docs)
}

pub fn stages_from_json(s: &str) -> Result<Vec<FactorizationStage>> {
    let docs: Vec<StageDoc> = serde_json::from_str(s).map_err(parse_err)?;
    docs.into_iter()
        .map(|d| {
            let attach = match d.attach {
                AttachDoc::Word(w) if w == "generic" => Attach::Generic,
                AttachDoc::Word(w) => return Err(Error::Parse(format!("unknown attachment `{w}`"))),
                AttachDoc::Node { node } => Attach::Node(node),
            };
            let c = d.c.as_deref().map(parse_rational).transpose()?;
            Ok(FactorizationStage { k: d.k, m: d.m, attach, c })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerStageDoc {
    c: String,
    k: u64,
    m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerDoc {
    stages: Vec<TowerStageDoc>,
}

pub fn tower_to_json(t: &ChartTower) -> String {
    let stages = t
        .stages
        .iter()
        .map(|s| TowerStageDoc {
            c: rational_string(&s.c),
            k: s.bezout.k,
            m: s.bezout.m,
            n: Some(s.bezout.n),
            l: Some(s.bezout.l),
        })
        .collect();
    to_line(&TowerDoc { stages })
}

/// `n` and `l` default to the canonical complement when both are omitted.
pub fn tower_from_json(s: &str) -> Result<ChartTower> {
    let doc: TowerDoc = serde_json::from_str(s).map_err(parse_err)?;
    let stages = doc
        .stages
        .into_iter()
        .map(|d| {
            let c = parse_rational(&d.c)?;
            match (d.n, d.l) {
                (None, None) => TowerStage::new(c, d.k, d.m),
                (Some(n), Some(l)) => TowerStage::with_complement(c, d.k, d.m, n, l),
                _ => Err(Error::Parse("give both n and l or neither".into())),
            }
        })
        .collect::<Result<_>>()?;
    Ok(ChartTower::new(stages))
}

pub fn points_to_json(pts: &[RationalPoint]) -> String {
    let docs: Vec<(String, String)> =
        pts.iter().map(|p| (rational_string(&p.u), rational_string(&p.v))).collect();
    to_line(&docs)
}

/// A list of `[s, t]` pairs of rational strings.
pub fn points_from_json(s: &str) -> Result<Vec<RationalPoint>> {
    let docs: Vec<(String, String)> = serde_json::from_str(s).map_err(parse_err)?;
    docs.iter()
        .map(|(a, b)| Ok(RationalPoint::new(parse_rational(a)?, parse_rational(b)?)))
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    vertex: String,
    neighbors: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ContractionDoc {
    contracted: bool,
    steps: Vec<StepDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    residual: Option<GraphDoc>,
}

/// A contraction run: the steps taken and, if it got stuck, what remains.
pub fn contraction_to_json(steps: &[ContractionStep], residual: Option<&WeightedDualGraph>) -> String {
    to_line(&ContractionDoc {
        contracted: residual.is_none(),
        steps: steps
            .iter()
            .map(|s| StepDoc { vertex: s.vertex.clone(), neighbors: s.neighbors.clone() })
            .collect(),
        residual: residual.map(GraphDoc::of),
    })
}

pub fn contraction_from_json(s: &str) -> Result<(Vec<ContractionStep>, Option<WeightedDualGraph>)> {
    let doc: ContractionDoc = serde_json::from_str(s).map_err(parse_err)?;
    if doc.contracted == doc.residual.is_some() {
        return Err(Error::Parse("`contracted` disagrees with `residual`".into()));
    }
    let steps = doc
        .steps
        .into_iter()
        .map(|d| ContractionStep { vertex: d.vertex, neighbors: d.neighbors })
        .collect();
    Ok((steps, doc.residual.map(GraphDoc::graph).transpose()?))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    stage: usize,
    predicate: String,
    passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    detail: String,
}

pub fn certificates_to_json(cs: &[StageCertificate]) -> String {
    let docs: Vec<CertificateDoc> = cs
        .iter()
        .map(|c| CertificateDoc {
            stage: c.stage,
            predicate: c.predicate.to_string(),
            passed: c.passed,
            detail: c.detail.clone(),
        })
        .collect();
    to_line(&docs)
}

pub fn certificates_from_json(s: &str) -> Result<Vec<StageCertificate>> {
    let docs: Vec<CertificateDoc> = serde_json::from_str(s).map_err(parse_err)?;
    docs.into_iter()
        .map(|d| {
            let predicate = [Predicate::ShiftPreserved, Predicate::PVanishesOnAxis, Predicate::QVanishesOnAxis]
                .into_iter()
                .find(|p| p.to_string() == d.predicate)
                .ok_or_else(|| Error::Parse(format!("unknown predicate `{}`", d.predicate)))?;
            Ok(StageCertificate { stage: d.stage, predicate, passed: d.passed, detail: d.detail })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    id: String,
    kind: String,
    weight: i64,
    coefficient: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecoratedDoc {
    vertices: Vec<CurveDoc>,
    edges: Vec<(String, String)>,
}

fn kind_name(k: CurveKind) -> &'static str {
    match k {
        CurveKind::BoundaryX => "x-axis",
        CurveKind::BoundaryY => "y-axis",
        CurveKind::Exceptional => "exceptional",
    }
}

pub fn decorated_to_json(d: &DecoratedGraph) -> String {
    let vertices = d
        .graph
        .vertices()
        .iter()
        .map(|v| CurveDoc {
            id: v.id.clone(),
            kind: kind_name(d.kind[&v.id]).into(),
            weight: v.weight,
            coefficient: d.coefficient[&v.id],
        })
        .collect();
    to_line(&DecoratedDoc { vertices, edges: d.graph.edges().to_vec() })
}

pub fn decorated_from_json(s: &str) -> Result<DecoratedGraph> {
    let doc: DecoratedDoc = serde_json::from_str(s).map_err(parse_err)?;
    let mut vs = Vec::new();
    let mut coefficient = BTreeMap::new();
    let mut kind = BTreeMap::new();
    let mut created = Vec::new();
    for c in doc.vertices {
        let k = match c.kind.as_str() {
            "x-axis" => CurveKind::BoundaryX,
            "y-axis" => CurveKind::BoundaryY,
            "exceptional" => CurveKind::Exceptional,
            other => return Err(Error::Parse(format!("unknown curve kind `{other}`"))),
        };
        if k == CurveKind::Exceptional {
            created.push(c.id.clone());
        }
        vs.push(Vertex::new(c.id.clone(), c.weight));
        coefficient.insert(c.id.clone(), c.coefficient);
        kind.insert(c.id, k);
    }
    let graph = WeightedDualGraph::from_parts(vs, doc.edges)?;
    Ok(DecoratedGraph { graph, coefficient, kind, created })
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

fn label_lines(lines: &[String]) -> String {
    // DOT's own line break inside a label is the two characters `\n`.
    let joined: Vec<String> = lines.iter().map(|l| l.replace('\\', "\\\\").replace('"', "\\\"")).collect();
    format!("\"{}\"", joined.join("\\n"))
}

pub fn graph_to_dot(g: &WeightedDualGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let mut lines = vec![v.id.clone(), v.weight.to_string()];
        lines.extend(v.label.clone());
        out += &format!("  {} [label={}];\n", dot_quote(&v.id), label_lines(&lines));
    }
    for (a, b) in g.edges() {
        out += &format!("  {} -- {};\n", dot_quote(a), dot_quote(b));
    }
    out.push_str("}\n");
    out
}

fn signed(c: i64) -> String {
    if c > 0 {
        format!("+{c}")
    } else {
        c.to_string()
    }
}

fn sign_color(c: i64) -> &'static str {
    match c.signum() {
        1 => "blue",
        -1 => "red",
        _ => "black",
    }
}

/// Decorated simulation output: boundary curves as boxes carrying their
/// coefficient, exceptional curves colored by the sign of theirs.
pub fn decorated_to_dot(d: &DecoratedGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in d.graph.vertices() {
        let c = d.coefficient[&v.id];
        let attrs = match d.kind[&v.id] {
            CurveKind::Exceptional => format!(
                "label={}, color={}",
                label_lines(&[v.id.clone(), v.weight.to_string(), signed(c)]),
                sign_color(c)
            ),
            _ => format!("label={}, shape=box", label_lines(&[v.id.clone(), signed(c)])),
        };
        out += &format!("  {} [{}];\n", dot_quote(&v.id), attrs);
    }
    for (a, b) in d.graph.edges() {
        out += &format!("  {} -- {};\n", dot_quote(a), dot_quote(b));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Quoted(String),
    Punct(&'static str),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&ch) = it.peek() {
        match ch {
            c if c.is_whitespace() => {
                it.next();
            }
            '"' => {
                it.next();
                let mut buf = String::new();
                loop {
                    match it.next() {
                        None => return Err(Error::Parse("unterminated string".into())),
                        Some('"') => break,
                        Some('\\') => match it.next() {
                            Some('n') => buf.push('\n'),
                            Some(e @ ('"' | '\\')) => buf.push(e),
                            other => {
                                return Err(Error::Parse(format!("bad escape `\\{}`", other.unwrap_or(' '))))
                            }
                        },
                        Some(c) => buf.push(c),
                    }
                }
                out.push(Tok::Quoted(buf));
            }
            '-' => {
                it.next();
                if it.next() != Some('-') {
                    return Err(Error::Parse("expected `--`".into()));
                }
                out.push(Tok::Punct("--"));
            }
            '{' | '}' | '[' | ']' | '=' | ';' | ',' => {
                it.next();
                out.push(Tok::Punct(match ch {
                    '{' => "{",
                    '}' => "}",
                    '[' => "[",
                    ']' => "]",
                    '=' => "=",
                    ';' => ";",
                    _ => ",",
                }));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut buf = String::new();
                while let Some(&c) = it.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        buf.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Word(buf));
            }
            c => return Err(Error::Parse(format!("unexpected `{c}` in DOT"))),
        }
    }
    Ok(out)
}

struct DotNode {
    id: String,
    attrs: BTreeMap<String, String>,
}

/// Node statements with attributes and edge statements, in file order.
fn parse_dot(s: &str) -> Result<(Vec<DotNode>, Vec<(String, String)>)> {
    let toks = tokenize(s)?;
    let mut i = 0;
    let expect = |i: &mut usize, t: Tok| -> Result<()> {
        if toks.get(*i) == Some(&t) {
            *i += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?} in DOT")))
        }
    };
    let name = |i: &mut usize| -> Result<String> {
        match toks.get(*i) {
            Some(Tok::Quoted(s)) | Some(Tok::Word(s)) => {
                *i += 1;
                Ok(s.clone())
            }
            _ => Err(Error::Parse("expected a name in DOT".into())),
        }
    };
    expect(&mut i, Tok::Word("graph".into()))?;
    if let Some(Tok::Word(_)) | Some(Tok::Quoted(_)) = toks.get(i) {
        i += 1;
    }
    expect(&mut i, Tok::Punct("{"))?;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    while toks.get(i) != Some(&Tok::Punct("}")) {
        let a = name(&mut i)?;
        if toks.get(i) == Some(&Tok::Punct("--")) {
            i += 1;
            let b = name(&mut i)?;
            edges.push((a, b));
        } else {
            let mut attrs = BTreeMap::new();
            if toks.get(i) == Some(&Tok::Punct("[")) {
                i += 1;
                while toks.get(i) != Some(&Tok::Punct("]")) {
                    let k = name(&mut i)?;
                    expect(&mut i, Tok::Punct("="))?;
                    let v = name(&mut i)?;
                    attrs.insert(k, v);
                    if toks.get(i) == Some(&Tok::Punct(",")) {
                        i += 1;
                    }
                }
                i += 1;
            }
            nodes.push(DotNode { id: a, attrs });
        }
        expect(&mut i, Tok::Punct(";"))?;
    }
    i += 1;
    if i != toks.len() {
        return Err(Error::Parse("trailing input after DOT graph".into()));
    }
    Ok((nodes, edges))
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim_start_matches('+').parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

fn label_of(n: &DotNode) -> Result<Vec<&str>> {
    let l = n.attrs.get("label").ok_or_else(|| Error::Parse(format!("node `{}` has no label", n.id)))?;
    let parts: Vec<&str> = l.split('\n').collect();
    if parts[0] != n.id {
        return Err(Error::Parse(format!("label of `{}` does not start with its id", n.id)));
    }
    Ok(parts)
}

pub fn graph_from_dot(s: &str) -> Result<WeightedDualGraph> {
    let (nodes, edges) = parse_dot(s)?;
    let mut vs = Vec::new();
    for n in &nodes {
        let parts = label_of(n)?;
        let (weight, label) = match parts[..] {
            [_, w] => (parse_int(w)?, None),
            [_, w, l] => (parse_int(w)?, Some(l.to_string())),
            _ => return Err(Error::Parse(format!("label of `{}` needs id and weight", n.id))),
        };
        vs.push(Vertex { id: n.id.clone(), weight, label });
    }
    WeightedDualGraph::from_parts(vs, edges)
}

pub fn decorated_from_dot(s: &str) -> Result<DecoratedGraph> {
    let (nodes, edges) = parse_dot(s)?;
    let mut vs = Vec::new();
    let mut coefficient = BTreeMap::new();
    let mut kind = BTreeMap::new();
    let mut created = Vec::new();
    for n in &nodes {
        let parts = label_of(n)?;
        let (k, weight, c) = match (n.id.as_str(), &parts[..]) {
            (X_BOUNDARY, [_, c]) => (CurveKind::BoundaryX, 0, parse_int(c)?),
            (Y_BOUNDARY, [_, c]) => (CurveKind::BoundaryY, 0, parse_int(c)?),
            (_, [_, w, c]) => (CurveKind::Exceptional, parse_int(w)?, parse_int(c)?),
            _ => return Err(Error::Parse(format!("unexpected label on `{}`", n.id))),
        };
        if k == CurveKind::Exceptional {
            created.push(n.id.clone());
        }
        vs.push(Vertex::new(n.id.clone(), weight));
        coefficient.insert(n.id.clone(), c);
        kind.insert(n.id.clone(), k);
    }
    let graph = WeightedDualGraph::from_parts(vs, edges)?;
    Ok(DecoratedGraph { graph, coefficient, kind, created })
}
