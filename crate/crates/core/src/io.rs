//! Text formats for graphs, graded graphs and maps; JSON formats for
//! algebras, monoids, colour lists, cyclic orders and fibered maps.
//!
//! Graph files:
//!
//! ```text
//! graph
//! vertex a
//! vertex b
//! edge a b      # arcs 0 (at a) and 1 (at b)
//! edge a inf    # arcs 2 and 3
//! label a 1     # graded graphs only
//! ```
//!
//! Map files name their source and target graph files, relative to the map
//! file:
//!
//! ```text
//! map
//! source theta.graph
//! target corolla.graph
//! v a -> c
//! v b -> inf
//! arc 0 -> 3
//! ```

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::cyclic::{CyclicError, CyclicOrder, FiberedOrderMap};
use crate::field::{Field, PrimeField, Rationals};
use crate::frobenius::{AlgebraError, FrobeniusAlgebra};
use crate::genus::GradedGraph;
use crate::graph::{End, Graph, GraphError};
use crate::linear::LinearPresheaf;
use crate::morphism::{GraphMap, MapError};
use crate::segal::{Monoid, PresheafError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("PARSE: {file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("IO: {0}")]
    Io(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Map(#[from] MapError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Presheaf(#[from] PresheafError),
    #[error("{0}")]
    Cyclic(#[from] CyclicError),
}

impl IoError {
    pub fn code(&self) -> &'static str {
        match self {
            IoError::Parse { .. } => "PARSE",
            IoError::Io(_) => "IO",
            IoError::Graph(e) => e.code(),
            IoError::Map(e) => e.code(),
            IoError::Algebra(e) => e.code(),
            IoError::Presheaf(e) => e.code(),
            IoError::Cyclic(e) => e.code(),
        }
    }

    /// Parse and I/O failures are usage errors; the rest are domain errors.
    pub fn is_usage(&self) -> bool {
        matches!(self, IoError::Parse { .. } | IoError::Io(_))
    }

    fn parse(file: &str, line: usize, message: impl Into<String>) -> Self {
        IoError::Parse {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Io(format!("{}: {e}", path.display())))
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

const KEYWORDS: [&str; 5] = ["graph", "vertex", "edge", "label", "inf"];

/// A parsed graph file: the graph, its vertex names and any labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub names: Vec<String>,
    pub labels: Option<Vec<u32>>,
}

impl ParsedGraph {
    /// A vertex by name, or by index when no vertex has that name.
    pub fn resolve(&self, token: &str) -> Option<End> {
        if token == "inf" {
            return Some(End::Inf);
        }
        if let Some(v) = self.names.iter().position(|n| n == token) {
            return Some(End::Vertex(v));
        }
        token
            .parse::<usize>()
            .ok()
            .filter(|&v| v < self.graph.vertex_count())
            .map(End::Vertex)
    }
}

fn parse_graph_text(text: &str, file: &str, allow_labels: bool) -> Result<ParsedGraph, IoError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, tokens)) if tokens == ["graph"] => {}
        Some((line, _)) => return Err(IoError::parse(file, line, "expected `graph`")),
        None => return Err(IoError::parse(file, 1, "empty file")),
    }
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(End, End)> = Vec::new();
    let mut labels: Vec<(usize, usize, u32)> = Vec::new();
    for (line, tokens) in lines {
        match tokens.as_slice() {
            ["vertex", name] => {
                if KEYWORDS.contains(name) {
                    return Err(IoError::parse(file, line, format!("`{name}` is reserved")));
                }
                if names.iter().any(|n| n == name) {
                    return Err(IoError::parse(
                        file,
                        line,
                        format!("vertex `{name}` declared twice"),
                    ));
                }
                names.push(name.to_string());
            }
            ["edge", a, b] => {
                let end = |t: &str| -> Result<End, IoError> {
                    if t == "inf" {
                        return Ok(End::Inf);
                    }
                    names
                        .iter()
                        .position(|n| n == t)
                        .map(End::Vertex)
                        .ok_or_else(|| IoError::parse(file, line, format!("unknown vertex `{t}`")))
                };
                edges.push((end(a)?, end(b)?));
            }
            ["label", v, n] if allow_labels => {
                let v = names
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| IoError::parse(file, line, format!("unknown vertex `{v}`")))?;
                let n: u32 = n
                    .parse()
                    .map_err(|_| IoError::parse(file, line, format!("bad label `{n}`")))?;
                labels.push((line, v, n));
            }
            _ => {
                return Err(IoError::parse(
                    file,
                    line,
                    format!("unexpected `{}`", tokens.join(" ")),
                ));
            }
        }
    }
    let graph = Graph::from_edges(names.len(), edges)?;
    let labels = if allow_labels {
        let mut out = vec![0u32; names.len()];
        let mut set = vec![false; names.len()];
        for (line, v, n) in labels {
            if std::mem::replace(&mut set[v], true) {
                return Err(IoError::parse(
                    file,
                    line,
                    format!("vertex `{}` labelled twice", names[v]),
                ));
            }
            out[v] = n;
        }
        Some(out)
    } else {
        None
    };
    Ok(ParsedGraph {
        graph,
        names,
        labels,
    })
}

pub fn parse_graph(text: &str, file: &str) -> Result<ParsedGraph, IoError> {
    parse_graph_text(text, file, false)
}

/// A graph file with optional `label` lines; unlabelled vertices get 0.
pub fn parse_graded_graph(text: &str, file: &str) -> Result<(ParsedGraph, GradedGraph), IoError> {
    let parsed = parse_graph_text(text, file, true)?;
    let gg = GradedGraph::new(
        parsed.graph.clone(),
        parsed.labels.clone().expect("labels allowed"),
    )
    .expect("one label per vertex");
    Ok((parsed, gg))
}

pub fn load_graph(path: &Path) -> Result<ParsedGraph, IoError> {
    parse_graph(&read_file(path)?, &path.display().to_string())
}

pub fn load_graded_graph(path: &Path) -> Result<(ParsedGraph, GradedGraph), IoError> {
    parse_graded_graph(&read_file(path)?, &path.display().to_string())
}

fn end_name(e: End) -> String {
    match e {
        End::Vertex(v) => format!("v{v}"),
        End::Inf => "inf".into(),
    }
}

/// Vertices are named `v0, v1, …`; the `k`-th edge line carries arcs `2k`
/// and `2k+1`.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::from("graph\n");
    for v in g.vertices() {
        out.push_str(&format!("vertex v{v}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!(
            "edge {} {}\n",
            end_name(g.end(2 * e)),
            end_name(g.end(2 * e + 1))
        ));
    }
    out
}

pub fn serialize_graded_graph(gg: &GradedGraph) -> String {
    let mut out = serialize_graph(gg.graph());
    for (v, l) in gg.labels().iter().enumerate() {
        out.push_str(&format!("label v{v} {l}\n"));
    }
    out
}

/// One-line form used in tables: `V<n>` followed by the edges' ends.
pub fn graph_inline(g: &Graph) -> String {
    let mut out = format!("V{}", g.vertex_count());
    for e in g.edges() {
        let end = |a: usize| match g.end(a) {
            End::Vertex(v) => v.to_string(),
            End::Inf => "inf".into(),
        };
        out.push_str(&format!(";{}-{}", end(2 * e), end(2 * e + 1)));
    }
    out
}

pub fn labels_inline(labels: &[u32]) -> String {
    labels
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn labels_inline_usize(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// A parsed map file together with its source and target graph files.
#[derive(Clone, Debug)]
pub struct MapFile {
    pub map: GraphMap,
    pub source: ParsedGraph,
    pub target: ParsedGraph,
}

/// Parses a map whose `source`/`target` lines are resolved by `load`.
pub fn parse_map_with(
    text: &str,
    file: &str,
    mut load: impl FnMut(&str) -> Result<ParsedGraph, IoError>,
) -> Result<MapFile, IoError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, tokens)) if tokens == ["map"] => {}
        Some((line, _)) => return Err(IoError::parse(file, line, "expected `map`")),
        None => return Err(IoError::parse(file, 1, "empty file")),
    }
    let mut source: Option<ParsedGraph> = None;
    let mut target: Option<ParsedGraph> = None;
    let mut vertex_lines = Vec::new();
    let mut arc_lines = Vec::new();
    for (line, tokens) in lines {
        match tokens.as_slice() {
            ["source", path] if source.is_none() => source = Some(load(path)?),
            ["target", path] if target.is_none() => target = Some(load(path)?),
            ["v", a, "->", b] => vertex_lines.push((line, a.to_string(), b.to_string())),
            ["arc", b, "->", a] => arc_lines.push((line, b.to_string(), a.to_string())),
            _ => {
                return Err(IoError::parse(
                    file,
                    line,
                    format!("unexpected `{}`", tokens.join(" ")),
                ));
            }
        }
    }
    let source = source.ok_or_else(|| IoError::parse(file, 1, "missing `source`"))?;
    let target = target.ok_or_else(|| IoError::parse(file, 1, "missing `target`"))?;
    let mut vertex_map: Vec<Option<End>> = vec![None; source.graph.vertex_count()];
    for (line, a, b) in vertex_lines {
        let from = source
            .resolve(&a)
            .ok_or_else(|| IoError::parse(file, line, format!("unknown source vertex `{a}`")))?;
        let to = target
            .resolve(&b)
            .ok_or_else(|| IoError::parse(file, line, format!("unknown target vertex `{b}`")))?;
        match from {
            End::Inf if to == End::Inf => {}
            End::Inf => return Err(IoError::parse(file, line, "inf must map to inf")),
            End::Vertex(v) => {
                if vertex_map[v].replace(to).is_some() {
                    return Err(IoError::parse(
                        file,
                        line,
                        format!("vertex `{a}` mapped twice"),
                    ));
                }
            }
        }
    }
    let mut arc_map: Vec<Option<usize>> = vec![None; target.graph.arc_count()];
    for (line, b, a) in arc_lines {
        let parse_arc = |t: &str, limit: usize| {
            t.parse::<usize>()
                .ok()
                .filter(|&x| x < limit)
                .ok_or_else(|| IoError::parse(file, line, format!("bad arc `{t}`")))
        };
        let b = parse_arc(&b, target.graph.arc_count())?;
        let a = parse_arc(&a, source.graph.arc_count())?;
        if arc_map[b].replace(a).is_some() {
            return Err(IoError::parse(file, line, format!("arc {b} mapped twice")));
        }
    }
    let vertex_map = vertex_map
        .into_iter()
        .enumerate()
        .map(|(v, e)| {
            e.ok_or_else(|| IoError::parse(file, 1, format!("source vertex {v} is not mapped")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let arc_map = arc_map
        .into_iter()
        .enumerate()
        .map(|(b, a)| {
            a.ok_or_else(|| IoError::parse(file, 1, format!("target arc {b} is not mapped")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = GraphMap::new(
        source.graph.clone(),
        target.graph.clone(),
        vertex_map,
        arc_map,
    )?;
    Ok(MapFile {
        map,
        source,
        target,
    })
}

/// Loads a map file, resolving graph paths against its directory.
pub fn load_map(path: &Path) -> Result<MapFile, IoError> {
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_map_with(&read_file(path)?, &path.display().to_string(), |p| {
        load_graph(&base.join(p))
    })
}

/// The map format, with vertices named as in `serialize_graph`.
pub fn serialize_map(m: &GraphMap, source_path: &str, target_path: &str) -> String {
    let mut out = format!("map\nsource {source_path}\ntarget {target_path}\n");
    for (v, e) in m.vertex_map().iter().enumerate() {
        out.push_str(&format!("v v{v} -> {}\n", end_name(*e)));
    }
    for (b, a) in m.arc_map().iter().enumerate() {
        out.push_str(&format!("arc {b} -> {a}\n"));
    }
    out
}

fn json_error(file: &str, message: impl Into<String>) -> IoError {
    IoError::parse(file, 1, message)
}

fn parse_json(text: &str, file: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::parse(file, e.line(), e.to_string()))
}

fn scalar_text(v: &Value, file: &str) -> Result<String, IoError> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        _ => Err(json_error(file, format!("expected a scalar, found {v}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str, file: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array()
        .ok_or_else(|| json_error(file, format!("`{what}` must be an array")))
}

/// An algebra over either supported field.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Rational(FrobeniusAlgebra<Rationals>),
    Prime(FrobeniusAlgebra<PrimeField>),
}

fn algebra_over<F: Field>(
    field: F,
    doc: &Value,
    file: &str,
) -> Result<FrobeniusAlgebra<F>, IoError> {
    let dim = doc
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| json_error(file, "missing `dim`"))? as usize;
    let scalar = |v: &Value| -> Result<F::Elem, IoError> {
        field
            .parse(&scalar_text(v, file)?)
            .map_err(|e| json_error(file, e.to_string()))
    };
    let vector = |v: &Value, what: &str| -> Result<Vec<F::Elem>, IoError> {
        let xs = array(v, what, file)?;
        if xs.len() != dim {
            return Err(json_error(
                file,
                format!("`{what}` must have {dim} entries"),
            ));
        }
        xs.iter().map(scalar).collect()
    };
    let mul_doc = doc
        .get("mul")
        .ok_or_else(|| json_error(file, "missing `mul`"))?;
    let rows = array(mul_doc, "mul", file)?;
    if rows.len() != dim {
        return Err(json_error(file, format!("`mul` must be {dim}×{dim}×{dim}")));
    }
    let mul = rows
        .iter()
        .map(|row| {
            let row = array(row, "mul", file)?;
            if row.len() != dim {
                return Err(json_error(file, format!("`mul` must be {dim}×{dim}×{dim}")));
            }
            row.iter()
                .map(|v| vector(v, "mul"))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unit = vector(
        doc.get("unit")
            .ok_or_else(|| json_error(file, "missing `unit`"))?,
        "unit",
    )?;
    let trace = vector(
        doc.get("trace")
            .ok_or_else(|| json_error(file, "missing `trace`"))?,
        "trace",
    )?;
    Ok(FrobeniusAlgebra::new(field, mul, unit, trace)?)
}

/// `{"field": "Q" | "F:<p>", "dim": n, "mul": [...], "unit": [...], "trace": [...]}`;
/// scalars are numbers or strings such as `"-3/2"`.
pub fn parse_algebra(text: &str, file: &str) -> Result<AnyAlgebra, IoError> {
    let doc = parse_json(text, file)?;
    let tag = doc
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| json_error(file, "missing `field`"))?;
    if tag == "Q" {
        return Ok(AnyAlgebra::Rational(algebra_over(Rationals, &doc, file)?));
    }
    let p = tag
        .strip_prefix("F:")
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| json_error(file, format!("unknown field `{tag}`")))?;
    let field = PrimeField::new(p).map_err(|e| json_error(file, e.to_string()))?;
    Ok(AnyAlgebra::Prime(algebra_over(field, &doc, file)?))
}

pub fn load_algebra(path: &Path) -> Result<AnyAlgebra, IoError> {
    parse_algebra(&read_file(path)?, &path.display().to_string())
}

pub fn serialize_algebra<F: Field>(a: &FrobeniusAlgebra<F>) -> String {
    let f = a.field();
    let s = |x: &F::Elem| Value::String(f.format(x));
    let doc = json!({
        "field": f.tag(),
        "dim": a.dim(),
        "mul": a.structure_constants().iter().map(|m| m.iter().map(|v| v.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "unit": a.unit().iter().map(s).collect::<Vec<_>>(),
        "trace": a.trace().iter().map(s).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn usize_matrix(v: &Value, what: &str, file: &str) -> Result<Vec<Vec<i64>>, IoError> {
    array(v, what, file)?
        .iter()
        .map(|row| {
            array(row, what, file)?
                .iter()
                .map(|x| {
                    x.as_i64().ok_or_else(|| {
                        json_error(file, format!("`{what}` entries must be integers"))
                    })
                })
                .collect()
        })
        .collect()
}

/// `{"table": [[...], ...]}`.
pub fn parse_monoid(text: &str, file: &str) -> Result<Monoid, IoError> {
    let doc = parse_json(text, file)?;
    let table = usize_matrix(
        doc.get("table")
            .ok_or_else(|| json_error(file, "missing `table`"))?,
        "table",
        file,
    )?;
    let table = table
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| usize::try_from(x).map_err(|_| json_error(file, "negative table entry")))
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    Ok(Monoid::new(table)?)
}

/// `{"p": 2, "colours": [{"dim": 2, "form": [[1,0],[0,1]]}]}`.
pub fn parse_linear(text: &str, file: &str) -> Result<LinearPresheaf, IoError> {
    let doc = parse_json(text, file)?;
    let p = doc
        .get("p")
        .and_then(Value::as_u64)
        .and_then(|p| u32::try_from(p).ok())
        .ok_or_else(|| json_error(file, "missing `p`"))?;
    let colours = array(
        doc.get("colours")
            .ok_or_else(|| json_error(file, "missing `colours`"))?,
        "colours",
        file,
    )?
    .iter()
    .map(|c| {
        let dim = c
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| json_error(file, "colour without `dim`"))? as usize;
        let form = usize_matrix(
            c.get("form")
                .ok_or_else(|| json_error(file, "colour without `form`"))?,
            "form",
            file,
        )?;
        Ok((dim, form))
    })
    .collect::<Result<Vec<_>, IoError>>()?;
    Ok(LinearPresheaf::new(p, colours)?)
}

/// `{"order": [0, 2, 1]}`.
pub fn parse_cyclic_order(text: &str, file: &str) -> Result<CyclicOrder, IoError> {
    let doc = parse_json(text, file)?;
    let seq: Vec<usize> = serde_json::from_value(doc.get("order").cloned().unwrap_or(Value::Null))
        .map_err(|e| json_error(file, format!("`order`: {e}")))?;
    Ok(CyclicOrder::from_sequence(&seq)?)
}

/// `{"fibers": [[0, 1], [2]]}`.
pub fn parse_fibered_map(text: &str, file: &str) -> Result<FiberedOrderMap, IoError> {
    let doc = parse_json(text, file)?;
    let fibers: Vec<Vec<usize>> =
        serde_json::from_value(doc.get("fibers").cloned().unwrap_or(Value::Null))
            .map_err(|e| json_error(file, format!("`fibers`: {e}")))?;
    Ok(FiberedOrderMap::new(fibers)?)
}

pub fn serialize_cyclic_order(c: &CyclicOrder) -> String {
    json!({ "order": c.sequence() }).to_string() + "\n"
}

pub fn serialize_fibered_map(f: &FiberedOrderMap) -> String {
    json!({ "fibers": f.fibers() }).to_string() + "\n"
}

/// `v0=1,v2=3` against the vertex names of `parsed`; unnamed vertices keep
/// their current label.
pub fn apply_label_list(
    parsed: &ParsedGraph,
    labels: &mut [u32],
    list: &str,
) -> Result<(), IoError> {
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item.split_once('=').ok_or_else(|| {
            IoError::parse("--labels", 1, format!("expected name=value, got `{item}`"))
        })?;
        let v = match parsed.resolve(name.trim()) {
            Some(End::Vertex(v)) => v,
            _ => {
                return Err(IoError::parse(
                    "--labels",
                    1,
                    format!("unknown vertex `{name}`"),
                ))
            }
        };
        labels[v] = value
            .trim()
            .parse()
            .map_err(|_| IoError::parse("--labels", 1, format!("bad label `{value}`")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_encoding;
    use crate::graph::Elementary;

    #[test]
    fn edge_file() {
        let p = parse_graph("graph\nedge inf inf\n", "t").unwrap();
        assert_eq!(p.graph, Graph::edge());
    }

    #[test]
    fn theta_file() {
        let text = "graph # theta\nvertex a\nvertex b\nedge a b\nedge a b\nedge a b\n";
        let p = parse_graph(text, "t").unwrap();
        let theta = Graph::elementary(Elementary::Theta);
        assert_eq!(canonical_encoding(&p.graph), canonical_encoding(&theta));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_graph("graph\nvertex a\nvertex vertex\n", "f.graph").unwrap_err();
        assert_eq!(err.code(), "PARSE");
        assert!(err.to_string().contains("f.graph:3"));
        let err = parse_graph("graph\nvertex a\nedge a b\n", "f").unwrap_err();
        assert!(err.to_string().contains("f:3"));
        assert_eq!(
            parse_graph("graph\nvertex a\nbogus\n", "f")
                .unwrap_err()
                .code(),
            "PARSE"
        );
        assert_eq!(parse_graph("vertex a\n", "f").unwrap_err().code(), "PARSE");
        assert_eq!(
            parse_graph("graph\nvertex a\nvertex b\nedge a inf\nedge b inf\n", "f")
                .unwrap_err()
                .code(),
            "DISCONNECTED"
        );
        assert_eq!(
            parse_graph("graph\nvertex a\nlabel a 1\n", "f")
                .unwrap_err()
                .code(),
            "PARSE"
        );
    }

    #[test]
    fn graph_round_trip() {
        for g in crate::enumerate::corpus(3, 4) {
            let text = serialize_graph(&g);
            assert_eq!(parse_graph(&text, "t").unwrap().graph, g);
        }
    }

    #[test]
    fn graded_round_trip() {
        let theta = Graph::elementary(Elementary::Theta);
        let gg = GradedGraph::new(theta, vec![2, 5]).unwrap();
        let (_, back) = parse_graded_graph(&serialize_graded_graph(&gg), "t").unwrap();
        assert_eq!(back, gg);
    }

    #[test]
    fn map_round_trip() {
        let theta = Graph::elementary(Elementary::Theta);
        let m = crate::morphism::rho_vertex(&theta, 1).unwrap();
        let text = serialize_map(&m, "s", "t");
        let back = parse_map_with(&text, "m", |p| {
            let g = if p == "s" { m.source() } else { m.target() };
            parse_graph(&serialize_graph(g), p)
        })
        .unwrap();
        assert_eq!(back.map, m);
    }

    #[test]
    fn algebra_json() {
        let text = r#"{"field":"Q","dim":2,"mul":[[[1,0],[0,1]],[[0,1],[0,0]]],"unit":[1,0],"trace":["0","1"]}"#;
        let AnyAlgebra::Rational(a) = parse_algebra(text, "a").unwrap() else {
            panic!("rational algebra expected");
        };
        assert_eq!(a.evaluate_closed(1), Rationals.from_i64(2));
        let AnyAlgebra::Rational(b) = parse_algebra(&serialize_algebra(&a), "b").unwrap() else {
            panic!("rational algebra expected");
        };
        assert_eq!(b.structure_constants(), a.structure_constants());
        let text = r#"{"field":"F:3","dim":1,"mul":[[[1]]],"unit":[1],"trace":[2]}"#;
        assert!(matches!(
            parse_algebra(text, "a").unwrap(),
            AnyAlgebra::Prime(_)
        ));
        let bad = r#"{"field":"Q","dim":2,"mul":[[[1,0],[0,1]],[[0,1],[0,0]]],"unit":[1,0],"trace":[1,0]}"#;
        assert_eq!(
            parse_algebra(bad, "a").unwrap_err().code(),
            "DEGENERATE_TRACE"
        );
        assert_eq!(parse_algebra("{", "a").unwrap_err().code(), "PARSE");
    }

    #[test]
    fn presheaf_json() {
        let lin =
            parse_linear(r#"{"p":2,"colours":[{"dim":2,"form":[[1,0],[0,1]]}]}"#, "l").unwrap();
        assert_eq!(lin.colours().len(), 1);
        let m = parse_monoid(r#"{"table":[[0,1],[1,0]]}"#, "m").unwrap();
        assert_eq!(m.order(), 2);
        assert_eq!(
            parse_monoid(r#"{"table":[[0,1],[0,0]]}"#, "m")
                .unwrap_err()
                .code(),
            "BAD_MONOID"
        );
    }

    #[test]
    fn cyclic_json() {
        let c = parse_cyclic_order(r#"{"order":[1,0,2]}"#, "c").unwrap();
        assert_eq!(
            parse_cyclic_order(&serialize_cyclic_order(&c), "c").unwrap(),
            c
        );
        let f = parse_fibered_map(r#"{"fibers":[[1,0],[],[2]]}"#, "f").unwrap();
        assert_eq!(
            parse_fibered_map(&serialize_fibered_map(&f), "f").unwrap(),
            f
        );
    }
}
