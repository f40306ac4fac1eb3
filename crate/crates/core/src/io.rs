//! Plain-text graph documents.
//!
//! One statement per line: `u -> v` for an edge, `u` alone for a vertex.
//! `#` starts a comment; a comment of the form `#@ key = value` is metadata.
//! Names match `[A-Za-z0-9_]+`. Lines end with LF.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, LineError, Result};
use crate::graph::{GraphBuilder, OrientedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphDocument {
    pub name: String,
    #[serde(skip)]
    pub graph: OrientedGraph,
    pub metadata: BTreeMap<String, String>,
}

impl GraphDocument {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.get(key).map(String::as_str)
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Parse a graph document; the graph must be connected.
pub fn parse_graph(text: &str) -> Result<OrientedGraph> {
    parse_document("graph", text).map(|d| d.graph)
}

pub fn parse_document(name: &str, text: &str) -> Result<GraphDocument> {
    let mut errors = Vec::new();
    let mut metadata = BTreeMap::new();
    let mut builder = GraphBuilder::new();
    // Unordered pair -> (line, tail) of its first edge.
    let mut seen: HashMap<(String, String), (usize, String)> = HashMap::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        let mut err = |message: String| errors.push(LineError { line, message });
        if raw.contains('\r') {
            err("carriage return; lines must end with LF".into());
            continue;
        }
        let (body, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p..])),
            None => (raw, None),
        };
        if let Some(meta) = comment.and_then(|c| c.strip_prefix("#@")) {
            match meta.split_once('=') {
                Some((k, v)) if is_ident(k.trim()) => {
                    metadata.insert(k.trim().to_string(), v.trim().to_string());
                }
                _ => err(format!("malformed metadata `{}`", meta.trim())),
            }
        }
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        let Some((u, v)) = body.split_once("->") else {
            if is_ident(body) {
                builder.vertex(body);
            } else {
                err(format!("expected `u -> v` or a vertex name, found `{body}`"));
            }
            continue;
        };
        let (u, v) = (u.trim(), v.trim());
        if !is_ident(u) || !is_ident(v) {
            err(format!("invalid vertex name in `{body}`"));
            continue;
        }
        if u == v {
            err(format!("loop at `{u}`"));
            continue;
        }
        let key = if u < v { (u.to_string(), v.to_string()) } else { (v.to_string(), u.to_string()) };
        if let Some((first, tail)) = seen.get(&key) {
            if tail == u {
                err(format!("duplicate edge {u} -> {v} (first on line {first})"));
            } else {
                err(format!("anti-parallel edge {u} -> {v} (opposite edge on line {first})"));
            }
            continue;
        }
        seen.insert(key, (line, u.to_string()));
        builder.edge(u, v);
    }
    if !errors.is_empty() {
        return Err(Error::Parse(errors));
    }
    let graph = builder.build()?;
    if graph.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    if !graph.is_connected() {
        return Err(Error::InvalidGraph("graph is not connected".into()));
    }
    Ok(GraphDocument { name: name.to_string(), graph, metadata })
}

/// Edges in index order, then vertices without edges.
pub fn serialize_graph(g: &OrientedGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{} -> {}\n", g.name(u), g.name(v)));
    }
    for v in (0..g.n()).filter(|&v| g.degree(v) == 0) {
        out.push_str(g.name(v));
        out.push('\n');
    }
    out
}

pub fn serialize_document(doc: &GraphDocument) -> String {
    let mut out = format!("# {}\n", doc.name);
    for (k, v) in &doc.metadata {
        out.push_str(&format!("#@ {k} = {v}\n"));
    }
    out + &serialize_graph(&doc.graph)
}

pub fn read_graph_file(path: &std::path::Path) -> Result<GraphDocument> {
    let text = std::fs::read_to_string(path)?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    parse_document(name, &text)
}
