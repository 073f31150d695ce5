//! Line-based graph text format.
//!
//! ```text
//! # comment
//! vertices 4
//! edge 0 0 1 cap 3
//! rot 0 +0 +1
//! source 0
//! sink 3
//! outer -1
//! undirected
//! ```

use std::fmt::Write as _;

use super::dart::Dart;
use super::graph::PlaneGraph;
use super::EmbedError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub tail: usize,
    pub head: usize,
    pub cap: Option<i64>,
}

/// A parsed, not yet validated, graph description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertex_count: usize,
    pub edges: Vec<EdgeSpec>,
    pub rotations: Vec<Option<Vec<Dart>>>,
    pub source: usize,
    pub sink: usize,
    pub outer: Dart,
    pub undirected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

impl GraphSpec {
    pub fn parse(text: &str) -> Result<GraphSpec, ParseError> {
        let mut vertex_count: Option<usize> = None;
        let mut edges: Vec<Option<EdgeSpec>> = Vec::new();
        let mut rot_lines: Vec<(usize, usize, Vec<Dart>)> = Vec::new();
        let mut source = None;
        let mut sink = None;
        let mut outer = None;
        let mut undirected = false;

        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut toks = content.split_whitespace();
            let Some(directive) = toks.next() else { continue };
            match directive {
                "vertices" => {
                    if vertex_count.is_some() {
                        return Err(err(ln, "duplicate `vertices` directive"));
                    }
                    vertex_count = Some(parse_num(ln, toks.next(), "vertex count")?);
                }
                "edge" => {
                    let id: usize = parse_num(ln, toks.next(), "edge id")?;
                    let tail = parse_num(ln, toks.next(), "tail vertex")?;
                    let head = parse_num(ln, toks.next(), "head vertex")?;
                    let cap = match toks.next() {
                        None => None,
                        Some("cap") => {
                            let c: i64 = parse_num(ln, toks.next(), "capacity")?;
                            if c < 0 {
                                return Err(err(ln, "capacity must be nonnegative"));
                            }
                            Some(c)
                        }
                        Some(other) => return Err(err(ln, format!("unexpected token `{other}`"))),
                    };
                    if edges.len() <= id {
                        edges.resize(id + 1, None);
                    }
                    if edges[id].is_some() {
                        return Err(err(ln, format!("edge {id} defined twice")));
                    }
                    edges[id] = Some(EdgeSpec { tail, head, cap });
                }
                "rot" => {
                    let v: usize = parse_num(ln, toks.next(), "vertex")?;
                    let darts = toks
                        .by_ref()
                        .map(|t| t.parse::<Dart>().map_err(|e| err(ln, e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?;
                    rot_lines.push((ln, v, darts));
                }
                "source" => source = Some(parse_num(ln, toks.next(), "source vertex")?),
                "sink" => sink = Some(parse_num(ln, toks.next(), "sink vertex")?),
                "outer" => {
                    let tok = toks.next().ok_or_else(|| err(ln, "missing outer dart"))?;
                    outer = Some(tok.parse::<Dart>().map_err(|e| err(ln, e.to_string()))?);
                }
                "undirected" => undirected = true,
                other => return Err(err(ln, format!("unknown directive `{other}`"))),
            }
            if let Some(extra) = toks.next() {
                return Err(err(ln, format!("unexpected token `{extra}`")));
            }
        }

        let end = text.lines().count().max(1);
        let vertex_count = vertex_count.ok_or_else(|| err(end, "missing `vertices` directive"))?;
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(id, e)| e.ok_or_else(|| err(end, format!("edge ids must be dense: edge {id} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut rotations = vec![None; vertex_count];
        for (ln, v, darts) in rot_lines {
            if v >= vertex_count {
                return Err(err(ln, format!("vertex {v} out of range")));
            }
            if rotations[v].is_some() {
                return Err(err(ln, format!("duplicate rotation for vertex {v}")));
            }
            rotations[v] = Some(darts);
        }
        Ok(GraphSpec {
            vertex_count,
            edges,
            rotations,
            source: source.ok_or_else(|| err(end, "missing `source` directive"))?,
            sink: sink.ok_or_else(|| err(end, "missing `sink` directive"))?,
            outer: outer.ok_or_else(|| err(end, "missing `outer` directive"))?,
            undirected,
        })
    }

    /// Serializes back to the text format (canonical order, no comments).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices {}", self.vertex_count).unwrap();
        for (id, e) in self.edges.iter().enumerate() {
            match e.cap {
                Some(c) => writeln!(out, "edge {id} {} {} cap {c}", e.tail, e.head).unwrap(),
                None => writeln!(out, "edge {id} {} {}", e.tail, e.head).unwrap(),
            }
        }
        for (v, r) in self.rotations.iter().enumerate() {
            if let Some(r) = r {
                write!(out, "rot {v}").unwrap();
                for d in r {
                    write!(out, " {d}").unwrap();
                }
                out.push('\n');
            }
        }
        writeln!(out, "source {}", self.source).unwrap();
        writeln!(out, "sink {}", self.sink).unwrap();
        writeln!(out, "outer {}", self.outer).unwrap();
        if self.undirected {
            out.push_str("undirected\n");
        }
        out
    }

    /// Describes an existing graph (all capacities left at the default).
    pub fn from_graph(g: &PlaneGraph) -> GraphSpec {
        GraphSpec {
            vertex_count: g.vertex_count(),
            edges: g
                .edge_list()
                .into_iter()
                .map(|(tail, head)| EdgeSpec { tail, head, cap: None })
                .collect(),
            rotations: g.rotations().iter().map(|r| Some(r.clone())).collect(),
            source: g.source(),
            sink: g.sink(),
            outer: g.outer_dart(),
            undirected: false,
        }
    }
}

/// Validates a parsed description into a [`PlaneGraph`].
pub fn build_graph(spec: &GraphSpec) -> Result<PlaneGraph, EmbedError> {
    let mut rotation = Vec::with_capacity(spec.vertex_count);
    for (v, r) in spec.rotations.iter().enumerate() {
        match r {
            Some(r) => rotation.push(r.clone()),
            None => {
                // a vertex without a `rot` line is only acceptable if it has no darts
                let touches = spec.edges.iter().position(|e| e.tail == v || e.head == v);
                if let Some(e) = touches {
                    let d = if spec.edges[e].tail == v { Dart::forward(e) } else { Dart::backward(e) };
                    return Err(EmbedError::MissingRotationEntry { vertex: v, dart: d });
                }
                rotation.push(Vec::new());
            }
        }
    }
    let edges: Vec<(usize, usize)> = spec.edges.iter().map(|e| (e.tail, e.head)).collect();
    PlaneGraph::new(spec.vertex_count, &edges, rotation, spec.source, spec.sink, spec.outer)
}
