//! Bundled example graphs with their named path families.

use crate::embed::{build_graph, GraphSpec, PlaneGraph};
use crate::lattice::PathSeq;

use super::PathFamily;

/// A bundled graph and, in order, its named paths `P1, P2, …`.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub spec: GraphSpec,
    pub graph: PlaneGraph,
    pub paths: Vec<PathSeq>,
}

impl Fixture {
    pub fn family(&self) -> PathFamily {
        PathFamily { graph: self.graph.clone(), paths: self.paths.clone() }
    }

    /// The `k`-th named path, 1-based.
    pub fn path(&self, k: usize) -> &PathSeq {
        &self.paths[k - 1]
    }
}

const SOURCES: &[(&str, &str, &str)] = &[
    ("fig1", include_str!("../../fixtures/fig1.graph"), include_str!("../../fixtures/fig1-paths.txt")),
    ("fig2", include_str!("../../fixtures/fig2.graph"), include_str!("../../fixtures/fig2-paths.txt")),
    ("k33st", include_str!("../../fixtures/k33st.graph"), include_str!("../../fixtures/fig3-family.txt")),
    ("k5st", include_str!("../../fixtures/k5st.graph"), include_str!("../../fixtures/fig4-family.txt")),
];

/// Parses a path list: one dart sequence per line, `#` comments.
pub fn parse_path_list(g: &PlaneGraph, text: &str) -> Result<Vec<PathSeq>, crate::Error> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| PathSeq::parse(g, l).map_err(Into::into))
        .collect()
}

fn build(name: &'static str, graph: &str, paths: &str) -> Fixture {
    let spec = GraphSpec::parse(graph).unwrap_or_else(|e| panic!("bundled fixture {name}: {e}"));
    let g = build_graph(&spec).unwrap_or_else(|e| panic!("bundled fixture {name}: {e}"));
    let paths = parse_path_list(&g, paths).unwrap_or_else(|e| panic!("bundled fixture {name}: {e}"));
    Fixture { name, spec, graph: g, paths }
}

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|s| s.0)
}

pub fn load(name: &str) -> Option<Fixture> {
    SOURCES.iter().find(|s| s.0 == name).map(|&(n, g, p)| build(n, g, p))
}

pub fn all() -> Vec<Fixture> {
    SOURCES.iter().map(|&(n, g, p)| build(n, g, p)).collect()
}

/// Diamond with a vertical middle edge; s on the left, t on the right.
pub fn fig1() -> Fixture {
    load("fig1").expect("bundled")
}

/// Two crossing routes.
pub fn fig2() -> Fixture {
    load("fig2").expect("bundled")
}

/// The four-path family on K3,3 without a consecutive order.
pub fn k33st() -> Fixture {
    load("k33st").expect("bundled")
}

/// The eight-path family on K5 without a consecutive order.
pub fn k5st() -> Fixture {
    load("k5st").expect("bundled")
}
