//! Maximum flow and weighted path packing.
//!
//! Flows are stored in canceled form: at most one dart of every edge carries
//! flow. The residual capacity of a dart is `cap(d) − flow(d) + flow(rev d)`.

mod packing;
mod planar;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::embed::{is_simple_cut, CutCertificate, Dart, GraphSpec, PlaneGraph};
use crate::lattice::{LatticeError, PathSeq};

pub use packing::{packing_oracle, packing_oracle_with, weighted_packing, OracleLimits};
pub use planar::{maxflow_dual_sp, maxflow_uppermost, UppermostOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("s and t are not both on the infinite face")]
    NotStPlanarEmbedding,
    #[error("dart {0} has negative capacity")]
    NegativeCapacity(Dart),
    #[error("path {0} has negative weight")]
    NegativeWeight(String),
    #[error("flow is not maximum: a residual s-t path exists")]
    ResidualPathExists,
    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),
    #[error("capacity map has {found} entries, graph has {expected} darts")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weights line {line}: {message}")]
    BadWeights { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Nonnegative integer capacity per dart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityMap {
    cap: Vec<i64>,
}

impl CapacityMap {
    /// Capacities indexed by dart index (`2e` forward, `2e + 1` backward).
    pub fn new(g: &PlaneGraph, cap: Vec<i64>) -> Result<Self, FlowError> {
        if cap.len() != g.dart_count() {
            return Err(FlowError::DimensionMismatch { expected: g.dart_count(), found: cap.len() });
        }
        if let Some(i) = cap.iter().position(|&c| c < 0) {
            return Err(FlowError::NegativeCapacity(Dart::from_index(i)));
        }
        Ok(CapacityMap { cap })
    }

    /// One capacity per edge; backward darts get the same value when
    /// `undirected`, otherwise zero.
    pub fn from_edges(g: &PlaneGraph, per_edge: &[i64], undirected: bool) -> Result<Self, FlowError> {
        if per_edge.len() != g.edge_count() {
            return Err(FlowError::DimensionMismatch { expected: g.dart_count(), found: 2 * per_edge.len() });
        }
        let cap = per_edge.iter().flat_map(|&c| [c, if undirected { c } else { 0 }]).collect();
        CapacityMap::new(g, cap)
    }

    pub fn uniform(g: &PlaneGraph, c: i64, undirected: bool) -> Result<Self, FlowError> {
        CapacityMap::from_edges(g, &vec![c; g.edge_count()], undirected)
    }

    /// Capacities declared in a graph file: `cap` per edge, default 1.
    pub fn from_spec(g: &PlaneGraph, spec: &GraphSpec) -> Result<Self, FlowError> {
        let per_edge: Vec<i64> = spec.edges.iter().map(|e| e.cap.unwrap_or(1)).collect();
        CapacityMap::from_edges(g, &per_edge, spec.undirected)
    }

    #[inline]
    pub fn get(&self, d: Dart) -> i64 {
        self.cap[d.index()]
    }

    pub fn total(&self) -> i64 {
        self.cap.iter().sum()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.cap
    }

    /// Capacity of the darts of a cut.
    pub fn cut_capacity(&self, cut: &CutCertificate) -> i64 {
        cut.darts.iter().map(|&d| self.get(d)).sum()
    }
}

/// A feasible flow in canceled form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowState {
    /// Flow per dart index.
    pub flow: Vec<i64>,
    pub value: i64,
}

impl FlowState {
    pub fn zero(g: &PlaneGraph) -> Self {
        FlowState { flow: vec![0; g.dart_count()], value: 0 }
    }

    /// Builds the canceled form from a net flow per edge (positive = forward).
    pub fn from_net(g: &PlaneGraph, net: &[i64]) -> Self {
        let mut flow = vec![0; g.dart_count()];
        for (e, &x) in net.iter().enumerate() {
            if x > 0 {
                flow[Dart::forward(e).index()] = x;
            } else {
                flow[Dart::backward(e).index()] = -x;
            }
        }
        let s = g.source();
        let value = g.rotation(s).iter().map(|&d| flow[d.index()] - flow[d.rev().index()]).sum();
        FlowState { flow, value }
    }

    #[inline]
    pub fn flow(&self, d: Dart) -> i64 {
        self.flow[d.index()]
    }

    /// `flow(d) − flow(rev d)`.
    #[inline]
    pub fn net(&self, d: Dart) -> i64 {
        self.flow[d.index()] - self.flow[d.rev().index()]
    }

    #[inline]
    pub fn residual(&self, cap: &CapacityMap, d: Dart) -> i64 {
        cap.get(d) - self.flow(d) + self.flow(d.rev())
    }

    /// Pushes `k` units along `d`, keeping the canceled form.
    pub fn push(&mut self, d: Dart, k: i64) {
        let n = self.net(d) + k;
        self.flow[d.index()] = n.max(0);
        self.flow[d.rev().index()] = (-n).max(0);
    }

    /// Capacity bounds, canceled form, conservation and the declared value.
    pub fn check(&self, g: &PlaneGraph, cap: &CapacityMap) -> Result<(), String> {
        let mut excess = vec![0i64; g.vertex_count()];
        for d in g.darts() {
            let x = self.flow(d);
            if x < 0 || x > cap.get(d) {
                return Err(format!("dart {d} carries {x} outside [0, {}]", cap.get(d)));
            }
            if x > 0 && self.flow(d.rev()) > 0 {
                return Err(format!("edge {} carries flow both ways", d.edge()));
            }
            excess[g.tail(d)] += x;
            excess[g.head(d)] -= x;
        }
        for (v, &x) in excess.iter().enumerate() {
            let want = if v == g.source() {
                self.value
            } else if v == g.sink() {
                -self.value
            } else {
                0
            };
            if x != want {
                return Err(format!("vertex {v} has excess {x}, expected {want}"));
            }
        }
        Ok(())
    }
}

/// Paths with nonnegative integer weights `y`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PathPacking {
    pub entries: Vec<(PathSeq, i64)>,
}

impl PathPacking {
    pub fn value(&self) -> i64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// `Σ r(S)·y(S)`.
    pub fn objective(&self, r: &dyn Fn(&PathSeq) -> i64) -> i64 {
        self.entries.iter().map(|(p, y)| r(p) * y).sum()
    }

    /// `Σ_{S ∋ d} y(S)` per dart index.
    pub fn load(&self, g: &PlaneGraph) -> Vec<i64> {
        let mut load = vec![0; g.dart_count()];
        for (p, y) in &self.entries {
            for &d in p.darts() {
                load[d.index()] += y;
            }
        }
        load
    }

    pub fn is_feasible(&self, g: &PlaneGraph, cap: &CapacityMap) -> bool {
        self.entries.iter().all(|e| e.1 >= 0)
            && self.load(g).iter().enumerate().all(|(i, &l)| l <= cap.get(Dart::from_index(i)))
    }
}

/// Integer path weights read from a file; unlisted paths weigh 1.
///
/// ```text
/// # weight, then the path's darts
/// 2 +0 +2
/// 0 +1 +3
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightTable {
    weights: BTreeMap<PathSeq, i64>,
}

impl WeightTable {
    pub fn parse(g: &PlaneGraph, text: &str) -> Result<Self, FlowError> {
        let mut weights = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            let Some((w, rest)) = content.split_once(char::is_whitespace) else {
                if content.is_empty() {
                    continue;
                }
                return Err(FlowError::BadWeights { line, message: "expected a weight and a path".into() });
            };
            let w: i64 = w
                .parse()
                .map_err(|_| FlowError::BadWeights { line, message: format!("invalid weight `{w}`") })?;
            let p = PathSeq::parse(g, rest).map_err(|e| FlowError::BadWeights { line, message: e.to_string() })?;
            if weights.insert(p, w).is_some() {
                return Err(FlowError::BadWeights { line, message: "path listed twice".into() });
            }
        }
        Ok(WeightTable { weights })
    }

    pub fn get(&self, p: &PathSeq) -> i64 {
        self.weights.get(p).copied().unwrap_or(1)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Vertices reachable from s through darts with positive residual capacity,
/// with the breadth-first predecessor dart of each.
fn residual_reach(g: &PlaneGraph, cap: &CapacityMap, f: &FlowState) -> (Vec<bool>, Vec<Option<Dart>>) {
    let mut pred: Vec<Option<Dart>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[g.source()] = true;
    let mut queue = VecDeque::from([g.source()]);
    while let Some(v) = queue.pop_front() {
        let mut out = g.rotation(v).to_vec();
        out.sort();
        for d in out {
            let w = g.head(d);
            if !seen[w] && f.residual(cap, d) > 0 {
                seen[w] = true;
                pred[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    (seen, pred)
}

/// Shortest augmenting paths (Edmonds–Karp), ties broken by dart id.
pub fn maxflow_generic(g: &PlaneGraph, cap: &CapacityMap) -> Result<FlowState, FlowError> {
    if cap.as_slice().len() != g.dart_count() {
        return Err(FlowError::DimensionMismatch { expected: g.dart_count(), found: cap.as_slice().len() });
    }
    let mut f = FlowState::zero(g);
    loop {
        let (seen, pred) = residual_reach(g, cap, &f);
        if !seen[g.sink()] {
            return Ok(f);
        }
        let mut path = Vec::new();
        let mut v = g.sink();
        while v != g.source() {
            let d = pred[v].expect("reached vertices have a predecessor");
            path.push(d);
            v = g.tail(d);
        }
        let k = path.iter().map(|&d| f.residual(cap, d)).min().unwrap();
        for &d in &path {
            f.push(d, k);
        }
        f.value += k;
    }
}

/// The cut `Γ⁺(S)` for `S` the residual-reachable set of a maximum flow.
pub fn mincut_extract(g: &PlaneGraph, cap: &CapacityMap, f: &FlowState) -> Result<CutCertificate, FlowError> {
    let (seen, _) = residual_reach(g, cap, f);
    if seen[g.sink()] {
        return Err(FlowError::ResidualPathExists);
    }
    let in_s = |v: usize| seen[v];
    let mut darts: Vec<Dart> = g.darts().filter(|&d| in_s(g.tail(d)) && !in_s(g.head(d))).collect();
    darts.sort();
    let side: Vec<usize> = (0..g.vertex_count()).filter(|&v| in_s(v)).collect();
    let simple = is_simple_cut(g, &darts).is_some_and(|c| c.simple && c.side == side);
    Ok(CutCertificate { side, darts, simple })
}
