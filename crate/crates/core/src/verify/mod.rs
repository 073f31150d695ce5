//! Brute-force oracles.
//!
//! Everything here trades speed for obviousness: paths are enumerated
//! exhaustively and lattice operations are recomputed from the full
//! comparison table. The order-existence search and the fixture graphs live
//! here too.

mod axioms;
pub mod fixtures;
pub mod generate;
mod lemmas;
mod order;

use serde::Serialize;

use crate::embed::{Dart, PlaneGraph};
use crate::lattice::{self, Comparison, LatticeError, PathSeq};

pub use axioms::{check_axioms, check_supermodular, AxiomOptions, AxiomReport, SupermodularReport, Violation};
pub use lemmas::{check_structural_lemmas, LemmaReport};
pub use order::{
    forced_pairs, order_existence, order_existence_from, replay, Conclusion, Derivation, OrderVerdict, OrderViolation, Step,
};

/// Default cap on the number of enumerated paths.
pub const DEFAULT_PATH_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("more than {0} simple s-t paths")]
    TooManyPaths(usize),
    #[error("no unique extremum for the pair ({0}, {1})")]
    NoUniqueExtremum(String, String),
    #[error("family has {0} paths; the order search accepts at most 12")]
    FamilyTooLarge(usize),
    #[error("paths {0} and {1} are not a forced pair")]
    NotForced(usize, usize),
    #[error("duplicate path {0} in family")]
    DuplicatePath(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A list of distinct simple s-t paths of one graph.
#[derive(Debug, Clone)]
pub struct PathFamily {
    pub graph: PlaneGraph,
    pub paths: Vec<PathSeq>,
}

impl PathFamily {
    pub fn new(g: &PlaneGraph, paths: Vec<PathSeq>) -> Result<Self, VerifyError> {
        let mut seen = std::collections::HashSet::new();
        for p in &paths {
            p.validate(g)?;
            if !seen.insert(p.clone()) {
                return Err(VerifyError::DuplicatePath(p.to_string()));
            }
        }
        Ok(PathFamily { graph: g.clone(), paths })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, p: &PathSeq) -> Option<usize> {
        self.paths.iter().position(|x| x == p)
    }
}

/// Depth-first enumeration over darts whose edge is allowed, out-darts taken
/// in id order. Stops with `None` once more than `limit` paths are found.
fn enumerate_within(g: &PlaneGraph, allowed: &dyn Fn(usize) -> bool, limit: usize) -> Option<Vec<PathSeq>> {
    let mut out: Vec<Vec<Dart>> = (0..g.vertex_count())
        .map(|v| g.rotation(v).iter().copied().filter(|d| allowed(d.edge())).collect())
        .collect();
    for l in &mut out {
        l.sort();
    }
    let mut found = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path: Vec<Dart> = Vec::new();
    // stack of (vertex, next out-dart position)
    let mut stack = vec![(g.source(), 0usize)];
    on_path[g.source()] = true;
    while let Some(&mut (v, ref mut k)) = stack.last_mut() {
        if *k == out[v].len() {
            stack.pop();
            on_path[v] = false;
            path.pop();
            continue;
        }
        let d = out[v][*k];
        *k += 1;
        let w = g.head(d);
        if on_path[w] {
            continue;
        }
        path.push(d);
        if w == g.sink() {
            found.push(PathSeq::from_trusted(path.clone()));
            if found.len() > limit {
                return None;
            }
            path.pop();
            continue;
        }
        on_path[w] = true;
        stack.push((w, 0));
    }
    Some(found)
}

/// All simple s-t paths (both dart orientations usable) in lexicographic dart order.
pub fn enumerate_simple_paths(g: &PlaneGraph) -> Result<PathFamily, VerifyError> {
    enumerate_simple_paths_limited(g, DEFAULT_PATH_LIMIT)
}

pub fn enumerate_simple_paths_limited(g: &PlaneGraph, limit: usize) -> Result<PathFamily, VerifyError> {
    let paths = enumerate_within(g, &|_| true, limit).ok_or(VerifyError::TooManyPaths(limit))?;
    Ok(PathFamily { graph: g.clone(), paths })
}

/// Simple s-t paths using only edges in `edges`; `None` when more than `limit`.
pub fn paths_within_edges(g: &PlaneGraph, edges: &[usize], limit: usize) -> Option<Vec<PathSeq>> {
    let mut mask = vec![false; g.edge_count()];
    for &e in edges {
        mask[e] = true;
    }
    enumerate_within(g, &|e| mask[e], limit)
}

/// Whether s and t both lie on the infinite face of the given embedding.
pub fn is_st_plane_embedding(g: &PlaneGraph) -> bool {
    lattice::is_st_planar(g)
}

/// Fixed-size bitset over path indices or dart indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &x)| {
            (0..64).filter(move |b| x >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }

    /// First element of `self ∖ o`.
    pub fn first_missing_from(&self, o: &Bits) -> Option<usize> {
        self.0
            .iter()
            .zip(&o.0)
            .enumerate()
            .find(|(_, (a, b))| *a & !*b != 0)
            .map(|(w, (a, b))| w * 64 + (a & !b).trailing_zeros() as usize)
    }
}

/// The edge set of a path; set-valued lattice properties are stated on edges.
pub(crate) fn edge_bits(g: &PlaneGraph, p: &PathSeq) -> Bits {
    let mut b = Bits::new(g.edge_count());
    for d in p.darts() {
        b.set(d.edge());
    }
    b
}

/// The complete comparison table of a family.
#[derive(Debug, Clone)]
pub struct OrderMatrix {
    rel: Vec<Vec<Comparison>>,
    /// `down[j]` = `{i : P_i ⪯ P_j}`.
    down: Vec<Bits>,
    /// `up[i]` = `{j : P_i ⪯ P_j}`.
    up: Vec<Bits>,
}

impl OrderMatrix {
    /// Compares every pair, in parallel when `jobs` allows it.
    pub fn build(family: &PathFamily, jobs: Option<usize>) -> Result<Self, VerifyError> {
        use rayon::prelude::*;
        let g = &family.graph;
        let n = family.len();
        let row = |i: usize| -> Result<Vec<Comparison>, LatticeError> {
            (0..n).map(|j| lattice::compare(g, &family.paths[i], &family.paths[j])).collect()
        };
        let rel: Vec<Vec<Comparison>> = with_jobs(jobs, || (0..n).into_par_iter().map(row).collect::<Result<Vec<_>, LatticeError>>())?;
        let mut down = vec![Bits::new(n); n];
        let mut up = vec![Bits::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if matches!(rel[i][j], Comparison::RightOf | Comparison::Equal) {
                    down[j].set(i);
                    up[i].set(j);
                }
            }
        }
        Ok(OrderMatrix { rel, down, up })
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    pub fn comparison(&self, i: usize, j: usize) -> Comparison {
        self.rel[i][j]
    }

    /// `P_i ⪯ P_j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].get(i)
    }

    pub(crate) fn down(&self, j: usize) -> &Bits {
        &self.down[j]
    }

    pub(crate) fn up(&self, i: usize) -> &Bits {
        &self.up[i]
    }

    fn extremum(&self, common: &Bits, cone: &[Bits]) -> Option<usize> {
        common.ones().find(|&m| common.is_subset(&cone[m]))
    }

    /// Length of the longest strict chain ending in each path.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| self.down[j].ones().count());
        let mut h = vec![0; n];
        for &j in &order {
            h[j] = self.down[j].ones().filter(|&i| i != j).map(|i| h[i] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Index of the ⪯-maximum common lower bound, if unique.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.extremum(&self.down[i].and(&self.down[j]), &self.down)
    }

    /// Index of the ⪯-minimum common upper bound, if unique.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.extremum(&self.up[i].and(&self.up[j]), &self.up)
    }
}

/// Runs `f` on a dedicated pool of `jobs` threads, or on the global pool.
pub(crate) fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .unwrap_or_else(|_| unreachable!("thread pool construction does not fail for n ≥ 1")),
        None => f(),
    }
}

fn brute_bound(family: &PathFamily, p: &PathSeq, q: &PathSeq, upper: bool) -> Result<PathSeq, VerifyError> {
    let g = &family.graph;
    let below = |x: &PathSeq, y: &PathSeq| lattice::precedes(g, x, y);
    let mut common = Vec::new();
    for c in &family.paths {
        let ok = if upper { below(p, c)? && below(q, c)? } else { below(c, p)? && below(c, q)? };
        if ok {
            common.push(c);
        }
    }
    for &m in &common {
        let mut extreme = true;
        for &c in &common {
            let fits = if upper { below(m, c)? } else { below(c, m)? };
            if !fits {
                extreme = false;
                break;
            }
        }
        if extreme {
            return Ok(m.clone());
        }
    }
    Err(VerifyError::NoUniqueExtremum(p.to_string(), q.to_string()))
}

/// The ⪯-maximum of all common lower bounds, by exhaustive comparison.
pub fn brute_meet(family: &PathFamily, p: &PathSeq, q: &PathSeq) -> Result<PathSeq, VerifyError> {
    brute_bound(family, p, q, false)
}

/// The ⪯-minimum of all common upper bounds, by exhaustive comparison.
pub fn brute_join(family: &PathFamily, p: &PathSeq, q: &PathSeq) -> Result<PathSeq, VerifyError> {
    brute_bound(family, p, q, true)
}

/// Renders path indices against a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedPath {
    pub index: usize,
    pub darts: String,
}

impl NamedPath {
    pub(crate) fn of(family: &PathFamily, i: usize) -> Self {
        NamedPath { index: i, darts: family.paths[i].to_string() }
    }
}
