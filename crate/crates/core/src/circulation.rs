//! Edge vectors, the cycle space and face potentials.
//!
//! A circulation `c` on a connected plane graph has a unique face potential
//! `φ` with `φ(f∞) = 0` and `c(d) = φ(right(d)) − φ(left(d))` for every dart.
//! Equivalently `c = Σ φ(f)·δ_f` over bounded faces, where `δ_f` is the
//! clockwise boundary of `f`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::embed::{Dart, EmbedError, FaceId, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CirculationError {
    #[error("edge {0} is used more than once")]
    RepeatedEdge(usize),
    #[error("the infinite face has no boundary vector")]
    InfiniteFaceBoundaryRequested,
    #[error("vector is not a circulation")]
    NotACirculation,
    #[error("vector has {found} entries, graph has {expected} edges")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("kept edges do not form a connected subgraph containing s and t")]
    DisconnectedSubgraph,
}

/// Integer vector indexed by edges; evaluated on darts with `v(rev d) = −v(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeVector {
    pub values: Vec<i64>,
}

impl EdgeVector {
    pub fn zeros(edge_count: usize) -> Self {
        EdgeVector { values: vec![0; edge_count] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn edge(&self, e: usize) -> i64 {
        self.values[e]
    }

    /// Value on a dart: `v(+e) = v[e]`, `v(−e) = −v[e]`.
    #[inline]
    pub fn at(&self, d: Dart) -> i64 {
        d.signum() * self.values[d.edge()]
    }

    /// Adds `k` units along dart `d`.
    pub fn add_dart(&mut self, d: Dart, k: i64) {
        self.values[d.edge()] += k * d.signum();
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        EdgeVector { values: self.values.iter().map(|x| x * k).collect() }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        EdgeVector { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }
}

/// Integer vector indexed by faces, zero on the infinite face.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FacePotential {
    pub values: Vec<i64>,
}

impl FacePotential {
    #[inline]
    pub fn at(&self, f: FaceId) -> i64 {
        self.values[f.0]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&x| x >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.values.iter().all(|&x| x <= 0)
    }

    /// Potential left of `d`.
    pub fn left(&self, g: &PlaneGraph, d: Dart) -> i64 {
        self.at(g.left(d))
    }

    /// Potential right of `d`.
    pub fn right(&self, g: &PlaneGraph, d: Dart) -> i64 {
        self.at(g.right(d))
    }

    /// Sorted copy of the values.
    pub fn multiset(&self) -> Vec<i64> {
        let mut v = self.values.clone();
        v.sort_unstable();
        v
    }
}

/// `δ_P`: `+1` on edges traversed forward, `−1` on edges traversed backward.
pub fn path_vector(g: &PlaneGraph, darts: &[Dart]) -> Result<EdgeVector, CirculationError> {
    let mut v = EdgeVector::zeros(g.edge_count());
    let mut used = vec![false; g.edge_count()];
    for &d in darts {
        if std::mem::replace(&mut used[d.edge()], true) {
            return Err(CirculationError::RepeatedEdge(d.edge()));
        }
        v.add_dart(d, 1);
    }
    Ok(v)
}

/// `δ_f` of a bounded face: its boundary traversed clockwise.
///
/// Face orbits keep the face on their left, so a bounded face's orbit runs
/// counterclockwise and `δ_f` is the negated orbit vector. Antiparallel darts
/// on the same orbit cancel.
pub fn face_boundary_vector(g: &PlaneGraph, f: FaceId) -> Result<EdgeVector, CirculationError> {
    if f == g.infinite_face() {
        return Err(CirculationError::InfiniteFaceBoundaryRequested);
    }
    let mut v = EdgeVector::zeros(g.edge_count());
    for &d in &g.face(f).boundary {
        v.add_dart(d, -1);
    }
    Ok(v)
}

/// Net flow out of every vertex.
pub fn excess(g: &PlaneGraph, v: &EdgeVector) -> Vec<i64> {
    let mut out = vec![0; g.vertex_count()];
    for (e, &x) in v.values.iter().enumerate() {
        let (a, b) = g.endpoints(e);
        out[a] += x;
        out[b] -= x;
    }
    out
}

pub fn is_circulation(g: &PlaneGraph, v: &EdgeVector) -> bool {
    v.len() == g.edge_count() && excess(g, v).iter().all(|&x| x == 0)
}

/// Order in which the dual is explored when solving for a potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// `Φ(c)`, found by breadth-first search of the dual from `f∞`.
pub fn face_potential(g: &PlaneGraph, c: &EdgeVector) -> Result<FacePotential, CirculationError> {
    face_potential_with(g, c, Traversal::BreadthFirst)
}

/// `Φ(c)` with an explicit dual traversal order; the result does not depend on it.
pub fn face_potential_with(
    g: &PlaneGraph,
    c: &EdgeVector,
    order: Traversal,
) -> Result<FacePotential, CirculationError> {
    if c.len() != g.edge_count() {
        return Err(CirculationError::DimensionMismatch { expected: g.edge_count(), found: c.len() });
    }
    let mut phi: Vec<Option<i64>> = vec![None; g.face_count()];
    let root = g.infinite_face();
    phi[root.0] = Some(0);
    let mut work = VecDeque::from([root]);
    while let Some(f) = match order {
        Traversal::BreadthFirst => work.pop_front(),
        Traversal::DepthFirst => work.pop_back(),
    } {
        let here = phi[f.0].expect("queued faces are labelled");
        for &d in &g.face(f).boundary {
            let r = g.right(d);
            if phi[r.0].is_none() {
                phi[r.0] = Some(here + c.at(d));
                work.push_back(r);
            }
        }
    }
    let values: Vec<i64> = phi.into_iter().map(|x| x.expect("dual of a connected plane graph is connected")).collect();
    let pot = FacePotential { values };
    for d in g.darts() {
        if c.at(d) != pot.right(g, d) - pot.left(g, d) {
            return Err(CirculationError::NotACirculation);
        }
    }
    Ok(pot)
}

/// `Σ φ(f)·δ_f` over bounded faces.
pub fn expand_potential(g: &PlaneGraph, phi: &FacePotential) -> EdgeVector {
    let mut v = EdgeVector::zeros(g.edge_count());
    for face in g.faces() {
        let k = phi.at(face.id);
        if k != 0 && face.id != g.infinite_face() {
            for &d in &face.boundary {
                v.add_dart(d, -k);
            }
        }
    }
    v
}

/// `D(c) = {d : c(d) > 0}`, ascending.
pub fn induced_darts(c: &EdgeVector) -> Vec<Dart> {
    let mut out = Vec::new();
    for (e, &x) in c.values.iter().enumerate() {
        if x > 0 {
            out.push(Dart::forward(e));
        } else if x < 0 {
            out.push(Dart::backward(e));
        }
    }
    out
}

/// An embedded subgraph together with the maps back to its parent.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: PlaneGraph,
    /// `edge_map[new] = old`.
    pub edge_map: Vec<usize>,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<usize>,
    old_to_new_edge: Vec<Option<usize>>,
}

impl Subgraph {
    pub fn to_parent(&self, d: Dart) -> Dart {
        Dart::new(self.edge_map[d.edge()], d.sign())
    }

    /// Maps a parent dart into the subgraph, if its edge was kept.
    pub fn to_child(&self, d: Dart) -> Option<Dart> {
        self.old_to_new_edge
            .get(d.edge())
            .copied()
            .flatten()
            .map(|e| Dart::new(e, d.sign()))
    }

    pub fn darts_to_child(&self, darts: &[Dart]) -> Option<Vec<Dart>> {
        darts.iter().map(|&d| self.to_child(d)).collect()
    }

    pub fn darts_to_parent(&self, darts: &[Dart]) -> Vec<Dart> {
        darts.iter().map(|&d| self.to_parent(d)).collect()
    }
}

/// The embedded subgraph on the edges in `keep`.
///
/// Rotations are restricted, vertices without kept edges are dropped and
/// renumbered in increasing order, and the new infinite face is the face
/// that swallows the old one after deletion.
pub fn restrict_to_subgraph(g: &PlaneGraph, keep: &[usize]) -> Result<Subgraph, CirculationError> {
    let m = g.edge_count();
    let mut kept = vec![false; m];
    for &e in keep {
        if e >= m {
            return Err(CirculationError::DisconnectedSubgraph);
        }
        kept[e] = true;
    }
    let edge_map: Vec<usize> = (0..m).filter(|&e| kept[e]).collect();
    let mut old_to_new_edge = vec![None; m];
    for (new, &old) in edge_map.iter().enumerate() {
        old_to_new_edge[old] = Some(new);
    }
    let mut touched = vec![false; g.vertex_count()];
    for &e in &edge_map {
        let (a, b) = g.endpoints(e);
        touched[a] = true;
        touched[b] = true;
    }
    if !touched[g.source()] || !touched[g.sink()] {
        return Err(CirculationError::DisconnectedSubgraph);
    }
    let vertex_map: Vec<usize> = (0..g.vertex_count()).filter(|&v| touched[v]).collect();
    let mut old_to_new_vertex = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in vertex_map.iter().enumerate() {
        old_to_new_vertex[old] = new;
    }
    let map_dart = |d: Dart| Dart::new(old_to_new_edge[d.edge()].unwrap(), d.sign());

    let edges: Vec<(usize, usize)> = edge_map
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            (old_to_new_vertex[a], old_to_new_vertex[b])
        })
        .collect();
    let rotation: Vec<Vec<Dart>> = vertex_map
        .iter()
        .map(|&v| g.rotation(v).iter().filter(|d| kept[d.edge()]).map(|&d| map_dart(d)).collect())
        .collect();

    // faces of g that merge with f∞ once the deleted edges are gone
    let mut merged = vec![false; g.face_count()];
    merged[g.infinite_face().0] = true;
    let mut queue = VecDeque::from([g.infinite_face()]);
    while let Some(f) = queue.pop_front() {
        for &d in &g.face(f).boundary {
            let r = g.right(d);
            if !kept[d.edge()] && !merged[r.0] {
                merged[r.0] = true;
                queue.push_back(r);
            }
        }
    }
    let outer_old = if kept[g.outer_dart().edge()] {
        Some(g.outer_dart())
    } else {
        g.darts().filter(|&d| kept[d.edge()] && merged[g.left(d).0]).min()
    };
    let outer = map_dart(outer_old.ok_or(CirculationError::DisconnectedSubgraph)?);

    let graph = PlaneGraph::new(
        vertex_map.len(),
        &edges,
        rotation,
        old_to_new_vertex[g.source()],
        old_to_new_vertex[g.sink()],
        outer,
    )
    .map_err(|e| match e {
        EmbedError::DisconnectedGraph => CirculationError::DisconnectedSubgraph,
        other => panic!("restriction of a valid embedding failed: {other}"),
    })?;
    Ok(Subgraph { graph, edge_map, vertex_map, old_to_new_edge })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PlaneGraph {
        let f = Dart::forward;
        let b = Dart::backward;
        let rot = vec![vec![f(0), b(2)], vec![f(1), b(0)], vec![f(2), b(1)]];
        PlaneGraph::new(3, &[(0, 1), (1, 2), (2, 0)], rot, 0, 2, b(0)).unwrap()
    }

    #[test]
    fn inner_triangle_boundary_is_negative() {
        let g = triangle();
        let inner = g.left(Dart::forward(0));
        let v = face_boundary_vector(&g, inner).unwrap();
        assert_eq!(v.values, vec![-1, -1, -1]);
        assert_eq!(
            face_boundary_vector(&g, g.infinite_face()),
            Err(CirculationError::InfiniteFaceBoundaryRequested)
        );
    }

    #[test]
    fn potential_of_clockwise_cycle_is_positive() {
        let g = triangle();
        let cw = path_vector(&g, &[Dart::backward(0), Dart::backward(2), Dart::backward(1)]).unwrap();
        let phi = face_potential(&g, &cw).unwrap();
        assert_eq!(phi.at(g.left(Dart::forward(0))), 1);
        assert_eq!(phi.at(g.infinite_face()), 0);
        assert_eq!(expand_potential(&g, &phi), cw);
    }

    #[test]
    fn path_vector_rejects_repeats() {
        let g = triangle();
        assert_eq!(
            path_vector(&g, &[Dart::forward(0), Dart::backward(0)]),
            Err(CirculationError::RepeatedEdge(0))
        );
    }

    #[test]
    fn non_circulation_is_detected() {
        let g = triangle();
        let p = path_vector(&g, &[Dart::forward(0)]).unwrap();
        assert!(!is_circulation(&g, &p));
        assert_eq!(face_potential(&g, &p), Err(CirculationError::NotACirculation));
        assert!(is_circulation(&g, &EdgeVector::zeros(3)));
    }

    #[test]
    fn induced_darts_follow_signs() {
        let v = EdgeVector { values: vec![1, 0, -2] };
        assert_eq!(induced_darts(&v), vec![Dart::forward(0), Dart::backward(2)]);
    }

    #[test]
    fn restrict_keeps_everything() {
        let g = triangle();
        let sub = restrict_to_subgraph(&g, &[0, 1, 2]).unwrap();
        assert_eq!(sub.graph.face_count(), 2);
        assert_eq!(sub.graph.outer_dart(), g.outer_dart());
        assert_eq!(sub.graph.rotations(), g.rotations());
    }

    #[test]
    fn restrict_to_a_path() {
        let g = triangle();
        let sub = restrict_to_subgraph(&g, &[0, 1]).unwrap();
        assert_eq!(sub.graph.face_count(), 1);
        assert_eq!(sub.graph.vertex_count(), 3);
        assert!(matches!(restrict_to_subgraph(&g, &[0]), Err(CirculationError::DisconnectedSubgraph)));
    }
}
