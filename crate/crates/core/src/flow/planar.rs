use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::embed::{CutCertificate, Dart, PlaneGraph};
use crate::lattice::{is_st_planar, uppermost_usable_path};

use super::{mincut_extract, CapacityMap, FlowError, FlowState, PathPacking};

/// Result of the uppermost-path algorithm.
#[derive(Debug, Clone, Serialize)]
pub struct UppermostOutcome {
    pub flow: FlowState,
    /// The augmenting paths in order, each with its bottleneck.
    pub packing: PathPacking,
    pub cut: CutCertificate,
    pub iterations: usize,
}

/// Repeatedly augments along the uppermost residual s-t path.
pub fn maxflow_uppermost(g: &PlaneGraph, cap: &CapacityMap) -> Result<UppermostOutcome, FlowError> {
    if !is_st_planar(g) {
        return Err(FlowError::NotStPlanarEmbedding);
    }
    let mut f = FlowState::zero(g);
    let mut packing = PathPacking::default();
    loop {
        let residual = |d: Dart| f.residual(cap, d) > 0;
        let Some(p) = uppermost_usable_path(g, &residual)? else { break };
        let k = p.darts().iter().map(|&d| f.residual(cap, d)).min().expect("paths are non-empty");
        for &d in p.darts() {
            f.push(d, k);
        }
        f.value += k;
        packing.entries.push((p, k));
    }
    let cut = mincut_extract(g, cap, &f)?;
    let iterations = packing.entries.len();
    Ok(UppermostOutcome { flow: f, packing, cut, iterations })
}

/// Max flow from one shortest-path computation in the dual.
///
/// The infinite face is split at its s and t corners into a top copy (next
/// to the boundary walk from s to t) and a bottom copy. Crossing dart `d`
/// from its left face to its right face costs `cap(d)`. With `dist` the
/// distances from the top copy, the net flow on `d` is
/// `dist(right(d)) − dist(left(d))` and the value is `dist(bottom)`.
pub fn maxflow_dual_sp(g: &PlaneGraph, cap: &CapacityMap) -> Result<FlowState, FlowError> {
    if !is_st_planar(g) {
        return Err(FlowError::NotStPlanarEmbedding);
    }
    if let Some(d) = g.darts().find(|&d| cap.get(d) < 0) {
        return Err(FlowError::NegativeCapacity(d));
    }
    let inf = g.infinite_face();
    let orbit = &g.face(inf).boundary;
    let k = orbit.len();
    let i = orbit.iter().position(|&d| g.tail(d) == g.source()).expect("s lies on the infinite face");
    let j = (1..=k)
        .map(|step| (i + step) % k)
        .find(|&x| g.tail(orbit[x]) == g.sink())
        .expect("t lies on the infinite face");
    let mut top = vec![false; g.dart_count()];
    let mut x = i;
    while x != j {
        top[orbit[x].index()] = true;
        x = (x + 1) % k;
    }

    let top_node = inf.0;
    let bottom_node = g.face_count();
    let node_left = |d: Dart| {
        let f = g.left(d);
        if f == inf && !top[d.index()] {
            bottom_node
        } else {
            f.0
        }
    };
    let node_right = |d: Dart| node_left(d.rev());

    let n = g.face_count() + 1;
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for d in g.darts() {
        adj[node_left(d)].push((node_right(d), cap.get(d)));
    }
    let mut dist = vec![i64::MAX; n];
    dist[top_node] = 0;
    let mut heap = BinaryHeap::from([Reverse((0i64, top_node))]);
    while let Some(Reverse((du, u))) = heap.pop() {
        if du > dist[u] {
            continue;
        }
        for &(w, len) in &adj[u] {
            let nd = du + len;
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Reverse((nd, w)));
            }
        }
    }
    let net: Vec<i64> = (0..g.edge_count())
        .map(|e| {
            let d = Dart::forward(e);
            dist[node_right(d)] - dist[node_left(d)]
        })
        .collect();
    let f = FlowState::from_net(g, &net);
    debug_assert_eq!(f.value, dist[bottom_node]);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> PlaneGraph {
        let rot = vec![vec![Dart::forward(0)], vec![Dart::backward(0)]];
        PlaneGraph::new(2, &[(0, 1)], rot, 0, 1, Dart::forward(0)).unwrap()
    }

    #[test]
    fn single_edge_cap_seven() {
        let g = single_edge();
        let cap = CapacityMap::from_edges(&g, &[7], false).unwrap();
        let up = maxflow_uppermost(&g, &cap).unwrap();
        assert_eq!(up.flow.value, 7);
        assert_eq!(up.packing.entries.len(), 1);
        assert_eq!(up.iterations, 1);
        let dual = maxflow_dual_sp(&g, &cap).unwrap();
        assert_eq!(dual.value, 7);
        dual.check(&g, &cap).unwrap();
    }
}
