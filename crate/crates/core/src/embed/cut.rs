use serde::Serialize;

use super::dart::Dart;
use super::graph::{FaceId, PlaneGraph};
use super::EmbedError;

/// Witness that a dart set is the cut `Γ⁺(S)` of a vertex set `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutCertificate {
    /// Vertices of `S`, ascending.
    pub side: Vec<usize>,
    /// `Γ⁺(S)`, ascending.
    pub darts: Vec<Dart>,
    /// `S` and its complement are exactly the components left after deleting the cut edges.
    pub simple: bool,
}

impl CutCertificate {
    pub fn contains(&self, v: usize) -> bool {
        self.side.binary_search(&v).is_ok()
    }
}

/// The dual graph: one vertex per face, one edge per primal edge, directed
/// from `right(+e)` to `left(+e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub vertex_count: usize,
    pub edges: Vec<(FaceId, FaceId)>,
}

impl DualGraph {
    pub fn of(g: &PlaneGraph) -> DualGraph {
        let edges = (0..g.edge_count())
            .map(|e| {
                let d = Dart::forward(e);
                (g.right(d), g.left(d))
            })
            .collect();
        DualGraph { vertex_count: g.face_count(), edges }
    }

    /// The dual dart of primal dart `d` runs from `right(d)` to `left(d)`.
    pub fn tail(&self, d: Dart) -> FaceId {
        let (r, l) = self.edges[d.edge()];
        if d.is_forward() {
            r
        } else {
            l
        }
    }

    pub fn head(&self, d: Dart) -> FaceId {
        self.tail(d.rev())
    }

    /// Number of dart ends at face `f` (a loop counts twice).
    pub fn degree(&self, f: FaceId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == f) as usize + (b == f) as usize)
            .sum()
    }

    fn plain_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|(a, b)| (a.0, b.0)).collect()
    }
}

fn components(n: usize, edges: &[(usize, usize)], removed: &[bool]) -> (Vec<usize>, usize) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (e, &(a, b)) in edges.iter().enumerate() {
        if !removed[e] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut comp = vec![0; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        comp[v] = label[r];
    }
    (comp, count)
}

/// Cut test on an abstract multigraph given by `(tail, head)` edge pairs.
fn cut_of(n: usize, edges: &[(usize, usize)], darts: &[Dart]) -> Option<CutCertificate> {
    if darts.is_empty() {
        return None;
    }
    let tail = |d: Dart| if d.is_forward() { edges[d.edge()].0 } else { edges[d.edge()].1 };
    let head = |d: Dart| tail(d.rev());
    let mut removed = vec![false; edges.len()];
    for &d in darts {
        if d.edge() >= edges.len() || removed[d.edge()] {
            return None;
        }
        removed[d.edge()] = true;
    }
    let (comp, count) = components(n, edges, &removed);
    // every component meets a cut edge (the graph is connected); sides follow from the darts
    let mut in_side: Vec<Option<bool>> = vec![None; count];
    for &d in darts {
        for (c, want) in [(comp[tail(d)], true), (comp[head(d)], false)] {
            match in_side[c] {
                Some(x) if x != want => return None,
                _ => in_side[c] = Some(want),
            }
        }
    }
    let in_s = |v: usize| in_side[comp[v]] == Some(true);
    let mut expected: Vec<Dart> = (0..2 * edges.len())
        .map(Dart::from_index)
        .filter(|&d| in_s(tail(d)) && !in_s(head(d)))
        .collect();
    expected.sort();
    let mut given = darts.to_vec();
    given.sort();
    if expected != given {
        return None;
    }
    let side: Vec<usize> = (0..n).filter(|&v| in_s(v)).collect();
    if side.is_empty() || side.len() == n {
        return None;
    }
    Some(CutCertificate { side, darts: given, simple: count == 2 })
}

/// Returns the certificate `(S, Γ⁺(S))` if `darts` is a cut of `g`.
pub fn is_simple_cut(g: &PlaneGraph, darts: &[Dart]) -> Option<CutCertificate> {
    cut_of(g.vertex_count(), &g.edge_list(), darts)
}

/// Orders an unordered simple cycle into a closed dart sequence starting at
/// its smallest dart.
pub fn order_cycle(g: &PlaneGraph, darts: &[Dart]) -> Result<Vec<Dart>, EmbedError> {
    if darts.is_empty() {
        return Err(EmbedError::NotASimpleCycle);
    }
    let mut by_tail = std::collections::HashMap::new();
    let mut edges_seen = std::collections::HashSet::new();
    for &d in darts {
        if d.edge() >= g.edge_count() || !edges_seen.insert(d.edge()) {
            return Err(EmbedError::NotASimpleCycle);
        }
        if by_tail.insert(g.tail(d), d).is_some() {
            return Err(EmbedError::NotASimpleCycle);
        }
    }
    let start = *darts.iter().min().unwrap();
    let mut seq = vec![start];
    let mut cur = start;
    loop {
        let v = g.head(cur);
        let next = *by_tail.get(&v).ok_or(EmbedError::NotASimpleCycle)?;
        if next == start {
            break;
        }
        if seq.len() >= darts.len() {
            return Err(EmbedError::NotASimpleCycle);
        }
        seq.push(next);
        cur = next;
    }
    if seq.len() != darts.len() {
        return Err(EmbedError::NotASimpleCycle);
    }
    Ok(seq)
}

/// Checks that a simple cycle of `g` maps to a simple cut of the dual.
pub fn cycle_cut_duality_check(g: &PlaneGraph, darts: &[Dart]) -> Result<bool, EmbedError> {
    order_cycle(g, darts)?;
    let dual = DualGraph::of(g);
    Ok(cut_of(dual.vertex_count, &dual.plain_edges(), darts).is_some_and(|c| c.simple))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::tests::triangle;

    #[test]
    fn triangle_dual_has_three_parallel_edges() {
        let g = triangle();
        let dual = DualGraph::of(&g);
        assert_eq!(dual.vertex_count, 2);
        assert_eq!(dual.edges.len(), 3);
        let first = dual.edges[0];
        assert!(dual.edges.iter().all(|&e| e == first));
        assert_ne!(first.0, first.1);
    }

    #[test]
    fn bridge_dual_is_a_loop() {
        let rot = vec![vec![Dart::forward(0)], vec![Dart::backward(0)]];
        let g = PlaneGraph::new(2, &[(0, 1)], rot, 0, 1, Dart::forward(0)).unwrap();
        let dual = DualGraph::of(&g);
        assert_eq!(dual.vertex_count, 1);
        assert_eq!(dual.edges[0].0, dual.edges[0].1);
        let cut = is_simple_cut(&g, &[Dart::forward(0)]).unwrap();
        assert_eq!(cut.side, vec![0]);
        assert!(cut.simple);
    }

    #[test]
    fn empty_set_is_not_a_cut() {
        assert!(is_simple_cut(&triangle(), &[]).is_none());
    }

    #[test]
    fn triangle_cycle_is_dual_cut() {
        let g = triangle();
        let cyc = [Dart::forward(0), Dart::forward(1), Dart::forward(2)];
        assert!(cycle_cut_duality_check(&g, &cyc).unwrap());
        let rev: Vec<Dart> = cyc.iter().map(|d| d.rev()).collect();
        assert!(cycle_cut_duality_check(&g, &rev).unwrap());
    }

    #[test]
    fn non_cycle_rejected() {
        let g = triangle();
        assert_eq!(
            cycle_cut_duality_check(&g, &[Dart::forward(0), Dart::forward(1)]),
            Err(EmbedError::NotASimpleCycle)
        );
    }

    #[test]
    fn non_simple_cut_is_flagged() {
        // path 0-1-2 with s = 0: removing both edges isolates the middle vertex
        let rot = vec![
            vec![Dart::forward(0)],
            vec![Dart::forward(1), Dart::backward(0)],
            vec![Dart::backward(1)],
        ];
        let g = PlaneGraph::new(3, &[(0, 1), (1, 2)], rot, 0, 2, Dart::forward(0)).unwrap();
        let c = is_simple_cut(&g, &[Dart::forward(0), Dart::backward(1)]).unwrap();
        assert_eq!(c.side, vec![0, 2]);
        assert!(!c.simple);
        assert!(is_simple_cut(&g, &[Dart::forward(0), Dart::forward(1)]).is_none());
    }
}
