//! Operations that need s and t on the infinite face.

use std::collections::HashMap;

use crate::circulation::restrict_to_subgraph;
use crate::embed::{Dart, PlaneGraph};

use super::{compare, Comparison, LatticeError, PathSeq};

/// Whether s and t both lie on the boundary of the infinite face.
pub fn is_st_planar(g: &PlaneGraph) -> bool {
    let f = g.infinite_face();
    g.face_touches_vertex(f, g.source()) && g.face_touches_vertex(f, g.sink())
}

/// Follows a closed walk from its first visit of s to its first visit of t,
/// cutting out every loop as soon as it closes.
fn smooth(g: &PlaneGraph, closed: &[Dart]) -> Result<PathSeq, LatticeError> {
    let i = closed
        .iter()
        .position(|&d| g.tail(d) == g.source())
        .ok_or(LatticeError::NotStPlanarEmbedding)?;
    let mut walk: Vec<Dart> = Vec::new();
    let mut pos = HashMap::from([(g.source(), 0usize)]);
    for k in 0..closed.len() {
        let d = closed[(i + k) % closed.len()];
        let w = g.head(d);
        walk.push(d);
        if w == g.sink() {
            return Ok(PathSeq::from_trusted(walk));
        }
        if let Some(&j) = pos.get(&w) {
            for c in walk.drain(j..) {
                if g.head(c) != w {
                    pos.remove(&g.head(c));
                }
            }
        } else {
            pos.insert(w, walk.len());
        }
    }
    Err(LatticeError::NotStPlanarEmbedding)
}

/// The unique simple s-t path with the infinite face on the left of every dart.
pub fn uppermost_path(g: &PlaneGraph) -> Result<PathSeq, LatticeError> {
    if !is_st_planar(g) {
        return Err(LatticeError::NotStPlanarEmbedding);
    }
    smooth(g, &g.face(g.infinite_face()).boundary)
}

/// The unique simple s-t path with the infinite face on the right of every dart.
pub fn lowermost_path(g: &PlaneGraph) -> Result<PathSeq, LatticeError> {
    if !is_st_planar(g) {
        return Err(LatticeError::NotStPlanarEmbedding);
    }
    let walk: Vec<Dart> = g.face(g.infinite_face()).boundary.iter().rev().map(|d| d.rev()).collect();
    smooth(g, &walk)
}

/// Left-first depth-first search from the corner of s just clockwise of `corner`.
fn left_first(g: &PlaneGraph, usable: &dyn Fn(Dart) -> bool, corner: Dart) -> Option<Vec<Dart>> {
    struct Frame {
        first: Dart,
        tried: usize,
        degree: usize,
    }
    let mut visited = vec![false; g.vertex_count()];
    visited[g.source()] = true;
    let mut path: Vec<Dart> = Vec::new();
    let mut stack = vec![Frame { first: corner, tried: 0, degree: g.rotation(g.source()).len() }];
    while let Some(top) = stack.last_mut() {
        if top.tried == top.degree {
            stack.pop();
            path.pop();
            continue;
        }
        let mut c = top.first;
        for _ in 0..top.tried {
            c = g.prev_ccw(c);
        }
        top.tried += 1;
        let w = g.head(c);
        if !usable(c) || visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(c);
        if w == g.sink() {
            return Some(path);
        }
        // arriving via c, the leftmost turn is the dart clockwise of rev(c)
        let back = c.rev();
        stack.push(Frame { first: g.prev_ccw(back), tried: 0, degree: g.rotation(w).len() - 1 });
    }
    None
}

/// The ⪯-maximum simple s-t path that uses only darts accepted by `usable`.
pub fn uppermost_usable_path(g: &PlaneGraph, usable: &dyn Fn(Dart) -> bool) -> Result<Option<PathSeq>, LatticeError> {
    if !is_st_planar(g) {
        return Err(LatticeError::NotStPlanarEmbedding);
    }
    let f = g.infinite_face();
    let mut best: Option<PathSeq> = None;
    for &a in g.rotation(g.source()) {
        if g.left(a) != f {
            continue;
        }
        let Some(p) = left_first(g, usable, a) else { continue };
        let p = PathSeq::from_trusted(p);
        best = match best {
            Some(b) if compare(g, &p, &b)? != Comparison::LeftOf => Some(b),
            _ => Some(p),
        };
    }
    Ok(best)
}

fn union_edges(p: &PathSeq, q: &PathSeq) -> Vec<usize> {
    let mut keep = p.edges();
    keep.extend(q.edges());
    keep.sort_unstable();
    keep.dedup();
    keep
}

fn extreme_in_union(g: &PlaneGraph, p: &PathSeq, q: &PathSeq, upper: bool) -> Result<PathSeq, LatticeError> {
    if !is_st_planar(g) {
        return Err(LatticeError::NotStPlanarEmbedding);
    }
    p.validate(g)?;
    q.validate(g)?;
    let sub = restrict_to_subgraph(g, &union_edges(p, q))?;
    let r = if upper { uppermost_path(&sub.graph)? } else { lowermost_path(&sub.graph)? };
    PathSeq::new(g, sub.darts_to_parent(r.darts()))
}

/// Meet as the lowermost path of `G[E(P ∪ Q)]`.
pub fn meet_st_planar(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<PathSeq, LatticeError> {
    extreme_in_union(g, p, q, false)
}

/// Join as the uppermost path of `G[E(P ∪ Q)]`.
pub fn join_st_planar(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<PathSeq, LatticeError> {
    extreme_in_union(g, p, q, true)
}

/// Self-test: "P is uppermost in G[E(P ∪ Q)]", "Q is lowermost there" and
/// "P is left of Q" are either all true or all false.
pub fn equivalence_check(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> bool {
    let run = || -> Result<bool, LatticeError> {
        let upper = join_st_planar(g, p, q)? == *p;
        let lower = meet_st_planar(g, p, q)? == *q;
        let left = matches!(compare(g, p, q)?, Comparison::LeftOf | Comparison::Equal);
        Ok(upper == lower && lower == left)
    };
    run().unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> PlaneGraph {
        let f = Dart::forward;
        let b = Dart::backward;
        let edges = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let rot = vec![vec![f(1), f(0)], vec![f(2), b(0)], vec![f(3), b(1)], vec![b(2), b(3)]];
        PlaneGraph::new(4, &edges, rot, 0, 3, b(1)).unwrap()
    }

    #[test]
    fn diamond_extremes() {
        let g = diamond();
        assert_eq!(uppermost_path(&g).unwrap().to_string(), "+0 +2");
        assert_eq!(lowermost_path(&g).unwrap().to_string(), "+1 +3");
        let all = uppermost_usable_path(&g, &|_| true).unwrap().unwrap();
        assert_eq!(all.to_string(), "+0 +2");
        let no_top = uppermost_usable_path(&g, &|d| d.edge() != 2).unwrap().unwrap();
        assert_eq!(no_top.to_string(), "+1 +3");
        assert!(uppermost_usable_path(&g, &|d| d.edge() > 1).unwrap().is_none());
    }

    #[test]
    fn single_edge() {
        let rot = vec![vec![Dart::forward(0)], vec![Dart::backward(0)]];
        let g = PlaneGraph::new(2, &[(0, 1)], rot, 0, 1, Dart::forward(0)).unwrap();
        assert_eq!(uppermost_path(&g).unwrap().to_string(), "+0");
        assert_eq!(lowermost_path(&g).unwrap().to_string(), "+0");
    }

    #[test]
    fn equivalence_on_diamond() {
        let g = diamond();
        let top = PathSeq::parse(&g, "+0 +2").unwrap();
        let bottom = PathSeq::parse(&g, "+1 +3").unwrap();
        assert!(equivalence_check(&g, &top, &bottom));
        assert!(equivalence_check(&g, &bottom, &top));
        assert!(equivalence_check(&g, &top, &top));
        assert_eq!(meet_st_planar(&g, &top, &bottom).unwrap(), bottom);
        assert_eq!(join_st_planar(&g, &top, &bottom).unwrap(), top);
    }
}
