use crate::circulation::EdgeVector;
use crate::embed::{Dart, PlaneGraph};

use super::{
    compare, decompose, difference_potential, Comparison, LatticeError, MeetJoinResult, Orientation, PathSeq,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Meet,
    Join,
}

/// `δ_P − Σ_{f∈S} φ(f)·δ_f` where `S` holds the faces of positive (meet) or
/// negative (join) potential.
fn bound_vector(g: &PlaneGraph, p: &PathSeq, q: &PathSeq, side: Side) -> Result<EdgeVector, LatticeError> {
    let phi = difference_potential(g, p, q)?;
    let part = |x: i64| match side {
        Side::Meet => x.max(0),
        Side::Join => x.min(0),
    };
    let mut v = p.vector(g);
    for e in 0..g.edge_count() {
        let d = Dart::forward(e);
        v.values[e] -= part(phi.right(g, d)) - part(phi.left(g, d));
    }
    Ok(v)
}

fn bound(g: &PlaneGraph, p: &PathSeq, q: &PathSeq, side: Side) -> Result<MeetJoinResult, LatticeError> {
    let v = bound_vector(g, p, q, side)?;
    let fail = |msg: String| Err(LatticeError::PostconditionViolated(msg));
    if let Some(e) = v.values.iter().position(|x| x.abs() > 1) {
        return fail(format!("entry {} on edge {e}", v.values[e]));
    }
    for d in crate::circulation::induced_darts(&v) {
        if !p.contains(d) && !q.contains(d) {
            return fail(format!("dart {d} lies outside P ∪ Q"));
        }
    }
    let res = decompose(g, &v)?;
    let (ok, wrong) = match side {
        Side::Meet => (Comparison::RightOf, Orientation::Counterclockwise),
        Side::Join => (Comparison::LeftOf, Orientation::Clockwise),
    };
    for other in [p, q] {
        let c = compare(g, &res.path, other)?;
        if c != ok && c != Comparison::Equal {
            return fail(format!("result {} is {c} input {other}", res.path));
        }
    }
    if let Some(c) = res.cycles.iter().find(|c| c.orientation == wrong) {
        return fail(format!("decomposition cycle {:?} has the wrong orientation", c.darts));
    }
    Ok(res)
}

/// Greatest lower bound of `P` and `Q` (towards the right).
pub fn meet(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<MeetJoinResult, LatticeError> {
    bound(g, p, q, Side::Meet)
}

/// Least upper bound of `P` and `Q` (towards the left).
///
/// Decomposition cycles of a join run counterclockwise: the join is the meet
/// of the mirrored embedding.
pub fn join(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<MeetJoinResult, LatticeError> {
    bound(g, p, q, Side::Join)
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
    fn comparable_pair() {
        let g = diamond();
        let top = PathSeq::parse(&g, "+0 +2").unwrap();
        let bottom = PathSeq::parse(&g, "+1 +3").unwrap();
        assert_eq!(meet(&g, &top, &bottom).unwrap().path, bottom);
        assert_eq!(join(&g, &top, &bottom).unwrap().path, top);
        assert_eq!(meet(&g, &bottom, &top).unwrap().path, bottom);
        let same = meet(&g, &top, &top).unwrap();
        assert_eq!(same.path, top);
        assert!(same.cycles.is_empty());
    }
}
