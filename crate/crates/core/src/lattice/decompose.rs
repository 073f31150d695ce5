use std::collections::HashMap;

use crate::circulation::{self, excess, EdgeVector};
use crate::embed::{Dart, PlaneGraph};

use super::{Cycle, LatticeError, MeetJoinResult, Orientation, PathSeq};

/// Walks through unconsumed darts from `start` until it returns to `goal`,
/// always taking the lowest-numbered available dart and cutting out a simple
/// cycle whenever a vertex repeats. Returns the remaining simple walk.
fn trace(
    g: &PlaneGraph,
    out: &mut HashMap<usize, Vec<Dart>>,
    start: usize,
    goal: usize,
    cycles: &mut Vec<Vec<Dart>>,
) -> Result<Vec<Dart>, LatticeError> {
    let mut walk: Vec<Dart> = Vec::new();
    // position of each vertex on the current walk: index of the dart leaving it
    let mut pos: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut cur = start;
    loop {
        let list = out.get_mut(&cur).ok_or(LatticeError::NotAUnitFlow)?;
        if list.is_empty() {
            return Err(LatticeError::NotAUnitFlow);
        }
        let d = list.remove(0);
        walk.push(d);
        let w = g.head(d);
        if w == goal {
            return Ok(walk);
        }
        if let Some(&i) = pos.get(&w) {
            let cyc: Vec<Dart> = walk.drain(i..).collect();
            for &c in &cyc {
                let v = g.head(c);
                if v != w {
                    pos.remove(&v);
                }
            }
            cycles.push(cyc);
        } else {
            pos.insert(w, walk.len());
        }
        cur = w;
    }
}

/// Splits a unit s-t flow in `{−1, 0, 1}^E` into a simple s-t path and
/// edge-disjoint simple cycles.
///
/// The path is traced from s through the lowest-numbered unused dart, loops
/// being cut out as they close; leftover darts are peeled into cycles in id
/// order. Each cycle is tagged clockwise when `Φ(δ_C) ≥ 0`.
pub fn decompose(g: &PlaneGraph, v: &EdgeVector) -> Result<MeetJoinResult, LatticeError> {
    if v.len() != g.edge_count() || v.values.iter().any(|x| x.abs() > 1) {
        return Err(LatticeError::NotAUnitFlow);
    }
    let ex = excess(g, v);
    for (x, &e) in ex.iter().enumerate() {
        let want = if x == g.source() {
            1
        } else if x == g.sink() {
            -1
        } else {
            0
        };
        if e != want {
            return Err(LatticeError::NotAUnitFlow);
        }
    }
    let mut out: HashMap<usize, Vec<Dart>> = HashMap::new();
    let darts = circulation::induced_darts(v);
    for &d in &darts {
        out.entry(g.tail(d)).or_default().push(d);
    }
    let mut raw_cycles = Vec::new();
    let path = trace(g, &mut out, g.source(), g.sink(), &mut raw_cycles)?;
    loop {
        let next = out.values().filter_map(|l| l.first().copied()).min();
        let Some(d) = next else { break };
        let start = g.tail(d);
        let closed = trace(g, &mut out, start, start, &mut raw_cycles)?;
        raw_cycles.push(closed);
    }
    let mut cycles = Vec::with_capacity(raw_cycles.len());
    for c in raw_cycles {
        let phi = circulation::face_potential(g, &circulation::path_vector(g, &c)?)?;
        let orientation = if phi.is_nonnegative() {
            Orientation::Clockwise
        } else {
            Orientation::Counterclockwise
        };
        cycles.push(Cycle { darts: c, orientation });
    }
    Ok(MeetJoinResult { path: PathSeq::from_trusted(path), cycles, vector: v.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 3×3 grid, vertex `3y + x` at `(x, y)`; s bottom-left, t top-right.
    fn grid() -> PlaneGraph {
        let coords: Vec<(f64, f64)> = (0..9).map(|i| ((i % 3) as f64, (i / 3) as f64)).collect();
        let mut edges = Vec::new();
        for y in 0..3 {
            for x in 0..3 {
                let v = 3 * y + x;
                if x < 2 {
                    edges.push((v, v + 1));
                }
                if y < 2 {
                    edges.push((v, v + 3));
                }
            }
        }
        crate::embed::straight_line_graph(&coords, &edges, 0, 8).unwrap()
    }

    fn walk(g: &PlaneGraph, vs: &[usize]) -> Vec<Dart> {
        vs.windows(2)
            .map(|w| g.darts().find(|&d| g.tail(d) == w[0] && g.head(d) == w[1]).unwrap())
            .collect()
    }

    #[test]
    fn path_alone() {
        let g = grid();
        let p = PathSeq::new(&g, walk(&g, &[0, 1, 2, 5, 8])).unwrap();
        let r = decompose(&g, &p.vector(&g)).unwrap();
        assert_eq!(r.path, p);
        assert!(r.cycles.is_empty());
    }

    #[test]
    fn path_plus_disjoint_cycle() {
        let g = grid();
        let p = PathSeq::new(&g, walk(&g, &[0, 1, 2, 5, 8])).unwrap();
        let cw = walk(&g, &[3, 6, 7, 4, 3]);
        let v = p.vector(&g).plus(&circulation::path_vector(&g, &cw).unwrap());
        let r = decompose(&g, &v).unwrap();
        assert_eq!(r.path, p);
        assert_eq!(r.cycles.len(), 1);
        assert_eq!(r.cycles[0].orientation, Orientation::Clockwise);
        let mut got = r.cycles[0].darts.clone();
        got.sort();
        let mut want = cw.clone();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_non_unit_flows() {
        let g = grid();
        let m = g.edge_count();
        assert_eq!(decompose(&g, &EdgeVector::zeros(m)), Err(LatticeError::NotAUnitFlow));
        let mut v = EdgeVector::zeros(m);
        v.values[0] = 2;
        assert_eq!(decompose(&g, &v), Err(LatticeError::NotAUnitFlow));
    }
}
