//! The left/right order on simple s-t paths.
//!
//! `P` is left of `Q` when the face potential of `δ_P − δ_Q` is nonnegative.
//! Meet and join are built by subtracting the positive (negative) part of that
//! potential from `δ_P` and decomposing the result.

mod decompose;
pub mod invariants;
mod meet;
mod stplanar;

use std::fmt;

use serde::Serialize;

use crate::circulation::{self, CirculationError, EdgeVector, FacePotential};
use crate::embed::{format_darts, parse_darts, Dart, PlaneGraph};

pub use decompose::decompose;
pub use meet::{join, meet};
pub use stplanar::{
    equivalence_check, is_st_planar, join_st_planar, lowermost_path, meet_st_planar,
    uppermost_path, uppermost_usable_path,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("not a simple s-t path: {0}")]
    NotAPath(String),
    #[error("s and t are not both on the infinite face")]
    NotStPlanarEmbedding,
    #[error("vector is not a unit s-t flow with entries in {{-1, 0, 1}}")]
    NotAUnitFlow,
    #[error("postcondition violated: {0}")]
    PostconditionViolated(String),
    #[error(transparent)]
    Circulation(#[from] CirculationError),
}

/// A simple s-t path: no vertex, and hence no edge, is visited twice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PathSeq {
    darts: Vec<Dart>,
}

impl PathSeq {
    pub fn new(g: &PlaneGraph, darts: Vec<Dart>) -> Result<Self, LatticeError> {
        let p = PathSeq { darts };
        p.validate(g)?;
        Ok(p)
    }

    /// Parses whitespace-separated dart tokens (`+0 -4 +2`).
    pub fn parse(g: &PlaneGraph, text: &str) -> Result<Self, LatticeError> {
        let darts = parse_darts(text).map_err(|e| LatticeError::NotAPath(e.to_string()))?;
        PathSeq::new(g, darts)
    }

    /// Checks that the path is a simple s-t path of `g`.
    pub fn validate(&self, g: &PlaneGraph) -> Result<(), LatticeError> {
        let bad = |msg: String| Err(LatticeError::NotAPath(msg));
        let Some(&first) = self.darts.first() else {
            return bad("empty dart sequence".into());
        };
        if let Some(d) = self.darts.iter().find(|d| d.edge() >= g.edge_count()) {
            return bad(format!("unknown dart {d}"));
        }
        if g.tail(first) != g.source() {
            return bad(format!("first dart {first} does not leave s"));
        }
        let mut seen = vec![false; g.vertex_count()];
        seen[g.source()] = true;
        for (i, &d) in self.darts.iter().enumerate() {
            if i > 0 && g.tail(d) != g.head(self.darts[i - 1]) {
                return bad(format!("dart {d} does not continue from {}", self.darts[i - 1]));
            }
            let h = g.head(d);
            if std::mem::replace(&mut seen[h], true) {
                return bad(format!("vertex {h} visited twice"));
            }
        }
        if g.head(*self.darts.last().unwrap()) != g.sink() {
            return bad("path does not end at t".into());
        }
        Ok(())
    }

    /// Wraps darts already known to form a simple path.
    pub(crate) fn from_trusted(darts: Vec<Dart>) -> Self {
        PathSeq { darts }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains(&self, d: Dart) -> bool {
        self.darts.contains(&d)
    }

    pub fn uses_edge(&self, e: usize) -> bool {
        self.darts.iter().any(|d| d.edge() == e)
    }

    /// Edge ids, ascending.
    pub fn edges(&self) -> Vec<usize> {
        let mut es: Vec<usize> = self.darts.iter().map(|d| d.edge()).collect();
        es.sort_unstable();
        es
    }

    /// Visited vertices from s to t.
    pub fn vertices(&self, g: &PlaneGraph) -> Vec<usize> {
        std::iter::once(g.source()).chain(self.darts.iter().map(|&d| g.head(d))).collect()
    }

    pub fn vector(&self, g: &PlaneGraph) -> EdgeVector {
        let mut v = EdgeVector::zeros(g.edge_count());
        for &d in &self.darts {
            v.add_dart(d, 1);
        }
        v
    }
}

impl fmt::Display for PathSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_darts(&self.darts))
    }
}

impl fmt::Debug for PathSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathSeq[{self}]")
    }
}

/// Outcome of comparing two paths under the left/right order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    LeftOf,
    RightOf,
    Equal,
    Incomparable,
}

impl Comparison {
    pub fn flipped(self) -> Self {
        match self {
            Comparison::LeftOf => Comparison::RightOf,
            Comparison::RightOf => Comparison::LeftOf,
            c => c,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::LeftOf => "left-of",
            Comparison::RightOf => "right-of",
            Comparison::Equal => "equal",
            Comparison::Incomparable => "incomparable",
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Φ(δ_P − δ_Q)`.
pub fn difference_potential(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<FacePotential, LatticeError> {
    p.validate(g)?;
    q.validate(g)?;
    let c = p.vector(g).minus(&q.vector(g));
    Ok(circulation::face_potential(g, &c)?)
}

pub fn compare(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<Comparison, LatticeError> {
    let phi = difference_potential(g, p, q)?;
    Ok(if p == q {
        Comparison::Equal
    } else if phi.is_nonnegative() {
        Comparison::LeftOf
    } else if phi.is_nonpositive() {
        Comparison::RightOf
    } else {
        Comparison::Incomparable
    })
}

/// `P ⪯ Q`, i.e. `Q` is left of `P` or equal to it.
pub fn precedes(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<bool, LatticeError> {
    Ok(matches!(compare(g, p, q)?, Comparison::RightOf | Comparison::Equal))
}

/// Whether a simple cycle runs clockwise or counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub darts: Vec<Dart>,
    pub orientation: Orientation,
}

/// A unit flow split into a simple s-t path and edge-disjoint simple cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetJoinResult {
    pub path: PathSeq,
    pub cycles: Vec<Cycle>,
    pub vector: EdgeVector,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> PlaneGraph {
        // s=0 left, 1 top, 2 bottom, t=3 right
        let f = Dart::forward;
        let b = Dart::backward;
        let edges = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let rot = vec![vec![f(1), f(0)], vec![f(2), b(0)], vec![f(3), b(1)], vec![b(2), b(3)]];
        PlaneGraph::new(4, &edges, rot, 0, 3, b(1)).unwrap()
    }

    #[test]
    fn validation() {
        let g = diamond();
        let f = Dart::forward;
        assert!(PathSeq::new(&g, vec![f(0), f(2)]).is_ok());
        assert!(PathSeq::new(&g, vec![f(0)]).is_err());
        assert!(PathSeq::new(&g, vec![f(2)]).is_err());
        assert!(PathSeq::new(&g, vec![]).is_err());
        assert!(PathSeq::parse(&g, "+0 +2").is_ok());
        assert!(PathSeq::parse(&g, "+0 x").is_err());
    }

    #[test]
    fn top_path_is_left_of_bottom_path() {
        let g = diamond();
        let top = PathSeq::parse(&g, "+0 +2").unwrap();
        let bottom = PathSeq::parse(&g, "+1 +3").unwrap();
        assert_eq!(compare(&g, &top, &bottom).unwrap(), Comparison::LeftOf);
        assert_eq!(compare(&g, &bottom, &top).unwrap(), Comparison::RightOf);
        assert_eq!(compare(&g, &top, &top).unwrap(), Comparison::Equal);
        assert!(precedes(&g, &bottom, &top).unwrap());
    }
}
