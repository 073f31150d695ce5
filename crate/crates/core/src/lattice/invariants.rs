//! Structural checks on computed meets and joins.
//!
//! A dart of `D^{P∧Q}` is *solid*; it is a solid `P`-dart when it lies in
//! `P ∖ Q` and a solid `Q`-dart when it lies in `Q ∖ P`. With
//! `φ = Φ(δ_P − δ_Q)` and `φ_l(d) = φ(left(d))`, every meet satisfies:
//!
//! * solid `P`-darts have `φ_l < 0`, solid `Q`-darts have `φ_l > 0`;
//! * decomposition cycles are clockwise;
//! * the path never crosses a cycle;
//! * wherever a path or cycle switches between `P` and `Q`, the potentials
//!   left of the two darts are exactly `−1` and `+1` and the rotation between
//!   them holds the two hidden darts that make up the difference.
//!
//! Joins are checked as meets of the mirrored embedding.

use std::fmt;

use serde::Serialize;

use crate::circulation::{face_potential, path_vector, FacePotential};
use crate::embed::{format_darts, Dart, PlaneGraph};

use super::{difference_potential, MeetJoinResult, Orientation, PathSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantKind {
    SolidDartSign,
    CounterclockwiseCycle,
    Crossing,
    ChangeOfTracks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantViolation {
    pub kind: InvariantKind,
    pub detail: String,
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

/// Counts of individual checks performed, for reporting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct InvariantTally {
    pub solid_darts: usize,
    pub cycles: usize,
    pub crossings: usize,
    pub track_changes: usize,
}

impl InvariantTally {
    pub fn add(&mut self, o: InvariantTally) {
        self.solid_darts += o.solid_darts;
        self.cycles += o.cycles;
        self.crossings += o.crossings;
        self.track_changes += o.track_changes;
    }
}

struct Ctx<'a> {
    g: &'a PlaneGraph,
    p: &'a PathSeq,
    q: &'a PathSeq,
    phi: FacePotential,
    out: Vec<InvariantViolation>,
    tally: InvariantTally,
}

impl Ctx<'_> {
    fn p_dart(&self, d: Dart) -> bool {
        self.p.contains(d) && !self.q.contains(d)
    }

    fn q_dart(&self, d: Dart) -> bool {
        self.q.contains(d) && !self.p.contains(d)
    }

    fn fail(&mut self, kind: InvariantKind, detail: String) {
        self.out.push(InvariantViolation { kind, detail });
    }

    fn phi_l(&self, d: Dart) -> i64 {
        self.phi.left(self.g, d)
    }

    fn solid_signs(&mut self, res: &MeetJoinResult) {
        for d in crate::circulation::induced_darts(&res.vector) {
            self.tally.solid_darts += 1;
            let l = self.phi_l(d);
            if self.p_dart(d) && l >= 0 {
                self.fail(InvariantKind::SolidDartSign, format!("solid P-dart {d} has φ_l = {l}"));
            }
            if self.q_dart(d) && l <= 0 {
                self.fail(InvariantKind::SolidDartSign, format!("solid Q-dart {d} has φ_l = {l}"));
            }
        }
    }

    /// Darts from `from` counterclockwise up to and including `to` at one vertex.
    fn ccw_span(&self, from: Dart, to: Dart) -> Vec<Dart> {
        let mut span = vec![from];
        let mut d = from;
        while d != to {
            d = self.g.next_ccw(d);
            span.push(d);
        }
        span
    }

    /// `a` enters the vertex that `b` leaves.
    fn transition(&mut self, a: Dart, b: Dart) {
        let (dp, dq, span, want_p, want_rev_q) = if self.p_dart(a) && self.q_dart(b) {
            (a, b, self.ccw_span(b, a.rev()), true, true)
        } else if self.q_dart(a) && self.p_dart(b) {
            (b, a, self.ccw_span(b, a.rev()), false, false)
        } else {
            return;
        };
        self.tally.track_changes += 1;
        let (lp, lq) = (self.phi_l(dp), self.phi_l(dq));
        if lp != -1 || lq != 1 {
            self.fail(
                InvariantKind::ChangeOfTracks,
                format!("switch {a} → {b}: φ_l(d_P) = {lp}, φ_l(d_Q) = {lq}"),
            );
        }
        // P → Q: span holds a P-dart and the reverse of a Q-dart;
        // Q → P: span holds a Q-dart and the reverse of a P-dart.
        let (fwd, bwd) = if want_p && want_rev_q { (self.p, self.q) } else { (self.q, self.p) };
        let has_fwd = span.iter().any(|&d| fwd.contains(d));
        let has_bwd = span.iter().any(|&d| bwd.contains(d.rev()));
        if !has_fwd || !has_bwd {
            self.fail(
                InvariantKind::ChangeOfTracks,
                format!("switch {a} → {b}: rotation span [{}] lacks the hidden darts", format_darts(&span)),
            );
        }
    }

    fn track_changes(&mut self, res: &MeetJoinResult) {
        let path = res.path.darts();
        for w in path.windows(2) {
            self.transition(w[0], w[1]);
        }
        for c in &res.cycles {
            let n = c.darts.len();
            for i in 0..n {
                self.transition(c.darts[i], c.darts[(i + 1) % n]);
            }
        }
    }

    fn no_crossing(&mut self, res: &MeetJoinResult) {
        let g = self.g;
        let path = res.path.darts();
        for c in &res.cycles {
            self.tally.crossings += 1;
            let psi = match path_vector(g, &c.darts).and_then(|v| face_potential(g, &v)) {
                Ok(p) => p,
                Err(e) => {
                    self.fail(InvariantKind::Crossing, format!("cycle potential failed: {e}"));
                    continue;
                }
            };
            if let Some(&d) = path.iter().find(|&&d| psi.left(g, d) != 0 || psi.right(g, d) != 0) {
                self.fail(
                    InvariantKind::Crossing,
                    format!("path dart {d} lies inside cycle [{}]", format_darts(&c.darts)),
                );
            }
            // vertex-local: the path's two darts must not separate the cycle's two darts
            for (i, &out) in path.iter().enumerate().skip(1) {
                let v = g.tail(out);
                let back = path[i - 1].rev();
                let Some(k) = c.darts.iter().position(|&x| g.tail(x) == v) else { continue };
                let c_out = c.darts[k];
                let c_back = c.darts[(k + c.darts.len() - 1) % c.darts.len()].rev();
                let between = |x: Dart| {
                    let mut d = g.next_ccw(out);
                    while d != back {
                        if d == x {
                            return true;
                        }
                        d = g.next_ccw(d);
                    }
                    false
                };
                if between(c_out) != between(c_back) {
                    self.fail(
                        InvariantKind::Crossing,
                        format!("path and cycle [{}] cross at vertex {v}", format_darts(&c.darts)),
                    );
                }
            }
        }
    }
}

fn check_meet_on(g: &PlaneGraph, p: &PathSeq, q: &PathSeq, res: &MeetJoinResult) -> (Vec<InvariantViolation>, InvariantTally) {
    let phi = match difference_potential(g, p, q) {
        Ok(phi) => phi,
        Err(e) => {
            let v = InvariantViolation { kind: InvariantKind::SolidDartSign, detail: e.to_string() };
            return (vec![v], InvariantTally::default());
        }
    };
    let mut ctx = Ctx { g, p, q, phi, out: Vec::new(), tally: InvariantTally::default() };
    ctx.solid_signs(res);
    for c in &res.cycles {
        ctx.tally.cycles += 1;
        if c.orientation != Orientation::Clockwise {
            ctx.fail(InvariantKind::CounterclockwiseCycle, format!("cycle [{}]", format_darts(&c.darts)));
        }
    }
    ctx.no_crossing(res);
    ctx.track_changes(res);
    (ctx.out, ctx.tally)
}

/// Checks every meet invariant for `res = meet(g, P, Q)`.
pub fn check_meet(g: &PlaneGraph, p: &PathSeq, q: &PathSeq, res: &MeetJoinResult) -> (Vec<InvariantViolation>, InvariantTally) {
    check_meet_on(g, p, q, res)
}

/// Checks `res = join(g, P, Q)` as a meet of the mirrored embedding.
pub fn check_join(g: &PlaneGraph, p: &PathSeq, q: &PathSeq, res: &MeetJoinResult) -> (Vec<InvariantViolation>, InvariantTally) {
    let m = g.mirrored();
    let flipped = MeetJoinResult {
        path: res.path.clone(),
        cycles: res
            .cycles
            .iter()
            .map(|c| super::Cycle {
                darts: c.darts.clone(),
                orientation: match c.orientation {
                    Orientation::Clockwise => Orientation::Counterclockwise,
                    Orientation::Counterclockwise => Orientation::Clockwise,
                },
            })
            .collect(),
        vector: res.vector.clone(),
    };
    check_meet_on(&m, p, q, &flipped)
}
