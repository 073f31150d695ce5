use rayon::prelude::*;
use serde::Serialize;

use crate::embed::PlaneGraph;
use crate::lattice::invariants::{check_join, check_meet, InvariantTally};
use crate::lattice::{self, Comparison, PathSeq};

use super::{edge_bits, with_jobs, Bits, NamedPath, OrderMatrix, PathFamily, VerifyError};

/// Stored violations per report; the count keeps going past it.
const VIOLATION_CAP: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct AxiomOptions {
    pub jobs: Option<usize>,
    pub path_limit: usize,
    /// Also run the meet/join constructions on every pair.
    pub constructions: bool,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { jobs: None, path_limit: 200, constructions: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Reflexivity { path: NamedPath },
    Antisymmetry { a: NamedPath, b: NamedPath },
    Transitivity { a: NamedPath, b: NamedPath, c: NamedPath },
    NoMeet { a: NamedPath, b: NamedPath },
    NoJoin { a: NamedPath, b: NamedPath },
    Submodular { a: NamedPath, b: NamedPath },
    /// `lower ⪯ middle ⪯ upper` with edge `edge ∈ lower ∩ upper ∖ middle`.
    Consecutive { lower: NamedPath, middle: NamedPath, upper: NamedPath, edge: usize },
    MeetMismatch { a: NamedPath, b: NamedPath, got: String },
    JoinMismatch { a: NamedPath, b: NamedPath, got: String },
    StPlanarMismatch { a: NamedPath, b: NamedPath, got: String },
    Invariant { a: NamedPath, b: NamedPath, detail: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub path_count: usize,
    pub st_planar: bool,
    pub partial_order: bool,
    pub lattice: bool,
    pub submodular: bool,
    pub consecutive: bool,
    /// Unordered pairs on which meet and join were constructed.
    pub constructions_checked: usize,
    pub construction_mismatches: usize,
    pub invariant_violations: usize,
    pub tally: InvariantTally,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    fn record(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < VIOLATION_CAP {
            self.violations.push(v);
        }
    }

    pub fn all_hold(&self) -> bool {
        self.partial_order
            && self.lattice
            && self.submodular
            && self.consecutive
            && self.construction_mismatches == 0
            && self.invariant_violations == 0
    }
}

/// Enumerates every simple s-t path and checks the order, lattice,
/// submodularity and consecutivity axioms by brute force, then compares the
/// potential-based meet and join against the brute-force ones.
pub fn check_axioms(g: &PlaneGraph, opts: AxiomOptions) -> Result<AxiomReport, VerifyError> {
    let family = super::enumerate_simple_paths_limited(g, opts.path_limit)?;
    check_family(&family, opts)
}

pub(crate) fn check_family(family: &PathFamily, opts: AxiomOptions) -> Result<AxiomReport, VerifyError> {
    let g = &family.graph;
    let n = family.len();
    let m = OrderMatrix::build(family, opts.jobs)?;
    let name = |i: usize| NamedPath::of(family, i);
    let bits: Vec<Bits> = family.paths.iter().map(|p| edge_bits(g, p)).collect();
    let mut rep = AxiomReport { path_count: n, st_planar: lattice::is_st_planar(g), ..Default::default() };

    let before = rep.violation_count;
    for i in 0..n {
        if m.comparison(i, i) != Comparison::Equal {
            rep.record(Violation::Reflexivity { path: name(i) });
        }
        for j in 0..n {
            let bad = m.comparison(i, j) != m.comparison(j, i).flipped() || (i != j && m.leq(i, j) && m.leq(j, i));
            if i < j && bad {
                rep.record(Violation::Antisymmetry { a: name(i), b: name(j) });
            }
        }
    }
    // i ⪯ j forces down(i) ⊆ down(j)
    for j in 0..n {
        for i in m.down(j).ones() {
            if let Some(k) = m.down(i).first_missing_from(m.down(j)) {
                rep.record(Violation::Transitivity { a: name(k), b: name(i), c: name(j) });
            }
        }
    }
    rep.partial_order = rep.violation_count == before;

    let before = rep.violation_count;
    let mut bounds = vec![vec![(None, None); n]; n];
    for i in 0..n {
        for j in i..n {
            let (lo, hi) = (m.meet(i, j), m.join(i, j));
            if lo.is_none() {
                rep.record(Violation::NoMeet { a: name(i), b: name(j) });
            }
            if hi.is_none() {
                rep.record(Violation::NoJoin { a: name(i), b: name(j) });
            }
            bounds[i][j] = (lo, hi);
        }
    }
    rep.lattice = rep.violation_count == before;

    let before = rep.violation_count;
    for i in 0..n {
        for j in i..n {
            if let (Some(lo), Some(hi)) = bounds[i][j] {
                let cap_ok = bits[lo].and(&bits[hi]).is_subset(&bits[i].and(&bits[j]));
                let cup_ok = bits[lo].or(&bits[hi]).is_subset(&bits[i].or(&bits[j]));
                if !cap_ok || !cup_ok {
                    rep.record(Violation::Submodular { a: name(i), b: name(j) });
                }
            }
        }
    }
    rep.submodular = rep.violation_count == before;

    let before = rep.violation_count;
    for lo in 0..n {
        for hi in m.up(lo).ones() {
            if hi == lo {
                continue;
            }
            let shared = bits[lo].and(&bits[hi]);
            for mid in m.up(lo).and(m.down(hi)).ones() {
                if let Some(e) = shared.first_missing_from(&bits[mid]) {
                    rep.record(Violation::Consecutive {
                        lower: name(lo),
                        middle: name(mid),
                        upper: name(hi),
                        edge: e,
                    });
                }
            }
        }
    }
    rep.consecutive = rep.violation_count == before;

    if opts.constructions {
        constructions(family, &bounds, &mut rep, opts.jobs);
    }
    Ok(rep)
}

struct PairOutcome {
    violations: Vec<Violation>,
    mismatches: usize,
    invariant_violations: usize,
    tally: InvariantTally,
}

fn constructions(
    family: &PathFamily,
    bounds: &[Vec<(Option<usize>, Option<usize>)>],
    rep: &mut AxiomReport,
    jobs: Option<usize>,
) {
    let g = &family.graph;
    let n = family.len();
    let st = rep.st_planar;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let name = |i: usize| NamedPath::of(family, i);

    let run = |&(i, j): &(usize, usize)| -> PairOutcome {
        let (p, q) = (&family.paths[i], &family.paths[j]);
        let mut out = PairOutcome {
            violations: Vec::new(),
            mismatches: 0,
            invariant_violations: 0,
            tally: InvariantTally::default(),
        };
        let (lo, hi) = bounds[i][j];
        let want = |k: Option<usize>| k.map(|k| &family.paths[k]);
        let mut compare = |got: Result<PathSeq, String>, want: Option<&PathSeq>, make: &dyn Fn(String) -> Violation| {
            let text = match got {
                Ok(path) if Some(&path) == want => return,
                Ok(path) => path.to_string(),
                Err(e) => e,
            };
            out.mismatches += 1;
            out.violations.push(make(text));
        };

        let met = lattice::meet(g, p, q);
        let joined = lattice::join(g, p, q);
        compare(met.as_ref().map(|r| r.path.clone()).map_err(|e| e.to_string()), want(lo), &|got| {
            Violation::MeetMismatch { a: name(i), b: name(j), got }
        });
        compare(joined.as_ref().map(|r| r.path.clone()).map_err(|e| e.to_string()), want(hi), &|got| {
            Violation::JoinMismatch { a: name(i), b: name(j), got }
        });
        if st {
            compare(lattice::meet_st_planar(g, p, q).map_err(|e| e.to_string()), want(lo), &|got| {
                Violation::StPlanarMismatch { a: name(i), b: name(j), got }
            });
            compare(lattice::join_st_planar(g, p, q).map_err(|e| e.to_string()), want(hi), &|got| {
                Violation::StPlanarMismatch { a: name(i), b: name(j), got }
            });
        }
        let checks = [met.ok().map(|r| check_meet(g, p, q, &r)), joined.ok().map(|r| check_join(g, p, q, &r))];
        for (found, tally) in checks.into_iter().flatten() {
            out.tally.add(tally);
            out.invariant_violations += found.len();
            for v in found {
                out.violations.push(Violation::Invariant { a: name(i), b: name(j), detail: v.to_string() });
            }
        }
        out
    };

    let outcomes: Vec<PairOutcome> = with_jobs(jobs, || pairs.par_iter().map(run).collect());
    rep.constructions_checked = pairs.len();
    for o in outcomes {
        rep.construction_mismatches += o.mismatches;
        rep.invariant_violations += o.invariant_violations;
        rep.tally.add(o.tally);
        for v in o.violations {
            rep.record(v);
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SupermodularReport {
    pub supermodular: bool,
    pub monotone: bool,
    /// A pair with `r(P∧Q) + r(P∨Q) < r(P) + r(Q)`.
    pub supermodular_witness: Option<(NamedPath, NamedPath)>,
    /// A pair `P ⪯ Q` with `r(P) > r(Q)`.
    pub monotone_witness: Option<(NamedPath, NamedPath)>,
}

/// Tests `r(P∧Q) + r(P∨Q) ≥ r(P) + r(Q)` and monotonicity on a whole family,
/// using the brute-force lattice operations.
pub fn check_supermodular(
    family: &PathFamily,
    r: &dyn Fn(&PathSeq) -> i64,
) -> Result<SupermodularReport, VerifyError> {
    let m = OrderMatrix::build(family, None)?;
    let n = family.len();
    let w: Vec<i64> = family.paths.iter().map(r).collect();
    let name = |i: usize| NamedPath::of(family, i);
    let mut rep = SupermodularReport { supermodular: true, monotone: true, supermodular_witness: None, monotone_witness: None };
    for i in 0..n {
        for j in 0..n {
            if m.leq(i, j) && w[i] > w[j] && rep.monotone {
                rep.monotone = false;
                rep.monotone_witness = Some((name(i), name(j)));
            }
            if i < j && rep.supermodular {
                let (lo, hi) = match (m.meet(i, j), m.join(i, j)) {
                    (Some(lo), Some(hi)) => (lo, hi),
                    _ => {
                        let (p, q) = (&family.paths[i], &family.paths[j]);
                        return Err(VerifyError::NoUniqueExtremum(p.to_string(), q.to_string()));
                    }
                };
                if w[lo] + w[hi] < w[i] + w[j] {
                    rep.supermodular = false;
                    rep.supermodular_witness = Some((name(i), name(j)));
                }
            }
        }
    }
    Ok(rep)
}
