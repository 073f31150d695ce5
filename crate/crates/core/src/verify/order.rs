//! Search for a partial order on a path family that is consecutive and makes
//! every pair of *forced* paths comparable.
//!
//! Two paths are forced when they are the only simple s-t paths inside the
//! union of their edges; any lattice order induced from an embedding must
//! compare them. The search propagates with one-step lookahead: a pair whose
//! one orientation immediately yields an antisymmetry or consecutivity
//! failure gets the other orientation. If both orientations fail the
//! branch is refuted. Otherwise the first open pair is split. Refutations
//! come with a derivation that [`replay`] checks independently.

use std::collections::HashSet;

use serde::Serialize;

use super::{edge_bits, paths_within_edges, Bits, PathFamily, VerifyError};

/// Largest family accepted by [`order_existence`].
pub const MAX_FAMILY: usize = 12;

/// Why adding a relation fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrderViolation {
    /// `a ≺ b` and `b ≺ a` both follow.
    Cycle { a: usize, b: usize },
    /// `lower ≺ middle ≺ upper` and edge `edge ∈ lower ∩ upper ∖ middle`.
    Consecutive { lower: usize, middle: usize, upper: usize, edge: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    /// A case assumption; `wlog` marks the symmetry break at the root.
    Assume { lower: usize, upper: usize, wlog: bool },
    /// `lower ≺ upper` because `upper ≺ lower` fails with `refuted`.
    Forced { lower: usize, upper: usize, refuted: OrderViolation },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "end", rename_all = "kebab-case")]
pub enum Conclusion {
    /// Both orientations of the forced pair `(a, b)` fail.
    Contradiction { a: usize, b: usize, a_below: OrderViolation, b_below: OrderViolation },
    /// Both orientations of `(a, b)` were tried; `cases[0]` assumes `b ≺ a`.
    Split { a: usize, b: usize, cases: Box<[Derivation; 2]> },
}

/// A refutation tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub steps: Vec<Step>,
    pub conclusion: Conclusion,
}

impl Derivation {
    /// Number of leaves.
    pub fn leaves(&self) -> usize {
        match &self.conclusion {
            Conclusion::Contradiction { .. } => 1,
            Conclusion::Split { cases, .. } => cases.iter().map(Derivation::leaves).sum(),
        }
    }

    /// Renders the derivation with 1-based path names `P1, P2, …`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        for s in &self.steps {
            let line = match s {
                Step::Assume { lower, upper, wlog } => {
                    let w = if *wlog { " (wlog)" } else { "" };
                    format!("assume P{} ≺ P{}{w}", lower + 1, upper + 1)
                }
                Step::Forced { lower, upper, refuted } => {
                    format!("P{} ≺ P{}, since the reverse gives {}", lower + 1, upper + 1, describe(refuted))
                }
            };
            out.push_str(&format!("{pad}{line}\n"));
        }
        match &self.conclusion {
            Conclusion::Contradiction { a, b, a_below, b_below } => {
                out.push_str(&format!(
                    "{pad}P{} and P{} are incomparable: P{0} ≺ P{1} gives {} and P{1} ≺ P{0} gives {}\n",
                    a + 1,
                    b + 1,
                    describe(a_below),
                    describe(b_below)
                ));
            }
            Conclusion::Split { a, b, cases } => {
                out.push_str(&format!("{pad}case split on P{} vs P{}\n", a + 1, b + 1));
                for c in cases.iter() {
                    c.render_into(out, depth + 1);
                }
            }
        }
    }
}

fn describe(v: &OrderViolation) -> String {
    match v {
        OrderViolation::Cycle { a, b } => format!("P{} ≺ P{} ≺ P{0}", a + 1, b + 1),
        OrderViolation::Consecutive { lower, middle, upper, edge } => format!(
            "P{} ≺ P{} ≺ P{} with e{edge} ∈ P{0} ∩ P{2} ∖ P{1}",
            lower + 1,
            middle + 1,
            upper + 1
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OrderVerdict {
    /// A consecutive order comparing all forced pairs, as `(lower, upper)`
    /// pairs of its transitive closure.
    Satisfiable { relations: Vec<(usize, usize)> },
    Refuted { derivation: Derivation },
}

/// Index pairs `i < j` whose union of edges carries exactly the two paths.
pub fn forced_pairs(family: &PathFamily) -> Vec<(usize, usize)> {
    let g = &family.graph;
    let n = family.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut edges = family.paths[i].edges();
            edges.extend(family.paths[j].edges());
            edges.sort_unstable();
            edges.dedup();
            if paths_within_edges(g, &edges, 2).is_some_and(|ps| ps.len() == 2) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Strict order with its transitive closure.
#[derive(Clone)]
struct Closure {
    lt: Vec<Vec<bool>>,
}

impl Closure {
    fn empty(n: usize) -> Self {
        Closure { lt: vec![vec![false; n]; n] }
    }

    fn is_empty(&self) -> bool {
        self.lt.iter().all(|r| r.iter().all(|&x| !x))
    }

    fn oriented(&self, a: usize, b: usize) -> bool {
        self.lt[a][b] || self.lt[b][a]
    }

    /// Adds `a ≺ b`, closes, and checks antisymmetry and consecutivity.
    fn with(&self, a: usize, b: usize, bits: &[Bits]) -> Result<Closure, OrderViolation> {
        let n = self.lt.len();
        let mut c = self.clone();
        let below: Vec<usize> = (0..n).filter(|&x| x == a || self.lt[x][a]).collect();
        let above: Vec<usize> = (0..n).filter(|&y| y == b || self.lt[b][y]).collect();
        for &x in &below {
            for &y in &above {
                c.lt[x][y] = true;
            }
        }
        if let Some(x) = (0..n).find(|&x| c.lt[x][x]) {
            let y = (0..n).find(|&y| y != x && c.lt[x][y] && c.lt[y][x]).unwrap_or(x);
            return Err(OrderViolation::Cycle { a: x, b: y });
        }
        for lo in 0..n {
            for mid in 0..n {
                if !c.lt[lo][mid] {
                    continue;
                }
                for hi in 0..n {
                    if c.lt[mid][hi] {
                        if let Some(e) = bits[lo].and(&bits[hi]).first_missing_from(&bits[mid]) {
                            return Err(OrderViolation::Consecutive { lower: lo, middle: mid, upper: hi, edge: e });
                        }
                    }
                }
            }
        }
        Ok(c)
    }

    fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.lt.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.lt[a][b]).collect()
    }
}

enum Outcome {
    Found(Closure),
    Refuted(Derivation),
}

struct Search<'a> {
    bits: &'a [Bits],
    forced: &'a [(usize, usize)],
}

impl Search<'_> {
    fn solve(&self, mut state: Closure, mut steps: Vec<Step>) -> Outcome {
        loop {
            let mut progressed = false;
            for &(i, j) in self.forced {
                if state.oriented(i, j) {
                    continue;
                }
                let j_below = state.with(j, i, self.bits);
                let i_below = state.with(i, j, self.bits);
                match (j_below, i_below) {
                    (Err(vj), Err(vi)) => {
                        let conclusion = Conclusion::Contradiction { a: i, b: j, a_below: vi, b_below: vj };
                        return Outcome::Refuted(Derivation { steps, conclusion });
                    }
                    (Err(v), Ok(next)) => {
                        steps.push(Step::Forced { lower: i, upper: j, refuted: v });
                        state = next;
                    }
                    (Ok(next), Err(v)) => {
                        steps.push(Step::Forced { lower: j, upper: i, refuted: v });
                        state = next;
                    }
                    (Ok(_), Ok(_)) => continue,
                }
                progressed = true;
                break;
            }
            if progressed {
                continue;
            }
            let Some(&(i, j)) = self.forced.iter().find(|&&(i, j)| !state.oriented(i, j)) else {
                return Outcome::Found(state);
            };
            if state.is_empty() {
                // reversing a consecutive order keeps it consecutive
                steps.push(Step::Assume { lower: j, upper: i, wlog: true });
                state = state.with(j, i, self.bits).expect("a single relation is always consistent");
                continue;
            }
            let mut cases = Vec::with_capacity(2);
            for (lo, hi) in [(j, i), (i, j)] {
                let assume = vec![Step::Assume { lower: lo, upper: hi, wlog: false }];
                let outcome = match state.with(lo, hi, self.bits) {
                    Ok(next) => self.solve(next, assume),
                    Err(v) => unreachable!("lookahead found both orientations consistent, got {v:?}"),
                };
                match outcome {
                    Outcome::Found(c) => return Outcome::Found(c),
                    Outcome::Refuted(d) => cases.push(d),
                }
            }
            let cases: [Derivation; 2] = cases.try_into().expect("two cases");
            let conclusion = Conclusion::Split { a: i, b: j, cases: Box::new(cases) };
            return Outcome::Refuted(Derivation { steps, conclusion });
        }
    }
}

/// Decides whether some consecutive partial order compares every forced pair.
pub fn order_existence(family: &PathFamily) -> Result<OrderVerdict, VerifyError> {
    order_existence_from(family, None)
}

/// As [`order_existence`], but with the symmetry break `lower ≺ upper` chosen
/// by the caller. The pair must be forced.
pub fn order_existence_from(family: &PathFamily, wlog: Option<(usize, usize)>) -> Result<OrderVerdict, VerifyError> {
    let n = family.len();
    if n > MAX_FAMILY {
        return Err(VerifyError::FamilyTooLarge(n));
    }
    let bits: Vec<Bits> = family.paths.iter().map(|p| edge_bits(&family.graph, p)).collect();
    let forced = forced_pairs(family);
    let search = Search { bits: &bits, forced: &forced };
    let mut state = Closure::empty(n);
    let mut steps = Vec::new();
    if let Some((lo, hi)) = wlog {
        if lo >= n || hi >= n || !forced.contains(&(lo.min(hi), lo.max(hi))) {
            return Err(VerifyError::NotForced(lo, hi));
        }
        state = state.with(lo, hi, &bits).expect("a single relation is always consistent");
        steps.push(Step::Assume { lower: lo, upper: hi, wlog: true });
    }
    Ok(match search.solve(state, steps) {
        Outcome::Found(c) => OrderVerdict::Satisfiable { relations: c.relations() },
        Outcome::Refuted(derivation) => OrderVerdict::Refuted { derivation },
    })
}

/// Checks a refutation without reusing the search: every relation and every
/// claimed violation is recomputed from the explicit relation list.
pub fn replay(family: &PathFamily, forced: &[(usize, usize)], derivation: &Derivation) -> Result<(), String> {
    let n = family.len();
    let sets: Vec<HashSet<usize>> = family.paths.iter().map(|p| p.edges().into_iter().collect()).collect();
    let is_forced = |a: usize, b: usize| forced.contains(&(a.min(b), a.max(b)));
    replay_from(n, &sets, &is_forced, &[], derivation)
}

fn closure_of(n: usize, rel: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut lt = vec![vec![false; n]; n];
    for &(a, b) in rel {
        lt[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    lt
}

fn violation_holds(
    n: usize,
    sets: &[HashSet<usize>],
    rel: &[(usize, usize)],
    v: &OrderViolation,
) -> Result<(), String> {
    let lt = closure_of(n, rel);
    let inside = |x: usize| x < n;
    match *v {
        OrderViolation::Cycle { a, b } if inside(a) && inside(b) && lt[a][b] && lt[b][a] => Ok(()),
        OrderViolation::Consecutive { lower, middle, upper, edge }
            if inside(lower)
                && inside(middle)
                && inside(upper)
                && lt[lower][middle]
                && lt[middle][upper]
                && sets[lower].contains(&edge)
                && sets[upper].contains(&edge)
                && !sets[middle].contains(&edge) =>
        {
            Ok(())
        }
        _ => Err(format!("claimed violation {v:?} does not follow from {rel:?}")),
    }
}

fn replay_from(
    n: usize,
    sets: &[HashSet<usize>],
    is_forced: &dyn Fn(usize, usize) -> bool,
    base: &[(usize, usize)],
    d: &Derivation,
) -> Result<(), String> {
    let mut rel = base.to_vec();
    for s in &d.steps {
        match s {
            Step::Assume { lower, upper, wlog } => {
                if *wlog && !rel.is_empty() {
                    return Err("symmetry break after other relations".into());
                }
                rel.push((*lower, *upper));
            }
            Step::Forced { lower, upper, refuted } => {
                if !is_forced(*lower, *upper) {
                    return Err(format!("P{} and P{} are not a forced pair", lower + 1, upper + 1));
                }
                let mut rev = rel.clone();
                rev.push((*upper, *lower));
                violation_holds(n, sets, &rev, refuted)?;
                rel.push((*lower, *upper));
            }
        }
    }
    match &d.conclusion {
        Conclusion::Contradiction { a, b, a_below, b_below } => {
            if !is_forced(*a, *b) {
                return Err(format!("P{} and P{} are not a forced pair", a + 1, b + 1));
            }
            let mut x = rel.clone();
            x.push((*a, *b));
            violation_holds(n, sets, &x, a_below)?;
            let mut y = rel.clone();
            y.push((*b, *a));
            violation_holds(n, sets, &y, b_below)
        }
        Conclusion::Split { a, b, cases } => {
            if !is_forced(*a, *b) {
                return Err(format!("split on P{} and P{}, not a forced pair", a + 1, b + 1));
            }
            let want = [(*b, *a), (*a, *b)];
            for (case, w) in cases.iter().zip(want) {
                match case.steps.first() {
                    Some(Step::Assume { lower, upper, wlog: false }) if (*lower, *upper) == w => {}
                    _ => return Err("split case does not start with its assumption".into()),
                }
                replay_from(n, sets, is_forced, &rel, case)?;
            }
            Ok(())
        }
    }
}
