//! Brute-force checks of the structural facts about s-t-planar embeddings:
//! simple cuts cross the infinite face once in each direction, no path runs
//! against the uppermost path, bridges are all-or-nothing, and adding a path
//! to the right of the uppermost path does not change it.

use serde::Serialize;

use crate::circulation::restrict_to_subgraph;
use crate::embed::{Dart, PlaneGraph};
use crate::lattice::{self, Comparison, LatticeError, PathSeq};

use super::{PathFamily, VerifyError};

const DETAIL_CAP: usize = 32;
/// Cut enumeration is skipped above this many vertices.
const MAX_CUT_VERTICES: usize = 20;

#[derive(Debug, Clone, Default, Serialize)]
pub struct LemmaReport {
    pub cuts_checked: usize,
    pub cut_violations: usize,
    pub orientation_checked: usize,
    pub orientation_violations: usize,
    pub bridges_checked: usize,
    pub bridge_violations: usize,
    pub add_path_checked: usize,
    pub add_path_violations: usize,
    pub details: Vec<String>,
}

impl LemmaReport {
    fn note(&mut self, s: String) {
        if self.details.len() < DETAIL_CAP {
            self.details.push(s);
        }
    }

    pub fn violations(&self) -> usize {
        self.cut_violations + self.orientation_violations + self.bridge_violations + self.add_path_violations
    }
}

fn connected(g: &PlaneGraph, inside: &[bool]) -> bool {
    let Some(start) = inside.iter().position(|&x| x) else { return true };
    let mut seen = vec![false; inside.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &d in g.rotation(v) {
            let w = g.head(d);
            if inside[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().zip(inside).all(|(s, i)| s == i)
}

fn cut_lemma(g: &PlaneGraph, rep: &mut LemmaReport) {
    let n = g.vertex_count();
    if n > MAX_CUT_VERTICES {
        return;
    }
    let inf = g.infinite_face();
    let free: Vec<usize> = (0..n).filter(|&v| v != g.source() && v != g.sink()).collect();
    for mask in 0u64..(1 << free.len()) {
        let mut in_s = vec![false; n];
        in_s[g.source()] = true;
        for (k, &v) in free.iter().enumerate() {
            in_s[v] = mask >> k & 1 == 1;
        }
        let out: Vec<bool> = in_s.iter().map(|x| !x).collect();
        if !connected(g, &in_s) || !connected(g, &out) {
            continue;
        }
        rep.cuts_checked += 1;
        let darts: Vec<Dart> = g.darts().filter(|&d| in_s[g.tail(d)] && !in_s[g.head(d)]).collect();
        let on_left = darts.iter().filter(|&&d| g.left(d) == inf).count();
        let on_right = darts.iter().filter(|&&d| g.right(d) == inf).count();
        if on_left != 1 || on_right != 1 {
            rep.cut_violations += 1;
            let side: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
            rep.note(format!("cut S = {side:?}: {on_left} darts with f∞ on the left, {on_right} on the right"));
        }
    }
}

fn orientation_lemma(family: &PathFamily, rep: &mut LemmaReport) -> Result<(), LatticeError> {
    let g = &family.graph;
    let up = lattice::uppermost_path(g)?;
    let low = lattice::lowermost_path(g)?;
    for p in family.paths.iter().chain([&low, &up]) {
        rep.orientation_checked += 1;
        let against = |x: &PathSeq| p.darts().iter().find(|d| x.contains(d.rev())).copied();
        if let Some(d) = against(&up).or_else(|| against(&low)) {
            rep.orientation_violations += 1;
            rep.note(format!("path {p} uses {d} against an extreme path"));
        }
    }
    Ok(())
}

fn bridge_lemma(family: &PathFamily, rep: &mut LemmaReport) {
    let g = &family.graph;
    for d in g.darts().filter(|&d| g.left(d) == g.right(d)) {
        rep.bridges_checked += 1;
        let k = family.paths.iter().filter(|p| p.contains(d)).count();
        if k != 0 && k != family.len() {
            rep.bridge_violations += 1;
            rep.note(format!("bridge dart {d} lies on {k} of {} paths", family.len()));
        }
    }
}

fn uppermost_within(g: &PlaneGraph, edges: &[usize]) -> Result<Vec<Dart>, LatticeError> {
    let sub = restrict_to_subgraph(g, edges)?;
    let up = lattice::uppermost_path(&sub.graph)?;
    Ok(sub.darts_to_parent(up.darts()))
}

fn union(a: &PathSeq, b: &PathSeq) -> Vec<usize> {
    let mut e = a.edges();
    e.extend(b.edges());
    e.sort_unstable();
    e.dedup();
    e
}

/// Ē ranges over `E(P) ∪ E(R)` for all paths `R`; `Q` over all paths that
/// `P` is strictly left of. Triples beyond `budget` are sampled with a fixed stride.
fn add_path_lemma(family: &PathFamily, budget: usize, rep: &mut LemmaReport) -> Result<(), LatticeError> {
    let g = &family.graph;
    let n = family.len();
    let mut right_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (p, list) in right_of.iter_mut().enumerate() {
        for q in 0..n {
            if lattice::compare(g, &family.paths[p], &family.paths[q])? == Comparison::LeftOf {
                list.push(q);
            }
        }
    }
    let total: usize = right_of.iter().map(|l| l.len() * n).sum();
    let stride = total.div_ceil(budget.max(1)).max(1);
    let mut counter = 0usize;
    for p in 0..n {
        for r in 0..n {
            let base_edges = union(&family.paths[p], &family.paths[r]);
            let mut base = None;
            for &q in &right_of[p] {
                counter += 1;
                if !counter.is_multiple_of(stride) {
                    continue;
                }
                let base = match &base {
                    Some(b) => b,
                    None => base.insert(uppermost_within(g, &base_edges)?),
                };
                let mut grown = base_edges.clone();
                grown.extend(family.paths[q].edges());
                grown.sort_unstable();
                grown.dedup();
                rep.add_path_checked += 1;
                let after = uppermost_within(g, &grown)?;
                if &after != base {
                    rep.add_path_violations += 1;
                    rep.note(format!(
                        "adding {} to E({}) ∪ E({}) moves the uppermost path",
                        family.paths[q], family.paths[p], family.paths[r]
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Runs all four checks on an s-t-planar graph's complete path family.
/// At most `budget` add-a-path triples are evaluated.
pub fn check_structural_lemmas(family: &PathFamily, budget: usize) -> Result<LemmaReport, VerifyError> {
    let g = &family.graph;
    if !lattice::is_st_planar(g) {
        return Err(LatticeError::NotStPlanarEmbedding.into());
    }
    let mut rep = LemmaReport::default();
    cut_lemma(g, &mut rep);
    orientation_lemma(family, &mut rep)?;
    bridge_lemma(family, &mut rep);
    add_path_lemma(family, budget, &mut rep)?;
    Ok(rep)
}
