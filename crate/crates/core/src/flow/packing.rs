use std::collections::HashMap;

use crate::embed::{Dart, PlaneGraph};
use crate::lattice::{is_st_planar, uppermost_usable_path, PathSeq};
use crate::verify::enumerate_simple_paths_limited;

use super::{CapacityMap, FlowError, PathPacking};

/// Greedy packing: saturate the ⪯-maximum path among darts with capacity
/// left, until no s-t path remains.
///
/// Meant for weights that are supermodular and monotone along the order;
/// the weights only enter through the sign check and the objective.
pub fn weighted_packing(
    g: &PlaneGraph,
    cap: &CapacityMap,
    r: &dyn Fn(&PathSeq) -> i64,
) -> Result<PathPacking, FlowError> {
    if !is_st_planar(g) {
        return Err(FlowError::NotStPlanarEmbedding);
    }
    let mut left: Vec<i64> = cap.as_slice().to_vec();
    let mut packing = PathPacking::default();
    loop {
        let usable = |d: Dart| left[d.index()] > 0;
        let Some(p) = uppermost_usable_path(g, &usable)? else { break };
        if r(&p) < 0 {
            return Err(FlowError::NegativeWeight(p.to_string()));
        }
        let y = p.darts().iter().map(|&d| left[d.index()]).min().expect("paths are non-empty");
        for &d in p.darts() {
            left[d.index()] -= y;
        }
        packing.entries.push((p, y));
    }
    Ok(packing)
}

/// Size limits for [`packing_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Bound on the sum of all dart capacities.
    pub max_total_capacity: i64,
    /// Bound on the number of paths whose darts all have positive capacity.
    pub max_paths: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_total_capacity: 24, max_paths: 40 }
    }
}

/// Exact optimum of `max Σ r(S)·y(S)` subject to the dart capacities, by
/// exhaustive search over integral `y`.
pub fn packing_oracle(g: &PlaneGraph, cap: &CapacityMap, r: &dyn Fn(&PathSeq) -> i64) -> Result<i64, FlowError> {
    packing_oracle_with(g, cap, r, OracleLimits::default())
}

pub fn packing_oracle_with(
    g: &PlaneGraph,
    cap: &CapacityMap,
    r: &dyn Fn(&PathSeq) -> i64,
    limits: OracleLimits,
) -> Result<i64, FlowError> {
    if cap.total() > limits.max_total_capacity {
        return Err(FlowError::InstanceTooLarge(format!(
            "total capacity {} exceeds {}",
            cap.total(),
            limits.max_total_capacity
        )));
    }
    let family = enumerate_simple_paths_limited(g, 10_000)
        .map_err(|e| FlowError::InstanceTooLarge(e.to_string()))?;
    let paths: Vec<&PathSeq> = family
        .paths
        .iter()
        .filter(|p| p.darts().iter().all(|&d| cap.get(d) > 0))
        .collect();
    if paths.len() > limits.max_paths {
        return Err(FlowError::InstanceTooLarge(format!(
            "{} usable paths exceed {}",
            paths.len(),
            limits.max_paths
        )));
    }
    let mut weights = Vec::with_capacity(paths.len());
    for p in &paths {
        let w = r(p);
        if w < 0 {
            return Err(FlowError::NegativeWeight(p.to_string()));
        }
        weights.push(w);
    }
    // only darts on some usable path matter
    let mut slot: HashMap<Dart, usize> = HashMap::new();
    for p in &paths {
        for &d in p.darts() {
            let n = slot.len();
            slot.entry(d).or_insert(n);
        }
    }
    let mut remaining = vec![0i64; slot.len()];
    for (&d, &i) in &slot {
        remaining[i] = cap.get(d);
    }
    let rows: Vec<Vec<usize>> = paths.iter().map(|p| p.darts().iter().map(|d| slot[d]).collect()).collect();

    struct Search<'a> {
        rows: &'a [Vec<usize>],
        weights: &'a [i64],
        memo: HashMap<(usize, Vec<i64>), i64>,
    }
    impl Search<'_> {
        fn best(&mut self, i: usize, rem: &mut Vec<i64>) -> i64 {
            if i == self.rows.len() {
                return 0;
            }
            let key = (i, rem.clone());
            if let Some(&v) = self.memo.get(&key) {
                return v;
            }
            let row = &self.rows[i];
            let top = row.iter().map(|&j| rem[j]).min().unwrap_or(0);
            let mut best = self.best(i + 1, rem);
            for y in 1..=top {
                for &j in row {
                    rem[j] -= 1;
                }
                best = best.max(y * self.weights[i] + self.best(i + 1, rem));
            }
            for &j in row {
                rem[j] += top;
            }
            self.memo.insert(key, best);
            best
        }
    }
    let mut search = Search { rows: &rows, weights: &weights, memo: HashMap::new() };
    Ok(search.best(0, &mut remaining))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_path_weight_five() {
        let rot = vec![vec![Dart::forward(0)], vec![Dart::backward(0)]];
        let g = PlaneGraph::new(2, &[(0, 1)], rot, 0, 1, Dart::forward(0)).unwrap();
        let cap = CapacityMap::from_edges(&g, &[3], false).unwrap();
        let r = |_: &PathSeq| 5;
        let pk = weighted_packing(&g, &cap, &r).unwrap();
        assert_eq!(pk.objective(&r), 15);
        assert_eq!(packing_oracle(&g, &cap, &r).unwrap(), 15);
        let zero = CapacityMap::from_edges(&g, &[0], false).unwrap();
        assert_eq!(packing_oracle(&g, &zero, &r).unwrap(), 0);
        let big = CapacityMap::from_edges(&g, &[25], false).unwrap();
        assert!(matches!(packing_oracle(&g, &big, &r), Err(FlowError::InstanceTooLarge(_))));
    }
}
