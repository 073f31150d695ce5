//! End-to-end acceptance run, without the test harness so the per-criterion
//! lines always reach the output. Exits non-zero if any criterion failed.

use std::cell::Cell;

use pathlattice::flow::{self, CapacityMap, FlowState};
use pathlattice::lattice::invariants::{check_join, check_meet};
use pathlattice::lattice::{self, Comparison, Orientation, PathSeq};
use pathlattice::verify::{
    self, fixtures, generate, AxiomOptions, OrderMatrix, OrderVerdict, PathFamily,
};
use pathlattice::PlaneGraph;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Invariant violations seen by criteria 1-3, and how many results were checked.
struct Invariants {
    violations: Cell<usize>,
    checked: Cell<usize>,
}

impl Invariants {
    fn meet_join(&self, g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<(), String> {
        let lo = lattice::meet(g, p, q).map_err(err)?;
        let hi = lattice::join(g, p, q).map_err(err)?;
        for (found, _) in [check_meet(g, p, q, &lo), check_join(g, p, q, &hi)] {
            self.violations.set(self.violations.get() + found.len());
            self.checked.set(self.checked.get() + 1);
        }
        Ok(())
    }
}

fn criterion_1(inv: &Invariants) -> Outcome {
    let fx = fixtures::fig1();
    let g = &fx.graph;
    let all = verify::enumerate_simple_paths(g).map_err(err)?;
    ensure!(all.len() == 4, "expected 4 simple paths, found {}", all.len());
    let (p1, p2, p3, p4) = (fx.path(1), fx.path(2), fx.path(3), fx.path(4));
    let c = lattice::compare(g, p2, p3).map_err(err)?;
    ensure!(c == Comparison::Incomparable, "P2 vs P3 is {c}");
    let lo = lattice::meet(g, p2, p3).map_err(err)?;
    let hi = lattice::join(g, p2, p3).map_err(err)?;
    ensure!(&lo.path == p4 && lo.cycles.is_empty(), "meet is {}", lo.path);
    ensure!(&hi.path == p1 && hi.cycles.is_empty(), "join is {}", hi.path);
    let lo_st = lattice::meet_st_planar(g, p2, p3).map_err(err)?;
    let hi_st = lattice::join_st_planar(g, p2, p3).map_err(err)?;
    ensure!(&lo_st == p4 && &hi_st == p1, "s-t-planar meet {lo_st}, join {hi_st}");
    ensure!(verify::brute_meet(&all, p2, p3).map_err(err)? == *p4, "brute-force meet disagrees");
    ensure!(verify::brute_join(&all, p2, p3).map_err(err)? == *p1, "brute-force join disagrees");
    inv.meet_join(g, p2, p3)?;
    Ok("4 paths, P2 ∦ P3, meet P4, join P1 by both constructions".into())
}

/// The ⪯-minimal paths among those using only edges of `P ∪ Q`.
fn union_minima(g: &PlaneGraph, p: &PathSeq, q: &PathSeq) -> Result<Vec<PathSeq>, String> {
    let mut edges = p.edges();
    edges.extend(q.edges());
    edges.sort_unstable();
    edges.dedup();
    let inside = verify::paths_within_edges(g, &edges, 10_000).ok_or("too many paths in the union")?;
    let mut minima = Vec::new();
    for a in &inside {
        let mut minimal = true;
        for b in &inside {
            if b != a && lattice::precedes(g, b, a).map_err(err)? {
                minimal = false;
            }
        }
        if minimal {
            minima.push(a.clone());
        }
    }
    Ok(minima)
}

fn criterion_2(inv: &Invariants) -> Outcome {
    let fx = fixtures::fig2();
    let g = &fx.graph;
    let (p, q) = (fx.path(1), fx.path(2));
    let phi = lattice::difference_potential(g, p, q).map_err(err)?;
    ensure!(phi.multiset() == vec![-1, 0, 0, 1], "potential multiset {:?}", phi.multiset());
    let lo = lattice::meet(g, p, q).map_err(err)?;
    let expected = PathSeq::parse(g, "+3 +4 +2").map_err(err)?;
    ensure!(lo.path == expected, "meet is {}", lo.path);
    let all = verify::enumerate_simple_paths(g).map_err(err)?;
    ensure!(verify::brute_meet(&all, p, q).map_err(err)? == lo.path, "brute-force meet disagrees");
    let minima = union_minima(g, p, q)?;
    ensure!(
        !(minima.len() == 1 && minima[0] == lo.path),
        "meet coincides with the rightmost path of the union"
    );
    ensure!(
        lo.cycles.iter().all(|c| c.orientation == Orientation::Clockwise),
        "meet has a counterclockwise cycle"
    );
    let hi = lattice::join(g, p, q).map_err(err)?;
    ensure!(
        hi.cycles.iter().all(|c| c.orientation == Orientation::Counterclockwise),
        "join has a clockwise cycle"
    );
    inv.meet_join(g, p, q)?;
    let shown: Vec<String> = minima.iter().map(PathSeq::to_string).collect();
    Ok(format!("Φ multiset [-1,0,0,1], meet {} vs union minima [{}]", lo.path, shown.join(", ")))
}

/// The catalog plus random instances small enough to enumerate.
fn st_planar_fixtures() -> Vec<(String, PlaneGraph)> {
    let mut out = generate::standard_catalog();
    out.push(("fig1".into(), fixtures::fig1().graph));
    let mut seed = 0;
    let mut random = 0;
    while random < 15 {
        let inst = generate::random_instance(seed, 24, 5);
        seed += 1;
        if verify::enumerate_simple_paths_limited(&inst.graph, 200).is_ok() {
            out.push((inst.name, inst.graph));
            random += 1;
        }
    }
    out
}

fn criterion_3(inv: &Invariants, graphs: &[(String, PlaneGraph)]) -> Outcome {
    ensure!(graphs.len() >= 30, "only {} fixtures", graphs.len());
    let mut pairs = 0;
    for (name, g) in graphs {
        ensure!(lattice::is_st_planar(g), "{name} is not s-t-planar");
        let rep = verify::check_axioms(g, AxiomOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            rep.all_hold(),
            "{name}: {} violations, first {:?}",
            rep.violation_count,
            rep.violations.first()
        );
        ensure!(rep.construction_mismatches == 0, "{name}: construction mismatches");
        inv.violations.set(inv.violations.get() + rep.invariant_violations);
        inv.checked.set(inv.checked.get() + 2 * rep.constructions_checked);
        pairs += rep.constructions_checked;
    }
    Ok(format!("{} s-t-planar fixtures, {pairs} pairs constructed", graphs.len()))
}

fn refuted(fx: &fixtures::Fixture) -> Result<usize, String> {
    let family = fx.family();
    let forced = verify::forced_pairs(&family);
    match verify::order_existence(&family).map_err(err)? {
        OrderVerdict::Refuted { derivation } => {
            verify::replay(&family, &forced, &derivation).map_err(|e| format!("{}: replay: {e}", fx.name))?;
            Ok(derivation.leaves())
        }
        OrderVerdict::Satisfiable { .. } => Err(format!("{}: an order was found", fx.name)),
    }
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for fx in [fixtures::k33st(), fixtures::k5st()] {
        let rep = verify::check_axioms(&fx.graph, AxiomOptions::default()).map_err(err)?;
        ensure!(!rep.consecutive, "{}: consecutivity holds", fx.name);
        let leaves = refuted(&fx)?;
        notes.push(format!("{} refuted ({leaves} leaves)", fx.name));
    }
    Ok(notes.join(", "))
}

/// Checks capacity bounds and conservation independently of the solvers.
fn feasible_value(g: &PlaneGraph, cap: &CapacityMap, f: &FlowState) -> Result<i64, String> {
    let mut excess = vec![0i64; g.vertex_count()];
    for d in g.darts() {
        ensure!(f.flow(d) >= 0 && f.flow(d) <= cap.get(d), "flow {} on {d} exceeds bounds", f.flow(d));
        excess[g.tail(d)] -= f.flow(d);
        excess[g.head(d)] += f.flow(d);
    }
    for (v, &x) in excess.iter().enumerate() {
        ensure!(v == g.source() || v == g.sink() || x == 0, "conservation fails at {v}");
    }
    Ok(-excess[g.source()])
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for seed in 0..100u64 {
        let inst = generate::random_instance(1000 + seed, 30, 9);
        let (g, cap) = (&inst.graph, &inst.cap);
        let up = flow::maxflow_uppermost(g, cap).map_err(err)?;
        let dsp = flow::maxflow_dual_sp(g, cap).map_err(err)?;
        let gen = flow::maxflow_generic(g, cap).map_err(err)?;
        let values = [
            feasible_value(g, cap, &up.flow)?,
            feasible_value(g, cap, &dsp)?,
            feasible_value(g, cap, &gen)?,
        ];
        // a feasible flow equal to some cut capacity is maximum
        let side = &up.cut.side;
        ensure!(side.contains(&g.source()) && !side.contains(&g.sink()), "{}: bad cut", inst.name);
        let cut_cap: i64 = g
            .darts()
            .filter(|&d| side.contains(&g.tail(d)) && !side.contains(&g.head(d)))
            .map(|d| cap.get(d))
            .sum();
        ensure!(values.iter().all(|&v| v == cut_cap), "{}: values {values:?}, cut {cut_cap}", inst.name);
        for w in up.packing.entries.windows(2) {
            let ok = lattice::precedes(g, &w[1].0, &w[0].0).map_err(err)?;
            ensure!(ok, "{}: augmenting path {} rose above {}", inst.name, w[1].0, w[0].0);
        }
        ensure!(up.iterations <= g.edge_count(), "{}: {} iterations", inst.name, up.iterations);
        total += cut_cap;
    }
    Ok(format!("100 instances agree, total flow {total}"))
}

fn criterion_6() -> Outcome {
    let limits = flow::OracleLimits::default();
    let mut instances = 0;
    let mut weighted = 0;
    let mut seed = 5000u64;
    while instances < 25 {
        ensure!(seed < 20_000, "ran out of seeds after {instances} instances");
        let inst = generate::random_instance(seed, 10, 3);
        seed += 1;
        let (g, cap) = (&inst.graph, &inst.cap);
        if cap.total() > limits.max_total_capacity {
            continue;
        }
        let one = |_: &PathSeq| 1;
        let Ok(best_one) = flow::packing_oracle_with(g, cap, &one, limits) else { continue };
        let family: PathFamily = verify::enumerate_simple_paths(g).map_err(err)?;
        let heights = OrderMatrix::build(&family, None).map_err(err)?.heights();
        let candidates: [Box<dyn Fn(usize) -> i64>; 3] =
            [Box::new(|h| h as i64 + 1), Box::new(|h| (h as i64 + 1).pow(2)), Box::new(|h| 1 << h.min(20))];
        let mut chosen = None;
        for shape in &candidates {
            let r = |p: &PathSeq| shape(heights[family.index_of(p).expect("every path is enumerated")]);
            let rep = verify::check_supermodular(&family, &r).map_err(err)?;
            if rep.supermodular && rep.monotone {
                chosen = Some(shape);
                break;
            }
        }
        let Some(shape) = chosen else { continue };
        instances += 1;

        let greedy = flow::weighted_packing(g, cap, &one).map_err(err)?;
        let maxflow = flow::maxflow_generic(g, cap).map_err(err)?.value;
        ensure!(
            greedy.objective(&one) == best_one && best_one == maxflow,
            "{}: r≡1 greedy {} oracle {best_one} flow {maxflow}",
            inst.name,
            greedy.objective(&one)
        );
        let r = |p: &PathSeq| shape(heights[family.index_of(p).expect("every path is enumerated")]);
        let best = flow::packing_oracle_with(g, cap, &r, limits).map_err(err)?;
        let got = flow::weighted_packing(g, cap, &r).map_err(err)?.objective(&r);
        ensure!(got == best, "{}: greedy {got}, optimum {best}", inst.name);
        if family.len() > 1 {
            weighted += 1;
        }
    }
    Ok(format!("25 instances ({weighted} with more than one path) match the exhaustive optimum"))
}

fn criterion_7(inv: &Invariants) -> Outcome {
    ensure!(inv.checked.get() > 0, "nothing was checked");
    ensure!(inv.violations.get() == 0, "{} invariant violations", inv.violations.get());
    Ok(format!("{} meet/join results, no violations", inv.checked.get()))
}

fn criterion_8(graphs: &[(String, PlaneGraph)]) -> Outcome {
    let mut bridges = 0;
    let mut cuts = 0;
    for (name, g) in graphs {
        let family = verify::enumerate_simple_paths(g).map_err(err)?;
        let rep = verify::check_structural_lemmas(&family, usize::MAX).map_err(|e| format!("{name}: {e}"))?;
        ensure!(rep.violations() == 0, "{name}: {:?}", rep.details.first());
        bridges += rep.bridges_checked;
        cuts += rep.cuts_checked;
    }
    ensure!(bridges > 0, "no bridges were exercised");
    Ok(format!("{} graphs, {cuts} cuts, {bridges} bridge darts", graphs.len()))
}

fn main() {
    let inv = Invariants { violations: Cell::new(0), checked: Cell::new(0) };
    let graphs = st_planar_fixtures();
    let results = [
        criterion_1(&inv),
        criterion_2(&inv),
        criterion_3(&inv, &graphs),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(&inv),
        criterion_8(&graphs),
    ];
    for (k, r) in results.iter().enumerate() {
        match r {
            Ok(note) => println!("criterion {}: pass ({note})", k + 1),
            Err(why) => println!("criterion {}: fail ({why})", k + 1),
        }
    }
    let failed: Vec<usize> = (0..results.len()).filter(|&k| results[k].is_err()).map(|k| k + 1).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
