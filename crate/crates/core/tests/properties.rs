use proptest::prelude::*;

use pathlattice::circulation::{expand_potential, face_potential, face_potential_with, restrict_to_subgraph, Traversal};
use pathlattice::embed::{build_graph, GraphSpec};
use pathlattice::flow;
use pathlattice::lattice::{self, Comparison};
use pathlattice::verify::{self, generate, PathFamily};

/// A random instance whose paths are cheap to enumerate.
fn small_family(seed: u64) -> Option<(generate::Instance, PathFamily)> {
    let inst = generate::random_instance(seed, 16, 6);
    let family = verify::enumerate_simple_paths_limited(&inst.graph, 60).ok()?;
    Some((inst, family))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compare_is_antisymmetric(seed in 0u64..10_000, a in 0usize..60, b in 0usize..60) {
        let Some((inst, fam)) = small_family(seed) else { return Ok(()) };
        let (p, q) = (&fam.paths[a % fam.len()], &fam.paths[b % fam.len()]);
        let pq = lattice::compare(&inst.graph, p, q).unwrap();
        let qp = lattice::compare(&inst.graph, q, p).unwrap();
        prop_assert_eq!(pq, qp.flipped());
        prop_assert_eq!(pq == Comparison::Equal, p == q);
    }

    #[test]
    fn potential_round_trips(seed in 0u64..10_000, a in 0usize..60, b in 0usize..60) {
        let Some((inst, fam)) = small_family(seed) else { return Ok(()) };
        let g = &inst.graph;
        let (p, q) = (&fam.paths[a % fam.len()], &fam.paths[b % fam.len()]);
        let c = p.vector(g).minus(&q.vector(g));
        let phi = face_potential(g, &c).unwrap();
        prop_assert_eq!(phi.at(g.infinite_face()), 0);
        prop_assert_eq!(expand_potential(g, &phi), c.clone());
        prop_assert_eq!(face_potential_with(g, &c, Traversal::DepthFirst).unwrap(), phi);
    }

    #[test]
    fn meet_and_join_bound_both_paths(seed in 0u64..10_000, a in 0usize..60, b in 0usize..60) {
        let Some((inst, fam)) = small_family(seed) else { return Ok(()) };
        let g = &inst.graph;
        let (p, q) = (&fam.paths[a % fam.len()], &fam.paths[b % fam.len()]);
        let lo = lattice::meet(g, p, q).unwrap().path;
        let hi = lattice::join(g, p, q).unwrap().path;
        for x in [p, q] {
            prop_assert!(lattice::precedes(g, &lo, x).unwrap());
            prop_assert!(lattice::precedes(g, x, &hi).unwrap());
        }
        // E(P∧Q) ∪ E(P∨Q) ⊆ E(P) ∪ E(Q)
        for e in lo.edges().into_iter().chain(hi.edges()) {
            prop_assert!(p.uses_edge(e) || q.uses_edge(e));
        }
    }

    #[test]
    fn join_is_uppermost_path_of_the_union(seed in 0u64..10_000, a in 0usize..60, b in 0usize..60) {
        let Some((inst, fam)) = small_family(seed) else { return Ok(()) };
        let g = &inst.graph;
        let (p, q) = (&fam.paths[a % fam.len()], &fam.paths[b % fam.len()]);
        let mut edges = p.edges();
        edges.extend(q.edges());
        edges.sort_unstable();
        edges.dedup();
        let sub = restrict_to_subgraph(g, &edges).unwrap();
        let up = lattice::uppermost_path(&sub.graph).unwrap();
        let lifted = sub.darts_to_parent(up.darts());
        let join = lattice::join(g, p, q).unwrap().path;
        prop_assert_eq!(lifted.as_slice(), join.darts());
    }

    #[test]
    fn planar_flows_match_generic(seed in 0u64..100_000) {
        let inst = generate::random_instance(seed, 30, 9);
        let (g, cap) = (&inst.graph, &inst.cap);
        let generic = flow::maxflow_generic(g, cap).unwrap();
        let dual = flow::maxflow_dual_sp(g, cap).unwrap();
        let up = flow::maxflow_uppermost(g, cap).unwrap();
        prop_assert_eq!(dual.value, generic.value);
        prop_assert_eq!(up.flow.value, generic.value);
        prop_assert!(dual.check(g, cap).is_ok());
        prop_assert_eq!(cap.cut_capacity(&up.cut), generic.value);
    }

    #[test]
    fn graph_text_round_trips(seed in 0u64..10_000) {
        let inst = generate::random_instance(seed, 20, 4);
        let text = GraphSpec::from_graph(&inst.graph).to_text();
        let again = build_graph(&GraphSpec::parse(&text).unwrap()).unwrap();
        prop_assert_eq!(again.edge_list(), inst.graph.edge_list());
        prop_assert_eq!(again.rotations(), inst.graph.rotations());
        prop_assert_eq!(again.infinite_face(), inst.graph.infinite_face());
    }
}

#[test]
fn mirroring_swaps_meet_and_join() {
    let fx = verify::fixtures::fig1();
    let g = &fx.graph;
    let m = g.mirrored();
    let (p, q) = (fx.path(2), fx.path(3));
    let lift = |x: &lattice::PathSeq| lattice::PathSeq::new(&m, x.darts().to_vec()).unwrap();
    let lo = lattice::meet(g, p, q).unwrap().path;
    let hi_m = lattice::join(&m, &lift(p), &lift(q)).unwrap().path;
    assert_eq!(lo.darts(), hi_m.darts());
}
