//! Seeded generators of s-t-planar instances.
//!
//! All generators draw straight-line embeddings with s and t at extreme
//! points of the drawing, so both lie on the infinite face.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embed::{straight_line_graph, PlaneGraph};
use crate::flow::CapacityMap;

/// A generated graph with capacities.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: PlaneGraph,
    pub cap: CapacityMap,
}

fn grid_coords(rows: usize, cols: usize) -> Vec<(f64, f64)> {
    (0..rows).flat_map(|y| (0..cols).map(move |x| (x as f64, y as f64))).collect()
}

fn grid_edges(rows: usize, cols: usize, diagonals: bool) -> Vec<(usize, usize)> {
    let id = |x: usize, y: usize| y * cols + x;
    let mut edges = Vec::new();
    for y in 0..rows {
        for x in 0..cols {
            if x + 1 < cols {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < rows {
                edges.push((id(x, y), id(x, y + 1)));
            }
            if diagonals && x + 1 < cols && y + 1 < rows {
                edges.push((id(x, y), id(x + 1, y + 1)));
            }
        }
    }
    edges
}

fn corner_to_corner(rows: usize, cols: usize, edges: &[(usize, usize)]) -> PlaneGraph {
    straight_line_graph(&grid_coords(rows, cols), edges, 0, rows * cols - 1).expect("grid drawings are plane")
}

/// `rows × cols` grid, edges pointing right and up, s bottom-left, t top-right.
pub fn grid(rows: usize, cols: usize) -> PlaneGraph {
    corner_to_corner(rows, cols, &grid_edges(rows, cols, false))
}

/// Grid with one diagonal per cell.
pub fn triangulated_grid(rows: usize, cols: usize) -> PlaneGraph {
    corner_to_corner(rows, cols, &grid_edges(rows, cols, true))
}

/// Hub s joined to every vertex of a rim path `v1 … vn`; t is `vn`.
pub fn fan(n: usize) -> PlaneGraph {
    let mut coords = vec![(0.0, 0.0)];
    let mut edges = Vec::new();
    for i in 0..n {
        let a = std::f64::consts::FRAC_PI_2 * (1.0 - i as f64 / (n.max(2) - 1) as f64);
        coords.push((a.cos() * 4.0, a.sin() * 4.0));
        edges.push((0, i + 1));
        if i > 0 {
            edges.push((i, i + 1));
        }
    }
    straight_line_graph(&coords, &edges, 0, n).expect("fans are plane")
}

/// Two rails of `n` vertices joined by rungs, s left of both, t right of both.
pub fn ladder(n: usize) -> PlaneGraph {
    let mut coords = vec![(-1.0, 0.5)];
    for i in 0..n {
        coords.push((i as f64, 0.0));
        coords.push((i as f64, 1.0));
    }
    coords.push((n as f64, 0.5));
    let bottom = |i: usize| 1 + 2 * i;
    let top = |i: usize| 2 + 2 * i;
    let t = 2 * n + 1;
    let mut edges = vec![(0, bottom(0)), (0, top(0))];
    for i in 0..n {
        edges.push((bottom(i), top(i)));
        if i + 1 < n {
            edges.push((bottom(i), bottom(i + 1)));
            edges.push((top(i), top(i + 1)));
        }
    }
    edges.push((bottom(n - 1), t));
    edges.push((top(n - 1), t));
    straight_line_graph(&coords, &edges, 0, t).expect("ladders are plane")
}

/// A ladder whose source hangs off a bridge, with a pendant edge at the
/// first rung: one bridge lies on every path, the other on none.
pub fn bridged_ladder(n: usize) -> PlaneGraph {
    let inner = ladder(n);
    let mut coords = vec![(-1.0, 0.5)];
    for i in 0..n {
        coords.push((i as f64, 0.0));
        coords.push((i as f64, 1.0));
    }
    coords.push((n as f64, 0.5));
    coords.push((-2.0, 0.5));
    coords.push((0.0, 2.0));
    let s = coords.len() - 2;
    let mut edges = inner.edge_list();
    edges.push((s, 0));
    edges.push((2, coords.len() - 1));
    straight_line_graph(&coords, &edges, s, 2 * n + 1).expect("bridged ladders are plane")
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// A connected random subgraph of a (possibly triangulated) grid with at most
/// `max_edges` edges, random directions and capacities in `1..=max_cap`.
/// Some edges are undirected (both darts get the capacity).
pub fn random_instance(seed: u64, max_edges: usize, max_cap: i64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (rows, cols, diagonals) = loop {
        let rows = rng.gen_range(2..=4);
        let cols = rng.gen_range(2..=5);
        let diagonals = rng.gen_bool(0.5);
        if grid_edges(rows, cols, diagonals).len() <= max_edges.max(1) || (rows, cols) == (2, 2) {
            break (rows, cols, diagonals);
        }
    };
    let mut all = grid_edges(rows, cols, diagonals);
    all.shuffle(&mut rng);
    let n = rows * cols;
    let mut parent: Vec<usize> = (0..n).collect();
    let mut keep = Vec::new();
    let mut rest = Vec::new();
    for (a, b) in all {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            keep.push((a, b));
        } else {
            rest.push((a, b));
        }
    }
    for e in rest {
        if keep.len() < max_edges && rng.gen_bool(0.7) {
            keep.push(e);
        }
    }
    keep.sort_unstable();
    let edges: Vec<(usize, usize)> =
        keep.into_iter().map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) }).collect();
    let graph = corner_to_corner(rows, cols, &edges);
    let mut cap = Vec::with_capacity(2 * edges.len());
    for _ in 0..edges.len() {
        let c = rng.gen_range(1..=max_cap.max(1));
        let back = if rng.gen_bool(0.3) { c } else { 0 };
        cap.extend([c, back]);
    }
    let cap = CapacityMap::new(&graph, cap).expect("capacities match the darts");
    Instance { name: format!("random-{seed}"), graph, cap }
}

/// Named deterministic graphs used by the verification commands.
pub fn standard_catalog() -> Vec<(String, PlaneGraph)> {
    let mut out = Vec::new();
    for (r, c) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (4, 4)] {
        out.push((format!("grid-{r}x{c}"), grid(r, c)));
    }
    for (r, c) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        out.push((format!("trigrid-{r}x{c}"), triangulated_grid(r, c)));
    }
    for n in 2..=7 {
        out.push((format!("fan-{n}"), fan(n)));
    }
    for n in 1..=6 {
        out.push((format!("ladder-{n}"), ladder(n)));
    }
    for n in 1..=3 {
        out.push((format!("bridged-ladder-{n}"), bridged_ladder(n)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::is_st_planar;

    #[test]
    fn generated_graphs_are_st_planar() {
        for (name, g) in standard_catalog() {
            assert!(is_st_planar(&g), "{name}");
        }
        for seed in 0..30 {
            let inst = random_instance(seed, 30, 9);
            assert!(is_st_planar(&inst.graph), "seed {seed}");
            assert!(inst.graph.edge_count() <= 30);
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_instance(7, 20, 5);
        let b = random_instance(7, 20, 5);
        assert_eq!(a.graph.edge_list(), b.graph.edge_list());
        assert_eq!(a.cap, b.cap);
    }

    #[test]
    fn grid_shape() {
        let g = grid(3, 3);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.face_count(), 5);
        assert_eq!(ladder(2).edge_count(), 8);
        assert_eq!(fan(4).edge_count(), 7);
    }
}
