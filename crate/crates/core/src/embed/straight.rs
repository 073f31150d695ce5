use super::dart::Dart;
use super::graph::PlaneGraph;
use super::EmbedError;

/// Builds an embedding from a straight-line drawing.
///
/// Darts around each vertex are sorted by angle, and the infinite face is the
/// orbit with the most negative signed area (the only orbit traced clockwise).
/// The caller must supply a crossing-free drawing; crossings surface as an
/// [`EmbedError::EulerViolation`].
pub fn straight_line_graph(
    coords: &[(f64, f64)],
    edges: &[(usize, usize)],
    source: usize,
    sink: usize,
) -> Result<PlaneGraph, EmbedError> {
    let n = coords.len();
    if n == 0 {
        return Err(EmbedError::NoVertices);
    }
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(EmbedError::VertexOutOfRange(a.max(b)));
        }
    }
    let tail = |d: Dart| if d.is_forward() { edges[d.edge()].0 } else { edges[d.edge()].1 };
    let head = |d: Dart| tail(d.rev());
    let angle = |d: Dart| {
        let (x0, y0) = coords[tail(d)];
        let (x1, y1) = coords[head(d)];
        (y1 - y0).atan2(x1 - x0)
    };

    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for i in 0..2 * edges.len() {
        let d = Dart::from_index(i);
        rotation[tail(d)].push(d);
    }
    for r in &mut rotation {
        r.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)).then(a.cmp(&b)));
    }

    let mut prev = vec![Dart::from_index(0); 2 * edges.len()];
    for r in &rotation {
        for i in 0..r.len() {
            prev[r[(i + 1) % r.len()].index()] = r[i];
        }
    }
    let mut seen = vec![false; 2 * edges.len()];
    let mut outer = None;
    let mut best = f64::INFINITY;
    for i in 0..2 * edges.len() {
        if seen[i] {
            continue;
        }
        let start = Dart::from_index(i);
        let mut d = start;
        let mut area = 0.0;
        loop {
            seen[d.index()] = true;
            let (x0, y0) = coords[tail(d)];
            let (x1, y1) = coords[head(d)];
            area += x0 * y1 - x1 * y0;
            d = prev[d.rev().index()];
            if d == start {
                break;
            }
        }
        if area < best - 1e-9 {
            best = area;
            outer = Some(start);
        }
    }
    let outer = outer.ok_or(EmbedError::NoVertices)?;
    PlaneGraph::new(n, edges, rotation, source, sink, outer)
}
