use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::dart::Dart;
use super::EmbedError;

/// Dense face identifier (index into [`PlaneGraph::faces`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId(pub usize);

impl FaceId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

impl fmt::Debug for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A face, given by the cyclic sequence of darts that have it on their left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub boundary: Vec<Dart>,
}

/// A connected graph together with a rotation system, a source, a sink and a
/// designated infinite face.
///
/// Immutable once built. Faces are the orbits of the left-face successor
/// `succ(d) = π⁻¹(rev d)`, where `π` maps a dart to the next dart leaving the
/// same vertex in counterclockwise order.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    vertex_count: usize,
    tails: Vec<usize>,
    heads: Vec<usize>,
    rotation: Vec<Vec<Dart>>,
    next_ccw: Vec<Dart>,
    prev_ccw: Vec<Dart>,
    left_face: Vec<FaceId>,
    faces: Vec<Face>,
    source: usize,
    sink: usize,
    outer: Dart,
    infinite: FaceId,
}

impl PlaneGraph {
    /// Builds and validates an embedded graph.
    ///
    /// `rotation[v]` lists the darts leaving `v` in counterclockwise order.
    pub fn new(
        vertex_count: usize,
        edges: &[(usize, usize)],
        rotation: Vec<Vec<Dart>>,
        source: usize,
        sink: usize,
        outer: Dart,
    ) -> Result<Self, EmbedError> {
        if vertex_count == 0 {
            return Err(EmbedError::NoVertices);
        }
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(EmbedError::VertexOutOfRange(v));
                }
            }
        }
        for v in [source, sink] {
            if v >= vertex_count {
                return Err(EmbedError::VertexOutOfRange(v));
            }
        }
        if source == sink {
            return Err(EmbedError::SourceIsSink);
        }
        if rotation.len() != vertex_count {
            return Err(EmbedError::MissingRotation(rotation.len().min(vertex_count)));
        }

        let m = edges.len();
        let tails: Vec<usize> = edges.iter().map(|e| e.0).collect();
        let heads: Vec<usize> = edges.iter().map(|e| e.1).collect();
        let tail_of = |d: Dart| if d.is_forward() { tails[d.edge()] } else { heads[d.edge()] };

        let mut seen = vec![false; 2 * m];
        for (v, darts) in rotation.iter().enumerate() {
            for &d in darts {
                if d.edge() >= m {
                    return Err(EmbedError::UnknownEdge(d.edge()));
                }
                if tail_of(d) != v {
                    return Err(EmbedError::RotationMismatch { vertex: v, dart: d });
                }
                if seen[d.index()] {
                    return Err(EmbedError::DuplicateRotationEntry { vertex: v, dart: d });
                }
                seen[d.index()] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let d = Dart::from_index(i);
            return Err(EmbedError::MissingRotationEntry { vertex: tail_of(d), dart: d });
        }

        let mut next_ccw = vec![Dart::from_index(0); 2 * m];
        let mut prev_ccw = vec![Dart::from_index(0); 2 * m];
        for darts in &rotation {
            let k = darts.len();
            for i in 0..k {
                next_ccw[darts[i].index()] = darts[(i + 1) % k];
                prev_ccw[darts[(i + 1) % k].index()] = darts[i];
            }
        }

        // connectivity
        let mut visited = vec![false; vertex_count];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &d in &rotation[v] {
                let w = if d.is_forward() { heads[d.edge()] } else { tails[d.edge()] };
                if !visited[w] {
                    visited[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != vertex_count {
            return Err(EmbedError::DisconnectedGraph);
        }

        // faces: orbits of succ(d) = prev_ccw(rev d)
        let mut left_face = vec![FaceId(usize::MAX); 2 * m];
        let mut faces = Vec::new();
        for i in 0..2 * m {
            if left_face[i].0 != usize::MAX {
                continue;
            }
            let id = FaceId(faces.len());
            let start = Dart::from_index(i);
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                left_face[d.index()] = id;
                boundary.push(d);
                d = prev_ccw[d.rev().index()];
                if d == start {
                    break;
                }
            }
            faces.push(Face { id, boundary });
        }
        let euler = vertex_count as i64 - m as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(EmbedError::EulerViolation {
                vertices: vertex_count,
                edges: m,
                faces: faces.len(),
            });
        }

        if outer.edge() >= m {
            return Err(EmbedError::UnknownEdge(outer.edge()));
        }
        let infinite = left_face[outer.index()];
        let g = PlaneGraph {
            vertex_count,
            tails,
            heads,
            rotation,
            next_ccw,
            prev_ccw,
            left_face,
            faces,
            source,
            sink,
            outer,
            infinite,
        };
        if !g.face_touches_vertex(infinite, sink) {
            return Err(EmbedError::OuterFaceNotIncidentToSink);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.tails.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.tails.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// The dart that designates the infinite face (it lies on its left).
    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    pub fn infinite_face(&self) -> FaceId {
        self.infinite
    }

    /// Edge endpoints as `(tail, head)` of the forward dart.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        (self.tails[edge], self.heads[edge])
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> usize {
        if d.is_forward() {
            self.tails[d.edge()]
        } else {
            self.heads[d.edge()]
        }
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.rev())
    }

    /// Darts leaving `v`, counterclockwise.
    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    /// `π(d)`: the next dart counterclockwise around `tail(d)`.
    #[inline]
    pub fn next_ccw(&self, d: Dart) -> Dart {
        self.next_ccw[d.index()]
    }

    /// `π⁻¹(d)`: the next dart clockwise around `tail(d)`.
    #[inline]
    pub fn prev_ccw(&self, d: Dart) -> Dart {
        self.prev_ccw[d.index()]
    }

    /// Successor of `d` on the boundary walk of its left face.
    #[inline]
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.prev_ccw[d.rev().index()]
    }

    #[inline]
    pub fn left(&self, d: Dart) -> FaceId {
        self.left_face[d.index()]
    }

    #[inline]
    pub fn right(&self, d: Dart) -> FaceId {
        self.left_face[d.rev().index()]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f.0]
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart::from_index)
    }

    /// Whether vertex `v` lies on the boundary of face `f`.
    pub fn face_touches_vertex(&self, f: FaceId, v: usize) -> bool {
        self.faces[f.0].boundary.iter().any(|&d| self.tail(d) == v)
    }

    /// The `(tail, head)` pairs of all edges in id order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.tails.iter().copied().zip(self.heads.iter().copied()).collect()
    }

    /// Rotation lists for every vertex.
    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    /// The mirror image: every rotation reversed, so left and right swap.
    pub fn mirrored(&self) -> PlaneGraph {
        let rot = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        PlaneGraph::new(
            self.vertex_count,
            &self.edge_list(),
            rot,
            self.source,
            self.sink,
            self.outer.rev(),
        )
        .expect("mirror of a valid embedding is valid")
    }
}
