//! Shared fixtures for unit and integration tests: small abstract meshes
//! with hand-checkable metric data.

use crate::mesh::{Edge, EdgeId, EdgeTag, Face, MeshMetadata, SurfaceMesh, Variant, Vertex};

/// Two triangles glued along all three edges (a "pillow" sphere).
pub fn pillow() -> SurfaceMesh {
    let edges = vec![
        Edge { u: 0, v: 1, length: 3.0, tag: EdgeTag::Interior },
        Edge { u: 1, v: 2, length: 4.0, tag: EdgeTag::Interior },
        Edge { u: 2, v: 0, length: 5.0, tag: EdgeTag::Interior },
    ];
    let faces = vec![
        Face { edges: [0, 1, 2], area: 6.0 },
        Face { edges: [0, 1, 2], area: 6.0 },
    ];
    SurfaceMesh {
        vertices: vec![Vertex { coords: None }; 3],
        edges,
        faces,
        meta: MeshMetadata::new(Variant::RoundSphere, 1, 0),
    }
}

/// Tetrahedron with unit edges and unit face areas.
pub fn tetrahedron() -> SurfaceMesh {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let edges: Vec<Edge> = pairs
        .iter()
        .map(|&(u, v)| Edge { u, v, length: 1.0, tag: EdgeTag::Interior })
        .collect();
    let eid = |u: u32, v: u32| -> EdgeId {
        pairs
            .iter()
            .position(|&(a, b)| (a, b) == (u.min(v), u.max(v)))
            .unwrap() as EdgeId
    };
    let faces = [[0u32, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .map(|vs| Face {
            edges: [eid(vs[0], vs[1]), eid(vs[1], vs[2]), eid(vs[0], vs[2])],
            area: 1.0,
        })
        .collect();
    SurfaceMesh {
        vertices: vec![Vertex { coords: None }; 4],
        edges,
        faces,
        meta: MeshMetadata::new(Variant::RoundSphere, 1, 0),
    }
}

/// Bipyramid over an `n`-gon: apexes 0 and 1, equator `2..2+n`.
/// `stretch` multiplies the slant edge length (areas stay 1 per face).
pub fn bipyramid(n: usize, stretch: f64) -> SurfaceMesh {
    assert!(n >= 3);
    let mut edges = Vec::new();
    let eq_base = 0;
    for i in 0..n {
        edges.push(Edge {
            u: (2 + i) as u32,
            v: (2 + (i + 1) % n) as u32,
            length: 1.0,
            tag: EdgeTag::Interior,
        });
    }
    let top_base = edges.len();
    for i in 0..n {
        edges.push(Edge {
            u: 0,
            v: (2 + i) as u32,
            length: stretch,
            tag: EdgeTag::Interior,
        });
    }
    let bot_base = edges.len();
    for i in 0..n {
        edges.push(Edge {
            u: 1,
            v: (2 + i) as u32,
            length: stretch,
            tag: EdgeTag::Interior,
        });
    }
    let mut faces = Vec::new();
    for i in 0..n {
        faces.push(Face {
            edges: [
                (top_base + i) as EdgeId,
                (eq_base + i) as EdgeId,
                (top_base + (i + 1) % n) as EdgeId,
            ],
            area: 1.0,
        });
        faces.push(Face {
            edges: [
                (bot_base + i) as EdgeId,
                (eq_base + i) as EdgeId,
                (bot_base + (i + 1) % n) as EdgeId,
            ],
            area: 1.0,
        });
    }
    SurfaceMesh {
        vertices: vec![Vertex { coords: None }; 2 + n],
        edges,
        faces,
        meta: MeshMetadata::new(Variant::RoundSphere, 1, 0),
    }
}

/// Octahedron = square bipyramid with unit edges and unit face areas.
pub fn octahedron() -> SurfaceMesh {
    bipyramid(4, 1.0)
}
