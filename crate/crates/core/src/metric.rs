//! Graph geodesics on a surface mesh: shortest paths, eccentricities, the
//! exact diameter, and minimum distances between tagged edge chains.
//!
//! Paths are restricted to mesh edges, so every distance here is an upper
//! bound on the underlying surface distance; accuracy is bought with mesh
//! resolution.

use crate::error::{Error, Result};
use crate::mesh::{EdgeId, SurfaceMesh, VertexId};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Above this vertex count [`diameter`] refuses to run the exact all-sources
/// search; use [`diameter_estimate`] instead.
pub const EXACT_DIAMETER_CAP: usize = 200_000;

#[derive(Debug, Clone)]
pub struct MetricSummary {
    pub diameter: f64,
    /// A vertex pair realizing the diameter.
    pub witness: (VertexId, VertexId),
    pub eccentricities: Vec<f64>,
}

impl MetricSummary {
    /// A vertex of minimum eccentricity (smallest id on ties).
    pub fn center(&self) -> VertexId {
        let mut best = 0usize;
        for (i, &e) in self.eccentricities.iter().enumerate() {
            if e < self.eccentricities[best] {
                best = i;
            }
        }
        best as VertexId
    }
}

/// Weighted adjacency lists, built once per mesh and shared by the searches.
pub struct MeshGraph {
    pub adj: Vec<Vec<(VertexId, EdgeId, f64)>>,
}

impl MeshGraph {
    pub fn new(mesh: &SurfaceMesh) -> Self {
        let mut adj = vec![Vec::new(); mesh.vertex_count()];
        for (ei, e) in mesh.edges.iter().enumerate() {
            adj[e.u as usize].push((e.v, ei as EdgeId, e.length));
            adj[e.v as usize].push((e.u, ei as EdgeId, e.length));
        }
        Self { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    vertex: VertexId,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap by (dist, vertex id)
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source distances from `sources` (multi-source when several).
/// Optionally records predecessors `(vertex, edge)` for path extraction.
fn dijkstra(
    graph: &MeshGraph,
    sources: &[VertexId],
    mut preds: Option<&mut Vec<Option<(VertexId, EdgeId)>>>,
) -> Vec<f64> {
    let n = graph.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s as usize] = 0.0;
        heap.push(HeapItem { dist: 0.0, vertex: s });
    }
    while let Some(HeapItem { dist: d, vertex: v }) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for &(w, e, len) in &graph.adj[v as usize] {
            let nd = d + len;
            let cur = dist[w as usize];
            if nd < cur {
                dist[w as usize] = nd;
                if let Some(p) = preds.as_deref_mut() {
                    p[w as usize] = Some((v, e));
                }
                heap.push(HeapItem { dist: nd, vertex: w });
            } else if nd == cur {
                // deterministic tie-break: prefer the smaller predecessor id
                if let Some(p) = preds.as_deref_mut() {
                    if let Some((pv, _)) = p[w as usize] {
                        if v < pv {
                            p[w as usize] = Some((v, e));
                        }
                    }
                }
            }
        }
    }
    dist
}

/// Minimal edge-length path between two vertices.
///
/// Ties between equal-length paths are broken deterministically by
/// preferring smaller predecessor vertex ids.
pub fn shortest_path(
    mesh: &SurfaceMesh,
    u: VertexId,
    v: VertexId,
) -> Result<(Vec<EdgeId>, f64)> {
    if u as usize >= mesh.vertex_count() || v as usize >= mesh.vertex_count() {
        return Err(Error::Domain("vertex id out of range".into()));
    }
    if u == v {
        return Ok((Vec::new(), 0.0));
    }
    let graph = MeshGraph::new(mesh);
    let mut preds = vec![None; mesh.vertex_count()];
    let dist = dijkstra(&graph, &[u], Some(&mut preds));
    if !dist[v as usize].is_finite() {
        return Err(Error::Disconnected);
    }
    let mut path = Vec::new();
    let mut cur = v;
    while cur != u {
        let (p, e) = preds[cur as usize].expect("reachable vertex has predecessor");
        path.push(e);
        cur = p;
    }
    path.reverse();
    Ok((path, dist[v as usize]))
}

/// Distances from one source.
pub fn distances_from(mesh: &SurfaceMesh, source: VertexId) -> Vec<f64> {
    let graph = MeshGraph::new(mesh);
    dijkstra(&graph, &[source], None)
}

/// Exact graph diameter by an all-sources search, parallel over sources.
/// The merged result is independent of the parallel schedule.
pub fn diameter(mesh: &SurfaceMesh) -> Result<MetricSummary> {
    let n = mesh.vertex_count();
    if n == 0 {
        return Err(Error::Domain("empty mesh".into()));
    }
    if n > EXACT_DIAMETER_CAP {
        return Err(Error::Domain(format!(
            "{n} vertices exceeds the exact diameter cap {EXACT_DIAMETER_CAP}; \
             use diameter_estimate"
        )));
    }
    let graph = MeshGraph::new(mesh);
    let per_source: Vec<(f64, VertexId)> = (0..n as VertexId)
        .into_par_iter()
        .map(|s| {
            let dist = dijkstra(&graph, &[s], None);
            let mut far = 0 as VertexId;
            let mut best = 0.0f64;
            for (i, &d) in dist.iter().enumerate() {
                if d > best {
                    best = d;
                    far = i as VertexId;
                }
            }
            (best, far)
        })
        .collect();
    if per_source.iter().any(|(d, _)| !d.is_finite()) {
        return Err(Error::Disconnected);
    }
    let mut diameter = 0.0;
    let mut witness = (0, 0);
    for (s, &(ecc, far)) in per_source.iter().enumerate() {
        if ecc > diameter {
            diameter = ecc;
            witness = (s as VertexId, far);
        }
    }
    Ok(MetricSummary {
        diameter,
        witness,
        eccentricities: per_source.iter().map(|&(e, _)| e).collect(),
    })
}

/// Approximate diameter bounds for large meshes: a few farthest-point sweeps
/// give the lower bound, the best landmark eccentricity doubled gives the
/// upper bound. Clearly labeled approximate by construction.
pub fn diameter_estimate(mesh: &SurfaceMesh, sweeps: usize) -> Result<(f64, f64)> {
    let graph = MeshGraph::new(mesh);
    let mut source = 0 as VertexId;
    let mut lower = 0.0f64;
    let mut min_ecc = f64::INFINITY;
    for _ in 0..sweeps.max(1) {
        let dist = dijkstra(&graph, &[source], None);
        let mut far = source;
        let mut ecc = 0.0f64;
        for (i, &d) in dist.iter().enumerate() {
            if !d.is_finite() {
                return Err(Error::Disconnected);
            }
            if d > ecc {
                ecc = d;
                far = i as VertexId;
            }
        }
        lower = lower.max(ecc);
        min_ecc = min_ecc.min(ecc);
        source = far;
    }
    Ok((lower, (2.0 * min_ecc).max(lower)))
}

/// Minimum graph distance between the vertex sets of two tagged tree-edge
/// chains; zero iff the chains share a vertex.
pub fn edge_set_distance(mesh: &SurfaceMesh, tag_a: u32, tag_b: u32) -> Result<f64> {
    let verts = |tag: u32| -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = mesh
            .edges
            .iter()
            .filter(|e| e.tag == crate::mesh::EdgeTag::Tree(tag))
            .flat_map(|e| [e.u, e.v])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let va = verts(tag_a);
    let vb = verts(tag_b);
    if va.is_empty() || vb.is_empty() {
        return Err(Error::Domain(format!(
            "missing tree tag ({tag_a} or {tag_b})"
        )));
    }
    let graph = MeshGraph::new(mesh);
    let dist = dijkstra(&graph, &va, None);
    let mut best = f64::INFINITY;
    for &v in &vb {
        best = best.min(dist[v as usize]);
    }
    if !best.is_finite() {
        return Err(Error::Disconnected);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::pillow;

    #[test]
    fn trivial_paths() {
        let m = pillow();
        let (p, len) = shortest_path(&m, 1, 1).unwrap();
        assert!(p.is_empty());
        assert_eq!(len, 0.0);
        let (_, a) = shortest_path(&m, 0, 2).unwrap();
        let (_, b) = shortest_path(&m, 2, 0).unwrap();
        assert_eq!(a, b, "symmetric");
        assert_eq!(a, 5.0);
    }

    #[test]
    fn pillow_diameter_is_longest_edge() {
        let m = pillow();
        let s = diameter(&m).unwrap();
        assert_eq!(s.diameter, 5.0);
        let (u, v) = s.witness;
        assert!(matches!((u, v), (0, 2) | (2, 0)));
    }

    #[test]
    fn estimate_brackets_exact() {
        let m = crate::testutil::octahedron();
        let exact = diameter(&m).unwrap().diameter;
        let (lo, hi) = diameter_estimate(&m, 4).unwrap();
        assert!(lo <= exact + 1e-12);
        assert!(hi >= exact - 1e-12);
    }

    #[test]
    fn flat_torus_axis_distance_is_exact() {
        let r = 8u32;
        let m = crate::builder::build_flat_torus(r).unwrap();
        // vertex ids are i*r + j; axis-aligned pairs take the straight row
        let dist = distances_from(&m, 0);
        for a in 1..r {
            let expect = a.min(r - a) as f64 / r as f64;
            let got = dist[(a * r) as usize];
            assert!(
                (got - expect).abs() < 1e-12,
                "axis pair (0,0)-({a},0): {got} vs {expect}"
            );
            let got = dist[a as usize];
            assert!((got - expect).abs() < 1e-12, "axis pair (0,0)-(0,{a})");
        }
    }

    #[test]
    fn triangle_inequality_sampled() {
        let m = crate::builder::build_glued_sphere(
            &crate::builder::BuildConfig::hyperbolic(1, 4),
        )
        .unwrap();
        let n = m.vertex_count();
        // deterministic pseudo-random triples
        let mut x = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x % n as u64) as u32
        };
        let mut tables = std::collections::HashMap::new();
        let mut dist = |s: u32, tables: &mut std::collections::HashMap<u32, Vec<f64>>| {
            tables
                .entry(s)
                .or_insert_with(|| distances_from(&m, s))
                .clone()
        };
        for _ in 0..1000 {
            let (a, b, c) = (next(), next(), next());
            let dab = dist(a, &mut tables)[b as usize];
            let dbc = dist(b, &mut tables)[c as usize];
            let dac = dist(a, &mut tables)[c as usize];
            assert!(dac <= dab + dbc + 1e-12);
        }
    }

    #[test]
    fn normalized_mesh_has_unit_diameter() {
        let m = crate::builder::build_glued_sphere(
            &crate::builder::BuildConfig::hyperbolic(1, 4),
        )
        .unwrap();
        let normalized = crate::mesh::normalize_diameter(&m, 1.0).unwrap();
        let d = diameter(&normalized).unwrap().diameter;
        assert!((d - 1.0).abs() < 1e-9, "diameter after normalization {d}");
        // scaling by lambda multiplies total area by lambda^2 exactly
        let lambda = normalized.meta.scale;
        assert!(
            (normalized.total_area() - m.total_area() * lambda * lambda).abs()
                < 1e-12 * m.total_area()
        );
        // normalizing an already-unit mesh is the identity up to rounding
        let again = crate::mesh::normalize_diameter(&normalized, 1.0).unwrap();
        for (e1, e2) in normalized.edges.iter().zip(again.edges.iter()) {
            assert!((e1.length - e2.length).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_set_distances_on_glued_sphere() {
        let m = crate::builder::build_glued_sphere(
            &crate::builder::BuildConfig::hyperbolic(2, 4),
        )
        .unwrap();
        let t = crate::tree::build_tree(2).unwrap();
        let tags = m.tree_tags();
        let mut nonadjacent_min = f64::INFINITY;
        for (i, &a) in tags.iter().enumerate() {
            for &b in &tags[i + 1..] {
                let d = edge_set_distance(&m, a, b).unwrap();
                if t.edges_adjacent(a as usize, b as usize) {
                    assert_eq!(d, 0.0, "adjacent chains {a},{b} share a vertex");
                } else {
                    assert!(d > 0.0);
                    nonadjacent_min = nonadjacent_min.min(d);
                }
            }
        }
        // the guaranteed separation, minus mesh slack
        assert!(
            nonadjacent_min >= 0.75 - 0.1,
            "non-adjacent chain separation {nonadjacent_min}"
        );
    }

    #[test]
    fn missing_tag_is_an_error() {
        let m = crate::testutil::octahedron();
        assert!(edge_set_distance(&m, 0, 1).is_err());
    }
}
