//! Deterministic samplers for the certificate spot checks on glued meshes:
//! short off-tree arcs hugging the boundary chains, and contractible cycles
//! in the metrically faithful inner region of the hyperbolic disc.

use super::certificate::{classification_threshold, Arc, ArcClass};
use super::{edges_to_cycles, CyclePath};
use crate::error::{Error, Result};
use crate::mesh::{EdgeId, EdgeTag, SurfaceMesh, VertexId};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Off-tree arcs between same-chain vertices a few segments apart, found by
/// shortest paths that avoid the chains. Enumeration order is fixed, so the
/// sample is reproducible. Only arcs shorter than the classification
/// threshold are returned.
pub fn sample_short_arcs(mesh: &SurfaceMesh, count: usize) -> Result<Vec<Arc>> {
    let threshold = classification_threshold(mesh)?;
    let on_chain: Vec<bool> = mesh
        .edges
        .iter()
        .map(|e| matches!(e.tag, EdgeTag::Tree(_)))
        .collect();
    let mut chain_vertex = vec![false; mesh.vertex_count()];
    for (e, &on) in on_chain.iter().enumerate() {
        if on {
            let edge = &mesh.edges[e];
            chain_vertex[edge.u as usize] = true;
            chain_vertex[edge.v as usize] = true;
        }
    }
    let mut arcs = Vec::new();
    for tag in mesh.tree_tags() {
        let chain = super::certificate::order_chain(mesh, tag)?;
        // walk the chain's vertex sequence
        let mut vs = Vec::with_capacity(chain.len() + 1);
        let e0 = &mesh.edges[chain[0] as usize];
        let mut at = if chain.len() == 1 {
            e0.u
        } else {
            let e1 = &mesh.edges[chain[1] as usize];
            if e1.touches(e0.u) {
                e0.v
            } else {
                e0.u
            }
        };
        vs.push(at);
        for &e in &chain {
            at = mesh.edges[e as usize].other(at);
            vs.push(at);
        }
        // chain-vertex pairs one or two segments apart
        for span in [1usize, 2] {
            for w in 0..vs.len().saturating_sub(span) {
                if arcs.len() >= count {
                    return Ok(arcs);
                }
                let (a, b) = (vs[w], vs[w + span]);
                if let Some((edges, length)) = off_tree_path(mesh, &on_chain, &chain_vertex, a, b)
                {
                    if length < threshold {
                        arcs.push(Arc {
                            edges,
                            class: ArcClass::Short,
                            length,
                        });
                    }
                }
            }
        }
    }
    Ok(arcs)
}

#[derive(PartialEq)]
struct Item(f64, VertexId);
impl Eq for Item {}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Shortest path from `a` to `b` avoiding chain edges, with interior
/// vertices off the chains.
pub(crate) fn off_tree_path(
    mesh: &SurfaceMesh,
    on_chain: &[bool],
    chain_vertex: &[bool],
    a: VertexId,
    b: VertexId,
) -> Option<(Vec<EdgeId>, f64)> {
    let n = mesh.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (ei, e) in mesh.edges.iter().enumerate() {
        if on_chain[ei] {
            continue;
        }
        adj[e.u as usize].push((e.v, ei as EdgeId, e.length));
        adj[e.v as usize].push((e.u, ei as EdgeId, e.length));
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[a as usize] = 0.0;
    heap.push(Item(0.0, a));
    while let Some(Item(d, v)) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        if v != a && chain_vertex[v as usize] {
            continue; // may terminate on the tree but not pass through it
        }
        for &(w, e, len) in &adj[v as usize] {
            if d + len < dist[w as usize] {
                dist[w as usize] = d + len;
                pred[w as usize] = Some((v, e));
                heap.push(Item(d + len, w));
            }
        }
    }
    if !dist[b as usize].is_finite() {
        return None;
    }
    let mut edges = Vec::new();
    let mut at = b;
    while at != a {
        let (p, e) = pred[at as usize]?;
        edges.push(e);
        at = p;
    }
    edges.reverse();
    Some((edges, dist[b as usize]))
}

/// Faces whose vertices all lie deeper than `min_depth` from the chains
/// (graph distance to the nearest chain vertex).
fn inner_faces(mesh: &SurfaceMesh, min_depth: f64) -> Vec<bool> {
    let sources: Vec<VertexId> = {
        let mut vs: Vec<VertexId> = mesh
            .edges
            .iter()
            .filter(|e| matches!(e.tag, EdgeTag::Tree(_)))
            .flat_map(|e| [e.u, e.v])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let n = mesh.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in &mesh.edges {
        adj[e.u as usize].push((e.v, e.length));
        adj[e.v as usize].push((e.u, e.length));
    }
    let mut depth = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    for &s in &sources {
        depth[s as usize] = 0.0;
        heap.push(Item(0.0, s));
    }
    while let Some(Item(d, v)) = heap.pop() {
        if d > depth[v as usize] {
            continue;
        }
        for &(w, len) in &adj[v as usize] {
            if d + len < depth[w as usize] {
                depth[w as usize] = d + len;
                heap.push(Item(d + len, w));
            }
        }
    }
    (0..mesh.face_count())
        .map(|f| {
            mesh.face_vertices(f as u32)
                .iter()
                .all(|&v| depth[v as usize] >= min_depth)
        })
        .collect()
}

/// Seeded sample of contractible cycles strictly inside the hyperbolic
/// region: boundaries of small dual-BFS face balls, restricted to the
/// sub-disc where chordal edge lengths track the underlying arcs (segment
/// turning angle bounded), so lengths are metrically faithful.
pub fn sample_interior_cycles(
    mesh: &SurfaceMesh,
    count: usize,
    seed: u64,
) -> Result<Vec<CyclePath>> {
    let k = mesh
        .meta
        .k
        .ok_or_else(|| Error::Domain("interior sampling needs the hyperbolic variant".into()))?;
    let radius = crate::hyperbolic::DiscSpec::DEFAULT_RADIUS;
    let cols = mesh
        .tree_tags()
        .len()
        .max(1) as f64
        * 2.0
        * mesh.meta.resolution as f64;
    // faithful while sinh(K rho) * sin(pi/cols) <= 1/2
    let rho_star = ((0.5 / (std::f64::consts::PI / cols).sin()).asinh() / k).min(radius);
    let min_depth = radius - rho_star;
    let inner = inner_faces(mesh, min_depth);
    let inner_ids: Vec<usize> = (0..mesh.face_count()).filter(|&f| inner[f]).collect();
    if inner_ids.is_empty() {
        return Err(Error::Infeasible(
            "no faces deep enough inside the disc at this resolution".into(),
        ));
    }
    let adj = super::dual_adjacency(mesh);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cycles = Vec::new();
    let mut attempts = 0;
    while cycles.len() < count && attempts < count * 20 {
        attempts += 1;
        let seed_face = inner_ids[rng.gen_range(0..inner_ids.len())];
        let hops = rng.gen_range(1..=3usize);
        // dual BFS ball within the inner region
        let mut ball = vec![false; mesh.face_count()];
        ball[seed_face] = true;
        let mut frontier = vec![seed_face];
        for _ in 0..hops {
            let mut next = Vec::new();
            for &f in &frontier {
                for &(g, _, _) in &adj[f] {
                    let g = g as usize;
                    if inner[g] && !ball[g] {
                        ball[g] = true;
                        next.push(g);
                    }
                }
            }
            frontier = next;
        }
        let boundary = super::boundary_edges(mesh, &ball)?;
        if boundary.is_empty() {
            continue;
        }
        match edges_to_cycles(mesh, &boundary) {
            Ok(cs) if cs.len() == 1 => cycles.push(cs.into_iter().next().unwrap()),
            _ => continue,
        }
    }
    if cycles.len() < count {
        return Err(Error::Infeasible(format!(
            "only {} of {count} interior cycles sampled",
            cycles.len()
        )));
    }
    Ok(cycles)
}

/// Total face area of the smaller region cut off by an off-tree arc
/// (the regions of the off-tree disc separated by the arc).
pub fn arc_min_side_area(mesh: &SurfaceMesh, arc: &Arc) -> Result<f64> {
    let pred = super::certificate::predict_long_arc_area(
        mesh,
        arc,
        &super::certificate::LowerBoundConstants::default(),
    )?;
    Ok(pred.sides[0].area.min(pred.sides[1].area))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{self, BuildConfig};
    use crate::cuts::filling_area;

    #[test]
    fn short_arcs_exist_and_are_short() {
        let m = builder::build_glued_sphere(&BuildConfig::hyperbolic(2, 4)).unwrap();
        let arcs = sample_short_arcs(&m, 30).unwrap();
        assert!(arcs.len() >= 30, "got {}", arcs.len());
        for a in &arcs {
            assert!(a.length < 0.75);
            assert!(!a.edges.is_empty());
        }
    }

    #[test]
    fn short_arc_side_area_bounded() {
        let m = builder::build_glued_sphere(&BuildConfig::hyperbolic(2, 4)).unwrap();
        let n = crate::tree::edge_count(2) as f64;
        let total = m.total_area();
        for arc in sample_short_arcs(&m, 20).unwrap() {
            let min_side = arc_min_side_area(&m, &arc).unwrap();
            let bound = total / n * arc.length * 1.25;
            assert!(
                min_side <= bound,
                "side {min_side} vs bound {bound} (len {})",
                arc.length
            );
        }
    }

    #[test]
    fn interior_cycles_satisfy_isoperimetric_bound() {
        let m = builder::build_glued_sphere(&BuildConfig::hyperbolic(1, 8)).unwrap();
        let k = m.meta.k.unwrap();
        let cycles = sample_interior_cycles(&m, 20, 99).unwrap();
        for c in &cycles {
            let fill = filling_area(&m, c).unwrap();
            assert!(
                c.length >= 0.95 * k * fill,
                "length {} vs K*fill {}",
                c.length,
                k * fill
            );
        }
    }
}
