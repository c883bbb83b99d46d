//! Balanced separating cycles and their certificates.
//!
//! A cut is a partition of the faces into two connected sides; its boundary
//! is the set of edges with one face on each side, organized into closed
//! cycles. [`exact_balanced_cut`] enumerates all small instances;
//! [`find_balanced_cut`] runs a seeded multi-restart local search that must
//! agree with the exact search on every mesh small enough for both.

mod certificate;
mod exact;
mod filling;
mod sampling;
mod search;

pub use certificate::{
    area_gap_bound, cut_length_bound, decompose_cycle, decomposition_length_bound,
    predict_long_arc_area, Arc, ArcClass, ArcDecomposition, LongArcPrediction,
    LowerBoundConstants, SidePrediction,
};
pub use exact::{exact_balanced_cut, exact_balanced_cut_with_cap, EXACT_FACE_CAP};
pub use filling::filling_area;
pub use sampling::{arc_min_side_area, sample_interior_cycles, sample_short_arcs};
pub use search::{find_balanced_cut, find_balanced_cut_with, SearchOptions};

use crate::error::{Error, Result};
use crate::mesh::{EdgeId, FaceId, SurfaceMesh, VertexId};
use serde::{Deserialize, Serialize};

/// A closed walk along mesh edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclePath {
    pub edges: Vec<EdgeId>,
    pub length: f64,
}

impl CyclePath {
    /// Validates that consecutive edges share a vertex, the walk closes up,
    /// and no edge appears more than twice.
    pub fn from_edges(mesh: &SurfaceMesh, edges: Vec<EdgeId>) -> Result<Self> {
        if edges.is_empty() {
            return Ok(Self { edges, length: 0.0 });
        }
        let mut counts = std::collections::HashMap::new();
        for &e in &edges {
            let c = counts.entry(e).or_insert(0usize);
            *c += 1;
            if *c > 2 {
                return Err(Error::Domain(format!("edge {e} repeated more than twice")));
            }
        }
        if edges.len() == 1 {
            return Err(Error::Domain("single edge cannot close".into()));
        }
        // Walk the sequence, threading a consistent vertex through shared
        // endpoints.
        let first = &mesh.edges[edges[0] as usize];
        for start in [first.u, first.v] {
            if let Some(len) = Self::walk(mesh, &edges, start) {
                return Ok(Self { edges, length: len });
            }
        }
        Err(Error::Domain("edge sequence is not a closed walk".into()))
    }

    fn walk(mesh: &SurfaceMesh, edges: &[EdgeId], start: VertexId) -> Option<f64> {
        let mut at = start;
        let mut len = 0.0;
        for &e in edges {
            let edge = &mesh.edges[e as usize];
            if !edge.touches(at) {
                return None;
            }
            at = edge.other(at);
            len += edge.length;
        }
        (at == start).then_some(len)
    }

    /// The threaded vertex sequence `v_0, ..., v_{n-1}` with `edges[i]`
    /// joining `v_i` to `v_{i+1 mod n}`.
    pub fn vertex_sequence(&self, mesh: &SurfaceMesh) -> Vec<VertexId> {
        if self.edges.is_empty() {
            return Vec::new();
        }
        let first = &mesh.edges[self.edges[0] as usize];
        for start in [first.u, first.v] {
            if Self::walk(mesh, &self.edges, start).is_some() {
                let mut seq = Vec::with_capacity(self.edges.len());
                let mut at = start;
                for &e in &self.edges {
                    seq.push(at);
                    at = mesh.edges[e as usize].other(at);
                }
                return seq;
            }
        }
        unreachable!("CyclePath invariant: edges form a closed walk")
    }

    /// Edges appearing an odd number of times: the Z2 support.
    pub fn z2_support(&self) -> Vec<EdgeId> {
        let mut counts = std::collections::HashMap::new();
        for &e in &self.edges {
            *counts.entry(e).or_insert(0usize) += 1;
        }
        let mut out: Vec<EdgeId> = counts
            .into_iter()
            .filter(|&(_, c)| c % 2 == 1)
            .map(|(e, _)| e)
            .collect();
        out.sort_unstable();
        out
    }
}

/// A face bipartition with its boundary cycles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutResult {
    /// Sorted face ids of side A.
    pub faces_a: Vec<FaceId>,
    pub faces_b: Vec<FaceId>,
    pub cycles: Vec<CyclePath>,
    /// Total boundary length.
    pub length: f64,
    pub area_a: f64,
    pub area_b: f64,
    pub balance_dev: f64,
}

impl CutResult {
    /// Assemble a result from a side-A membership mask; boundary cycles are
    /// recomputed from the partition.
    pub fn from_partition(mesh: &SurfaceMesh, in_a: &[bool]) -> Result<Self> {
        let mut faces_a = Vec::new();
        let mut faces_b = Vec::new();
        let mut area_a = 0.0;
        let mut area_b = 0.0;
        for (f, &a) in in_a.iter().enumerate() {
            if a {
                faces_a.push(f as FaceId);
                area_a += mesh.faces[f].area;
            } else {
                faces_b.push(f as FaceId);
                area_b += mesh.faces[f].area;
            }
        }
        let boundary = boundary_edges(mesh, in_a)?;
        let cycles = edges_to_cycles(mesh, &boundary)?;
        let length = boundary
            .iter()
            .map(|&e| mesh.edges[e as usize].length)
            .sum();
        let half = mesh.total_area() / 2.0;
        Ok(CutResult {
            faces_a,
            faces_b,
            cycles,
            length,
            area_a,
            area_b,
            balance_dev: (area_a - half).abs(),
        })
    }

    pub fn components(&self) -> usize {
        self.cycles.len()
    }

    /// JSON record for reports; `m_l`, `m_s`, `l_s` come from a decomposition
    /// when the mesh carries tree tags.
    pub fn to_json(
        &self,
        mesh: &SurfaceMesh,
        seed: u64,
        decomposition: Option<&ArcDecomposition>,
    ) -> serde_json::Value {
        let meta = &mesh.meta;
        let k_or_side = meta.k.or(meta.side);
        serde_json::json!({
            "variant": meta.variant.as_str(),
            "h": meta.h,
            "K_or_side": k_or_side,
            "R": meta.resolution,
            "seed": seed,
            "length": self.length,
            "areaA": self.area_a,
            "areaB": self.area_b,
            "balance_dev": self.balance_dev,
            "m_l": decomposition.map(|d| d.long_count).unwrap_or(0),
            "m_s": decomposition.map(|d| d.whole_tree_edges).unwrap_or(0),
            "L_s": decomposition.map(|d| d.short_length).unwrap_or(0.0),
            "components": self.components(),
            "faces_A": self.faces_a,
        })
    }
}

/// Edges with exactly one face on side A. Errors if any edge does not have
/// exactly two incident faces.
pub fn boundary_edges(mesh: &SurfaceMesh, in_a: &[bool]) -> Result<Vec<EdgeId>> {
    let inc = mesh.edge_face_incidence();
    let mut out = Vec::new();
    for (e, fs) in inc.iter().enumerate() {
        if fs.len() != 2 {
            return Err(Error::Validation(format!(
                "edge {e} has {} faces; boundary extraction needs a closed mesh",
                fs.len()
            )));
        }
        if in_a[fs[0] as usize] != in_a[fs[1] as usize] {
            out.push(e as EdgeId);
        }
    }
    Ok(out)
}

/// Organize a set of edges (each vertex of even degree) into simple closed
/// cycles. Walks continue along the smallest unused edge id; when a walk
/// revisits a vertex, the enclosed subwalk is emitted as its own cycle, so
/// figure-eight boundaries split at their pinch vertices.
pub fn edges_to_cycles(mesh: &SurfaceMesh, edges: &[EdgeId]) -> Result<Vec<CyclePath>> {
    use std::collections::HashMap;
    let mut incident: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    for &e in edges {
        let edge = &mesh.edges[e as usize];
        incident.entry(edge.u).or_default().push(e);
        incident.entry(edge.v).or_default().push(e);
    }
    for (v, es) in &incident {
        if es.len() % 2 != 0 {
            return Err(Error::Domain(format!(
                "vertex {v} has odd boundary degree; not a Z2 cycle"
            )));
        }
    }
    for es in incident.values_mut() {
        es.sort_unstable();
    }
    let mut used: std::collections::HashSet<EdgeId> = Default::default();
    let mut cycles = Vec::new();
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    for &start_edge in &sorted {
        if used.contains(&start_edge) {
            continue;
        }
        let start_v = mesh.edges[start_edge as usize].u;
        // walk as (vertex, edge-to-next) with a position index per vertex
        let mut walk: Vec<(VertexId, EdgeId)> = vec![(start_v, start_edge)];
        let mut pos: HashMap<VertexId, usize> = HashMap::from([(start_v, 0)]);
        used.insert(start_edge);
        let mut at = mesh.edges[start_edge as usize].other(start_v);
        loop {
            if let Some(&p) = pos.get(&at) {
                // closed a (sub)cycle from position p to the end
                let removed: Vec<(VertexId, EdgeId)> = walk.drain(p..).collect();
                for (v, _) in &removed {
                    pos.remove(v);
                }
                let sub: Vec<EdgeId> = removed.into_iter().map(|(_, e)| e).collect();
                cycles.push(CyclePath::from_edges(mesh, sub)?);
                if walk.is_empty() {
                    break;
                }
                // continue the outer walk from `at`
            }
            let next = match incident[&at].iter().copied().find(|e| !used.contains(e)) {
                Some(e) => e,
                None => {
                    if walk.is_empty() {
                        break;
                    }
                    return Err(Error::Domain("open walk in cycle extraction".into()));
                }
            };
            used.insert(next);
            pos.insert(at, walk.len());
            walk.push((at, next));
            at = mesh.edges[next as usize].other(at);
        }
    }
    Ok(cycles)
}

/// Dual-graph adjacency over faces: `adj[f] = [(g, edge, length)]`.
pub fn dual_adjacency(mesh: &SurfaceMesh) -> Vec<Vec<(FaceId, EdgeId, f64)>> {
    let mut adj = vec![Vec::new(); mesh.face_count()];
    for (a, b, e) in mesh.dual_edges() {
        let len = mesh.edges[e as usize].length;
        adj[a as usize].push((b, e, len));
        adj[b as usize].push((a, e, len));
    }
    adj
}

/// Is the face subset (given by mask) connected in the dual graph?
pub fn side_connected(adj: &[Vec<(FaceId, EdgeId, f64)>], in_side: &[bool]) -> bool {
    let n = in_side.len();
    let start = match (0..n).find(|&f| in_side[f]) {
        Some(f) => f,
        None => return false,
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1usize;
    while let Some(f) = stack.pop() {
        for &(g, _, _) in &adj[f] {
            let g = g as usize;
            if in_side[g] && !seen[g] {
                seen[g] = true;
                count += 1;
                stack.push(g);
            }
        }
    }
    count == in_side.iter().filter(|&&b| b).count()
}
