//! Cutting a closed surface along an edge subgraph.
//!
//! The cut complex keeps every face; edges along the cut split into two
//! boundary copies and vertices split into their corner orbits. Cutting
//! along an independent homology basis through one point leaves a connected
//! complex with the Euler characteristic of a disc.

use super::HomologyBasis;
use crate::error::{Error, Result};
use crate::mesh::{EdgeId, FaceId, SurfaceMesh};

#[derive(Debug, Clone)]
pub struct CEdge {
    /// Complex endpoints (corner-orbit ids).
    pub endpoints: (u32, u32),
    pub length: f64,
    /// The mesh edge this copy came from.
    pub orig: EdgeId,
    /// Faces of the complex using this edge copy (1 = boundary, 2 = interior).
    pub faces: Vec<FaceId>,
}

/// A surface-with-boundary obtained by cutting a mesh along edges. Faces are
/// indexed exactly as in the source mesh.
#[derive(Debug, Clone)]
pub struct CutComplex {
    pub vertex_count: usize,
    pub edges: Vec<CEdge>,
    /// Per face: its three edge copies.
    pub face_edges: Vec<[u32; 3]>,
    pub face_areas: Vec<f64>,
    pub boundary_length: f64,
    pub boundary_components: usize,
}

impl CutComplex {
    pub fn face_count(&self) -> usize {
        self.face_edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.face_count() as i64
    }

    pub fn total_area(&self) -> f64 {
        self.face_areas.iter().sum()
    }

    /// Dual adjacency across interior edge copies.
    pub fn dual_adjacency(&self) -> Vec<Vec<(FaceId, u32)>> {
        let mut adj = vec![Vec::new(); self.face_count()];
        for (ei, e) in self.edges.iter().enumerate() {
            if e.faces.len() == 2 {
                adj[e.faces[0] as usize].push((e.faces[1], ei as u32));
                adj[e.faces[1] as usize].push((e.faces[0], ei as u32));
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.face_count();
        if n == 0 {
            return false;
        }
        let adj = self.dual_adjacency();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(f) = stack.pop() {
            for &(g, _) in &adj[f] {
                if !seen[g as usize] {
                    seen[g as usize] = true;
                    count += 1;
                    stack.push(g as usize);
                }
            }
        }
        count == n
    }
}

struct SlotUf(Vec<u32>);

impl SlotUf {
    fn new(n: usize) -> Self {
        Self((0..n as u32).collect())
    }
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut c = x;
        while self.0[c as usize] != r {
            let n = self.0[c as usize];
            self.0[c as usize] = r;
            c = n;
        }
        r
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

/// Cut the mesh along the given edge set.
pub fn cut_along(mesh: &SurfaceMesh, cut_edges: &[EdgeId]) -> Result<CutComplex> {
    let ne = mesh.edge_count();
    let nf = mesh.face_count();
    let mut in_cut = vec![false; ne];
    for &e in cut_edges {
        in_cut[e as usize] = true;
    }
    let inc = mesh.edge_face_incidence();
    for (e, fs) in inc.iter().enumerate() {
        if fs.len() != 2 {
            return Err(Error::Validation(format!(
                "edge {e} has {} faces; cutting needs a closed mesh",
                fs.len()
            )));
        }
    }

    // Edge slots: (face, position 0..3). Glue across non-cut edges.
    let slot = |f: usize, i: usize| (3 * f + i) as u32;
    let mut eslots = SlotUf::new(3 * nf);
    // corner slots: (face, corner 0..3), corners aligned with face_vertices
    let mut cslots = SlotUf::new(3 * nf);
    let face_verts: Vec<[u32; 3]> = (0..nf).map(|f| mesh.face_vertices(f as FaceId)).collect();
    let corner_of = |f: usize, v: u32| -> Option<usize> {
        face_verts[f].iter().position(|&x| x == v)
    };

    for (e, fs) in inc.iter().enumerate() {
        if in_cut[e] {
            continue;
        }
        let (f1, f2) = (fs[0] as usize, fs[1] as usize);
        let i1 = mesh.faces[f1].edges.iter().position(|&x| x as usize == e).unwrap();
        let i2 = mesh.faces[f2].edges.iter().position(|&x| x as usize == e).unwrap();
        eslots.union(slot(f1, i1), slot(f2, i2));
        let edge = &mesh.edges[e];
        for v in [edge.u, edge.v] {
            let c1 = corner_of(f1, v).ok_or_else(|| {
                Error::Validation(format!("vertex {v} not a corner of face {f1}"))
            })?;
            let c2 = corner_of(f2, v).ok_or_else(|| {
                Error::Validation(format!("vertex {v} not a corner of face {f2}"))
            })?;
            cslots.union(slot(f1, c1), slot(f2, c2));
        }
    }

    // compact corner orbits
    let mut corner_id = vec![u32::MAX; 3 * nf];
    let mut n_vertices = 0u32;
    for s in 0..3 * nf as u32 {
        let r = cslots.find(s);
        if corner_id[r as usize] == u32::MAX {
            corner_id[r as usize] = n_vertices;
            n_vertices += 1;
        }
        corner_id[s as usize] = corner_id[r as usize];
    }

    // compact edge copies
    let mut edge_id = vec![u32::MAX; 3 * nf];
    let mut edges: Vec<CEdge> = Vec::new();
    let mut face_edges = vec![[u32::MAX; 3]; nf];
    for f in 0..nf {
        for i in 0..3 {
            let s = slot(f, i);
            let r = eslots.find(s);
            if edge_id[r as usize] == u32::MAX {
                let orig = mesh.faces[f].edges[i];
                let oedge = &mesh.edges[orig as usize];
                let cu = corner_of(f, oedge.u).unwrap();
                let cv = corner_of(f, oedge.v).unwrap();
                edge_id[r as usize] = edges.len() as u32;
                edges.push(CEdge {
                    endpoints: (corner_id[slot(f, cu) as usize], corner_id[slot(f, cv) as usize]),
                    length: oedge.length,
                    orig,
                    faces: Vec::with_capacity(2),
                });
            }
            let id = edge_id[r as usize];
            edge_id[s as usize] = id;
            face_edges[f][i] = id;
            edges[id as usize].faces.push(f as FaceId);
        }
    }
    for e in &mut edges {
        e.faces.sort_unstable();
        e.faces.dedup();
    }

    let boundary: Vec<u32> = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.faces.len() == 1)
        .map(|(i, _)| i as u32)
        .collect();
    let boundary_length: f64 = boundary.iter().map(|&e| edges[e as usize].length).sum();
    let boundary_components = count_boundary_components(&edges, &boundary);

    Ok(CutComplex {
        vertex_count: n_vertices as usize,
        edges,
        face_edges,
        face_areas: mesh.faces.iter().map(|f| f.area).collect(),
        boundary_length,
        boundary_components,
    })
}

fn count_boundary_components(edges: &[CEdge], boundary: &[u32]) -> usize {
    use std::collections::HashMap;
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for &e in boundary {
        let (u, v) = edges[e as usize].endpoints;
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut seen: std::collections::HashSet<u32> = Default::default();
    let mut comps = 0;
    let mut keys: Vec<u32> = adj.keys().copied().collect();
    keys.sort_unstable();
    for k in keys {
        if seen.contains(&k) {
            continue;
        }
        comps += 1;
        let mut stack = vec![k];
        seen.insert(k);
        while let Some(x) = stack.pop() {
            for &y in &adj[&x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    comps
}

/// Cut the surface along a homology basis and verify the result is a disc:
/// connected, Euler characteristic 1, one boundary component. Area is
/// preserved exactly (faces are copied).
pub fn cut_to_disc(mesh: &SurfaceMesh, basis: &HomologyBasis) -> Result<CutComplex> {
    if basis.rank == 0 {
        return Err(Error::Domain(
            "nothing to cut: the surface is already simply connected".into(),
        ));
    }
    let cut = basis.cut_edge_set();
    let complex = cut_along(mesh, &cut)?;
    if !complex.is_connected() {
        return Err(Error::Validation(
            "cutting along the basis disconnected the surface; loops not independent".into(),
        ));
    }
    let chi = complex.euler_characteristic();
    if chi != 1 || complex.boundary_components != 1 {
        return Err(Error::Validation(format!(
            "cut complex is not a disc: chi={chi}, boundary components={}",
            complex.boundary_components
        )));
    }
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::subdivide::homology_basis;

    #[test]
    fn torus_cuts_to_disc() {
        let m = builder::build_flat_torus(6).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        let c = cut_to_disc(&m, &b).unwrap();
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.boundary_components, 1);
        assert!((c.total_area() - m.total_area()).abs() < 1e-12);
    }

    #[test]
    fn genus_two_cuts_to_disc() {
        let m = builder::build_genus_g(2, 3).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        let c = cut_to_disc(&m, &b).unwrap();
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.boundary_components, 1);
    }

    #[test]
    fn boundary_length_bounded() {
        // |boundary| <= 4 n d + slack (cut edges are doubled)
        let m = builder::build_flat_torus(6).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        let d = crate::metric::diameter(&m).unwrap().diameter;
        let c = cut_to_disc(&m, &b).unwrap();
        let bound = 4.0 * b.rank as f64 * d;
        assert!(
            c.boundary_length <= bound + 1e-9,
            "boundary {} vs 4nd {bound}",
            c.boundary_length
        );
    }

    #[test]
    fn cutting_contractible_cycle_disconnects() {
        // cutting along a face boundary yields chi=2 pieces, not a disc
        let m = builder::build_round_sphere(4).unwrap();
        let edges = m.faces[0].edges.to_vec();
        let c = cut_along(&m, &edges).unwrap();
        assert!(!c.is_connected());
    }
}
