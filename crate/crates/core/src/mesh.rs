//! Triangulated closed surfaces carried by edge lengths and face areas.
//!
//! Embedding coordinates, when present, are advisory (visualization only);
//! every computation in this crate works from the combinatorics plus the
//! per-edge lengths and per-face areas. The `SMESH` text format serializes
//! meshes with 17 significant digits so files round-trip bit-exactly.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub type VertexId = u32;
pub type EdgeId = u32;
pub type FaceId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeTag {
    /// Ordinary edge of the triangulation.
    Interior,
    /// Part of the identified chain carrying the given tree edge.
    Tree(u32),
    /// Identified edge that is not part of a tree chain (polygon gluings,
    /// sector borders of the flat cone).
    Seam,
    /// Incident to the cone apex of the flat-cone variant.
    Apex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub coords: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
    pub tag: EdgeTag,
}

impl Edge {
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub edges: [EdgeId; 3],
    pub area: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Hyperbolic,
    FlatCone,
    RoundSphere,
    FlatTorus,
    GenusG,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Hyperbolic => "hyperbolic",
            Variant::FlatCone => "flat_cone",
            Variant::RoundSphere => "round_sphere",
            Variant::FlatTorus => "flat_torus",
            Variant::GenusG => "genus_g",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "hyperbolic" => Variant::Hyperbolic,
            "flat_cone" => Variant::FlatCone,
            "round_sphere" => Variant::RoundSphere,
            "flat_torus" => Variant::FlatTorus,
            "genus_g" => Variant::GenusG,
            _ => None?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeshMetadata {
    pub variant: Variant,
    /// Tree height for the glued variants.
    pub h: Option<u32>,
    /// Curvature scale of the hyperbolic variant.
    pub k: Option<f64>,
    /// Triangle side of the flat-cone variant.
    pub side: Option<f64>,
    /// Resolution (segments per boundary interval / grid subdivisions).
    pub resolution: u32,
    pub genus: u32,
    /// Cumulative length scale applied by diameter normalization.
    pub scale: f64,
    /// Construction warnings (not serialized into SMESH).
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl MeshMetadata {
    pub fn new(variant: Variant, resolution: u32, genus: u32) -> Self {
        Self {
            variant,
            h: None,
            k: None,
            side: None,
            resolution,
            genus,
            scale: 1.0,
            warnings: Vec::new(),
        }
    }
}

/// A triangulated closed surface. Invariants (checked by [`validate_mesh`]):
/// every edge borders exactly two faces, the complex is connected, the Euler
/// characteristic matches the declared genus, and every face satisfies the
/// triangle inequality on its edge lengths.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub meta: MeshMetadata,
}

impl SurfaceMesh {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn total_area(&self) -> f64 {
        self.faces.iter().map(|f| f.area).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// The three corner vertices of a face (derived from its edges).
    pub fn face_vertices(&self, f: FaceId) -> [VertexId; 3] {
        let face = &self.faces[f as usize];
        let mut vs = Vec::with_capacity(3);
        for &e in &face.edges {
            let edge = &self.edges[e as usize];
            for w in [edge.u, edge.v] {
                if !vs.contains(&w) {
                    vs.push(w);
                }
            }
        }
        debug_assert_eq!(vs.len(), 3, "face {f} does not have 3 corners");
        [vs[0], vs[1], vs[2]]
    }

    /// faces adjacent to each edge, in face-id order.
    pub fn edge_face_incidence(&self) -> Vec<Vec<FaceId>> {
        let mut inc = vec![Vec::new(); self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for &e in &f.edges {
                inc[e as usize].push(fi as FaceId);
            }
        }
        inc
    }

    /// edges incident to each vertex.
    pub fn vertex_edge_incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (ei, e) in self.edges.iter().enumerate() {
            inc[e.u as usize].push(ei as EdgeId);
            inc[e.v as usize].push(ei as EdgeId);
        }
        inc
    }

    /// Dual adjacency: for every edge with two faces, the face pair.
    pub fn dual_edges(&self) -> Vec<(FaceId, FaceId, EdgeId)> {
        let inc = self.edge_face_incidence();
        inc.iter()
            .enumerate()
            .filter(|(_, fs)| fs.len() == 2)
            .map(|(e, fs)| (fs[0], fs[1], e as EdgeId))
            .collect()
    }

    /// Mesh edges carrying the given tree-edge tag.
    pub fn tree_chain(&self, tree_edge: u32) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.tag == EdgeTag::Tree(tree_edge))
            .map(|(i, _)| i as EdgeId)
            .collect()
    }

    /// All tree-edge ids present in the tags.
    pub fn tree_tags(&self) -> Vec<u32> {
        let mut tags: Vec<u32> = self
            .edges
            .iter()
            .filter_map(|e| match e.tag {
                EdgeTag::Tree(k) => Some(k),
                _ => None,
            })
            .collect();
        tags.sort_unstable();
        tags.dedup();
        tags
    }

    /// Scale every edge length by `lambda` and every face area by
    /// `lambda^2`; records the factor in the metadata.
    pub fn scaled(&self, lambda: f64) -> SurfaceMesh {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.length *= lambda;
        }
        for f in &mut out.faces {
            f.area *= lambda * lambda;
        }
        out.meta.scale *= lambda;
        out
    }
}

/// Validation report; `valid` iff all SurfaceMesh invariants hold.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub expected_euler: i64,
    pub genus_consistent: bool,
    /// Histogram: number of incident faces -> number of edges.
    pub edge_face_histogram: BTreeMap<usize, usize>,
    pub nonmanifold_edges: Vec<EdgeId>,
    pub triangle_violations: Vec<FaceId>,
    pub nonpositive_lengths: Vec<EdgeId>,
    pub nonpositive_areas: Vec<FaceId>,
    pub connected: bool,
    pub vertex_links_ok: bool,
    pub total_area: f64,
    pub valid: bool,
}

pub fn validate_mesh(mesh: &SurfaceMesh) -> ValidationReport {
    let inc = mesh.edge_face_incidence();
    let mut histogram = BTreeMap::new();
    let mut nonmanifold = Vec::new();
    for (e, fs) in inc.iter().enumerate() {
        *histogram.entry(fs.len()).or_insert(0) += 1;
        if fs.len() != 2 {
            nonmanifold.push(e as EdgeId);
        }
    }

    let mut triangle_violations = Vec::new();
    let mut nonpositive_areas = Vec::new();
    for (fi, f) in mesh.faces.iter().enumerate() {
        let l: Vec<f64> = f
            .edges
            .iter()
            .map(|&e| mesh.edges[e as usize].length)
            .collect();
        let eps = 1e-12 * (l[0] + l[1] + l[2]);
        if l[0] > l[1] + l[2] + eps || l[1] > l[0] + l[2] + eps || l[2] > l[0] + l[1] + eps {
            triangle_violations.push(fi as FaceId);
        }
        if !(f.area > 0.0) {
            nonpositive_areas.push(fi as FaceId);
        }
    }
    let nonpositive_lengths: Vec<EdgeId> = mesh
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| !(e.length > 0.0))
        .map(|(i, _)| i as EdgeId)
        .collect();

    // connectivity over the vertex graph
    let connected = {
        let vinc = mesh.vertex_edge_incidence();
        let n = mesh.vertex_count();
        if n == 0 {
            false
        } else {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &e in &vinc[v] {
                    let w = mesh.edges[e as usize].other(v as VertexId) as usize;
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count == n
        }
    };

    let vertex_links_ok = nonmanifold.is_empty() && check_vertex_links(mesh, &inc);

    let chi = mesh.euler_characteristic();
    let expected = 2 - 2 * mesh.meta.genus as i64;
    let genus_consistent = chi == expected;
    let valid = nonmanifold.is_empty()
        && triangle_violations.is_empty()
        && nonpositive_lengths.is_empty()
        && nonpositive_areas.is_empty()
        && connected
        && genus_consistent
        && vertex_links_ok;

    ValidationReport {
        vertices: mesh.vertex_count(),
        edges: mesh.edge_count(),
        faces: mesh.face_count(),
        euler_characteristic: chi,
        expected_euler: expected,
        genus_consistent,
        edge_face_histogram: histogram,
        nonmanifold_edges: nonmanifold,
        triangle_violations,
        nonpositive_lengths,
        nonpositive_areas,
        connected,
        vertex_links_ok,
        total_area: mesh.total_area(),
        valid,
    }
}

/// Every vertex's link must be a single cycle of (edge, face) incidences.
fn check_vertex_links(mesh: &SurfaceMesh, inc: &[Vec<FaceId>]) -> bool {
    // At each vertex: nodes = incident edges; each face through the vertex
    // joins its two edges at that vertex. A manifold vertex has every node of
    // degree 2 and a single connected component.
    let vinc = mesh.vertex_edge_incidence();
    for (v, edges_at_v) in vinc.iter().enumerate() {
        if edges_at_v.is_empty() {
            return false;
        }
        let local: BTreeMap<EdgeId, usize> = edges_at_v
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let mut deg = vec![0usize; edges_at_v.len()];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); edges_at_v.len()];
        let mut faces_at_v: Vec<FaceId> = edges_at_v
            .iter()
            .flat_map(|&e| inc[e as usize].iter().copied())
            .collect();
        faces_at_v.sort_unstable();
        faces_at_v.dedup();
        for &f in &faces_at_v {
            let at_v: Vec<usize> = mesh.faces[f as usize]
                .edges
                .iter()
                .filter(|&&e| mesh.edges[e as usize].touches(v as VertexId))
                .filter_map(|e| local.get(e).copied())
                .collect();
            if at_v.len() != 2 {
                return false;
            }
            deg[at_v[0]] += 1;
            deg[at_v[1]] += 1;
            adj[at_v[0]].push(at_v[1]);
            adj[at_v[1]].push(at_v[0]);
        }
        if deg.iter().any(|&d| d != 2) {
            return false;
        }
        // single cycle: connected
        let mut seen = vec![false; edges_at_v.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != edges_at_v.len() {
            return false;
        }
    }
    true
}

/// Rescale the mesh so its graph diameter equals `target`.
pub fn normalize_diameter(mesh: &SurfaceMesh, target: f64) -> Result<SurfaceMesh> {
    let summary = crate::metric::diameter(mesh)?;
    if !(summary.diameter > 0.0) {
        return Err(Error::Domain("degenerate zero diameter".into()));
    }
    Ok(mesh.scaled(target / summary.diameter))
}

// ---------------------------------------------------------------------------
// SMESH v1 text format
// ---------------------------------------------------------------------------

/// 17 significant digits; round-trips f64 bit-exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn tag_str(tag: EdgeTag) -> Option<String> {
    match tag {
        EdgeTag::Interior => None,
        EdgeTag::Tree(k) => Some(format!("tree:{k}")),
        EdgeTag::Seam => Some("seam".into()),
        EdgeTag::Apex => Some("apex".into()),
    }
}

fn parse_tag(s: &str) -> Option<EdgeTag> {
    if let Some(k) = s.strip_prefix("tree:") {
        return k.parse().ok().map(EdgeTag::Tree);
    }
    match s {
        "interior" => Some(EdgeTag::Interior),
        "seam" => Some(EdgeTag::Seam),
        "apex" => Some(EdgeTag::Apex),
        _ => None,
    }
}

/// Serialize to the `SMESH 1` text format.
pub fn write_smesh(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    out.push_str("SMESH 1\n");
    out.push_str("meta");
    let m = &mesh.meta;
    write!(out, " variant={}", m.variant.as_str()).unwrap();
    if let Some(h) = m.h {
        write!(out, " h={h}").unwrap();
    }
    if let Some(k) = m.k {
        write!(out, " k={}", fmt_f64(k)).unwrap();
    }
    if let Some(side) = m.side {
        write!(out, " side={}", fmt_f64(side)).unwrap();
    }
    write!(out, " r={}", m.resolution).unwrap();
    write!(out, " genus={}", m.genus).unwrap();
    if m.scale != 1.0 {
        write!(out, " scale={}", fmt_f64(m.scale)).unwrap();
    }
    out.push('\n');
    writeln!(out, "vertices {}", mesh.vertices.len()).unwrap();
    for (i, v) in mesh.vertices.iter().enumerate() {
        match v.coords {
            Some([x, y, z]) => {
                writeln!(out, "v {i} {} {} {}", fmt_f64(x), fmt_f64(y), fmt_f64(z)).unwrap()
            }
            None => writeln!(out, "v {i}").unwrap(),
        }
    }
    writeln!(out, "edges {}", mesh.edges.len()).unwrap();
    for (i, e) in mesh.edges.iter().enumerate() {
        match tag_str(e.tag) {
            Some(t) => writeln!(
                out,
                "e {i} {} {} {} tag={t}",
                e.u,
                e.v,
                fmt_f64(e.length)
            )
            .unwrap(),
            None => writeln!(out, "e {i} {} {} {}", e.u, e.v, fmt_f64(e.length)).unwrap(),
        }
    }
    writeln!(out, "faces {}", mesh.faces.len()).unwrap();
    for (i, f) in mesh.faces.iter().enumerate() {
        writeln!(
            out,
            "f {i} {} {} {} {}",
            f.edges[0],
            f.edges[1],
            f.edges[2],
            fmt_f64(f.area)
        )
        .unwrap();
    }
    out
}

pub fn parse_smesh(text: &str) -> Result<SurfaceMesh> {
    let err = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text.lines().enumerate();
    let (ln, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty file"))?;
    if header.trim() != "SMESH 1" {
        return Err(err(ln + 1, "expected header 'SMESH 1'"));
    }
    let (ln, meta_line) = lines.next().ok_or_else(|| err(1, "missing meta line"))?;
    let mut kv = BTreeMap::new();
    let mut parts = meta_line.split_whitespace();
    if parts.next() != Some("meta") {
        return Err(err(ln + 1, "expected meta line"));
    }
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| err(ln + 1, "meta entries are key=value"))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let variant = kv
        .get("variant")
        .and_then(|s| Variant::parse(s))
        .ok_or_else(|| err(ln + 1, "missing or unknown variant"))?;
    let resolution: u32 = kv
        .get("r")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(ln + 1, "missing resolution r"))?;
    let genus: u32 = kv
        .get("genus")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(ln + 1, "missing genus"))?;
    let mut meta = MeshMetadata::new(variant, resolution, genus);
    meta.h = kv.get("h").and_then(|s| s.parse().ok());
    meta.k = kv.get("k").and_then(|s| s.parse().ok());
    meta.side = kv.get("side").and_then(|s| s.parse().ok());
    meta.scale = kv
        .get("scale")
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);

    let (ln, vline) = lines.next().ok_or_else(|| err(2, "missing vertices"))?;
    let nv: usize = vline
        .strip_prefix("vertices ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| err(ln + 1, "expected 'vertices N'"))?;
    let mut vertices = Vec::with_capacity(nv);
    for i in 0..nv {
        let (ln, l) = lines.next().ok_or_else(|| err(0, "truncated vertices"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 && toks.len() != 5 || toks[0] != "v" {
            return Err(err(ln + 1, "expected 'v <id> [x y z]'"));
        }
        let id: usize = toks[1].parse().map_err(|_| err(ln + 1, "bad vertex id"))?;
        if id != i {
            return Err(err(ln + 1, "vertex ids must be consecutive"));
        }
        let coords = if toks.len() == 5 {
            let mut c = [0.0; 3];
            for (j, t) in toks[2..].iter().enumerate() {
                c[j] = t.parse().map_err(|_| err(ln + 1, "bad coordinate"))?;
            }
            Some(c)
        } else {
            None
        };
        vertices.push(Vertex { coords });
    }

    let (ln, eline) = lines.next().ok_or_else(|| err(0, "missing edges"))?;
    let ne: usize = eline
        .strip_prefix("edges ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| err(ln + 1, "expected 'edges M'"))?;
    let mut edges = Vec::with_capacity(ne);
    for i in 0..ne {
        let (ln, l) = lines.next().ok_or_else(|| err(0, "truncated edges"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if !(toks.len() == 5 || toks.len() == 6) || toks[0] != "e" {
            return Err(err(ln + 1, "expected 'e <id> <u> <v> <length> [tag=..]'"));
        }
        let id: usize = toks[1].parse().map_err(|_| err(ln + 1, "bad edge id"))?;
        if id != i {
            return Err(err(ln + 1, "edge ids must be consecutive"));
        }
        let u: VertexId = toks[2].parse().map_err(|_| err(ln + 1, "bad endpoint"))?;
        let v: VertexId = toks[3].parse().map_err(|_| err(ln + 1, "bad endpoint"))?;
        let length: f64 = toks[4].parse().map_err(|_| err(ln + 1, "bad length"))?;
        let tag = match toks.get(5) {
            Some(t) => t
                .strip_prefix("tag=")
                .and_then(parse_tag)
                .ok_or_else(|| err(ln + 1, "bad tag"))?,
            None => EdgeTag::Interior,
        };
        if u as usize >= nv || v as usize >= nv {
            return Err(err(ln + 1, "edge endpoint out of range"));
        }
        edges.push(Edge { u, v, length, tag });
    }

    let (ln, fline) = lines.next().ok_or_else(|| err(0, "missing faces"))?;
    let nf: usize = fline
        .strip_prefix("faces ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| err(ln + 1, "expected 'faces F'"))?;
    let mut faces = Vec::with_capacity(nf);
    for i in 0..nf {
        let (ln, l) = lines.next().ok_or_else(|| err(0, "truncated faces"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "f" {
            return Err(err(ln + 1, "expected 'f <id> <e1> <e2> <e3> <area>'"));
        }
        let id: usize = toks[1].parse().map_err(|_| err(ln + 1, "bad face id"))?;
        if id != i {
            return Err(err(ln + 1, "face ids must be consecutive"));
        }
        let mut es = [0 as EdgeId; 3];
        for (j, t) in toks[2..5].iter().enumerate() {
            es[j] = t.parse().map_err(|_| err(ln + 1, "bad edge ref"))?;
            if es[j] as usize >= ne {
                return Err(err(ln + 1, "face edge out of range"));
            }
        }
        let area: f64 = toks[5].parse().map_err(|_| err(ln + 1, "bad area"))?;
        faces.push(Face { edges: es, area });
    }
    Ok(SurfaceMesh {
        vertices,
        edges,
        faces,
        meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::octahedron;

    #[test]
    fn octahedron_valid() {
        let m = octahedron();
        let r = validate_mesh(&m);
        assert!(r.valid, "{r:?}");
        assert_eq!(r.euler_characteristic, 2);
        assert_eq!(m.total_area(), 8.0);
    }

    #[test]
    fn missing_face_flagged() {
        let mut m = octahedron();
        m.faces.pop();
        let r = validate_mesh(&m);
        assert!(!r.valid);
        assert!(!r.nonmanifold_edges.is_empty());
        assert_eq!(r.edge_face_histogram.get(&1), Some(&3));
    }

    #[test]
    fn triangle_inequality_flagged() {
        let mut m = octahedron();
        m.edges[0].length = 5.0;
        let r = validate_mesh(&m);
        assert!(!r.valid);
        assert_eq!(r.triangle_violations.len(), 2);
    }

    #[test]
    fn smesh_roundtrip_bytes() {
        let m = octahedron();
        let text = write_smesh(&m);
        let parsed = parse_smesh(&text).unwrap();
        let again = write_smesh(&parsed);
        assert_eq!(text, again, "SMESH round-trip must be byte-identical");
        assert_eq!(parsed.edges.len(), m.edges.len());
        assert_eq!(parsed.total_area(), m.total_area());
    }

    #[test]
    fn smesh_rejects_garbage() {
        assert!(parse_smesh("SMESH 2\n").is_err());
        assert!(parse_smesh("SMESH 1\nmeta variant=hyperbolic r=4 genus=0\nvertices 1\nv 3\n").is_err());
    }

    #[test]
    fn fmt_f64_roundtrip_bits() {
        for &x in &[
            0.1,
            std::f64::consts::PI,
            1.0 / 3.0,
            6.02e23,
            -4.9e-324,
            0.8530612838389117,
        ] {
            let s = fmt_f64(x);
            let y: f64 = s.parse().unwrap();
            assert_eq!(x.to_bits(), y.to_bits(), "{s}");
        }
    }

    #[test]
    fn scaled_mesh_scales_area_quadratically() {
        let m = octahedron();
        let s = m.scaled(2.0);
        assert_eq!(s.total_area(), 4.0 * m.total_area());
        assert_eq!(s.edges[0].length, 2.0);
        assert_eq!(s.meta.scale, 2.0);
    }
}
