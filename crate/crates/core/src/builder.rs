//! Mesh constructors.
//!
//! The two glued variants mesh a disc (hyperbolic or a flat triangle fan),
//! split its boundary into `2 N(h)` intervals of `R` segments, and identify
//! paired intervals per the Euler tour of a ternary tree, reversing
//! orientation along each pair so the quotient of the boundary is exactly
//! the tree. Reference surfaces (round sphere, flat torus, genus-g polygon
//! gluings) feed the subdivision pipeline.
//!
//! All computation downstream uses edge lengths and face areas; coordinates
//! are attached for visualization only. Hyperbolic edge lengths are exact
//! point distances (so triangle inequalities hold by construction) and face
//! areas are exact annular-wedge cell areas (so the total reproduces the
//! closed-form disc area at every resolution).

use crate::error::{Error, Result};
use crate::hyperbolic::{self, DiscSpec};
use crate::mesh::{
    Edge, EdgeTag, Face, MeshMetadata, SurfaceMesh, Variant, Vertex,
};
use crate::tree;
use std::collections::HashMap;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct BuildConfig {
    pub variant: Variant,
    /// Tree height (glued variants).
    pub h: u32,
    /// Curvature scale; `None` selects the minimal admissible value.
    pub k: Option<f64>,
    /// Equilateral side of the flat cone.
    pub side: f64,
    /// Segments per boundary interval / grid subdivisions.
    pub resolution: u32,
    /// Genus of the polygon-gluing variant.
    pub genus: u32,
    /// Override the ring count of the disc meshes (used to produce very
    /// coarse test meshes; the default honors ring spacing <= collar / R).
    pub rings: Option<u32>,
    /// Rescale so the graph diameter equals 1 after construction.
    pub normalize: bool,
}

impl BuildConfig {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            h: 1,
            k: None,
            side: 0.5,
            resolution: 4,
            genus: 2,
            rings: None,
            normalize: false,
        }
    }

    pub fn hyperbolic(h: u32, resolution: u32) -> Self {
        Self {
            variant: Variant::Hyperbolic,
            h,
            resolution,
            ..Self::new(Variant::Hyperbolic)
        }
    }

    pub fn flat_cone(h: u32, side: f64, resolution: u32) -> Self {
        Self {
            variant: Variant::FlatCone,
            h,
            side,
            resolution,
            ..Self::new(Variant::FlatCone)
        }
    }

    fn check(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::Domain("resolution R must be >= 2".into()));
        }
        Ok(())
    }
}

/// Build the configured variant (applies diameter normalization if asked).
pub fn build(cfg: &BuildConfig) -> Result<SurfaceMesh> {
    let mesh = match cfg.variant {
        Variant::Hyperbolic => build_glued_sphere(cfg)?,
        Variant::FlatCone => build_flat_cone(cfg)?,
        Variant::RoundSphere | Variant::FlatTorus | Variant::GenusG => build_reference(cfg)?,
    };
    if cfg.normalize {
        crate::mesh::normalize_diameter(&mesh, 1.0)
    } else {
        Ok(mesh)
    }
}

// ---------------------------------------------------------------------------
// Disc scaffold + boundary gluing
// ---------------------------------------------------------------------------

/// A meshed disc whose boundary is a single cycle of vertices, ready for
/// pairwise interval identification.
struct DiscScaffold {
    verts: Vec<Option<[f64; 3]>>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    /// Boundary vertices in cyclic order; `boundary_edges[i]` joins
    /// `boundary_verts[i]` to `boundary_verts[i+1 mod n]`.
    boundary_verts: Vec<u32>,
    boundary_edges: Vec<u32>,
}

/// Interval pairing of the disc boundary: `pairing` is a fixed-point-free
/// involution; paired intervals are glued with reversed orientation
/// (position `s` onto position `r - s`), and the identified edges take the
/// interval's tag.
struct Gluing {
    pairing: Vec<usize>,
    tags: Vec<EdgeTag>,
    segments: usize,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n as u32).collect())
    }
    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.0[root as usize] != root {
            root = self.0[root as usize];
        }
        let mut cur = x;
        while self.0[cur as usize] != root {
            let next = self.0[cur as usize];
            self.0[cur as usize] = root;
            cur = next;
        }
        root
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller id as the representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

fn glue_disc(scaffold: DiscScaffold, gluing: &Gluing, meta: MeshMetadata) -> Result<SurfaceMesh> {
    let r = gluing.segments;
    let n_int = gluing.pairing.len();
    let b = scaffold.boundary_verts.len();
    if b != n_int * r || scaffold.boundary_edges.len() != b {
        return Err(Error::Construction(format!(
            "boundary has {b} segments, expected {n_int} intervals x {r}"
        )));
    }
    for (i, &j) in gluing.pairing.iter().enumerate() {
        if j >= n_int || j == i || gluing.pairing[j] != i {
            return Err(Error::Construction(
                "interval pairing is not a fixed-point-free involution".into(),
            ));
        }
    }

    // Identify vertices.
    let mut uf = UnionFind::new(scaffold.verts.len());
    for (iv, &jv) in gluing.pairing.iter().enumerate() {
        for s in 0..=r {
            let a = scaffold.boundary_verts[(iv * r + s) % b];
            let c = scaffold.boundary_verts[(jv * r + (r - s)) % b];
            uf.union(a, c);
        }
    }

    // Identify boundary edges pairwise; the kept copy takes the tag.
    let mut edge_alias: HashMap<u32, u32> = HashMap::new();
    let mut edges = scaffold.edges;
    for (iv, &jv) in gluing.pairing.iter().enumerate() {
        for s in 0..r {
            let ea = scaffold.boundary_edges[iv * r + s];
            let eb = scaffold.boundary_edges[jv * r + (r - 1 - s)];
            if ea == eb {
                return Err(Error::Construction("boundary edge glued to itself".into()));
            }
            let (keep, drop) = if ea < eb { (ea, eb) } else { (eb, ea) };
            let la = edges[keep as usize].length;
            let lb = edges[drop as usize].length;
            if (la - lb).abs() > 1e-9 * la.max(1.0) {
                return Err(Error::Construction(format!(
                    "paired boundary edges differ in length: {la} vs {lb}"
                )));
            }
            edge_alias.insert(drop, keep);
            edges[keep as usize].tag = gluing.tags[iv];
        }
    }

    // Compact vertices.
    let mut vert_map = vec![u32::MAX; scaffold.verts.len()];
    let mut verts = Vec::new();
    for v in 0..scaffold.verts.len() as u32 {
        let root = uf.find(v);
        if vert_map[root as usize] == u32::MAX {
            vert_map[root as usize] = verts.len() as u32;
            verts.push(Vertex {
                coords: scaffold.verts[root as usize],
            });
        }
        vert_map[v as usize] = vert_map[root as usize];
    }

    // Compact edges.
    let mut edge_map = vec![u32::MAX; edges.len()];
    let mut new_edges = Vec::new();
    for (ei, e) in edges.iter().enumerate() {
        if edge_alias.contains_key(&(ei as u32)) {
            continue;
        }
        edge_map[ei] = new_edges.len() as u32;
        new_edges.push(Edge {
            u: vert_map[e.u as usize],
            v: vert_map[e.v as usize],
            length: e.length,
            tag: e.tag,
        });
    }
    for (&drop, &keep) in &edge_alias {
        edge_map[drop as usize] = edge_map[keep as usize];
    }

    let faces: Vec<Face> = scaffold
        .faces
        .iter()
        .map(|f| Face {
            edges: [
                edge_map[f.edges[0] as usize],
                edge_map[f.edges[1] as usize],
                edge_map[f.edges[2] as usize],
            ],
            area: f.area,
        })
        .collect();

    let mesh = SurfaceMesh {
        vertices: verts,
        edges: new_edges,
        faces,
        meta,
    };
    let report = crate::mesh::validate_mesh(&mesh);
    if !report.valid {
        return Err(Error::Construction(format!(
            "glued mesh failed validation: chi={} (expected {}), nonmanifold={}, \
             triangle violations={}, connected={}, links_ok={}",
            report.euler_characteristic,
            report.expected_euler,
            report.nonmanifold_edges.len(),
            report.triangle_violations.len(),
            report.connected,
            report.vertex_links_ok
        )));
    }
    Ok(mesh)
}

fn tree_gluing(h: u32, r: usize) -> Result<(Gluing, tree::TernaryTree)> {
    let t = tree::build_tree(h)?;
    let tour = tree::euler_tour(&t)?;
    let tags = tour
        .steps()
        .iter()
        .map(|s| EdgeTag::Tree(s.edge as u32))
        .collect();
    Ok((
        Gluing {
            pairing: tour.pairing().to_vec(),
            tags,
            segments: r,
        },
        t,
    ))
}

// ---------------------------------------------------------------------------
// Hyperbolic glued sphere
// ---------------------------------------------------------------------------

/// Distance between `(rho1, phi1)` and `(rho2, phi2)` in curvature `-k^2`:
/// `sinh^2(k d / 2) = sinh^2(k (rho1-rho2)/2) + sinh(k rho1) sinh(k rho2) sin^2(dphi/2)`.
fn hyperbolic_distance(k: f64, rho1: f64, rho2: f64, dphi: f64) -> f64 {
    let a = k * rho1;
    let b = k * rho2;
    let s = (dphi / 2.0).sin();
    if a + b < 600.0 {
        let term = ((a - b) / 2.0).sinh().powi(2) + a.sinh() * b.sinh() * s * s;
        (2.0 / k) * term.sqrt().asinh()
    } else {
        // log-domain for extreme curvature: the transverse term dominates
        let l = (a + b) / 2.0 + s.abs().max(1e-300).ln();
        (2.0 / k) * (l + std::f64::consts::LN_2)
    }
}

/// Glued hyperbolic sphere: concentric-ring disc mesh with the boundary
/// identified along the Euler tour.
///
/// Every ring carries one vertex per boundary segment, angularly aligned
/// across rings, so each boundary vertex has a radial geodesic column to the
/// center and the graph metric reproduces radial distances exactly.
pub fn build_glued_sphere(cfg: &BuildConfig) -> Result<SurfaceMesh> {
    cfg.check()?;
    if cfg.h < 1 {
        return Err(Error::Domain("glued sphere needs h >= 1".into()));
    }
    let r_segments = cfg.resolution as usize;
    let k_min = hyperbolic::select_curvature(cfg.h)?;
    let k = cfg.k.unwrap_or(k_min);
    let mut warnings = Vec::new();
    if k < k_min * (1.0 - 1e-9) {
        let w = format!(
            "curvature K={k:.6} is below the minimal admissible {k_min:.6} for h={}; \
             interval separation and collar-mass conditions may fail",
            cfg.h
        );
        log::warn!("{w}");
        warnings.push(w);
    }
    let spec = DiscSpec::new(k)?;
    let n_edges = tree::edge_count(cfg.h) as usize;
    let n_int = 2 * n_edges;
    let cols = n_int * r_segments;
    let rings = cfg
        .rings
        .unwrap_or_else(|| (spec.radius * cfg.resolution as f64 / spec.collar).ceil() as u32)
        .max(1) as usize;

    let dphi = 2.0 * PI / cols as f64;
    let drho = spec.radius / rings as f64;
    let rho = |j: usize| j as f64 * drho;
    // Poincare-model coordinates, advisory only.
    let coord = |j: usize, i: usize| -> [f64; 3] {
        let rad = (k * rho(j) / 2.0).tanh();
        let phi = i as f64 * dphi;
        [rad * phi.cos(), rad * phi.sin(), 0.0]
    };

    let mut verts: Vec<Option<[f64; 3]>> = vec![Some([0.0, 0.0, 0.0])];
    let vid = |j: usize, i: usize| -> u32 { (1 + (j - 1) * cols + (i % cols)) as u32 };
    for j in 1..=rings {
        for i in 0..cols {
            verts.push(Some(coord(j, i)));
        }
    }

    let mut edges: Vec<Edge> = Vec::new();
    let mut push_edge = |u: u32, v: u32, length: f64| -> u32 {
        edges.push(Edge {
            u,
            v,
            length,
            tag: EdgeTag::Interior,
        });
        (edges.len() - 1) as u32
    };

    // fan spokes, ring chords, radials, diagonals (lengths constant per ring)
    let mut fan = Vec::with_capacity(cols);
    for i in 0..cols {
        fan.push(push_edge(0, vid(1, i), rho(1)));
    }
    let mut ring_chord = vec![Vec::new(); rings + 1];
    for j in 1..=rings {
        let len = hyperbolic_distance(k, rho(j), rho(j), dphi);
        for i in 0..cols {
            ring_chord[j].push(push_edge(vid(j, i), vid(j, i + 1), len));
        }
    }
    let mut radial = vec![Vec::new(); rings];
    for j in 1..rings {
        for i in 0..cols {
            radial[j].push(push_edge(vid(j, i), vid(j + 1, i), drho));
        }
    }
    let mut diag = vec![Vec::new(); rings];
    for j in 1..rings {
        let len = hyperbolic_distance(k, rho(j), rho(j + 1), dphi);
        for i in 0..cols {
            diag[j].push(push_edge(vid(j, i), vid(j + 1, i + 1), len));
        }
    }

    let mut faces: Vec<Face> = Vec::new();
    // center fan cells carry the full innermost wedge area
    let wedge = |j0: usize, j1: usize| -> f64 {
        // dphi * (cosh(k rho1) - cosh(k rho0)) / k^2, via stable sub-areas
        (spec.disc_area(rho(j1)).expect("in range") - spec.disc_area(rho(j0)).expect("in range"))
            / cols as f64
    };
    let a0 = wedge(0, 1);
    for i in 0..cols {
        faces.push(Face {
            edges: [fan[i], ring_chord[1][i], fan[(i + 1) % cols]],
            area: a0,
        });
    }
    for j in 1..rings {
        let cell = wedge(j, j + 1);
        for i in 0..cols {
            // lower triangle: (j,i) (j+1,i) (j+1,i+1)
            faces.push(Face {
                edges: [radial[j][i], ring_chord[j + 1][i], diag[j][i]],
                area: cell / 2.0,
            });
            // upper triangle: (j,i) (j+1,i+1) (j,i+1)
            faces.push(Face {
                edges: [diag[j][i], radial[j][(i + 1) % cols], ring_chord[j][i]],
                area: cell / 2.0,
            });
        }
    }

    let boundary_verts: Vec<u32> = (0..cols).map(|i| vid(rings, i)).collect();
    let boundary_edges: Vec<u32> = ring_chord[rings].clone();

    let scaffold = DiscScaffold {
        verts,
        edges,
        faces,
        boundary_verts,
        boundary_edges,
    };
    let (gluing, _tree) = tree_gluing(cfg.h, r_segments)?;
    let mut meta = MeshMetadata::new(Variant::Hyperbolic, cfg.resolution, 0);
    meta.h = Some(cfg.h);
    meta.k = Some(k);
    meta.warnings = warnings;
    glue_disc(scaffold, &gluing, meta)
}

// ---------------------------------------------------------------------------
// Flat cone
// ---------------------------------------------------------------------------

/// Fan of `2 N(h)` flat equilateral triangles with a common apex, each
/// subdivided at resolution `R`, outer edges identified along the Euler
/// tour. Lengths and areas are exact (all sub-edges `s/R`, all sub-faces
/// `sqrt(3)/4 (s/R)^2`); coordinates squash the cone angle into the plane.
pub fn build_flat_cone(cfg: &BuildConfig) -> Result<SurfaceMesh> {
    cfg.check()?;
    if cfg.h < 1 {
        return Err(Error::Domain("flat cone needs h >= 1".into()));
    }
    if !(cfg.side > 0.0) {
        return Err(Error::Domain("side must be positive".into()));
    }
    let r = cfg.resolution as usize;
    let s = cfg.side;
    let n_int = 2 * tree::edge_count(cfg.h) as usize;

    // canonical grid keys: apex, else (triangle, row i>=1, j in [0, i)),
    // with (t, i, i) identified to (t+1, i, 0)
    let canon = |t: usize, i: usize, j: usize| -> (usize, usize, usize) {
        if i == 0 {
            (0, 0, 0)
        } else if j == i {
            ((t + 1) % n_int, i, 0)
        } else {
            (t, i, j)
        }
    };
    let mut ids: HashMap<(usize, usize, usize), u32> = HashMap::new();
    let mut verts: Vec<Option<[f64; 3]>> = Vec::new();
    // squashed planar coordinates (visual only)
    let corner = |t: usize| -> [f64; 2] {
        let a = 2.0 * PI * t as f64 / n_int as f64;
        [s * a.cos(), s * a.sin()]
    };
    let mut vert_id = |t: usize, i: usize, j: usize, verts: &mut Vec<Option<[f64; 3]>>| -> u32 {
        let key = canon(t, i, j);
        if let Some(&id) = ids.get(&key) {
            return id;
        }
        let id = verts.len() as u32;
        let (ct, ci, cj) = key;
        let coords = if ci == 0 {
            [0.0, 0.0, 0.0]
        } else {
            let a = corner(ct);
            let b = corner((ct + 1) % n_int);
            let fa = (ci - cj) as f64 / ci as f64;
            let fb = cj as f64 / ci as f64;
            let scale = ci as f64 / r as f64;
            [
                scale * (fa * a[0] + fb * b[0]),
                scale * (fa * a[1] + fb * b[1]),
                0.0,
            ]
        };
        verts.push(Some(coords));
        ids.insert(key, id);
        id
    };

    let step = s / r as f64;
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_ids: HashMap<(u32, u32), u32> = HashMap::new();
    let apex_id = 0u32; // created first below
    let mut get_edge = |u: u32, v: u32, radial: bool, edges: &mut Vec<Edge>| -> u32 {
        let key = (u.min(v), u.max(v));
        if let Some(&id) = edge_ids.get(&key) {
            return id;
        }
        let tag = if u == apex_id || v == apex_id {
            EdgeTag::Apex
        } else if radial {
            EdgeTag::Seam
        } else {
            EdgeTag::Interior
        };
        let id = edges.len() as u32;
        edges.push(Edge {
            u,
            v,
            length: step,
            tag,
        });
        edge_ids.insert(key, id);
        id
    };

    // materialize the apex first so its id is 0
    let _ = vert_id(0, 0, 0, &mut verts);

    let face_area = 3f64.sqrt() / 4.0 * step * step;
    let mut faces: Vec<Face> = Vec::new();
    for t in 0..n_int {
        for i in 0..r {
            for j in 0..=i {
                let a = vert_id(t, i, j, &mut verts);
                let b = vert_id(t, i + 1, j, &mut verts);
                let c = vert_id(t, i + 1, j + 1, &mut verts);
                let radial_ab = j == 0;
                let e_ab = get_edge(a, b, radial_ab, &mut edges);
                let e_bc = get_edge(b, c, false, &mut edges);
                let e_ca = get_edge(c, a, j == i, &mut edges);
                faces.push(Face {
                    edges: [e_ab, e_bc, e_ca],
                    area: face_area,
                });
                if j < i {
                    let d = vert_id(t, i, j + 1, &mut verts);
                    let e_cd = get_edge(c, d, j + 1 == i, &mut edges);
                    let e_da = get_edge(d, a, false, &mut edges);
                    faces.push(Face {
                        edges: [e_ca, e_cd, e_da],
                        area: face_area,
                    });
                }
            }
        }
    }

    let mut boundary_verts = Vec::with_capacity(n_int * r);
    let mut boundary_edges = Vec::with_capacity(n_int * r);
    for t in 0..n_int {
        for j in 0..r {
            let u = vert_id(t, r, j, &mut verts);
            let v = vert_id(t, r, j + 1, &mut verts);
            boundary_verts.push(u);
            let key = (u.min(v), u.max(v));
            boundary_edges.push(*edge_ids.get(&key).expect("boundary edge exists"));
        }
    }

    let scaffold = DiscScaffold {
        verts,
        edges,
        faces,
        boundary_verts,
        boundary_edges,
    };
    let (gluing, _tree) = tree_gluing(cfg.h, r)?;
    let mut meta = MeshMetadata::new(Variant::FlatCone, cfg.resolution, 0);
    meta.h = Some(cfg.h);
    meta.side = Some(s);
    glue_disc(scaffold, &gluing, meta)
}

// ---------------------------------------------------------------------------
// Reference surfaces
// ---------------------------------------------------------------------------

pub fn build_reference(cfg: &BuildConfig) -> Result<SurfaceMesh> {
    cfg.check()?;
    match cfg.variant {
        Variant::RoundSphere => build_round_sphere(cfg.resolution),
        Variant::FlatTorus => build_flat_torus(cfg.resolution),
        Variant::GenusG => build_genus_g(cfg.genus, cfg.resolution),
        _ => Err(Error::Domain(format!(
            "{} is not a reference variant",
            cfg.variant.as_str()
        ))),
    }
}

/// Unit round sphere: subdivided octahedron projected to the sphere, with
/// chordal edge lengths and flat-triangle face areas.
///
/// The octahedron base is chosen because its subdivided edges stay on great
/// circles: the mesh contains exactly-balanced equatorial cuts and its graph
/// diameter tracks the antipodal distance closely.
pub fn build_round_sphere(resolution: u32) -> Result<SurfaceMesh> {
    if resolution < 2 {
        return Err(Error::Domain("resolution R must be >= 2".into()));
    }
    let r = resolution as usize;
    let corners: [[f64; 3]; 6] = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let octants: Vec<[usize; 3]> = {
        let mut f = Vec::new();
        for &x in &[0, 1] {
            for &y in &[2, 3] {
                for &z in &[4, 5] {
                    // orient consistently: parity fix is irrelevant here
                    f.push([x, y, z]);
                }
            }
        }
        f
    };

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    // canonical key: corner weights reduced by gcd
    let key_of = |face: &[usize; 3], w: [usize; 3]| -> Vec<(usize, u64)> {
        let mut entries: Vec<(usize, u64)> = face
            .iter()
            .zip(w.iter())
            .filter(|(_, &wi)| wi > 0)
            .map(|(&c, &wi)| (c, wi as u64))
            .collect();
        entries.sort_unstable();
        let g = entries.iter().fold(0u64, |acc, &(_, w)| gcd(acc, w));
        for e in &mut entries {
            e.1 /= g;
        }
        entries
    };

    let mut ids: HashMap<Vec<(usize, u64)>, u32> = HashMap::new();
    let mut verts: Vec<Option<[f64; 3]>> = Vec::new();
    let mut vertex = |face: &[usize; 3], w: [usize; 3]| -> u32 {
        let key = key_of(face, w);
        if let Some(&id) = ids.get(&key) {
            return id;
        }
        let mut p = [0.0; 3];
        for (&c, &wi) in face.iter().zip(w.iter()) {
            for d in 0..3 {
                p[d] += corners[c][d] * wi as f64;
            }
        }
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let id = verts.len() as u32;
        verts.push(Some([p[0] / norm, p[1] / norm, p[2] / norm]));
        ids.insert(key, id);
        id
    };

    let dist = |a: u32, b: u32, verts: &[Option<[f64; 3]>]| -> f64 {
        let p = verts[a as usize].unwrap();
        let q = verts[b as usize].unwrap();
        ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
    };
    let tri_area = |a: u32, b: u32, c: u32, verts: &[Option<[f64; 3]>]| -> f64 {
        let p = verts[a as usize].unwrap();
        let q = verts[b as usize].unwrap();
        let s = verts[c as usize].unwrap();
        let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
        let v = [s[0] - p[0], s[1] - p[1], s[2] - p[2]];
        let x = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
    };

    // pass 1: materialize every grid vertex
    let w = |i: usize, j: usize| [r - i, i - j, j];
    let mut grid: Vec<Vec<Vec<u32>>> = Vec::with_capacity(octants.len());
    for face in &octants {
        let mut rows = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let mut row = Vec::with_capacity(i + 1);
            for j in 0..=i {
                row.push(vertex(face, w(i, j)));
            }
            rows.push(row);
        }
        grid.push(rows);
    }
    drop(vertex);

    // pass 2: edges and faces from the frozen vertex positions
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_ids: HashMap<(u32, u32), u32> = HashMap::new();
    let mut faces: Vec<Face> = Vec::new();
    let mut get_edge = |u: u32, v: u32, edges: &mut Vec<Edge>| -> u32 {
        let key = (u.min(v), u.max(v));
        if let Some(&id) = edge_ids.get(&key) {
            return id;
        }
        let id = edges.len() as u32;
        edges.push(Edge {
            u,
            v,
            length: dist(u, v, &verts),
            tag: EdgeTag::Interior,
        });
        edge_ids.insert(key, id);
        id
    };
    for rows in &grid {
        for i in 0..r {
            for j in 0..=i {
                let a = rows[i][j];
                let b = rows[i + 1][j];
                let c = rows[i + 1][j + 1];
                let e_ab = get_edge(a, b, &mut edges);
                let e_bc = get_edge(b, c, &mut edges);
                let e_ca = get_edge(c, a, &mut edges);
                faces.push(Face {
                    edges: [e_ab, e_bc, e_ca],
                    area: tri_area(a, b, c, &verts),
                });
                if j < i {
                    let d = rows[i][j + 1];
                    let e_cd = get_edge(c, d, &mut edges);
                    let e_da = get_edge(d, a, &mut edges);
                    faces.push(Face {
                        edges: [e_ca, e_cd, e_da],
                        area: tri_area(a, c, d, &verts),
                    });
                }
            }
        }
    }

    let mesh = SurfaceMesh {
        vertices: verts
            .into_iter()
            .map(|c| Vertex { coords: c })
            .collect(),
        edges,
        faces,
        meta: MeshMetadata::new(Variant::RoundSphere, resolution, 0),
    };
    check_built(mesh)
}

/// Unit-square flat torus: R x R grid with wraparound identifications and a
/// consistent diagonal orientation.
pub fn build_flat_torus(resolution: u32) -> Result<SurfaceMesh> {
    if resolution < 2 {
        return Err(Error::Domain("resolution R must be >= 2".into()));
    }
    let r = resolution as usize;
    let n = r * r;
    let step = 1.0 / r as f64;
    let vid = |i: usize, j: usize| -> u32 { ((i % r) * r + (j % r)) as u32 };
    let verts: Vec<Vertex> = (0..n)
        .map(|x| Vertex {
            coords: Some([(x / r) as f64 * step, (x % r) as f64 * step, 0.0]),
        })
        .collect();
    let mut edges = Vec::with_capacity(3 * n);
    // edge ids: right = cell, up = n + cell, diag = 2n + cell
    for i in 0..r {
        for j in 0..r {
            edges.push(Edge {
                u: vid(i, j),
                v: vid(i + 1, j),
                length: step,
                tag: EdgeTag::Interior,
            });
        }
    }
    for i in 0..r {
        for j in 0..r {
            edges.push(Edge {
                u: vid(i, j),
                v: vid(i, j + 1),
                length: step,
                tag: EdgeTag::Interior,
            });
        }
    }
    for i in 0..r {
        for j in 0..r {
            edges.push(Edge {
                u: vid(i, j),
                v: vid(i + 1, j + 1),
                length: step * 2f64.sqrt(),
                tag: EdgeTag::Interior,
            });
        }
    }
    let cell = |i: usize, j: usize| (i % r) * r + (j % r);
    let right = |i: usize, j: usize| cell(i, j) as u32;
    let up = |i: usize, j: usize| (n + cell(i, j)) as u32;
    let diag = |i: usize, j: usize| (2 * n + cell(i, j)) as u32;
    let mut faces = Vec::with_capacity(2 * n);
    let area = 0.5 * step * step;
    for i in 0..r {
        for j in 0..r {
            faces.push(Face {
                edges: [right(i, j), up(i + 1, j), diag(i, j)],
                area,
            });
            faces.push(Face {
                edges: [diag(i, j), right(i, j + 1), up(i, j)],
                area,
            });
        }
    }
    let mut meta = MeshMetadata::new(Variant::FlatTorus, resolution, 1);
    meta.genus = 1;
    let mesh = SurfaceMesh {
        vertices: verts,
        edges,
        faces,
        meta,
    };
    check_built(mesh)
}

/// Genus-g surface: a regular 4g-gon meshed by scaled boundary rings and
/// glued along the standard identification word
/// `a1 b1 a1' b1' a2 b2 a2' b2' ...`.
pub fn build_genus_g(genus: u32, resolution: u32) -> Result<SurfaceMesh> {
    if genus < 1 {
        return Err(Error::Domain("genus-g gluing needs g >= 1".into()));
    }
    if resolution < 2 {
        return Err(Error::Domain("resolution R must be >= 2".into()));
    }
    let g = genus as usize;
    let r = resolution as usize;
    let sides = 4 * g;
    let cols = sides * r;

    // boundary polyline of the regular 4g-gon, subdivided R per side
    let mut boundary_pts = Vec::with_capacity(cols);
    for t in 0..sides {
        let a0 = 2.0 * PI * t as f64 / sides as f64;
        let a1 = 2.0 * PI * (t + 1) as f64 / sides as f64;
        let c0 = [a0.cos(), a0.sin()];
        let c1 = [a1.cos(), a1.sin()];
        for sft in 0..r {
            let f = sft as f64 / r as f64;
            boundary_pts.push([c0[0] + f * (c1[0] - c0[0]), c0[1] + f * (c1[1] - c0[1])]);
        }
    }

    let pt = |j: usize, i: usize| -> [f64; 2] {
        // ring j in 1..=r scales the boundary point by j/r
        let p = boundary_pts[i % cols];
        let f = j as f64 / r as f64;
        [p[0] * f, p[1] * f]
    };
    let mut verts: Vec<Option<[f64; 3]>> = vec![Some([0.0, 0.0, 0.0])];
    let vid = |j: usize, i: usize| -> u32 { (1 + (j - 1) * cols + (i % cols)) as u32 };
    for j in 1..=r {
        for i in 0..cols {
            let p = pt(j, i);
            verts.push(Some([p[0], p[1], 0.0]));
        }
    }
    let d2 = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let shoelace = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| -> f64 {
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs()
    };

    let mut edges: Vec<Edge> = Vec::new();
    let mut push_edge = |u: u32, v: u32, length: f64| -> u32 {
        edges.push(Edge {
            u,
            v,
            length,
            tag: EdgeTag::Interior,
        });
        (edges.len() - 1) as u32
    };
    let origin = [0.0, 0.0];
    let mut fan = Vec::with_capacity(cols);
    for i in 0..cols {
        fan.push(push_edge(0, vid(1, i), d2(origin, pt(1, i))));
    }
    let mut ring_chord = vec![Vec::new(); r + 1];
    for j in 1..=r {
        for i in 0..cols {
            ring_chord[j].push(push_edge(vid(j, i), vid(j, i + 1), d2(pt(j, i), pt(j, i + 1))));
        }
    }
    let mut radial = vec![Vec::new(); r];
    for j in 1..r {
        for i in 0..cols {
            radial[j].push(push_edge(vid(j, i), vid(j + 1, i), d2(pt(j, i), pt(j + 1, i))));
        }
    }
    let mut diag = vec![Vec::new(); r];
    for j in 1..r {
        for i in 0..cols {
            diag[j].push(push_edge(
                vid(j, i),
                vid(j + 1, i + 1),
                d2(pt(j, i), pt(j + 1, i + 1)),
            ));
        }
    }
    let mut faces: Vec<Face> = Vec::new();
    for i in 0..cols {
        faces.push(Face {
            edges: [fan[i], ring_chord[1][i], fan[(i + 1) % cols]],
            area: shoelace(origin, pt(1, i), pt(1, i + 1)),
        });
    }
    for j in 1..r {
        for i in 0..cols {
            faces.push(Face {
                edges: [radial[j][i], ring_chord[j + 1][i], diag[j][i]],
                area: shoelace(pt(j, i), pt(j + 1, i), pt(j + 1, i + 1)),
            });
            faces.push(Face {
                edges: [diag[j][i], radial[j][(i + 1) % cols], ring_chord[j][i]],
                area: shoelace(pt(j, i), pt(j + 1, i + 1), pt(j, i + 1)),
            });
        }
    }

    let boundary_verts: Vec<u32> = (0..cols).map(|i| vid(r, i)).collect();
    let boundary_edges: Vec<u32> = ring_chord[r].clone();
    let scaffold = DiscScaffold {
        verts,
        edges,
        faces,
        boundary_verts,
        boundary_edges,
    };

    // identification word a b a' b' per handle
    let mut pairing = vec![0usize; sides];
    for t in 0..g {
        pairing[4 * t] = 4 * t + 2;
        pairing[4 * t + 2] = 4 * t;
        pairing[4 * t + 1] = 4 * t + 3;
        pairing[4 * t + 3] = 4 * t + 1;
    }
    let gluing = Gluing {
        pairing,
        tags: vec![EdgeTag::Seam; sides],
        segments: r,
    };
    let meta = MeshMetadata::new(Variant::GenusG, resolution, genus);
    glue_disc(scaffold, &gluing, meta)
}

fn check_built(mesh: SurfaceMesh) -> Result<SurfaceMesh> {
    let report = crate::mesh::validate_mesh(&mesh);
    if !report.valid {
        return Err(Error::Construction(format!(
            "built mesh failed validation: chi={} expected={}, nonmanifold={}, connected={}",
            report.euler_characteristic,
            report.expected_euler,
            report.nonmanifold_edges.len(),
            report.connected,
        )));
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate_mesh;

    #[test]
    fn flat_cone_h1_exact_area() {
        for r in [2, 4, 8] {
            let m = build_flat_cone(&BuildConfig::flat_cone(1, 0.5, r)).unwrap();
            let want = 6.0 * 3f64.sqrt() / 4.0 * 0.25;
            assert!(
                (m.total_area() - want).abs() < 1e-9,
                "r={r}: area {}",
                m.total_area()
            );
            assert_eq!(m.euler_characteristic(), 2);
        }
    }

    #[test]
    fn flat_cone_h2_sphere() {
        let m = build_flat_cone(&BuildConfig::flat_cone(2, 0.5, 3)).unwrap();
        assert_eq!(m.euler_characteristic(), 2);
        assert!(validate_mesh(&m).valid);
    }

    #[test]
    fn flat_cone_apex_link() {
        let cfg = BuildConfig::flat_cone(1, 0.5, 4);
        let m = build_flat_cone(&cfg).unwrap();
        // apex = vertex 0; degree = 2N(1) = 6
        let vinc = m.vertex_edge_incidence();
        assert_eq!(vinc[0].len(), 6);
        assert!(vinc[0]
            .iter()
            .all(|&e| m.edges[e as usize].tag == EdgeTag::Apex));
    }

    #[test]
    fn glued_sphere_h1_valid() {
        let m = build_glued_sphere(&BuildConfig::hyperbolic(1, 4)).unwrap();
        assert_eq!(m.euler_characteristic(), 2);
        let report = validate_mesh(&m);
        assert!(report.valid, "{report:?}");
    }

    #[test]
    fn glued_sphere_area_matches_disc() {
        let cfg = BuildConfig::hyperbolic(2, 8);
        let m = build_glued_sphere(&cfg).unwrap();
        let spec = DiscSpec::new(m.meta.k.unwrap()).unwrap();
        let want = spec.disc_area(spec.radius).unwrap();
        let got = m.total_area();
        assert!(
            (got - want).abs() <= 0.03 * want,
            "mesh area {got} vs disc {want}"
        );
    }

    #[test]
    fn glued_sphere_tree_subgraph() {
        let cfg = BuildConfig::hyperbolic(2, 4);
        let m = build_glued_sphere(&cfg).unwrap();
        let tags = m.tree_tags();
        assert_eq!(tags.len() as u64, tree::edge_count(2));
        // every chain is a simple path of R edges
        for &k in &tags {
            let chain = m.tree_chain(k);
            assert_eq!(chain.len(), 4);
        }
        // the tagged subgraph is a tree: v = e + 1 over the chain union
        let mut vs: Vec<u32> = m
            .edges
            .iter()
            .filter(|e| matches!(e.tag, EdgeTag::Tree(_)))
            .flat_map(|e| [e.u, e.v])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        let ne: usize = tags.iter().map(|&k| m.tree_chain(k).len()).sum();
        assert_eq!(vs.len(), ne + 1, "tagged subgraph must be a tree");
    }

    #[test]
    fn glued_sphere_coarse_rings_override() {
        let mut cfg = BuildConfig::hyperbolic(1, 2);
        cfg.rings = Some(1);
        let m = build_glued_sphere(&cfg).unwrap();
        assert_eq!(m.face_count(), 12);
        assert!(validate_mesh(&m).valid);
    }

    #[test]
    fn round_sphere_area_converges() {
        let m = build_round_sphere(16).unwrap();
        let want = 4.0 * PI;
        let got = m.total_area();
        assert!(got < want);
        assert!((got - want).abs() < 0.02 * want, "area {got}");
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn flat_torus_basics() {
        let m = build_flat_torus(4).unwrap();
        assert_eq!(m.euler_characteristic(), 0);
        assert!((m.total_area() - 1.0).abs() < 1e-12);
        assert!(validate_mesh(&m).valid);
    }

    #[test]
    fn flat_torus_min_resolution() {
        let m = build_flat_torus(2).unwrap();
        assert!(validate_mesh(&m).valid);
        assert_eq!(m.face_count(), 8);
    }

    #[test]
    fn genus_two_chi() {
        let m = build_genus_g(2, 4).unwrap();
        assert_eq!(m.euler_characteristic(), -2);
        assert!(validate_mesh(&m).valid);
    }

    #[test]
    fn genus_one_polygon_matches_torus_chi() {
        let m = build_genus_g(1, 4).unwrap();
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn refine_preserves_flat_cone_area() {
        let a: Vec<f64> = [2, 4, 8]
            .iter()
            .map(|&r| {
                build_flat_cone(&BuildConfig::flat_cone(2, 0.5, r))
                    .unwrap()
                    .total_area()
            })
            .collect();
        assert!((a[0] - a[1]).abs() < 1e-9);
        assert!((a[1] - a[2]).abs() < 1e-9);
    }

    #[test]
    fn hyperbolic_area_exact_at_all_resolutions() {
        // wedge-cell bookkeeping reproduces the closed form for every R
        for r in [2, 4] {
            let cfg = BuildConfig::hyperbolic(1, r);
            let m = build_glued_sphere(&cfg).unwrap();
            let spec = DiscSpec::new(m.meta.k.unwrap()).unwrap();
            let want = spec.disc_area(spec.radius).unwrap();
            assert!(
                (m.total_area() - want).abs() < 1e-9 * want,
                "r={r}"
            );
        }
    }

    #[test]
    fn tree_chain_lengths_exceed_min_chord() {
        let cfg = BuildConfig::hyperbolic(2, 4);
        let m = build_glued_sphere(&cfg).unwrap();
        for k in m.tree_tags() {
            let len: f64 = m
                .tree_chain(k)
                .iter()
                .map(|&e| m.edges[e as usize].length)
                .sum();
            assert!(len >= 0.75, "chain {k} has length {len}");
        }
    }

    #[test]
    fn flat_cone_chains_measure_the_side() {
        let m = build_flat_cone(&BuildConfig::flat_cone(2, 0.5, 4)).unwrap();
        let tags = m.tree_tags();
        assert_eq!(tags.len() as u64, tree::edge_count(2));
        for k in tags {
            let chain = m.tree_chain(k);
            assert_eq!(chain.len(), 4);
            let len: f64 = chain.iter().map(|&e| m.edges[e as usize].length).sum();
            assert!((len - 0.5).abs() < 1e-12, "chain {k} length {len}");
        }
        // tagged subgraph is a tree: vertices = edges + 1
        let mut vs: Vec<u32> = m
            .edges
            .iter()
            .filter(|e| matches!(e.tag, EdgeTag::Tree(_)))
            .flat_map(|e| [e.u, e.v])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        let ne = m
            .edges
            .iter()
            .filter(|e| matches!(e.tag, EdgeTag::Tree(_)))
            .count();
        assert_eq!(vs.len(), ne + 1);
    }

    #[test]
    fn normalize_flag_rescales_to_unit_diameter() {
        let mut cfg = BuildConfig::hyperbolic(1, 4);
        cfg.normalize = true;
        let m = build(&cfg).unwrap();
        let d = crate::metric::diameter(&m).unwrap().diameter;
        assert!((d - 1.0).abs() < 1e-9);
        assert_ne!(m.meta.scale, 1.0);
    }
}
