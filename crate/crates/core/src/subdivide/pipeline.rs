//! The full half-area subdivision pipeline.

use super::cutting::{cut_along, cut_to_disc, CutComplex};
use super::shelling::{shelling_order, subset_is_disc, verify_shelling};
use super::splitting::split_disc;
use crate::cuts::{self, CyclePath};
use crate::error::{Error, Result};
use crate::mesh::{FaceId, SurfaceMesh};
use crate::metric;
use serde::Serialize;

/// Fixed seed of the sphere bootstrap cut, recorded here so runs are
/// reproducible without configuration.
const BOOTSTRAP_SEED: u64 = 0x5EED;

#[derive(Debug, Clone, Serialize)]
pub struct SubdivisionResult {
    pub epsilon: f64,
    pub genus: u32,
    pub diameter: f64,
    pub curve: Vec<CyclePath>,
    pub curve_length: f64,
    /// Face ids of the accumulated region.
    pub region_faces: Vec<FaceId>,
    /// Areas of the two sides.
    pub sides: [f64; 2],
    /// `(epsilon^(-1/log2(3/2)) + 8 g) * d`.
    pub budget: f64,
    pub n_iter: usize,
    pub split_ratios: Vec<f64>,
    pub shelling_ok: bool,
    /// The curve separates: the face graph minus curve edges has exactly
    /// two components matching the reported sides.
    pub separates: bool,
}

impl SubdivisionResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "epsilon": self.epsilon,
            "genus": self.genus,
            "diameter": self.diameter,
            "curve_length": self.curve_length,
            "budget": self.budget,
            "n_iter": self.n_iter,
            "shelling_ok": self.shelling_ok,
            "sides": [self.sides[0], self.sides[1]],
        })
    }
}

/// Exponent of the split-count budget: `1 / log2(3/2)`.
pub fn budget_exponent() -> f64 {
    1.0 / 1.5f64.log2()
}

/// Number of splitting rounds: `floor(log_{2/3}(2 eps)) + 1`.
pub fn iteration_count(epsilon: f64) -> usize {
    ((2.0 * epsilon).ln() / (2.0f64 / 3.0).ln()).floor() as usize + 1
}

struct Piece {
    root: usize,
    faces: Vec<bool>,
    area: f64,
}

/// Split the surface into two regions, each of area at least
/// `(1/2 - epsilon) * |M|`, by a curve built from a homology-basis cut,
/// recursive balanced splitting, and a shelled greedy accumulation.
pub fn subdivide_half(mesh: &SurfaceMesh, epsilon: f64) -> Result<SubdivisionResult> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::Domain(format!(
            "epsilon must be in (0, 1/2), got {epsilon}"
        )));
    }
    let total = mesh.total_area();
    let half = total / 2.0;
    let summary = metric::diameter(mesh)?;
    let d = summary.diameter;
    let basepoint = summary.center();
    let genus = ((2 - mesh.euler_characteristic()) / 2).max(0) as u32;

    let basis = super::homology_basis(mesh, basepoint)?;
    let (complex, roots): (CutComplex, Vec<Vec<bool>>) = if basis.rank > 0 {
        let complex = cut_to_disc(mesh, &basis)?;
        let all = vec![true; complex.face_count()];
        (complex, vec![all])
    } else {
        bootstrap_sphere(mesh)?
    };

    // recursive splitting
    let n_iter = iteration_count(epsilon);
    let cap = 2.0 * epsilon * total;
    let mut pieces: Vec<Piece> = roots
        .iter()
        .enumerate()
        .map(|(i, faces)| Piece {
            root: i,
            area: faces
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(f, _)| complex.face_areas[f])
                .sum(),
            faces: faces.clone(),
        })
        .collect();
    let mut split_ratios = Vec::new();
    for _round in 0..n_iter {
        let mut next = Vec::with_capacity(pieces.len() * 2);
        for piece in pieces {
            if piece.area <= cap {
                next.push(piece);
                continue;
            }
            let out = split_disc(&complex, &piece.faces, 0.0)?;
            split_ratios.push(out.ratio);
            for (side, area) in out.sides.into_iter().zip(out.areas) {
                next.push(Piece {
                    root: piece.root,
                    faces: side,
                    area,
                });
            }
        }
        pieces = next;
    }

    // shelling per root piece, concatenated in root order
    let n_roots = roots.len();
    let mut cell_sequence: Vec<usize> = Vec::new();
    let mut shelling_ok = true;
    for root in 0..n_roots {
        let idx: Vec<usize> = (0..pieces.len()).filter(|&i| pieces[i].root == root).collect();
        let cells: Vec<Vec<bool>> = idx.iter().map(|&i| pieces[i].faces.clone()).collect();
        let order = shelling_order(&complex, &cells)?;
        shelling_ok &= verify_shelling(&complex, &cells, &order);
        cell_sequence.extend(order.into_iter().map(|o| idx[o]));
    }

    // greedy accumulation to half area
    let mut in_region = vec![false; mesh.face_count()];
    let mut area = 0.0;
    for &ci in &cell_sequence {
        for (f, &m) in pieces[ci].faces.iter().enumerate() {
            if m {
                in_region[f] = true;
            }
        }
        area += pieces[ci].area;
        if area >= half - epsilon * total {
            break;
        }
    }

    let boundary = cuts::boundary_edges(mesh, &in_region)?;
    let curve = cuts::edges_to_cycles(mesh, &boundary)?;
    let curve_length: f64 = boundary.iter().map(|&e| mesh.edges[e as usize].length).sum();
    let region_faces: Vec<FaceId> = in_region
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(f, _)| f as FaceId)
        .collect();
    let separates = check_separation(mesh, &in_region, &boundary);
    let budget = (epsilon.powf(-budget_exponent()) + 8.0 * genus as f64) * d;
    Ok(SubdivisionResult {
        epsilon,
        genus,
        diameter: d,
        curve,
        curve_length,
        region_faces,
        sides: [area, total - area],
        budget,
        n_iter,
        split_ratios,
        shelling_ok,
        separates,
    })
}

/// A sphere has no basis to cut along; bootstrap with a loosely balanced
/// separating cycle, whose two sides are discs.
fn bootstrap_sphere(mesh: &SurfaceMesh) -> Result<(CutComplex, Vec<Vec<bool>>)> {
    let total = mesh.total_area();
    let budget = (mesh.face_count() * 20).clamp(20_000, 400_000);
    let cut = cuts::find_balanced_cut(mesh, total / 6.0, budget, BOOTSTRAP_SEED)?;
    let mut in_a = vec![false; mesh.face_count()];
    for &f in &cut.faces_a {
        in_a[f as usize] = true;
    }
    let boundary = cuts::boundary_edges(mesh, &in_a)?;
    let complex = cut_along(mesh, &boundary)?;
    let side_a: Vec<bool> = in_a.clone();
    let side_b: Vec<bool> = in_a.iter().map(|&b| !b).collect();
    for side in [&side_a, &side_b] {
        if !subset_is_disc(&complex, side) {
            return Err(Error::Validation(
                "bootstrap cut side is not a disc".into(),
            ));
        }
    }
    Ok((complex, vec![side_a, side_b]))
}

fn check_separation(mesh: &SurfaceMesh, in_region: &[bool], boundary: &[u32]) -> bool {
    let mut blocked = vec![false; mesh.edge_count()];
    for &e in boundary {
        blocked[e as usize] = true;
    }
    let mut adj = vec![Vec::new(); mesh.face_count()];
    for (a, b, e) in mesh.dual_edges() {
        if !blocked[e as usize] {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
    }
    let nf = mesh.face_count();
    let mut comp = vec![usize::MAX; nf];
    let mut ncomp = 0;
    for f0 in 0..nf {
        if comp[f0] != usize::MAX {
            continue;
        }
        comp[f0] = ncomp;
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            for &g in &adj[f] {
                if comp[g] == usize::MAX {
                    comp[g] = ncomp;
                    stack.push(g);
                }
            }
        }
        ncomp += 1;
    }
    if ncomp != 2 {
        return false;
    }
    (0..nf).all(|f| (comp[f] == comp[0]) == (in_region[f] == in_region[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;

    #[test]
    fn iteration_count_examples() {
        assert_eq!(iteration_count(0.1), 4);
        assert_eq!(iteration_count(0.49), 1);
        assert!((budget_exponent() - 1.7095112913514547).abs() < 1e-12);
        // 2^N below the budget for the tested grid
        for eps in [0.05, 0.1, 0.2] {
            let n = iteration_count(eps);
            assert!((2f64.powi(n as i32)) < eps.powf(-budget_exponent()));
        }
    }

    #[test]
    fn torus_pipeline() {
        let m = builder::build_flat_torus(12).unwrap();
        let r = subdivide_half(&m, 0.1).unwrap();
        let total = m.total_area();
        assert!(r.sides[0] >= 0.4 * total - 1e-12, "side {}", r.sides[0]);
        assert!(r.sides[1] >= 0.4 * total - 1e-12);
        assert!(r.shelling_ok);
        assert!(r.separates);
        assert!(r.curve_length <= r.budget, "{} > {}", r.curve_length, r.budget);
    }

    #[test]
    fn sphere_pipeline() {
        let m = builder::build_round_sphere(8).unwrap();
        let r = subdivide_half(&m, 0.1).unwrap();
        let total = m.total_area();
        assert!(r.sides[0] >= 0.4 * total);
        assert!(r.sides[1] >= 0.4 * total);
        assert!(r.separates);
        assert!(r.curve_length <= r.budget);
    }

    #[test]
    fn vacuous_epsilon_one_iteration() {
        let m = builder::build_flat_torus(8).unwrap();
        let r = subdivide_half(&m, 0.49).unwrap();
        assert_eq!(r.n_iter, 1);
        assert!(r.sides[0] >= 0.01 * m.total_area());
    }

    #[test]
    fn rejects_bad_epsilon() {
        let m = builder::build_flat_torus(4).unwrap();
        assert!(subdivide_half(&m, 0.0).is_err());
        assert!(subdivide_half(&m, 0.5).is_err());
    }
}
