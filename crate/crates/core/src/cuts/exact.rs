//! Exhaustive minimum-length balanced cut for small meshes. Serves as the
//! oracle the heuristic search is tested against.

use super::{dual_adjacency, CutResult};
use crate::error::{Error, Result};
use crate::mesh::SurfaceMesh;

/// Hard cap on the face count for exhaustive enumeration.
pub const EXACT_FACE_CAP: usize = 18;

pub fn exact_balanced_cut(mesh: &SurfaceMesh, balance_tol: f64) -> Result<CutResult> {
    exact_balanced_cut_with_cap(mesh, balance_tol, EXACT_FACE_CAP)
}

/// Enumerates every face subset containing face 0 whose two sides are both
/// connected, and returns the minimum-boundary-length subset within the
/// balance tolerance. Ties break to the lexicographically smallest side-A
/// face set.
pub fn exact_balanced_cut_with_cap(
    mesh: &SurfaceMesh,
    balance_tol: f64,
    cap: usize,
) -> Result<CutResult> {
    let n = mesh.face_count();
    if n > cap {
        return Err(Error::SizeCap { faces: n, cap });
    }
    if n < 2 {
        return Err(Error::Infeasible("need at least two faces".into()));
    }
    let adj = dual_adjacency(mesh);
    let neighbor_mask: Vec<u32> = (0..n)
        .map(|f| {
            adj[f]
                .iter()
                .fold(0u32, |m, &(g, _, _)| m | (1u32 << g))
        })
        .collect();
    let areas: Vec<f64> = mesh.faces.iter().map(|f| f.area).collect();
    let half = mesh.total_area() / 2.0;
    // Boundary length per mask: sum over dual edges crossing the mask.
    let duals = mesh.dual_edges();

    let connected = |mask: u32| -> bool {
        if mask == 0 {
            return false;
        }
        let start = mask.trailing_zeros();
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u32;
            let mut fs = frontier;
            while fs != 0 {
                let f = fs.trailing_zeros() as usize;
                fs &= fs - 1;
                next |= neighbor_mask[f] & mask & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen == mask
    };

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<(f64, u32)> = None;
    let mut best_faces: Vec<u32> = Vec::new();
    for mask in (1u32..=full).step_by(2) {
        // face 0 always on side A; skip the full set (empty complement)
        if mask == full {
            continue;
        }
        let comp = full & !mask;
        let area_a: f64 = {
            let mut s = 0.0;
            let mut m = mask;
            while m != 0 {
                let f = m.trailing_zeros() as usize;
                m &= m - 1;
                s += areas[f];
            }
            s
        };
        if (area_a - half).abs() > balance_tol + 1e-12 {
            continue;
        }
        if !connected(mask) || !connected(comp) {
            continue;
        }
        let mut len = 0.0;
        for &(a, b, e) in &duals {
            if ((mask >> a) & 1) != ((mask >> b) & 1) {
                len += mesh.edges[e as usize].length;
            }
        }
        let better = match best {
            None => true,
            Some((blen, bmask)) => {
                len < blen
                    || (len == blen && {
                        let cand = mask_faces(mask);
                        let cur = mask_faces(bmask);
                        cand < cur
                    })
            }
        };
        if better {
            best = Some((len, mask));
            best_faces = mask_faces(mask);
        }
    }
    match best {
        Some((_, mask)) => {
            let in_a: Vec<bool> = (0..n).map(|f| (mask >> f) & 1 == 1).collect();
            let _ = &best_faces;
            CutResult::from_partition(mesh, &in_a)
        }
        None => Err(Error::Infeasible(format!(
            "no connected bipartition within balance tolerance {balance_tol}"
        ))),
    }
}

fn mask_faces(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        let f = m.trailing_zeros();
        m &= m - 1;
        out.push(f);
    }
    out
}
