//! Minimal-area Z2 fillings of null-homologous cycles.

use super::{dual_adjacency, CyclePath};
use crate::error::{Error, Result};
use crate::mesh::SurfaceMesh;

/// Minimal total face area of a Z2 2-chain whose boundary equals the cycle.
///
/// On a connected closed surface the boundary system `d2 x = c` is solved by
/// integrating crossing parities over a dual spanning tree; the solution
/// family is `{x, complement(x)}`, so the minimum is the smaller side. Every
/// non-tree dual edge is checked for consistency; any violation means the
/// cycle is not null-homologous over Z2.
pub fn filling_area(mesh: &SurfaceMesh, cycle: &CyclePath) -> Result<f64> {
    let support = cycle.z2_support();
    if support.is_empty() {
        return Ok(0.0);
    }
    let in_cycle = {
        let mut v = vec![false; mesh.edge_count()];
        for &e in &support {
            v[e as usize] = true;
        }
        v
    };
    let adj = dual_adjacency(mesh);
    let n = mesh.face_count();
    if n == 0 {
        return Err(Error::Domain("empty mesh".into()));
    }
    let mut side = vec![u8::MAX; n];
    side[0] = 0;
    let mut stack = vec![0usize];
    while let Some(f) = stack.pop() {
        for &(g, e, _) in &adj[f] {
            let g = g as usize;
            let s = side[f] ^ u8::from(in_cycle[e as usize]);
            if side[g] == u8::MAX {
                side[g] = s;
                stack.push(g);
            } else if side[g] != s {
                return Err(Error::Homology);
            }
        }
    }
    if side.iter().any(|&s| s == u8::MAX) {
        return Err(Error::Validation("mesh dual graph is disconnected".into()));
    }
    let mut area1 = 0.0;
    let mut total = 0.0;
    for (f, face) in mesh.faces.iter().enumerate() {
        total += face.area;
        if side[f] == 1 {
            area1 += face.area;
        }
    }
    Ok(area1.min(total - area1))
}
