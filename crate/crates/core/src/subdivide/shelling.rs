//! Shelling orders of disc tilings: an ordering of the cells so every
//! prefix union is itself a disc.

use super::cutting::CutComplex;
use crate::error::{Error, Result};
use std::collections::HashSet;

/// Is the face subset a disc inside the cut complex: nonempty, connected,
/// Euler characteristic 1?
pub fn subset_is_disc(complex: &CutComplex, faces: &[bool]) -> bool {
    let nf = complex.face_count();
    let count = faces.iter().filter(|&&b| b).count();
    if count == 0 {
        return false;
    }
    // connectivity over interior dual adjacency
    let adj = complex.dual_adjacency();
    let start = (0..nf).find(|&f| faces[f]).unwrap();
    let mut seen = vec![false; nf];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(f) = stack.pop() {
        for &(g, _) in &adj[f] {
            let g = g as usize;
            if faces[g] && !seen[g] {
                seen[g] = true;
                reached += 1;
                stack.push(g);
            }
        }
    }
    if reached != count {
        return false;
    }
    // Euler characteristic of the induced closed subcomplex
    let mut edge_in: HashSet<u32> = HashSet::new();
    let mut verts: HashSet<u32> = HashSet::new();
    for f in 0..nf {
        if !faces[f] {
            continue;
        }
        for &e in &complex.face_edges[f] {
            edge_in.insert(e);
            let (u, v) = complex.edges[e as usize].endpoints;
            verts.insert(u);
            verts.insert(v);
        }
    }
    let chi = verts.len() as i64 - edge_in.len() as i64 + count as i64;
    chi == 1
}

fn complement_connected(complex: &CutComplex, scope: &[bool], chosen: &[bool]) -> bool {
    let nf = complex.face_count();
    let remaining: Vec<bool> = (0..nf).map(|f| scope[f] && !chosen[f]).collect();
    let count = remaining.iter().filter(|&&b| b).count();
    if count == 0 {
        return true;
    }
    let adj = complex.dual_adjacency();
    let start = (0..nf).find(|&f| remaining[f]).unwrap();
    let mut seen = vec![false; nf];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(f) = stack.pop() {
        for &(g, _) in &adj[f] {
            let g = g as usize;
            if remaining[g] && !seen[g] {
                seen[g] = true;
                reached += 1;
                stack.push(g);
            }
        }
    }
    reached == count
}

/// Find an ordering of the cells (face masks tiling a disc piece) so that
/// every prefix union is a disc and every suffix stays connected. Greedy
/// with backtracking; failure after the node budget is reported loudly, as
/// it would contradict shellability for the instance.
pub fn shelling_order(complex: &CutComplex, cells: &[Vec<bool>]) -> Result<Vec<usize>> {
    let k = cells.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let nf = complex.face_count();
    let scope: Vec<bool> = (0..nf)
        .map(|f| cells.iter().any(|c| c[f]))
        .collect();
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    let mut chosen = vec![false; nf];
    let mut nodes = 0usize;
    const NODE_BUDGET: usize = 200_000;

    fn dfs(
        complex: &CutComplex,
        cells: &[Vec<bool>],
        scope: &[bool],
        order: &mut Vec<usize>,
        used: &mut [bool],
        chosen: &mut Vec<bool>,
        nodes: &mut usize,
    ) -> bool {
        if order.len() == cells.len() {
            return true;
        }
        for c in 0..cells.len() {
            if used[c] {
                continue;
            }
            *nodes += 1;
            if *nodes > NODE_BUDGET {
                return false;
            }
            let saved = chosen.clone();
            for (f, &m) in cells[c].iter().enumerate() {
                if m {
                    chosen[f] = true;
                }
            }
            let ok = subset_is_disc(complex, chosen)
                && complement_connected(complex, scope, chosen);
            if ok {
                used[c] = true;
                order.push(c);
                if dfs(complex, cells, scope, order, used, chosen, nodes) {
                    return true;
                }
                order.pop();
                used[c] = false;
            }
            *chosen = saved;
        }
        false
    }

    if dfs(
        complex, cells, &scope, &mut order, &mut used, &mut chosen, &mut nodes,
    ) {
        Ok(order)
    } else {
        log::error!(
            "no shelling order found for {k} cells within {NODE_BUDGET} nodes; \
             this would contradict shellability of the tiling"
        );
        Err(Error::Validation(format!(
            "no shelling order found for {k} cells"
        )))
    }
}

/// Recompute the disc property of every prefix of an order.
pub fn verify_shelling(complex: &CutComplex, cells: &[Vec<bool>], order: &[usize]) -> bool {
    if order.len() != cells.len() {
        return false;
    }
    let nf = complex.face_count();
    let mut chosen = vec![false; nf];
    for &c in order {
        for (f, &m) in cells[c].iter().enumerate() {
            if m {
                chosen[f] = true;
            }
        }
        if !subset_is_disc(complex, &chosen) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::subdivide::{cut_to_disc, homology_basis, split_disc};

    #[test]
    fn single_cell_trivial() {
        let m = builder::build_flat_torus(4).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        let c = cut_to_disc(&m, &b).unwrap();
        let all = vec![true; c.face_count()];
        let order = shelling_order(&c, &[all.clone()]).unwrap();
        assert_eq!(order, vec![0]);
        assert!(verify_shelling(&c, &[all], &order));
    }

    #[test]
    fn four_cells_shellable() {
        let m = builder::build_flat_torus(8).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        let c = cut_to_disc(&m, &b).unwrap();
        let all = vec![true; c.face_count()];
        let first = split_disc(&c, &all, 0.0).unwrap();
        let mut cells = Vec::new();
        for side in first.sides {
            let again = split_disc(&c, &side, 0.0).unwrap();
            cells.push(again.sides[0].clone());
            cells.push(again.sides[1].clone());
        }
        let order = shelling_order(&c, &cells).unwrap();
        assert!(verify_shelling(&c, &cells, &order));
    }
}
