//! Balanced chord splitting of a disc piece.
//!
//! Candidates are shortest boundary-to-boundary paths whose interiors stay
//! off the piece boundary; they are scanned in increasing length, so the
//! first candidate inside the area-ratio window has minimum length.

use super::cutting::CutComplex;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Debug, Clone)]
pub struct SplitOutcome {
    /// Complex edge ids of the splitting chord.
    pub path: Vec<u32>,
    pub length: f64,
    /// The two sides, as face masks over the complex.
    pub sides: [Vec<bool>; 2],
    pub areas: [f64; 2],
    /// min(area) / total.
    pub ratio: f64,
    /// `2 * max distance to the piece boundary + delta`: the reference
    /// length the chord is reported against (not asserted).
    pub target_length: f64,
}

struct PieceView {
    in_piece: Vec<bool>,
    /// vertex -> [(vertex, complex edge, length)]; interior edges only
    interior_adj: Vec<Vec<(u32, u32, f64)>>,
    /// all edges incident to the piece (for distance-to-boundary)
    full_adj: Vec<Vec<(u32, u32, f64)>>,
    boundary_verts: Vec<u32>,
    is_boundary_vert: Vec<bool>,
    total_area: f64,
    max_face_area: f64,
}

fn piece_view(complex: &CutComplex, piece: &[bool]) -> PieceView {
    let nv = complex.vertex_count;
    let mut interior_adj = vec![Vec::new(); nv];
    let mut full_adj = vec![Vec::new(); nv];
    let mut is_boundary_vert = vec![false; nv];
    for (ei, e) in complex.edges.iter().enumerate() {
        let faces_in = e
            .faces
            .iter()
            .filter(|&&f| piece[f as usize])
            .count();
        if faces_in == 0 {
            continue;
        }
        let (u, v) = e.endpoints;
        full_adj[u as usize].push((v, ei as u32, e.length));
        full_adj[v as usize].push((u, ei as u32, e.length));
        if faces_in == 2 {
            interior_adj[u as usize].push((v, ei as u32, e.length));
            interior_adj[v as usize].push((u, ei as u32, e.length));
        } else {
            is_boundary_vert[u as usize] = true;
            is_boundary_vert[v as usize] = true;
        }
    }
    let boundary_verts: Vec<u32> = (0..nv as u32)
        .filter(|&v| is_boundary_vert[v as usize])
        .collect();
    let mut total_area = 0.0;
    let mut max_face_area = 0.0f64;
    for (f, &inp) in piece.iter().enumerate() {
        if inp {
            total_area += complex.face_areas[f];
            max_face_area = max_face_area.max(complex.face_areas[f]);
        }
    }
    PieceView {
        in_piece: piece.to_vec(),
        interior_adj,
        full_adj,
        boundary_verts,
        is_boundary_vert,
        total_area,
        max_face_area,
    }
}

#[derive(PartialEq)]
struct Item(f64, u32);
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

/// Shortest chord distances from one boundary vertex over interior edges.
/// In strict mode expansion stops at other boundary vertices, so chord
/// interiors stay off the boundary; relaxed mode allows passing through
/// boundary vertices (the two-component check still vets the split).
fn chord_dijkstra(
    view: &PieceView,
    src: u32,
    relaxed: bool,
    preds: Option<&mut Vec<Option<(u32, u32)>>>,
) -> Vec<f64> {
    let nv = view.interior_adj.len();
    let mut dist = vec![f64::INFINITY; nv];
    let mut heap = BinaryHeap::new();
    let mut preds = preds;
    dist[src as usize] = 0.0;
    heap.push(Item(0.0, src));
    while let Some(Item(d, v)) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        if !relaxed && v != src && view.is_boundary_vert[v as usize] {
            continue; // arrived at a target; do not pass through
        }
        for &(w, e, len) in &view.interior_adj[v as usize] {
            let nd = d + len;
            if nd < dist[w as usize] {
                dist[w as usize] = nd;
                if let Some(p) = preds.as_deref_mut() {
                    p[w as usize] = Some((v, e));
                }
                heap.push(Item(nd, w));
            }
        }
    }
    dist
}

/// Split a disc piece by the shortest boundary-to-boundary chord whose two
/// sides have area ratio within `[1/3 - tol, 2/3 + tol]`, tolerance one face
/// area. `delta` only affects the reported target length.
pub fn split_disc(complex: &CutComplex, piece: &[bool], delta: f64) -> Result<SplitOutcome> {
    let view = piece_view(complex, piece);
    if view.boundary_verts.is_empty() {
        return Err(Error::Domain("piece has no boundary".into()));
    }
    // distance to boundary, for the reported target
    let max_dist_to_boundary = {
        let nv = view.full_adj.len();
        let mut dist = vec![f64::INFINITY; nv];
        let mut heap = BinaryHeap::new();
        for &b in &view.boundary_verts {
            dist[b as usize] = 0.0;
            heap.push(Item(0.0, b));
        }
        while let Some(Item(d, v)) = heap.pop() {
            if d > dist[v as usize] {
                continue;
            }
            for &(w, _, len) in &view.full_adj[v as usize] {
                if d + len < dist[w as usize] {
                    dist[w as usize] = d + len;
                    heap.push(Item(d + len, w));
                }
            }
        }
        dist.iter()
            .filter(|d| d.is_finite())
            .fold(0.0f64, |a, &b| a.max(b))
    };
    let target_length = 2.0 * max_dist_to_boundary + delta;

    // Strict pass first (chord interiors off the boundary); if no chord
    // reaches the ratio window, retry allowing boundary-touching paths,
    // then fall back to distance-sublevel sweeps, which handle pieces so
    // ragged that every pairwise shortest path cuts off a sliver.
    let mut best_ratio = 0.0f64;
    for relaxed in [false, true] {
        match chord_scan(complex, &view, relaxed, target_length, &mut best_ratio) {
            Some(out) => return Ok(out),
            None => continue,
        }
    }
    if let Some(out) = sweep_scan(complex, &view, target_length, &mut best_ratio) {
        return Ok(out);
    }
    Err(Error::SplitInfeasible { best_ratio })
}

/// Sweep heuristic: grow a distance sublevel set of faces from a boundary
/// source; a prefix whose area lands in the ratio window and whose
/// interface cuts the piece into exactly two parts is a split candidate.
/// Returns the minimum-interface-length candidate over all sources.
fn sweep_scan(
    complex: &CutComplex,
    view: &PieceView,
    target_length: f64,
    best_ratio: &mut f64,
) -> Option<SplitOutcome> {
    let nf = complex.face_count();
    let lo = view.total_area / 3.0 - view.max_face_area;
    let piece_faces: Vec<usize> = (0..nf).filter(|&f| view.in_piece[f]).collect();
    let outcomes: Vec<(f64, SplitOutcome)> = view
        .boundary_verts
        .par_iter()
        .filter_map(|&src| {
            let nv = view.full_adj.len();
            let mut dist = vec![f64::INFINITY; nv];
            let mut heap = BinaryHeap::new();
            dist[src as usize] = 0.0;
            heap.push(Item(0.0, src));
            while let Some(Item(d, v)) = heap.pop() {
                if d > dist[v as usize] {
                    continue;
                }
                for &(w, _, len) in &view.full_adj[v as usize] {
                    if d + len < dist[w as usize] {
                        dist[w as usize] = d + len;
                        heap.push(Item(d + len, w));
                    }
                }
            }
            let mut order: Vec<(f64, usize)> = piece_faces
                .iter()
                .map(|&f| {
                    let key = complex.face_edges[f]
                        .iter()
                        .flat_map(|&e| {
                            let (u, v) = complex.edges[e as usize].endpoints;
                            [dist[u as usize], dist[v as usize]]
                        })
                        .fold(0.0f64, f64::max);
                    (key, f)
                })
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
            let mut prefix = vec![false; nf];
            let mut area = 0.0;
            let mut best: Option<(f64, SplitOutcome)> = None;
            for &(_, f) in &order {
                prefix[f] = true;
                area += complex.face_areas[f];
                if area < lo {
                    continue;
                }
                if view.total_area - area < lo {
                    break;
                }
                // interface edges between prefix and the rest of the piece
                let interface: Vec<u32> = complex
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| {
                        e.faces.len() == 2
                            && view.in_piece[e.faces[0] as usize]
                            && view.in_piece[e.faces[1] as usize]
                            && prefix[e.faces[0] as usize] != prefix[e.faces[1] as usize]
                    })
                    .map(|(i, _)| i as u32)
                    .collect();
                if let Some((sides, areas)) = evaluate_split(complex, view, &interface) {
                    let length: f64 = interface
                        .iter()
                        .map(|&e| complex.edges[e as usize].length)
                        .sum();
                    let ratio = areas[0].min(areas[1]) / view.total_area;
                    if best.as_ref().map_or(true, |(l, _)| length < *l) {
                        best = Some((
                            length,
                            SplitOutcome {
                                path: interface,
                                length,
                                sides,
                                areas,
                                ratio,
                                target_length,
                            },
                        ));
                    }
                }
            }
            best
        })
        .collect();
    let mut chosen: Option<(f64, SplitOutcome)> = None;
    for (len, out) in outcomes {
        *best_ratio = best_ratio.max(out.ratio);
        if chosen.as_ref().map_or(true, |(l, _)| len < *l) {
            chosen = Some((len, out));
        }
    }
    chosen.map(|(_, out)| out)
}

fn chord_scan(
    complex: &CutComplex,
    view: &PieceView,
    relaxed: bool,
    target_length: f64,
    best_ratio: &mut f64,
) -> Option<SplitOutcome> {
    let mut candidates: Vec<(f64, u32, u32)> = view
        .boundary_verts
        .par_iter()
        .flat_map_iter(|&src| {
            let dist = chord_dijkstra(view, src, relaxed, None);
            view.boundary_verts
                .iter()
                .filter_map(|&dst| {
                    let d = dist[dst as usize];
                    (dst > src && d.is_finite()).then_some((d, src, dst))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    candidates.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.2.cmp(&b.2))
    });

    let lo = view.total_area / 3.0 - view.max_face_area;
    let mut cached_src = u32::MAX;
    let mut preds: Vec<Option<(u32, u32)>> = Vec::new();
    for &(len, src, dst) in &candidates {
        if cached_src != src {
            preds = vec![None; view.full_adj.len()];
            let _ = chord_dijkstra(view, src, relaxed, Some(&mut preds));
            cached_src = src;
        }
        // reconstruct path
        let mut path = Vec::new();
        let mut at = dst;
        let mut ok = true;
        while at != src {
            match preds[at as usize] {
                Some((p, e)) => {
                    path.push(e);
                    at = p;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        path.reverse();
        if let Some((sides, areas)) = evaluate_split(complex, view, &path) {
            let ratio = areas[0].min(areas[1]) / view.total_area;
            *best_ratio = best_ratio.max(ratio);
            if areas[0].min(areas[1]) >= lo {
                return Some(SplitOutcome {
                    path,
                    length: len,
                    sides,
                    areas,
                    ratio,
                    target_length,
                });
            }
        }
    }
    None
}

/// Face components of the piece after removing the chord edges; `Some` only
/// when the chord splits the piece into exactly two sides.
fn evaluate_split(
    complex: &CutComplex,
    view: &PieceView,
    path: &[u32],
) -> Option<([Vec<bool>; 2], [f64; 2])> {
    let nf = complex.face_count();
    let mut blocked = vec![false; complex.edges.len()];
    for &e in path {
        blocked[e as usize] = true;
    }
    let adj = complex.dual_adjacency();
    let mut comp: Vec<u8> = vec![u8::MAX; nf];
    let mut ncomp = 0u8;
    for f0 in 0..nf {
        if !view.in_piece[f0] || comp[f0] != u8::MAX {
            continue;
        }
        if ncomp >= 2 {
            return None;
        }
        comp[f0] = ncomp;
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            for &(g, e) in &adj[f] {
                let g = g as usize;
                if !view.in_piece[g] || blocked[e as usize] || comp[g] != u8::MAX {
                    continue;
                }
                comp[g] = ncomp;
                stack.push(g);
            }
        }
        ncomp += 1;
    }
    if ncomp != 2 {
        return None;
    }
    let mut sides = [vec![false; nf], vec![false; nf]];
    let mut areas = [0.0f64; 2];
    for f in 0..nf {
        if comp[f] != u8::MAX {
            let s = comp[f] as usize;
            sides[s][f] = true;
            areas[s] += complex.face_areas[f];
        }
    }
    Some((sides, areas))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::subdivide::{cut_to_disc, homology_basis};

    fn torus_disc() -> CutComplex {
        let m = builder::build_flat_torus(8).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        cut_to_disc(&m, &b).unwrap()
    }

    #[test]
    fn splits_the_square_sheet_evenly() {
        let c = torus_disc();
        let piece = vec![true; c.face_count()];
        let out = split_disc(&c, &piece, 0.01).unwrap();
        assert!(out.ratio >= 1.0 / 3.0 - 0.02, "ratio {}", out.ratio);
        let total = c.total_area();
        assert!((out.areas[0] + out.areas[1] - total).abs() < 1e-12);
        // straight chord across the unit sheet
        assert!(out.length <= 1.5, "chord length {}", out.length);
    }

    #[test]
    fn sides_partition_the_piece() {
        let c = torus_disc();
        let piece = vec![true; c.face_count()];
        let out = split_disc(&c, &piece, 0.0).unwrap();
        for f in 0..c.face_count() {
            assert!(out.sides[0][f] ^ out.sides[1][f]);
        }
    }

    #[test]
    fn recursive_split() {
        let c = torus_disc();
        let piece = vec![true; c.face_count()];
        let first = split_disc(&c, &piece, 0.0).unwrap();
        let second = split_disc(&c, &first.sides[0], 0.0).unwrap();
        let a0: f64 = first.areas[0];
        assert!((second.areas[0] + second.areas[1] - a0).abs() < 1e-12);
        assert!(second.ratio >= 1.0 / 3.0 - 0.25, "ratio {}", second.ratio);
    }
}
