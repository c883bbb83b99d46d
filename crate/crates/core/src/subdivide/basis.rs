//! Greedy shortest homology basis through a base point.
//!
//! Candidates are the tree loops of a shortest-path tree at the base point:
//! for every non-tree edge (u, v), the loop walks base -> u, crosses the
//! edge, and returns v -> base. Loops are selected shortest-first, keeping
//! those whose Z2 class is independent of the classes already chosen.
//! Classes are read off as crossing parities against the dual loops of a
//! tree-cotree decomposition, which form a complete signature over Z2.

use crate::cuts::CyclePath;
use crate::error::{Error, Result};
use crate::mesh::{EdgeId, SurfaceMesh, VertexId};
use crate::metric::MeshGraph;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub basepoint: VertexId,
    pub loops: Vec<CyclePath>,
    pub lengths: Vec<f64>,
    pub rank: usize,
}

impl HomologyBasis {
    /// Union of the Z2 supports of all loops: the subgraph the surface is
    /// cut along.
    pub fn cut_edge_set(&self) -> Vec<EdgeId> {
        let mut all: Vec<EdgeId> = self
            .loops
            .iter()
            .flat_map(|l| l.z2_support())
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

struct SpTree {
    dist: Vec<f64>,
    pred: Vec<Option<(VertexId, EdgeId)>>,
    in_tree: Vec<bool>,
}

fn shortest_path_tree(mesh: &SurfaceMesh, root: VertexId) -> Result<SpTree> {
    let graph = MeshGraph::new(mesh);
    let n = graph.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut heap = BinaryHeap::new();

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

    dist[root as usize] = 0.0;
    heap.push(Item(0.0, root));
    while let Some(Item(d, v)) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for &(w, e, len) in &graph.adj[v as usize] {
            let nd = d + len;
            let cur = dist[w as usize];
            if nd < cur {
                dist[w as usize] = nd;
                pred[w as usize] = Some((v, e));
                heap.push(Item(nd, w));
            } else if nd == cur {
                if let Some((pv, _)) = pred[w as usize] {
                    if v < pv {
                        pred[w as usize] = Some((v, e));
                    }
                }
            }
        }
    }
    if dist.iter().any(|d| !d.is_finite()) {
        return Err(Error::Disconnected);
    }
    let mut in_tree = vec![false; mesh.edge_count()];
    for p in pred.iter().flatten() {
        in_tree[p.1 as usize] = true;
    }
    Ok(SpTree {
        dist,
        pred,
        in_tree,
    })
}

/// Z2 support of the tree loop of edge `e`: the symmetric difference of the
/// two root paths plus `e` itself.
fn loop_support(sp: &SpTree, mesh: &SurfaceMesh, e: EdgeId, scratch: &mut Vec<u8>) -> Vec<EdgeId> {
    let edge = &mesh.edges[e as usize];
    let mut toggled = vec![e];
    scratch[e as usize] ^= 1;
    for mut v in [edge.u, edge.v] {
        while let Some((p, pe)) = sp.pred[v as usize] {
            scratch[pe as usize] ^= 1;
            toggled.push(pe);
            v = p;
        }
    }
    toggled.sort_unstable();
    toggled.dedup();
    let mut support = Vec::new();
    for &t in &toggled {
        if scratch[t as usize] == 1 {
            support.push(t);
        }
        scratch[t as usize] = 0;
    }
    support
}

/// The full walk of the tree loop (base -> u, e, v -> base); edges may
/// repeat twice where the two root paths share a prefix.
fn loop_walk(sp: &SpTree, mesh: &SurfaceMesh, e: EdgeId) -> Vec<EdgeId> {
    let edge = &mesh.edges[e as usize];
    let mut down = Vec::new();
    let mut v = edge.u;
    while let Some((p, pe)) = sp.pred[v as usize] {
        down.push(pe);
        v = p;
    }
    down.reverse();
    down.push(e);
    let mut v = edge.v;
    while let Some((p, pe)) = sp.pred[v as usize] {
        down.push(pe);
        v = p;
    }
    down
}

/// Crossing sets of the dual loops of a tree-cotree decomposition: one per
/// leftover edge; a cycle's Z2 class is the vector of crossing parities.
fn dual_loop_crossings(mesh: &SurfaceMesh, in_vtree: &[bool]) -> Result<Vec<Vec<bool>>> {
    let nf = mesh.face_count();
    let adj = {
        let mut adj = vec![Vec::new(); nf];
        for (a, b, e) in mesh.dual_edges() {
            adj[a as usize].push((b as usize, e));
            adj[b as usize].push((a as usize, e));
        }
        adj
    };
    // dual spanning tree over edges not in the vertex tree
    let mut pred: Vec<Option<(usize, EdgeId)>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut in_ftree = vec![false; mesh.edge_count()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for &(g, e) in &adj[f] {
            if seen[g] || in_vtree[e as usize] {
                continue;
            }
            seen[g] = true;
            pred[g] = Some((f, e));
            in_ftree[e as usize] = true;
            queue.push_back(g);
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::Validation(
            "dual graph disconnected off the vertex tree".into(),
        ));
    }
    let leftovers: Vec<EdgeId> = (0..mesh.edge_count() as EdgeId)
        .filter(|&e| !in_vtree[e as usize] && !in_ftree[e as usize])
        .collect();
    let mut crossings = Vec::with_capacity(leftovers.len());
    let depth = {
        let mut d = vec![0usize; nf];
        // BFS order guarantees predecessors resolved
        let mut order: Vec<usize> = (0..nf).collect();
        order.sort_by_key(|&f| {
            let mut k = 0;
            let mut x = f;
            while let Some((p, _)) = pred[x] {
                k += 1;
                x = p;
            }
            k
        });
        for f in order {
            if let Some((p, _)) = pred[f] {
                d[f] = d[p] + 1;
            }
        }
        d
    };
    let inc = mesh.edge_face_incidence();
    for &l in &leftovers {
        let mut cross = vec![false; mesh.edge_count()];
        cross[l as usize] = true;
        let fs = &inc[l as usize];
        let (mut a, mut b) = (fs[0] as usize, fs[1] as usize);
        while depth[a] > depth[b] {
            let (p, e) = pred[a].unwrap();
            cross[e as usize] = !cross[e as usize];
            a = p;
        }
        while depth[b] > depth[a] {
            let (p, e) = pred[b].unwrap();
            cross[e as usize] = !cross[e as usize];
            b = p;
        }
        while a != b {
            let (pa, ea) = pred[a].unwrap();
            let (pb, eb) = pred[b].unwrap();
            cross[ea as usize] = !cross[ea as usize];
            cross[eb as usize] = !cross[eb as usize];
            a = pa;
            b = pb;
        }
        crossings.push(cross);
    }
    Ok(crossings)
}

fn signature(support: &[EdgeId], crossings: &[Vec<bool>]) -> u64 {
    let mut sig = 0u64;
    for (i, cross) in crossings.iter().enumerate() {
        let parity = support
            .iter()
            .filter(|&&e| cross[e as usize])
            .count()
            % 2;
        if parity == 1 {
            sig |= 1 << i;
        }
    }
    sig
}

/// Greedy shortest basis of `H_1(M; Z2)` through `basepoint`.
///
/// A sphere yields an empty basis. Loop lengths satisfy `<= 2 d` up to mesh
/// slack (reported through the `lengths` field, checked in tests).
pub fn homology_basis(mesh: &SurfaceMesh, basepoint: VertexId) -> Result<HomologyBasis> {
    let expected_rank = (2 - mesh.euler_characteristic()).max(0) as usize;
    if expected_rank > 64 {
        return Err(Error::Domain("genus too large for signature words".into()));
    }
    if expected_rank == 0 {
        return Ok(HomologyBasis {
            basepoint,
            loops: Vec::new(),
            lengths: Vec::new(),
            rank: 0,
        });
    }
    let sp = shortest_path_tree(mesh, basepoint)?;
    let crossings = dual_loop_crossings(mesh, &sp.in_tree)?;
    if crossings.len() != expected_rank {
        return Err(Error::Validation(format!(
            "tree-cotree leftover count {} does not match rank {}",
            crossings.len(),
            expected_rank
        )));
    }

    // candidates sorted by (loop length, edge id)
    let mut candidates: Vec<(f64, EdgeId)> = (0..mesh.edge_count() as EdgeId)
        .filter(|&e| !sp.in_tree[e as usize])
        .map(|e| {
            let edge = &mesh.edges[e as usize];
            let len = sp.dist[edge.u as usize] + edge.length + sp.dist[edge.v as usize];
            (len, e)
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut scratch = vec![0u8; mesh.edge_count()];
    let mut gf2_basis: Vec<u64> = Vec::new();
    let mut loops = Vec::new();
    let mut lengths = Vec::new();
    for (len, e) in candidates {
        if gf2_basis.len() == expected_rank {
            break;
        }
        let support = loop_support(&sp, mesh, e, &mut scratch);
        let mut sig = signature(&support, &crossings);
        for &row in &gf2_basis {
            let low = row & row.wrapping_neg();
            if sig & low != 0 {
                sig ^= row;
            }
        }
        if sig == 0 {
            continue;
        }
        gf2_basis.push(sig);
        let walk = loop_walk(&sp, mesh, e);
        loops.push(CyclePath::from_edges(mesh, walk)?);
        lengths.push(len);
    }
    if gf2_basis.len() != expected_rank {
        return Err(Error::Validation(format!(
            "greedy basis reached rank {} of {}",
            gf2_basis.len(),
            expected_rank
        )));
    }
    Ok(HomologyBasis {
        basepoint,
        loops,
        lengths,
        rank: expected_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::metric;

    #[test]
    fn sphere_has_empty_basis() {
        let m = builder::build_round_sphere(4).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        assert_eq!(b.rank, 0);
        assert!(b.loops.is_empty());
    }

    #[test]
    fn torus_rank_two_and_systole() {
        let m = builder::build_flat_torus(8).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        assert_eq!(b.rank, 2);
        // shortest loop within 5% of the grid systole (side length 1)
        assert!(
            (b.lengths[0] - 1.0).abs() <= 0.05,
            "systole loop length {}",
            b.lengths[0]
        );
        for l in &b.loops {
            // every loop passes through the basepoint
            let touches: bool = l.edges.iter().any(|&e| m.edges[e as usize].touches(0));
            assert!(touches);
        }
    }

    #[test]
    fn genus_two_rank_four() {
        let m = builder::build_genus_g(2, 4).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        assert_eq!(b.rank, 4);
    }

    #[test]
    fn loop_lengths_bounded_by_twice_diameter() {
        let m = builder::build_flat_torus(6).unwrap();
        let d = metric::diameter(&m).unwrap().diameter;
        let b = homology_basis(&m, 0).unwrap();
        for &len in &b.lengths {
            assert!(len <= 2.0 * d + 1e-9, "loop {len} vs 2d {}", 2.0 * d);
        }
    }

    #[test]
    fn adding_any_candidate_keeps_rank() {
        // the basis spans: every non-tree edge loop has dependent signature
        let m = builder::build_flat_torus(4).unwrap();
        let b = homology_basis(&m, 0).unwrap();
        let sp = shortest_path_tree(&m, 0).unwrap();
        let crossings = dual_loop_crossings(&m, &sp.in_tree).unwrap();
        let mut rows: Vec<u64> = b
            .loops
            .iter()
            .map(|l| signature(&l.z2_support(), &crossings))
            .collect();
        // eliminate
        let mut reduced: Vec<u64> = Vec::new();
        for mut r in rows.drain(..) {
            for &x in &reduced {
                let low = x & x.wrapping_neg();
                if r & low != 0 {
                    r ^= x;
                }
            }
            assert_ne!(r, 0, "basis rows independent");
            reduced.push(r);
        }
        let mut scratch = vec![0u8; m.edge_count()];
        for e in 0..m.edge_count() as u32 {
            if sp.in_tree[e as usize] {
                continue;
            }
            let sup = loop_support(&sp, &m, e, &mut scratch);
            let mut sig = signature(&sup, &crossings);
            for &x in &reduced {
                let low = x & x.wrapping_neg();
                if sig & low != 0 {
                    sig ^= x;
                }
            }
            assert_eq!(sig, 0, "candidate {e} would extend the basis");
        }
    }
}
