//! The certificate chain relating cut length to tree height: arc
//! decompositions of cycles on glued meshes, area predictions for long
//! arcs, the power-gap area bound, and the height-to-length bound.

use super::CyclePath;
use crate::error::{Error, Result};
use crate::mesh::{EdgeId, EdgeTag, FaceId, SurfaceMesh, Variant, VertexId};
use crate::tree::{self, TernaryTree};
use serde::{Deserialize, Serialize};

/// The unnamed constants of the residual terms. Configurable; reported with
/// results, never asserted against measurements.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LowerBoundConstants {
    /// Constant inside the logarithm of the final height bound.
    pub c1: f64,
    /// Residual budget per long arc, in units of `|M| / N(h)`.
    pub slack_per_arc: f64,
}

impl Default for LowerBoundConstants {
    fn default() -> Self {
        Self {
            c1: 1.0,
            slack_per_arc: 1.0,
        }
    }
}

impl LowerBoundConstants {
    pub fn validate(&self) -> Result<()> {
        if self.c1 > 0.0 && self.slack_per_arc > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain("lower-bound constants must be positive".into()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcClass {
    /// Off-tree arc shorter than the threshold.
    Short,
    /// Off-tree arc at least as long as the threshold.
    Long,
    /// Maximal run of tree-chain edges.
    InTree,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Arc {
    pub edges: Vec<EdgeId>,
    pub class: ArcClass,
    pub length: f64,
}

/// Decomposition of a cycle into off-tree arcs and in-tree runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcDecomposition {
    pub arcs: Vec<Arc>,
    /// Number of long off-tree arcs (`m_l`).
    pub long_count: usize,
    /// Number of complete tree-edge chains traversed (`m_s`).
    pub whole_tree_edges: usize,
    /// Total length of the short off-tree arcs (`L_s`).
    pub short_length: f64,
    /// Classification threshold (`E`).
    pub threshold: f64,
}

fn tree_tag(mesh: &SurfaceMesh, e: EdgeId) -> Option<u32> {
    match mesh.edges[e as usize].tag {
        EdgeTag::Tree(k) => Some(k),
        _ => None,
    }
}

/// Classification threshold of the glued variants: the guaranteed minimum
/// separation of interval endpoints (3/4 hyperbolic, the triangle side for
/// the flat cone).
pub fn classification_threshold(mesh: &SurfaceMesh) -> Result<f64> {
    match mesh.meta.variant {
        Variant::Hyperbolic => Ok(crate::hyperbolic::DEFAULT_MIN_CHORD),
        Variant::FlatCone => mesh
            .meta
            .side
            .ok_or_else(|| Error::Domain("flat-cone mesh missing side metadata".into())),
        _ => Err(Error::Domain(
            "arc decomposition needs a glued (tree-tagged) mesh".into(),
        )),
    }
}

/// Split a cycle at its tree-chain intersections and classify the pieces.
pub fn decompose_cycle(
    mesh: &SurfaceMesh,
    tree: &TernaryTree,
    cycle: &CyclePath,
) -> Result<ArcDecomposition> {
    let threshold = classification_threshold(mesh)?;
    let tags = mesh.tree_tags();
    if tags.is_empty() {
        return Err(Error::Domain("mesh has no tree-tagged edges".into()));
    }
    if tags.len() != tree.edge_count() {
        return Err(Error::Domain(format!(
            "mesh has {} tree chains but the tree has {} edges",
            tags.len(),
            tree.edge_count()
        )));
    }
    let chain_len = mesh.meta.resolution as usize;
    let edges = &cycle.edges;
    let mut arcs = Vec::new();
    if edges.is_empty() {
        return Ok(ArcDecomposition {
            arcs,
            long_count: 0,
            whole_tree_edges: 0,
            short_length: 0.0,
            threshold,
        });
    }
    let chain_vertex = {
        let mut cv = vec![false; mesh.vertex_count()];
        for e in &mesh.edges {
            if matches!(e.tag, EdgeTag::Tree(_)) {
                cv[e.u as usize] = true;
                cv[e.v as usize] = true;
            }
        }
        cv
    };
    let n = edges.len();
    let is_tree: Vec<bool> = edges.iter().map(|&e| tree_tag(mesh, e).is_some()).collect();
    let verts = cycle.vertex_sequence(mesh);
    // An arc breaks at position i (between edges i-1 and i) when the kind
    // changes or when two off-tree edges meet at a vertex of the tree: such
    // a touch is a tree crossing and separates two arcs.
    let breaks_at = |i: usize| -> bool {
        let prev = (i + n - 1) % n;
        is_tree[i] != is_tree[prev]
            || (!is_tree[i] && !is_tree[prev] && chain_vertex[verts[i] as usize])
    };
    let start = (0..n).find(|&i| breaks_at(i)).unwrap_or(0);
    let rotated: Vec<EdgeId> = (0..n).map(|i| edges[(start + i) % n]).collect();
    let rkind: Vec<bool> = (0..n).map(|i| is_tree[(start + i) % n]).collect();
    let rbreak: Vec<bool> = (0..n).map(|i| breaks_at((start + i) % n)).collect();

    let mut i = 0;
    let mut long_count = 0;
    let mut whole_tree_edges = 0;
    let mut short_length = 0.0;
    while i < n {
        let kind = rkind[i];
        let mut j = i + 1;
        while j < n && rkind[j] == kind && !rbreak[j] {
            j += 1;
        }
        let run: Vec<EdgeId> = rotated[i..j].to_vec();
        let length: f64 = run.iter().map(|&e| mesh.edges[e as usize].length).sum();
        let class = if kind {
            // count complete chain traversals inside the run
            let mut k = 0;
            while k < run.len() {
                let tag = tree_tag(mesh, run[k]).unwrap();
                let mut l = k;
                while l < run.len() && tree_tag(mesh, run[l]) == Some(tag) {
                    l += 1;
                }
                whole_tree_edges += (l - k) / chain_len;
                k = l;
            }
            ArcClass::InTree
        } else if length >= threshold {
            long_count += 1;
            ArcClass::Long
        } else {
            short_length += length;
            ArcClass::Short
        };
        arcs.push(Arc {
            edges: run,
            class,
            length,
        });
        i = j;
    }
    Ok(ArcDecomposition {
        arcs,
        long_count,
        whole_tree_edges,
        short_length,
        threshold,
    })
}

/// Length lower bound from the decomposition alone: every long arc and every
/// whole chain measures at least the threshold, so
/// `length >= threshold * (m_l + m_s)`.
pub fn decomposition_length_bound(d: &ArcDecomposition) -> f64 {
    d.threshold * (d.long_count + d.whole_tree_edges) as f64
}

/// One side of a separating arc.
#[derive(Debug, Clone, Serialize)]
pub struct SidePrediction {
    pub faces: Vec<FaceId>,
    pub area: f64,
    /// Whole boundary intervals (of the `2 N(h)`) contained in this side.
    pub n_prime: usize,
    /// `|M| * n_prime / (2 N(h))`.
    pub predicted_area: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LongArcPrediction {
    pub sides: [SidePrediction; 2],
    /// `slack_per_arc * |M| / N(h)`.
    pub residual: f64,
}

/// Area prediction for the two regions cut off by a single off-tree arc:
/// proportional to the number of whole boundary intervals each side
/// contains, with an `O(|M|/N)` residual.
pub fn predict_long_arc_area(
    mesh: &SurfaceMesh,
    arc: &Arc,
    constants: &LowerBoundConstants,
) -> Result<LongArcPrediction> {
    constants.validate()?;
    if arc.class == ArcClass::InTree {
        return Err(Error::Domain("arc lies in the tree".into()));
    }
    let tags = mesh.tree_tags();
    if tags.is_empty() {
        return Err(Error::Domain("mesh has no tree-tagged edges".into()));
    }
    let n_edges = tags.len();
    let total = mesh.total_area();

    // Side assignment: flood the dual graph without crossing chain or arc
    // edges; the arc separates the off-tree disc into exactly two regions.
    let mut blocked = vec![false; mesh.edge_count()];
    for (e, edge) in mesh.edges.iter().enumerate() {
        if matches!(edge.tag, EdgeTag::Tree(_)) {
            blocked[e] = true;
        }
    }
    for &e in &arc.edges {
        blocked[e as usize] = true;
    }
    let adj = super::dual_adjacency(mesh);
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
            for &(g, e, _) in &adj[f] {
                if blocked[e as usize] || comp[g as usize] != usize::MAX {
                    continue;
                }
                comp[g as usize] = ncomp;
                stack.push(g as usize);
            }
        }
        ncomp += 1;
    }
    if ncomp != 2 {
        return Err(Error::Domain(format!(
            "arc does not separate the off-tree region (got {ncomp} components)"
        )));
    }

    // Row tracing: each chain has two face rows; a row counts for the side
    // containing all of its faces.
    let inc = mesh.edge_face_incidence();
    let vinc = mesh.vertex_edge_incidence();
    let mut n_prime = [0usize; 2];
    for &tag in &tags {
        let chain = order_chain(mesh, tag)?;
        for row in chain_rows(mesh, &inc, &vinc, &chain)? {
            let sides: Vec<usize> = row.iter().map(|&f| comp[f as usize]).collect();
            if sides.iter().all(|&s| s == sides[0]) {
                n_prime[sides[0]] += 1;
            }
        }
    }

    let mut sides = Vec::with_capacity(2);
    for s in 0..2 {
        let faces: Vec<FaceId> = (0..nf)
            .filter(|&f| comp[f] == s)
            .map(|f| f as FaceId)
            .collect();
        let area: f64 = faces.iter().map(|&f| mesh.faces[f as usize].area).sum();
        sides.push(SidePrediction {
            faces,
            area,
            n_prime: n_prime[s],
            predicted_area: total * n_prime[s] as f64 / (2.0 * n_edges as f64),
        });
    }
    let residual = constants.slack_per_arc * total / n_edges as f64;
    Ok(LongArcPrediction {
        sides: [sides.remove(0), sides.remove(0)],
        residual,
    })
}

/// Order the mesh edges of a tree chain along the path.
pub(crate) fn order_chain(mesh: &SurfaceMesh, tag: u32) -> Result<Vec<EdgeId>> {
    let edges = mesh.tree_chain(tag);
    if edges.is_empty() {
        return Err(Error::Domain(format!("no edges tagged tree:{tag}")));
    }
    if edges.len() == 1 {
        return Ok(edges);
    }
    use std::collections::HashMap;
    let mut at: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    for &e in &edges {
        let edge = &mesh.edges[e as usize];
        at.entry(edge.u).or_default().push(e);
        at.entry(edge.v).or_default().push(e);
    }
    let mut ends: Vec<VertexId> = at
        .iter()
        .filter(|(_, es)| es.len() == 1)
        .map(|(&v, _)| v)
        .collect();
    ends.sort_unstable();
    if ends.len() != 2 {
        return Err(Error::Domain(format!(
            "chain tree:{tag} is not a simple path"
        )));
    }
    let mut ordered = Vec::with_capacity(edges.len());
    let mut v = ends[0];
    let mut prev: Option<EdgeId> = None;
    for _ in 0..edges.len() {
        let e = at[&v]
            .iter()
            .copied()
            .find(|&e| Some(e) != prev)
            .ok_or_else(|| Error::Domain("broken chain".into()))?;
        ordered.push(e);
        v = mesh.edges[e as usize].other(v);
        prev = Some(e);
    }
    Ok(ordered)
}

/// The two face rows along an ordered chain, traced by rotating around the
/// shared vertices.
fn chain_rows(
    mesh: &SurfaceMesh,
    inc: &[Vec<FaceId>],
    vinc: &[Vec<EdgeId>],
    chain: &[EdgeId],
) -> Result<Vec<Vec<FaceId>>> {
    let first = chain[0];
    let fs = &inc[first as usize];
    if fs.len() != 2 {
        return Err(Error::Validation("chain edge without two faces".into()));
    }
    let mut rows = Vec::with_capacity(2);
    for &start_face in fs.iter() {
        let mut row = vec![start_face];
        let mut face = start_face;
        for w in 0..chain.len() - 1 {
            let e = chain[w];
            let next_e = chain[w + 1];
            // shared vertex
            let ea = &mesh.edges[e as usize];
            let eb = &mesh.edges[next_e as usize];
            let v = if eb.touches(ea.u) { ea.u } else { ea.v };
            face = rotate_to(mesh, inc, vinc, v, e, face, next_e)?;
            row.push(face);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Rotate around vertex `v` starting from (edge, face) until reaching
/// `target` edge; returns the face adjacent to `target` on the same side.
fn rotate_to(
    mesh: &SurfaceMesh,
    inc: &[Vec<FaceId>],
    vinc: &[Vec<EdgeId>],
    v: VertexId,
    start_edge: EdgeId,
    start_face: FaceId,
    target: EdgeId,
) -> Result<FaceId> {
    let mut e = start_edge;
    let mut f = start_face;
    for _ in 0..=vinc[v as usize].len() {
        // the other edge of f at v
        let next_e = mesh.faces[f as usize]
            .edges
            .iter()
            .copied()
            .find(|&x| x != e && mesh.edges[x as usize].touches(v))
            .ok_or_else(|| Error::Validation("face missing second edge at vertex".into()))?;
        if next_e == target {
            return Ok(f);
        }
        let fs = &inc[next_e as usize];
        if fs.len() != 2 {
            return Err(Error::Validation("edge without two faces".into()));
        }
        f = if fs[0] == f { fs[1] } else { fs[0] };
        e = next_e;
    }
    Err(Error::Validation(
        "rotation around vertex did not close".into(),
    ))
}

/// Minimum possible deviation of a sum of `m_prime` signed subtree sizes
/// from half the total area:
/// `(3/2) * ((3^(h - m_prime) - 1)/2) * M_area / N(h)`.
pub fn area_gap_bound(h: u32, m_prime: u32, m_area: f64) -> Result<f64> {
    if m_prime == 0 || m_prime >= h {
        return Err(Error::Domain(format!(
            "need 0 < m_prime < h, got m_prime={m_prime}, h={h}"
        )));
    }
    let n_h = tree::edge_count(h) as f64;
    let gap = (3f64.powi((h - m_prime) as i32) - 1.0) / 2.0;
    Ok(1.5 * gap * m_area / n_h)
}

/// The length `L0` every balanced cycle must reach at height `h`, with the
/// configured constants: the unique root of
/// `(8/3) L + log3(c1 (L + 1)) = h`, clamped at zero.
pub fn cut_length_bound(h: u32, constants: &LowerBoundConstants) -> f64 {
    let c1 = constants.c1;
    let g = |l: f64| (8.0 / 3.0) * l + (c1 * (l + 1.0)).ln() / 3f64.ln() - h as f64;
    if g(0.0) >= 0.0 {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return hi;
        }
    }
    while hi - lo > 1e-9 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{self, BuildConfig};
    use crate::cuts::{self, CyclePath};
    use crate::tree::build_tree;

    fn glued(h: u32, r: u32) -> SurfaceMesh {
        builder::build_glued_sphere(&BuildConfig::hyperbolic(h, r)).unwrap()
    }

    #[test]
    fn interior_cycle_is_single_arc() {
        let m = glued(1, 8);
        let t = build_tree(1).unwrap();
        let cycles = cuts::sample_interior_cycles(&m, 3, 5).unwrap();
        for c in &cycles {
            let d = decompose_cycle(&m, &t, c).unwrap();
            assert_eq!(d.arcs.len(), 1, "cycle off the tree is one arc");
            assert_eq!(d.whole_tree_edges, 0);
            assert!(d.long_count <= 1);
        }
    }

    #[test]
    fn traced_chains_count_as_whole_edges() {
        // walk two whole chains of the tree, return through the disc
        let m = glued(2, 4);
        let t = build_tree(2).unwrap();
        let tags = m.tree_tags();
        // find two chains sharing a vertex, orient them into a path
        let chain_a = order_chain(&m, tags[0]).unwrap();
        let (mut path, mut at) = {
            let e0 = &m.edges[chain_a[0] as usize];
            let e1 = &m.edges[chain_a[1] as usize];
            let start = if e1.touches(e0.u) { e0.v } else { e0.u };
            (Vec::new(), start)
        };
        let start = at;
        for &e in &chain_a {
            path.push(e);
            at = m.edges[e as usize].other(at);
        }
        // a second chain continuing from `at`
        let next_tag = tags
            .iter()
            .copied()
            .find(|&tag| {
                tag != tags[0]
                    && m.tree_chain(tag)
                        .iter()
                        .any(|&e| m.edges[e as usize].touches(at))
            })
            .expect("adjacent chain");
        let chain_b = order_chain(&m, next_tag).unwrap();
        let mut b_edges = chain_b.clone();
        // orient chain_b to start at `at`
        let b_first = &m.edges[b_edges[0] as usize];
        if !b_first.touches(at) {
            b_edges.reverse();
        }
        for &e in &b_edges {
            path.push(e);
            at = m.edges[e as usize].other(at);
        }
        // close through the disc from `at` back to `start`
        let on_chain: Vec<bool> = m
            .edges
            .iter()
            .map(|e| matches!(e.tag, EdgeTag::Tree(_)))
            .collect();
        let graph = crate::metric::MeshGraph::new(&m);
        // plain Dijkstra over off-tree edges
        let mut dist = vec![f64::INFINITY; m.vertex_count()];
        let mut pred: Vec<Option<(u32, u32)>> = vec![None; m.vertex_count()];
        let mut heap = std::collections::BinaryHeap::new();
        #[derive(PartialEq)]
        struct It(f64, u32);
        impl Eq for It {}
        impl Ord for It {
            fn cmp(&self, o: &Self) -> std::cmp::Ordering {
                o.0.total_cmp(&self.0)
            }
        }
        impl PartialOrd for It {
            fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(o))
            }
        }
        dist[at as usize] = 0.0;
        heap.push(It(0.0, at));
        while let Some(It(d, v)) = heap.pop() {
            if d > dist[v as usize] {
                continue;
            }
            for &(w, e, len) in &graph.adj[v as usize] {
                if on_chain[e as usize] {
                    continue;
                }
                if d + len < dist[w as usize] {
                    dist[w as usize] = d + len;
                    pred[w as usize] = Some((v, e));
                    heap.push(It(d + len, w));
                }
            }
        }
        let mut back = Vec::new();
        let mut cur = start;
        while cur != at {
            let (p, e) = pred[cur as usize].unwrap();
            back.push(e);
            cur = p;
        }
        back.reverse();
        path.extend(back);
        let cycle = CyclePath::from_edges(&m, path).unwrap();
        let d = decompose_cycle(&m, &t, &cycle).unwrap();
        assert_eq!(d.whole_tree_edges, 2, "two whole chains traced");
        // Eq. (3): length >= threshold * (m_l + m_s), exactly by construction
        assert!(cycle.length >= decomposition_length_bound(&d) - 1e-12);
    }

    #[test]
    fn decompose_needs_tags() {
        let m = builder::build_round_sphere(4).unwrap();
        let t = build_tree(1).unwrap();
        let edges = m.faces[0].edges.to_vec();
        let c = CyclePath::from_edges(&m, edges).unwrap();
        assert!(decompose_cycle(&m, &t, &c).is_err());
    }

    #[test]
    fn short_arc_prediction_is_zero() {
        // an arc hugging the boundary cuts off no whole interval
        let m = glued(2, 4);
        let arcs = cuts::sample_short_arcs(&m, 10).unwrap();
        let constants = LowerBoundConstants::default();
        for arc in &arcs {
            let p = predict_long_arc_area(&m, arc, &constants).unwrap();
            let small = if p.sides[0].area <= p.sides[1].area { 0 } else { 1 };
            assert_eq!(p.sides[small].n_prime, 0);
            assert_eq!(p.sides[small].predicted_area, 0.0);
            assert!(p.sides[small].area <= p.residual * 4.0);
        }
    }

    #[test]
    fn long_arc_predictions_match_measured_areas() {
        let m = glued(2, 4);
        let t = build_tree(2).unwrap();
        let total = m.total_area();
        let n = crate::tree::edge_count(2) as f64;
        let cut = cuts::find_balanced_cut(&m, 0.05 * total, 30_000, 11).unwrap();
        let constants = LowerBoundConstants {
            c1: 1.0,
            slack_per_arc: 4.0,
        };
        let mut checked = 0;
        for cycle in &cut.cycles {
            let d = decompose_cycle(&m, &t, cycle).unwrap();
            for arc in d.arcs.iter().filter(|a| a.class == ArcClass::Long) {
                let Ok(p) = predict_long_arc_area(&m, arc, &constants) else {
                    continue; // non-simple arcs may fail to separate
                };
                for side in &p.sides {
                    assert!(
                        (side.area - side.predicted_area).abs() <= p.residual,
                        "side area {} vs predicted {} (residual {})",
                        side.area,
                        side.predicted_area,
                        p.residual
                    );
                }
                // partition: predictions of the two sides sum to |M| within
                // two residual budgets
                let sum = p.sides[0].predicted_area + p.sides[1].predicted_area;
                assert!((sum - total).abs() <= 2.0 * total / n * 2.0);
                checked += 1;
            }
        }
        assert!(checked > 0, "cut produced no separating long arcs");
    }

    #[test]
    fn gap_bound_examples() {
        // h=5, m'=2: (3/2) * 13 * |M| / 363, with 13 = the exact power-sum
        // gap minimum for (p=3, N=5, m=2) and 363 = N(5)
        let gap = crate::powergap::power_gap_min(&crate::powergap::PowerGapQuery::new(3, 5, 2))
            .unwrap();
        assert_eq!(gap.min_value, num_bigint::BigInt::from(13));
        assert_eq!(crate::tree::edge_count(5), 363);
        let b = area_gap_bound(5, 2, 1.0).unwrap();
        assert!((b - 1.5 * 13.0 / 363.0).abs() < 1e-15);
        // m' = h-1: (3/2) * 1 * |M| / N(h)
        let b = area_gap_bound(5, 4, 2.0).unwrap();
        assert!((b - 1.5 * 2.0 / 363.0).abs() < 1e-15);
    }

    #[test]
    fn gap_bound_monotone_in_m_prime() {
        let mut prev = f64::INFINITY;
        for m in 1..6 {
            let b = area_gap_bound(6, m, 1.0).unwrap();
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn gap_bound_domain() {
        assert!(area_gap_bound(5, 0, 1.0).is_err());
        assert!(area_gap_bound(5, 5, 1.0).is_err());
        assert!(area_gap_bound(5, 7, 1.0).is_err());
    }

    #[test]
    fn length_bound_example() {
        let l0 = cut_length_bound(9, &LowerBoundConstants::default());
        assert!((l0 - 2.9096).abs() < 0.001, "got {l0}");
        // the returned value satisfies the defining equation
        let g = (8.0 / 3.0) * l0 + (l0 + 1.0).ln() / 3f64.ln();
        assert!((g - 9.0).abs() < 1e-6);
    }

    #[test]
    fn length_bound_monotone_in_h() {
        let c = LowerBoundConstants::default();
        let mut prev = -1.0;
        for h in 1..=12 {
            let l = cut_length_bound(h, &c);
            assert!(l > prev);
            prev = l;
        }
    }

    #[test]
    fn length_bound_decreases_in_c1() {
        let mut prev = f64::INFINITY;
        for c1 in [0.5, 1.0, 10.0, 1e6, 1e12] {
            let l = cut_length_bound(9, &LowerBoundConstants { c1, slack_per_arc: 1.0 });
            assert!(l <= prev);
            prev = l;
        }
        let huge = cut_length_bound(
            1,
            &LowerBoundConstants {
                c1: 1e30,
                slack_per_arc: 1.0,
            },
        );
        assert_eq!(huge, 0.0, "floor at zero");
    }
}
