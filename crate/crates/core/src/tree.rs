//! Ternary tree combinatorics.
//!
//! A ternary tree of height 0 is a single vertex; the tree of height `h` is
//! obtained from the tree of height `h-1` by attaching three new edges to
//! every vertex with fewer than three incident edges. Every internal vertex
//! therefore has exactly three children and the edge count is
//! `N(h) = (3/2)(3^h - 1)`.
//!
//! The closed Euler tour visits each edge twice; reading the tour as the
//! cyclic sequence of `2 N(h)` directed traversals defines the pairing used
//! to glue the boundary of a disc onto the tree.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// `N(h) = (3/2)(3^h - 1)`, the number of edges of the height-`h` tree.
pub fn edge_count(h: u32) -> u64 {
    (3u64.pow(h) - 1) / 2 * 3
}

#[derive(Debug, Clone)]
pub struct TernaryTree {
    height: u32,
    /// Per vertex: parent vertex and the edge to it (`None` for the root).
    parent: Vec<Option<(VertexId, EdgeId)>>,
    /// Per vertex: children in ascending id order.
    children: Vec<Vec<VertexId>>,
    /// Per edge: (parent vertex, child vertex).
    edges: Vec<(VertexId, VertexId)>,
    depth: Vec<u32>,
}

impl TernaryTree {
    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn root(&self) -> VertexId {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// (parent vertex, child vertex) of an edge.
    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn parent(&self, v: VertexId) -> Option<(VertexId, EdgeId)> {
        self.parent[v]
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v].is_empty()
    }

    /// Edge ids in ascending order.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edges.len()
    }

    /// Whether two distinct edges share a vertex.
    pub fn edges_adjacent(&self, a: EdgeId, b: EdgeId) -> bool {
        let (pa, ca) = self.edges[a];
        let (pb, cb) = self.edges[b];
        pa == pb || pa == cb || ca == pb || ca == cb
    }
}

/// Build the ternary tree of height `h` with breadth-first vertex ids
/// (root = 0, children in id order).
pub fn build_tree(h: u32) -> Result<TernaryTree> {
    // Edge counts grow as 3^h; keep desk-scale heights addressable.
    if h > 16 {
        return Err(Error::Domain(format!("tree height {h} too large")));
    }
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None];
    let mut children: Vec<Vec<VertexId>> = vec![Vec::new()];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut depth = vec![0u32];
    let mut frontier = vec![0usize];
    for d in 1..=h {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for &v in &frontier {
            for _ in 0..3 {
                let c = parent.len();
                let e = edges.len();
                parent.push(Some((v, e)));
                children.push(Vec::new());
                children[v].push(c);
                edges.push((v, c));
                depth.push(d);
                next.push(c);
            }
        }
        frontier = next;
    }
    Ok(TernaryTree {
        height: h,
        parent,
        children,
        edges,
        depth,
    })
}

/// One directed traversal of a tree edge inside the Euler tour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TourStep {
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
}

impl TourStep {
    /// Directed away from the root.
    pub fn descending(&self, tree: &TernaryTree) -> bool {
        tree.edge(self.edge).0 == self.from
    }
}

/// Closed depth-first tour of the tree: `2 N(h)` steps, each edge traversed
/// once in each direction, children visited in ascending id order.
#[derive(Debug, Clone)]
pub struct EulerTour {
    steps: Vec<TourStep>,
    pairing: Vec<usize>,
}

impl EulerTour {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[TourStep] {
        &self.steps
    }

    pub fn step(&self, i: usize) -> TourStep {
        self.steps[i]
    }

    /// The index of the other traversal of the same edge. An involution
    /// without fixed points.
    pub fn pair(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }
}

pub fn euler_tour(tree: &TernaryTree) -> Result<EulerTour> {
    if tree.height() == 0 {
        return Err(Error::Domain(
            "height-0 tree has no edges; the tour is empty".into(),
        ));
    }
    let mut steps = Vec::with_capacity(2 * tree.edge_count());
    // Iterative DFS from the root, children ascending.
    let mut stack: Vec<(VertexId, usize)> = vec![(tree.root(), 0)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if *next < tree.children(v).len() {
            let c = tree.children(v)[*next];
            *next += 1;
            let e = tree.parent(c).expect("child has parent").1;
            steps.push(TourStep {
                edge: e,
                from: v,
                to: c,
            });
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                let e = tree.parent(v).expect("non-root").1;
                steps.push(TourStep {
                    edge: e,
                    from: v,
                    to: p,
                });
            }
        }
    }
    debug_assert_eq!(steps.len(), 2 * tree.edge_count());
    let mut first_seen: Vec<Option<usize>> = vec![None; tree.edge_count()];
    let mut pairing = vec![usize::MAX; steps.len()];
    for (i, s) in steps.iter().enumerate() {
        match first_seen[s.edge] {
            None => first_seen[s.edge] = Some(i),
            Some(j) => {
                pairing[i] = j;
                pairing[j] = i;
            }
        }
    }
    debug_assert!(pairing.iter().all(|&p| p != usize::MAX));
    Ok(EulerTour { steps, pairing })
}

/// Number of edges strictly below the child endpoint of `edge`, counted by
/// traversal.
pub fn subtree_edge_count(tree: &TernaryTree, edge: EdgeId) -> usize {
    let (_, child) = tree.edge(edge);
    let mut count = 0;
    let mut stack = vec![child];
    while let Some(v) = stack.pop() {
        for &c in tree.children(v) {
            count += 1;
            stack.push(c);
        }
    }
    count
}

/// A point on the tree: an edge id and an offset in [0, 1] measured from the
/// parent endpoint. Vertices are canonicalized to offset 1 on their parent
/// edge (the root to offset 0 on its smallest child edge).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreePoint {
    pub edge: EdgeId,
    pub offset: f64,
}

impl TreePoint {
    pub fn new(edge: EdgeId, offset: f64) -> Self {
        Self { edge, offset }
    }

    pub fn canonical(self, tree: &TernaryTree) -> Self {
        if self.offset <= 0.0 {
            let (p, _) = tree.edge(self.edge);
            return vertex_point(tree, p);
        }
        if self.offset >= 1.0 {
            let (_, c) = tree.edge(self.edge);
            return vertex_point(tree, c);
        }
        self
    }
}

/// The canonical point at a vertex.
pub fn vertex_point(tree: &TernaryTree, v: VertexId) -> TreePoint {
    match tree.parent(v) {
        Some((_, e)) => TreePoint { edge: e, offset: 1.0 },
        None => TreePoint {
            edge: tree
                .parent(tree.children(v)[0])
                .expect("root child edge")
                .1,
            offset: 0.0,
        },
    }
}

/// Ancestor of `v` at depth `d` (requires `d <= depth(v)`).
fn ancestor_at(tree: &TernaryTree, mut v: VertexId, d: u32) -> VertexId {
    while tree.depth(v) > d {
        v = tree.parent(v).expect("above root").0;
    }
    v
}

fn lca(tree: &TernaryTree, mut u: VertexId, mut v: VertexId) -> VertexId {
    let d = tree.depth(u).min(tree.depth(v));
    u = ancestor_at(tree, u, d);
    v = ancestor_at(tree, v, d);
    while u != v {
        u = tree.parent(u).expect("lca above root").0;
        v = tree.parent(v).expect("lca above root").0;
    }
    u
}

/// Edges of the vertex path from `u` to `v`.
fn vertex_path_edges(tree: &TernaryTree, u: VertexId, v: VertexId) -> Vec<EdgeId> {
    let w = lca(tree, u, v);
    let mut up = Vec::new();
    let mut x = u;
    while x != w {
        let (p, e) = tree.parent(x).expect("path above root");
        up.push(e);
        x = p;
    }
    let mut down = Vec::new();
    let mut y = v;
    while y != w {
        let (p, e) = tree.parent(y).expect("path above root");
        down.push(e);
        y = p;
    }
    down.reverse();
    up.extend(down);
    up
}

/// Is vertex `v` contained in the subtree rooted at `s` (including `s`)?
fn vertex_below(tree: &TernaryTree, v: VertexId, s: VertexId) -> bool {
    tree.depth(v) >= tree.depth(s) && ancestor_at(tree, v, tree.depth(s)) == s
}

/// Anchor vertex of a point: for an interior point, the endpoint of its edge
/// on the side of `toward`; vertices anchor to themselves.
fn anchor(tree: &TernaryTree, p: TreePoint, toward: VertexId) -> VertexId {
    let (pv, cv) = tree.edge(p.edge);
    if p.offset >= 1.0 {
        cv
    } else if p.offset <= 0.0 {
        pv
    } else if vertex_below(tree, toward, cv) {
        cv
    } else {
        pv
    }
}

/// The unique simple path between two points of the tree.
///
/// Returns the whole edges traversed (in order from `a` to `b`) and their
/// count `k`; partial traversals of the endpoint edges are not included.
pub fn tree_path(tree: &TernaryTree, a: TreePoint, b: TreePoint) -> (Vec<EdgeId>, usize) {
    let a = a.canonical(tree);
    let b = b.canonical(tree);
    if a.edge == b.edge {
        return (Vec::new(), 0);
    }
    let (_, cb) = tree.edge(b.edge);
    let u = anchor(tree, a, cb);
    let (_, ca) = tree.edge(a.edge);
    let v = anchor(tree, b, ca);
    let path = vertex_path_edges(tree, u, v);
    let k = path.len();
    (path, k)
}

/// Fractional length of the path between two points, in edge units.
///
/// Equals `depth(a) + depth(b) - 2 * depth(m)` where `m` is the deepest
/// common point of the two root paths (a fractional point when one endpoint
/// edge lies on the other point's root path).
pub fn tree_path_units(tree: &TernaryTree, a: TreePoint, b: TreePoint) -> f64 {
    let a = a.canonical(tree);
    let b = b.canonical(tree);
    if a.edge == b.edge {
        return (a.offset - b.offset).abs();
    }
    // Last whole vertex of a point's root path, and whether a partial edge
    // segment follows it.
    let last_vertex = |p: TreePoint| -> (VertexId, bool) {
        let (pv, cv) = tree.edge(p.edge);
        if p.offset >= 1.0 {
            (cv, false)
        } else if p.offset <= 0.0 {
            (pv, false)
        } else {
            (pv, true)
        }
    };
    let point_depth = |p: TreePoint| {
        let (pv, _) = tree.edge(p.edge);
        tree.depth(pv) as f64 + p.offset
    };
    let (va, partial_a) = last_vertex(a);
    let (vb, partial_b) = last_vertex(b);
    let da = point_depth(a);
    let db = point_depth(b);
    let w = lca(tree, va, vb);
    let meet = if w == va && w == vb {
        tree.depth(w) as f64
    } else if w == va {
        // b's root path continues below w; it runs through a's partial edge
        // exactly when its next vertex is a's edge child.
        let (_, ca) = tree.edge(a.edge);
        if !partial_a || ancestor_at(tree, vb, tree.depth(w) + 1) == ca {
            da
        } else {
            tree.depth(w) as f64
        }
    } else if w == vb {
        let (_, cb) = tree.edge(b.edge);
        if !partial_b || ancestor_at(tree, va, tree.depth(w) + 1) == cb {
            db
        } else {
            tree.depth(w) as f64
        }
    } else {
        tree.depth(w) as f64
    };
    da + db - 2.0 * meet
}
