//! Seeded multi-restart local search for minimum-length balanced cuts.
//!
//! Each restart grows a two-seed partition (both sides connected by
//! construction), anneals single-face flips under a Lagrangian balance
//! penalty, then polishes with greedy descent and a Kernighan–Lin style
//! pass with prefix rollback. Flips that would disconnect a side are
//! rejected, so every visited state is a valid cut. Restarts are seeded
//! independently and reduced deterministically.

use super::CutResult;
use crate::error::{Error, Result};
use crate::mesh::SurfaceMesh;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub restarts: usize,
    /// Attempted annealing moves per restart.
    pub budget: usize,
    pub seed: u64,
}

impl SearchOptions {
    pub fn new(seed: u64, budget: usize) -> Self {
        Self {
            restarts: 16,
            budget,
            seed,
        }
    }
}

/// Best balanced cut found within the budget.
///
/// Reproducible: the result depends only on the mesh, tolerance and options,
/// never on thread scheduling. When no restart reaches the balance
/// tolerance the error carries the least-unbalanced state seen.
pub fn find_balanced_cut(
    mesh: &SurfaceMesh,
    balance_tol: f64,
    budget: usize,
    seed: u64,
) -> Result<CutResult> {
    find_balanced_cut_with(mesh, balance_tol, SearchOptions::new(seed, budget))
}

pub fn find_balanced_cut_with(
    mesh: &SurfaceMesh,
    balance_tol: f64,
    opts: SearchOptions,
) -> Result<CutResult> {
    let n = mesh.face_count();
    if n < 2 {
        return Err(Error::Infeasible("need at least two faces".into()));
    }
    let ctx = Context::new(mesh, balance_tol);
    let outcomes: Vec<Outcome> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| restart(&ctx, opts.seed.wrapping_add(r as u64), opts.budget, r))
        .collect();

    let mut best_feasible: Option<(f64, Vec<bool>)> = None;
    let mut best_infeasible: Option<(f64, Vec<bool>)> = None;
    for o in outcomes {
        if let Some((len, state)) = o.feasible {
            let better = match &best_feasible {
                None => true,
                Some((blen, bstate)) => {
                    len < *blen || (len == *blen && lex_less(&state, bstate))
                }
            };
            if better {
                best_feasible = Some((len, state));
            }
        }
        if let Some((dev, state)) = o.closest {
            let better = match &best_infeasible {
                None => true,
                Some((bdev, _)) => dev < *bdev,
            };
            if better {
                best_infeasible = Some((dev, state));
            }
        }
    }
    match best_feasible {
        Some((_, state)) => CutResult::from_partition(mesh, &state),
        None => {
            let (dev, state) = best_infeasible.expect("at least one restart ran");
            let best = CutResult::from_partition(mesh, &state)?;
            Err(Error::InfeasibleWithBudget {
                best_balance_dev: dev,
                best: Box::new(best),
            })
        }
    }
}

fn lex_less(a: &[bool], b: &[bool]) -> bool {
    // side-A face sets compared lexicographically
    let fa = a.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i);
    let fb = b.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i);
    fa.lt(fb)
}

struct Context {
    /// face -> [(neighbor face, shared edge length)]
    adj: Vec<Vec<(u32, f64)>>,
    /// vertex -> [(vertex, edge length)] for ball initializations
    vert_adj: Vec<Vec<(u32, f64)>>,
    face_corners: Vec<[u32; 3]>,
    areas: Vec<f64>,
    half: f64,
    tol: f64,
    lambda: f64,
    t0: f64,
}

struct Outcome {
    feasible: Option<(f64, Vec<bool>)>,
    closest: Option<(f64, Vec<bool>)>,
}

impl Context {
    fn new(mesh: &SurfaceMesh, tol: f64) -> Self {
        let mut adj = vec![Vec::new(); mesh.face_count()];
        for (a, b, e) in mesh.dual_edges() {
            if a == b {
                continue;
            }
            let len = mesh.edges[e as usize].length;
            adj[a as usize].push((b, len));
            adj[b as usize].push((a, len));
        }
        let mut vert_adj = vec![Vec::new(); mesh.vertex_count()];
        for e in &mesh.edges {
            vert_adj[e.u as usize].push((e.v, e.length));
            vert_adj[e.v as usize].push((e.u, e.length));
        }
        let face_corners: Vec<[u32; 3]> = (0..mesh.face_count())
            .map(|f| mesh.face_vertices(f as u32))
            .collect();
        let areas: Vec<f64> = mesh.faces.iter().map(|f| f.area).collect();
        let total: f64 = areas.iter().sum();
        let mean_edge: f64 =
            mesh.edges.iter().map(|e| e.length).sum::<f64>() / mesh.edge_count() as f64;
        let mean_area = total / mesh.face_count() as f64;
        Self {
            adj,
            vert_adj,
            face_corners,
            areas,
            half: total / 2.0,
            tol,
            lambda: 8.0 * mean_edge / mean_area,
            t0: 2.0 * mean_edge,
        }
    }
}

struct State {
    in_a: Vec<bool>,
    area_a: f64,
    size_a: usize,
    length: f64,
    /// faces adjacent to the other side
    boundary: Vec<u32>,
    boundary_pos: Vec<usize>,
}

impl State {
    fn new(ctx: &Context, in_a: Vec<bool>) -> Self {
        let n = in_a.len();
        let mut area_a = 0.0;
        let mut size_a = 0;
        for (f, &a) in in_a.iter().enumerate() {
            if a {
                area_a += ctx.areas[f];
                size_a += 1;
            }
        }
        let mut length = 0.0;
        for f in 0..n {
            for &(g, len) in &ctx.adj[f] {
                if (g as usize) > f && in_a[f] != in_a[g as usize] {
                    length += len;
                }
            }
        }
        let mut st = Self {
            in_a,
            area_a,
            size_a,
            length,
            boundary: Vec::new(),
            boundary_pos: vec![usize::MAX; n],
        };
        for f in 0..n {
            st.refresh_boundary(ctx, f);
        }
        st
    }

    fn is_boundary(&self, ctx: &Context, f: usize) -> bool {
        ctx.adj[f].iter().any(|&(g, _)| self.in_a[g as usize] != self.in_a[f])
    }

    fn refresh_boundary(&mut self, ctx: &Context, f: usize) {
        let now = self.is_boundary(ctx, f);
        let pos = self.boundary_pos[f];
        if now && pos == usize::MAX {
            self.boundary_pos[f] = self.boundary.len();
            self.boundary.push(f as u32);
        } else if !now && pos != usize::MAX {
            let last = *self.boundary.last().unwrap();
            self.boundary.swap_remove(pos);
            if pos < self.boundary.len() {
                self.boundary_pos[last as usize] = pos;
            }
            self.boundary_pos[f] = usize::MAX;
        }
    }

    fn delta_length(&self, ctx: &Context, f: usize) -> f64 {
        let mut d = 0.0;
        for &(g, len) in &ctx.adj[f] {
            if self.in_a[g as usize] == self.in_a[f] {
                d += len;
            } else {
                d -= len;
            }
        }
        d
    }

    fn delta_area(&self, ctx: &Context, f: usize) -> f64 {
        if self.in_a[f] {
            -ctx.areas[f]
        } else {
            ctx.areas[f]
        }
    }

    /// Would moving `f` keep its current side connected (and nonempty)?
    fn move_keeps_connectivity(&self, ctx: &Context, f: usize) -> bool {
        let side = self.in_a[f];
        let side_size = if side {
            self.size_a
        } else {
            self.in_a.len() - self.size_a
        };
        if side_size <= 1 {
            return false;
        }
        let same: Vec<u32> = ctx.adj[f]
            .iter()
            .filter(|&&(g, _)| self.in_a[g as usize] == side)
            .map(|&(g, _)| g)
            .collect();
        match same.len() {
            0 => false, // connected side of size > 1 cannot have an isolated face
            1 => true,
            _ => {
                // BFS within the side, skipping f, until all of f's same-side
                // neighbors are seen.
                let n = self.in_a.len();
                let mut targets: Vec<bool> = vec![false; n];
                let mut remaining = 0usize;
                for &g in &same[1..] {
                    targets[g as usize] = true;
                    remaining += 1;
                }
                let mut seen = vec![false; n];
                seen[f] = true; // excluded
                let start = same[0] as usize;
                seen[start] = true;
                let mut stack = vec![start];
                while let Some(x) = stack.pop() {
                    for &(y, _) in &ctx.adj[x] {
                        let y = y as usize;
                        if seen[y] || self.in_a[y] != side {
                            continue;
                        }
                        seen[y] = true;
                        if targets[y] {
                            remaining -= 1;
                            if remaining == 0 {
                                return true;
                            }
                        }
                        stack.push(y);
                    }
                }
                false
            }
        }
    }

    fn flip(&mut self, ctx: &Context, f: usize) {
        self.length += self.delta_length(ctx, f);
        self.area_a += self.delta_area(ctx, f);
        if self.in_a[f] {
            self.size_a -= 1;
        } else {
            self.size_a += 1;
        }
        self.in_a[f] = !self.in_a[f];
        self.refresh_boundary(ctx, f);
        let neighbors: Vec<u32> = ctx.adj[f].iter().map(|&(g, _)| g).collect();
        for g in neighbors {
            self.refresh_boundary(ctx, g as usize);
        }
    }

    fn balance_excess(&self, ctx: &Context) -> f64 {
        ((self.area_a - ctx.half).abs() - ctx.tol).max(0.0)
    }

    fn feasible(&self, ctx: &Context) -> bool {
        (self.area_a - ctx.half).abs() <= ctx.tol + 1e-12
    }
}

/// Two-seed competitive growth: both sides connected by construction.
fn grow_initial(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = ctx.adj.len();
    let seed_a = rng.gen_range(0..n);
    // farthest face from seed_a in dual hops, deterministic tie-break
    let seed_b = {
        let mut dist = vec![usize::MAX; n];
        dist[seed_a] = 0;
        let mut q = std::collections::VecDeque::from([seed_a]);
        let mut far = seed_a;
        while let Some(x) = q.pop_front() {
            for &(y, _) in &ctx.adj[x] {
                let y = y as usize;
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if dist[y] > dist[far] || (dist[y] == dist[far] && y < far) {
                        far = y;
                    }
                    q.push_back(y);
                }
            }
        }
        far
    };
    let mut assigned: Vec<u8> = vec![u8::MAX as u8; n];
    assigned[seed_a] = 1;
    assigned[seed_b] = 0;
    let mut area = [ctx.areas[seed_b], ctx.areas[seed_a]];
    let mut frontier: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    for (side, seed) in [(1usize, seed_a), (0usize, seed_b)] {
        for &(g, _) in &ctx.adj[seed] {
            frontier[side].push(g);
        }
    }
    let mut unassigned = n - 2;
    while unassigned > 0 {
        let side = if area[1] <= area[0] { 1 } else { 0 };
        let other = 1 - side;
        let pick = loop {
            if frontier[side].is_empty() {
                break None;
            }
            let i = rng.gen_range(0..frontier[side].len());
            let f = frontier[side].swap_remove(i) as usize;
            if assigned[f] == u8::MAX {
                break Some(f);
            }
        };
        let (side, f) = match pick {
            Some(f) => (side, f),
            None => {
                // this side is walled off; grow the other
                let f = loop {
                    if frontier[other].is_empty() {
                        break None;
                    }
                    let i = rng.gen_range(0..frontier[other].len());
                    let f = frontier[other].swap_remove(i) as usize;
                    if assigned[f] == u8::MAX {
                        break Some(f);
                    }
                };
                match f {
                    Some(f) => (other, f),
                    None => break,
                }
            }
        };
        assigned[f] = side as u8;
        area[side] += ctx.areas[f];
        unassigned -= 1;
        for &(g, _) in &ctx.adj[f] {
            if assigned[g as usize] == u8::MAX {
                frontier[side].push(g);
            }
        }
    }
    assigned.iter().map(|&s| s == 1).collect()
}

fn vertex_distances(ctx: &Context, source: u32) -> Vec<f64> {
    use std::cmp::Reverse;
    let n = ctx.vert_adj.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = std::collections::BinaryHeap::new();
    #[derive(PartialEq)]
    struct It(f64, u32);
    impl Eq for It {}
    impl Ord for It {
        fn cmp(&self, o: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&o.0).then_with(|| self.1.cmp(&o.1))
        }
    }
    impl PartialOrd for It {
        fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(o))
        }
    }
    dist[source as usize] = 0.0;
    heap.push(Reverse(It(0.0, source)));
    while let Some(Reverse(It(d, v))) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for &(w, len) in &ctx.vert_adj[v as usize] {
            if d + len < dist[w as usize] {
                dist[w as usize] = d + len;
                heap.push(Reverse(It(d + len, w)));
            }
        }
    }
    dist
}

fn farthest(dist: &[f64]) -> u32 {
    let mut best = 0usize;
    for (i, &d) in dist.iter().enumerate() {
        if d.is_finite() && d > dist[best] {
            best = i;
        }
    }
    best as u32
}

/// Distance-Voronoi bipartition between two poles: a face joins the side of
/// the pole its corners are nearer to in total. The bisector of a
/// farthest-apart pair is a natural balanced great-cycle candidate, found
/// from edge lengths alone. `None` if either side comes out disconnected or
/// empty.
fn voronoi_initial(ctx: &Context, pole_a: u32, pole_b: u32) -> Option<Vec<bool>> {
    if pole_a == pole_b {
        return None;
    }
    let da = vertex_distances(ctx, pole_a);
    let db = vertex_distances(ctx, pole_b);
    let nf = ctx.areas.len();
    let in_a: Vec<bool> = (0..nf)
        .map(|f| {
            let margin: f64 = ctx.face_corners[f]
                .iter()
                .map(|&v| da[v as usize] - db[v as usize])
                .sum();
            margin < 0.0
        })
        .collect();
    let count = in_a.iter().filter(|&&b| b).count();
    if count == 0 || count == nf {
        return None;
    }
    let connected = |side: bool| -> bool {
        let start = match (0..nf).find(|&f| in_a[f] == side) {
            Some(s) => s,
            None => return false,
        };
        let mut seen = vec![false; nf];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1usize;
        while let Some(f) = stack.pop() {
            for &(g, _) in &ctx.adj[f] {
                let g = g as usize;
                if in_a[g] == side && !seen[g] {
                    seen[g] = true;
                    reached += 1;
                    stack.push(g);
                }
            }
        }
        reached == in_a.iter().filter(|&&b| b == side).count()
    };
    (connected(true) && connected(false)).then_some(in_a)
}

fn restart(ctx: &Context, seed: u64, budget: usize, index: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Initialization portfolio: a pseudo-diameter Voronoi bisection first,
    // then random-pole bisections alternating with two-seed competitive
    // growth. Bisections already verify side connectivity.
    let nv = ctx.vert_adj.len();
    let init = if index == 0 {
        let u = farthest(&vertex_distances(ctx, 0));
        let v = farthest(&vertex_distances(ctx, u));
        voronoi_initial(ctx, u, v)
    } else if index % 2 == 0 {
        let u = rng.gen_range(0..nv as u32);
        let v = farthest(&vertex_distances(ctx, u));
        voronoi_initial(ctx, u, v)
    } else {
        None
    };
    let init = init.unwrap_or_else(|| grow_initial(ctx, &mut rng));
    let mut st = State::new(ctx, init);
    let mut best_feasible: Option<(f64, Vec<bool>)> = None;
    let mut closest: Option<(f64, Vec<bool>)> = None;

    let record = |st: &State, ctx: &Context, best: &mut Option<(f64, Vec<bool>)>,
                      closest: &mut Option<(f64, Vec<bool>)>| {
        let dev = (st.area_a - ctx.half).abs();
        if closest.as_ref().map_or(true, |(d, _)| dev < *d) {
            *closest = Some((dev, st.in_a.clone()));
        }
        if st.feasible(ctx) {
            let better = match best {
                None => true,
                Some((len, state)) => {
                    st.length < *len || (st.length == *len && lex_less(&st.in_a, state))
                }
            };
            if better {
                *best = Some((st.length, st.in_a.clone()));
            }
        }
    };
    record(&st, ctx, &mut best_feasible, &mut closest);

    let steps = budget.max(1);
    let t_end = ctx.t0 * 1e-4;
    let cool = (t_end / ctx.t0).powf(1.0 / steps as f64);
    let mut temp = ctx.t0;
    for _ in 0..steps {
        temp *= cool;
        if st.boundary.is_empty() {
            break;
        }
        let f = st.boundary[rng.gen_range(0..st.boundary.len())] as usize;
        let dlen = st.delta_length(ctx, f);
        let old_excess = st.balance_excess(ctx);
        let new_dev = (st.area_a + st.delta_area(ctx, f) - ctx.half).abs();
        let new_excess = (new_dev - ctx.tol).max(0.0);
        let cost = dlen + ctx.lambda * (new_excess - old_excess);
        let accept = cost <= 0.0 || rng.gen::<f64>() < (-cost / temp).exp();
        if !accept {
            continue;
        }
        if !st.move_keeps_connectivity(ctx, f) {
            continue;
        }
        st.flip(ctx, f);
        record(&st, ctx, &mut best_feasible, &mut closest);
    }

    // Polish the best feasible state found.
    if let Some((_, state)) = best_feasible.clone() {
        let mut st = State::new(ctx, state);
        greedy_descent(ctx, &mut st);
        record(&st, ctx, &mut best_feasible, &mut closest);
        for _ in 0..3 {
            if !kl_pass(ctx, &mut st) {
                break;
            }
            record(&st, ctx, &mut best_feasible, &mut closest);
        }
    }
    Outcome {
        feasible: best_feasible,
        closest,
    }
}

/// Apply strictly improving feasibility-preserving flips until none remain.
fn greedy_descent(ctx: &Context, st: &mut State) {
    loop {
        let mut candidates: Vec<u32> = st.boundary.clone();
        candidates.sort_unstable();
        let mut improved = false;
        for f in candidates {
            let f = f as usize;
            if !st.is_boundary(ctx, f) {
                continue;
            }
            let dlen = st.delta_length(ctx, f);
            if dlen >= -1e-15 {
                continue;
            }
            let new_dev = (st.area_a + st.delta_area(ctx, f) - ctx.half).abs();
            if new_dev > ctx.tol + 1e-12 {
                continue;
            }
            if !st.move_keeps_connectivity(ctx, f) {
                continue;
            }
            st.flip(ctx, f);
            improved = true;
        }
        if !improved {
            return;
        }
    }
}

/// One Kernighan–Lin style pass: a sequence of locked best-available flips
/// (negative gains allowed), rolled back to the best prefix. Connectivity is
/// only verified on the winning candidate of each step. Returns whether the
/// pass improved the cut length.
fn kl_pass(ctx: &Context, st: &mut State) -> bool {
    let start_len = st.length;
    let n = st.in_a.len();
    let mut locked = vec![false; n];
    let mut applied: Vec<usize> = Vec::new();
    let mut best_prefix = 0usize;
    let mut best_len = st.length;
    let max_moves = (st.boundary.len() * 2).clamp(8, 600).min(n);
    for _ in 0..max_moves {
        // rank unlocked feasible flips by gain; verify connectivity lazily
        let mut ranked: Vec<(f64, usize)> = Vec::new();
        for &f in &st.boundary {
            let f = f as usize;
            if locked[f] {
                continue;
            }
            let new_dev = (st.area_a + st.delta_area(ctx, f) - ctx.half).abs();
            if new_dev > ctx.tol + 1e-12 {
                continue;
            }
            ranked.push((st.delta_length(ctx, f), f));
        }
        ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let chosen = ranked
            .into_iter()
            .take(8)
            .find(|&(_, f)| st.move_keeps_connectivity(ctx, f));
        let Some((_, f)) = chosen else { break };
        st.flip(ctx, f);
        locked[f] = true;
        applied.push(f);
        if st.length < best_len - 1e-15 {
            best_len = st.length;
            best_prefix = applied.len();
        }
    }
    // roll back to the best prefix
    while applied.len() > best_prefix {
        let f = applied.pop().unwrap();
        st.flip(ctx, f);
    }
    st.length < start_len - 1e-15
}
