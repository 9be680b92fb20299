//! Simple undirected graphs: girth, connectivity, the two small Moore graphs
//! and seeded generation of random regular graphs with a girth floor.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::incidence::Point;
use crate::params::moore_bound;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at {0}")]
    SelfLoop(Point),
    #[error("edge {0}-{1} given twice")]
    DuplicateEdge(Point, Point),
    #[error("vertex {vertex} outside 0..{v}")]
    OutOfRange { vertex: Point, v: usize },
}

/// Undirected simple graph on `0..v`, stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Point>>,
}

impl Graph {
    pub fn empty(v: usize) -> Graph {
        Graph { adj: vec![Vec::new(); v] }
    }

    pub fn from_edges<I>(v: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Point, Point)>,
    {
        let mut adj = vec![Vec::new(); v];
        for (a, b) in edges {
            for x in [a, b] {
                if x as usize >= v {
                    return Err(GraphError::OutOfRange { vertex: x, v });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for (x, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = crate::incidence::pair(x as Point, w[0]);
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds from adjacency lists that are already symmetric and simple.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<Point>>) -> Graph {
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    pub fn cycle(n: usize) -> Graph {
        let n32 = n as Point;
        Graph::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32))).expect("cycle is simple for n >= 3")
    }

    pub fn complete(n: usize) -> Graph {
        let n32 = n as Point;
        Graph::from_edges(n, (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b)))).unwrap()
    }

    pub fn v(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, x: Point) -> &[Point] {
        &self.adj[x as usize]
    }

    pub fn degree(&self, x: Point) -> usize {
        self.adj[x as usize].len()
    }

    pub fn has_edge(&self, a: Point, b: Point) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b as usize > a).map(move |&b| (a as Point, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Number of common neighbours of `a` and `b`.
    pub fn common_neighbors(&self, a: Point, b: Point) -> usize {
        let (x, y) = (&self.adj[a as usize], &self.adj[b as usize]);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// Adjacency as one bit row per vertex.
    pub fn bit_rows(&self) -> Vec<FixedBitSet> {
        let v = self.v();
        self.adj
            .iter()
            .map(|list| {
                let mut row = FixedBitSet::with_capacity(v);
                for &y in list {
                    row.insert(y as usize);
                }
                row
            })
            .collect()
    }

    /// `u: v1 v2 ...` per vertex.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for (x, list) in self.adj.iter().enumerate() {
            let _ = write!(out, "{x}:");
            for y in list {
                let _ = write!(out, " {y}");
            }
            out.push('\n');
        }
        out
    }

    /// Breadth-first distances from `s`, `usize::MAX` when unreachable.
    pub fn distances_from(&self, s: Point) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.v()];
        dist[s as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &x in self.neighbors(u) {
                if dist[x as usize] == usize::MAX {
                    dist[x as usize] = dist[u as usize] + 1;
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    /// Connected components as a component id per vertex, plus the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.v()];
        let mut count = 0;
        for s in 0..self.v() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s as Point];
            while let Some(u) = stack.pop() {
                for &x in self.neighbors(u) {
                    if comp[x as usize] == usize::MAX {
                        comp[x as usize] = count;
                        stack.push(x);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let v = g.v();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; v];
    let mut parent = vec![Point::MAX; v];
    let mut touched = Vec::with_capacity(v);
    for s in 0..v {
        for &t in &touched {
            dist[t] = usize::MAX;
        }
        touched.clear();
        dist[s] = 0;
        touched.push(s);
        let mut queue = VecDeque::from([s as Point]);
        'bfs: while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if 2 * du + 1 >= best {
                break;
            }
            for &x in g.neighbors(u) {
                let xi = x as usize;
                if dist[xi] == usize::MAX {
                    dist[xi] = du + 1;
                    parent[xi] = u;
                    touched.push(xi);
                    queue.push_back(x);
                } else if parent[u as usize] != x {
                    best = best.min(du + dist[xi] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

pub fn is_connected(g: &Graph) -> bool {
    g.components().1 <= 1
}

/// The common degree, or `None` when degrees differ.
pub fn regularity_degree(g: &Graph) -> Option<usize> {
    let d = g.adj.first().map_or(0, Vec::len);
    g.adj.iter().all(|l| l.len() == d).then_some(d)
}

pub fn complement(g: &Graph) -> Graph {
    let v = g.v();
    let adj = (0..v)
        .map(|x| {
            let row = &g.adj[x];
            (0..v as Point).filter(|&y| y as usize != x && row.binary_search(&y).is_err()).collect()
        })
        .collect();
    Graph { adj }
}

/// The Kneser graph K(5, 2): 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen() -> Graph {
    let subsets: Vec<(u32, u32)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in subsets.iter().enumerate() {
        for (j, &(c, d)) in subsets.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i as Point, j as Point));
            }
        }
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Five pentagons `P_h` (vertices `5h + j`) and five pentagrams `Q_i`
/// (vertices `25 + 5i + j`); `(P, h, j) ~ (Q, i, hi + j mod 5)`.
pub fn hoffman_singleton() -> Graph {
    let p = |h: u32, j: u32| 5 * h + j % 5;
    let q = |i: u32, j: u32| 25 + 5 * i + j % 5;
    let mut edges = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, j + 1)));
            edges.push((q(h, j), q(h, j + 2)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, h * i + j)));
            }
        }
    }
    Graph::from_edges(50, edges).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphGenParams {
    pub v: usize,
    pub w: usize,
    pub min_girth: usize,
    pub seed: u64,
    pub max_attempts: usize,
    pub max_swaps: usize,
    /// The output is invariant under `x -> x + shift (mod v)`; `shift` must
    /// divide `v`, and `shift = v` imposes no symmetry.
    pub shift: usize,
}

impl GraphGenParams {
    /// Defaults: 200 attempts, `200 v w` swaps, and the smallest shift above 1
    /// that divides `v`.
    pub fn new(v: usize, w: usize, min_girth: usize, seed: u64) -> GraphGenParams {
        let shift = (2..v).find(|d| v % d == 0).unwrap_or(v.max(1));
        GraphGenParams { v, w, min_girth, seed, max_attempts: 200, max_swaps: 200 * v * w, shift }
    }

    pub fn with_shift(self, shift: usize) -> GraphGenParams {
        GraphGenParams { shift, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no connected {w}-regular graph of girth >= {min_girth} on {v} vertices after {attempts} attempts (lowest short-cycle cost reached: {best_cost})")]
    Failure { v: usize, w: usize, min_girth: usize, attempts: usize, best_cost: usize },
}

/// Images of the edge `a-b` under `x -> x + shift (mod v)`, each once.
pub(crate) fn edge_orbit(a: Point, b: Point, shift: usize, v: usize) -> Vec<(Point, Point)> {
    let n = v / shift;
    let mut out: Vec<(Point, Point)> = (0..n)
        .map(|i| {
            let s = i * shift;
            crate::incidence::pair(((a as usize + s) % v) as Point, ((b as usize + s) % v) as Point)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Seeded random connected `w`-regular graph with girth at least `min_girth`
/// and the cyclic symmetry `x -> x + shift (mod v)`.
///
/// Each attempt grows a graph by random edge orbits that respect the girth
/// floor, fills the remaining degree deficit ignoring girth, then applies
/// double-edge swaps (orbit-wise) that never increase the short-cycle cost,
/// with recently created edges tabu. An attempt ends at cost zero, after
/// `max_swaps` proposals, or on stagnation. Attempt `i` uses stream `i` of
/// the seeded RNG.
pub fn random_regular_girth(p: &GraphGenParams) -> Result<Graph, GenError> {
    let GraphGenParams { v, w, min_girth, shift, .. } = *p;
    if min_girth < 3 {
        return Err(GenError::PreconditionViolated(format!("min_girth {min_girth} below 3")));
    }
    if v <= w || (v * w) % 2 != 0 {
        return Err(GenError::PreconditionViolated(format!("need v > w and v w even, got v = {v}, w = {w}")));
    }
    if shift == 0 || v % shift != 0 {
        return Err(GenError::PreconditionViolated(format!("shift {shift} does not divide {v}")));
    }
    let floor = match min_girth {
        4 => 2 * w,
        5 | 6 => moore_bound(w, min_girth).expect("girth 5 and 6 have Moore bounds"),
        _ => 0,
    };
    if v < floor {
        return Err(GenError::PreconditionViolated(format!(
            "{v} vertices is below the Moore bound {floor} for ({w}, {min_girth})-graphs"
        )));
    }
    let mut best = usize::MAX;
    for attempt in 0..p.max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        rng.set_stream(attempt as u64);
        let mut state = OrbitGraph::new(v, w, min_girth, shift);
        state.greedy(&mut rng);
        if !state.fill(&mut rng) {
            continue;
        }
        let left = state.minimize(p.max_swaps, &mut rng);
        best = best.min(left);
        if left == 0 {
            let g = Graph::from_adjacency(state.adj);
            if is_connected(&g) {
                return Ok(g);
            }
        }
    }
    Err(GenError::Failure { v, w, min_girth, attempts: p.max_attempts, best_cost: best })
}

/// Graph built from whole edge orbits of `x -> x + shift (mod v)`.
struct OrbitGraph {
    v: usize,
    w: usize,
    g: usize,
    shift: usize,
    adj: Vec<Vec<Point>>,
    bits: Vec<FixedBitSet>,
    /// One representative edge per orbit present.
    reps: Vec<(Point, Point)>,
    mark: Vec<u32>,
    epoch: u32,
    frontier: Vec<Point>,
    next: Vec<Point>,
}

impl OrbitGraph {
    fn new(v: usize, w: usize, g: usize, shift: usize) -> OrbitGraph {
        OrbitGraph {
            v,
            w,
            g,
            shift,
            adj: vec![Vec::with_capacity(w); v],
            bits: vec![FixedBitSet::with_capacity(v); v],
            reps: Vec::new(),
            mark: vec![0; v],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    fn orbit_len(&self) -> usize {
        self.v / self.shift
    }

    fn deficit(&self, x: Point) -> usize {
        self.w - self.adj[x as usize].len()
    }

    fn has(&self, a: Point, b: Point) -> bool {
        self.bits[a as usize].contains(b as usize)
    }

    fn add(&mut self, a: Point, b: Point) {
        self.bits[a as usize].insert(b as usize);
        self.bits[b as usize].insert(a as usize);
        self.adj[a as usize].push(b);
        self.adj[b as usize].push(a);
    }

    fn remove(&mut self, a: Point, b: Point) {
        self.bits[a as usize].set(b as usize, false);
        self.bits[b as usize].set(a as usize, false);
        let la = &mut self.adj[a as usize];
        la.swap_remove(la.iter().position(|&x| x == b).expect("edge present"));
        let lb = &mut self.adj[b as usize];
        lb.swap_remove(lb.iter().position(|&x| x == a).expect("edge present"));
    }

    /// Marks every vertex within distance `g - 2` of `x` with the current epoch.
    fn mark_ball(&mut self, x: Point) {
        self.epoch += 1;
        let e = self.epoch;
        self.mark[x as usize] = e;
        self.frontier.clear();
        self.frontier.push(x);
        for _ in 0..self.g.saturating_sub(2) {
            self.next.clear();
            for &u in &self.frontier {
                for &y in &self.adj[u as usize] {
                    if self.mark[y as usize] != e {
                        self.mark[y as usize] = e;
                        self.next.push(y);
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
    }

    /// Adds the orbit of `a-b` if it is simple and keeps degrees within `w`
    /// (and, with `keep_girth`, the girth floor). Returns whether it was added.
    fn try_add_orbit(&mut self, a: Point, b: Point, keep_girth: bool) -> bool {
        if a == b {
            return false;
        }
        let orbit = edge_orbit(a, b, self.shift, self.v);
        let mut added = Vec::with_capacity(orbit.len());
        let mut ok = true;
        for &(x, y) in &orbit {
            if x == y || self.has(x, y) || self.deficit(x) == 0 || self.deficit(y) == 0 {
                ok = false;
                break;
            }
            if keep_girth {
                self.mark_ball(x);
                if self.mark[y as usize] == self.epoch {
                    ok = false;
                    break;
                }
            }
            self.add(x, y);
            added.push((x, y));
        }
        if !ok {
            for (x, y) in added {
                self.remove(x, y);
            }
            return false;
        }
        self.reps.push(crate::incidence::pair(a, b));
        true
    }

    fn remove_orbit(&mut self, rep: (Point, Point)) {
        for (x, y) in edge_orbit(rep.0, rep.1, self.shift, self.v) {
            self.remove(x, y);
        }
    }

    /// Vertices `0..shift` represent every vertex orbit.
    fn open_bases(&self) -> Vec<Point> {
        (0..self.shift as Point).filter(|&x| self.deficit(x) > 0).collect()
    }

    fn open_targets(&self) -> Vec<Point> {
        (0..self.v as Point).filter(|&x| self.deficit(x) > 0).collect()
    }

    /// Adds random orbits that respect the girth floor until none fits.
    fn greedy(&mut self, rng: &mut ChaCha8Rng) {
        loop {
            let mut progress = false;
            let mut bases = self.open_bases();
            bases.shuffle(rng);
            for a in bases {
                if self.deficit(a) == 0 {
                    continue;
                }
                let mut targets = self.open_targets();
                targets.shuffle(rng);
                for b in targets {
                    if self.try_add_orbit(a, b, true) {
                        progress = true;
                        break;
                    }
                }
            }
            if !progress {
                return;
            }
        }
    }

    /// Brings every degree up to `w`, ignoring girth; may trade an existing
    /// orbit for two new ones. Returns false if stuck.
    fn fill(&mut self, rng: &mut ChaCha8Rng) -> bool {
        for _ in 0..200 * (self.shift + self.w) {
            let bases = self.open_bases();
            if bases.is_empty() {
                return true;
            }
            let a = *bases.choose(rng).expect("non-empty");
            let targets = self.open_targets();
            let b = *targets.choose(rng).expect("deficits come in pairs");
            if self.try_add_orbit(a, b, false) {
                continue;
            }
            // Trade a random orbit c-e for a-c and b-e.
            if self.reps.is_empty() {
                return false;
            }
            let i = rng.gen_range(0..self.reps.len());
            let rep = self.reps.swap_remove(i);
            self.remove_orbit(rep);
            let (c, e) = self.random_image(rep, rng);
            if self.try_add_orbit(a, c, false) {
                if self.try_add_orbit(b, e, false) {
                    continue;
                }
                let r = self.reps.pop().expect("just added");
                self.remove_orbit(r);
            }
            assert!(self.try_add_orbit(rep.0, rep.1, false), "restoring a removed orbit");
        }
        false
    }

    /// A uniformly random image of `rep` under the shift group, random orientation.
    fn random_image(&self, rep: (Point, Point), rng: &mut ChaCha8Rng) -> (Point, Point) {
        let s = rng.gen_range(0..self.orbit_len()) * self.shift;
        let (x, y) = (((rep.0 as usize + s) % self.v) as Point, ((rep.1 as usize + s) % self.v) as Point);
        if rng.gen_bool(0.5) {
            (x, y)
        } else {
            (y, x)
        }
    }

    /// Cycles shorter than `g` through edge `a-b`, and how many also use `other`.
    fn cycles_through(&self, a: Point, b: Point, other: Option<(Point, Point)>) -> ([usize; 8], usize) {
        let mut per_len = [0usize; 8];
        let mut both = 0;
        let mut path = [0 as Point; 8];
        path[0] = a;
        self.walk(&mut path, 0, b, other, false, &mut per_len, &mut both);
        (per_len, both)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        path: &mut [Point; 8],
        depth: usize,
        target: Point,
        other: Option<(Point, Point)>,
        uses_other: bool,
        per_len: &mut [usize; 8],
        both: &mut usize,
    ) {
        let last = path[depth];
        for &x in &self.adj[last as usize] {
            let step_other = other.is_some_and(|(c, d)| (last == c && x == d) || (last == d && x == c));
            if x == target {
                if depth >= 1 {
                    per_len[depth + 2] += 1;
                    if uses_other || step_other {
                        *both += 1;
                    }
                }
                continue;
            }
            // a cycle of length L is the edge plus a path of L - 1 edges
            if depth + 2 >= self.g - 1 || path[..=depth].contains(&x) {
                continue;
            }
            path[depth + 1] = x;
            self.walk(path, depth + 1, target, other, uses_other || step_other, per_len, both);
        }
    }

    fn through(&self, e: (Point, Point)) -> usize {
        self.cycles_through(e.0, e.1, None).0.iter().sum()
    }

    /// Exact number of short cycles through `e1` or `e2`.
    fn pair_cost(&self, e1: (Point, Point), e2: (Point, Point)) -> usize {
        let (c1, both) = self.cycles_through(e1.0, e1.1, Some(e2));
        let c2 = self.through(e2);
        c1.iter().sum::<usize>() + c2 - both
    }

    /// Exact short-cycle count when orbits are single edges, otherwise the
    /// sum over orbit representatives of the short cycles through each.
    /// Zero exactly when the girth floor holds.
    fn cost(&self) -> usize {
        if self.orbit_len() > 1 {
            return self.reps.iter().map(|&e| self.through(e)).sum();
        }
        let mut sums = [0usize; 8];
        for &(a, b) in &self.reps {
            let (per_len, _) = self.cycles_through(a, b, None);
            for (s, c) in sums.iter_mut().zip(per_len) {
                *s += c;
            }
        }
        // a cycle of length L is seen from each of its L edges
        sums.iter().enumerate().skip(3).map(|(len, &s)| s / len).sum()
    }

    /// Swap search; returns the cost left.
    fn minimize(&mut self, max_swaps: usize, rng: &mut ChaCha8Rng) -> usize {
        const TABU: usize = 12;
        let single = self.orbit_len() == 1;
        let stagnation = 40 * self.reps.len().max(50);
        let mut cost = self.cost();
        let mut best = cost;
        let mut last_gain = 0;
        let mut tabu: VecDeque<(Point, Point)> = VecDeque::with_capacity(TABU + 2);
        let mut bad: Vec<usize> = Vec::new();
        let mut stale = true;
        for step in 0..max_swaps {
            if cost == 0 {
                return 0;
            }
            if step - last_gain > stagnation {
                break;
            }
            if stale || bad.is_empty() {
                bad = (0..self.reps.len()).filter(|&i| self.through(self.reps[i]) > 0).collect();
                stale = false;
            }
            let k = rng.gen_range(0..bad.len());
            let i1 = bad[k];
            if self.through(self.reps[i1]) == 0 {
                bad.swap_remove(k);
                continue;
            }
            let i2 = rng.gen_range(0..self.reps.len());
            if i1 == i2 || tabu.contains(&self.reps[i1]) || tabu.contains(&self.reps[i2]) {
                continue;
            }
            let (r1, r2) = (self.reps[i1], self.reps[i2]);
            let (a, b) = self.random_image(r1, rng);
            let (c, d) = self.random_image(r2, rng);
            if a == c || b == d || self.has(a, c) || self.has(b, d) {
                continue;
            }
            let full = self.orbit_len();
            if edge_orbit(a, b, self.shift, self.v).len() != full || edge_orbit(c, d, self.shift, self.v).len() != full
            {
                continue;
            }
            let before = if single { self.pair_cost(r1, r2) } else { cost };
            let (f1, f2) = (crate::incidence::pair(a, c), crate::incidence::pair(b, d));
            // remove both orbits, then add the new ones with the same indices
            let (hi, lo) = if i1 > i2 { (i1, i2) } else { (i2, i1) };
            let rh = self.reps.swap_remove(hi);
            let rl = self.reps.swap_remove(lo);
            self.remove_orbit(rh);
            self.remove_orbit(rl);
            let ok1 = edge_orbit(f1.0, f1.1, self.shift, self.v).len() == full && self.try_add_orbit(f1.0, f1.1, false);
            let ok2 = ok1
                && edge_orbit(f2.0, f2.1, self.shift, self.v).len() == full
                && self.try_add_orbit(f2.0, f2.1, false);
            if !ok2 {
                if ok1 {
                    let r = self.reps.pop().expect("just added");
                    self.remove_orbit(r);
                }
                self.restore(rl, rh, lo, hi);
                continue;
            }
            let after = if single { self.pair_cost(f1, f2) } else { self.cost() };
            if after <= before {
                cost = cost + after - before;
                tabu.push_back(f1);
                tabu.push_back(f2);
                while tabu.len() > TABU {
                    tabu.pop_front();
                }
                stale = true;
                if cost < best {
                    best = cost;
                    last_gain = step;
                }
            } else {
                for _ in 0..2 {
                    let r = self.reps.pop().expect("just added");
                    self.remove_orbit(r);
                }
                self.restore(rl, rh, lo, hi);
            }
        }
        cost
    }

    /// Undoes the two `swap_remove`s of `minimize`.
    fn restore(&mut self, rl: (Point, Point), rh: (Point, Point), lo: usize, hi: usize) {
        for &(x, y) in &[rl, rh] {
            for (p, q) in edge_orbit(x, y, self.shift, self.v) {
                self.add(p, q);
            }
        }
        // reinsert at original positions
        self.reps.push(rl);
        let last = self.reps.len() - 1;
        self.reps.swap(lo, last);
        self.reps.push(rh);
        let last = self.reps.len() - 1;
        self.reps.swap(hi, last);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Girth at least 5 iff no two adjacent vertices share a neighbour and no
    /// two non-adjacent vertices share two.
    fn girth5_by_neighbourhoods(g: &Graph) -> bool {
        let v = g.v() as Point;
        (0..v).all(|a| {
            (a + 1..v).all(|b| {
                let c = g.common_neighbors(a, b);
                if g.has_edge(a, b) {
                    c == 0
                } else {
                    c <= 1
                }
            })
        })
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(girth(&Graph::cycle(5)), Some(5));
        assert_eq!(girth(&petersen()), Some(5));
        assert_eq!(girth(&Graph::complete(4)), Some(3));
        assert_eq!(girth(&Graph::cycle(10)), Some(10));
        assert_eq!(girth(&Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()), None);
        assert_eq!(girth(&Graph::empty(1)), None);
        // K_{3,3}
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(girth(&k33), Some(4));
    }

    #[test]
    fn connectivity() {
        let two_c5 = Graph::from_edges(10, (0..5).flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 1) % 5)])).unwrap();
        assert!(!is_connected(&two_c5));
        assert_eq!(two_c5.components().1, 2);
        assert!(is_connected(&hoffman_singleton()));
        assert!(is_connected(&Graph::empty(1)));
    }

    #[test]
    fn regularity() {
        assert_eq!(regularity_degree(&petersen()), Some(3));
        assert_eq!(regularity_degree(&hoffman_singleton()), Some(7));
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(regularity_degree(&p3), None);
    }

    #[test]
    fn moore_graphs() {
        let p = petersen();
        assert_eq!(p.v(), 10);
        assert_eq!(p.v(), moore_bound(3, 5).unwrap());
        let hs = hoffman_singleton();
        assert_eq!(hs.v(), 50);
        assert_eq!(regularity_degree(&hs), Some(7));
        assert_eq!(girth(&hs), Some(5));
        assert_eq!(hs.edge_count(), 175);
        assert!(girth5_by_neighbourhoods(&hs));
        assert!(girth5_by_neighbourhoods(&p));
    }

    #[test]
    fn complements() {
        assert_eq!(regularity_degree(&complement(&Graph::cycle(5))), Some(2));
        assert_eq!(girth(&complement(&Graph::cycle(5))), Some(5));
        assert_eq!(regularity_degree(&complement(&petersen())), Some(6));
        assert_eq!(complement(&Graph::complete(4)).edge_count(), 0);
    }

    #[test]
    fn bad_edge_lists() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn random_girth5_below_moore_bound_rejected() {
        let p = GraphGenParams::new(49, 7, 5, 1);
        assert!(matches!(random_regular_girth(&p), Err(GenError::PreconditionViolated(_))));
    }

    #[test]
    fn random_cubic_girth5_on_ten_vertices_is_petersen_like() {
        let g = random_regular_girth(&GraphGenParams::new(10, 3, 5, 7)).unwrap();
        assert_eq!(g.v(), 10);
        assert_eq!(regularity_degree(&g), Some(3));
        assert_eq!(girth(&g), Some(5));
    }

    #[test]
    fn random_7_regular_girth5_on_74_vertices() {
        let g = random_regular_girth(&GraphGenParams::new(74, 7, 5, 3)).unwrap();
        assert_eq!(regularity_degree(&g), Some(7));
        assert!(girth(&g).unwrap() >= 5);
        assert!(is_connected(&g));
        assert!(girth5_by_neighbourhoods(&g));
    }

    #[test]
    fn random_9_regular_girth5_on_124_vertices() {
        let g = random_regular_girth(&GraphGenParams::new(124, 9, 5, 2)).unwrap();
        assert_eq!(regularity_degree(&g), Some(9));
        assert!(girth(&g).unwrap() >= 5);
        assert!(is_connected(&g));
    }

    #[test]
    fn generated_graph_has_requested_symmetry() {
        let v = 84;
        let g = random_regular_girth(&GraphGenParams::new(v, 7, 5, 1).with_shift(6)).unwrap();
        for (a, b) in g.edges() {
            let (x, y) = ((a as usize + 6) % v, (b as usize + 6) % v);
            assert!(g.has_edge(x as Point, y as Point));
        }
    }

    #[test]
    fn unsymmetric_generation_far_from_the_moore_bound() {
        let p = GraphGenParams::new(120, 4, 5, 8).with_shift(120);
        let g = random_regular_girth(&p).unwrap();
        assert_eq!(regularity_degree(&g), Some(4));
        assert!(girth(&g).unwrap() >= 5);
        let q = GraphGenParams::new(60, 3, 6, 8).with_shift(60);
        assert!(girth(&random_regular_girth(&q).unwrap()).unwrap() >= 6);
    }

    #[test]
    fn shift_must_divide_order() {
        let p = GraphGenParams::new(74, 7, 5, 1).with_shift(3);
        assert!(matches!(random_regular_girth(&p), Err(GenError::PreconditionViolated(_))));
    }

    #[test]
    fn random_generation_is_deterministic() {
        let p = GraphGenParams::new(40, 4, 5, 99);
        assert_eq!(random_regular_girth(&p).unwrap(), random_regular_girth(&p).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn generated_graphs_meet_postconditions(seed in any::<u64>(), w in 2usize..6, extra in 0usize..20) {
            let v0 = w * w + 1 + extra;
            let v = if (v0 * w) % 2 == 1 { v0 + 1 } else { v0 };
            let p = GraphGenParams::new(v, w, 5, seed);
            if let Ok(g) = random_regular_girth(&p) {
                prop_assert_eq!(regularity_degree(&g), Some(w));
                prop_assert!(girth(&g).is_none_or(|x| x >= 5));
                prop_assert!(is_connected(&g));
                prop_assert!(girth5_by_neighbourhoods(&g));
            }
        }

        #[test]
        fn girth_agrees_with_neighbourhood_test(seed in any::<u64>(), v in 4usize..16, density in 0.1f64..0.6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for a in 0..v as Point {
                for b in a + 1..v as Point {
                    if rand::Rng::gen_bool(&mut rng, density) {
                        edges.push((a, b));
                    }
                }
            }
            let g = Graph::from_edges(v, edges).unwrap();
            prop_assert_eq!(girth(&g).is_none_or(|x| x >= 5), girth5_by_neighbourhoods(&g));
        }
    }
}
