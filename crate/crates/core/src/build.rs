//! Constructions: the `k = 2` complement, the pentagon-of-cliques family,
//! Moore-graph overlays, and the randomized `k = 3` pipeline (random
//! deficiency graph, Steiner overlays, triangle decomposition of the rest).

use std::fmt;
use std::sync::Mutex;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::designs::{sts, verify_steiner, SteinerSystem};
use crate::graphs::{girth, random_regular_girth, regularity_degree, Graph, GraphGenParams};
use crate::incidence::{Block, Geometry, Point};
use crate::params::{is_admissible, PentParams};
use crate::pent::{verify_pent_with, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("deficiency graph has girth {}, need at least {required}", fmt_girth(*.girth))]
    GirthTooSmall { girth: Option<usize>, required: usize },
    #[error("graph is not regular: vertex {point} has degree {degree}, vertex 0 has {expected}")]
    NotRegular { point: Point, degree: usize, expected: usize },
    #[error("not a Moore graph: {0}")]
    NotMooreGraph(String),
    #[error("overlay on the neighbourhood of {point} is not a Steiner system: {reason}")]
    OverlayNotSteiner { point: Point, reason: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("triangle decomposition incomplete after {moves} moves: best coverage {best_covered}/{edges} edges")]
    DecompositionFailed { moves: usize, best_covered: usize, edges: usize },
    #[error(transparent)]
    HillClimbFailed(HillClimbFailure),
}

/// Diagnostics of an exhausted hill climb.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct HillClimbFailure {
    pub restarts: usize,
    /// Restarts whose graph generation itself failed.
    pub graph_failures: usize,
    /// Most edges of `T` covered by triangles in any restart.
    pub best_covered: usize,
    pub edges: usize,
    /// Girth of the deficiency graph from the highest-numbered restart that
    /// produced one.
    pub last_girth: Option<usize>,
}

impl fmt::Display for HillClimbFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hill climb failed after {} restarts ({} graph failures): best coverage {}/{} edges, last graph girth {}",
            self.restarts,
            self.graph_failures,
            self.best_covered,
            self.edges,
            fmt_girth(self.last_girth)
        )
    }
}

fn fmt_girth(g: Option<usize>) -> String {
    g.map_or_else(|| "infinite".to_string(), |g| g.to_string())
}

fn check_regular(d: &Graph) -> Result<usize, BuildError> {
    regularity_degree(d).ok_or_else(|| {
        let expected = d.degree(0);
        let point = (0..d.v() as Point).find(|&p| d.degree(p) != expected).unwrap_or(0);
        BuildError::NotRegular { point, degree: d.degree(point), expected }
    })
}

/// The lines are the edges of the complement of `d`: a PENT(2, v-1-w, w)
/// whose deficiency graph is `d` itself.
pub fn pent2_from_graph(d: &Graph) -> Result<Geometry, BuildError> {
    let w = check_regular(d)?;
    let g = girth(d);
    if g.is_some_and(|g| g < 4) {
        return Err(BuildError::GirthTooSmall { girth: g, required: 4 });
    }
    let v = d.v();
    let mut lines = Vec::with_capacity(v * (v - 1 - w) / 2);
    for a in 0..v as Point {
        for b in a + 1..v as Point {
            if !d.has_edge(a, b) {
                lines.push(Block::from_distinct(vec![a, b]));
            }
        }
    }
    let claim = PentParams::new(2, v - 1 - w, w).expect("k = 2");
    Ok(Geometry::with_block_size(v, 2, lines).expect("pairs inside 0..v").with_claim(claim))
}

/// Five groups of `m` points around a pentagon; lines are all pairs inside a
/// group and all pairs between neighbouring groups. This is a
/// PENT(2, 3m-1, 2m) whose deficiency graph has girth 4.
///
/// Panics if `m < 2`.
pub fn figure1_family(m: usize) -> Geometry {
    assert!(m >= 2, "group size must be at least 2");
    let point = |group: usize, i: usize| ((group % 5) * m + i) as Point;
    let mut lines = Vec::new();
    for group in 0..5 {
        for i in 0..m {
            for j in i + 1..m {
                lines.push(Block::from_distinct(vec![point(group, i), point(group, j)]));
            }
            for j in 0..m {
                lines.push(Block::from_distinct(vec![point(group, i), point(group + 1, j)]));
            }
        }
    }
    let claim = PentParams::new(2, 3 * m - 1, 2 * m).expect("k = 2");
    Geometry::with_block_size(5 * m, 2, lines).expect("pairs inside 0..5m").with_claim(claim)
}

/// Places `overlay(N(x))`, an S(2, k, w) on the neighbourhood of `x`, for
/// every vertex `x` of the Moore graph `d`. Point `i` of the returned system
/// is mapped to the `i`-th smallest neighbour.
pub fn moore_overlay<F>(d: &Graph, overlay: F) -> Result<Geometry, BuildError>
where
    F: Fn(&[Point]) -> SteinerSystem,
{
    let w = check_regular(d).map_err(|e| BuildError::NotMooreGraph(e.to_string()))?;
    let v = d.v();
    if v != w * w + 1 {
        return Err(BuildError::NotMooreGraph(format!("{v} vertices, but a {w}-regular Moore graph has {}", w * w + 1)));
    }
    if girth(d) != Some(5) {
        return Err(BuildError::NotMooreGraph(format!("girth {}, not 5", fmt_girth(girth(d)))));
    }
    let mut lines = Vec::new();
    let mut k = None;
    for x in 0..v as Point {
        let nbrs = d.neighbors(x);
        let design = overlay(nbrs);
        let bad = |reason: String| BuildError::OverlayNotSteiner { point: x, reason };
        if design.order() != w {
            return Err(bad(format!("order {} on {w} points", design.order())));
        }
        if let Some(c) = verify_steiner(&design).failures().next() {
            return Err(bad(format!("{}: {}", c.name, c.detail)));
        }
        if *k.get_or_insert(design.k()) != design.k() {
            return Err(bad(format!("block size {} differs from earlier overlays", design.k())));
        }
        lines.extend(design.relabel(nbrs));
    }
    let k = k.unwrap_or(2);
    if k < 2 || w < 2 {
        return Err(BuildError::PreconditionViolated(format!("overlays of block size {k} on {w} points give no lines")));
    }
    let claim = PentParams::new(k, w * (w - 1) / (k - 1), w).expect("k >= 2");
    let g = Geometry::with_block_size(v, k, lines).expect("blocks inside neighbourhoods").with_claim(claim);
    Ok(g)
}

/// Edge-disjoint triangles covering every edge of `t` exactly once, found by
/// randomized hill climbing.
///
/// When `t` is invariant under a translation `x -> x + s (mod v)`, a
/// decomposition invariant under it is tried first (see [`cyclic_shift`]),
/// then an unrestricted one, each with `max_moves`.
pub fn triangle_decompose(t: &Graph, seed: u64, max_moves: usize) -> Result<Vec<Block>, BuildError> {
    let v = t.v();
    let shift = cyclic_shift(t);
    if shift < v {
        if let Ok(tris) = triangle_decompose_symmetric(t, shift, seed, max_moves) {
            return Ok(tris);
        }
    }
    triangle_decompose_symmetric(t, v, seed, max_moves)
}

/// The smallest `s` with `t` invariant under `x -> x + s (mod v)`, widened by
/// [`triangle_shift`] so that no triangle orbit meets itself; `v` when there
/// is no such symmetry.
pub fn cyclic_shift(t: &Graph) -> usize {
    let v = t.v();
    let invariant = |s: usize| t.edges().all(|(a, b)| t.has_edge(step(a, s, v), step(b, s, v)));
    let smallest = (1..v).find(|&s| v % s == 0 && invariant(s)).unwrap_or(v);
    if smallest == v {
        v
    } else {
        triangle_shift(v, smallest)
    }
}

/// As [`triangle_decompose`], but the triangle set is invariant under
/// `x -> x + shift (mod v)`: triangles are added and removed a whole orbit at
/// a time. `t` itself must be invariant under the shift.
pub fn triangle_decompose_symmetric(
    t: &Graph,
    shift: usize,
    seed: u64,
    max_moves: usize,
) -> Result<Vec<Block>, BuildError> {
    let v = t.v();
    if shift == 0 || v % shift != 0 {
        return Err(BuildError::PreconditionViolated(format!("shift {shift} does not divide {v}")));
    }
    if let Some(p) = (0..v as Point).find(|&p| t.degree(p) % 2 != 0) {
        return Err(BuildError::PreconditionViolated(format!("vertex {p} has odd degree {}", t.degree(p))));
    }
    if t.edge_count() % 3 != 0 {
        return Err(BuildError::PreconditionViolated(format!("{} edges is not a multiple of 3", t.edge_count())));
    }
    if shift != v {
        let moved = t.edges().find(|&(a, b)| !t.has_edge(step(a, shift, v), step(b, shift, v)));
        if let Some((a, b)) = moved {
            return Err(BuildError::PreconditionViolated(format!("edge {a}-{b} is not preserved by the shift {shift}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut search = TriangleSearch::new(t, shift);
    search.run(&mut rng, max_moves).map_err(|best_covered| BuildError::DecompositionFailed {
        moves: max_moves,
        best_covered,
        edges: t.edge_count(),
    })
}

fn step(p: Point, by: usize, v: usize) -> Point {
    ((p as usize + by) % v) as Point
}

const NONE: u32 = u32::MAX;

/// Chance that a blocked move places a triangle through a common neighbour
/// anyway, displacing up to two others.
const ESCAPE_PROBABILITY: f64 = 0.01;

/// Hill-climbing state: a partial packing of `T` by triangle orbits.
struct TriangleSearch<'a> {
    t: &'a Graph,
    v: usize,
    shift: usize,
    rows: Vec<FixedBitSet>,
    /// Edge id of each ordered pair, `NONE` off `T`.
    edge_id: Vec<u32>,
    ends: Vec<(Point, Point)>,
    /// Orbit slot covering each edge.
    covered_by: Vec<u32>,
    /// Triangle orbits and the edges they cover; `None` marks a free slot.
    orbits: Vec<Option<(Vec<[Point; 3]>, Vec<u32>)>>,
    free: Vec<u32>,
    uncovered: Vec<u32>,
    /// Position of each edge in `uncovered`, `NONE` when covered.
    position: Vec<u32>,
}

impl<'a> TriangleSearch<'a> {
    fn new(t: &'a Graph, shift: usize) -> TriangleSearch<'a> {
        let v = t.v();
        let mut edge_id = vec![NONE; v * v];
        let ends: Vec<(Point, Point)> = t.edges().collect();
        for (i, &(a, b)) in ends.iter().enumerate() {
            edge_id[a as usize * v + b as usize] = i as u32;
            edge_id[b as usize * v + a as usize] = i as u32;
        }
        let e = ends.len();
        TriangleSearch {
            t,
            v,
            shift,
            rows: t.bit_rows(),
            edge_id,
            ends,
            covered_by: vec![NONE; e],
            orbits: Vec::new(),
            free: Vec::new(),
            uncovered: (0..e as u32).collect(),
            position: (0..e as u32).collect(),
        }
    }

    fn edge(&self, a: Point, b: Point) -> u32 {
        self.edge_id[a as usize * self.v + b as usize]
    }

    /// Returns the triangles, or the best number of covered edges seen.
    fn run(&mut self, rng: &mut ChaCha8Rng, max_moves: usize) -> Result<Vec<Block>, usize> {
        let total = self.ends.len();
        let mut best = 0;
        let mut live = Vec::new();
        let mut tiers: [Vec<Point>; 3] = Default::default();
        for _ in 0..max_moves {
            if self.uncovered.is_empty() {
                break;
            }
            let e = self.uncovered[rng.gen_range(0..self.uncovered.len())];
            let (mut a, mut b) = self.ends[e as usize];
            if rng.gen::<bool>() {
                std::mem::swap(&mut a, &mut b);
            }
            // Uncovered edges at each point come in pairs, so `a` has another.
            live.clear();
            live.extend(
                self.t.neighbors(a).iter().copied().filter(|&c| c != b && self.covered_by[self.edge(a, c) as usize] == NONE),
            );
            let Some(&c) = live.choose(rng) else { continue };
            let c = if self.rows[b as usize].contains(c as usize) {
                c
            } else if rng.gen_bool(ESCAPE_PROBABILITY) {
                self.escape(a, b, rng, &mut tiers)
            } else {
                continue;
            };
            if c != NONE {
                self.place([a, b, c]);
            }
            best = best.max(total - self.uncovered.len());
        }
        if !self.uncovered.is_empty() {
            return Err(best);
        }
        let mut out: Vec<Block> = self
            .orbits
            .iter()
            .flatten()
            .flat_map(|(tris, _)| tris.iter().map(|t| Block::from_distinct(t.to_vec())))
            .collect();
        out.sort_unstable();
        debug_assert!(out.iter().all(|b| b.pairs().all(|(x, y)| self.t.has_edge(x, y))));
        Ok(out)
    }

    /// A common neighbour `c` of `a` and `b`, preferring those whose edges to
    /// `a` and `b` are uncovered, or `NONE` when no common neighbour
    /// exists.
    fn escape(&self, a: Point, b: Point, rng: &mut ChaCha8Rng, tiers: &mut [Vec<Point>; 3]) -> Point {
        tiers.iter_mut().for_each(Vec::clear);
        let mut common = self.rows[a as usize].clone();
        common.intersect_with(&self.rows[b as usize]);
        for c in common.ones() {
            let c = c as Point;
            let live = |x: Point| (self.covered_by[self.edge(x, c) as usize] == NONE) as usize;
            tiers[live(a) + live(b)].push(c);
        }
        match tiers.iter().rev().find(|t| !t.is_empty()) {
            Some(pool) => pool[rng.gen_range(0..pool.len())],
            None => NONE,
        }
    }

    /// Adds the orbit of `tri`, displacing every orbit that shares an edge
    /// with it. Orbits whose own triangles overlap are skipped.
    fn place(&mut self, tri: [Point; 3]) {
        let mut tris: Vec<[Point; 3]> = (0..self.v / self.shift)
            .map(|j| {
                let mut t = tri.map(|p| step(p, j * self.shift, self.v));
                t.sort_unstable();
                t
            })
            .collect();
        tris.sort_unstable();
        tris.dedup();
        let mut edges: Vec<u32> =
            tris.iter().flat_map(|&[x, y, z]| [self.edge(x, y), self.edge(x, z), self.edge(y, z)]).collect();
        let n = edges.len();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != n {
            return;
        }
        for &e in &edges {
            let slot = self.covered_by[e as usize];
            if slot != NONE {
                self.remove(slot);
            }
        }
        let slot = self.free.pop().unwrap_or_else(|| {
            self.orbits.push(None);
            (self.orbits.len() - 1) as u32
        });
        for &e in &edges {
            self.covered_by[e as usize] = slot;
            let pos = self.position[e as usize];
            let last = *self.uncovered.last().expect("edge was uncovered");
            self.uncovered.swap_remove(pos as usize);
            if last != e {
                self.position[last as usize] = pos;
            }
            self.position[e as usize] = NONE;
        }
        self.orbits[slot as usize] = Some((tris, edges));
    }

    fn remove(&mut self, slot: u32) {
        let (_, edges) = self.orbits[slot as usize].take().expect("live orbit");
        for e in edges {
            self.covered_by[e as usize] = NONE;
            self.position[e as usize] = self.uncovered.len() as u32;
            self.uncovered.push(e);
        }
        self.free.push(slot);
    }
}

/// Budgets and target for [`hill_climb_pent3`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HillClimbParams {
    pub w: usize,
    pub r: usize,
    /// Deficiency graph generation; `v`, `w` and `min_girth` are overridden
    /// from the target and the seed from each restart's stream. The overlays
    /// and triangles are invariant under [`triangle_shift`] of its `shift`,
    /// which is the step to use when emitting a certificate.
    pub graph_params: GraphGenParams,
    /// Triangle moves per restart.
    pub max_moves: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl HillClimbParams {
    /// Defaults: graph generation per [`GraphGenParams::new`] with at most 20
    /// attempts, `200 |E(T)|` moves and 50 restarts.
    pub fn new(w: usize, r: usize, seed: u64) -> HillClimbParams {
        let v = 2 * r + w + 1;
        let t_edges = v * (2 * r).saturating_sub(w * w.saturating_sub(1)) / 2;
        let graph_params = GraphGenParams { max_attempts: 20, ..GraphGenParams::new(v, w, 5, seed) };
        HillClimbParams { w, r, graph_params, max_moves: 200 * t_edges, restarts: 50, seed }
    }

    pub fn v(&self) -> usize {
        2 * self.r + self.w + 1
    }
}

struct RestartRecord {
    graph_failures: usize,
    best_covered: usize,
    last_girth: Option<(usize, Option<usize>)>,
}

/// Random connected `(w, 5+)`-graph `D` with the configured shift symmetry,
/// an STS(w) on every neighbourhood, then a triangle decomposition of the
/// remaining pairs. Restarts begin again from a fresh graph.
///
/// Restart `i` draws its seeds from stream `i` of a ChaCha8 generator seeded
/// with `seed`. Restarts run on the current rayon pool; the first successful
/// restart by index is returned, so the result does not depend on the
/// number of threads. The output has passed [`verify_pent_with`] with girth
/// and connectivity required.
pub fn hill_climb_pent3(p: &HillClimbParams) -> Result<Geometry, BuildError> {
    let HillClimbParams { w, r, .. } = *p;
    if w % 6 != 1 && w % 6 != 3 {
        return Err(BuildError::PreconditionViolated(format!("no STS({w}): w must be 1 or 3 mod 6")));
    }
    let params = PentParams::new(3, r, w).expect("k = 3");
    if !is_admissible(params) {
        return Err(BuildError::PreconditionViolated(format!("{params} is not admissible")));
    }
    let v = p.v();
    if v < w * w + 1 {
        return Err(BuildError::PreconditionViolated(format!("{v} points is below the Moore bound {}", w * w + 1)));
    }
    let shift = p.graph_params.shift;
    if shift == 0 || v % shift != 0 {
        return Err(BuildError::PreconditionViolated(format!("shift {shift} does not divide {v}")));
    }
    let edges = v * (2 * r - w * (w - 1)) / 2;
    let record = Mutex::new(RestartRecord { graph_failures: 0, best_covered: 0, last_girth: None });
    let found = (0..p.restarts).into_par_iter().find_map_first(|restart| {
        let attempt = run_restart(p, params, restart);
        let mut rec = record.lock().expect("restart record");
        match attempt {
            Ok(g) => return Some(g),
            Err(RestartFailure::Graph) => rec.graph_failures += 1,
            Err(RestartFailure::Triangles { best_covered, girth }) => {
                rec.best_covered = rec.best_covered.max(best_covered);
                if rec.last_girth.is_none_or(|(i, _)| i < restart) {
                    rec.last_girth = Some((restart, girth));
                }
            }
        }
        None
    });
    if let Some(g) = found {
        return Ok(g);
    }
    let rec = record.into_inner().expect("restart record");
    Err(BuildError::HillClimbFailed(HillClimbFailure {
        restarts: p.restarts,
        graph_failures: rec.graph_failures,
        best_covered: rec.best_covered,
        edges,
        last_girth: rec.last_girth.and_then(|(_, g)| g),
    }))
}

enum RestartFailure {
    Graph,
    Triangles { best_covered: usize, girth: Option<usize> },
}

fn run_restart(p: &HillClimbParams, params: PentParams, restart: usize) -> Result<Geometry, RestartFailure> {
    let (w, v) = (p.w, p.v());
    let shift = p.graph_params.shift;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    rng.set_stream(restart as u64);
    let graph_params = GraphGenParams { v, w, min_girth: 5, seed: rng.gen(), ..p.graph_params };
    let d = random_regular_girth(&graph_params).map_err(|_| RestartFailure::Graph)?;
    let shift = triangle_shift(v, shift);
    let design = sts(w).expect("w is 1 or 3 mod 6");
    let mut lines = Vec::with_capacity(v * design.blocks().len());
    for base in 0..shift as Point {
        let mut labels = d.neighbors(base).to_vec();
        labels.shuffle(&mut rng);
        let blocks = design.relabel(&labels);
        for j in 0..v / shift {
            lines.extend(blocks.iter().map(|b| b.translate((j * shift) as u64, v as u64)));
        }
    }
    let t = remaining_pairs(v, &d, &lines);
    let seed = rng.gen();
    let triangles = triangle_decompose_symmetric(&t, shift, seed, p.max_moves).map_err(|e| match e {
        BuildError::DecompositionFailed { best_covered, .. } => {
            RestartFailure::Triangles { best_covered, girth: girth(&d) }
        }
        _ => RestartFailure::Triangles { best_covered: 0, girth: girth(&d) },
    })?;
    lines.extend(triangles);
    let geometry = Geometry::with_block_size(v, 3, lines).expect("triples inside 0..v").with_claim(params);
    let opts = VerifyOptions { expected: Some(params), require_girth5: true, require_connected: true, ..Default::default() };
    if !verify_pent_with(&geometry, &opts).overall {
        return Err(RestartFailure::Triangles { best_covered: 0, girth: girth(&d) });
    }
    Ok(geometry)
}

/// The smallest multiple of `shift` dividing `v` with `v / result` odd.
///
/// If `v / shift` is even, the half turn `x -> x + v/2` is a power of the
/// shift, and a triangle on a pair `{x, x + v/2}` would share that pair with
/// its own image; no invariant decomposition could cover such pairs.
pub fn triangle_shift(v: usize, shift: usize) -> usize {
    let mut s = shift;
    while s < v && (v / s) % 2 == 0 {
        s *= 2;
    }
    s
}

/// Pairs that are neither edges of `d` nor covered by `lines`.
fn remaining_pairs(v: usize, d: &Graph, lines: &[Block]) -> Graph {
    let mut rows: Vec<FixedBitSet> = d.bit_rows();
    for (x, row) in rows.iter_mut().enumerate() {
        row.insert(x);
    }
    for l in lines {
        for (a, b) in l.pairs() {
            rows[a as usize].insert(b as usize);
            rows[b as usize].insert(a as usize);
        }
    }
    let edges = rows.iter().enumerate().flat_map(|(a, row)| {
        row.zeroes().filter(move |&b| b > a).map(move |b| (a as Point, b as Point))
    });
    Graph::from_edges(v, edges.collect::<Vec<_>>()).expect("simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::complete_design;
    use crate::graphs::{hoffman_singleton, is_connected, petersen};
    use crate::pent::{deficiency, verify_pent, verify_pls};

    fn tally(triangles: &[Block], t: &Graph) {
        let mut seen = std::collections::HashSet::new();
        for tri in triangles {
            for (a, b) in tri.pairs() {
                assert!(t.has_edge(a, b), "{a}-{b} not in T");
                assert!(seen.insert((a, b)), "{a}-{b} covered twice");
            }
        }
        assert_eq!(seen.len(), t.edge_count());
    }

    #[test]
    fn pentagon_from_five_cycle() {
        let g = pent2_from_graph(&Graph::cycle(5)).unwrap();
        assert_eq!(g.lines().len(), 5);
        assert!(verify_pent(&g).overall);
        assert_eq!(g.claimed(), Some(PentParams { k: 2, r: 2, w: 2 }));
    }

    #[test]
    fn complements_of_moore_graphs() {
        let g = pent2_from_graph(&petersen()).unwrap();
        assert_eq!((g.lines().len(), g.claimed().unwrap().r), (30, 6));
        assert!(verify_pent(&g).overall);
        let hs = hoffman_singleton();
        let g = pent2_from_graph(&hs).unwrap();
        assert_eq!((g.lines().len(), g.claimed().unwrap().r), (1050, 42));
        assert!(verify_pent(&g).overall);
        assert_eq!(deficiency(&g).unwrap().graph, hs);
    }

    #[test]
    fn complement_rejects_triangles_and_irregular_graphs() {
        assert!(matches!(pent2_from_graph(&Graph::complete(4)), Err(BuildError::GirthTooSmall { girth: Some(3), .. })));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(pent2_from_graph(&path), Err(BuildError::NotRegular { .. })));
    }

    #[test]
    fn pentagon_of_cliques() {
        let g = figure1_family(4);
        assert_eq!((g.v(), g.lines().len()), (20, 110));
        assert!(verify_pls(&g).overall);
        assert!(verify_pent(&g).overall);
        let view = deficiency(&g).unwrap();
        assert_eq!(girth(&view.graph), Some(4));
        assert!(is_connected(&view.graph));
        for x in 1..4 {
            assert_eq!(view.opposite_points(0), view.opposite_points(x));
        }
        // Tally for m = 2: 5 pairs inside groups, 5 * 4 between neighbours.
        let g = figure1_family(2);
        assert_eq!((g.v(), g.lines().len()), (10, 25));
        assert_eq!(g.claimed(), Some(PentParams { k: 2, r: 5, w: 4 }));
        assert!(verify_pent(&g).overall);
    }

    #[test]
    fn overlays_on_moore_graphs() {
        let hs = hoffman_singleton();
        let g = moore_overlay(&hs, |_| sts(7).unwrap()).unwrap();
        assert_eq!(g.lines().len(), 350);
        assert_eq!(g.claimed(), Some(PentParams { k: 3, r: 21, w: 7 }));
        assert!(verify_pent(&g).overall);
        let g = moore_overlay(&hs, |_| complete_design(7)).unwrap();
        assert_eq!((g.lines().len(), g.claimed().unwrap().r), (1050, 42));
        assert!(verify_pent(&g).overall);
        let g = moore_overlay(&petersen(), |_| complete_design(3)).unwrap();
        assert_eq!((g.lines().len(), g.claimed().unwrap().r), (30, 6));
        assert!(verify_pent(&g).overall);
        let g = moore_overlay(&Graph::cycle(5), |_| complete_design(2)).unwrap();
        assert_eq!(g.lines().len(), 5);
    }

    #[test]
    fn overlay_rejects_non_moore_graphs_and_bad_designs() {
        assert!(matches!(moore_overlay(&Graph::cycle(6), |_| complete_design(2)), Err(BuildError::NotMooreGraph(_))));
        let broken = |_: &[Point]| {
            let mut blocks = sts(7).unwrap().blocks().to_vec();
            blocks.pop();
            SteinerSystem::new(7, 3, blocks)
        };
        assert!(matches!(moore_overlay(&hoffman_singleton(), broken), Err(BuildError::OverlayNotSteiner { point: 0, .. })));
    }

    #[test]
    fn decomposes_complete_graph_on_seven() {
        let k7 = Graph::complete(7);
        let tris = (1..=10).find_map(|s| triangle_decompose(&k7, s, 10_000).ok()).expect("some seed succeeds");
        assert_eq!(tris.len(), 7);
        tally(&tris, &k7);
    }

    #[test]
    fn decomposition_preconditions() {
        assert!(matches!(triangle_decompose(&Graph::complete(4), 1, 100), Err(BuildError::PreconditionViolated(_))));
        // K_3 plus an isolated-free 4-cycle: even degrees, 7 edges.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)]).unwrap();
        assert!(matches!(triangle_decompose(&g, 1, 100), Err(BuildError::PreconditionViolated(_))));
        // A 6-cycle has even degrees and 6 edges but no triangles at all.
        assert!(matches!(triangle_decompose(&Graph::cycle(6), 1, 100), Err(BuildError::DecompositionFailed { best_covered: 0, .. })));
    }

    #[test]
    fn symmetric_decomposition_of_complete_graphs() {
        // K_13 has a cyclic STS(13); K_15 a triangle orbit of length 5.
        for n in [13, 15] {
            let k = Graph::complete(n);
            let tris = (1..=20).find_map(|s| triangle_decompose_symmetric(&k, 1, s, 20_000).ok()).unwrap();
            tally(&tris, &k);
            let set: std::collections::BTreeSet<_> = tris.iter().cloned().collect();
            assert!(tris.iter().all(|t| set.contains(&t.translate(1, n as u64))));
        }
    }

    #[test]
    fn falls_back_when_no_invariant_decomposition_exists() {
        // K_9 is invariant under x -> x + 1 but has no cyclic STS(9).
        let k9 = Graph::complete(9);
        assert_eq!(cyclic_shift(&k9), 1);
        assert!((1..=10).all(|s| triangle_decompose_symmetric(&k9, 1, s, 5_000).is_err()));
        let tris = (1..=10).find_map(|s| triangle_decompose(&k9, s, 50_000).ok()).expect("some seed succeeds");
        assert_eq!(tris.len(), 12);
        tally(&tris, &k9);
    }

    #[test]
    fn cyclic_shift_of_translated_graphs() {
        // Invariant under +1, but 6 / 1 is even, so widened to 2.
        assert_eq!(cyclic_shift(&Graph::cycle(6)), 2);
        assert_eq!(cyclic_shift(&Graph::cycle(7)), 1);
        let g = Graph::from_edges(6, [(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5)]).unwrap();
        assert_eq!(cyclic_shift(&g), 2);
        let path = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(cyclic_shift(&path), 4);
        // Invariant under +4 only; 8 / 4 is even.
        let matching = Graph::from_edges(8, [(0, 4), (2, 6)]).unwrap();
        assert_eq!(cyclic_shift(&matching), 8);
    }

    #[test]
    fn triangle_shift_makes_the_orbit_count_odd() {
        assert_eq!(triangle_shift(74, 2), 2);
        assert_eq!(triangle_shift(124, 2), 4);
        assert_eq!(triangle_shift(78, 6), 6);
        assert_eq!(triangle_shift(96, 2), 32);
        assert_eq!(triangle_shift(64, 2), 64);
    }

    #[test]
    fn hill_climb_rejects_bad_targets() {
        assert!(matches!(hill_climb_pent3(&HillClimbParams::new(5, 33, 1)), Err(BuildError::PreconditionViolated(_))));
        assert!(matches!(hill_climb_pent3(&HillClimbParams::new(7, 34, 1)), Err(BuildError::PreconditionViolated(_))));
        assert!(matches!(hill_climb_pent3(&HillClimbParams::new(7, 20, 1)), Err(BuildError::PreconditionViolated(_))));
    }

    #[test]
    fn hill_climb_builds_a_pent_3_33_7() {
        let p = HillClimbParams::new(7, 33, 1);
        let g = hill_climb_pent3(&p).unwrap();
        assert_eq!((g.v(), g.lines().len()), (74, 814));
        let report = verify_pent(&g);
        assert!(report.overall, "{}", report.to_json());
        let set = g.line_set();
        assert!(g.lines().iter().all(|l| set.contains(&l.translate(2, 74))));
    }
}
