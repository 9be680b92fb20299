//! The verifier: partial-linear-space checks, the deficiency graph, opposite
//! designs, the pair census and the edge decomposition `D + S + T`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::designs::{verify_gdd, verify_steiner, Gdd, PairCounts, SteinerSystem};
use crate::graphs::{girth, is_connected, Graph};
use crate::incidence::{Block, Geometry, Point, ReportParams, VerificationReport};
use crate::params::PentParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PentError {
    #[error("not a partial linear space: {0}")]
    NotPartialLinearSpace(String),
    #[error("deficiency graph is not {expected}-regular: point {point} has degree {degree}")]
    NotWRegular { point: Point, degree: usize, expected: usize },
    #[error("deficiency graph has triangle {0:?}")]
    TriangleFound([Point; 3]),
    #[error("opposite design of {point} is not a Steiner system: {reason}")]
    NotSteiner { point: Point, reason: String, pair: Option<(Point, Point)> },
    #[error("deficiency graph has girth {0:?}, below 5")]
    GirthBelowFive(Option<usize>),
    #[error("pair census {found:?} differs from expected {expected:?}")]
    CensusMismatch { found: PairCensus, expected: PairCensus },
    #[error("decomposition mismatch: {0}")]
    DecompositionMismatch(String),
}

/// Inferred `(k, r, w)`: `k` from the lines, `r` from point 0, `w` from `|W_0|`.
fn infer(g: &Geometry) -> (usize, Option<usize>, Option<usize>) {
    let k = g.k();
    let r = g.point_degrees().first().copied();
    let w = r.and_then(|r| (g.v() as isize - 1 - (r * (k - 1)) as isize).try_into().ok());
    (k, r, w)
}

fn report_params(g: &Geometry) -> ReportParams {
    let (k, r, w) = infer(g);
    ReportParams { k, r, w, v: g.v(), lines: g.lines().len() }
}

/// Line size, constant replication, pairs on at most one line, and no
/// repeated lines.
pub fn verify_pls(g: &Geometry) -> VerificationReport {
    let mut report = VerificationReport::new(report_params(g));
    push_pls_checks(&mut report, g, &PairCounts::new(g.v(), g.lines()));
    report
}

fn push_pls_checks(report: &mut VerificationReport, g: &Geometry, pc: &PairCounts) {
    let k = g.k();
    report.push("uniform line size", true, format!("every line has {k} points"));
    let deg = g.point_degrees();
    let r = deg.first().copied().unwrap_or(0);
    match deg.iter().position(|&d| d != r) {
        None => report.push("constant replication", true, format!("every point is on {r} lines")),
        Some(p) => report.push_with(
            "constant replication",
            false,
            format!("point {p} is on {} lines, point 0 on {r}", deg[p]),
            Some(vec![p as Point]),
        ),
    }
    match pc.iter().find(|&(_, c)| c > 1) {
        None => report.push("pairs on at most one line", true, "no pair is covered twice"),
        Some(((x, y), c)) => report.push_with(
            "pairs on at most one line",
            false,
            format!("pair {x},{y} lies on {c} lines"),
            Some(vec![x, y]),
        ),
    }
    // lines are kept sorted, so repeats are adjacent
    match g.lines().windows(2).find(|w| w[0] == w[1]) {
        None => report.push("no duplicate lines", true, format!("{} distinct lines", g.lines().len())),
        Some(w) => report.push_with(
            "no duplicate lines",
            false,
            format!("line {} appears more than once", w[0]),
            Some(w[0].points().to_vec()),
        ),
    }
}

/// The deficiency graph with each point's opposite point set and the lines
/// lying inside it.
#[derive(Debug, Clone)]
pub struct DeficiencyView {
    pub graph: Graph,
    /// Indices into the geometry's line list, per point.
    pub opposite_blocks: Vec<Vec<usize>>,
}

impl DeficiencyView {
    /// `W_x`, the points not collinear with `x`.
    pub fn opposite_points(&self, x: Point) -> &[Point] {
        self.graph.neighbors(x)
    }

    /// For each line, the points whose opposite set contains it.
    pub fn owners(&self) -> Vec<Vec<Point>> {
        let lines = self.opposite_blocks.iter().flatten().max().map_or(0, |&m| m + 1);
        let mut owners = vec![Vec::new(); lines];
        for (x, ls) in self.opposite_blocks.iter().enumerate() {
            for &l in ls {
                owners[l].push(x as Point);
            }
        }
        owners
    }
}

fn deficiency_graph(g: &Geometry, pc: &PairCounts) -> Graph {
    let v = g.v() as Point;
    let adj = (0..v).map(|x| (0..v).filter(|&y| y != x && pc.get(x, y) == 0).collect()).collect();
    Graph::from_adjacency(adj)
}

/// Points `x` with `line ⊆ W_x`: common deficiency-neighbours of its points.
fn line_owners(line: &Block, graph: &Graph, bits: &[FixedBitSet]) -> Vec<Point> {
    let pts = line.points();
    graph
        .neighbors(pts[0])
        .iter()
        .copied()
        .filter(|&x| pts[1..].iter().all(|&p| bits[p as usize].contains(x as usize)))
        .collect()
}

fn opposite_blocks(g: &Geometry, graph: &Graph) -> Vec<Vec<usize>> {
    let bits = graph.bit_rows();
    let owners: Vec<Vec<Point>> = g.lines().par_iter().map(|l| line_owners(l, graph, &bits)).collect();
    let mut per_point = vec![Vec::new(); g.v()];
    for (i, os) in owners.iter().enumerate() {
        for &x in os {
            per_point[x as usize].push(i);
        }
    }
    per_point
}

/// Builds the deficiency graph and checks it is `w`-regular and triangle-free.
pub fn deficiency(g: &Geometry) -> Result<DeficiencyView, PentError> {
    let pc = PairCounts::new(g.v(), g.lines());
    let pls = {
        let mut r = VerificationReport::new(report_params(g));
        push_pls_checks(&mut r, g, &pc);
        r
    };
    if let Some(c) = pls.failures().next() {
        return Err(PentError::NotPartialLinearSpace(format!("{}: {}", c.name, c.detail)));
    }
    let graph = deficiency_graph(g, &pc);
    check_deficiency_graph(g, &graph)?;
    let opposite_blocks = opposite_blocks(g, &graph);
    Ok(DeficiencyView { graph, opposite_blocks })
}

fn check_deficiency_graph(g: &Geometry, graph: &Graph) -> Result<(), PentError> {
    let w = graph.degree(0);
    if let Some(p) = (0..g.v() as Point).find(|&p| graph.degree(p) != w) {
        return Err(PentError::NotWRegular { point: p, degree: graph.degree(p), expected: w });
    }
    if let Some(t) = find_triangle(graph) {
        return Err(PentError::TriangleFound(t));
    }
    Ok(())
}

fn find_triangle(graph: &Graph) -> Option<[Point; 3]> {
    for (a, b) in graph.edges() {
        let (na, nb) = (graph.neighbors(a), graph.neighbors(b));
        if let Some(&c) = na.iter().find(|c| nb.binary_search(c).is_ok()) {
            let mut t = [a, b, c];
            t.sort_unstable();
            return Some(t);
        }
    }
    None
}

/// The lines inside `W_x`, verified as an S(2, k, w) on `W_x`.
pub fn opposite_design(g: &Geometry, x: Point) -> Result<Vec<Block>, PentError> {
    let view = deficiency(g)?;
    let blocks: Vec<Block> = view.opposite_blocks[x as usize].iter().map(|&i| g.lines()[i].clone()).collect();
    check_opposite(g.k(), view.opposite_points(x), &blocks).map_err(|(reason, pair)| PentError::NotSteiner {
        point: x,
        reason,
        pair,
    })?;
    Ok(blocks)
}

/// `blocks` (all inside `points`) cover each pair of `points` exactly once.
fn check_opposite(k: usize, points: &[Point], blocks: &[Block]) -> Result<(), (String, Option<(Point, Point)>)> {
    let w = points.len();
    let local: Vec<Block> = blocks
        .iter()
        .map(|b| b.relabel(|p| points.binary_search(&p).expect("block inside W_x") as Point))
        .collect();
    let report = verify_steiner(&SteinerSystem::new(w, k, local));
    let failure = report.failures().next().cloned();
    match failure {
        None => Ok(()),
        Some(c) => {
            let pair = c.counterexample.as_ref().filter(|p| p.len() == 2).map(|p| {
                (points[p[0] as usize], points[p[1] as usize])
            });
            Err((format!("{}: {} blocks on {w} points", c.name, blocks.len()), pair))
        }
    }
}

/// Options for [`verify_pent_with`].
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Parameters the geometry must have; defaults to the geometry's claim.
    pub expected: Option<PentParams>,
    /// Fail unless the deficiency graph has girth at least 5.
    pub require_girth5: bool,
    /// Fail unless the deficiency graph is connected.
    pub require_connected: bool,
    /// Opposite designs asserted by a certificate, checked against the
    /// recomputed ones.
    pub claimed_opposite: Vec<(Point, Vec<Block>)>,
}

/// [`verify_pent_with`] using the geometry's own claim, if any.
pub fn verify_pent(g: &Geometry) -> VerificationReport {
    verify_pent_with(g, &VerifyOptions::default())
}

/// Full verification. Girth and connectivity of the deficiency graph are
/// always reported; they fail only when required by `opts`.
pub fn verify_pent_with(g: &Geometry, opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::new(report_params(g));
    let pc = PairCounts::new(g.v(), g.lines());
    push_pls_checks(&mut report, g, &pc);
    let (k, r, w) = infer(g);
    let expected = opts.expected.or(g.claimed());
    if let Some(e) = expected {
        let ok = e.k == k && Some(e.r) == r && Some(e.w) == w;
        report.push(
            "parameters match claim",
            ok,
            format!("claimed {e}, found k = {k}, r = {}, w = {}", fmt_opt(r), fmt_opt(w)),
        );
    }
    let (Some(r), Some(w)) = (r, w) else {
        report.push("point count", false, format!("{} points cannot host lines of size {k} with r = {}", g.v(), fmt_opt(r)));
        return report;
    };
    if !report.overall {
        return report;
    }
    if w <= 1 {
        push_degenerate(&mut report, g, &pc, w);
        return report;
    }
    let graph = deficiency_graph(g, &pc);
    match graph.degree(0) == w {
        true => report.push("point count", true, format!("v = r(k-1) + w + 1 = {}", g.v())),
        false => report.push("point count", false, format!("|W_0| = {} but v - 1 - r(k-1) = {w}", graph.degree(0))),
    }
    report.push(
        "line count",
        g.lines().len() * k == g.v() * r,
        format!("{} lines, v r / k = {}", g.lines().len(), g.v() * r / k),
    );
    match check_deficiency_graph(g, &graph) {
        Ok(()) => {
            report.push("deficiency graph regular", true, format!("every point has {w} non-collinear points"));
            report.push("deficiency graph triangle-free", true, "no three pairwise non-collinear points");
        }
        Err(PentError::NotWRegular { point, degree, expected }) => {
            report.push_with(
                "deficiency graph regular",
                false,
                format!("point {point} has {degree} non-collinear points, point 0 has {expected}"),
                Some(vec![point]),
            );
            return report;
        }
        Err(PentError::TriangleFound(t)) => {
            report.push("deficiency graph regular", true, format!("every point has {w} non-collinear points"));
            report.push_with(
                "deficiency graph triangle-free",
                false,
                format!("points {},{},{} are pairwise non-collinear", t[0], t[1], t[2]),
                Some(t.to_vec()),
            );
            return report;
        }
        Err(e) => unreachable!("unexpected {e}"),
    }
    let blocks = opposite_blocks(g, &graph);
    let bad = (0..g.v())
        .into_par_iter()
        .map(|x| {
            let own: Vec<Block> = blocks[x].iter().map(|&i| g.lines()[i].clone()).collect();
            check_opposite(k, graph.neighbors(x as Point), &own).err().map(|e| (x, e))
        })
        .find_first(|e| e.is_some())
        .flatten();
    match bad {
        None => report.push("opposite designs", true, format!("every W_x carries an S(2,{k},{w}) of lines")),
        Some((x, (reason, pair))) => {
            report.push_with(
                "opposite designs",
                false,
                format!("point {x}: {reason}"),
                Some(pair.map_or(vec![x as Point], |(a, b)| vec![x as Point, a, b])),
            );
            return report;
        }
    }
    let gi = girth(&graph);
    report.push(
        "deficiency girth",
        !opts.require_girth5 || gi.is_none_or(|x| x >= 5),
        format!("girth {}", gi.map_or("infinite".to_string(), |x| x.to_string())),
    );
    let connected = is_connected(&graph);
    report.push(
        "deficiency connected",
        !opts.require_connected || connected,
        format!("{} component(s)", graph.components().1),
    );
    let shared = blocks.iter().flatten().count() - {
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let disjoint = shared == 0;
    report.push(
        "opposite designs block-disjoint",
        !opts.require_girth5 || disjoint,
        if disjoint { "no line lies in two opposite designs".to_string() } else { format!("{shared} repeated opposite blocks") },
    );
    let max_common = max_common_neighbours(&graph);
    let girth5 = gi.is_none_or(|x| x >= 5);
    let consistent = disjoint == (max_common <= 1) && disjoint == girth5;
    report.push(
        "girth and disjointness consistent",
        consistent,
        format!("block-disjoint {disjoint}, max |W_x ∩ W_y| = {max_common}, girth >= 5 {girth5}"),
    );
    for (x, claimed) in &opts.claimed_opposite {
        let mut mine: Vec<Block> = blocks[*x as usize].iter().map(|&i| g.lines()[i].clone()).collect();
        mine.sort_unstable();
        let mut theirs = claimed.clone();
        theirs.sort_unstable();
        if mine != theirs {
            report.push_with(
                "claimed opposite designs",
                false,
                format!("claimed opposite design of {x} differs from the recomputed one"),
                Some(vec![*x]),
            );
            return report;
        }
    }
    if !opts.claimed_opposite.is_empty() {
        report.push(
            "claimed opposite designs",
            true,
            format!("{} claimed opposite designs match", opts.claimed_opposite.len()),
        );
    }
    report
}

fn fmt_opt(x: Option<usize>) -> String {
    x.map_or("?".to_string(), |x| x.to_string())
}

/// `w = 0` is a Steiner system on all points; `w = 1` a GDD whose groups are
/// the non-collinear pairs.
fn push_degenerate(report: &mut VerificationReport, g: &Geometry, pc: &PairCounts, w: usize) {
    report.push("degenerate w", true, format!("w = {w}: checked as a {}", if w == 0 { "Steiner system" } else { "GDD" }));
    let inner = if w == 0 {
        verify_steiner(&SteinerSystem::new(g.v(), g.k(), g.lines().to_vec()))
    } else {
        let graph = deficiency_graph(g, pc);
        let groups: Vec<Vec<Point>> = (0..g.v() as Point)
            .map(|x| {
                let mut grp = vec![x];
                grp.extend_from_slice(graph.neighbors(x));
                grp.sort_unstable();
                grp
            })
            .filter(|grp| grp[0] == grp.iter().copied().min().unwrap_or(0))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        verify_gdd(&Gdd::new(g.v(), g.k(), groups, g.lines().to_vec()))
    };
    for c in inner.checks {
        report.push_with(&c.name, c.pass, c.detail, c.counterexample);
    }
}

/// Largest `|N(x) ∩ N(y)|` over pairs `x != y`.
pub(crate) fn max_common_neighbours(graph: &Graph) -> usize {
    let v = graph.v();
    (0..v as Point)
        .into_par_iter()
        .map_init(
            || vec![0usize; v],
            |count, x| {
                let mut best = 0;
                for &z in graph.neighbors(x) {
                    for &y in graph.neighbors(z) {
                        if y != x {
                            count[y as usize] += 1;
                            best = best.max(count[y as usize]);
                        }
                    }
                }
                for &z in graph.neighbors(x) {
                    for &y in graph.neighbors(z) {
                        count[y as usize] = 0;
                    }
                }
                best
            },
        )
        .max()
        .unwrap_or(0)
}

/// Pairs by their distance in the deficiency graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCensus {
    pub adjacent: usize,
    pub distance2: usize,
    pub distance_ge3: usize,
}

impl PairCensus {
    /// `(w v / 2, w (w-1) v / 2, (v - w^2 - 1) v / 2)`.
    pub fn expected(v: usize, w: usize) -> PairCensus {
        PairCensus {
            adjacent: w * v / 2,
            distance2: w * (w - 1) * v / 2,
            distance_ge3: (v as isize - (w * w) as isize - 1).max(0) as usize * v / 2,
        }
    }
}

fn census_of(graph: &Graph) -> PairCensus {
    let v = graph.v();
    let adjacent = graph.edge_count();
    let mut mark = vec![usize::MAX; v];
    let mut d2 = 0;
    for x in 0..v {
        mark[x] = x;
        for &z in graph.neighbors(x as Point) {
            mark[z as usize] = x;
        }
        for &z in graph.neighbors(x as Point) {
            for &y in graph.neighbors(z) {
                if mark[y as usize] != x {
                    mark[y as usize] = x;
                    d2 += 1;
                }
            }
        }
    }
    let d2 = d2 / 2;
    PairCensus { adjacent, distance2: d2, distance_ge3: v * (v - 1) / 2 - adjacent - d2 }
}

fn girth5_view(g: &Geometry) -> Result<DeficiencyView, PentError> {
    let view = deficiency(g)?;
    let gi = girth(&view.graph);
    if gi.is_some_and(|x| x < 5) {
        return Err(PentError::GirthBelowFive(gi));
    }
    Ok(view)
}

/// Counts pairs at distance 1, 2 and at least 3 in the deficiency graph and
/// compares with the girth-5 formulas.
pub fn pair_census(g: &Geometry) -> Result<PairCensus, PentError> {
    let view = girth5_view(g)?;
    let found = census_of(&view.graph);
    let expected = PairCensus::expected(g.v(), view.graph.degree(0));
    if found != expected {
        return Err(PentError::CensusMismatch { found, expected });
    }
    Ok(found)
}

/// The complete graph on the points split into `D` (non-collinear pairs),
/// `S` (pairs inside opposite blocks) and `T` (the rest).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub d: Graph,
    pub s: Graph,
    pub t: Graph,
    /// Opposite-design blocks of each point.
    pub s_blocks: Vec<Vec<Block>>,
    /// The lines in no opposite design; their pairs are exactly `T`.
    pub t_lines: Vec<Block>,
}

/// Builds and checks the decomposition of a girth-5 geometry.
pub fn decomposition(g: &Geometry) -> Result<Decomposition, PentError> {
    let view = girth5_view(g)?;
    let (v, k, w) = (g.v(), g.k(), view.graph.degree(0));
    let r = g.point_degrees()[0];
    let mut in_opposite = vec![false; g.lines().len()];
    let s_blocks: Vec<Vec<Block>> = view
        .opposite_blocks
        .iter()
        .map(|ls| {
            ls.iter()
                .map(|&i| {
                    in_opposite[i] = true;
                    g.lines()[i].clone()
                })
                .collect()
        })
        .collect();
    let mut s_adj = vec![Vec::new(); v];
    for b in s_blocks.iter().flatten() {
        for (x, y) in b.pairs() {
            s_adj[x as usize].push(y);
            s_adj[y as usize].push(x);
        }
    }
    let s = Graph::from_adjacency(s_adj);
    let t_lines: Vec<Block> =
        g.lines().iter().zip(&in_opposite).filter(|(_, &o)| !o).map(|(l, _)| l.clone()).collect();
    let mut t_adj = vec![Vec::new(); v];
    for b in &t_lines {
        for (x, y) in b.pairs() {
            t_adj[x as usize].push(y);
            t_adj[y as usize].push(x);
        }
    }
    let t = Graph::from_adjacency(t_adj);
    let s_deg = w * (w - 1);
    let t_deg = v - 1 - w - s_deg;
    if let Some(x) = (0..v as Point).find(|&x| s.degree(x) != s_deg) {
        return Err(PentError::DecompositionMismatch(format!("S has degree {} at {x}, expected {s_deg}", s.degree(x))));
    }
    if let Some(x) = (0..v as Point).find(|&x| t.degree(x) != t_deg) {
        return Err(PentError::DecompositionMismatch(format!("T has degree {} at {x}, expected {t_deg}", t.degree(x))));
    }
    // Every pair is in exactly one of D, S, T.
    let d_bits = view.graph.bit_rows();
    let s_bits = s.bit_rows();
    let t_bits = t.bit_rows();
    for x in 0..v {
        let mut row = d_bits[x].clone();
        if !row.is_disjoint(&s_bits[x]) || !row.is_disjoint(&t_bits[x]) || !s_bits[x].is_disjoint(&t_bits[x]) {
            return Err(PentError::DecompositionMismatch(format!("D, S, T overlap at point {x}")));
        }
        row.union_with(&s_bits[x]);
        row.union_with(&t_bits[x]);
        if row.count_ones(..) != v - 1 {
            return Err(PentError::DecompositionMismatch(format!("D, S, T miss a pair at point {x}")));
        }
    }
    let bound = if k > 1 && (w * (w - 1)) % (k - 1) == 0 { Some(w * (w - 1) / (k - 1)) } else { None };
    if bound.map(|b| b + 1) == Some(r) {
        let mut seen = vec![0usize; v];
        for l in &t_lines {
            for &p in l.points() {
                seen[p as usize] += 1;
            }
        }
        if let Some(p) = seen.iter().position(|&c| c != 1) {
            return Err(PentError::DecompositionMismatch(format!(
                "the K_{k}s of T do not partition the points: point {p} is in {}",
                seen[p]
            )));
        }
    }
    Ok(Decomposition { d: view.graph, s, t, s_blocks, t_lines })
}

/// `u = |W_x ∩ W_y|` and the blocks shared by the two opposite designs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub u: usize,
    pub shared_blocks: Vec<Block>,
    /// For `u >= 2`: whether the shared blocks form an S(2, k, u) on the
    /// common points.
    pub common_design: Option<bool>,
}

pub fn intersection_profile(g: &Geometry, x: Point, y: Point) -> Result<IntersectionProfile, PentError> {
    assert_ne!(x, y, "intersection profile needs two distinct points");
    let view = deficiency(g)?;
    Ok(profile(g, &view, x, y))
}

pub(crate) fn profile(g: &Geometry, view: &DeficiencyView, x: Point, y: Point) -> IntersectionProfile {
    let wy = view.opposite_points(y);
    let common: Vec<Point> = view.opposite_points(x).iter().copied().filter(|p| wy.binary_search(p).is_ok()).collect();
    let ys = &view.opposite_blocks[y as usize];
    let shared: Vec<Block> = view.opposite_blocks[x as usize]
        .iter()
        .filter(|i| ys.contains(i))
        .map(|&i| g.lines()[i].clone())
        .collect();
    let common_design = (common.len() >= 2).then(|| check_opposite(g.k(), &common, &shared).is_ok());
    IntersectionProfile { u: common.len(), shared_blocks: shared, common_design }
}

/// For every pair: distance 2 in the deficiency graph exactly when the two
/// points share a block of some opposite design.
pub fn distance2_characterization(g: &Geometry) -> VerificationReport {
    let mut report = VerificationReport::new(report_params(g));
    let view = match deficiency(g) {
        Ok(v) => v,
        Err(e) => {
            report.push("distance-2 characterization", false, format!("no deficiency graph: {e}"));
            return report;
        }
    };
    let v = g.v();
    let mut together = vec![FixedBitSet::with_capacity(v); v];
    for &i in view.opposite_blocks.iter().flatten() {
        for (a, b) in g.lines()[i].pairs() {
            together[a as usize].insert(b as usize);
            together[b as usize].insert(a as usize);
        }
    }
    let graph = &view.graph;
    let mismatch = (0..v).into_par_iter().find_map_first(|x| {
        let mut dist2 = FixedBitSet::with_capacity(v);
        for &z in graph.neighbors(x as Point) {
            for &y in graph.neighbors(z) {
                dist2.insert(y as usize);
            }
        }
        dist2.set(x, false);
        for &z in graph.neighbors(x as Point) {
            dist2.set(z as usize, false);
        }
        dist2.symmetric_difference(&together[x]).next().map(|y| (x as Point, y as Point, dist2.contains(y)))
    });
    match mismatch {
        None => report.push("distance-2 characterization", true, "distance-2 pairs are exactly the pairs inside opposite blocks"),
        Some((x, y, at2)) => report.push_with(
            "distance-2 characterization",
            false,
            if at2 {
                format!("{x},{y} are at distance 2 but share no opposite block")
            } else {
                format!("{x},{y} share an opposite block but are not at distance 2")
            },
            Some(vec![x, y]),
        ),
    }
    report
}
