//! Steiner systems, transversal designs and group divisible designs.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::incidence::{Block, Point, ReportParams, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("no Steiner triple system of order {0} (need 1 or 3 mod 6)")]
    InadmissibleOrder(usize),
    #[error("{0} is not prime; only prime orders are constructed")]
    NotPrime(usize),
    #[error("no TD({k}, {n}) construction available (k >= 4 needs n prime and k <= n + 1)")]
    UnsupportedOrder { k: usize, n: usize },
}

/// Blocks of size `k` on points `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerSystem {
    order: usize,
    k: usize,
    blocks: Vec<Block>,
}

impl SteinerSystem {
    pub fn new(order: usize, k: usize, mut blocks: Vec<Block>) -> SteinerSystem {
        blocks.sort_unstable();
        SteinerSystem { order, k, blocks }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The blocks with point `i` renamed to `labels[i]`.
    pub fn relabel(&self, labels: &[Point]) -> Vec<Block> {
        assert_eq!(labels.len(), self.order, "one label per point");
        self.blocks.iter().map(|b| b.relabel(|p| labels[p as usize])).collect()
    }
}

impl SteinerSystem {
    /// The file format read by [`parse_steiner`].
    pub fn to_text(&self) -> String {
        let mut out = format!("STEINER k={} v={}\n", self.k, self.order);
        for b in &self.blocks {
            out.push_str(&b.to_string());
            out.push('\n');
        }
        out
    }
}

/// Reads `STEINER k=<k> v=<order>`, then one comma-separated block per line.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_steiner(text: &str) -> Result<SteinerSystem, GddParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(GddParseError::Syntax { line: 1, message: "empty input".into() })?;
    let rest = header
        .strip_prefix("STEINER")
        .ok_or(GddParseError::Syntax { line: hline, message: "expected header starting with STEINER".into() })?;
    let (mut k, mut order) = (None, None);
    for field in rest.split_whitespace() {
        let bad = || GddParseError::Syntax { line: hline, message: format!("bad header field {field:?}") };
        if let Some(x) = field.strip_prefix("k=") {
            k = Some(x.parse::<usize>().map_err(|_| bad())?);
        } else if let Some(x) = field.strip_prefix("v=") {
            order = Some(x.parse::<usize>().map_err(|_| bad())?);
        } else {
            return Err(bad());
        }
    }
    let (Some(k), Some(order)) = (k, order) else {
        return Err(GddParseError::Syntax { line: hline, message: "header needs k= and v=".into() });
    };
    let mut blocks = Vec::new();
    for (n, l) in lines {
        let ids = parse_ids(l, n)?;
        if let Some(&p) = ids.iter().find(|&&p| p as usize >= order) {
            return Err(GddParseError::Syntax { line: n, message: format!("point {p} outside 0..{order}") });
        }
        let b = Block::normalize(ids.iter().map(|&x| x as i64))
            .map_err(|e| GddParseError::Syntax { line: n, message: e.to_string() })?;
        blocks.push(b);
    }
    Ok(SteinerSystem::new(order, k, blocks))
}

/// Counts how often each pair of `0..v` occurs in a block list.
pub(crate) struct PairCounts {
    v: usize,
    counts: Vec<u16>,
}

impl PairCounts {
    pub(crate) fn new<'a>(v: usize, blocks: impl IntoIterator<Item = &'a Block>) -> PairCounts {
        let mut pc = PairCounts { v, counts: vec![0; v * v.saturating_sub(1) / 2] };
        for b in blocks {
            for (x, y) in b.pairs() {
                let i = pc.index(x, y);
                pc.counts[i] = pc.counts[i].saturating_add(1);
            }
        }
        pc
    }

    fn index(&self, x: Point, y: Point) -> usize {
        let (x, y) = (x as usize, y as usize);
        debug_assert!(x < y && y < self.v);
        // row x holds pairs (x, x+1..v)
        x * (2 * self.v - x - 1) / 2 + (y - x - 1)
    }

    pub(crate) fn get(&self, x: Point, y: Point) -> u16 {
        let (a, b) = crate::incidence::pair(x, y);
        self.counts[self.index(a, b)]
    }

    /// All pairs `(x, y)`, `x < y`, with their counts.
    pub(crate) fn iter(&self) -> impl Iterator<Item = ((Point, Point), u16)> + '_ {
        let v = self.v as Point;
        (0..v).flat_map(move |x| (x + 1..v).map(move |y| ((x, y), self.get(x, y))))
    }
}

fn uniform_size_check(report: &mut VerificationReport, blocks: &[Block], k: usize, v: usize) -> bool {
    if let Some(b) = blocks.iter().find(|b| b.len() != k) {
        report.push_with("block size", false, format!("block {b} has {} points, expected {k}", b.len()), Some(b.points().to_vec()));
        return false;
    }
    if let Some(b) = blocks.iter().find(|b| b.max_point() as usize >= v) {
        report.push_with("block size", false, format!("block {b} has a point outside 0..{v}"), Some(b.points().to_vec()));
        return false;
    }
    report.push("block size", true, format!("all {} blocks have {k} points", blocks.len()));
    true
}

/// Checks block sizes, that every pair lies in exactly one block, and the
/// block count `w(w-1)/(k(k-1))`.
pub fn verify_steiner(s: &SteinerSystem) -> VerificationReport {
    let (w, k) = (s.order, s.k);
    let r = (k > 1 && (w.saturating_sub(1)) % (k - 1) == 0).then(|| w.saturating_sub(1) / (k - 1));
    let mut report =
        VerificationReport::new(ReportParams { k, r, w: Some(w), v: w, lines: s.blocks.len() });
    if !uniform_size_check(&mut report, &s.blocks, k, w) {
        return report;
    }
    let pc = PairCounts::new(w, &s.blocks);
    let (mut uncovered, mut over) = (0usize, 0usize);
    let (mut first_uncovered, mut first_over) = (None, None);
    for ((x, y), c) in pc.iter() {
        if c == 0 {
            uncovered += 1;
            first_uncovered.get_or_insert((x, y));
        } else if c > 1 {
            over += 1;
            first_over.get_or_insert((x, y, c));
        }
    }
    if let Some((x, y, c)) = first_over {
        report.push_with(
            "pair coverage",
            false,
            format!("pair {x},{y} is in {c} blocks ({over} pairs repeated, {uncovered} uncovered)"),
            Some(vec![x, y]),
        );
    } else if let Some((x, y)) = first_uncovered {
        report.push_with(
            "pair coverage",
            false,
            format!("pair {x},{y} is in no block ({uncovered} pairs uncovered)"),
            Some(vec![x, y]),
        );
    } else {
        report.push("pair coverage", true, "every pair in exactly one block");
    }
    let denom = k * (k - 1);
    let expected = (denom > 0 && (w * w.saturating_sub(1)) % denom == 0).then(|| w * w.saturating_sub(1) / denom);
    match expected {
        Some(e) => report.push(
            "block count",
            e == s.blocks.len(),
            format!("{} blocks, expected {e}", s.blocks.len()),
        ),
        None => report.push("block count", false, format!("w(w-1)/(k(k-1)) is not integral for w = {w}, k = {k}")),
    }
    report
}

fn block(ids: &[usize]) -> Block {
    Block::from_distinct(ids.iter().map(|&x| x as Point).collect())
}

/// A Steiner triple system of order `w`: Bose's construction for
/// `w = 6n + 3`, and for `w = 6n + 1` the analogous construction over a
/// half-idempotent commutative quasigroup of order `2n` plus a point at
/// infinity.
pub fn sts(w: usize) -> Result<SteinerSystem, DesignError> {
    match w % 6 {
        3 => Ok(bose(w)),
        1 => Ok(half_idempotent(w)),
        _ => Err(DesignError::InadmissibleOrder(w)),
    }
}

fn bose(w: usize) -> SteinerSystem {
    let m = w / 3; // 2n + 1
    let n = (m - 1) / 2;
    let op = |x: usize, y: usize| ((n + 1) * (x + y)) % m;
    let id = |x: usize, i: usize| x + m * (i % 3);
    let mut blocks = Vec::with_capacity(w * (w - 1) / 6);
    for x in 0..m {
        blocks.push(block(&[id(x, 0), id(x, 1), id(x, 2)]));
    }
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                blocks.push(block(&[id(x, i), id(y, i), id(op(x, y), i + 1)]));
            }
        }
    }
    SteinerSystem::new(w, 3, blocks)
}

fn half_idempotent(w: usize) -> SteinerSystem {
    let n = w / 6;
    let m = 2 * n;
    // (i o i) = ((n + i) o (n + i)) = i for i < n
    let op = |x: usize, y: usize| {
        let z = (x + y) % m;
        if z % 2 == 0 {
            z / 2
        } else {
            n + z / 2
        }
    };
    let id = |x: usize, i: usize| x + m * (i % 3);
    let inf = 3 * m;
    let mut blocks = Vec::with_capacity(w * (w - 1) / 6);
    for x in 0..n {
        blocks.push(block(&[id(x, 0), id(x, 1), id(x, 2)]));
        for i in 0..3 {
            blocks.push(block(&[inf, id(n + x, i), id(x, i + 1)]));
        }
    }
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                blocks.push(block(&[id(x, i), id(y, i), id(op(x, y), i + 1)]));
            }
        }
    }
    SteinerSystem::new(w, 3, blocks)
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The Desarguesian plane S(2, q+1, q^2+q+1) from homogeneous coordinates.
pub fn projective_plane(q: usize) -> Result<SteinerSystem, DesignError> {
    if !is_prime(q) {
        return Err(DesignError::NotPrime(q));
    }
    // Normalised representatives: first non-zero coordinate is 1.
    let mut reps = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&t| t != 0) == Some(&1) {
                    reps.push(v);
                }
            }
        }
    }
    let blocks = reps
        .iter()
        .map(|l| {
            let pts: Vec<usize> = reps
                .iter()
                .enumerate()
                .filter(|(_, p)| (l[0] * p[0] + l[1] * p[1] + l[2] * p[2]) % q == 0)
                .map(|(i, _)| i)
                .collect();
            block(&pts)
        })
        .collect();
    Ok(SteinerSystem::new(reps.len(), q + 1, blocks))
}

/// The affine plane S(2, q, q^2): point `(x, y)` is `x q + y`.
pub fn affine_plane(q: usize) -> Result<SteinerSystem, DesignError> {
    if !is_prime(q) {
        return Err(DesignError::NotPrime(q));
    }
    let mut blocks = Vec::with_capacity(q * q + q);
    for m in 0..q {
        for b in 0..q {
            let pts: Vec<usize> = (0..q).map(|x| x * q + (m * x + b) % q).collect();
            blocks.push(block(&pts));
        }
    }
    for c in 0..q {
        let pts: Vec<usize> = (0..q).map(|y| c * q + y).collect();
        blocks.push(block(&pts));
    }
    Ok(SteinerSystem::new(q * q, q, blocks))
}

/// All pairs of `0..w` as blocks.
pub fn complete_design(w: usize) -> SteinerSystem {
    let blocks = (0..w).flat_map(|a| (a + 1..w).map(move |b| block(&[a, b]))).collect();
    SteinerSystem::new(w, 2, blocks)
}

/// Group sizes with multiplicities, e.g. `78^3 74^1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GddType {
    parts: Vec<(usize, usize)>,
}

impl GddType {
    /// Merges repeated sizes; sizes are listed in decreasing order.
    pub fn new(parts: impl IntoIterator<Item = (usize, usize)>) -> GddType {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for (size, mult) in parts {
            if size > 0 && mult > 0 {
                *m.entry(size).or_default() += mult;
            }
        }
        GddType { parts: m.into_iter().rev().collect() }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn point_count(&self) -> usize {
        self.parts.iter().map(|(g, u)| g * u).sum()
    }

    pub fn group_count(&self) -> usize {
        self.parts.iter().map(|(_, u)| u).sum()
    }
}

impl fmt::Display for GddType {
    /// Header form: `78^3,74^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(g, u)| format!("{g}^{u}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Points `0..v` partitioned into groups, with blocks of size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gdd {
    v: usize,
    k: usize,
    groups: Vec<Vec<Point>>,
    blocks: Vec<Block>,
}

impl Gdd {
    /// Groups are stored sorted internally and ordered by their minimum point.
    pub fn new(v: usize, k: usize, groups: Vec<Vec<Point>>, mut blocks: Vec<Block>) -> Gdd {
        let mut groups: Vec<Vec<Point>> = groups
            .into_iter()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect();
        groups.sort_by_key(|g| g.first().copied());
        blocks.sort_unstable();
        Gdd { v, k, groups, blocks }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn groups(&self) -> &[Vec<Point>] {
        &self.groups
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn gdd_type(&self) -> GddType {
        GddType::new(self.groups.iter().map(|g| (g.len(), 1)))
    }

    /// The file format read by [`parse_gdd`].
    pub fn to_text(&self) -> String {
        let mut out = format!("GDD k={} groups={}\n", self.k, self.gdd_type());
        for g in &self.groups {
            let ids: Vec<String> = g.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("group: {}\n", ids.join(",")));
        }
        for b in &self.blocks {
            out.push_str(&b.to_string());
            out.push('\n');
        }
        out
    }
}

/// The transversal design TD(k, n) on groups `{c n, .., c n + n - 1}`.
///
/// For `k = 3` the block through `x` in group 0 and `y` in group 1 meets
/// group 2 in `x + y`; for `k >= 4` (`n` prime) group `c` gets `c x + y`, and
/// when `k = n + 1` the last group gets `x`.
pub fn td(k: usize, n: usize) -> Result<Gdd, DesignError> {
    if k < 2 || n == 0 || (k >= 4 && (!is_prime(n) || k > n + 1)) {
        return Err(DesignError::UnsupportedOrder { k, n });
    }
    let mut blocks = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let pts: Vec<usize> = if k <= 3 {
                [x, y, (x + y) % n].iter().take(k).enumerate().map(|(c, &t)| c * n + t).collect()
            } else {
                (0..k).map(|c| c * n + if c == n { x } else { (c * x + y) % n }).collect()
            };
            blocks.push(block(&pts));
        }
    }
    let groups = (0..k).map(|c| ((c * n) as Point..((c + 1) * n) as Point).collect()).collect();
    Ok(Gdd::new(k * n, k, groups, blocks))
}

/// Checks the partition, block sizes, and that cross-group pairs are covered
/// exactly once and same-group pairs never.
pub fn verify_gdd(g: &Gdd) -> VerificationReport {
    let mut report =
        VerificationReport::new(ReportParams { k: g.k, r: None, w: None, v: g.v, lines: g.blocks.len() });
    let mut group_of = vec![usize::MAX; g.v];
    let mut partition_ok = true;
    let mut detail = format!("{} groups of type {}", g.groups.len(), g.gdd_type());
    let mut witness = None;
    'groups: for (i, grp) in g.groups.iter().enumerate() {
        if grp.is_empty() {
            partition_ok = false;
            detail = format!("group {i} is empty");
            break;
        }
        for &p in grp {
            if p as usize >= g.v {
                partition_ok = false;
                detail = format!("group {i} contains {p}, outside 0..{}", g.v);
                witness = Some(vec![p]);
                break 'groups;
            }
            if group_of[p as usize] != usize::MAX {
                partition_ok = false;
                detail = format!("point {p} lies in groups {} and {i}", group_of[p as usize]);
                witness = Some(vec![p]);
                break 'groups;
            }
            group_of[p as usize] = i;
        }
    }
    if partition_ok {
        if let Some(p) = group_of.iter().position(|&x| x == usize::MAX) {
            partition_ok = false;
            detail = format!("point {p} is in no group");
            witness = Some(vec![p as Point]);
        }
    }
    report.push_with("groups partition points", partition_ok, detail, witness);
    if !uniform_size_check(&mut report, &g.blocks, g.k, g.v) || !partition_ok {
        return report;
    }
    let pc = PairCounts::new(g.v, &g.blocks);
    let mut cross = None;
    let mut intra = None;
    for ((x, y), c) in pc.iter() {
        let same = group_of[x as usize] == group_of[y as usize];
        if same && c != 0 && intra.is_none() {
            intra = Some((x, y, c));
        }
        if !same && c != 1 && cross.is_none() {
            cross = Some((x, y, c));
        }
        if cross.is_some() && intra.is_some() {
            break;
        }
    }
    match cross {
        None => report.push("cross-group pairs covered once", true, "every pair from distinct groups in exactly one block"),
        Some((x, y, c)) => report.push_with(
            "cross-group pairs covered once",
            false,
            format!("pair {x},{y} from distinct groups is in {c} blocks"),
            Some(vec![x, y]),
        ),
    }
    match intra {
        None => report.push("same-group pairs uncovered", true, "no block meets a group twice"),
        Some((x, y, c)) => report.push_with(
            "same-group pairs uncovered",
            false,
            format!("pair {x},{y} from one group is in {c} blocks"),
            Some(vec![x, y]),
        ),
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GddParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header declares type {declared} but the groups listed have type {found}")]
    TypeMismatch { declared: String, found: String },
}

fn parse_ids(s: &str, line: usize) -> Result<Vec<Point>, GddParseError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Point>()
                .map_err(|_| GddParseError::Syntax { line, message: format!("cannot parse {t:?} as a point id") })
        })
        .collect()
}

fn parse_type(s: &str, line: usize) -> Result<GddType, GddParseError> {
    let mut parts = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (g, u) = part.split_once('^').unwrap_or((part, "1"));
        let bad = || GddParseError::Syntax { line, message: format!("bad group type {part:?}") };
        parts.push((g.trim().parse().map_err(|_| bad())?, u.trim().parse().map_err(|_| bad())?));
    }
    Ok(GddType::new(parts))
}

/// Reads `GDD k=<k> groups=<g^u,...>`, then `group: ...` lines, then blocks.
pub fn parse_gdd(text: &str) -> Result<Gdd, GddParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) =
        lines.next().ok_or(GddParseError::Syntax { line: 1, message: "empty input".into() })?;
    let rest = header
        .strip_prefix("GDD")
        .ok_or(GddParseError::Syntax { line: hline, message: "expected header starting with GDD".into() })?;
    let mut k = None;
    let mut declared = None;
    for field in rest.split_whitespace() {
        if let Some(x) = field.strip_prefix("k=") {
            k = Some(x.parse::<usize>().map_err(|_| GddParseError::Syntax {
                line: hline,
                message: format!("bad block size {x:?}"),
            })?);
        } else if let Some(x) = field.strip_prefix("groups=") {
            declared = Some(parse_type(x, hline)?);
        } else {
            return Err(GddParseError::Syntax { line: hline, message: format!("unknown header field {field:?}") });
        }
    }
    let k = k.ok_or(GddParseError::Syntax { line: hline, message: "header lacks k=".into() })?;
    let mut groups = Vec::new();
    let mut blocks = Vec::new();
    for (n, l) in lines {
        if let Some(ids) = l.strip_prefix("group:") {
            if !blocks.is_empty() {
                return Err(GddParseError::Syntax { line: n, message: "group line after blocks".into() });
            }
            groups.push(parse_ids(ids, n)?);
        } else {
            let ids = parse_ids(l, n)?;
            let b = Block::normalize(ids.iter().map(|&x| x as i64))
                .map_err(|e| GddParseError::Syntax { line: n, message: e.to_string() })?;
            blocks.push(b);
        }
    }
    let found = GddType::new(groups.iter().map(|g| (g.len(), 1)));
    if let Some(d) = declared {
        if d != found {
            return Err(GddParseError::TypeMismatch { declared: d.to_string(), found: found.to_string() });
        }
    }
    let v = groups
        .iter()
        .flatten()
        .chain(blocks.iter().flat_map(|b| b.points()))
        .map(|&p| p as usize + 1)
        .max()
        .unwrap_or(0)
        .max(found.point_count());
    Ok(Gdd::new(v, k, groups, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steiner_text_round_trip() {
        let s = sts(9).unwrap();
        let back = parse_steiner(&s.to_text()).unwrap();
        assert_eq!(back, s);
        assert!(verify_steiner(&back).overall);
        assert!(parse_steiner("STEINER k=3 v=7\n0,1,7\n").is_err());
        assert!(parse_steiner("STS 7\n").is_err());
    }

    fn fano() -> SteinerSystem {
        projective_plane(2).unwrap()
    }

    #[test]
    fn fano_plane() {
        let f = fano();
        assert_eq!(f.order(), 7);
        assert_eq!(f.blocks().len(), 7);
        assert!(verify_steiner(&f).overall);
    }

    #[test]
    fn fano_missing_a_block_reports_uncovered_pair() {
        let f = fano();
        let s = SteinerSystem::new(7, 3, f.blocks()[1..].to_vec());
        let r = verify_steiner(&s);
        assert!(!r.overall);
        let c = r.check("pair coverage").unwrap();
        assert!(!c.pass);
        assert!(c.detail.contains("no block"));
        let pair = c.counterexample.clone().unwrap();
        assert!(f.blocks()[0].contains(pair[0]) && f.blocks()[0].contains(pair[1]));
    }

    #[test]
    fn doubly_covered_pair_reported() {
        let mut blocks = fano().blocks().to_vec();
        blocks[0] = blocks[1].clone();
        let r = verify_steiner(&SteinerSystem::new(7, 3, blocks));
        assert!(r.check("pair coverage").unwrap().detail.contains("2 blocks"));
    }

    #[test]
    fn affine_planes() {
        let ag3 = affine_plane(3).unwrap();
        assert_eq!(ag3.blocks().len(), 12);
        assert!(verify_steiner(&ag3).overall);
        let ag2 = affine_plane(2).unwrap();
        assert_eq!(ag2.blocks(), complete_design(4).blocks());
        let ag5 = affine_plane(5).unwrap();
        assert_eq!(ag5.blocks().len(), 30);
        assert!(verify_steiner(&ag5).overall);
        assert_eq!(affine_plane(4), Err(DesignError::NotPrime(4)));
    }

    #[test]
    fn projective_planes() {
        let pg3 = projective_plane(3).unwrap();
        assert_eq!((pg3.order(), pg3.k(), pg3.blocks().len()), (13, 4, 13));
        assert!(verify_steiner(&pg3).overall);
        let pg5 = projective_plane(5).unwrap();
        assert_eq!(pg5.blocks().len(), 31);
        assert!(verify_steiner(&pg5).overall);
        assert_eq!(projective_plane(4), Err(DesignError::NotPrime(4)));
    }

    #[test]
    fn complete_designs() {
        assert_eq!(complete_design(2).blocks().len(), 1);
        assert_eq!(complete_design(7).blocks().len(), 21);
        assert_eq!(complete_design(8).blocks().len(), 28);
        assert!(verify_steiner(&complete_design(8)).overall);
    }

    #[test]
    fn triple_systems() {
        assert_eq!(sts(7).unwrap().blocks().len(), 7);
        assert_eq!(sts(9).unwrap().blocks().len(), 12);
        assert_eq!(sts(3).unwrap().blocks().len(), 1);
        assert_eq!(sts(8), Err(DesignError::InadmissibleOrder(8)));
        for w in (1..=99).filter(|w| w % 6 == 1 || w % 6 == 3) {
            let s = sts(w).unwrap();
            assert_eq!(s.blocks().len(), w * (w - 1) / 6, "w = {w}");
            let r = verify_steiner(&s);
            assert!(r.overall, "sts({w}): {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn transversal_designs() {
        let t = td(3, 78).unwrap();
        assert_eq!(t.groups().len(), 3);
        assert_eq!(t.blocks().len(), 6084);
        assert!(verify_gdd(&t).overall);
        assert_eq!(td(3, 1).unwrap().blocks(), &[block(&[0, 1, 2])]);
        let t45 = td(4, 5).unwrap();
        assert_eq!((t45.groups().len(), t45.blocks().len()), (4, 25));
        assert!(verify_gdd(&t45).overall);
        assert_eq!(td(4, 6), Err(DesignError::UnsupportedOrder { k: 4, n: 6 }));
        assert!(verify_gdd(&td(6, 5).unwrap()).overall);
        assert_eq!(td(7, 5), Err(DesignError::UnsupportedOrder { k: 7, n: 5 }));
    }

    #[test]
    fn transversal_designs_up_to_100() {
        for n in 1..=100 {
            let t = td(3, n).unwrap();
            assert_eq!(t.blocks().len(), n * n);
            assert!(verify_gdd(&t).overall, "td(3, {n})");
        }
        for n in (2..=31).filter(|&n| is_prime(n)) {
            for k in 4..=(n + 1).min(6) {
                assert!(verify_gdd(&td(k, n).unwrap()).overall, "td({k}, {n})");
            }
        }
    }

    #[test]
    fn gdd_failures() {
        let t = td(3, 2).unwrap();
        assert!(verify_gdd(&t).overall);
        let broken = Gdd::new(6, 3, t.groups().to_vec(), t.blocks()[1..].to_vec());
        let r = verify_gdd(&broken);
        assert!(!r.overall);
        assert!(!r.check("cross-group pairs covered once").unwrap().pass);
    }

    #[test]
    fn bipartite_as_gdd() {
        let groups = vec![(0..5).collect(), (5..10).collect()];
        let blocks = (0..5).flat_map(|a| (5..10).map(move |b| block(&[a, b]))).collect();
        let g = Gdd::new(10, 2, groups, blocks);
        assert!(verify_gdd(&g).overall);
        assert_eq!(g.gdd_type().to_string(), "5^2");
    }

    #[test]
    fn gdd_text_round_trip() {
        let t = td(3, 4).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("GDD k=3 groups=4^3\ngroup: 0,1,2,3\n"));
        assert_eq!(parse_gdd(&text).unwrap(), t);
        let bad = text.replacen("groups=4^3", "groups=4^2,5^1", 1);
        assert!(matches!(parse_gdd(&bad), Err(GddParseError::TypeMismatch { .. })));
    }

    #[test]
    fn gdd_type_display() {
        let t = GddType::new([(74, 1), (78, 2), (78, 1)]);
        assert_eq!(t.to_string(), "78^3,74^1");
        assert_eq!(t.point_count(), 308);
        assert_eq!(t.group_count(), 4);
    }
}
