//! Incidence-structure data model shared by every other module.
//!
//! Points are dense ids `0..v`. A [`Block`] is a strictly increasing list of
//! point ids; a [`Geometry`] is a point count plus a list of equal-sized
//! blocks (its lines).

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::params::PentParams;

pub type Point = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("empty block")]
    Empty,
    #[error("point {0} occurs more than once in a block")]
    DuplicatePoint(i64),
    #[error("negative point id {0}")]
    NegativeId(i64),
    #[error("point id {0} is too large")]
    IdTooLarge(i64),
}

/// A set of points stored in strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Block(Vec<Point>);

impl Block {
    /// Sorts `ids` into a block. Repeated ids are rejected, not merged.
    pub fn normalize<I>(ids: I) -> Result<Block, BlockError>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let mut points = Vec::new();
        for id in ids {
            let id: i64 = id.into();
            if id < 0 {
                return Err(BlockError::NegativeId(id));
            }
            let p = Point::try_from(id).map_err(|_| BlockError::IdTooLarge(id))?;
            points.push(p);
        }
        if points.is_empty() {
            return Err(BlockError::Empty);
        }
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(BlockError::DuplicatePoint(w[0] as i64));
        }
        Ok(Block(points))
    }

    /// Builds a block from ids already known to be distinct.
    ///
    /// Panics if a point repeats; intended for constructors whose output is
    /// distinct by construction.
    pub fn from_distinct(mut points: Vec<Point>) -> Block {
        points.sort_unstable();
        assert!(
            points.windows(2).all(|w| w[0] < w[1]),
            "repeated point in {points:?}"
        );
        Block(points)
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn max_point(&self) -> Point {
        *self.0.last().expect("blocks are non-empty")
    }

    /// All unordered pairs `(a, b)` with `a < b`, each exactly once, in
    /// lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(move |(i, &a)| self.0[i + 1..].iter().map(move |&b| (a, b)))
    }

    /// The block translated by `shift` modulo `modulus`.
    pub fn translate(&self, shift: u64, modulus: u64) -> Block {
        let mut pts: Vec<Point> = self
            .0
            .iter()
            .map(|&p| ((p as u64 + shift) % modulus) as Point)
            .collect();
        pts.sort_unstable();
        Block(pts)
    }

    /// Applies a point relabelling. The map must be injective on the block.
    pub fn relabel(&self, map: impl Fn(Point) -> Point) -> Block {
        Block::from_distinct(self.0.iter().map(|&p| map(p)).collect())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Convenience wrapper over [`Block::normalize`].
pub fn normalize_block<I>(ids: I) -> Result<Block, BlockError>
where
    I: IntoIterator,
    I::Item: Into<i64>,
{
    Block::normalize(ids)
}

/// Unordered pair key with `a < b`.
pub fn pair(a: Point, b: Point) -> (Point, Point) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("line {line} has {size} points, expected {k}")]
    NonUniform { line: usize, size: usize, k: usize },
    #[error("line {line} contains point {point} outside 0..{v}")]
    OutOfRange { line: usize, point: Point, v: usize },
    #[error("geometry has no lines and no block size was given")]
    UnknownBlockSize,
}

/// Points `0..v` with a list of `k`-point lines.
///
/// Lines are kept sorted. Repeated lines are retained so that verification
/// can report them; nothing here deduplicates silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    v: usize,
    k: usize,
    lines: Vec<Block>,
    claimed: Option<PentParams>,
}

impl Geometry {
    pub fn new(v: usize, lines: Vec<Block>) -> Result<Geometry, GeometryError> {
        let k = lines.first().map(Block::len).ok_or(GeometryError::UnknownBlockSize)?;
        Geometry::with_block_size(v, k, lines)
    }

    pub fn with_block_size(
        v: usize,
        k: usize,
        mut lines: Vec<Block>,
    ) -> Result<Geometry, GeometryError> {
        for (i, l) in lines.iter().enumerate() {
            if l.len() != k {
                return Err(GeometryError::NonUniform { line: i, size: l.len(), k });
            }
            if l.max_point() as usize >= v {
                return Err(GeometryError::OutOfRange { line: i, point: l.max_point(), v });
            }
        }
        lines.sort_unstable();
        Ok(Geometry { v, k, lines, claimed: None })
    }

    /// Attaches the parameters this geometry claims to realise.
    pub fn with_claim(mut self, params: PentParams) -> Geometry {
        self.claimed = Some(params);
        self
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lines(&self) -> &[Block] {
        &self.lines
    }

    pub fn claimed(&self) -> Option<PentParams> {
        self.claimed
    }

    /// Number of lines through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.v];
        for l in &self.lines {
            for &p in l.points() {
                deg[p as usize] += 1;
            }
        }
        deg
    }

    /// Returns the geometry with the given line removed (first occurrence).
    pub fn without_line(&self, index: usize) -> Geometry {
        let mut g = self.clone();
        g.lines.remove(index);
        g
    }

    /// Replaces line `index`, keeping the line list sorted.
    pub fn replace_line(&self, index: usize, line: Block) -> Result<Geometry, GeometryError> {
        let mut lines = self.lines.clone();
        lines[index] = line;
        let mut g = Geometry::with_block_size(self.v, self.k, lines)?;
        g.claimed = self.claimed;
        Ok(g)
    }

    /// Lines as a set, for order-insensitive comparison.
    pub fn line_set(&self) -> BTreeSet<Block> {
        self.lines.iter().cloned().collect()
    }

    /// Serialises to the line-list format: one line per block, comma
    /// separated ascending ids, blocks in lexicographic order, LF endings.
    pub fn to_line_list(&self) -> String {
        let mut out = String::with_capacity(self.lines.len() * 4 * self.k);
        for l in &self.lines {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum LineListError {
    #[error("line {line}: {source}")]
    Block { line: usize, source: BlockError },
    #[error("line {line}: cannot parse {token:?} as a point id")]
    Token { line: usize, token: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Parses the line-list format. The point count is `max id + 1` unless given.
pub fn parse_line_list(text: &str, v: Option<usize>) -> Result<Geometry, LineListError> {
    let mut lines = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let mut ids = Vec::new();
        for tok in raw.split(',') {
            let tok = tok.trim();
            let id: i64 = tok.parse().map_err(|_| LineListError::Token {
                line: n + 1,
                token: tok.to_string(),
            })?;
            ids.push(id);
        }
        let b = Block::normalize(ids).map_err(|source| LineListError::Block { line: n + 1, source })?;
        lines.push(b);
    }
    let v = v.unwrap_or_else(|| lines.iter().map(|l| l.max_point() as usize + 1).max().unwrap_or(0));
    Ok(Geometry::new(v, lines)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub k: usize,
    pub r: Option<usize>,
    pub w: Option<usize>,
    pub v: usize,
    pub lines: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Point>>,
}

/// Ordered list of named checks. `overall` is the conjunction of every
/// check's pass flag and is kept in sync by [`VerificationReport::push`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub params: ReportParams,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new(params: ReportParams) -> VerificationReport {
        VerificationReport { params, checks: Vec::new(), overall: true }
    }

    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.push_with(name, pass, detail, None);
    }

    pub fn push_with(
        &mut self,
        name: &str,
        pass: bool,
        detail: impl Into<String>,
        counterexample: Option<Vec<Point>>,
    ) {
        self.overall &= pass;
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
            counterexample,
        });
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
