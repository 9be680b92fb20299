//! Certificates: a header `PENT(k, r, w), d = d:` followed by base blocks
//! whose translates under `x -> x + d (mod v)` are the lines.
//!
//! The first `d` groups of `w(w-1)/(k(k-1))` base blocks are the opposite
//! designs of the points `0..d`. Whitespace is insignificant, `$` is ignored
//! (listings pasted from typeset text), and `#` starts a comment that runs to
//! the end of the line.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::incidence::{Block, Geometry, Point};
use crate::params::PentParams;
use crate::pent::opposite_design;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub params: PentParams,
    /// Translation step.
    pub d: usize,
    pub base_blocks: Vec<Block>,
    /// Free-text provenance.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("expected {expected} {what}, got {found}")]
    CountMismatch { expected: usize, found: usize, what: &'static str },
    #[error("base block {index} ({block}) has {size} distinct points, expected {k}")]
    BlockSizeMismatch { index: usize, block: String, size: usize, k: usize },
    #[error("translation step {d} does not divide the point count {v}")]
    PeriodMismatch { d: usize, v: usize },
    #[error("development produces line {line} twice")]
    DuplicateLine { line: Block },
    #[error("base block {index} contains point {point}, outside 0..{v}")]
    OutOfRange { index: usize, point: Point, v: usize },
    #[error("x -> x + {d} does not preserve line {line}")]
    NotAutomorphism { d: usize, line: Block },
    #[error("line {line} has an orbit shorter than v/d under x -> x + {d}")]
    ShortOrbit { d: usize, line: Block },
    #[error("cannot read opposite designs: {0}")]
    NotPent(String),
}

impl Certificate {
    pub fn v(&self) -> usize {
        self.params.point_count()
    }

    pub fn with_source(self, source: impl Into<String>) -> Certificate {
        Certificate { source: source.into(), ..self }
    }

    /// Header and one block per line, in the parseable format.
    pub fn to_text(&self) -> String {
        let p = self.params;
        let mut out = format!("PENT({}, {}, {}), d = {}:\n", p.k, p.r, p.w, self.d);
        let n = self.base_blocks.len();
        for (i, b) in self.base_blocks.iter().enumerate() {
            let body: Vec<String> = b.points().iter().map(|p| p.to_string()).collect();
            out.push_str(&body.join(", "));
            out.push_str(if i + 1 < n { ";\n" } else { "\n" });
        }
        out
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Word(usize, usize),
    Int(u64),
    Punct(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, CertError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'$' => i += 1,
            c if c.is_ascii_whitespace() => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| CertError::SyntaxError {
                    position: start,
                    message: format!("number {} is too large", &text[start..i]),
                })?;
                out.push((start, Token::Int(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((start, Token::Word(start, i)));
            }
            b'(' | b')' | b',' | b';' | b':' | b'=' => {
                out.push((i, Token::Punct(c as char)));
                i += 1;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(CertError::SyntaxError { position: i, message: format!("unexpected character {ch:?}") });
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    text: &'a str,
    tokens: Vec<(usize, Token)>,
    at: usize,
}

impl Cursor<'_> {
    fn position(&self) -> usize {
        self.tokens.get(self.at).map_or(self.text.len(), |t| t.0)
    }

    fn error(&self, message: impl Into<String>) -> CertError {
        CertError::SyntaxError { position: self.position(), message: message.into() }
    }

    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.at).map(|t| t.1)
    }

    fn punct(&mut self, c: char) -> Result<(), CertError> {
        if self.peek() == Some(Token::Punct(c)) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self, w: &str) -> Result<(), CertError> {
        match self.peek() {
            Some(Token::Word(s, e)) if self.text[s..e].eq_ignore_ascii_case(w) => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected '{w}'"))),
        }
    }

    fn int(&mut self) -> Result<u64, CertError> {
        match self.peek() {
            Some(Token::Int(n)) => {
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.error("expected a number")),
        }
    }
}

/// Strict parse: the first violation is returned.
pub fn parse_certificate(text: &str) -> Result<Certificate, CertError> {
    let (cert, mut errors) = parse_certificate_report(text);
    match cert {
        Some(c) if errors.is_empty() => Ok(c),
        _ => Err(errors.remove(0)),
    }
}

/// Report-only parse: every block-size and count violation is listed. A
/// certificate is returned whenever the text is syntactically valid, even if
/// violations were found.
pub fn parse_certificate_report(text: &str) -> (Option<Certificate>, Vec<CertError>) {
    match parse_inner(text) {
        Ok(r) => r,
        Err(e) => (None, vec![e]),
    }
}

fn parse_inner(text: &str) -> Result<(Option<Certificate>, Vec<CertError>), CertError> {
    let mut cur = Cursor { text, tokens: tokenize(text)?, at: 0 };
    cur.word("PENT")?;
    cur.punct('(')?;
    let k = cur.int()? as usize;
    cur.punct(',')?;
    let r = cur.int()? as usize;
    cur.punct(',')?;
    let w = cur.int()? as usize;
    cur.punct(')')?;
    cur.punct(',')?;
    cur.word("d")?;
    cur.punct('=')?;
    let d = cur.int()? as usize;
    cur.punct(':')?;
    let params = PentParams::new(k, r, w).map_err(|e| CertError::SyntaxError { position: 0, message: e.to_string() })?;
    if d == 0 {
        return Err(CertError::SyntaxError { position: 0, message: "translation step d must be positive".into() });
    }

    let mut groups: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut saw_separator = false;
    while cur.peek().is_some() {
        let start = cur.position();
        let mut block = vec![cur.int()?];
        while cur.peek() == Some(Token::Punct(',')) {
            cur.at += 1;
            block.push(cur.int()?);
        }
        groups.push((start, block));
        match cur.peek() {
            None => {}
            Some(Token::Punct(';')) => {
                cur.at += 1;
                saw_separator = true;
            }
            Some(_) => return Err(cur.error("expected ',' or ';'")),
        }
    }

    let mut errors = Vec::new();
    if !saw_separator && groups.len() == 1 && groups[0].1.len() > k {
        let numbers = groups.remove(0).1;
        if numbers.len() != d * r || numbers.len() % k != 0 {
            errors.push(CertError::CountMismatch { expected: d * r, found: numbers.len(), what: "numbers" });
        }
        groups = numbers.chunks(k).map(|c| (0, c.to_vec())).collect();
    }
    if (d * r) % k != 0 {
        errors.push(CertError::CountMismatch { expected: d * r / k, found: groups.len(), what: "base blocks (d r is not divisible by k)" });
    } else if groups.len() != d * r / k && errors.is_empty() {
        errors.push(CertError::CountMismatch { expected: d * r / k, found: groups.len(), what: "base blocks" });
    }
    let mut base_blocks = Vec::with_capacity(groups.len());
    for (index, (_, nums)) in groups.into_iter().enumerate() {
        let distinct: BTreeSet<u64> = nums.iter().copied().collect();
        if nums.len() != k || distinct.len() != k {
            let block = nums.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ");
            errors.push(CertError::BlockSizeMismatch { index, block, size: distinct.len(), k });
        }
        let points: Vec<Point> = distinct.into_iter().map(|n| n.min(Point::MAX as u64) as Point).collect();
        base_blocks.push(Block::from_distinct(points));
    }
    Ok((Some(Certificate { params, d, base_blocks, source: String::new() }), errors))
}

fn check_developable(c: &Certificate) -> Result<usize, CertError> {
    let v = c.v();
    if v % c.d != 0 {
        return Err(CertError::PeriodMismatch { d: c.d, v });
    }
    for (index, b) in c.base_blocks.iter().enumerate() {
        if b.max_point() as usize >= v {
            return Err(CertError::OutOfRange { index, point: b.max_point(), v });
        }
    }
    Ok(v)
}

fn develop_lines(c: &Certificate, v: usize) -> Vec<Block> {
    let n = v / c.d;
    c.base_blocks
        .iter()
        .flat_map(|b| (0..n).map(move |j| b.translate((j * c.d) as u64, v as u64)))
        .collect()
}

/// All translates of the base blocks; a line produced twice is an error.
pub fn develop(c: &Certificate) -> Result<Geometry, CertError> {
    let v = check_developable(c)?;
    let lines = develop_lines(c, v);
    let mut seen = BTreeSet::new();
    for l in &lines {
        if !seen.insert(l) {
            return Err(CertError::DuplicateLine { line: l.clone() });
        }
    }
    geometry(c, v, lines)
}

/// As [`develop`], but repeated lines are kept so that verification can
/// name the pairs they cover twice.
pub fn develop_lenient(c: &Certificate) -> Result<Geometry, CertError> {
    let v = check_developable(c)?;
    geometry(c, v, develop_lines(c, v))
}

fn geometry(c: &Certificate, v: usize, lines: Vec<Block>) -> Result<Geometry, CertError> {
    let k = c.params.k;
    if let Some((index, b)) = c.base_blocks.iter().enumerate().find(|(_, b)| b.len() != k) {
        return Err(CertError::BlockSizeMismatch { index, block: b.to_string(), size: b.len(), k });
    }
    Ok(Geometry::with_block_size(v, k, lines).expect("sizes and ranges checked").with_claim(c.params))
}

/// The opposite design each point is claimed to have: point `i + d j` with
/// `i < d` claims the `i`-th group of base blocks translated by `d j`.
/// Points whose group is missing from the certificate are omitted.
pub fn claimed_opposite_designs(c: &Certificate) -> Vec<(Point, Vec<Block>)> {
    let v = c.v();
    let size = c.params.opposite_block_count();
    if size == 0 || v % c.d != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..c.d {
        let Some(group) = c.base_blocks.get(i * size..(i + 1) * size) else { break };
        for j in 0..v / c.d {
            let shift = j * c.d;
            let blocks = group.iter().map(|b| b.translate(shift as u64, v as u64)).collect();
            out.push(((i + shift) as Point, blocks));
        }
    }
    out.sort_by_key(|(x, _)| *x);
    out
}

/// The first line not mapped to a line by `x -> x + d (mod v)`, if any.
pub fn shift_violation(g: &Geometry, d: usize) -> Option<Block> {
    let set = g.line_set();
    let v = g.v() as u64;
    g.lines().iter().find(|l| !set.contains(&l.translate(d as u64, v))).cloned()
}

/// One representative per line orbit under `x -> x + d`, the opposite
/// designs of `0..d` first. Developing the result reproduces `g`.
///
/// The shift is tested before divisibility, so a step that is neither an
/// automorphism nor a divisor of `v` reports `NotAutomorphism`.
pub fn emit_certificate(g: &Geometry, d: usize) -> Result<Certificate, CertError> {
    let v = g.v();
    if let Some(line) = shift_violation(g, d) {
        return Err(CertError::NotAutomorphism { d, line });
    }
    if d == 0 || v % d != 0 {
        return Err(CertError::PeriodMismatch { d, v });
    }
    let k = g.k();
    let r = g.point_degrees().first().copied().unwrap_or(0);
    let w = (v - 1).checked_sub(r * (k - 1)).ok_or_else(|| CertError::NotPent(format!("r = {r} is too large for {v} points")))?;
    let params = g.claimed().unwrap_or(PentParams { k, r, w });
    let orbit_len = v / d;
    let mut used = BTreeSet::new();
    let mut base = Vec::new();
    let mut take = |line: &Block, used: &mut BTreeSet<Block>| -> Result<bool, CertError> {
        if used.contains(line) {
            return Ok(false);
        }
        let orbit: BTreeSet<Block> = (0..orbit_len).map(|j| line.translate((j * d) as u64, v as u64)).collect();
        if orbit.len() != orbit_len {
            return Err(CertError::ShortOrbit { d, line: line.clone() });
        }
        used.extend(orbit);
        base.push(line.clone());
        Ok(true)
    };
    if w >= 2 {
        for x in 0..d as Point {
            let design = opposite_design(g, x).map_err(|e| CertError::NotPent(e.to_string()))?;
            for b in &design {
                if !take(b, &mut used)? {
                    return Err(CertError::NotPent(format!("block {b} of the opposite design of {x} repeats an earlier orbit")));
                }
            }
        }
    }
    for l in g.lines() {
        take(l, &mut used)?;
    }
    Ok(Certificate { params, d, base_blocks: base, source: format!("emitted with d = {d}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pent::verify_pent;

    const SMALL: &str = include_str!("../corpus/pent_3_33_7.cert");

    #[test]
    fn parses_and_develops_the_33_certificate() {
        let c = parse_certificate(SMALL).unwrap();
        assert_eq!((c.params, c.d, c.base_blocks.len()), (PentParams { k: 3, r: 33, w: 7 }, 2, 22));
        let g = develop(&c).unwrap();
        assert_eq!((g.v(), g.lines().len()), (74, 814));
        assert!(verify_pent(&g).overall);
        assert!(shift_violation(&g, 2).is_none());
    }

    #[test]
    fn flat_lists_are_grouped_by_block_size() {
        let c = parse_certificate(include_str!("../corpus/pent_4_112_13.cert")).unwrap();
        let nums: Vec<String> = c.base_blocks.iter().flat_map(|b| b.points().to_vec()).map(|p| p.to_string()).collect();
        assert_eq!(nums.len(), 224);
        let flat = format!("PENT(4, 112, 13), d = 2: {}", nums.join(", "));
        let again = parse_certificate(&flat).unwrap();
        assert_eq!(again.base_blocks, c.base_blocks);
        let short = format!("PENT(4, 112, 13), d = 2: {}", nums[..220].join(", "));
        assert!(matches!(
            parse_certificate(&short),
            Err(CertError::CountMismatch { expected: 224, found: 220, .. })
        ));
    }

    #[test]
    fn missing_triple_is_a_count_mismatch() {
        let cut = SMALL.trim_end().rsplit_once(';').unwrap().0;
        assert!(matches!(
            parse_certificate(cut),
            Err(CertError::CountMismatch { expected: 22, found: 21, .. })
        ));
    }

    #[test]
    fn typeset_and_commented_text_is_accepted() {
        let text = "# pasted\nPENT(2, 2, 2), $d = 1$: 0, 1; # the only orbit\n";
        let c = parse_certificate(text).unwrap();
        assert_eq!(c.base_blocks.len(), 1);
        let g = develop(&c).unwrap();
        assert_eq!(g.lines().len(), 5);
        assert!(verify_pent(&g).overall);
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        match parse_certificate("PENT(3, 33, 7) d = 2: 1, 2, 3") {
            Err(CertError::SyntaxError { position, .. }) => assert_eq!(position, 15),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_certificate("PENT(3, 33, 7), d = 2: 1, 2 3"), Err(CertError::SyntaxError { .. })));
        assert!(matches!(parse_certificate("PENT(3, 33, 7), d = 2: 1, 2, &"), Err(CertError::SyntaxError { .. })));
    }

    #[test]
    fn report_mode_lists_every_bad_block() {
        let text = "PENT(3, 3, 0), d = 1: 0, 1; 2, 3, 3; 4, 5, 6";
        let (c, errors) = parse_certificate_report(text);
        assert!(c.is_some());
        let bad: Vec<usize> = errors
            .iter()
            .filter_map(|e| match e {
                CertError::BlockSizeMismatch { index, .. } => Some(*index),
                _ => None,
            })
            .collect();
        assert_eq!(bad, vec![0, 1]);
        assert!(matches!(parse_certificate(text), Err(CertError::CountMismatch { expected: 1, found: 3, .. })));
    }

    #[test]
    fn development_errors() {
        let mut header = parse_certificate(SMALL).unwrap();
        header.d = 3;
        assert_eq!(develop(&header), Err(CertError::PeriodMismatch { d: 3, v: 74 }));
        let mut dup = parse_certificate(SMALL).unwrap();
        dup.base_blocks[21] = dup.base_blocks[20].translate(2, 74);
        assert!(matches!(develop(&dup), Err(CertError::DuplicateLine { .. })));
        let lenient = develop_lenient(&dup).unwrap();
        assert_eq!(lenient.lines().len(), 814);
        assert!(!verify_pent(&lenient).overall);
        let mut far = parse_certificate(SMALL).unwrap();
        far.base_blocks[0] = Block::from_distinct(vec![0, 1, 74]);
        assert!(matches!(develop(&far), Err(CertError::OutOfRange { index: 0, point: 74, .. })));
    }

    #[test]
    fn claimed_designs_follow_the_translation() {
        let c = parse_certificate(SMALL).unwrap();
        let claims = claimed_opposite_designs(&c);
        assert_eq!(claims.len(), 74);
        let g = develop(&c).unwrap();
        for (x, blocks) in &claims {
            let mut mine = blocks.clone();
            mine.sort();
            assert_eq!(mine, opposite_design(&g, *x).unwrap(), "point {x}");
        }
        assert_eq!(claims[3].1[0], c.base_blocks[7].translate(2, 74));
    }

    #[test]
    fn emit_round_trips() {
        let c = parse_certificate(SMALL).unwrap();
        let g = develop(&c).unwrap();
        let e = emit_certificate(&g, 2).unwrap();
        assert_eq!(e.base_blocks.len(), 22);
        assert_eq!(develop(&e).unwrap().line_set(), g.line_set());
        let reparsed = parse_certificate(&e.to_text()).unwrap();
        assert_eq!(reparsed.base_blocks, e.base_blocks);
        let own = claimed_opposite_designs(&e);
        assert!(own.iter().all(|(x, b)| {
            let mut b = b.clone();
            b.sort();
            b == opposite_design(&g, *x).unwrap()
        }));
    }

    #[test]
    fn emit_rejects_non_automorphisms() {
        let g = develop(&parse_certificate(SMALL).unwrap()).unwrap();
        assert!(matches!(emit_certificate(&g, 3), Err(CertError::NotAutomorphism { d: 3, .. })));
        assert!(matches!(emit_certificate(&g, 37), Err(CertError::NotAutomorphism { d: 37, .. })));
        assert!(matches!(emit_certificate(&g, 1), Err(CertError::NotAutomorphism { d: 1, .. })));
    }

    #[test]
    fn pentagon_has_one_base_block() {
        let lines = (0..5).map(|i| Block::from_distinct(vec![i, (i + 1) % 5])).collect();
        let g = Geometry::new(5, lines).unwrap();
        let c = emit_certificate(&g, 1).unwrap();
        assert_eq!(c.base_blocks.len(), 1);
        assert_eq!(develop(&c).unwrap().line_set(), g.line_set());
    }
}
