#![allow(dead_code)]

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use pentgeom::certify::{develop, parse_certificate, Certificate};
use pentgeom::Geometry;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every certificate in the clean corpus, sorted by file name.
pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cert"))
        .collect();
    files.sort();
    files
}

pub fn noisy_file(name: &str) -> PathBuf {
    corpus_dir().join("noisy").join(name)
}

pub fn load_certificate(path: &Path) -> Certificate {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_certificate(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn load(name: &str) -> (Certificate, Geometry) {
    let c = load_certificate(&corpus_dir().join(name));
    let g = develop(&c).unwrap();
    (c, g)
}

/// Lines as plain point lists, for the naive verifier.
pub fn raw_lines(g: &Geometry) -> Vec<Vec<u32>> {
    g.lines().iter().map(|l| l.points().to_vec()).collect()
}

/// Straight from the definition, with no shortcuts: uniform lines of at
/// least two distinct points, no repeated line, every pair on at most one
/// line, every point on the same number of lines, and for every point x the
/// lines inside the set of points not collinear with x cover each pair of
/// that set exactly once, with that set of size v - 1 - r(k - 1).
pub fn naive_verify(v: usize, lines: &[Vec<u32>]) -> bool {
    if lines.is_empty() {
        return false;
    }
    let k = lines[0].len();
    if k < 2 {
        return false;
    }
    let mut line_through: HashMap<(u32, u32), usize> = HashMap::new();
    let mut seen_lines: Vec<Vec<u32>> = Vec::new();
    for (index, line) in lines.iter().enumerate() {
        if line.len() != k {
            return false;
        }
        let mut sorted = line.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != k || sorted.iter().any(|&p| p as usize >= v) {
            return false;
        }
        seen_lines.push(sorted);
        for i in 0..k {
            for j in 0..k {
                if i != j && line_through.insert((line[i], line[j]), index).is_some() {
                    return false;
                }
            }
        }
    }
    seen_lines.sort();
    if seen_lines.windows(2).any(|p| p[0] == p[1]) {
        return false;
    }
    let mut degree = vec![0usize; v];
    for line in lines {
        for &p in line {
            degree[p as usize] += 1;
        }
    }
    let r = degree[0];
    if degree.iter().any(|&d| d != r) {
        return false;
    }
    let collinear_others = r * (k - 1);
    if collinear_others + 1 > v {
        return false;
    }
    let w = v - 1 - collinear_others;
    for x in 0..v as u32 {
        let opposite: Vec<u32> = (0..v as u32).filter(|&y| y != x && !line_through.contains_key(&(x, y))).collect();
        if opposite.len() != w {
            return false;
        }
        let inside = |p: u32| opposite.contains(&p);
        for (i, &a) in opposite.iter().enumerate() {
            for &b in &opposite[i + 1..] {
                match line_through.get(&(a, b)) {
                    Some(&l) if lines[l].iter().all(|&p| inside(p)) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Twenty damaged copies: ten with one line deleted, ten with one point of
/// one line moved to another point.
pub fn mutations(g: &Geometry) -> Vec<Geometry> {
    let n = g.lines().len();
    let mut out = Vec::new();
    for i in 0..10 {
        out.push(g.without_line(i * n / 10));
    }
    for i in 0..10 {
        let index = (i * n / 10 + n / 20) % n;
        let line = &g.lines()[index];
        let replacement = (0..g.v() as u32)
            .map(|p| (p + 7 * i as u32 + 1) % g.v() as u32)
            .find(|p| !line.contains(*p))
            .unwrap();
        let mut points = line.points().to_vec();
        let slot = i % points.len();
        points[slot] = replacement;
        out.push(g.replace_line(index, pentgeom::Block::from_distinct(points)).unwrap());
    }
    out
}
