//! Parameter arithmetic for PENT(k, r, w): counting, admissibility, girth
//! bounds, and the two nonexistence chains at and just above the Moore bound.
//!
//! Everything here is exact integer or rational arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

/// Block size `k`, replication `r` and opposite-design order `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PentParams {
    pub k: usize,
    pub r: usize,
    pub w: usize,
}

impl PentParams {
    pub fn new(k: usize, r: usize, w: usize) -> Result<PentParams, ParamError> {
        if k < 2 {
            return Err(ParamError::BlockSizeTooSmall(k));
        }
        Ok(PentParams { k, r, w })
    }

    pub fn point_count(&self) -> usize {
        point_count(*self)
    }

    /// Blocks in one opposite design, `w(w-1)/(k(k-1))` (floored).
    pub fn opposite_block_count(&self) -> usize {
        self.w * self.w.saturating_sub(1) / (self.k * (self.k - 1))
    }
}

impl fmt::Display for PentParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PENT({}, {}, {})", self.k, self.r, self.w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("block size {0} is below 2")]
    BlockSizeTooSmall(usize),
    #[error("{what} is not integral")]
    NotIntegral { what: &'static str },
    #[error("Steiner existence for k = {k} is only known to be necessary (congruence holds: {necessary})")]
    UnsupportedK { k: usize, necessary: bool },
    #[error("girth {0} has no Moore bound here (only 5 and 6)")]
    UnsupportedGirth(usize),
    #[error("(k - 1) = {km1} does not divide w(w - 1) = {ww}")]
    NotIntegralR { km1: usize, ww: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// `v = r(k-1) + w + 1`.
pub fn point_count(p: PentParams) -> usize {
    p.r * (p.k - 1) + p.w + 1
}

/// `b = v r / k`.
pub fn line_count(p: PentParams) -> Result<usize, ParamError> {
    let vr = point_count(p) * p.r;
    if vr % p.k != 0 {
        return Err(ParamError::NotIntegral { what: "v r / k" });
    }
    Ok(vr / p.k)
}

/// `k | r(r - w - 1)`.
pub fn is_admissible(p: PentParams) -> bool {
    let r = p.r as i128;
    let prod = r * (r - p.w as i128 - 1);
    prod.rem_euclid(p.k as i128) == 0
}

/// The congruence `w ≡ 1 or k (mod k(k-1))`, or `w ∈ {0, 1}`. Necessary for an
/// S(2, k, w) for every `k`.
pub fn steiner_necessary(k: usize, w: usize) -> bool {
    if w <= 1 || k == 2 {
        return true;
    }
    let m = k * (k - 1);
    w % m == 1 % m || w % m == k % m
}

/// Existence of S(2, k, w). Exact for `2 <= k <= 5`; larger `k` yields
/// [`ParamError::UnsupportedK`] carrying the necessary condition.
pub fn steiner_admissible(k: usize, w: usize) -> Result<bool, ParamError> {
    let necessary = steiner_necessary(k, w);
    if k > 5 {
        return Err(ParamError::UnsupportedK { k, necessary });
    }
    Ok(necessary)
}

/// `ceil(w(w-1)/(k-1))`, the least `r` compatible with a girth-5 deficiency graph.
pub fn girth5_min_r(k: usize, w: usize) -> usize {
    (w * w.saturating_sub(1)).div_ceil(k - 1)
}

pub fn moore_bound(w: usize, girth: usize) -> Result<usize, ParamError> {
    match girth {
        5 => Ok(w * w + 1),
        6 => Ok(2 * (w * w - w + 1)),
        g => Err(ParamError::UnsupportedGirth(g)),
    }
}

/// The triples for which a PENT at the Moore bound exists.
pub const MOORE_TRIPLES: [PentParams; 6] = [
    PentParams { k: 2, r: 2, w: 2 },
    PentParams { k: 2, r: 6, w: 3 },
    PentParams { k: 3, r: 3, w: 3 },
    PentParams { k: 2, r: 42, w: 7 },
    PentParams { k: 3, r: 21, w: 7 },
    PentParams { k: 7, r: 7, w: 7 },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MooreExclusion {
    /// `w ∉ {2, 3, 7, 57}`: no Moore graph of girth 5 and degree `w`.
    NoMooreGraph,
    /// The opposite design S(2, k, w) cannot exist.
    NoSteinerSystem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MooreVerdict {
    /// Existence is settled affirmatively when `exists` names the triple;
    /// for `w = 57` it hinges on the unknown Moore graph.
    Possible { exists: Option<PentParams> },
    Excluded(MooreExclusion),
}

impl MooreVerdict {
    pub fn is_possible(&self) -> bool {
        matches!(self, MooreVerdict::Possible { .. })
    }
}

/// PENT(k, w(w-1)/(k-1), w) with girth-5 deficiency graph: the point count is
/// the Moore bound, so `w` must be a Moore degree.
pub fn moore_case_verdict(k: usize, w: usize) -> Result<MooreVerdict, ParamError> {
    if k < 2 || w < k {
        return Err(ParamError::PreconditionViolated(format!("need w >= k >= 2, got k = {k}, w = {w}")));
    }
    let ww = w * (w - 1);
    if ww % (k - 1) != 0 {
        return Err(ParamError::NotIntegralR { km1: k - 1, ww });
    }
    if ![2, 3, 7, 57].contains(&w) {
        return Ok(MooreVerdict::Excluded(MooreExclusion::NoMooreGraph));
    }
    if !steiner_necessary(k, w) {
        return Ok(MooreVerdict::Excluded(MooreExclusion::NoSteinerSystem));
    }
    let r = ww / (k - 1);
    let exists = MOORE_TRIPLES.iter().copied().find(|p| *p == PentParams { k, r, w });
    Ok(MooreVerdict::Possible { exists })
}

/// The step of the exclusion chain at which PENT(k, w(w-1)/(k-1)+1, w) fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailingStep {
    /// The opposite design's per-point block count `(w-1)/(k-1)` or its block
    /// count `w(w-1)/(k(k-1))` is not integral.
    PointCountDivisibility,
    /// `b_rem = v/k` is not integral.
    BremDivisibility,
    KNotDividesW,
    /// `w` is not of the form `t k (k-1) + k`.
    Eq2Fails,
    /// `4w - 4k + 1` is not a perfect square, so `s1`, `s2` are irrational.
    NotSquareFirst,
    /// `4w + 1` is not a perfect square, so `s3`, `s4` are irrational.
    NotSquareSecond,
    MultiplicityNotInteger,
    /// All rationality steps pass; the divisor pair `k = de` contradicts
    /// `w - k = t k (k-1)`.
    FinalInequality,
    /// `k = 2`: no (w, 5)-graph on `w^2 + 2` vertices (a cited result).
    CatalogedK2,
}

impl FailingStep {
    pub fn label(&self) -> &'static str {
        match self {
            FailingStep::PointCountDivisibility => "point-count divisibility",
            FailingStep::BremDivisibility => "b_rem divisibility",
            FailingStep::KNotDividesW => "k does not divide w",
            FailingStep::Eq2Fails => "w is not t k (k-1) + k",
            FailingStep::NotSquareFirst => "4w-4k+1 not square",
            FailingStep::NotSquareSecond => "4w+1 not square",
            FailingStep::MultiplicityNotInteger => "multiplicity not a non-negative integer",
            FailingStep::FinalInequality => "final inequality contradiction",
            FailingStep::CatalogedK2 => "cataloged: no (w,5)-graph on w^2+2 vertices",
        }
    }
}

impl fmt::Display for FailingStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Intermediate values of the exclusion chain, filled in as far as the chain got.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness {
    pub v: Option<i128>,
    pub b: Option<i128>,
    pub b_rem: Option<i128>,
    pub t: Option<i128>,
    /// `4w - 4k + 1`
    pub radicand_first: Option<i128>,
    /// `4w + 1`
    pub radicand_second: Option<i128>,
    /// `k^2 + (w^2 - 1)k - w^2`, the common factor of `m3` and `m4`.
    pub m34_factor: Option<i128>,
    pub p: Option<i128>,
    pub q: Option<i128>,
    pub eigenvalues: Option<[Ratio<i128>; 4]>,
    pub multiplicities: Option<[Ratio<i128>; 4]>,
    pub d: Option<i128>,
    pub e: Option<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionVerdict {
    pub excluded: bool,
    pub failing_step: Option<FailingStep>,
    pub witness: Witness,
}

impl ExclusionVerdict {
    fn fail(step: FailingStep, witness: Witness) -> ExclusionVerdict {
        ExclusionVerdict { excluded: true, failing_step: Some(step), witness }
    }
}

fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    (x * x == n).then_some(x)
}

/// Eigenvalues `s1..s4` and multiplicities `m1..m4` of the deficiency graph's
/// adjacency matrix, given `sa = sqrt(4w - 4k + 1)` and `sb = sqrt(4w + 1)`.
/// Generic so the same formulas can be checked in floating point.
pub(crate) fn spectrum<T>(k: T, w: T, sa: T, sb: T, one: T) -> ([T; 4], [T; 4])
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T> + Neg<Output = T>,
{
    let two = one + one;
    let s = [(sa - one) / two, -(sa + one) / two, (sb - one) / two, -(sb + one) / two];
    let c = k * k + (w * w - one) * k - w * w;
    let m = [
        w * (w - two * k + w * sa) / (two * k * sa),
        w * (two * k - w + w * sa) / (two * k * sa),
        (sb + one) * c / (two * k * sb),
        (sb - one) * c / (two * k * sb),
    ];
    (s, m)
}

fn is_nonneg_integer(m: &Ratio<i128>) -> bool {
    m.is_integer() && *m.numer() >= 0
}

/// Runs the nonexistence chain for PENT(k, w(w-1)/(k-1) + 1, w), `w > k`.
pub fn bound_plus_one_verdict(k: usize, w: usize) -> Result<ExclusionVerdict, ParamError> {
    if k < 2 || w <= k {
        return Err(ParamError::PreconditionViolated(format!(
            "need w > k >= 2, got k = {k}, w = {w} (w = k is handled by equal_order_bound_plus_one)"
        )));
    }
    if (w * (w - 1)) % (k - 1) != 0 {
        return Err(ParamError::NotIntegralR { km1: k - 1, ww: w * (w - 1) });
    }
    let (ki, wi) = (k as i128, w as i128);
    let r = wi * (wi - 1) / (ki - 1) + 1;
    let v = wi * wi + ki;
    let mut wit = Witness { v: Some(v), ..Witness::default() };

    if k == 2 {
        return Ok(ExclusionVerdict::fail(FailingStep::CatalogedK2, wit));
    }

    if v % ki != 0 {
        return Ok(ExclusionVerdict::fail(FailingStep::BremDivisibility, wit));
    }
    wit.b = Some(v * r / ki);
    wit.b_rem = Some(v / ki);

    if (wi - 1) % (ki - 1) != 0 || (wi * (wi - 1)) % (ki * (ki - 1)) != 0 {
        return Ok(ExclusionVerdict::fail(FailingStep::PointCountDivisibility, wit));
    }
    if wi % ki != 0 {
        return Ok(ExclusionVerdict::fail(FailingStep::KNotDividesW, wit));
    }
    if (wi - ki) % (ki * (ki - 1)) != 0 {
        return Ok(ExclusionVerdict::fail(FailingStep::Eq2Fails, wit));
    }
    let t = (wi - ki) / (ki * (ki - 1));
    wit.t = Some(t);

    let rad1 = 4 * wi - 4 * ki + 1;
    let rad2 = 4 * wi + 1;
    let c = ki * ki + (wi * wi - 1) * ki - wi * wi;
    wit.radicand_first = Some(rad1);
    wit.radicand_second = Some(rad2);
    wit.m34_factor = Some(c);
    // With w != 2k and c != 0, an irrational eigenvalue forces an irrational multiplicity.
    debug_assert!(wi != 2 * ki && c != 0);

    let Some(sa) = exact_sqrt(rad1) else {
        return Ok(ExclusionVerdict::fail(FailingStep::NotSquareFirst, wit));
    };
    let Some(sb) = exact_sqrt(rad2) else {
        return Ok(ExclusionVerdict::fail(FailingStep::NotSquareSecond, wit));
    };

    let q_of = Ratio::from_integer;
    let (s, m) = spectrum(q_of(ki), q_of(wi), q_of(sa), q_of(sb), q_of(1));
    wit.eigenvalues = Some(s);
    wit.multiplicities = Some(m);
    let p = (sa - 1) / 2;
    let q = (sb - 1) / 2;
    wit.p = Some(p);
    wit.q = Some(q);
    if !m.iter().all(is_nonneg_integer) {
        return Ok(ExclusionVerdict::fail(FailingStep::MultiplicityNotInteger, wit));
    }

    let d = q - p;
    let e = q + p + 1;
    wit.d = Some(d);
    wit.e = Some(e);
    let lhs4 = (d - e) * (d - e) - 1; // 4 (w - k) if the identities hold
    let identities = d * e == ki && p * p + p == wi - ki && lhs4 == 4 * (p * p + p);
    if identities && lhs4 < 4 * t * ki * (ki - 1) {
        return Ok(ExclusionVerdict::fail(FailingStep::FinalInequality, wit));
    }
    Ok(ExclusionVerdict { excluded: false, failing_step: None, witness: wit })
}

/// PENT(k, k+1, k), the bound-plus-one case with `w = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualOrderVerdict {
    Exists,
    Unresolved,
    Excluded,
}

pub fn equal_order_bound_plus_one(k: usize) -> EqualOrderVerdict {
    match k {
        2 | 6 => EqualOrderVerdict::Exists,
        56 => EqualOrderVerdict::Unresolved,
        _ => EqualOrderVerdict::Excluded,
    }
}

/// Sufficient condition for a 3-GDD of type `g^u` (or `g^u m^1`), `g` even.
pub fn gdd3_exists(g: usize, u: usize, m: Option<usize>) -> Result<bool, ParamError> {
    if g == 0 || g % 2 != 0 {
        return Err(ParamError::HypothesisViolated(format!("group size g = {g} must be positive and even")));
    }
    if u < 3 {
        if let Some(m) = m {
            if m % 2 != 0 {
                return Err(ParamError::HypothesisViolated(format!("m = {m} must be even")));
            }
        }
        return Ok(false);
    }
    match m {
        None => Ok((u * (u - 1) * g) % 3 == 0),
        Some(m) => {
            if m % 2 != 0 {
                return Err(ParamError::HypothesisViolated(format!("m = {m} must be even")));
            }
            Ok(m <= g * (u - 1) && (g * g * u * (u - 1) + 2 * g * u * m) % 3 == 0)
        }
    }
}

/// Sufficient condition for a 4-GDD of type `g^{3t} m^1`.
pub fn gdd4_exists(g: usize, t: usize, m: usize) -> Result<bool, ParamError> {
    if g % 2 != 0 || m % 2 != 0 || g % 3 != m % 3 || g < 8 {
        return Err(ParamError::HypothesisViolated(format!(
            "need g, m even, m ≡ g (mod 3), g >= 8; got g = {g}, m = {m}"
        )));
    }
    Ok((m == g && t >= 1)
        || (g < m && 2 * m <= g * (3 * t).saturating_sub(1) && t >= 4)
        || (1 <= m && m < g && t >= 10))
}

/// Replication of the composed geometry: `R + (N-1)(w+1)/(k-1)`.
pub fn wilson_r(k: usize, w: usize, ingredient_rs: &[usize]) -> Result<usize, ParamError> {
    if k < 2 {
        return Err(ParamError::BlockSizeTooSmall(k));
    }
    let n = ingredient_rs.len();
    if n == 0 {
        return Err(ParamError::PreconditionViolated("no ingredients".into()));
    }
    let extra = (n - 1) * (w + 1);
    if extra % (k - 1) != 0 {
        return Err(ParamError::NotIntegral { what: "(N - 1)(w + 1)/(k - 1)" });
    }
    Ok(ingredient_rs.iter().sum::<usize>() + extra / (k - 1))
}

/// Per-`r` classification used by the `admissible` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RVerdict {
    NoSteinerSystem,
    BelowGirth5Bound,
    MooreCase(MooreVerdict),
    BoundPlusOne(ExclusionVerdict),
    BoundPlusOneEqualOrder(EqualOrderVerdict),
    Inadmissible,
    Open,
}

impl fmt::Display for RVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RVerdict::NoSteinerSystem => f.write_str("excluded: no S(2,k,w)"),
            RVerdict::BelowGirth5Bound => f.write_str("below girth-5 bound"),
            RVerdict::MooreCase(MooreVerdict::Possible { exists: Some(p) }) => {
                write!(f, "Moore case: exists ({p})")
            }
            RVerdict::MooreCase(MooreVerdict::Possible { exists: None }) => {
                f.write_str("Moore case: possible (needs the unknown 57-regular Moore graph)")
            }
            RVerdict::MooreCase(MooreVerdict::Excluded(MooreExclusion::NoMooreGraph)) => {
                f.write_str("Moore case: excluded (no Moore graph)")
            }
            RVerdict::MooreCase(MooreVerdict::Excluded(MooreExclusion::NoSteinerSystem)) => {
                f.write_str("Moore case: excluded (no S(2,k,w))")
            }
            RVerdict::BoundPlusOne(v) if v.excluded => {
                write!(f, "bound+1 excluded ({})", v.failing_step.expect("excluded verdicts carry a step"))
            }
            RVerdict::BoundPlusOne(_) => f.write_str("bound+1 not excluded"),
            RVerdict::BoundPlusOneEqualOrder(EqualOrderVerdict::Exists) => f.write_str("bound+1: exists"),
            RVerdict::BoundPlusOneEqualOrder(EqualOrderVerdict::Unresolved) => f.write_str("bound+1: unresolved"),
            RVerdict::BoundPlusOneEqualOrder(EqualOrderVerdict::Excluded) => f.write_str("bound+1 excluded"),
            RVerdict::Inadmissible => f.write_str("inadmissible"),
            RVerdict::Open => f.write_str("open/possible"),
        }
    }
}

/// Classifies PENT(k, r, w) with girth-5 deficiency graph, `w >= k >= 2`.
pub fn classify_r(k: usize, w: usize, r: usize) -> Result<RVerdict, ParamError> {
    if k < 2 || w < k {
        return Err(ParamError::PreconditionViolated(format!("need w >= k >= 2, got k = {k}, w = {w}")));
    }
    if !steiner_necessary(k, w) {
        return Ok(RVerdict::NoSteinerSystem);
    }
    let ww = w * (w - 1);
    let bound = girth5_min_r(k, w);
    if r < bound {
        return Ok(RVerdict::BelowGirth5Bound);
    }
    if ww % (k - 1) == 0 {
        if r == bound {
            return Ok(RVerdict::MooreCase(moore_case_verdict(k, w)?));
        }
        if r == bound + 1 {
            if w == k {
                return Ok(RVerdict::BoundPlusOneEqualOrder(equal_order_bound_plus_one(k)));
            }
            return Ok(RVerdict::BoundPlusOne(bound_plus_one_verdict(k, w)?));
        }
    }
    if !is_admissible(PentParams { k, r, w }) {
        return Ok(RVerdict::Inadmissible);
    }
    Ok(RVerdict::Open)
}
