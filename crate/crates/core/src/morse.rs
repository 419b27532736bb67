//! Critical points, Morse sets and their validation.
//!
//! A Morse set is the finite set of critical points of a function on a
//! compact interval `[a, b]`: alternating local maxima and minima, with a
//! critical point sitting on each end of the interval. Points are compared
//! in *co-lexicographic* order: by value first, by position second. That
//! order is total on a valid set because no two points share a position.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Whether a critical point is a local maximum or a local minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Max,
    Min,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Max => "max",
            Kind::Min => "min",
        })
    }
}

/// A position/value pair tagged as maximum or minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub x: f64,
    pub y: f64,
    pub kind: Kind,
}

impl CriticalPoint {
    pub const fn new(x: f64, y: f64, kind: Kind) -> Self {
        Self { x, y, kind }
    }

    pub const fn max(x: f64, y: f64) -> Self {
        Self::new(x, y, Kind::Max)
    }

    pub const fn min(x: f64, y: f64) -> Self {
        Self::new(x, y, Kind::Min)
    }

    /// Co-lexicographic comparison: value first, ties broken by position.
    ///
    /// NaN coordinates compare as equal; validated sets never contain them.
    pub fn colex_cmp(&self, other: &Self) -> Ordering {
        colex(self.x, self.y, other.x, other.y)
    }

    pub fn colex_lt(&self, other: &Self) -> bool {
        self.colex_cmp(other) == Ordering::Less
    }

    pub fn colex_gt(&self, other: &Self) -> bool {
        self.colex_cmp(other) == Ordering::Greater
    }
}

impl fmt::Display for CriticalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.kind, self.x, self.y)
    }
}

/// Co-lexicographic order on raw `(x, y)` pairs.
pub fn colex(x1: f64, y1: f64, x2: f64, y2: f64) -> Ordering {
    y1.partial_cmp(&y2)
        .unwrap_or(Ordering::Equal)
        .then_with(|| x1.partial_cmp(&x2).unwrap_or(Ordering::Equal))
}

/// Closed interval `[start, end]` carrying the set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub start: f64,
    pub end: f64,
}

impl Domain {
    pub const fn new(start: f64, end: f64) -> Self {
        Self { start, end }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.start <= x && x <= self.end
    }
}

/// The conditions a Morse set must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Every coordinate is a finite real.
    Finiteness,
    /// No two points share a position.
    Injectivity,
    /// Maxima and minima are disjoint, and each list holds only its kind.
    Disjunction,
    /// Maxima strictly descending, minima strictly ascending (co-lex).
    Ordered,
    /// In position order kinds alternate, and every minimum lies below its
    /// neighbouring maxima.
    Alternation,
    /// Each end of the domain carries exactly one point; no point lies outside.
    CriticalBoundary,
    /// `|#maxima - #minima| <= 1`.
    Balance,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One violated condition and the points that break it.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub points: Vec<CriticalPoint>,
}

/// Outcome of [`validate`]. Empty iff the set is a Morse set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    pub fn conditions(&self) -> Vec<Condition> {
        let mut out: Vec<Condition> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.condition) {
                out.push(v.condition);
            }
        }
        out
    }

    fn push(&mut self, condition: Condition, points: Vec<CriticalPoint>) {
        self.violations.push(Violation { condition, points });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}:", v.condition)?;
            for p in &v.points {
                write!(f, " {p}")?;
            }
        }
        Ok(())
    }
}

/// Critical points of a function on a compact interval.
///
/// Construct with [`MorseSet::new`] (validated) or [`MorseSet::from_points`]
/// (sorts into canonical order, then validates). [`MorseSet::from_parts_unchecked`]
/// exists so that malformed inputs can be represented and reported on.
#[derive(Debug, Clone, PartialEq)]
pub struct MorseSet {
    domain: Domain,
    maxima: Vec<CriticalPoint>,
    minima: Vec<CriticalPoint>,
}

impl MorseSet {
    pub fn new(
        domain: Domain,
        maxima: Vec<CriticalPoint>,
        minima: Vec<CriticalPoint>,
    ) -> Result<Self> {
        let set = Self::from_parts_unchecked(domain, maxima, minima);
        let report = validate(&set);
        if report.is_valid() {
            Ok(set)
        } else {
            Err(Error::InvalidMorseSet(report))
        }
    }

    /// Splits `points` by kind, sorts each list canonically and validates.
    pub fn from_points(domain: Domain, points: impl IntoIterator<Item = CriticalPoint>) -> Result<Self> {
        let (mut maxima, mut minima): (Vec<_>, Vec<_>) =
            points.into_iter().partition(|p| p.kind == Kind::Max);
        maxima.sort_by(|a, b| b.colex_cmp(a));
        minima.sort_by(|a, b| a.colex_cmp(b));
        Self::new(domain, maxima, minima)
    }

    /// Builds a set from positions-ordered points, taking the domain from the
    /// first and last position.
    pub fn from_sequence(points: &[CriticalPoint]) -> Result<Self> {
        let (Some(first), Some(last)) = (points.first(), points.last()) else {
            return Err(Error::EmptyInput("no critical points".into()));
        };
        Self::from_points(Domain::new(first.x, last.x), points.iter().copied())
    }

    pub fn from_parts_unchecked(
        domain: Domain,
        maxima: Vec<CriticalPoint>,
        minima: Vec<CriticalPoint>,
    ) -> Self {
        Self { domain, maxima, minima }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Maxima, strictly descending in co-lex order.
    pub fn maxima(&self) -> &[CriticalPoint] {
        &self.maxima
    }

    /// Minima, strictly ascending in co-lex order.
    pub fn minima(&self) -> &[CriticalPoint] {
        &self.minima
    }

    pub fn kappa_plus(&self) -> usize {
        self.maxima.len()
    }

    pub fn kappa_minus(&self) -> usize {
        self.minima.len()
    }

    pub fn len(&self) -> usize {
        self.maxima.len() + self.minima.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points ordered by position.
    pub fn by_position(&self) -> Vec<CriticalPoint> {
        let mut all: Vec<CriticalPoint> =
            self.maxima.iter().chain(self.minima.iter()).copied().collect();
        all.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap_or(Ordering::Equal));
        all
    }

    /// Lowest minimum value, if any minimum exists.
    pub fn global_min_value(&self) -> Option<f64> {
        self.minima.first().map(|p| p.y)
    }

    /// Shifts every point (and the domain) by `(dx, dy)`.
    pub fn translate(&self, dx: f64, dy: f64) -> Self {
        let shift = |p: &CriticalPoint| CriticalPoint::new(p.x + dx, p.y + dy, p.kind);
        Self {
            domain: Domain::new(self.domain.start + dx, self.domain.end + dx),
            maxima: self.maxima.iter().map(shift).collect(),
            minima: self.minima.iter().map(shift).collect(),
        }
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidMorseSet(report))
        }
    }
}

/// Checks every Morse-set condition and lists the violations.
pub fn validate(set: &MorseSet) -> ValidationReport {
    let mut report = ValidationReport::default();
    let domain = set.domain;

    let non_finite: Vec<CriticalPoint> = set
        .maxima
        .iter()
        .chain(&set.minima)
        .filter(|p| !p.x.is_finite() || !p.y.is_finite())
        .copied()
        .collect();
    if !non_finite.is_empty() || !domain.start.is_finite() || !domain.end.is_finite() {
        report.push(Condition::Finiteness, non_finite);
        // Everything below relies on ordered coordinates.
        return report;
    }

    let wrong_kind: Vec<CriticalPoint> = set
        .maxima
        .iter()
        .filter(|p| p.kind != Kind::Max)
        .chain(set.minima.iter().filter(|p| p.kind != Kind::Min))
        .copied()
        .collect();

    let all = set.by_position();

    let mut shared_max_min = Vec::new();
    let mut duplicate = Vec::new();
    for w in all.windows(2) {
        if w[0].x == w[1].x {
            if w[0].kind != w[1].kind {
                shared_max_min.extend_from_slice(w);
            } else {
                duplicate.extend_from_slice(w);
            }
        }
    }
    if !duplicate.is_empty() || !shared_max_min.is_empty() {
        let mut pts = duplicate;
        pts.extend_from_slice(&shared_max_min);
        report.push(Condition::Injectivity, pts);
    }
    if !wrong_kind.is_empty() || !shared_max_min.is_empty() {
        let mut pts = wrong_kind;
        pts.extend(shared_max_min);
        report.push(Condition::Disjunction, pts);
    }

    let mut unordered = Vec::new();
    for w in set.maxima.windows(2) {
        if !w[0].colex_gt(&w[1]) {
            unordered.extend_from_slice(w);
        }
    }
    for w in set.minima.windows(2) {
        if !w[0].colex_lt(&w[1]) {
            unordered.extend_from_slice(w);
        }
    }
    if !unordered.is_empty() {
        report.push(Condition::Ordered, unordered);
    }

    let mut broken = Vec::new();
    for w in all.windows(2) {
        let ok = match (w[0].kind, w[1].kind) {
            (Kind::Max, Kind::Min) => w[1].colex_lt(&w[0]),
            (Kind::Min, Kind::Max) => w[0].colex_lt(&w[1]),
            _ => false,
        };
        if !ok {
            broken.extend_from_slice(w);
        }
    }
    if !broken.is_empty() {
        report.push(Condition::Alternation, broken);
    }

    let mut boundary = Vec::new();
    let at_start = all.iter().filter(|p| p.x == domain.start).count();
    let at_end = all.iter().filter(|p| p.x == domain.end).count();
    let outside: Vec<CriticalPoint> = all.iter().filter(|p| !domain.contains(p.x)).copied().collect();
    if domain.start > domain.end || at_start != 1 || at_end != 1 || !outside.is_empty() {
        boundary.extend(all.iter().filter(|p| p.x == domain.start || p.x == domain.end));
        boundary.extend(outside);
        report.push(Condition::CriticalBoundary, boundary);
    }

    if set.maxima.len().abs_diff(set.minima.len()) > 1 {
        report.push(Condition::Balance, Vec::new());
    }

    report
}
