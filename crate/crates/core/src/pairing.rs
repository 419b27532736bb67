//! Elder-rule matching of maxima to the minima where they die.
//!
//! Sweeping the upper levelsets `{f >= t}` of the piecewise-linear function
//! through a Morse set from `t = +inf` downwards, every maximum starts a
//! component and every interior minimum merges two of them. The younger
//! component (the one with the lower maximum in co-lex order) dies at the
//! merging minimum. The global maximum never dies; it is paired with the
//! essential marker whose death value is `-inf`.
//!
//! Two independent implementations are provided:
//!
//! * [`pair`] scans the points in position order with a monotone stack. For
//!   each maximum it finds the lowest minimum on the path to the nearest
//!   higher maximum on either side; the higher of the two is where it dies.
//!   Linear time.
//! * [`pair_recursive`] splits the domain into regions around the highest
//!   remaining maximum, as in the classic recursive formulation. Quadratic in
//!   the worst case.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::morse::{validate, CriticalPoint, Kind, MorseSet};

/// Where a maximum dies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Death {
    /// The component's global maximum: never merged, death value `-inf`.
    Essential,
    /// Merged into an older component at this minimum.
    At(CriticalPoint),
}

impl Death {
    /// Death value; `-inf` for the essential class.
    pub fn value(&self) -> f64 {
        match self {
            Death::Essential => f64::NEG_INFINITY,
            Death::At(p) => p.y,
        }
    }

    pub fn is_essential(&self) -> bool {
        matches!(self, Death::Essential)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEntry {
    pub max: CriticalPoint,
    pub death: Death,
}

impl PairEntry {
    /// `birth - death`; `+inf` for the essential class.
    pub fn persistence(&self) -> f64 {
        self.max.y - self.death.value()
    }
}

/// Injective map from the maxima of a Morse set to their death minima.
///
/// Entries follow the order of [`MorseSet::maxima`] (co-lex descending), so
/// two pairings of the same set compare equal iff they agree as multisets.
#[derive(Debug, Clone, PartialEq)]
pub struct Pairing {
    entries: Vec<PairEntry>,
}

impl Pairing {
    pub fn entries(&self) -> &[PairEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn death_of(&self, max: &CriticalPoint) -> Option<Death> {
        self.entries.iter().find(|e| e.max == *max).map(|e| e.death)
    }
}

fn check(set: &MorseSet) -> Result<()> {
    let report = validate(set);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidMorseSet(report))
    }
}

/// Points in position order, with each maximum's rank in `set.maxima()`.
struct Layout {
    points: Vec<CriticalPoint>,
    /// For each point in position order: its rank in `maxima()` if a maximum.
    max_rank: Vec<Option<usize>>,
}

impl Layout {
    fn new(set: &MorseSet) -> Self {
        let points = set.by_position();
        let mut ranked: Vec<(usize, f64)> =
            set.maxima().iter().enumerate().map(|(r, p)| (r, p.x)).collect();
        ranked.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
        let mut max_rank = vec![None; points.len()];
        let mut it = ranked.into_iter().peekable();
        for (i, p) in points.iter().enumerate() {
            if let Some(&(r, x)) = it.peek() {
                if x == p.x && p.kind == Kind::Max {
                    max_rank[i] = Some(r);
                    it.next();
                }
            }
        }
        Self { points, max_rank }
    }
}

/// Elder-rule pairing by a linear scan.
pub fn pair(set: &MorseSet) -> Result<Pairing> {
    check(set)?;
    let layout = Layout::new(set);
    let left = nearest_higher_path_min(&layout.points, false);
    let right = nearest_higher_path_min(&layout.points, true);

    let mut deaths: Vec<Option<Death>> = vec![None; set.kappa_plus()];
    for (i, rank) in layout.max_rank.iter().enumerate() {
        let Some(rank) = *rank else { continue };
        let death = match (left[i], right[i]) {
            (None, None) => Death::Essential,
            (Some(l), None) => Death::At(layout.points[l]),
            (None, Some(r)) => Death::At(layout.points[r]),
            (Some(l), Some(r)) => {
                let (pl, pr) = (layout.points[l], layout.points[r]);
                Death::At(if pl.colex_gt(&pr) { pl } else { pr })
            }
        };
        deaths[rank] = Some(death);
    }

    let entries = set
        .maxima()
        .iter()
        .zip(deaths)
        .map(|(max, death)| PairEntry { max: *max, death: death.expect("every maximum visited") })
        .collect();
    Ok(Pairing { entries })
}

/// For every maximum (by position index), the lowest minimum on the path to
/// the nearest co-lex-higher maximum in one direction, or `None` if no higher
/// maximum exists that way.
fn nearest_higher_path_min(points: &[CriticalPoint], reverse: bool) -> Vec<Option<usize>> {
    struct Frame {
        max: usize,
        lowest: Option<usize>,
    }

    let lower = |a: Option<usize>, b: Option<usize>| -> Option<usize> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(if points[a].colex_lt(&points[b]) { a } else { b }),
        }
    };

    let n = points.len();
    let mut out = vec![None; n];
    let mut stack: Vec<Frame> = Vec::new();
    let order: Box<dyn Iterator<Item = usize>> =
        if reverse { Box::new((0..n).rev()) } else { Box::new(0..n) };
    for i in order {
        match points[i].kind {
            Kind::Min => {
                if let Some(top) = stack.last_mut() {
                    top.lowest = lower(top.lowest, Some(i));
                }
            }
            Kind::Max => {
                while stack.last().is_some_and(|f| points[f.max].colex_lt(&points[i])) {
                    let popped = stack.pop().expect("non-empty");
                    if let Some(top) = stack.last_mut() {
                        top.lowest = lower(top.lowest, popped.lowest);
                    }
                }
                if let Some(top) = stack.last() {
                    out[i] = top.lowest;
                }
                stack.push(Frame { max: i, lowest: None });
            }
        }
    }
    out
}

/// Elder-rule pairing by recursive region splitting.
///
/// The highest maximum is essential and splits the domain into a left and a
/// right region, each bounded on one side by a higher maximum (`end`). In a
/// region the highest remaining maximum `m` dies at the lowest minimum
/// strictly between `m` and `end`; that minimum then splits the rest of the
/// region into pieces which are processed the same way. Maxima are taken in
/// co-lex order, so ties in value go to the larger position.
pub fn pair_recursive(set: &MorseSet) -> Result<Pairing> {
    check(set)?;
    let layout = Layout::new(set);
    let points = &layout.points;
    let n = points.len();
    let mut deaths: Vec<Option<Death>> = vec![None; set.kappa_plus()];
    if set.kappa_plus() == 0 {
        return Ok(Pairing { entries: Vec::new() });
    }

    let mut taken = vec![false; n];
    let global = (0..n)
        .filter(|&i| layout.max_rank[i].is_some())
        .max_by(|&a, &b| points[a].colex_cmp(&points[b]))
        .expect("at least one maximum");
    taken[global] = true;
    deaths[layout.max_rank[global].expect("maximum")] = Some(Death::Essential);

    // (start, end): region endpoints as position indices; `end` is always an
    // already-processed higher maximum. The filter on maxima is inclusive of
    // both ends, the filter on minima is exclusive.
    let mut regions: Vec<(usize, usize)> = vec![(n - 1, global), (0, global)];
    while let Some((start, end)) = regions.pop() {
        let (lo, hi) = (start.min(end), start.max(end));
        let Some(m) = (lo..=hi)
            .filter(|&i| !taken[i] && layout.max_rank[i].is_some())
            .max_by(|&a, &b| points[a].colex_cmp(&points[b]))
        else {
            continue;
        };
        taken[m] = true;

        let (mlo, mhi) = (m.min(end), m.max(end));
        let dying = (mlo + 1..mhi)
            .filter(|&i| layout.max_rank[i].is_none())
            .min_by(|&a, &b| points[a].colex_cmp(&points[b]))
            .expect("alternation puts a minimum between any two maxima");
        deaths[layout.max_rank[m].expect("maximum")] = Some(Death::At(points[dying]));

        regions.push((dying, end));
        regions.push((dying, m));
        regions.push((start, m));
    }

    let entries = set
        .maxima()
        .iter()
        .zip(deaths)
        .map(|(max, death)| PairEntry { max: *max, death: death.expect("every maximum is reached") })
        .collect();
    Ok(Pairing { entries })
}
