//! Critical-point extraction from sampled series.

use crate::error::{Error, Result};
use crate::morse::{colex, CriticalPoint, Kind, MorseSet};

/// One path-connected piece of a sampled signal: `(x, y)` samples with
/// strictly increasing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    samples: Vec<(f64, f64)>,
}

impl Segment {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput("segment has no samples".into()));
        }
        for (i, &(x, y)) in samples.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::Parse(format!("non-finite sample ({x}, {y}) at index {i}")));
            }
        }
        for (i, w) in samples.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(Error::NonMonotoneAbscissa { index: i + 1, x: w[1].0 });
            }
        }
        if samples.len() < 2 {
            return Err(Error::EmptyInput("segment needs at least two samples".into()));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}

/// A sampled signal made of one or more segments.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSeries {
    segments: Vec<Segment>,
}

impl SampledSeries {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::EmptyInput("series has no segments".into()));
        }
        Ok(Self { segments })
    }

    pub fn single(samples: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(vec![Segment::new(samples)?])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }
}

/// Extracts one Morse set per segment.
///
/// Samples are first grouped into runs: a run starts at a sample and absorbs
/// following samples whose value stays within `plateau_epsilon` of the run's
/// first value. Interior runs are represented by their leftmost sample, the
/// last run by the segment's final sample so the right end of the domain stays
/// critical. A run is a maximum (minimum) when both neighbouring runs lie
/// below (above) it; runs on the way up or down are dropped. The endpoints are
/// always kept, with their kind read off the adjacent slope.
pub fn extract_critical_points(series: &SampledSeries, plateau_epsilon: f64) -> Result<Vec<MorseSet>> {
    if plateau_epsilon.is_nan() || plateau_epsilon < 0.0 || plateau_epsilon.is_infinite() {
        return Err(Error::InvalidParameter(format!(
            "plateau epsilon must be a finite non-negative number, got {plateau_epsilon}"
        )));
    }
    series
        .segments()
        .iter()
        .map(|s| extract_segment(s, plateau_epsilon))
        .collect()
}

fn extract_segment(segment: &Segment, eps: f64) -> Result<MorseSet> {
    let samples = segment.samples();

    let mut reps: Vec<(f64, f64)> = Vec::new();
    let mut run_start = samples[0];
    reps.push(run_start);
    for &s in &samples[1..] {
        if (s.1 - run_start.1).abs() > eps {
            run_start = s;
            reps.push(s);
        }
    }
    let last = *samples.last().expect("segment has samples");

    let points = if reps.len() == 1 {
        // Entirely flat within epsilon: the larger endpoint (co-lex) is the maximum.
        let first = samples[0];
        if colex(first.0, first.1, last.0, last.1).is_gt() {
            vec![CriticalPoint::max(first.0, first.1), CriticalPoint::min(last.0, last.1)]
        } else {
            vec![CriticalPoint::min(first.0, first.1), CriticalPoint::max(last.0, last.1)]
        }
    } else {
        let n = reps.len();
        let mut points = Vec::with_capacity(n);
        let first_kind = if reps[0].1 > reps[1].1 { Kind::Max } else { Kind::Min };
        points.push(CriticalPoint::new(reps[0].0, reps[0].1, first_kind));
        for i in 1..n - 1 {
            let (prev, cur, next) = (reps[i - 1].1, reps[i].1, reps[i + 1].1);
            if cur > prev && cur > next {
                points.push(CriticalPoint::max(reps[i].0, cur));
            } else if cur < prev && cur < next {
                points.push(CriticalPoint::min(reps[i].0, cur));
            }
        }
        let last_kind = if reps[n - 1].1 > reps[n - 2].1 { Kind::Max } else { Kind::Min };
        points.push(CriticalPoint::new(last.0, last.1, last_kind));
        points
    };

    MorseSet::from_sequence(&points)
}

/// Piecewise-linear samples through the points of `set`, with `per_edge - 1`
/// extra samples strictly inside every edge.
pub fn interpolate(set: &MorseSet, per_edge: usize) -> Vec<(f64, f64)> {
    let pts = set.by_position();
    let mut out = Vec::with_capacity(pts.len() * per_edge.max(1));
    for w in pts.windows(2) {
        out.push((w[0].x, w[0].y));
        for k in 1..per_edge {
            let t = k as f64 / per_edge as f64;
            out.push((w[0].x + t * (w[1].x - w[0].x), w[0].y + t * (w[1].y - w[0].y)));
        }
    }
    if let Some(p) = pts.last() {
        out.push((p.x, p.y));
    }
    out
}
