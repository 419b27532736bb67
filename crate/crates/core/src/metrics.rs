//! Distances between Morse sets and between transformation outputs.
//!
//! All distances use the sup-norm between points and aggregate matched pairs
//! with an `l_p` sum, `p` in `[1, inf]`. Coordinates are extended reals: two
//! equal infinities are at distance zero, any other gap involving an infinity
//! is infinite.

use std::fmt;
use std::str::FromStr;

use crate::assignment::{solve_assignment, MatchResult, Objective, Slot};
use crate::error::{DiagramKind, Error, Result};
use crate::morse::{CriticalPoint, MorseSet};
use crate::transform::{PdSet, PtSet, RptSet};

/// Exponent of an `l_p` aggregation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(PNorm::Infinity)
        } else if p >= 1.0 {
            Ok(PNorm::Finite(p))
        } else {
            Err(Error::InvalidParameter(format!("p must lie in [1, inf], got {p}")))
        }
    }

    /// Aggregates per-pair costs: `(sum c^p)^(1/p)`, or `max c` for `p = inf`.
    pub fn aggregate(&self, costs: impl IntoIterator<Item = f64>) -> f64 {
        match *self {
            PNorm::Infinity => costs.into_iter().fold(0.0, f64::max),
            PNorm::Finite(p) => {
                let total: f64 = costs.into_iter().map(|c| c.powf(p)).sum();
                if p == 1.0 {
                    total
                } else {
                    total.powf(1.0 / p)
                }
            }
        }
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "Infinity" => Ok(PNorm::Infinity),
            t => {
                let p: f64 = t.parse().map_err(|_| Error::Parse(format!("invalid p: {s:?}")))?;
                PNorm::new(p)
            }
        }
    }
}

/// Gap between two extended reals.
pub fn coord_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else if a.is_infinite() || b.is_infinite() {
        f64::INFINITY
    } else {
        (a - b).abs()
    }
}

/// Sup-norm distance between two points of equal dimension.
pub fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&u, &v)| coord_gap(u, v)).fold(0.0, f64::max)
}

fn point_gap(a: Option<&CriticalPoint>, b: Option<&CriticalPoint>) -> f64 {
    let (ax, ay) = a.map_or((0.0, 0.0), |p| (p.x, p.y));
    let (bx, by) = b.map_or((0.0, 0.0), |p| (p.x, p.y));
    coord_gap(ax, bx).max(coord_gap(ay, by))
}

/// Sup-norm gaps of the rank matching between two Morse sets: the i-th
/// largest maxima are paired, the j-th smallest minima are paired, and the
/// shorter list is padded with the origin `(0, 0)`.
pub fn rank_matching_gaps(k: &MorseSet, l: &MorseSet) -> Vec<f64> {
    fn padded(a: &[CriticalPoint], b: &[CriticalPoint]) -> Vec<f64> {
        (0..a.len().max(b.len())).map(|i| point_gap(a.get(i), b.get(i))).collect()
    }
    let mut out = padded(k.maxima(), l.maxima());
    out.extend(padded(k.minima(), l.minima()));
    out
}

/// `l_p` distance between two Morse sets under the rank matching.
///
/// Missing points are matched to the origin, so the distance depends on
/// where `0` lies relative to the domains.
pub fn morse_distance(k: &MorseSet, l: &MorseSet, p: PNorm) -> Result<f64> {
    k.ensure_valid()?;
    l.ensure_valid()?;
    Ok(p.aggregate(rank_matching_gaps(k, l)))
}

/// How points left over by a partial matching are absorbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slack {
    /// Match to the nearest zero-persistence point.
    Diagonal,
    /// Pad the smaller side with the all-zero point.
    PadOrigin,
}

impl fmt::Display for Slack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slack::Diagonal => "diagonal",
            Slack::PadOrigin => "pad-origin",
        })
    }
}

impl FromStr for Slack {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diagonal" => Ok(Slack::Diagonal),
            "pad-origin" | "origin" => Ok(Slack::PadOrigin),
            _ => Err(Error::Parse(format!("unknown slack policy {s:?}"))),
        }
    }
}

/// A multiset of points that Wasserstein distances can compare.
pub trait Diagram {
    const KIND: DiagramKind;
    const DIM: usize;

    fn coords(&self) -> Vec<Vec<f64>>;

    /// Sup-norm distance from a point to its nearest diagonal representative.
    fn diagonal_cost(point: &[f64]) -> f64;
}

/// Features only: `(x, birth, death)`. Diagonal-plane points already sit on
/// the slack locus and take no part in the matching.
impl Diagram for PtSet {
    const KIND: DiagramKind = DiagramKind::Pt;
    const DIM: usize = 3;

    fn coords(&self) -> Vec<Vec<f64>> {
        self.features.iter().map(|f| vec![f.x, f.birth, f.death]).collect()
    }

    fn diagonal_cost(point: &[f64]) -> f64 {
        half_gap(point[1], point[2])
    }
}

impl Diagram for RptSet {
    const KIND: DiagramKind = DiagramKind::Rpt;
    const DIM: usize = 2;

    fn coords(&self) -> Vec<Vec<f64>> {
        self.features.iter().map(|f| vec![f.x, f.persistence]).collect()
    }

    fn diagonal_cost(point: &[f64]) -> f64 {
        point[1].abs()
    }
}

impl Diagram for PdSet {
    const KIND: DiagramKind = DiagramKind::Pd;
    const DIM: usize = 2;

    fn coords(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| vec![p.birth, p.death]).collect()
    }

    fn diagonal_cost(point: &[f64]) -> f64 {
        half_gap(point[0], point[1])
    }
}

fn half_gap(birth: f64, death: f64) -> f64 {
    let g = coord_gap(birth, death);
    if g.is_finite() {
        g / 2.0
    } else {
        g
    }
}

/// Optimal matching between two diagrams together with its `p`-cost.
pub fn wasserstein_matching<D: Diagram>(a: &D, b: &D, p: PNorm, slack: Slack) -> Result<MatchResult> {
    let (pa, pb) = (a.coords(), b.coords());
    let (rows, cols) = slots(pa.len(), pb.len(), slack);
    let zero = vec![0.0; D::DIM];

    let raw = |r: Slot, c: Slot| -> f64 {
        match (r, c) {
            (Slot::Point(i), Slot::Point(j)) => sup_dist(&pa[i], &pb[j]),
            (Slot::Point(i), Slot::Diagonal) => D::diagonal_cost(&pa[i]),
            (Slot::Diagonal, Slot::Point(j)) => D::diagonal_cost(&pb[j]),
            (Slot::Point(i), Slot::Origin) => sup_dist(&pa[i], &zero),
            (Slot::Origin, Slot::Point(j)) => sup_dist(&zero, &pb[j]),
            _ => 0.0,
        }
    };

    let objective = match p {
        PNorm::Infinity => Objective::Bottleneck,
        PNorm::Finite(_) => Objective::Sum,
    };
    let lift = |c: f64| match p {
        PNorm::Finite(q) if q != 1.0 => c.powf(q),
        _ => c,
    };

    let n = rows.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            matrix[i][j] = match (slack, r, c) {
                // Each point owns its own diagonal copy.
                (Slack::Diagonal, Slot::Point(pi), Slot::Diagonal) if j != pb.len() + pi => f64::INFINITY,
                (Slack::Diagonal, Slot::Diagonal, Slot::Point(pj)) if i != pa.len() + pj => f64::INFINITY,
                _ => lift(raw(r, c)),
            };
        }
    }

    let solved = match solve_assignment(&matrix, objective) {
        Ok(s) => s,
        Err(Error::Infeasible) => return Err(Error::UnmatchableInfinity),
        Err(e) => return Err(e),
    };

    let mut pairs = Vec::with_capacity(n);
    let mut costs = Vec::with_capacity(n);
    for (r, c) in solved.pairs {
        let (Slot::Point(i), Slot::Point(j)) = (r, c) else { unreachable!("solver returns indices") };
        let (rs, cs) = (rows[i], cols[j]);
        if matches!((rs, cs), (Slot::Diagonal, Slot::Diagonal)) {
            continue;
        }
        costs.push(raw(rs, cs));
        pairs.push((rs, cs));
    }
    Ok(MatchResult { cost: p.aggregate(costs), pairs })
}

fn slots(na: usize, nb: usize, slack: Slack) -> (Vec<Slot>, Vec<Slot>) {
    let mut rows: Vec<Slot> = (0..na).map(Slot::Point).collect();
    let mut cols: Vec<Slot> = (0..nb).map(Slot::Point).collect();
    match slack {
        Slack::Diagonal => {
            rows.extend(std::iter::repeat(Slot::Diagonal).take(nb));
            cols.extend(std::iter::repeat(Slot::Diagonal).take(na));
        }
        Slack::PadOrigin => {
            let n = na.max(nb);
            rows.extend(std::iter::repeat(Slot::Origin).take(n - na));
            cols.extend(std::iter::repeat(Slot::Origin).take(n - nb));
        }
    }
    (rows, cols)
}

/// `p`-Wasserstein distance (bottleneck for `p = inf`) between two diagrams
/// of the same kind.
pub fn wasserstein<D: Diagram>(a: &D, b: &D, p: PNorm, slack: Slack) -> Result<f64> {
    Ok(wasserstein_matching(a, b, p, slack)?.cost)
}

/// A diagram of any kind, for callers that only know the kind at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyDiagram {
    Pt(PtSet),
    Rpt(RptSet),
    Pd(PdSet),
}

impl AnyDiagram {
    pub fn kind(&self) -> DiagramKind {
        match self {
            AnyDiagram::Pt(_) => DiagramKind::Pt,
            AnyDiagram::Rpt(_) => DiagramKind::Rpt,
            AnyDiagram::Pd(_) => DiagramKind::Pd,
        }
    }
}

/// [`wasserstein`] with a run-time kind check.
pub fn wasserstein_any(a: &AnyDiagram, b: &AnyDiagram, p: PNorm, slack: Slack) -> Result<f64> {
    match (a, b) {
        (AnyDiagram::Pt(x), AnyDiagram::Pt(y)) => wasserstein(x, y, p, slack),
        (AnyDiagram::Rpt(x), AnyDiagram::Rpt(y)) => wasserstein(x, y, p, slack),
        (AnyDiagram::Pd(x), AnyDiagram::Pd(y)) => wasserstein(x, y, p, slack),
        _ => Err(Error::KindMismatch { left: a.kind(), right: b.kind() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e1, mirrored_f, mirrored_g};
    use crate::transform::{persistence_transformation, reduced_persistence_transformation, to_persistence_diagram};

    const P2: PNorm = PNorm::Finite(2.0);

    #[test]
    fn pnorm_parsing() {
        assert_eq!("inf".parse::<PNorm>().unwrap(), PNorm::Infinity);
        assert_eq!("2".parse::<PNorm>().unwrap(), PNorm::Finite(2.0));
        assert!("0.5".parse::<PNorm>().is_err());
        assert!("x".parse::<PNorm>().is_err());
    }

    #[test]
    fn gaps_with_infinities() {
        assert_eq!(coord_gap(f64::NEG_INFINITY, f64::NEG_INFINITY), 0.0);
        assert_eq!(coord_gap(f64::NEG_INFINITY, 1.0), f64::INFINITY);
        assert_eq!(coord_gap(f64::NEG_INFINITY, f64::INFINITY), f64::INFINITY);
        assert_eq!(coord_gap(-1.0, 2.0), 3.0);
    }

    #[test]
    fn morse_distance_to_itself_is_zero() {
        for p in [PNorm::Finite(1.0), P2, PNorm::Infinity] {
            assert_eq!(morse_distance(&e1(), &e1(), p).unwrap(), 0.0);
        }
    }

    #[test]
    fn morse_distance_of_height_shift() {
        let l = e1().translate(0.0, 0.25);
        assert_eq!(morse_distance(&e1(), &l, PNorm::Infinity).unwrap(), 0.25);
        let d2 = morse_distance(&e1(), &l, P2).unwrap();
        assert!((d2 - 0.25 * 7f64.sqrt()).abs() < 1e-12, "{d2}");
    }

    #[test]
    fn removed_peak_shifts_minimum_ranks() {
        // Without (5,2) and (4,0.5) the peak pads to the origin (cost 5), and
        // (2,1) moves up a rank: it meets (4,0.5) (cost 2) while K's (2,1)
        // pads to the origin (cost 2).
        let l = MorseSet::from_sequence(&[
            CriticalPoint::min(0.0, 0.0),
            CriticalPoint::max(1.0, 3.0),
            CriticalPoint::min(2.0, 1.0),
            CriticalPoint::max(3.0, 5.0),
            CriticalPoint::min(6.0, 0.0),
        ])
        .unwrap();
        assert_eq!(morse_distance(&e1(), &l, PNorm::Finite(1.0)).unwrap(), 9.0);
        assert_eq!(morse_distance(&e1(), &l, P2).unwrap(), 33f64.sqrt());
        assert_eq!(morse_distance(&e1(), &l, PNorm::Infinity).unwrap(), 5.0);
    }

    #[test]
    fn pd_wasserstein_of_mirrored_pair_is_zero() {
        let f = to_persistence_diagram(&persistence_transformation(&mirrored_f()).unwrap());
        let g = to_persistence_diagram(&persistence_transformation(&mirrored_g()).unwrap());
        for p in [PNorm::Finite(1.0), P2, PNorm::Infinity] {
            for s in [Slack::Diagonal, Slack::PadOrigin] {
                assert_eq!(wasserstein(&f, &g, p, s).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn pt_bottleneck_of_mirrored_pair() {
        let f = persistence_transformation(&mirrored_f()).unwrap();
        let g = persistence_transformation(&mirrored_g()).unwrap();
        assert_eq!(wasserstein(&f, &g, PNorm::Infinity, Slack::Diagonal).unwrap(), 2.0);
        assert_eq!(wasserstein(&f, &f, P2, Slack::Diagonal).unwrap(), 0.0);
        assert_eq!(wasserstein(&f, &f, P2, Slack::PadOrigin).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_slack_absorbs_extra_features() {
        let a = RptSet { features: vec![crate::transform::RptFeature { x: 1.0, persistence: 0.25 }] };
        let b = RptSet::default();
        assert_eq!(wasserstein(&a, &b, P2, Slack::Diagonal).unwrap(), 0.25);
        // Origin padding charges the position as well.
        assert_eq!(wasserstein(&a, &b, P2, Slack::PadOrigin).unwrap(), 1.0);
    }

    #[test]
    fn unmatched_essential_is_an_error() {
        let pt = persistence_transformation(&e1()).unwrap();
        let empty = PtSet::default();
        assert!(matches!(
            wasserstein(&pt, &empty, P2, Slack::Diagonal),
            Err(Error::UnmatchableInfinity)
        ));
    }

    #[test]
    fn kind_mismatch() {
        let pt = persistence_transformation(&e1()).unwrap();
        let rpt = reduced_persistence_transformation(&e1(), false).unwrap();
        let r = wasserstein_any(&AnyDiagram::Pt(pt), &AnyDiagram::Rpt(rpt), P2, Slack::Diagonal);
        assert!(matches!(r, Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn matching_reports_slots() {
        let f = persistence_transformation(&mirrored_f()).unwrap();
        let g = persistence_transformation(&mirrored_g()).unwrap();
        let m = wasserstein_matching(&f, &g, PNorm::Infinity, Slack::Diagonal).unwrap();
        // Each concrete index appears exactly once on its side.
        for side in 0..2 {
            let mut seen: Vec<usize> = m
                .pairs
                .iter()
                .filter_map(|pr| match if side == 0 { pr.0 } else { pr.1 } {
                    Slot::Point(i) => Some(i),
                    _ => None,
                })
                .collect();
            seen.sort();
            assert_eq!(seen, vec![0, 1]);
        }
    }
}
