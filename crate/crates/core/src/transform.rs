//! Persistence transformation, its reduced form, the persistence-diagram
//! projection and threshold denoising.

use std::cmp::Ordering;

use crate::error::Result;
use crate::morse::MorseSet;
use crate::pairing::{pair, Death, Pairing};

/// A maximum at position `x`, born at `birth`, dying at `death`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtFeature {
    pub x: f64,
    pub birth: f64,
    pub death: f64,
}

impl PtFeature {
    pub fn persistence(&self) -> f64 {
        self.birth - self.death
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::NEG_INFINITY
    }
}

/// Output of the persistence transformation.
///
/// `features` carries one entry per maximum, sorted by decreasing persistence.
/// `diagonal` carries one entry per minimum, with `birth == death`; these lie
/// on the diagonal plane and have zero persistence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PtSet {
    pub features: Vec<PtFeature>,
    pub diagonal: Vec<PtFeature>,
}

/// A maximum at position `x` with its persistence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RptFeature {
    pub x: f64,
    pub persistence: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RptSet {
    pub features: Vec<RptFeature>,
}

/// A `(birth, death)` pair of the upper-levelset persistence diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdPoint {
    pub birth: f64,
    pub death: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PdSet {
    pub points: Vec<PdPoint>,
}

/// Decreasing persistence, then decreasing birth, then increasing position.
fn feature_order(a: &PtFeature, b: &PtFeature) -> Ordering {
    b.persistence()
        .partial_cmp(&a.persistence())
        .unwrap_or(Ordering::Equal)
        .then_with(|| b.birth.partial_cmp(&a.birth).unwrap_or(Ordering::Equal))
        .then_with(|| a.x.partial_cmp(&b.x).unwrap_or(Ordering::Equal))
}

/// Builds the transformation from an already computed pairing.
pub fn persistence_transformation_from(set: &MorseSet, pairing: &Pairing) -> PtSet {
    let mut features: Vec<PtFeature> = pairing
        .entries()
        .iter()
        .map(|e| PtFeature { x: e.max.x, birth: e.max.y, death: e.death.value() })
        .collect();
    features.sort_by(feature_order);
    let diagonal = set
        .minima()
        .iter()
        .map(|m| PtFeature { x: m.x, birth: m.y, death: m.y })
        .collect();
    PtSet { features, diagonal }
}

/// Maps every maximum `(x, y)` dying at `d` to `(x, y, d)` and every minimum
/// `(x, y)` to `(x, y, y)`.
pub fn persistence_transformation(set: &MorseSet) -> Result<PtSet> {
    let pairing = pair(set)?;
    Ok(persistence_transformation_from(set, &pairing))
}

/// Maps every maximum `(x, y)` dying at `d` to `(x, y - d)`.
///
/// With `clip_essential` the essential feature gets `y - min(f)` instead of
/// `+inf`, where `min(f)` is the lowest minimum of the set.
pub fn reduced_persistence_transformation(set: &MorseSet, clip_essential: bool) -> Result<RptSet> {
    let pairing = pair(set)?;
    let floor = set.global_min_value();
    let mut features: Vec<PtFeature> = pairing
        .entries()
        .iter()
        .map(|e| {
            let death = match (e.death, floor) {
                (Death::Essential, Some(lowest)) if clip_essential => lowest,
                (d, _) => d.value(),
            };
            PtFeature { x: e.max.x, birth: e.max.y, death }
        })
        .collect();
    features.sort_by(feature_order);
    Ok(RptSet {
        features: features
            .into_iter()
            .map(|f| RptFeature { x: f.x, persistence: f.persistence() })
            .collect(),
    })
}

/// Forgets positions; diagonal-plane points are dropped.
pub fn to_persistence_diagram(pt: &PtSet) -> PdSet {
    PdSet {
        points: pt.features.iter().map(|f| PdPoint { birth: f.birth, death: f.death }).collect(),
    }
}

/// Keeps the features whose persistence is at least `tau`.
///
/// Diagonal points have zero persistence and are dropped for any `tau > 0`.
/// Order is preserved. A negative or NaN `tau` is treated as zero.
pub fn denoise(pt: &PtSet, tau: f64) -> PtSet {
    let tau = if tau > 0.0 { tau } else { 0.0 };
    PtSet {
        features: pt.features.iter().filter(|f| f.persistence() >= tau).copied().collect(),
        diagonal: if tau > 0.0 { Vec::new() } else { pt.diagonal.clone() },
    }
}

impl PtSet {
    /// Union of several sets, e.g. one per segment.
    pub fn union(parts: impl IntoIterator<Item = PtSet>) -> PtSet {
        let mut out = PtSet::default();
        for p in parts {
            out.features.extend(p.features);
            out.diagonal.extend(p.diagonal);
        }
        out.features.sort_by(feature_order);
        out.diagonal.sort_by(|a, b| crate::morse::colex(a.x, a.birth, b.x, b.birth));
        out
    }
}

impl RptSet {
    pub fn union(parts: impl IntoIterator<Item = RptSet>) -> RptSet {
        let mut features: Vec<RptFeature> = parts.into_iter().flat_map(|p| p.features).collect();
        features.sort_by(|a, b| {
            b.persistence
                .partial_cmp(&a.persistence)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.x.partial_cmp(&b.x).unwrap_or(Ordering::Equal))
        });
        RptSet { features }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e1, lone_peak, mirrored_f, mirrored_g};
    const NEG: f64 = f64::NEG_INFINITY;

    fn triples(v: &[PtFeature]) -> Vec<(f64, f64, f64)> {
        v.iter().map(|f| (f.x, f.birth, f.death)).collect()
    }

    #[test]
    fn pt_of_e1() {
        let pt = persistence_transformation(&e1()).unwrap();
        assert_eq!(triples(&pt.features), vec![(3.0, 5.0, NEG), (1.0, 3.0, 1.0), (5.0, 2.0, 0.5)]);
        assert_eq!(
            triples(&pt.diagonal),
            vec![(0.0, 0.0, 0.0), (6.0, 0.0, 0.0), (4.0, 0.5, 0.5), (2.0, 1.0, 1.0)]
        );
    }

    #[test]
    fn pt_of_lone_peak() {
        let pt = persistence_transformation(&lone_peak()).unwrap();
        assert_eq!(triples(&pt.features), vec![(1.0, 4.0, NEG)]);
        assert_eq!(triples(&pt.diagonal), vec![(0.0, 0.0, 0.0), (2.0, 0.0, 0.0)]);
    }

    #[test]
    fn mirrored_pair_differs_in_pt_but_not_in_pd() {
        let f = persistence_transformation(&mirrored_f()).unwrap();
        let g = persistence_transformation(&mirrored_g()).unwrap();
        assert_ne!(f, g);
        let (pf, pg) = (to_persistence_diagram(&f), to_persistence_diagram(&g));
        assert_eq!(pf, pg);
        let pts: Vec<_> = pf.points.iter().map(|p| (p.birth, p.death)).collect();
        assert_eq!(pts, vec![(5.0, NEG), (3.0, 1.0)]);
    }

    #[test]
    fn rpt_of_e1() {
        let r = reduced_persistence_transformation(&e1(), false).unwrap();
        let v: Vec<_> = r.features.iter().map(|f| (f.x, f.persistence)).collect();
        assert_eq!(v, vec![(3.0, f64::INFINITY), (1.0, 2.0), (5.0, 1.5)]);
        let c = reduced_persistence_transformation(&e1(), true).unwrap();
        let v: Vec<_> = c.features.iter().map(|f| (f.x, f.persistence)).collect();
        assert_eq!(v, vec![(3.0, 5.0), (1.0, 2.0), (5.0, 1.5)]);
        let l = reduced_persistence_transformation(&lone_peak(), false).unwrap();
        assert_eq!(l.features, vec![RptFeature { x: 1.0, persistence: f64::INFINITY }]);
    }

    #[test]
    fn pd_of_e1() {
        let pd = to_persistence_diagram(&persistence_transformation(&e1()).unwrap());
        let pts: Vec<_> = pd.points.iter().map(|p| (p.birth, p.death)).collect();
        assert_eq!(pts, vec![(5.0, NEG), (3.0, 1.0), (2.0, 0.5)]);
        assert!(to_persistence_diagram(&PtSet::default()).points.is_empty());
    }

    #[test]
    fn denoise_thresholds() {
        let pt = persistence_transformation(&e1()).unwrap();
        assert_eq!(denoise(&pt, 1.2).features, pt.features);
        assert!(denoise(&pt, 1.2).diagonal.is_empty());
        assert_eq!(triples(&denoise(&pt, 1.8).features), vec![(3.0, 5.0, NEG), (1.0, 3.0, 1.0)]);
        assert_eq!(denoise(&pt, 0.0), pt);
        // Boundary: persistence exactly equal to tau survives.
        assert_eq!(denoise(&pt, 1.5).features.len(), 3);
    }

    #[test]
    fn union_resorts() {
        let a = persistence_transformation(&e1()).unwrap();
        let b = persistence_transformation(&lone_peak().translate(10.0, 0.0)).unwrap();
        let u = PtSet::union([a, b]);
        assert_eq!(u.features.len(), 4);
        assert_eq!(u.diagonal.len(), 6);
        assert!(u.features[0].is_essential() && u.features[1].is_essential());
    }
}
