//! Persistence of peaks in one-dimensional signals, with positions kept.
//!
//! A signal is reduced to its critical points (a [`MorseSet`]), maxima are
//! paired with minima by the elder rule ([`pair`]) and each maximum becomes a
//! point `(x, birth, death)` of the persistence transformation
//! ([`persistence_transformation`]). Wasserstein distances between such
//! transformations are bounded by a matching distance between the inputs,
//! which [`stability`] checks on random data.
//!
//! ```
//! use morsepeak::{persistence_transformation, CriticalPoint, MorseSet};
//!
//! let set = MorseSet::from_sequence(&[
//!     CriticalPoint::min(0.0, 0.0),
//!     CriticalPoint::max(1.0, 3.0),
//!     CriticalPoint::min(2.0, 1.0),
//!     CriticalPoint::max(3.0, 5.0),
//!     CriticalPoint::min(4.0, 0.0),
//! ])?;
//! let pt = persistence_transformation(&set)?;
//! assert_eq!((pt.features[1].x, pt.features[1].birth, pt.features[1].death), (1.0, 3.0, 1.0));
//! # Ok::<(), morsepeak::Error>(())
//! ```

pub mod assignment;
mod error;
pub mod extract;
pub mod io;
pub mod metrics;
pub mod morse;
pub mod pairing;
pub mod stability;
pub mod transform;

pub use assignment::{solve_assignment, MatchResult, Objective, Slot};
pub use error::{DiagramKind, Error, Result};
pub use extract::{extract_critical_points, SampledSeries, Segment};
pub use metrics::{morse_distance, wasserstein, wasserstein_any, wasserstein_matching, AnyDiagram, PNorm, Slack};
pub use morse::{validate, Condition, CriticalPoint, Domain, Kind, MorseSet, ValidationReport, Violation};
pub use pairing::{pair, pair_recursive, Death, PairEntry, Pairing};
pub use transform::{
    denoise, persistence_transformation, reduced_persistence_transformation, to_persistence_diagram, PdPoint,
    PdSet, PtFeature, PtSet, RptFeature, RptSet,
};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/morse-sets.md")]
    mod morse_sets {}
    #[doc = include_str!("../../../book/src/pairing.md")]
    mod pairing {}
    #[doc = include_str!("../../../book/src/transformations.md")]
    mod transformations {}
    #[doc = include_str!("../../../book/src/distances.md")]
    mod distances {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
