//! Randomised checks of the stability bounds
//! `d_Wp(T(K), T(L)) <= d_p(K, L)` for the persistence transformation and its
//! reduced form.
//!
//! The harness draws Morse sets, perturbs them, evaluates both sides and
//! records a [`StabilityReport`] per `(trial, p, transform, slack)`. Trials are
//! keyed by seed, so any report can be recomputed in isolation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::{ext_to_json, morse_set_to_json};
use crate::metrics::{morse_distance, wasserstein, PNorm, Slack};
use crate::morse::{CriticalPoint, Domain, Kind, MorseSet};
use crate::transform::{persistence_transformation, reduced_persistence_transformation};

/// Absolute slack allowed on the right-hand side.
pub const ABS_TOLERANCE: f64 = 1e-9;
/// Relative slack allowed on the right-hand side for large magnitudes.
pub const REL_TOLERANCE: f64 = 1e-7;

pub fn tolerance(rhs: f64) -> f64 {
    ABS_TOLERANCE.max(REL_TOLERANCE * rhs.abs())
}

/// Parameters for [`random_morse_set`].
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    /// Inclusive range for the number of maxima.
    pub peak_count: (usize, usize),
    pub domain: Domain,
    /// Values are drawn from this closed interval.
    pub heights: (f64, f64),
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self { peak_count: (1, 20), domain: Domain::new(0.0, 100.0), heights: (0.0, 10.0), seed: 0 }
    }
}

impl GenParams {
    pub fn check(&self) -> Result<()> {
        let (lo, hi) = self.peak_count;
        if lo == 0 || lo > hi {
            return Err(Error::InvalidParameter(format!("peak count range [{lo}, {hi}] must be non-empty and start at 1 or more")));
        }
        let d = self.domain;
        if !(d.start.is_finite() && d.end.is_finite() && d.start < d.end) {
            return Err(Error::InvalidParameter(format!("domain [{}, {}] must be a finite interval", d.start, d.end)));
        }
        let (a, b) = self.heights;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter(format!("height range [{a}, {b}] must be a finite interval")));
        }
        Ok(())
    }
}

/// Draws a valid Morse set; deterministic in `params.seed`.
///
/// A single maximum always comes with two boundary minima.
pub fn random_morse_set(params: &GenParams) -> Result<MorseSet> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let kappa_plus = rng.gen_range(params.peak_count.0..=params.peak_count.1);
    let kappa_minus = if kappa_plus == 1 {
        2
    } else {
        kappa_plus + 1 - rng.gen_range(0..3)
    };
    random_morse_set_shaped(&mut rng, kappa_plus, kappa_minus, params.domain, params.heights)
}

/// Draws a Morse set with exactly `kappa_plus` maxima and `kappa_minus` minima.
///
/// Positions are spread over `domain` with gaps between a quarter of and one
/// average spacing; every maximum is drawn in the upper nine tenths of
/// `heights`, every minimum below both of its neighbouring maxima.
pub fn random_morse_set_shaped<R: Rng + ?Sized>(
    rng: &mut R,
    kappa_plus: usize,
    kappa_minus: usize,
    domain: Domain,
    heights: (f64, f64),
) -> Result<MorseSet> {
    if kappa_plus.abs_diff(kappa_minus) > 1 || kappa_plus + kappa_minus < 2 || kappa_plus == 0 {
        return Err(Error::InvalidParameter(format!(
            "cannot lay out {kappa_plus} maxima and {kappa_minus} minima"
        )));
    }
    let n = kappa_plus + kappa_minus;
    let first = match kappa_plus.cmp(&kappa_minus) {
        std::cmp::Ordering::Greater => Kind::Max,
        std::cmp::Ordering::Less => Kind::Min,
        std::cmp::Ordering::Equal => {
            if rng.gen_bool(0.5) {
                Kind::Max
            } else {
                Kind::Min
            }
        }
    };
    let kind_at = |i: usize| if (i % 2 == 0) == (first == Kind::Max) { Kind::Max } else { Kind::Min };

    let gaps: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.25..=1.0)).collect();
    let total: f64 = gaps.iter().sum();
    let span = domain.end - domain.start;
    let mut xs = Vec::with_capacity(n);
    let mut acc = 0.0;
    xs.push(domain.start);
    for g in &gaps[..n.saturating_sub(2)] {
        acc += g;
        xs.push(domain.start + span * acc / total);
    }
    xs.push(domain.end);

    let (lo, hi) = heights;
    let max_floor = lo + 0.1 * (hi - lo);
    let mut ys = vec![f64::NAN; n];
    for i in (0..n).filter(|&i| kind_at(i) == Kind::Max) {
        ys[i] = rng.gen_range(max_floor..=hi);
    }
    for i in (0..n).filter(|&i| kind_at(i) == Kind::Min) {
        let ceiling = [i.checked_sub(1), Some(i + 1)]
            .into_iter()
            .flatten()
            .filter(|&j| j < n)
            .map(|j| ys[j])
            .fold(f64::INFINITY, f64::min);
        ys[i] = rng.gen_range(lo..ceiling);
    }

    let points: Vec<CriticalPoint> = (0..n).map(|i| CriticalPoint::new(xs[i], ys[i], kind_at(i))).collect();
    MorseSet::from_points(domain, points)
}

/// Result of [`perturb`].
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    pub set: MorseSet,
    /// Halving rounds applied to displacements that broke the set's structure.
    pub shrink_rounds: u32,
    /// Number of points whose displacement was reduced at least once.
    pub shrunk_points: usize,
}

/// Moves every point by at most `epsilon` in each coordinate.
///
/// Displacements that would reorder positions, reorder maxima or minima among
/// themselves, or lift a minimum above a neighbouring maximum are halved until
/// they no longer do. The domain follows the boundary points. Cardinalities
/// and the pairing structure are preserved.
pub fn perturb(set: &MorseSet, epsilon: f64, seed: u64) -> Result<Perturbation> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be finite and >= 0, got {epsilon}")));
    }
    set.ensure_valid()?;
    let base = set.by_position();
    let n = base.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disp: Vec<(f64, f64)> = if epsilon == 0.0 {
        vec![(0.0, 0.0); n]
    } else {
        (0..n).map(|_| (rng.gen_range(-epsilon..=epsilon), rng.gen_range(-epsilon..=epsilon))).collect()
    };

    let max_rank = ranks(set.maxima(), &base);
    let min_rank = ranks(set.minima(), &base);

    let mut touched = vec![false; n];
    let mut rounds = 0;
    loop {
        let moved: Vec<CriticalPoint> =
            base.iter().zip(&disp).map(|(p, d)| CriticalPoint::new(p.x + d.0, p.y + d.1, p.kind)).collect();
        let bad = offenders(&moved, &max_rank, &min_rank);
        if bad.is_empty() {
            let domain = Domain::new(moved[0].x, moved[n - 1].x);
            let set = MorseSet::from_points(domain, moved)?;
            return Ok(Perturbation { set, shrink_rounds: rounds, shrunk_points: touched.iter().filter(|t| **t).count() });
        }
        rounds += 1;
        for i in bad {
            touched[i] = true;
            if rounds > 64 {
                disp[i] = (0.0, 0.0);
            } else {
                disp[i] = (disp[i].0 * 0.5, disp[i].1 * 0.5);
            }
        }
        if rounds > 64 + n as u32 {
            disp.iter_mut().for_each(|d| *d = (0.0, 0.0));
        }
    }
}

/// Position-order indices of `subset`, in the subset's own order.
fn ranks(subset: &[CriticalPoint], by_position: &[CriticalPoint]) -> Vec<usize> {
    subset
        .iter()
        .map(|p| by_position.iter().position(|q| q.x == p.x).expect("point of the set"))
        .collect()
}

fn offenders(moved: &[CriticalPoint], max_rank: &[usize], min_rank: &[usize]) -> Vec<usize> {
    let mut bad = Vec::new();
    for i in 0..moved.len().saturating_sub(1) {
        let (a, b) = (&moved[i], &moved[i + 1]);
        let alternation_ok = match (a.kind, b.kind) {
            (Kind::Max, Kind::Min) => b.colex_lt(a),
            _ => a.colex_lt(b),
        };
        if b.x <= a.x || !alternation_ok {
            bad.extend([i, i + 1]);
        }
    }
    for w in max_rank.windows(2) {
        if !moved[w[0]].colex_gt(&moved[w[1]]) {
            bad.extend([w[0], w[1]]);
        }
    }
    for w in min_rank.windows(2) {
        if !moved[w[0]].colex_lt(&moved[w[1]]) {
            bad.extend([w[0], w[1]]);
        }
    }
    bad.sort_unstable();
    bad.dedup();
    bad
}

/// Which transformation a check applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Pt,
    Rpt,
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transform::Pt => "pt",
            Transform::Rpt => "rpt",
        })
    }
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pt" => Ok(Transform::Pt),
            "rpt" => Ok(Transform::Rpt),
            _ => Err(Error::Parse(format!("unknown transform {s:?}"))),
        }
    }
}

/// Both sides of one stability inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Wasserstein distance between the transformations.
    pub lhs: f64,
    /// Morse-set distance between the inputs.
    pub rhs: f64,
    /// `lhs / rhs`; `0` when both vanish, `inf` when only `rhs` does.
    pub ratio: f64,
    /// `lhs <= rhs + tolerance(rhs)`.
    pub holds: bool,
    pub p: PNorm,
    pub slack: Slack,
    pub transform: Transform,
    pub seed: u64,
    /// Whether the trial counts towards the pass/fail verdict.
    pub gated: bool,
    pub cardinalities: [(usize, usize); 2],
}

impl StabilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "transform": self.transform.to_string(),
            "p": self.p.to_string(),
            "slack": self.slack.to_string(),
            "lhs": ext_to_json(self.lhs),
            "rhs": ext_to_json(self.rhs),
            "ratio": ext_to_json(self.ratio),
            "holds": self.holds,
            "gated": self.gated,
            "kappa": [[self.cardinalities[0].0, self.cardinalities[0].1], [self.cardinalities[1].0, self.cardinalities[1].1]],
        })
    }
}

/// Left-hand side only.
pub fn transform_distance(k: &MorseSet, l: &MorseSet, p: PNorm, transform: Transform, slack: Slack) -> Result<f64> {
    match transform {
        Transform::Pt => wasserstein(&persistence_transformation(k)?, &persistence_transformation(l)?, p, slack),
        Transform::Rpt => wasserstein(
            &reduced_persistence_transformation(k, false)?,
            &reduced_persistence_transformation(l, false)?,
            p,
            slack,
        ),
    }
}

/// Evaluates both sides of the bound for one pair of sets.
pub fn check_stability(
    k: &MorseSet,
    l: &MorseSet,
    p: PNorm,
    transform: Transform,
    slack: Slack,
) -> Result<StabilityReport> {
    let rhs = morse_distance(k, l, p)?;
    let lhs = transform_distance(k, l, p, transform, slack)?;
    let ratio = if rhs > 0.0 {
        lhs / rhs
    } else if lhs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(StabilityReport {
        lhs,
        rhs,
        ratio,
        holds: lhs <= rhs + tolerance(rhs),
        p,
        slack,
        transform,
        seed: 0,
        gated: true,
        cardinalities: [(k.kappa_plus(), k.kappa_minus()), (l.kappa_plus(), l.kappa_minus())],
    })
}

/// Configuration of a batch of trials.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub gen: GenParams,
    pub trials: usize,
    /// Perturbation size.
    pub epsilon: f64,
    pub norms: Vec<PNorm>,
    pub transforms: Vec<Transform>,
    pub slacks: Vec<Slack>,
    /// Additionally run one ungated trial per seed whose second set has a
    /// peak fewer than the first.
    pub unequal: bool,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            gen: GenParams::default(),
            trials: 100,
            epsilon: 0.05,
            norms: vec![PNorm::Finite(1.0), PNorm::Finite(2.0), PNorm::Infinity],
            transforms: vec![Transform::Pt],
            slacks: vec![Slack::PadOrigin],
            unequal: false,
        }
    }
}

/// Seed of trial `index` under a base seed.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    // splitmix64
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The pair of sets used by a trial.
pub fn trial_sets(config: &TrialConfig, seed: u64, unequal: bool) -> Result<(MorseSet, MorseSet)> {
    let k = random_morse_set(&GenParams { seed, ..config.gen.clone() })?;
    let base = if unequal { drop_peak(&k, seed).unwrap_or_else(|| k.clone()) } else { k.clone() };
    let l = perturb(&base, config.epsilon, seed ^ 0x5EED)?.set;
    Ok((k, l))
}

/// Removes one interior maximum together with an adjacent minimum, if that
/// leaves a valid set.
fn drop_peak(set: &MorseSet, seed: u64) -> Option<MorseSet> {
    let pts = set.by_position();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = pts.len();
    if n < 4 {
        return None;
    }
    let start = rng.gen_range(0..n);
    (0..n).map(|k| (start + k) % n).find_map(|i| remove_pair(&pts, i))
}

fn remove_pair(pts: &[CriticalPoint], i: usize) -> Option<MorseSet> {
    if pts[i].kind != Kind::Max || i == 0 || i + 1 >= pts.len() - 1 {
        return None;
    }
    let rest: Vec<CriticalPoint> =
        pts.iter().enumerate().filter(|&(j, _)| j != i && j != i + 1).map(|(_, p)| *p).collect();
    MorseSet::from_sequence(&rest).ok()
}

/// Runs every trial of `config` in parallel; output order is deterministic.
pub fn run_trials(config: &TrialConfig, base_seed: u64) -> Result<Vec<StabilityReport>> {
    let jobs: Vec<(u64, bool)> = (0..config.trials as u64)
        .flat_map(|i| {
            let s = trial_seed(base_seed, i);
            let mut v = vec![(s, false)];
            if config.unequal {
                v.push((s, true));
            }
            v
        })
        .collect();
    let per_job: Vec<Result<Vec<StabilityReport>>> = jobs
        .par_iter()
        .map(|&(seed, unequal)| {
            let (k, l) = trial_sets(config, seed, unequal)?;
            let gated = k.kappa_plus() == l.kappa_plus() && k.kappa_minus() == l.kappa_minus();
            let mut out = Vec::new();
            for &p in &config.norms {
                for &t in &config.transforms {
                    for &s in &config.slacks {
                        let mut r = check_stability(&k, &l, p, t, s)?;
                        r.seed = seed;
                        r.gated = gated;
                        out.push(r);
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_job {
        out.extend(r?);
    }
    Ok(out)
}

fn violates(k: &MorseSet, l: &MorseSet, p: PNorm, t: Transform, s: Slack) -> bool {
    check_stability(k, l, p, t, s).map(|r| !r.holds).unwrap_or(false)
}

/// Moves every point of `l` a fraction `t` of the way from `k` (same layout).
fn blend(k: &MorseSet, l: &MorseSet, t: f64) -> Option<MorseSet> {
    let (a, b) = (k.by_position(), l.by_position());
    if a.len() != b.len() {
        return None;
    }
    let pts: Vec<CriticalPoint> = a
        .iter()
        .zip(&b)
        .map(|(p, q)| CriticalPoint::new(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y), q.kind))
        .collect();
    MorseSet::from_sequence(&pts).ok()
}

/// Shrinks a violating pair by removing peaks from both sets and pulling
/// `l` towards `k`, as long as the violation persists.
pub fn shrink_counterexample(
    k: &MorseSet,
    l: &MorseSet,
    p: PNorm,
    transform: Transform,
    slack: Slack,
) -> (MorseSet, MorseSet) {
    let (mut k, mut l) = (k.clone(), l.clone());
    if !violates(&k, &l, p, transform, slack) {
        return (k, l);
    }
    loop {
        let mut improved = false;
        let (pk, pl) = (k.by_position(), l.by_position());
        if pk.len() == pl.len() {
            for i in 0..pk.len() {
                if let (Some(k2), Some(l2)) = (remove_pair(&pk, i), remove_pair(&pl, i)) {
                    if violates(&k2, &l2, p, transform, slack) {
                        (k, l) = (k2, l2);
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            for t in [0.5, 0.75, 0.9] {
                if let Some(l2) = blend(&k, &l, t) {
                    if l2 != l && violates(&k, &l2, p, transform, slack) {
                        l = l2;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            return (k, l);
        }
    }
}

/// Writes a counterexample as a JSON fixture and returns its path.
pub fn persist_fixture(dir: &Path, report: &StabilityReport, k: &MorseSet, l: &MorseSet) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let name = format!("{}-p{}-{}-{:016x}.json", report.transform, report.p, report.slack, report.seed);
    let path = dir.join(name);
    let doc = json!({ "report": report.to_json(), "k": morse_set_to_json(k), "l": morse_set_to_json(l) });
    std::fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::e1;
    use crate::morse::validate;

    #[test]
    fn single_peak_has_boundary_minima() {
        let k = random_morse_set(&GenParams { peak_count: (1, 1), ..GenParams::default() }).unwrap();
        assert_eq!(k.kappa_plus(), 1);
        assert_eq!(k.kappa_minus(), 2);
    }

    #[test]
    fn generation_is_deterministic() {
        let p = GenParams { seed: 42, ..GenParams::default() };
        assert_eq!(random_morse_set(&p).unwrap(), random_morse_set(&p).unwrap());
        let q = GenParams { seed: 43, ..GenParams::default() };
        assert_ne!(random_morse_set(&p).unwrap(), random_morse_set(&q).unwrap());
    }

    #[test]
    fn generated_sets_are_valid() {
        for seed in 0..10_000 {
            let k = random_morse_set(&GenParams { peak_count: (1, 50), seed, ..GenParams::default() }).unwrap();
            assert!(validate(&k).is_valid(), "seed {seed}");
            assert!((1..=50).contains(&k.kappa_plus()));
        }
    }

    #[test]
    fn bad_params_are_rejected() {
        assert!(random_morse_set(&GenParams { peak_count: (3, 2), ..GenParams::default() }).is_err());
        assert!(random_morse_set(&GenParams { heights: (1.0, 1.0), ..GenParams::default() }).is_err());
        assert!(random_morse_set(&GenParams { domain: Domain::new(1.0, 0.0), ..GenParams::default() }).is_err());
    }

    #[test]
    fn zero_epsilon_is_identity() {
        let p = perturb(&e1(), 0.0, 1).unwrap();
        assert_eq!(p.set, e1());
        assert_eq!(p.shrink_rounds, 0);
        let tiny = perturb(&e1(), 1e-12, 1).unwrap();
        assert!(morse_distance(&e1(), &tiny.set, PNorm::Infinity).unwrap() <= 1e-12);
    }

    #[test]
    fn jitter_is_bounded_by_epsilon() {
        for seed in 0..200 {
            let k = random_morse_set(&GenParams { seed, ..GenParams::default() }).unwrap();
            let eps = 0.5;
            let l = perturb(&k, eps, seed).unwrap().set;
            assert!(validate(&l).is_valid());
            assert_eq!((l.kappa_plus(), l.kappa_minus()), (k.kappa_plus(), k.kappa_minus()));
            assert!(morse_distance(&k, &l, PNorm::Infinity).unwrap() <= eps, "seed {seed}");
        }
    }

    #[test]
    fn large_epsilon_is_shrunk() {
        let p = perturb(&e1(), 3.0, 9).unwrap();
        assert!(validate(&p.set).is_valid());
        assert!(p.shrink_rounds > 0);
    }

    #[test]
    fn uniform_shift_distance() {
        let l = e1().translate(0.0, 0.25);
        assert_eq!(morse_distance(&e1(), &l, PNorm::Infinity).unwrap(), 0.25);
        let r = check_stability(&e1(), &l, PNorm::Infinity, Transform::Pt, Slack::PadOrigin).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, 0.25);
        assert!(r.lhs <= 0.25);
    }

    #[test]
    fn identical_sets() {
        let r = check_stability(&e1(), &e1(), PNorm::Finite(2.0), Transform::Rpt, Slack::Diagonal).unwrap();
        assert_eq!((r.lhs, r.rhs, r.ratio, r.holds), (0.0, 0.0, 0.0, true));
    }

    #[test]
    fn rpt_bound_fails_when_peak_and_saddle_move_apart() {
        // Raising a peak by d and lowering its death minimum by d changes its
        // persistence by 2d while no point moves more than d.
        let k = crate::fixtures::mirrored_f();
        let d = 0.1;
        let l = MorseSet::from_sequence(&[
            CriticalPoint::min(0.0, 0.0),
            CriticalPoint::max(1.0, 5.0),
            CriticalPoint::min(2.0, 1.0 - d),
            CriticalPoint::max(3.0, 3.0 + d),
            CriticalPoint::min(4.0, 0.0),
        ])
        .unwrap();
        let inf = check_stability(&k, &l, PNorm::Infinity, Transform::Rpt, Slack::PadOrigin).unwrap();
        assert!((inf.lhs - 2.0 * d).abs() < 1e-12 && (inf.rhs - d).abs() < 1e-12);
        assert!(!inf.holds);
        let two = check_stability(&k, &l, PNorm::Finite(2.0), Transform::Rpt, Slack::PadOrigin).unwrap();
        assert!(!two.holds);
        let one = check_stability(&k, &l, PNorm::Finite(1.0), Transform::Rpt, Slack::PadOrigin).unwrap();
        assert!(one.holds);
        for p in [PNorm::Finite(1.0), PNorm::Finite(2.0), PNorm::Infinity] {
            assert!(check_stability(&k, &l, p, Transform::Pt, Slack::PadOrigin).unwrap().holds);
        }
    }

    #[test]
    fn shrinking_keeps_the_violation() {
        let config = TrialConfig { transforms: vec![Transform::Rpt], norms: vec![PNorm::Infinity], ..Default::default() };
        let reports = run_trials(&config, 3).unwrap();
        let bad = reports.iter().find(|r| !r.holds).expect("some RPT violation at p = inf");
        let (k, l) = trial_sets(&config, bad.seed, false).unwrap();
        let (k2, l2) = shrink_counterexample(&k, &l, PNorm::Infinity, Transform::Rpt, Slack::PadOrigin);
        assert!(k2.len() <= k.len());
        assert!(!check_stability(&k2, &l2, PNorm::Infinity, Transform::Rpt, Slack::PadOrigin).unwrap().holds);
    }

    #[test]
    fn trials_are_seed_keyed() {
        let config = TrialConfig { trials: 20, unequal: true, ..Default::default() };
        let a = run_trials(&config, 11).unwrap();
        let b = run_trials(&config, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20 * 2 * 3);
        assert!(a.iter().filter(|r| r.gated).all(|r| r.holds));
    }
}
