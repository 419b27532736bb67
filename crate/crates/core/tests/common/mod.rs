//! Independent reference implementations used to check the library.
//!
//! None of these call into the code they check beyond constructing inputs.
#![allow(dead_code)]

use std::cmp::Ordering;

use morsepeak::stability::{random_morse_set, GenParams};
use morsepeak::{CriticalPoint, Domain, MorseSet, Pairing};

/// `(max_x, max_y) -> Some((min_x, min_y))`, or `None` for the essential peak.
pub type PairingTable = Vec<((f64, f64), Option<(f64, f64)>)>;

fn total(a: &(f64, f64), b: &(f64, f64)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1))
}

fn colex(a: (f64, f64), b: (f64, f64)) -> Ordering {
    a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0))
}

pub fn table(pairing: &Pairing) -> PairingTable {
    let mut t: PairingTable = pairing
        .entries()
        .iter()
        .map(|e| {
            let death = match e.death {
                morsepeak::Death::Essential => None,
                morsepeak::Death::At(m) => Some((m.x, m.y)),
            };
            ((e.max.x, e.max.y), death)
        })
        .collect();
    t.sort_by(|a, b| total(&a.0, &b.0));
    t
}

struct UnionFind {
    parent: Vec<usize>,
    /// Index of the co-lex highest vertex of each root's component.
    elder: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), elder: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = i;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }
}

/// Births and deaths of the upper-levelset filtration of the piecewise-linear
/// graph through `vertices` (sorted by x), by a union-find sweep from the top.
///
/// Returns `(birth vertex, death vertex)` index pairs; the surviving component
/// has `None` as its death.
pub fn upper_levelset_sweep(vertices: &[(f64, f64)]) -> Vec<(usize, Option<usize>)> {
    let n = vertices.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| colex(vertices[j], vertices[i]));
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut uf = UnionFind::new(n);
    let mut alive = vec![false; n];
    let mut out = Vec::new();
    for &v in &order {
        alive[v] = true;
        let roots: Vec<usize> = [v.checked_sub(1), Some(v + 1)]
            .into_iter()
            .flatten()
            .filter(|&u| u < n && alive[u])
            .map(|u| uf.find(u))
            .collect();
        match roots.as_slice() {
            [] => {}
            [r] => {
                uf.parent[v] = *r;
            }
            [r1, r2] => {
                let (old, young) = if rank[uf.elder[*r1]] < rank[uf.elder[*r2]] { (*r1, *r2) } else { (*r2, *r1) };
                out.push((uf.elder[young], Some(v)));
                uf.parent[young] = old;
                uf.parent[v] = old;
            }
            _ => unreachable!(),
        }
    }
    if n > 0 {
        let root = uf.find(0);
        out.push((uf.elder[root], None));
    }
    out
}

/// Elder-rule pairing of a Morse set by the sweep over its critical points.
pub fn union_find_pairing(set: &MorseSet) -> PairingTable {
    let pts = set.by_position();
    let verts: Vec<(f64, f64)> = pts.iter().map(|p| (p.x, p.y)).collect();
    let mut t: PairingTable = upper_levelset_sweep(&verts)
        .into_iter()
        .map(|(b, d)| (verts[b], d.map(|d| verts[d])))
        .collect();
    t.sort_by(|a, b| total(&a.0, &b.0));
    t
}

/// `(birth, death)` multiset, sorted, of the sweep over dense samples.
pub fn diagram_from_samples(samples: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut d: Vec<(f64, f64)> = upper_levelset_sweep(samples)
        .into_iter()
        .map(|(b, d)| (samples[b].1, d.map_or(f64::NEG_INFINITY, |d| samples[d].1)))
        .collect();
    d.sort_by(total);
    d
}

/// Alternation in its quantified form: between any two maxima with no other
/// maximum in between there is exactly one minimum, below both; and the same
/// with the roles of maxima and minima exchanged.
pub fn alternation_quantified(set: &MorseSet) -> bool {
    fn check(outer: &[CriticalPoint], inner: &[CriticalPoint], below: bool) -> bool {
        outer.iter().all(|a| {
            outer.iter().all(|b| {
                if a.x >= b.x {
                    return true;
                }
                if outer.iter().any(|c| c.x > a.x && c.x < b.x) {
                    return true;
                }
                let between = inner
                    .iter()
                    .filter(|m| m.x >= a.x && m.x <= b.x)
                    .filter(|m| {
                        let (mc, ac, bc) = ((m.x, m.y), (a.x, a.y), (b.x, b.y));
                        if below {
                            colex(mc, ac).is_lt() && colex(mc, bc).is_lt()
                        } else {
                            colex(mc, ac).is_gt() && colex(mc, bc).is_gt()
                        }
                    })
                    .count();
                between == 1
            })
        })
    }
    check(set.maxima(), set.minima(), true) && check(set.minima(), set.maxima(), false)
}

fn sup_gap(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

/// Rank matching distance by direct summation: maxima sorted from the
/// highest, minima from the lowest, extra points matched to the origin.
pub fn morse_distance_direct(k: &MorseSet, l: &MorseSet, p: f64) -> f64 {
    let mut gaps = Vec::new();
    for (desc, ka, la) in [(true, k.maxima(), l.maxima()), (false, k.minima(), l.minima())] {
        let sorted = |s: &[CriticalPoint]| {
            let mut v: Vec<(f64, f64)> = s.iter().map(|p| (p.x, p.y)).collect();
            v.sort_by(|a, b| if desc { colex(*b, *a) } else { colex(*a, *b) });
            v
        };
        let (a, b) = (sorted(ka), sorted(la));
        for i in 0..a.len().max(b.len()) {
            let pa = a.get(i).copied().unwrap_or((0.0, 0.0));
            let pb = b.get(i).copied().unwrap_or((0.0, 0.0));
            gaps.push(sup_gap(pa, pb));
        }
    }
    if p.is_infinite() {
        gaps.into_iter().fold(0.0, f64::max)
    } else {
        gaps.into_iter().map(|g| g.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Exhaustive minimum over all permutations: `(sum cost, bottleneck cost)`.
pub fn brute_force_assignment(cost: &[Vec<f64>]) -> (f64, f64) {
    let mut best_sum = f64::INFINITY;
    let mut best_max = f64::INFINITY;
    for perm in permutations(cost.len()) {
        let vals = perm.iter().enumerate().map(|(i, &j)| cost[i][j]);
        best_sum = best_sum.min(vals.clone().sum());
        best_max = best_max.min(vals.fold(0.0, f64::max));
    }
    (best_sum, best_max)
}

/// Extended-real coordinate difference: equal values (infinite or not) are
/// at distance 0, anything involving a single infinity is infinitely far.
pub fn ext_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else if a.is_infinite() || b.is_infinite() {
        f64::INFINITY
    } else {
        (a - b).abs()
    }
}

/// Bottleneck distance between two point sets with diagonal slack, by trying
/// every partial matching. `diag` gives a point's cost to the diagonal.
pub fn brute_force_bottleneck(a: &[Vec<f64>], b: &[Vec<f64>], diag: fn(&[f64]) -> f64) -> f64 {
    fn go(i: usize, a: &[Vec<f64>], b: &[Vec<f64>], used: &mut Vec<bool>, diag: fn(&[f64]) -> f64, acc: f64) -> f64 {
        if i == a.len() {
            let rest = b.iter().zip(used.iter()).filter(|(_, u)| !**u).map(|(q, _)| diag(q)).fold(acc, f64::max);
            return rest;
        }
        let mut best = go(i + 1, a, b, used, diag, acc.max(diag(&a[i])));
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let c = a[i].iter().zip(&b[j]).map(|(u, v)| ext_gap(*u, *v)).fold(0.0, f64::max);
                best = best.min(go(i + 1, a, b, used, diag, acc.max(c)));
                used[j] = false;
            }
        }
        best
    }
    go(0, a, b, &mut vec![false; b.len()], diag, 0.0)
}

pub fn random_set(seed: u64, peaks: (usize, usize)) -> MorseSet {
    random_morse_set(&GenParams { peak_count: peaks, domain: Domain::new(0.0, 100.0), heights: (0.0, 10.0), seed })
        .expect("valid generator parameters")
}

/// Random set whose values are small integers, so ties in height are common.
pub fn random_tied_set(seed: u64, peaks: usize) -> MorseSet {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<CriticalPoint> = (0..2 * peaks + 1)
        .map(|i| {
            if i % 2 == 0 {
                CriticalPoint::min(i as f64, rng.gen_range(0..2) as f64)
            } else {
                CriticalPoint::max(i as f64, rng.gen_range(2..6) as f64)
            }
        })
        .collect();
    MorseSet::from_sequence(&pts).expect("maxima sit strictly above minima")
}
