//! Exact minimum-cost perfect matchings on square cost matrices.
//!
//! Entries are non-negative reals or `+inf`; an infinite entry is a forbidden
//! edge. Two objectives are supported: total cost (shortest augmenting paths
//! with potentials, `O(n^3)`) and bottleneck cost (binary search over the
//! distinct finite entries with a bipartite matching feasibility check).

use crate::error::{Error, Result};

/// One side of a matched pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    /// Index into the corresponding input.
    Point(usize),
    /// The all-zero padding point.
    Origin,
    /// The diagonal (zero-persistence) slack.
    Diagonal,
}

/// An optimal matching and its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub pairs: Vec<(Slot, Slot)>,
    pub cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Minimise the sum of matched entries.
    Sum,
    /// Minimise the largest matched entry.
    Bottleneck,
}

/// Minimum-cost perfect matching of rows to columns.
///
/// The returned pairs are `(Point(row), Point(col))` in row order and `cost` is
/// recomputed from them (sum or maximum of matched entries).
pub fn solve_assignment(cost: &[Vec<f64>], objective: Objective) -> Result<MatchResult> {
    let n = cost.len();
    for (i, row) in cost.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidParameter(format!(
                "cost matrix must be square: row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(v) = row.iter().find(|v| v.is_nan() || **v < 0.0) {
            return Err(Error::InvalidParameter(format!("cost entries must be >= 0 or +inf, got {v}")));
        }
    }
    if cost.iter().any(|row| row.iter().all(|v| v.is_infinite()))
        || (0..n).any(|j| cost.iter().all(|row| row[j].is_infinite()))
    {
        return Err(Error::Infeasible);
    }

    let row_to_col = match objective {
        Objective::Sum => min_sum(cost)?,
        Objective::Bottleneck => min_bottleneck(cost)?,
    };
    let matched = row_to_col.iter().enumerate().map(|(i, &j)| cost[i][j]);
    let total = match objective {
        Objective::Sum => matched.sum(),
        Objective::Bottleneck => matched.fold(0.0, f64::max),
    };
    Ok(MatchResult {
        pairs: row_to_col.iter().enumerate().map(|(i, &j)| (Slot::Point(i), Slot::Point(j))).collect(),
        cost: total,
    })
}

fn min_sum(cost: &[Vec<f64>]) -> Result<Vec<usize>> {
    let n = cost.len();
    let inf = f64::INFINITY;
    // 1-based potentials; column 0 is the virtual root of each search.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = inf;
            let mut next = 0;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let c = cost[r - 1][col - 1];
                if c.is_finite() {
                    let reduced = c - u[r] - v[col];
                    if reduced < minv[col] {
                        minv[col] = reduced;
                        way[col] = col0;
                    }
                }
                if minv[col] < delta {
                    delta = minv[col];
                    next = col;
                }
            }
            if !delta.is_finite() {
                return Err(Error::Infeasible);
            }
            for col in 0..=n {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = next;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0; n];
    for col in 1..=n {
        row_to_col[owner[col] - 1] = col - 1;
    }
    Ok(row_to_col)
}

fn min_bottleneck(cost: &[Vec<f64>]) -> Result<Vec<usize>> {
    let n = cost.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut thresholds: Vec<f64> = cost.iter().flatten().copied().filter(|v| v.is_finite()).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let Some(mut best) = perfect_matching_below(cost, *thresholds.last().ok_or(Error::Infeasible)?) else {
        return Err(Error::Infeasible);
    };
    let (mut lo, mut hi) = (0usize, thresholds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching_below(cost, thresholds[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    // `best` always holds the matching found at `thresholds[hi]`.
    Ok(best)
}

/// Perfect matching using only entries `<= limit`, by augmenting paths.
fn perfect_matching_below(cost: &[Vec<f64>], limit: f64) -> Option<Vec<usize>> {
    let n = cost.len();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];

    fn augment(
        row: usize,
        cost: &[Vec<f64>],
        limit: f64,
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for col in 0..cost.len() {
            if cost[row][col] <= limit && !seen[col] {
                seen[col] = true;
                let free = match col_owner[col] {
                    None => true,
                    Some(other) => augment(other, cost, limit, seen, col_owner),
                };
                if free {
                    col_owner[col] = Some(row);
                    return true;
                }
            }
        }
        false
    }

    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(row, cost, limit, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut row_to_col = vec![0; n];
    for (col, owner) in col_owner.iter().enumerate() {
        row_to_col[owner.expect("perfect matching")] = col;
    }
    Some(row_to_col)
}

#[cfg(test)]
mod tests {
    use super::*;
    const INF: f64 = f64::INFINITY;

    fn cols(r: &MatchResult) -> Vec<usize> {
        r.pairs
            .iter()
            .map(|(_, c)| match c {
                Slot::Point(j) => *j,
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn identity_favoring() {
        let r = solve_assignment(&[vec![0.0, 1.0], vec![1.0, 0.0]], Objective::Sum).unwrap();
        assert_eq!(cols(&r), vec![0, 1]);
        assert_eq!(r.cost, 0.0);
    }

    #[test]
    fn forced_anti_diagonal() {
        let m = [vec![2.0, 1.0], vec![1.0, 2.0]];
        let r = solve_assignment(&m, Objective::Sum).unwrap();
        assert_eq!(cols(&r), vec![1, 0]);
        assert_eq!(r.cost, 2.0);
        let b = solve_assignment(&m, Objective::Bottleneck).unwrap();
        assert_eq!(b.cost, 1.0);
    }

    #[test]
    fn sum_and_bottleneck_disagree() {
        // Sum prefers 0 + 10 = 10 over 6 + 6 = 12; bottleneck prefers 6.
        let m = [vec![0.0, 6.0], vec![6.0, 10.0]];
        assert_eq!(solve_assignment(&m, Objective::Sum).unwrap().cost, 10.0);
        assert_eq!(solve_assignment(&m, Objective::Bottleneck).unwrap().cost, 6.0);
    }

    #[test]
    fn infinite_entries_are_forbidden() {
        let m = [vec![INF, 3.0, INF], vec![1.0, INF, INF], vec![INF, 1.0, 5.0]];
        let r = solve_assignment(&m, Objective::Sum).unwrap();
        assert_eq!(cols(&r), vec![1, 0, 2]);
        assert_eq!(r.cost, 9.0);
        assert_eq!(solve_assignment(&m, Objective::Bottleneck).unwrap().cost, 5.0);
    }

    #[test]
    fn infeasible_inputs() {
        assert!(matches!(
            solve_assignment(&[vec![INF, INF], vec![0.0, 1.0]], Objective::Sum),
            Err(Error::Infeasible)
        ));
        // Every row and column has a finite entry, but no finite perfect matching.
        let m = [vec![1.0, INF, INF], vec![1.0, INF, INF], vec![1.0, 1.0, 1.0]];
        assert!(matches!(solve_assignment(&m, Objective::Sum), Err(Error::Infeasible)));
        assert!(matches!(solve_assignment(&m, Objective::Bottleneck), Err(Error::Infeasible)));
    }

    #[test]
    fn empty_and_malformed() {
        let r = solve_assignment(&[], Objective::Sum).unwrap();
        assert!(r.pairs.is_empty());
        assert_eq!(r.cost, 0.0);
        assert!(solve_assignment(&[vec![1.0, 2.0]], Objective::Sum).is_err());
        assert!(solve_assignment(&[vec![-1.0]], Objective::Sum).is_err());
    }
}
