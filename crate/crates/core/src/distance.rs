//! Distance matrices, line instances, itineraries and bridge crossings.

use std::fmt;

use crate::error::{MatrixError, TtpError};
use crate::schedule::{Schedule, Venue};

/// Symmetric nonnegative integer matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::RowLength { line: i + 1, expected: n, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        let m = DistanceMatrix { n, entries };
        for i in 1..=n {
            if m.get(i, i) != 0 {
                return Err(MatrixError::NonzeroDiagonal { i });
            }
            for j in 1..=n {
                if m.get(i, j) < 0 {
                    return Err(MatrixError::Negative { i, j });
                }
                if m.get(i, j) != m.get(j, i) {
                    return Err(MatrixError::Asymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from a function on 1-indexed pairs `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Result<Self, MatrixError> {
        let mut rows = vec![vec![0; n]; n];
        for i in 1..=n {
            for j in i + 1..=n {
                let d = f(i, j);
                rows[i - 1][j - 1] = d;
                rows[j - 1][i - 1] = d;
            }
        }
        DistanceMatrix::from_rows(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry for teams `i`, `j` (1-indexed).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// True when every triple satisfies the triangle inequality.
    pub fn is_metric(&self) -> bool {
        (1..=self.n).all(|i| {
            (1..=self.n).all(|j| (1..=self.n).all(|k| self.get(i, j) <= self.get(i, k) + self.get(k, j)))
        })
    }

    /// Reorders teams so that new team `p` is old team `ordering[p-1]`.
    pub fn reorder(&self, ordering: &[usize]) -> Result<DistanceMatrix, TtpError> {
        check_permutation(ordering, self.n)?;
        Ok(DistanceMatrix::from_fn(self.n, |i, j| self.get(ordering[i - 1], ordering[j - 1]))?)
    }

    /// Parses the matrix file format: optional `#` comments, then `n` rows of `n` integers.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut lines = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|_| MatrixError::Parse {
                        line: idx + 1,
                        message: format!("not an integer: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
            lines.push(idx + 1);
        }
        let n = rows.len();
        for (row, &line) in rows.iter().zip(&lines) {
            if row.len() != n {
                return Err(MatrixError::RowLength { line, expected: n, found: row.len() });
            }
        }
        DistanceMatrix::from_rows(&rows)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}

pub(crate) fn check_permutation(ordering: &[usize], n: usize) -> Result<(), TtpError> {
    let mut seen = vec![false; n + 1];
    if ordering.len() != n {
        return Err(TtpError::InvalidOrdering(n));
    }
    for &t in ordering {
        if t == 0 || t > n || seen[t] {
            return Err(TtpError::InvalidOrdering(n));
        }
        seen[t] = true;
    }
    Ok(())
}

/// Teams on a line, given by the gaps `d_1..d_{n-1}` between neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearInstance {
    gaps: Vec<i64>,
}

impl LinearInstance {
    /// # Panics
    /// If any gap is negative.
    pub fn new(gaps: Vec<i64>) -> Self {
        assert!(gaps.iter().all(|&d| d >= 0), "gaps must be nonnegative");
        LinearInstance { gaps }
    }

    /// Reads the gaps between consecutive teams of `ordering` from `matrix`.
    pub fn from_ordering(matrix: &DistanceMatrix, ordering: &[usize]) -> Result<Self, TtpError> {
        check_permutation(ordering, matrix.n())?;
        Ok(LinearInstance::new(ordering.windows(2).map(|w| matrix.get(w[0], w[1])).collect()))
    }

    pub fn n(&self) -> usize {
        self.gaps.len() + 1
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    /// `d_k`, 1-indexed.
    pub fn gap(&self, k: usize) -> i64 {
        self.gaps[k - 1]
    }

    /// The induced matrix `D[i][j] = d_i + ... + d_{j-1}`.
    pub fn matrix(&self) -> DistanceMatrix {
        let mut prefix = vec![0i64; self.n()];
        for k in 1..self.n() {
            prefix[k] = prefix[k - 1] + self.gaps[k - 1];
        }
        DistanceMatrix::from_fn(self.n(), |i, j| prefix[j - 1] - prefix[i - 1])
            .expect("line matrices are valid")
    }

    pub fn reversed(&self) -> LinearInstance {
        LinearInstance { gaps: self.gaps.iter().rev().copied().collect() }
    }
}

/// What a crossing vector counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingRole {
    /// Counted from an actual schedule.
    Actual,
    /// A closed-form prediction for a construction.
    Predicted,
    /// A lower bound valid for every feasible schedule.
    LowerBound,
}

/// Per-bridge traversal counts `counts[k-1]` for bridges `k = 1..n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingVector {
    pub role: CrossingRole,
    pub counts: Vec<u64>,
}

impl CrossingVector {
    pub fn new(role: CrossingRole, counts: Vec<u64>) -> Self {
        CrossingVector { role, counts }
    }

    /// `counts[k-1]`.
    pub fn get(&self, k: usize) -> u64 {
        self.counts[k - 1]
    }

    /// `sum_k counts[k] * d[k]`.
    pub fn dot(&self, line: &LinearInstance) -> i64 {
        assert_eq!(self.counts.len(), line.gaps().len(), "crossing vector and gaps differ in length");
        self.counts.iter().zip(line.gaps()).map(|(&c, &d)| c as i64 * d).sum()
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &CrossingVector) -> bool {
        self.counts.len() == other.counts.len() && self.counts.iter().zip(&other.counts).all(|(a, b)| a >= b)
    }
}

/// Locations visited by `team`: home, each game venue, home again, with
/// consecutive duplicates collapsed.
pub fn itinerary(schedule: &Schedule, team: usize) -> Vec<usize> {
    let mut locs = Vec::with_capacity(schedule.rounds() + 2);
    locs.push(team);
    for s in schedule.row(team) {
        let here = match s.venue {
            Venue::Home => team,
            Venue::Away => s.opponent,
        };
        if *locs.last().unwrap() != here {
            locs.push(here);
        }
    }
    if *locs.last().unwrap() != team {
        locs.push(team);
    }
    locs
}

/// Total travel of all teams under `matrix`, accumulated in integers.
pub fn total_distance(schedule: &Schedule, matrix: &DistanceMatrix) -> Result<i64, TtpError> {
    if schedule.n() != matrix.n() {
        return Err(TtpError::DimensionMismatch { schedule: schedule.n(), matrix: matrix.n() });
    }
    Ok((1..=schedule.n())
        .map(|t| itinerary(schedule, t).windows(2).map(|w| matrix.get(w[0], w[1])).sum::<i64>())
        .sum())
}

/// Bridge traversal counts with team `t` located at line position `t`.
pub fn bridge_crossings(schedule: &Schedule) -> CrossingVector {
    let n = schedule.n();
    // difference array over bridges
    let mut diff = vec![0i64; n + 1];
    for t in 1..=n {
        for w in itinerary(schedule, t).windows(2) {
            let (lo, hi) = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
            diff[lo] += 1;
            diff[hi] -= 1;
        }
    }
    let mut counts = Vec::with_capacity(n - 1);
    let mut acc = 0i64;
    for k in 1..n {
        acc += diff[k];
        counts.push(acc as u64);
    }
    CrossingVector::new(CrossingRole::Actual, counts)
}
