//! Line-fit relaxation pipeline and instance generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{six_team_optimum, SetLabel};
use crate::distance::{check_permutation, total_distance, DistanceMatrix, LinearInstance};
use crate::enumerate::{psi, SixTeamCatalog};
use crate::error::TtpError;
use crate::expander::{line_schedule, predicted_crossings};
use crate::schedule::Schedule;

/// An ordering of the teams along a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFit {
    /// `permutation[p-1]` is the team placed at position `p`.
    pub permutation: Vec<usize>,
    /// Sum of distances between neighbours in the ordering.
    pub cost: i64,
    pub seed: u64,
}

/// Sum of `D[π(i)][π(i+1)]`.
pub fn path_cost(matrix: &DistanceMatrix, perm: &[usize]) -> i64 {
    perm.windows(2).map(|w| matrix.get(w[0], w[1])).sum()
}

fn climb(matrix: &DistanceMatrix, perm: &mut [usize]) -> i64 {
    let n = perm.len();
    let mut cost = path_cost(matrix, perm);
    loop {
        let mut improved = false;
        for i in 0..n {
            for j in i + 1..n {
                perm.swap(i, j);
                let c = path_cost(matrix, perm);
                if c < cost {
                    cost = c;
                    improved = true;
                } else {
                    perm.swap(i, j);
                }
            }
        }
        if !improved {
            return cost;
        }
    }
}

/// Hill climbing over position swaps, best of `restarts` random starts.
///
/// Restart `i` draws its start from ChaCha8 seeded with `seed` on stream
/// `i`, so adding restarts never changes the earlier ones.
pub fn fit_line(matrix: &DistanceMatrix, seed: u64, restarts: usize) -> LineFit {
    let n = matrix.n();
    let mut best: Option<LineFit> = None;
    for i in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let cost = climb(matrix, &mut perm);
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            best = Some(LineFit { permutation: perm, cost, seed });
        }
    }
    best.expect("at least one restart")
}

/// Which 6-team families `solve6` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateScope {
    /// Only the families attaining the line optimum.
    ArgminSets,
    All295,
}

impl FromStr for CandidateScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "argmin" => Ok(CandidateScope::ArgminSets),
            "all" => Ok(CandidateScope::All295),
            _ => Err(format!("unknown scope {s:?}, expected argmin or all")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateResult {
    pub label: SetLabel,
    /// Position within its family in the catalog.
    pub index: usize,
    pub distance: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub ordering: Vec<usize>,
    pub gaps: LinearInstance,
    /// Optimal (6 teams) or constructed (expander) distance on the line.
    pub relaxation_value: i64,
    pub labels: Vec<SetLabel>,
    /// In the matrix's team labels.
    pub best_schedule: Schedule,
    pub best_distance: i64,
    pub candidates: Vec<CandidateResult>,
}

/// Evaluates the optimal line schedules of the ordering on the full matrix.
///
/// Each candidate, and its time reversal, is placed with position `p`
/// played by team `ordering[p-1]`. Ties go to the smallest encoding. The
/// report's ordering may be the reverse of the one given.
pub fn solve6(
    matrix: &DistanceMatrix,
    ordering: &[usize],
    scope: CandidateScope,
    catalog: &SixTeamCatalog,
) -> Result<SolveReport, TtpError> {
    if matrix.n() != 6 {
        return Err(TtpError::WrongTeamCount { expected: 6, found: matrix.n() });
    }
    // an ordering and its reverse have mirrored families with equal
    // distances; use the one whose families come first
    let mut ordering = ordering.to_vec();
    let mut gaps = LinearInstance::from_ordering(matrix, &ordering)?;
    let mut opt = six_team_optimum(&gaps)?;
    let back = six_team_optimum(&gaps.reversed())?;
    if back.chosen < opt.chosen {
        ordering.reverse();
        gaps = gaps.reversed();
        opt = back;
    }
    let labels: Vec<SetLabel> = match scope {
        CandidateScope::ArgminSets => opt.chosen.clone(),
        CandidateScope::All295 => SetLabel::SIX.to_vec(),
    };
    let pool: Vec<(SetLabel, usize, &Schedule)> = labels
        .iter()
        .flat_map(|&l| catalog.get(l).iter().enumerate().map(move |(i, s)| (l, i, s)))
        .collect();
    let evaluated: Vec<(CandidateResult, Schedule)> = pool
        .par_iter()
        .map(|&(label, index, s)| {
            [s.clone(), psi(s)]
                .into_iter()
                .map(|orient| {
                    let placed = orient.relabel(&ordering);
                    let d = total_distance(&placed, matrix).expect("sizes checked");
                    (CandidateResult { label, index, distance: d }, placed)
                })
                .min_by_key(|(c, s)| (c.distance, s.encode()))
                .expect("two orientations")
        })
        .collect();
    let (best_result, best_schedule) = evaluated
        .iter()
        .min_by_key(|(c, s)| (c.distance, s.encode()))
        .cloned()
        .ok_or_else(|| TtpError::NoCandidates(labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")))?;
    Ok(SolveReport {
        ordering,
        gaps,
        relaxation_value: opt.value,
        labels,
        best_schedule,
        best_distance: best_result.distance,
        candidates: evaluated.into_iter().map(|(c, _)| c).collect(),
    })
}

/// The expander schedule for a given ordering.
pub fn solve_expander_with_ordering(matrix: &DistanceMatrix, ordering: &[usize]) -> Result<SolveReport, TtpError> {
    let n = matrix.n();
    if n % 6 != 4 {
        return Err(TtpError::NotExpanderSize(n, 1));
    }
    check_permutation(ordering, n)?;
    let gaps = LinearInstance::from_ordering(matrix, ordering)?;
    let (schedule, distance) = line_schedule(matrix, ordering, (n + 2) / 6)?;
    let relaxation_value = if n >= 10 {
        predicted_crossings(n)?.dot(&gaps)
    } else {
        crate::distance::bridge_crossings(&crate::expander::line_ordered_expansion(1)?).dot(&gaps)
    };
    Ok(SolveReport {
        ordering: ordering.to_vec(),
        gaps,
        relaxation_value,
        labels: Vec::new(),
        best_schedule: schedule,
        best_distance: distance,
        candidates: Vec::new(),
    })
}

/// Fits a line, then builds the expander schedule along it.
pub fn solve_expander(matrix: &DistanceMatrix, seed: u64, restarts: usize) -> Result<SolveReport, TtpError> {
    let n = matrix.n();
    if n % 6 != 4 {
        return Err(TtpError::NotExpanderSize(n, 1));
    }
    let fit = fit_line(matrix, seed, restarts);
    solve_expander_with_ordering(matrix, &fit.permutation)
}

/// Synthetic instance families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// Unit gaps on a line.
    Line,
    /// Gap `k` has length `k`.
    Incr,
    /// Teams on a cycle: `min(j - i, n - (j - i))`.
    Circ,
    /// Every pair one unit apart.
    Con,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Line => "LINE",
            InstanceKind::Incr => "INCR",
            InstanceKind::Circ => "CIRC",
            InstanceKind::Con => "CON",
        })
    }
}

impl FromStr for InstanceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "LINE" => Ok(InstanceKind::Line),
            "INCR" => Ok(InstanceKind::Incr),
            "CIRC" => Ok(InstanceKind::Circ),
            "CON" | "CONS" => Ok(InstanceKind::Con),
            _ => Err(format!("unknown instance kind {s:?}")),
        }
    }
}

pub fn generate(kind: InstanceKind, n: usize) -> Result<DistanceMatrix, TtpError> {
    if n < 4 || n % 2 != 0 {
        return Err(TtpError::InvalidTeamCount(n));
    }
    let m = match kind {
        InstanceKind::Line => LinearInstance::new(vec![1; n - 1]).matrix(),
        InstanceKind::Incr => LinearInstance::new((1..n as i64).collect()).matrix(),
        InstanceKind::Circ => DistanceMatrix::from_fn(n, |i, j| (j - i).min(n - (j - i)) as i64)?,
        InstanceKind::Con => DistanceMatrix::from_fn(n, |_, _| 1)?,
    };
    Ok(m)
}
