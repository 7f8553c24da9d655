//! Lower bounds and closed-form optima for line instances.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::distance::{CrossingRole, CrossingVector, LinearInstance};
use crate::error::TtpError;
use crate::expander;

/// Families of optimal schedules: the 4-team optimum and the seven 6-team families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetLabel {
    Opt4,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
}

impl SetLabel {
    /// The seven 6-team families in surplus order.
    pub const SIX: [SetLabel; 7] =
        [SetLabel::S1, SetLabel::S2, SetLabel::S3, SetLabel::S4, SetLabel::S5, SetLabel::S6, SetLabel::S7];

    /// Exact crossing vector shared by every member of the family.
    pub fn target(self) -> &'static [u64] {
        match self {
            SetLabel::Opt4 => &[8, 8, 8],
            SetLabel::S1 => &[14, 18, 20, 18, 14],
            SetLabel::S2 => &[16, 16, 20, 18, 14],
            SetLabel::S3 => &[14, 16, 22, 18, 14],
            SetLabel::S4 => &[14, 16, 20, 22, 14],
            SetLabel::S5 => &[14, 18, 20, 16, 16],
            SetLabel::S6 => &[14, 18, 22, 16, 14],
            SetLabel::S7 => &[14, 22, 20, 16, 14],
        }
    }

    /// Index 1..=7 for the 6-team families, 0 for `Opt4`.
    pub fn index(self) -> usize {
        match self {
            SetLabel::Opt4 => 0,
            s => SetLabel::SIX.iter().position(|&x| x == s).unwrap() + 1,
        }
    }

    /// The family that team-order reversal maps this one to.
    pub fn mirrored(self) -> SetLabel {
        match self {
            SetLabel::S2 => SetLabel::S5,
            SetLabel::S5 => SetLabel::S2,
            SetLabel::S3 => SetLabel::S6,
            SetLabel::S6 => SetLabel::S3,
            SetLabel::S4 => SetLabel::S7,
            SetLabel::S7 => SetLabel::S4,
            s => s,
        }
    }
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetLabel::Opt4 => f.write_str("OPT4"),
            s => write!(f, "S{}", s.index()),
        }
    }
}

impl FromStr for SetLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "OPT4" => Ok(SetLabel::Opt4),
            _ => s
                .strip_prefix('S')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| (1..=7).contains(&i))
                .map(|i| SetLabel::SIX[i - 1])
                .ok_or_else(|| format!("unknown set label {s:?}")),
        }
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Sum of per-team independent bounds: `l_k = 2k*ceil((n-k)/3) + 2(n-k)*ceil(k/3)`.
pub fn trivial_lower_bound(n: usize) -> Result<CrossingVector, TtpError> {
    if n < 4 || n % 2 != 0 {
        return Err(TtpError::InvalidTeamCount(n));
    }
    let counts = (1..n).map(|k| (2 * k * ceil_div(n - k, 3) + 2 * (n - k) * ceil_div(k, 3)) as u64).collect();
    Ok(CrossingVector::new(CrossingRole::LowerBound, counts))
}

/// The 6-team floor, which tightens the middle bridge from 12 to 20.
pub fn refined_six_team_floor() -> CrossingVector {
    CrossingVector::new(CrossingRole::LowerBound, vec![14, 16, 20, 16, 14])
}

/// `8(d1 + d2 + d3)`.
pub fn four_team_optimum(line: &LinearInstance) -> Result<i64, TtpError> {
    if line.n() != 4 {
        return Err(TtpError::WrongTeamCount { expected: 4, found: line.n() });
    }
    Ok(8 * line.gaps().iter().sum::<i64>())
}

/// Optimal line distance for six teams, with the surplus breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixTeamOptimum {
    pub value: i64,
    /// `14d1 + 16d2 + 20d3 + 16d4 + 14d5`.
    pub baseline: i64,
    /// Surplus of S1..S7 above the baseline, in that order.
    pub surpluses: [i64; 7],
    /// Every family whose surplus is minimal.
    pub chosen: Vec<SetLabel>,
}

pub fn six_team_optimum(line: &LinearInstance) -> Result<SixTeamOptimum, TtpError> {
    if line.n() != 6 {
        return Err(TtpError::WrongTeamCount { expected: 6, found: line.n() });
    }
    let d = |k: usize| line.gap(k);
    let baseline = refined_six_team_floor().dot(line);
    let surpluses = [
        2 * (d(2) + d(4)),
        2 * (d(1) + d(4)),
        2 * (d(3) + d(4)),
        6 * d(4),
        2 * (d(2) + d(5)),
        2 * (d(2) + d(3)),
        6 * d(2),
    ];
    let min = *surpluses.iter().min().unwrap();
    let chosen = SetLabel::SIX.iter().zip(&surpluses).filter(|(_, &s)| s == min).map(|(&l, _)| l).collect();
    Ok(SixTeamOptimum { value: baseline + min, baseline, surpluses, chosen })
}

/// `max_k f_k / l_k` for the expander construction on `n = 6m - 2` teams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioBound {
    pub n: usize,
    /// `ratios[k-1] = f_k / l_k`.
    pub ratios: Vec<Ratio<i64>>,
    pub max: Ratio<i64>,
    /// Bridge attaining the maximum (smallest such `k`).
    pub argmax: usize,
}

impl RatioBound {
    pub fn below_four_thirds(&self) -> bool {
        self.max < Ratio::new(4, 3)
    }
}

/// Exact worst bridge ratio of the construction against the trivial bound; needs `m >= 3`.
pub fn approximation_ratio_bound(n: usize) -> Result<RatioBound, TtpError> {
    if n % 6 != 4 || n < 16 {
        return Err(TtpError::NotExpanderSize(n, 3));
    }
    let f = expander::predicted_crossings(n)?;
    let l = trivial_lower_bound(n)?;
    let ratios: Vec<Ratio<i64>> =
        f.counts.iter().zip(&l.counts).map(|(&a, &b)| Ratio::new(a as i64, b as i64)).collect();
    let mut argmax = 1;
    for k in 2..n {
        if ratios[k - 1] > ratios[argmax - 1] {
            argmax = k;
        }
    }
    Ok(RatioBound { n, max: ratios[argmax - 1], ratios, argmax })
}
