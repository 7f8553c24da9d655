//! Feasibility checks for double round-robin schedules.

use std::fmt;

use crate::schedule::{Schedule, Venue};

/// The rule a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// The two teams' cells disagree about a game.
    Pairing,
    /// An ordered pair does not have exactly one hosted game.
    EachVenue,
    /// A home stand or road trip longer than three games.
    AtMostThree,
    /// The same two teams meet in consecutive rounds.
    NoRepeat,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Pairing => "PAIRING",
            Rule::EachVenue => "EACH_VENUE",
            Rule::AtMostThree => "AT_MOST_THREE",
            Rule::NoRepeat => "NO_REPEAT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub rule: Rule,
    pub teams: Vec<usize>,
    pub rounds: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} teams {:?} rounds {:?}", self.rule, self.teams, self.rounds)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Checks pairing symmetry and the three tournament rules.
///
/// Pairing is checked first; when any cell disagrees with its opponent's
/// cell, only the pairing violations are reported.
pub fn validate(schedule: &Schedule) -> FeasibilityReport {
    let n = schedule.n();
    let rounds = schedule.rounds();
    let mut violations = Vec::new();

    for t in 1..=n {
        for r in 1..=rounds {
            let s = schedule.slot(t, r);
            let back = schedule.slot(s.opponent, r);
            if back.opponent != t || back.venue != s.venue.flip() {
                // report each broken cell pair once, from the lower team
                if t < s.opponent || back.opponent != t {
                    violations.push(Violation {
                        rule: Rule::Pairing,
                        teams: vec![t, s.opponent],
                        rounds: vec![r],
                    });
                }
            }
        }
    }
    if !violations.is_empty() {
        return FeasibilityReport { violations };
    }

    for t in 1..=n {
        for u in 1..=n {
            if t == u {
                continue;
            }
            let hosted: Vec<usize> = (1..=rounds)
                .filter(|&r| {
                    let s = schedule.slot(t, r);
                    s.opponent == u && s.venue == Venue::Home
                })
                .collect();
            if hosted.len() != 1 {
                violations.push(Violation { rule: Rule::EachVenue, teams: vec![t, u], rounds: hosted });
            }
        }
    }

    for t in 1..=n {
        let row = schedule.row(t);
        let mut start = 0;
        for r in 1..=rounds {
            if r == rounds || row[r].venue != row[start].venue {
                if r - start > 3 {
                    violations.push(Violation {
                        rule: Rule::AtMostThree,
                        teams: vec![t],
                        rounds: (start + 1..=r).collect(),
                    });
                }
                start = r;
            }
        }
    }

    for t in 1..=n {
        let row = schedule.row(t);
        for r in 1..rounds {
            let u = row[r - 1].opponent;
            if u == row[r].opponent && t < u {
                violations.push(Violation { rule: Rule::NoRepeat, teams: vec![t, u], rounds: vec![r, r + 1] });
            }
        }
    }

    FeasibilityReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line4() -> Schedule {
        Schedule::parse(include_str!("../data/line4_optimal.sched")).unwrap()
    }

    #[test]
    fn line4_optimum_is_feasible() {
        assert!(validate(&line4()).is_feasible());
    }

    #[test]
    fn nl6_is_feasible() {
        let s = Schedule::parse(include_str!("../data/nl6_optimal.sched")).unwrap();
        assert!(validate(&s).is_feasible());
    }

    #[test]
    fn swapping_rounds_creates_repeat() {
        // t1 meets t2 in rounds 3 and 6; move round 6 next to round 3
        let rows = line4().signed_rows();
        let swapped: Vec<Vec<i32>> = rows
            .iter()
            .map(|r| vec![r[0], r[1], r[2], r[5], r[4], r[3]])
            .collect();
        let report = validate(&Schedule::from_signed_rows(&swapped).unwrap());
        assert!(report.has(Rule::NoRepeat));
        let v = report.violations.iter().find(|v| v.rule == Rule::NoRepeat).unwrap();
        assert_eq!(v.teams, vec![1, 2]);
        assert_eq!(v.rounds, vec![3, 4]);
    }

    #[test]
    fn four_away_games_in_a_row() {
        let rows = vec![
            vec![-2, -3, -4, -2, 3, 4],
            vec![1, 4, -3, 1, 4, -3],
            vec![-4, 1, 2, 4, -1, 2],
            vec![3, -2, 1, -3, -2, -1],
        ];
        let report = validate(&Schedule::from_signed_rows(&rows).unwrap());
        assert!(report.has(Rule::AtMostThree));
        let v = report.violations.iter().find(|v| v.rule == Rule::AtMostThree).unwrap();
        assert_eq!(v.teams, vec![1]);
        assert_eq!(v.rounds, vec![1, 2, 3, 4]);
        assert!(!report.has(Rule::Pairing));
    }

    #[test]
    fn pairing_short_circuits() {
        let mut rows = line4().signed_rows();
        rows[0][0] = -4; // t1 claims to be away, t4 also away
        let report = validate(&Schedule::from_signed_rows(&rows).unwrap());
        assert!(!report.is_feasible());
        assert!(report.violations.iter().all(|v| v.rule == Rule::Pairing));
    }

    #[test]
    fn each_venue_violation() {
        // mirrored halves with identical venues: every pair hosted twice one way
        let rows = vec![
            vec![2, 3, 4, 2, 3, 4],
            vec![-1, 4, -3, -1, 4, -3],
            vec![4, -1, 2, 4, -1, 2],
            vec![-3, -2, -1, -3, -2, -1],
        ];
        let report = validate(&Schedule::from_signed_rows(&rows).unwrap());
        assert!(report.has(Rule::EachVenue));
    }
}
