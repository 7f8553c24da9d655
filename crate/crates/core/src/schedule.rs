//! Double round-robin schedules and their text encoding.
//!
//! Teams and rounds are 1-indexed at the API boundary. A schedule file holds
//! one line per team; entry `+j` means the team hosts team `j` that round and
//! `-j` means it plays away at team `j`. Lines starting with `#` are comments.

use std::fmt;

use crate::error::ScheduleError;

/// Where a team plays in a given round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Venue {
    Home,
    Away,
}

impl Venue {
    pub fn flip(self) -> Venue {
        match self {
            Venue::Home => Venue::Away,
            Venue::Away => Venue::Home,
        }
    }
}

/// One cell of the schedule grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub opponent: usize,
    pub venue: Venue,
}

impl Slot {
    pub fn home(opponent: usize) -> Self {
        Slot { opponent, venue: Venue::Home }
    }

    pub fn away(opponent: usize) -> Self {
        Slot { opponent, venue: Venue::Away }
    }

    /// Signed file encoding: `+opponent` at home, `-opponent` away.
    pub fn encode(self) -> i32 {
        match self.venue {
            Venue::Home => self.opponent as i32,
            Venue::Away => -(self.opponent as i32),
        }
    }
}

/// An `n`-team grid with `2(n-1)` rounds, no byes.
///
/// Construction only checks structure (shape, opponent range, no
/// self-games); the tournament rules are checked by [`crate::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    n: usize,
    slots: Vec<Slot>,
}

impl Schedule {
    /// Builds a schedule from signed rows (`rows[t-1][r-1]`).
    pub fn from_signed_rows<R: AsRef<[i32]>>(rows: &[R]) -> Result<Self, ScheduleError> {
        let n = rows.len();
        if n < 4 || n % 2 != 0 {
            return Err(ScheduleError::TeamCount(n));
        }
        let rounds = 2 * (n - 1);
        let mut slots = Vec::with_capacity(n * rounds);
        for (t, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != rounds {
                return Err(ScheduleError::RowLength {
                    team: t + 1,
                    expected: rounds,
                    found: row.len(),
                });
            }
            for (r, &v) in row.iter().enumerate() {
                let opponent = v.unsigned_abs() as usize;
                if v == 0 || opponent > n {
                    return Err(ScheduleError::OpponentOutOfRange {
                        team: t + 1,
                        round: r + 1,
                        value: v,
                    });
                }
                if opponent == t + 1 {
                    return Err(ScheduleError::SelfOpponent { team: t + 1, round: r + 1 });
                }
                slots.push(if v > 0 { Slot::home(opponent) } else { Slot::away(opponent) });
            }
        }
        Ok(Schedule { n, slots })
    }

    pub(crate) fn from_slots_unchecked(n: usize, slots: Vec<Slot>) -> Self {
        debug_assert_eq!(slots.len(), n * 2 * (n - 1));
        Schedule { n, slots }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rounds(&self) -> usize {
        2 * (self.n - 1)
    }

    /// The cell for `team` in `round`, both 1-indexed.
    pub fn slot(&self, team: usize, round: usize) -> Slot {
        self.slots[(team - 1) * self.rounds() + (round - 1)]
    }

    /// All rounds of one team, in order.
    pub fn row(&self, team: usize) -> &[Slot] {
        let r = self.rounds();
        &self.slots[(team - 1) * r..team * r]
    }

    /// Row-major signed encoding; the sort key for deterministic output.
    pub fn encode(&self) -> Vec<i32> {
        self.slots.iter().map(|s| s.encode()).collect()
    }

    pub fn signed_rows(&self) -> Vec<Vec<i32>> {
        (1..=self.n).map(|t| self.row(t).iter().map(|s| s.encode()).collect()).collect()
    }

    /// Renames every team `t` to `perm[t-1]`. `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Schedule {
        assert_eq!(perm.len(), self.n, "relabel permutation has wrong length");
        let rounds = self.rounds();
        let mut slots = vec![Slot::home(1); self.slots.len()];
        for t in 1..=self.n {
            let nt = perm[t - 1];
            for (r, s) in self.row(t).iter().enumerate() {
                slots[(nt - 1) * rounds + r] = Slot { opponent: perm[s.opponent - 1], venue: s.venue };
            }
        }
        Schedule { n: self.n, slots }
    }

    /// Number of home and away games for `team`.
    pub fn venue_counts(&self, team: usize) -> (usize, usize) {
        let home = self.row(team).iter().filter(|s| s.venue == Venue::Home).count();
        (home, self.rounds() - home)
    }

    /// Parses the schedule file format.
    pub fn parse(text: &str) -> Result<Self, ScheduleError> {
        let mut rows: Vec<Vec<i32>> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i32>().map_err(|_| ScheduleError::Parse {
                        line: idx + 1,
                        message: format!("not a signed integer: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Schedule::from_signed_rows(&rows)
    }

    /// Emits the schedule file format (no comments, LF endings).
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for t in 1..=self.n {
            let line: Vec<String> = self.row(t).iter().map(|s| s.encode().to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}
