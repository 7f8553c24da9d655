//! Round-by-round brute force over every feasible 6-team schedule.
//!
//! Shares nothing with the library's enumerator: it fills rounds one game
//! at a time, rejects only infeasible partial schedules, and records the
//! bridge-crossing vector of every complete schedule.

use std::collections::HashSet;

const N: usize = 6;
/// The `hosted` bit for team 2 having hosted team 1.
const TWO_HOSTED_ONE: u64 = 1 << 6;
const ROUNDS: usize = 10;
const FIELD: u32 = 12;

/// Crossings of one leg between venues, five 12-bit counters in a u64.
fn leg(a: usize, b: usize) -> u64 {
    (a.min(b)..a.max(b)).map(|k| 1u64 << (FIELD * (k as u32 - 1))).sum()
}

pub fn unpack(v: u64) -> [u64; 5] {
    std::array::from_fn(|k| v >> (FIELD * k as u32) & ((1 << FIELD) - 1))
}

#[derive(Clone, Copy)]
struct Team {
    loc: usize,
    /// Length of the current home stand (positive) or road trip (negative).
    run: i8,
    last: usize,
}

struct Search {
    legs: [[u64; N + 1]; N + 1],
    teams: [Team; N + 1],
    /// Bit `6(h-1) + (a-1)`: `h` has hosted `a`.
    hosted: u64,
    crossings: u64,
    found: HashSet<u64>,
    schedules: u64,
}

impl Search {
    fn round(&mut self, r: usize, busy: u8) {
        if r == ROUNDS {
            let mut c = self.crossings;
            for t in 1..=N {
                c += self.legs[self.teams[t].loc][t];
            }
            self.found.insert(c);
            self.schedules += 1;
            return;
        }
        let Some(t) = (1..=N).find(|&t| busy >> t & 1 == 0) else {
            self.round(r + 1, 0);
            return;
        };
        for u in t + 1..=N {
            if busy >> u & 1 == 1 || self.teams[t].last == u {
                continue;
            }
            for (h, a) in [(t, u), (u, t)] {
                let bit = 1u64 << (6 * (h - 1) + (a - 1));
                if self.hosted & bit != 0 {
                    continue;
                }
                // the first meeting of teams 1 and 2 is at team 2
                if (h, a) == (1, 2) && self.hosted & TWO_HOSTED_ONE == 0 {
                    continue;
                }
                let (th, ta) = (self.teams[h], self.teams[a]);
                let run_h = if th.run > 0 { th.run + 1 } else { 1 };
                let run_a = if ta.run < 0 { ta.run - 1 } else { -1 };
                if run_h > 3 || run_a < -3 {
                    continue;
                }
                let moved = self.legs[th.loc][h] + self.legs[ta.loc][h];
                self.hosted |= bit;
                self.crossings += moved;
                self.teams[h] = Team { loc: h, run: run_h, last: a };
                self.teams[a] = Team { loc: h, run: run_a, last: h };
                self.round(r, busy | 1 << t | 1 << u);
                self.teams[h] = th;
                self.teams[a] = ta;
                self.crossings -= moved;
                self.hosted &= !bit;
            }
        }
    }
}

/// Distinct packed crossing vectors of all feasible schedules in which team
/// 2 hosts the first meeting with team 1, and the number of such schedules.
pub fn feasible_crossing_vectors() -> (HashSet<u64>, u64) {
    let mut legs = [[0u64; N + 1]; N + 1];
    for (a, row) in legs.iter_mut().enumerate().skip(1) {
        for (b, cell) in row.iter_mut().enumerate().skip(1) {
            *cell = leg(a, b);
        }
    }
    let mut teams = [Team { loc: 0, run: 0, last: 0 }; N + 1];
    for (t, team) in teams.iter_mut().enumerate() {
        team.loc = t;
    }
    let mut s = Search { legs, teams, hosted: 0, crossings: 0, found: HashSet::new(), schedules: 0 };
    s.round(0, 0);
    (s.found, s.schedules)
}
