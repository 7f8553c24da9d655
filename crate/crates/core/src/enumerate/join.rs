//! Row-join search shared by the 4- and 6-team enumerations.
//!
//! A row fixes one team's road trips: the day it visits each opponent.
//! Home games are implied by the other teams' rows, and every feasibility
//! rule between two teams is a condition on their two rows alone, so a
//! schedule is a choice of one row per team that is pairwise compatible.

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::schedule::{Schedule, Slot};

pub(crate) const MAX_TEAMS: usize = 6;
const MAX_BRIDGES: usize = MAX_TEAMS - 1;

/// Sentinel for "no such day" (the team itself).
const NO_DAY: u8 = u8::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Row {
    /// `away[v-1]` is the day (0-based) spent at `v`'s venue.
    pub away: [u8; MAX_TEAMS],
    /// Bit `d` set when the team is at home on day `d`.
    pub home_mask: u16,
    /// Bridge crossings of this team's itinerary.
    pub crossings: [u8; MAX_BRIDGES],
}

/// Home/away patterns with `n - 1` road days and no run longer than three.
fn venue_patterns(n: usize) -> Vec<u16> {
    let days = 2 * (n - 1);
    (0u16..1 << days)
        .filter(|m| m.count_ones() as usize == n - 1)
        .filter(|&m| {
            let mut run = 1;
            (1..days).all(|d| {
                run = if (m >> d & 1) == (m >> (d - 1) & 1) { run + 1 } else { 1 };
                run <= 3
            })
        })
        .collect()
}

fn row_crossings(team: usize, days: usize, at: impl Fn(usize) -> usize) -> [u8; MAX_BRIDGES] {
    let mut c = [0u8; MAX_BRIDGES];
    let mut here = team;
    for d in 0..=days {
        let next = if d == days { team } else { at(d) };
        for k in here.min(next)..here.max(next) {
            c[k - 1] += 1;
        }
        here = next;
    }
    c
}

/// All rows of `team` (1-based) in an `n`-team tournament.
fn team_rows(n: usize, team: usize) -> Vec<Row> {
    let days = 2 * (n - 1);
    let others: Vec<usize> = (1..=n).filter(|&v| v != team).collect();
    let mut rows = Vec::new();
    for away_mask in venue_patterns(n) {
        let away_days: Vec<usize> = (0..days).filter(|d| away_mask >> d & 1 == 1).collect();
        for perm in others.iter().copied().permutations(n - 1) {
            let mut away = [NO_DAY; MAX_TEAMS];
            let mut at = vec![team; days];
            for (&d, &v) in away_days.iter().zip(&perm) {
                away[v - 1] = d as u8;
                at[d] = v;
            }
            let crossings = row_crossings(team, days, |d| at[d]);
            rows.push(Row { away, home_mask: !away_mask & ((1 << days) - 1), crossings });
        }
    }
    rows
}

/// Rows of one team, with bitset indexes over them.
pub(crate) struct TeamTable {
    pub rows: Vec<Row>,
    /// `home[d]`: rows at home on day `d`.
    home: Vec<FixedBitSet>,
    /// `away_at[v-1][d]`: rows visiting `v` on day `d`.
    away_at: Vec<Vec<FixedBitSet>>,
}

impl TeamTable {
    fn new(n: usize, rows: Vec<Row>) -> Self {
        let days = 2 * (n - 1);
        let len = rows.len();
        let mut home = vec![FixedBitSet::with_capacity(len); days];
        let mut away_at = vec![vec![FixedBitSet::with_capacity(len); days]; n];
        for (i, r) in rows.iter().enumerate() {
            for (d, set) in home.iter_mut().enumerate() {
                if r.home_mask >> d & 1 == 1 {
                    set.insert(i);
                }
            }
            for v in 0..n {
                if r.away[v] != NO_DAY {
                    away_at[v][r.away[v] as usize].insert(i);
                }
            }
        }
        TeamTable { rows, home, away_at }
    }
}

/// The join problem: `n` teams, candidate rows per team, optional crossing target.
pub(crate) struct Join {
    n: usize,
    days: usize,
    tables: Vec<TeamTable>,
    target: Option<Vec<u16>>,
    /// `floor[t][k]`: least crossings teams `t+1..n` can add on bridge `k`.
    floor: Vec<[u16; MAX_BRIDGES]>,
    canonical: bool,
}

impl Join {
    /// With a target, rows that cannot fit under it are dropped up front.
    pub fn new(n: usize, target: Option<&[u64]>, canonical: bool) -> Self {
        assert!(n == 4 || n == 6, "row join supports 4 or 6 teams");
        let all: Vec<Vec<Row>> = (1..=n).map(|t| team_rows(n, t)).collect();
        let bridges = n - 1;
        let mins: Vec<[u16; MAX_BRIDGES]> = all
            .iter()
            .map(|rows| {
                let mut m = [u16::MAX; MAX_BRIDGES];
                for r in rows {
                    for k in 0..bridges {
                        m[k] = m[k].min(r.crossings[k] as u16);
                    }
                }
                m
            })
            .collect();
        let target: Option<Vec<u16>> = target.map(|t| t.iter().map(|&c| c as u16).collect());
        let tables = all
            .into_iter()
            .enumerate()
            .map(|(t, rows)| {
                let rows = match &target {
                    None => rows,
                    Some(goal) => rows
                        .into_iter()
                        .filter(|r| {
                            (0..bridges).all(|k| {
                                let others: u16 = (0..n).filter(|&u| u != t).map(|u| mins[u][k]).sum();
                                r.crossings[k] as u16 + others <= goal[k]
                            })
                        })
                        .collect(),
                };
                TeamTable::new(n, rows)
            })
            .collect();
        let mut floor = vec![[0u16; MAX_BRIDGES]; n + 1];
        for t in (0..n).rev() {
            for k in 0..bridges {
                floor[t][k] = floor[t + 1][k] + mins[t][k];
            }
        }
        Join { n, days: 2 * (n - 1), tables, target, floor, canonical }
    }

    pub fn first_team_rows(&self) -> usize {
        self.tables[0].rows.len()
    }

    /// Narrows `cand` (rows of team `u`) to those compatible with row `r` of team `t`.
    fn restrict(&self, t: usize, r: &Row, u: usize, cand: &mut FixedBitSet) {
        let tu = &self.tables[u];
        let d = r.away[u] as usize;
        cand.intersect_with(&tu.home[d]);
        // u's visit to t needs t at home and at least one day between meetings
        let at_t = &tu.away_at[t];
        for e in 0..self.days {
            let near = e + 1 == d || d + 1 == e;
            if r.home_mask >> e & 1 == 0 || near {
                cand.difference_with(&at_t[e]);
            }
        }
        for v in 0..self.n {
            if v != t && v != u {
                cand.difference_with(&tu.away_at[v][r.away[v] as usize]);
            }
        }
        if self.canonical && t == 0 && u == 1 {
            // team 2 hosts the first meeting: team 1 visits before team 2 does
            for e in 0..=d {
                cand.difference_with(&at_t[e]);
            }
        }
    }

    /// Calls `visit` with the chosen row index of each team for every
    /// schedule whose first team uses row `first`.
    pub fn run_from(&self, first: usize, visit: &mut dyn FnMut(&[usize])) {
        let n = self.n;
        let mut stack: Vec<Vec<FixedBitSet>> = (0..=n)
            .map(|_| self.tables.iter().map(|tab| FixedBitSet::with_capacity(tab.rows.len())).collect())
            .collect();
        for u in 1..n {
            stack[1][u].insert_range(..);
        }
        let r = &self.tables[0].rows[first];
        let mut partial = [0u16; MAX_BRIDGES];
        if !self.fits(&mut partial, r, 1) {
            return;
        }
        for u in 1..n {
            self.restrict(0, r, u, &mut stack[1][u]);
            if stack[1][u].is_clear() {
                return;
            }
        }
        let mut chosen = vec![first; n];
        self.descend(1, &mut stack[1..], &mut chosen, partial, visit);
    }

    fn fits(&self, partial: &mut [u16; MAX_BRIDGES], r: &Row, next: usize) -> bool {
        let Some(goal) = &self.target else { return true };
        for k in 0..self.n - 1 {
            partial[k] += r.crossings[k] as u16;
            if partial[k] + self.floor[next][k] > goal[k] {
                return false;
            }
        }
        true
    }

    fn descend(
        &self,
        t: usize,
        levels: &mut [Vec<FixedBitSet>],
        chosen: &mut [usize],
        partial: [u16; MAX_BRIDGES],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let n = self.n;
        if t == n {
            if let Some(goal) = &self.target {
                if partial[..n - 1] != goal[..] {
                    return;
                }
            }
            visit(chosen);
            return;
        }
        // levels[0] holds the candidates for this level, levels[1] the next
        let (cur, rest) = levels.split_at_mut(1);
        let cur = &cur[0];
        'rows: for i in cur[t].ones() {
            let r = &self.tables[t].rows[i];
            let mut p = partial;
            if !self.fits(&mut p, r, t + 1) {
                continue;
            }
            for u in t + 1..n {
                let next = &mut rest[0][u];
                next.as_mut_slice().copy_from_slice(cur[u].as_slice());
                self.restrict(t, r, u, next);
                if next.is_clear() {
                    continue 'rows;
                }
            }
            chosen[t] = i;
            self.descend(t + 1, rest, chosen, p, visit);
        }
    }

    pub fn row(&self, team: usize, index: usize) -> &Row {
        &self.tables[team].rows[index]
    }

    /// Assembles the schedule from one row per team.
    pub fn schedule(&self, chosen: &[usize]) -> Schedule {
        let n = self.n;
        let days = self.days;
        let mut slots = vec![Slot::home(1); n * days];
        for (t, &i) in chosen.iter().enumerate() {
            let r = &self.tables[t].rows[i];
            for v in 0..n {
                if v != t {
                    let d = r.away[v] as usize;
                    slots[t * days + d] = Slot::away(v + 1);
                    slots[v * days + d] = Slot::home(t + 1);
                }
            }
        }
        Schedule::from_slots_unchecked(n, slots)
    }
}

/// Runs the join over every first-team row, in parallel when available,
/// collecting what `leaf` returns for each schedule.
pub(crate) fn collect<T: Send>(join: &Join, leaf: impl Fn(&Join, &[usize]) -> T + Sync) -> Vec<T> {
    use rayon::prelude::*;
    (0..join.first_team_rows())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            join.run_from(first, &mut |chosen| out.push(leaf(join, chosen)));
            out
        })
        .collect()
}
