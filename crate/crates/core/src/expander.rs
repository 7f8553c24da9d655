//! Expander construction: a single round-robin on `2m` teams lifted to a
//! feasible double round-robin on `n = 6m - 2` teams.
//!
//! Construction labels are `t_1..t_{6m-3}` (teams `1..=6m-3`) and `x`
//! (team `6m-2`). Each `u_k` of the single round-robin becomes the triple
//! `t_{3k-2}, t_{3k-1}, t_{3k}`, and each single round-robin slot `r`
//! becomes rounds `6r-5..=6r`.

use crate::distance::{total_distance, CrossingRole, CrossingVector, DistanceMatrix};
use crate::error::TtpError;
use crate::schedule::{Schedule, Slot};

/// A team of the single round-robin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SrrTeam {
    U(usize),
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrrGame {
    pub home: SrrTeam,
    pub away: SrrTeam,
}

impl SrrGame {
    fn involves(&self, t: SrrTeam) -> bool {
        self.home == t || self.away == t
    }
}

/// Single round-robin on `u_1..u_{2m-1}` and `x`, one matching per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleRoundRobin {
    m: usize,
    slots: Vec<Vec<SrrGame>>,
}

impl SingleRoundRobin {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn slots(&self) -> &[Vec<SrrGame>] {
        &self.slots
    }

    /// The game `team` plays in `slot` (1-indexed).
    pub fn game(&self, team: SrrTeam, slot: usize) -> SrrGame {
        *self.slots[slot - 1].iter().find(|g| g.involves(team)).expect("every team plays every slot")
    }

    pub fn opponent(&self, team: SrrTeam, slot: usize) -> SrrTeam {
        let g = self.game(team, slot);
        if g.home == team {
            g.away
        } else {
            g.home
        }
    }

    pub fn opponent_order(&self, team: SrrTeam) -> Vec<SrrTeam> {
        (1..=self.slots.len()).map(|s| self.opponent(team, s)).collect()
    }
}

/// Opponent order of `u_k`.
fn u_order(m: usize, k: usize) -> Vec<SrrTeam> {
    let u = SrrTeam::U;
    let mut order = Vec::with_capacity(2 * m - 1);
    if k <= m {
        order.extend((2 * m - k + 1..2 * m).map(u));
        order.extend((1..k).map(u));
        order.push(SrrTeam::X);
        order.extend((k + 1..=2 * m - k).map(u));
    } else {
        order.extend((2 * m - k + 1..k).map(u));
        order.push(SrrTeam::X);
        order.extend((k + 1..2 * m).map(u));
        order.extend((1..=2 * m - k).map(u));
    }
    order
}

/// Rank of `u_i` in the host order `1, 2m-1, 2, 2m-2, ..., m-1, m+1, m`.
fn host_rank(m: usize, i: usize) -> usize {
    if i <= m {
        2 * (i - 1)
    } else {
        2 * (2 * m - i) - 1
    }
}

/// Builds the single round-robin of the construction.
///
/// Between two `u` teams the one earlier in the host order plays at home.
/// In games against `x`, `u_k` hosts for `k <= m` and visits otherwise; the
/// expansion templates fix the venues of those slots anyway.
pub fn circle_srr(m: usize) -> Result<SingleRoundRobin, TtpError> {
    if m < 1 {
        return Err(TtpError::InvalidM(m));
    }
    let orders: Vec<Vec<SrrTeam>> = (1..2 * m).map(|k| u_order(m, k)).collect();
    let mut slots = Vec::with_capacity(2 * m - 1);
    for r in 0..2 * m - 1 {
        let mut games = Vec::with_capacity(m);
        for k in 1..2 * m {
            match orders[k - 1][r] {
                SrrTeam::X => {
                    let (home, away) = if k <= m { (SrrTeam::U(k), SrrTeam::X) } else { (SrrTeam::X, SrrTeam::U(k)) };
                    games.push(SrrGame { home, away });
                }
                SrrTeam::U(j) if k < j => {
                    let (home, away) = if host_rank(m, k) < host_rank(m, j) { (k, j) } else { (j, k) };
                    games.push(SrrGame { home: SrrTeam::U(home), away: SrrTeam::U(away) });
                }
                SrrTeam::U(_) => {}
            }
        }
        slots.push(games);
    }
    Ok(SingleRoundRobin { m, slots })
}

/// A participant in an expansion template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Member {
    /// Member `0..3` of the hosting (or only) triple.
    I(usize),
    /// Member `0..3` of the visiting triple.
    J(usize),
    X,
}

use Member::{I, J, X};

type Template = [[(Member, Member); 3]; 6];

/// Two triples whose `u` game is hosted by the `I` side; pairs are (home, away).
const PAIR_TEMPLATE: Template = [
    [(I(0), J(1)), (I(1), J(2)), (J(0), I(2))],
    [(I(0), J(2)), (J(0), I(1)), (J(1), I(2))],
    [(J(0), I(0)), (J(1), I(1)), (J(2), I(2))],
    [(J(1), I(0)), (J(2), I(1)), (I(2), J(0))],
    [(J(2), I(0)), (I(1), J(0)), (I(2), J(1))],
    [(I(0), J(0)), (I(1), J(1)), (I(2), J(2))],
];

/// Triple `k <= m` against `x`; the third game of each slot is unused.
const X_TEMPLATE_LOW: [[(Member, Member); 2]; 6] = [
    [(I(0), X), (I(2), I(1))],
    [(I(0), I(2)), (I(1), X)],
    [(I(1), I(0)), (X, I(2))],
    [(I(1), I(2)), (X, I(0))],
    [(I(2), I(0)), (X, I(1))],
    [(I(0), I(1)), (I(2), X)],
];

/// Triple `k > m` against `x`.
const X_TEMPLATE_HIGH: [[(Member, Member); 2]; 6] = [
    [(X, I(0)), (I(1), I(2))],
    [(I(0), I(2)), (X, I(1))],
    [(I(0), I(1)), (I(2), X)],
    [(I(0), X), (I(2), I(1))],
    [(I(1), X), (I(2), I(0))],
    [(I(1), I(0)), (X, I(2))],
];

/// Expands the single round-robin into a double round-robin on `6m - 2`
/// teams, in construction labels.
pub fn expand(srr: &SingleRoundRobin) -> Schedule {
    let m = srr.m();
    let n = 6 * m - 2;
    let rounds = 2 * (n - 1);
    let x_team = n;
    let mut slots = vec![Slot::home(1); n * rounds];
    let mut put = |round: usize, home: usize, away: usize| {
        slots[(home - 1) * rounds + round] = Slot::home(away);
        slots[(away - 1) * rounds + round] = Slot::away(home);
    };
    let triple = |k: usize, member: usize| 3 * k - 2 + member;

    for (r, games) in srr.slots().iter().enumerate() {
        for g in games {
            match (g.home, g.away) {
                (SrrTeam::U(i), SrrTeam::U(j)) => {
                    let resolve = |mem: Member| match mem {
                        I(p) => triple(i, p),
                        J(q) => triple(j, q),
                        X => unreachable!("pair template has no x"),
                    };
                    for (s, slot) in PAIR_TEMPLATE.iter().enumerate() {
                        for &(h, a) in slot {
                            put(6 * r + s, resolve(h), resolve(a));
                        }
                    }
                }
                (SrrTeam::U(k), SrrTeam::X) | (SrrTeam::X, SrrTeam::U(k)) => {
                    let template = if k <= m { &X_TEMPLATE_LOW } else { &X_TEMPLATE_HIGH };
                    let resolve = |mem: Member| match mem {
                        I(p) => triple(k, p),
                        X => x_team,
                        J(_) => unreachable!("x template has one triple"),
                    };
                    for (s, slot) in template.iter().enumerate() {
                        for &(h, a) in slot {
                            put(6 * r + s, resolve(h), resolve(a));
                        }
                    }
                }
                (SrrTeam::X, SrrTeam::X) => unreachable!("x cannot play itself"),
            }
        }
    }
    Schedule::from_slots_unchecked(n, slots)
}

/// Placement of construction labels on the line `y_1..y_n`:
/// `t_i = y_i` for `i <= 3m-3`, `x = y_{3m-2}`, `t_i = y_{i+1}` above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineMapping {
    pub m: usize,
}

impl LineMapping {
    pub fn n(&self) -> usize {
        6 * self.m - 2
    }

    /// Line position of construction label `label` (team `n` is `x`).
    pub fn position(&self, label: usize) -> usize {
        let m = self.m;
        if label == self.n() {
            3 * m - 2
        } else if label <= 3 * m - 3 {
            label
        } else {
            label + 1
        }
    }

    /// `positions()[label-1]`, usable with [`Schedule::relabel`].
    pub fn positions(&self) -> Vec<usize> {
        (1..=self.n()).map(|c| self.position(c)).collect()
    }
}

/// The expanded schedule with team `p` standing at line position `p`.
pub fn line_ordered_expansion(m: usize) -> Result<Schedule, TtpError> {
    let s = expand(&circle_srr(m)?);
    Ok(s.relabel(&LineMapping { m }.positions()))
}

/// Closed-form bridge crossings `f_k` of the line-ordered expansion, `m >= 2`.
pub fn predicted_crossings(n: usize) -> Result<CrossingVector, TtpError> {
    if n % 6 != 4 || n < 10 {
        return Err(TtpError::NotExpanderSize(n, 2));
    }
    let m = (n + 2) / 6;
    let ni = n as i64;
    let thirds = |num: i64| {
        debug_assert_eq!(num % 3, 0, "crossing formula not integral");
        num / 3
    };
    let counts = (1..n)
        .map(|k| {
            let ki = k as i64;
            let base = 4 * ki * (ni - ki);
            let v = if k == 1 {
                thirds(8 * ni - 8)
            } else if k == 2 {
                4 * ni - 4
            } else if k == n - 1 {
                thirds(8 * ni - 2)
            } else if k == 3 * m - 2 {
                thirds(ni * ni + 6 * ni - 16)
            } else if k == 3 * m - 1 {
                thirds(ni * ni + 9 * ni - 22)
            } else if k == 3 * m {
                thirds(ni * ni + 9 * ni - 34)
            } else if k < 3 * m {
                match k % 3 {
                    1 => thirds(base + 6 * ni + 8 * ki - 20),
                    2 => thirds(base + 4 * ni + 12 * ki - 20),
                    _ => thirds(base + 4 * ni + 6 * ki - 16),
                }
            } else {
                match (k - 3 * m) % 3 {
                    1 => thirds(base + 8 * ni - 4 * ki - 22),
                    2 => thirds(base + 14 * ni - 10 * ki - 16),
                    _ => thirds(base + 3 * (4 * ni - 2 * ki - 4)),
                }
            };
            v as u64
        })
        .collect();
    Ok(CrossingVector::new(CrossingRole::Predicted, counts))
}

/// Runs the construction with line position `p` assigned to team
/// `ordering[p-1]` of `matrix`, returning the schedule in matrix labels and
/// its total distance.
pub fn line_schedule(matrix: &DistanceMatrix, ordering: &[usize], m: usize) -> Result<(Schedule, i64), TtpError> {
    if m < 1 {
        return Err(TtpError::InvalidM(m));
    }
    let n = 6 * m - 2;
    if matrix.n() != n {
        return Err(TtpError::WrongTeamCount { expected: n, found: matrix.n() });
    }
    crate::distance::check_permutation(ordering, n)?;
    let on_line = line_ordered_expansion(m)?;
    let schedule = on_line.relabel(ordering);
    let d = total_distance(&schedule, matrix)?;
    Ok((schedule, d))
}
