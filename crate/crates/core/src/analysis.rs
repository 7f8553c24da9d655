//! Optimality-gap tools: symbolic 4-team distances with domination
//! certificates, and the 6-team gap instance.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::distance::{itinerary, total_distance, DistanceMatrix};
use crate::enumerate::{enumerate_feasible_4, optimal_4, SixTeamCatalog};
use crate::error::TtpError;
use crate::schedule::Schedule;
use crate::validate::validate;

type Q = Ratio<i64>;

/// Pairs in coefficient order.
pub const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn pair_index(a: usize, b: usize) -> usize {
    let key = (a.min(b), a.max(b));
    PAIRS.iter().position(|&p| p == key).expect("distinct teams of four")
}

/// Total distance of a 4-team schedule as coefficients on
/// `(D12, D13, D14, D23, D24, D34)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistancePolynomial {
    pub coeffs: [i64; 6],
}

impl DistancePolynomial {
    pub fn evaluate(&self, matrix: &DistanceMatrix) -> i64 {
        PAIRS.iter().zip(&self.coeffs).map(|(&(i, j), &c)| c * matrix.get(i, j)).sum()
    }

    /// Number of trips between distinct venues.
    pub fn trips(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for DistancePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coeffs;
        write!(f, "({},{},{},{},{},{})", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

pub fn tuple_of(schedule: &Schedule) -> Result<DistancePolynomial, TtpError> {
    if schedule.n() != 4 {
        return Err(TtpError::WrongTeamCount { expected: 4, found: schedule.n() });
    }
    let mut coeffs = [0i64; 6];
    for t in 1..=4 {
        for w in itinerary(schedule, t).windows(2) {
            coeffs[pair_index(w[0], w[1])] += 1;
        }
    }
    Ok(DistancePolynomial { coeffs })
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 1..=4 {
        for b in (1..=4).filter(|&b| b != a) {
            for c in (1..=4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 10 - a - b - c]);
            }
        }
    }
    out
}

/// `A`: tuples of every feasible 4-team schedule. `L`: tuples of every
/// relabelling of the line-optimal schedules.
pub fn tuple_sets() -> (BTreeSet<DistancePolynomial>, BTreeSet<DistancePolynomial>) {
    let a = enumerate_feasible_4().iter().map(|s| tuple_of(s).expect("four teams")).collect();
    let perms = permutations4();
    let l = optimal_4(true)
        .iter()
        .flat_map(|s| perms.iter().map(move |p| tuple_of(&s.relabel(p)).expect("four teams")))
        .collect();
    (a, l)
}

/// `D_ik + D_kj - D_ij`, written as the triple `(i, k, j)` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slack {
    pub i: usize,
    pub k: usize,
    pub j: usize,
}

impl Slack {
    pub fn all() -> Vec<Slack> {
        PAIRS
            .iter()
            .flat_map(|&(i, j)| (1..=4).filter(move |&k| k != i && k != j).map(move |k| Slack { i, k, j }))
            .collect()
    }

    pub fn vector(&self) -> [i64; 6] {
        let mut v = [0; 6];
        v[pair_index(self.i, self.k)] += 1;
        v[pair_index(self.k, self.j)] += 1;
        v[pair_index(self.i, self.j)] -= 1;
        v
    }
}

impl fmt::Display for Slack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}{}+D{}{}-D{}{}", self.i, self.k, self.k, self.j, self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominator {
    Single(DistancePolynomial),
    /// The mean of several members of `L`.
    Average { members: Vec<DistancePolynomial>, mean: [Q; 6] },
}

impl Dominator {
    pub fn coeffs(&self) -> [Q; 6] {
        match self {
            Dominator::Single(p) => p.coeffs.map(Q::from_integer),
            Dominator::Average { mean, .. } => *mean,
        }
    }
}

/// `dominated - dominator = sum of multiplier * slack`, all multipliers
/// nonnegative, so the dominated tuple is never cheaper on a metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationCertificate {
    pub dominated: DistancePolynomial,
    pub dominator: Dominator,
    pub multipliers: Vec<(Slack, Q)>,
}

impl DominationCertificate {
    /// Re-expands the multipliers and compares with the difference exactly.
    pub fn verify(&self) -> bool {
        let target = difference(&self.dominated, &self.dominator.coeffs());
        let mut sum = [Q::zero(); 6];
        for (g, lambda) in &self.multipliers {
            if lambda.is_negative() {
                return false;
            }
            for (s, x) in sum.iter_mut().zip(g.vector()) {
                *s += *lambda * x;
            }
        }
        sum == target
    }
}

fn difference(p: &DistancePolynomial, q: &[Q; 6]) -> [Q; 6] {
    std::array::from_fn(|i| Q::from_integer(p.coeffs[i]) - q[i])
}

/// A 6-subset of the slack generators with its integer inverse data.
struct Basis {
    members: [usize; 6],
    /// Adjugate of the matrix whose columns are the members.
    adj: [[i64; 6]; 6],
    det: i64,
}

fn det_and_adjugate(m: &[[i64; 6]; 6]) -> (i64, [[i64; 6]; 6]) {
    fn det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .filter(|&c| m[0][c] != 0)
            .map(|c| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum()
    }
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.to_vec()).collect();
    let d = det(&rows);
    let mut adj = [[0i64; 6]; 6];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            // adj[i][j] = (-1)^(i+j) * minor(j, i)
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != j)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            *cell = sign * det(&minor);
        }
    }
    (d, adj)
}

fn bases(gens: &[[i64; 6]]) -> Vec<Basis> {
    let mut out = Vec::new();
    let g = gens.len();
    let mut idx = [0usize; 6];
    fn rec(start: usize, depth: usize, g: usize, idx: &mut [usize; 6], gens: &[[i64; 6]], out: &mut Vec<Basis>) {
        if depth == 6 {
            let mut m = [[0i64; 6]; 6];
            for (col, &gi) in idx.iter().enumerate() {
                for (row, line) in m.iter_mut().enumerate() {
                    line[col] = gens[gi][row];
                }
            }
            let (det, adj) = det_and_adjugate(&m);
            if det != 0 {
                out.push(Basis { members: *idx, adj, det });
            }
            return;
        }
        for i in start..g {
            idx[depth] = i;
            rec(i + 1, depth + 1, g, idx, gens, out);
        }
    }
    rec(0, 0, g, &mut idx, gens, &mut out);
    out
}

/// Certifies `v` as a nonnegative combination of the slack generators, if it is one.
struct ConeTester {
    gens: Vec<Slack>,
    bases: Vec<Basis>,
}

impl ConeTester {
    fn new() -> Self {
        let gens = Slack::all();
        let vectors: Vec<[i64; 6]> = gens.iter().map(Slack::vector).collect();
        let bases = bases(&vectors);
        ConeTester { gens, bases }
    }

    fn certify(&self, v: &[Q; 6]) -> Option<Vec<(Slack, Q)>> {
        if v.iter().all(Zero::is_zero) {
            return Some(Vec::new());
        }
        // a feasible cone combination has a basic one supported on a basis
        for b in &self.bases {
            let lambda: [Q; 6] = std::array::from_fn(|i| {
                let s: Q = (0..6).map(|j| v[j] * b.adj[i][j]).sum();
                s / b.det
            });
            if lambda.iter().all(|x| !x.is_negative()) {
                return Some(
                    b.members
                        .iter()
                        .zip(lambda)
                        .filter(|(_, l)| !l.is_zero())
                        .map(|(&g, l)| (self.gens[g], l))
                        .collect(),
                );
            }
        }
        None
    }
}

/// Certifies `dominated` against a fixed `dominator`, if possible.
pub fn certify_against(dominated: &DistancePolynomial, dominator: Dominator) -> Option<DominationCertificate> {
    let tester = ConeTester::new();
    let multipliers = tester.certify(&difference(dominated, &dominator.coeffs()))?;
    Some(DominationCertificate { dominated: *dominated, dominator, multipliers })
}

#[derive(Debug, Clone)]
pub struct Theorem4Report {
    pub a_count: usize,
    pub l_count: usize,
    pub l_subset_of_a: bool,
    /// Certificates for every member of `A` outside `L`.
    pub certificates: Vec<DominationCertificate>,
    pub single: usize,
    pub averaged: usize,
    pub uncertified: Vec<DistancePolynomial>,
}

impl Theorem4Report {
    pub fn success(&self) -> bool {
        self.l_subset_of_a && self.uncertified.is_empty() && self.certificates.iter().all(|c| c.verify())
    }
}

const COMPLEMENT: [usize; 6] = [5, 4, 3, 2, 1, 0];

/// Members of `L` averaged against a tuple no single member dominates:
/// those with the fewest trips that are lighter on the tuple's cheapest
/// pair than on the complementary pair.
fn averaging_group(t: &DistancePolynomial, l: &BTreeSet<DistancePolynomial>) -> Vec<DistancePolynomial> {
    let p = (0..6).min_by_key(|&i| t.coeffs[i]).expect("six entries");
    let fewest = l.iter().map(DistancePolynomial::trips).min().unwrap_or(0);
    l.iter().filter(|m| m.trips() == fewest && m.coeffs[p] < m.coeffs[COMPLEMENT[p]]).copied().collect()
}

/// Shows every feasible 4-team tuple is dominated on metrics by the line optima.
pub fn verify_theorem4() -> Theorem4Report {
    let (a, l) = tuple_sets();
    let tester = ConeTester::new();
    let outside: Vec<&DistancePolynomial> = a.iter().filter(|t| !l.contains(t)).collect();
    let results: Vec<Result<DominationCertificate, DistancePolynomial>> = outside
        .par_iter()
        .map(|&t| {
            for m in &l {
                if let Some(mult) = tester.certify(&difference(t, &m.coeffs.map(Q::from_integer))) {
                    return Ok(DominationCertificate { dominated: *t, dominator: Dominator::Single(*m), multipliers: mult });
                }
            }
            let members = averaging_group(t, &l);
            if members.is_empty() {
                return Err(*t);
            }
            let count = members.len() as i64;
            let mean: [Q; 6] = std::array::from_fn(|i| Q::new(members.iter().map(|m| m.coeffs[i]).sum(), count));
            match tester.certify(&difference(t, &mean)) {
                Some(mult) => Ok(DominationCertificate {
                    dominated: *t,
                    dominator: Dominator::Average { members, mean },
                    multipliers: mult,
                }),
                None => Err(*t),
            }
        })
        .collect();
    let mut certificates = Vec::new();
    let mut uncertified = Vec::new();
    for r in results {
        match r {
            Ok(c) => certificates.push(c),
            Err(t) => uncertified.push(t),
        }
    }
    let single = certificates.iter().filter(|c| matches!(c.dominator, Dominator::Single(_))).count();
    Theorem4Report {
        a_count: a.len(),
        l_count: l.len(),
        l_subset_of_a: l.is_subset(&a),
        averaged: certificates.len() - single,
        single,
        certificates,
        uncertified,
    }
}

/// The 6-team instance with `D12 = D56 = 2` and every other distance 1.
pub fn gap6_instance() -> DistanceMatrix {
    DistanceMatrix::from_fn(6, |i, j| if (i, j) == (1, 2) || (i, j) == (5, 6) { 2 } else { 1 }).expect("valid matrix")
}

/// A feasible 43-trip schedule that never travels the two long edges.
pub fn gap6_ttp_schedule() -> Schedule {
    Schedule::parse(include_str!("../data/gap6_ttp.sched")).expect("bundled fixture parses")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub ttp_schedule_feasible: bool,
    pub ttp_value: i64,
    /// Best distance over every catalog schedule under every relabelling.
    pub ld_value: i64,
    /// Catalog schedules with some relabelling at `ld_value`.
    pub achievers: usize,
    /// Fewest trips of any catalog schedule.
    pub min_trips: i64,
    pub evaluations: usize,
}

fn permutations6() -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(720);
    let mut p: Vec<usize> = (1..=6).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(p.clone());
            return;
        }
        heap(k - 1, p, out);
        for i in 0..k - 1 {
            if k % 2 == 0 {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
            heap(k - 1, p, out);
        }
    }
    heap(6, &mut p, &mut out);
    out
}

/// Compares the best schedule overall with the best line-optimal one on the gap instance.
pub fn gap6_witness(catalog: &SixTeamCatalog) -> GapReport {
    let gamma = gap6_instance();
    let ttp = gap6_ttp_schedule();
    let perms = permutations6();
    let members: Vec<&Schedule> = catalog.iter().map(|(_, s)| s).collect();
    let con = DistanceMatrix::from_fn(6, |_, _| 1).expect("valid matrix");
    let per_schedule: Vec<(i64, i64)> = members
        .par_iter()
        .map(|s| {
            let best = perms
                .iter()
                .map(|p| total_distance(&s.relabel(p), &gamma).expect("six teams"))
                .min()
                .expect("720 relabellings");
            (best, total_distance(s, &con).expect("six teams"))
        })
        .collect();
    let ld_value = per_schedule.iter().map(|&(b, _)| b).min().unwrap_or(i64::MAX);
    GapReport {
        ttp_schedule_feasible: validate(&ttp).is_feasible(),
        ttp_value: total_distance(&ttp, &gamma).expect("six teams"),
        ld_value,
        achievers: per_schedule.iter().filter(|&&(b, _)| b == ld_value).count(),
        min_trips: per_schedule.iter().map(|&(_, t)| t).min().unwrap_or(0),
        evaluations: members.len() * perms.len(),
    }
}
