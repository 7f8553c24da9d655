//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

mod oracle;

use std::collections::HashSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ttp_core::analysis::{gap6_witness, tuple_of, verify_theorem4, Dominator};
use ttp_core::bounds::{approximation_ratio_bound, six_team_optimum, trivial_lower_bound};
use ttp_core::enumerate::{
    bundled_catalog, canonicalize, enumerate_295, enumerate_feasible_4, optimal_4, phi, psi, s1_fixed_points,
    SixTeamCatalog,
};
use ttp_core::expander::{circle_srr, expand, line_ordered_expansion, predicted_crossings};
use ttp_core::solver::{fit_line, generate, solve6, solve_expander, solve_expander_with_ordering, CandidateScope, InstanceKind};
use ttp_core::{bridge_crossings, total_distance, validate, DistanceMatrix, LinearInstance, Schedule, SetLabel};

/// Every numeric comparison is exact unless stated otherwise.
const TOLERANCE: i64 = 0;
/// Allowed relative excess for the 10/16-team external rows, in percent.
const EXTERNAL_TOLERANCE_PCT: i64 = 2;
const SEED: u64 = 20120101;
const ORACLE_TRIALS: usize = 100;
const IDENTITY_PAIRS: usize = 1000;

const FAST_LIMIT: Duration = Duration::from_secs(1);
const MINUTE_LIMIT: Duration = Duration::from_secs(60);
const HOUR_LIMIT: Duration = Duration::from_secs(3600);

enum Status {
    Pass,
    Fail,
    /// Checked what could be checked; the rest needs data that is absent.
    Partial,
}

struct Outcome {
    id: usize,
    title: &'static str,
    status: Status,
    detail: String,
}

fn outcome(id: usize, title: &'static str, checks: Vec<(bool, String)>) -> Outcome {
    let failed: Vec<&String> = checks.iter().filter(|(ok, _)| !ok).map(|(_, m)| m).collect();
    let (status, detail) = if failed.is_empty() {
        (Status::Pass, checks.iter().map(|(_, m)| m.as_str()).collect::<Vec<_>>().join("; "))
    } else {
        (Status::Fail, failed.iter().map(|m| m.as_str()).collect::<Vec<_>>().join("; "))
    };
    Outcome { id, title, status, detail }
}

fn eq(what: &str, got: i64, want: i64) -> (bool, String) {
    ((got - want).abs() <= TOLERANCE, format!("{what} = {got} (want {want})"))
}

fn within(what: &str, took: Duration, limit: Duration) -> (bool, String) {
    (took < limit, format!("{what} in {:.2?} (limit {:?})", took, limit))
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)).expect("fixture")
}

fn sched(name: &str) -> Schedule {
    Schedule::parse(&fixture(name)).expect("fixture parses")
}

fn shared_data(name: &str) -> Option<String> {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)).ok()
}

fn c1() -> Outcome {
    let t = Instant::now();
    let all = enumerate_feasible_4();
    let took = t.elapsed();
    outcome(
        1,
        "4-team feasibility census",
        vec![
            eq("feasible 4-team schedules", all.len() as i64, 1920),
            (all.iter().all(|s| validate(s).is_feasible()), "all validate".into()),
            within("enumeration", took, FAST_LIMIT),
        ],
    )
}

fn c2() -> Outcome {
    let t = Instant::now();
    let canon = optimal_4(true);
    let full = optimal_4(false);
    let took = t.elapsed();
    let line4 = sched("line4_optimal.sched");
    outcome(
        2,
        "4-team optima",
        vec![
            eq("canonical optima", canon.len() as i64, 18),
            eq("all optima", full.len() as i64, 36),
            (full.iter().all(|s| bridge_crossings(s).counts == [8, 8, 8]), "all cross (8,8,8)".into()),
            (canon.contains(&line4), "optimal 4-team line fixture present".into()),
            within("both enumerations", took, FAST_LIMIT),
        ],
    )
}

fn c3(catalog: &SixTeamCatalog, took: Duration) -> Outcome {
    let counts: Vec<i64> = catalog.counts().iter().map(|&(_, c)| c as i64).collect();
    let all_valid = catalog.iter().all(|(_, s)| validate(s).is_feasible());
    let on_target = catalog.iter().all(|(l, s)| bridge_crossings(s).counts == l.target());
    outcome(
        3,
        "6-team census of optimal families",
        vec![
            (counts == [223, 4, 8, 24, 4, 8, 24], format!("counts {counts:?}")),
            eq("total", catalog.len() as i64, 295),
            (all_valid, "all validate".into()),
            (on_target, "every member matches its target".into()),
            (*catalog == bundled_catalog(), "bundled fixture identical".into()),
            within("enumeration", took, HOUR_LIMIT),
        ],
    )
}

fn c4(catalog: &SixTeamCatalog) -> Outcome {
    let fixed = s1_fixed_points(catalog.get(SetLabel::S1));
    let symmetric = sched("s1_symmetric.sched");
    let others: usize = SetLabel::SIX[1..].iter().map(|&l| s1_fixed_points(catalog.get(l)).len()).sum();
    let mut mirrored = true;
    for (a, b) in [(SetLabel::S2, SetLabel::S5), (SetLabel::S3, SetLabel::S6), (SetLabel::S4, SetLabel::S7)] {
        let mut images: Vec<Schedule> = catalog.get(a).iter().map(|s| canonicalize(&phi(s))).collect();
        images.sort_by_cached_key(Schedule::encode);
        mirrored &= images == catalog.get(b);
    }
    outcome(
        4,
        "symmetry",
        vec![
            eq("S1 fixed points", fixed.len() as i64, 13),
            (fixed.contains(&symmetric), "symmetric S1 fixture among them".into()),
            eq("fixed points in S2..S7", others as i64, 0),
            (mirrored, "S5, S6, S7 are the label-reversed S2, S3, S4".into()),
        ],
    )
}

fn c5(catalog: &SixTeamCatalog) -> Outcome {
    let t = Instant::now();
    let (vectors, schedules) = oracle::feasible_crossing_vectors();
    let took = t.elapsed();
    let vectors: Vec<[i64; 5]> = vectors.iter().map(|&v| oracle::unpack(v).map(|x| x as i64)).collect();
    let present: HashSet<[i64; 5]> = vectors.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = Vec::new();
    for _ in 0..ORACLE_TRIALS {
        let d: Vec<i64> = (0..5).map(|_| rng.gen_range(0..=20)).collect();
        let opt = six_team_optimum(&LinearInstance::new(d.clone())).expect("six teams");
        let brute = vectors.iter().map(|c| c.iter().zip(&d).map(|(a, b)| a * b).sum::<i64>()).min().unwrap();
        let attained = opt.chosen.iter().any(|l| {
            let target: [i64; 5] = std::array::from_fn(|k| l.target()[k] as i64);
            present.contains(&target) && !catalog.get(*l).is_empty()
        });
        if (brute - opt.value).abs() > TOLERANCE || !attained {
            mismatches.push(format!("{d:?}: brute {brute}, formula {}", opt.value));
        }
    }
    let checks = vec![
        (mismatches.is_empty(), format!("{ORACLE_TRIALS} gap vectors agree {}", mismatches.join(", "))),
        (
            true,
            format!("oracle searched {schedules} schedules, {} crossing vectors, {:.0?}", vectors.len(), took),
        ),
    ];
    outcome(5, "line optimum against brute force", checks)
}

fn c6() -> Outcome {
    let v = |d: Vec<i64>| six_team_optimum(&LinearInstance::new(d)).unwrap().value;
    outcome(
        6,
        "closed-form 6-team values",
        vec![
            eq("NL6 gaps", v(vec![605, 521, 257, 80, 337]), 28424),
            eq("LINE6", v(vec![1; 5]), 84),
            eq("INCR6", v(vec![1, 2, 3, 4, 5]), 250),
        ],
    )
}

/// Opponents of the m = 2 expansion, one row per team, `0` standing for `x`.
const EXPANDER10_OPPONENTS: [[usize; 18]; 10] = [
    [0, 3, 2, 0, 3, 2, 5, 6, 4, 5, 6, 4, 8, 9, 7, 8, 9, 7],
    [3, 0, 1, 3, 0, 1, 6, 4, 5, 6, 4, 5, 9, 7, 8, 9, 7, 8],
    [2, 1, 0, 2, 1, 0, 4, 5, 6, 4, 5, 6, 7, 8, 9, 7, 8, 9],
    [9, 8, 7, 9, 8, 7, 3, 2, 1, 3, 2, 1, 0, 6, 5, 0, 6, 5],
    [7, 9, 8, 7, 9, 8, 1, 3, 2, 1, 3, 2, 6, 0, 4, 6, 0, 4],
    [8, 7, 9, 8, 7, 9, 2, 1, 3, 2, 1, 3, 5, 4, 0, 5, 4, 0],
    [5, 6, 4, 5, 6, 4, 0, 9, 8, 0, 9, 8, 3, 2, 1, 3, 2, 1],
    [6, 4, 5, 6, 4, 5, 9, 0, 7, 9, 0, 7, 1, 3, 2, 1, 3, 2],
    [4, 5, 6, 4, 5, 6, 8, 7, 0, 8, 7, 0, 2, 1, 3, 2, 1, 3],
    [1, 2, 3, 1, 2, 3, 7, 8, 9, 7, 8, 9, 4, 5, 6, 4, 5, 6],
];

fn c7() -> Outcome {
    let mut checks = Vec::new();
    for m in 1..=8 {
        let s = expand(&circle_srr(m).unwrap());
        checks.push((validate(&s).is_feasible(), format!("m={m} feasible")));
    }
    let s = expand(&circle_srr(2).unwrap());
    let opponents_match = (1..=10).all(|t| {
        (1..=18).all(|r| {
            let o = s.slot(t, r).opponent;
            let want = EXPANDER10_OPPONENTS[t - 1][r - 1];
            o == if want == 0 { 10 } else { want }
        })
    });
    checks.push((opponents_match, "m=2 opponents match the reference grid".into()));
    checks.push((s == sched("expander10.sched"), "m=2 equals the fixture with venues".into()));
    outcome(7, "expander feasibility", checks)
}

fn c8() -> Outcome {
    let mut checks = Vec::new();
    for m in 2..=6 {
        let n = 6 * m - 2;
        let actual = bridge_crossings(&line_ordered_expansion(m).unwrap()).counts;
        checks.push((actual == predicted_crossings(n).unwrap().counts, format!("n={n} counted = predicted")));
    }
    let ten = predicted_crossings(10).unwrap().counts;
    checks.push((ten == [24, 36, 42, 48, 56, 52, 38, 36, 26], format!("n=10 vector {ten:?}")));
    outcome(8, "predicted crossings", checks)
}

fn c9() -> Outcome {
    let four_thirds = Ratio::new(4, 3);
    let threshold = Ratio::new(13, 10);
    let mut checks = Vec::new();
    let mut worst = Ratio::new(0, 1);
    for m in 3..=20 {
        let n = 6 * m - 2;
        let r = approximation_ratio_bound(n).unwrap();
        worst = worst.max(r.max);
        checks.push((r.max < four_thirds, format!("n={n} max {}", r.max)));
        if n >= 94 {
            checks.push((r.ratios[2] > threshold, format!("n={n} k=3 ratio {}", r.ratios[2])));
        }
    }
    let ok = checks.iter().all(|(b, _)| *b);
    let detail = if ok { vec![(true, format!("m=3..20 below 4/3, worst {worst}; k=3 above 13/10 for n>=94"))] } else { checks };
    outcome(9, "approximation ratio", detail)
}

fn c10(catalog: &SixTeamCatalog) -> Outcome {
    let mut checks = Vec::new();
    for (kind, want) in [(InstanceKind::Circ, 64), (InstanceKind::Con, 43), (InstanceKind::Line, 84)] {
        let m = generate(kind, 6).unwrap();
        let ord = fit_line(&m, SEED, 50).permutation;
        let r = solve6(&m, &ord, CandidateScope::ArgminSets, catalog).unwrap();
        checks.push(eq(&format!("{kind}6"), r.best_distance, want));
    }
    for (kind, n, want) in [(InstanceKind::Con, 10, 128), (InstanceKind::Con, 16, 334)] {
        let r = solve_expander(&generate(kind, n).unwrap(), SEED, 50).unwrap();
        checks.push(eq(&format!("{kind}{n}"), r.best_distance, want));
    }
    let id: Vec<usize> = (1..=10).collect();
    let r = solve_expander_with_ordering(&generate(InstanceKind::Circ, 10).unwrap(), &id).unwrap();
    checks.push(eq("CIRC10 identity ordering", r.best_distance, 276));
    outcome(10, "pipeline on synthetic instances", checks)
}

fn c11(catalog: &SixTeamCatalog) -> Outcome {
    let mut checks = Vec::new();
    let mut missing = Vec::new();
    for (file, name, want, label) in [
        ("nl6.dist", "NL6", 23916, SetLabel::S4),
        ("super6.dist", "SUPER6", 130365, SetLabel::S3),
        ("galaxy6.dist", "GALAXY6", 1365, SetLabel::S1),
    ] {
        let Some(text) = shared_data(file) else {
            missing.push(name);
            continue;
        };
        let m = DistanceMatrix::parse(&text).unwrap();
        let r = solve6(&m, &fit_line(&m, SEED, 50).permutation, CandidateScope::ArgminSets, catalog).unwrap();
        let best_label = r.candidates.iter().filter(|c| c.distance == r.best_distance).map(|c| c.label).min();
        checks.push(eq(name, r.best_distance, want));
        checks.push((best_label == Some(label), format!("{name} best in {best_label:?} (want {label})")));
    }
    // reported only: the ordering behind these rows is not known
    let mut notes = Vec::new();
    for (file, name, reference) in [
        ("nl10.dist", "NL10", 63850),
        ("super10.dist", "SUPER10", 361924),
        ("galaxy10.dist", "GALAXY10", 4862),
        ("nl16.dist", "NL16", 286439),
        ("galaxy16.dist", "GALAXY16", 15429),
    ] {
        let Some(text) = shared_data(file) else {
            missing.push(name);
            continue;
        };
        let m = DistanceMatrix::parse(&text).unwrap();
        let got = solve_expander(&m, SEED, 50).unwrap().best_distance;
        let ok = got * 100 <= reference * (100 + EXTERNAL_TOLERANCE_PCT);
        notes.push(format!("{name} {got} vs {reference} {}", if ok { "within" } else { "outside" }));
    }
    let mut o = outcome(11, "pipeline on benchmark fixtures", checks);
    if !notes.is_empty() {
        o.detail.push_str(&format!("; reported: {}", notes.join(", ")));
    }
    if !missing.is_empty() {
        o.detail.push_str(&format!("; not run, fixture missing: {}", missing.join(", ")));
        if matches!(o.status, Status::Pass) {
            o.status = Status::Partial;
        }
    }
    o
}

fn c12() -> Outcome {
    let t = Instant::now();
    let r = verify_theorem4();
    let took = t.elapsed();
    let line4 = tuple_of(&sched("line4_optimal.sched")).unwrap();
    let groups: Vec<&Vec<_>> = r
        .certificates
        .iter()
        .filter_map(|c| match &c.dominator {
            Dominator::Average { members, .. } => Some(members),
            Dominator::Single(_) => None,
        })
        .collect();
    let mean_ok = r.certificates.iter().all(|c| match &c.dominator {
        Dominator::Average { mean, .. } => {
            let coeffs = mean.iter().map(|q| q * 6).collect::<Vec<_>>();
            // (7/3, 17/6, 17/6, 17/6, 17/6, 10/3) up to the tuple's relabelling
            let mut sorted: Vec<i64> = coeffs.iter().map(|q| q.to_integer()).collect();
            sorted.sort();
            sorted == [14, 17, 17, 17, 17, 20]
        }
        Dominator::Single(_) => true,
    });
    outcome(
        12,
        "4-team gap is zero",
        vec![
            eq("|A|", r.a_count as i64, 246),
            eq("|L|", r.l_count as i64, 36),
            (r.l_subset_of_a, "L inside A".into()),
            eq("single dominators", r.single as i64, 204),
            eq("averaged", r.averaged as i64, 6),
            (groups.iter().all(|g| g.len() == 12), "each average uses 12 members".into()),
            (mean_ok, "averages are (7/3,17/6,17/6,17/6,17/6,10/3) up to relabelling".into()),
            (r.uncertified.is_empty() && r.success(), "all certificates re-verify exactly".into()),
            (line4.coeffs == [4, 2, 2, 3, 1, 5], "line fixture tuple (4,2,2,3,1,5)".into()),
            within("verification", took, MINUTE_LIMIT),
        ],
    )
}

fn c13(catalog: &SixTeamCatalog) -> Outcome {
    let t = Instant::now();
    let g = gap6_witness(catalog);
    let took = t.elapsed();
    outcome(
        13,
        "6-team gap witness",
        vec![
            (g.ttp_schedule_feasible, "43-trip schedule feasible".into()),
            eq("TTP value", g.ttp_value, 43),
            eq("line-schedule value", g.ld_value, 44),
            eq("schedules attaining it", g.achievers as i64, 36),
            (g.min_trips >= 43, format!("fewest trips {}", g.min_trips)),
            eq("evaluations", g.evaluations as i64, 295 * 720),
            within("sweep", took, MINUTE_LIMIT),
        ],
    )
}

fn c14(catalog: &SixTeamCatalog) -> Outcome {
    let mut pool: Vec<Schedule> = enumerate_feasible_4();
    pool.extend(catalog.iter().map(|(_, s)| s.clone()));
    pool.extend((2..=3).map(|m| line_ordered_expansion(m).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut identity_ok = true;
    for _ in 0..IDENTITY_PAIRS {
        let s = &pool[rng.gen_range(0..pool.len())];
        let line = LinearInstance::new((1..s.n()).map(|_| rng.gen_range(0..=1000)).collect());
        identity_ok &= total_distance(s, &line.matrix()).unwrap() == bridge_crossings(s).dot(&line);
    }
    let involutions = pool.iter().all(|s| psi(&psi(s)) == *s && phi(&phi(s)) == *s);
    let symmetric = (2..=50).all(|h| {
        let l = trivial_lower_bound(2 * h).unwrap().counts;
        l.iter().eq(l.iter().rev())
    });
    let metric = (2..=30).all(|h| generate(InstanceKind::Circ, 2 * h).unwrap().is_metric());
    outcome(
        14,
        "properties",
        vec![
            (identity_ok, format!("distance = crossings . gaps on {IDENTITY_PAIRS} pairs")),
            (involutions, format!("psi, phi involutions on {} schedules", pool.len())),
            (symmetric, "lower bound symmetric for n=4..100".into()),
            (metric, "CIRC metric for n=4..60".into()),
        ],
    )
}

fn main() {
    let t = Instant::now();
    let catalog = enumerate_295();
    let enum_time = t.elapsed();

    let outcomes = vec![
        c1(),
        c2(),
        c3(&catalog, enum_time),
        c4(&catalog),
        c5(&catalog),
        c6(),
        c7(),
        c8(),
        c9(),
        c10(&catalog),
        c11(&catalog),
        c12(),
        c13(&catalog),
        c14(&catalog),
    ];

    println!();
    let mut failed = 0;
    for o in &outcomes {
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Partial => "PARTIAL",
        };
        println!("criterion {:>2} {:<7} {}: {}", o.id, tag, o.title, o.detail);
    }
    println!("acceptance: {} of {} criteria failed", failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
