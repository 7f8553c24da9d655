//! `ttp`: command-line harness for the ttp-core toolkit.
//!
//! Exit codes: 0 on success, 1 when a schedule is infeasible or a check
//! fails, 2 on usage, I/O or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ttp_core::analysis::{gap6_witness, verify_theorem4, Dominator};
use ttp_core::bounds::{approximation_ratio_bound, four_team_optimum, six_team_optimum, trivial_lower_bound};
use ttp_core::enumerate::{
    bundled_catalog, enumerate_295, enumerate_feasible_4, enumerate_set, optimal_4, parse_bundle, write_bundle,
    SixTeamCatalog,
};
use ttp_core::expander::{line_ordered_expansion, predicted_crossings};
use ttp_core::solver::{
    fit_line, generate, solve6, solve_expander, solve_expander_with_ordering, CandidateScope, InstanceKind, SolveReport,
};
use ttp_core::{bridge_crossings, total_distance, validate, DistanceMatrix, LinearInstance, Schedule, SetLabel};

#[derive(Parser)]
#[command(name = "ttp", version, about = "Traveling tournament schedules on line metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output style on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the result table as TSV to this file.
    #[arg(long, global = true)]
    summary: Option<PathBuf>,
    /// Worker threads for parallel steps (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Check a schedule against the tournament rules.
    Validate {
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Total distance and bridge crossings of a schedule.
    Evaluate {
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Lower bounds for `n` teams, or the line optimum for given gaps.
    Bound {
        #[arg(long, required_unless_present = "gaps")]
        n: Option<usize>,
        /// Gap lengths d1..d(n-1), comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "n")]
        gaps: Option<Vec<i64>>,
    },
    /// Enumerate feasible (or line-optimal) 4-team schedules.
    Enumerate4 {
        #[arg(long)]
        optimal: bool,
        /// With --optimal, keep only schedules where team 2 hosts the first 1-2 game.
        #[arg(long, requires = "optimal")]
        canonical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the optimal 6-team schedule families and write the bundle.
    Enumerate6 {
        /// Only this family (S1..S7).
        #[arg(long)]
        set: Option<SetLabel>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the expander schedule on 6m - 2 teams.
    Expander {
        #[arg(long)]
        m: usize,
        /// Evaluate the schedule on this matrix.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        placement: Placement,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the optimal line schedules of a 6-team matrix.
    Solve6 {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        placement: Placement,
        #[arg(long, default_value = "argmin")]
        scope: CandidateScope,
        /// Bundle of candidate schedules; defaults to the built-in catalog.
        #[arg(long)]
        bundle: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a line to the matrix and build the expander schedule along it.
    SolveExpander {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        placement: Placement,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best schedule versus best line schedule on the 6-team gap instance.
    Gap {
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Certify every feasible 4-team distance tuple against the line optima.
    Theorem4 {
        /// Write every certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic distance matrix.
    Generate {
        #[arg(long)]
        kind: InstanceKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Placement {
    /// Team at each line position, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "identity")]
    ordering: Option<Vec<usize>>,
    /// Place team p at position p.
    #[arg(long)]
    identity: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    restarts: usize,
}

/// A failed command: message and exit code.
struct Failure(String, u8);

impl<E: std::fmt::Display> From<(&Path, E)> for Failure {
    fn from((path, e): (&Path, E)) -> Self {
        Failure(format!("{}: {e}", path.display()), 2)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into(), 2)
}

/// Rows of output: a header and one or more records.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn single(pairs: Vec<(&'static str, String)>) -> Self {
        let (header, row): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Table { header, rows: vec![row] }
    }

    fn tsv(&self) -> String {
        let mut s = self.header.join("\t");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join("\t"));
            s.push('\n');
        }
        s
    }

    fn text(&self) -> String {
        if self.rows.len() == 1 {
            let w = self.header.iter().map(|h| h.len()).max().unwrap_or(0);
            return self.header.iter().zip(&self.rows[0]).map(|(h, v)| format!("{h:<w$}  {v}\n")).collect();
        }
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| self.rows.iter().map(|r| r[i].len()).chain([self.header[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: Vec<&str>| {
            let mut s: String = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}  ")).collect();
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        let mut s = line(self.header.clone());
        for r in &self.rows {
            s.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        s
    }
}

struct Outcome {
    table: Table,
    code: u8,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome { table, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::from((path, e)))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::from((path, e)))
}

fn load_schedule(path: &Path) -> Result<Schedule, Failure> {
    Schedule::parse(&read(path)?).map_err(|e| Failure::from((path, e)))
}

fn load_matrix(path: &Path) -> Result<DistanceMatrix, Failure> {
    DistanceMatrix::parse(&read(path)?).map_err(|e| Failure::from((path, e)))
}

fn load_catalog(bundle: &Option<PathBuf>) -> Result<SixTeamCatalog, Failure> {
    match bundle {
        None => Ok(bundled_catalog()),
        Some(p) => parse_bundle(&read(p)?).map_err(|e| Failure::from((p.as_path(), e))),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn schedules_text(list: &[Schedule]) -> String {
    list.iter().map(Schedule::to_file_string).collect::<Vec<_>>().join("\n")
}

/// The ordering to use: explicit, identity, or fitted to the matrix.
fn resolve_ordering(p: &Placement, matrix: &DistanceMatrix) -> Vec<usize> {
    if let Some(o) = &p.ordering {
        o.clone()
    } else if p.identity {
        (1..=matrix.n()).collect()
    } else {
        fit_line(matrix, p.seed, p.restarts).permutation
    }
}

fn report_rows(r: &SolveReport) -> Vec<(&'static str, String)> {
    vec![
        ("ordering", join(&r.ordering)),
        ("gaps", join(r.gaps.gaps())),
        ("relaxation", r.relaxation_value.to_string()),
        ("sets", join(&r.labels)),
        ("candidates", r.candidates.len().to_string()),
        ("best", r.best_distance.to_string()),
    ]
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Validate { schedule } => {
            let s = load_schedule(schedule)?;
            let report = validate(&s);
            let mut rows = vec![("status", if report.is_feasible() { "feasible" } else { "infeasible" }.to_string())];
            rows.push(("violations", report.violations.len().to_string()));
            if let Some(v) = report.violations.first() {
                rows.push(("first", v.to_string()));
            }
            Ok(Outcome { table: Table::single(rows), code: u8::from(!report.is_feasible()) })
        }
        Command::Evaluate { schedule, matrix } => {
            let s = load_schedule(schedule)?;
            let m = load_matrix(matrix)?;
            let d = total_distance(&s, &m).map_err(|e| usage(e.to_string()))?;
            let feasible = validate(&s).is_feasible();
            let rows = vec![
                ("status", if feasible { "feasible" } else { "infeasible" }.to_string()),
                ("distance", d.to_string()),
                ("crossings", join(&bridge_crossings(&s).counts)),
            ];
            Ok(Outcome { table: Table::single(rows), code: u8::from(!feasible) })
        }
        Command::Bound { n, gaps } => {
            if let Some(g) = gaps {
                if g.iter().any(|&x| x < 0) {
                    return Err(usage("gaps must be nonnegative"));
                }
                let line = LinearInstance::new(g.clone());
                let lb = trivial_lower_bound(line.n()).map_err(|e| usage(e.to_string()))?;
                let mut rows = vec![("n", line.n().to_string()), ("trivial", lb.dot(&line).to_string())];
                match line.n() {
                    4 => rows.push(("optimum", four_team_optimum(&line).map_err(|e| usage(e.to_string()))?.to_string())),
                    6 => {
                        let opt = six_team_optimum(&line).map_err(|e| usage(e.to_string()))?;
                        rows.push(("baseline", opt.baseline.to_string()));
                        rows.push(("surpluses", join(&opt.surpluses)));
                        rows.push(("optimum", opt.value.to_string()));
                        rows.push(("sets", join(&opt.chosen)));
                    }
                    _ => {}
                }
                return Ok(Outcome::ok(Table::single(rows)));
            }
            let n = n.expect("clap requires n or gaps");
            let lb = trivial_lower_bound(n).map_err(|e| usage(e.to_string()))?;
            let mut rows = vec![("n", n.to_string()), ("lower", join(&lb.counts))];
            if n % 6 == 4 && n >= 10 {
                rows.push(("predicted", join(&predicted_crossings(n).map_err(|e| usage(e.to_string()))?.counts)));
            }
            if n % 6 == 4 && n >= 16 {
                let r = approximation_ratio_bound(n).map_err(|e| usage(e.to_string()))?;
                rows.push(("max_ratio", r.max.to_string()));
                rows.push(("argmax", r.argmax.to_string()));
            }
            Ok(Outcome::ok(Table::single(rows)))
        }
        Command::Enumerate4 { optimal, canonical, out } => {
            let list = if *optimal { optimal_4(*canonical) } else { enumerate_feasible_4() };
            if let Some(p) = out {
                write(p, &schedules_text(&list))?;
            }
            Ok(Outcome::ok(Table::single(vec![("schedules", list.len().to_string())])))
        }
        Command::Enumerate6 { set, out } => {
            let catalog = match set {
                Some(l) if *l == SetLabel::Opt4 => return Err(usage("OPT4 is not a 6-team family")),
                Some(l) => SixTeamCatalog::new([(*l, enumerate_set(*l))].into_iter().collect()),
                None => enumerate_295(),
            };
            let path = out.clone().unwrap_or_else(|| PathBuf::from("s295.bundle"));
            write(&path, &write_bundle(&catalog))?;
            let rows = catalog.counts().into_iter().filter(|&(l, c)| set.is_none() || Some(l) == *set || c > 0);
            let table = Table {
                header: vec!["set", "schedules"],
                rows: rows.map(|(l, c)| vec![l.to_string(), c.to_string()]).collect(),
            };
            Ok(Outcome::ok(table))
        }
        Command::Expander { m, matrix, placement, out } => {
            if *m < 1 {
                return Err(usage("--m must be at least 1"));
            }
            let s = line_ordered_expansion(*m).map_err(|e| usage(e.to_string()))?;
            let feasible = validate(&s).is_feasible();
            let mut rows = vec![
                ("n", s.n().to_string()),
                ("status", if feasible { "feasible" } else { "infeasible" }.to_string()),
                ("crossings", join(&bridge_crossings(&s).counts)),
            ];
            let mut emitted = s.clone();
            if let Some(mp) = matrix {
                let matrix = load_matrix(mp)?;
                if matrix.n() != s.n() {
                    return Err(usage(format!("{}: expected {} teams, found {}", mp.display(), s.n(), matrix.n())));
                }
                let ordering = resolve_ordering(placement, &matrix);
                let r = solve_expander_with_ordering(&matrix, &ordering).map_err(|e| usage(e.to_string()))?;
                rows.push(("ordering", join(&r.ordering)));
                rows.push(("distance", r.best_distance.to_string()));
                emitted = r.best_schedule;
            }
            if let Some(p) = out {
                write(p, &emitted.to_file_string())?;
            }
            Ok(Outcome { table: Table::single(rows), code: u8::from(!feasible) })
        }
        Command::Solve6 { matrix, placement, scope, bundle, out } => {
            let m = load_matrix(matrix)?;
            if m.n() != 6 {
                return Err(usage(format!("{}: expected 6 teams, found {}", matrix.display(), m.n())));
            }
            let catalog = load_catalog(bundle)?;
            let ordering = resolve_ordering(placement, &m);
            let r = solve6(&m, &ordering, *scope, &catalog).map_err(|e| usage(e.to_string()))?;
            if let Some(p) = out {
                write(p, &r.best_schedule.to_file_string())?;
            }
            Ok(Outcome::ok(Table::single(report_rows(&r))))
        }
        Command::SolveExpander { matrix, placement, out } => {
            let m = load_matrix(matrix)?;
            let r = if placement.ordering.is_some() || placement.identity {
                solve_expander_with_ordering(&m, &resolve_ordering(placement, &m))
            } else {
                solve_expander(&m, placement.seed, placement.restarts)
            }
            .map_err(|e| usage(format!("{}: {e}", matrix.display())))?;
            if let Some(p) = out {
                write(p, &r.best_schedule.to_file_string())?;
            }
            let mut rows = report_rows(&r);
            rows.retain(|(k, _)| *k != "sets" && *k != "candidates");
            Ok(Outcome::ok(Table::single(rows)))
        }
        Command::Gap { bundle } => {
            let catalog = load_catalog(bundle)?;
            let g = gap6_witness(&catalog);
            let ok = g.ttp_schedule_feasible && g.ttp_value < g.ld_value;
            let rows = vec![
                ("ttp_value", g.ttp_value.to_string()),
                ("ld_value", g.ld_value.to_string()),
                ("achievers", g.achievers.to_string()),
                ("min_trips", g.min_trips.to_string()),
                ("evaluations", g.evaluations.to_string()),
            ];
            Ok(Outcome { table: Table::single(rows), code: u8::from(!ok) })
        }
        Command::Theorem4 { out } => {
            let r = verify_theorem4();
            if let Some(p) = out {
                let mut text = String::new();
                for c in &r.certificates {
                    let by = match &c.dominator {
                        Dominator::Single(p) => p.to_string(),
                        Dominator::Average { members, .. } => format!("mean of {} tuples", members.len()),
                    };
                    let terms: Vec<String> = c.multipliers.iter().map(|(g, l)| format!("{l}*({g})")).collect();
                    text.push_str(&format!("{} >= {} + {}\n", c.dominated, by, terms.join(" + ")));
                }
                write(p, &text)?;
            }
            let rows = vec![
                ("A", r.a_count.to_string()),
                ("L", r.l_count.to_string()),
                ("single", r.single.to_string()),
                ("averaged", r.averaged.to_string()),
                ("uncertified", r.uncertified.len().to_string()),
                ("status", if r.success() { "certified" } else { "failed" }.to_string()),
            ];
            Ok(Outcome { table: Table::single(rows), code: u8::from(!r.success()) })
        }
        Command::Generate { kind, n, out } => {
            let m = generate(*kind, *n).map_err(|e| usage(e.to_string()))?;
            let text = format!("# {kind}{n}\n{}", m.to_file_string());
            match out {
                Some(p) => {
                    write(p, &text)?;
                    Ok(Outcome::ok(Table::single(vec![("n", n.to_string()), ("written", p.display().to_string())])))
                }
                None => {
                    print!("{text}");
                    Ok(Outcome { table: Table { header: Vec::new(), rows: Vec::new() }, code: 0 })
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            let t = &outcome.table;
            if !t.header.is_empty() {
                match cli.format {
                    Format::Text => print!("{}", t.text()),
                    Format::Tsv => print!("{}", t.tsv()),
                }
                if let Some(p) = &cli.summary {
                    if let Err(Failure(msg, code)) = write(p, &t.tsv()) {
                        eprintln!("error: {msg}");
                        return ExitCode::from(code);
                    }
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
