use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::bounds::SetLabel;
use crate::schedule::Schedule;

use super::join::{collect, Join};

/// The canonical optimal 6-team schedules, grouped by family.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SixTeamCatalog {
    sets: BTreeMap<SetLabel, Vec<Schedule>>,
}

impl SixTeamCatalog {
    /// Members are sorted by encoding within each family.
    pub fn new(sets: BTreeMap<SetLabel, Vec<Schedule>>) -> Self {
        let sets = sets
            .into_iter()
            .map(|(l, mut v)| {
                v.sort_by_cached_key(Schedule::encode);
                (l, v)
            })
            .collect();
        SixTeamCatalog { sets }
    }

    pub fn get(&self, label: SetLabel) -> &[Schedule] {
        self.sets.get(&label).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.sets.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn counts(&self) -> Vec<(SetLabel, usize)> {
        SetLabel::SIX.iter().map(|&l| (l, self.get(l).len())).collect()
    }

    /// Every member with its family, families in order S1..S7.
    pub fn iter(&self) -> impl Iterator<Item = (SetLabel, &Schedule)> {
        self.sets.iter().flat_map(|(&l, v)| v.iter().map(move |s| (l, s)))
    }
}

/// Canonical 6-team schedules whose crossing vector is exactly `label`'s target.
pub fn enumerate_set(label: SetLabel) -> Vec<Schedule> {
    assert_ne!(label, SetLabel::Opt4, "not a 6-team family");
    let join = Join::new(6, Some(label.target()), true);
    let mut v = collect(&join, |j, c| j.schedule(c));
    v.sort_by_cached_key(Schedule::encode);
    v
}

/// All seven families.
pub fn enumerate_295() -> SixTeamCatalog {
    SixTeamCatalog::new(SetLabel::SIX.iter().map(|&l| (l, enumerate_set(l))).collect())
}

/// Distinct crossing vectors over every feasible canonical 6-team schedule,
/// with the number of schedules searched.
///
/// Time reversal keeps crossings, so canonical schedules cover them all.
pub fn feasible_six_crossing_vectors() -> (BTreeSet<Vec<u64>>, u64) {
    feasible_six_crossing_vectors_from(0..Join::new(6, None, true).first_team_rows())
}

/// As [`feasible_six_crossing_vectors`], restricted to some rows of team 1.
pub fn feasible_six_crossing_vectors_from(first_rows: std::ops::Range<usize>) -> (BTreeSet<Vec<u64>>, u64) {
    use rayon::prelude::*;
    let join = Join::new(6, None, true);
    first_rows
        .into_par_iter()
        .map(|first| {
            let mut seen: HashSet<[u16; 5]> = HashSet::new();
            let mut count = 0u64;
            join.run_from(first, &mut |chosen| {
                let mut c = [0u16; 5];
                for (t, &i) in chosen.iter().enumerate() {
                    for (k, x) in join.row(t, i).crossings.iter().enumerate() {
                        c[k] += *x as u16;
                    }
                }
                seen.insert(c);
                count += 1;
            });
            let set: BTreeSet<Vec<u64>> = seen.into_iter().map(|c| c.iter().map(|&x| x as u64).collect()).collect();
            (set, count)
        })
        .reduce(
            || (BTreeSet::new(), 0),
            |(mut a, x), (b, y)| {
                a.extend(b);
                (a, x + y)
            },
        )
}
