use crate::schedule::{Schedule, Venue};

/// Time reversal: the game on day `d` moves to day `2(n-1) + 1 - d`.
pub fn psi(s: &Schedule) -> Schedule {
    let rounds = s.rounds();
    let rows: Vec<Vec<i32>> = s
        .signed_rows()
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    debug_assert_eq!(rows[0].len(), rounds);
    Schedule::from_signed_rows(&rows).expect("reversal keeps the grid well formed")
}

/// Label reversal: team `i` becomes team `n + 1 - i`.
pub fn phi(s: &Schedule) -> Schedule {
    let n = s.n();
    let perm: Vec<usize> = (1..=n).map(|i| n + 1 - i).collect();
    s.relabel(&perm)
}

/// Team 2 hosts the first meeting of teams 1 and 2.
pub fn is_canonical(s: &Schedule) -> bool {
    let first = s.row(1).iter().find(|slot| slot.opponent == 2).expect("teams 1 and 2 meet");
    first.venue == Venue::Away
}

/// `s` itself when canonical, otherwise its time reversal.
pub fn canonicalize(s: &Schedule) -> Schedule {
    if is_canonical(s) {
        s.clone()
    } else {
        psi(s)
    }
}

/// Members of `set` fixed by label reversal followed by time reversal.
pub fn s1_fixed_points(set: &[Schedule]) -> Vec<Schedule> {
    set.iter().filter(|s| phi(&psi(s)) == **s).cloned().collect()
}
