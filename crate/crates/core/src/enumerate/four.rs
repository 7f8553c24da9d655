use crate::bounds::SetLabel;
use crate::schedule::Schedule;

use super::join::{collect, Join};

fn sorted(mut v: Vec<Schedule>) -> Vec<Schedule> {
    v.sort_by_cached_key(Schedule::encode);
    v
}

/// Every feasible 4-team double round-robin, sorted by encoding.
pub fn enumerate_feasible_4() -> Vec<Schedule> {
    let join = Join::new(4, None, false);
    sorted(collect(&join, |j, c| j.schedule(c)))
}

/// 4-team schedules with crossing vector (8, 8, 8).
pub fn optimal_4(canonical_only: bool) -> Vec<Schedule> {
    let join = Join::new(4, Some(SetLabel::Opt4.target()), canonical_only);
    sorted(collect(&join, |j, c| j.schedule(c)))
}
