//! Exhaustive enumeration of feasible and optimal 4- and 6-team schedules.

mod bundle;
mod four;
mod join;
mod six;
mod symmetry;

pub use bundle::{parse_bundle, write_bundle};
pub use four::{enumerate_feasible_4, optimal_4};
pub use six::{
    enumerate_295, enumerate_set, feasible_six_crossing_vectors, feasible_six_crossing_vectors_from, SixTeamCatalog,
};
pub use symmetry::{canonicalize, is_canonical, phi, psi, s1_fixed_points};

/// The 295 canonical optimal 6-team schedules shipped with the crate, as
/// produced by [`enumerate_295`].
pub fn bundled_catalog() -> SixTeamCatalog {
    parse_bundle(include_str!("../../data/s295.bundle")).expect("bundled catalog parses")
}
