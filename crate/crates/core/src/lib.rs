//! Schedules, bounds and constructions for the traveling tournament problem
//! on teams placed along a line.

pub mod analysis;
pub mod bounds;
pub mod distance;
pub mod enumerate;
pub mod error;
pub mod expander;
pub mod schedule;
pub mod solver;
pub mod validate;

pub use bounds::SetLabel;
pub use distance::{bridge_crossings, total_distance, CrossingRole, CrossingVector, DistanceMatrix, LinearInstance};
pub use error::{MatrixError, ScheduleError, TtpError};
pub use schedule::{Schedule, Slot, Venue};
pub use validate::{validate, FeasibilityReport, Rule, Violation};
