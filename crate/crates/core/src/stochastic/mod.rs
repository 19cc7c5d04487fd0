//! Random-variate generation.

mod arrivals;
mod categorical;
mod stream;
mod triangular;

pub use arrivals::{ArrivalProfile, DAYS_PER_WEEK, HOURS_PER_DAY};
pub use categorical::CategoricalDist;
pub use stream::{fork_stream, RngStream};
pub use triangular::TriangularDist;
