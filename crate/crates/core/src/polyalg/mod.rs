//! Exact arithmetic kernel.

mod catalan;
mod poly;
mod rational;
mod series;

pub use catalan::{catalan, CatalanTable};
pub use poly::{AvalanchePoly, ParsePolyError, Poly};
pub use rational::{parse_rational, rational_to_f64, Rational};
pub use series::{BivariateSeries, SeriesError};
