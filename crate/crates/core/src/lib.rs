//! Truncated colored Jones polynomials of pretzel knots from Kauffman
//! bracket skein theory, and the stable coefficient sequences they exhibit
//! as the color grows.

pub mod fixture;
pub mod graphs;
pub mod jones;
pub mod laurent;
pub mod series;
pub mod skein;
pub mod stability;

pub use jones::{truncated_colored_jones, ColoredJonesResult, JonesError, PretzelSpec};
pub use laurent::{LaurentError, LaurentPolynomial, Sign};
pub use series::{QDegree, QSeriesView, TruncatedSeries};
pub use skein::{QFactorialExpression, SkeinError};
pub use stability::{ColoredSeries, StabilityError, StableSequence};
