//! Arbitrary-precision numerics: complex scalars, branch-tracked logs,
//! truncated (Laurent) power series and a series equation solver.

pub mod big;
pub mod branched;
pub mod logseries;
pub mod series;
pub mod solve;

pub use big::{pi, two_pi_i, BigComplex, BigReal, DEFAULT_PREC};
pub use branched::{complex_log, BranchedValue};
pub use logseries::LogSeries;
pub use series::Series;
pub use solve::series_solve;
