//! Invariants of cusped hyperbolic 3-manifolds from ideal-triangulation
//! data: Bloch regulators and complex volumes, big and skew-symmetric
//! periods of framed Hodge-Tate structures, and the limit behavior of the
//! Chern-Simons variation of mixed Hodge structure at ideal points of the
//! deformation curve.
//!
//! The crate splits into
//!
//! - [`num`]: arbitrary-precision complex arithmetic, branch-tracked
//!   logarithms, truncated Laurent series and a series equation solver;
//! - [`qlin`]: exact rational linear algebra and a formal model of
//!   `C (x)_Q C` / `C /\_Q C` over tracked complex "atoms";
//! - [`polylog`]: dilogarithm, Rogers dilogarithm, Bloch-Wigner function
//!   and the Bloch regulator with explicit branch data;
//! - [`hodge`]: period matrices of splitted Hodge-Tate structures, big
//!   and skew-symmetric periods, framed sums;
//! - [`bloch`]: pre-Bloch elements, the complex Dehn invariant, the
//!   regulator on the Bloch group and complex volume;
//! - [`nz`]: Neumann-Zagier gluing data: ingestion, validation, rational
//!   shifts and the Dehn-invariant vanishing certificate;
//! - [`vmhs`]: the Chern-Simons variation of mixed Hodge structure on the
//!   deformation curve, its monodromy, Heisenberg-group arithmetic and
//!   the limit mixed Hodge structure at ideal points;
//! - [`report`]: deterministic JSON reports for the CLI and examples.
//!
//! Most examples in `examples/` are one capability each; start with
//! `cargo run --example complex_volume`.

pub mod bloch;
pub mod hodge;
pub mod num;
pub mod nz;
pub mod polylog;
pub mod qlin;
pub mod report;
pub mod vmhs;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside a function's mathematical domain (log of zero,
    /// dilogarithm on its branch cut, shape parameter in {0,1}, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation produced a non-finite value.
    #[error("non-finite result in {0}")]
    NonFinite(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Truncated-series bookkeeping violation.
    #[error("series error: {0}")]
    Series(String),
    /// A series expansion hit a branch point (non-invertible linearization).
    #[error("singular expansion: {0}")]
    Singular(String),
    /// Exact linear algebra failure (dimension mismatch, inconsistent system).
    #[error("linear algebra error: {0}")]
    Linear(String),
    /// Gluing-data validation failure, with the offending relation.
    #[error("validation error: {0}")]
    Validation(String),
    /// A certificate could not be produced; carries the obstruction.
    #[error("certificate refused: {0}")]
    Certificate(String),
    /// Divergence where a finite limit was required.
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Where an invariant check ran and what it measured; used by reports.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ResidualLine {
    pub what: String,
    pub residual: String,
    pub tolerance: String,
    pub ok: bool,
}

impl fmt::Display for ResidualLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: residual {} (tol {}) {}",
            self.what,
            self.residual,
            self.tolerance,
            if self.ok { "ok" } else { "FAIL" }
        )
    }
}
