//! Error type shared by all solver modules.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter is out of its admissible range (non-finite, m <= 0, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The effective squared angular term L^2 came out negative, so the
    /// discrete spectrum is complex and rejected.
    #[error("bound condition violated: require {condition}; effective L^2 = {lsq}")]
    BoundConditionViolated {
        /// The inequality that failed, e.g. `(l - beta*k)^2 > 2*m*Q*lambda`.
        condition: &'static str,
        /// The offending value of L^2.
        lsq: f64,
    },

    /// Oscillator strength Omega vanished (or the Case-2 radicand was
    /// non-positive): the spectrum is continuous, no discrete levels exist.
    #[error("no confinement: oscillator strength Omega is zero, spectrum is continuous")]
    NoConfinement,

    /// Argument outside the domain of a special function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature refinements stopped agreeing before the budget ran out.
    #[error("quadrature did not converge: last correction {last_delta:e} after {refinements} refinements")]
    NonConvergence { last_delta: f64, refinements: usize },

    /// Finite-difference grid below the minimum resolution.
    #[error("grid too coarse: {points} interior points, need at least {min}")]
    GridTooCoarse { points: usize, min: usize },

    /// Eigenvalue bisection bracket stopped shrinking.
    #[error("bisection stalled: bracket width {width:e} at eigenvalue index {index}")]
    BisectionStall { index: usize, width: f64 },

    /// Shifted tridiagonal solve singular even after re-shifting.
    #[error("degenerate shift: inverse iteration singular at eps = {shift}")]
    DegenerateShift { shift: f64 },

    /// Observed grid-convergence order too far from 2; usually a
    /// misconfigured rho_min / rho_max.
    #[error("non-quadratic convergence: observed order {observed:.3} for eigenvalue {index}, expected 2.0 +/- 0.5")]
    NonQuadraticConvergence { index: usize, observed: f64 },

    /// A plot was requested for a table with no plottable rows.
    #[error("empty table: nothing to plot")]
    EmptyTable,

    /// Every sweep point failed its precondition.
    #[error("all sweep points invalid: no grid point satisfies the bound condition")]
    AllPointsInvalid,

    /// I/O failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A table file did not parse back.
    #[error("malformed table {path}: {reason}")]
    Parse { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
