use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(&'static str),
    /// `(m, v)` is not in the closed dome `0 <= m <= 1, 0 <= v <= m - m²`.
    OutsideDome {
        m: f64,
        v: f64,
        constraint: &'static str,
    },
    /// The operation needs an interior point but `(m, v)` is on the boundary.
    DegeneratePoint {
        m: f64,
        v: f64,
    },
    /// Point masses and two-point laws have no density.
    NoDensity,
    /// The density is unbounded at this endpoint.
    SingularEndpoint {
        x: f64,
    },
    MeanMismatch {
        first: f64,
        second: f64,
    },
    Incomparable,
    /// No sign change of the CDF difference could be bracketed.
    NoCrossing,
    NotConverged {
        what: &'static str,
        iterations: usize,
    },
    /// An edge of a Hasse path did not verify.
    PathVerification {
        edge: usize,
    },
    /// A sweep column was not nonincreasing in the variance.
    ColumnMonotonicity {
        m: f64,
        v: f64,
        previous: f64,
        current: f64,
    },
}

impl Error {
    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotConverged { .. }
                | Error::PathVerification { .. }
                | Error::ColumnMonotonicity { .. }
                | Error::NoCrossing
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::OutsideDome { m, v, constraint } => {
                write!(f, "(m={m}, v={v}) is outside the dome: violates {constraint}")
            }
            Error::DegeneratePoint { m, v } => {
                write!(f, "(m={m}, v={v}) is on the dome boundary; no finite shape parameters")
            }
            Error::NoDensity => write!(f, "boundary law has no density"),
            Error::SingularEndpoint { x } => write!(f, "density is unbounded at x={x}"),
            Error::MeanMismatch { first, second } => {
                write!(f, "means differ: {first} vs {second}")
            }
            Error::Incomparable => write!(f, "laws are not comparable under second-order dominance"),
            Error::NoCrossing => write!(f, "could not bracket a crossing of the two CDFs"),
            Error::NotConverged { what, iterations } => {
                write!(f, "{what} did not converge within {iterations} iterations")
            }
            Error::PathVerification { edge } => write!(f, "Hasse path edge {edge} failed verification"),
            Error::ColumnMonotonicity { m, v, previous, current } => write!(
                f,
                "optimal fraction increased along the variance column at m={m}, v={v}: {previous} -> {current}"
            ),
        }
    }
}

impl core::error::Error for Error {}
