use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid argument (non-prime p, even characteristic, bad degree, ...).
    RejectedParameter(String),
    /// Division by zero in an exact ring.
    DivisionByZero,
    /// Division by a non-invertible element of Q(zeta_p)[t]/(t^{2p}-q).
    NonFieldConfiguration(String),
    /// An internal exactness assertion failed (signals a bug or wrong degree).
    InternalConsistency(String),
    /// The functional equation was violated for a concrete L-polynomial.
    FunctionalEquationViolation(String),
    /// Two routes that must agree per the theory disagreed.
    TheoryViolation(String),
    /// A correspondence clause (period, order, L-identity, bijection) failed.
    CorrespondenceViolation(String),
    /// Modulus shares a factor with a denominator.
    NonCoprimeModulus(String),
    /// Root finder failed to converge.
    NumericalFailure(String),
    /// Evaluation at a pole of a closed form.
    Pole(String),
    /// Estimated work exceeds the configured budget.
    BudgetExceeded { estimated: u64, limit: u64 },
    /// Pole order divisible by p; the genus formula does not apply.
    UnsupportedRamification(String),
    /// Requested L-series of the principal character diverges.
    DivergingSeries,
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RejectedParameter(s) => write!(f, "rejected parameter: {s}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonFieldConfiguration(s) => write!(f, "non-field configuration: {s}"),
            Error::InternalConsistency(s) => write!(f, "internal consistency failure: {s}"),
            Error::FunctionalEquationViolation(s) => {
                write!(f, "functional equation violation: {s}")
            }
            Error::TheoryViolation(s) => write!(f, "theory violation: {s}"),
            Error::CorrespondenceViolation(s) => write!(f, "correspondence violation: {s}"),
            Error::NonCoprimeModulus(s) => write!(f, "non-coprime modulus: {s}"),
            Error::NumericalFailure(s) => write!(f, "numerical failure: {s}"),
            Error::Pole(s) => write!(f, "evaluation at pole: {s}"),
            Error::BudgetExceeded { estimated, limit } => {
                write!(f, "work budget exceeded: estimated {estimated} > limit {limit}")
            }
            Error::UnsupportedRamification(s) => write!(f, "unsupported ramification: {s}"),
            Error::DivergingSeries => write!(f, "L-series of the principal character diverges"),
            Error::Io(s) => write!(f, "io error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
