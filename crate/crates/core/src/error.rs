use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::units::Violation;

/// Everything that can go wrong inside the kernels.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// The physical configuration breaks one or more invariants.
    InvalidConfig(Vec<Violation>),
    /// A reduced-dimension run needs a transverse confinement length.
    MissingTransverseLength { dim: crate::Dimension },
    /// `g_B n_0 < 0`: the Bogoliubov energy would be complex.
    ComplexDispersion { coupling_density: f64 },
    /// Quadrature settings out of range.
    InvalidQuadratureSpec(&'static str),
    /// The integrand returned NaN or an infinity.
    NonFiniteIntegrand { k: f64 },
    /// The panel budget ran out before the tolerance was met.
    QuadratureBudget { value: f64, error: f64, panels: usize },
    /// A time or horizon argument is out of its domain.
    InvalidTime { what: &'static str, value: f64 },
    /// A kernel evaluation failed at a given time.
    AtTime { t: f64, source: alloc::boxed::Box<Error> },
    /// Interval present but `Γ(a) = 0`; the normalized measure is undefined.
    DegenerateMeasure { a: f64 },
    /// Both ends of a crossover bracket have the same Markovianity.
    Bracket { lo: f64, hi: f64, n_lo: f64, n_hi: f64 },
    /// Sweep values must be non-empty and strictly increasing.
    InvalidSweep(String),
    /// Every row of a sweep failed; carries the first failure.
    SweepFailed(alloc::boxed::Box<Error>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(violations) => {
                write!(f, "invalid configuration:")?;
                for v in violations {
                    write!(f, " {};", v)?;
                }
                Ok(())
            }
            Error::MissingTransverseLength { dim } => {
                write!(f, "dimension {} requires a transverse confinement length", dim)
            }
            Error::ComplexDispersion { coupling_density } => write!(
                f,
                "g_B n0 = {coupling_density} < 0 gives a complex Bogoliubov energy"
            ),
            Error::InvalidQuadratureSpec(msg) => write!(f, "invalid quadrature settings: {msg}"),
            Error::NonFiniteIntegrand { k } => write!(f, "integrand is not finite at k = {k}"),
            Error::QuadratureBudget { value, error, panels } => write!(
                f,
                "quadrature budget of {panels} panels exhausted (best value {value:e}, error {error:e})"
            ),
            Error::InvalidTime { what, value } => write!(f, "{what} = {value} is out of range"),
            Error::AtTime { t, source } => write!(f, "at t = {t}: {source}"),
            Error::DegenerateMeasure { a } => {
                write!(f, "Γ(a) = 0 at a = {a}; the normalized measure is undefined")
            }
            Error::Bracket { lo, hi, n_lo, n_hi } => write!(
                f,
                "no crossover in [{lo:e}, {hi:e}]: N = {n_lo:e} and {n_hi:e} are on the same side"
            ),
            Error::InvalidSweep(msg) => write!(f, "invalid sweep: {msg}"),
            Error::SweepFailed(first) => write!(f, "every sweep row failed; first error: {first}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    pub(crate) fn at_time(self, t: f64) -> Self {
        Error::AtTime { t, source: alloc::boxed::Box::new(self) }
    }
}
