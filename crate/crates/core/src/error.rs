use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("scale separation violated: {0}")]
    ScaleSeparation(String),

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    QuadratureNonConvergence { estimate: f64, tolerance: f64 },

    #[error("dispersion function evaluated at a pole (s^2 = {s2:e})")]
    Pole { s2: f64 },

    #[error("no instability at any density within model validity (contact coefficient {coefficient} >= 1)")]
    NoCriticalDensity { coefficient: f64 },

    #[error("random sequential insertion placed {placed} of {requested} spheres within the attempt budget")]
    InfeasiblePacking { placed: usize, requested: usize },

    #[error("mode basis is empty: box length {box_length:e} m admits no wavevector below the cutoff")]
    EmptyModeBasis { box_length: f64 },

    #[error("dynamical matrix dimension {dimension} exceeds the limit {limit}")]
    DimensionOverflow { dimension: usize, limit: usize },

    #[error("atoms {first} and {second} overlap (separation {separation:e} m)")]
    OverlappingAtoms { first: usize, second: usize, separation: f64 },

    #[error("eigensolver did not converge: {0}")]
    EigenNonConvergence(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors that come from numerical routines rather than input validation.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNonConvergence { .. } | Error::EigenNonConvergence(_) | Error::Pole { .. }
        )
    }
}
