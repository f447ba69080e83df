use thiserror::Error;

/// Errors produced by parameter validation and by operations whose
/// preconditions exclude part of the parameter space.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar input violates its documented range.
    #[error("{name} must be {constraint}, got {value}")]
    InvalidParameter {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    /// Optimization requested with no interferers: the throughput grows
    /// without bound in the threshold, so no finite maximizer exists.
    #[error("interferer density is zero: the optimal SIR threshold is unbounded")]
    ZeroDensity,

    /// The simulation disk is too small for the neglected far-field
    /// interference to stay below the documented bound.
    #[error(
        "disk radius {radius} leaves a truncated mean-interference fraction of {tail:.3e} \
         (limit {limit:.0e})"
    )]
    TruncationTail { radius: f64, tail: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, constraint: &'static str, value: f64) -> Self {
        Error::InvalidParameter {
            name,
            constraint,
            value,
        }
    }
}
