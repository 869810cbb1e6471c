use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// Variants split into two families: parameter errors (a value violates a
/// type's construction invariant) and domain errors (a formula is evaluated
/// where it has no finite value). [`Error::is_domain`] tells them apart.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor argument violates its documented range.
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// Lambert W argument below the branch point `-1/e`.
    BelowBranchPoint { x: f64 },
    /// The requested quantity diverges or is undefined at this point.
    Domain { reason: &'static str },
    /// A probability vector that does not sum to one or has bad entries.
    InvalidPmf { reason: String },
    /// An experiment configuration breaks one of its invariants.
    InvalidConfig { reason: String },
    /// A group of estimates had zero sample variance (infinite information).
    ZeroVariance { group: usize },
    /// Too few surviving estimates to form the required number of groups.
    InsufficientEstimates { surviving: usize, required: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            expected,
        }
    }

    pub(crate) fn domain(reason: &'static str) -> Self {
        Error::Domain { reason }
    }

    /// True for errors raised while evaluating a formula, as opposed to
    /// rejecting an input at construction time.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::BelowBranchPoint { .. }
                | Error::Domain { .. }
                | Error::ZeroVariance { .. }
                | Error::InsufficientEstimates { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                name,
                value,
                expected,
            } => write!(f, "invalid {name} = {value}: expected {expected}"),
            Error::BelowBranchPoint { x } => write!(
                f,
                "Lambert W argument {x} lies below the branch point -1/e; no real principal value"
            ),
            Error::Domain { reason } => write!(f, "domain error: {reason}"),
            Error::InvalidPmf { reason } => write!(f, "invalid photon-number pmf: {reason}"),
            Error::InvalidConfig { reason } => write!(f, "invalid experiment config: {reason}"),
            Error::ZeroVariance { group } => write!(
                f,
                "estimates in group {group} have zero variance; information is unbounded"
            ),
            Error::InsufficientEstimates {
                surviving,
                required,
            } => write!(
                f,
                "only {surviving} surviving estimates, at least {required} needed for two groups"
            ),
        }
    }
}

impl core::error::Error for Error {}

/// Checks `lo < value <= hi` style ranges without repeating the NaN test.
pub(crate) fn ensure(
    ok: bool,
    name: &'static str,
    value: f64,
    expected: &'static str,
) -> Result<()> {
    if ok && !value.is_nan() {
        Ok(())
    } else {
        Err(Error::param(name, value, expected))
    }
}
