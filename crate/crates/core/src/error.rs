use thiserror::Error;

/// Errors raised by the algebra kernels and the family builders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterDomain(String),

    #[error("monomial has {found} exponents but the ambient ring has {expected} variables")]
    MixedAmbient { expected: usize, found: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Resource(#[from] ResourceError),
}

/// A computation was stopped by a configured limit. This never means the
/// mathematical answer is "no"; callers report it as `capped`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("lcm lattice exceeded the cap of {cap} elements")]
    LatticeCap { cap: usize },

    #[error("characteristic poset exceeds the cap of {cap} points")]
    PosetCap { cap: usize },

    #[error("local cohomology degree enumeration exceeded the cap of {cap} degrees")]
    DegreeCap { cap: usize },

    #[error("{what} supports at most {max} variables, got {got}")]
    TooManyVariables {
        what: &'static str,
        max: usize,
        got: usize,
    },

    #[error("exhaustive search exceeded its node budget")]
    SearchBudget,

    #[error("wall-clock budget exhausted")]
    Timeout,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
