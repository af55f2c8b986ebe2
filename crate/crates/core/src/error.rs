use thiserror::Error;

/// Errors shared across the toolkit.
///
/// `BoundViolated` is special: it signals an empirical falsification of a
/// predicted weight bound and must never be downgraded to a warning.
#[derive(Debug, Error)]
pub enum Error {
    #[error("affine hull has dimension {found}, expected {expected}")]
    DegenerateHull { expected: usize, found: usize },

    #[error("exact face geometry is not supported in dimension {0}")]
    UnsupportedDimension(usize),

    #[error("support is degenerate: {0}")]
    DegenerateSupport(String),

    #[error("computed multiplicity of weight {weight} is negative ({value}); the nondegeneracy or normalization hypothesis fails")]
    NegativeMultiplicity { weight: usize, value: i64 },

    #[error("the two weight methods disagree: slopes give {slopes:?}, strata give {strata:?}")]
    MethodDisagreement { slopes: Vec<i64>, strata: Vec<i64> },

    #[error("invalid face data: {0}")]
    InvalidFaceData(String),

    #[error("codimension-2 corner configuration is not covered by the supported cases: {0}")]
    UnsupportedCornerConfiguration(String),

    #[error("assembled surface weights contain a negative multiplicity at weight {weight}: {value}")]
    NegativeAssembledWeight { weight: usize, value: i64 },

    #[error("enumeration budget exceeded: estimated {estimate} cells, budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("negative Hodge number at q = {q} ({value}); the residue class is non-generic or the modulus is too small")]
    NegativeHodgeNumber { q: usize, value: i64 },

    #[error("n = {n} is beyond the limit {limit} for mode {mode}")]
    UnsupportedN { n: u64, limit: u64, mode: &'static str },

    #[error("requested {requested} weights but the multiset only has total multiplicity {available}")]
    InsufficientMultiplicity { requested: String, available: String },

    #[error("Weil bound violated for q = {q}, extension degree {degree}: |{count} - {expected}| exceeds the window {window}")]
    BoundViolated {
        q: u64,
        degree: u32,
        count: u64,
        expected: u128,
        window: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
