use thiserror::Error;

/// Errors shared by all solver modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A path that allocates or enumerates an exponential object was asked
    /// to exceed its cap.
    #[error("{what} requires n <= {cap}, got {n}")]
    ResourceCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("not a permutation of 1..={n}: {image:?}")]
    InvalidPermutation { n: usize, image: Vec<usize> },

    /// The trajectory set is not closed under the group action, so pair
    /// orbits are undefined.
    #[error(
        "trajectory set not invariant: generator {generator} maps {trajectory} outside the set"
    )]
    NotInvariant {
        generator: String,
        trajectory: String,
    },

    #[error("state not normalized: |norm^2 - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("basis not orthonormal: max deviation {0:.3e}")]
    NotOrthonormal(f64),

    #[error("invalid stabilizer group: {0}")]
    InvalidStabilizer(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Simplex hit the anti-cycling iteration cap without converging.
    #[error("simplex exceeded {0} iterations")]
    SimplexStalled(usize),

    #[error("coefficient c[{index}] = {value:.3e} is negative beyond tolerance")]
    NegativeCoefficient { index: usize, value: f64 },

    #[error("theta = {theta} is below the guaranteed threshold {threshold}")]
    BelowThreshold { theta: f64, threshold: f64 },

    /// Two representatives of the same pair orbit produced different matrix
    /// entries; the orbit computation is inconsistent.
    #[error("representative-independence violated by {0:.3e}")]
    RepresentativeMismatch(f64),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by exceeding a resource cap (CLI exit code 2).
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}
