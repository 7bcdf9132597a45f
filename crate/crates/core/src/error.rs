use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot normalize a zero spinor")]
    ZeroSpinor,

    #[error("matrix is not in su(2): {0}")]
    NotInAlgebra(&'static str),

    #[error("degenerate plane: Gram determinant {0:.3e} is below 1e-12")]
    DegeneratePlane(f64),

    #[error("inputs are not Killing-orthogonal: (X, Y)_K = {0:.3e}")]
    NotOrthogonal(f64),

    #[error("magnetic field has zero magnitude")]
    ZeroField,

    #[error("invalid field parameters: {0}")]
    InvalidField(&'static str),

    #[error("step size too large: dt * omega = {0:.3e} exceeds 0.1")]
    StepTooLarge(f64),

    #[error("invalid step size {0}")]
    InvalidStep(f64),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("chart singularity: |phi_1| = {0:.3e}")]
    ChartSingularity(f64),

    #[error("value {value} out of range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("capture half-width {0} must lie in (0, pi/8]")]
    InvalidRegion(f64),

    #[error("no collapse within {0} steps")]
    NonTermination(u64),

    #[error("Markov chain needs m >= 2, got {0}")]
    ChainTooSmall(usize),

    #[error("singular linear system at row {0}")]
    SingularSystem(usize),

    #[error("refractive field evaluation failed at {position:?}: eta^2 = {value}")]
    FieldEvaluation { position: Vec<f64>, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("lens start and target coincide")]
    CoincidentTarget,

    #[error("lens search failed: best miss distance {best_miss:.3e} above tolerance {tolerance:.3e}")]
    LensSearchFailed { best_miss: f64, tolerance: f64 },

    #[error("Hamiltonian is singular (det = {0:.3e})")]
    SingularHamiltonian(f64),

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),

    #[error("identical particles require a = -b")]
    NotAntisymmetric,

    #[error("csv output failed: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
