use thiserror::Error;

/// Errors raised by state construction and the analysis operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |A - A^dag| entry = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not positive semi-definite (min eigenvalue = {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not unitary (max |U^dag U - I| entry = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("state vector is not normalized (squared norm = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("trace {trace} does not match declared weight {weight}")]
    TraceMismatch { trace: f64, weight: f64 },

    #[error("weight {0} outside (0, 1]")]
    InvalidWeight(f64),

    #[error("Bloch vector norm {0} exceeds 1")]
    BlochNormExceedsOne(f64),

    #[error("{0}")]
    OutOfRange(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("Bloch radii differ beyond tolerance: |r0| = {0}, |r1| = {1}")]
    UnequalRadii(f64, f64),
}
