use thiserror::Error;

/// Errors produced by the evaluators and the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (|t| > 1, r ≥ 1, θ out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter combination the requested route cannot handle.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Adaptive quadrature ran out of subdivisions before reaching tolerance.
    #[error("quadrature failed: error estimate {achieved:.3e} above tolerance {requested:.3e} after {subdivisions} subdivisions")]
    Quadrature {
        requested: f64,
        achieved: f64,
        subdivisions: usize,
    },

    /// Pointwise summation of the Gegenbauer series is not supported for this
    /// dimension without Abel summation.
    #[error("series diverges pointwise for n = {n}; enable Abel summation or use the integral representation")]
    DivergentSeries { n: u32 },

    /// A resonance constraint was violated: either `a` matches an eigenvalue
    /// and the resonant degree was not skipped, or the right-hand side has a
    /// component in the operator kernel.
    #[error("resonance violation: {0}")]
    Resonance(String),

    /// Two zonal functions live on spheres of different dimension.
    #[error("dimension mismatch: n = {0} vs n = {1}")]
    DimensionMismatch(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
