use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants are grouped loosely by the subsystem that raises them; the CLI
/// maps them onto its exit-code contract.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // graph construction and walks
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("edge weight must be strictly positive")]
    NonPositiveWeight,
    #[error("vertex id {0} out of range (vertex count {1})")]
    BadVertexId(usize, usize),
    #[error("walk is not closed")]
    NotClosed,
    #[error("steps are not edge-consecutive")]
    NotAWalk,
    #[error("weight functions live on different edge sets")]
    MismatchedEdgeSets,

    // stable-norm geometry
    #[error("cycle classes do not span: the stable norm degenerates to a seminorm")]
    DegenerateBall,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,

    // spectra
    #[error("the zero class has no shortest representative")]
    ZeroClass,

    // Ehrhart fitting
    #[error("lattice counts are not quasi-polynomial: {0}")]
    InconsistentFit(String),
    #[error("leading shell coefficients do not average to zero")]
    MeanZeroViolation,
    #[error("operation requires a combinatorial graph (all weights 1)")]
    NotCombinatorial,

    // special functions and series
    #[error("gamma has a pole at non-positive integer {0}")]
    PoleAtNonPositiveInteger(i64),
    #[error("zeta has a pole at z = 1")]
    PoleAtOne,
    #[error("Hurwitz parameter q must be positive")]
    NonPositiveQ,
    #[error("outside the convergence half-plane Re z > {0}")]
    ConvergenceDomain(f64),
    #[error("z is within 1e-9 of the pole at {0}")]
    NearPole(f64),
    #[error("Richardson extrapolation diverged")]
    DivergentExtrapolation,
    #[error("x = {0} is a point of the length spectrum")]
    SpectrumPoint(f64),
    #[error("contour height too small: tail oscillation {0:.3} exceeds tolerance")]
    TruncationTooSmall(f64),

    // lattices
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("operation requires an integer Gram matrix")]
    NonIntegerGram,
    #[error("operation requires a 2-dimensional lattice")]
    DimensionNotTwo,

    // file formats
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
