use thiserror::Error;

/// Errors raised by the bounding operations and their oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("identically zero polynomial")]
    IdenticallyZero,
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("zero on contour (min modulus {min_modulus:e})")]
    ZeroOnContour { min_modulus: f64 },
    #[error("span too large: Picard enclosure does not close")]
    SpanTooLarge,
    #[error("insufficient roots: {found} counted with multiplicity, {required} required")]
    InsufficientRoots { found: usize, required: usize },
    #[error("vanishing center; factor out the known order first")]
    VanishingCenter,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("linearly dependent tuple")]
    LinearlyDependent,
    #[error("no certificate within cap {cap}")]
    NoCertificate { cap: usize },
    #[error("singular point: vector field vanishes at the base point")]
    SingularPoint,
    #[error("tangency >= cap {cap} (possibly invariant)")]
    TangencyCap { cap: usize },
    #[error(">= cap {cap} (possibly non-isolated)")]
    MultiplicityCap { cap: usize },
    #[error(">= truncation order {order}")]
    TruncationOrder { order: usize },
    #[error("non-real spectrum")]
    NonRealSpectrum,
    #[error("unresolved clustered roots at working precision")]
    UnresolvedRoots,
    #[error("degenerate frame at t = {t}")]
    DegenerateFrame { t: f64 },
    #[error("hyperconvexity check fails: last curvature changes sign or vanishes")]
    NotHyperconvex,
    #[error("curve passes too close to the origin (min norm {min_norm:e})")]
    OriginProximity { min_norm: f64 },
    #[error("unbounded domain descriptor")]
    UnboundedDomain,
    #[error("empty spectrum")]
    EmptySpectrum,
    #[error("zero sign supplied")]
    ZeroSign,
    #[error("quadrature did not converge")]
    NoConvergence,
}

pub type Result<T> = std::result::Result<T, Error>;
