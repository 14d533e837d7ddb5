use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vectors must have dimension >= 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("coordinates must be finite")]
    NonFiniteCoordinate,

    #[error("zero vector where a direction was required")]
    ZeroVector,

    #[error("configuration gap {gap} violates the clearance bound 2")]
    ClearanceViolated { gap: f64 },

    #[error("expected a unit vector, got norm {norm}")]
    NotUnit { norm: f64 },

    #[error("transverse direction must be orthogonal to the pair axis, got dot {dot}")]
    NotOrthogonal { dot: f64 },

    #[error("degenerate pair: the two points coincide")]
    DegeneratePair,

    #[error("pair axes are parallel; use the parallel-family solver")]
    ParallelDirections,

    #[error("endpoint lies on the clearance boundary; use the boundary shortcut")]
    BoundaryEndpoint,

    #[error("antipodal directions: the geodesic is not unique, use plan_alt")]
    AntipodalDirections,

    #[error(
        "antiparallel pair needs an explicit transverse direction w; \
         valid choices form the unit sphere of a {subspace_dim}-dimensional subspace"
    )]
    MissingTransverseChoice { subspace_dim: usize },

    #[error("arc angle {alpha} outside the allowed range [0, pi)")]
    AngleOutOfRange { alpha: f64 },

    #[error("angle mode does not match the pair geometry")]
    ModeMismatch,

    #[error("forced pairing leaves the configuration space: components coincide along the path")]
    PairingCoincidence,

    #[error("precondition violated: {0}")]
    Precondition(String),
}
