use thiserror::Error;

/// Crate-wide error type. Every failure mode the pipeline can hit has its
/// own variant so callers and tests can match on the exact cause.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mesh parse failure at line {line}: {message}")]
    MeshParse { line: usize, message: String },

    #[error("boundary surface is not a closed 2-manifold: edge ({0}, {1}) is shared by {2} boundary faces")]
    NonManifoldBoundary(usize, usize, usize),

    #[error("face {face:?} is shared by {count} tets")]
    NonManifoldFace { face: [usize; 3], count: usize },

    #[error("mesh has no skeleton vertices")]
    SkeletonMissing,

    #[error("skeleton is disconnected: {components} components")]
    SkeletonDisconnected { components: usize },

    #[error("tet {tet} is degenerate (signed volume {volume:.3e})")]
    DegenerateTet { tet: usize, volume: f64 },

    #[error("boundary tags disagree with the extracted surface at vertex {vertex}")]
    BoundaryTagMismatch { vertex: usize },

    #[error("vertex index {vertex} out of range ({len} vertices)")]
    VertexOutOfRange { vertex: usize, len: usize },

    #[error("tet {tet} is nearly degenerate (volume {volume:.3e} below tolerance)")]
    NearDegenerateTet { tet: usize, volume: f64 },

    #[error("interior Laplacian block is singular or not positive definite")]
    SingularInteriorBlock,

    #[error("element {element} has a non-positive Jacobian at a quadrature point (det {det:.3e})")]
    NonPositiveJacobian { element: usize, det: f64 },

    #[error("stiffness system is singular; check that the fixed vertex set removes all rigid-body modes")]
    SingularSystem,

    #[error("load case is invalid: {0}")]
    InvalidLoadCase(String),

    #[error("stress envelope requires at least one stress field")]
    EmptyFieldList,

    #[error("stress fields have mismatched lengths: {0} vs {1}")]
    FieldLengthMismatch(usize, usize),

    #[error("vertex {vertex} has no boundary vertex within influence depth {radius}")]
    OrphanVertex { vertex: usize, radius: f64 },

    #[error("requested {requested} contact samples but the region has only {available} vertices")]
    SampleCountExceedsRegion { requested: usize, available: usize },

    #[error("eigensolver failed to converge on the surface Laplacian")]
    EigenFailure,

    #[error("dimension mismatch: expected {expected}, got {got} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("material model is invalid: {0}")]
    InvalidMaterial(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
