use thiserror::Error;

/// Errors raised by the geometry kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("incompatible ambient dimension: {left} vs {right}")]
    IncompatibleDimension { left: usize, right: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid multi-index {indices:?} in dimension {dimension}: {reason}")]
    InvalidIndex {
        indices: Vec<usize>,
        dimension: usize,
        reason: &'static str,
    },

    #[error("unsupported dimension {found}: {context} requires dimension {expected}")]
    UnsupportedDimension {
        found: usize,
        expected: usize,
        context: &'static str,
    },

    #[error("not an almost complex structure: {0}")]
    NotAlmostComplex(String),

    #[error("degenerate 3-form")]
    Degenerate3Form,

    #[error("not a G2 form: {0}")]
    NotG2Form(String),

    #[error("not an SU(3)-structure: {0}")]
    NotSu3Structure(String),

    #[error("input not of G2-structure-equation form (residual {residual})")]
    NotG2StructureEquations { residual: f64 },

    #[error("input not of SU(3)-structure-equation form (residual {residual})")]
    NotSu3StructureEquations { residual: f64 },

    #[error("structure constants violate the Jacobi identity (max residual {residual})")]
    JacobiViolation { residual: f64 },

    #[error("frame data inconsistent: {0}")]
    FrameInconsistent(String),

    #[error("gauge undefined where σ0 vanishes")]
    GaugeUndefined,

    #[error("gauge needs an exact square root of {0}; use the real backend")]
    InexactRoot(String),

    #[error("check refused: {0}")]
    Refused(String),

    #[error("input does not satisfy dφ + φα = 0: {0}")]
    LoopEquationViolated(String),

    #[error("malformed loop: {0}")]
    MalformedLoop(String),

    #[error("singular linear system")]
    Singular,

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
