use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// Variants fall in three groups, mirrored by [`Error::exit_code`]: malformed
/// input (2), violated preconditions (3) and failed internal consistency
/// checks (4). The last group should be unreachable; hitting it means one of
/// the verified identities does not hold. Output failures exit with 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("{elem} is not a unit in {ring}")]
    NotUnit { elem: String, ring: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("invalid point of the projective line: {0}")]
    InvalidPoint(String),
    #[error("{which} points {i} and {j} are not distinct{}", prime.map(|p| format!(" modulo {p}")).unwrap_or_default())]
    PointsNotDistinct {
        which: &'static str,
        i: usize,
        j: usize,
        prime: Option<u64>,
    },
    #[error("matrix is not invertible: determinant {0} is not a unit")]
    SingularMatrix(String),
    #[error("invalid elliptic curve: {0}")]
    InvalidCurve(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("Moebius map does not descend to the base field: {0}")]
    DescentFailed(String),
    #[error("psi is not theta-smooth: gamma fixes infinity")]
    NotThetaSmooth,
    #[error("parameter value {s0} is in the bad locus ({reasons})")]
    BadParameter { s0: String, reasons: String },
    #[error("family is theta-degenerate at every parameter value")]
    GloballyBad,
    #[error("fiber computation failed: {0}")]
    FiberFailure(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("square-root extraction failed: {0}")]
    SquareRootExtractionFailed(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidDescriptor(_) => 2,
            Error::SquareRootExtractionFailed(_) | Error::InternalConsistency(_) => 4,
            Error::Io(_) => 1,
            _ => 3,
        }
    }

    pub fn is_falsification(&self) -> bool {
        self.exit_code() == 4
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
