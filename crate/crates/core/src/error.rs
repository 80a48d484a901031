use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed token {token:?} on line {line}")]
    MalformedToken { line: usize, token: String },

    #[error("bad incidence: {0}")]
    BadIncidence(String),

    #[error("orientation of a component is inconsistent with the PD convention: {0}")]
    InconsistentOrientation(String),

    #[error("diagram is not planar: traced {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },

    #[error("split diagrams are not supported")]
    SplitInput,

    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("coloring matrix has no rows")]
    DegenerateMatrix,

    #[error("affine scale factor is zero mod {0}")]
    ZeroScale(u64),

    #[error("inconsistent coloring: {0}")]
    InconsistentColoring(String),

    #[error("bad local choice at crossing {crossing}")]
    BadChoice { crossing: usize },

    #[error("illegal move site: {0}")]
    IllegalSite(String),

    #[error("unknown component {0}")]
    UnknownComponent(usize),

    #[error("torus2 needs at least 2 crossings, got {0}")]
    TooFewCrossings(usize),

    #[error("coloring uses {0} colors, expected 4")]
    NotFourColors(usize),

    #[error("no crossing where an arc ends under a differently colored over-arc")]
    NoQualifyingCrossing,

    #[error("coloring is not a Case 1 coloring")]
    NotCaseOne,

    #[error("prime {0} is too small, need p > 7")]
    PrimeTooSmall(u64),

    #[error("unknown knot {0:?}")]
    UnknownKnot(String),

    #[error("copy count must be at least 1")]
    EmptyFamily,

    #[error("knot {0} carries a Case 1 coloring")]
    CaseOneKnot(String),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
