use thiserror::Error;

/// Errors raised by graph construction, exact algebra and spectral routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a partition of vertex endpoints")]
    NotAPartition,
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("subdivision point out of range: {0}")]
    OutOfRange(String),
    #[error("duplicate point on edge {edge} at offset {offset}")]
    DuplicatePoint { edge: usize, offset: String },
    #[error("exhaustive canonicalization bound exceeded ({n} > {bound})")]
    CanonicalBound { n: usize, bound: usize },
    #[error("enumeration bound: {0}")]
    EnumerationBound(String),
    #[error("zero polynomial not projective")]
    ZeroPolynomial,
    #[error("degree bound violated (verification at z = {0} failed)")]
    DegreeBoundViolated(String),
    #[error("no usable sample points for exact interpolation")]
    NoSamplePoints,
    #[error("root off unit circle: |z| = {modulus}")]
    RootOffUnitCircle { modulus: f64 },
    #[error("graph not unilateral: {0}")]
    NotUnilateral(String),
    #[error("degree zero vertex {0}")]
    DegreeZeroVertex(usize),
    #[error("empty contact set")]
    EmptyContactSet,
    #[error("contact count mismatch: {0} vs {1}")]
    ContactMismatch(usize, usize),
    #[error("M-function singular at lambda = {0}; choose different sample points")]
    SingularSample(f64),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("orbit assertion refuted (max residual {0:e})")]
    OrbitRefuted(f64),
    #[error("unknown slot {0}")]
    UnknownSlot(usize),
    #[error("unknown catalog id `{0}`")]
    UnknownCatalogId(String),
    #[error("two nonempty parts required")]
    DegenerateSplit,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
