use thiserror::Error;

/// Errors raised by complex construction, the topology checks and the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facet list is empty")]
    EmptyComplex,
    #[error("facet {0} contains no vertices")]
    EmptyFacet(usize),
    #[error("empty vertex label")]
    EmptyLabel,
    #[error("{0} is not a face of the complex")]
    FaceNotFound(String),
    #[error("{0} is not a facet of the complex")]
    MissingFacet(String),
    #[error("operation requires a pure complex")]
    NotPure,
    #[error("expected dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("ridge {0} lies in more than two facets")]
    RidgeOverfull(String),
    #[error("facet id {id} out of range (complex has {len} facets)")]
    FacetOutOfRange { id: usize, len: usize },
    #[error("piece contains no facets")]
    EmptyPiece,
    #[error("brute force is limited to {limit} facets, complex has {found}")]
    TooLarge { limit: usize, found: usize },
    #[error("ridge {0} is not on the boundary")]
    RidgeNotOnBoundary(String),
    #[error("facet {0} is not interior")]
    FacetNotInterior(String),
    #[error("label {0} is already a vertex")]
    LabelCollision(String),
    #[error("pattern vertex {0} has no image")]
    MissingPatternLabel(String),
    #[error("pattern map is not injective: {0} has two preimages")]
    PatternNotInjective(String),
    #[error("operation left {0} without its expected boundary ridge")]
    PostconditionFailed(String),
    #[error("identification collapses facet {0}")]
    FacetCollapse(String),
    #[error("identification merges two facets into {0}")]
    FacetMerge(String),
    #[error("invalid identification: {0}")]
    InvalidIdentification(String),
    #[error("point {0} has no coordinates")]
    MissingPoint(String),
    #[error("duplicate point label {0}")]
    DuplicatePoint(String),
    #[error("point {label} has dimension {found}, expected {expected}")]
    PointDimension {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("points are affinely dependent")]
    AffinelyDependent,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown dataset {0}")]
    UnknownDataset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
