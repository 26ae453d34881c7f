use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("SNF requires integer matrix")]
    NotInteger,
    #[error("not a complex at this degree")]
    NotAComplex,
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("diagram is not oriented: {0}")]
    Unoriented(String),
    #[error("invalid algebra data: {0}")]
    Algebra(String),
    #[error("not a point of Spec R4: {0}")]
    NotA4Point(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("algebra has no unit")]
    NoUnit,
    #[error("classification gap: {0}")]
    ClassificationGap(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
