use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix determinant must be positive, got {det}")]
    NonPositiveDeterminant { det: f64 },

    #[error("point ({x}, {y}) is not in the upper half-plane")]
    NotInUpperHalfPlane { x: f64, y: f64 },

    #[error("point {re}+{im}i is not in the unit disc")]
    NotInDisc { re: f64, im: f64 },

    #[error("geodesic endpoints must be distinct")]
    DegenerateGeodesic,

    #[error("cone order must be at least 3, got {k}")]
    ConeOrder { k: u64 },

    #[error("{what} out of domain: {value}")]
    OutOfDomain { what: &'static str, value: f64 },

    #[error("integer overflow in group arithmetic")]
    Overflow,

    #[error("tile walk lost the geodesic at t = {t}")]
    LostGeodesic { t: f64 },

    #[error("tile walk exceeded {limit} steps")]
    WalkLimit { limit: usize },

    #[error("model verification failed: {0}")]
    Model(String),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::OutOfDomain { what, value }
}
