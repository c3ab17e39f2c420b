use thiserror::Error;

/// Errors produced by image construction, the detectors and the codecs.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("image must have at least one row and one column, got {rows}x{cols}")]
    EmptyImage { rows: usize, cols: usize },

    #[error("dimension mismatch: {rows}x{cols} needs {expected} values, got {actual}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },

    #[error("intensity {value} at index {index} is outside [0, 255]")]
    IntensityOutOfRange { index: usize, value: i64 },

    #[error("edge map value {value} at index {index} is neither 0 nor 255")]
    InvalidEdgeValue { index: usize, value: u8 },

    #[error("sequence too short: need at least {needed} values, got {actual}")]
    TooShort { needed: usize, actual: usize },

    #[error("window starting at {start} needs 3 values but only {len} are available")]
    WindowOutOfRange { start: usize, len: usize },

    #[error("gaussian kernel size must be odd and positive, got {0}")]
    InvalidKernelSize(usize),

    #[error("gaussian sigma must be finite and positive, got {0}")]
    InvalidSigma(f64),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("malformed image: {0}")]
    MalformedImage(String),

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
