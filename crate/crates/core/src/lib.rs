//! Edge detection from per-line statistics of adjacent-pixel differences.
//!
//! Each row and column is scanned as a 1-D signal. Along a line the
//! detector forms adjacent intensity differences, sums the moduli of
//! neighbouring pairs (SMD), and compares each SMD against both a
//! line-wide mean/std and the mean/std of a three-SMD sliding window.
//! Horizontal and vertical hits are merged, and isolated hits can be
//! removed afterwards. A Canny implementation is included as a baseline.
//!
//! ```
//! use scanedge::{detect, DetectorParams, GrayImage};
//!
//! let img = GrayImage::from_fn(32, 32, |_, c| if c < 16 { 20 } else { 200 }).unwrap();
//! let edges = detect(&img, &DetectorParams::default()).unwrap();
//! assert_eq!((edges.rows(), edges.cols()), (32, 32));
//! ```

pub mod canny;
pub mod cli;
pub mod detector;
mod error;
pub mod io;
pub mod postprocess;
pub mod preprocess;
pub mod report;
mod types;

pub use canny::{canny, CannyParams};
pub use detector::{
    compute_differences, compute_smd, decide_edge, detect, detect_report, global_stats, local_stats,
    scan_line, trace_line, Detection, LineScanResult, StageTimings,
};
pub use error::{Error, Result};
pub use postprocess::eliminate_isolated;
pub use preprocess::{gaussian_blur, make_kernel, GaussianKernel};
pub use types::{
    Advance, DetectorParams, EdgeMap, GlobalStats, GrayImage, LocalWindowStats, ScanBuffer, EDGE,
};
