//! Shared data model: images, edge maps, detector parameters and the
//! statistics records produced while scanning a line.

use std::fmt;

use crate::error::{Error, Result};

/// An 8-bit grayscale image stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct GrayImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Wraps `pixels` (row-major) as a `rows` x `cols` image.
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(rows, cols, pixels.len())?;
        Ok(Self { rows, cols, pixels })
    }

    /// Builds an image from wider integers, rejecting anything outside [0, 255].
    pub fn from_intensities<T>(rows: usize, cols: usize, values: &[T]) -> Result<Self>
    where
        T: Copy + Into<i64>,
    {
        check_dims(rows, cols, values.len())?;
        let pixels = values
            .iter()
            .enumerate()
            .map(|(index, &v)| {
                let value = v.into();
                u8::try_from(value).map_err(|_| Error::IntensityOutOfRange { index, value })
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { rows, cols, pixels })
    }

    /// A constant image.
    pub fn filled(rows: usize, cols: usize, value: u8) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows.saturating_mul(cols)])
    }

    /// Builds an image by evaluating `f(row, col)` for every pixel.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(rows.saturating_mul(cols));
        for r in 0..rows {
            for c in 0..cols {
                pixels.push(f(r, c));
            }
        }
        Self::new(rows, cols, pixels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false: a valid image has at least one pixel.
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.cols + col]
    }

    /// Contiguous slice of one row.
    #[inline]
    pub fn row(&self, row: usize) -> &[u8] {
        let start = row * self.cols;
        &self.pixels[start..start + self.cols]
    }

    /// Copies column `col` into `out`, replacing its contents.
    pub fn column_into(&self, col: usize, out: &mut Vec<u8>) {
        out.clear();
        out.extend(self.pixels[col..].iter().step_by(self.cols).copied());
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows);
        self.column_into(col, &mut out);
        out
    }

    pub fn transpose(&self) -> Self {
        let mut pixels = Vec::with_capacity(self.pixels.len());
        for c in 0..self.cols {
            pixels.extend(self.pixels[c..].iter().step_by(self.cols).copied());
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            pixels,
        }
    }

    /// Adds `k` to every pixel. Fails instead of clamping.
    pub fn offset(&self, k: i32) -> Result<Self> {
        let shifted: Vec<i64> = self.pixels.iter().map(|&p| i64::from(p) + i64::from(k)).collect();
        Self::from_intensities(self.rows, self.cols, &shifted)
    }
}

impl fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrayImage")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .finish_non_exhaustive()
    }
}

fn check_dims(rows: usize, cols: usize, actual: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyImage { rows, cols });
    }
    let expected = rows
        .checked_mul(cols)
        .ok_or(Error::DimensionMismatch { rows, cols, expected: usize::MAX, actual })?;
    if expected != actual {
        return Err(Error::DimensionMismatch { rows, cols, expected, actual });
    }
    Ok(())
}

/// Intensity written for an edge pixel.
pub const EDGE: u8 = 255;

/// Binary edge map with values 0 or [`EDGE`], same shape as its source image.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeMap {
    rows: usize,
    cols: usize,
    values: Vec<u8>,
}

impl EdgeMap {
    /// Validates that every value is 0 or 255.
    pub fn new(rows: usize, cols: usize, values: Vec<u8>) -> Result<Self> {
        check_dims(rows, cols, values.len())?;
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v != 0 && v != EDGE) {
            return Err(Error::InvalidEdgeValue { index, value });
        }
        Ok(Self { rows, cols, values })
    }

    /// All-zero map. Panics on a zero dimension.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "edge map must be non-empty");
        Self {
            rows,
            cols,
            values: vec![0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut map = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    map.mark(r, c);
                }
            }
        }
        map
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u8] {
        &mut self.values
    }

    #[inline]
    pub fn is_edge(&self, row: usize, col: usize) -> bool {
        self.values[row * self.cols + col] == EDGE
    }

    #[inline]
    pub fn mark(&mut self, row: usize, col: usize) {
        self.values[row * self.cols + col] = EDGE;
    }

    #[inline]
    pub fn clear(&mut self, row: usize, col: usize) {
        self.values[row * self.cols + col] = 0;
    }

    pub fn edge_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == EDGE).count()
    }

    /// Fraction of pixels that are edges.
    pub fn density(&self) -> f64 {
        self.edge_count() as f64 / self.values.len() as f64
    }

    /// Pixel-wise OR of two maps of the same shape.
    pub fn union(&self, other: &EdgeMap) -> EdgeMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a | b).collect();
        EdgeMap {
            rows: self.rows,
            cols: self.cols,
            values,
        }
    }

    /// The map viewed as a grayscale image (0 / 255).
    pub fn to_image(&self) -> GrayImage {
        GrayImage {
            rows: self.rows,
            cols: self.cols,
            pixels: self.values.clone(),
        }
    }
}

impl fmt::Debug for EdgeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "EdgeMap {}x{} ({} edges)", self.rows, self.cols, self.edge_count())?;
        if self.rows * self.cols <= 64 * 64 {
            for r in 0..self.rows {
                let line: String = (0..self.cols)
                    .map(|c| if self.is_edge(r, c) { '#' } else { '.' })
                    .collect();
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

/// How far the evaluation window jumps after it fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Advance {
    One,
    #[default]
    Four,
}

impl Advance {
    pub fn pixels(self) -> usize {
        match self {
            Advance::One => 1,
            Advance::Four => 4,
        }
    }
}

impl TryFrom<usize> for Advance {
    type Error = Error;

    fn try_from(value: usize) -> Result<Self> {
        match value {
            1 => Ok(Advance::One),
            4 => Ok(Advance::Four),
            other => Err(Error::InvalidParams(format!("advance must be 1 or 4, got {other}"))),
        }
    }
}

/// Parameters of the scan-line detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorParams {
    /// Multiplier applied to the line's global standard deviation.
    pub thres: f64,
    /// The line's mean SMD must exceed this.
    pub thres2: f64,
    /// The window's mean SMD must exceed this.
    pub thres3: f64,
    pub advance_on_edge: Advance,
    pub eliminate_isolated: bool,
    /// Odd Gaussian kernel size; 1 disables smoothing.
    pub blur_kernel: usize,
    /// `None` derives sigma from the kernel size.
    pub blur_sigma: Option<f64>,
}

impl Default for DetectorParams {
    fn default() -> Self {
        Self {
            thres: 0.8,
            thres2: 1.0,
            thres3: 6.0,
            advance_on_edge: Advance::Four,
            eliminate_isolated: true,
            blur_kernel: 7,
            blur_sigma: None,
        }
    }
}

impl DetectorParams {
    /// Defaults with smoothing turned off.
    pub fn unblurred() -> Self {
        Self {
            blur_kernel: 1,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("thres", self.thres), ("thres2", self.thres2), ("thres3", self.thres3)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be a finite nonnegative number, got {v}")));
            }
        }
        if self.blur_kernel == 0 || self.blur_kernel.is_multiple_of(2) {
            return Err(Error::InvalidKernelSize(self.blur_kernel));
        }
        if let Some(sigma) = self.blur_sigma {
            if !sigma.is_finite() || sigma <= 0.0 {
                return Err(Error::InvalidSigma(sigma));
            }
        }
        Ok(())
    }
}

/// Mean and sample standard deviation of every SMD along one line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalStats {
    pub mgsmd: f64,
    pub dpg: f64,
}

/// Mean and population standard deviation of the three SMDs in a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalWindowStats {
    pub mlsmd: f64,
    pub dpl: f64,
}

/// Per-line working buffers: adjacent differences and their pairwise
/// absolute sums (SMD). Reused across lines to avoid reallocating.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanBuffer {
    pub diffs: Vec<i16>,
    pub smds: Vec<u16>,
}

impl ScanBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Recomputes both buffers for `line`. Lines shorter than 3 pixels
    /// leave `smds` empty.
    pub fn fill(&mut self, line: &[u8]) {
        self.diffs.clear();
        self.diffs
            .extend(line.windows(2).map(|w| i16::from(w[1]) - i16::from(w[0])));
        self.smds.clear();
        self.smds
            .extend(self.diffs.windows(2).map(|d| d[0].unsigned_abs() + d[1].unsigned_abs()));
    }
}
