//! Gaussian smoothing applied before detection.
//!
//! The kernel and border handling follow the conventions of the common
//! `GaussianBlur` implementations: sigma derived from the kernel size when
//! not given, and reflect-101 borders (`gfedcb|abcdefgh|gfedcba`).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::types::GrayImage;

/// Normalized 1-D Gaussian weights, applied separably along rows and columns.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianKernel {
    size: usize,
    sigma: f64,
    weights: Vec<f64>,
}

impl GaussianKernel {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn radius(&self) -> usize {
        self.size / 2
    }

    pub fn is_identity(&self) -> bool {
        self.size == 1
    }
}

/// Sigma used when none is supplied: `0.3 * ((size - 1) / 2 - 1) + 0.8`.
pub fn auto_sigma(size: usize) -> f64 {
    0.3 * ((size as f64 - 1.0) * 0.5 - 1.0) + 0.8
}

/// Builds a normalized Gaussian kernel of odd `size`. `sigma = None` picks
/// [`auto_sigma`].
pub fn make_kernel(size: usize, sigma: Option<f64>) -> Result<GaussianKernel> {
    if size == 0 || size.is_multiple_of(2) {
        return Err(Error::InvalidKernelSize(size));
    }
    let sigma = match sigma {
        Some(s) if !s.is_finite() || s <= 0.0 => return Err(Error::InvalidSigma(s)),
        Some(s) => s,
        None => auto_sigma(size),
    };
    let center = (size / 2) as f64;
    let scale = -0.5 / (sigma * sigma);
    let mut weights: Vec<f64> = (0..size)
        .map(|i| {
            let x = i as f64 - center;
            (scale * x * x).exp()
        })
        .collect();
    let sum: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= sum);
    Ok(GaussianKernel { size, sigma, weights })
}

/// Maps a possibly out-of-range index into `0..len` by mirroring about the
/// end pixels without repeating them.
#[inline]
pub(crate) fn reflect_101(index: isize, len: usize) -> usize {
    if len == 1 {
        return 0;
    }
    let period = 2 * (len as isize - 1);
    let i = index.rem_euclid(period);
    if i < len as isize {
        i as usize
    } else {
        (period - i) as usize
    }
}

/// Separable convolution without the final rounding step, row-major.
pub fn blur_unrounded(img: &GrayImage, kernel: &GaussianKernel) -> Vec<f64> {
    let (rows, cols) = (img.rows(), img.cols());
    let radius = kernel.radius() as isize;
    let weights = kernel.weights();

    let mut horizontal = vec![0.0f64; rows * cols];
    horizontal
        .par_chunks_mut(cols)
        .zip(img.pixels().par_chunks(cols))
        .for_each(|(out, src)| {
            for (c, o) in out.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (k, &w) in weights.iter().enumerate() {
                    let idx = reflect_101(c as isize + k as isize - radius, cols);
                    acc += w * f64::from(src[idx]);
                }
                *o = acc;
            }
        });

    let mut out = vec![0.0f64; rows * cols];
    out.par_chunks_mut(cols).enumerate().for_each(|(r, out_row)| {
        for (k, &w) in weights.iter().enumerate() {
            let src_r = reflect_101(r as isize + k as isize - radius, rows);
            let src_row = &horizontal[src_r * cols..(src_r + 1) * cols];
            for (o, &v) in out_row.iter_mut().zip(src_row) {
                *o += w * v;
            }
        }
    });
    out
}

/// Smooths `img` with `kernel`, rounding half away from zero and clamping
/// to [0, 255]. A size-1 kernel returns the input unchanged.
pub fn gaussian_blur(img: &GrayImage, kernel: &GaussianKernel) -> GrayImage {
    if kernel.is_identity() {
        return img.clone();
    }
    let pixels = blur_unrounded(img, kernel)
        .into_iter()
        .map(|v| v.round().clamp(0.0, 255.0) as u8)
        .collect();
    GrayImage::new(img.rows(), img.cols(), pixels).expect("blur preserves dimensions")
}
