//! Canny edge detector used as a comparison baseline.
//!
//! Sobel gradients with an L1 magnitude, non-maximum suppression over four
//! quantized directions, double thresholding and 8-connected hysteresis.
//! No smoothing is applied here; callers blur first if they want to.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::types::{EdgeMap, GrayImage, EDGE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CannyParams {
    pub low_threshold: f64,
    pub high_threshold: f64,
    /// Sobel aperture: 3, 5 or 7.
    pub aperture: usize,
}

impl Default for CannyParams {
    fn default() -> Self {
        Self {
            low_threshold: 50.0,
            high_threshold: 150.0,
            aperture: 3,
        }
    }
}

impl CannyParams {
    pub fn new(low_threshold: f64, high_threshold: f64, aperture: usize) -> Result<Self> {
        let p = Self { low_threshold, high_threshold, aperture };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = (self.low_threshold, self.high_threshold);
        if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi < 0.0 {
            return Err(Error::InvalidParams(format!(
                "canny thresholds must be finite and nonnegative, got {lo}/{hi}"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidParams(format!(
                "canny low threshold {lo} exceeds high threshold {hi}"
            )));
        }
        if !matches!(self.aperture, 3 | 5 | 7) {
            return Err(Error::InvalidParams(format!(
                "canny aperture must be 3, 5 or 7, got {}",
                self.aperture
            )));
        }
        Ok(())
    }
}

/// Horizontal and vertical Sobel responses, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gradients {
    pub rows: usize,
    pub cols: usize,
    pub gx: Vec<i32>,
    pub gy: Vec<i32>,
}

impl Gradients {
    /// `|gx| + |gy|` per pixel.
    pub fn magnitude(&self) -> Vec<i32> {
        self.gx.iter().zip(&self.gy).map(|(x, y)| x.abs() + y.abs()).collect()
    }
}

fn binomial_row(len: usize) -> Vec<i32> {
    let mut row = vec![1i32];
    for _ in 1..len {
        let mut next = vec![1i32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Separable Sobel factors: (smoothing, derivative), each of length `aperture`.
fn sobel_factors(aperture: usize) -> (Vec<i32>, Vec<i32>) {
    let smooth = binomial_row(aperture);
    let base = binomial_row(aperture - 2);
    let mut deriv = vec![0i32; aperture];
    for (i, &b) in base.iter().enumerate() {
        deriv[i] -= b;
        deriv[i + 2] += b;
    }
    (smooth, deriv)
}

#[inline]
fn clamp_index(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

/// Sobel gradients with replicated borders. `gy` is positive when
/// intensity increases with the row index.
pub fn sobel(img: &GrayImage, aperture: usize) -> Result<Gradients> {
    if !matches!(aperture, 3 | 5 | 7) {
        return Err(Error::InvalidParams(format!("sobel aperture must be 3, 5 or 7, got {aperture}")));
    }
    let (rows, cols) = (img.rows(), img.cols());
    let (smooth, deriv) = sobel_factors(aperture);
    let radius = (aperture / 2) as isize;

    // Two horizontal passes: one smoothing, one differentiating.
    let mut h_smooth = vec![0i32; rows * cols];
    let mut h_deriv = vec![0i32; rows * cols];
    h_smooth
        .par_chunks_mut(cols)
        .zip(h_deriv.par_chunks_mut(cols))
        .enumerate()
        .for_each(|(r, (hs, hd))| {
            let src = img.row(r);
            for c in 0..cols {
                let (mut s, mut d) = (0, 0);
                for k in 0..aperture {
                    let v = i32::from(src[clamp_index(c as isize + k as isize - radius, cols)]);
                    s += smooth[k] * v;
                    d += deriv[k] * v;
                }
                hs[c] = s;
                hd[c] = d;
            }
        });

    let mut gx = vec![0i32; rows * cols];
    let mut gy = vec![0i32; rows * cols];
    gx.par_chunks_mut(cols)
        .zip(gy.par_chunks_mut(cols))
        .enumerate()
        .for_each(|(r, (gx_row, gy_row))| {
            for k in 0..aperture {
                let sr = clamp_index(r as isize + k as isize - radius, rows);
                let hd = &h_deriv[sr * cols..(sr + 1) * cols];
                let hs = &h_smooth[sr * cols..(sr + 1) * cols];
                for c in 0..cols {
                    gx_row[c] += smooth[k] * hd[c];
                    gy_row[c] += deriv[k] * hs[c];
                }
            }
        });

    Ok(Gradients { rows, cols, gx, gy })
}

/// Gradient direction quantized to 0, 45, 90 or 135 degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sector {
    Horizontal,
    Diagonal,
    Vertical,
    AntiDiagonal,
}

fn sector(gx: i32, gy: i32) -> Sector {
    let deg = f64::from(gy).atan2(f64::from(gx)).to_degrees().rem_euclid(180.0);
    if !(22.5..157.5).contains(&deg) {
        Sector::Horizontal
    } else if deg < 67.5 {
        Sector::Diagonal
    } else if deg < 112.5 {
        Sector::Vertical
    } else {
        Sector::AntiDiagonal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    None,
    Weak,
    Strong,
}

/// Non-maximum suppression followed by double thresholding.
fn classify(grad: &Gradients, mag: &[i32], low: f64, high: f64) -> Vec<Class> {
    let (rows, cols) = (grad.rows, grad.cols);
    let at = |r: isize, c: isize| -> i32 {
        if r < 0 || c < 0 || r >= rows as isize || c >= cols as isize {
            0
        } else {
            mag[r as usize * cols + c as usize]
        }
    };
    let mut classes = vec![Class::None; rows * cols];
    classes.par_chunks_mut(cols).enumerate().for_each(|(r, out)| {
        let ri = r as isize;
        for (c, class) in out.iter_mut().enumerate() {
            let i = r * cols + c;
            let m = mag[i];
            if f64::from(m) <= low {
                continue;
            }
            let ci = c as isize;
            // Ties along rows and columns go to the lower index so a plateau
            // two pixels wide yields a single-pixel ridge.
            let is_max = match sector(grad.gx[i], grad.gy[i]) {
                Sector::Horizontal => m > at(ri, ci - 1) && m >= at(ri, ci + 1),
                Sector::Vertical => m > at(ri - 1, ci) && m >= at(ri + 1, ci),
                Sector::Diagonal => m > at(ri - 1, ci - 1) && m > at(ri + 1, ci + 1),
                Sector::AntiDiagonal => m > at(ri - 1, ci + 1) && m > at(ri + 1, ci - 1),
            };
            if is_max {
                *class = if f64::from(m) > high { Class::Strong } else { Class::Weak };
            }
        }
    });
    classes
}

/// Keeps strong pixels and every weak pixel 8-connected to one.
fn hysteresis(classes: &[Class], rows: usize, cols: usize) -> EdgeMap {
    let mut map = EdgeMap::zeros(rows, cols);
    let mut stack: Vec<usize> = Vec::new();
    let out = map.values_mut();
    for (i, &class) in classes.iter().enumerate() {
        if class == Class::Strong && out[i] != EDGE {
            out[i] = EDGE;
            stack.push(i);
            while let Some(j) = stack.pop() {
                let (r, c) = ((j / cols) as isize, (j % cols) as isize);
                for dr in -1..=1isize {
                    for dc in -1..=1isize {
                        let (nr, nc) = (r + dr, c + dc);
                        if nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
                            continue;
                        }
                        let k = nr as usize * cols + nc as usize;
                        if classes[k] != Class::None && out[k] != EDGE {
                            out[k] = EDGE;
                            stack.push(k);
                        }
                    }
                }
            }
        }
    }
    map
}

/// Canny edge map of `img`.
pub fn canny(img: &GrayImage, params: &CannyParams) -> Result<EdgeMap> {
    params.validate()?;
    let grad = sobel(img, params.aperture)?;
    let mag = grad.magnitude();
    let classes = classify(&grad, &mag, params.low_threshold, params.high_threshold);
    Ok(hysteresis(&classes, img.rows(), img.cols()))
}
