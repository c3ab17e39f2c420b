//! Independent reference implementations and fixtures shared by the
//! integration tests. Nothing here calls into the detector, blur or
//! elimination code it is used to check.

#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scanedge::{EdgeMap, GrayImage};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_fixture(name: &str) -> GrayImage {
    let bytes = std::fs::read(fixture(name)).expect("fixture present");
    scanedge::io::read_pgm(&bytes).expect("fixture parses")
}

pub fn random_image(rng: &mut impl Rng, rows: usize, cols: usize, lo: u8, hi: u8) -> GrayImage {
    let pixels = (0..rows * cols).map(|_| rng.gen_range(lo..=hi)).collect();
    GrayImage::new(rows, cols, pixels).unwrap()
}

pub fn random_edge_map(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> EdgeMap {
    let values = (0..rows * cols)
        .map(|_| if rng.gen_bool(density) { 255 } else { 0 })
        .collect();
    EdgeMap::new(rows, cols, values).unwrap()
}

/// Straight transcription of the line scan: differences, SMDs, global
/// mean and deviation (divisors n-2 and n-3 for a line of n pixels),
/// then a window loop that evaluates all four comparisons and jumps by
/// `advance` after a hit. Returns the marked pixel positions.
pub fn oracle_scan_line(line: &[u8], thres: f64, thres2: f64, thres3: f64, advance: usize) -> Vec<usize> {
    let n = line.len();
    if n < 5 {
        return vec![];
    }
    let mut d_a = vec![0i32; n - 1];
    for c in 0..n - 1 {
        d_a[c] = line[c + 1] as i32 - line[c] as i32;
    }
    let mut smd = vec![0i32; n - 2];
    for c in 0..n - 2 {
        smd[c] = d_a[c + 1].abs() + d_a[c].abs();
    }

    let mut total = 0.0;
    for c in 0..=n - 3 {
        total += smd[c] as f64;
    }
    let mgsmd = total / (n - 2) as f64;
    let mut dev = 0.0;
    for c in 0..=n - 3 {
        dev += (mgsmd - smd[c] as f64).powi(2);
    }
    let dpg = (dev / (n - 3) as f64).sqrt();

    let mut edges = vec![];
    let mut c = 0usize;
    while c + 2 <= smd.len() - 1 {
        let mlsmd = (smd[c] + smd[c + 1] + smd[c + 2]) as f64 / 3.0;
        let dpl = (((mlsmd - smd[c] as f64).powi(2)
            + (mlsmd - smd[c + 1] as f64).powi(2)
            + (mlsmd - smd[c + 2] as f64).powi(2))
            / 3.0)
            .sqrt();
        let s = smd[c] as f64;
        if (s > (mlsmd + dpl)) && (s > (mgsmd + thres * dpg)) && (mgsmd > thres2) && (mlsmd > thres3) {
            edges.push(c + 1);
            c += advance;
        } else {
            c += 1;
        }
    }
    edges
}

/// Direct 2-D Gaussian convolution with reflect-101 borders, no rounding.
/// The 2-D weight at offset (i, j) is exp(-(i^2 + j^2) / 2 sigma^2)
/// normalized over the full square.
pub fn oracle_blur_2d(img: &GrayImage, size: usize, sigma: f64) -> Vec<f64> {
    let half = (size / 2) as i64;
    let mut w2 = vec![vec![0.0f64; size]; size];
    let mut total = 0.0;
    for i in -half..=half {
        for j in -half..=half {
            let w = (-((i * i + j * j) as f64) / (2.0 * sigma * sigma)).exp();
            w2[(i + half) as usize][(j + half) as usize] = w;
            total += w;
        }
    }
    let mirror = |p: i64, len: usize| -> usize {
        let len = len as i64;
        if len == 1 {
            return 0;
        }
        let mut p = p;
        loop {
            if p < 0 {
                p = -p;
            } else if p >= len {
                p = 2 * (len - 1) - p;
            } else {
                return p as usize;
            }
        }
    };
    let (rows, cols) = (img.rows(), img.cols());
    let mut out = vec![0.0; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            let mut acc = 0.0;
            for i in -half..=half {
                for j in -half..=half {
                    let rr = mirror(r as i64 + i, rows);
                    let cc = mirror(c as i64 + j, cols);
                    acc += w2[(i + half) as usize][(j + half) as usize] / total * img.get(rr, cc) as f64;
                }
            }
            out[r * cols + c] = acc;
        }
    }
    out
}

/// Keeps a pixel iff it is an edge and at least one of its in-bounds
/// 8-neighbours is an edge in the input.
pub fn oracle_eliminate(map: &EdgeMap) -> Vec<u8> {
    let (rows, cols) = (map.rows() as i64, map.cols() as i64);
    let v = map.values();
    let mut out = vec![0u8; v.len()];
    for r in 0..rows {
        for c in 0..cols {
            if v[(r * cols + c) as usize] != 255 {
                continue;
            }
            let mut count = 0;
            for dr in [-1, 0, 1] {
                for dc in [-1, 0, 1] {
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    let (nr, nc) = (r + dr, c + dc);
                    if nr >= 0 && nr < rows && nc >= 0 && nc < cols && v[(nr * cols + nc) as usize] == 255 {
                        count += 1;
                    }
                }
            }
            if count > 0 {
                out[(r * cols + c) as usize] = 255;
            }
        }
    }
    out
}

/// Flat regions joined by linear five-pixel ramps, identical on every row.
pub fn soft_ramps(rows: usize, cols: usize) -> GrayImage {
    let levels = [40.0f64, 190.0, 70.0, 220.0, 30.0, 160.0];
    let flat = 9usize;
    let ramp = 5usize;
    let period = flat + ramp;
    GrayImage::from_fn(rows, cols, |_, c| {
        let seg = (c / period) % levels.len();
        let pos = c % period;
        let from = levels[seg];
        let to = levels[(seg + 1) % levels.len()];
        if pos < flat {
            from as u8
        } else {
            let t = (pos - flat + 1) as f64 / (ramp + 1) as f64;
            (from + (to - from) * t).round() as u8
        }
    })
    .unwrap()
}

/// 0 on the left of `at`, 255 from `at` on.
pub fn hard_step(rows: usize, cols: usize, at: usize) -> GrayImage {
    GrayImage::from_fn(rows, cols, |_, c| if c < at { 0 } else { 255 }).unwrap()
}

/// Mean length of maximal horizontal runs of edge pixels.
pub fn mean_horizontal_run(map: &EdgeMap) -> f64 {
    let (mut runs, mut total) = (0usize, 0usize);
    for r in 0..map.rows() {
        let mut len = 0;
        for c in 0..=map.cols() {
            if c < map.cols() && map.is_edge(r, c) {
                len += 1;
            } else if len > 0 {
                runs += 1;
                total += len;
                len = 0;
            }
        }
    }
    if runs == 0 {
        0.0
    } else {
        total as f64 / runs as f64
    }
}
