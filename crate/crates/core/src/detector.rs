//! Scan-line edge detector.
//!
//! Every row and every column is scanned independently as a 1-D line of
//! intensities. For a line of `n` pixels we form `n - 1` adjacent
//! differences and `n - 2` SMD values (sum of the moduli of two consecutive
//! differences). The line contributes one global mean/std of its SMDs; a
//! five-pixel evaluation window (three SMDs) slides along the line and fires
//! when its first SMD stands out both locally and globally. The pixel after
//! that SMD, i.e. the window's second pixel, becomes an edge.
//!
//! Horizontal and vertical results are OR-ed into a single [`EdgeMap`].

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::postprocess::eliminate_isolated;
use crate::preprocess::{gaussian_blur, make_kernel};
use crate::types::{DetectorParams, EdgeMap, GlobalStats, GrayImage, LocalWindowStats, ScanBuffer};

/// Number of SMD values in one evaluation window.
pub const WINDOW_SMDS: usize = 3;

/// Shortest line that holds a full evaluation window.
pub const MIN_LINE_LEN: usize = WINDOW_SMDS + 2;

/// `out[i] = line[i + 1] - line[i]`.
pub fn compute_differences(line: &[u8]) -> Result<Vec<i16>> {
    if line.len() < 2 {
        return Err(Error::TooShort { needed: 2, actual: line.len() });
    }
    Ok(line.windows(2).map(|w| i16::from(w[1]) - i16::from(w[0])).collect())
}

/// `out[i] = |diffs[i]| + |diffs[i + 1]|`.
pub fn compute_smd(diffs: &[i16]) -> Result<Vec<u16>> {
    if diffs.len() < 2 {
        return Err(Error::TooShort { needed: 2, actual: diffs.len() });
    }
    Ok(diffs
        .windows(2)
        .map(|d| d[0].unsigned_abs() + d[1].unsigned_abs())
        .collect())
}

/// Mean of all SMDs on a line and their standard deviation with divisor
/// `count - 1`.
pub fn global_stats(smds: &[u16]) -> Result<GlobalStats> {
    if smds.len() < 2 {
        return Err(Error::TooShort { needed: 2, actual: smds.len() });
    }
    let count = smds.len() as f64;
    let mgsmd = smds.iter().map(|&s| f64::from(s)).sum::<f64>() / count;
    let sq: f64 = smds
        .iter()
        .map(|&s| {
            let d = mgsmd - f64::from(s);
            d * d
        })
        .sum();
    Ok(GlobalStats {
        mgsmd,
        dpg: (sq / (count - 1.0)).sqrt(),
    })
}

/// Mean and population standard deviation of `smds[start..start + 3]`.
pub fn local_stats(smds: &[u16], start: usize) -> Result<LocalWindowStats> {
    let window = start
        .checked_add(WINDOW_SMDS)
        .and_then(|end| smds.get(start..end))
        .ok_or(Error::WindowOutOfRange { start, len: smds.len() })?;
    Ok(window_stats(window))
}

#[inline]
fn window_stats(window: &[u16]) -> LocalWindowStats {
    let (a, b, c) = (f64::from(window[0]), f64::from(window[1]), f64::from(window[2]));
    let mlsmd = (a + b + c) / 3.0;
    let (da, db, dc) = (mlsmd - a, mlsmd - b, mlsmd - c);
    LocalWindowStats {
        mlsmd,
        dpl: ((da * da + db * db + dc * dc) / 3.0).sqrt(),
    }
}

/// The four-way edge predicate. All comparisons are strict.
#[inline]
pub fn decide_edge(smd0: u16, local: &LocalWindowStats, global: &GlobalStats, params: &DetectorParams) -> bool {
    let s = f64::from(smd0);
    s > local.mlsmd + local.dpl
        && s > global.mgsmd + params.thres * global.dpg
        && global.mgsmd > params.thres2
        && local.mlsmd > params.thres3
}

/// Edge positions found on one line, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineScanResult {
    pub edge_indices: Vec<usize>,
}

/// One evaluated window, as recorded by [`trace_line`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowEvaluation {
    /// Index of the window's first SMD (and first pixel).
    pub start: usize,
    pub smd0: u16,
    pub local: LocalWindowStats,
    pub fired: bool,
}

/// Everything computed while scanning one line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineTrace {
    pub diffs: Vec<i16>,
    pub smds: Vec<u16>,
    /// `None` for lines too short to scan.
    pub global: Option<GlobalStats>,
    pub windows: Vec<WindowEvaluation>,
}

impl LineTrace {
    pub fn edge_indices(&self) -> Vec<usize> {
        self.windows.iter().filter(|w| w.fired).map(|w| w.start + 1).collect()
    }
}

fn walk_windows(
    smds: &[u16],
    global: &GlobalStats,
    params: &DetectorParams,
    mut visit: impl FnMut(WindowEvaluation),
) {
    let jump = params.advance_on_edge.pixels();
    let mut start = 0;
    while start + WINDOW_SMDS <= smds.len() {
        let local = window_stats(&smds[start..start + WINDOW_SMDS]);
        let smd0 = smds[start];
        let fired = decide_edge(smd0, &local, global, params);
        visit(WindowEvaluation { start, smd0, local, fired });
        start += if fired { jump } else { 1 };
    }
}

/// Scans one line, reusing `buf` for the intermediate sequences and
/// appending edge positions to `edges`.
pub fn scan_line_into(line: &[u8], params: &DetectorParams, buf: &mut ScanBuffer, edges: &mut Vec<usize>) {
    if line.len() < MIN_LINE_LEN {
        return;
    }
    buf.fill(line);
    let global = global_stats(&buf.smds).expect("line has at least 3 smds");
    // No window on a quiet line can pass the per-line floor.
    if global.mgsmd <= params.thres2 {
        return;
    }
    walk_windows(&buf.smds, &global, params, |w| {
        if w.fired {
            edges.push(w.start + 1);
        }
    });
}

/// Scans one line. Lines shorter than five pixels yield no edges.
pub fn scan_line(line: &[u8], params: &DetectorParams) -> LineScanResult {
    let mut edge_indices = Vec::new();
    scan_line_into(line, params, &mut ScanBuffer::new(), &mut edge_indices);
    LineScanResult { edge_indices }
}

/// Like [`scan_line`] but records every intermediate value and every
/// window that was evaluated.
pub fn trace_line(line: &[u8], params: &DetectorParams) -> LineTrace {
    let mut buf = ScanBuffer::new();
    buf.fill(line);
    let mut windows = Vec::new();
    let global = if line.len() >= MIN_LINE_LEN {
        let global = global_stats(&buf.smds).expect("line has at least 3 smds");
        walk_windows(&buf.smds, &global, params, |w| windows.push(w));
        Some(global)
    } else {
        None
    };
    LineTrace {
        diffs: buf.diffs,
        smds: buf.smds,
        global,
        windows,
    }
}

/// Edges from scanning every row.
pub fn horizontal_edges(img: &GrayImage, params: &DetectorParams) -> EdgeMap {
    let cols = img.cols();
    let mut map = EdgeMap::zeros(img.rows(), cols);
    map.values_mut()
        .par_chunks_mut(cols)
        .enumerate()
        .for_each_init(
            || (ScanBuffer::new(), Vec::new()),
            |(buf, edges), (r, out)| {
                edges.clear();
                scan_line_into(img.row(r), params, buf, edges);
                for &c in edges.iter() {
                    out[c] = crate::types::EDGE;
                }
            },
        );
    map
}

/// Edges from scanning every column. Each column is copied into a
/// contiguous buffer and run through the same line scanner.
pub fn vertical_edges(img: &GrayImage, params: &DetectorParams) -> EdgeMap {
    let per_column: Vec<Vec<usize>> = (0..img.cols())
        .into_par_iter()
        .map_init(
            || (ScanBuffer::new(), Vec::new()),
            |(buf, column), c| {
                img.column_into(c, column);
                let mut edges = Vec::new();
                scan_line_into(column, params, buf, &mut edges);
                edges
            },
        )
        .collect();
    let mut map = EdgeMap::zeros(img.rows(), img.cols());
    for (c, rows) in per_column.iter().enumerate() {
        for &r in rows {
            map.mark(r, c);
        }
    }
    map
}

/// Wall-clock time spent in each stage of [`detect_report`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimings {
    pub blur: Duration,
    pub hscan: Duration,
    pub vscan: Duration,
    pub elim: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub edges: EdgeMap,
    pub timings: StageTimings,
    /// Pixels dropped by isolated-edge elimination (0 when disabled).
    pub isolated_removed: usize,
}

/// Full pipeline: optional blur, both scans, OR merge, optional isolated
/// edge elimination. Also reports stage timings.
pub fn detect_report(img: &GrayImage, params: &DetectorParams) -> Result<Detection> {
    params.validate()?;
    let mut timings = StageTimings::default();

    let t = Instant::now();
    let blurred;
    let source = if params.blur_kernel > 1 {
        let kernel = make_kernel(params.blur_kernel, params.blur_sigma)?;
        blurred = gaussian_blur(img, &kernel);
        &blurred
    } else {
        img
    };
    timings.blur = t.elapsed();

    let t = Instant::now();
    let horizontal = horizontal_edges(source, params);
    timings.hscan = t.elapsed();

    let t = Instant::now();
    let vertical = vertical_edges(source, params);
    timings.vscan = t.elapsed();

    let mut edges = horizontal.union(&vertical);
    let mut isolated_removed = 0;
    if params.eliminate_isolated {
        let t = Instant::now();
        let before = edges.edge_count();
        edges = eliminate_isolated(&edges);
        isolated_removed = before - edges.edge_count();
        timings.elim = t.elapsed();
    }

    Ok(Detection {
        edges,
        timings,
        isolated_removed,
    })
}

pub fn detect(img: &GrayImage, params: &DetectorParams) -> Result<EdgeMap> {
    detect_report(img, params).map(|d| d.edges)
}
