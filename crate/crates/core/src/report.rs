//! Run metrics and the threshold sweep.

use std::time::Duration;

use serde::Serialize;

use crate::detector::{detect_report, Detection};
use crate::error::{Error, Result};
use crate::types::{DetectorParams, EdgeMap, GrayImage};

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Summary of one detector run. Serializes as a flat JSON object with
/// keys in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetrics {
    pub edge_pixel_count: usize,
    pub edge_density: f64,
    pub isolated_removed: usize,
    pub wall_time_ms_blur: f64,
    pub wall_time_ms_hscan: f64,
    pub wall_time_ms_vscan: f64,
    pub wall_time_ms_elim: f64,
}

impl RunMetrics {
    pub fn from_detection(d: &Detection) -> Self {
        Self {
            edge_pixel_count: d.edges.edge_count(),
            edge_density: d.edges.density(),
            isolated_removed: d.isolated_removed,
            wall_time_ms_blur: ms(d.timings.blur),
            wall_time_ms_hscan: ms(d.timings.hscan),
            wall_time_ms_vscan: ms(d.timings.vscan),
            wall_time_ms_elim: ms(d.timings.elim),
        }
    }
}

/// Summary of one Canny run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CannyMetrics {
    pub edge_pixel_count: usize,
    pub edge_density: f64,
    pub wall_time_ms_blur: f64,
    pub wall_time_ms_canny: f64,
}

impl CannyMetrics {
    pub fn new(edges: &EdgeMap, blur: Duration, canny: Duration) -> Self {
        Self {
            edge_pixel_count: edges.edge_count(),
            edge_density: edges.density(),
            wall_time_ms_blur: ms(blur),
            wall_time_ms_canny: ms(canny),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareMetrics {
    pub detector: RunMetrics,
    pub canny: CannyMetrics,
}

/// One row of a sweep: the `thres` used plus the flat run metrics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub thres: f64,
    #[serde(flatten)]
    pub metrics: RunMetrics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub thres: f64,
    pub detection: Detection,
}

impl SweepEntry {
    pub fn row(&self) -> SweepRow {
        SweepRow {
            thres: self.thres,
            metrics: RunMetrics::from_detection(&self.detection),
        }
    }
}

/// Runs the detector once per `thres` value, every other parameter fixed.
pub fn sweep(img: &GrayImage, base: &DetectorParams, thres_values: &[f64]) -> Result<Vec<SweepEntry>> {
    if thres_values.is_empty() {
        return Err(Error::InvalidParams("sweep needs at least one thres value".into()));
    }
    thres_values
        .iter()
        .map(|&thres| {
            let params = DetectorParams { thres, ..*base };
            detect_report(img, &params).map(|detection| SweepEntry { thres, detection })
        })
        .collect()
}
