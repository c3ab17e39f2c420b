//! Command-line front end: `detect`, `compare` and `sweep`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::canny::{canny, CannyParams};
use crate::detector::detect_report;
use crate::io::{read_image, write_image, ImageIoError};
use crate::preprocess::{gaussian_blur, make_kernel};
use crate::report::{sweep, CannyMetrics, CompareMetrics, RunMetrics};
use crate::types::{Advance, DetectorParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "scanedge", version, about = "Scan-line statistics edge detector")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the detector on one image.
    Detect {
        #[command(flatten)]
        io: InputOutput,
        /// Global standard deviation multiplier.
        #[arg(long, default_value_t = 0.8, value_parser = non_negative)]
        thres: f64,
        #[command(flatten)]
        detector: DetectorArgs,
    },
    /// Run the detector and the Canny baseline on the same input.
    Compare {
        #[command(flatten)]
        io: InputOutput,
        #[arg(long, default_value_t = 0.8, value_parser = non_negative)]
        thres: f64,
        #[command(flatten)]
        detector: DetectorArgs,
        /// Where to write the Canny map. Defaults to `<output stem>_canny.<ext>`.
        #[arg(long)]
        canny_output: Option<PathBuf>,
        #[arg(long, default_value_t = 50.0, value_parser = non_negative)]
        canny_low: f64,
        #[arg(long, default_value_t = 150.0, value_parser = non_negative)]
        canny_high: f64,
        /// Sobel aperture (3, 5 or 7).
        #[arg(long, default_value_t = 3)]
        canny_aperture: usize,
    },
    /// Run the detector once per threshold value.
    Sweep {
        /// Input image (`.png` or binary PGM).
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated thres values, e.g. `0.4,1.1,1.6`.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, value_parser = non_negative)]
        thres_list: Vec<f64>,
        /// Directory for `edges_thres_<value>.pgm` maps.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// JSON array of per-threshold metrics; printed to stdout when omitted.
        #[arg(long)]
        metrics: Option<PathBuf>,
        #[command(flatten)]
        detector: DetectorArgs,
    },
}

#[derive(Debug, Args)]
struct InputOutput {
    /// Input image (`.png` or binary PGM).
    #[arg(long)]
    input: PathBuf,
    /// Edge map destination (`.png` or PGM).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Metrics JSON destination; printed to stdout when omitted.
    #[arg(long)]
    metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DetectorArgs {
    /// Per-line mean SMD floor.
    #[arg(long, default_value_t = 1.0, value_parser = non_negative)]
    thres2: f64,
    /// Window mean SMD floor.
    #[arg(long, default_value_t = 6.0, value_parser = non_negative)]
    thres3: f64,
    /// Window jump after a detection (1 or 4).
    #[arg(long, default_value_t = 4, value_parser = advance)]
    advance: usize,
    /// Keep edge pixels that have no edge neighbour.
    #[arg(long)]
    no_isolated_elimination: bool,
    /// Odd Gaussian kernel size; 1 disables smoothing.
    #[arg(long, default_value_t = 7, value_parser = odd_kernel)]
    blur_kernel: usize,
    /// Gaussian sigma, or `auto`.
    #[arg(long, default_value = "auto", value_parser = sigma)]
    blur_sigma: SigmaArg,
    /// Same as `--blur-kernel 1`.
    #[arg(long)]
    no_blur: bool,
}

#[derive(Debug, Clone, Copy)]
struct SigmaArg(Option<f64>);

impl DetectorArgs {
    fn params(&self, thres: f64) -> DetectorParams {
        DetectorParams {
            thres,
            thres2: self.thres2,
            thres3: self.thres3,
            advance_on_edge: Advance::try_from(self.advance).expect("validated by parser"),
            eliminate_isolated: !self.no_isolated_elimination,
            blur_kernel: if self.no_blur { 1 } else { self.blur_kernel },
            blur_sigma: self.blur_sigma.0,
        }
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be a finite nonnegative number"))
    }
}

fn advance(s: &str) -> Result<usize, String> {
    match s {
        "1" => Ok(1),
        "4" => Ok(4),
        _ => Err(format!("`{s}` must be 1 or 4")),
    }
}

fn odd_kernel(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("`{s}` is not a positive integer"))?;
    if v % 2 == 1 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be odd and positive"))
    }
}

fn sigma(s: &str) -> Result<SigmaArg, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(SigmaArg(None));
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is neither `auto` nor a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(SigmaArg(Some(v)))
    } else {
        Err(format!("`{s}` must be positive"))
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Malformed(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Malformed(_) => EXIT_MALFORMED,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Malformed(m) => m,
        }
    }
}

impl From<ImageIoError> for CliError {
    fn from(e: ImageIoError) -> Self {
        match e {
            ImageIoError::Io { .. } => CliError::Io(e.to_string()),
            ImageIoError::Format { .. } => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Detect { io, thres, detector } => {
            let params = detector.params(thres);
            params.validate()?;
            let img = read_image(&io.input)?;
            let detection = detect_report(&img, &params)?;
            if let Some(path) = &io.output {
                write_image(path, &detection.edges.to_image())?;
            }
            emit_json(&RunMetrics::from_detection(&detection), io.metrics.as_deref(), out)
        }
        Command::Compare {
            io,
            thres,
            detector,
            canny_output,
            canny_low,
            canny_high,
            canny_aperture,
        } => {
            let params = detector.params(thres);
            params.validate()?;
            let canny_params = CannyParams::new(canny_low, canny_high, canny_aperture)?;
            let img = read_image(&io.input)?;

            let detection = detect_report(&img, &params)?;

            // Canny sees the same pre-blur as the scan detector.
            let t = Instant::now();
            let blurred = if params.blur_kernel > 1 {
                gaussian_blur(&img, &make_kernel(params.blur_kernel, params.blur_sigma)?)
            } else {
                img.clone()
            };
            let blur_time = t.elapsed();
            let t = Instant::now();
            let canny_edges = canny(&blurred, &canny_params)?;
            let canny_time = t.elapsed();

            if let Some(path) = &io.output {
                write_image(path, &detection.edges.to_image())?;
            }
            if let Some(path) = canny_output.or_else(|| io.output.as_deref().map(canny_sibling)) {
                write_image(&path, &canny_edges.to_image())?;
            }
            let metrics = CompareMetrics {
                detector: RunMetrics::from_detection(&detection),
                canny: CannyMetrics::new(&canny_edges, blur_time, canny_time),
            };
            emit_json(&metrics, io.metrics.as_deref(), out)
        }
        Command::Sweep {
            input,
            thres_list,
            output_dir,
            metrics,
            detector,
        } => {
            let base = detector.params(DetectorParams::default().thres);
            base.validate()?;
            let img = read_image(&input)?;
            let entries = sweep(&img, &base, &thres_list)?;
            if let Some(dir) = &output_dir {
                fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
                for entry in &entries {
                    let path = dir.join(format!("edges_thres_{}.pgm", entry.thres));
                    write_image(&path, &entry.detection.edges.to_image())?;
                }
            }
            let rows: Vec<_> = entries.iter().map(|e| e.row()).collect();
            emit_json(&rows, metrics.as_deref(), out)
        }
    }
}

fn canny_sibling(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("edges");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_canny.{ext}"),
        None => format!("{stem}_canny"),
    };
    path.with_file_name(name)
}

fn emit_json<T: Serialize>(value: &T, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("metrics serialize");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canny_sibling_names() {
        assert_eq!(canny_sibling(Path::new("out/e.pgm")), PathBuf::from("out/e_canny.pgm"));
        assert_eq!(canny_sibling(Path::new("e")), PathBuf::from("e_canny"));
    }

    #[test]
    fn flag_parsers() {
        assert!(non_negative("-1").is_err());
        assert!(non_negative("nan").is_err());
        assert_eq!(non_negative("0.4"), Ok(0.4));
        assert!(advance("2").is_err());
        assert!(odd_kernel("4").is_err());
        assert!(odd_kernel("0").is_err());
        assert_eq!(odd_kernel("1"), Ok(1));
        assert!(sigma("auto").unwrap().0.is_none());
        assert!(sigma("-2").is_err());
    }

    #[test]
    fn defaults_match_library_defaults() {
        let cli = Cli::try_parse_from(["scanedge", "detect", "--input", "x.pgm"]).unwrap();
        let Command::Detect { thres, detector, .. } = cli.command else { panic!() };
        assert_eq!(detector.params(thres), DetectorParams::default());
    }

    #[test]
    fn no_blur_flag() {
        let cli = Cli::try_parse_from(["scanedge", "detect", "--input", "x", "--no-blur", "--advance", "1"]).unwrap();
        let Command::Detect { thres, detector, .. } = cli.command else { panic!() };
        let p = detector.params(thres);
        assert_eq!(p.blur_kernel, 1);
        assert_eq!(p.advance_on_edge, Advance::One);
    }
}
