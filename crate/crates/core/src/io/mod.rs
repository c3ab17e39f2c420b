//! Image file I/O. PGM is always available; PNG needs the `png` feature.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::Error;
use crate::types::GrayImage;

pub mod pgm;
#[cfg(feature = "png")]
pub mod png;

pub use pgm::{read_pgm, write_pgm};

#[derive(Debug, Error)]
pub enum ImageIoError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Format {
        path: PathBuf,
        #[source]
        source: Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Pgm,
    Png,
}

impl ImageFormat {
    /// `.png` selects PNG; everything else is treated as PGM.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("png") => ImageFormat::Png,
            _ => ImageFormat::Pgm,
        }
    }
}

pub fn decode(bytes: &[u8], format: ImageFormat) -> Result<GrayImage, Error> {
    match format {
        ImageFormat::Pgm => read_pgm(bytes),
        #[cfg(feature = "png")]
        ImageFormat::Png => png::read_png(bytes),
        #[cfg(not(feature = "png"))]
        ImageFormat::Png => Err(Error::UnsupportedFormat("PNG support not compiled in".into())),
    }
}

pub fn encode(img: &GrayImage, format: ImageFormat) -> Result<Vec<u8>, Error> {
    match format {
        ImageFormat::Pgm => Ok(write_pgm(img)),
        #[cfg(feature = "png")]
        ImageFormat::Png => png::write_png(img),
        #[cfg(not(feature = "png"))]
        ImageFormat::Png => Err(Error::UnsupportedFormat("PNG support not compiled in".into())),
    }
}

pub fn read_image(path: &Path) -> Result<GrayImage, ImageIoError> {
    let bytes = fs::read(path).map_err(|source| ImageIoError::Io { path: path.to_owned(), source })?;
    decode(&bytes, ImageFormat::from_path(path))
        .map_err(|source| ImageIoError::Format { path: path.to_owned(), source })
}

pub fn write_image(path: &Path, img: &GrayImage) -> Result<(), ImageIoError> {
    let bytes = encode(img, ImageFormat::from_path(path))
        .map_err(|source| ImageIoError::Format { path: path.to_owned(), source })?;
    fs::write(path, bytes).map_err(|source| ImageIoError::Io { path: path.to_owned(), source })
}
