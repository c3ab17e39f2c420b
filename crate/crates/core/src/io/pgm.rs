//! Binary PGM (P5) codec, 8-bit only.

use crate::error::{Error, Result};
use crate::types::GrayImage;

/// Parses a binary PGM. Header comments are allowed; `maxval` must be at
/// most 255. Bytes past the pixel payload are ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let magic = bytes.get(..2).ok_or_else(|| Error::MalformedImage("missing PGM magic".into()))?;
    match magic {
        b"P5" => {}
        b"P1" | b"P2" | b"P3" | b"P4" | b"P6" | b"P7" => {
            return Err(Error::UnsupportedFormat(format!(
                "netpbm variant {} (only binary P5 is supported)",
                String::from_utf8_lossy(magic)
            )))
        }
        _ => return Err(Error::MalformedImage("missing PGM magic".into())),
    }

    let mut header = HeaderReader { bytes, pos: 2 };
    let cols = header.number("width")?;
    let rows = header.number("height")?;
    let maxval = header.number("maxval")?;
    if maxval == 0 {
        return Err(Error::MalformedImage("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedFormat(format!("maxval {maxval} (16-bit PGM)")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => header.pos += 1,
        _ => return Err(Error::MalformedImage("missing whitespace after maxval".into())),
    }

    let needed = rows
        .checked_mul(cols)
        .ok_or_else(|| Error::MalformedImage(format!("dimensions {cols}x{rows} overflow")))?;
    let payload = &bytes[header.pos..];
    if payload.len() < needed {
        return Err(Error::MalformedImage(format!(
            "truncated payload: expected {needed} bytes, found {}",
            payload.len()
        )));
    }
    GrayImage::new(rows, cols, payload[..needed].to_vec())
        .map_err(|e| Error::MalformedImage(e.to_string()))
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&b) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let start_len = self.pos;
        self.skip_separators();
        if self.pos == start_len && start_len != 0 {
            return Err(Error::MalformedImage(format!("expected whitespace before {what}")));
        }
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits
            .parse()
            .map_err(|_| Error::MalformedImage(format!("invalid or missing {what}")))
    }
}

/// Canonical serialization: `P5\n<cols> <rows>\n255\n` then raw bytes.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.cols(), img.rows());
    let mut out = Vec::with_capacity(header.len() + img.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}
