//! 8-bit PNG codec. Colour input is reduced to luma.

use crate::error::{Error, Result};
use crate::types::GrayImage;

/// `round(0.299 R + 0.587 G + 0.114 B)`.
#[inline]
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    (0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b))
        .round()
        .clamp(0.0, 255.0) as u8
}

pub fn read_png(bytes: &[u8]) -> Result<GrayImage> {
    let mut decoder = png::Decoder::new(bytes);
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::MalformedImage(format!("png: {e}")))?;
    if reader.info().bit_depth == png::BitDepth::Sixteen {
        return Err(Error::UnsupportedFormat("16-bit PNG".into()));
    }
    let mut buf = vec![0; reader.output_buffer_size()];
    let frame = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::MalformedImage(format!("png: {e}")))?;
    if frame.bit_depth != png::BitDepth::Eight {
        return Err(Error::UnsupportedFormat(format!("PNG bit depth {:?}", frame.bit_depth)));
    }
    let (cols, rows) = (frame.width as usize, frame.height as usize);
    let data = &buf[..frame.buffer_size()];
    let stride = frame.line_size;

    let channels = match frame.color_type {
        png::ColorType::Grayscale => 1,
        png::ColorType::GrayscaleAlpha => 2,
        png::ColorType::Rgb => 3,
        png::ColorType::Rgba => 4,
        png::ColorType::Indexed => {
            return Err(Error::UnsupportedFormat("unexpanded indexed PNG".into()))
        }
    };
    let mut pixels = Vec::with_capacity(rows * cols);
    for line in data.chunks(stride).take(rows) {
        for px in line[..cols * channels].chunks_exact(channels) {
            pixels.push(match channels {
                1 | 2 => px[0],
                _ => luma(px[0], px[1], px[2]),
            });
        }
    }
    GrayImage::new(rows, cols, pixels).map_err(|e| Error::MalformedImage(e.to_string()))
}

/// Encodes as an 8-bit grayscale PNG.
pub fn write_png(img: &GrayImage) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, img.cols() as u32, img.rows() as u32);
        encoder.set_color(png::ColorType::Grayscale);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder
            .write_header()
            .map_err(|e| Error::MalformedImage(format!("png: {e}")))?;
        writer
            .write_image_data(img.pixels())
            .map_err(|e| Error::MalformedImage(format!("png: {e}")))?;
    }
    Ok(out)
}
