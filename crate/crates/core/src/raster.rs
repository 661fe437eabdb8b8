//! Grayscale image carrier and bit-exact PGM interchange.
//!
//! Binary PGM (P5, maxval 255) is the on-disk interchange format because it
//! can be written byte-for-byte deterministically; 8-bit PNG is accepted as a
//! convenience reader, with color inputs converted to luminance using fixed
//! ITU-R 601 weights.

use crate::error::{Error, Result};
use std::fs;
use std::path::Path;

/// Row-major 8-bit grayscale image. 0 is background (black), 255 brightest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Build from raw parts. Both dimensions must be at least 1 and the
    /// buffer length must equal `width * height`.
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "image dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        let expected = width.checked_mul(height).ok_or_else(|| {
            Error::InvalidParameter(format!("image dimensions {width}x{height} overflow"))
        })?;
        if pixels.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "pixel buffer length {} does not match {width}x{height}",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Build by evaluating `f(row, col)` at every pixel, row-major.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                pixels.push(f(r, c));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        debug_assert!(row < self.height && col < self.width);
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        debug_assert!(row < self.height && col < self.width);
        self.pixels[row * self.width + col] = value;
    }

    /// Pixels scaled to [0, 1], row-major.
    pub fn to_unit_vec(&self) -> Vec<f64> {
        self.pixels.iter().map(|&p| f64::from(p) / 255.0).collect()
    }
}

/// Load a binary PGM (P5, maxval 255) or an 8-bit PNG.
///
/// PGM pixels are read bit-exactly. PNG color inputs are converted with
/// ITU-R 601 luminance weights, rounded half up.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let magic = bytes.get(..2).ok_or_else(|| Error::ImageFormat {
        path: path.into(),
        offset: 0,
        reason: "file too short to hold a magic number".into(),
    })?;
    if magic == b"P5" {
        parse_pgm(&bytes, path)
    } else if magic == b"\x89P" {
        parse_png(&bytes, path)
    } else if matches!(magic, [b'P', b'1'..=b'7']) {
        Err(Error::ImageFormat {
            path: path.into(),
            offset: 0,
            reason: format!(
                "unsupported magic \"P{}\" (only binary P5 is supported)",
                magic[1] as char
            ),
        })
    } else {
        Err(Error::ImageFormat {
            path: path.into(),
            offset: 0,
            reason: "unrecognized image format (expected PGM P5 or PNG)".into(),
        })
    }
}

/// Write a binary PGM: `P5\n{width} {height}\n255\n` followed by the raw
/// pixel bytes. Output is byte-deterministic.
pub fn save_image(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let header = format!("P5\n{} {}\n255\n", img.width, img.height);
    let mut out = Vec::with_capacity(header.len() + img.pixels.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&img.pixels);
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skip whitespace runs and `#` comments (through end of line).
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&b) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read_uint(&mut self, path: &Path, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_digit() {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add((b - b'0') as usize))
                    .ok_or_else(|| Error::ImageFormat {
                        path: path.into(),
                        offset: start,
                        reason: format!("{what} overflows"),
                    })?;
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(Error::ImageFormat {
                path: path.into(),
                offset: start,
                reason: format!("expected {what}"),
            });
        }
        Ok(value)
    }
}

fn parse_pgm(bytes: &[u8], path: &Path) -> Result<GrayImage> {
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.read_uint(path, "width")?;
    let height = cur.read_uint(path, "height")?;
    let maxval_at = {
        cur.skip_separators();
        cur.pos
    };
    let maxval = cur.read_uint(path, "maxval")?;
    if maxval != 255 {
        return Err(Error::ImageFormat {
            path: path.into(),
            offset: maxval_at,
            reason: format!("unsupported bit depth: maxval {maxval} (expected 255)"),
        });
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => {
            return Err(Error::ImageFormat {
                path: path.into(),
                offset: cur.pos,
                reason: "expected a single whitespace byte after maxval".into(),
            })
        }
    }
    if width == 0 || height == 0 {
        return Err(Error::ImageFormat {
            path: path.into(),
            offset: 2,
            reason: format!("invalid dimensions {width}x{height}"),
        });
    }
    let expected = width.checked_mul(height).ok_or_else(|| Error::ImageFormat {
        path: path.into(),
        offset: 2,
        reason: format!("dimensions {width}x{height} overflow"),
    })?;
    let available = bytes.len() - cur.pos;
    if available < expected {
        return Err(Error::ImageFormat {
            path: path.into(),
            offset: cur.pos,
            reason: format!("truncated pixel data: expected {expected} bytes, found {available}"),
        });
    }
    if available > expected {
        return Err(Error::ImageFormat {
            path: path.into(),
            offset: cur.pos + expected,
            reason: format!("{} trailing bytes after pixel data", available - expected),
        });
    }
    GrayImage::new(width, height, bytes[cur.pos..].to_vec())
}

/// ITU-R 601 luminance, rounded half up.
fn luma601(r: u8, g: u8, b: u8) -> u8 {
    let y = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
    (y + 0.5).floor() as u8
}

fn parse_png(bytes: &[u8], path: &Path) -> Result<GrayImage> {
    use image::DynamicImage;
    let decoded = image::load_from_memory_with_format(bytes, image::ImageFormat::Png).map_err(
        |e| Error::ImageFormat {
            path: path.into(),
            offset: 0,
            reason: format!("png decode: {e}"),
        },
    )?;
    let (w, h) = (decoded.width() as usize, decoded.height() as usize);
    let pixels = match decoded {
        DynamicImage::ImageLuma8(buf) => buf.into_raw(),
        DynamicImage::ImageLumaA8(buf) => buf.pixels().map(|p| p.0[0]).collect(),
        DynamicImage::ImageRgb8(buf) => buf
            .pixels()
            .map(|p| luma601(p.0[0], p.0[1], p.0[2]))
            .collect(),
        DynamicImage::ImageRgba8(buf) => buf
            .pixels()
            .map(|p| luma601(p.0[0], p.0[1], p.0[2]))
            .collect(),
        other => {
            return Err(Error::ImageFormat {
                path: path.into(),
                offset: 0,
                reason: format!(
                    "unsupported bit depth or color type {:?} (8-bit only)",
                    other.color()
                ),
            })
        }
    };
    GrayImage::new(w, h, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tmp() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn minimal_p5_loads() {
        let dir = tmp();
        let p = dir.path().join("one.pgm");
        fs::write(&p, b"P5 1 1 255 \x00".to_vec()).unwrap();
        // Canonical writer form also loads.
        let q = dir.path().join("canon.pgm");
        fs::write(&q, b"P5\n1 1\n255\n\x00".to_vec()).unwrap();
        for f in [&p, &q] {
            let img = load_image(f).unwrap();
            assert_eq!((img.width(), img.height()), (1, 1));
            assert_eq!(img.pixels(), &[0]);
        }
    }

    #[test]
    fn save_writes_exact_bytes() {
        let dir = tmp();
        let p = dir.path().join("two.pgm");
        let img = GrayImage::new(2, 1, vec![0, 255]).unwrap();
        save_image(&img, &p).unwrap();
        assert_eq!(fs::read(&p).unwrap(), b"P5\n2 1\n255\n\x00\xff".to_vec());
    }

    #[test]
    fn save_then_load_round_trips_bytes() {
        let dir = tmp();
        let p = dir.path().join("a.pgm");
        let q = dir.path().join("b.pgm");
        let img = GrayImage::from_fn(5, 3, |r, c| (r * 40 + c * 7) as u8);
        save_image(&img, &p).unwrap();
        let loaded = load_image(&p).unwrap();
        save_image(&loaded, &q).unwrap();
        assert_eq!(fs::read(&p).unwrap(), fs::read(&q).unwrap());
    }

    #[test]
    fn p3_is_rejected() {
        let dir = tmp();
        let p = dir.path().join("ascii.ppm");
        fs::write(&p, b"P3\n1 1\n255\n0 0 0\n".to_vec()).unwrap();
        let err = load_image(&p).unwrap_err();
        assert!(err.to_string().contains("unsupported magic"), "{err}");
    }

    #[test]
    fn maxval_other_than_255_is_rejected() {
        let dir = tmp();
        let p = dir.path().join("deep.pgm");
        fs::write(&p, b"P5\n1 1\n65535\n\x00\x00".to_vec()).unwrap();
        let err = load_image(&p).unwrap_err();
        assert!(err.to_string().contains("unsupported bit depth"), "{err}");
    }

    #[test]
    fn truncated_raster_reports_offset() {
        let dir = tmp();
        let p = dir.path().join("short.pgm");
        fs::write(&p, b"P5\n2 2\n255\n\x00".to_vec()).unwrap();
        let err = load_image(&p).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("truncated") && msg.contains("byte offset"), "{msg}");
    }

    #[test]
    fn missing_file_errors_with_path() {
        let err = load_image("/nonexistent/nowhere.pgm").unwrap_err();
        assert!(err.to_string().contains("nowhere.pgm"));
    }

    #[test]
    fn save_to_missing_directory_errors() {
        let img = GrayImage::new(1, 1, vec![7]).unwrap();
        let err = save_image(&img, "/nonexistent/dir/out.pgm").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn png_gray_round_trip_and_color_conversion() {
        let dir = tmp();
        let gray_path = dir.path().join("g.png");
        let rgb_path = dir.path().join("c.png");

        let buf = image::GrayImage::from_fn(4, 2, |x, y| image::Luma([(x * 50 + y * 13) as u8]));
        buf.save(&gray_path).unwrap();
        let img = load_image(&gray_path).unwrap();
        assert_eq!((img.width(), img.height()), (4, 2));
        assert_eq!(img.get(1, 3), 163);

        let rgb = image::RgbImage::from_fn(2, 1, |x, _| {
            if x == 0 {
                image::Rgb([255, 0, 0])
            } else {
                image::Rgb([10, 20, 30])
            }
        });
        rgb.save(&rgb_path).unwrap();
        let img = load_image(&rgb_path).unwrap();
        // 0.299*255 = 76.245 -> 76;  2.99 + 11.74 + 3.42 = 18.15 -> 18
        assert_eq!(img.pixels(), &[76, 18]);
    }

    #[test]
    fn png_16_bit_is_rejected() {
        let dir = tmp();
        let p = dir.path().join("deep.png");
        let buf = image::ImageBuffer::<image::Luma<u16>, Vec<u16>>::from_pixel(
            2,
            2,
            image::Luma([40000u16]),
        );
        buf.save(&p).unwrap();
        let err = load_image(&p).unwrap_err();
        assert!(err.to_string().contains("unsupported bit depth"), "{err}");
    }

    proptest! {
        // load(save(img)) is the identity on (width, height, pixels).
        #[test]
        fn pgm_round_trip_identity(
            w in 1usize..24,
            h in 1usize..24,
            seed in any::<u64>(),
        ) {
            let mut state = seed;
            let img = GrayImage::from_fn(w, h, |_, _| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 56) as u8
            });
            let dir = tmp();
            let p = dir.path().join("rt.pgm");
            save_image(&img, &p).unwrap();
            let back = load_image(&p).unwrap();
            prop_assert_eq!(back, img);
        }
    }
}
