//! Minimal PGM (portable graymap) reader and writer.
//!
//! Reads ASCII (`P2`) and binary (`P5`) graymaps with `maxval` up to 65535;
//! 16-bit binary samples are big-endian. Writes either encoding.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgmError {
    #[error("not a PGM file: expected magic P2 or P5, found {0:?}")]
    BadMagic(String),
    #[error("malformed PGM header: missing {0}")]
    MissingHeaderField(&'static str),
    #[error("malformed PGM header: {field} {value:?} is not a valid number")]
    BadHeaderField { field: &'static str, value: String },
    #[error("PGM maxval {0} is outside 1..=65535")]
    BadMaxval(u32),
    #[error("PGM dimensions must be positive, found {width}x{height}")]
    EmptyImage { width: usize, height: usize },
    #[error("PGM sample {index} {value:?} is not a valid integer")]
    BadSample { index: usize, value: String },
    #[error("PGM sample {index} = {value} exceeds maxval {maxval}")]
    SampleOverMaxval {
        index: usize,
        value: u32,
        maxval: u16,
    },
    #[error("PGM raster truncated: expected {expected} samples, found {found}")]
    Truncated { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmEncoding {
    /// `P2`, whitespace-separated decimal samples.
    Ascii,
    /// `P5`, raw bytes.
    Binary,
}

/// A grayscale image stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    width: usize,
    height: usize,
    maxval: u16,
    pixels: Vec<u16>,
}

impl Pgm {
    /// Builds an image from `height` rows of `width` samples each.
    ///
    /// Panics if `pixels.len() != width * height` or a sample exceeds `maxval`.
    pub fn new(width: usize, height: usize, maxval: u16, pixels: Vec<u16>) -> Self {
        assert_eq!(
            pixels.len(),
            width * height,
            "pixel count must match dimensions"
        );
        assert!(maxval > 0 && pixels.iter().all(|&p| p <= maxval));
        Self {
            width,
            height,
            maxval,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn maxval(&self) -> u16 {
        self.maxval
    }

    pub fn row(&self, row: usize) -> Option<&[u16]> {
        (row < self.height).then(|| &self.pixels[row * self.width..(row + 1) * self.width])
    }

    pub fn parse(bytes: &[u8]) -> Result<Self, PgmError> {
        let mut cursor = Cursor { bytes, pos: 0 };
        let magic = cursor
            .token()
            .ok_or(PgmError::MissingHeaderField("magic number"))?;
        let encoding = match magic {
            b"P2" => PgmEncoding::Ascii,
            b"P5" => PgmEncoding::Binary,
            other => {
                return Err(PgmError::BadMagic(
                    String::from_utf8_lossy(other).into_owned(),
                ))
            }
        };
        let width = cursor.header_number("width")? as usize;
        let height = cursor.header_number("height")? as usize;
        let maxval = cursor.header_number("maxval")?;
        if maxval == 0 || maxval > u16::MAX as u32 {
            return Err(PgmError::BadMaxval(maxval));
        }
        if width == 0 || height == 0 {
            return Err(PgmError::EmptyImage { width, height });
        }
        let maxval = maxval as u16;
        let expected = width * height;

        let pixels = match encoding {
            PgmEncoding::Ascii => {
                let mut pixels = Vec::with_capacity(expected);
                while pixels.len() < expected {
                    let Some(tok) = cursor.token() else {
                        return Err(PgmError::Truncated {
                            expected,
                            found: pixels.len(),
                        });
                    };
                    let index = pixels.len();
                    let text = String::from_utf8_lossy(tok);
                    let value: u32 = text.parse().map_err(|_| PgmError::BadSample {
                        index,
                        value: text.clone().into_owned(),
                    })?;
                    if value > maxval as u32 {
                        return Err(PgmError::SampleOverMaxval {
                            index,
                            value,
                            maxval,
                        });
                    }
                    pixels.push(value as u16);
                }
                pixels
            }
            PgmEncoding::Binary => {
                // exactly one whitespace byte separates the header from the raster
                let raster = bytes.get(cursor.pos + 1..).unwrap_or(&[]);
                let wide = maxval > 255;
                let sample_size = if wide { 2 } else { 1 };
                let found = raster.len() / sample_size;
                if found < expected {
                    return Err(PgmError::Truncated { expected, found });
                }
                let pixels: Vec<u16> = if wide {
                    raster[..expected * 2]
                        .chunks_exact(2)
                        .map(|b| u16::from_be_bytes([b[0], b[1]]))
                        .collect()
                } else {
                    raster[..expected].iter().map(|&b| b as u16).collect()
                };
                if let Some((index, &value)) = pixels.iter().enumerate().find(|(_, &p)| p > maxval)
                {
                    return Err(PgmError::SampleOverMaxval {
                        index,
                        value: value as u32,
                        maxval,
                    });
                }
                pixels
            }
        };
        Ok(Self {
            width,
            height,
            maxval,
            pixels,
        })
    }

    pub fn encode(&self, encoding: PgmEncoding) -> Vec<u8> {
        match encoding {
            PgmEncoding::Ascii => self.to_ascii().into_bytes(),
            PgmEncoding::Binary => {
                let mut out =
                    format!("P5\n{} {}\n{}\n", self.width, self.height, self.maxval).into_bytes();
                if self.maxval > 255 {
                    out.extend(self.pixels.iter().flat_map(|p| p.to_be_bytes()));
                } else {
                    out.extend(self.pixels.iter().map(|&p| p as u8));
                }
                out
            }
        }
    }

    fn to_ascii(&self) -> String {
        let mut out = format!("P2\n{} {}\n{}\n", self.width, self.height, self.maxval);
        for row in self.pixels.chunks(self.width.max(1)) {
            let line: Vec<String> = row.iter().map(u16::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Next whitespace-delimited token, skipping `#` comments. Leaves `pos`
    /// on the byte right after the token.
    fn token(&mut self) -> Option<&'a [u8]> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.bytes.get(self.pos) == Some(&b'#') {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn header_number(&mut self, field: &'static str) -> Result<u32, PgmError> {
        let tok = self.token().ok_or(PgmError::MissingHeaderField(field))?;
        let text = String::from_utf8_lossy(tok);
        text.parse().map_err(|_| PgmError::BadHeaderField {
            field,
            value: text.into_owned(),
        })
    }
}
