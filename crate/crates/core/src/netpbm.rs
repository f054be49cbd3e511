//! PGM/PPM codec (P2, P3, P5, P6), maxval up to 65535.
//!
//! Parse failures report the byte offset where the input went wrong.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnmFormat {
    PgmAscii,
    PgmBinary,
    PpmAscii,
    PpmBinary,
}

impl PnmFormat {
    pub fn channels(&self) -> usize {
        match self {
            PnmFormat::PgmAscii | PnmFormat::PgmBinary => 1,
            PnmFormat::PpmAscii | PnmFormat::PpmBinary => 3,
        }
    }

    pub fn magic(&self) -> &'static str {
        match self {
            PnmFormat::PgmAscii => "P2",
            PnmFormat::PpmAscii => "P3",
            PnmFormat::PgmBinary => "P5",
            PnmFormat::PpmBinary => "P6",
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, PnmFormat::PgmBinary | PnmFormat::PpmBinary)
    }
}

/// A decoded image: interleaved samples, row-major, top row first.
#[derive(Debug, Clone, PartialEq)]
pub struct RawImage {
    pub format: PnmFormat,
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

struct ByteCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ByteCursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        ByteCursor { bytes, pos: 0 }
    }

    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Next whitespace-delimited ASCII token.
    fn token(&mut self, what: &str) -> Result<&'a str> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && self.bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::format(start, format!("missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| Error::format(start, format!("non-ASCII {what}")))
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let at = self.pos;
        let tok = self.token(what)?;
        tok.parse()
            .map_err(|_| Error::format(at, format!("bad {what} `{tok}`")))
    }
}

pub fn decode(bytes: &[u8]) -> Result<RawImage> {
    let mut cur = ByteCursor::new(bytes);
    let magic_at = cur.pos;
    let magic = cur.token("magic number")?;
    let format = match magic {
        "P2" => PnmFormat::PgmAscii,
        "P3" => PnmFormat::PpmAscii,
        "P5" => PnmFormat::PgmBinary,
        "P6" => PnmFormat::PpmBinary,
        other => {
            return Err(Error::format(
                magic_at,
                format!("unsupported magic `{other}` (expected P2/P3/P5/P6)"),
            ))
        }
    };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    if width == 0 || height == 0 {
        return Err(Error::format(cur.pos, "zero image dimension"));
    }
    cur.skip_whitespace_and_comments();
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::format(
            maxval_at,
            format!("unsupported maxval {maxval} (must be 1..=65535)"),
        ));
    }
    let maxval = maxval as u16;
    let count = width * height * format.channels();
    let mut samples = Vec::with_capacity(count);
    if format.is_binary() {
        // exactly one whitespace byte separates the header from the payload
        if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
            return Err(Error::format(cur.pos, "missing separator before payload"));
        }
        cur.pos += 1;
        let bytes_per_sample = if maxval > 255 { 2 } else { 1 };
        let need = count * bytes_per_sample;
        let have = bytes.len() - cur.pos;
        if have < need {
            return Err(Error::format(
                bytes.len(),
                format!("payload truncated: need {need} bytes, have {have}"),
            ));
        }
        for i in 0..count {
            let at = cur.pos + i * bytes_per_sample;
            let v = if bytes_per_sample == 2 {
                u16::from_be_bytes([bytes[at], bytes[at + 1]])
            } else {
                bytes[at] as u16
            };
            if v > maxval {
                return Err(Error::format(
                    at,
                    format!("sample {v} exceeds maxval {maxval}"),
                ));
            }
            samples.push(v);
        }
    } else {
        for _ in 0..count {
            let at = cur.pos;
            let v = cur.number("sample")?;
            if v > maxval as u32 {
                return Err(Error::format(
                    at,
                    format!("sample {v} exceeds maxval {maxval}"),
                ));
            }
            samples.push(v as u16);
        }
    }
    Ok(RawImage {
        format,
        width,
        height,
        maxval,
        samples,
    })
}

pub fn encode<W: std::io::Write>(img: &RawImage, out: &mut W) -> std::io::Result<()> {
    debug_assert_eq!(
        img.samples.len(),
        img.width * img.height * img.format.channels()
    );
    write!(
        out,
        "{}\n{} {}\n{}\n",
        img.format.magic(),
        img.width,
        img.height,
        img.maxval
    )?;
    if img.format.is_binary() {
        if img.maxval > 255 {
            let mut buf = Vec::with_capacity(img.samples.len() * 2);
            for &s in &img.samples {
                buf.extend_from_slice(&s.to_be_bytes());
            }
            out.write_all(&buf)?;
        } else {
            let buf: Vec<u8> = img.samples.iter().map(|&s| s as u8).collect();
            out.write_all(&buf)?;
        }
    } else {
        // plain format: keep lines short
        for chunk in img.samples.chunks(12) {
            let line: Vec<String> = chunk.iter().map(|s| s.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_binary_pgm() {
        let data = b"P5\n2 2\n255\n\x00\xff\xff\x00";
        let img = decode(data).unwrap();
        assert_eq!(img.format, PnmFormat::PgmBinary);
        assert_eq!((img.width, img.height, img.maxval), (2, 2, 255));
        assert_eq!(img.samples, vec![0, 255, 255, 0]);
    }

    #[test]
    fn decode_ascii_pgm_with_comments() {
        let data = b"P2 # creator\n# full comment line\n3 1\n# another\n15\n0 7 15\n";
        let img = decode(data).unwrap();
        assert_eq!(img.samples, vec![0, 7, 15]);
        assert_eq!(img.maxval, 15);
    }

    #[test]
    fn decode_all_red_ppm() {
        let data = b"P3\n3 1\n255\n255 0 0 255 0 0 255 0 0\n";
        let img = decode(data).unwrap();
        assert_eq!(img.format.channels(), 3);
        assert_eq!(img.samples, vec![255, 0, 0, 255, 0, 0, 255, 0, 0]);
    }

    #[test]
    fn decode_sixteen_bit() {
        let data = b"P5\n1 2\n65535\n\x01\x00\xff\xfe";
        let img = decode(data).unwrap();
        assert_eq!(img.samples, vec![256, 65534]);
    }

    #[test]
    fn errors_carry_offsets() {
        match decode(b"P9\n1 1\n255\n\x00").unwrap_err() {
            Error::Format { offset, message } => {
                assert_eq!(offset, 0);
                assert!(message.contains("P9"));
            }
            other => panic!("unexpected {other:?}"),
        }

        // truncated binary payload; reported at end of input
        match decode(b"P5\n2 2\n255\n\x00\xff").unwrap_err() {
            Error::Format { offset, .. } => assert_eq!(offset, 13),
            other => panic!("unexpected {other:?}"),
        }

        // maxval out of range
        assert!(matches!(
            decode(b"P5\n1 1\n70000\n\x00"),
            Err(Error::Format { offset: 7, .. })
        ));
        assert!(matches!(
            decode(b"P5\n1 1\n0\n\x00"),
            Err(Error::Format { .. })
        ));

        // ascii sample above maxval
        assert!(matches!(
            decode(b"P2\n1 1\n10\n11\n"),
            Err(Error::Format { .. })
        ));

        // header cut short
        assert!(matches!(decode(b"P5\n2"), Err(Error::Format { .. })));
    }

    #[test]
    fn round_trips() {
        for format in [
            PnmFormat::PgmAscii,
            PnmFormat::PgmBinary,
            PnmFormat::PpmAscii,
            PnmFormat::PpmBinary,
        ] {
            for maxval in [255u16, 65535] {
                let count = 4 * 3 * format.channels();
                let samples: Vec<u16> = (0..count)
                    .map(|i| ((i as u32 * 9973) % (maxval as u32 + 1)) as u16)
                    .collect();
                let img = RawImage {
                    format,
                    width: 4,
                    height: 3,
                    maxval,
                    samples,
                };
                let mut buf = Vec::new();
                encode(&img, &mut buf).unwrap();
                let back = decode(&buf).unwrap();
                assert_eq!(back, img, "{format:?} maxval {maxval}");
            }
        }
    }
}
