//! Image analysis and synthesis through truncated basis expansions.
//!
//! An image is treated as a piecewise-constant function on its pixel grid;
//! per-channel expansion coefficients ("moments") are computed by the
//! midpoint rule at pixel centers:
//!
//! ```text
//! d[m][n] = sum_{k1,k2} s[k1,k2] W_m(x_{k1}) W_n(y_{k2}) dx dy
//! ```
//!
//! Synthesis evaluates the truncated expansion back on a pixel grid; the
//! residual image is the remapped difference, mid-gray for zero residual.
//! Color images are three independent scalar expansions sharing one basis.

use crate::domain::{BasisSpecND, Interval, RectDomain};
use crate::error::{Error, Result};
use crate::glp;
use crate::netpbm::{self, PnmFormat, RawImage};
use crate::tensor::{CoeffTensor, TextCursor};

/// How pixel indices map onto a rectangle.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainPolicy {
    /// [0,1] x [0,1] regardless of resolution.
    Unit,
    /// [0,W] x [0,H]: one unit per pixel, starting at 0.
    Pixel,
    /// Caller-provided rectangle.
    Explicit(RectDomain),
}

/// Width x height x channels intensities in [0,1] on a 2D rectangle.
///
/// Samples are row-major, top row first, channel-interleaved. Domain axis 0
/// runs along the width (x), axis 1 along the height (y); pixel (col, row)
/// sits at the cell center (a_x + (col+1/2) dx, a_y + (row+1/2) dy).
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    maxval: u16,
    samples: Vec<f64>,
    domain: RectDomain,
}

impl ImageBuffer {
    pub fn new(
        width: usize,
        height: usize,
        channels: usize,
        maxval: u16,
        samples: Vec<f64>,
        domain: RectDomain,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::argument("image dimensions must be positive"));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::argument(format!(
                "channels must be 1 or 3, got {channels}"
            )));
        }
        if maxval == 0 {
            return Err(Error::argument("maxval must be positive"));
        }
        if samples.len() != width * height * channels {
            return Err(Error::argument(format!(
                "sample count {} does not match {width}x{height}x{channels}",
                samples.len()
            )));
        }
        if domain.dim() != 2 {
            return Err(Error::argument("image domain must be two-dimensional"));
        }
        if let Some(bad) = samples.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::argument(format!(
                "sample {bad} outside [0,1]"
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            channels,
            maxval,
            samples,
            domain,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn maxval(&self) -> u16 {
        self.maxval
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn domain(&self) -> &RectDomain {
        &self.domain
    }

    pub fn sample(&self, col: usize, row: usize, channel: usize) -> f64 {
        self.samples[(row * self.width + col) * self.channels + channel]
    }

    /// Pixel-center coordinates along x (axis 0).
    pub fn centers_x(&self) -> Vec<f64> {
        pixel_centers(self.domain.interval(0), self.width)
    }

    /// Pixel-center coordinates along y (axis 1).
    pub fn centers_y(&self) -> Vec<f64> {
        pixel_centers(self.domain.interval(1), self.height)
    }

    fn resolve_domain(width: usize, height: usize, policy: &DomainPolicy) -> Result<RectDomain> {
        match policy {
            DomainPolicy::Unit => RectDomain::new(vec![
                Interval::new(0.0, 1.0)?,
                Interval::new(0.0, 1.0)?,
            ]),
            DomainPolicy::Pixel => RectDomain::new(vec![
                Interval::new(0.0, width as f64)?,
                Interval::new(0.0, height as f64)?,
            ]),
            DomainPolicy::Explicit(rect) => {
                if rect.dim() != 2 {
                    return Err(Error::argument("explicit image domain must be 2D"));
                }
                Ok(rect.clone())
            }
        }
    }

    pub fn from_raw(raw: &RawImage, policy: &DomainPolicy) -> Result<Self> {
        let scale = 1.0 / raw.maxval as f64;
        let samples = raw.samples.iter().map(|&s| s as f64 * scale).collect();
        let domain = Self::resolve_domain(raw.width, raw.height, policy)?;
        ImageBuffer::new(
            raw.width,
            raw.height,
            raw.format.channels(),
            raw.maxval,
            samples,
            domain,
        )
    }

    pub fn decode(bytes: &[u8], policy: &DomainPolicy) -> Result<Self> {
        Self::from_raw(&netpbm::decode(bytes)?, policy)
    }

    pub fn load(path: impl AsRef<std::path::Path>, policy: &DomainPolicy) -> Result<Self> {
        Self::decode(&std::fs::read(path)?, policy)
    }

    /// Quantizes back to integer samples. Binary PGM/PPM by default.
    pub fn to_raw(&self, ascii: bool) -> RawImage {
        let format = match (self.channels, ascii) {
            (1, false) => PnmFormat::PgmBinary,
            (1, true) => PnmFormat::PgmAscii,
            (_, false) => PnmFormat::PpmBinary,
            (_, true) => PnmFormat::PpmAscii,
        };
        let maxval = self.maxval;
        let samples = self
            .samples
            .iter()
            .map(|&s| (s * maxval as f64).round().clamp(0.0, maxval as f64) as u16)
            .collect();
        RawImage {
            format,
            width: self.width,
            height: self.height,
            maxval,
            samples,
        }
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>, ascii: bool) -> Result<()> {
        let mut out = Vec::new();
        netpbm::encode(&self.to_raw(ascii), &mut out)?;
        std::fs::write(path, out)?;
        Ok(())
    }
}

fn pixel_centers(iv: Interval, count: usize) -> Vec<f64> {
    let step = iv.width() / count as f64;
    (0..count).map(|k| iv.a() + (k as f64 + 0.5) * step).collect()
}

/// Where a moment set came from, so the pipeline can mirror source
/// resolution and bit depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceInfo {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
}

/// Per-channel coefficient tensors over one shared basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    channels: Vec<CoeffTensor>,
    source: SourceInfo,
}

impl MomentSet {
    pub fn new(channels: Vec<CoeffTensor>, source: SourceInfo) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::argument("moment set needs at least one channel"));
        }
        if channels.len() != 1 && channels.len() != 3 {
            return Err(Error::argument(format!(
                "moment set must have 1 or 3 channels, got {}",
                channels.len()
            )));
        }
        let spec = channels[0].spec().clone();
        if spec.dim() != 2 {
            return Err(Error::argument("image moments must be two-dimensional"));
        }
        if channels.iter().any(|c| c.spec() != &spec) {
            return Err(Error::argument("channels must share one basis"));
        }
        Ok(MomentSet { channels, source })
    }

    pub fn spec(&self) -> &BasisSpecND {
        self.channels[0].spec()
    }

    pub fn channels(&self) -> &[CoeffTensor] {
        &self.channels
    }

    pub fn source(&self) -> SourceInfo {
        self.source
    }

    /// Total coefficient energy across channels.
    pub fn energy(&self) -> f64 {
        self.channels.iter().map(|c| c.energy()).sum()
    }

    pub fn degrees(&self) -> (usize, usize) {
        let d = self.spec().max_degrees();
        (d[0], d[1])
    }

    const MAGIC: &'static str = "glp-moments 1";

    /// Envelope header followed by one tensor block per channel.
    pub fn write_to<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::MAGIC)?;
        writeln!(out, "channels {}", self.channels.len())?;
        writeln!(out, "source-width {}", self.source.width)?;
        writeln!(out, "source-height {}", self.source.height)?;
        writeln!(out, "source-maxval {}", self.source.maxval)?;
        for c in &self.channels {
            c.write_block(out)?;
        }
        Ok(())
    }

    pub fn parse(input: &str) -> Result<Self> {
        let mut cur = TextCursor::new(input);
        let at = cur.pos();
        let magic = cur.line("moments header")?;
        if magic.trim() != Self::MAGIC {
            return Err(Error::format(at, "expected `glp-moments 1` header"));
        }
        let count: usize = cur.keyed_value("channels")?;
        if count != 1 && count != 3 {
            return Err(Error::format(cur.pos(), "channels must be 1 or 3"));
        }
        let width: usize = cur.keyed_value("source-width")?;
        let height: usize = cur.keyed_value("source-height")?;
        let maxval: u16 = cur.keyed_value("source-maxval")?;
        let mut channels = Vec::with_capacity(count);
        for _ in 0..count {
            channels.push(CoeffTensor::parse_block(&mut cur)?);
        }
        cur.expect_end()?;
        MomentSet::new(
            channels,
            SourceInfo {
                width,
                height,
                maxval,
            },
        )
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let mut out = Vec::new();
        self.write_to(&mut out)?;
        std::fs::write(path, out)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        MomentSet::parse(&std::fs::read_to_string(path)?)
    }
}

/// Reconstruction quality of a moment set against a reference image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    /// Pixel-area-weighted discrete L2 distance.
    pub l2_error: f64,
    /// 10 log10(1/MSE) over [0,1] intensities; infinite for exact.
    pub psnr_db: f64,
    /// Captured coefficient energy over total image energy.
    pub parseval_ratio: f64,
}

/// Basis samples at pixel centers: rows[m][k] = W_m(center_k), optionally
/// scaled by the cell width.
fn center_basis(
    iv: Interval,
    count: usize,
    max_degree: usize,
    cell_weight: bool,
) -> Result<Vec<Vec<f64>>> {
    let spec = crate::domain::BasisSpec1D::new(iv, max_degree)?;
    let step = if cell_weight {
        iv.width() / count as f64
    } else {
        1.0
    };
    let mut rows = vec![Vec::with_capacity(count); max_degree + 1];
    for x in pixel_centers(iv, count) {
        for (m, v) in glp::eval_all(&spec, x)?.into_iter().enumerate() {
            rows[m].push(v * step);
        }
    }
    Ok(rows)
}

/// Midpoint-rule moments of every channel over the degree box
/// (N_x, N_y). Degrees must stay below the pixel counts; beyond that the
/// sampled basis aliases.
pub fn analyze(img: &ImageBuffer, degrees: (usize, usize)) -> Result<MomentSet> {
    let (nx, ny) = degrees;
    if nx >= img.width || ny >= img.height {
        return Err(Error::argument(format!(
            "degree box ({nx}, {ny}) must stay below the pixel counts ({}, {})",
            img.width, img.height
        )));
    }
    let spec = BasisSpecND::new(img.domain.clone(), vec![nx, ny])?;
    let bx = center_basis(img.domain.interval(0), img.width, nx, true)?;
    let by = center_basis(img.domain.interval(1), img.height, ny, true)?;
    let mut channels = Vec::with_capacity(img.channels);
    for ch in 0..img.channels {
        // contract rows first: tmp[col][n] = sum_row s[row,col] W_n(y_row) dy
        let mut tmp = vec![0.0; img.width * (ny + 1)];
        for row in 0..img.height {
            for col in 0..img.width {
                let s = img.sample(col, row, ch);
                if s == 0.0 {
                    continue;
                }
                let cell = &mut tmp[col * (ny + 1)..(col + 1) * (ny + 1)];
                for (n, by_n) in by.iter().enumerate() {
                    cell[n] += s * by_n[row];
                }
            }
        }
        // then columns: d[m][n] = sum_col W_m(x_col) dx tmp[col][n]
        let mut coeffs = vec![0.0; (nx + 1) * (ny + 1)];
        for col in 0..img.width {
            let cell = &tmp[col * (ny + 1)..(col + 1) * (ny + 1)];
            for (m, bx_m) in bx.iter().enumerate() {
                let w = bx_m[col];
                let out = &mut coeffs[m * (ny + 1)..(m + 1) * (ny + 1)];
                for (n, &t) in cell.iter().enumerate() {
                    out[n] += w * t;
                }
            }
        }
        channels.push(CoeffTensor::new(spec.clone(), coeffs)?);
    }
    MomentSet::new(
        channels,
        SourceInfo {
            width: img.width,
            height: img.height,
            maxval: img.maxval,
        },
    )
}

/// Raw (unclipped) expansion values at the pixel centers of a
/// width x height grid, per channel, interleaved like image samples.
fn synthesize_values(m: &MomentSet, width: usize, height: usize) -> Result<Vec<f64>> {
    let spec = m.spec();
    let (nx, ny) = m.degrees();
    let bx = center_basis(spec.domain().interval(0), width, nx, false)?;
    let by = center_basis(spec.domain().interval(1), height, ny, false)?;
    let channels = m.channels().len();
    let mut values = vec![0.0; width * height * channels];
    for (ch, tensor) in m.channels().iter().enumerate() {
        let d = tensor.coeffs();
        // t1[n][col] = sum_m d[m][n] W_m(x_col)
        let mut t1 = vec![0.0; (ny + 1) * width];
        for (m_deg, bx_m) in bx.iter().enumerate() {
            let row = &d[m_deg * (ny + 1)..(m_deg + 1) * (ny + 1)];
            for (n, &dmn) in row.iter().enumerate() {
                if dmn == 0.0 {
                    continue;
                }
                let out = &mut t1[n * width..(n + 1) * width];
                for (col, &w) in bx_m.iter().enumerate() {
                    out[col] += dmn * w;
                }
            }
        }
        // v[row][col] = sum_n W_n(y_row) t1[n][col]
        for row in 0..height {
            for (n, by_n) in by.iter().enumerate() {
                let w = by_n[row];
                if w == 0.0 {
                    continue;
                }
                let t1_row = &t1[n * width..(n + 1) * width];
                for col in 0..width {
                    values[(row * width + col) * channels + ch] += w * t1_row[col];
                }
            }
        }
    }
    Ok(values)
}

/// Allowed overshoot of an unclamped reconstruction before it is treated
/// as a numerical-guard failure. Truncated expansions of sharp edges ring.
pub const OVERSHOOT_GUARD: f64 = 0.25;

/// Evaluates the truncated expansion at pixel centers. With `clamp` set,
/// values are clipped to [0,1]; otherwise values outside
/// [-OVERSHOOT_GUARD, 1+OVERSHOOT_GUARD] raise a range error (values inside
/// the guard band are still clipped for storage).
pub fn synthesize(m: &MomentSet, width: usize, height: usize, clamp: bool) -> Result<ImageBuffer> {
    if width == 0 || height == 0 {
        return Err(Error::argument("synthesis dimensions must be positive"));
    }
    let values = synthesize_values(m, width, height)?;
    if !clamp {
        for (i, &v) in values.iter().enumerate() {
            if !(-OVERSHOOT_GUARD..=1.0 + OVERSHOOT_GUARD).contains(&v) {
                let pixel = i / m.channels().len();
                return Err(Error::Range(format!(
                    "reconstruction value {v:.6} at pixel ({}, {}) leaves the guard band; \
                     pass clamp to clip",
                    pixel % width,
                    pixel / width
                )));
            }
        }
    }
    let samples = values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    ImageBuffer::new(
        width,
        height,
        m.channels().len(),
        m.source().maxval,
        samples,
        m.spec().domain().clone(),
    )
}

fn check_compatible(img: &ImageBuffer, m: &MomentSet) -> Result<()> {
    if m.channels().len() != img.channels {
        return Err(Error::argument(format!(
            "channel mismatch: image has {}, moments have {}",
            img.channels,
            m.channels().len()
        )));
    }
    let dom = m.spec().domain();
    for axis in 0..2 {
        let a = img.domain.interval(axis);
        let b = dom.interval(axis);
        if (a.a() - b.a()).abs() > 1e-12 * a.width() || (a.b() - b.b()).abs() > 1e-12 * a.width()
        {
            return Err(Error::argument("image and moments domains differ"));
        }
    }
    Ok(())
}

/// Detail image: 0.5 + (img - synthesis)/2, clipped to [0,1].
/// Mid-gray marks zero residual.
pub fn residual(img: &ImageBuffer, m: &MomentSet) -> Result<ImageBuffer> {
    check_compatible(img, m)?;
    let synth = synthesize_values(m, img.width, img.height)?;
    let samples = img
        .samples
        .iter()
        .zip(&synth)
        .map(|(&s, &r)| (0.5 + 0.5 * (s - r)).clamp(0.0, 1.0))
        .collect();
    ImageBuffer::new(
        img.width,
        img.height,
        img.channels,
        img.maxval,
        samples,
        img.domain.clone(),
    )
}

/// Quality of the truncated reconstruction against `img`.
pub fn quality(img: &ImageBuffer, m: &MomentSet) -> Result<QualityReport> {
    check_compatible(img, m)?;
    let synth = synthesize_values(m, img.width, img.height)?;
    let count = img.samples.len() as f64;
    let mse = img
        .samples
        .iter()
        .zip(&synth)
        .map(|(&s, &r)| (s - r) * (s - r))
        .sum::<f64>()
        / count;
    let area = img.domain.volume();
    let cell = area / (img.width * img.height) as f64;
    let image_energy =
        cell * img.samples.iter().map(|s| s * s).sum::<f64>() / img.channels as f64
            * img.channels as f64;
    let parseval_ratio = if image_energy == 0.0 {
        1.0
    } else {
        m.energy() / image_energy
    };
    let psnr_db = if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (1.0 / mse).log10()
    };
    Ok(QualityReport {
        l2_error: (area * mse).sqrt(),
        psnr_db,
        parseval_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor;

    fn unit_domain() -> RectDomain {
        RectDomain::new(vec![
            Interval::new(0.0, 1.0).unwrap(),
            Interval::new(0.0, 1.0).unwrap(),
        ])
        .unwrap()
    }

    fn gray(width: usize, height: usize, f: impl Fn(f64, f64) -> f64) -> ImageBuffer {
        let xs = pixel_centers(Interval::new(0.0, 1.0).unwrap(), width);
        let ys = pixel_centers(Interval::new(0.0, 1.0).unwrap(), height);
        let mut samples = Vec::with_capacity(width * height);
        for &y in &ys {
            for &x in &xs {
                samples.push(f(x, y));
            }
        }
        ImageBuffer::new(width, height, 1, 255, samples, unit_domain()).unwrap()
    }

    #[test]
    fn load_normalizes_and_sets_domain() {
        let img = ImageBuffer::decode(b"P5\n2 2\n255\n\x00\xff\xff\x00", &DomainPolicy::Unit)
            .unwrap();
        assert_eq!(img.samples(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(img.domain().interval(0).b(), 1.0);

        let img = ImageBuffer::decode(b"P5\n4 2\n255\n\x00\x00\x00\x00\x00\x00\x00\x00",
            &DomainPolicy::Pixel).unwrap();
        assert_eq!(img.domain().interval(0).b(), 4.0);
        assert_eq!(img.domain().interval(1).b(), 2.0);

        let rect = RectDomain::new(vec![
            Interval::new(3.0, 7.0).unwrap(),
            Interval::new(2.0, 5.0).unwrap(),
        ])
        .unwrap();
        let img = ImageBuffer::decode(
            b"P2\n1 1\n255\n128\n",
            &DomainPolicy::Explicit(rect.clone()),
        )
        .unwrap();
        assert_eq!(img.domain(), &rect);
        assert!((img.samples()[0] - 128.0 / 255.0).abs() < 1e-12);
    }

    #[test]
    fn all_red_ppm_has_three_planes() {
        let img = ImageBuffer::decode(
            b"P3\n3 1\n255\n255 0 0 255 0 0 255 0 0\n",
            &DomainPolicy::Unit,
        )
        .unwrap();
        assert_eq!(img.channels(), 3);
        for col in 0..3 {
            assert_eq!(img.sample(col, 0, 0), 1.0);
            assert_eq!(img.sample(col, 0, 1), 0.0);
            assert_eq!(img.sample(col, 0, 2), 0.0);
        }
    }

    #[test]
    fn analyze_constant_image() {
        let img = gray(64, 64, |_, _| 0.5);
        let m = analyze(&img, (3, 3)).unwrap();
        let d = &m.channels()[0];
        assert!((d.get(&[0, 0]).unwrap() - 0.5).abs() < 1e-12);
        for idx in tensor::MultiIndexIter::new(&d.shape()) {
            if idx == vec![0, 0] {
                continue;
            }
            let v = d.get(&idx).unwrap().abs();
            if (idx[0] + idx[1]) % 2 == 1 {
                // odd modes vanish exactly on the symmetric grid
                assert!(v < 1e-12, "odd {idx:?}: {v}");
            } else {
                // even modes carry only the midpoint-rule discretization error
                assert!(v < 2e-3, "even {idx:?}: {v}");
            }
        }
    }

    #[test]
    fn analyze_zero_image() {
        let img = gray(8, 8, |_, _| 0.0);
        let m = analyze(&img, (2, 2)).unwrap();
        assert_eq!(m.energy(), 0.0);
    }

    #[test]
    fn analyze_degree_guard() {
        let img = gray(8, 8, |_, _| 0.5);
        assert!(analyze(&img, (8, 2)).is_err());
        assert!(analyze(&img, (2, 8)).is_err());
        assert!(analyze(&img, (7, 7)).is_ok());
    }

    #[test]
    fn analyze_recovers_embedded_basis_function() {
        // image = 0.5 + alpha * W_(2,3), alpha chosen to keep samples in [0,1];
        // oracle: the exact coefficients are alpha at (2,3) and 0.5 at (0,0)
        let k = 256;
        let spec = BasisSpecND::new(unit_domain(), vec![4, 4]).unwrap();
        let xs = pixel_centers(Interval::new(0.0, 1.0).unwrap(), k);
        let mut peak: f64 = 0.0;
        for &y in &xs {
            for &x in &xs {
                peak = peak.max(tensor::eval_nd(&spec, &[2, 3], &[x, y]).unwrap().abs());
            }
        }
        let alpha = 0.4 / peak;
        let img = gray(k, k, |x, y| {
            0.5 + alpha * tensor::eval_nd(&spec, &[2, 3], &[x, y]).unwrap()
        });
        let m = analyze(&img, (4, 4)).unwrap();
        let d = &m.channels()[0];
        let got = d.get(&[2, 3]).unwrap();
        assert!(
            (got - alpha).abs() <= 2e-3 * alpha,
            "relative error {}",
            (got - alpha).abs() / alpha
        );
        assert!((d.get(&[0, 0]).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rgb_channels_are_independent() {
        let k = 12;
        let xs = pixel_centers(Interval::new(0.0, 1.0).unwrap(), k);
        let mut samples = Vec::new();
        let fs = [
            |x: f64, y: f64| 0.2 + 0.5 * x * y,
            |x: f64, y: f64| 0.7 - 0.3 * x,
            |x: f64, y: f64| 0.4 + 0.2 * (y - x),
        ];
        for &y in &xs {
            for &x in &xs {
                for f in &fs {
                    samples.push(f(x, y));
                }
            }
        }
        let rgb = ImageBuffer::new(k, k, 3, 255, samples, unit_domain()).unwrap();
        let m = analyze(&rgb, (3, 3)).unwrap();
        for (ch, f) in fs.iter().enumerate() {
            let plane = gray(k, k, f);
            let alone = analyze(&plane, (3, 3)).unwrap();
            let diff = m.channels()[ch].sub(&alone.channels()[0]).unwrap().norm();
            assert!(diff < 1e-14, "channel {ch}: {diff}");
        }
    }

    #[test]
    fn synthesize_constant_moments() {
        let spec = BasisSpecND::new(unit_domain(), vec![2, 2]).unwrap();
        let mut t = CoeffTensor::zeros(spec);
        t.set(&[0, 0], 0.5).unwrap();
        let m = MomentSet::new(
            vec![t],
            SourceInfo {
                width: 8,
                height: 8,
                maxval: 255,
            },
        )
        .unwrap();
        let img = synthesize(&m, 8, 8, false).unwrap();
        assert!(img.samples().iter().all(|&s| (s - 0.5).abs() < 1e-14));
        assert_eq!(img.maxval(), 255);
    }

    #[test]
    fn synthesize_overshoot_policy() {
        let spec = BasisSpecND::new(unit_domain(), vec![1, 1]).unwrap();
        let mut t = CoeffTensor::zeros(spec);
        t.set(&[0, 0], 2.0).unwrap();
        let m = MomentSet::new(
            vec![t],
            SourceInfo {
                width: 4,
                height: 4,
                maxval: 255,
            },
        )
        .unwrap();
        assert!(matches!(synthesize(&m, 4, 4, false), Err(Error::Range(_))));
        let clamped = synthesize(&m, 4, 4, true).unwrap();
        assert!(clamped.samples().iter().all(|&s| s == 1.0));
    }

    #[test]
    fn residual_of_exact_reconstruction_is_mid_gray() {
        let spec = BasisSpecND::new(unit_domain(), vec![2, 2]).unwrap();
        let mut t = CoeffTensor::zeros(spec);
        t.set(&[0, 0], 0.4).unwrap();
        t.set(&[1, 1], 0.05).unwrap();
        let m = MomentSet::new(
            vec![t],
            SourceInfo {
                width: 16,
                height: 16,
                maxval: 255,
            },
        )
        .unwrap();
        let img = synthesize(&m, 16, 16, false).unwrap();
        let res = residual(&img, &m).unwrap();
        assert!(res.samples().iter().all(|&s| (s - 0.5).abs() < 1e-12));
    }

    #[test]
    fn quality_of_exact_constant_reconstruction() {
        let spec = BasisSpecND::new(unit_domain(), vec![2, 2]).unwrap();
        let mut t = CoeffTensor::zeros(spec);
        t.set(&[0, 0], 0.5).unwrap();
        let m = MomentSet::new(
            vec![t],
            SourceInfo {
                width: 8,
                height: 8,
                maxval: 255,
            },
        )
        .unwrap();
        let img = synthesize(&m, 8, 8, false).unwrap();
        let q = quality(&img, &m).unwrap();
        assert_eq!(q.l2_error, 0.0);
        assert!(q.psnr_db.is_infinite());
        assert!((q.parseval_ratio - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn quality_of_zero_moments_constant_half() {
        let img = gray(8, 8, |_, _| 0.5);
        let spec = BasisSpecND::new(unit_domain(), vec![2, 2]).unwrap();
        let m = MomentSet::new(
            vec![CoeffTensor::zeros(spec)],
            SourceInfo {
                width: 8,
                height: 8,
                maxval: 255,
            },
        )
        .unwrap();
        let q = quality(&img, &m).unwrap();
        // MSE = 0.25
        assert!((q.psnr_db - 6.020_599_913_279_624).abs() < 1e-9);
        assert!((q.l2_error - 0.5).abs() < 1e-12);
        assert_eq!(q.parseval_ratio, 0.0);
    }

    #[test]
    fn quality_monotone_and_bessel_in_resolved_regime() {
        let img = gray(64, 64, |x, y| {
            0.35 + 0.3 * (-((x - 0.4).powi(2) + (y - 0.55).powi(2)) / 0.02).exp()
                + 0.1 * x
        });
        // boxes small enough that the pixel grid fully resolves every mode;
        // beyond that the sampled basis aliases and Bessel no longer applies
        let mut prev_err = f64::INFINITY;
        let mut prev_ratio = -1.0;
        for n in [2usize, 4, 8] {
            let m = analyze(&img, (n, n)).unwrap();
            let q = quality(&img, &m).unwrap();
            assert!(q.l2_error <= prev_err, "n={n}");
            assert!(q.parseval_ratio >= prev_ratio, "n={n}");
            assert!(q.parseval_ratio <= 1.0 + 1e-9, "n={n}: {}", q.parseval_ratio);
            prev_err = q.l2_error;
            prev_ratio = q.parseval_ratio;
        }
    }

    #[test]
    fn analyzed_moments_minimize_discrete_error() {
        use rand::{Rng, SeedableRng};
        let img = gray(32, 32, |x, y| {
            0.4 + 0.25 * (2.1 * x + 1.3 * y).sin() * (1.7 * y - 0.4 * x).cos() + 0.15 * x * y
        });
        let m = analyze(&img, (6, 6)).unwrap();
        let base = quality(&img, &m).unwrap().l2_error;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let mut perturbed = m.channels()[0].clone();
            for c in perturbed.coeffs_mut() {
                *c += rng.gen_range(-0.02..0.02);
            }
            let pm = MomentSet::new(vec![perturbed], m.source()).unwrap();
            let err = quality(&img, &pm).unwrap().l2_error;
            assert!(err >= base, "perturbation improved the fit: {err} < {base}");
        }
    }

    #[test]
    fn domain_covariance() {
        let img_unit = gray(24, 24, |x, y| 0.3 + 0.4 * x * (1.0 - y));
        let rect = RectDomain::new(vec![
            Interval::new(3.0, 7.0).unwrap(),
            Interval::new(3.0, 7.0).unwrap(),
        ])
        .unwrap();
        let img_rect = ImageBuffer::new(
            24,
            24,
            1,
            255,
            img_unit.samples().to_vec(),
            rect,
        )
        .unwrap();
        let mu = analyze(&img_unit, (5, 5)).unwrap();
        let mr = analyze(&img_rect, (5, 5)).unwrap();
        let ru = synthesize_values(&mu, 24, 24).unwrap();
        let rr = synthesize_values(&mr, 24, 24).unwrap();
        for (a, b) in ru.iter().zip(&rr) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn step_edge_residual_concentrates_at_edge() {
        let img = gray(64, 64, |x, _| if x < 0.5 { 0.15 } else { 0.85 });
        let m = analyze(&img, (8, 8)).unwrap();
        let res = residual(&img, &m).unwrap();
        let xs = img.centers_x();
        let mut band = 0.0;
        let mut total = 0.0;
        for row in 0..64 {
            for col in 0..64 {
                // de-map the stored residual back to the signed value
                let r = 2.0 * (res.sample(col, row, 0) - 0.5);
                total += r * r;
                if (xs[col] - 0.5).abs() <= 0.05 {
                    band += r * r;
                }
            }
        }
        assert!(band / total >= 0.6, "band fraction {}", band / total);
    }

    #[test]
    fn moments_file_round_trip() {
        let img = gray(10, 6, |x, y| 0.2 + 0.6 * x * y);
        let m = analyze(&img, (3, 2)).unwrap();
        let mut buf = Vec::new();
        m.write_to(&mut buf).unwrap();
        let back = MomentSet::parse(&String::from_utf8(buf).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.source().width, 10);
    }

    #[test]
    fn incompatible_pairs_are_rejected() {
        let img = gray(8, 8, |_, _| 0.5);
        let other_rect = RectDomain::new(vec![
            Interval::new(0.0, 2.0).unwrap(),
            Interval::new(0.0, 1.0).unwrap(),
        ])
        .unwrap();
        let spec = BasisSpecND::new(other_rect, vec![2, 2]).unwrap();
        let m = MomentSet::new(
            vec![CoeffTensor::zeros(spec)],
            SourceInfo {
                width: 8,
                height: 8,
                maxval: 255,
            },
        )
        .unwrap();
        assert!(residual(&img, &m).is_err());
        assert!(quality(&img, &m).is_err());
    }

    #[test]
    fn buffer_validation() {
        let dom = unit_domain();
        assert!(ImageBuffer::new(2, 2, 1, 255, vec![0.0; 4], dom.clone()).is_ok());
        assert!(ImageBuffer::new(2, 2, 2, 255, vec![0.0; 8], dom.clone()).is_err());
        assert!(ImageBuffer::new(2, 2, 1, 255, vec![0.0; 3], dom.clone()).is_err());
        assert!(ImageBuffer::new(2, 2, 1, 255, vec![1.5, 0.0, 0.0, 0.0], dom).is_err());
    }
}
