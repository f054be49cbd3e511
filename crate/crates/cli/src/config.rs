//! Per-subcommand run configurations.
//!
//! Every configuration both parses from flags and round-trips through a
//! TOML file: `--dump-config FILE` writes the effective configuration,
//! `--config FILE` replaces the flags with the file's contents (missing
//! keys take the documented defaults), so a run is reproducible from its
//! config plus inputs.

use crate::{CliError, CliResult};
use glp_core::domain::{Interval, RectDomain};
use glp_core::image::DomainPolicy;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Wraps a subcommand's flags with the config-file/dump plumbing.
#[derive(clap::Args)]
pub struct Meta<T: clap::Args> {
    #[command(flatten)]
    pub flags: T,

    /// Load the full run configuration from a TOML file (overrides flags)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write the effective configuration as TOML and exit
    #[arg(long, value_name = "FILE")]
    pub dump_config: Option<PathBuf>,
}

#[derive(clap::Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct BasisConfig {
    /// 1D mode: interval endpoints A B
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "rect")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<Vec<f64>>,

    /// Degrees to tabulate in 1D: `N` or inclusive range `LO..HI`
    #[arg(long, default_value = "0..8")]
    pub degrees: String,

    /// Sample count for the 1D table (endpoints included)
    #[arg(long, default_value_t = 401)]
    pub points: usize,

    /// Output CSV for the 1D table
    #[arg(long, default_value = "basis.csv")]
    pub out: PathBuf,

    /// 2D mode: rectangle A1 B1 A2 B2
    #[arg(long, num_args = 4, value_names = ["A1", "B1", "A2", "B2"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rect: Option<Vec<f64>>,

    /// 2D mode: degree pair M1 M2
    #[arg(long, num_args = 2, value_names = ["M1", "M2"], requires = "rect")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<usize>>,

    /// Grid resolution per axis for the 2D density plot
    #[arg(long, default_value_t = 256)]
    pub grid: usize,

    /// Maxval of the density PGM
    #[arg(long, default_value_t = 255)]
    pub maxval: u16,

    /// Output CSV for the 2D grid
    #[arg(long, default_value = "basis2d.csv")]
    pub out_csv: PathBuf,

    /// Output PGM for the 2D density plot
    #[arg(long, default_value = "basis2d.pgm")]
    pub out_pgm: PathBuf,
}

impl Default for BasisConfig {
    fn default() -> Self {
        BasisConfig {
            interval: None,
            degrees: "0..8".into(),
            points: 401,
            out: "basis.csv".into(),
            rect: None,
            m: None,
            grid: 256,
            maxval: 255,
            out_csv: "basis2d.csv".into(),
            out_pgm: "basis2d.pgm".into(),
        }
    }
}

#[derive(clap::Args, Serialize, Deserialize, Debug, Clone, PartialEq, Default)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyzeConfig {
    /// Input image (PGM/PPM, ASCII or binary)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,

    /// Degree box NX NY
    #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,

    /// Domain policy: `unit`, `pixel`, or explicit `A1,B1,A2,B2`
    #[arg(long, default_value = "unit")]
    pub domain: String,

    /// Output moments file
    #[arg(long, default_value = "moments.glpm")]
    pub out: PathBuf,
}

#[derive(clap::Args, Serialize, Deserialize, Debug, Clone, PartialEq, Default)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    /// Input moments file
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<PathBuf>,

    /// Output image; defaults to the moments' source resolution and depth
    #[arg(long, default_value = "synth.pgm")]
    pub out: PathBuf,

    /// Output width (default: source width)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,

    /// Output height (default: source height)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,

    /// Clip overshooting values to [0,1] instead of failing the guard band
    #[arg(long)]
    pub clamp: bool,

    /// Override the output maxval
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maxval: Option<u16>,

    /// Write ASCII (P2/P3) instead of binary (P5/P6)
    #[arg(long)]
    pub ascii: bool,
}

#[derive(clap::Args, Serialize, Deserialize, Debug, Clone, PartialEq, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ResidualConfig {
    /// Input image; loaded onto the moments' domain
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,

    /// Input moments file
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<PathBuf>,

    /// Output image
    #[arg(long, default_value = "residual.pgm")]
    pub out: PathBuf,

    /// Write ASCII (P2/P3) instead of binary (P5/P6)
    #[arg(long)]
    pub ascii: bool,
}

#[derive(clap::Args, Serialize, Deserialize, Debug, Clone, PartialEq, Default)]
#[serde(default, deny_unknown_fields)]
pub struct QualityConfig {
    /// Input image
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,

    /// Stored moments to score (alternative to --degrees/--boxes)
    #[arg(long, conflicts_with_all = ["degrees", "boxes"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<PathBuf>,

    /// Analyze at one degree box NX NY
    #[arg(long, num_args = 2, value_names = ["NX", "NY"], conflicts_with = "boxes")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,

    /// Analyze at several square boxes, e.g. `4,8,16,32`; one CSV row each
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boxes: Option<String>,

    /// Domain policy for --degrees/--boxes: `unit`, `pixel`, or `A1,B1,A2,B2`
    #[arg(long, default_value = "unit")]
    pub domain: String,

    /// Output CSV (stdout when omitted)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args, Serialize, Deserialize, Debug, Clone, PartialEq, Default)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    /// Moments file (`glp-moments`) or bare tensor file (`glp-tensor`)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<PathBuf>,

    /// Highest seminorm order to report contributions for
    #[arg(long, default_value_t = 3)]
    pub kmax: usize,

    /// Output CSV (stdout when omitted)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl SpectrumConfig {
    pub fn kmax_or_default(&self) -> usize {
        if self.kmax == 0 {
            3
        } else {
            self.kmax
        }
    }
}

#[derive(clap::Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyCmdConfig {
    /// Seed for the randomized checks
    #[arg(long, default_value_t = 1234)]
    pub seed: u64,

    /// Multiplies every tolerance (0 forces failures; negative control)
    #[arg(long, default_value_t = 1.0)]
    pub tol_scale: f64,

    /// Also write the report as CSV
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

impl Default for VerifyCmdConfig {
    fn default() -> Self {
        VerifyCmdConfig {
            seed: 1234,
            tol_scale: 1.0,
            csv: None,
        }
    }
}

/// `N` or inclusive `LO..HI`.
pub fn parse_degree_range(s: &str) -> CliResult<(usize, usize)> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad degree range `{s}`")))?;
        let hi: usize = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| CliError::usage(format!("bad degree range `{s}`")))?;
        if hi < lo {
            return Err(CliError::usage(format!("empty degree range `{s}`")));
        }
        Ok((lo, hi))
    } else {
        let n: usize = s
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad degree `{s}`")))?;
        Ok((n, n))
    }
}

/// `unit`, `pixel`, or `a1,b1,a2,b2`.
pub fn parse_domain_policy(s: &str) -> CliResult<DomainPolicy> {
    match s {
        "unit" | "" => Ok(DomainPolicy::Unit),
        "pixel" => Ok(DomainPolicy::Pixel),
        other => {
            let parts: Vec<f64> = other
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::usage(format!("bad domain `{other}`")))?;
            if parts.len() != 4 {
                return Err(CliError::usage(format!(
                    "explicit domain needs 4 numbers, got {}",
                    parts.len()
                )));
            }
            let rect = RectDomain::new(vec![
                Interval::new(parts[0], parts[1])?,
                Interval::new(parts[2], parts[3])?,
            ])?;
            Ok(DomainPolicy::Explicit(rect))
        }
    }
}

/// Comma-separated square box sizes, e.g. `4,8,16,32`.
pub fn parse_boxes(s: &str) -> CliResult<Vec<usize>> {
    let boxes: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("bad box list `{s}`")))?;
    if boxes.is_empty() {
        return Err(CliError::usage("empty box list"));
    }
    Ok(boxes)
}

pub fn require<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::usage(format!("missing required --{flag}")))
}

pub fn pair<T: Copy>(v: &[T], flag: &str) -> CliResult<(T, T)> {
    if v.len() != 2 {
        return Err(CliError::usage(format!("--{flag} needs exactly 2 values")));
    }
    Ok((v[0], v[1]))
}
