//! `analyze`, `synth`, `residual`, and `quality` subcommands.

use super::{csv_float, write_output};
use crate::config::{
    pair, parse_boxes, parse_domain_policy, require, AnalyzeConfig, QualityConfig,
    ResidualConfig, SynthConfig,
};
use crate::{CliError, CliResult};
use glp_core::image::{self, DomainPolicy, ImageBuffer, MomentSet};
use std::io::Write;
use std::path::PathBuf;

pub fn analyze(cfg: AnalyzeConfig) -> CliResult<i32> {
    let input = require(cfg.input, "input")?;
    let degrees = require(cfg.degrees, "degrees")?;
    let degrees = pair(&degrees, "degrees")?;
    let policy = parse_domain_policy(&cfg.domain)?;
    let img = ImageBuffer::load(&input, &policy)?;
    let moments = image::analyze(&img, degrees)?;
    moments.save(&cfg.out)?;
    Ok(0)
}

pub fn synth(cfg: SynthConfig) -> CliResult<i32> {
    let path = require(cfg.moments, "moments")?;
    let mut moments = MomentSet::load(&path)?;
    if let Some(maxval) = cfg.maxval {
        if maxval == 0 {
            return Err(CliError::usage("--maxval must be positive"));
        }
        let source = image::SourceInfo {
            maxval,
            ..moments.source()
        };
        moments = MomentSet::new(moments.channels().to_vec(), source)
            .map_err(CliError::from)?;
    }
    let width = cfg.width.unwrap_or(moments.source().width);
    let height = cfg.height.unwrap_or(moments.source().height);
    if width == 0 || height == 0 {
        return Err(CliError::usage("synthesis dimensions must be positive"));
    }
    let img = image::synthesize(&moments, width, height, cfg.clamp)?;
    img.save(&cfg.out, cfg.ascii)?;
    Ok(0)
}

/// Loads an image onto the domain the moments were computed on.
fn load_on_moments_domain(path: &PathBuf, moments: &MomentSet) -> CliResult<ImageBuffer> {
    let policy = DomainPolicy::Explicit(moments.spec().domain().clone());
    Ok(ImageBuffer::load(path, &policy)?)
}

pub fn residual(cfg: ResidualConfig) -> CliResult<i32> {
    let input = require(cfg.input, "input")?;
    let moments_path = require(cfg.moments, "moments")?;
    let moments = MomentSet::load(&moments_path)?;
    let img = load_on_moments_domain(&input, &moments)?;
    let res = image::residual(&img, &moments)?;
    res.save(&cfg.out, cfg.ascii)?;
    Ok(0)
}

const QUALITY_HEADER: &str = "width,height,Nx,Ny,l2_error,psnr_db,parseval_ratio";

fn quality_row(img: &ImageBuffer, m: &MomentSet) -> CliResult<String> {
    let q = image::quality(img, m)?;
    let (nx, ny) = m.degrees();
    Ok(format!(
        "{},{},{},{},{},{},{}",
        img.width(),
        img.height(),
        nx,
        ny,
        csv_float(q.l2_error),
        csv_float(q.psnr_db),
        csv_float(q.parseval_ratio)
    ))
}

pub fn quality(cfg: QualityConfig) -> CliResult<i32> {
    let input = require(cfg.input, "input")?;
    let mut rows = Vec::new();
    if let Some(moments_path) = &cfg.moments {
        let moments = MomentSet::load(moments_path)?;
        let img = load_on_moments_domain(&input, &moments)?;
        rows.push(quality_row(&img, &moments)?);
    } else {
        let policy = parse_domain_policy(&cfg.domain)?;
        let img = ImageBuffer::load(&input, &policy)?;
        let boxes: Vec<(usize, usize)> = if let Some(list) = &cfg.boxes {
            parse_boxes(list)?.into_iter().map(|n| (n, n)).collect()
        } else if let Some(degrees) = &cfg.degrees {
            vec![pair(degrees, "degrees")?]
        } else {
            return Err(CliError::usage(
                "need one of --moments, --degrees, or --boxes",
            ));
        };
        for degrees in boxes {
            let moments = image::analyze(&img, degrees)?;
            rows.push(quality_row(&img, &moments)?);
        }
    }
    let mut out = Vec::new();
    writeln!(out, "{QUALITY_HEADER}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    write_output(cfg.out.as_ref(), &out)?;
    Ok(0)
}
