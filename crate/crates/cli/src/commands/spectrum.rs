//! The `spectrum` subcommand: coefficient magnitudes and their seminorm
//! contributions, one CSV row per multi-index.

use super::{csv_float, write_output};
use crate::config::{require, SpectrumConfig};
use crate::{CliError, CliResult};
use glp_core::image::MomentSet;
use glp_core::seminorms;
use glp_core::tensor::{CoeffTensor, MultiIndexIter};
use std::io::Write;

pub fn run(cfg: SpectrumConfig) -> CliResult<i32> {
    let path = require(cfg.moments.clone(), "moments")?;
    let kmax = cfg.kmax_or_default();
    if kmax > seminorms::MAX_ORDER {
        return Err(CliError::usage(format!(
            "--kmax must be at most {}",
            seminorms::MAX_ORDER
        )));
    }
    let text = std::fs::read_to_string(&path).map_err(CliError::from)?;
    // either a moments envelope or a bare tensor block
    let channels: Vec<CoeffTensor> = match MomentSet::parse(&text) {
        Ok(m) => m.channels().to_vec(),
        Err(_) => vec![CoeffTensor::parse(&text)?],
    };

    let dim = channels[0].spec().dim();
    let multi_channel = channels.len() > 1;
    let mut out = Vec::new();
    let mut header = String::new();
    if multi_channel {
        header.push_str("channel,");
    }
    for axis in 0..dim {
        if dim == 1 {
            header.push_str("m,");
        } else {
            header.push_str(&format!("m{},", axis + 1));
        }
    }
    header.push_str("coeff");
    for k in 0..=kmax {
        header.push_str(&format!(",p{k}_contrib"));
    }
    writeln!(out, "{header}")?;

    for (ch, tensor) in channels.iter().enumerate() {
        let shape = tensor.spec().shape();
        for m in MultiIndexIter::new(&shape) {
            let coeff = tensor.get(&m)?;
            let mut row = String::new();
            if multi_channel {
                row.push_str(&format!("{ch},"));
            }
            for &mi in &m {
                row.push_str(&format!("{mi},"));
            }
            row.push_str(&csv_float(coeff));
            for k in 0..=kmax {
                // contribution of this index to p_k^2
                let weight: f64 = m
                    .iter()
                    .map(|&mi| (mi as f64 + 1.0).powi(2 * k as i32))
                    .product();
                row.push_str(&format!(",{}", csv_float(coeff * coeff * weight)));
            }
            writeln!(out, "{row}")?;
        }
    }
    write_output(cfg.out.as_ref(), &out)?;
    Ok(0)
}
