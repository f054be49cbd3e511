//! The `basis` subcommand: 1D tables and 2D density plots.

use super::{csv_float, write_file};
use crate::config::{pair, parse_degree_range, BasisConfig};
use crate::{CliError, CliResult};
use glp_core::domain::{BasisSpec1D, BasisSpecND, Interval, RectDomain};
use glp_core::glp::{self, EvalTable};
use glp_core::netpbm::{self, PnmFormat, RawImage};
use glp_core::tensor;

pub fn run(cfg: BasisConfig) -> CliResult<i32> {
    match (&cfg.interval, &cfg.rect) {
        (Some(interval), None) => run_1d(&cfg, interval.clone()),
        (None, Some(rect)) => run_2d(&cfg, rect.clone()),
        (None, None) => Err(CliError::usage("need --interval A B or --rect A1 B1 A2 B2")),
        (Some(_), Some(_)) => Err(CliError::usage("--interval and --rect are exclusive")),
    }
}

fn run_1d(cfg: &BasisConfig, endpoints: Vec<f64>) -> CliResult<i32> {
    let (a, b) = pair(&endpoints, "interval")?;
    let (lo, hi) = parse_degree_range(&cfg.degrees)?;
    // a bare `--degrees N` means the whole family 0..=N
    if lo != 0 && lo != hi {
        return Err(CliError::usage("1D tables cover 0..N; use `--degrees 0..N`"));
    }
    if cfg.points < 2 {
        return Err(CliError::usage("--points must be at least 2"));
    }
    let spec = BasisSpec1D::new(Interval::new(a, b)?, hi)?;
    let points = glp::uniform_points(&spec, cfg.points);
    let table = EvalTable::build(spec, points, false)?;
    let mut out = Vec::new();
    table.write_csv(&mut out)?;
    write_file(&cfg.out, &out)?;
    Ok(0)
}

fn run_2d(cfg: &BasisConfig, corners: Vec<f64>) -> CliResult<i32> {
    if corners.len() != 4 {
        return Err(CliError::usage("--rect needs exactly 4 values"));
    }
    let m = pair(cfg.m.as_deref().unwrap_or(&[]), "m")?;
    if cfg.grid < 2 {
        return Err(CliError::usage("--grid must be at least 2"));
    }
    let ivx = Interval::new(corners[0], corners[1])?;
    let ivy = Interval::new(corners[2], corners[3])?;
    let spec = BasisSpecND::new(RectDomain::new(vec![ivx, ivy])?, vec![m.0, m.1])?;

    // cell-center grid, like image pixels
    let centers = |iv: Interval| -> Vec<f64> {
        let step = iv.width() / cfg.grid as f64;
        (0..cfg.grid)
            .map(|k| iv.a() + (k as f64 + 0.5) * step)
            .collect()
    };
    let xs = centers(ivx);
    let ys = centers(ivy);

    let mut tensor_coeffs = tensor::CoeffTensor::zeros(spec.clone());
    tensor_coeffs.set(&[m.0, m.1], 1.0)?;
    // synthesize_nd walks axis 0 slowest; values[i][j] = W(x_i, y_j)
    let values = tensor::synthesize_nd(&tensor_coeffs, &[xs.clone(), ys.clone()])?;

    let mut csv = Vec::new();
    {
        use std::io::Write;
        writeln!(csv, "x,y,W")?;
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                writeln!(
                    csv,
                    "{},{},{}",
                    csv_float(x),
                    csv_float(y),
                    csv_float(values[i * cfg.grid + j])
                )?;
            }
        }
    }
    write_file(&cfg.out_csv, &csv)?;

    // density plot: linear map [-max|W|, +max|W|] -> [0, maxval], mid-gray zero
    let peak = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let maxval = cfg.maxval.max(1);
    let samples: Vec<u16> = (0..cfg.grid * cfg.grid)
        .map(|px| {
            // pixel row = y index, col = x index; row 0 at the smallest y
            let (row, col) = (px / cfg.grid, px % cfg.grid);
            let v = values[col * cfg.grid + row];
            if peak == 0.0 {
                (maxval / 2) as u16
            } else {
                let unit = (v + peak) / (2.0 * peak);
                (unit * maxval as f64).round().clamp(0.0, maxval as f64) as u16
            }
        })
        .collect();
    let img = RawImage {
        format: PnmFormat::PgmBinary,
        width: cfg.grid,
        height: cfg.grid,
        maxval,
        samples,
    };
    let mut pgm = Vec::new();
    netpbm::encode(&img, &mut pgm)?;
    write_file(&cfg.out_pgm, &pgm)?;
    Ok(0)
}
