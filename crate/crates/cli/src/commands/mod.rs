pub mod basis;
pub mod image_ops;
pub mod spectrum;
pub mod verify_cmd;

use crate::CliResult;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Writes to a file, or to stdout when no path is given.
pub fn write_output(path: Option<&PathBuf>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

pub fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes)?;
    Ok(())
}

/// `inf`-aware 17-significant-digit float for CSV cells.
pub fn csv_float(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        glp_core::glp::fmt_g17(v)
    }
}
