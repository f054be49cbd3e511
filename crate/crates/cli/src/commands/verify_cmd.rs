//! The `verify` subcommand: run every check, print the table, exit 4 on
//! any failure.

use crate::config::VerifyCmdConfig;
use crate::CliResult;
use glp_core::verify::{run_all, VerifyConfig};
use std::io::Write;

pub fn run(cfg: VerifyCmdConfig) -> CliResult<i32> {
    let results = run_all(&VerifyConfig {
        seed: cfg.seed,
        tol_scale: cfg.tol_scale,
    })?;

    let mut stdout = std::io::stdout().lock();
    writeln!(
        stdout,
        "{:<28} {:>13} {:>10} {:>7}",
        "check", "defect", "tolerance", "status"
    )?;
    for r in &results {
        writeln!(
            stdout,
            "{:<28} {:>13.3e} {:>10.1e} {:>7}",
            r.name,
            r.defect,
            r.tolerance,
            if r.pass { "PASS" } else { "FAIL" }
        )?;
    }
    let passed = results.iter().filter(|r| r.pass).count();
    writeln!(stdout, "result: {passed}/{} checks passed", results.len())?;

    if let Some(path) = &cfg.csv {
        let mut out = Vec::new();
        writeln!(out, "check,defect,tolerance,pass")?;
        for r in &results {
            writeln!(
                out,
                "{},{},{},{}",
                r.name,
                super::csv_float(r.defect),
                super::csv_float(r.tolerance),
                r.pass
            )?;
        }
        std::fs::write(path, out)?;
    }

    Ok(if passed == results.len() { 0 } else { 4 })
}
