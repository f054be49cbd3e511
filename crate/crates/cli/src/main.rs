//! `glp` — basis tables and density plots, image moment analysis and
//! synthesis, coefficient spectra, and a numerical verification suite.
//!
//! Exit codes: 0 success, 1 usage, 2 malformed input file, 3 numerical
//! guard tripped, 4 verification failure.

mod commands;
mod config;

use clap::Parser;
use config::*;

#[derive(Parser)]
#[command(
    name = "glp",
    version,
    about = "Orthonormal Legendre bases on arbitrary intervals: tables, image moments, diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Sample basis functions: 1D CSV table, or 2D grid CSV plus density PGM
    Basis(Meta<BasisConfig>),
    /// Expand an image (PGM/PPM) into per-channel basis moments
    Analyze(Meta<AnalyzeConfig>),
    /// Reconstruct an image from stored moments
    Synth(Meta<SynthConfig>),
    /// Detail image: mid-gray remap of (image - reconstruction)/2
    Residual(Meta<ResidualConfig>),
    /// Reconstruction quality report (CSV)
    Quality(Meta<QualityConfig>),
    /// Coefficient spectrum with seminorm contributions (CSV)
    Spectrum(Meta<SpectrumConfig>),
    /// Run the numerical verification suite
    Verify(Meta<VerifyCmdConfig>),
}

/// A subcommand failure with its process exit code.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<glp_core::Error> for CliError {
    fn from(e: glp_core::Error) -> Self {
        let code = match &e {
            glp_core::Error::Argument(_) => 1,
            glp_core::Error::Io(_) => 1,
            glp_core::Error::Format { .. } => 2,
            glp_core::Error::Domain(_)
            | glp_core::Error::Range(_)
            | glp_core::Error::Numerical(_) => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Basis(meta) => with_config(meta, commands::basis::run),
        Command::Analyze(meta) => with_config(meta, commands::image_ops::analyze),
        Command::Synth(meta) => with_config(meta, commands::image_ops::synth),
        Command::Residual(meta) => with_config(meta, commands::image_ops::residual),
        Command::Quality(meta) => with_config(meta, commands::image_ops::quality),
        Command::Spectrum(meta) => with_config(meta, commands::spectrum::run),
        Command::Verify(meta) => with_config(meta, commands::verify_cmd::run),
    }
}

/// Applies the config-file override and the dump-config escape, then runs.
fn with_config<T, F>(meta: Meta<T>, f: F) -> CliResult<i32>
where
    T: clap::Args + serde::Serialize + serde::de::DeserializeOwned,
    F: FnOnce(T) -> CliResult<i32>,
{
    let effective: T = match &meta.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            toml::from_str(&text).map_err(|e| CliError::usage(format!("bad config: {e}")))?
        }
        None => meta.flags,
    };
    if let Some(path) = &meta.dump_config {
        let text = toml::to_string_pretty(&effective)
            .map_err(|e| CliError::usage(format!("cannot serialize config: {e}")))?;
        std::fs::write(path, text)?;
        return Ok(0);
    }
    f(effective)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
