use std::fs::File;
use std::path::Path;

use anyhow::{Context, Result};

use crate::args::Command;

pub mod convergence;
pub mod ks;
pub mod limit;
pub mod plotdata;
pub mod simulate;
pub mod verify;

pub fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Simulate(a) => simulate::cmd_simulate(&a),
        Command::Limit(a) => limit::cmd_limit(&a),
        Command::Verify(a) => verify::cmd_verify(&a),
        Command::Convergence(a) => convergence::cmd_convergence(&a),
        Command::Plotdata(a) => plotdata::cmd_plotdata(&a),
        Command::Ks(a) => ks::cmd_ks(&a),
        Command::Replay(a) => replay(&a.manifest, &a.out),
    }
}

/// Reruns the command recorded in a manifest into `out`.
pub fn replay(manifest: &Path, out: &Path) -> Result<i32> {
    let m = crate::manifest::RunManifest::read(manifest)?;
    match m.command.as_str() {
        "simulate" => {
            let settings = serde_json::from_value(m.settings).context("simulate settings in manifest")?;
            simulate::run_simulate(&settings, out)?;
        }
        "convergence" => {
            let settings = serde_json::from_value(m.settings).context("convergence settings in manifest")?;
            convergence::run_convergence(&settings, out)?;
        }
        other => anyhow::bail!("cannot replay command '{other}'"),
    }
    Ok(crate::EXIT_OK)
}

/// A CSV writer whose header is written explicitly, so that a file with no
/// rows still carries it.
pub(crate) fn csv_with_header(path: &Path, header: &[&str]) -> Result<csv::Writer<File>> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    Ok(w)
}

pub(crate) fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}
