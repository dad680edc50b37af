use std::path::Path;

use anyhow::{Context, Result};
use cwsoc::{ModelParams, SamplerConfig};
use serde::{Deserialize, Serialize};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Everything needed to rerun a sampling command. `settings` holds the fully
/// resolved options of the command, so a rerun needs no flags, config file or
/// environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub params: ModelParams,
    pub sampler: SamplerConfig,
    pub timestamp: String,
    pub code_version: String,
    pub output_paths: Vec<String>,
    pub settings: serde_json::Value,
}

impl RunManifest {
    pub fn new<S: Serialize>(
        command: &str,
        params: ModelParams,
        sampler: SamplerConfig,
        settings: &S,
        output_paths: Vec<String>,
    ) -> Result<Self> {
        Ok(Self {
            command: command.into(),
            params,
            sampler,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            code_version: concat!("cwsoc ", env!("CARGO_PKG_VERSION")).into(),
            output_paths,
            settings: serde_json::to_value(settings)?,
        })
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}
