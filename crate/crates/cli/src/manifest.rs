//! Experiment manifests: everything needed to rerun a command.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::output::{write_atomic, Format};
use crate::Command;

pub fn build_id() -> String {
    format!(
        "ca184 {} ({})",
        env!("CARGO_PKG_VERSION"),
        if cfg!(debug_assertions) {
            "debug"
        } else {
            "release"
        }
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    pub build: String,
    pub seed: u64,
    pub threads: Option<usize>,
    pub format: Format,
    pub command: Command,
    pub outputs: Vec<PathBuf>,
}

impl ExperimentManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(|e| crate::commands::usage(format!("malformed manifest: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        write_atomic(path, text.as_bytes())
    }
}

pub fn manifest_path(out: &Path, command: &str) -> PathBuf {
    out.join(format!("{command}.manifest.json"))
}
