use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

pub const MANIFEST: &str = "manifest.json";
pub const TRANSMISSIONS: &str = "transmissions.log";
pub const DECODE: &str = "decode.json";
pub const RATE: &str = "rate.json";

/// Everything needed to rebuild a simulation run exactly. Indices shown to
/// users (caches, files) are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command_line: Vec<String>,
    pub seed: u64,
    pub pda_source: String,
    /// The PDA itself, so the run does not depend on the source file later.
    pub pda: String,
    /// Users per cache, in the order given.
    pub profile: Vec<usize>,
    /// Original cache at each relabelled position.
    pub cache_order: Vec<usize>,
    pub demands_spec: String,
    pub demands: Vec<usize>,
    pub num_files: usize,
    pub file_bytes: usize,
    pub input_dir: Option<String>,
    pub field_bits: u32,
    pub field_polynomial: String,
    pub strip_pads: bool,
    pub full_payloads: bool,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST);
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST);
        std::fs::write(&path, serde_json::to_string_pretty(self)? + "\n")
            .with_context(|| format!("writing {}", path.display()))
    }
}
