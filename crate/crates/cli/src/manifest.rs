use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

pub const FILE_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    /// Arguments with `--out` and `--workers` removed.
    pub args: Vec<String>,
    pub workers: usize,
    pub outputs: Vec<String>,
}

/// Drops `--out`/`--workers` and their values from an argument list.
pub fn strip_globals(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" || a == "--workers" {
            skip = true;
        } else if !(a.starts_with("--out=") || a.starts_with("--workers=")) {
            out.push(a.clone());
        }
    }
    out
}

impl Manifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        fs::write(dir.join(FILE_NAME), text).context("writing manifest")
    }

    pub fn read(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading manifest {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}
