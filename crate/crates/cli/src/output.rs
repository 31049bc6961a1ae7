//! Report envelope and output-path handling shared by every subcommand.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

/// Every JSON report carries the same header so any run can be replayed
/// exactly from the file alone.
#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub base: String,
    pub config: BTreeMap<String, String>,
    pub results: T,
    pub passed: bool,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(
        command: &str,
        seed: u64,
        base: &str,
        config: BTreeMap<String, String>,
        results: T,
        passed: bool,
    ) -> Self {
        Self {
            tool: "codesmooth",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            base: base.to_string(),
            config,
            results,
            passed,
        }
    }
}

/// `--out` wins; otherwise `<command>.json` under `$CODESMOOTH_OUT_DIR`
/// (or the working directory when unset).
pub fn output_path(out_flag: Option<&str>, command: &str) -> PathBuf {
    match out_flag {
        Some(path) => PathBuf::from(path),
        None => {
            let dir = std::env::var("CODESMOOTH_OUT_DIR").unwrap_or_else(|_| ".".to_string());
            Path::new(&dir).join(format!("{command}.json"))
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, envelope: &Envelope<T>) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    let mut text = serde_json::to_string_pretty(envelope)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Sibling CSV next to the JSON report (same stem, `.csv`).
pub fn csv_sibling(json_path: &Path) -> PathBuf {
    json_path.with_extension("csv")
}

pub fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let mut text = String::from(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
