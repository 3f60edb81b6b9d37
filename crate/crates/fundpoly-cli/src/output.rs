use anyhow::{Context, Result};
use serde::Serialize;
use std::path::{Path, PathBuf};

fn write(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(path)
}

pub fn json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write(dir, name, text.as_bytes())
}

pub fn text(dir: &Path, name: &str, s: &str) -> Result<PathBuf> {
    write(dir, name, s.as_bytes())
}

pub fn bytes(dir: &Path, name: &str, b: &[u8]) -> Result<PathBuf> {
    write(dir, name, b)
}
