//! `key = value` configuration files. Each entry becomes the flag `--key
//! value` placed right after the subcommand, so flags given on the command
//! line (which come later) take precedence.

use std::ffi::OsString;

use super::SUBCOMMANDS;
use crate::error::{Error, Result};

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
/// Keys may be written with or without a leading `--`.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", no + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(Error::Parse(format!("config line {}: invalid key", no + 1)));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

/// Splices the entries of the `--config` file (if any) into `args`.
pub fn merge_config(args: &[OsString]) -> Result<Vec<OsString>> {
    let Some(path) = config_path(args) else {
        return Ok(args.to_vec());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Error::Parse(format!(
            "cannot read config {}: {e}",
            path.to_string_lossy()
        ))
    })?;
    let mut flags: Vec<OsString> = Vec::new();
    for (key, value) in parse_config(&text)? {
        match value.as_str() {
            "true" => flags.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                flags.push(format!("--{key}").into());
                flags.push(value.into());
            }
        }
    }
    let at = args
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map_or(args.len(), |i| i + 1);
    let mut merged = args[..at].to_vec();
    merged.extend(flags);
    merged.extend_from_slice(&args[at..]);
    Ok(merged)
}
