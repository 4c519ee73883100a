//! Optional `key = value` settings file. Command-line flags win.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, UsageError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(UsageError(format!("unknown format '{}' (expected csv or json)", other))),
        }
    }
}

pub const DEFAULT_PRECISION: usize = 12;
pub const PRECISION_RANGE: (usize, usize) = (6, 17);

/// Settings after merging the config file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub precision: usize,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub window_l: Option<f64>,
    pub points: Option<usize>,
    pub max_steps: Option<usize>,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            output: None,
            precision: DEFAULT_PRECISION,
            rel_tol: None,
            abs_tol: None,
            window_l: None,
            points: None,
            max_steps: None,
        }
    }
}

impl CliConfig {
    pub fn check(&self) -> Result<(), UsageError> {
        let (lo, hi) = PRECISION_RANGE;
        if !(lo..=hi).contains(&self.precision) {
            return Err(UsageError(format!(
                "precision must be in [{}, {}], got {}",
                lo, hi, self.precision
            )));
        }
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str, path: &Path, line: usize) -> Result<T, UsageError> {
    value.parse().map_err(|_| {
        UsageError(format!(
            "{}:{}: bad value '{}' for {}",
            path.display(),
            line,
            value,
            key
        ))
    })
}

/// Reads a settings file: one `key = value` per line, `#` starts a comment.
pub fn load(path: &Path) -> Result<CliConfig, UsageError> {
    let text =
        fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read config {}: {}", path.display(), e)))?;
    let mut seen = BTreeMap::new();
    let mut cfg = CliConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| UsageError(format!("{}:{}: expected key = value", path.display(), line_no)))?;
        if seen.insert(key.to_string(), line_no).is_some() {
            return Err(UsageError(format!(
                "{}:{}: duplicate key {}",
                path.display(),
                line_no,
                key
            )));
        }
        match key {
            "format" => cfg.format = Format::parse(value)?,
            "output" => cfg.output = Some(PathBuf::from(value)),
            "precision" | "precision_digits" => cfg.precision = parse_num(key, value, path, line_no)?,
            "rel_tol" => cfg.rel_tol = Some(parse_num(key, value, path, line_no)?),
            "abs_tol" => cfg.abs_tol = Some(parse_num(key, value, path, line_no)?),
            "window_L" | "window_l" => cfg.window_l = Some(parse_num(key, value, path, line_no)?),
            "points" => cfg.points = Some(parse_num(key, value, path, line_no)?),
            "max_steps" => cfg.max_steps = Some(parse_num(key, value, path, line_no)?),
            _ => {
                return Err(UsageError(format!(
                    "{}:{}: unknown key {}",
                    path.display(),
                    line_no,
                    key
                )))
            }
        }
    }
    Ok(cfg)
}
