//! `key = value` configuration, located through `BWB_CONFIG` or `--config`.

use std::fmt;
use std::path::Path;

use bwb_core::Limits;

pub const CONFIG_ENV: &str = "BWB_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "table" => Some(Format::Table),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub group_type: Option<String>,
    pub weyl_group_cap: usize,
    pub subset_cap: usize,
    pub candidate_cap: usize,
    pub matrix_dim_cap: usize,
    pub hermiticity_tol: f64,
    pub kernel_tol: f64,
    pub supertrace_tol: f64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        let limits = Limits::default();
        Config {
            group_type: None,
            weyl_group_cap: limits.weyl_group_cap,
            subset_cap: limits.subset_cap,
            candidate_cap: limits.candidate_cap,
            matrix_dim_cap: 200,
            hermiticity_tol: 1e-8,
            kernel_tol: 1e-6,
            supertrace_tol: 1e-9,
            format: Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

fn parse_cap(line: usize, key: &str, value: &str) -> Result<usize, ConfigError> {
    match value.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(ConfigError {
            line,
            message: format!("{key} must be a positive integer"),
        }),
    }
}

fn parse_tol(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    match value.parse::<f64>() {
        Ok(v) if v > 0.0 && v < 1.0 => Ok(v),
        _ => Err(ConfigError {
            line,
            message: format!("{key} must lie in (0, 1)"),
        }),
    }
}

impl Config {
    pub fn limits(&self) -> Limits {
        Limits {
            weyl_group_cap: self.weyl_group_cap,
            subset_cap: self.subset_cap,
            candidate_cap: self.candidate_cap,
        }
    }

    /// Parses the file contents. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError {
                    line,
                    message: "expected key = value".into(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "type" => cfg.group_type = Some(value.to_string()),
                "weyl_group_cap" => cfg.weyl_group_cap = parse_cap(line, key, value)?,
                "subset_cap" => cfg.subset_cap = parse_cap(line, key, value)?,
                "candidate_cap" => cfg.candidate_cap = parse_cap(line, key, value)?,
                "matrix_dim_cap" => cfg.matrix_dim_cap = parse_cap(line, key, value)?,
                "hermiticity_tol" => cfg.hermiticity_tol = parse_tol(line, key, value)?,
                "kernel_tol" => cfg.kernel_tol = parse_tol(line, key, value)?,
                "supertrace_tol" => cfg.supertrace_tol = parse_tol(line, key, value)?,
                "format" => {
                    cfg.format = Format::parse(value).ok_or_else(|| ConfigError {
                        line,
                        message: "format must be json or table".into(),
                    })?
                }
                other => {
                    return Err(ConfigError {
                        line,
                        message: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Config::parse(&text)
    }
}
