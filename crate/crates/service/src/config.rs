use std::path::{Path, PathBuf};
use std::str::FromStr;

use ontoseer_core::axioms::DEFAULT_AXIOM_THRESHOLD;
use ontoseer_core::index::DEFAULT_TERM_FLOOR;
use ontoseer_core::odp::DEFAULT_ODP_THRESHOLD;

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_MAX_BODY_BYTES: usize = 10 * 1024 * 1024;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for {key}: {message}")]
    BadValue { line: usize, key: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub axiom: f64,
    pub odp: f64,
    pub term_floor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            axiom: DEFAULT_AXIOM_THRESHOLD,
            odp: DEFAULT_ODP_THRESHOLD,
            term_floor: DEFAULT_TERM_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub index_path: Option<PathBuf>,
    pub odp_dir: Option<PathBuf>,
    pub corpus_dir: Option<PathBuf>,
    pub ui_dir: Option<PathBuf>,
    pub port: u16,
    pub thresholds: Thresholds,
    pub remote_enabled: bool,
    pub max_body_bytes: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            index_path: None,
            odp_dir: None,
            corpus_dir: None,
            ui_dir: None,
            port: DEFAULT_PORT,
            thresholds: Thresholds::default(),
            remote_enabled: false,
            max_body_bytes: DEFAULT_MAX_BODY_BYTES,
        }
    }
}

fn unit_interval(v: f64) -> Result<f64, String> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0,1]"))
    }
}

fn parse_bool(v: &str) -> Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(format!("{v:?} is not a boolean")),
    }
}

fn num<T: FromStr>(v: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e: T::Err| e.to_string())
}

impl ServiceConfig {
    /// `key=value` lines; `#` comments and blank lines are ignored. Relative
    /// paths are kept as written.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = ServiceConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |message: String| ConfigError::BadValue {
                line,
                key: key.to_string(),
                message,
            };
            match key {
                "index_path" => config.index_path = Some(value.into()),
                "odp_dir" => config.odp_dir = Some(value.into()),
                "corpus_dir" => config.corpus_dir = Some(value.into()),
                "ui_dir" => config.ui_dir = Some(value.into()),
                "port" => config.port = num(value).map_err(bad)?,
                "axiom_threshold" => config.thresholds.axiom = num(value).and_then(unit_interval).map_err(bad)?,
                "odp_threshold" => config.thresholds.odp = num(value).and_then(unit_interval).map_err(bad)?,
                "term_floor" => config.thresholds.term_floor = num(value).and_then(unit_interval).map_err(bad)?,
                "remote_enabled" => config.remote_enabled = parse_bool(value).map_err(bad)?,
                "max_body_bytes" => config.max_body_bytes = num(value).map_err(bad)?,
                other => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: other.to_string(),
                    })
                }
            }
        }
        Ok(config)
    }

    /// Parse a config file; relative paths in it resolve against the file's
    /// directory.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for slot in [
            &mut config.index_path,
            &mut config.odp_dir,
            &mut config.corpus_dir,
            &mut config.ui_dir,
        ] {
            if let Some(p) = slot.as_mut() {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        Ok(config)
    }
}
