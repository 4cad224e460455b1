//! Run configuration merged from flags, environment, an optional config
//! file, and defaults — in that precedence order.

use std::path::PathBuf;

use serde::Deserialize;
use tinv_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "plain" => Ok(OutputFormat::Plain),
            other => Err(format!("unknown format {other:?} (json|csv|plain)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub max_partition_size: u64,
    pub max_basis_size: usize,
    pub cache_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
    pub allow_large: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_partition_size: tinv_core::kronecker::DEFAULT_MAX_PARTITION_SIZE,
            max_basis_size: tinv_core::kronecker::DEFAULT_MAX_BASIS_SIZE,
            cache_path: None,
            format: OutputFormat::Json,
            threads: None,
            allow_large: false,
        }
    }
}

/// On-disk config file schema; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    max_partition_size: Option<u64>,
    max_basis_size: Option<usize>,
    cache_path: Option<PathBuf>,
    format: Option<String>,
    threads: Option<usize>,
    allow_large: Option<bool>,
}

/// Flag values gathered by the argument parser (None = not given).
#[derive(Debug, Default, Clone)]
pub struct FlagOverrides {
    pub max_partition_size: Option<u64>,
    pub max_basis_size: Option<usize>,
    pub cache_path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
    pub allow_large: bool,
}

fn env_u64(name: &str) -> Result<Option<u64>> {
    match std::env::var(name) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("{name} must be an integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

pub fn resolve(config_file: Option<&PathBuf>, flags: &FlagOverrides) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();

    if let Some(path) = config_file {
        let text = std::fs::read_to_string(path)?;
        let file: FileConfig = toml::from_str(&text)
            .map_err(|e| Error::Parse(format!("config file {}: {e}", path.display())))?;
        if let Some(v) = file.max_partition_size {
            cfg.max_partition_size = v;
        }
        if let Some(v) = file.max_basis_size {
            cfg.max_basis_size = v;
        }
        if let Some(v) = file.cache_path {
            cfg.cache_path = Some(v);
        }
        if let Some(v) = file.format {
            cfg.format = v.parse().map_err(Error::Parse)?;
        }
        if let Some(v) = file.threads {
            cfg.threads = Some(v);
        }
        if let Some(v) = file.allow_large {
            cfg.allow_large = v;
        }
    }

    if let Some(v) = env_u64("TI_MAX_PARTITION_SIZE")? {
        cfg.max_partition_size = v;
    }
    if let Ok(v) = std::env::var("TI_CACHE_PATH") {
        cfg.cache_path = Some(PathBuf::from(v));
    }
    if let Some(v) = env_u64("TI_THREADS")? {
        cfg.threads = Some(v as usize);
    }

    if let Some(v) = flags.max_partition_size {
        cfg.max_partition_size = v;
    }
    if let Some(v) = flags.max_basis_size {
        cfg.max_basis_size = v;
    }
    if let Some(v) = &flags.cache_path {
        cfg.cache_path = Some(v.clone());
    }
    if let Some(v) = flags.format {
        cfg.format = v;
    }
    if let Some(v) = flags.threads {
        cfg.threads = Some(v);
    }
    if flags.allow_large {
        cfg.allow_large = true;
    }

    if cfg.max_partition_size == 0 || cfg.max_basis_size == 0 {
        return Err(Error::domain("budgets must be positive"));
    }
    Ok(cfg)
}
