//! Run configuration: an optional JSON file overridden by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use coauthor_core::{FactorPolicy, OrderingPolicy};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "COAUTHOR_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering {
    Byline,
    CorrespondingFirst,
}

impl From<Ordering> for OrderingPolicy {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Byline => OrderingPolicy::Byline,
            Ordering::CorrespondingFirst => OrderingPolicy::CorrespondingFirst,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    ordering: Option<Ordering>,
    factors: Option<BTreeMap<String, f64>>,
    include_singles: Option<bool>,
    grid_step: Option<f64>,
    cuts: Option<Vec<usize>>,
    format: Option<Format>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ordering: OrderingPolicy,
    pub factors: FactorPolicy,
    pub include_singles: bool,
    pub grid_step: f64,
    pub cuts: Option<Vec<usize>>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ordering: OrderingPolicy::Byline,
            factors: FactorPolicy::fitted_default(),
            include_singles: false,
            grid_step: 0.001,
            cuts: None,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    /// Loads `explicit`, else the file named by [`CONFIG_ENV`], else
    /// defaults.
    pub fn load(explicit: Option<&Path>) -> CliResult<Self> {
        let path: Option<PathBuf> = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
        };
        match path {
            Some(p) => {
                let text =
                    std::fs::read_to_string(&p).map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?;
                Self::from_json(&text).map_err(|e| match e {
                    CliError::Usage(m) => CliError::Usage(format!("config {}: {m}", p.display())),
                    other => other,
                })
            }
            None => Ok(Self::default()),
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut cfg = Self::default();
        if let Some(o) = file.ordering {
            cfg.ordering = o.into();
        }
        if let Some(f) = file.factors {
            let json = serde_json::to_string(&f).expect("map serializes");
            cfg.factors = FactorPolicy::from_json(&json)?;
        }
        if let Some(s) = file.include_singles {
            cfg.include_singles = s;
        }
        if let Some(step) = file.grid_step {
            cfg.grid_step = step;
        }
        if let Some(cuts) = file.cuts {
            cfg.cuts = Some(cuts);
        }
        if let Some(f) = file.format {
            cfg.format = f;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.grid_step > 0.0 && self.grid_step <= 0.1) {
            return Err(CliError::Usage(format!("grid step must lie in (0, 0.1], got {}", self.grid_step)));
        }
        if let Some(c) = &self.cuts {
            if c.is_empty() || c.contains(&0) {
                return Err(CliError::Usage(format!("cut counts must be positive, got {c:?}")));
            }
        }
        Ok(())
    }
}
