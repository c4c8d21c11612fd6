//! Optional TOML configuration, located through `HARMODISK_CONFIG`.
//!
//! ```toml
//! gamma0 = 3.0
//! gamma_k = [3.0, 3.0]   # γ_1, γ_2, ...
//! default_nodes = 8192
//! angular_points = 512
//! holder_grid = 2048
//! ```
//!
//! Command-line flags take precedence over every key.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::estimates::{JacksonConstants, DEFAULT_GAMMA};

pub const CONFIG_ENV: &str = "HARMODISK_CONFIG";

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub gamma0: Option<f64>,
    pub gamma_k: Option<Vec<f64>>,
    pub default_nodes: Option<usize>,
    pub angular_points: Option<usize>,
    pub holder_grid: Option<usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The file named by `HARMODISK_CONFIG`, or defaults when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }

    /// `γ_0` followed by `γ_k`, with the placeholder default for missing entries.
    pub fn jackson_constants(&self) -> Result<JacksonConstants> {
        let mut gamma = vec![self.gamma0.unwrap_or(DEFAULT_GAMMA)];
        gamma.extend(self.gamma_k.clone().unwrap_or_default());
        JacksonConstants::new(gamma)
    }
}
