//! Run configuration: built-in defaults, then a TOML file, then flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Json,
    #[default]
    Markdown,
}

/// Every knob a subcommand may read. Fields left out of the TOML file keep
/// their defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Worker threads for the parallel scans; 0 lets rayon decide.
    pub jobs: usize,
    pub emit: Emit,
    pub cache_dir: Option<PathBuf>,
    pub round_trips: usize,
    pub lifts: usize,
    pub numeric_samples: usize,
    /// Largest extension degree tried by `gm find-v5p`.
    pub max_degree: u32,
    /// Subspaces examined by `gm scan` before giving up.
    pub scan_budget: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let suite = gmlab_core::suite::SuiteParams::default();
        RunConfig {
            seed: suite.seed,
            jobs: 0,
            emit: Emit::Markdown,
            cache_dir: None,
            round_trips: suite.round_trips,
            lifts: suite.lifts,
            numeric_samples: suite.numeric_samples,
            max_degree: 3,
            scan_budget: 200_000,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn suite_params(&self) -> gmlab_core::suite::SuiteParams {
        gmlab_core::suite::SuiteParams {
            seed: self.seed,
            round_trips: self.round_trips,
            lifts: self.lifts,
            numeric_samples: self.numeric_samples,
        }
    }

    /// Cache directory: the config value, else `GMLAB_CACHE_DIR`, else
    /// `$HOME/.cache/gmlab`.
    pub fn cache_dir(&self) -> Option<PathBuf> {
        if let Some(d) = &self.cache_dir {
            return Some(d.clone());
        }
        if let Some(d) = std::env::var_os("GMLAB_CACHE_DIR") {
            return Some(PathBuf::from(d));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("gmlab"))
    }
}
