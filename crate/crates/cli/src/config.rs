//! Scoring-config resolution for commands that accept one.
//!
//! Precedence, lowest first: built-in defaults, the config file, flags.
//! The file is `--config`, else `$ESGAI_CONFIG`, else `./esgai.config.json`
//! when it exists.

use std::path::{Path, PathBuf};

use clap::Args;
use esgai_api::ApiError;
use esgai_core::model::{ScoringConfig, Validate};
use serde_json::json;

pub const DEFAULT_CONFIG_FILE: &str = "esgai.config.json";

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Scoring config file (weights, encodings, thresholds)
    #[arg(long, env = "ESGAI_CONFIG", value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Materiality threshold for High
    #[arg(long, value_name = "F")]
    pub t_high: Option<f64>,
    /// Materiality threshold for Medium
    #[arg(long, value_name = "F")]
    pub t_low: Option<f64>,
    /// Weight of the regulatory risk score
    #[arg(long, value_name = "W")]
    pub w_risk: Option<f64>,
    /// Weight of the impact score
    #[arg(long, value_name = "W")]
    pub w_impact: Option<f64>,
    /// Weight of the scope score
    #[arg(long, value_name = "W")]
    pub w_scope: Option<f64>,
}

impl ConfigArgs {
    fn has_flags(&self) -> bool {
        [
            self.t_high,
            self.t_low,
            self.w_risk,
            self.w_impact,
            self.w_scope,
        ]
        .iter()
        .any(Option::is_some)
    }

    fn file(&self) -> Option<PathBuf> {
        self.config.clone().or_else(|| {
            let local = PathBuf::from(DEFAULT_CONFIG_FILE);
            local.is_file().then_some(local)
        })
    }

    /// The resolved config, or `None` when no file was found and no flag
    /// was given. Callers with a session then keep its frozen snapshot.
    pub fn resolve(&self) -> Result<Option<ScoringConfig>, ApiError> {
        let file = self.file();
        if file.is_none() && !self.has_flags() {
            return Ok(None);
        }
        let mut cfg = match &file {
            Some(path) => read_config(path)?,
            None => ScoringConfig::default(),
        };
        if let Some(v) = self.t_high {
            cfg.t_high = v;
        }
        if let Some(v) = self.t_low {
            cfg.t_low = v;
        }
        if let Some(v) = self.w_risk {
            cfg.use_case_weights.risk = v;
        }
        if let Some(v) = self.w_impact {
            cfg.use_case_weights.impact = v;
        }
        if let Some(v) = self.w_scope {
            cfg.use_case_weights.scope = v;
        }
        let issues = cfg.validate();
        if !issues.is_empty() {
            return Err(
                ApiError::new("config.invalid", "invalid scoring configuration")
                    .with_details(json!({ "violations": issues })),
            );
        }
        Ok(Some(cfg))
    }

    /// Resolved config, falling back to the defaults.
    pub fn resolve_or_default(&self) -> Result<ScoringConfig, ApiError> {
        Ok(self.resolve()?.unwrap_or_default())
    }
}

fn read_config(path: &Path) -> Result<ScoringConfig, ApiError> {
    let text = crate::read_input(path)?;
    serde_json::from_str(&text).map_err(|e| {
        ApiError::new("config.schema", format!("{}: {e}", path.display()))
            .with_details(json!({ "path": path.display().to_string() }))
    })
}
