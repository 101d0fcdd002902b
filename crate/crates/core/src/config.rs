use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::ProjectOptions;
use crate::par;
use crate::skein::EngineConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("framing window {0}..={1} is empty")]
    EmptyWindow(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Largest satellite diagram (in crossings) the framing window admits.
    pub crossing_budget: usize,
    /// Skein recursion nodes allowed per polynomial.
    pub node_budget: u64,
    /// Overrides the default window `[α-2, β+2]`.
    pub framing_window: Option<(i64, i64)>,
    pub projection_retries: usize,
    pub seed: u64,
    pub improved_constants: bool,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            crossing_budget: 20,
            node_budget: 10_000_000,
            framing_window: None,
            projection_retries: 16,
            seed: 0,
            improved_constants: false,
            parallel: par::available(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.crossing_budget == 0 {
            return Err(ConfigError::NonPositive("crossing budget"));
        }
        if self.node_budget == 0 {
            return Err(ConfigError::NonPositive("node budget"));
        }
        if let Some((lo, hi)) = self.framing_window {
            if lo > hi {
                return Err(ConfigError::EmptyWindow(lo, hi));
            }
        }
        Ok(())
    }

    pub fn engine(&self) -> EngineConfig {
        EngineConfig { node_budget: self.node_budget, parallel: self.parallel, ..EngineConfig::default() }
    }

    pub fn projection(&self) -> ProjectOptions {
        ProjectOptions { retries: self.projection_retries, seed: self.seed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let zero = RunConfig { node_budget: 0, ..RunConfig::default() };
        assert_eq!(zero.validate(), Err(ConfigError::NonPositive("node budget")));
        let empty = RunConfig { framing_window: Some((3, 1)), ..RunConfig::default() };
        assert_eq!(empty.validate(), Err(ConfigError::EmptyWindow(3, 1)));
    }
}
