use crate::eval::DEFAULT_BUDGET;
use serde::{Deserialize, Serialize};

/// Parameters for term generation, probing and campaigns. Every randomized
/// procedure is a pure function of this record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Campaign size (programs, or samples for the semantic property checks).
    pub trials: usize,
    /// Generated arguments per arrow type when probing function values.
    pub probes: usize,
    pub max_list: usize,
    pub int_min: i64,
    pub int_max: i64,
    pub seed: u64,
    pub depth: u32,
    /// Evaluation budget per program, in cost units.
    pub budget: u64,
    /// Node visits allowed per denotation.
    pub fuel: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            trials: 100,
            probes: 10,
            max_list: 8,
            int_min: -9,
            int_max: 9,
            seed: 0,
            depth: 6,
            budget: DEFAULT_BUDGET,
            fuel: 100_000_000,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.depth == 0 {
            return Err("depth must be positive".into());
        }
        if self.int_min > self.int_max {
            return Err(format!(
                "empty integer range {}..={}",
                self.int_min, self.int_max
            ));
        }
        if self.budget == 0 || self.fuel == 0 {
            return Err("budget and fuel must be positive".into());
        }
        Ok(())
    }
}
