use crate::error::{CliError, CliResult};
use multiboost::boosters::DEFAULT_EPS_CLAMP;
use multiboost::dynamics::DEFAULT_CYCLE_TOL;
use multiboost::{Algorithm, BoostConfig, LearnerSpec};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Every boosting formulation, plus kernel boosting for regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum AlgoChoice {
    Boost(Algorithm),
    Kernel,
}

impl fmt::Display for AlgoChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgoChoice::Boost(a) => write!(f, "{a}"),
            AlgoChoice::Kernel => f.write_str("kernel"),
        }
    }
}

impl FromStr for AlgoChoice {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if s == "kernel" {
            return Ok(AlgoChoice::Kernel);
        }
        s.parse::<Algorithm>().map(AlgoChoice::Boost).map_err(|_| {
            CliError::Config(format!(
                "unknown algorithm '{s}' (expected discrete, m1, real, gradient, mirror, poe or kernel)"
            ))
        })
    }
}

impl From<AlgoChoice> for String {
    fn from(a: AlgoChoice) -> Self {
        a.to_string()
    }
}

impl TryFrom<String> for AlgoChoice {
    type Error = CliError;

    fn try_from(s: String) -> CliResult<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algo: AlgoChoice,
    pub rounds: usize,
    pub learner: String,
    pub seed: u64,
    pub data: Option<PathBuf>,
    pub cycle_tol: f64,
    pub eps_clamp: f64,
    /// Noise variance for kernel boosting.
    pub sigma2: f64,
    /// Size of the synthetic kernel instance when no data is given.
    pub dim: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            algo: AlgoChoice::Boost(Algorithm::Discrete),
            rounds: 50,
            learner: "stump".into(),
            seed: 0,
            data: None,
            cycle_tol: DEFAULT_CYCLE_TOL,
            eps_clamp: DEFAULT_EPS_CLAMP,
            sigma2: 1.0,
            dim: 5,
        }
    }
}

impl RunConfig {
    pub fn learner_spec(&self) -> CliResult<LearnerSpec> {
        Ok(self.learner.parse::<LearnerSpec>()?)
    }

    pub fn boost_config(&self) -> CliResult<BoostConfig> {
        let cfg = BoostConfig {
            rounds: self.rounds,
            eps_clamp: self.eps_clamp,
            learner: self.learner_spec()?,
            ..BoostConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.rounds == 0 {
            return Err(CliError::Config("rounds must be >= 1".into()));
        }
        if !(self.cycle_tol >= 0.0 && self.cycle_tol.is_finite()) {
            return Err(CliError::Config(format!("cycle tolerance {} must be a finite non-negative number", self.cycle_tol)));
        }
        match self.algo {
            AlgoChoice::Kernel => {
                if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
                    return Err(CliError::Config(format!("sigma2 {} must be positive", self.sigma2)));
                }
                if self.data.is_none() && self.dim == 0 {
                    return Err(CliError::Config("dim must be >= 1".into()));
                }
            }
            AlgoChoice::Boost(_) => {
                self.boost_config()?;
                if self.data.is_none() {
                    return Err(CliError::Config("--data is required for boosting runs".into()));
                }
            }
        }
        Ok(())
    }
}
