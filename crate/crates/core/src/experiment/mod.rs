//! Seeded simulation studies.
//!
//! A study selects `ceil(leader_fraction * n)` leaders with each method,
//! pins them at opinion 1, runs an opinion model to convergence from the
//! chosen initial opinions and averages the mean-opinion trajectory over
//! trials. Trials own their seeds, so results do not depend on scheduling.

mod comparison;
mod faults;
mod report;
mod sweep;
mod synthetic;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::centrality::BaselineKind;
use crate::error::{param, Result};
use crate::opinion::{DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE};

pub use comparison::{
    leader_count, run_comparison, select_leaders, ComparisonResult, MethodOutcome, TrialResult,
};
pub use faults::{
    run_fault_tolerance, score_disagreement, FaultMethod, FaultSeries, FaultToleranceResult,
    Normalization,
};
pub use report::{write_fault_csv, write_outputs, Summary};
pub use sweep::{run_sweep, SweepKind, SweepRow};
pub use synthetic::{preferential_attachment, random_digraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    #[serde(rename = "degroot")]
    DeGroot,
    FriedkinJohnsen,
    #[default]
    Proposed,
}

/// Node scores that weight the DeGroot trust matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegrootVariant {
    #[default]
    Global,
    TwoHop,
    DegreeImbalance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "proposed-miner")]
    ProposedMiner,
    #[serde(rename = "out-degree")]
    OutDegree,
    #[serde(rename = "betweenness")]
    Betweenness,
    #[serde(rename = "closeness")]
    Closeness,
    #[serde(rename = "eigenvector")]
    Eigenvector,
    #[serde(rename = "pagerank")]
    PageRank,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::ProposedMiner,
        Method::OutDegree,
        Method::Betweenness,
        Method::Closeness,
        Method::Eigenvector,
        Method::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::ProposedMiner => "proposed-miner",
            Method::OutDegree => "out-degree",
            Method::Betweenness => "betweenness",
            Method::Closeness => "closeness",
            Method::Eigenvector => "eigenvector",
            Method::PageRank => "pagerank",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn baseline(self) -> Option<BaselineKind> {
        Some(match self {
            Method::ProposedMiner => return None,
            Method::OutDegree => BaselineKind::OutDegree,
            Method::Betweenness => BaselineKind::Betweenness,
            Method::Closeness => BaselineKind::Closeness,
            Method::Eigenvector => BaselineKind::Eigenvector,
            Method::PageRank => BaselineKind::PageRank,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitMode {
    #[default]
    Zero,
    Half,
    Random,
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}
fn default_leader_fraction() -> f64 {
    0.10
}
fn default_alpha() -> f64 {
    0.8
}
fn default_trials() -> usize {
    20
}
fn default_max_steps() -> usize {
    DEFAULT_MAX_ITERATIONS
}
fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}
fn default_true() -> bool {
    true
}

/// One simulation study, as read from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub graph_path: PathBuf,
    #[serde(default)]
    pub model: Model,
    #[serde(default)]
    pub degroot_variant: DegrootVariant,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_leader_fraction")]
    pub leader_fraction: f64,
    #[serde(default)]
    pub init_mode: InitMode,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub base_seed: u64,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Hold leaders at opinion 1 for the whole run.
    #[serde(default = "default_true")]
    pub clamp_leaders: bool,
    /// Spurious-edge counts for the fault-tolerance study; empty skips it.
    #[serde(default)]
    pub spurious_counts: Vec<usize>,
}

impl ExperimentSpec {
    /// A spec with every default filled in.
    pub fn new(graph_path: impl Into<PathBuf>, base_seed: u64) -> Self {
        Self {
            graph_path: graph_path.into(),
            model: Model::default(),
            degroot_variant: DegrootVariant::default(),
            methods: default_methods(),
            leader_fraction: default_leader_fraction(),
            init_mode: InitMode::default(),
            alpha: default_alpha(),
            trials: default_trials(),
            base_seed,
            max_steps: default_max_steps(),
            tolerance: default_tolerance(),
            clamp_leaders: true,
            spurious_counts: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.leader_fraction > 0.0 && self.leader_fraction <= 1.0) {
            return Err(param(format!(
                "leader_fraction must lie in (0, 1], got {}",
                self.leader_fraction
            )));
        }
        if self.trials == 0 {
            return Err(param("trials must be at least 1"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(param(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(param("tolerance must be positive"));
        }
        if self.methods.is_empty() {
            return Err(param("at least one method is required"));
        }
        Ok(())
    }
}

/// Seed of trial `index`: `base_seed XOR (index * 0x9E3779B97F4A7C15)`.
pub fn trial_seed(base_seed: u64, index: usize) -> u64 {
    base_seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_defaults_and_names() {
        let spec = ExperimentSpec::from_json(r#"{"graph_path": "g.tsv", "base_seed": 3}"#).unwrap();
        assert_eq!(spec.trials, 20);
        assert_eq!(spec.alpha, 0.8);
        assert_eq!(spec.leader_fraction, 0.1);
        assert_eq!(spec.tolerance, 1e-9);
        assert_eq!(spec.methods.len(), 6);
        assert!(spec.clamp_leaders);

        let text = r#"{"graph_path": "g", "model": "degroot", "degroot_variant": "two-hop",
            "methods": ["proposed-miner", "pagerank"], "init_mode": "random", "base_seed": 1}"#;
        let spec = ExperimentSpec::from_json(text).unwrap();
        assert_eq!(spec.model, Model::DeGroot);
        assert_eq!(spec.degroot_variant, DegrootVariant::TwoHop);
        assert_eq!(spec.methods, vec![Method::ProposedMiner, Method::PageRank]);
        assert_eq!(spec.init_mode, InitMode::Random);
    }

    #[test]
    fn spec_validation() {
        for bad in [
            r#"{"graph_path": "g", "base_seed": 1, "trials": 0}"#,
            r#"{"graph_path": "g", "base_seed": 1, "leader_fraction": 0}"#,
            r#"{"graph_path": "g", "base_seed": 1, "leader_fraction": 1.5}"#,
            r#"{"graph_path": "g", "base_seed": 1, "alpha": 1.0}"#,
            r#"{"graph_path": "g", "base_seed": 1, "methods": []}"#,
        ] {
            assert!(
                matches!(
                    ExperimentSpec::from_json(bad),
                    Err(crate::Error::Parameter(_))
                ),
                "{bad}"
            );
        }
        for malformed in [
            r#"{"graph_path": "g"}"#,
            r#"{"graph_path": "g", "base_seed": 1, "bogus": 2}"#,
            r#"{"graph_path": "g", "base_seed": 1, "methods": ["katz"]}"#,
        ] {
            assert!(matches!(
                ExperimentSpec::from_json(malformed),
                Err(crate::Error::Json(_))
            ));
        }
    }

    #[test]
    fn trial_seed_formula() {
        assert_eq!(trial_seed(42, 0), 42);
        assert_eq!(trial_seed(0, 1), 0x9E37_79B9_7F4A_7C15);
        assert_eq!(
            trial_seed(1, 2),
            1 ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(2)
        );
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::parse(m.name()), Some(m));
            assert_eq!(
                serde_json::to_string(&m).unwrap(),
                format!("\"{}\"", m.name())
            );
        }
    }
}
