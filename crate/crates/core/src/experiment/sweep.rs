use serde::{Deserialize, Serialize};

use super::{run_comparison, ExperimentSpec, Method};
use crate::error::Result;
use crate::graph::DirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    LeaderFraction,
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub final_mean: f64,
}

/// Re-runs the template with the proposed miner for each value of the swept
/// parameter and reports the trial-averaged final mean opinion.
pub fn run_sweep(
    g: &DirectedGraph,
    kind: SweepKind,
    values: &[f64],
    template: &ExperimentSpec,
) -> Result<Vec<SweepRow>> {
    values
        .iter()
        .map(|&value| {
            let mut spec = template.clone();
            spec.methods = vec![Method::ProposedMiner];
            match kind {
                SweepKind::LeaderFraction => spec.leader_fraction = value,
                SweepKind::Alpha => spec.alpha = value,
            }
            let res = run_comparison(g, &spec)?;
            Ok(SweepRow {
                value,
                final_mean: res.outcomes[0].final_mean,
            })
        })
        .collect()
}
