use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::{ComparisonResult, ExperimentSpec, FaultToleranceResult};
use crate::error::Result;
use crate::graph::DirectedGraph;
use crate::output::{fmt_real, write_trajectory_csv};

#[derive(Debug, Serialize)]
pub struct Summary<'a> {
    pub spec: &'a ExperimentSpec,
    pub leader_count: usize,
    pub methods: Vec<MethodSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault_tolerance_normalization: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct MethodSummary {
    pub method: &'static str,
    pub final_mean: f64,
    /// Steps taken by each trial.
    pub convergence_steps: Vec<usize>,
    pub all_converged: bool,
    pub leaders: Vec<String>,
}

impl<'a> Summary<'a> {
    pub fn new(
        g: &DirectedGraph,
        spec: &'a ExperimentSpec,
        comparison: &ComparisonResult,
        faults: Option<&FaultToleranceResult>,
    ) -> Self {
        let methods = comparison
            .outcomes
            .iter()
            .map(|o| MethodSummary {
                method: o.method.name(),
                final_mean: o.final_mean,
                convergence_steps: o
                    .trials
                    .iter()
                    .map(|t| t.trajectory.last().map_or(0, |p| p.0))
                    .collect(),
                all_converged: o.trials.iter().all(|t| t.converged),
                leaders: o.leaders.iter().map(|&l| g.label(l).to_owned()).collect(),
            })
            .collect();
        Self {
            spec,
            leader_count: comparison.leader_count,
            methods,
            fault_tolerance_normalization: faults.map(|f| f.normalization.name()),
        }
    }
}

/// `spurious_edges,method,i_s_mean,i_s_std` rows, grouped by count.
pub fn write_fault_csv<W: Write>(mut out: W, faults: &FaultToleranceResult) -> Result<()> {
    writeln!(out, "spurious_edges,method,i_s_mean,i_s_std")?;
    for (c, count) in faults.spurious_counts.iter().enumerate() {
        for s in &faults.series {
            writeln!(
                out,
                "{count},{},{},{}",
                s.method.name(),
                fmt_real(s.i_s_mean[c]),
                fmt_real(s.i_s_std[c])
            )?;
        }
    }
    Ok(())
}

/// Writes `trajectory_<method>.csv`, `summary.json` and, when a
/// fault-tolerance result is given, `fault_tolerance.csv` into `dir`.
pub fn write_outputs(
    dir: &Path,
    g: &DirectedGraph,
    spec: &ExperimentSpec,
    comparison: &ComparisonResult,
    faults: Option<&FaultToleranceResult>,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for o in &comparison.outcomes {
        let path = dir.join(format!("trajectory_{}.csv", o.method.name()));
        let mut w = BufWriter::new(File::create(path)?);
        write_trajectory_csv(&mut w, &o.mean_trajectory)?;
        w.flush()?;
    }
    let summary = Summary::new(g, spec, comparison, faults);
    let mut w = BufWriter::new(File::create(dir.join("summary.json"))?);
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w)?;
    w.flush()?;
    if let Some(f) = faults {
        let mut w = BufWriter::new(File::create(dir.join("fault_tolerance.csv"))?);
        write_fault_csv(&mut w, f)?;
        w.flush()?;
    }
    Ok(())
}
