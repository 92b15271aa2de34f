//! Text output conventions shared by the CLI and the experiment runner.
//!
//! Reals are printed with 12 significant digits in the style of C's `%.12g`:
//! plain decimal for moderate magnitudes, exponent form otherwise, trailing
//! zeros removed, `.` as the decimal separator.

use std::io::Write;

use crate::centrality::ScoreVector;
use crate::error::Result;
use crate::graph::DirectedGraph;
use crate::miner::rank_by_score;

const SIGNIFICANT: usize = 12;

pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `step,mean_opinion` rows.
pub fn write_trajectory_csv<W: Write>(mut out: W, points: &[(usize, f64)]) -> Result<()> {
    writeln!(out, "step,mean_opinion")?;
    for &(step, mean) in points {
        writeln!(out, "{step},{}", fmt_real(mean))?;
    }
    Ok(())
}

/// `node_label,score` rows sorted by descending score, ties by node id.
pub fn write_scores_csv<W: Write>(
    mut out: W,
    g: &DirectedGraph,
    scores: &ScoreVector,
) -> Result<()> {
    writeln!(out, "node_label,score")?;
    for node in rank_by_score(scores, scores.len())? {
        writeln!(out, "{},{}", g.label(node), fmt_real(scores[node]))?;
    }
    Ok(())
}
