//! Statistical comparison of finished experiments.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use wmofss_core::metrics::{
    kruskal_wallis, pairwise_verdict, summarize, KruskalWallis, StatSummary, Verdict,
};

use crate::error::{HarnessError, Result};
use crate::output::read_igd_csv;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Group {
    pub label: String,
    pub path: PathBuf,
    pub summary: StatSummary,
}

/// Verdict of group `a` against group `b`; `+` means `a` has significantly
/// lower IGD.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairVerdict {
    pub a: usize,
    pub b: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub alpha: f64,
    pub groups: Vec<Group>,
    pub overall: KruskalWallis,
    pub pairs: Vec<PairVerdict>,
}

fn label_of(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// Compares the IGD samples stored in each directory's `igd.csv`.
pub fn compare(dirs: &[PathBuf], alpha: f64) -> Result<ComparisonReport> {
    if dirs.len() < 2 {
        return Err(HarnessError::config(
            "dirs",
            format!("need at least 2 result directories, got {}", dirs.len()),
        ));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(HarnessError::config("alpha", format!("must lie in (0, 1), got {alpha}")));
    }
    let samples: Vec<Vec<f64>> =
        dirs.iter().map(|d| read_igd_csv(&d.join("igd.csv"))).collect::<Result<_>>()?;
    let groups = dirs
        .iter()
        .zip(&samples)
        .map(|(d, s)| Ok(Group { label: label_of(d), path: d.clone(), summary: summarize(s)? }))
        .collect::<Result<Vec<_>>>()?;
    let overall = kruskal_wallis(&samples)?;
    let mut pairs = Vec::new();
    for a in 0..samples.len() {
        for b in a + 1..samples.len() {
            pairs.push(PairVerdict { a, b, verdict: pairwise_verdict(&samples[a], &samples[b], alpha)? });
        }
    }
    Ok(ComparisonReport { alpha, groups, overall, pairs })
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.groups.iter().map(|g| g.label.len()).max().unwrap_or(5).max(5);
        writeln!(
            f,
            "{:<width$}  {:>5}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}",
            "group", "runs", "median", "min", "max", "mean", "std"
        )?;
        for g in &self.groups {
            let s = &g.summary;
            writeln!(
                f,
                "{:<width$}  {:>5}  {:>10.3e}  {:>10.3e}  {:>10.3e}  {:>10.3e}  {:>10.3e}",
                g.label, s.n_runs, s.median, s.minimum, s.maximum, s.mean, s.standard_deviation
            )?;
        }
        writeln!(
            f,
            "\nKruskal-Wallis over {} groups: H = {:.4}, df = {}, p = {:.4e}",
            self.groups.len(),
            self.overall.h,
            self.overall.df,
            self.overall.p_value
        )?;
        writeln!(f, "\npairwise verdicts at alpha = {} (+: first is better)", self.alpha)?;
        for p in &self.pairs {
            writeln!(f, "  {} vs {}: {}", self.groups[p.a].label, self.groups[p.b].label, p.verdict)?;
        }
        Ok(())
    }
}
