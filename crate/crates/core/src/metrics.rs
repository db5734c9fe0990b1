//! Quality indicators and run statistics.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;

use crate::error::{check_dim, Error, Result};
use crate::problems::ObjectiveVector;

/// A set of objective vectors, either an obtained approximation or a
/// reference sample of the true front.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FrontSet {
    pub points: Vec<ObjectiveVector>,
}

impl FrontSet {
    pub fn new(points: Vec<ObjectiveVector>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }
}

impl From<Vec<ObjectiveVector>> for FrontSet {
    fn from(points: Vec<ObjectiveVector>) -> Self {
        Self { points }
    }
}

/// Inverted generational distance: mean, over the reference points, of the
/// Euclidean distance to the nearest obtained point.
pub fn igd(reference: &FrontSet, obtained: &FrontSet) -> Result<f64> {
    let (Some(m), Some(m2)) = (reference.dim(), obtained.dim()) else {
        return Err(Error::InvalidArgument("IGD needs two nonempty sets".into()));
    };
    check_dim(m, m2)?;
    for p in reference.points.iter().chain(&obtained.points) {
        check_dim(m, p.len())?;
    }
    let total: f64 = reference
        .points
        .iter()
        .map(|r| {
            obtained
                .points
                .iter()
                .map(|o| r.iter().zip(o).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// Pareto dominance for minimization: no worse everywhere and not equal.
pub fn dominates(p: &[f64], q: &[f64]) -> bool {
    let mut strictly_better = false;
    for (a, b) in p.iter().zip(q) {
        if a > b {
            return false;
        }
        if a < b {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Indices of the points not dominated by any other point, in input order.
/// Duplicates are all kept.
pub fn non_dominated_indices(points: &[ObjectiveVector]) -> Vec<usize> {
    (0..points.len()).filter(|&i| !points.iter().any(|q| dominates(q, &points[i]))).collect()
}

pub fn pareto_filter(set: &FrontSet) -> FrontSet {
    let keep = non_dominated_indices(&set.points);
    FrontSet::new(keep.into_iter().map(|i| set.points[i].clone()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatSummary {
    pub median: f64,
    pub maximum: f64,
    pub minimum: f64,
    pub mean: f64,
    pub standard_deviation: f64,
    pub n_runs: usize,
}

pub fn summarize(values: &[f64]) -> Result<StatSummary> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("cannot summarize an empty sample".into()));
    }
    let n = values.len();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 { sorted[n / 2] } else { (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0 };
    let mean = values.iter().sum::<f64>() / n as f64;
    let standard_deviation = if n > 1 {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(StatSummary {
        median,
        maximum: sorted[n - 1],
        minimum: sorted[0],
        mean,
        standard_deviation,
        n_runs: n,
    })
}

/// Upper tail of the chi-square distribution, `P(X > x)`.
pub fn chi_square_sf(x: f64, df: usize) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_ur(df as f64 / 2.0, x / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KruskalWallis {
    pub h: f64,
    pub p_value: f64,
    pub df: usize,
    /// Mean rank of each group in the pooled sample.
    pub mean_ranks: Vec<f64>,
}

/// Mid-ranks (1-based) of `values`, ties sharing the average rank.
/// Also returns `Σ(t³ - t)` over tie groups.
fn mid_ranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        let t = (end - start) as f64;
        ties += t * t * t - t;
        start = end;
    }
    (ranks, ties)
}

/// Kruskal–Wallis H test with tie correction and a chi-square p-value.
///
/// When every observation is tied the statistic is defined as 0 (p = 1).
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<KruskalWallis> {
    if groups.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "Kruskal-Wallis needs at least 2 groups, got {}",
            groups.len()
        )));
    }
    if let Some(i) = groups.iter().position(Vec::is_empty) {
        return Err(Error::InvalidArgument(format!("group {i} is empty")));
    }
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    if pooled.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidArgument("observations contain NaN".into()));
    }
    let n = pooled.len() as f64;
    let (ranks, ties) = mid_ranks(&pooled);

    let mut offset = 0;
    let mut mean_ranks = Vec::with_capacity(groups.len());
    let mut weighted = 0.0;
    for g in groups {
        let sum: f64 = ranks[offset..offset + g.len()].iter().sum();
        weighted += sum * sum / g.len() as f64;
        mean_ranks.push(sum / g.len() as f64);
        offset += g.len();
    }
    let df = groups.len() - 1;
    let correction = 1.0 - ties / (n * n * n - n);
    if correction <= 0.0 {
        return Ok(KruskalWallis { h: 0.0, p_value: 1.0, df, mean_ranks });
    }
    let h = (12.0 / (n * (n + 1.0)) * weighted - 3.0 * (n + 1.0)) / correction;
    let h = h.max(0.0);
    Ok(KruskalWallis { h, p_value: chi_square_sf(h, df), df, mean_ranks })
}

/// Outcome of a two-sample comparison of a lower-is-better indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Better,
    Worse,
    Equal,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Better => "+",
            Verdict::Worse => "-",
            Verdict::Equal => "=",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Two-sample Kruskal–Wallis verdict for `a` against `b` at level `alpha`.
/// `Better` means `a` has significantly lower values.
pub fn pairwise_verdict(a: &[f64], b: &[f64], alpha: f64) -> Result<Verdict> {
    let kw = kruskal_wallis(&[a.to_vec(), b.to_vec()])?;
    if kw.p_value >= alpha {
        return Ok(Verdict::Equal);
    }
    Ok(match kw.mean_ranks[0].partial_cmp(&kw.mean_ranks[1]) {
        Some(Ordering::Less) => Verdict::Better,
        Some(Ordering::Greater) => Verdict::Worse,
        _ => Verdict::Equal,
    })
}
