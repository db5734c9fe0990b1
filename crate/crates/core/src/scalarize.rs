//! Adaptive objective normalization, PBI aggregation and θ*-dominance.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::refgeom::ReferenceLine;
use crate::swarm::Fish;

/// Objective ranges narrower than this normalize to zero.
pub const DEGENERATE_RANGE: f64 = 1e-12;

/// Running ideal and nadir estimates used to map objectives onto `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationState {
    pub z_star: Vec<f64>,
    /// Largest value seen per objective, standing in for the nadir point.
    pub f_max: Vec<f64>,
    pub ideal_known: bool,
    observed: bool,
}

impl NormalizationState {
    /// Bounds that will track both the ideal and the maxima from observations.
    pub fn unknown_ideal(m: usize) -> Self {
        Self {
            z_star: vec![f64::INFINITY; m],
            f_max: vec![f64::NEG_INFINITY; m],
            ideal_known: false,
            observed: false,
        }
    }

    /// Bounds pinned to a known ideal point; only the maxima move.
    pub fn known_ideal(ideal: Vec<f64>) -> Self {
        let m = ideal.len();
        Self { z_star: ideal, f_max: vec![f64::NEG_INFINITY; m], ideal_known: true, observed: false }
    }

    pub fn m(&self) -> usize {
        self.z_star.len()
    }

    pub fn has_observations(&self) -> bool {
        self.observed
    }

    /// Folds a batch of objective vectors into the bounds.
    ///
    /// `z_star` only decreases (and stays put when the ideal is known) and
    /// `f_max` only increases.
    pub fn update_bounds<'a, I>(&mut self, fs: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let m = self.m();
        for f in fs {
            check_dim(m, f.len())?;
            for ((&v, z), hi) in f.iter().zip(&mut self.z_star).zip(&mut self.f_max) {
                if !self.ideal_known && v < *z {
                    *z = v;
                }
                if v > *hi {
                    *hi = v;
                }
            }
            self.observed = true;
        }
        Ok(())
    }

    /// Per-objective weight vector `(f - z*) / (f_max - z*)`.
    pub fn normalize(&self, f: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.m(), f.len())?;
        if !self.observed {
            return Err(Error::InvalidArgument(
                "normalization bounds have not observed any objective vector".into(),
            ));
        }
        let mut w = vec![0.0; f.len()];
        self.normalize_into(f, &mut w);
        Ok(w)
    }

    pub(crate) fn normalize_into(&self, f: &[f64], w: &mut [f64]) {
        for j in 0..f.len() {
            let range = self.f_max[j] - self.z_star[j];
            w[j] = if range < DEGENERATE_RANGE { 0.0 } else { (f[j] - self.z_star[j]) / range };
        }
    }
}

/// Penalty-based boundary intersection score of a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PbiScore {
    /// Distance from the ideal point along the line.
    pub d1: f64,
    /// Distance from the line.
    pub d2: f64,
    /// Aggregated weight, `d1 + theta * d2`.
    pub g: f64,
    pub theta: f64,
}

pub fn pbi(w: &[f64], line: &ReferenceLine, theta: f64) -> Result<PbiScore> {
    check_dim(line.direction.len(), w.len())?;
    if !(theta >= 0.0) {
        return Err(Error::InvalidArgument(format!("theta must be nonnegative, got {theta}")));
    }
    let norm = line.norm();
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument(format!("reference line {} has zero norm", line.id)));
    }
    let unit: Vec<f64> = line.direction.iter().map(|d| d / norm).collect();
    let (d1, d2) = pbi_distances(w, &unit);
    Ok(PbiScore { d1, d2, g: d1 + theta * d2, theta })
}

/// `(d1, d2)` for a unit direction.
pub(crate) fn pbi_distances(w: &[f64], unit: &[f64]) -> (f64, f64) {
    let d1 = w.iter().zip(unit).map(|(a, b)| a * b).sum::<f64>().abs();
    let d2 = w
        .iter()
        .zip(unit)
        .map(|(a, u)| {
            let r = a - d1 * u;
            r * r
        })
        .sum::<f64>()
        .sqrt();
    (d1, d2)
}

/// θ*-dominance: same cluster and strictly smaller aggregated weight.
pub fn theta_star_dominates(a: &Fish, b: &Fish) -> bool {
    a.cluster == b.cluster && a.w_bar < b.w_bar
}
