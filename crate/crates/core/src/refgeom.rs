//! Structured reference points on the unit simplex and the reference lines
//! they span from the ideal point.
//!
//! Each reference line defines one scalar sub-problem and one cluster of the
//! school. Points come from the Das–Dennis simplex lattice, optionally with a
//! second lattice shrunk toward the simplex centroid for large objective
//! counts.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;
const DUPLICATE_TOLERANCE: f64 = 1e-12;

/// A point on the unit simplex: nonnegative coordinates summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferencePoint {
    pub coords: Vec<f64>,
}

impl ReferencePoint {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Ray from the ideal point through a reference point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceLine {
    pub id: usize,
    pub direction: Vec<f64>,
}

impl ReferenceLine {
    pub fn new(id: usize, direction: Vec<f64>) -> Result<Self> {
        let norm = euclidean_norm(&direction);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "reference line {id} has a zero or non-finite direction"
            )));
        }
        Ok(Self { id, direction })
    }

    pub fn norm(&self) -> f64 {
        euclidean_norm(&self.direction)
    }

    /// Unit vector along the line.
    pub fn unit(&self) -> Vec<f64> {
        let norm = self.norm();
        self.direction.iter().map(|d| d / norm).collect()
    }
}

/// The ordered set of reference lines used by one optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceSet {
    pub lines: Vec<ReferenceLine>,
    pub m: usize,
    /// `(p_outer, p_inner)` for lattice-generated sets, `None` for sets loaded
    /// from explicit points.
    pub layer_params: Option<(usize, usize)>,
}

impl ReferenceSet {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Builds a set from arbitrary nonnegative direction vectors, in the given
    /// order. Directions need not sum to one.
    pub fn from_directions(m: usize, directions: Vec<Vec<f64>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 objectives, got {m}")));
        }
        if directions.is_empty() {
            return Err(Error::InvalidArgument("reference set is empty".into()));
        }
        let mut lines = Vec::with_capacity(directions.len());
        for (id, direction) in directions.into_iter().enumerate() {
            check_dim(m, direction.len())?;
            if direction.iter().any(|&d| d < 0.0 || !d.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "reference direction {id} has a negative or non-finite coordinate"
                )));
            }
            lines.push(ReferenceLine::new(id, direction)?);
        }
        Ok(Self { lines, m, layer_params: None })
    }

    /// Points where each line meets the plane `Σf = offset` (linear fronts).
    pub fn simplex_targets(&self, offset: f64) -> Vec<Vec<f64>> {
        self.lines
            .iter()
            .map(|line| {
                let sum: f64 = line.direction.iter().sum();
                line.direction.iter().map(|d| offset * d / sum).collect()
            })
            .collect()
    }

    /// Points where each line meets the unit sphere (spherical fronts).
    pub fn sphere_targets(&self) -> Vec<Vec<f64>> {
        self.lines.iter().map(ReferenceLine::unit).collect()
    }
}

/// Number of points of the `(m, p)` simplex lattice, `C(p + m - 1, m - 1)`.
pub fn lattice_size(m: usize, p: usize) -> usize {
    binomial(p + m - 1, m - 1)
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    // exact at every step: the running product is C(n - k + i, i)
    (1..=k).fold(1usize, |acc, i| acc * (n - k + i) / i)
}

/// All points of the simplex with coordinates in multiples of `1 / p`.
///
/// Points are listed in lexicographically descending order, so the first
/// point is `(1, 0, …, 0)` and the last `(0, …, 0, 1)`.
pub fn generate_simplex_lattice(m: usize, p: usize) -> Result<Vec<ReferencePoint>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 objectives, got {m}")));
    }
    if p < 1 {
        return Err(Error::InvalidArgument("lattice needs at least one division".into()));
    }
    let mut out = Vec::with_capacity(lattice_size(m, p));
    let mut counts = vec![0usize; m];
    fill_lattice(&mut out, &mut counts, 0, p, p);
    Ok(out)
}

fn fill_lattice(out: &mut Vec<ReferencePoint>, counts: &mut [usize], depth: usize, left: usize, p: usize) {
    if depth == counts.len() - 1 {
        counts[depth] = left;
        let coords = counts.iter().map(|&c| c as f64 / p as f64).collect();
        out.push(ReferencePoint { coords });
        return;
    }
    for c in (0..=left).rev() {
        counts[depth] = c;
        fill_lattice(out, counts, depth + 1, left - c, p);
    }
}

/// Two-layer reference set: the outer lattice as is, plus an inner lattice
/// whose points are pulled halfway toward the centroid. `p_inner = 0` gives a
/// single layer.
pub fn generate_two_layer(m: usize, p_outer: usize, p_inner: usize) -> Result<ReferenceSet> {
    let mut points: Vec<Vec<f64>> =
        generate_simplex_lattice(m, p_outer)?.into_iter().map(|p| p.coords).collect();
    if p_inner > 0 {
        let centroid = 1.0 / m as f64;
        for inner in generate_simplex_lattice(m, p_inner)? {
            let shrunk: Vec<f64> = inner.coords.iter().map(|w| (w + centroid) / 2.0).collect();
            let duplicate = points
                .iter()
                .any(|p| p.iter().zip(&shrunk).all(|(a, b)| (a - b).abs() <= DUPLICATE_TOLERANCE));
            if !duplicate {
                points.push(shrunk);
            }
        }
    }
    debug_assert!(points.iter().all(|p| (p.iter().sum::<f64>() - 1.0).abs() <= SUM_TOLERANCE));
    let mut set = ReferenceSet::from_directions(m, points)?;
    set.layer_params = Some((p_outer, p_inner));
    Ok(set)
}

/// Default `(p_outer, p_inner)` per objective count.
///
/// The full layout gives 91, 210 and 275 lines for 3, 5 and 10 objectives.
/// The reduced layout (used by the SBX-guided variant, which wants more fishes
/// per cluster) gives 15, 35 and 65.
pub fn default_layers(m: usize, reduced: bool) -> (usize, usize) {
    match (m, reduced) {
        (0..=2, false) => (99, 0),
        (0..=2, true) => (19, 0),
        (3, false) => (12, 0),
        (3, true) => (4, 0),
        (4..=5, false) => (6, 0),
        (4..=5, true) => (3, 0),
        (_, false) => (3, 2),
        (_, true) => (2, 1),
    }
}

/// Distance from `w` to its orthogonal projection on the line through the
/// origin along `line`.
pub fn perpendicular_distance(w: &[f64], line: &ReferenceLine) -> Result<f64> {
    check_dim(line.direction.len(), w.len())?;
    Ok(perpendicular_distance_unchecked(w, &line.direction, line.norm()))
}

pub(crate) fn perpendicular_distance_unchecked(w: &[f64], direction: &[f64], norm: f64) -> f64 {
    let along: f64 = w.iter().zip(direction).map(|(a, b)| a * b).sum::<f64>() / norm;
    w.iter()
        .zip(direction)
        .map(|(a, d)| {
            let r = a - along * d / norm;
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
