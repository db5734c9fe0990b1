//! The scalable DTLZ1–4 test problems (minimization, decision box `[0, 1]^n`).

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::refgeom::ReferenceSet;

/// Objective values of one solution.
pub type ObjectiveVector = Vec<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Dtlz1, Family::Dtlz2, Family::Dtlz3, Family::Dtlz4];

    /// Recommended number of distance variables.
    pub fn default_k(self) -> usize {
        match self {
            Family::Dtlz1 => 5,
            _ => 10,
        }
    }

    /// DTLZ1 has a linear front, the others a spherical one.
    pub fn has_linear_front(self) -> bool {
        matches!(self, Family::Dtlz1)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Dtlz1 => "DTLZ1",
            Family::Dtlz2 => "DTLZ2",
            Family::Dtlz3 => "DTLZ3",
            Family::Dtlz4 => "DTLZ4",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dtlz1" | "1" => Ok(Family::Dtlz1),
            "dtlz2" | "2" => Ok(Family::Dtlz2),
            "dtlz3" | "3" => Ok(Family::Dtlz3),
            "dtlz4" | "4" => Ok(Family::Dtlz4),
            other => Err(Error::InvalidArgument(format!("unknown problem '{other}'"))),
        }
    }
}

pub const DEFAULT_ALPHA_BIAS: f64 = 100.0;

/// A concrete DTLZ instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub family: Family,
    /// Number of objectives.
    pub m: usize,
    /// Number of decision variables, `m + k - 1`.
    pub n: usize,
    /// Number of distance variables.
    pub k: usize,
    /// Bias exponent applied to position variables by DTLZ4.
    pub alpha_bias: f64,
}

impl ProblemSpec {
    pub fn new(family: Family, m: usize) -> Result<Self> {
        Self::with_params(family, m, family.default_k(), DEFAULT_ALPHA_BIAS)
    }

    pub fn with_params(family: Family, m: usize, k: usize, alpha_bias: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("DTLZ needs at least 2 objectives, got {m}")));
        }
        if k < 1 {
            return Err(Error::InvalidArgument("DTLZ needs at least one distance variable".into()));
        }
        if !(alpha_bias > 0.0) || !alpha_bias.is_finite() {
            return Err(Error::InvalidArgument(format!("alpha_bias must be positive, got {alpha_bias}")));
        }
        Ok(Self { family, m, n: m + k - 1, k, alpha_bias })
    }

    /// Evaluates the objectives at `x`.
    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        let mut f = vec![0.0; self.m];
        self.evaluate_into(x, &mut f)?;
        Ok(f)
    }

    /// Same as [`evaluate`](Self::evaluate), writing into a caller buffer.
    pub fn evaluate_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        check_dim(self.n, x.len())?;
        check_dim(self.m, out.len())?;
        if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(Error::OutOfBounds { index, value });
        }
        self.evaluate_unchecked(x, out);
        Ok(())
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64], out: &mut [f64]) {
        let m = self.m;
        let (position, distance) = x.split_at(m - 1);
        match self.family {
            Family::Dtlz1 => {
                let scale = 0.5 * (1.0 + rastrigin_g(distance));
                linear_shape(position, scale, out);
            }
            Family::Dtlz2 => spherical_shape(position, 1.0 + sphere_g(distance), 1.0, out),
            Family::Dtlz3 => spherical_shape(position, 1.0 + rastrigin_g(distance), 1.0, out),
            Family::Dtlz4 => spherical_shape(position, 1.0 + sphere_g(distance), self.alpha_bias, out),
        }
    }

    /// The distance function `g(x_M)`; zero exactly on the Pareto-optimal set.
    pub fn g(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.n, x.len())?;
        let distance = &x[self.m - 1..];
        Ok(match self.family {
            Family::Dtlz1 | Family::Dtlz3 => rastrigin_g(distance),
            Family::Dtlz2 | Family::Dtlz4 => sphere_g(distance),
        })
    }

    /// The ideal point; all zeros for DTLZ1–4.
    pub fn ideal_point(&self) -> ObjectiveVector {
        vec![0.0; self.m]
    }

    /// Draws `count` points uniformly from the Pareto-optimal front.
    ///
    /// DTLZ1 samples the simplex `Σf = 0.5` (Dirichlet(1) scaled by one half);
    /// DTLZ2–4 sample directions on the positive unit-sphere octant.
    pub fn sample_true_pf<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<ObjectiveVector>> {
        if count < 1 {
            return Err(Error::InvalidArgument("front sample needs at least one point".into()));
        }
        let linear = self.family.has_linear_front();
        let points = (0..count)
            .map(|_| {
                if linear {
                    let e: Vec<f64> = (0..self.m).map(|_| Exp1.sample(rng)).collect();
                    let sum: f64 = e.iter().sum();
                    e.iter().map(|v| 0.5 * v / sum).collect()
                } else {
                    let z: Vec<f64> = (0..self.m)
                        .map(|_| {
                            let v: f64 = StandardNormal.sample(rng);
                            v.abs()
                        })
                        .collect();
                    let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
                    z.iter().map(|v| v / norm).collect()
                }
            })
            .collect();
        Ok(points)
    }

    /// Intersections of the reference lines with the true front.
    pub fn front_targets(&self, reference: &ReferenceSet) -> Result<Vec<ObjectiveVector>> {
        check_dim(self.m, reference.m)?;
        Ok(if self.family.has_linear_front() {
            reference.simplex_targets(0.5)
        } else {
            reference.sphere_targets()
        })
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={}, n={})", self.family, self.m, self.n)
    }
}

fn rastrigin_g(distance: &[f64]) -> f64 {
    let sum: f64 = distance
        .iter()
        .map(|&x| {
            let d = x - 0.5;
            d * d - (20.0 * PI * d).cos()
        })
        .sum();
    100.0 * (distance.len() as f64 + sum)
}

fn sphere_g(distance: &[f64]) -> f64 {
    distance.iter().map(|&x| (x - 0.5) * (x - 0.5)).sum()
}

fn linear_shape(position: &[f64], scale: f64, out: &mut [f64]) {
    let m = out.len();
    for (j, f) in out.iter_mut().enumerate() {
        // objective j uses the first m - 1 - j position variables
        let used = m - 1 - j;
        let mut v = scale * position[..used].iter().product::<f64>();
        if j > 0 {
            v *= 1.0 - position[used];
        }
        *f = v;
    }
}

fn spherical_shape(position: &[f64], scale: f64, alpha: f64, out: &mut [f64]) {
    let m = out.len();
    let angle = |x: f64| {
        let x = if alpha == 1.0 { x } else { x.powf(alpha) };
        x * FRAC_PI_2
    };
    for (j, f) in out.iter_mut().enumerate() {
        let used = m - 1 - j;
        let mut v = scale * position[..used].iter().map(|&x| angle(x).cos()).product::<f64>();
        if j > 0 {
            v *= angle(position[used]).sin();
        }
        *f = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn on_front_input(spec: &ProblemSpec, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..spec.n).map(|i| if i < spec.m - 1 { rng.random::<f64>() } else { 0.5 }).collect()
    }

    #[test]
    fn dimensions_follow_k() {
        let p = ProblemSpec::new(Family::Dtlz1, 5).unwrap();
        assert_eq!((p.n, p.k), (9, 5));
        let p = ProblemSpec::new(Family::Dtlz3, 10).unwrap();
        assert_eq!((p.n, p.k), (19, 10));
        assert!(ProblemSpec::new(Family::Dtlz2, 1).is_err());
        assert!(ProblemSpec::with_params(Family::Dtlz4, 3, 10, 0.0).is_err());
    }

    #[test]
    fn dtlz2_center_point() {
        let p = ProblemSpec::new(Family::Dtlz2, 3).unwrap();
        let f = p.evaluate(&vec![0.5; p.n]).unwrap();
        assert_abs_diff_eq!(f[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f[2], 0.5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn dtlz1_front_is_a_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in [2, 3, 5, 10] {
            let p = ProblemSpec::new(Family::Dtlz1, m).unwrap();
            for _ in 0..200 {
                let x = on_front_input(&p, &mut rng);
                assert_abs_diff_eq!(p.g(&x).unwrap(), 0.0, epsilon = 1e-9);
                let f = p.evaluate(&x).unwrap();
                assert_abs_diff_eq!(f.iter().sum::<f64>(), 0.5, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn spherical_fronts() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for family in [Family::Dtlz2, Family::Dtlz3, Family::Dtlz4] {
            let p = ProblemSpec::new(family, 5).unwrap();
            for _ in 0..200 {
                let f = p.evaluate(&on_front_input(&p, &mut rng)).unwrap();
                assert_abs_diff_eq!(f.iter().map(|v| v * v).sum::<f64>(), 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn out_of_box_input_names_coordinate() {
        let p = ProblemSpec::new(Family::Dtlz2, 3).unwrap();
        let mut x = vec![0.5; p.n];
        x[4] = 1.5;
        assert_eq!(p.evaluate(&x), Err(Error::OutOfBounds { index: 4, value: 1.5 }));
        assert!(matches!(p.evaluate(&[0.5; 3]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn objectives_nonnegative_in_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for family in Family::ALL {
            let p = ProblemSpec::new(family, 4).unwrap();
            for _ in 0..500 {
                let x: Vec<f64> = (0..p.n).map(|_| rng.random()).collect();
                assert!(p.evaluate(&x).unwrap().iter().all(|&v| v >= 0.0 && v.is_finite()));
            }
        }
    }

    #[test]
    fn dtlz4_without_bias_is_dtlz2() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let d2 = ProblemSpec::new(Family::Dtlz2, 5).unwrap();
        let d4 = ProblemSpec::with_params(Family::Dtlz4, 5, 10, 1.0).unwrap();
        for _ in 0..1000 {
            let x: Vec<f64> = (0..d2.n).map(|_| rng.random()).collect();
            let (a, b) = (d2.evaluate(&x).unwrap(), d4.evaluate(&x).unwrap());
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn sphere_g_grows_with_deviation() {
        let p = ProblemSpec::new(Family::Dtlz2, 3).unwrap();
        let mut x = vec![0.5; p.n];
        let mut last = p.g(&x).unwrap();
        for step in 1..=50 {
            x[p.n - 1] = 0.5 + step as f64 * 0.01;
            let g = p.g(&x).unwrap();
            assert!(g >= last);
            last = g;
        }
    }

    #[test]
    fn rastrigin_g_has_local_minima() {
        // DTLZ3 g is multimodal: moving further from 0.5 can lower it.
        let p = ProblemSpec::new(Family::Dtlz3, 3).unwrap();
        let mut x = vec![0.5; p.n];
        x[p.n - 1] = 0.55;
        let near = p.g(&x).unwrap();
        x[p.n - 1] = 0.6;
        let far = p.g(&x).unwrap();
        assert!(far < near);
    }

    #[test]
    fn ideal_is_origin() {
        assert_eq!(ProblemSpec::new(Family::Dtlz1, 3).unwrap().ideal_point(), vec![0.0; 3]);
        assert_eq!(ProblemSpec::new(Family::Dtlz3, 10).unwrap().ideal_point(), vec![0.0; 10]);
    }

    #[test]
    fn front_samples_obey_identities_and_seed() {
        let d1 = ProblemSpec::new(Family::Dtlz1, 3).unwrap();
        let d2 = ProblemSpec::new(Family::Dtlz2, 3).unwrap();
        let a = d1.sample_true_pf(100, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = d1.sample_true_pf(100, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        for f in &a {
            assert_abs_diff_eq!(f.iter().sum::<f64>(), 0.5, epsilon = 1e-9);
        }
        for f in d2.sample_true_pf(100, &mut ChaCha8Rng::seed_from_u64(9)).unwrap() {
            assert_abs_diff_eq!(f.iter().map(|v| v * v).sum::<f64>(), 1.0, epsilon = 1e-9);
        }
        assert!(d2.sample_true_pf(0, &mut ChaCha8Rng::seed_from_u64(9)).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("dtlz3".parse::<Family>().unwrap(), Family::Dtlz3);
        assert_eq!("DTLZ1".parse::<Family>().unwrap(), Family::Dtlz1);
        assert!("zdt1".parse::<Family>().is_err());
        assert_eq!(Family::Dtlz4.to_string(), "DTLZ4");
    }
}
