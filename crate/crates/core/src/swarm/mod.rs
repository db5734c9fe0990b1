//! The fish school and the wmoFSS main loop.
//!
//! One iteration runs, in order: individual movement (random local search
//! with stagnation avoidance, or SBX-guided for the SBX variants), bound
//! update and feeding, leader definition, the collective-instinctive
//! movement and the collective-volitive movement. The SBX variants switch the
//! collective movements on and off.
//!
//! Each fish owns its own random stream, and individual moves only read the
//! start-of-iteration normalization bounds and leader positions, so the
//! outcome does not depend on the order in which fishes are visited.

mod cluster;
mod collective;
mod movement;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::non_dominated_indices;
use crate::problems::ProblemSpec;
use crate::refgeom::{default_layers, generate_two_layer, ReferenceSet};
use crate::scalarize::NormalizationState;

pub use cluster::assign_clusters;
pub use collective::{barycenter, instinctive_vector};
pub use movement::{random_candidate, sbx_child, sbx_spread, step_toward};

/// Reciprocal weights in the barycenter use `1 / max(w̄, W_BAR_FLOOR)`.
pub const W_BAR_FLOOR: f64 = 1e-12;
/// Directions shorter than this are treated as zero.
pub const ZERO_DIRECTION: f64 = 1e-12;

/// Which algorithm runs and which movement components are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Random individual search with stagnation avoidance plus both
    /// collective movements.
    Wmofss,
    /// SBX-guided individual movement and the collective-volitive movement.
    SbxA,
    /// SBX-guided individual movement only.
    SbxB,
    /// SBX-guided individual movement and both collective movements.
    SbxC,
}

impl Variant {
    pub fn is_sbx(self) -> bool {
        !matches!(self, Variant::Wmofss)
    }

    pub fn uses_instinctive(self) -> bool {
        matches!(self, Variant::Wmofss | Variant::SbxC)
    }

    pub fn uses_volitive(self) -> bool {
        matches!(self, Variant::Wmofss | Variant::SbxA | Variant::SbxC)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Wmofss => "wmofss",
            Variant::SbxA => "sbx-a",
            Variant::SbxB => "sbx-b",
            Variant::SbxC => "sbx-c",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "wmofss" => Ok(Variant::Wmofss),
            "sbx-a" | "a" => Ok(Variant::SbxA),
            "sbx-b" | "b" => Ok(Variant::SbxB),
            "sbx-c" | "c" => Ok(Variant::SbxC),
            other => Err(Error::InvalidArgument(format!("unknown variant '{other}'"))),
        }
    }
}

/// Where initial positions are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitDomain {
    /// Uniform over the problem box.
    Box,
    /// Uniform over `[-1, 1]` per coordinate, then clamped into the box.
    Symmetric,
}

/// Algorithm parameters for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmConfig {
    pub variant: Variant,
    /// PBI penalty.
    pub theta: f64,
    /// SBX distribution index.
    pub eta_c: f64,
    pub school_size: usize,
    pub iterations: usize,
    /// Individual step at the first and last iteration, as fractions of the
    /// box width. Decays linearly in between.
    pub step_ind_init: f64,
    pub step_ind_final: f64,
    /// `step_vol = step_vol_factor * step_ind`.
    pub step_vol_factor: f64,
    /// Initial stagnation-avoidance acceptance probability.
    pub alpha_sar_init: f64,
    /// Per-iteration multiplicative decay of the acceptance probability.
    pub alpha_sar_decay: f64,
    /// Lattice divisions `(p_outer, p_inner)`.
    pub layers: (usize, usize),
    /// Explicit reference directions; overrides `layers` when set.
    pub reference_points: Option<Vec<Vec<f64>>>,
    pub init_domain: InitDomain,
}

/// wmoFSS school size per reference line.
pub const WMOFSS_FISH_PER_LINE: usize = 3;
pub const SBX_SCHOOL_SIZE: usize = 1000;
pub const DEFAULT_ITERATIONS: usize = 10_000;

impl SwarmConfig {
    /// Defaults for plain wmoFSS: θ = 5, full reference lattice, and three
    /// fishes per reference line.
    pub fn wmofss(spec: &ProblemSpec) -> Self {
        let layers = default_layers(spec.m, false);
        let lines = generate_two_layer(spec.m, layers.0, layers.1).map_or(0, |s| s.len());
        Self {
            variant: Variant::Wmofss,
            theta: 5.0,
            eta_c: 1.0,
            school_size: (WMOFSS_FISH_PER_LINE * lines).max(1),
            iterations: DEFAULT_ITERATIONS,
            step_ind_init: 0.1,
            step_ind_final: 0.0001,
            step_vol_factor: 3.0,
            alpha_sar_init: 0.25,
            alpha_sar_decay: 0.995,
            layers,
            reference_points: None,
            init_domain: InitDomain::Box,
        }
    }

    /// Defaults for an SBX variant: θ = 1, η_c = 1, reduced reference lattice
    /// and 1000 fishes.
    pub fn sbx(spec: &ProblemSpec, variant: Variant) -> Self {
        Self {
            variant,
            theta: 1.0,
            school_size: SBX_SCHOOL_SIZE,
            layers: default_layers(spec.m, true),
            alpha_sar_init: 0.0,
            ..Self::wmofss(spec)
        }
    }

    pub fn for_variant(spec: &ProblemSpec, variant: Variant) -> Self {
        if variant.is_sbx() {
            Self::sbx(spec, variant)
        } else {
            Self::wmofss(spec)
        }
    }

    pub fn reference_set(&self, m: usize) -> Result<ReferenceSet> {
        match &self.reference_points {
            Some(points) => ReferenceSet::from_directions(m, points.clone()),
            None => generate_two_layer(m, self.layers.0, self.layers.1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.theta >= 0.0) || !self.theta.is_finite() {
            return bad(format!("theta must be a nonnegative number, got {}", self.theta));
        }
        if self.variant.is_sbx() && !(self.eta_c > 0.0) {
            return bad(format!("eta_c must be positive for SBX variants, got {}", self.eta_c));
        }
        if self.school_size < 1 {
            return bad("school_size must be at least 1".into());
        }
        if !(self.step_ind_init > 0.0) || !(self.step_ind_final > 0.0) {
            return bad("step_ind_init and step_ind_final must be positive".into());
        }
        if self.step_ind_final > self.step_ind_init {
            return bad("step_ind_final must not exceed step_ind_init".into());
        }
        if !(self.step_vol_factor >= 0.0) {
            return bad("step_vol_factor must be nonnegative".into());
        }
        if !(0.0..=1.0).contains(&self.alpha_sar_init) {
            return bad("alpha_sar_init must lie in [0, 1]".into());
        }
        if !(0.0..=1.0).contains(&self.alpha_sar_decay) {
            return bad("alpha_sar_decay must lie in [0, 1]".into());
        }
        Ok(())
    }

    /// Individual step at iteration `t` (0-based).
    pub fn step_ind_at(&self, t: usize) -> f64 {
        lerp(self.step_ind_init, self.step_ind_final, self.progress(t))
    }

    pub fn alpha_sar_at(&self, t: usize) -> f64 {
        self.alpha_sar_init * self.alpha_sar_decay.powi(t.min(i32::MAX as usize) as i32)
    }

    fn progress(&self, t: usize) -> f64 {
        if self.iterations <= 1 {
            0.0
        } else {
            (t.min(self.iterations - 1)) as f64 / (self.iterations - 1) as f64
        }
    }
}

fn lerp(a: f64, b: f64, s: f64) -> f64 {
    a + (b - a) * s
}

/// One candidate solution.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Fish {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    /// Normalized objectives.
    pub w: Vec<f64>,
    /// Aggregated weight (PBI against the cluster's line); lower is better.
    pub w_bar: f64,
    pub cluster: usize,
    pub is_leader: bool,
    /// Displacement of the last accepted individual move.
    pub delta_x: Vec<f64>,
    /// Improvement of the last individual move, zero unless it improved.
    pub delta_w_bar: f64,
}

/// Final non-dominated solutions of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub objectives: Vec<Vec<f64>>,
    pub positions: Vec<Vec<f64>>,
    pub clusters: Vec<usize>,
}

/// Full optimizer state.
#[derive(Debug, Clone)]
pub struct SchoolState {
    pub spec: ProblemSpec,
    pub config: SwarmConfig,
    pub fishes: Vec<Fish>,
    pub reference: ReferenceSet,
    pub norm: NormalizationState,
    pub iteration: usize,
    pub step_ind: f64,
    pub step_vol: f64,
    pub alpha_sar: f64,
    /// Designated leader (lowest index among the tied best) per cluster.
    pub leaders: Vec<Option<usize>>,
    units: Vec<Vec<f64>>,
    members: Vec<Vec<usize>>,
    previous_totals: Option<Vec<f64>>,
    rngs: Vec<ChaCha8Rng>,
}

impl SchoolState {
    /// Draws the initial school, evaluates it, initializes the bounds,
    /// clusters it and feeds it once.
    pub fn init<R: Rng + ?Sized>(spec: &ProblemSpec, config: &SwarmConfig, rng: &mut R) -> Result<Self> {
        config.validate()?;
        let reference = config.reference_set(spec.m)?;
        if config.school_size < reference.len() {
            return Err(Error::InvalidConfig(format!(
                "school_size {} is smaller than the number of reference lines {}",
                config.school_size,
                reference.len()
            )));
        }
        let fishes = (0..config.school_size)
            .map(|_| {
                let x: Vec<f64> = (0..spec.n)
                    .map(|_| match config.init_domain {
                        InitDomain::Box => rng.random::<f64>(),
                        InitDomain::Symmetric => rng.random_range(-1.0..=1.0f64).clamp(0.0, 1.0),
                    })
                    .collect();
                let mut f = vec![0.0; spec.m];
                spec.evaluate_unchecked(&x, &mut f);
                Fish { delta_x: vec![0.0; spec.n], w: vec![0.0; spec.m], x, f, ..Fish::default() }
            })
            .collect::<Vec<_>>();
        let rngs = (0..config.school_size).map(|_| ChaCha8Rng::seed_from_u64(rng.random())).collect();

        let mut norm = NormalizationState::known_ideal(spec.ideal_point());
        norm.update_bounds(fishes.iter().map(|f| f.f.as_slice()))?;
        let units = reference.lines.iter().map(|l| l.unit()).collect();

        let mut school = Self {
            spec: spec.clone(),
            config: config.clone(),
            fishes,
            members: vec![Vec::new(); reference.len()],
            leaders: vec![None; reference.len()],
            reference,
            norm,
            iteration: 0,
            step_ind: config.step_ind_at(0),
            step_vol: config.step_vol_factor * config.step_ind_at(0),
            alpha_sar: config.alpha_sar_at(0),
            units,
            previous_totals: None,
            rngs,
        };
        school.cluster_assign();
        school.feed();
        school.define_leaders();
        Ok(school)
    }

    /// Fish indices of each cluster.
    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// Assigns every fish to a reference line; see [`assign_clusters`].
    pub fn cluster_assign(&mut self) {
        let weights: Vec<Vec<f64>> = self
            .fishes
            .iter()
            .map(|fish| {
                let mut w = vec![0.0; self.spec.m];
                self.norm.normalize_into(&fish.f, &mut w);
                w
            })
            .collect();
        let assignment = assign_clusters(&weights, &self.reference);
        for (fish, cluster) in self.fishes.iter_mut().zip(&assignment) {
            fish.cluster = *cluster;
        }
        self.rebuild_members();
    }

    fn rebuild_members(&mut self) {
        for m in &mut self.members {
            m.clear();
        }
        for (i, fish) in self.fishes.iter().enumerate() {
            self.members[fish.cluster].push(i);
        }
    }

    /// Folds the current objectives into the normalization bounds.
    pub fn update_bounds(&mut self) {
        self.norm
            .update_bounds(self.fishes.iter().map(|f| f.f.as_slice()))
            .expect("fish objectives have the problem's dimension");
    }

    /// Runs one full iteration.
    pub fn step(&mut self) {
        if self.config.variant.is_sbx() {
            self.individual_movement_sbx();
        } else {
            self.individual_movement();
        }
        self.update_bounds();
        self.feed();
        self.define_leaders();
        if self.config.variant.uses_instinctive() {
            self.collective_instinctive();
        }
        if self.config.variant.uses_volitive() {
            self.collective_volitive();
        }
        self.iteration += 1;
        self.step_ind = self.config.step_ind_at(self.iteration);
        self.step_vol = self.config.step_vol_factor * self.step_ind;
        self.alpha_sar = self.config.alpha_sar_at(self.iteration);
    }

    /// Non-dominated solutions of every cluster, concatenated in cluster order.
    pub fn outcome(&self) -> RunOutcome {
        let mut out = RunOutcome { objectives: Vec::new(), positions: Vec::new(), clusters: Vec::new() };
        for (cluster, members) in self.members.iter().enumerate() {
            let fs: Vec<Vec<f64>> = members.iter().map(|&i| self.fishes[i].f.clone()).collect();
            for k in non_dominated_indices(&fs) {
                let fish = &self.fishes[members[k]];
                out.objectives.push(fish.f.clone());
                out.positions.push(fish.x.clone());
                out.clusters.push(cluster);
            }
        }
        out
    }

    fn evaluate(&self, x: &[f64], f: &mut [f64]) {
        self.spec.evaluate_unchecked(x, f);
    }
}

/// Runs the configured optimizer to completion.
pub fn run<R: Rng + ?Sized>(spec: &ProblemSpec, config: &SwarmConfig, rng: &mut R) -> Result<RunOutcome> {
    let mut school = SchoolState::init(spec, config, rng)?;
    for _ in 0..config.iterations {
        school.step();
    }
    Ok(school.outcome())
}

pub(crate) fn clamp_to_box(x: &mut [f64]) {
    for v in x {
        *v = v.clamp(0.0, 1.0);
    }
}

#[cfg(test)]
mod tests;
