//! Multi-run experiments and their on-disk results.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wmofss_core::metrics::{igd, summarize, FrontSet, StatSummary};
use wmofss_core::problems::{ObjectiveVector, ProblemSpec};
use wmofss_core::swarm::{self, SwarmConfig};

use crate::config::{IgdReference, RunConfig};
use crate::error::{HarnessError, Result};
use crate::output::{write_igd_csv, write_points_csv};

/// Version of the `result.json` layout.
pub const SCHEMA_VERSION: u32 = 1;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of run `run`: `splitmix64(seed + run * 0x9E3779B97F4A7C15)`, all
/// arithmetic wrapping. Runs get unrelated streams and can execute in any
/// order.
pub fn run_seed(seed: u64, run: usize) -> u64 {
    splitmix64(seed.wrapping_add((run as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Seed of the true-front samples, independent of every run's stream.
pub fn sample_seed(seed: u64) -> u64 {
    splitmix64(!seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerRun {
    pub run: usize,
    pub seed: u64,
    pub igd: f64,
    pub front: FrontSet,
    pub positions: Vec<Vec<f64>>,
    pub wall_time_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub schema_version: u32,
    pub software_version: String,
    pub config: RunConfig,
    pub igd_reference_size: usize,
    pub per_run: Vec<PerRun>,
    pub summary: StatSummary,
}

/// The point set IGD is measured against.
pub fn igd_reference(
    config: &RunConfig,
    spec: &ProblemSpec,
    swarm_config: &SwarmConfig,
) -> Result<Vec<ObjectiveVector>> {
    match config.igd_reference {
        IgdReference::Targets => Ok(spec.front_targets(&swarm_config.reference_set(spec.m)?)?),
        IgdReference::Sample => {
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(config.seed));
            Ok(spec.sample_true_pf(config.igd_sample_size, &mut rng)?)
        }
    }
}

/// Executes every run without touching the filesystem.
pub fn execute(config: &RunConfig) -> Result<RunResult> {
    let (spec, swarm_config) = config.resolve()?;
    let reference = FrontSet::new(igd_reference(config, &spec, &swarm_config)?);

    let one = |run: usize| -> Result<PerRun> {
        let seed = run_seed(config.seed, run);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = Instant::now();
        let outcome = swarm::run(&spec, &swarm_config, &mut rng)?;
        let wall_time_secs = start.elapsed().as_secs_f64();
        let front = FrontSet::new(outcome.objectives);
        let value = igd(&reference, &front)?;
        Ok(PerRun { run, seed, igd: value, front, positions: outcome.positions, wall_time_secs })
    };

    let per_run: Vec<PerRun> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| HarnessError::config("jobs", e.to_string()))?;
        pool.install(|| (0..config.runs).into_par_iter().map(one).collect::<Result<_>>())?
    } else {
        (0..config.runs).map(one).collect::<Result<_>>()?
    };

    let values: Vec<f64> = per_run.iter().map(|r| r.igd).collect();
    Ok(RunResult {
        schema_version: SCHEMA_VERSION,
        software_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        igd_reference_size: reference.len(),
        summary: summarize(&values)?,
        per_run,
    })
}

/// Writes `result.json`, `igd.csv`, one `front_run<k>.csv` per run and, when
/// requested, `pf_sample.csv` into `dir`.
pub fn write_result(dir: &Path, result: &RunResult) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let json_path = dir.join("result.json");
    let json = serde_json::to_string_pretty(result).map_err(|e| HarnessError::io(&json_path, e))?;
    fs::write(&json_path, json + "\n").map_err(|e| HarnessError::io(&json_path, e))?;

    let values: Vec<f64> = result.per_run.iter().map(|r| r.igd).collect();
    write_igd_csv(&dir.join("igd.csv"), &values)?;
    let m = result.config.objectives;
    for r in &result.per_run {
        write_points_csv(&dir.join(format!("front_run{}.csv", r.run)), m, &r.front.points)?;
    }
    if result.config.pf_sample > 0 {
        let spec = result.config.problem_spec()?;
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(result.config.seed));
        let sample = spec.sample_true_pf(result.config.pf_sample, &mut rng)?;
        write_points_csv(&dir.join("pf_sample.csv"), m, &sample)?;
    }
    Ok(())
}

/// Runs the experiment and persists it under `config.output_dir`.
pub fn run_experiment(config: &RunConfig) -> Result<RunResult> {
    let result = execute(config)?;
    write_result(&config.output_dir, &result)?;
    Ok(result)
}

pub fn read_result(path: &Path) -> Result<RunResult> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::io(path, format!("malformed result: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // first outputs of the reference SplitMix64 generator seeded with 0
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(0x9E37_79B9_7F4A_7C15), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn run_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|r| run_seed(42, r)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(run_seed(1, 0), run_seed(2, 0));
    }

    #[test]
    fn zero_iterations_is_filtered_initialization() {
        let config = RunConfig { runs: 2, iterations: 0, layers: Some((3, 0)), ..Default::default() };
        let result = execute(&config).unwrap();
        assert_eq!(result.per_run.len(), 2);
        assert_eq!(result.igd_reference_size, 10);
        for r in &result.per_run {
            assert!(!r.front.is_empty());
            assert!(r.igd.is_finite() && r.igd > 0.0);
        }
        assert_eq!(result.summary.n_runs, 2);
    }
}
