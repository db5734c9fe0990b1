//! Experiment configuration: a flat `key = value` file, overridable from the
//! command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use wmofss_core::problems::{Family, ProblemSpec, DEFAULT_ALPHA_BIAS};
use wmofss_core::swarm::{InitDomain, SwarmConfig, Variant};

use crate::error::{HarnessError, Result};

/// The point set IGD is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IgdReference {
    /// Intersections of the run's own reference lines with the true front.
    Targets,
    /// A uniform random sample of the true front.
    Sample,
}

impl FromStr for IgdReference {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "targets" => Ok(IgdReference::Targets),
            "sample" => Ok(IgdReference::Sample),
            other => Err(format!("expected 'targets' or 'sample', got '{other}'")),
        }
    }
}

/// Everything needed to reproduce an experiment. Unset optional fields take
/// the variant's defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem: Family,
    pub objectives: usize,
    pub k: Option<usize>,
    pub alpha_bias: Option<f64>,
    pub variant: Variant,
    pub theta: Option<f64>,
    pub eta_c: Option<f64>,
    pub school_size: Option<usize>,
    pub iterations: usize,
    pub runs: usize,
    pub seed: u64,
    pub step_ind_init: Option<f64>,
    pub step_ind_final: Option<f64>,
    pub step_vol_factor: Option<f64>,
    pub alpha_sar_init: Option<f64>,
    pub alpha_sar_decay: Option<f64>,
    pub layers: Option<(usize, usize)>,
    pub reference_file: Option<PathBuf>,
    pub init_domain: Option<InitDomain>,
    pub igd_reference: IgdReference,
    pub igd_sample_size: usize,
    /// Number of true-front points written to `pf_sample.csv`; 0 disables it.
    pub pf_sample: usize,
    pub output_dir: PathBuf,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: Family::Dtlz2,
            objectives: 3,
            k: None,
            alpha_bias: None,
            variant: Variant::Wmofss,
            theta: None,
            eta_c: None,
            school_size: None,
            iterations: wmofss_core::swarm::DEFAULT_ITERATIONS,
            runs: 20,
            seed: 1,
            step_ind_init: None,
            step_ind_final: None,
            step_vol_factor: None,
            alpha_sar_init: None,
            alpha_sar_decay: None,
            layers: None,
            reference_file: None,
            init_domain: None,
            igd_reference: IgdReference::Targets,
            igd_sample_size: 10_000,
            pf_sample: 0,
            output_dir: PathBuf::from("results"),
            jobs: 1,
        }
    }
}

/// Keys accepted by [`RunConfig::set`], in canonical spelling.
pub const KEYS: &[&str] = &[
    "problem",
    "objectives",
    "k",
    "alpha_bias",
    "variant",
    "theta",
    "eta_c",
    "school_size",
    "iterations",
    "runs",
    "seed",
    "step_ind_init",
    "step_ind_final",
    "step_vol_factor",
    "alpha_sar_init",
    "alpha_sar_decay",
    "layers",
    "reference_file",
    "init_domain",
    "igd_reference",
    "igd_sample_size",
    "pf_sample",
    "output_dir",
    "jobs",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e: T::Err| HarnessError::config(key, format!("cannot parse '{value}': {e}")))
}

fn parse_layers(key: &str, value: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [outer] => Ok((parse(key, outer)?, 0)),
        [outer, inner] => Ok((parse(key, outer)?, parse(key, inner)?)),
        _ => Err(HarnessError::config(key, format!("expected 'p' or 'p_outer,p_inner', got '{value}'"))),
    }
}

fn parse_init_domain(key: &str, value: &str) -> Result<InitDomain> {
    match value.trim().to_ascii_lowercase().as_str() {
        "box" => Ok(InitDomain::Box),
        "symmetric" => Ok(InitDomain::Symmetric),
        other => Err(HarnessError::config(key, format!("expected 'box' or 'symmetric', got '{other}'"))),
    }
}

impl RunConfig {
    /// Sets one field from its textual form. Keys are case-insensitive and
    /// accept `-` in place of `_` and an optional leading `--`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches('-').to_ascii_lowercase().replace('-', "_");
        let k = key.as_str();
        match k {
            "problem" => self.problem = parse(k, value)?,
            "objectives" | "m" => self.objectives = parse(k, value)?,
            "k" => self.k = Some(parse(k, value)?),
            "alpha_bias" => self.alpha_bias = Some(parse(k, value)?),
            "variant" => self.variant = parse(k, value)?,
            "theta" => self.theta = Some(parse(k, value)?),
            "eta_c" => self.eta_c = Some(parse(k, value)?),
            "school_size" => self.school_size = Some(parse(k, value)?),
            "iterations" => self.iterations = parse(k, value)?,
            "runs" => self.runs = parse(k, value)?,
            "seed" => self.seed = parse(k, value)?,
            "step_ind_init" => self.step_ind_init = Some(parse(k, value)?),
            "step_ind_final" => self.step_ind_final = Some(parse(k, value)?),
            "step_vol_factor" => self.step_vol_factor = Some(parse(k, value)?),
            "alpha_sar_init" => self.alpha_sar_init = Some(parse(k, value)?),
            "alpha_sar_decay" => self.alpha_sar_decay = Some(parse(k, value)?),
            "layers" => self.layers = Some(parse_layers(k, value)?),
            "reference_file" => self.reference_file = Some(PathBuf::from(value.trim())),
            "init_domain" => self.init_domain = Some(parse_init_domain(k, value)?),
            "igd_reference" => self.igd_reference = parse(k, value)?,
            "igd_sample_size" => self.igd_sample_size = parse(k, value)?,
            "pf_sample" => self.pf_sample = parse(k, value)?,
            "output_dir" | "out" => self.output_dir = PathBuf::from(value.trim()),
            "jobs" => self.jobs = parse(k, value)?,
            _ => return Err(HarnessError::config(k, "unknown key")),
        }
        Ok(())
    }

    /// Applies a `key = value` document. Blank lines and lines starting with
    /// `#` are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(HarnessError::config(
                    format!("line {}", lineno + 1),
                    format!("expected 'key = value', got '{line}'"),
                ));
            };
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let mut config = Self::default();
        config.apply_text(&text)?;
        Ok(config)
    }

    pub fn problem_spec(&self) -> Result<ProblemSpec> {
        let k = self.k.unwrap_or_else(|| self.problem.default_k());
        let alpha = self.alpha_bias.unwrap_or(DEFAULT_ALPHA_BIAS);
        ProblemSpec::with_params(self.problem, self.objectives, k, alpha)
            .map_err(|e| HarnessError::config("problem", e.to_string()))
    }

    /// The fully resolved optimizer parameters.
    pub fn swarm_config(&self, spec: &ProblemSpec) -> Result<SwarmConfig> {
        let mut c = SwarmConfig::for_variant(spec, self.variant);
        c.iterations = self.iterations;
        if let Some(layers) = self.layers {
            c.layers = layers;
        }
        if let Some(path) = &self.reference_file {
            c.reference_points = Some(read_reference_file(path, spec.m)?);
        }
        if self.school_size.is_none() && !self.variant.is_sbx() {
            let lines =
                c.reference_set(spec.m).map_err(|e| HarnessError::config("layers", e.to_string()))?.len();
            c.school_size = wmofss_core::swarm::WMOFSS_FISH_PER_LINE * lines;
        }
        macro_rules! override_field {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { c.$f = v; } )* };
        }
        override_field!(
            theta,
            eta_c,
            school_size,
            step_ind_init,
            step_ind_final,
            step_vol_factor,
            alpha_sar_init,
            alpha_sar_decay,
            init_domain
        );
        c.validate().map_err(|e| match e {
            wmofss_core::Error::InvalidConfig(msg) => {
                let field = KEYS.iter().find(|k| msg.starts_with(*k)).copied().unwrap_or("config");
                HarnessError::config(field, msg)
            }
            other => other.into(),
        })?;
        c.reference_set(spec.m).map_err(|e| HarnessError::config("layers", e.to_string()))?;
        Ok(c)
    }

    /// Checks the harness-level fields and resolves the problem and
    /// optimizer parameters.
    pub fn resolve(&self) -> Result<(ProblemSpec, SwarmConfig)> {
        if self.runs < 1 {
            return Err(HarnessError::config("runs", "must be at least 1"));
        }
        if self.jobs < 1 {
            return Err(HarnessError::config("jobs", "must be at least 1"));
        }
        if self.igd_reference == IgdReference::Sample && self.igd_sample_size < 1 {
            return Err(HarnessError::config("igd_sample_size", "must be at least 1"));
        }
        let spec = self.problem_spec()?;
        let swarm = self.swarm_config(&spec)?;
        Ok((spec, swarm))
    }
}

/// Reads reference directions, one point per line, coordinates separated by
/// commas or whitespace. `#` starts a comment line.
pub fn read_reference_file(path: &Path, m: usize) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = format!("reference_file line {}", lineno + 1);
        let point = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| parse::<f64>(&field, s))
            .collect::<Result<Vec<f64>>>()?;
        if point.len() != m {
            return Err(HarnessError::config(
                field,
                format!("expected {m} coordinates, got {}", point.len()),
            ));
        }
        points.push(point);
    }
    if points.is_empty() {
        return Err(HarnessError::config("reference_file", "no points"));
    }
    Ok(points)
}
