//! Weight-based many-objective Fish School Search.
//!
//! The crate splits the optimizer into small, separately testable pieces:
//!
//! * [`refgeom`] – simplex-lattice reference points and reference-line geometry.
//! * [`problems`] – the scalable DTLZ1–4 test problems and Pareto-front samplers.
//! * [`scalarize`] – adaptive normalization, PBI aggregation and θ*-dominance.
//! * [`swarm`] – the fish school itself: clustering, individual (random or
//!   SBX-guided) movement, feeding, leaders and the collective movements.
//! * [`metrics`] – IGD, Pareto filtering, run summaries and Kruskal–Wallis.
//!
//! ```no_run
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha8Rng;
//! use wmofss_core::{problems::{Family, ProblemSpec}, swarm::{self, SwarmConfig}};
//!
//! let spec = ProblemSpec::new(Family::Dtlz2, 3).unwrap();
//! let config = SwarmConfig::wmofss(&spec);
//! let mut rng = ChaCha8Rng::seed_from_u64(7);
//! let outcome = swarm::run(&spec, &config, &mut rng).unwrap();
//! println!("{} non-dominated solutions", outcome.objectives.len());
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod metrics;
pub mod problems;
pub mod refgeom;
pub mod scalarize;
pub mod swarm;

pub use error::{Error, Result};
pub use metrics::{FrontSet, StatSummary};
pub use problems::{Family, ProblemSpec};
pub use refgeom::{ReferenceLine, ReferenceSet};
pub use scalarize::{NormalizationState, PbiScore};
pub use swarm::{Fish, RunOutcome, SwarmConfig, Variant};
