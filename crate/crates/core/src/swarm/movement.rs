//! Individual movement: random local search with stagnation avoidance, and
//! the SBX-guided local search.

use rand::Rng;

use super::{clamp_to_box, Fish, SchoolState, ZERO_DIRECTION};
use crate::problems::ProblemSpec;
use crate::scalarize::{pbi_distances, NormalizationState};

/// `x + r * step`, clamped into the unit box.
pub fn random_candidate(x: &[f64], r: &[f64], step: f64) -> Vec<f64> {
    let mut c: Vec<f64> = x.iter().zip(r).map(|(xi, ri)| xi + ri * step).collect();
    clamp_to_box(&mut c);
    c
}

/// SBX spread factor for a uniform draw `u` and distribution index `eta_c`,
/// using the unbounded-SBX constant 2.
pub fn sbx_spread(u: f64, eta_c: f64) -> f64 {
    let exponent = 1.0 / (eta_c + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(exponent)
    } else {
        (1.0 / (2.0 - 2.0 * u)).powf(exponent)
    }
}

/// SBX child of `x` and `leader`, one `(u, v)` pair per coordinate. `v <= 0.5`
/// picks the lower branch.
pub fn sbx_child(x: &[f64], leader: &[f64], u: &[f64], v: &[f64], eta_c: f64) -> Vec<f64> {
    x.iter()
        .zip(leader)
        .zip(u.iter().zip(v))
        .map(|((&xi, &li), (&ui, &vi))| {
            let beta = sbx_spread(ui, eta_c);
            let spread = beta * (xi - li).abs();
            if vi <= 0.5 {
                0.5 * ((xi + li) - spread)
            } else {
                0.5 * ((xi + li) + spread)
            }
        })
        .collect()
}

/// Moves `step` from `x` toward `target`, clamped into the box. Returns `None`
/// when the two points coincide.
pub fn step_toward(x: &[f64], target: &[f64], step: f64) -> Option<Vec<f64>> {
    let dist = x.iter().zip(target).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt();
    if dist < ZERO_DIRECTION {
        return None;
    }
    let mut c: Vec<f64> = x.iter().zip(target).map(|(a, b)| a + step * (b - a) / dist).collect();
    clamp_to_box(&mut c);
    Some(c)
}

/// Read-only context shared by all individual moves of one iteration.
pub(crate) struct MoveContext<'a> {
    pub spec: &'a ProblemSpec,
    pub norm: &'a NormalizationState,
    pub theta: f64,
}

impl MoveContext<'_> {
    /// Aggregated weight of objectives `f` on the line with direction `unit`;
    /// `w` receives the normalized objectives.
    pub fn score(&self, f: &[f64], unit: &[f64], w: &mut [f64]) -> f64 {
        self.norm.normalize_into(f, w);
        let (d1, d2) = pbi_distances(w, unit);
        d1 + self.theta * d2
    }

    /// Scores `candidate` and moves the fish there if `accept` agrees.
    /// Returns whether the move happened.
    fn try_move<R: Rng + ?Sized>(
        &self,
        fish: &mut Fish,
        candidate: Vec<f64>,
        unit: &[f64],
        alpha_sar: f64,
        rng: &mut R,
    ) -> bool {
        let mut f = vec![0.0; self.spec.m];
        self.spec.evaluate_unchecked(&candidate, &mut f);
        let mut w = vec![0.0; self.spec.m];
        let mut w_now = vec![0.0; self.spec.m];
        let current = self.score(&fish.f, unit, &mut w_now);
        let proposed = self.score(&f, unit, &mut w);
        let improved = proposed < current;
        // the SAR draw only happens for non-improving candidates
        let accepted = improved || (alpha_sar > 0.0 && rng.random::<f64>() < alpha_sar);
        if accepted {
            for ((d, c), x) in fish.delta_x.iter_mut().zip(&candidate).zip(&fish.x) {
                *d = c - x;
            }
            fish.delta_w_bar = if improved { current - proposed } else { 0.0 };
            fish.x = candidate;
            fish.f = f;
            fish.w = w;
            fish.w_bar = proposed;
        } else {
            fish.delta_x.iter_mut().for_each(|d| *d = 0.0);
            fish.delta_w_bar = 0.0;
        }
        accepted
    }

    /// Random local search step with stagnation avoidance.
    pub fn individual_move<R: Rng + ?Sized>(
        &self,
        fish: &mut Fish,
        unit: &[f64],
        step_ind: f64,
        alpha_sar: f64,
        rng: &mut R,
    ) -> bool {
        let r: Vec<f64> = (0..fish.x.len()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let candidate = random_candidate(&fish.x, &r, step_ind);
        self.try_move(fish, candidate, unit, alpha_sar, rng)
    }

    /// SBX-guided step toward a child of the fish and its leader; only strict
    /// improvements are accepted.
    pub fn sbx_move<R: Rng + ?Sized>(
        &self,
        fish: &mut Fish,
        leader: &[f64],
        unit: &[f64],
        step_ind: f64,
        eta_c: f64,
        rng: &mut R,
    ) -> bool {
        let n = fish.x.len();
        let mut u = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            u.push(rng.random::<f64>());
            v.push(rng.random::<f64>());
        }
        let child = sbx_child(&fish.x, leader, &u, &v, eta_c);
        match step_toward(&fish.x, &child, step_ind) {
            Some(candidate) => self.try_move(fish, candidate, unit, 0.0, rng),
            None => {
                fish.delta_x.iter_mut().for_each(|d| *d = 0.0);
                fish.delta_w_bar = 0.0;
                false
            }
        }
    }
}

impl SchoolState {
    pub(crate) fn move_context(&self) -> MoveContext<'_> {
        MoveContext { spec: &self.spec, norm: &self.norm, theta: self.config.theta }
    }

    /// Random individual movement of every fish against the current bounds.
    pub fn individual_movement(&mut self) {
        let ctx = MoveContext { spec: &self.spec, norm: &self.norm, theta: self.config.theta };
        for (fish, rng) in self.fishes.iter_mut().zip(self.rngs.iter_mut()) {
            let unit = &self.units[fish.cluster];
            ctx.individual_move(fish, unit, self.step_ind, self.alpha_sar, rng);
        }
    }

    /// SBX-guided individual movement of every fish, with leader positions
    /// taken from the start of the iteration.
    pub fn individual_movement_sbx(&mut self) {
        let leader_positions: Vec<Option<Vec<f64>>> =
            self.leaders.iter().map(|l| l.map(|i| self.fishes[i].x.clone())).collect();
        let ctx = MoveContext { spec: &self.spec, norm: &self.norm, theta: self.config.theta };
        for (fish, rng) in self.fishes.iter_mut().zip(self.rngs.iter_mut()) {
            let Some(leader) = &leader_positions[fish.cluster] else { continue };
            let unit = &self.units[fish.cluster];
            ctx.sbx_move(fish, leader, unit, self.step_ind, self.config.eta_c, rng);
        }
    }
}
