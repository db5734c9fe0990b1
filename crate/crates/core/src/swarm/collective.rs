//! Feeding, leader definition and the two collective movements. All of them
//! work cluster by cluster.

use rand::Rng;

use super::{clamp_to_box, SchoolState, W_BAR_FLOOR, ZERO_DIRECTION};

/// Improvement-weighted mean displacement. Only entries with a positive
/// improvement contribute; the result is zero when none does.
pub fn instinctive_vector<'a, I>(contributions: I, n: usize) -> Vec<f64>
where
    I: IntoIterator<Item = (&'a [f64], f64)>,
{
    let mut sum = vec![0.0; n];
    let mut total = 0.0;
    for (dx, gain) in contributions {
        if gain > 0.0 {
            for (s, d) in sum.iter_mut().zip(dx) {
                *s += d * gain;
            }
            total += gain;
        }
    }
    if total > 0.0 {
        sum.iter_mut().for_each(|s| *s /= total);
    }
    sum
}

/// Barycenter of `positions` weighted by `1 / max(w̄, 1e-12)`.
pub fn barycenter<'a, I>(members: I, n: usize) -> Vec<f64>
where
    I: IntoIterator<Item = (&'a [f64], f64)>,
{
    let mut sum = vec![0.0; n];
    let mut total = 0.0;
    for (x, w_bar) in members {
        let weight = 1.0 / w_bar.max(W_BAR_FLOOR);
        for (s, xi) in sum.iter_mut().zip(x) {
            *s += xi * weight;
        }
        total += weight;
    }
    if total > 0.0 {
        sum.iter_mut().for_each(|s| *s /= total);
    }
    sum
}

impl SchoolState {
    /// Recomputes every fish's normalized objectives and aggregated weight
    /// against its own cluster's line.
    pub fn feed(&mut self) {
        let ctx = self.move_context();
        let scores: Vec<(Vec<f64>, f64)> = self
            .fishes
            .iter()
            .map(|fish| {
                let mut w = vec![0.0; self.spec.m];
                let g = ctx.score(&fish.f, &self.units[fish.cluster], &mut w);
                (w, g)
            })
            .collect();
        for (fish, (w, g)) in self.fishes.iter_mut().zip(scores) {
            fish.w = w;
            fish.w_bar = g;
        }
    }

    /// Flags every fish with the smallest aggregated weight of its cluster as
    /// a leader; the lowest such index becomes the designated leader.
    pub fn define_leaders(&mut self) {
        for (cluster, members) in self.members.iter().enumerate() {
            let best = members.iter().map(|&i| self.fishes[i].w_bar).fold(f64::INFINITY, f64::min);
            let mut designated = None;
            for &i in members {
                let lead = self.fishes[i].w_bar == best;
                self.fishes[i].is_leader = lead;
                if lead && designated.is_none() {
                    designated = Some(i);
                }
            }
            self.leaders[cluster] = designated;
        }
    }

    /// Moves non-leaders by their cluster's improvement-weighted mean
    /// displacement.
    pub fn collective_instinctive(&mut self) {
        let n = self.spec.n;
        let mut moved = false;
        for members in &self.members {
            let drift = instinctive_vector(
                members.iter().map(|&i| (self.fishes[i].delta_x.as_slice(), self.fishes[i].delta_w_bar)),
                n,
            );
            if drift.iter().all(|&d| d == 0.0) {
                continue;
            }
            for &i in members {
                let fish = &mut self.fishes[i];
                if fish.is_leader {
                    continue;
                }
                for (x, d) in fish.x.iter_mut().zip(&drift) {
                    *x += d;
                }
                clamp_to_box(&mut fish.x);
                moved = true;
            }
        }
        if moved {
            self.refresh_non_leaders();
        }
    }

    /// Contracts non-leaders toward (or spreads them away from) their
    /// cluster's barycenter, depending on whether the cluster's total
    /// aggregated weight went down since the previous iteration.
    pub fn collective_volitive(&mut self) {
        let n = self.spec.n;
        let step_vol = self.step_vol;
        let totals: Vec<f64> =
            self.members.iter().map(|m| m.iter().map(|&i| self.fishes[i].w_bar).sum()).collect();
        for (cluster, members) in self.members.iter().enumerate() {
            let contract = match &self.previous_totals {
                Some(prev) => totals[cluster] < prev[cluster],
                None => true,
            };
            let center =
                barycenter(members.iter().map(|&i| (self.fishes[i].x.as_slice(), self.fishes[i].w_bar)), n);
            for &i in members {
                if self.fishes[i].is_leader {
                    continue;
                }
                let r: f64 = self.rngs[i].random();
                let fish = &mut self.fishes[i];
                let dist = fish.x.iter().zip(&center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                if dist < ZERO_DIRECTION {
                    continue;
                }
                let sign = if contract { -1.0 } else { 1.0 };
                for (x, b) in fish.x.iter_mut().zip(&center) {
                    *x += sign * step_vol * r * (*x - b) / dist;
                }
                clamp_to_box(&mut fish.x);
            }
        }
        self.previous_totals = Some(totals);
        self.refresh_non_leaders();
    }

    /// Re-evaluates and re-scores non-leaders after a collective move,
    /// against the current bounds.
    fn refresh_non_leaders(&mut self) {
        let mut f = vec![0.0; self.spec.m];
        for i in 0..self.fishes.len() {
            if self.fishes[i].is_leader {
                continue;
            }
            self.evaluate(&self.fishes[i].x, &mut f);
            let mut w = vec![0.0; self.spec.m];
            let g = self.move_context().score(&f, &self.units[self.fishes[i].cluster], &mut w);
            let fish = &mut self.fishes[i];
            fish.f.copy_from_slice(&f);
            fish.w = w;
            fish.w_bar = g;
        }
    }
}
