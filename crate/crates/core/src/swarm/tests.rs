use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::movement::MoveContext;
use super::*;
use crate::metrics::dominates;
use crate::problems::Family;
use crate::refgeom::ReferenceSet;

fn spec3() -> ProblemSpec {
    ProblemSpec::new(Family::Dtlz2, 3).unwrap()
}

fn small_config(spec: &ProblemSpec, variant: Variant) -> SwarmConfig {
    SwarmConfig { school_size: 30, iterations: 20, layers: (2, 0), ..SwarmConfig::for_variant(spec, variant) }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every uniform draw from this source is 0.0.
struct ZeroRng;

impl RngCore for ZeroRng {
    fn next_u32(&mut self) -> u32 {
        0
    }
    fn next_u64(&mut self) -> u64 {
        0
    }
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        dst.fill(0);
    }
}

fn three_lines() -> ReferenceSet {
    ReferenceSet::from_directions(2, vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap()
}

fn cluster_sizes(assignment: &[usize], lines: usize) -> Vec<usize> {
    let mut sizes = vec![0; lines];
    for &c in assignment {
        sizes[c] += 1;
    }
    sizes
}

#[test]
fn variant_names_round_trip() {
    for v in [Variant::Wmofss, Variant::SbxA, Variant::SbxB, Variant::SbxC] {
        assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
    }
    assert!("sbx-d".parse::<Variant>().is_err());
    assert!(Variant::SbxB.is_sbx() && !Variant::SbxB.uses_volitive());
    assert!(Variant::SbxA.uses_volitive() && !Variant::SbxA.uses_instinctive());
}

#[test]
fn default_configs() {
    let d5 = ProblemSpec::new(Family::Dtlz1, 5).unwrap();
    let w = SwarmConfig::wmofss(&d5);
    assert_eq!((w.school_size, w.theta, w.layers), (630, 5.0, (6, 0)));
    let d10 = ProblemSpec::new(Family::Dtlz1, 10).unwrap();
    assert_eq!(SwarmConfig::wmofss(&d10).school_size, 825);
    let s = SwarmConfig::sbx(&d5, Variant::SbxB);
    assert_eq!((s.school_size, s.theta, s.eta_c, s.layers), (1000, 1.0, 1.0, (3, 0)));
    assert_eq!(s.alpha_sar_init, 0.0);
}

#[test]
fn schedules_decay() {
    let config = SwarmConfig { iterations: 101, ..SwarmConfig::wmofss(&spec3()) };
    assert_eq!(config.step_ind_at(0), 0.1);
    assert_abs_diff_eq!(config.step_ind_at(100), 0.0001, epsilon = 1e-15);
    assert_eq!(config.alpha_sar_at(0), 0.25);
    assert_abs_diff_eq!(config.alpha_sar_at(100), 0.25 * 0.995f64.powi(100), epsilon = 1e-15);
    for t in 0..100 {
        assert!(config.step_ind_at(t + 1) <= config.step_ind_at(t));
        assert!(config.alpha_sar_at(t + 1) <= config.alpha_sar_at(t));
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let spec = spec3();
    let base = small_config(&spec, Variant::SbxB);
    for bad in [
        SwarmConfig { theta: -1.0, ..base.clone() },
        SwarmConfig { eta_c: 0.0, ..base.clone() },
        SwarmConfig { step_ind_init: 0.0, ..base.clone() },
        SwarmConfig { alpha_sar_init: 1.5, ..base.clone() },
        SwarmConfig { alpha_sar_decay: 1.5, ..base.clone() },
        SwarmConfig { school_size: 5, ..base.clone() },
    ] {
        assert!(matches!(SchoolState::init(&spec, &bad, &mut rng(0)), Err(Error::InvalidConfig(_))));
    }
}

#[test]
fn clustering_equal_floors() {
    let weights = vec![
        vec![1.0, 0.0],
        vec![0.9, 0.01],
        vec![0.5, 0.5],
        vec![0.4, 0.41],
        vec![0.0, 1.0],
        vec![0.02, 0.8],
    ];
    let a = assign_clusters(&weights, &three_lines());
    assert_eq!(a, vec![0, 0, 1, 1, 2, 2]);
}

#[test]
fn clustering_remainder_keeps_floor() {
    let weights = vec![
        vec![1.0, 0.0],
        vec![0.9, 0.0],
        vec![0.8, 0.05],
        vec![0.7, 0.1],
        vec![0.6, 0.1],
        vec![0.5, 0.5],
        vec![0.0, 1.0],
    ];
    let a = assign_clusters(&weights, &three_lines());
    let sizes = cluster_sizes(&a, 3);
    assert!(sizes.iter().all(|&s| s >= 2));
    assert_eq!(sizes.iter().sum::<usize>(), 7);
}

#[test]
fn clustering_zero_distance_wins() {
    let mut weights = vec![vec![0.0, 0.9]; 5];
    weights.push(vec![0.3, 0.0]);
    let a = assign_clusters(&weights, &three_lines());
    assert_eq!(a[5], 0);
}

#[test]
fn init_is_deterministic_and_clusters_are_full() {
    let spec = spec3();
    let config = small_config(&spec, Variant::Wmofss);
    let a = SchoolState::init(&spec, &config, &mut rng(5)).unwrap();
    let b = SchoolState::init(&spec, &config, &mut rng(5)).unwrap();
    assert_eq!(a.fishes, b.fishes);
    assert_eq!(a.norm, b.norm);
    let floor = config.school_size / a.reference.len();
    assert!(a.members().iter().all(|m| m.len() >= floor));
    assert_eq!(a.members().iter().map(Vec::len).sum::<usize>(), config.school_size);
}

#[test]
fn one_fish_per_line_when_school_matches_lines() {
    let spec = spec3();
    let config = SwarmConfig { school_size: 6, ..small_config(&spec, Variant::Wmofss) };
    let school = SchoolState::init(&spec, &config, &mut rng(1)).unwrap();
    assert!(school.members().iter().all(|m| m.len() == 1));
    assert!(school.fishes.iter().all(|f| f.is_leader));
}

#[test]
fn sbx_default_school_fills_every_cluster() {
    let spec = ProblemSpec::new(Family::Dtlz1, 5).unwrap();
    let config = SwarmConfig::sbx(&spec, Variant::SbxB);
    let school = SchoolState::init(&spec, &config, &mut rng(2)).unwrap();
    assert_eq!(school.fishes.len(), 1000);
    assert_eq!(school.reference.len(), 35);
    assert!(school.members().iter().all(|m| m.len() >= 1000 / 35));
}

#[test]
fn random_candidate_arithmetic() {
    let c = random_candidate(&[0.5, 0.5], &[0.5, -0.5], 0.1);
    assert_abs_diff_eq!(c[0], 0.55, epsilon = 1e-15);
    assert_abs_diff_eq!(c[1], 0.45, epsilon = 1e-15);
    assert_eq!(random_candidate(&[0.99, 0.01], &[1.0, -1.0], 0.1), vec![1.0, 0.0]);
}

#[test]
fn sbx_spread_and_child() {
    assert_abs_diff_eq!(sbx_spread(0.5, 1.0), 1.0, epsilon = 1e-15);
    assert!(sbx_spread(0.1, 1.0) < 1.0 && sbx_spread(0.9, 1.0) > 1.0);
    let x = [0.2, 0.9];
    let l = [0.6, 0.3];
    let low = sbx_child(&x, &l, &[0.5, 0.5], &[0.1, 0.5], 1.0);
    assert_abs_diff_eq!(low[0], 0.2, epsilon = 1e-15);
    assert_abs_diff_eq!(low[1], 0.3, epsilon = 1e-15);
    let high = sbx_child(&x, &l, &[0.5, 0.5], &[0.9, 0.6], 1.0);
    assert_abs_diff_eq!(high[0], 0.6, epsilon = 1e-15);
    assert_abs_diff_eq!(high[1], 0.9, epsilon = 1e-15);
}

#[test]
fn step_toward_unit_length() {
    let c = step_toward(&[0.0, 0.0], &[3.0, 4.0], 0.5).unwrap();
    assert_abs_diff_eq!(c[0], 0.3, epsilon = 1e-15);
    assert_abs_diff_eq!(c[1], 0.4, epsilon = 1e-15);
    assert!(step_toward(&[0.2, 0.2], &[0.2, 0.2], 0.5).is_none());
}

fn seeded_school(variant: Variant, seed: u64) -> SchoolState {
    let spec = spec3();
    SchoolState::init(&spec, &small_config(&spec, variant), &mut rng(seed)).unwrap()
}

#[test]
fn greedy_individual_move_never_worsens() {
    let mut school = seeded_school(Variant::Wmofss, 3);
    school.alpha_sar = 0.0;
    let before: Vec<f64> = school.fishes.iter().map(|f| f.w_bar).collect();
    school.individual_movement();
    for (fish, old) in school.fishes.iter().zip(&before) {
        assert!(fish.w_bar <= *old);
        if fish.delta_w_bar > 0.0 {
            assert_abs_diff_eq!(fish.delta_w_bar, old - fish.w_bar, epsilon = 1e-12);
        } else {
            assert_eq!(fish.w_bar, *old);
            assert!(fish.delta_x.iter().all(|&d| d == 0.0));
        }
    }
}

#[test]
fn sar_accepts_worse_moves_with_probability() {
    let school = seeded_school(Variant::Wmofss, 4);
    let ctx = school.move_context();
    let unit = &school.units[school.fishes[0].cluster];
    // every r = -1 and the SAR draw is always below a positive alpha
    let mut fish = school.fishes[0].clone();
    let accepted = ctx.individual_move(&mut fish, unit, 0.05, 0.5, &mut ZeroRng);
    assert!(accepted);
    assert!(fish.delta_w_bar >= 0.0);
    let mut fish = school.fishes[0].clone();
    let original = fish.clone();
    let greedy = ctx.individual_move(&mut fish, unit, 0.05, 0.0, &mut ZeroRng);
    if !greedy {
        assert_eq!(fish.x, original.x);
        assert_eq!(fish.delta_w_bar, 0.0);
    }
}

#[test]
fn sbx_move_skips_own_leader_and_never_worsens() {
    let mut school = seeded_school(Variant::SbxB, 6);
    let leaders: Vec<usize> = school.leaders.iter().flatten().copied().collect();
    let before: Vec<(Vec<f64>, f64)> = school.fishes.iter().map(|f| (f.x.clone(), f.w_bar)).collect();
    school.individual_movement_sbx();
    for (i, fish) in school.fishes.iter().enumerate() {
        assert!(fish.w_bar <= before[i].1);
        if leaders.contains(&i) {
            assert_eq!(fish.x, before[i].0);
        }
    }
}

#[test]
fn sbx_move_rejects_worsening_candidate() {
    let school = seeded_school(Variant::SbxB, 7);
    let ctx = MoveContext { spec: &school.spec, norm: &school.norm, theta: 5.0 };
    let i = (0..school.fishes.len()).find(|i| !school.fishes[*i].is_leader).unwrap();
    let mut fish = school.fishes[i].clone();
    let unit = school.units[fish.cluster].clone();
    let leader = school.fishes[school.leaders[fish.cluster].unwrap()].x.clone();
    let start = ctx.score(&fish.f, &unit, &mut [0.0; 3]);
    for seed in 0..50 {
        let moved = ctx.sbx_move(&mut fish, &leader, &unit, 0.05, 1.0, &mut rng(seed));
        let now = ctx.score(&fish.f, &unit, &mut [0.0; 3]);
        if !moved {
            assert_eq!(fish.delta_w_bar, 0.0);
        }
        assert!(now <= start);
    }
}

#[test]
fn feeding_scores_ideal_point_zero() {
    let mut school = seeded_school(Variant::Wmofss, 8);
    school.fishes[0].f = vec![0.0; 3];
    school.feed();
    assert_eq!(school.fishes[0].w_bar, 0.0);
}

#[test]
fn feeding_uses_own_cluster_line_only() {
    let mut school = seeded_school(Variant::Wmofss, 9);
    school.feed();
    let before = school.fishes[0].w_bar;
    let other = (school.fishes[0].cluster + 1) % school.reference.len();
    school.units[other] = vec![1.0, 0.0, 0.0];
    school.feed();
    assert_eq!(school.fishes[0].w_bar, before);
}

fn manual_school(w_bars: &[f64]) -> SchoolState {
    let mut school = seeded_school(Variant::Wmofss, 10);
    school.fishes.truncate(w_bars.len());
    school.rngs.truncate(w_bars.len());
    for (fish, &w) in school.fishes.iter_mut().zip(w_bars) {
        fish.cluster = 0;
        fish.w_bar = w;
    }
    school.rebuild_members();
    school
}

#[test]
fn leaders_unique_and_tied() {
    let mut s = manual_school(&[3.0, 1.0, 2.0]);
    s.define_leaders();
    assert_eq!(s.fishes.iter().map(|f| f.is_leader).collect::<Vec<_>>(), [false, true, false]);
    assert_eq!(s.leaders[0], Some(1));

    let mut s = manual_school(&[2.0, 1.0, 1.0]);
    s.define_leaders();
    assert_eq!(s.fishes.iter().map(|f| f.is_leader).collect::<Vec<_>>(), [false, true, true]);
    assert_eq!(s.leaders[0], Some(1));

    let mut s = manual_school(&[4.0]);
    s.define_leaders();
    assert!(s.fishes[0].is_leader);
}

#[test]
fn instinctive_vector_cases() {
    let d1 = [0.1, -0.2];
    let d2 = [0.3, 0.3];
    assert_eq!(instinctive_vector([(&d1[..], 0.0), (&d2[..], 0.0)], 2), vec![0.0, 0.0]);
    assert_eq!(instinctive_vector([(&d1[..], 7.5), (&d2[..], 0.0)], 2), d1.to_vec());
    let mixed = instinctive_vector([(&d1[..], 1.0), (&d2[..], 3.0)], 2);
    assert_abs_diff_eq!(mixed[0], (0.1 + 0.9) / 4.0, epsilon = 1e-15);
}

#[test]
fn barycenter_cases() {
    let a = [0.0, 0.4];
    let b = [0.8, 0.0];
    let mean = barycenter([(&a[..], 2.0), (&b[..], 2.0)], 2);
    assert_abs_diff_eq!(mean[0], 0.4, epsilon = 1e-15);
    assert_abs_diff_eq!(mean[1], 0.2, epsilon = 1e-15);
    let weighted = barycenter([(&a[..], 1.0), (&b[..], 1.0 / 3.0)], 2);
    assert_abs_diff_eq!(weighted[0], 3.0 * 0.8 / 4.0, epsilon = 1e-12);
    assert_abs_diff_eq!(weighted[1], 0.4 / 4.0, epsilon = 1e-12);
    let pinned = barycenter([(&a[..], 0.0), (&b[..], 1.0)], 2);
    assert_abs_diff_eq!(pinned[0], 0.0, epsilon = 1e-9);
    assert_abs_diff_eq!(pinned[1], 0.4, epsilon = 1e-9);
}

#[test]
fn collective_moves_leave_leaders_in_place() {
    let mut school = seeded_school(Variant::Wmofss, 11);
    for _ in 0..3 {
        school.individual_movement();
        school.update_bounds();
        school.feed();
        school.define_leaders();
        let leaders: Vec<(usize, Vec<f64>)> = school
            .fishes
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_leader)
            .map(|(i, f)| (i, f.x.clone()))
            .collect();
        school.collective_instinctive();
        school.collective_volitive();
        for (i, x) in leaders {
            assert_eq!(school.fishes[i].x, x);
        }
    }
}

#[test]
fn instinctive_without_improvers_is_noop() {
    let mut school = seeded_school(Variant::Wmofss, 12);
    for fish in &mut school.fishes {
        fish.delta_w_bar = 0.0;
    }
    let before: Vec<Vec<f64>> = school.fishes.iter().map(|f| f.x.clone()).collect();
    school.collective_instinctive();
    let after: Vec<Vec<f64>> = school.fishes.iter().map(|f| f.x.clone()).collect();
    assert_eq!(before, after);
}

#[test]
fn zero_iterations_returns_filtered_initial_school() {
    let spec = spec3();
    let config = SwarmConfig { iterations: 0, ..small_config(&spec, Variant::Wmofss) };
    let school = SchoolState::init(&spec, &config, &mut rng(13)).unwrap();
    let outcome = run(&spec, &config, &mut rng(13)).unwrap();
    assert_eq!(outcome, school.outcome());
    assert!(!outcome.objectives.is_empty());
}

#[test]
fn runs_are_reproducible() {
    let spec = ProblemSpec::new(Family::Dtlz1, 3).unwrap();
    for variant in [Variant::Wmofss, Variant::SbxA, Variant::SbxB, Variant::SbxC] {
        let config = small_config(&spec, variant);
        let a = run(&spec, &config, &mut rng(14)).unwrap();
        let b = run(&spec, &config, &mut rng(14)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn outcome_is_nondominated_per_cluster() {
    let spec = spec3();
    let outcome = run(&spec, &small_config(&spec, Variant::Wmofss), &mut rng(15)).unwrap();
    for (i, p) in outcome.objectives.iter().enumerate() {
        for (j, q) in outcome.objectives.iter().enumerate() {
            if outcome.clusters[i] == outcome.clusters[j] {
                assert!(!dominates(q, p));
            }
        }
    }
}

#[test]
fn single_fish_clusters_reduce_to_local_search() {
    let spec = spec3();
    let config = SwarmConfig { school_size: 6, iterations: 10, ..small_config(&spec, Variant::Wmofss) };
    let mut school = SchoolState::init(&spec, &config, &mut rng(16)).unwrap();
    for _ in 0..10 {
        school.individual_movement();
        school.update_bounds();
        school.feed();
        school.define_leaders();
        let snapshot: Vec<Vec<f64>> = school.fishes.iter().map(|f| f.x.clone()).collect();
        school.collective_instinctive();
        school.collective_volitive();
        assert!(school.fishes.iter().all(|f| f.is_leader));
        let after: Vec<Vec<f64>> = school.fishes.iter().map(|f| f.x.clone()).collect();
        assert_eq!(snapshot, after);
    }
}

#[test]
fn symmetric_init_stays_in_box() {
    let spec = spec3();
    let config = SwarmConfig { init_domain: InitDomain::Symmetric, ..small_config(&spec, Variant::Wmofss) };
    let school = SchoolState::init(&spec, &config, &mut rng(17)).unwrap();
    assert!(school.fishes.iter().flat_map(|f| &f.x).all(|v| (0.0..=1.0).contains(v)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn positions_stay_in_box(seed in 0u64..1000, variant in 0usize..4) {
        let variant = [Variant::Wmofss, Variant::SbxA, Variant::SbxB, Variant::SbxC][variant];
        let spec = ProblemSpec::new(Family::Dtlz3, 3).unwrap();
        let mut school = SchoolState::init(&spec, &small_config(&spec, variant), &mut rng(seed)).unwrap();
        for _ in 0..5 {
            school.step();
            prop_assert!(school.fishes.iter().flat_map(|f| &f.x).all(|v| (0.0..=1.0).contains(v)));
            prop_assert!(school.fishes.iter().all(|f| f.delta_w_bar >= 0.0));
        }
    }

    #[test]
    fn clustering_respects_capacity(
        weights in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 2), 3..40)
    ) {
        let a = assign_clusters(&weights, &three_lines());
        let sizes = cluster_sizes(&a, 3);
        prop_assert!(sizes.iter().all(|&s| s >= weights.len() / 3));
        prop_assert_eq!(sizes.iter().sum::<usize>(), weights.len());
    }
}
