//! Property tests for game transforms, indices, estimators and causal games.

mod common;

use causex_core::causal::{
    direct_effect_game, model_direct_effect_game, total_effect_game, CausalModel, ConstraintSet, VarKind, VariableSpec,
};
use causex_core::causes::{minimal_causes, minimal_elements, quasi_minimal_causes};
use causex_core::coalition::{all_coalitions, Coalition};
use causex_core::game::{contract, make_explicit_cause_game, make_weighted_voting, permute, TruthTable};
use causex_core::indices::{compute_index, IndexKind, Scale};
use causex_core::rational::{from_u64, ratio, Rational};
use causex_core::sampling::{estimate_index, SamplingConfig};
use causex_core::GameOracle;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn game_from(seed: u64, n: usize) -> GameOracle {
    common::random_game(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn sum(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::zero(), |a, v| a + v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permuting_the_game_permutes_every_index(seed in any::<u64>(), n in 2usize..=6) {
        let game = game_from(seed, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        let moved = permute(&game, &perm).unwrap();
        for kind in IndexKind::ALL {
            let before = compute_index(&game, kind, Scale::Raw).unwrap().values;
            let after = compute_index(&moved, kind, Scale::Raw).unwrap().values;
            for j in 0..n {
                prop_assert_eq!(&after[j], &before[perm[j]], "{} at feature {}", kind, j + 1);
            }
        }
    }

    #[test]
    fn explicit_causes_round_trip(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets: Vec<Coalition> = (0..rng.gen_range(1..=n + 2))
            .map(|_| Coalition::from_mask(rng.gen_range(1..1u64 << n)))
            .collect();
        let antichain = minimal_elements(&sets);
        let game = make_explicit_cause_game(n, &antichain).unwrap();
        let mut expected = antichain.clone();
        expected.sort();
        let family = minimal_causes(&game).unwrap();
        prop_assert_eq!(family.causes(), expected.as_slice());
    }

    #[test]
    fn transforms_preserve_monotonicity(seed in any::<u64>(), n in 2usize..=9) {
        let game = game_from(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let t: Coalition = order[..rng.gen_range(2..=n)].iter().copied().collect();
        let (contracted, _) = contract(&game, t).unwrap();
        prop_assert!(contracted.check_simple().is_ok());
        prop_assert!(permute(&game, &order).unwrap().check_simple().is_ok());
    }

    #[test]
    fn threshold_perturbation_below_the_gap_changes_nothing(
        weights in prop::collection::vec(1u64..20, 1..=8),
        pick in any::<u64>(),
    ) {
        let n = weights.len();
        let sums: Vec<u64> = (0..1u64 << n)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).map(|i| weights[i]).sum())
            .collect();
        let mut distinct: Vec<u64> = sums.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let distinct: Vec<u64> = distinct.into_iter().filter(|&s| s > 0).collect();
        let q = distinct[(pick as usize) % distinct.len()];
        let w: Vec<Rational> = weights.iter().map(|&x| from_u64(x)).collect();
        let base = make_weighted_voting(w.clone(), from_u64(q)).unwrap();
        // Every achievable sum is an integer, so moving q by less than 1
        // downward (but staying above the next sum below) keeps each comparison.
        let nudged = make_weighted_voting(w, from_u64(q) - ratio(1, 3)).unwrap();
        for s in all_coalitions(n) {
            prop_assert_eq!(base.eval(s), nudged.eval(s));
            prop_assert_eq!(base.eval(s), sums[s.mask() as usize] >= q);
        }
    }

    #[test]
    fn raw_and_per_cause_rank_alike(seed in any::<u64>(), n in 1usize..=7) {
        let game = game_from(seed, n);
        for kind in [IndexKind::HollerPackel, IndexKind::DeeganPackel] {
            let raw = compute_index(&game, kind, Scale::Raw).unwrap();
            let per = compute_index(&game, kind, Scale::PerCause).unwrap();
            prop_assert_eq!(raw.ranking(), per.ranking());
        }
    }

    #[test]
    fn null_features_score_zero(seed in any::<u64>(), n in 2usize..=7, null in 0usize..7) {
        let null = null % n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets: Vec<Coalition> = (0..rng.gen_range(1..=n))
            .map(|_| Coalition::from_mask(rng.gen_range(1..1u64 << n)).without(null))
            .filter(|s| !s.is_empty())
            .collect();
        prop_assume!(!sets.is_empty());
        let game = make_explicit_cause_game(n, &minimal_elements(&sets)).unwrap();
        for kind in IndexKind::ALL {
            prop_assert!(compute_index(&game, kind, Scale::Raw).unwrap().values[null].is_zero(), "{}", kind);
        }
    }

    #[test]
    fn efficiency_identities(seed in any::<u64>(), n in 1usize..=7) {
        let game = game_from(seed, n);
        let minimal = common::minimal(&game);
        let quasi = common::quasi_minimal(&game);
        let hp = compute_index(&game, IndexKind::HollerPackel, Scale::PerCause).unwrap().values;
        let sizes: u64 = minimal.iter().map(|s| u64::from(s.count_ones())).sum();
        prop_assert_eq!(sum(&hp), from_u64(sizes));
        let dp = compute_index(&game, IndexKind::DeeganPackel, Scale::PerCause).unwrap().values;
        prop_assert_eq!(sum(&dp), from_u64(minimal.len() as u64));
        let sh = compute_index(&game, IndexKind::Shapley, Scale::Raw).unwrap().values;
        prop_assert_eq!(sum(&sh), if game.eval(Coalition::full(n)) { Rational::one() } else { Rational::zero() });
        let bz = compute_index(&game, IndexKind::Banzhaf, Scale::PerCause).unwrap().values;
        let swings: u64 = quasi.iter().map(|(_, x)| x.len() as u64).sum();
        prop_assert_eq!(sum(&bz), from_u64(swings));
        let _ = quasi_minimal_causes(&game).unwrap();
    }

    #[test]
    fn responsibility_estimates_never_exceed_the_truth(seed in any::<u64>(), n in 1usize..=8, m in 1u64..300) {
        let game = game_from(seed, n);
        let exact = compute_index(&game, IndexKind::Responsibility, Scale::Raw).unwrap().values;
        let est = estimate_index(&game, IndexKind::Responsibility, &SamplingConfig::with_samples(m, seed).unwrap())
            .unwrap()
            .estimates
            .values;
        for (a, b) in est.iter().zip(&exact) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn estimates_are_reproducible(seed in any::<u64>(), n in 1usize..=8, m in 1u64..2000) {
        let game = game_from(seed, n);
        let cfg = SamplingConfig::with_samples(m, seed).unwrap();
        for kind in [IndexKind::Johnston, IndexKind::DeeganPackel, IndexKind::HollerPackel, IndexKind::Responsibility] {
            prop_assert_eq!(estimate_index(&game, kind, &cfg).unwrap(), estimate_index(&game, kind, &cfg).unwrap());
        }
    }

    #[test]
    fn truth_table_hex_round_trip(seed in any::<u64>(), n in 1usize..=9) {
        let table = game_from(seed, n).tabulate().unwrap();
        let back = TruthTable::from_hex(n, &table.to_hex()).unwrap();
        prop_assert!(all_coalitions(n).all(|s| back.get(s) == table.get(s)));
    }

    #[test]
    fn direct_effect_games_are_monotone(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table: Vec<i64> = (0..1u64 << n).map(|_| rng.gen_range(0..=1)).collect();
        let f = |z: &[i64]| table[z.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum::<usize>()];
        let cube = ConstraintSet::binary_cube(n).unwrap();
        let keep: Vec<Vec<i64>> = cube.candidates().iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        let constraints = ConstraintSet::from_points(n, keep).unwrap();
        let point: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        let game = direct_effect_game(n, &f, &point, &constraints).unwrap();
        prop_assert!(game.check_simple().is_ok());
    }

    #[test]
    fn exogenous_only_models_have_equal_total_and_direct_effects(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (model, point) = exogenous_model(&mut rng, n);
        let constraints = model.all_domain_points().unwrap();
        let total = total_effect_game(&model, &point, &constraints).unwrap();
        let direct = model_direct_effect_game(&model, &point, &constraints).unwrap();
        prop_assert!(total.check_simple().is_ok());
        prop_assert!(all_coalitions(n).all(|s| total.eval(s) == direct.eval(s)));
    }

    #[test]
    fn propagation_is_a_fixed_point(seed in any::<u64>(), mask in 0u64..16, values in prop::collection::vec(0i64..=1, 4)) {
        let model = causex_core::causal::arsonist_model();
        let (x, _) = model.evaluate(&[(seed & 1) as i64, (seed >> 1 & 1) as i64]).unwrap();
        let s = Coalition::from_mask(mask);
        let propagated = model.propagate(&x, s, &values).unwrap();
        prop_assert!(model.sat(s, &propagated, &x).unwrap());
    }
}

/// Features are exogenous with small domains; the output reads them all.
fn exogenous_model<R: Rng>(rng: &mut R, n: usize) -> (CausalModel, Vec<i64>) {
    let domains: Vec<Vec<i64>> = (0..n).map(|_| (0..rng.gen_range(2..=3)).collect()).collect();
    let mut specs: Vec<VariableSpec> = (0..n)
        .map(|i| VariableSpec {
            name: format!("X{}", i + 1),
            kind: VarKind::Exogenous,
            domain: domains[i].clone(),
            parents: vec![],
            table: vec![],
        })
        .collect();
    let mut tuples: Vec<Vec<i64>> = vec![vec![]];
    for d in &domains {
        tuples = tuples
            .into_iter()
            .flat_map(|t| d.iter().map(move |&v| [t.clone(), vec![v]].concat()))
            .collect();
    }
    let table = tuples.iter().map(|t| (t.clone(), rng.gen_range(0..=1))).collect();
    specs.push(VariableSpec {
        name: "Y".into(),
        kind: VarKind::Endogenous,
        domain: vec![0, 1],
        parents: (1..=n).map(|i| format!("X{i}")).collect(),
        table,
    });
    let model = CausalModel::new(specs, "Y").unwrap();
    let point = domains.iter().map(|d| d[rng.gen_range(0..d.len())]).collect();
    (model, point)
}
