//! Closure-engine properties over random seed sets: idempotence,
//! worklist-order independence, and edge soundness, plus the exact
//! match between closures of tower pairs and the predicted family.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fset_core::config::Limits;
use fset_core::construct::{f_tower, family_members, g_tower};
use fset_core::field::FieldSpec;
use fset_core::fset::{closure, ClosureConfig, ClosureState, ClosureStatus, WorklistOrder};
use fset_core::oracle;
use fset_core::poly::Polynomial;

fn gf(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

/// All monic irreducibles of degree 1..=max_degree, for seed sampling.
fn irreducible_pool(field: FieldSpec, max_degree: usize) -> Vec<Polynomial> {
    (1..=max_degree)
        .flat_map(|d| oracle::monic_irreducibles(field, d))
        .collect()
}

fn assert_edges_sound(state: &ClosureState) {
    for (parent, child) in state.edges() {
        assert!(state.members().contains(parent), "edge parent is a member");
        assert!(state.members().contains(child), "edge child is a member");
        let alpha = Polynomial::constant(*state.field(), parent.constant_term());
        let shifted = parent.sub(&alpha);
        let (_, rem) = shifted.divrem(child);
        assert!(
            rem.is_zero(),
            "edge ({parent}, {child}) does not divide exactly"
        );
    }
}

#[test]
fn random_seeds_idempotent_order_independent_and_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC105_0E);
    for p in [2u64, 5] {
        let field = gf(p);
        let pool = irreducible_pool(field, 6);
        let limits = Limits::for_prime(p);
        for case in 0..50 {
            let n_seeds = rng.gen_range(1..=3);
            let seeds: Vec<Polynomial> = (0..n_seeds)
                .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                .collect();
            let cfg = ClosureConfig {
                order: WorklistOrder::DegreeAscending,
                limits,
            };
            let state = closure(field, &seeds, &cfg).unwrap();
            assert_eq!(
                state.status(),
                ClosureStatus::Saturated,
                "p = {p}, case {case}: degree never grows, so small seeds saturate"
            );

            // Monotonicity: seeds are members.
            for s in &seeds {
                assert!(state.members().contains(s));
            }

            // Edge soundness.
            assert_edges_sound(&state);

            // Idempotence: re-closing the member set adds nothing.
            let members: Vec<Polynomial> = state.members().iter().cloned().collect();
            let again = closure(field, &members, &cfg).unwrap();
            assert_eq!(again.members(), state.members(), "p = {p}, case {case}");
            assert_eq!(again.edges(), state.edges(), "p = {p}, case {case}");

            // Order independence: a shuffled worklist reaches the same
            // fixpoint with the same edges.
            let shuffled_cfg = ClosureConfig {
                order: WorklistOrder::Shuffled {
                    seed: 0xBEEF + case as u64,
                },
                limits,
            };
            let shuffled = closure(field, &seeds, &shuffled_cfg).unwrap();
            assert_eq!(shuffled.members(), state.members(), "p = {p}, case {case}");
            assert_eq!(shuffled.edges(), state.edges(), "p = {p}, case {case}");
        }
    }
}

#[test]
fn tower_pair_closure_is_exactly_the_predicted_family() {
    for p in [2u64, 5, 23] {
        let field = gf(p);
        for max_level in 0..=4u32 {
            let seeds = vec![f_tower(field, max_level), g_tower(field, max_level)];
            let cfg = ClosureConfig::for_prime(p);
            let state = closure(field, &seeds, &cfg).unwrap();
            assert_eq!(
                state.status(),
                ClosureStatus::Saturated,
                "p = {p}, L = {max_level}"
            );
            let predicted: BTreeSet<Polynomial> = family_members(field, max_level)
                .into_iter()
                .map(|m| m.poly)
                .collect();
            assert_eq!(
                state.members(),
                &predicted,
                "closure must reproduce the family, p = {p}, L = {max_level}"
            );
            assert_edges_sound(&state);
        }
    }
}

#[test]
fn truncation_statuses_are_reported() {
    let field = gf(2);
    // An iteration cap of zero leaves the seed unexpanded.
    let capped = ClosureConfig {
        order: WorklistOrder::DegreeAscending,
        limits: Limits {
            iter_cap: 0,
            ..Limits::for_prime(2)
        },
    };
    let state = closure(field, &[f_tower(field, 1)], &capped).unwrap();
    assert_eq!(state.status(), ClosureStatus::TruncatedByIterations);
    assert!(state.edges().is_empty());

    // A degree cap below the seed degree admits the seed as a member
    // but never factors it.
    let capped = ClosureConfig {
        order: WorklistOrder::DegreeAscending,
        limits: Limits {
            degree_cap: 4,
            ..Limits::for_prime(2)
        },
    };
    let state = closure(field, &[f_tower(field, 1)], &capped).unwrap();
    assert_eq!(state.status(), ClosureStatus::TruncatedByDegree);
    assert_eq!(state.members().len(), 1);

    // Raising the cap and expanding again reaches saturation.
    let mut state = state;
    state
        .expand(&[], &ClosureConfig::for_prime(2))
        .unwrap();
    assert_eq!(state.status(), ClosureStatus::Saturated);
    assert_eq!(state.members().len(), 4);
}

#[test]
fn single_linear_seed_is_a_fixpoint() {
    // x - 0 = x: the self-loop saturates immediately.
    let field = gf(2);
    let x = Polynomial::x(field);
    let state = closure(field, &[x.clone()], &ClosureConfig::for_prime(2)).unwrap();
    assert_eq!(state.status(), ClosureStatus::Saturated);
    assert_eq!(state.members().len(), 1);
    assert!(state.edges().contains(&(x.clone(), x)));
}
