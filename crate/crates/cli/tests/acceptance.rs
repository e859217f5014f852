//! Acceptance battery: one test per criterion, each printing a PASS
//! line on success (and failing the target otherwise).
//!
//! 1. Full family verification for every gated prime in the test set,
//!    within the runtime budget.
//! 2. Negative controls: ungated primes are rejected and the reducible
//!    cases factor as the oracle says.
//! 3. Base orders (3 and 6) and unit constant terms across the towers.
//! 4. Nontriviality witnesses certify irreducible and stay outside the
//!    family at every level.
//! 5. Factorization agrees with exhaustive trial division on every
//!    small polynomial.
//! 6. The residue gate coincides with the substitution criterion on
//!    the base member for all small primes p = 2 (mod 3).
//! 7. Closure idempotence, order-independence, and edge soundness on
//!    random seeds; tower-pair closures match the predicted family.
//! 8. Byte-identical JSON verification reports across runs.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fset_core::config::Limits;
use fset_core::construct::{
    base_f, base_g, f_tower, family_members, g_tower, residue_gate, substitution_criterion,
};
use fset_core::factor::{factorize, is_irreducible, poly_order};
use fset_core::field::{is_prime, FieldSpec};
use fset_core::fset::{closure, ClosureConfig, ClosureState, ClosureStatus, WorklistOrder};
use fset_core::oracle;
use fset_core::poly::Polynomial;

/// The gated primes every full-verification criterion runs over.
const GATED_PRIMES: [u64; 7] = [2, 5, 11, 23, 29, 41, 59];
/// Ungated primes for the negative controls.
const UNGATED_PRIMES: [u64; 5] = [3, 7, 13, 17, 19];

fn gf(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

fn depth(p: u64) -> u32 {
    if p == 2 {
        7
    } else {
        5
    }
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn fset(args: &[&str]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fset"));
    cmd.args(args);
    for var in [
        "FSET_DEGREE_CAP",
        "FSET_ITER_CAP",
        "FSET_EDF_SEED",
        "FSET_FACTOR_BUDGET",
    ] {
        cmd.env_remove(var);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().expect("terminated by exit, not signal"),
    }
}

#[test]
fn criterion_1_full_verification_within_budget() {
    let budget = Duration::from_secs(60);
    for p in GATED_PRIMES {
        let max_level = depth(p);
        let started = Instant::now();
        let run = fset(&["verify", "-p", &p.to_string(), "-L", &max_level.to_string()]);
        let elapsed = started.elapsed();
        assert_eq!(
            run.code, 0,
            "verify -p {p} -L {max_level} failed:\n{}{}",
            run.stdout, run.stderr
        );
        assert!(
            run.stdout.ends_with("verdict: PASS\n"),
            "verify -p {p} did not pass:\n{}",
            run.stdout
        );
        assert!(
            elapsed <= budget,
            "verify -p {p} -L {max_level} took {elapsed:?}, over the {budget:?} budget"
        );
        println!("  verify -p {p} -L {max_level}: PASS in {elapsed:?}");
    }
    println!("criterion 1: PASS — full verification for p in {GATED_PRIMES:?}");
}

#[test]
fn criterion_2_negative_controls() {
    for p in UNGATED_PRIMES {
        let run = fset(&["verify", "-p", &p.to_string(), "-L", "1"]);
        assert_eq!(run.code, 2, "verify -p {p} must fail the gate");
    }

    // x^2+x+1 is reducible whenever p = 3 or p = 1 (mod 3).
    for p in [3u64, 7, 13] {
        assert!(
            !is_irreducible(&base_f(gf(p))),
            "x^2+x+1 must be reducible over F_{p}"
        );
    }

    // Over F_17 the level-1 tower member splits; record what the
    // factorization oracle produces and check it reconstructs exactly.
    let field = gf(17);
    let poly = f_tower(field, 1);
    let result = factorize(&poly);
    let count: u32 = result.factors.iter().map(|(_, m)| m).sum();
    assert!(
        count >= 2,
        "x^6+x^3+1 must split over F_17, got {} factors",
        count
    );
    assert_eq!(result.reconstruct(), poly, "factor product must reconstruct");
    println!(
        "criterion 2: PASS — gate rejects {UNGATED_PRIMES:?}; x^2+x+1 reducible over F_3/F_7/F_13; x^6+x^3+1 splits into {count} factors over F_17"
    );
}

#[test]
fn criterion_3_base_orders_and_constant_terms() {
    for p in GATED_PRIMES {
        let field = gf(p);
        let f_order = poly_order(&base_f(field)).unwrap().order;
        assert_eq!(f_order.to_string(), "3", "ord(x^2+x+1) over F_{p}");
        let g_order = poly_order(&base_g(field)).unwrap().order;
        // Over F_2 the g base coincides with the f base, so its order is
        // 3 rather than 6.
        let want = if p == 2 { "3" } else { "6" };
        assert_eq!(g_order.to_string(), want, "ord(x^2-x+1) over F_{p}");

        for level in 0..=depth(p) {
            for member in [f_tower(field, level), g_tower(field, level)] {
                assert_eq!(
                    member.constant_term().value(),
                    1,
                    "constant term of a tower member over F_{p}, level {level}"
                );
            }
        }
    }
    println!(
        "criterion 3: PASS — base orders 3 and 6 (3 over F_2) and unit constant terms for p in {GATED_PRIMES:?}"
    );
}

#[test]
fn criterion_4_witnesses_outside_the_family() {
    for p in GATED_PRIMES {
        let field = gf(p);
        let witness = if p == 2 {
            Polynomial::from_signed_coeffs(field, &[1, 1, 0, 1])
        } else {
            Polynomial::from_signed_coeffs(field, &[2, 1])
        };
        assert!(
            is_irreducible(&witness),
            "witness {witness} over F_{p} must be irreducible"
        );
        for max_level in 0..=depth(p) {
            let absent = family_members(field, max_level)
                .iter()
                .all(|m| m.poly != witness);
            assert!(
                absent,
                "witness {witness} must be outside the family, p = {p}, L = {max_level}"
            );
        }
    }
    println!(
        "criterion 4: PASS — witnesses irreducible and absent at every level for p in {GATED_PRIMES:?}"
    );
}

#[test]
fn criterion_5_factorization_matches_exhaustive_trial_division() {
    let mut checked = 0u64;
    for (p, max_degree) in [(2u64, 6usize), (3, 4), (5, 3)] {
        let field = gf(p);
        // Every nonzero polynomial of degree <= max_degree, non-monic
        // included: counter digits in base p are ascending coefficients.
        let total = (p as u128).pow(max_degree as u32 + 1);
        for counter in 1..total {
            let mut coeffs = Vec::with_capacity(max_degree + 1);
            let mut rest = counter;
            for _ in 0..=max_degree {
                coeffs.push((rest % p as u128) as u64);
                rest /= p as u128;
            }
            let poly = Polynomial::from_coeffs(field, &coeffs);
            let fast = factorize(&poly);
            let (oracle_unit, oracle_factors) = oracle::factorize(&poly);
            assert_eq!(fast.unit, oracle_unit, "unit mismatch for {poly} over F_{p}");
            assert_eq!(
                fast.factors, oracle_factors,
                "factor multiset mismatch for {poly} over F_{p}"
            );
            assert_eq!(fast.reconstruct(), poly, "reconstruction of {poly} over F_{p}");
            checked += 1;
        }
    }
    println!(
        "criterion 5: PASS — {checked} factorizations match exhaustive trial division (F_2 deg <= 6, F_3 deg <= 4, F_5 deg <= 3)"
    );
}

#[test]
fn criterion_6_gate_equals_criterion_on_the_base() {
    let mut tested = Vec::new();
    for p in 2u64..200 {
        if !is_prime(p) || p % 3 != 2 {
            continue;
        }
        let report = substitution_criterion(&base_f(gf(p)), 3).unwrap();
        assert_eq!(
            residue_gate(p),
            report.passed,
            "gate and substitution criterion disagree at p = {p}"
        );
        tested.push(p);
    }
    assert!(tested.len() >= 20, "the prime scan must not be empty");
    println!(
        "criterion 6: PASS — residue gate = substitution criterion on x^2+x+1 for all {} primes p < 200 with p = 2 (mod 3)",
        tested.len()
    );
}

#[test]
fn criterion_7_closure_engine_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_97);
    let mut cases = 0;
    for p in [2u64, 5] {
        let field = gf(p);
        let pool: Vec<Polynomial> = (1..=6)
            .flat_map(|d| oracle::monic_irreducibles(field, d))
            .collect();
        let limits = Limits::for_prime(p);
        let cfg = ClosureConfig {
            order: WorklistOrder::DegreeAscending,
            limits,
        };
        for case in 0..50 {
            let n_seeds = rng.gen_range(1..=3);
            let seeds: Vec<Polynomial> = (0..n_seeds)
                .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                .collect();
            let state = closure(field, &seeds, &cfg).unwrap();
            assert_eq!(state.status(), ClosureStatus::Saturated);

            // Edge soundness: every recorded divisibility is real.
            assert_edges_sound(&state);

            // Idempotence.
            let members: Vec<Polynomial> = state.members().iter().cloned().collect();
            let again = closure(field, &members, &cfg).unwrap();
            assert_eq!(again.members(), state.members(), "p = {p} case {case}");
            assert_eq!(again.edges(), state.edges(), "p = {p} case {case}");

            // Order independence.
            let shuffled = closure(
                field,
                &seeds,
                &ClosureConfig {
                    order: WorklistOrder::Shuffled {
                        seed: case as u64 + 1,
                    },
                    limits,
                },
            )
            .unwrap();
            assert_eq!(shuffled.members(), state.members(), "p = {p} case {case}");
            assert_eq!(shuffled.edges(), state.edges(), "p = {p} case {case}");
            cases += 1;
        }
    }
    assert_eq!(cases, 100);

    // Tower-pair closures equal the predicted family exactly.
    for p in [2u64, 5, 23] {
        let field = gf(p);
        for max_level in 0..=4u32 {
            let seeds = vec![f_tower(field, max_level), g_tower(field, max_level)];
            let state = closure(field, &seeds, &ClosureConfig::for_prime(p)).unwrap();
            assert_eq!(state.status(), ClosureStatus::Saturated);
            let predicted: BTreeSet<Polynomial> = family_members(field, max_level)
                .into_iter()
                .map(|m| m.poly)
                .collect();
            assert_eq!(
                state.members(),
                &predicted,
                "closure({{f_{max_level}, g_{max_level}}}) over F_{p}"
            );
        }
    }
    println!(
        "criterion 7: PASS — idempotence, order-independence, edge soundness on {cases} random seed sets; tower closures match the family for L <= 4, p in [2, 5, 23]"
    );
}

fn assert_edges_sound(state: &ClosureState) {
    for (parent, child) in state.edges() {
        assert!(state.members().contains(parent));
        assert!(state.members().contains(child));
        let alpha = Polynomial::constant(*state.field(), parent.constant_term());
        let (_, rem) = parent.sub(&alpha).divrem(child);
        assert!(rem.is_zero(), "edge ({parent}, {child}) is not a divisor");
    }
}

#[test]
fn criterion_8_verification_reports_are_byte_identical() {
    for p in GATED_PRIMES {
        let max_level = depth(p).to_string();
        let args = ["verify", "-p", &p.to_string(), "-L", &max_level, "--format", "json"];
        let first = fset(&args);
        let second = fset(&args);
        assert_eq!(first.code, 0, "p = {p}: {}", first.stderr);
        assert_eq!(second.code, 0);
        assert!(
            first.stdout == second.stdout,
            "verify -p {p} JSON output differs between runs"
        );
        assert!(!first.stdout.is_empty());
    }
    println!(
        "criterion 8: PASS — two verify --format json runs are byte-identical for p in {GATED_PRIMES:?}"
    );
}
