//! F-set closure computation, closedness checking, family verification,
//! and the bounded tower-probe search.
//!
//! The *closure* of a set of monic irreducible seeds is the least F-set
//! containing them: repeatedly factor (member - constant term) and admit
//! every monic irreducible factor, until nothing new appears or a limit
//! cuts the run short. The worklist default processes lowest degrees
//! first, but the result is order-independent — a shuffled worklist
//! reaches the same members and edges, which the test suite exploits.
//!
//! *Closedness* of an explicit finite set is checked from scratch: every
//! member's shifted factorization must land inside the set.
//!
//! `verify_family` assembles the full machine check of the tower
//! construction for one prime: per-level reports, the closedness scan
//! over the truncated family, a nontriviality witness, and the
//! continuation certificate.
//!
//! `tower_probe` plays the same game from an arbitrary base polynomial
//! and substitution exponent t, reporting per level whether the tower
//! stays irreducible, keeps passing the substitution criterion, and
//! keeps its shifted factors inside a saturating closure.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Limits;
use crate::construct::{
    self, CriterionReport, FamilyMember, LevelReport, MemberKind,
};
use crate::error::{Error, Result};
use crate::factor::{certify_order, factorize_seeded, is_irreducible, poly_order_with};
use crate::field::FieldSpec;
use crate::oracle;
use crate::poly::Polynomial;

/// How a closure run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureStatus {
    /// Every member was expanded and nothing new appeared.
    Saturated,
    /// Some members were not expanded because they exceed the degree cap.
    TruncatedByDegree,
    /// The worklist iteration cap stopped the run.
    TruncatedByIterations,
}

impl ClosureStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            ClosureStatus::Saturated => "SATURATED",
            ClosureStatus::TruncatedByDegree => "TRUNCATED_BY_DEGREE",
            ClosureStatus::TruncatedByIterations => "TRUNCATED_BY_ITERATIONS",
        }
    }
}

/// Worklist processing order for closure computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorklistOrder {
    /// Lowest degree (canonical order) first — the default.
    DegreeAscending,
    /// Seeded-random order; exists to demonstrate order-independence.
    Shuffled { seed: u64 },
}

/// Closure engine configuration.
#[derive(Debug, Clone, Copy)]
pub struct ClosureConfig {
    pub order: WorklistOrder,
    pub limits: Limits,
}

impl ClosureConfig {
    pub fn for_prime(p: u64) -> Self {
        ClosureConfig {
            order: WorklistOrder::DegreeAscending,
            limits: Limits::for_prime(p),
        }
    }
}

/// The growing state of a closure computation: members, the factor
/// edges that produced them, and how the run ended.
#[derive(Debug, Clone)]
pub struct ClosureState {
    field: FieldSpec,
    members: BTreeSet<Polynomial>,
    /// (P, Q) edges: Q is a monic irreducible factor of P minus its
    /// constant term.
    edges: BTreeSet<(Polynomial, Polynomial)>,
    processed: BTreeSet<Polynomial>,
    status: ClosureStatus,
    iterations: u64,
}

impl ClosureState {
    pub fn new(field: FieldSpec) -> Self {
        ClosureState {
            field,
            members: BTreeSet::new(),
            edges: BTreeSet::new(),
            processed: BTreeSet::new(),
            status: ClosureStatus::Saturated,
            iterations: 0,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn members(&self) -> &BTreeSet<Polynomial> {
        &self.members
    }

    pub fn edges(&self) -> &BTreeSet<(Polynomial, Polynomial)> {
        &self.edges
    }

    pub fn status(&self) -> ClosureStatus {
        self.status
    }

    /// Total members expanded over the lifetime of this state.
    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    /// Adds seeds and works the closure to a fixpoint (or a limit).
    /// Seeds must be monic (`SeedNotMonic`) and irreducible
    /// (`SeedNotIrreducible`). The iteration cap applies per call.
    pub fn expand(&mut self, seeds: &[Polynomial], cfg: &ClosureConfig) -> Result<()> {
        for seed in seeds {
            assert_eq!(seed.field(), &self.field, "seed from a different field");
            if !seed.is_monic() {
                return Err(Error::SeedNotMonic {
                    poly: seed.to_string(),
                });
            }
            if !is_irreducible(seed) {
                return Err(Error::SeedNotIrreducible {
                    poly: seed.to_string(),
                });
            }
        }
        for seed in seeds {
            self.members.insert(seed.clone());
        }
        self.run_worklist(cfg);
        Ok(())
    }

    /// As `expand`, for seeds already known monic irreducible.
    fn expand_trusted(&mut self, seeds: &[Polynomial], cfg: &ClosureConfig) {
        for seed in seeds {
            debug_assert!(seed.is_monic());
            self.members.insert(seed.clone());
        }
        self.run_worklist(cfg);
    }

    fn run_worklist(&mut self, cfg: &ClosureConfig) {
        let pending: Vec<Polynomial> = self
            .members
            .iter()
            .filter(|m| !self.processed.contains(*m))
            .cloned()
            .collect();
        let mut queue = Worklist::new(cfg.order, pending);
        let mut expanded_this_call = 0u64;
        let mut hit_iteration_cap = false;
        while let Some(p) = queue.pop() {
            if self.processed.contains(&p) {
                continue;
            }
            if p.degree().unwrap_or(0) > cfg.limits.degree_cap {
                // Leave it unprocessed; the status sweep below sees it.
                continue;
            }
            if expanded_this_call >= cfg.limits.iter_cap {
                hit_iteration_cap = true;
                break;
            }
            expanded_this_call += 1;
            self.iterations += 1;
            let alpha = Polynomial::constant(self.field, p.constant_term());
            let shifted = p.sub(&alpha);
            for (q, _) in factorize_seeded(&shifted, cfg.limits.edf_seed).factors {
                self.edges.insert((p.clone(), q.clone()));
                if self.members.insert(q.clone()) {
                    queue.push(q);
                }
            }
            self.processed.insert(p);
        }
        self.status = if hit_iteration_cap {
            ClosureStatus::TruncatedByIterations
        } else if self.members.iter().any(|m| !self.processed.contains(m)) {
            ClosureStatus::TruncatedByDegree
        } else {
            ClosureStatus::Saturated
        };
    }

    /// GraphViz rendering of the membership graph, deterministic for a
    /// given state.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph fset {\n");
        for m in &self.members {
            out.push_str(&format!("  \"{m}\";\n"));
        }
        for (p, q) in &self.edges {
            out.push_str(&format!("  \"{p}\" -> \"{q}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Worklist with a pluggable processing order.
enum Worklist {
    Heap(BinaryHeap<Reverse<Polynomial>>),
    Shuffled { items: Vec<Polynomial>, rng: ChaCha8Rng },
}

impl Worklist {
    fn new(order: WorklistOrder, initial: Vec<Polynomial>) -> Self {
        match order {
            WorklistOrder::DegreeAscending => {
                Worklist::Heap(initial.into_iter().map(Reverse).collect())
            }
            WorklistOrder::Shuffled { seed } => Worklist::Shuffled {
                items: initial,
                rng: ChaCha8Rng::seed_from_u64(seed),
            },
        }
    }

    fn push(&mut self, p: Polynomial) {
        match self {
            Worklist::Heap(h) => h.push(Reverse(p)),
            Worklist::Shuffled { items, .. } => items.push(p),
        }
    }

    fn pop(&mut self) -> Option<Polynomial> {
        match self {
            Worklist::Heap(h) => h.pop().map(|r| r.0),
            Worklist::Shuffled { items, rng } => {
                if items.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..items.len());
                    Some(items.swap_remove(i))
                }
            }
        }
    }
}

/// Computes the closure of the seeds under "factor of (member - constant
/// term)".
pub fn closure(
    field: FieldSpec,
    seeds: &[Polynomial],
    cfg: &ClosureConfig,
) -> Result<ClosureState> {
    let mut state = ClosureState::new(field);
    state.expand(seeds, cfg)?;
    Ok(state)
}

/// One closedness violation: a member whose shifted factorization
/// escapes the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub member: Polynomial,
    pub missing_factor: Polynomial,
}

/// The certificate kind attached to a verified truncation of an
/// infinite family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfiniteCertificate {
    /// The set is a truncated substitution tower whose top levels pass
    /// the substitution criterion, so it extends to an infinite F-set.
    SubstitutionTower,
}

impl InfiniteCertificate {
    pub fn tag(&self) -> &'static str {
        match self {
            InfiniteCertificate::SubstitutionTower => "SUBSTITUTION_TOWER",
        }
    }
}

/// The verdict of an independent closedness check over an explicit
/// finite set.
#[derive(Debug, Clone)]
pub struct FSetVerdict {
    /// True when every member's shifted factorization stays inside the
    /// set and every member was actually checked.
    pub closed: bool,
    /// True for the empty set, which is closed vacuously.
    pub trivial_empty: bool,
    /// Members whose factorizations escape the set.
    pub violations: Vec<Violation>,
    /// Members too large for the degree cap, whose factorizations were
    /// not attempted.
    pub unverifiable: Vec<Polynomial>,
    /// A monic irreducible provably outside the set: the set is not
    /// "all monic irreducibles".
    pub nontrivial_witness: Option<Polynomial>,
    /// Present when the set is a verified family truncation.
    pub infinite_certificate: Option<InfiniteCertificate>,
}

/// Factorizes (member - constant term) for every member within the
/// degree cap; returns the edges, the violations, and the members left
/// unchecked.
type ScanOutcome = (
    BTreeSet<(Polynomial, Polynomial)>,
    Vec<Violation>,
    Vec<Polynomial>,
);

fn scan_members(
    field: FieldSpec,
    members: &BTreeSet<Polynomial>,
    limits: &Limits,
) -> ScanOutcome {
    let mut edges = BTreeSet::new();
    let mut violations = Vec::new();
    let mut unverifiable = Vec::new();
    for p in members {
        if p.degree().unwrap_or(0) > limits.degree_cap {
            unverifiable.push(p.clone());
            continue;
        }
        let alpha = Polynomial::constant(field, p.constant_term());
        let shifted = p.sub(&alpha);
        for (q, _) in factorize_seeded(&shifted, limits.edf_seed).factors {
            edges.insert((p.clone(), q.clone()));
            if !members.contains(&q) {
                violations.push(Violation {
                    member: p.clone(),
                    missing_factor: q,
                });
            }
        }
    }
    (edges, violations, unverifiable)
}

/// Finds a monic irreducible outside the set by scanning ascending
/// degrees in canonical order. Terminates because irreducibles exist at
/// every degree and the set is finite.
fn scan_nontrivial_witness(field: FieldSpec, members: &BTreeSet<Polynomial>) -> Polynomial {
    let max_degree = members
        .iter()
        .filter_map(|m| m.degree())
        .max()
        .unwrap_or(0);
    for d in 1..=max_degree + 1 {
        for candidate in oracle::monic_polys(field, d) {
            if !members.contains(&candidate) && is_irreducible(&candidate) {
                return candidate;
            }
        }
    }
    unreachable!("degree {} has an irreducible outside any finite set", max_degree + 1)
}

/// Independently re-checks closedness of an explicit finite set of
/// monic irreducibles (membership of every member's shifted factors),
/// and finds a nontriviality witness.
pub fn check_closed(
    field: FieldSpec,
    members: &BTreeSet<Polynomial>,
    limits: &Limits,
) -> FSetVerdict {
    let trivial_empty = members.is_empty();
    let (_, violations, unverifiable) = scan_members(field, members, limits);
    FSetVerdict {
        closed: violations.is_empty() && unverifiable.is_empty(),
        trivial_empty,
        violations,
        unverifiable,
        nontrivial_witness: Some(scan_nontrivial_witness(field, members)),
        infinite_certificate: None,
    }
}

/// The designated nontriviality witness and what was checked about it.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub poly: Polynomial,
    pub irreducible: bool,
    pub in_family: bool,
}

/// The complete machine check of the tower family for one prime.
#[derive(Debug, Clone)]
pub struct FamilyVerification {
    pub p: u64,
    pub max_level: u32,
    pub levels: Vec<LevelReport>,
    pub members: Vec<FamilyMember>,
    pub edges: Vec<(Polynomial, Polynomial)>,
    pub witness: WitnessReport,
    pub verdict: FSetVerdict,
    pub passed: bool,
}

/// Verifies the truncated family at every level: gate, degree cap,
/// per-level reports (irreducibility, certified order, substitution
/// criterion for t = 3, shift factorization identity), closedness of
/// the member set, and the nontriviality witness.
///
/// Fails with `GateFailed` outside the residue gate, with
/// `DegreeCapExceeded` when the top level is over the cap, and with
/// `ClosednessFailure` if any member's shifted factorization escapes
/// the family (which would disprove the construction).
pub fn verify_family(
    field: FieldSpec,
    max_level: u32,
    limits: &Limits,
) -> Result<FamilyVerification> {
    construct::require_gate(field)?;
    let top_degree = construct::tower_degree(max_level);
    if top_degree > limits.degree_cap as u128 {
        return Err(Error::DegreeCapExceeded {
            degree: usize::try_from(top_degree).unwrap_or(usize::MAX),
            cap: limits.degree_cap,
        });
    }

    let mut levels = Vec::new();
    for level in 0..=max_level {
        levels.push(construct::level_report(field, MemberKind::FTower, level)?);
        if field.p() != 2 {
            // Over F_2 the g tower repeats the f tower member for member.
            levels.push(construct::level_report(field, MemberKind::GTower, level)?);
        }
    }

    let members = construct::family_members(field, max_level);
    let member_set: BTreeSet<Polynomial> = members.iter().map(|m| m.poly.clone()).collect();
    let (edges, violations, unverifiable) = scan_members(field, &member_set, limits);
    if let Some(v) = violations.first() {
        return Err(Error::ClosednessFailure(format!(
            "factor {} of ({} - constant term) is outside the family",
            v.missing_factor, v.member
        )));
    }
    debug_assert!(unverifiable.is_empty(), "members are within the cap");

    let witness_poly = construct::nontriviality_witness(field);
    let witness = WitnessReport {
        irreducible: is_irreducible(&witness_poly),
        in_family: member_set.contains(&witness_poly),
        poly: witness_poly,
    };

    let verdict = FSetVerdict {
        closed: true,
        trivial_empty: false,
        violations: Vec::new(),
        unverifiable,
        nontrivial_witness: Some(scan_nontrivial_witness(field, &member_set)),
        infinite_certificate: Some(InfiniteCertificate::SubstitutionTower),
    };

    let passed = levels.iter().all(|l| l.passed()) && witness.irreducible && !witness.in_family;

    Ok(FamilyVerification {
        p: field.p(),
        max_level,
        levels,
        members,
        edges: edges.into_iter().collect(),
        witness,
        verdict,
        passed,
    })
}

/// One level of a tower probe.
#[derive(Debug, Clone)]
pub struct ProbeLevel {
    pub level: u32,
    pub poly: Polynomial,
    pub degree: usize,
    pub irreducible: bool,
    /// Certified order of the level, when it could be determined.
    pub order: Option<BigUint>,
    /// Continuation certificate for x -> x^t at this level.
    pub criterion: Option<CriterionReport>,
    /// How the closure extension for this level ended.
    pub closure_status: ClosureStatus,
    /// Irreducibles of degree >= 2, other than the level member itself,
    /// first discovered while absorbing this level's factors.
    pub escaped: Vec<Polynomial>,
    /// Closure size after absorbing this level.
    pub accumulated: usize,
    pub passed: bool,
}

/// The outcome of probing a (base, t) tower.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub p: u64,
    pub base: Polynomial,
    pub t: u64,
    pub max_level: u32,
    pub levels: Vec<ProbeLevel>,
    /// True when every level stayed irreducible, kept passing the
    /// substitution criterion, and kept its factors inside a saturating
    /// closure — the pattern the f/g towers exhibit.
    pub self_sustaining: bool,
}

/// Probes the tower base(x^(t^l)) for l = 0..=max_level.
///
/// Per level this checks irreducibility, certifies the level's order
/// (predicted as t * previous order, with an independent recomputation
/// as fallback), runs the substitution criterion for the next step, and
/// absorbs the level into a growing closure, recording any factor of
/// degree >= 2 that had not been seen before ("escaped" factors — the
/// self-referential towers produce them by design, from the opposite
/// tower).
///
/// Errors: `SeedNotMonic` / `SeedNotIrreducible` for a bad base,
/// `DegreeCapExceeded` when the top level would exceed the cap, and
/// order-computation errors for a base whose order is out of reach.
pub fn tower_probe(
    field: FieldSpec,
    base: &Polynomial,
    t: u64,
    max_level: u32,
    limits: &Limits,
) -> Result<ProbeReport> {
    assert!(t >= 2, "substitution exponents start at 2");
    if !base.is_monic() {
        return Err(Error::SeedNotMonic {
            poly: base.to_string(),
        });
    }
    if !is_irreducible(base) {
        return Err(Error::SeedNotIrreducible {
            poly: base.to_string(),
        });
    }
    let base_degree = base.degree().expect("irreducible implies nonconstant") as u128;
    let top_degree = (t as u128)
        .checked_pow(max_level)
        .and_then(|s| s.checked_mul(base_degree));
    match top_degree {
        Some(d) if d <= limits.degree_cap as u128 => {}
        _ => {
            return Err(Error::DegreeCapExceeded {
                degree: top_degree
                    .and_then(|d| usize::try_from(d).ok())
                    .unwrap_or(usize::MAX),
                cap: limits.degree_cap,
            })
        }
    }

    let base_order = poly_order_with(base, limits.rho_budget)?.order;
    let cfg = ClosureConfig {
        order: WorklistOrder::DegreeAscending,
        limits: *limits,
    };
    let mut acc = ClosureState::new(field);
    let mut levels = Vec::new();
    let mut previous_order: Option<BigUint> = Some(base_order);

    for level in 0..=max_level {
        let exponent = (t as usize).pow(level);
        let poly = base.substitute_power(exponent);
        let degree = poly.degree().unwrap();
        let irreducible = if level == 0 { true } else { is_irreducible(&poly) };

        let order = if !irreducible {
            None
        } else {
            let predicted = previous_order
                .as_ref()
                .map(|e| if level == 0 { e.clone() } else { e * t });
            match predicted {
                Some(e) if certify_order(&poly, &e)? => Some(e),
                _ => match poly_order_with(&poly, limits.rho_budget) {
                    Ok(r) => Some(r.order),
                    Err(Error::OrderBudgetExceeded(_)) => None,
                    Err(other) => return Err(other),
                },
            }
        };

        let criterion = match (&order, irreducible) {
            (Some(e), true) => Some(construct::substitution_criterion_with_order(
                &poly, t, e,
            )?),
            _ => None,
        };

        let before: BTreeSet<Polynomial> = acc.members().clone();
        if irreducible {
            acc.expand_trusted(std::slice::from_ref(&poly), &cfg);
        }
        let escaped: Vec<Polynomial> = acc
            .members()
            .iter()
            .filter(|m| {
                m.degree().unwrap_or(0) >= 2 && **m != poly && !before.contains(*m)
            })
            .cloned()
            .collect();

        let closure_status = acc.status();
        let passed = irreducible
            && criterion.as_ref().is_some_and(|c| c.passed)
            && closure_status == ClosureStatus::Saturated;

        levels.push(ProbeLevel {
            level,
            poly,
            degree,
            irreducible,
            order: order.clone(),
            criterion,
            closure_status,
            escaped,
            accumulated: acc.members().len(),
            passed,
        });
        previous_order = order;
    }

    let self_sustaining = levels.iter().all(|l| l.passed);
    Ok(ProbeReport {
        p: field.p(),
        base: base.clone(),
        t,
        max_level,
        levels,
        self_sustaining,
    })
}
