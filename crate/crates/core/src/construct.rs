//! The tower family and its per-level certification.
//!
//! Everything grows out of two quadratics: f0 = x^2 + x + 1 (order 3)
//! and g0 = x^2 - x + 1 (order 6; over F_2 the two coincide). Level l
//! of each tower substitutes x -> x^(3^l):
//!
//! ```text
//! f_l = f0(x^(3^l))   deg 2*3^l   order 3^(l+1)
//! g_l = g0(x^(3^l))   deg 2*3^l   order 2*3^(l+1)   (3^(l+1) over F_2)
//! ```
//!
//! For primes with p = 2 or 5 (mod 9) — the *residue gate* — every level
//! of both towers is irreducible, and each member minus its constant
//! term factors exactly into prior members and linears:
//!
//! ```text
//! f_l - 1 = x^(3^l) * (x + 1) * g_0 * g_1 * ... * g_(l-1)
//! g_l - 1 = x^(3^l) * (x - 1) * f_0 * f_1 * ... * f_(l-1)
//! ```
//!
//! These are integer-coefficient identities (they hold over every
//! prime field), which is what makes the family an F-set: the towers
//! plus the linears x - 1, x, x + 1 are closed under taking monic
//! irreducible factors of (member - constant term).
//!
//! Each level also carries a *substitution criterion* report
//! certifying that the next substitution x -> x^3 stays irreducible:
//! for f irreducible of degree m and order e, f(x^t) is irreducible
//! iff every prime of t divides e but not (p^m - 1)/e, and p^m = 1
//! (mod 4) whenever 4 | t. That check at the top level is the
//! machine-checkable certificate that the tower continues forever.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::{certify_order, is_irreducible, poly_order};
use crate::field::FieldSpec;
use crate::poly::Polynomial;

/// The residue gate: true when p = 2 or 5 (mod 9).
pub fn residue_gate(p: u64) -> bool {
    matches!(p % 9, 2 | 5)
}

/// Errors with `GateFailed` when the field's prime is outside the gate.
pub fn require_gate(field: FieldSpec) -> Result<()> {
    if residue_gate(field.p()) {
        Ok(())
    } else {
        Err(Error::GateFailed {
            p: field.p(),
            residue9: field.residue9(),
        })
    }
}

/// f0 = x^2 + x + 1.
pub fn base_f(field: FieldSpec) -> Polynomial {
    Polynomial::from_signed_coeffs(field, &[1, 1, 1])
}

/// g0 = x^2 - x + 1 (equal to f0 over F_2).
pub fn base_g(field: FieldSpec) -> Polynomial {
    Polynomial::from_signed_coeffs(field, &[1, -1, 1])
}

fn pow3(level: u32) -> usize {
    3usize
        .checked_pow(level)
        .expect("tower level is far beyond any degree cap")
}

/// Degree of a level-l tower member, 2 * 3^l, without overflow.
pub fn tower_degree(level: u32) -> u128 {
    2 * 3u128.checked_pow(level).expect("tower level out of range")
}

/// f_l = f0(x^(3^l)).
pub fn f_tower(field: FieldSpec, level: u32) -> Polynomial {
    base_f(field).substitute_power(pow3(level))
}

/// g_l = g0(x^(3^l)).
pub fn g_tower(field: FieldSpec, level: u32) -> Polynomial {
    base_g(field).substitute_power(pow3(level))
}

/// Which of the three shapes a family member has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MemberKind {
    FTower,
    GTower,
    Linear,
}

impl MemberKind {
    pub fn label(&self) -> &'static str {
        match self {
            MemberKind::FTower => "f",
            MemberKind::GTower => "g",
            MemberKind::Linear => "linear",
        }
    }
}

/// One member of the family: a tower level (index = l >= 0) or a linear
/// x + index (index in {-1, 0, 1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub kind: MemberKind,
    pub index: i64,
    pub poly: Polynomial,
}

/// Builds one family member, enforcing the residue gate and the degree
/// cap.
///
/// Tower indices are levels (panics when negative); linear indices must
/// be -1, 0, or 1.
pub fn make_member(
    field: FieldSpec,
    kind: MemberKind,
    index: i64,
    degree_cap: usize,
) -> Result<FamilyMember> {
    require_gate(field)?;
    let poly = match kind {
        MemberKind::FTower | MemberKind::GTower => {
            assert!(index >= 0, "tower levels are nonnegative");
            let level = u32::try_from(index).expect("tower level fits in u32");
            let degree = tower_degree(level);
            if degree > degree_cap as u128 {
                return Err(Error::DegreeCapExceeded {
                    degree: usize::try_from(degree).unwrap_or(usize::MAX),
                    cap: degree_cap,
                });
            }
            if kind == MemberKind::FTower {
                f_tower(field, level)
            } else {
                g_tower(field, level)
            }
        }
        MemberKind::Linear => {
            assert!(
                (-1..=1).contains(&index),
                "linear members are x - 1, x, and x + 1"
            );
            Polynomial::from_signed_coeffs(field, &[index, 1])
        }
    };
    Ok(FamilyMember { kind, index, poly })
}

/// The family truncated at `max_level`: f_0..f_L, g_0..g_L, and the
/// linears x - 1, x, x + 1, with duplicates removed (over F_2 the g
/// tower repeats the f tower and x - 1 repeats x + 1).
///
/// Assumes the caller has already enforced the gate and the degree cap.
pub fn family_members(field: FieldSpec, max_level: u32) -> Vec<FamilyMember> {
    let mut seen = std::collections::BTreeSet::new();
    let mut members = Vec::new();
    let mut push = |member: FamilyMember| {
        if seen.insert(member.poly.clone()) {
            members.push(member);
        }
    };
    for level in 0..=max_level {
        push(FamilyMember {
            kind: MemberKind::FTower,
            index: level as i64,
            poly: f_tower(field, level),
        });
    }
    for level in 0..=max_level {
        push(FamilyMember {
            kind: MemberKind::GTower,
            index: level as i64,
            poly: g_tower(field, level),
        });
    }
    for c in [-1i64, 0, 1] {
        push(FamilyMember {
            kind: MemberKind::Linear,
            index: c,
            poly: Polynomial::from_signed_coeffs(field, &[c, 1]),
        });
    }
    members
}

/// The order every level-l tower member is certified against:
/// 3^(l+1) for the f tower, 2 * 3^(l+1) for the g tower except over
/// F_2, where the towers coincide.
pub fn expected_tower_order(field: FieldSpec, kind: MemberKind, level: u32) -> BigUint {
    let base = BigUint::from(3u32).pow(level + 1);
    match kind {
        MemberKind::FTower => base,
        MemberKind::GTower => {
            if field.p() == 2 {
                base
            } else {
                base * 2u32
            }
        }
        MemberKind::Linear => panic!("linear members have no tower order"),
    }
}

/// Why the substitution criterion rejected a (polynomial, t) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionFailure {
    /// Some prime of t does not divide the order e.
    TPrimeNotDivE,
    /// Some prime of t divides the cofactor (p^m - 1)/e.
    TPrimeDividesCofactor,
    /// 4 | t but p^m != 1 (mod 4).
    Mod4Clause,
}

impl CriterionFailure {
    pub fn tag(&self) -> &'static str {
        match self {
            CriterionFailure::TPrimeNotDivE => "T_PRIME_NOT_DIV_E",
            CriterionFailure::TPrimeDividesCofactor => "T_PRIME_DIVIDES_COFACTOR",
            CriterionFailure::Mod4Clause => "MOD4_CLAUSE",
        }
    }
}

/// Everything the substitution criterion looked at, preserved so the
/// verdict can be re-checked by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    /// Degree m of the input.
    pub degree: usize,
    /// Certified order e of the input.
    pub order: BigUint,
    /// The substitution exponent under test.
    pub t: u64,
    /// Distinct primes of t, ascending.
    pub t_primes: Vec<u64>,
    /// (p^m - 1) / e.
    pub cofactor: BigUint,
    /// True when f(x^t) is certified irreducible.
    pub passed: bool,
    /// Distinct failure reasons, in first-hit order; empty iff passed.
    pub failures: Vec<CriterionFailure>,
}

/// The criterion test given an already-certified order e = ord(x mod f).
fn criterion_given_order(f: &Polynomial, t: u64, e: &BigUint) -> Result<CriterionReport> {
    assert!(t >= 2, "substitution exponents start at 2");
    let m = f.degree().expect("criterion input is nonconstant");
    assert!(m >= 1, "criterion input is nonconstant");
    let p = f.field().p();
    let group = BigUint::from(p).pow(m as u32) - 1u32;
    assert!(
        (&group % e).is_zero(),
        "certified order must divide p^m - 1"
    );
    let cofactor = &group / e;
    let t_primes: Vec<u64> = crate::field::int_factorize(&BigUint::from(t))?
        .into_iter()
        .map(|(q, _)| u64::try_from(&q).expect("prime divisor of a u64 fits in u64"))
        .collect();
    let mut failures = Vec::new();
    let fail = |failures: &mut Vec<CriterionFailure>, f: CriterionFailure| {
        if !failures.contains(&f) {
            failures.push(f);
        }
    };
    for &q in &t_primes {
        let qq = BigUint::from(q);
        if !(e % &qq).is_zero() {
            fail(&mut failures, CriterionFailure::TPrimeNotDivE);
        } else if (&cofactor % &qq).is_zero() {
            fail(&mut failures, CriterionFailure::TPrimeDividesCofactor);
        }
    }
    // p^m = 1 (mod 4) iff p^m - 1 = 0 (mod 4).
    if t % 4 == 0 && !(&group % 4u32).is_zero() {
        fail(&mut failures, CriterionFailure::Mod4Clause);
    }
    Ok(CriterionReport {
        degree: m,
        order: e.clone(),
        t,
        t_primes,
        cofactor,
        passed: failures.is_empty(),
        failures,
    })
}

/// Substitution criterion for f(x^t), computing ord(x mod f) from
/// scratch: f must be irreducible and small enough that p^m - 1 factors
/// within budget (`NotIrreducible` / `OrderBudgetExceeded` otherwise).
pub fn substitution_criterion(f: &Polynomial, t: u64) -> Result<CriterionReport> {
    let order = poly_order(f)?;
    criterion_given_order(f, t, &order.order)
}

/// Substitution criterion with a caller-supplied order, for inputs
/// whose group order p^m - 1 is far too large to factor but whose order
/// is known in closed form. The claimed order is still certified
/// directly (x^e = 1, x^(e/q) != 1 for primes q | e); the certificate
/// failing means the caller's closed form is wrong, which is a bug, not
/// data — so it panics.
pub fn substitution_criterion_with_order(
    f: &Polynomial,
    t: u64,
    e: &BigUint,
) -> Result<CriterionReport> {
    assert!(
        certify_order(f, e)?,
        "order certificate failed: ord(x mod {f}) != {e}"
    );
    criterion_given_order(f, t, e)
}

/// Checks the exact factorization of (member - 1) for a level-l tower
/// member by multiplying the claimed right-hand side back together:
///
/// ```text
/// f_l - 1 = x^(3^l) * (x + 1) * g_0 * ... * g_(l-1)
/// g_l - 1 = x^(3^l) * (x - 1) * f_0 * ... * f_(l-1)
/// ```
///
/// True over every prime field, not just gated ones.
pub fn shift_factorization_identity(field: FieldSpec, kind: MemberKind, level: u32) -> bool {
    let (member, linear_shift): (Polynomial, i64) = match kind {
        MemberKind::FTower => (f_tower(field, level), 1),
        MemberKind::GTower => (g_tower(field, level), -1),
        MemberKind::Linear => panic!("the shift identity is about tower members"),
    };
    let lhs = member.sub(&Polynomial::one(field));
    let mut rhs = Polynomial::monomial(field, pow3(level))
        .mul(&Polynomial::from_signed_coeffs(field, &[linear_shift, 1]));
    for i in 0..level {
        let prior = match kind {
            MemberKind::FTower => g_tower(field, i),
            MemberKind::GTower => f_tower(field, i),
            MemberKind::Linear => unreachable!(),
        };
        rhs = rhs.mul(&prior);
    }
    lhs == rhs
}

/// Everything verified about one tower level.
#[derive(Debug, Clone)]
pub struct LevelReport {
    pub level: u32,
    pub kind: MemberKind,
    pub poly: Polynomial,
    pub degree: usize,
    pub monic: bool,
    pub irreducible: bool,
    /// The continuation certificate for x -> x^3 at this level; absent
    /// only if the level itself failed irreducibility.
    pub criterion: Option<CriterionReport>,
    pub shift_identity: bool,
}

impl LevelReport {
    pub fn passed(&self) -> bool {
        self.monic
            && self.irreducible
            && self.shift_identity
            && self.criterion.as_ref().is_some_and(|c| c.passed)
    }
}

/// Runs every per-level check on one tower member: monicity,
/// irreducibility, the order-certified substitution criterion for
/// t = 3, and the shift factorization identity.
///
/// Assumes the gate and cap were already enforced.
pub fn level_report(field: FieldSpec, kind: MemberKind, level: u32) -> Result<LevelReport> {
    let poly = match kind {
        MemberKind::FTower => f_tower(field, level),
        MemberKind::GTower => g_tower(field, level),
        MemberKind::Linear => panic!("level reports are about tower members"),
    };
    let degree = poly.degree().expect("tower members are nonconstant");
    let monic = poly.is_monic();
    let irreducible = is_irreducible(&poly);
    let criterion = if irreducible {
        Some(substitution_criterion_with_order(
            &poly,
            3,
            &expected_tower_order(field, kind, level),
        )?)
    } else {
        None
    };
    let shift_identity = shift_factorization_identity(field, kind, level);
    Ok(LevelReport {
        level,
        kind,
        poly,
        degree,
        monic,
        irreducible,
        criterion,
        shift_identity,
    })
}

/// A monic irreducible that is provably outside the family: x + 2 for
/// p > 2 (the family's only linears are x - 1, x, x + 1), and
/// x^3 + x + 1 for p = 2 (the family has no member of degree 3).
///
/// Only meaningful for gated primes.
pub fn nontriviality_witness(field: FieldSpec) -> Polynomial {
    debug_assert!(residue_gate(field.p()));
    if field.p() == 2 {
        Polynomial::from_signed_coeffs(field, &[1, 1, 0, 1])
    } else {
        Polynomial::from_signed_coeffs(field, &[2, 1])
    }
}
