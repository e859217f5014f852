//! Irreducibility testing, polynomial factorization, and multiplicative
//! order.
//!
//! Irreducibility uses the Frobenius-chain test: f of degree n is
//! irreducible iff x^(p^n) = x (mod f) and gcd(x^(p^(n/r)) - x, f) = 1
//! for every prime r dividing n. Factorization is the classical
//! squarefree / distinct-degree / equal-degree pipeline; the equal-degree
//! stage is randomized but driven by a seeded generator, so results are
//! reproducible, and factors are always reported in the canonical order
//! (degree, then ascending coefficient sequence).
//!
//! One identity does the heavy lifting everywhere: over F_p,
//! h(x)^p = h(x^p), so a Frobenius step can be done by coefficient
//! spreading plus one reduction instead of log2(p) modular squarings.
//! Against a sparse modulus (the towers are trinomials) that reduction
//! touches only the nonzero coefficients, which is what makes
//! certification at degree several thousand take seconds instead of
//! hours.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::DEFAULT_EDF_SEED;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;

/// Largest exponent for which x^e mod f is computed by reducing the
/// literal monomial (one sparse division) rather than by square-and-
/// multiply.
const MONOMIAL_ROUTE_LIMIT: u64 = 1_000_000;

/// One Frobenius step: h^p mod f.
///
/// Over F_p, h(x)^p = h(x^p), so when the modulus is sparse (or p is
/// tiny) it is cheaper to spread the coefficients of h by a factor of p
/// and reduce once than to run log2(p) modular squarings. The
/// substitution route costs about p * deg(f) * terms(f) coefficient
/// operations, the powmod route about log2(p) * deg(f)^2; we take the
/// substitution route when it wins and its intermediate fits in memory.
fn frobenius_step(h: &Polynomial, f: &Polynomial) -> Polynomial {
    let field = *f.field();
    let p = field.p();
    let df = f.degree().expect("modulus has degree >= 1") as u128;
    let dh = h.degree().unwrap_or(0) as u128;
    let bits = (64 - p.leading_zeros()) as u128;
    let substitution_wins =
        (p as u128 - 1) * f.nonzero_terms() as u128 <= 3 * bits * df;
    let intermediate_fits = (p as u128) * dh <= 4_000_000;
    if substitution_wins && intermediate_fits {
        h.substitute_power(p as usize).divrem(f).1
    } else {
        h.powmod(&BigUint::from(p), f)
    }
}

/// Distinct prime divisors of a small integer, ascending.
fn small_prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over F_p by the Frobenius-chain test.
///
/// Constants and zero are not irreducible; a nonzero leading coefficient
/// is normalized away, so non-monic inputs are judged by their monic
/// associate.
pub fn is_irreducible(f: &Polynomial) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let field = *f.field();
    let x = Polynomial::x(field);
    // Checkpoints n/r for the prime divisors r of n, walked in one pass.
    let mut checkpoints: Vec<usize> = small_prime_divisors(n).iter().map(|r| n / r).collect();
    checkpoints.sort_unstable();
    let mut next_checkpoint = 0;
    let mut h = x.clone();
    for k in 1..=n {
        h = frobenius_step(&h, &f);
        if next_checkpoint < checkpoints.len() && checkpoints[next_checkpoint] == k {
            next_checkpoint += 1;
            let diff = h.sub(&x);
            if diff.is_zero() || !diff.gcd(&f).is_one() {
                return false;
            }
        }
    }
    h == x
}

/// Squarefree decomposition: pairwise-coprime monic squarefree parts
/// with their multiplicities, such that the product of part^multiplicity
/// is the monic associate of the input. Parts are returned in canonical
/// order. Constants decompose into no parts.
pub fn squarefree_factorization(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut parts = Vec::new();
    if f.degree().unwrap_or(0) >= 1 {
        squarefree_into(&f.monic(), 1, &mut parts);
        parts.sort_by(|a, b| a.0.cmp(&b.0));
    }
    parts
}

fn squarefree_into(f: &Polynomial, scale: u32, parts: &mut Vec<(Polynomial, u32)>) {
    let p = f.field().p();
    // gcd(f, f') collects each factor to its multiplicity minus one,
    // except factors whose multiplicity is divisible by p, which it
    // keeps whole (the derivative kills them). w is then the product of
    // the distinct factors with multiplicity not divisible by p; the
    // loop peels them off one multiplicity level at a time.
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let part = w.divrem(&y).0;
        if !part.is_one() {
            parts.push((part, i * scale));
        }
        w = y.clone();
        if !y.is_one() {
            c = c.divrem(&y).0;
        }
        i += 1;
    }
    if !c.is_one() {
        // Everything left is a p-th power; over the prime field the
        // p-th root keeps the same coefficients, p positions closer.
        let root = pth_root(&c);
        let p32 = u32::try_from(p).expect("p-th power multiplicities need p <= degree");
        squarefree_into(&root, scale * p32, parts);
    }
}

/// The p-th root of a polynomial that is a p-th power: over F_p the
/// coefficients satisfy a^p = a, so the root just gathers every p-th
/// coefficient.
fn pth_root(f: &Polynomial) -> Polynomial {
    let field = *f.field();
    let p = field.p() as usize;
    let d = f.degree().expect("p-th root of a nonzero polynomial");
    debug_assert_eq!(d % p, 0, "degree of a p-th power is divisible by p");
    let coeffs: Vec<FieldElement> = (0..=d / p).map(|j| f.coeff(j * p)).collect();
    debug_assert!(
        (0..=d).all(|k| k % p == 0 || f.coeff(k).is_zero()),
        "input is not a p-th power"
    );
    let mut root = Polynomial::zero(field);
    for (j, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            root = root.add(&Polynomial::monomial(field, j).mul_scalar(c));
        }
    }
    root
}

/// Distinct-degree split of a monic squarefree polynomial: parts
/// (product of all irreducible factors of degree d, d) in ascending d.
fn distinct_degree_split(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = *f.field();
    let x = Polynomial::x(field);
    let mut parts = Vec::new();
    let mut rem = f.clone();
    let mut h = x.divrem(&rem).1;
    let mut d = 0;
    while rem.degree().unwrap_or(0) >= 1 {
        let n = rem.degree().unwrap();
        d += 1;
        if 2 * d > n {
            // Any further factor would have degree > n/2 twice over:
            // what is left is a single irreducible.
            parts.push((rem, n));
            break;
        }
        h = frobenius_step(&h, &rem);
        let diff = h.sub(&x);
        let g = if diff.is_zero() {
            rem.clone()
        } else {
            diff.gcd(&rem)
        };
        if !g.is_one() {
            rem = rem.divrem(&g).0;
            parts.push((g, d));
            if rem.degree().unwrap_or(0) >= 1 {
                h = h.divrem(&rem).1;
            }
        }
    }
    parts
}

/// Equal-degree split (Cantor–Zassenhaus): factors a monic squarefree
/// product of irreducibles all of degree d.
fn equal_degree_split(
    f: &Polynomial,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Polynomial>,
) {
    let n = f.degree().expect("equal-degree input is nonconstant");
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = *f.field();
    let p = field.p();
    let half_group: BigUint = if p > 2 {
        (BigUint::from(p).pow(d as u32) - 1u32) / 2u32
    } else {
        BigUint::one() // unused in characteristic 2
    };
    for _ in 0..10_000 {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = Polynomial::from_coeffs(field, &coeffs);
        if a.is_zero() {
            continue;
        }
        let candidate = if p == 2 {
            // Trace map: T(a) = a + a^2 + a^4 + ... + a^(2^(d-1)) lands
            // in F_2 inside each factor's residue field.
            let mut b = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                b = b.mul(&b).divrem(f).1;
                acc = acc.add(&b);
            }
            acc
        } else {
            // a^((p^d - 1)/2) is +-1 inside each factor's residue field;
            // subtracting 1 keeps exactly the factors where it is +1.
            let b = a.powmod(&half_group, f);
            b.sub(&Polynomial::one(field))
        };
        let g = if candidate.is_zero() {
            f.clone()
        } else {
            candidate.gcd(f)
        };
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let rest = f.divrem(&g).0;
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&rest, d, rng, out);
            return;
        }
    }
    panic!("equal-degree splitting did not converge; input was not a product of degree-{d} irreducibles");
}

/// A complete factorization: `unit * product(factor^multiplicity)`
/// reconstructs the input. Factors are monic irreducible and listed in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationResult {
    field: FieldSpec,
    /// Leading coefficient of the input.
    pub unit: FieldElement,
    /// Monic irreducible factors with multiplicities, canonically ordered.
    pub factors: Vec<(Polynomial, u32)>,
}

impl FactorizationResult {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Multiplies the factorization back together.
    pub fn reconstruct(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.field, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Complete factorization with the default equal-degree seed.
///
/// Panics on the zero polynomial.
pub fn factorize(f: &Polynomial) -> FactorizationResult {
    factorize_seeded(f, DEFAULT_EDF_SEED)
}

/// Complete factorization; `edf_seed` drives the equal-degree stage, and
/// any seed yields the same (canonically ordered) result.
///
/// Panics on the zero polynomial.
pub fn factorize_seeded(f: &Polynomial, edf_seed: u64) -> FactorizationResult {
    let field = *f.field();
    let unit = f.leading_coeff().expect("cannot factor the zero polynomial");
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(edf_seed);
    for (squarefree, mult) in squarefree_factorization(f) {
        for (part, d) in distinct_degree_split(&squarefree) {
            let mut irreducibles = Vec::new();
            equal_degree_split(&part, d, &mut rng, &mut irreducibles);
            for irred in irreducibles {
                factors.push((irred, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    FactorizationResult {
        field,
        unit,
        factors,
    }
}

/// x^e mod f, taking the sparse single-division route for small e.
fn x_power_mod(e: &BigUint, f: &Polynomial) -> Polynomial {
    let field = *f.field();
    match u64::try_from(e) {
        Ok(small) if small <= MONOMIAL_ROUTE_LIMIT => {
            Polynomial::monomial(field, small as usize).divrem(f).1
        }
        _ => Polynomial::x(field).powmod(e, f),
    }
}

/// Checks the exact order certificate: ord(x mod f) = e iff x^e = 1 and
/// x^(e/q) != 1 for every prime q dividing e.
///
/// The certificate needs the prime divisors of e, so e must be within
/// reach of the integer factorizer (the orders this crate certifies are
/// 3-smooth, where this is instant).
pub fn certify_order(f: &Polynomial, e: &BigUint) -> Result<bool> {
    assert!(!Zero::is_zero(e), "order certificates need e >= 1");
    let f = f.monic();
    if !x_power_mod(e, &f).is_one() {
        return Ok(false);
    }
    for (q, _) in crate::field::int_factorize(e)? {
        if x_power_mod(&(e / &q), &f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The multiplicative order of a root of an irreducible polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderResult {
    /// ord(x mod f): the least e >= 1 with x^e = 1 (mod f).
    pub order: BigUint,
    /// Degree of the input.
    pub degree: usize,
}

/// Multiplicative order with the default integer-factoring budget.
pub fn poly_order(f: &Polynomial) -> Result<OrderResult> {
    poly_order_with(f, crate::config::DEFAULT_RHO_BUDGET)
}

/// The order of x modulo an irreducible f: factor p^m - 1, then strip
/// prime factors from the exponent while x still powers to 1.
///
/// Errors: `ConstantInput` for degree < 1, `ZeroConstantTerm` when x is
/// not invertible mod f, `NotIrreducible` when f is not irreducible, and
/// `OrderBudgetExceeded` when p^m - 1 will not factor within budget.
/// Non-monic inputs are normalized.
pub fn poly_order_with(f: &Polynomial, rho_budget: u64) -> Result<OrderResult> {
    let f = f.monic();
    let Some(m) = f.degree() else {
        return Err(Error::ConstantInput);
    };
    if m == 0 {
        return Err(Error::ConstantInput);
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !is_irreducible(&f) {
        return Err(Error::NotIrreducible);
    }
    let p = f.field().p();
    let group = BigUint::from(p).pow(m as u32) - 1u32;
    let factors = crate::field::int_factorize_with(&group, rho_budget).map_err(|e| match e {
        Error::FactorizationTimeout { cofactor } => Error::OrderBudgetExceeded(format!(
            "factoring the group order p^{m} - 1 stalled on a {}-bit cofactor",
            cofactor.bits()
        )),
        other => other,
    })?;
    let mut e = group;
    for (q, a) in factors {
        for _ in 0..a {
            let candidate = &e / &q;
            if x_power_mod(&candidate, &f).is_one() {
                e = candidate;
            } else {
                break;
            }
        }
    }
    Ok(OrderResult {
        order: e,
        degree: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn poly(p: u64, coeffs: &[i64]) -> Polynomial {
        Polynomial::from_signed_coeffs(gf(p), coeffs)
    }

    fn parse(p: u64, s: &str) -> Polynomial {
        Polynomial::parse(gf(p), s).unwrap()
    }

    #[test]
    fn irreducibility_matches_the_oracle_exhaustively() {
        for (p, max_d) in [(2u64, 6usize), (3, 4), (5, 3)] {
            let field = gf(p);
            for d in 1..=max_d {
                for f in oracle::monic_polys(field, d) {
                    assert_eq!(
                        is_irreducible(&f),
                        oracle::is_irreducible(&f),
                        "p = {p}, f = {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadratic_base_cases() {
        // x^2 + x + 1 is irreducible exactly when p != 1 (mod 3) fails;
        // these specific primes matter downstream.
        assert!(is_irreducible(&poly(2, &[1, 1, 1])));
        assert!(is_irreducible(&poly(5, &[1, 1, 1])));
        assert!(!is_irreducible(&poly(3, &[1, 1, 1]))); // (x - 1)^2
        assert!(!is_irreducible(&poly(7, &[1, 1, 1])));
        assert!(!is_irreducible(&poly(13, &[1, 1, 1])));
        assert!(is_irreducible(&poly(5, &[1, -1, 1])));
        assert!(!is_irreducible(&poly(2, &[1])));
        assert!(!is_irreducible(&Polynomial::zero(gf(2))));
        // Non-monic inputs are normalized first.
        assert!(is_irreducible(&poly(5, &[2, 2, 2])));
    }

    #[test]
    fn tower_levels_are_irreducible_where_the_gate_holds() {
        // f_3 = x^54 + x^27 + 1.
        let f3 = poly(5, &[1, 1, 1]).substitute_power(27);
        assert!(is_irreducible(&f3));
        let f3_2 = poly(2, &[1, 1, 1]).substitute_power(27);
        assert!(is_irreducible(&f3_2));
        // Over F_7 (7 = 7 mod 9, outside the gate) even f_0 fails.
        assert!(!is_irreducible(&poly(7, &[1, 1, 1])));
    }

    #[test]
    fn frobenius_step_agrees_with_powmod() {
        let f = poly(5, &[2, 0, 1, 3, 1]);
        let h = poly(5, &[1, 4, 2, 2]);
        assert_eq!(
            frobenius_step(&h, &f),
            h.powmod(&BigUint::from(5u32), &f)
        );
        let f2 = poly(2, &[1, 1, 0, 0, 0, 0, 1]);
        let h2 = poly(2, &[0, 1, 1, 1, 0, 1]);
        assert_eq!(
            frobenius_step(&h2, &f2),
            h2.powmod(&BigUint::from(2u32), &f2)
        );
    }

    #[test]
    fn squarefree_decomposition_golden() {
        // x^6 + x^3 = x^3 (x^3 + 1) over F_2.
        let parts = squarefree_factorization(&poly(2, &[0, 0, 0, 1, 0, 0, 1]));
        assert_eq!(
            parts,
            vec![(poly(2, &[0, 1]), 3), (poly(2, &[1, 0, 0, 1]), 1)]
        );
        // A pure p-th power: x^6 + x^3 = (x^2 + x)^3 over F_3.
        let parts = squarefree_factorization(&poly(3, &[0, 0, 0, 1, 0, 0, 1]));
        assert_eq!(parts, vec![(poly(3, &[0, 1, 1]), 3)]);
        // Squarefree input comes back whole.
        let parts = squarefree_factorization(&poly(5, &[1, 1, 1]));
        assert_eq!(parts, vec![(poly(5, &[1, 1, 1]), 1)]);
        // Constants decompose into nothing.
        assert!(squarefree_factorization(&poly(5, &[3])).is_empty());
    }

    #[test]
    fn squarefree_decomposition_of_a_tall_tower_difference() {
        // f_7 - 1 = x^4374 + x^2187 = x^2187 (x^2187 + 1) over F_2.
        let f7 = poly(2, &[1, 1, 1]).substitute_power(2187);
        let shifted = f7.sub(&Polynomial::one(gf(2)));
        let parts = squarefree_factorization(&shifted);
        let x2187_plus_1 = Polynomial::monomial(gf(2), 2187).add(&Polynomial::one(gf(2)));
        assert_eq!(
            parts,
            vec![(poly(2, &[0, 1]), 2187), (x2187_plus_1, 1)]
        );
    }

    #[test]
    fn squarefree_parts_reconstruct() {
        // (x+1)^2 (x^2+x+1)^3 x over F_2, assembled then decomposed.
        let x = poly(2, &[0, 1]);
        let x1 = poly(2, &[1, 1]);
        let f0 = poly(2, &[1, 1, 1]);
        let input = x
            .mul(&x1)
            .mul(&x1)
            .mul(&f0)
            .mul(&f0)
            .mul(&f0);
        let parts = squarefree_factorization(&input);
        let mut acc = Polynomial::one(gf(2));
        for (part, m) in &parts {
            for _ in 0..*m {
                acc = acc.mul(part);
            }
        }
        assert_eq!(acc, input);
        // x and (x+1) share multiplicity... no: x has 1, x+1 has 2, f0 has 3.
        assert_eq!(
            parts,
            vec![(x, 1), (x1, 2), (f0, 3)]
        );
    }

    #[test]
    fn factorization_golden_f17() {
        // x^6 + x^3 + 1 over F_17 splits into three quadratics.
        let result = factorize(&parse(17, "x^6+x^3+1"));
        assert_eq!(result.unit.value(), 1);
        assert_eq!(
            result.factors,
            vec![
                (parse(17, "x^2+3x+1"), 1),
                (parse(17, "x^2+4x+1"), 1),
                (parse(17, "x^2+10x+1"), 1),
            ]
        );
        assert_eq!(result.reconstruct(), parse(17, "x^6+x^3+1"));
    }

    #[test]
    fn factorization_golden_f2() {
        let result = factorize(&parse(2, "x^6+x^3"));
        assert_eq!(
            result.factors,
            vec![
                (parse(2, "x"), 3),
                (parse(2, "x+1"), 1),
                (parse(2, "x^2+x+1"), 1),
            ]
        );
        // Both cubic irreducibles over F_2, via the char-2 trace split.
        // Canonical order compares ascending coefficient sequences, so
        // x^3+x^2+1 = [1,0,1,1] sorts before x^3+x+1 = [1,1,0,1].
        let product = parse(2, "x^3+x+1").mul(&parse(2, "x^3+x^2+1"));
        let result = factorize(&product);
        assert_eq!(
            result.factors,
            vec![(parse(2, "x^3+x^2+1"), 1), (parse(2, "x^3+x+1"), 1)]
        );
    }

    #[test]
    fn factorization_tracks_units_and_constants() {
        let result = factorize(&parse(5, "3x^2+3"));
        assert_eq!(result.unit.value(), 3);
        assert_eq!(
            result.factors,
            vec![(parse(5, "x+2"), 1), (parse(5, "x+3"), 1)]
        );
        assert_eq!(result.reconstruct(), parse(5, "3x^2+3"));
        let result = factorize(&parse(5, "4"));
        assert_eq!(result.unit.value(), 4);
        assert!(result.factors.is_empty());
    }

    #[test]
    fn factorization_matches_the_oracle_exhaustively() {
        for (p, max_d) in [(2u64, 4usize), (3, 3)] {
            let field = gf(p);
            for d in 1..=max_d {
                for f in oracle::monic_polys(field, d) {
                    let fast = factorize(&f);
                    let (unit, slow) = oracle::factorize(&f);
                    assert_eq!(fast.unit, unit, "p = {p}, f = {f}");
                    assert_eq!(fast.factors, slow, "p = {p}, f = {f}");
                }
            }
        }
    }

    #[test]
    fn factorization_is_seed_independent() {
        let f = parse(17, "x^6+x^3+1");
        let a = factorize_seeded(&f, 1);
        let b = factorize_seeded(&f, 0xDEAD_BEEF);
        assert_eq!(a, b);
    }

    #[test]
    fn order_of_the_base_quadratics() {
        // f_0 = x^2+x+1 has order 3; g_0 = x^2-x+1 has order 6 (p > 2).
        assert_eq!(
            poly_order(&poly(2, &[1, 1, 1])).unwrap().order,
            BigUint::from(3u32)
        );
        assert_eq!(
            poly_order(&poly(5, &[1, 1, 1])).unwrap().order,
            BigUint::from(3u32)
        );
        assert_eq!(
            poly_order(&poly(5, &[1, -1, 1])).unwrap().order,
            BigUint::from(6u32)
        );
        assert_eq!(
            poly_order(&poly(23, &[1, -1, 1])).unwrap().order,
            BigUint::from(6u32)
        );
    }

    #[test]
    fn order_of_linears() {
        // x - 1 has order 1; x + 1 has order 2; x - 2 has order 4 over F_5.
        assert_eq!(
            poly_order(&poly(5, &[-1, 1])).unwrap().order,
            BigUint::from(1u32)
        );
        assert_eq!(
            poly_order(&poly(5, &[1, 1])).unwrap().order,
            BigUint::from(2u32)
        );
        assert_eq!(
            poly_order(&poly(5, &[-2, 1])).unwrap().order,
            BigUint::from(4u32)
        );
        // x^2 + 1 over F_7: roots are primitive fourth roots of unity.
        assert_eq!(
            poly_order(&poly(7, &[1, 0, 1])).unwrap().order,
            BigUint::from(4u32)
        );
    }

    #[test]
    fn order_error_surface() {
        assert!(matches!(
            poly_order(&poly(5, &[3])),
            Err(Error::ConstantInput)
        ));
        assert!(matches!(
            poly_order(&poly(5, &[0, 1])),
            Err(Error::ZeroConstantTerm)
        ));
        assert!(matches!(
            poly_order(&poly(5, &[-1, 0, 1])), // x^2 - 1 = (x-1)(x+1)
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn order_certificates() {
        let f0 = poly(2, &[1, 1, 1]);
        assert!(certify_order(&f0, &BigUint::from(3u32)).unwrap());
        assert!(!certify_order(&f0, &BigUint::from(6u32)).unwrap());
        assert!(!certify_order(&f0, &BigUint::from(2u32)).unwrap());
        // f_3 = f_0(x^27) over F_2 has order 3^4 = 81.
        let f3 = f0.substitute_power(27);
        assert!(certify_order(&f3, &BigUint::from(81u32)).unwrap());
        assert!(!certify_order(&f3, &BigUint::from(27u32)).unwrap());
        assert!(!certify_order(&f3, &BigUint::from(243u32)).unwrap());
        // g_3 = g_0(x^27) over F_5 has order 2 * 3^4 = 162.
        let g3 = poly(5, &[1, -1, 1]).substitute_power(27);
        assert!(certify_order(&g3, &BigUint::from(162u32)).unwrap());
        assert!(!certify_order(&g3, &BigUint::from(81u32)).unwrap());
        assert!(!certify_order(&g3, &BigUint::from(54u32)).unwrap());
    }

    #[test]
    fn order_respects_the_factoring_budget() {
        // Degree 486 over F_59: p^m - 1 has ~2800 bits and no hope of
        // factoring, so the order command must fail fast and loudly.
        let f5 = poly(59, &[1, 1, 1]).substitute_power(243);
        match poly_order(&f5) {
            Err(Error::OrderBudgetExceeded(msg)) => {
                assert!(msg.contains("p^486"), "{msg}");
            }
            other => panic!("expected OrderBudgetExceeded, got {other:?}"),
        }
    }
}
