//! Brute-force reference implementations.
//!
//! Everything here works by exhaustive enumeration and trial division —
//! no Frobenius maps, no gcd tricks — so the test suites can check the
//! fast paths in [`crate::factor`] against code too simple to share a
//! bug with them. Feasible only for small p and small degree; the fast
//! paths never call into this module.

use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;

/// All monic polynomials of exactly the given degree, in canonical
/// order (ascending lexicographic on the coefficient sequence).
pub fn monic_polys(field: FieldSpec, degree: usize) -> Vec<Polynomial> {
    let p = field.p();
    let count = (p as u128)
        .checked_pow(degree as u32)
        .expect("enumeration size overflows");
    let count = usize::try_from(count).expect("enumeration size overflows");
    let mut out = Vec::with_capacity(count);
    // Count through the p^degree lower-coefficient vectors in base p.
    let mut lower = vec![0u64; degree];
    loop {
        let mut coeffs: Vec<u64> = lower.clone();
        coeffs.push(1);
        out.push(Polynomial::from_coeffs(field, &coeffs));
        let mut k = 0;
        loop {
            if k == degree {
                return out;
            }
            lower[k] += 1;
            if lower[k] < p {
                break;
            }
            lower[k] = 0;
            k += 1;
        }
    }
}

/// All monic irreducibles of exactly the given degree, in canonical
/// order, found by trial division against every lower-degree monic
/// irreducible.
pub fn monic_irreducibles(field: FieldSpec, degree: usize) -> Vec<Polynomial> {
    irreducible_table(field, degree)
        .pop()
        .expect("degree >= 1")
}

/// `table[d - 1]` holds the monic irreducibles of degree d, for d up to
/// and including `max_degree`.
fn irreducible_table(field: FieldSpec, max_degree: usize) -> Vec<Vec<Polynomial>> {
    assert!(max_degree >= 1, "irreducibles have degree >= 1");
    let mut table: Vec<Vec<Polynomial>> = Vec::with_capacity(max_degree);
    for d in 1..=max_degree {
        let survivors = monic_polys(field, d)
            .into_iter()
            .filter(|f| {
                !table
                    .iter()
                    .take(d / 2)
                    .flatten()
                    .any(|q| f.divrem(q).1.is_zero())
            })
            .collect();
        table.push(survivors);
    }
    table
}

/// True when the polynomial is irreducible (degree >= 1 and no monic
/// irreducible factor of degree at most half its own).
pub fn is_irreducible(poly: &Polynomial) -> bool {
    let Some(d) = poly.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let table = irreducible_table(*poly.field(), d / 2);
    !table
        .iter()
        .flatten()
        .any(|q| poly.divrem(q).1.is_zero())
}

/// Complete factorization by trial division: the unit (leading
/// coefficient) and the monic irreducible factors with multiplicities,
/// in canonical order.
///
/// Panics on the zero polynomial.
pub fn factorize(poly: &Polynomial) -> (FieldElement, Vec<(Polynomial, u32)>) {
    let unit = poly.leading_coeff().expect("cannot factor zero");
    let mut rem = poly.monic();
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    let mut d = 1;
    while rem.degree().unwrap_or(0) >= 1 {
        let deg_rem = rem.degree().unwrap();
        if d > deg_rem / 2 {
            // What is left is irreducible.
            factors.push((rem.clone(), 1));
            break;
        }
        for q in monic_irreducibles(*rem.field(), d) {
            let mut mult = 0u32;
            loop {
                let (quot, r) = rem.divrem(&q);
                if !r.is_zero() {
                    break;
                }
                rem = quot;
                mult += 1;
            }
            if mult > 0 {
                factors.push((q, mult));
            }
        }
        d += 1;
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    (unit, factors)
}
