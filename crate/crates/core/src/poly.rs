//! Dense univariate polynomials over a prime field.
//!
//! Coefficients are stored in ascending degree order with no trailing
//! zeros; the zero polynomial is the empty coefficient vector and its
//! degree is `None`. Multiplication and division are schoolbook — at the
//! degrees the default caps allow, the simple loops beat the constant
//! factors of anything fancier, and the division loop walks only the
//! nonzero coefficients of the divisor, which makes reduction modulo the
//! sparse tower trinomials cheap.
//!
//! Binary operations panic when the operands live in different fields,
//! when dividing by the zero polynomial, on `gcd(0, 0)`, and on a modulus
//! of degree < 1 in `powmod`; those are caller bugs, not data errors.

mod text;

use num_bigint::BigUint;

use crate::field::{FieldElement, FieldSpec};

/// The canonical ordering used everywhere factors or members are listed:
/// by degree, then lexicographically on the ascending coefficient
/// sequence. (Polynomials over different fields order by p first, so the
/// ordering is total.)
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.field
            .p()
            .cmp(&other.field.p())
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Polynomial {
    pub fn zero(field: FieldSpec) -> Polynomial {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Polynomial {
        Polynomial::constant(field, FieldElement::ONE)
    }

    pub fn constant(field: FieldSpec, c: FieldElement) -> Polynomial {
        let mut p = Polynomial {
            field,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    /// The monomial x.
    pub fn x(field: FieldSpec) -> Polynomial {
        Polynomial::monomial(field, 1)
    }

    /// The monic monomial x^k.
    pub fn monomial(field: FieldSpec, k: usize) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = FieldElement::ONE;
        Polynomial { field, coeffs }
    }

    /// Builds a polynomial from ascending coefficients, reducing each mod p.
    pub fn from_coeffs(field: FieldSpec, coeffs: &[u64]) -> Polynomial {
        let mut p = Polynomial {
            field,
            coeffs: coeffs.iter().map(|&c| field.element(c)).collect(),
        };
        p.trim();
        p
    }

    /// As `from_coeffs`, accepting signed coefficients (`-1` means `p - 1`).
    pub fn from_signed_coeffs(field: FieldSpec, coeffs: &[i64]) -> Polynomial {
        let mut p = Polynomial {
            field,
            coeffs: coeffs.iter().map(|&c| field.element_signed(c)).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    /// Ascending coefficients, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// The coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(FieldElement::ONE)
    }

    /// Number of nonzero coefficients. Used to decide when sparse-aware
    /// strategies pay off.
    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn assert_same_field(&self, other: &Polynomial) {
        assert_eq!(
            self.field, other.field,
            "polynomials from different fields"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(f.add(self.coeff(k), other.coeff(k)));
        }
        let mut p = Polynomial {
            field: f,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(f.sub(self.coeff(k), other.coeff(k)));
        }
        let mut p = Polynomial {
            field: f,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.field;
        Polynomial {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn mul_scalar(&self, c: FieldElement) -> Polynomial {
        let f = self.field;
        let mut p = Polynomial {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        };
        p.trim();
        p
    }

    /// Schoolbook product. Products are accumulated unreduced in 128 bits
    /// when p < 2^32 (one reduction per output coefficient); wider primes
    /// reduce each term first.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_field(other);
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(f);
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        if f.p() < (1 << 32) {
            for (i, &ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                let ai = ai.value() as u128;
                for (j, &bj) in b.iter().enumerate() {
                    acc[i + j] += ai * bj.value() as u128;
                }
            }
        } else {
            for (i, &ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    acc[i + j] += f.mul(ai, bj).value() as u128;
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|v| f.element((v % f.p() as u128) as u64))
            .collect();
        let mut p = Polynomial {
            field: f,
            coeffs,
        };
        p.trim();
        p
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    ///
    /// The inner loop visits only the nonzero coefficients of the divisor,
    /// so reducing modulo a sparse polynomial (the tower trinomials, x^k)
    /// costs O(deg * terms) rather than O(deg^2).
    ///
    /// Panics when `divisor` is zero.
    pub fn divrem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        self.assert_same_field(divisor);
        let f = self.field;
        let db = divisor
            .degree()
            .expect("division by the zero polynomial");
        let Some(da) = self.degree() else {
            return (Polynomial::zero(f), Polynomial::zero(f));
        };
        if da < db {
            return (Polynomial::zero(f), self.clone());
        }
        let lead_inv = f
            .inv(divisor.coeffs[db])
            .expect("leading coefficient is nonzero");
        // Divisor terms below the leading one, as (exponent, coefficient).
        let lower: Vec<(usize, FieldElement)> = divisor.coeffs[..db]
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; da - db + 1];
        for i in (0..=da - db).rev() {
            let top = rem[i + db];
            if top.is_zero() {
                continue;
            }
            let q = f.mul(top, lead_inv);
            quot[i] = q;
            rem[i + db] = FieldElement::ZERO;
            for &(j, bj) in &lower {
                rem[i + j] = f.sub(rem[i + j], f.mul(q, bj));
            }
        }
        rem.truncate(db);
        let mut quotient = Polynomial {
            field: f,
            coeffs: quot,
        };
        quotient.trim();
        let mut remainder = Polynomial {
            field: f,
            coeffs: rem,
        };
        remainder.trim();
        (quotient, remainder)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    ///
    /// Panics when both inputs are zero.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_field(other);
        assert!(
            !(self.is_zero() && other.is_zero()),
            "gcd(0, 0) is undefined"
        );
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The monic associate (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(l) if l == FieldElement::ONE => self.clone(),
            Some(l) => self.mul_scalar(self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// self^exp mod modulus by square-and-multiply over the exponent bits.
    ///
    /// Panics when the modulus has degree < 1.
    pub fn powmod(&self, exp: &BigUint, modulus: &Polynomial) -> Polynomial {
        self.assert_same_field(modulus);
        let dm = modulus.degree().expect("powmod modulus is zero");
        assert!(dm >= 1, "powmod modulus must have degree >= 1");
        let mut acc = Polynomial::one(self.field);
        let base = self.divrem(modulus).1;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).divrem(modulus).1;
            if exp.bit(i) {
                acc = acc.mul(&base).divrem(modulus).1;
            }
        }
        acc
    }

    /// f(x^t): spreads the coefficients t positions apart.
    pub fn substitute_power(&self, t: usize) -> Polynomial {
        assert!(t >= 1, "substitute_power requires t >= 1");
        let Some(d) = self.degree() else {
            return self.clone();
        };
        let mut coeffs = vec![FieldElement::ZERO; d * t + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * t] = c;
            }
        }
        Polynomial {
            field: self.field,
            coeffs,
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(f);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| f.mul(f.element((i + 1) as u64), c))
            .collect();
        let mut p = Polynomial {
            field: f,
            coeffs,
        };
        p.trim();
        p
    }

    /// Evaluation by Horner's rule.
    pub fn eval(&self, at: FieldElement) -> FieldElement {
        let f = self.field;
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, at), c);
        }
        acc
    }
}
