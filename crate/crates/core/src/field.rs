//! Prime fields F_p and the integer utilities that support them.
//!
//! `FieldSpec` fixes the modulus once (primality-checked on construction)
//! and caches the residues mod 3 and mod 9 that the tower construction
//! keys on. `FieldElement` is a plain reduced representative; all
//! arithmetic goes through the owning `FieldSpec`.
//!
//! Integer support: a deterministic Miller–Rabin primality test (the
//! 12-witness set that is exact for all 64-bit inputs) and a complete
//! integer factorization routine — trial division by primes up to 10^6,
//! then Pollard rho in Brent's variant with a fixed parameter schedule so
//! results are reproducible.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::config::DEFAULT_RHO_BUDGET;
use crate::error::{Error, Result};

/// An element of F_p, always stored reduced into `[0, p)`.
///
/// Elements do not remember their field; operations take the `FieldSpec`
/// explicitly, and mixing fields is the caller's bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The reduced representative in `[0, p)`.
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prime field F_p together with the residues of p mod 3 and mod 9 that
/// the residue gate inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    residue3: u64,
    residue9: u64,
}

impl FieldSpec {
    /// Builds the field, rejecting composite (or < 2) moduli.
    pub fn new(p: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            p,
            residue3: p % 3,
            residue9: p % 9,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue3(&self) -> u64 {
        self.residue3
    }

    pub fn residue9(&self) -> u64 {
        self.residue9
    }

    /// Reduces an arbitrary u64 into the field.
    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement(v % self.p)
    }

    /// Reduces a signed integer into the field (`-1` becomes `p - 1`).
    pub fn element_signed(&self, v: i64) -> FieldElement {
        FieldElement((v as i128).rem_euclid(self.p as i128) as u64)
    }

    #[inline]
    fn reduce128(&self, v: u128) -> u64 {
        // The p = 2 branch matters: it turns the hottest reductions in the
        // polynomial layer into single AND instructions.
        if self.p == 2 {
            (v & 1) as u64
        } else {
            (v % self.p as u128) as u64
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u128 + b.0 as u128;
        let p = self.p as u128;
        FieldElement(if s >= p { (s - p) as u64 } else { s as u64 })
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u128;
        let d = a.0 as u128 + p - b.0 as u128;
        FieldElement(if d >= p { (d - p) as u64 } else { d as u64 })
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.reduce128(a.0 as u128 * b.0 as u128))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut old_r, mut r) = (self.p as i128, a.0 as i128);
        let (mut old_t, mut t) = (0i128, 1i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_t, t) = (t, old_t - q * t);
        }
        debug_assert_eq!(old_r, 1, "gcd(a, p) must be 1 for prime p");
        Ok(FieldElement(old_t.rem_euclid(self.p as i128) as u64))
    }

    /// a^e by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement(1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Modular exponentiation on u64 with 128-bit intermediates.
pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    base %= modulus;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// The 12 smallest primes: as Miller–Rabin witnesses they are exact for
/// every input below 3.3 * 10^24, which covers all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin primality test, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin for big integers. Exact below 3.3 * 10^24 via the
/// 12-witness set; above that the schedule is extended with the next
/// primes up to 71, for which no composite below 2^128 is known to pass.
pub(crate) fn is_prime_big(n: &BigUint) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    const EXTRA: [u64; 8] = [41, 43, 47, 53, 59, 61, 67, 71];
    'witness: for a in MR_WITNESSES.iter().chain(EXTRA.iter()) {
        let a = BigUint::from(*a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to 10^6 for the trial-division stage, sieved once.
fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const LIMIT: usize = 1_000_000;
        let mut composite = vec![false; LIMIT + 1];
        let mut primes = Vec::new();
        for n in 2..=LIMIT {
            if !composite[n] {
                primes.push(n as u64);
                let mut m = n * n;
                while m <= LIMIT {
                    composite[m] = true;
                    m += n;
                }
            }
        }
        primes
    })
}

/// Complete factorization of `n >= 1` into `(prime, exponent)` pairs,
/// primes ascending, with the default rho budget. `int_factorize(1)` is
/// the empty product.
pub fn int_factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    int_factorize_with(n, DEFAULT_RHO_BUDGET)
}

/// As `int_factorize`, with an explicit iteration budget for the rho
/// stage. Fails with `FactorizationTimeout` when a composite cofactor of
/// 128 bits or more survives trial division, or when the budget runs out
/// before the cofactor is fully split.
pub fn int_factorize_with(n: &BigUint, rho_budget: u64) -> Result<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero(), "int_factorize requires n >= 1");
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push = |out: &mut Vec<(BigUint, u32)>, q: BigUint| {
        match out.iter_mut().find(|(p, _)| *p == q) {
            Some((_, k)) => *k += 1,
            None => out.push((q, 1)),
        }
    };

    let mut m = n.clone();
    let one = BigUint::one();
    for &q in trial_primes() {
        if m == one {
            break;
        }
        let qq = BigUint::from(q);
        if &qq * &qq > m {
            break;
        }
        while (&m % &qq).is_zero() {
            m /= &qq;
            push(&mut out, qq.clone());
        }
    }

    if m > one {
        if is_prime_big(&m) {
            push(&mut out, m);
        } else if m.bits() >= 128 {
            // Anything this large that survived trial division is out of
            // reach for the rho stage at any sane budget.
            return Err(Error::FactorizationTimeout { cofactor: m });
        } else {
            let mut budget = rho_budget;
            let mut stack = vec![m];
            while let Some(c) = stack.pop() {
                if is_prime_big(&c) {
                    push(&mut out, c);
                    continue;
                }
                let d = brent_rho(&c, &mut budget)?;
                stack.push(&c / &d);
                stack.push(d);
            }
        }
    }

    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        b - a
    }
}

/// Brent's cycle-finding variant of Pollard rho. `n` must be odd and
/// composite. The polynomial constant walks the fixed schedule c = 1, 2,
/// 3, ... so runs are reproducible; every squaring step costs one unit of
/// budget.
fn brent_rho(n: &BigUint, budget: &mut u64) -> Result<BigUint> {
    let one = BigUint::one();
    let timeout = || Error::FactorizationTimeout { cofactor: n.clone() };
    for c in 1u64.. {
        let c = BigUint::from(c);
        let step = |y: &BigUint| (y * y + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        loop {
            for _ in 0..r {
                y = step(&y);
            }
            *budget = budget.checked_sub(r).ok_or_else(timeout)?;
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = step(&y);
                    q = &q * abs_diff(&x, &y) % n;
                }
                *budget = budget.checked_sub(batch).ok_or_else(timeout)?;
                g = q.gcd(n);
                k += batch;
            }
            if g != one {
                break;
            }
            r = r.checked_mul(2).ok_or_else(timeout)?;
            x = y.clone();
        }
        if g == *n {
            // The batched gcd overshot the cycle; replay one step at a time.
            loop {
                ys = step(&ys);
                *budget = budget.checked_sub(1).ok_or_else(timeout)?;
                g = abs_diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && g < *n {
            return Ok(g);
        }
        // Degenerate cycle for this c; retry with the next constant.
    }
    unreachable!("schedule is unbounded")
}
