//! Closed-form counts of representations as sums of exceptional units.
//!
//! `phi_k(n, c)` is the number of ordered `k`-tuples of exceptional units
//! modulo `n` summing to `c`. It is evaluated prime by prime:
//!
//! * at a prime `p` it equals
//!   `((-1)^k / p) * (p * sum_{j = c mod p} C(k, j) + (2 - p)^k - 2^k)`,
//!   where `j` ranges over `0..=k`;
//! * at a prime power it lifts as `phi_k(p^a, c) = p^((k-1)(a-1)) phi_k(p, c)`;
//! * it is multiplicative in `n`.
//!
//! The sign `(-1)^k` is attached to every prime factor. Pulling a single
//! `(-1)^k` out of the whole product instead gives a negative "count" when
//! `k` is odd and `n` has an even number of distinct prime factors (for
//! example `n = 15, k = 3, c = 0` would give `-6` instead of `6`).
//! [`SignPlacement::Global`] reproduces that reading for regression checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{binomial, exact_div, is_prime, BigCount, Factorization};
use crate::error::{Error, Result};

/// A normalized counting query: `n >= 1`, `k >= 2`, `0 <= c < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountQuery {
    n: u64,
    k: u32,
    c: u64,
}

impl CountQuery {
    /// Builds a query, reducing `c` modulo `n`.
    pub fn new(n: u64, k: u32, c: impl Into<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if k < 2 {
            return Err(Error::InvalidSummands(k));
        }
        let c = reduce(&c.into(), n);
        Ok(CountQuery { n, k, c })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> u64 {
        self.c
    }
}

/// Where the factor `(-1)^k` is applied when assembling prime contributions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum SignPlacement {
    /// `(-1)^k` on every prime factor. Always agrees with direct counting.
    #[default]
    PerPrime,
    /// One `(-1)^k` in front of the whole product. Wrong whenever `k` is
    /// odd and `n` has an even, nonzero number of distinct odd prime factors.
    Global,
}

fn reduce(c: &BigInt, m: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue is below a u64 modulus")
}

fn sign(k: u32) -> BigCount {
    if k.is_multiple_of(2) {
        BigCount::one()
    } else {
        -BigCount::one()
    }
}

/// `p * sum_{0 <= j <= k, j = c mod p} C(k, j) + (2 - p)^k - 2^k`.
fn prime_bracket(p: u64, k: u32, c: u64) -> BigCount {
    let mut binomials = BigCount::zero();
    let mut j = c % p;
    while j <= k as u64 {
        binomials += binomial(k as u64, j);
        j = match j.checked_add(p) {
            Some(next) => next,
            None => break,
        };
    }
    let two_minus_p = BigCount::from(2) - p;
    p * binomials + two_minus_p.pow(k) - BigCount::from(2).pow(k)
}

/// `(-1)^k * phi_k(p, c)`: the bracket divided by `p`.
fn prime_magnitude(p: u64, k: u32, c: u64) -> Result<BigCount> {
    exact_div(&prime_bracket(p, k, c), &BigCount::from(p))
}

fn lift_factor(p: u64, alpha: u32, k: u32) -> BigCount {
    let exp = (k as u64 - 1) * (alpha as u64 - 1);
    Pow::pow(BigCount::from(p), exp)
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidSummands(k));
    }
    Ok(())
}

/// Number of ordered `k`-tuples of exceptional units modulo the prime `p`
/// summing to `c`.
pub fn phi_k_prime(p: u64, k: u32, c: u64) -> Result<BigCount> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_k(k)?;
    if c >= p {
        return Err(Error::ResidueOutOfRange {
            residue: c,
            modulus: p,
        });
    }
    Ok(sign(k) * prime_magnitude(p, k, c)?)
}

/// `phi_k(p^alpha, c) = p^((k-1)(alpha-1)) * phi_k(p, c mod p)`.
pub fn phi_k_prime_power(p: u64, alpha: u32, k: u32, c: u64) -> Result<BigCount> {
    if alpha == 0 {
        return Err(Error::ZeroModulus);
    }
    if let Some(modulus) = p.checked_pow(alpha) {
        if c >= modulus {
            return Err(Error::ResidueOutOfRange {
                residue: c,
                modulus,
            });
        }
    }
    let base = phi_k_prime(p, k, c % p)?;
    Ok(lift_factor(p, alpha, k) * base)
}

/// Number of ordered `query.k()`-tuples of exceptional units modulo
/// `query.n()` summing to `query.c()`.
pub fn phi_k(query: &CountQuery, factored_n: &Factorization) -> Result<BigCount> {
    phi_k_with_sign(query, factored_n, SignPlacement::PerPrime)
}

pub fn phi_k_with_sign(
    query: &CountQuery,
    factored_n: &Factorization,
    placement: SignPlacement,
) -> Result<BigCount> {
    if factored_n.n() != query.n {
        return Err(Error::FactorizationMismatch {
            factored: factored_n.n(),
            modulus: query.n,
        });
    }
    if query.n == 1 {
        return Ok(BigCount::one());
    }
    let k = query.k;
    let mut acc = BigCount::one();
    for &(p, alpha) in factored_n.factors() {
        let magnitude = prime_magnitude(p, k, query.c % p)?;
        acc *= lift_factor(p, alpha, k) * magnitude;
        if placement == SignPlacement::PerPrime {
            acc *= sign(k);
        }
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    if placement == SignPlacement::Global {
        acc *= sign(k);
    }
    debug_assert!(placement == SignPlacement::Global || !acc.is_negative());
    Ok(acc)
}

/// The piecewise multiplicative function that counts sums of two
/// exceptional units:
///
/// | `p`    | `c = 1 (mod p)`  | `c = 0, 2 (mod p)` | otherwise        |
/// |--------|------------------|--------------------|------------------|
/// | 2      | 0                | 0                  | 0                |
/// | 3      | `3^(a-1)`        | 0                  | 0                |
/// | `>= 5` | `p^(a-1)(p - 2)` | `p^(a-1)(p - 3)`   | `p^(a-1)(p - 4)` |
///
/// and 1 for `n = 1`.
pub fn phi_doublestar(factored_n: &Factorization, c: impl Into<BigInt>) -> BigCount {
    let c = c.into();
    let mut acc = BigCount::one();
    for &(p, alpha) in factored_n.factors() {
        let r = reduce(&c, p);
        let tail = match p {
            2 => 0,
            3 if r == 1 => 1,
            3 => 0,
            _ if r == 1 => p - 2,
            _ if r == 0 || r == 2 => p - 3,
            _ => p - 4,
        };
        acc *= BigCount::from(p).pow(alpha - 1) * tail;
    }
    acc
}

/// Number of ordered pairs of units modulo `n` summing to `c`:
/// `n * prod_{p | n, p | c} (1 - 1/p) * prod_{p | n, p !| c} (1 - 2/p)`.
pub fn phi_star_two_units(factored_n: &Factorization, c: impl Into<BigInt>) -> BigCount {
    let c = c.into();
    factored_n
        .factors()
        .iter()
        .map(|&(p, alpha)| {
            let tail = if reduce(&c, p) == 0 { p - 1 } else { p - 2 };
            BigCount::from(p).pow(alpha - 1) * tail
        })
        .product()
}
