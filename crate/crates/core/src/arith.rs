//! Exact integer support: factorization and primality over `u64`, binomial
//! coefficients and asserted exact division over unbounded integers.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Unbounded signed integer used for every count and intermediate term.
pub type BigCount = BigInt;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

// Deterministic for every n < 3.3 * 10^24, so in particular for all u64.
const MILLER_RABIN_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Canonical prime factorization: primes strictly increasing, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored value.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(p, alpha)` pairs with `p^alpha || n`, ascending in `p`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back out.
    pub fn product(&self) -> BigCount {
        self.factors
            .iter()
            .map(|&(p, a)| BigCount::from(p).pow(a))
            .product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, a)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
        primes
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin(n: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MILLER_RABIN_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test valid over the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MILLER_RABIN_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    miller_rabin(n)
}

/// Brent's variant of Pollard's rho. `n` must be odd and composite.
/// Returns a nontrivial divisor.
fn pollard_rho(n: u64) -> u64 {
    let step = |x: u64, c: u64| (mul_mod(x, x, n) + c) % n;
    let mut c = 0u64;
    loop {
        c += 1;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == n {
            // batch overshot; walk back one step at a time
            loop {
                ys = step(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if r * r == n {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Factors `n` into prime powers.
///
/// Trial division by the primes below 10^6 removes small factors; whatever
/// remains is split with Pollard's rho and certified prime with a
/// deterministic Miller-Rabin test.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut alpha = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                alpha += 1;
            }
            factors.push((p, alpha));
        }
    }
    if rest > 1 {
        let mut large = Vec::new();
        if rest <= TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT {
            // every prime below sqrt(rest) has been tried
            large.push(rest);
        } else {
            split_large(rest, &mut large);
        }
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some((q, alpha)) if *q == p => *alpha += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    Ok(Factorization { n, factors })
}

/// `C(k, j)`, zero when `j > k`.
pub fn binomial(k: u64, j: u64) -> BigCount {
    if j > k {
        return BigCount::zero();
    }
    let j = j.min(k - j);
    let mut acc = BigCount::one();
    for i in 1..=j {
        // acc * (k - j + i) is i * C(k - j + i, i), so the division is exact
        acc *= k - j + i;
        acc /= i;
    }
    acc
}

/// `a / d`, failing unless `d` divides `a`.
///
/// A failure here means a formula was implemented wrongly; it is never
/// caused by user input.
pub fn exact_div(a: &BigCount, d: &BigCount) -> Result<BigCount> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = a.div_rem(d);
    if !r.is_zero() {
        return Err(Error::NotDivisible {
            dividend: a.clone(),
            divisor: d.clone(),
        });
    }
    Ok(q)
}
