//! Primality testing and integer factorization.
//!
//! Values below 2^64 get a deterministic Miller-Rabin test (the first twelve
//! prime bases are a proven witness set for that range). Larger values use
//! Miller-Rabin with a fixed set of 24 prime bases, which is probabilistic
//! in principle. Factor search is trial division followed by Pollard's rho
//! in Brent's formulation.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::PolyError;

const SMALL_PRIMES: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

const TRIAL_LIMIT: u64 = 1000;

/// Strictly increasing list of distinct primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    primes: Vec<BigUint>,
}

impl PrimeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts and deduplicates; every entry must already be prime.
    pub fn from_primes(mut primes: Vec<BigUint>) -> Self {
        primes.sort();
        primes.dedup();
        debug_assert!(primes.iter().all(is_prime));
        Self { primes }
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, q: &BigUint) -> bool {
        self.primes.binary_search(q).is_ok()
    }

    pub fn contains_u64(&self, q: u64) -> bool {
        self.contains(&BigUint::from(q))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.primes.iter().all(|q| other.contains(q))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.primes.clone();
        v.extend(other.primes.iter().cloned());
        Self::from_primes(v)
    }

    pub fn product(&self) -> BigUint {
        self.primes.iter().product()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigUint> {
        self.primes.iter()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit values.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES[..12] {
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

/// Primality test for arbitrary-size values.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor of the
/// odd composite `n`.
fn pollard_brent_u64(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut g = 1u64;
        let mut r = 1u64;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn pollard_brent_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;
        let mut ys = y.clone();
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..(128.min(r - k)) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
            if g != one {
                break;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = match n.to_u64() {
        Some(small) => BigUint::from(pollard_brent_u64(small)),
        None => pollard_brent_big(&n),
    };
    let other = &n / &d;
    split_into(d, out);
    split_into(other, out);
}

/// Distinct prime divisors of `m >= 1`.
pub fn prime_factors(m: &BigUint) -> Result<PrimeSet, PolyError> {
    if m.is_zero() {
        return Err(PolyError::FactorZero);
    }
    let mut n = m.clone();
    let mut found = Vec::new();
    for q in (2..TRIAL_LIMIT).filter(|&q| q == 2 || q % 2 == 1) {
        if n.is_one() {
            break;
        }
        let qb = BigUint::from(q);
        if &qb * &qb > n {
            break;
        }
        if (&n % q).is_zero() {
            found.push(qb.clone());
            while (&n % q).is_zero() {
                n /= q;
            }
        }
    }
    split_into(n, &mut found);
    Ok(PrimeSet::from_primes(found))
}

pub fn prime_factors_u64(m: u64) -> Result<PrimeSet, PolyError> {
    prime_factors(&BigUint::from(m))
}

/// Primes `<= limit` in increasing order.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| is_prime_u64(n)).collect()
}
