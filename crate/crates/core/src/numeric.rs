//! Exact scalars: big integers, canonical rationals, harmonic numbers,
//! binomials and residues modulo `m`.
//!
//! `BigRational` already keeps itself reduced with a positive denominator,
//! so structural equality of [`Rational`] values is value equality.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(v: impl Into<Integer>) -> Rational {
    Rational::from_integer(v.into())
}

fn factorial_cache() -> &'static RwLock<Vec<Integer>> {
    static CACHE: OnceLock<RwLock<Vec<Integer>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Integer::one()]))
}

/// `m!`, memoized for the lifetime of the process.
pub fn factorial(m: usize) -> Integer {
    {
        let cache = factorial_cache().read().unwrap();
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
    }
    let mut cache = factorial_cache().write().unwrap();
    while cache.len() <= m {
        let i = cache.len();
        let next = &cache[i - 1] * Integer::from(i);
        cache.push(next);
    }
    cache[m].clone()
}

fn harmonic_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::zero()]))
}

/// `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`.
pub fn harmonic(m: i64) -> Result<Rational> {
    if m < 0 {
        return Err(Error::Domain(format!("harmonic number of negative index {m}")));
    }
    let m = m as usize;
    {
        let cache = harmonic_cache().read().unwrap();
        if let Some(v) = cache.get(m) {
            return Ok(v.clone());
        }
    }
    let mut cache = harmonic_cache().write().unwrap();
    while cache.len() <= m {
        let i = cache.len();
        let next = &cache[i - 1] + rat(1, i as i64);
        cache.push(next);
    }
    Ok(cache[m].clone())
}

/// `C(n, k)`; zero whenever `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// A residue class `value mod modulus` with `0 <= value < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: Integer,
    modulus: Integer,
}

impl Residue {
    pub fn new(value: &Integer, modulus: &Integer) -> Result<Self> {
        if *modulus < int(2) {
            return Err(Error::Precondition(format!("modulus {modulus} is below 2")));
        }
        Ok(Residue {
            value: value.mod_floor(modulus),
            modulus: modulus.clone(),
        })
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: (&self.value * &other.value).mod_floor(&self.modulus),
            modulus: self.modulus.clone(),
        }
    }

    pub fn add(&self, other: &Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: (&self.value + &other.value).mod_floor(&self.modulus),
            modulus: self.modulus.clone(),
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: &Integer, m: &Integer) -> Result<Residue> {
    if *m < int(2) {
        return Err(Error::Precondition(format!("modulus {m} is below 2")));
    }
    let ext = a.mod_floor(m).extended_gcd(m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: a.to_string(),
            modulus: m.to_string(),
        });
    }
    Residue::new(&ext.x, m)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Odd primes up to and including `limit`, by the sieve of Eratosthenes.
pub fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        if i > 2 {
            out.push(i as u64);
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Reduce a rational `r` modulo `m`; the denominator must be a unit.
pub fn reduce_rational(r: &Rational, m: &Integer) -> Result<Residue> {
    let inv = mod_inverse(r.denom(), m)?;
    Residue::new(&(r.numer() * inv.value()), m)
}
