//! Dense polynomials over prime fields of 61-bit order, used for fast
//! coprimality filters and modular gcds.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use crate::numeric::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    pub p: u64,
}

pub const MERSENNE: Field = Field { p: (1 << 61) - 1 };

impl Field {
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced below the modulus")
    }

    /// Image of a rational number, or `None` if its denominator vanishes.
    pub fn reduce(self, r: &Rational) -> Option<u64> {
        let d = self.reduce_int(r.denom());
        if d.is_zero() {
            return None;
        }
        Some(self.mul(self.reduce_int(r.numer()), self.inv(d)))
    }

    /// Evaluate low-first coefficients at `x`.
    pub fn eval(self, cs: &[u64], x: u64) -> u64 {
        cs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Monic gcd of two low-first coefficient vectors; empty when both are zero.
    pub fn gcd(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let lb_inv = self.inv(*b.last().unwrap());
            let db = b.len() - 1;
            while a.len() > db {
                let c = self.mul(*a.last().unwrap(), lb_inv);
                let shift = a.len() - 1 - db;
                for (j, &bc) in b.iter().enumerate() {
                    a[shift + j] = self.sub(a[shift + j], self.mul(c, bc));
                }
                trim(&mut a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        if let Some(&l) = a.last() {
            let li = self.inv(l);
            for c in a.iter_mut() {
                *c = self.mul(*c, li);
            }
        }
        a
    }

    /// Degree of the gcd; `None` when both are zero.
    pub fn gcd_degree(self, a: &[u64], b: &[u64]) -> Option<usize> {
        let g = self.gcd(a, b);
        (!g.is_empty()).then(|| g.len() - 1)
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let f = Field { p: n };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // these bases are deterministic for every 64-bit n
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^61`, in descending order.
pub fn large_primes() -> impl Iterator<Item = Field> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| {
        ((1u64 << 60)..(1u64 << 61))
            .rev()
            .filter(|&n| is_prime_u64(n))
            .take(64)
            .collect()
    });
    let tail_start = *cached.last().unwrap();
    cached
        .iter()
        .copied()
        .chain((1u64 << 60..tail_start).rev().filter(|&n| is_prime_u64(n)))
        .map(|p| Field { p })
}
