//! Dense univariate polynomials over the rationals.
//!
//! Used for the coefficients-in-`n` view of bivariate polynomials (gcd,
//! linear algebra over Q(n)) and for specialised one-variable work such as
//! dispersion candidates and integer root search.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::modp;
use crate::numeric::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    /// Coefficient of `x^i` at index `i`; never has trailing zeros.
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x`
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(x + h)`
    pub fn shift(&self, h: &Rational) -> Self {
        let mut acc = UPoly::zero();
        let lin = UPoly::from_coeffs(vec![h.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(c.clone());
        }
        acc
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    /// Quotient of an exact division; panics in debug builds if inexact.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() || self.coprime_mod_p(other) {
            return UPoly::one();
        }
        modular_gcd(&self.primitive(), &other.primitive())
    }

    pub(crate) fn reduce_mod_p(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| modp::MERSENNE.reduce(c)).collect()
    }

    /// True only if the two are certainly coprime: their images modulo a
    /// large prime keep their degrees and have a constant gcd there.
    fn coprime_mod_p(&self, other: &UPoly) -> bool {
        let (Some(a), Some(b)) = (self.reduce_mod_p(), other.reduce_mod_p()) else {
            return false;
        };
        a.last() != Some(&0) && b.last() != Some(&0) && modp::MERSENNE.gcd_degree(&a, &b) == Some(0)
    }

    /// Rational multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let scale = integer_content_scale(&self.coeffs);
        let mut p = self.scale(&scale);
        if p.lc().is_negative() {
            p = -p;
        }
        p
    }

    /// Fujiwara's bound on the modulus of every complex root, as a float.
    pub fn root_bound(&self) -> f64 {
        let d = match self.degree() {
            Some(d) if d > 0 => d,
            _ => return 0.0,
        };
        let lc = self.lc();
        let mut best: f64 = 0.0;
        for i in 1..=d {
            let c = &self.coeffs[d - i];
            if c.is_zero() {
                continue;
            }
            let ratio = log2_abs(&(c / &lc));
            let mut b = (ratio / i as f64).exp2();
            if i == d {
                b /= 2f64.powf(1.0 / d as f64);
            }
            best = best.max(b);
        }
        2.0 * best
    }

    /// All integer roots within `[lo, hi]`, ascending.
    pub fn integer_roots_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        if self.is_zero() {
            return (lo..=hi).collect();
        }
        (lo..=hi)
            .filter(|&x| self.eval(&Rational::from_integer(x.into())).is_zero())
            .collect()
    }
}

fn log2_abs(r: &Rational) -> f64 {
    fn log2_int(i: &BigInt) -> f64 {
        let bits = i.bits();
        if bits <= 1000 {
            i.abs().to_f64().unwrap().log2()
        } else {
            let shift = bits - 64;
            let top: BigInt = i.abs() >> shift;
            top.to_f64().unwrap().log2() + shift as f64
        }
    }
    log2_int(r.numer()) - log2_int(r.denom())
}

/// Positive rational `s` such that `s * coeffs` are coprime integers.
/// Gcd of two integer-primitive polynomials of positive degree, by images
/// modulo large primes combined with the Chinese remainder theorem until
/// the lifted candidate divides both inputs.
fn modular_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let ints = |u: &UPoly| -> Vec<Integer> { u.coeffs.iter().map(|c| c.numer().clone()).collect() };
    let (ai, bi) = (ints(a), ints(b));
    let gamma = ai.last().unwrap().gcd(bi.last().unwrap());
    let mut image: Option<(usize, Vec<Integer>, Integer)> = None;
    let mut last_candidate: Option<UPoly> = None;
    for f in modp::large_primes() {
        let am: Vec<u64> = ai.iter().map(|c| f.reduce_int(c)).collect();
        let bm: Vec<u64> = bi.iter().map(|c| f.reduce_int(c)).collect();
        if *am.last().unwrap() == 0 || *bm.last().unwrap() == 0 {
            continue;
        }
        let g = f.gcd(&am, &bm);
        let deg = g.len() - 1;
        if deg == 0 {
            return UPoly::one();
        }
        let gm = f.reduce_int(&gamma);
        let g: Vec<u64> = g.iter().map(|&c| f.mul(c, gm)).collect();
        let p = Integer::from(f.p);
        image = match image {
            Some((d, _, _)) if deg > d => continue,
            Some((d, cs, m)) if deg == d => {
                let minv = f.inv(f.reduce_int(&m));
                let cs = cs
                    .iter()
                    .zip(&g)
                    .map(|(r, &gi)| {
                        let t = f.mul(f.sub(gi, f.reduce_int(r)), minv);
                        r + &m * Integer::from(t)
                    })
                    .collect();
                Some((d, cs, m * p))
            }
            _ => Some((deg, g.iter().map(|&c| Integer::from(c)).collect(), p)),
        };
        let (_, cs, m) = image.as_ref().unwrap();
        let half: Integer = m / 2;
        let sym = cs
            .iter()
            .map(|c| Rational::from_integer(if c > &half { c - m } else { c.clone() }))
            .collect();
        let candidate = UPoly::from_coeffs(sym).primitive();
        if last_candidate.as_ref() == Some(&candidate)
            && a.div_rem(&candidate).1.is_zero()
            && b.div_rem(&candidate).1.is_zero()
        {
            return candidate.monic();
        }
        last_candidate = Some(candidate);
    }
    unreachable!("the prime supply is exhausted")
}

pub(crate) fn integer_content_scale(coeffs: &[Rational]) -> Rational {
    let mut den_lcm = Integer::one();
    for c in coeffs {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut num_gcd = Integer::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let v = c.numer() * (&den_lcm / c.denom());
        num_gcd = num_gcd.gcd(&v);
    }
    if num_gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(den_lcm, num_gcd)
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::from_coeffs(out)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn gcd_examples() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[-1, 1]));
        let x = UPoly::var();
        let x1 = UPoly::from_ints(&[1, 1]);
        assert_eq!(x.gcd(&x1), UPoly::one());
    }

    #[test]
    fn shift_and_eval() {
        let p = UPoly::from_ints(&[1, 2, 3]);
        let q = p.shift(&rat(1, 1));
        for x in -3..4 {
            let xr = rat(x, 1);
            assert_eq!(q.eval(&xr), p.eval(&(xr.clone() + rat(1, 1))));
        }
    }

    #[test]
    fn integer_roots_found() {
        // (x - 3)(x + 2)(2x - 1)
        let p = &(&UPoly::from_ints(&[-3, 1]) * &UPoly::from_ints(&[2, 1])) * &UPoly::from_ints(&[-1, 2]);
        let b = p.root_bound().ceil() as i64;
        assert!(b >= 3);
        assert_eq!(p.integer_roots_in(-b, b), vec![-2, 3]);
    }
}
