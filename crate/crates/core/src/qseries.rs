//! Truncated power series with integer coefficients, eta-quotient
//! expansions, and the Apéry numbers exactly and modulo `p^2`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{binomial, int, is_prime, mod_inverse, Integer, Residue};

/// `c_0 + c_1 q + ... + c_N q^N + O(q^(N+1))`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Integer>,
}

impl Series {
    /// Pads with zeros or drops terms so that exactly `trunc + 1` remain.
    pub fn new(mut coeffs: Vec<Integer>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, Integer::zero());
        Series { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        Series::new(Vec::new(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Series::new(vec![Integer::one()], trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Coefficient of `q^i`; `None` past the truncation.
    pub fn coeff(&self, i: usize) -> Option<&Integer> {
        self.coeffs.get(i)
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.trunc().min(other.trunc());
        Series::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(), n)
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.trunc().min(other.trunc());
        Series::new((0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(), n)
    }

    /// Product, skipping zero coefficients on the left.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.trunc().min(other.trunc());
        let mut out = vec![Integer::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series::new(out, n)
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn invert(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.abs() != Integer::one() {
            return Err(Error::Precondition(format!(
                "constant term {c0} is not a unit of the integers"
            )));
        }
        let n = self.trunc();
        let mut out: Vec<Integer> = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        for i in 1..=n {
            let s: Integer = (1..=i).map(|j| &self.coeffs[j] * &out[i - j]).sum();
            // c0 is its own inverse
            out.push(-(s * c0));
        }
        Ok(Series::new(out, n))
    }

    /// Multiply in place by `(1 - q^s)^e`, one sparse factor at a time.
    fn mul_one_minus_power(&mut self, s: usize, e: i64) {
        let n = self.trunc();
        if s > n {
            return;
        }
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                for i in (s..=n).rev() {
                    let t = self.coeffs[i - s].clone();
                    self.coeffs[i] -= t;
                }
            } else {
                // 1 / (1 - q^s) = 1 + q^s + q^2s + ...
                for i in s..=n {
                    let t = self.coeffs[i - s].clone();
                    self.coeffs[i] += t;
                }
            }
        }
    }

    /// Multiply by `q^k`, keeping the truncation.
    fn shifted_up(&self, k: usize) -> Series {
        let n = self.trunc();
        let mut out = vec![Integer::zero(); n + 1];
        out[k..].clone_from_slice(&self.coeffs[..=n - k]);
        Series::new(out, n)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.trunc() + 1)
    }
}

/// `q^lead * prod_f prod_{j>=1} (1 - q^(m_f j))^(e_f)` up to `q^trunc`.
pub fn eta_expand(factors: &[(u64, i64)], lead: usize, trunc: usize) -> Result<Series> {
    if lead > trunc {
        return Err(Error::Precondition(format!("lead {lead} exceeds truncation {trunc}")));
    }
    if let Some((m, _)) = factors.iter().find(|(m, _)| *m == 0) {
        return Err(Error::Precondition(format!("multiplier {m} must be at least 1")));
    }
    let rest = trunc - lead;
    let mut s = Series::one(rest);
    for &(m, e) in factors {
        let m = m as usize;
        for j in 1..=rest / m {
            s.mul_one_minus_power(m * j, e);
        }
    }
    Ok(Series::new(s.coeffs, trunc).shifted_up(lead))
}

/// The series `q prod (1 - q^(2j))^4 (1 - q^(4j))^4` whose coefficients are
/// compared against the Apéry numbers.
pub fn beukers_series(trunc: usize) -> Result<Series> {
    eta_expand(&[(2, 4), (4, 4)], 1, trunc)
}

/// `sum_k C(n,k)^2 C(n+k,k)^2` by direct summation.
pub fn apery(n: u64) -> Integer {
    (0..=n as i64)
        .map(|k| {
            let b = binomial(n, k) * binomial(n + k as u64, k);
            &b * &b
        })
        .sum()
}

/// `apery(n) mod p^2` in modular arithmetic. Each summand comes from the
/// previous one via `C(n,k) C(n+k,k) = C(n,k-1) C(n+k-1,k-1) (n-k+1)(n+k) / k^2`,
/// and `k < p` keeps the divisions invertible.
pub fn apery_mod(n: u64, p: u64) -> Result<Residue> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if n >= p {
        return Err(Error::Precondition(format!(
            "n = {n} is not below p = {p}; reduce apery(n) instead"
        )));
    }
    let m = int(p as i64 * p as i64);
    let mut b = Residue::new(&Integer::one(), &m)?;
    let mut acc = b.clone();
    for k in 1..=n {
        let step = Integer::from((n - k + 1) * (n + k));
        let kk = Integer::from(k * k);
        b = b.mul(&Residue::new(&step, &m)?).mul(&mod_inverse(&kk, &m)?);
        acc = acc.add(&b.mul(&b));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_expansion() {
        let s = beukers_series(8).unwrap();
        let expect = [0, 1, 0, -4, 0, -2, 0, 24, 0];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(i).unwrap(), &int(*e), "q^{i}");
        }
        assert_eq!(s.to_string(), "q - 4*q^3 - 2*q^5 + 24*q^7 + O(q^9)");
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(eta_expand(&[], 0, 5).unwrap(), Series::one(5));
        assert!(eta_expand(&[], 6, 5).is_err());
        assert!(eta_expand(&[(0, 1)], 0, 5).is_err());
    }

    #[test]
    fn negative_exponent_inverts() {
        let a = eta_expand(&[(1, 1)], 0, 30).unwrap();
        let b = eta_expand(&[(1, -1)], 0, 30).unwrap();
        assert_eq!(a.mul(&b), Series::one(30));
        assert_eq!(a.invert().unwrap(), b);
        // 1/prod(1-q^j) counts partitions
        assert_eq!(b.coeff(10).unwrap(), &int(42));
    }

    #[test]
    fn apery_values() {
        assert_eq!(apery(0), int(1));
        assert_eq!(apery(1), int(5));
        assert_eq!(apery(2), int(73));
        assert_eq!(apery(3), int(1445));
    }

    #[test]
    fn apery_residues() {
        assert_eq!(apery_mod(3, 7).unwrap().value(), &int(24));
        assert_eq!(apery_mod(0, 5).unwrap().value(), &int(1));
        assert_eq!(apery_mod(2, 5).unwrap().value(), &int(23));
        assert!(matches!(apery_mod(7, 7), Err(Error::Precondition(_))));
        assert!(apery_mod(1, 9).is_err());
    }

    #[test]
    fn truncation_mismatch_takes_smaller() {
        let a = Series::one(4);
        let b = Series::one(7);
        assert_eq!(a.mul(&b).trunc(), 4);
        assert_eq!(a.add(&b).trunc(), 4);
    }
}
