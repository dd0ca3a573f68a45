//! The vanishing harmonic-binomial sum: exact evaluation, a proof by a
//! certified recurrence plus base cases, and the Apéry congruence scan.

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hyperterm::HyperTerm;
use crate::numeric::{int, is_prime, odd_primes_up_to, Integer, Rational};
use crate::potential::{identity_potential, Potential};
use crate::qseries::{apery_mod, beukers_series, Series};
use crate::summation::{certificate_json, verify_certificate, zeil_potential, Certificate, Recurrence};

/// `k (n+k)!^2 / (k!^4 (n-k)!^2)`, which is `k C(n,k)^2 C(n+k,k)^2`.
pub fn summand() -> HyperTerm {
    HyperTerm::parse("k*(n+k)!^2/(k!^4*(n-k)!^2)").expect("valid term")
}

/// `sum_{k=1}^n t(n,k) c(n,k)` with the summand above and the potential
/// `1/(2k) + H(n+k) + H(n-k) - 2 H(k)`.
pub fn theorem_sum(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let t = summand();
    let c = identity_potential();
    let n = n as i64;
    (1..=n).try_fold(Rational::zero(), |acc, k| Ok(acc + t.eval(n, k)? * c.eval(n, k)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReport {
    pub recurrence: Recurrence,
    pub certificate: Certificate,
    pub certificate_verified: bool,
    /// the leading coefficient has no root at any integer `n >= leading_nonzero_from`
    pub leading_nonzero_from: i64,
    pub base_cases: Vec<(u64, Rational)>,
    pub conclusion: bool,
}

impl ProofReport {
    pub fn to_json(&self) -> Value {
        json!({
            "recurrence": certificate_json(&self.recurrence, &self.certificate, self.certificate_verified),
            "certificate_verified": self.certificate_verified,
            "leading_nonzero_from": self.leading_nonzero_from,
            "base_cases": self
                .base_cases
                .iter()
                .map(|(n, v)| json!([n, v.to_string()]))
                .collect::<Vec<_>>(),
            "conclusion": self.conclusion,
        })
    }
}

/// One past the largest nonnegative integer root of the leading
/// coefficient, or 0 if it has none.
pub fn leading_nonzero_from(rec: &Recurrence) -> i64 {
    let lead = rec.leading().as_upoly_n().expect("coefficients are free of k");
    let bound = lead.root_bound().ceil() as i64 + 1;
    lead.integer_roots_in(0, bound).into_iter().max().map_or(0, |r| r + 1)
}

pub fn prove_identity_zero(max_order: usize) -> Result<ProofReport> {
    if max_order == 0 {
        return Err(Error::Precondition("max_order must be at least 1".into()));
    }
    let t = summand();
    let c = identity_potential();
    let (rec, cert) = zeil_potential(&t, &c, max_order)?;
    assess_proof(&t, &c, rec, cert)
}

/// Check a claimed recurrence and certificate for the sum and assemble the
/// proof. Values at `n = 1, 2, 3` are always checked; beyond that, enough
/// consecutive values to start the recurrence where its leading coefficient
/// no longer vanishes.
pub fn assess_proof(t: &HyperTerm, c: &Potential, rec: Recurrence, cert: Certificate) -> Result<ProofReport> {
    let certificate_verified = verify_certificate(t, Some(c), &rec, &cert);
    let n0 = leading_nonzero_from(&rec);
    let last = (n0.max(1) as u64 + rec.order() as u64 - 1).max(3);
    let base_cases = (1..=last)
        .map(|n| theorem_sum(n).map(|v| (n, v)))
        .collect::<Result<Vec<_>>>()?;
    let conclusion = certificate_verified && base_cases.iter().all(|(_, v)| v.is_zero());
    Ok(ProofReport {
        recurrence: rec,
        certificate: cert,
        certificate_verified,
        leading_nonzero_from: n0,
        base_cases,
        conclusion,
    })
}

/// Compare `apery((p-1)/2)` with the coefficient of `q^p` modulo `p^2`.
pub fn check_beukers(p: u64, series: &Series) -> Result<bool> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let a_p = series.coeff(p as usize).ok_or_else(|| {
        Error::Precondition(format!(
            "series truncated at {} is too short for p = {p}",
            series.trunc()
        ))
    })?;
    Ok(congruent(p, a_p))
}

fn congruent(p: u64, a_p: &Integer) -> bool {
    let lhs = apery_mod((p - 1) / 2, p).expect("(p-1)/2 < p");
    let m = int(p as i64 * p as i64);
    let rhs = num_integer::Integer::mod_floor(a_p, &m);
    lhs.value() == &rhs
}

pub fn scan_beukers(p_max: u64) -> Result<Vec<(u64, bool)>> {
    scan_beukers_threads(p_max, 1)
}

/// As [`scan_beukers`], spreading the primes over `threads` workers. The
/// output is in increasing prime order regardless of thread count.
pub fn scan_beukers_threads(p_max: u64, threads: usize) -> Result<Vec<(u64, bool)>> {
    if p_max < 3 {
        return Err(Error::Precondition(format!("p_max = {p_max} is below 3")));
    }
    let series = beukers_series(p_max as usize)?;
    let primes = odd_primes_up_to(p_max);
    let check = |&p: &u64| (p, congruent(p, series.coeff(p as usize).expect("within truncation")));
    if threads <= 1 {
        return Ok(primes.iter().map(check).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(|| primes.par_iter().map(check).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn small_sums_vanish() {
        for n in [1, 2, 3, 37] {
            assert_eq!(theorem_sum(n).unwrap(), rat(0, 1), "n = {n}");
        }
        assert!(theorem_sum(0).is_err());
    }

    #[test]
    fn small_primes() {
        let s = beukers_series(10).unwrap();
        for p in [3, 5, 7] {
            assert!(check_beukers(p, &s).unwrap());
        }
        assert!(check_beukers(9, &s).is_err());
        assert!(check_beukers(11, &s).is_err());
        assert_eq!(scan_beukers(10).unwrap(), vec![(3, true), (5, true), (7, true)]);
        assert!(scan_beukers(2).is_err());
    }

    #[test]
    fn representative_does_not_matter() {
        let s = beukers_series(7).unwrap();
        let a7 = s.coeff(7).unwrap().clone();
        assert!(congruent(7, &a7));
        assert!(congruent(7, &(a7 + int(49))));
    }

    #[test]
    fn threads_do_not_change_the_scan() {
        assert_eq!(scan_beukers_threads(300, 4).unwrap(), scan_beukers(300).unwrap());
    }
}
