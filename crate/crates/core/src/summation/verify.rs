//! Independent checking of telescoping certificates: a symbolic zero test of
//! both module coordinates and exact evaluation at seeded random points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CertKind, Certificate, Recurrence};
use crate::hyperterm::HyperTerm;
use crate::numeric::{rat_int, Rational};
use crate::poly::{RatFunc, Var};
use crate::potential::Potential;

pub const SPOT_CHECKS: usize = 50;
const SEED: u64 = 0x5eed_2a9e;
const MAX_DRAWS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub symbolic: bool,
    pub checks_run: usize,
    pub checks_passed: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.symbolic && self.checks_run == SPOT_CHECKS && self.checks_passed == self.checks_run
    }
}

pub fn verify_certificate(t: &HyperTerm, c: Option<&Potential>, rec: &Recurrence, cert: &Certificate) -> bool {
    verify_certificate_report(t, c, rec, cert).passed()
}

pub fn verify_certificate_report(
    t: &HyperTerm,
    c: Option<&Potential>,
    rec: &Recurrence,
    cert: &Certificate,
) -> VerifyReport {
    let consistent = matches!(
        (cert.kind, c, &cert.r2),
        (CertKind::Pure, None, None) | (CertKind::Potential, Some(_), Some(_))
    );
    if !consistent {
        return VerifyReport {
            symbolic: false,
            checks_run: 0,
            checks_passed: 0,
        };
    }
    let symbolic = symbolic_check(t, c, rec, cert);
    let (checks_run, checks_passed) = spot_checks(t, c, rec, cert);
    VerifyReport {
        symbolic,
        checks_run,
        checks_passed,
    }
}

fn symbolic_check(t: &HyperTerm, c: Option<&Potential>, rec: &Recurrence, cert: &Certificate) -> bool {
    let rho_k = t.shift_quotient(Var::K);
    let rho: Vec<RatFunc> = (0..=rec.order() as i64).map(|j| t.shift_ratio(j, 0)).collect();
    let sigma: Vec<RatFunc> = rec.coeffs().iter().cloned().map(RatFunc::from_poly).collect();
    let r1_next = cert.r1.shift(Var::K, 1);

    let lhs_c = sigma
        .iter()
        .zip(&rho)
        .fold(RatFunc::zero(), |acc, (s, r)| &acc + &(s * r));
    let rhs_c = &(&rho_k * &r1_next) - &cert.r1;
    if lhs_c != rhs_c {
        return false;
    }
    let (Some(c), Some(r2)) = (c, &cert.r2) else {
        return true;
    };
    let f_c = c.delta(Var::K);
    let g_c = c.delta(Var::N);
    let mut partial = RatFunc::zero();
    let mut lhs_1 = RatFunc::zero();
    for (j, (s, r)) in sigma.iter().zip(&rho).enumerate() {
        lhs_1 = &lhs_1 + &(&(s * r) * &partial);
        partial = &partial + &g_c.shift(Var::N, j as i64);
    }
    let inner = &(&r1_next * &f_c) + &r2.shift(Var::K, 1);
    let rhs_1 = &(&rho_k * &inner) - r2;
    lhs_1 == rhs_1
}

fn eval_rf(r: &RatFunc, n: i64, k: i64) -> Option<Rational> {
    r.eval(&rat_int(n), &rat_int(k)).ok()
}

/// `G(n,k) = t * (r1 * c + r2)`, or `t * r1` without a potential.
fn certificate_value(t: &HyperTerm, c: Option<&Potential>, cert: &Certificate, n: i64, k: i64) -> Option<Rational> {
    let tv = t.eval(n, k).ok()?;
    let r1 = eval_rf(&cert.r1, n, k)?;
    let inner = match (c, &cert.r2) {
        (Some(c), Some(r2)) => r1 * c.eval(n, k).ok()? + eval_rf(r2, n, k)?,
        _ => r1,
    };
    Some(tv * inner)
}

fn summand_value(t: &HyperTerm, c: Option<&Potential>, n: i64, k: i64) -> Option<Rational> {
    let tv = t.eval(n, k).ok()?;
    match c {
        Some(c) => Some(tv * c.eval(n, k).ok()?),
        None => Some(tv),
    }
}

/// Exact spot checks of `sum_j sigma_j(n) T(n+j,k) = G(n,k+1) - G(n,k)` at
/// points where every term is given by its closed form.
fn spot_checks(t: &HyperTerm, c: Option<&Potential>, rec: &Recurrence, cert: &Certificate) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let order = rec.order() as i64;
    let (mut run, mut passed) = (0, 0);
    for _ in 0..MAX_DRAWS {
        if run == SPOT_CHECKS {
            break;
        }
        let n: i64 = rng.gen_range(0..=40);
        let k: i64 = rng.gen_range(-3..=n + 3);
        let interior = (0..=order).all(|j| t.is_interior(n + j, k)) && t.is_interior(n, k + 1);
        if !interior {
            continue;
        }
        let values = (0..=order)
            .map(|j| summand_value(t, c, n + j, k))
            .collect::<Option<Vec<_>>>();
        let g0 = certificate_value(t, c, cert, n, k);
        let g1 = certificate_value(t, c, cert, n, k + 1);
        let (Some(values), Some(g0), Some(g1)) = (values, g0, g1) else {
            continue;
        };
        run += 1;
        let nq = rat_int(n);
        let lhs: Rational = rec
            .coeffs()
            .iter()
            .zip(&values)
            .map(|(s, v)| s.eval(&nq, &Rational::default()) * v)
            .sum();
        if lhs == g1 - g0 {
            passed += 1;
        }
    }
    (run, passed)
}
