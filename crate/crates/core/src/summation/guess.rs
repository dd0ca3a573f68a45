//! Recurrence guessing by exact linear algebra over the rationals, and
//! residuals of a recurrence on a list of values.

use num_traits::Zero;

use super::Recurrence;
use crate::error::{Error, Result};
use crate::linalg;
use crate::numeric::{rat_int, Rational};
use crate::poly::Poly;
use crate::upoly::UPoly;

/// Look for `sum_{j<=order} sigma_j(n) u(n+j) = 0` with `deg sigma_j <= degree`,
/// where `values[n] = u(n)`. Every available equation is imposed, so any
/// result holds on the whole list.
pub fn guess_recurrence(values: &[Rational], order: usize, degree: usize) -> Result<Option<Recurrence>> {
    let unknowns = (order + 1) * (degree + 1);
    if values.len() <= unknowns + order + 5 {
        return Err(Error::Precondition(format!(
            "{} values are too few for order {order} and degree {degree}; need more than {}",
            values.len(),
            unknowns + order + 5
        )));
    }
    let rows: Vec<Vec<UPoly>> = (0..values.len() - order)
        .map(|m| {
            let mq = rat_int(m as i64);
            let mut row = Vec::with_capacity(unknowns);
            for j in 0..=order {
                let mut pw = Rational::from_integer(1.into());
                for _ in 0..=degree {
                    row.push(UPoly::constant(&pw * &values[m + j]));
                    pw *= &mq;
                }
            }
            row
        })
        .collect();
    let basis = linalg::nullspace(rows, unknowns);
    let Some((_, v)) = basis
        .into_iter()
        .find(|(_, v)| v[order * (degree + 1)..].iter().any(|e| !e.is_zero()))
    else {
        return Ok(None);
    };
    let coeffs = (0..=order)
        .map(|j| Poly::from_terms((0..=degree).map(|d| ((d as u32, 0), v[j * (degree + 1) + d].coeff(0)))))
        .collect();
    Recurrence::new(coeffs).map(Some)
}

/// Residuals `sum_j sigma_j(n) values[n - offset + j]` for each `n` from
/// `offset` while the window fits; `values[i]` holds `u(offset + i)`.
pub fn apply_recurrence(rec: &Recurrence, values: &[Rational], offset: i64) -> Result<Vec<Rational>> {
    let order = rec.order();
    if values.len() <= order {
        return Err(Error::Precondition(format!(
            "order {order} needs more than {} values",
            values.len()
        )));
    }
    let zero = Rational::zero();
    Ok((0..values.len() - order)
        .map(|i| {
            let n = rat_int(offset + i as i64);
            rec.coeffs()
                .iter()
                .enumerate()
                .map(|(j, s)| s.eval(&n, &zero) * &values[i + j])
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::numeric::{binomial, rat};

    fn apery(n: u64) -> Rational {
        let s = (0..=n as i64)
            .map(|k| {
                let b = binomial(n, k) * binomial(n + k as u64, k);
                &b * &b
            })
            .sum::<crate::numeric::Integer>();
        Rational::from_integer(s)
    }

    #[test]
    fn constant_sequence() {
        let vals = vec![rat(1, 1); 12];
        let rec = guess_recurrence(&vals, 1, 0).unwrap().unwrap();
        assert_eq!(rec.coeffs(), &[Poly::int(-1), Poly::int(1)]);
    }

    #[test]
    fn powers_of_two() {
        let vals: Vec<Rational> = (0..12).map(|i| rat(1 << i, 1)).collect();
        let rec = guess_recurrence(&vals, 1, 0).unwrap().unwrap();
        assert_eq!(rec.coeffs(), &[Poly::int(-2), Poly::int(1)]);
    }

    #[test]
    fn too_few_values() {
        let vals = vec![rat(1, 1); 7];
        assert!(matches!(guess_recurrence(&vals, 1, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn apery_numbers() {
        let vals: Vec<Rational> = (0..=30).map(apery).collect();
        let rec = guess_recurrence(&vals, 2, 3).unwrap().unwrap();
        let expect = Recurrence::new(vec![
            parse_poly("(n+1)^3").unwrap(),
            parse_poly("-(2*n+3)*(17*n^2+51*n+39)").unwrap(),
            parse_poly("(n+2)^3").unwrap(),
        ])
        .unwrap();
        assert_eq!(rec, expect);
        // centred form at n = 1 forces u2 = 73 from 1, 5
        let res = apply_recurrence(&rec, &[rat(1, 1), rat(5, 1), rat(73, 1)], 0).unwrap();
        assert_eq!(res, vec![rat(0, 1)]);
    }

    #[test]
    fn residuals_need_enough_values() {
        let rec = Recurrence::new(vec![Poly::int(-1), Poly::zero(), Poly::int(1)]).unwrap();
        assert!(apply_recurrence(&rec, &[rat(1, 1), rat(1, 1)], 0).is_err());
        let res = apply_recurrence(&rec, &[rat(1, 1), rat(2, 1), rat(1, 1), rat(3, 1)], 5).unwrap();
        assert_eq!(res, vec![rat(0, 1), rat(1, 1)]);
    }
}
