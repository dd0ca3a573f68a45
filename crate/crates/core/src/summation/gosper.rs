//! Gosper's algorithm over `Q(n)`: polynomial normal form of a term ratio,
//! the degree bound for the polynomial unknown, and the antidifference.

use num_traits::Zero;

use crate::linalg;
use crate::numeric::{rat, Rational};
use crate::poly::{Poly, RatFunc, Var};
use crate::upoly::UPoly;

/// `ratio = a(k)/b(k) * c(k+1)/c(k)` with `gcd(a(k), b(k+h)) = 1` for every
/// integer `h >= 0`.
#[derive(Clone, Debug)]
pub struct GosperForm {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

/// Integers `h >= 0` for which `p(k)` and `q(k+h)` may share a factor.
///
/// Candidates come from a specialisation of `n`; every genuine `h` survives
/// specialisation because neither leading coefficient vanishes there, and
/// spurious ones are discarded by the bivariate gcd in the caller.
fn dispersion_candidates(p: &Poly, q: &Poly) -> Vec<i64> {
    if !p.involves(Var::K) || !q.involves(Var::K) {
        return Vec::new();
    }
    let lead = |x: &Poly| x.k_coeffs().last().cloned().unwrap();
    let (lp, lq) = (lead(p), lead(q));
    let n0 = [rat(3, 7), rat(5, 11), rat(2, 13), rat(7, 17), rat(1, 19)]
        .into_iter()
        .find(|v| !lp.eval(v).is_zero() && !lq.eval(v).is_zero())
        .expect("a leading coefficient vanishes at every trial point");
    let p0 = p.specialize_n(&n0);
    let q0 = q.specialize_n(&n0);
    let bound = (p0.root_bound() + q0.root_bound()).ceil() as i64 + 1;
    (0..=bound)
        .filter(|&h| {
            let g = p0.gcd(&q0.shift(&Rational::from_integer(h.into())));
            g.degree().is_some_and(|d| d > 0)
        })
        .collect()
}

pub fn gosper_form(ratio: &RatFunc) -> GosperForm {
    let mut a = ratio.num().clone();
    let mut b = ratio.den().clone();
    let mut c = Poly::one();
    for h in dispersion_candidates(&a, &b) {
        loop {
            let g = a.gcd(&b.shift(Var::K, h)).unwrap();
            if !g.involves(Var::K) {
                break;
            }
            a = a.exact_div(&g);
            b = b.exact_div(&g.shift(Var::K, -h));
            for i in 1..=h {
                c = &c * &g.shift(Var::K, -i);
            }
        }
    }
    GosperForm { a, b, c }
}

fn lead_k(p: &Poly) -> (usize, UPoly, UPoly) {
    let cs = p.k_coeffs();
    let d = cs.len() - 1;
    let sub = if d > 0 { cs[d - 1].clone() } else { UPoly::zero() };
    (d, cs[d].clone(), sub)
}

/// Upper bound on `deg_k x` for a polynomial solution of
/// `a(k) x(k+1) - b(k-1) x(k) = f(k)` with `deg_k f <= deg_f`; `None` when
/// no nonzero solution can exist.
pub fn degree_bound(a: &Poly, b: &Poly, deg_f: usize) -> Option<usize> {
    let b1 = b.shift(Var::K, -1);
    let (da, la, sa) = lead_k(a);
    let (db, lb, sb) = lead_k(&b1);
    let deg_f = deg_f as i64;
    let bound = if da != db || la != lb {
        deg_f - da.max(db) as i64
    } else {
        // leading terms cancel; the next ones cancel only for one degree
        let mut best = deg_f - da as i64 + 1;
        if da > 0 {
            let diff = &sb - &sa;
            let (q, r) = diff.div_rem(&la);
            if r.is_zero() && q.is_constant() {
                let v = q.coeff(0);
                if v.is_integer() && v >= Rational::zero() {
                    let v = v.to_integer();
                    let v: i64 = i64::try_from(&v).unwrap_or(i64::MAX);
                    best = best.max(v);
                }
            }
        }
        best
    };
    (bound >= 0).then_some(bound as usize)
}

/// Rows of the linear system expressing that every listed polynomial
/// (given as coefficient polynomials per unknown) vanishes identically.
pub(crate) fn coefficient_rows(eqs: &[Vec<Poly>], nunknowns: usize) -> Vec<Vec<UPoly>> {
    let mut rows = Vec::new();
    for eq in eqs {
        let split: Vec<Vec<UPoly>> = eq.iter().map(|p| p.k_coeffs()).collect();
        let maxdeg = split.iter().map(|s| s.len()).max().unwrap_or(0);
        for m in 0..maxdeg {
            let row: Vec<UPoly> = (0..nunknowns)
                .map(|u| split.get(u).and_then(|s| s.get(m)).cloned().unwrap_or_else(UPoly::zero))
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Polynomials `a(k)(k+1)^i - b(k-1)k^i` for `i = 0..=d`: the images of
/// the monomials of `x` under the Gosper operator.
pub(crate) fn operator_columns(form: &GosperForm, d: usize) -> Vec<Poly> {
    let b1 = form.b.shift(Var::K, -1);
    let k = Poly::var(Var::K);
    let k1 = &k + &Poly::one();
    let mut out = Vec::with_capacity(d + 1);
    let mut pk = Poly::one();
    let mut pk1 = Poly::one();
    for _ in 0..=d {
        out.push(&(&form.a * &pk1) - &(&b1 * &pk));
        pk = &pk * &k;
        pk1 = &pk1 * &k1;
    }
    out
}

/// `x(k) = sum_i coeffs[i] * k^i` with coefficients polynomial in `n`.
pub(crate) fn assemble_k_poly(coeffs: &[UPoly]) -> Poly {
    Poly::from_k_coeffs(coeffs)
}

/// Gosper's algorithm. Given the shift quotient `r = t(k+1)/t(k)`, returns
/// `R` with `R(k+1) r(k) - R(k) = 1`, so that `R t` is an antidifference of
/// `t`, or `None` if `t` has no hypergeometric antidifference.
pub fn gosper(ratio: &RatFunc) -> Option<RatFunc> {
    if ratio.is_zero() {
        return None;
    }
    let form = gosper_form(ratio);
    let d = degree_bound(&form.a, &form.b, form.c.degree(Var::K) as usize)?;
    // unknowns: x_0..x_d, then lambda multiplying -c
    let mut eq = operator_columns(&form, d);
    eq.push(-&form.c);
    let rows = coefficient_rows(&[eq], d + 2);
    let basis = linalg::nullspace(rows, d + 2);
    let lambda = d + 1;
    let (_, v) = basis.into_iter().rev().find(|(_, v)| !v[lambda].is_zero())?;
    let x = assemble_k_poly(&v[..=d]);
    let num = &form.b.shift(Var::K, -1) * &x;
    let den = &form.c * &Poly::from_upoly(&v[lambda], Var::N);
    RatFunc::new(num, den).ok()
}
