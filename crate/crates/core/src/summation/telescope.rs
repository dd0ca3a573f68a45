//! Creative telescoping. The pure case is parameterised Gosper; the
//! potential case solves the coefficient-of-`c` and coefficient-of-1
//! equations together as one homogeneous system over `Q(n)`.

use super::gosper::{assemble_k_poly, coefficient_rows, degree_bound, gosper_form, operator_columns, GosperForm};
use super::{normalizing_scale, Certificate, Recurrence};
use crate::error::{Error, Result};
use crate::hyperterm::HyperTerm;
use crate::linalg;
use crate::poly::{Poly, RatFunc, Var};
use crate::potential::Potential;
use crate::upoly::UPoly;

/// Retries with this many extra certificate degrees before giving up on an order.
const DEGREE_RETRIES: usize = 2;

pub fn zeilberger(t: &HyperTerm, max_order: usize) -> Result<(Recurrence, Certificate)> {
    search(t, None, max_order)
}

pub fn zeil_potential(t: &HyperTerm, c: &Potential, max_order: usize) -> Result<(Recurrence, Certificate)> {
    search(t, Some(c), max_order)
}

fn search(t: &HyperTerm, c: Option<&Potential>, max_order: usize) -> Result<(Recurrence, Certificate)> {
    if max_order == 0 {
        return Err(Error::Precondition("max_order must be at least 1".into()));
    }
    let mut tried = Vec::new();
    for order in 1..=max_order {
        tried.push(order);
        let setup = Setup::new(t, order);
        for extra in 0..=DEGREE_RETRIES {
            let found = match c {
                None => setup.solve_pure(extra),
                Some(c) => setup.solve_potential(c, extra),
            };
            if let Some(found) = found {
                return Ok(found);
            }
        }
    }
    Err(Error::NotFound { orders: tried })
}

/// Data shared by every degree attempt at a fixed order.
struct Setup {
    order: usize,
    /// `t(n+j,k)/t(n,k) * den` for `j = 0..=order`
    shifted: Vec<Poly>,
    den: Poly,
    /// Gosper form of the shift quotient of `t / den`
    form: GosperForm,
    /// shift quotient of `t / den`
    ratio: RatFunc,
}

impl Setup {
    fn new(t: &HyperTerm, order: usize) -> Self {
        let ratios: Vec<RatFunc> = (0..=order as i64).map(|j| t.shift_ratio(j, 0)).collect();
        let den = ratios.iter().fold(Poly::one(), |acc, r| acc.lcm(r.den()));
        let shifted = ratios.iter().map(|r| r.num() * &den.exact_div(r.den())).collect();
        let den_ratio = RatFunc::new(den.clone(), den.shift(Var::K, 1)).expect("nonzero");
        let ratio = &t.shift_quotient(Var::K) * &den_ratio;
        let form = gosper_form(&ratio);
        Setup {
            order,
            shifted,
            den,
            form,
            ratio,
        }
    }

    /// Degree of the first certificate unknown and the right-hand sides
    /// `c * N_j` of the coefficient-of-`c` equation.
    fn pure_part(&self, extra: usize) -> (usize, Vec<Poly>) {
        let rhs: Vec<Poly> = self.shifted.iter().map(|p| &self.form.c * p).collect();
        let deg_f = rhs.iter().map(|p| p.degree(Var::K)).max().unwrap_or(0) as usize;
        let d = degree_bound(&self.form.a, &self.form.b, deg_f).unwrap_or(0) + extra;
        (d, rhs)
    }

    fn r1_from(&self, xs: &[UPoly]) -> RatFunc {
        let x = assemble_k_poly(xs);
        let num = &self.form.b.shift(Var::K, -1) * &x;
        RatFunc::new(num, &self.form.c * &self.den).expect("nonzero")
    }

    fn solve_pure(&self, extra: usize) -> Option<(Recurrence, Certificate)> {
        let (d, rhs) = self.pure_part(extra);
        let nx = d + 1;
        let ns = self.order + 1;
        let mut eq = operator_columns(&self.form, d);
        eq.extend(rhs.iter().map(|p| -p));
        let rows = coefficient_rows(&[eq], nx + ns);
        let v = pick(linalg::nullspace(rows, nx + ns))?;
        let (sigma, scale) = normalize_sigma(&v[nx..]);
        let r1 = &self.r1_from(&v[..nx]) * &scale;
        Some((sigma, Certificate::pure(r1)))
    }

    fn solve_potential(&self, c: &Potential, extra: usize) -> Option<(Recurrence, Certificate)> {
        let (d1, rhs1) = self.pure_part(extra);
        let f_c = c.delta(Var::K);
        let g_c = c.delta(Var::N);
        // D_j = sum_{i<j} G_c(n+i, k)
        let mut partial = vec![RatFunc::zero()];
        for i in 0..self.order as i64 {
            let next = partial.last().unwrap() + &g_c.shift(Var::N, i);
            partial.push(next);
        }
        let a_fc = &(&RatFunc::from_poly(self.form.a.clone()) * &f_c)
            * &RatFunc::new(Poly::one(), self.form.c.clone()).expect("nonzero");
        let e = partial
            .iter()
            .chain(std::iter::once(&a_fc))
            .fold(Poly::one(), |acc, r| acc.lcm(r.den()));
        let cleared = |r: &RatFunc| r.num() * &e.exact_div(r.den());
        // columns of P2: sigma_j -> N_j D_j E, xi_i -> -(k+1)^i a F_c E / c
        let sigma_cols: Vec<Poly> = self
            .shifted
            .iter()
            .zip(&partial)
            .map(|(nj, dj)| nj * &cleared(dj))
            .collect();
        let base = cleared(&a_fc);
        let k1 = Poly::linear(0, 1, 1);
        let mut xi_cols = Vec::with_capacity(d1 + 1);
        let mut pw = Poly::one();
        for _ in 0..=d1 {
            xi_cols.push(-&(&pw * &base));
            pw = &pw * &k1;
        }
        let e_ratio = RatFunc::new(e.clone(), e.shift(Var::K, 1)).expect("nonzero");
        let form2 = gosper_form(&(&self.ratio * &e_ratio));
        let deg_p2 = sigma_cols
            .iter()
            .chain(&xi_cols)
            .map(|p| p.degree(Var::K))
            .max()
            .unwrap_or(0);
        let deg_f2 = (form2.c.degree(Var::K) + deg_p2) as usize;
        let d2 = degree_bound(&form2.a, &form2.b, deg_f2).unwrap_or(0) + extra;

        // unknowns: xi (d1+1), eta (d2+1), sigma (order+1)
        let (nx, ne, ns) = (d1 + 1, d2 + 1, self.order + 1);
        let total = nx + ne + ns;
        let mut eq1 = operator_columns(&self.form, d1);
        eq1.extend(std::iter::repeat_n(Poly::zero(), ne));
        eq1.extend(rhs1.iter().map(|p| -p));
        let mut eq2: Vec<Poly> = xi_cols.iter().map(|p| -&(&form2.c * p)).collect();
        eq2.extend(operator_columns(&form2, d2));
        eq2.extend(sigma_cols.iter().map(|p| -&(&form2.c * p)));
        let rows = coefficient_rows(&[eq1, eq2], total);
        let v = pick(linalg::nullspace(rows, total))?;
        let (sigma, scale) = normalize_sigma(&v[nx + ne..]);
        let r1 = &self.r1_from(&v[..nx]) * &scale;
        let x2 = assemble_k_poly(&v[nx..nx + ne]);
        let r2 = RatFunc::new(&form2.b.shift(Var::K, -1) * &x2, &(&form2.c * &self.den) * &e).expect("nonzero");
        let r2 = &r2 * &scale;
        Some((sigma, Certificate::potential(r1, r2)))
    }
}

/// First nullspace vector, by descending free column, whose leading
/// recurrence coefficient is not identically zero.
fn pick(basis: Vec<(usize, Vec<UPoly>)>) -> Option<Vec<UPoly>> {
    basis
        .into_iter()
        .rev()
        .map(|(_, v)| v)
        .find(|v| !v.last().unwrap().is_zero())
}

/// Recurrence with coprime integer coefficients and the factor that was
/// divided out, as a rational function of `n` to apply to the certificate.
fn normalize_sigma(sigma: &[UPoly]) -> (Recurrence, RatFunc) {
    let g = sigma
        .iter()
        .filter(|s| !s.is_zero())
        .fold(UPoly::zero(), |acc, s| acc.gcd(s));
    let reduced: Vec<Poly> = sigma
        .iter()
        .map(|s| Poly::from_upoly(&s.exact_div(&g), Var::N))
        .collect();
    let s = normalizing_scale(&reduced);
    let scaled: Vec<Poly> = reduced.iter().map(|p| p.scale(&s)).collect();
    let rec = Recurrence::new(scaled).expect("leading coefficient is nonzero");
    let factor = RatFunc::new(Poly::constant(s), Poly::from_upoly(&g, Var::N)).expect("nonzero");
    (rec, factor)
}


#[cfg(test)]
mod potential_tests {
    use super::*;
    use crate::potential::identity_potential;
    use crate::summation::verify_certificate_report;

    #[test]
    fn identity_summand_with_potential() {
        let t = HyperTerm::parse("k*(n+k)!^2/(k!^4*(n-k)!^2)").unwrap();
        let c = identity_potential();
        let (rec, cert) = zeil_potential(&t, &c, 3).unwrap();
        assert!(rec.order() <= 3);
        let report = verify_certificate_report(&t, Some(&c), &rec, &cert);
        assert!(report.passed(), "{report:?}");
        let mut broken = cert.clone();
        broken.r2 = Some(cert.r2.as_ref().unwrap() + &RatFunc::one());
        assert!(!verify_certificate_report(&t, Some(&c), &rec, &broken).symbolic);
    }
}
