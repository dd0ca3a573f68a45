//! Proper hypergeometric terms: a polynomial prefactor times a product of
//! factorials of integer-linear forms in `n` and `k`, each raised to a
//! nonzero integer power.
//!
//! Evaluation uses the support convention `1/m! = 0` for negative integers
//! `m`, so a term vanishes wherever a factorial in its denominator has a
//! negative argument.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Node};
use crate::numeric::{factorial, Integer, Rational};
use crate::poly::{Poly, RatFunc, Var};

/// `a*n + b*k + c`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl LinearForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        LinearForm { a, b, c }
    }

    pub fn coeff(&self, v: Var) -> i64 {
        match v {
            Var::N => self.a,
            Var::K => self.b,
        }
    }

    pub fn eval(&self, n0: i64, k0: i64) -> i64 {
        self.a * n0 + self.b * k0 + self.c
    }

    pub fn shifted(&self, dn: i64, dk: i64) -> Self {
        LinearForm::new(self.a, self.b, self.c + self.a * dn + self.b * dk)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(self.a, self.b, self.c)
    }

    /// True for a bare `n` or `k`, which render without parentheses.
    fn is_bare_var(&self) -> bool {
        self.c == 0 && ((self.a, self.b) == (1, 0) || (self.a, self.b) == (0, 1))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (coef, name) in [(self.a, "n"), (self.b, "k")] {
            if coef == 0 {
                continue;
            }
            if coef < 0 {
                f.write_str("-")?;
            } else if wrote {
                f.write_str("+")?;
            }
            if coef.abs() != 1 {
                write!(f, "{}*", coef.abs())?;
            }
            f.write_str(name)?;
            wrote = true;
        }
        if self.c != 0 || !wrote {
            if self.c < 0 {
                write!(f, "-{}", -self.c)?;
            } else if wrote {
                write!(f, "+{}", self.c)?;
            } else {
                write!(f, "{}", self.c)?;
            }
        }
        Ok(())
    }
}

/// `prefactor * prod (arg)!^exp`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperTerm {
    factors: Vec<(LinearForm, i32)>,
    prefactor: Poly,
}

impl HyperTerm {
    /// Canonicalise: merge repeated arguments, drop zero exponents, order
    /// numerator factors before denominator factors and each group by
    /// argument.
    pub fn new(factors: impl IntoIterator<Item = (LinearForm, i32)>, prefactor: Poly) -> Result<Self> {
        if prefactor.is_zero() {
            return Err(Error::Domain("hypergeometric term with zero prefactor".into()));
        }
        let mut merged: BTreeMap<LinearForm, i32> = BTreeMap::new();
        for (arg, e) in factors {
            *merged.entry(arg).or_insert(0) += e;
        }
        let mut factors: Vec<(LinearForm, i32)> = merged.into_iter().filter(|&(_, e)| e != 0).collect();
        factors.sort_by_key(|&(arg, e)| (e < 0, arg));
        Ok(HyperTerm { factors, prefactor })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let node = expr::parse(text)?;
        let partial = partial_term(&node)?;
        if !partial.scalar.is_polynomial() {
            return Err(Error::syntax(
                node.pos,
                "the non-factorial part of a term must be a polynomial",
            ));
        }
        HyperTerm::new(partial.factors, partial.scalar.num().clone())
    }

    pub fn factors(&self) -> &[(LinearForm, i32)] {
        &self.factors
    }

    pub fn prefactor(&self) -> &Poly {
        &self.prefactor
    }

    /// `t(n + dn, k + dk) / t(n, k)` as a normalised rational function.
    pub fn shift_ratio(&self, dn: i64, dk: i64) -> RatFunc {
        let mut num = self.prefactor.shift(Var::N, dn).shift(Var::K, dk);
        let mut den = self.prefactor.clone();
        for &(arg, e) in &self.factors {
            let delta = arg.a * dn + arg.b * dk;
            // (L + delta)! / L!
            let mut rising = Poly::one();
            if delta > 0 {
                for i in 1..=delta {
                    rising = &rising * &(&arg.to_poly() + &Poly::int(i));
                }
            } else {
                for i in 0..-delta {
                    rising = &rising * &(&arg.to_poly() + &Poly::int(-i));
                }
            }
            let p = rising.pow(e.unsigned_abs());
            if (delta > 0) == (e > 0) {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        RatFunc::new(num, den).expect("shift ratio has a nonzero denominator")
    }

    /// `t(shifted) / t` for a unit shift in `v`.
    pub fn shift_quotient(&self, v: Var) -> RatFunc {
        match v {
            Var::N => self.shift_ratio(1, 0),
            Var::K => self.shift_ratio(0, 1),
        }
    }

    /// Exact value at an integer point.
    pub fn eval(&self, n0: i64, k0: i64) -> Result<Rational> {
        for &(arg, e) in &self.factors {
            let v = arg.eval(n0, k0);
            if e > 0 && v < 0 {
                return Err(Error::Domain(format!("({arg})! with argument {v} at n={n0}, k={k0}")));
            }
        }
        if self.factors.iter().any(|&(arg, e)| e < 0 && arg.eval(n0, k0) < 0) {
            return Ok(Rational::zero());
        }
        let mut num = Integer::one();
        let mut den = Integer::one();
        for &(arg, e) in &self.factors {
            let f = factorial(arg.eval(n0, k0) as usize);
            let side = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *side *= &f;
            }
        }
        let pre = self
            .prefactor
            .eval(&Rational::from_integer(n0.into()), &Rational::from_integer(k0.into()));
        Ok(pre * Rational::new(num, den))
    }

    /// True if every factorial has a nonnegative argument at the point, so
    /// the term is given by its closed form without the support convention.
    pub fn is_interior(&self, n0: i64, k0: i64) -> bool {
        self.factors.iter().all(|&(arg, _)| arg.eval(n0, k0) >= 0)
    }
}

impl fmt::Display for HyperTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_factor = |arg: &LinearForm, e: i32| {
            let base = if arg.is_bare_var() || (arg.a == 0 && arg.b == 0 && arg.c >= 0) {
                format!("{arg}!")
            } else {
                format!("({arg})!")
            };
            if e.abs() == 1 {
                base
            } else {
                format!("{base}^{}", e.abs())
            }
        };
        let mut top: Vec<String> = Vec::new();
        if !self.prefactor.is_one() {
            let simple = self.prefactor.num_terms() == 1
                && self.prefactor.lc().is_integer()
                && self.prefactor.lc() > Rational::zero();
            if simple {
                top.push(self.prefactor.to_string());
            } else {
                top.push(format!("({})", self.prefactor));
            }
        }
        let mut bottom: Vec<String> = Vec::new();
        for (arg, e) in &self.factors {
            if *e > 0 {
                top.push(fmt_factor(arg, *e));
            } else {
                bottom.push(fmt_factor(arg, *e));
            }
        }
        if top.is_empty() {
            top.push("1".into());
        }
        f.write_str(&top.join("*"))?;
        match bottom.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", bottom[0]),
            _ => write!(f, "/({})", bottom.join("*")),
        }
    }
}

/// Intermediate result of interpreting a term: factorials plus a rational
/// scalar part.
struct Partial {
    factors: Vec<(LinearForm, i32)>,
    scalar: RatFunc,
}

impl Partial {
    fn scalar(r: RatFunc) -> Self {
        Partial {
            factors: Vec::new(),
            scalar: r,
        }
    }

    fn mul(mut self, other: Partial) -> Self {
        self.factors.extend(other.factors);
        self.scalar = &self.scalar * &other.scalar;
        self
    }

    fn pow(self, e: i32, pos: usize) -> Result<Self> {
        if self.scalar.is_zero() && e < 0 {
            return Err(Error::syntax(pos, "zero to a negative power"));
        }
        Ok(Partial {
            factors: self.factors.into_iter().map(|(a, x)| (a, x * e)).collect(),
            scalar: self.scalar.pow(e)?,
        })
    }
}

fn partial_term(node: &Node) -> Result<Partial> {
    match &node.expr {
        Expr::Factorial(inner) => {
            let (a, b, c) = expr::to_linear(inner).map_err(|e| match e {
                Error::Syntax { msg, .. } => Error::syntax(inner.pos, format!("factorial argument: {msg}")),
                other => other,
            })?;
            Ok(Partial {
                factors: vec![(LinearForm::new(a, b, c), 1)],
                scalar: RatFunc::one(),
            })
        }
        Expr::Mul(a, b) => Ok(partial_term(a)?.mul(partial_term(b)?)),
        Expr::Div(a, b) => {
            let denom = partial_term(b)?;
            if denom.scalar.is_zero() {
                return Err(Error::syntax(b.pos, "division by zero"));
            }
            Ok(partial_term(a)?.mul(denom.pow(-1, b.pos)?))
        }
        Expr::Pow(a, e) => partial_term(a)?.pow(*e, node.pos),
        Expr::Neg(a) => {
            let mut p = partial_term(a)?;
            p.scalar = -p.scalar;
            Ok(p)
        }
        Expr::Harmonic(_) => Err(Error::syntax(node.pos, "harmonic numbers are not allowed in a term")),
        Expr::Int(_) | Expr::Var(_) | Expr::Add(..) | Expr::Sub(..) => {
            if !expr::is_rational(node) {
                return Err(Error::syntax(node.pos, "factorials may not appear inside sums"));
            }
            Ok(Partial::scalar(expr::to_ratfunc(node)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{binomial, rat};

    pub(crate) const IDENTITY_TERM: &str = "k*(n+k)!^2/(k!^4*(n-k)!^2)";

    fn lf(a: i64, b: i64, c: i64) -> LinearForm {
        LinearForm::new(a, b, c)
    }

    #[test]
    fn parses_identity_term() {
        let t = HyperTerm::parse(IDENTITY_TERM).unwrap();
        assert_eq!(t.factors(), &[(lf(1, 1, 0), 2), (lf(0, 1, 0), -4), (lf(1, -1, 0), -2)]);
        assert_eq!(t.prefactor(), &Poly::var(Var::K));
        let maple = HyperTerm::parse("k*(n+k)!**2/k!**4/(n-k)!**2").unwrap();
        assert_eq!(maple, t);
    }

    #[test]
    fn parses_binomial() {
        let t = HyperTerm::parse("n!/(k!*(n-k)!)").unwrap();
        assert_eq!(t.factors(), &[(lf(1, 0, 0), 1), (lf(0, 1, 0), -1), (lf(1, -1, 0), -1)]);
        assert!(t.prefactor().is_one());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(HyperTerm::parse("k*((n+k)!"), Err(Error::Syntax { .. })));
        assert!(matches!(HyperTerm::parse("(n*k)!"), Err(Error::Syntax { .. })));
        assert!(matches!(HyperTerm::parse("(m+k)!"), Err(Error::Syntax { .. })));
        assert!(matches!(HyperTerm::parse("n!/k"), Err(Error::Syntax { .. })));
        assert!(matches!(HyperTerm::parse("n!+k!"), Err(Error::Syntax { .. })));
        assert!(matches!(HyperTerm::parse("(n/2)!"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn shift_quotients_of_identity_term() {
        let t = HyperTerm::parse(IDENTITY_TERM).unwrap();
        let qk = crate::expr::parse_ratfunc("(n+k+1)^2*(n-k)^2/(k*(k+1)^3)").unwrap();
        assert_eq!(t.shift_quotient(Var::K), qk);
        let qn = crate::expr::parse_ratfunc("(n+k+1)^2/(n-k+1)^2").unwrap();
        assert_eq!(t.shift_quotient(Var::N), qn);
        let b = HyperTerm::parse("n!/(k!*(n-k)!)").unwrap();
        assert_eq!(
            b.shift_quotient(Var::K),
            crate::expr::parse_ratfunc("(n-k)/(k+1)").unwrap()
        );
    }

    #[test]
    fn eval_identity_term() {
        let t = HyperTerm::parse(IDENTITY_TERM).unwrap();
        // k * C(n,k)^2 * C(n+k,k)^2 computed from binomials
        let oracle = |n: u64, k: i64| {
            rat(k, 1) * Rational::from_integer(binomial(n, k).pow(2) * binomial(n + k as u64, k).pow(2))
        };
        assert_eq!(t.eval(1, 1).unwrap(), rat(4, 1));
        assert_eq!(t.eval(1, 1).unwrap(), oracle(1, 1));
        assert_eq!(t.eval(2, 1).unwrap(), rat(36, 1));
        assert_eq!(t.eval(2, 1).unwrap(), oracle(2, 1));
        assert_eq!(t.eval(3, 4).unwrap(), rat(0, 1));
        for n in 0..8 {
            for k in 0..=n as i64 {
                assert_eq!(t.eval(n as i64, k).unwrap(), oracle(n, k));
            }
        }
        assert!(matches!(t.eval(0, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            IDENTITY_TERM,
            "n!/(k!*(n-k)!)",
            "(2*n+1)*(2*n)!/(n!^2*(n+k+3)!)",
            "(n+1)*(-k+7)!",
            "1/n!",
        ] {
            let t = HyperTerm::parse(s).unwrap();
            let again = HyperTerm::parse(&t.to_string()).unwrap();
            assert_eq!(again, t, "{s} -> {t}");
        }
        assert_eq!(HyperTerm::parse(IDENTITY_TERM).unwrap().to_string(), IDENTITY_TERM);
    }
}
