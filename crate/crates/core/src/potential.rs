//! WZ potentials: rational combinations of harmonic numbers `H(a*n+b*k+c)`
//! plus a rational-function part. Their unit differences in `n` and `k` are
//! rational functions, which is what makes `t * c` amenable to telescoping.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Node};
use crate::hyperterm::LinearForm;
use crate::numeric::{harmonic, Rational};
use crate::poly::{Poly, RatFunc, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Potential {
    hterms: Vec<(Rational, LinearForm)>,
    ratpart: RatFunc,
}

impl Potential {
    /// Harmonic arguments may move by at most one per unit shift, so each
    /// variable coefficient must lie in `{-1, 0, 1}`.
    pub fn new(hterms: impl IntoIterator<Item = (Rational, LinearForm)>, ratpart: RatFunc) -> Result<Self> {
        let mut merged: BTreeMap<LinearForm, Rational> = BTreeMap::new();
        for (coef, arg) in hterms {
            if arg.a.abs() > 1 || arg.b.abs() > 1 {
                return Err(Error::IncompatiblePotential(format!(
                    "H({arg}) moves by more than one under a unit shift"
                )));
            }
            *merged.entry(arg).or_insert_with(Rational::zero) += coef;
        }
        let hterms = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (c, a))
            .collect();
        Ok(Potential { hterms, ratpart })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let node = expr::parse(text)?;
        let mut summands = Vec::new();
        flatten_sum(&node, false, &mut summands);
        let mut hterms = Vec::new();
        let mut ratpart = RatFunc::zero();
        for (neg, s) in summands {
            if expr::is_rational(s) {
                let r = expr::to_ratfunc(s)?;
                ratpart = if neg { &ratpart - &r } else { &ratpart + &r };
            } else {
                let (c, arg) = harmonic_summand(s)?;
                hterms.push((if neg { -c } else { c }, arg));
            }
        }
        Potential::new(hterms, ratpart)
    }

    pub fn hterms(&self) -> &[(Rational, LinearForm)] {
        &self.hterms
    }

    pub fn ratpart(&self) -> &RatFunc {
        &self.ratpart
    }

    pub fn eval(&self, n0: i64, k0: i64) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (coef, arg) in &self.hterms {
            let m = arg.eval(n0, k0);
            if m < 0 {
                return Err(Error::Domain(format!("H({arg}) at n={n0}, k={k0} has index {m}")));
            }
            acc += coef * harmonic(m)?;
        }
        let r = self
            .ratpart
            .eval(&Rational::from_integer(n0.into()), &Rational::from_integer(k0.into()))?;
        Ok(acc + r)
    }

    /// `c(v + 1) - c` as a rational function, from `H(m+1) - H(m) = 1/(m+1)`.
    pub fn delta(&self, v: Var) -> RatFunc {
        let mut acc = &self.ratpart.shift(v, 1) - &self.ratpart;
        for (coef, arg) in &self.hterms {
            let step = match arg.coeff(v) {
                0 => continue,
                1 => RatFunc::new(Poly::constant(coef.clone()), arg.to_poly() + Poly::int(1)),
                -1 => RatFunc::new(Poly::constant(-coef), arg.to_poly()),
                _ => unreachable!("checked on construction"),
            }
            .expect("linear denominators are nonzero");
            acc = &acc + &step;
        }
        acc
    }
}

fn flatten_sum<'a>(node: &'a Node, neg: bool, out: &mut Vec<(bool, &'a Node)>) {
    match &node.expr {
        Expr::Add(a, b) => {
            flatten_sum(a, neg, out);
            flatten_sum(b, neg, out);
        }
        Expr::Sub(a, b) => {
            flatten_sum(a, neg, out);
            flatten_sum(b, !neg, out);
        }
        Expr::Neg(a) if !expr::is_rational(node) => flatten_sum(a, !neg, out),
        _ => out.push((neg, node)),
    }
}

fn constant_of(node: &Node) -> Result<Rational> {
    let r = expr::to_ratfunc(node)?;
    if !r.is_polynomial() || !r.num().is_constant() {
        return Err(Error::syntax(
            node.pos,
            "harmonic coefficients must be rational constants",
        ));
    }
    Ok(r.num().coeff(0, 0))
}

fn harmonic_summand(node: &Node) -> Result<(Rational, LinearForm)> {
    match &node.expr {
        Expr::Harmonic(inner) => {
            let (a, b, c) = expr::to_linear(inner)?;
            Ok((Rational::one(), LinearForm::new(a, b, c)))
        }
        Expr::Neg(a) => harmonic_summand(a).map(|(c, l)| (-c, l)),
        Expr::Mul(a, b) if expr::is_rational(a) => {
            let (c, l) = harmonic_summand(b)?;
            Ok((constant_of(a)? * c, l))
        }
        Expr::Mul(a, b) if expr::is_rational(b) => {
            let (c, l) = harmonic_summand(a)?;
            Ok((constant_of(b)? * c, l))
        }
        Expr::Div(a, b) if expr::is_rational(b) => {
            let d = constant_of(b)?;
            if d.is_zero() {
                return Err(Error::syntax(b.pos, "division by zero"));
            }
            let (c, l) = harmonic_summand(a)?;
            Ok((c / d, l))
        }
        _ => Err(Error::syntax(
            node.pos,
            "expected a rational multiple of H(linear) or a rational function",
        )),
    }
}

/// The potential inside the braces of the vanishing identity:
/// `1/(2k) + H(n+k) + H(n-k) - 2 H(k)`.
pub fn identity_potential() -> Potential {
    let one = Rational::one();
    Potential::new(
        [
            (one.clone(), LinearForm::new(1, 1, 0)),
            (one.clone(), LinearForm::new(1, -1, 0)),
            (-(one.clone() + one), LinearForm::new(0, 1, 0)),
        ],
        RatFunc::new(Poly::one(), Poly::linear(0, 2, 0)).unwrap(),
    )
    .expect("unit coefficients")
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.ratpart.is_zero() {
            write!(f, "{}", self.ratpart)?;
            first = false;
        }
        for (coef, arg) in &self.hterms {
            let a = coef.abs();
            if coef.is_negative() {
                f.write_str(if first { "-" } else { " - " })?;
            } else if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if !a.is_one() {
                if a.is_integer() {
                    write!(f, "{a}*")?;
                } else {
                    write!(f, "({a})*")?;
                }
            }
            write!(f, "H({arg})")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
