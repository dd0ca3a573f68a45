//! Polynomials and rational functions in the two variables `n` and `k`
//! over the rationals.
//!
//! A [`Poly`] is a sparse table from exponent pairs `(deg_n, deg_k)` to
//! nonzero coefficients. Monomials compare lexicographically with `n > k`,
//! which is exactly the tuple order of the keys, so the leading term is the
//! last entry of the table.
//!
//! A [`RatFunc`] is kept normalised: numerator and denominator coprime and
//! the denominator monic. Two rational functions are equal iff they are
//! structurally equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modp;
use crate::numeric::{Integer, Rational};
use crate::upoly::{integer_content_scale, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    N,
    K,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::K => "k",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Rational::one(), v, 1)
    }

    pub fn monomial(c: Rational, v: Var, e: u32) -> Self {
        let mut p = Poly::zero();
        match v {
            Var::N => p.add_term(e, 0, c),
            Var::K => p.add_term(0, e, c),
        }
        p
    }

    /// `a*n + b*k + c`
    pub fn linear(a: i64, b: i64, c: i64) -> Self {
        let mut p = Poly::zero();
        p.add_term(1, 0, Rational::from_integer(a.into()));
        p.add_term(0, 1, Rational::from_integer(b.into()));
        p.add_term(0, 0, Rational::from_integer(c.into()));
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = Poly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, dn: u32, dk: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((dn, dk)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dn: u32, dk: u32) -> Rational {
        self.terms.get(&(dn, dk)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(0, 0))
        } else {
            None
        }
    }

    /// Degree in `v`; the zero polynomial has degree 0 here.
    pub fn degree(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::N { i } else { j })
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree(v) > 0
    }

    /// Leading coefficient under lex order with `n > k`.
    pub fn lc(&self) -> Rational {
        self.terms
            .last_key_value()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, n0: &Rational, k0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow_rat(n0, i) * pow_rat(k0, j);
        }
        acc
    }

    /// Substitute `v -> v + offset`.
    pub fn shift(&self, v: Var, offset: i64) -> Poly {
        if offset == 0 {
            return self.clone();
        }
        let h = Rational::from_integer(offset.into());
        let mut out = Poly::zero();
        for (&(i, j), c) in &self.terms {
            let e = if v == Var::N { i } else { j };
            // (v + h)^e = sum_m C(e, m) h^(e-m) v^m
            let mut binom = Integer::one();
            for m in 0..=e {
                let coef = c * Rational::from_integer(binom.clone()) * pow_rat(&h, e - m);
                match v {
                    Var::N => out.add_term(m, j, coef),
                    Var::K => out.add_term(i, m, coef),
                }
                binom = binom * Integer::from(e - m) / Integer::from(m + 1);
            }
        }
        out
    }

    /// Specialise `n` to a value, giving a univariate polynomial in `k`.
    pub fn specialize_n(&self, n0: &Rational) -> UPoly {
        let deg = self.degree(Var::K) as usize;
        let mut cs = vec![Rational::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            cs[j as usize] += c * pow_rat(n0, i);
        }
        UPoly::from_coeffs(cs)
    }

    /// View as a polynomial in `k` with coefficients in `Q[n]`.
    pub fn k_coeffs(&self) -> Vec<UPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let dk = self.degree(Var::K) as usize;
        let dn = self.degree(Var::N) as usize;
        let mut raw = vec![vec![Rational::zero(); dn + 1]; dk + 1];
        for (&(i, j), c) in &self.terms {
            raw[j as usize][i as usize] = c.clone();
        }
        raw.into_iter().map(UPoly::from_coeffs).collect()
    }

    pub fn from_k_coeffs(cs: &[UPoly]) -> Poly {
        let mut p = Poly::zero();
        for (j, u) in cs.iter().enumerate() {
            for (i, c) in u.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// A polynomial in `n` alone, as a `UPoly`; `None` if `k` occurs.
    pub fn as_upoly_n(&self) -> Option<UPoly> {
        if self.involves(Var::K) {
            return None;
        }
        let cs = self.k_coeffs();
        Some(cs.into_iter().next().unwrap_or_else(UPoly::zero))
    }

    pub fn from_upoly(u: &UPoly, v: Var) -> Poly {
        let mut p = Poly::zero();
        for (i, c) in u.coeffs().iter().enumerate() {
            match v {
                Var::N => p.add_term(i as u32, 0, c.clone()),
                Var::K => p.add_term(0, i as u32, c.clone()),
            }
        }
        p
    }

    /// Quotient and remainder of lex-order multivariate division.
    /// The remainder is zero whenever `d` divides `self`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (&(ln, lk), lc) = d.terms.last_key_value().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let mut leftover = Poly::zero();
        while let Some((&(rn, rk), rc)) = rem.terms.last_key_value() {
            if rn >= ln && rk >= lk {
                let c = rc / lc;
                let mut t = Poly::zero();
                t.add_term(rn - ln, rk - lk, c);
                rem = &rem - &(&t * d);
                quot = &quot + &t;
            } else {
                let c = rc.clone();
                rem.terms.remove(&(rn, rk));
                leftover.add_term(rn, rk, c);
            }
        }
        (quot, leftover)
    }

    /// Divide, returning `None` if the division is inexact.
    pub fn checked_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn exact_div(&self, d: &Poly) -> Poly {
        self.checked_div(d).expect("inexact polynomial division")
    }

    /// Monic greatest common divisor. Computed as a primitive remainder
    /// sequence in `k` over `Q[n]`, times the gcd of the contents in `n`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::Domain("gcd of two zero polynomials".into()));
        }
        Ok(gcd_nonzero(self, other))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = gcd_nonzero(self, other);
        (&self.exact_div(&g) * other).monic()
    }

    /// Integer-coefficient multiple with unit content and positive leading
    /// coefficient.
    pub fn integer_primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let cs: Vec<Rational> = self.terms.values().cloned().collect();
        let mut p = self.scale(&integer_content_scale(&cs));
        if p.lc().is_negative() {
            p = -p;
        }
        p
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn content(cs: &[UPoly]) -> UPoly {
    let mut g = UPoly::zero();
    for c in cs {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = g.gcd(c);
    }
    g
}

/// Primitive part over `Q[n]`, scaled to coprime integer coefficients.
fn prim_part(cs: &[UPoly]) -> Vec<UPoly> {
    let c = content(cs);
    let divided: Vec<UPoly> = if c.is_constant() {
        cs.to_vec()
    } else {
        cs.iter().map(|x| x.exact_div(&c)).collect()
    };
    let flat: Vec<Rational> = divided.iter().flat_map(|u| u.coeffs().iter().cloned()).collect();
    let s = integer_content_scale(&flat);
    divided.iter().map(|u| u.scale(&s)).collect()
}

fn trim(cs: &mut Vec<UPoly>) {
    while cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
}

/// Sparse pseudo-remainder of `a` by `b` as polynomials in `k`.
fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bc);
        }
        trim(&mut r);
    }
    r
}

/// Exact test that the primitive parts share no factor involving `k`. A
/// common factor keeps its `k`-degree under any specialisation of `n` at
/// which both leading coefficients survive.
fn coprime_in_k(ac: &[UPoly], bc: &[UPoly]) -> bool {
    if ac.len() < 2 || bc.len() < 2 {
        return true;
    }
    let reduce = |cs: &[UPoly]| cs.iter().map(|c| c.reduce_mod_p()).collect::<Option<Vec<_>>>();
    let (Some(am), Some(bm)) = (reduce(ac), reduce(bc)) else {
        return false;
    };
    (0..4u64).any(|i| {
        let n0 = 1_000_003 + 7919 * i;
        let a: Vec<u64> = am.iter().map(|c| modp::MERSENNE.eval(c, n0)).collect();
        let b: Vec<u64> = bm.iter().map(|c| modp::MERSENNE.eval(c, n0)).collect();
        a.last() != Some(&0) && b.last() != Some(&0) && modp::MERSENNE.gcd_degree(&a, &b) == Some(0)
    })
}

fn gcd_nonzero(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ac = a.k_coeffs();
    let bc = b.k_coeffs();
    let g_content = content(&ac).gcd(&content(&bc));
    if coprime_in_k(&ac, &bc) {
        return Poly::from_upoly(&g_content, Var::N).monic();
    }
    let mut p = prim_part(&ac);
    let mut q = prim_part(&bc);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.len() == 1 {
            // nonzero and free of k: the primitive gcd is trivial
            p = vec![UPoly::one()];
            break;
        }
        let r = prem(&p, &q);
        if r.is_empty() {
            p = q;
            break;
        }
        p = q;
        q = prim_part(&r);
    }
    let g = Poly::from_k_coeffs(&p);
    (&g * &Poly::from_upoly(&g_content, Var::N)).monic()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                $tr::$m(&self, &rhs)
            }
        }
    )*};
}

forward_owned!(Poly, Add::add, Sub::sub, Mul::mul);

fn fmt_monomial(f: &mut fmt::Formatter<'_>, dn: u32, dk: u32) -> fmt::Result {
    let mut first = true;
    for (v, e) in [("n", dn), ("k", dk)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Expanded infix form, leading term first. Non-integer coefficients of
    /// non-constant monomials are parenthesised so the text re-parses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let constant = i == 0 && j == 0;
            if constant {
                write!(f, "{a}")?;
                continue;
            }
            if a.is_integer() {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
            } else {
                write!(f, "({a})*")?;
            }
            fmt_monomial(f, i, j)?;
        }
        Ok(())
    }
}

/// Normalised quotient of two polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = gcd_nonzero(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.lc();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(Poly::int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::Pole("division by the zero rational function".into()));
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn eval(&self, n0: &Rational, k0: &Rational) -> Result<Rational> {
        let d = self.den.eval(n0, k0);
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} at n={n0}, k={k0}")));
        }
        Ok(self.num.eval(n0, k0) / d)
    }

    pub fn shift(&self, v: Var, offset: i64) -> RatFunc {
        // a shift maps coprime pairs to coprime pairs and keeps the leading
        // coefficient, so no renormalisation is required
        RatFunc {
            num: self.num.shift(v, offset),
            den: self.den.shift(v, offset),
        }
    }

    /// Numerator and denominator scaled to coprime integer coefficients,
    /// denominator with positive leading coefficient.
    pub fn integer_parts(&self) -> (Poly, Poly) {
        let flat: Vec<Rational> = self
            .num
            .terms()
            .chain(self.den.terms())
            .map(|(_, c)| c.clone())
            .collect();
        let s = integer_content_scale(&flat);
        (self.num.scale(&s), self.den.scale(&s))
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd_nonzero(&self.den, &rhs.den);
        let a = self.den.exact_div(&g);
        let b = rhs.den.exact_div(&g);
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::normalize(num, &a * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying to keep the gcds small
        let g1 = gcd_nonzero(&self.num, &rhs.den);
        let g2 = gcd_nonzero(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = rhs.den.exact_div(&g1);
        let n2 = rhs.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.lc();
        let inv = lc.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

forward_owned!(RatFunc, Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.integer_parts();
        if den.is_one() {
            return write!(f, "{num}");
        }
        let simple = |p: &Poly| p.num_terms() == 1 && p.lc().is_one();
        if simple(&num) {
            write!(f, "{num}")?;
        } else {
            write!(f, "({num})")?;
        }
        if den.is_constant() || simple(&den) && den.terms().all(|(&(i, j), _)| i + j <= 1) {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}
