//! Indefinite and definite hypergeometric summation: Gosper's algorithm,
//! creative telescoping for `t` and for `t * c` with a WZ potential `c`,
//! certificate checking, and recurrence guessing from sequence values.

mod gosper;
mod guess;
mod telescope;
mod verify;

use std::fmt;

use num_traits::Signed;
use serde_json::{json, Value};

use crate::numeric::Rational;
use crate::poly::{Poly, RatFunc, Var};

pub use gosper::{degree_bound, gosper, gosper_form, GosperForm};
pub use guess::{apply_recurrence, guess_recurrence};
pub use telescope::{zeil_potential, zeilberger};
pub use verify::{verify_certificate, verify_certificate_report, VerifyReport, SPOT_CHECKS};

/// `sum_j coeffs[j](n) * u(n + j) = 0`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recurrence {
    coeffs: Vec<Poly>,
}

impl Recurrence {
    /// Scales the coefficients to coprime integer polynomials with the
    /// leading coefficient of the top one positive. Coefficients must not
    /// involve `k`, and the top one must be nonzero.
    pub fn new(coeffs: Vec<Poly>) -> crate::Result<Self> {
        if coeffs.iter().any(|p| p.involves(Var::K)) {
            return Err(crate::Error::Precondition(
                "recurrence coefficients must be free of k".into(),
            ));
        }
        if coeffs.last().is_none_or(|p| p.is_zero()) {
            return Err(crate::Error::Precondition(
                "leading recurrence coefficient is zero".into(),
            ));
        }
        let scale = normalizing_scale(&coeffs);
        Ok(Recurrence {
            coeffs: coeffs.iter().map(|p| p.scale(&scale)).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Poly {
        self.coeffs.last().unwrap()
    }

    /// Same operator up to a factor that is rational in `n`.
    pub fn is_proportional_to(&self, other: &Recurrence) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let (a, b) = (self.leading(), other.leading());
        self.coeffs.iter().zip(&other.coeffs).all(|(x, y)| x * b == y * a)
    }

    /// Substitute `n -> n + offset` in every coefficient.
    pub fn shifted(&self, offset: i64) -> Recurrence {
        Recurrence {
            coeffs: self.coeffs.iter().map(|p| p.shift(Var::N, offset)).collect(),
        }
    }
}

/// Rational scale making the coefficient vector integer and primitive with
/// a positive top leading coefficient.
pub(crate) fn normalizing_scale(coeffs: &[Poly]) -> Rational {
    let flat: Vec<Rational> = coeffs.iter().flat_map(|p| p.terms().map(|(_, c)| c.clone())).collect();
    let mut s = crate::upoly::integer_content_scale(&flat);
    if coeffs.last().is_some_and(|p| p.lc().is_negative()) {
        s = -s;
    }
    s
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let idx = if j == 0 { "n".to_string() } else { format!("n+{j}") };
            write!(f, "({c})*u({idx})")?;
        }
        f.write_str(" = 0")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertKind {
    Pure,
    Potential,
}

impl CertKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertKind::Pure => "pure",
            CertKind::Potential => "potential",
        }
    }
}

/// Proof object for a telescoping relation: `G = t * r1` (pure) or
/// `G = t * (r1 * c + r2)` (potential).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub kind: CertKind,
    pub r1: RatFunc,
    pub r2: Option<RatFunc>,
}

impl Certificate {
    pub fn pure(r1: RatFunc) -> Self {
        Certificate {
            kind: CertKind::Pure,
            r1,
            r2: None,
        }
    }

    pub fn potential(r1: RatFunc, r2: RatFunc) -> Self {
        Certificate {
            kind: CertKind::Potential,
            r1,
            r2: Some(r2),
        }
    }
}

/// The recurrence/certificate JSON document.
pub fn certificate_json(rec: &Recurrence, cert: &Certificate, verified: bool) -> Value {
    json!({
        "order": rec.order(),
        "coeffs": rec.coeffs().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "certificate": {
            "kind": cert.kind.as_str(),
            "r1": cert.r1.to_string(),
            "r2": cert.r2.as_ref().map(|r| r.to_string()),
        },
        "verified": verified,
    })
}

/// Parse a document produced by [`certificate_json`].
pub fn certificate_from_json(v: &Value) -> crate::Result<(Recurrence, Certificate)> {
    let bad = |what: &str| crate::Error::Precondition(format!("certificate JSON: {what}"));
    let coeffs = v["coeffs"]
        .as_array()
        .ok_or_else(|| bad("missing coeffs"))?
        .iter()
        .map(|c| crate::expr::parse_poly(c.as_str().unwrap_or("")))
        .collect::<crate::Result<Vec<_>>>()?;
    let rec = Recurrence::new(coeffs)?;
    let cert = &v["certificate"];
    let r1 = crate::expr::parse_ratfunc(cert["r1"].as_str().ok_or_else(|| bad("missing r1"))?)?;
    let cert = match cert["kind"].as_str() {
        Some("pure") => Certificate::pure(r1),
        Some("potential") => {
            let r2 = crate::expr::parse_ratfunc(cert["r2"].as_str().ok_or_else(|| bad("missing r2"))?)?;
            Certificate::potential(r1, r2)
        }
        _ => return Err(bad("unknown kind")),
    };
    Ok((rec, cert))
}
