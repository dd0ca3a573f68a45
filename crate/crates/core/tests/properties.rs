use num_traits::{One, Zero};
use proptest::prelude::*;

use wzcert::beukers::theorem_sum;
use wzcert::expr::parse_poly;
use wzcert::hyperterm::HyperTerm;
use wzcert::numeric::{int, odd_primes_up_to, rat, rat_int, Integer, Rational};
use wzcert::poly::{Poly, Var};
use wzcert::potential::Potential;
use wzcert::qseries::{apery, apery_mod, Series};
use wzcert::summation::{apply_recurrence, verify_certificate, zeilberger};
use wzcert::Error;

const TERMS: [&str; 3] = [
    "n!/(k!*(n-k)!)",
    "(n+k)!^2/(k!^4*(n-k)!^2)",
    "k*(n+k)!^2/(k!^4*(n-k)!^2)",
];
const HARMONIC_ARGS: [&str; 6] = ["n+k", "n-k", "k", "n", "n+1", "k+2"];
const RATIONAL_PARTS: [&str; 4] = ["0", "1/(2*k)", "n/(k+1)", "(n-k)/(n+k+1)"];

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000, any::<bool>()).prop_map(|(a, b, neg)| rat(a, if neg { -b } else { b }))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..4), -9i64..10), 0..6)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(e, c)| (e, rat(c, 1)))))
}

fn potential() -> impl Strategy<Value = Potential> {
    (
        prop::collection::vec((0..HARMONIC_ARGS.len(), -3i64..4), 0..4),
        0..RATIONAL_PARTS.len(),
    )
        .prop_map(|(hs, r)| {
            let mut text = RATIONAL_PARTS[r].to_string();
            for (i, c) in hs {
                text += &format!(" + ({c})*H({})", HARMONIC_ARGS[i]);
            }
            Potential::parse(&text).unwrap()
        })
}

fn series(max_trunc: usize) -> impl Strategy<Value = Series> {
    (0..=max_trunc).prop_flat_map(|n| {
        prop::collection::vec(-50i64..50, n + 1).prop_map(move |cs| Series::new(cs.into_iter().map(int).collect(), n))
    })
}

fn at(n: i64, k: i64) -> (Rational, Rational) {
    (rat(n, 1), rat(k, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rationals_stay_canonical(a in rational(), b in rational()) {
        for r in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(r.denom() > &Integer::zero());
            prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()).is_one());
            prop_assert_eq!(Rational::new(r.numer().clone(), r.denom().clone()), r.clone());
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }

    #[test]
    fn field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        if !b.is_zero() {
            prop_assert_eq!(&a / &b * &b, a);
        }
    }

    #[test]
    fn shift_is_invertible(p in poly(), h in -5i64..6) {
        for v in [Var::N, Var::K] {
            prop_assert_eq!(p.shift(v, h).shift(v, -h), p.clone());
        }
    }

    #[test]
    fn eval_is_additive_and_multiplicative(p in poly(), q in poly(), n in -6i64..7, k in -6i64..7) {
        let (n, k) = at(n, k);
        prop_assert_eq!((&p + &q).eval(&n, &k), p.eval(&n, &k) + q.eval(&n, &k));
        prop_assert_eq!((&p * &q).eval(&n, &k), p.eval(&n, &k) * q.eval(&n, &k));
    }

    #[test]
    fn gcd_divides_both(p in poly(), q in poly(), common in poly()) {
        prop_assume!(!common.is_zero() && !(p.is_zero() && q.is_zero()));
        let (a, b) = (&p * &common, &q * &common);
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.checked_div(&g).is_some());
        prop_assert!(b.checked_div(&g).is_some());
        prop_assert!(g.checked_div(&common).is_some());
    }

    #[test]
    fn shift_quotient_matches_eval(which in 0..TERMS.len(), n in 0i64..=25, k in 0i64..=25, along_n in any::<bool>()) {
        let t = HyperTerm::parse(TERMS[which]).unwrap();
        let (v, n1, k1) = if along_n { (Var::N, n + 1, k) } else { (Var::K, n, k + 1) };
        prop_assume!(t.is_interior(n1, k1) && t.is_interior(n, k));
        let here = t.eval(n, k).unwrap();
        prop_assume!(!here.is_zero());
        let (nr, kr) = at(n, k);
        prop_assert_eq!(t.shift_quotient(v).eval(&nr, &kr).unwrap(), t.eval(n1, k1).unwrap() / here);
    }

    #[test]
    fn potential_deltas_are_sound(c in potential(), n in 0i64..30, k in 0i64..30) {
        let (nr, kr) = at(n, k);
        for (v, n1, k1) in [(Var::N, n + 1, k), (Var::K, n, k + 1)] {
            if let (Ok(a), Ok(b), Ok(d)) = (c.eval(n, k), c.eval(n1, k1), c.delta(v).eval(&nr, &kr)) {
                prop_assert_eq!(b - a, d);
            }
        }
    }

    #[test]
    fn potential_differences_form_a_wz_pair(c in potential()) {
        let f = c.delta(Var::K);
        let g = c.delta(Var::N);
        prop_assert_eq!(&f.shift(Var::N, 1) - &f, &g.shift(Var::K, 1) - &g);
    }

    #[test]
    fn series_ring_laws(a in series(200), b in series(200), c in series(200)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.add(&Series::zero(b.trunc())));
        let n = a.trunc().min(b.trunc()).min(c.trunc());
        prop_assert_eq!(a.mul(&Series::one(n)), a.add(&Series::zero(n)));
    }

    #[test]
    fn unit_series_invert(mut a in series(200), neg in any::<bool>()) {
        let cs = {
            let mut cs = a.coeffs().to_vec();
            cs[0] = int(if neg { -1 } else { 1 });
            cs
        };
        a = Series::new(cs, a.trunc());
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv), Series::one(a.trunc()));
        prop_assert_eq!(inv.invert().unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn modular_apery_agrees_with_exact(i in 0usize..45, frac in 0.0f64..1.0) {
        let primes = odd_primes_up_to(200);
        let p = primes[i % primes.len()];
        let n = ((p as f64) * frac) as u64;
        let m = int((p * p) as i64);
        let want = num_integer::Integer::mod_floor(&apery(n), &m);
        let got = apery_mod(n, p).unwrap();
        prop_assert_eq!(got.value(), &want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn identity_holds_at_random_n(n in 1u64..=200) {
        prop_assert!(theorem_sum(n).unwrap().is_zero());
    }
}

#[test]
fn apery_numbers_satisfy_their_recurrence() {
    let t = HyperTerm::parse("(n+k)!^2/(k!^4*(n-k)!^2)").unwrap();
    let (rec, _) = zeilberger(&t, 2).unwrap();
    let values: Vec<Rational> = (0..=100).map(|n| rat_int(apery(n))).collect();
    assert!(apply_recurrence(&rec, &values, 0).unwrap().iter().all(Zero::is_zero));
}

/// Closed-form sums of terms with known small recurrences.
const SOUNDNESS: [(&str, usize); 5] = [
    ("n!/(k!*(n-k)!)", 1),
    ("n!^2/(k!^2*(n-k)!^2)", 1),
    ("k*n!/(k!*(n-k)!)", 1),
    ("(n+k)!/(k!^2*(n-k)!)", 2),
    ("(n+k)!^2/(k!^4*(n-k)!^2)", 2),
];

fn row_sums(t: &HyperTerm, n_max: i64) -> Vec<Rational> {
    (0..=n_max)
        .map(|n| (0..=n).map(|k| t.eval(n, k).unwrap()).sum())
        .collect()
}

#[test]
fn telescoped_recurrences_annihilate_the_sums() {
    for (text, order) in SOUNDNESS {
        let t = HyperTerm::parse(text).unwrap();
        let (rec, cert) = zeilberger(&t, 3).unwrap();
        assert_eq!(rec.order(), order, "{text}");
        assert!(verify_certificate(&t, None, &rec, &cert), "{text}");
        let residual = apply_recurrence(&rec, &row_sums(&t, 40), 0).unwrap();
        assert!(residual.iter().all(Zero::is_zero), "{text}: {rec}");
    }
}

#[test]
fn orders_found_are_minimal() {
    for (text, order) in SOUNDNESS.iter().filter(|(_, r)| *r > 1) {
        let t = HyperTerm::parse(text).unwrap();
        match zeilberger(&t, order - 1) {
            Err(Error::NotFound { orders }) => assert_eq!(orders, (1..*order).collect::<Vec<_>>()),
            other => panic!("{text}: expected no recurrence below order {order}, got {other:?}"),
        }
    }
}

#[test]
fn binomial_sums_are_powers_of_two() {
    let rec = zeilberger(&HyperTerm::parse(SOUNDNESS[0].0).unwrap(), 1).unwrap().0;
    assert_eq!(rec.coeffs(), &[parse_poly("-2").unwrap(), Poly::one()]);
}
