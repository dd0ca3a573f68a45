//! End-to-end acceptance run. Criteria execute one after another on the
//! calling thread so the timings mean something; each prints one line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wzcert::beukers::{prove_identity_zero, scan_beukers, theorem_sum};
use wzcert::expr::parse_ratfunc;
use wzcert::hyperterm::HyperTerm;
use wzcert::numeric::{int, odd_primes_up_to, rat, rat_int, Integer, Rational};
use wzcert::poly::{RatFunc, Var};
use wzcert::potential::{identity_potential, Potential};
use wzcert::qseries::{apery, apery_mod, beukers_series, Series};
use wzcert::summation::{
    apply_recurrence, gosper, guess_recurrence, verify_certificate, verify_certificate_report, zeil_potential,
    zeilberger, SPOT_CHECKS,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn identity_to_300() -> Outcome {
    let budget = Duration::from_secs(60);
    let start = Instant::now();
    for n in 1..=300 {
        let s = theorem_sum(n).map_err(|e| e.to_string())?;
        ensure(s.is_zero(), || format!("sum at n = {n} is {s}"))?;
    }
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:.1?}, budget {budget:?}"))?;
    Ok(format!("300 exact zeros in {took:.1?}"))
}

fn eta_coefficients() -> Outcome {
    let s = beukers_series(40).map_err(|e| e.to_string())?;
    for (i, want) in [(1, 1), (3, -4), (5, -2), (7, 24)] {
        let got = s.coeff(i).unwrap();
        ensure(*got == int(want), || format!("q^{i}: {got}, expected {want}"))?;
    }
    let odd_only = (0..=40).step_by(2).all(|i| s.coeff(i).unwrap().is_zero());
    ensure(odd_only, || "an even-index coefficient is nonzero".into())?;
    Ok("1, -4, -2, 24 at q^1..q^7, even terms vanish through q^40".into())
}

fn congruence_to_2000() -> Outcome {
    let budget = Duration::from_secs(300);
    let start = Instant::now();
    let scan = scan_beukers(2000).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let bad: Vec<u64> = scan.iter().filter(|(_, ok)| !ok).map(|(p, _)| *p).collect();
    ensure(bad.is_empty(), || format!("fails for {bad:?}"))?;
    ensure(scan.len() == odd_primes_up_to(2000).len(), || {
        "prime list is short".into()
    })?;
    ensure(took < budget, || format!("took {took:.1?}, budget {budget:?}"))?;
    Ok(format!("{} odd primes in {took:.1?}", scan.len()))
}

fn apery_recurrence() -> Outcome {
    let t = HyperTerm::parse("(n+k)!^2/(k!^4*(n-k)!^2)").map_err(|e| e.to_string())?;
    let (rec, cert) = zeilberger(&t, 3).map_err(|e| e.to_string())?;
    ensure(rec.order() == 2, || format!("order {}", rec.order()))?;
    let report = verify_certificate_report(&t, None, &rec, &cert);
    ensure(report.symbolic, || "symbolic check failed".into())?;
    ensure(report.passed(), || format!("{report:?}"))?;
    let values: Vec<Rational> = (0..=100).map(|n| rat_int(apery(n))).collect();
    let residual = apply_recurrence(&rec, &values, 0).map_err(|e| e.to_string())?;
    ensure(residual.iter().all(Zero::is_zero), || {
        "does not annihilate A(0..100)".into()
    })?;
    let guessed = guess_recurrence(&values, 2, 3)
        .map_err(|e| e.to_string())?
        .ok_or("guessing found nothing")?;
    ensure(guessed.is_proportional_to(&rec), || format!("guessed {guessed}"))?;
    // solve the n = 0 instance for u(2)
    let at0: Vec<Rational> = rec.coeffs().iter().map(|c| c.eval(&rat(0, 1), &rat(0, 1))).collect();
    let u2 = -(&at0[0] * rat(1, 1) + &at0[1] * rat(5, 1)) / &at0[2];
    ensure(u2 == rat(73, 1), || format!("u2 = {u2}"))?;
    Ok(format!("{rec}; forces u2 = 73"))
}

fn potential_proof() -> Outcome {
    let t = HyperTerm::parse("k*(n+k)!^2/(k!^4*(n-k)!^2)").map_err(|e| e.to_string())?;
    let c = identity_potential();
    let (rec, cert) = zeil_potential(&t, &c, 3).map_err(|e| e.to_string())?;
    ensure(rec.order() <= 3, || format!("order {}", rec.order()))?;
    let report = verify_certificate_report(&t, Some(&c), &rec, &cert);
    ensure(report.symbolic, || "symbolic check failed".into())?;
    ensure(
        report.checks_run == SPOT_CHECKS && report.checks_passed == SPOT_CHECKS,
        || format!("{} of {} spot checks", report.checks_passed, report.checks_run),
    )?;
    let proof = prove_identity_zero(3).map_err(|e| e.to_string())?;
    ensure(proof.conclusion, || "proof not concluded".into())?;
    let covered: Vec<u64> = proof.base_cases.iter().map(|(n, _)| *n).collect();
    ensure([1, 2, 3].iter().all(|n| covered.contains(n)), || {
        format!("base cases {covered:?}")
    })?;
    Ok(format!(
        "order {}, {} spot checks, base cases {covered:?}",
        rec.order(),
        report.checks_passed
    ))
}

fn gosper_cases() -> Outcome {
    let ratio = |s: &str| parse_ratfunc(s).map_err(|e| e.to_string());
    // k*k!
    let r = gosper(&ratio("(k+1)^2/k")?).ok_or("k*k! not summable")?;
    ensure(r == ratio("1/k")?, || format!("k*k!: R = {r}"))?;
    // 1/(k(k+1))
    let r = gosper(&ratio("k/(k+2)")?).ok_or("1/(k(k+1)) not summable")?;
    ensure(r == ratio("-(k+1)")?, || format!("1/(k(k+1)): R = {r}"))?;
    // 1/k
    ensure(gosper(&ratio("k/(k+1)")?).is_none(), || "1/k reported summable".into())?;
    Ok("k*k! and 1/(k(k+1)) summable with the expected R, 1/k not".into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=1000i64) * if rng.gen() { 1 } else { -1 };
    rat(rng.gen_range(-1000..=1000), d)
}

fn random_series(rng: &mut ChaCha8Rng, trunc: usize, unit: bool) -> Series {
    let mut cs: Vec<Integer> = (0..=trunc).map(|_| int(rng.gen_range(-20..=20))).collect();
    if unit {
        cs[0] = int(if rng.gen() { 1 } else { -1 });
    }
    Series::new(cs, trunc)
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for _ in 0..500 {
        let (a, b, c) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        ensure(a.denom() > &Integer::zero(), || {
            format!("{a} has a negative denominator")
        })?;
        ensure(num_integer::Integer::gcd(a.numer(), a.denom()).is_one(), || {
            format!("{a} not reduced")
        })?;
        ensure(&(&a + &b) - &b == a, || "a + b - b != a".into())?;
        ensure(&a * (&b + &c) == &a * &b + &a * &c, || "distributivity".into())?;
        ensure(a.to_string().parse::<Rational>().ok() == Some(a.clone()), || {
            format!("{a} round trip")
        })?;
    }

    let terms = [
        "n!/(k!*(n-k)!)",
        "(n+k)!^2/(k!^4*(n-k)!^2)",
        "k*(n+k)!^2/(k!^4*(n-k)!^2)",
    ];
    for text in terms {
        let t = HyperTerm::parse(text).map_err(|e| e.to_string())?;
        for v in [Var::N, Var::K] {
            let q = t.shift_quotient(v);
            for n in 0..=25i64 {
                for k in 0..=n {
                    let (n1, k1) = if v == Var::N { (n + 1, k) } else { (n, k + 1) };
                    if !t.is_interior(n1, k1) {
                        continue;
                    }
                    let here = t.eval(n, k).map_err(|e| e.to_string())?;
                    if here.is_zero() {
                        continue;
                    }
                    let want = t.eval(n1, k1).map_err(|e| e.to_string())? / here;
                    let (nr, kr) = (rat(n, 1), rat(k, 1));
                    let got = q.eval(&nr, &kr).map_err(|e| e.to_string())?;
                    ensure(got == want, || format!("{text} quotient in {v:?} at ({n}, {k})"))?;
                }
            }
        }
    }

    let potentials = [
        identity_potential(),
        Potential::parse("H(n-k) - 3*H(k) + n/(k+1) - H(n+1)/2").map_err(|e| e.to_string())?,
    ];
    for c in &potentials {
        let (dn, dk) = (c.delta(Var::N), c.delta(Var::K));
        for n in 1..=20i64 {
            for k in 1..=n {
                let base = c.eval(n, k).map_err(|e| e.to_string())?;
                let (nr, kr) = (rat(n, 1), rat(k, 1));
                let step_n = c.eval(n + 1, k).map_err(|e| e.to_string())? - &base;
                ensure(step_n == dn.eval(&nr, &kr).map_err(|e| e.to_string())?, || {
                    format!("delta n at ({n}, {k})")
                })?;
                if let Ok(up) = c.eval(n, k + 1) {
                    ensure(up - &base == dk.eval(&nr, &kr).map_err(|e| e.to_string())?, || {
                        format!("delta k at ({n}, {k})")
                    })?;
                }
            }
        }
        let lhs = &dk.shift(Var::N, 1) - &dk;
        let rhs = &dn.shift(Var::K, 1) - &dn;
        ensure(lhs == rhs, || "differences do not commute".into())?;
    }

    for _ in 0..40 {
        let trunc = rng.gen_range(0..=60);
        let (a, b, c) = (
            random_series(&mut rng, trunc, false),
            random_series(&mut rng, trunc, false),
            random_series(&mut rng, trunc, true),
        );
        ensure(a.mul(&b) == b.mul(&a), || "product not commutative".into())?;
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || {
            "product not associative".into()
        })?;
        ensure(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || {
            "not distributive".into()
        })?;
        let inv = c.invert().map_err(|e| e.to_string())?;
        ensure(c.mul(&inv) == Series::one(trunc), || "inverse".into())?;
    }

    let exact: Vec<Integer> = (0..200).map(apery).collect();
    for p in odd_primes_up_to(200) {
        let m = int((p * p) as i64);
        for n in 0..p {
            let got = apery_mod(n, p).map_err(|e| e.to_string())?;
            let want = num_integer::Integer::mod_floor(&exact[n as usize], &m);
            ensure(got.value() == &want, || format!("apery_mod({n}, {p})"))?;
        }
    }

    // a certificate with a wrong piece must be caught
    let t = HyperTerm::parse("n!/(k!*(n-k)!)").map_err(|e| e.to_string())?;
    let (rec, mut cert) = zeilberger(&t, 2).map_err(|e| e.to_string())?;
    cert.r1 = &cert.r1 + &RatFunc::one();
    ensure(!verify_certificate(&t, None, &rec, &cert), || {
        "perturbed certificate accepted".into()
    })?;

    Ok("rational, hyperterm, potential, series and modular Apéry checks green".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("identity vanishes for n = 1..300", identity_to_300),
        ("eta expansion coefficients", eta_coefficients),
        ("congruence for odd primes up to 2000", congruence_to_2000),
        ("Apéry recurrence, certificate and guessing", apery_recurrence),
        ("potential telescoping proof", potential_proof),
        ("Gosper classical cases", gosper_cases),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} ({:.1?})", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
