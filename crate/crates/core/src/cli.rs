//! Command-line front end. Exit codes: 0 success, 1 the mathematics said
//! no, 2 usage or input error, 3 search exhausted.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::beukers::{prove_identity_zero, scan_beukers_threads, theorem_sum};
use crate::error::Error;
use crate::hyperterm::HyperTerm;
use crate::numeric::{Integer, Rational};
use crate::poly::{RatFunc, Var};
use crate::potential::Potential;
use crate::qseries::{apery, beukers_series};
use crate::summation::{certificate_json, gosper, verify_certificate, zeil_potential, zeilberger};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "wzcert",
    version,
    about = "Certified hypergeometric summation and Apéry congruence checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Worker threads for scans
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub threads: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the harmonic-binomial sum exactly for n = 1..n-max
    VerifyIdentity {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..=5000))]
        n_max: u64,
    },
    /// Creative telescoping for a summand, optionally times a potential
    FindRecurrence {
        #[arg(long)]
        summand: String,
        #[arg(long)]
        potential: Option<String>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_order: u64,
    },
    /// Prove the sum vanishes: certified recurrence plus base cases
    ProveIdentity {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_order: u64,
    },
    /// Check A((p-1)/2) = a(p) mod p^2 for odd primes up to max-prime
    CheckCongruence {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(3..=100_000))]
        max_prime: u64,
    },
    /// Expand q prod (1-q^2n)^4 (1-q^4n)^4
    ExpandEta {
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        trunc: u64,
    },
    /// Indefinite summation in k
    Gosper {
        #[arg(long)]
        summand: String,
    },
    /// Apéry numbers A(0..n-max)
    Apery {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(0..=5000))]
        n_max: u64,
    },
}

/// A finished command: what to print and how to exit.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => writeln!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serialisable")),
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotFound { .. } => EXIT_NOT_FOUND,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn pool(threads: u64) -> crate::Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads as usize)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn integer_json(v: &Integer) -> Value {
    match i64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn execute(cli: &Cli) -> crate::Result<Outcome> {
    match &cli.command {
        Command::VerifyIdentity { n_max } => {
            let values = pool(cli.threads)?.install(|| {
                (1..=*n_max)
                    .into_par_iter()
                    .map(theorem_sum)
                    .collect::<crate::Result<Vec<Rational>>>()
            })?;
            let nonzero: Vec<u64> = (1..=*n_max)
                .zip(&values)
                .filter(|(_, v)| **v != Rational::default())
                .map(|(n, _)| n)
                .collect();
            let all_zero = nonzero.is_empty();
            let text = if all_zero {
                format!("sum vanishes for n = 1..{n_max}: {n_max} zeros")
            } else {
                format!("sum is nonzero for n in {nonzero:?}")
            };
            Ok(Outcome {
                text,
                json: json!({
                    "n_max": n_max,
                    "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "all_zero": all_zero,
                }),
                code: verdict(all_zero),
            })
        }
        Command::FindRecurrence {
            summand,
            potential,
            max_order,
        } => {
            let t = HyperTerm::parse(summand)?;
            let c = potential.as_deref().map(Potential::parse).transpose()?;
            let (rec, cert) = match &c {
                Some(c) => zeil_potential(&t, c, *max_order as usize)?,
                None => zeilberger(&t, *max_order as usize)?,
            };
            let verified = verify_certificate(&t, c.as_ref(), &rec, &cert);
            let doc = certificate_json(&rec, &cert, verified);
            let mut text = format!("order {}: {rec}\nr1 = {}\n", rec.order(), cert.r1);
            if let Some(r2) = &cert.r2 {
                text += &format!("r2 = {r2}\n");
            }
            text += &format!("verified: {verified}\n");
            text += &serde_json::to_string_pretty(&doc).expect("serialisable");
            Ok(Outcome {
                text,
                json: doc,
                code: verdict(verified),
            })
        }
        Command::ProveIdentity { max_order } => {
            let report = prove_identity_zero(*max_order as usize)?;
            let cases: Vec<String> = report.base_cases.iter().map(|(n, v)| format!("S({n}) = {v}")).collect();
            let text = format!(
                "recurrence of order {}: {}\ncertificate verified: {}\nleading coefficient nonzero for n >= {}\nbase cases: {}\nconclusion: {}",
                report.recurrence.order(),
                report.recurrence,
                report.certificate_verified,
                report.leading_nonzero_from,
                cases.join(", "),
                if report.conclusion { "the sum vanishes for every n >= 1" } else { "not proved" },
            );
            Ok(Outcome {
                text,
                json: report.to_json(),
                code: verdict(report.conclusion),
            })
        }
        Command::CheckCongruence { max_prime } => {
            let results = scan_beukers_threads(*max_prime, cli.threads as usize)?;
            let failures: Vec<u64> = results.iter().filter(|(_, ok)| !ok).map(|(p, _)| *p).collect();
            let text = if failures.is_empty() {
                format!(
                    "congruence holds for all {} odd primes up to {max_prime}",
                    results.len()
                )
            } else {
                format!("congruence fails for p in {failures:?}")
            };
            Ok(Outcome {
                text,
                json: Value::Array(results.iter().map(|(p, ok)| json!({"p": p, "holds": ok})).collect()),
                code: verdict(failures.is_empty()),
            })
        }
        Command::ExpandEta { trunc } => {
            let s = beukers_series(*trunc as usize)?;
            Ok(Outcome {
                text: s.to_string(),
                json: json!({
                    "trunc": trunc,
                    "coeffs": s.coeffs().iter().map(integer_json).collect::<Vec<_>>(),
                }),
                code: EXIT_OK,
            })
        }
        Command::Gosper { summand } => {
            let t = HyperTerm::parse(summand)?;
            let ratio = t.shift_quotient(Var::K);
            Ok(match gosper(&ratio) {
                Some(r) => {
                    let g = antidifference_text(&r, &t);
                    Outcome {
                        text: format!("summable: R = {r}\nantidifference: {g}"),
                        json: json!({"summable": true, "r": r.to_string(), "antidifference": g}),
                        code: EXIT_OK,
                    }
                }
                None => Outcome {
                    text: "not Gosper-summable".into(),
                    json: json!({"summable": false, "r": null, "antidifference": null}),
                    code: EXIT_FALSE,
                },
            })
        }
        Command::Apery { n_max } => {
            let values: Vec<Integer> = (0..=*n_max).map(apery).collect();
            let text = values
                .iter()
                .enumerate()
                .map(|(n, a)| format!("A({n}) = {a}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome {
                text,
                json: json!({"n_max": n_max, "values": values.iter().map(integer_json).collect::<Vec<_>>()}),
                code: EXIT_OK,
            })
        }
    }
}

fn antidifference_text(r: &RatFunc, t: &HyperTerm) -> String {
    let pre = r * &RatFunc::from_poly(t.prefactor().clone());
    if pre.is_polynomial() {
        if let Ok(g) = HyperTerm::new(t.factors().iter().copied(), pre.num().clone()) {
            return g.to_string();
        }
    }
    format!("({r})*{t}")
}
