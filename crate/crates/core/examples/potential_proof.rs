//! Prove the harmonic-binomial sum vanishes: telescope the summand times its
//! potential, verify the certificate, then check base cases.
//!
//! Takes a while in debug builds; try --release.

use wzcert::beukers::prove_identity_zero;

fn main() -> wzcert::Result<()> {
    let report = prove_identity_zero(3)?;
    println!("order {}: {}", report.recurrence.order(), report.recurrence);
    println!("certificate verified: {}", report.certificate_verified);
    println!("leading coefficient nonzero from n = {}", report.leading_nonzero_from);
    for (n, v) in &report.base_cases {
        println!("S({n}) = {v}");
    }
    println!("conclusion: {}", report.conclusion);
    Ok(())
}
