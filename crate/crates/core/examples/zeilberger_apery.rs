//! Find the recurrence for the Apéry numbers by creative telescoping and
//! check it against guessing from the values.

use wzcert::hyperterm::HyperTerm;
use wzcert::numeric::rat_int;
use wzcert::qseries::apery;
use wzcert::summation::{guess_recurrence, verify_certificate, zeilberger};

fn main() -> wzcert::Result<()> {
    let t = HyperTerm::parse("(n+k)!^2/(k!^4*(n-k)!^2)")?;
    let (rec, cert) = zeilberger(&t, 3)?;
    println!("{rec}");
    println!("certificate R = {}", cert.r1);
    println!("verified: {}", verify_certificate(&t, None, &rec, &cert));

    let values: Vec<_> = (0..40).map(|n| rat_int(apery(n))).collect();
    if let Some(guessed) = guess_recurrence(&values, 2, 3)? {
        println!("guessed: {guessed}");
        println!("proportional: {}", guessed.is_proportional_to(&rec));
    }
    Ok(())
}
