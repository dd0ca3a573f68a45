//! Recover a recurrence from sequence terms alone, then extend the sequence.

use wzcert::numeric::{binomial, rat_int, Rational};
use wzcert::summation::{apply_recurrence, guess_recurrence};

fn main() -> wzcert::Result<()> {
    // central binomial coefficients
    let values: Vec<Rational> = (0..30u64).map(|n| rat_int(binomial(2 * n, n as i64))).collect();
    for order in 1..=2 {
        match guess_recurrence(&values, order, 2)? {
            Some(rec) => {
                println!("order {order}: {rec}");
                let residual = apply_recurrence(&rec, &values, 0)?;
                println!(
                    "residual all zero: {}",
                    residual.iter().all(|r| *r == Rational::default())
                );
                break;
            }
            None => println!("order {order}: nothing"),
        }
    }
    Ok(())
}
