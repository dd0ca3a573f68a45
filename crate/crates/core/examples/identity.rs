//! Evaluate the harmonic-binomial sum exactly for the first few n.
//!
//! cargo run --example identity -- 40

use wzcert::beukers::theorem_sum;

fn main() -> wzcert::Result<()> {
    let n_max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(25);
    for n in 1..=n_max {
        println!("n = {n:>3}: {}", theorem_sum(n)?);
    }
    Ok(())
}
