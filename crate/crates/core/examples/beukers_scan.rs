//! Check the Apéry congruence modulo p^2 for all odd primes up to a bound.
//!
//! cargo run --release --example beukers_scan -- 5000 4

use std::time::Instant;

use wzcert::beukers::scan_beukers_threads;

fn main() -> wzcert::Result<()> {
    let mut args = std::env::args().skip(1);
    let p_max = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let threads = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let start = Instant::now();
    let scan = scan_beukers_threads(p_max, threads)?;
    let failures: Vec<u64> = scan.iter().filter(|(_, ok)| !ok).map(|(p, _)| *p).collect();
    println!(
        "{} primes up to {p_max}, {} failures, {:.2?}",
        scan.len(),
        failures.len(),
        start.elapsed()
    );
    Ok(())
}
