//! Expand eta quotients as truncated integer power series.

use wzcert::qseries::{beukers_series, eta_expand};

fn main() -> wzcert::Result<()> {
    println!("{}", beukers_series(21)?);
    // 1/prod(1 - q^j): the partition numbers
    let partitions = eta_expand(&[(1, -1)], 0, 15)?;
    println!("{partitions}");
    Ok(())
}
