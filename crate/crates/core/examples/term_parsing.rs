//! Parse terms and potentials, look at their shift quotients and differences.

use wzcert::hyperterm::HyperTerm;
use wzcert::poly::Var;
use wzcert::potential::Potential;

fn main() -> wzcert::Result<()> {
    let t = HyperTerm::parse("k*(n+k)!^2/(k!^4*(n-k)!^2)")?;
    println!("term: {t}");
    println!("t(n+1,k)/t(n,k) = {}", t.shift_quotient(Var::N));
    println!("t(n,k+1)/t(n,k) = {}", t.shift_quotient(Var::K));
    println!("t(4,2) = {}", t.eval(4, 2)?);

    let c = Potential::parse("1/(2*k) + H(n+k) + H(n-k) - 2*H(k)")?;
    println!("potential: {c}");
    println!("c(n+1,k) - c(n,k) = {}", c.delta(Var::N));
    println!("c(n,k+1) - c(n,k) = {}", c.delta(Var::K));

    for bad in ["k!/(", "(n^2)!"] {
        if let Err(e) = HyperTerm::parse(bad) {
            println!("{bad:?}: {e}");
        }
    }
    if let Err(e) = Potential::parse("H(2*n)") {
        println!("\"H(2*n)\": {e}");
    }
    Ok(())
}
