//! Indefinite summation: which terms have a hypergeometric antidifference.

use wzcert::expr::parse_ratfunc;
use wzcert::hyperterm::HyperTerm;
use wzcert::poly::Var;
use wzcert::summation::gosper;

fn main() -> wzcert::Result<()> {
    for text in ["k*k!", "(k-1)!/(k+1)!", "(k-1)!/k!", "k!*(2*k+1)"] {
        let t = HyperTerm::parse(text)?;
        match gosper(&t.shift_quotient(Var::K)) {
            Some(r) => println!("{text}: summable, G = ({r}) * t"),
            None => println!("{text}: no hypergeometric antidifference"),
        }
    }
    // the ratio can also be given directly
    let ratio = parse_ratfunc("(k+1)*(k-3)/((k+2)*(k-2))")?;
    println!("ratio {ratio}: R = {:?}", gosper(&ratio).map(|r| r.to_string()));
    Ok(())
}
