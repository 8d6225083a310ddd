//! The period of `E₂(z) - 3/(πy)` along the closed geodesic of a hyperbolic
//! element, integrated numerically and compared with the exact Ψ.
//!
//!     cargo run --example eisenstein_period -- 11,4,19,7

use radsym::dedekind::{format_rat, psi_classical};
use radsym::modgroup::GroupElement;
use radsym::periods::period_numeric;

fn main() -> radsym::Result<()> {
    let given: Vec<String> = std::env::args().skip(1).collect();
    let defaults = ["2,1,1,1", "4,3,1,1", "5,2,2,1", "11,4,19,7", "-7,-2,-3,-1"];
    let list: Vec<String> = if given.is_empty() { defaults.iter().map(|s| s.to_string()).collect() } else { given };
    println!("{:>14}  {:>22}  {:>8}  {:>9}  {}", "gamma", "integral", "Psi", "|diff|", "min height");
    for s in list {
        let g: GroupElement = s.parse()?;
        let p = period_numeric(&g, 1e-12)?;
        let exact = psi_classical(&g)?;
        let diff = (p.value - radsym::symbols::SymbolValue::Exact(exact.clone()).to_f64()).abs();
        println!("{:>14}  {:>22.15}  {:>8}  {diff:>9.1e}  {:.3}", g.to_string(), p.value, format_rat(&exact), p.min_height);
    }
    Ok(())
}
