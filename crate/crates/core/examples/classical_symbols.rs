//! Dedekind symbol Φ and Rademacher symbol Ψ on SL₂(ℤ).
//!
//!     cargo run --example classical_symbols -- 11,4,19,7

use radsym::dedekind::{format_rat, phi_classical, psi_classical};
use radsym::modgroup::{word_decompose, GroupElement};

fn main() -> radsym::Result<()> {
    let given: Vec<GroupElement> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let list = if given.is_empty() {
        ["2,1,1,1", "4,3,1,1", "11,4,19,7", "0,-1,1,0", "1,5,0,1", "-3,-2,-4,-3"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    } else {
        given
    };
    for g in &list {
        println!("{g}  [{}]", g.classify());
        println!("  word  {}", word_decompose(g));
        println!("  Phi   {}", format_rat(&phi_classical(g)?));
        println!("  Psi   {}", format_rat(&psi_classical(g)?));
    }

    // Ψ is a class function on hyperbolic elements and odd under inversion.
    let g: GroupElement = "4,3,1,1".parse()?;
    let h: GroupElement = "3,-7,1,-2".parse()?;
    let c = g.conj_by(&h);
    println!("Psi({c}) = {}, Psi(g^-1) = {}", format_rat(&psi_classical(&c)?), format_rat(&psi_classical(&g.inverse())?));
    Ok(())
}
