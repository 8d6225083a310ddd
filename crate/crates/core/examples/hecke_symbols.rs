//! Symbols for Γ₀(N) at each cusp and for the Atkin-Lehner extension Γ₀(N)⁺.

use radsym::modgroup::{atkin_lehner, cusps, exact_divisors, Cusp, GroupElement, GroupId};
use radsym::symbols::{PrecisionCtx, Symbols};

fn main() -> radsym::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let reg = Symbols::new(PrecisionCtx::default());
    let g0 = GroupId::gamma0(n);
    let x = GroupElement::from_i64(1, 1, n as i64, n as i64 + 1);

    println!("x = {x}  [{}]", x.classify());
    for c in cusps(&g0)? {
        let e = reg.engine(g0, &c.cusp)?;
        println!("  {g0} at {:>4}: Psi = {}", c.cusp.to_string(), e.psi(&x)?);
    }

    let plus = GroupId::gamma0_plus(n);
    let e = reg.engine(plus, &Cusp::infinity())?;
    println!("{plus} at inf: Psi(x) = {}", e.psi(&x)?);
    for q in exact_divisors(n) {
        let w = atkin_lehner(n, q)?;
        println!("  W_{q} = {w}: Psi(W x W^-1) = {}", e.psi(&x.conj_by(&w))?);
    }
    Ok(())
}
