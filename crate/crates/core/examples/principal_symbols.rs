//! Symbols for Γ(N) from the finite character sum, and the identity that
//! summing them over Γ(N)\SL₂(ℤ) recovers the classical Ψ.
//!
//!     cargo run --example principal_symbols -- 5

use radsym::dedekind::{format_rat, psi_classical};
use radsym::modgroup::{Cusp, GroupId};
use radsym::sample::{rng, GroupSampler};
use radsym::symbols::{lift_coset_sum, PrecisionCtx, Symbols};

fn main() -> radsym::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let group = GroupId::gamma(n);
    let reg = Symbols::new(PrecisionCtx::default());
    let engine = reg.engine(group, &Cusp::infinity())?;
    println!("{group}: method {}, piV^-1 = {}", engine.method(), format_rat(engine.kappa()));

    let sampler = GroupSampler::new(&group)?;
    let mut r = rng(11);
    for _ in 0..5 {
        let g = sampler.hyperbolic(&mut r, 3, 100_000);
        let psi = engine.psi(&g)?;
        let sum = lift_coset_sum(&engine, &GroupId::sl2z(), &g)?;
        println!("{g}");
        println!("  Psi_Gamma({n})   = {psi}   [{}]", psi.method());
        println!("  coset sum      = {sum}");
        println!("  classical Psi  = {}", format_rat(&psi_classical(&g)?));
    }
    Ok(())
}
