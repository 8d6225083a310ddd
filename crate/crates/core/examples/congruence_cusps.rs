//! Cosets, cusps with widths and scaling matrices, and Schreier generators.
//!
//!     cargo run --example congruence_cusps -- gamma0 12
//!     cargo run --example congruence_cusps -- gamma0+ 6

use radsym::modgroup::{cosets, cusps, schreier_generators, CosetSpace, GroupId};

fn main() -> radsym::Result<()> {
    let mut args = std::env::args().skip(1);
    let family = args.next().unwrap_or_else(|| "gamma0".into());
    let level = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let g = GroupId::parse(&family, level)?;

    if g.in_sl2z() {
        println!("{g}: index {} in PSL2(Z)", CosetSpace::new(g)?.len());
    } else {
        println!("{g}: contains Gamma0({level}) with index {}", cosets(&GroupId::gamma0(level), &g)?.len());
    }
    for c in cusps(&g)? {
        println!("  cusp {:>5}  width {:>3}  scaling {}", c.cusp.to_string(), c.width, c.scaling.base);
    }
    let gens = schreier_generators(&g)?;
    println!("{} generators", gens.len());
    for x in gens.iter().take(8) {
        println!("  {x}  [{}]", x.classify());
    }
    if gens.len() > 8 {
        println!("  ...");
    }
    Ok(())
}
