//! Orders of cuspidal divisor classes on X₀(N), certified from exact periods.
//!
//!     cargo run --example manin_drinfeld -- 11 "0:-1,inf:1"

use radsym::modgroup::GroupId;
use radsym::periods::{torsion_certificate, Divisor};
use radsym::symbols::PrecisionCtx;

fn main() -> radsym::Result<()> {
    let ctx = PrecisionCtx::default();
    let mut args = std::env::args().skip(1);
    if let Some(n) = args.next() {
        let g = GroupId::gamma0(n.parse().map_err(|_| radsym::Error::Parse(format!("bad level {n}")))?);
        let d = match args.next() {
            Some(s) => Divisor::parse(g, &s)?,
            None => Divisor::zero_minus_infinity(g)?,
        };
        let cert = torsion_certificate(&g, &d, &ctx)?;
        println!("{}", serde_json::to_string_pretty(&cert.to_json()).unwrap());
        return Ok(());
    }

    println!("{:>4}  {:>6}  {:>10}  status", "N", "order", "generators");
    for n in [2u64, 3, 5, 7, 11, 13, 17, 19, 4, 6, 8, 9, 10, 12] {
        let g = GroupId::gamma0(n);
        let cert = torsion_certificate(&g, &Divisor::zero_minus_infinity(g)?, &ctx)?;
        let order = cert.order.map(|o| o.to_string()).unwrap_or_else(|| "?".into());
        println!("{n:>4}  {order:>6}  {:>10}  {}", cert.generators.len(), cert.status);
    }
    Ok(())
}
