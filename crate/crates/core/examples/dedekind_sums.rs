//! Dedekind sums by the reciprocity descent, with the reciprocity law
//! checked on a few pairs and one pair of 40-digit arguments.
//!
//!     cargo run --example dedekind_sums -- 17

use num_bigint::BigInt;
use radsym::dedekind::{dedekind_sum, format_rat, rat};

fn main() -> radsym::Result<()> {
    let c: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    println!("s(a, {c}) for 0 < a < {c}, gcd(a, {c}) = 1");
    for a in 1..c {
        if num_integer::gcd(a, c) == 1 {
            let s = dedekind_sum(&BigInt::from(a), &BigInt::from(c))?;
            println!("  s({a:>3}, {c}) = {}", format_rat(&s));
        }
    }

    for (a, c) in [(5i64, 7i64), (13, 89), (144, 233)] {
        let lhs = dedekind_sum(&a.into(), &c.into())? + dedekind_sum(&c.into(), &a.into())?;
        let rhs = rat(a * a + c * c + 1, 12 * a * c) - rat(1, 4);
        println!("s({a},{c}) + s({c},{a}) = {}  (expected {})", format_rat(&lhs), format_rat(&rhs));
    }

    let a = BigInt::from(10).pow(40) + 1;
    let c = BigInt::from(3).pow(90);
    let s = dedekind_sum(&a, &c)?;
    println!("s(10^40 + 1, 3^90) = {}", format_rat(&s));
    Ok(())
}
