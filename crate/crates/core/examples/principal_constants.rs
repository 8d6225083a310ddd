//! The constants `C_{N,j}` behind the principal-congruence symbols.
//! Closed forms are printed next to the numeric evaluation where they exist.
//!
//!     cargo run --example principal_constants -- 7

use radsym::dedekind::format_rat;
use radsym::symbols::{takada_table, takada_table_numeric, PrecisionCtx};

fn main() -> radsym::Result<()> {
    let levels: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let levels = if levels.is_empty() { vec![2, 3, 4, 5, 6] } else { levels };
    let ctx = PrecisionCtx::new(50)?;
    for n in levels {
        let table = takada_table(n, &ctx)?;
        let numeric = takada_table_numeric(n, &ctx)?;
        println!("N = {n}");
        for (c, v) in table.iter().zip(&numeric) {
            let exact = c.exact.as_ref().map(format_rat).unwrap_or_else(|| "-".into());
            println!("  j = {:>2}  {:>10}  {}  (err {:.1e})", c.j, exact, v.to_decimal(30), v.error);
        }
    }
    Ok(())
}
