//! log η, the modified `E₂* = E₂ - 3/(πy)` and the Fourier side of the symbol.
//!
//! The transformation of log η under a matrix reproduces Φ as an integer,
//! and the q-expansion coefficients of the modified E₂ show up as the divisor
//! sums printed at the end.

use num_complex::Complex64;
use radsym::dedekind::{format_rat, phi_classical};
use radsym::modgroup::GroupElement;
use radsym::periods::{e2_value, eta_log, phi_fourier_coefficient, phi_from_eta};

fn main() -> radsym::Result<()> {
    for z in [Complex64::new(0.0, 1.0), Complex64::new(0.5, 0.866_025_403_784_438_6), Complex64::new(-0.3, 0.2)] {
        println!("z = {z:.4}: log eta = {:.12}, E2* = {:.12}", eta_log(z, 1e-15)?, e2_value(z, 1e-15)?);
    }

    for s in ["1,0,1,1", "2,1,1,1", "5,2,7,3", "13,-5,8,-3", "7,30,3,13"] {
        let g: GroupElement = s.parse()?;
        println!("{g}: from eta {:>4}, Phi {:>4}", phi_from_eta(&g)?, format_rat(&phi_classical(&g)?));
    }

    let coeffs: Vec<String> = (1..=12).map(|n| phi_fourier_coefficient(n).map(|c| format_rat(&c))).collect::<Result<_, _>>()?;
    println!("Fourier coefficients 1..12: {}", coeffs.join(" "));
    Ok(())
}
