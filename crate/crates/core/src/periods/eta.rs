//! `q`-series for `log η` and the completed weight-two Eisenstein series.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::arith::sigma1;
use crate::dedekind::Rat;
use crate::error::{Error, Result};
use crate::modgroup::GroupElement;

fn upper(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("need Im z > 0, got {z}")));
    }
    Ok(())
}

/// `log η(z) = πiz/12 + Σ_{n≥1} log(1 - qⁿ)`, summed until the tail is below `tol`.
pub fn eta_log(z: Complex64, tol: f64) -> Result<Complex64> {
    upper(z)?;
    let q = (Complex64::i() * 2.0 * PI * z).exp();
    let r = q.norm();
    let mut acc = Complex64::i() * PI * z / 12.0;
    let mut qn = q;
    let mut rn = r;
    loop {
        acc += (Complex64::new(1.0, 0.0) - qn).ln();
        qn *= q;
        rn *= r;
        // |log(1-w)| <= |w|/(1-|w|), summed geometrically
        if rn / ((1.0 - rn) * (1.0 - r)) < tol || rn == 0.0 {
            break;
        }
    }
    Ok(acc)
}

/// `Φ(γ)` read off the transformation law
/// `log η(γz) = log η(z) + ¼ log(-(cz+d)²) + πiΦ(γ)/12`.
pub fn phi_from_eta(g: &GroupElement) -> Result<i64> {
    if !g.is_unimodular() || !g.c.is_positive() {
        return Err(Error::Domain(format!("need c > 0 in SL2(Z), got {g}")));
    }
    let [a, b, c, d] = [&g.a, &g.b, &g.c, &g.d].map(|x| x.to_f64().unwrap());
    let z = Complex64::new(-d + 0.3, 1.0) / c;
    let j = z * c + d;
    let gz = (z * a + b) / j;
    let lhs = eta_log(gz, 1e-16)? - eta_log(z, 1e-16)? - 0.25 * (-(j * j)).ln();
    let phi = lhs * 12.0 / (Complex64::i() * PI);
    let n = phi.re.round();
    let resid = (phi - n).norm();
    if resid > 1e-6 {
        return Err(Error::Precision(format!("eta extraction residual {resid:.2e} for {g}")));
    }
    Ok(n as i64)
}

/// `E₂(z) - 3/(π Im z)` with `E₂ = 1 - 24 Σ σ₁(n)qⁿ` in Lambert form.
pub fn e2_value(z: Complex64, tol: f64) -> Result<Complex64> {
    upper(z)?;
    let q = (Complex64::i() * 2.0 * PI * z).exp();
    let r = q.norm();
    let mut s = Complex64::new(0.0, 0.0);
    let mut qm = q;
    let mut rm = r;
    let mut m = 1.0;
    loop {
        s += qm * m / (Complex64::new(1.0, 0.0) - qm);
        qm *= q;
        rm *= r;
        m += 1.0;
        // Σ_{k≥m} k r^k/(1-r^k) <= m r^m/(1-r)^3
        if 24.0 * m * rm / (1.0 - r).powi(3) < tol || rm == 0.0 {
            break;
        }
    }
    Ok(Complex64::new(1.0, 0.0) - 24.0 * s - 3.0 / (PI * z.im))
}

/// `Σ_{δ|n} 1/δ`, the rational part of `φ(n,1) = (6/π²)·Σ_{δ|n} 1/δ`.
pub fn phi_fourier_coefficient(n: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(Rat::new(sigma1(n).into(), n.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::{phi_classical, rat};

    #[test]
    fn eta_at_i() {
        // η(i) = Γ(1/4) / (2 π^{3/4})
        let gamma_quarter = 3.625_609_908_221_908_f64;
        let want = gamma_quarter / (2.0 * PI.powf(0.75));
        let got = eta_log(Complex64::i(), 1e-15).unwrap().exp();
        assert!((got.re - want).abs() < 1e-13 && got.im.abs() < 1e-13);
        let shifted = eta_log(Complex64::new(1.0, 1.0), 1e-15).unwrap();
        let base = eta_log(Complex64::i(), 1e-15).unwrap();
        assert!((shifted - base - Complex64::i() * PI / 12.0).norm() < 1e-13);
        assert!(eta_log(Complex64::new(0.0, -1.0), 1e-10).is_err());
        let far = eta_log(Complex64::new(0.0, 10.0), 1e-15).unwrap();
        assert!((far.re + 10.0 * PI / 12.0).abs() < 1e-15);
    }

    #[test]
    fn eta_extraction_examples() {
        for (g, want) in [
            (GroupElement::s(), 0),
            (GroupElement::from_i64(2, 1, 1, 1), 3),
            (GroupElement::from_i64(3, 2, 4, 3), 3),
        ] {
            assert_eq!(phi_from_eta(&g).unwrap(), want);
            assert_eq!(Rat::from_integer(want.into()), phi_classical(&g).unwrap());
        }
    }

    #[test]
    fn e2_examples() {
        assert!(e2_value(Complex64::i(), 1e-15).unwrap().norm() < 1e-13);
        let z = Complex64::new(0.0, 2.0);
        let sz = -1.0 / z;
        let lhs = e2_value(sz, 1e-15).unwrap() / (z * z);
        assert!((lhs - e2_value(z, 1e-15).unwrap()).norm() < 1e-12);
        let y = 6.0;
        let v = e2_value(Complex64::new(0.0, y), 1e-15).unwrap();
        assert!((v.re - (1.0 - 3.0 / (PI * y))).abs() < 1e-12);
    }

    #[test]
    fn fourier_coefficients() {
        assert_eq!(phi_fourier_coefficient(1).unwrap(), rat(1, 1));
        assert_eq!(phi_fourier_coefficient(2).unwrap(), rat(3, 2));
        assert_eq!(phi_fourier_coefficient(6).unwrap(), rat(2, 1));
    }
}
