//! `∫ (E₂(z) - 3/(πy)) dz` along the geodesic axis of a hyperbolic element.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::eta::e2_value;
use crate::error::{Error, Result};
use crate::modgroup::{GroupElement, MotionClass};
use crate::symbols::{real, SymbolValue};

const ORDER: usize = 20;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        (0..n)
            .map(|i| {
                let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    })
}

/// Geodesic axis of a hyperbolic element: centre and radius of the semicircle.
#[derive(Clone, Copy, Debug)]
struct Axis {
    centre: f64,
    radius: f64,
}

impl Axis {
    fn of(g: &GroupElement) -> Axis {
        let [a, _, c, d] = g.to_f64();
        let t = a + d;
        Axis { centre: (a - d) / (2.0 * c), radius: (t * t - 4.0).sqrt() / (2.0 * c.abs()) }
    }

    /// Point at hyperbolic arclength `t` from the apex.
    fn point(&self, t: f64) -> Complex64 {
        Complex64::new(self.centre + self.radius * t.tanh(), self.radius / t.cosh())
    }

    fn velocity(&self, t: f64) -> Complex64 {
        let s = 1.0 / t.cosh();
        Complex64::new(s, -t.tanh()) * (self.radius * s)
    }
}

/// Conjugates `γ` inside `SL₂(ℤ)` until the apex of its axis stops rising.
fn raise_axis(g: &GroupElement) -> GroupElement {
    let mut x = g.clone();
    for _ in 0..200 {
        // centre (a-d)/(2c) into [-1/2, 1/2]
        let two_c = &x.c * 2;
        let k = (&x.a - &x.d + &x.c).div_floor(&two_c);
        if k != BigInt::from(0) {
            x = x.conj_by(&GroupElement::t_pow(-k));
        }
        let ax = Axis::of(&x);
        let flipped = x.conj_by(&GroupElement::s());
        if Axis::of(&flipped).radius > ax.radius * (1.0 + 1e-12) {
            x = flipped;
        } else {
            break;
        }
    }
    x
}

/// Result of [`period_numeric`].
#[derive(Clone, Debug)]
pub struct NumericPeriod {
    pub value: f64,
    pub error: f64,
    /// The conjugate whose axis was integrated.
    pub integrated: GroupElement,
    pub min_height: f64,
}

/// `∫_{z₀}^{γz₀} (E₂(z) - 3/(πy)) dz` along the axis of `γ`, by adaptive Gauss-Legendre
/// in the arclength parameter on a window centred at the apex.
pub fn period_numeric(g: &GroupElement, tol: f64) -> Result<NumericPeriod> {
    if !g.is_unimodular() || g.classify() != MotionClass::Hyperbolic || g.c.is_zero() {
        return Err(Error::WrongClass { expected: "hyperbolic with c != 0".into(), found: g.classify().to_string() });
    }
    let g = if g.trace().is_negative() { g.neg() } else { g.clone() };
    let x = raise_axis(&g);
    let ax = Axis::of(&x);
    if ax.radius < 0.05 {
        return Err(Error::Precision(format!("axis of {x} stays below 0.05")));
    }
    let tr = x.trace().to_f64().unwrap();
    let len = 2.0 * (tr / 2.0).acosh();
    // γ moves the apex forward or backward along the axis
    let [a, b, c, d] = x.to_f64();
    let z0 = ax.point(0.0);
    let gz0 = (z0 * a + b) / (z0 * c + d);
    let dir = if gz0.re > z0.re { 1.0 } else { -1.0 };
    let (t0, t1) = (-len / 2.0 * dir, len / 2.0 * dir);
    let series_tol = tol * 1e-3 / len.max(1.0);
    let f = |t: f64| -> Result<Complex64> { Ok(e2_value(ax.point(t), series_tol)? * ax.velocity(t)) };
    let mut err = 0.0;
    let v = adaptive(&f, t0, t1, tol * 1e-2, 0, &mut err)?;
    Ok(NumericPeriod { value: v.re, error: err + series_tol * len, integrated: x, min_height: ax.point(len / 2.0).im })
}

impl NumericPeriod {
    /// As an approximate symbol value.
    pub fn to_value(&self) -> SymbolValue {
        SymbolValue::Approx { value: real::from_f64(self.value, 64), error: self.error }
    }
}

fn rule(f: &dyn Fn(f64) -> Result<Complex64>, a: f64, b: f64) -> Result<Complex64> {
    let (m, h) = ((a + b) / 2.0, (b - a) / 2.0);
    let mut s = Complex64::new(0.0, 0.0);
    for &(x, w) in gauss_legendre() {
        s += f(m + h * x)? * w;
    }
    Ok(s * h)
}

fn adaptive(
    f: &dyn Fn(f64) -> Result<Complex64>,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    err: &mut f64,
) -> Result<Complex64> {
    let whole = rule(f, a, b)?;
    let m = (a + b) / 2.0;
    let halves = rule(f, a, m)? + rule(f, m, b)?;
    let diff = (whole - halves).norm();
    if diff < tol || depth > 30 {
        *err += diff;
        return Ok(halves);
    }
    Ok(adaptive(f, a, m, tol / 2.0, depth + 1, err)? + adaptive(f, m, b, tol / 2.0, depth + 1, err)?)
}
