//! The constants `C_{N,j}` of the explicit `Γ(N)` formula, evaluated through
//! Dirichlet characters and Hurwitz zeta values.

use astro_float_num::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::real::{self, Cx, RM};
use super::value::PrecisionCtx;
use crate::arith::{euler_phi, factor, gcd_u64, inv_mod};
use crate::dedekind::{rat, Rat};
use crate::error::{Error, Result};

/// `C_{N,j}` with an error bound; `exact` is set when the value is known in closed form.
#[derive(Clone, Debug)]
pub struct TakadaConstant {
    pub n: u64,
    pub j: u64,
    pub value: BigFloat,
    pub error: f64,
    pub exact: Option<Rat>,
}

impl TakadaConstant {
    pub fn to_f64(&self) -> f64 {
        real::to_f64(&self.value)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        real::to_decimal(&self.value, digits)
    }
}

/// Closed forms: when `(ℤ/N)^* = {±1}` every `C_{N,j}` is `cos(2πj/N)`.
fn exact_table(n: u64) -> Option<Vec<Rat>> {
    let row: &[(i64, i64)] = match n {
        1 => &[(1, 1)],
        2 => &[(1, 1), (-1, 1)],
        3 => &[(1, 1), (-1, 2), (-1, 2)],
        4 => &[(1, 1), (0, 1), (-1, 1), (0, 1)],
        6 => &[(1, 1), (1, 2), (-1, 2), (-1, 1), (-1, 2), (1, 2)],
        _ => return None,
    };
    Some(row.iter().map(|&(a, b)| rat(a, b)).collect())
}

/// All `C_{N,j}`, `0 <= j < N`, using closed forms where available.
pub fn takada_table(n: u64, ctx: &PrecisionCtx) -> Result<Vec<TakadaConstant>> {
    if n < 2 {
        return Err(Error::InvalidLevel(format!("C_(N,j) needs N >= 2, got {n}")));
    }
    if let Some(ex) = exact_table(n) {
        let p = ctx.bits();
        return Ok(ex
            .into_iter()
            .enumerate()
            .map(|(j, r)| TakadaConstant { n, j: j as u64, value: real::from_rat(&r, p), error: 0.0, exact: Some(r) })
            .collect());
    }
    takada_table_numeric(n, ctx)
}

/// `C_{N,j}` for a single `j` (any integer, reduced mod `N`).
#[allow(non_snake_case)]
pub fn takada_C(n: u64, j: i64, ctx: &PrecisionCtx) -> Result<TakadaConstant> {
    let t = takada_table(n, ctx)?;
    Ok(t[j.rem_euclid(n as i64) as usize].clone())
}

/// Discrete-log coordinates on `(ℤ/N)^*`.
struct UnitGroup {
    n: u64,
    orders: Vec<u64>,
    units: Vec<u64>,
    logs: Vec<Vec<u64>>,
}

impl UnitGroup {
    fn new(n: u64) -> Self {
        let mut comps: Vec<(u64, Box<dyn Fn(u64) -> u64>, u64)> = Vec::new();
        for (p, k) in factor(n) {
            let q = p.pow(k);
            if p == 2 {
                if k == 2 {
                    comps.push((q, Box::new(move |u| if u % 4 == 1 { 0 } else { 1 }), 2));
                } else if k >= 3 {
                    comps.push((q, Box::new(move |u| if u % 4 == 1 { 0 } else { 1 }), 2));
                    let ord = q / 4;
                    let table = dlog_table(5, q);
                    comps.push((q, Box::new(move |u| {
                        let v = if u % 4 == 1 { u % q } else { (q - u % q) % q };
                        table[v as usize]
                    }), ord));
                }
            } else {
                let phi = q / p * (p - 1);
                let g = (2..q).find(|&g| gcd_u64(g, p) == 1 && mult_order(g, q) == phi).unwrap();
                let table = dlog_table(g, q);
                comps.push((q, Box::new(move |u| table[(u % q) as usize]), phi));
            }
        }
        let units: Vec<u64> = (1..n).filter(|&u| gcd_u64(u, n) == 1).collect();
        let logs = units.iter().map(|&u| comps.iter().map(|(_, f, _)| f(u)).collect()).collect();
        let orders = comps.iter().map(|c| c.2).collect();
        UnitGroup { n, orders, units, logs }
    }

    /// Least common multiple of the component orders.
    fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| a.lcm(&b))
    }

    /// All characters as exponent vectors.
    fn characters(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &o in &self.orders {
            out = out.into_iter().flat_map(|v| (0..o).map(move |e| [v.clone(), vec![e]].concat())).collect();
        }
        out
    }

    /// `χ(u) = ζ_L^k`; returns `k`.
    fn angle(&self, chi: &[u64], unit_index: usize) -> u64 {
        let l = self.exponent();
        let logs = &self.logs[unit_index];
        chi.iter().zip(logs).zip(&self.orders).map(|((e, x), o)| e * x * (l / o)).sum::<u64>() % l
    }
}

fn mult_order(g: u64, q: u64) -> u64 {
    let mut x = g % q;
    let mut k = 1;
    while x != 1 {
        x = x * g % q;
        k += 1;
    }
    k
}

fn dlog_table(g: u64, q: u64) -> Vec<u64> {
    let mut t = vec![0u64; q as usize];
    let mut x = 1u64;
    let mut k = 0;
    loop {
        t[x as usize] = k;
        x = x * g % q;
        k += 1;
        if x == 1 {
            break;
        }
    }
    t
}

/// Exact Bernoulli numbers `B_0..=B_m`.
pub(crate) fn bernoulli(m: usize) -> Vec<Rat> {
    let mut b = vec![Rat::one()];
    for n in 1..=m {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        let mut s = Rat::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += Rat::from_integer(binom.clone()) * bk;
            binom = binom * (n + 1 - k) / (k + 1);
        }
        b.push(-s / Rat::from_integer(BigInt::from(n + 1)));
    }
    b
}

fn log10_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).log10()).sum()
}

/// `ζ(2, r/N)` by Euler-Maclaurin; returns the value and the truncation bound.
fn hurwitz2(r: u64, n: u64, target_digits: f64, p: usize, bern: &[Rat]) -> (BigFloat, f64) {
    let m = (target_digits / 2.0).ceil() as u64 + 10;
    let nn = BigInt::from(n);
    let n2 = real::from_bigint(&(&nn * &nn), p);
    let mut acc = real::zero(p);
    for k in 0..m {
        let den = BigInt::from(k * n + r);
        acc = acc.add(&n2.div(&real::from_bigint(&(&den * &den), p), p, RM), p, RM);
    }
    // y = M + r/N
    let y = real::from_rat(&Rat::new(BigInt::from(m * n + r), nn.clone()), p);
    let inv_y = real::from_i64(1, p).div(&y, p, RM);
    let inv_y2 = inv_y.mul(&inv_y, p, RM);
    acc = acc.add(&inv_y, p, RM);
    acc = acc.add(&inv_y2.div(&real::from_i64(2, p), p, RM), p, RM);
    let ylog = ((m * n + r) as f64 / n as f64).log10();
    let mut pow = inv_y2.mul(&inv_y, p, RM); // y^{-3}
    let mut j = 1;
    let bound = loop {
        let b = &bern[2 * j];
        acc = acc.add(&real::from_rat(b, p).mul(&pow, p, RM), p, RM);
        pow = pow.mul(&inv_y2, p, RM);
        // |B_{2j+2}| < 2 (2j+2)! / (2π)^{2j+2} · 1.1
        let jj = 2 * j + 2;
        let logb = (2.2f64).log10() + log10_factorial(jj) - jj as f64 * (2.0 * std::f64::consts::PI).log10();
        let logt = logb - (jj + 1) as f64 * ylog;
        if logt < -target_digits || 2 * j + 2 >= bern.len() {
            break 10f64.powf(logt);
        }
        j += 1;
    };
    (acc, bound)
}

/// `C_{N,j}` for all `j` through the character decomposition, ignoring closed forms.
pub fn takada_table_numeric(n: u64, ctx: &PrecisionCtx) -> Result<Vec<TakadaConstant>> {
    if n < 2 {
        return Err(Error::InvalidLevel(format!("C_(N,j) needs N >= 2, got {n}")));
    }
    let p = ctx.bits();
    let target = ctx.digits as f64 + 20.0;
    let mut cc = real::consts();
    let pi = cc.pi(p, RM);
    let two_pi = pi.mul(&real::from_i64(2, p), p, RM);

    let grp = UnitGroup::new(n);
    let phi = euler_phi(n);
    let l = grp.exponent();
    let root = |k: u64, cc: &mut astro_float_num::Consts| {
        let t = two_pi.mul(&real::from_rat(&Rat::new(BigInt::from(k), BigInt::from(l)), p), p, RM);
        Cx { re: t.cos(p, RM, cc), im: t.sin(p, RM, cc) }
    };
    let roots: Vec<Cx> = (0..l).map(|k| root(k, &mut cc)).collect();

    let bern = bernoulli(2 * (target as usize) + 40);
    let mut hz_bound: f64 = 0.0;
    let hz: Vec<BigFloat> = grp
        .units
        .iter()
        .map(|&r| {
            let (v, b) = hurwitz2(r, n, target, p, &bern);
            hz_bound = hz_bound.max(b);
            v
        })
        .collect();
    let inv_n2 = real::from_rat(&Rat::new(BigInt::one(), BigInt::from(n * n)), p);

    // 1/L(2, χ) for every character
    let chars = grp.characters();
    let inv_l: Vec<Cx> = chars
        .iter()
        .map(|chi| {
            let mut s = Cx::zero(p);
            for (i, h) in hz.iter().enumerate() {
                s = s.add(&roots[grp.angle(chi, i) as usize].scale(h, p), p);
            }
            s.scale(&inv_n2, p).inv(p)
        })
        .collect();

    // S(a^{-1}) = (1/φ) Σ_χ χ(a)/L(2,χ)
    let inv_phi = real::from_rat(&Rat::new(BigInt::one(), BigInt::from(phi)), p);
    let s_inv: Vec<BigFloat> = (0..grp.units.len())
        .map(|i| {
            let mut s = Cx::zero(p);
            for (c, il) in chars.iter().zip(&inv_l) {
                s = s.add(&roots[grp.angle(c, i) as usize].mul(il, p), p);
            }
            s.re.mul(&inv_phi, p, RM)
        })
        .collect();

    // K = (π²/6) Π (1 - p^{-2})
    let mut kfac = Rat::new(BigInt::one(), BigInt::from(6));
    for (q, _) in factor(n) {
        kfac *= Rat::new(BigInt::from(q * q - 1), BigInt::from(q * q));
    }
    let k = pi.mul(&pi, p, RM).mul(&real::from_rat(&kfac, p), p, RM);

    let cos_n: Vec<BigFloat> = (0..n)
        .map(|m| two_pi.mul(&real::from_rat(&Rat::new(BigInt::from(m), BigInt::from(n)), p), p, RM).cos(p, RM, &mut cc))
        .collect();

    let error = hz_bound * (n * n) as f64 * 4.0 + 2f64.powi(-(p as i32) + 40);
    let out = (0..n)
        .map(|j| {
            let mut s = real::zero(p);
            for (i, &a) in grp.units.iter().enumerate() {
                s = s.add(&s_inv[i].mul(&cos_n[((a * j) % n) as usize], p, RM), p, RM);
            }
            TakadaConstant { n, j, value: s.mul(&k, p, RM), error, exact: None }
        })
        .collect();
    let _ = grp.n;
    let _ = inv_mod;
    Ok(out)
}
