//! Thin helpers over `astro_float_num::BigFloat`.

use astro_float_num::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dedekind::Rat;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

pub(crate) fn consts() -> Consts {
    Consts::new().expect("constant cache")
}

pub(crate) fn zero(p: usize) -> BigFloat {
    BigFloat::from_word(0, p)
}

pub(crate) fn from_i64(x: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(x, p)
}

pub(crate) fn from_f64(x: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(x, p)
}

pub(crate) fn from_bigint(x: &BigInt, p: usize) -> BigFloat {
    if x.is_zero() {
        return zero(p);
    }
    let mag = x.magnitude();
    let bits = mag.bits() as usize;
    let words = bits.div_ceil(64);
    let shifted: BigUint = mag << (words * 64 - bits);
    let m = shifted.to_u64_digits();
    let s = if x.is_negative() { Sign::Neg } else { Sign::Pos };
    let mut f = BigFloat::from_words(&m, s, bits as i32);
    f.set_precision(p.max(64), RM).expect("precision");
    f
}

pub(crate) fn from_rat(x: &Rat, p: usize) -> BigFloat {
    from_bigint(x.numer(), p + 64).div(&from_bigint(x.denom(), p + 64), p, RM)
}

/// Exact value of a finite float as a rational.
pub(crate) fn to_rat(x: &BigFloat) -> Rat {
    let Some((m, _n, s, e, _)) = x.as_raw_parts() else {
        return Rat::zero();
    };
    if x.is_zero() {
        return Rat::zero();
    }
    let mut acc = BigUint::zero();
    for w in m.iter().rev() {
        acc = (acc << 64u32) + BigUint::from(*w);
    }
    let shift = e as i64 - 64 * m.len() as i64;
    let mut num = BigInt::from(acc);
    if s == Sign::Neg {
        num = -num;
    }
    if shift >= 0 {
        Rat::from_integer(num << shift as usize)
    } else {
        Rat::new(num, BigInt::from(1u8) << (-shift) as usize)
    }
}

pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    let r = to_rat(x);
    rat_to_f64(&r)
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    // scale to avoid overflow of huge numerators and denominators
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let (n, d) = if shift > 0 {
        (r.numer().clone(), r.denom() << shift as usize)
    } else {
        (r.numer() << (-shift) as usize, r.denom().clone())
    };
    let q = (n / d).to_f64().unwrap_or(f64::NAN);
    q * 2f64.powi(shift as i32)
}

pub(crate) fn abs_f64(x: &BigFloat) -> f64 {
    to_f64(x).abs()
}

/// Decimal string with `digits` significant digits.
pub(crate) fn to_decimal(x: &BigFloat, digits: usize) -> String {
    let r = to_rat(x);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let r = r.abs();
    let ten = BigInt::from(10);
    // exponent estimate
    let mut e10 = ((r.numer().bits() as f64 - r.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let scaled = |e: i64| -> Rat {
        if e >= 0 {
            &r / Rat::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            &r * Rat::from_integer(num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    let mut m = scaled(e10);
    while m >= Rat::from_integer(ten.clone()) {
        e10 += 1;
        m = scaled(e10);
    }
    while m < Rat::from_integer(BigInt::from(1)) {
        e10 -= 1;
        m = scaled(e10);
    }
    let mut big = (m * Rat::from_integer(num_traits::pow(ten.clone(), digits - 1))).round().to_integer();
    // rounding 9.99.. up to 10
    if big >= num_traits::pow(ten.clone(), digits) {
        big /= &ten;
        e10 += 1;
    }
    let s = big.to_string();
    let sign = if neg { "-" } else { "" };
    if (-6..digits as i64).contains(&e10) {
        let (int, frac) = if e10 >= 0 {
            let (i, f) = s.split_at(e10 as usize + 1);
            (i.to_string(), f.to_string())
        } else {
            ("0".to_string(), format!("{}{s}", "0".repeat((-e10 - 1) as usize)))
        };
        let frac = frac.trim_end_matches('0');
        return if frac.is_empty() { format!("{sign}{int}") } else { format!("{sign}{int}.{frac}") };
    }
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mant = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    format!("{sign}{mant}e{e10}")
}

/// Complex number over `BigFloat`.
#[derive(Clone, Debug)]
pub(crate) struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Cx {
    pub fn zero(p: usize) -> Self {
        Cx { re: zero(p), im: zero(p) }
    }

    pub fn add(&self, o: &Cx, p: usize) -> Cx {
        Cx { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM) }
    }

    pub fn mul(&self, o: &Cx, p: usize) -> Cx {
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        Cx { re, im }
    }

    pub fn scale(&self, x: &BigFloat, p: usize) -> Cx {
        Cx { re: self.re.mul(x, p, RM), im: self.im.mul(x, p, RM) }
    }

    pub fn inv(&self, p: usize) -> Cx {
        let n = self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM);
        Cx { re: self.re.div(&n, p, RM), im: self.im.neg().div(&n, p, RM) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::rat;

    #[test]
    fn roundtrip_integers_and_rationals() {
        for x in [0i64, 1, -1, 5, 1 << 40, -(1 << 62) + 7] {
            let f = from_bigint(&BigInt::from(x), 128);
            assert_eq!(to_rat(&f), Rat::from_integer(BigInt::from(x)));
        }
        let big: BigInt = "123456789012345678901234567890123".parse().unwrap();
        assert_eq!(to_rat(&from_bigint(&big, 256)), Rat::from_integer(big));
        let f = from_rat(&rat(-3, 8), 128);
        assert_eq!(to_rat(&f), rat(-3, 8));
        assert!((to_f64(&from_rat(&rat(1, 3), 200)) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn decimal_output() {
        assert_eq!(to_decimal(&from_rat(&rat(1, 8), 128), 10), "0.125");
        assert_eq!(to_decimal(&from_i64(-42, 128), 10), "-42");
        assert_eq!(to_decimal(&from_rat(&rat(-3, 10_000_000), 128), 10), "-3e-7");
        assert_eq!(to_decimal(&from_i64(123_456, 128), 3), "1.23e5");
        // carry out of the last digit
        let below_one = from_rat(&(rat(1, 1) - rat(1, 1 << 60)), 256);
        assert_eq!(to_decimal(&below_one, 10), "1");
        assert_eq!(to_decimal(&from_rat(&rat(-999_999, 100_000), 128), 3), "-10");
        let pi = consts().pi(256, RM);
        assert_eq!(to_decimal(&pi, 20), "3.1415926535897932385");
    }
}
