//! Rational reconstruction by continued-fraction convergents.

use astro_float_num::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::real;
use crate::dedekind::Rat;

/// First convergent `p/q` of `x` with `|x - p/q| < 10^{-tol_digits}`, provided
/// `q <= bound`. Returns the rational and the residual.
pub fn reconstruct(x: &BigFloat, tol_digits: u32, bound: &BigInt) -> Option<(Rat, f64)> {
    reconstruct_rat(&real::to_rat(x), tol_digits, bound)
}

/// Same as [`reconstruct`] for an exactly known rational approximation.
pub fn reconstruct_rat(x: &Rat, tol_digits: u32, bound: &BigInt) -> Option<(Rat, f64)> {
    let tol = Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), tol_digits as usize));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > bound {
            return None;
        }
        let cand = Rat::new(h2.clone(), k2.clone());
        let err = (x - &cand).abs();
        if err < tol {
            return Some((cand, real::rat_to_f64(&err)));
        }
        let frac = &rest - Rat::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        debug_assert!(k1.gcd(&h1).is_one() || h1.is_zero());
    }
}
