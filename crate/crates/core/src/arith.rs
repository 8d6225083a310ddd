//! Small integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Prime factorization by trial division, as `(p, k)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, k)| k == 1)
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: i64, n: i64) -> Option<i64> {
    let g = a.extended_gcd(&n);
    if g.gcd.abs() != 1 {
        return None;
    }
    Some((g.x * g.gcd).rem_euclid(n))
}

/// `(x, y)` with `a x + b y = 1`; requires `gcd(a, b) = 1`.
pub fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let g = a.extended_gcd(b);
    debug_assert!(g.gcd.abs().is_one());
    if g.gcd.is_negative() {
        (-g.x, -g.y)
    } else {
        (g.x, g.y)
    }
}

/// `sign` with `sign(0) = 0`.
pub fn sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sum of divisors.
pub fn sigma1(n: u64) -> u64 {
    factor(n).iter().fold(1, |acc, &(p, k)| acc * (p.pow(k + 1) - 1) / (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).flat_map(|d| [d, n / d]).collect();
    v.sort_unstable();
    v.dedup();
    v
}
