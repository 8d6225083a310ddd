//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use radsym::modgroup::{GroupElement, MotionClass};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn coprime(a: i64, b: i64) -> bool {
    gcd(a, b) == 1
}

/// `s(a,c)` straight from the double sawtooth sum, in integers:
/// `((m/c)) = (2(m mod c) - c)/(2c)` off the multiples of `c`.
pub fn dedekind_direct(a: i64, c: i64) -> Q {
    assert!(c > 0);
    let mut num: i128 = 0;
    for k in 1..c as i128 {
        let r = (a as i128 * k).rem_euclid(c as i128);
        if r != 0 {
            num += (2 * k - c as i128) * (2 * r - c as i128);
        }
    }
    Q::new(BigInt::from(num), BigInt::from(4 * (c as i128) * (c as i128)))
}

/// `Φ` for `SL₂(ℤ)` from the direct Dedekind sum.
pub fn phi_direct(a: i64, b: i64, c: i64, d: i64) -> Q {
    if c == 0 {
        return q(b, d);
    }
    q(a + d, c) - dedekind_direct(a, c.abs()) * q(12 * c.signum(), 1)
}

pub fn psi_direct(a: i64, b: i64, c: i64, d: i64) -> Q {
    phi_direct(a, b, c, d) - q(3 * (c * (a + d)).signum(), 1)
}

pub fn entries(g: &GroupElement) -> (i64, i64, i64, i64) {
    let f = |x: &BigInt| i64::try_from(x).expect("entry fits i64");
    (f(&g.a), f(&g.b), f(&g.c), f(&g.d))
}

/// Möbius function up to `limit` by a linear sieve.
pub fn mobius(limit: usize) -> &'static [i8] {
    static MU: OnceLock<Vec<i8>> = OnceLock::new();
    let mu = MU.get_or_init(|| {
        let n = 10_000_000usize;
        let mut mu = vec![1i8; n + 1];
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        mu[0] = 0;
        for i in 2..=n {
            if !composite[i] {
                primes.push(i);
                mu[i] = -1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > n {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    mu[ip] = 0;
                    break;
                }
                mu[ip] = -mu[i];
            }
        }
        mu
    });
    assert!(limit < mu.len());
    &mu[..=limit]
}

/// `C_{N,j}`, `0 <= j < N`, from
/// `(π²/6)∏(1-p⁻²) Σ_{(a,N)=1} Σ_{na≡1 (N)} μ(n)/n² cos(2πaj/N)` truncated at `n <= cutoff`.
pub fn takada_truncated(n: i64, cutoff: usize) -> Vec<f64> {
    let mu = mobius(cutoff);
    let mut by_residue = vec![0f64; n as usize];
    // small terms first
    for m in (1..=cutoff).rev() {
        if mu[m] != 0 {
            by_residue[m % n as usize] += mu[m] as f64 / (m as f64 * m as f64);
        }
    }
    let mut euler = std::f64::consts::PI.powi(2) / 6.0;
    for p in 2..=n {
        if n % p == 0 && (2..p).all(|d| p % d != 0) {
            euler *= 1.0 - 1.0 / (p * p) as f64;
        }
    }
    (0..n)
        .map(|j| {
            let mut acc = 0.0;
            for a in 1..=n {
                if !coprime(a, n) {
                    continue;
                }
                let inv = (1..=n).find(|x| (a * x) % n == 1 % n).unwrap();
                let angle = 2.0 * std::f64::consts::PI * (a * j) as f64 / n as f64;
                acc += by_residue[(inv % n) as usize] * angle.cos();
            }
            euler * acc
        })
        .collect()
}

/// `|SL₂(ℤ/N)|` by enumeration.
pub fn sl2_mod_order(n: i64) -> i64 {
    if n == 1 {
        return 1;
    }
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (a * d - b * c - 1).rem_euclid(n) == 0 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Vectors `(c, d)` mod `N` with `gcd(c, d, N) = 1`.
pub fn primitive_pairs(n: i64) -> i64 {
    let mut count = 0;
    for c in 0..n {
        for d in 0..n {
            if gcd(gcd(c, d), n) == 1 {
                count += 1;
            }
        }
    }
    count
}

pub fn totient(n: i64) -> i64 {
    (1..=n).filter(|&k| coprime(k, n)).count() as i64
}

/// Strategy for `SL₂(ℤ)` elements as words `±T^{k₁}S T^{k₂}S ...`.
pub fn sl2z_element(max_len: usize, span: i64) -> impl Strategy<Value = GroupElement> {
    (prop::collection::vec(-span..=span, 1..=max_len), any::<bool>()).prop_map(|(ks, neg)| {
        let g = ks.iter().fold(GroupElement::identity(), |g, &k| g.mul(&GroupElement::t_pow(k)).mul(&GroupElement::s()));
        if neg {
            g.neg()
        } else {
            g
        }
    })
}

pub fn hyperbolic_sl2z(max_len: usize, span: i64) -> impl Strategy<Value = GroupElement> {
    sl2z_element(max_len, span).prop_filter("hyperbolic", |g| g.classify() == MotionClass::Hyperbolic)
}

/// Products of the given generators and their inverses.
pub fn word_in(gens: Vec<GroupElement>, max_len: usize) -> impl Strategy<Value = GroupElement> {
    let n = gens.len();
    prop::collection::vec((0..n, any::<bool>()), 1..=max_len).prop_map(move |ix| {
        ix.iter().fold(GroupElement::identity(), |g, &(i, inv)| g.mul(&if inv { gens[i].inverse() } else { gens[i].clone() }))
    })
}
