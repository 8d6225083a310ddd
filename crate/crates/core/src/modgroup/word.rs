//! Words in `S` and `T` by Euclidean reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::GroupElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    S,
    /// `T^k`, `k != 0`.
    T(BigInt),
}

/// A word `w` with `eval(w) = ±g`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn eval(&self) -> GroupElement {
        self.0.iter().fold(GroupElement::identity(), |acc, l| match l {
            Letter::S => acc.mul(&GroupElement::s()),
            Letter::T(k) => acc.mul(&GroupElement::t_pow(k.clone())),
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::S => "S".to_string(),
                Letter::T(k) if k.is_one() => "T".to_string(),
                Letter::T(k) => format!("T^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Writes `g ∈ SL₂(ℤ)` as `T^{q1} S T^{q2} S ... T^{qk}` up to sign.
pub fn word_decompose(g: &GroupElement) -> Word {
    assert!(g.is_unimodular(), "word_decompose needs a determinant-one element");
    let (mut a, mut b, mut c, mut d) = (g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone());
    let mut out = Vec::new();
    while !c.is_zero() {
        let q = a.div_floor(&c);
        if !q.is_zero() {
            a -= &q * &c;
            b -= &q * &d;
            out.push(Letter::T(q));
        }
        out.push(Letter::S);
        // S^{-1} [[a,b],[c,d]] = [[c,d],[-a,-b]]
        let (na, nb, nc, nd) = (c, d, -a, -b);
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    // now [[±1, b], [0, ±1]] = ±T^{b d}
    let k = &b * &d;
    if !k.is_zero() {
        out.push(Letter::T(k));
    }
    Word(out)
}
