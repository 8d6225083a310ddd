use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An integer matrix `[[a, b], [c, d]]` of determinant `e`, standing for the
/// real matrix `e^{-1/2} [[a, b], [c, d]]` of determinant one.
///
/// Products are divided by the gcd of their entries so that elements of the
/// Atkin-Lehner extensions stay primitive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub e: BigInt,
}

/// Geometric type of a motion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MotionClass {
    Identity,
    /// Order in the projective group.
    Elliptic(u32),
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for MotionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotionClass::Identity => write!(f, "identity"),
            MotionClass::Elliptic(m) => write!(f, "elliptic({m})"),
            MotionClass::Parabolic => write!(f, "parabolic"),
            MotionClass::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

impl GroupElement {
    /// Determinant-one element; fails if `ad - bc != 1`.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::scaled(a, b, c, d, 1)
    }

    /// Element with determinant `e`.
    pub fn scaled(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
        e: impl Into<BigInt>,
    ) -> Result<Self> {
        let g = GroupElement { a: a.into(), b: b.into(), c: c.into(), d: d.into(), e: e.into() };
        if !g.e.is_positive() || g.det() != g.e {
            return Err(Error::Determinant { expected: g.e.to_string(), found: g.det().to_string() });
        }
        Ok(g)
    }

    /// Unchecked constructor for internal use; the caller guarantees the determinant.
    pub(crate) fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt, e: BigInt) -> Self {
        debug_assert_eq!(&a * &d - &b * &c, e);
        GroupElement { a, b, c, d, e }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a, b, c, d).expect("determinant must be 1")
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    /// `S = [[0,-1],[1,0]]`.
    pub fn s() -> Self {
        Self::from_i64(0, -1, 1, 0)
    }

    /// `T = [[1,1],[0,1]]`.
    pub fn t() -> Self {
        Self::from_i64(1, 1, 0, 1)
    }

    pub fn t_pow(k: impl Into<BigInt>) -> Self {
        Self::raw(BigInt::one(), k.into(), BigInt::zero(), BigInt::one(), BigInt::one())
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_unimodular(&self) -> bool {
        self.e.is_one()
    }

    /// True for `±I`.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn neg(&self) -> Self {
        Self::raw(-&self.a, -&self.b, -&self.c, -&self.d, self.e.clone())
    }

    /// Inverse of the normalized real matrix (the adjugate).
    pub fn inverse(&self) -> Self {
        Self::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone(), self.e.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.a * &o.a + &self.b * &o.c;
        let b = &self.a * &o.b + &self.b * &o.d;
        let c = &self.c * &o.a + &self.d * &o.c;
        let d = &self.c * &o.b + &self.d * &o.d;
        let e = &self.e * &o.e;
        if e.is_one() {
            return Self::raw(a, b, c, d, e);
        }
        let g = a.gcd(&b).gcd(&c).gcd(&d);
        if g.is_one() {
            Self::raw(a, b, c, d, e)
        } else {
            let g2 = &g * &g;
            Self::raw(a / &g, b / &g, c / &g, d / &g, e / g2)
        }
    }

    /// `self^n`, negative exponents through the inverse.
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `h * self * h^{-1}`.
    pub fn conj_by(&self, h: &Self) -> Self {
        h.mul(self).mul(&h.inverse())
    }

    /// Sign representative with `c > 0`, or `c = 0` and `d > 0`.
    pub fn canonical(&self) -> Self {
        let flip = self.c.is_negative() || (self.c.is_zero() && self.d.is_negative());
        if flip { self.neg() } else { self.clone() }
    }

    /// Equality up to overall sign.
    pub fn proj_eq(&self, o: &Self) -> bool {
        self.canonical() == o.canonical()
    }

    /// Motion type of the normalized matrix.
    pub fn classify(&self) -> MotionClass {
        if self.is_scalar() {
            return MotionClass::Identity;
        }
        let t = self.trace();
        let t2 = &t * &t;
        let four_e = &self.e * 4;
        if t2 > four_e {
            MotionClass::Hyperbolic
        } else if t2 == four_e {
            MotionClass::Parabolic
        } else {
            let mut p = self.clone();
            for m in 2..=12u32 {
                p = p.mul(self);
                if p.is_scalar() {
                    return MotionClass::Elliptic(m);
                }
            }
            unreachable!("elliptic element of order > 12")
        }
    }

    /// Entries reduced into `[0, n)`.
    pub fn mod_n(&self, n: u64) -> [u64; 4] {
        let m = BigInt::from(n);
        let r = |x: &BigInt| x.mod_floor(&m).to_u64().unwrap();
        [r(&self.a), r(&self.b), r(&self.c), r(&self.d)]
    }

    pub fn to_f64(&self) -> [f64; 4] {
        let s = self.e.to_f64().unwrap().sqrt();
        [
            self.a.to_f64().unwrap() / s,
            self.b.to_f64().unwrap() / s,
            self.c.to_f64().unwrap() / s,
            self.d.to_f64().unwrap() / s,
        ]
    }

    /// Largest absolute entry.
    pub fn height(&self) -> BigInt {
        [&self.a, &self.b, &self.c, &self.d].iter().map(|x| x.abs()).max().unwrap()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)?;
        if !self.e.is_one() {
            write!(f, ";{}", self.e)?;
        }
        Ok(())
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Parses `"a,b,c,d"` or `"a,b,c,d;e"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed matrix {s:?}, expected a,b,c,d or a,b,c,d;e"));
        let (body, e) = match s.trim().split_once(';') {
            Some((m, e)) => (m, e.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (s.trim(), BigInt::one()),
        };
        let v: Vec<BigInt> = body
            .split(',')
            .map(|x| x.trim().parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if v.len() != 4 {
            return Err(bad());
        }
        let [a, b, c, d]: [BigInt; 4] = v.try_into().unwrap();
        Self::scaled(a, b, c, d, e)
    }
}
