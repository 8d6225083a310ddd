//! Sawtooth function, Dedekind sums and the classical Dedekind and Rademacher
//! symbols on `SL₂(ℤ)`, together with the cocycle relation they satisfy.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor, sign};
use crate::error::{Error, Result};
use crate::modgroup::{GroupElement, GroupId, ScalingMap};

/// Exact rational numbers.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// `p/q`, or `p` when `q = 1`.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.trim().split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// `πV^{-1}` of a group, a positive rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeConstant {
    pub value: Rat,
}

/// `((x)) = x - ⌊x⌋ - 1/2` for `x ∉ ℤ`, and `0` otherwise.
pub fn sawtooth(x: &Rat) -> Rat {
    if x.is_integer() {
        return Rat::zero();
    }
    x - x.floor() - rat(1, 2)
}

/// `s(a, c) = Σ_{k=1}^{c-1} ((k/c))((ak/c))` by reciprocity descent.
pub fn dedekind_sum(a: &BigInt, c: &BigInt) -> Result<Rat> {
    if !c.is_positive() {
        return Err(Error::Domain(format!("dedekind_sum needs c >= 1, got {c}")));
    }
    if !a.gcd(c).is_one() {
        return Err(Error::NotCoprime(a.to_string(), c.to_string()));
    }
    let mut a = a.mod_floor(c);
    let mut c = c.clone();
    let mut acc = Rat::zero();
    let mut positive = true;
    let quarter = rat(1, 4);
    // s(a,c) + s(c,a) = -1/4 + (a^2 + c^2 + 1)/(12ac)
    while !a.is_zero() {
        let term = Rat::new(&a * &a + &c * &c + 1u32, &a * &c * 12u32) - &quarter;
        if positive {
            acc += term;
        } else {
            acc -= term;
        }
        positive = !positive;
        let r = c.mod_floor(&a);
        c = a;
        a = r;
    }
    Ok(acc)
}

fn unimodular(g: &GroupElement) -> Result<()> {
    if !g.is_unimodular() {
        return Err(Error::NotMember { element: g.to_string(), group: "SL2(Z)".into() });
    }
    Ok(())
}

/// Dedekind symbol: `b/d` if `c = 0`, else `(a+d)/c - 12 sign(c) s(a, |c|)`.
pub fn phi_classical(g: &GroupElement) -> Result<Rat> {
    unimodular(g)?;
    if g.c.is_zero() {
        return Ok(Rat::new(g.b.clone(), g.d.clone()));
    }
    let s = dedekind_sum(&g.a, &g.c.abs())?;
    let v = Rat::new(g.trace(), g.c.clone()) - s * rat_int(12 * sign(&g.c));
    debug_assert!(v.is_integer());
    Ok(v)
}

/// Rademacher symbol `Ψ(γ) = Φ(γ) - 3 sign(c(a+d))`.
pub fn psi_classical(g: &GroupElement) -> Result<Rat> {
    let phi = phi_classical(g)?;
    Ok(phi - rat_int(3 * sign(&(&g.c * g.trace()))))
}

/// `πV^{-1} = 3/μ`, with `μ` the index in `PSL₂(ℤ)`; for `Γ₀(N)⁺` it is
/// `3·2^{ω(N)}/μ(Γ₀(N))`.
pub fn pi_over_volume(g: &GroupId) -> VolumeConstant {
    let value = match g.index() {
        Some(mu) => rat(3, mu as i64),
        None => {
            let mu0 = GroupId::gamma0(g.level).index().unwrap();
            rat(3 * (1i64 << factor(g.level).len()), mu0 as i64)
        }
    };
    VolumeConstant { value }
}

/// Lower-left entry of `σ^{-1} g σ` up to a positive factor.
pub(crate) fn scaled_c(scaling: &ScalingMap, g: &GroupElement) -> BigInt {
    scaling.conjugate(g).c
}

/// `Φ(γ₁γ₂) - Φ(γ₁) - Φ(γ₂) + πV^{-1} sign(c₁c₂c₃)`; zero for a consistent symbol.
pub fn cocycle_defect(
    group: &GroupId,
    scaling: &ScalingMap,
    g1: &GroupElement,
    g2: &GroupElement,
    phi1: &Rat,
    phi2: &Rat,
    phi12: &Rat,
) -> Rat {
    let kappa = pi_over_volume(group).value;
    let c1 = scaled_c(scaling, g1);
    let c2 = scaled_c(scaling, g2);
    let c3 = scaled_c(scaling, &g1.mul(g2));
    let s = sign(&c1) * sign(&c2) * sign(&c3);
    phi12 - phi1 - phi2 + kappa * rat_int(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, c: i64) -> Rat {
        dedekind_sum(&BigInt::from(a), &BigInt::from(c)).unwrap()
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&Rat::zero()), Rat::zero());
        assert_eq!(sawtooth(&rat(1, 4)), rat(-1, 4));
        assert_eq!(sawtooth(&rat(1, 2)), Rat::zero());
        assert_eq!(sawtooth(&rat(-1, 4)), rat(1, 4));
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(s(0, 1), Rat::zero());
        assert_eq!(s(1, 3), rat(1, 18));
        assert_eq!(s(3, 4), rat(-1, 8));
        assert_eq!(s(-1, 3), rat(-1, 18));
        assert!(dedekind_sum(&BigInt::from(2), &BigInt::from(4)).is_err());
    }

    #[test]
    fn symbol_examples() {
        let t = GroupElement::t();
        let sm = GroupElement::s();
        let g = GroupElement::from_i64(3, 2, 4, 3);
        assert_eq!(phi_classical(&t).unwrap(), rat_int(1));
        assert_eq!(phi_classical(&sm).unwrap(), Rat::zero());
        assert_eq!(phi_classical(&g).unwrap(), rat_int(3));
        assert_eq!(psi_classical(&t).unwrap(), rat_int(1));
        assert_eq!(psi_classical(&sm).unwrap(), Rat::zero());
        assert_eq!(psi_classical(&g).unwrap(), Rat::zero());
        assert_eq!(psi_classical(&GroupElement::from_i64(2, 1, 1, 1)).unwrap(), Rat::zero());
    }

    #[test]
    fn volume_examples() {
        assert_eq!(pi_over_volume(&GroupId::sl2z()).value, rat_int(3));
        assert_eq!(pi_over_volume(&GroupId::gamma0(2)).value, rat_int(1));
        assert_eq!(pi_over_volume(&GroupId::gamma0_plus(11)).value, rat(1, 2));
    }

    #[test]
    fn cocycle_examples() {
        let id = ScalingMap { base: GroupElement::identity(), width: 1 };
        let g = GroupId::sl2z();
        let (t, sm) = (GroupElement::t(), GroupElement::s());
        let p = |x: &GroupElement| phi_classical(x).unwrap();
        assert!(cocycle_defect(&g, &id, &t, &t, &p(&t), &p(&t), &p(&t.mul(&t))).is_zero());
        assert!(cocycle_defect(&g, &id, &sm, &t, &p(&sm), &p(&t), &p(&sm.mul(&t))).is_zero());
    }

    #[test]
    fn parse_format() {
        assert_eq!(format_rat(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rat(&rat(4, 2)), "2");
        assert_eq!(parse_rat("-1/2").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
    }
}
