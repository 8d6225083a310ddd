use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coset::{atkin_lehner, exact_divisors, CosetSpace};
use super::{GroupElement, GroupId};
use crate::arith::bezout;
use crate::error::{Error, Result};

/// A point `p/q` of `ℙ¹(ℚ)`; `∞ = 1/0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Cusp {
    pub numer: BigInt,
    pub denom: BigInt,
}

impl Cusp {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::Parse("0/0 is not a cusp".into()));
        }
        Ok(Self::normalized(p, q))
    }

    fn normalized(p: BigInt, q: BigInt) -> Self {
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Cusp { numer: p, denom: q }
    }

    pub fn infinity() -> Self {
        Cusp { numer: BigInt::one(), denom: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Cusp { numer: BigInt::zero(), denom: BigInt::one() }
    }

    pub fn is_infinity(&self) -> bool {
        self.denom.is_zero()
    }

    /// `g · self`.
    pub fn act(&self, g: &GroupElement) -> Cusp {
        let p = &g.a * &self.numer + &g.b * &self.denom;
        let q = &g.c * &self.numer + &g.d * &self.denom;
        Self::normalized(p, q)
    }

    /// A determinant-one matrix sending `∞` to this cusp.
    pub fn base(&self) -> GroupElement {
        if self.is_infinity() {
            return GroupElement::identity();
        }
        let (x, y) = bezout(&self.numer, &self.denom);
        GroupElement::raw(self.numer.clone(), -y, self.denom.clone(), x, BigInt::one())
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for Cusp {
    type Err = Error;

    /// Parses `"inf"`, `"p"` or `"p/q"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "oo" | "∞" | "infinity") {
            return Ok(Cusp::infinity());
        }
        let bad = || Error::Parse(format!("malformed cusp {s:?}, expected p/q or inf"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse::<BigInt>().map_err(|_| bad())?, q.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        Cusp::new(p, q)
    }
}

impl Serialize for Cusp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cusp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `σ_𝔞 = base · diag(w^{1/2}, w^{-1/2})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalingMap {
    pub base: GroupElement,
    pub width: u64,
}

impl ScalingMap {
    /// Validates `base · ∞ = cusp`.
    pub fn new(cusp: &Cusp, base: GroupElement, width: u64) -> Result<Self> {
        if !base.is_unimodular() || Cusp::infinity().act(&base) != *cusp {
            return Err(Error::BadTransport { from: "inf".into(), to: cusp.to_string() });
        }
        Ok(ScalingMap { base, width })
    }

    pub fn cusp(&self) -> Cusp {
        Cusp::infinity().act(&self.base)
    }

    /// The same cusp with base replaced by `base · T^k`.
    pub fn shifted(&self, k: i64) -> Self {
        ScalingMap { base: self.base.mul(&GroupElement::t_pow(k)), width: self.width }
    }

    /// `base^{-1} g base`; the width scaling acts as `[[a, b/w], [c w, d]]`.
    pub fn conjugate(&self, g: &GroupElement) -> GroupElement {
        self.base.inverse().mul(g).mul(&self.base)
    }

    /// Generator `γ_𝔞 = base T^w base^{-1}` of the stabilizer.
    pub fn stabilizer_generator(&self) -> GroupElement {
        GroupElement::t_pow(self.width).conj_by(&self.base)
    }
}

/// A cusp class with its width and scaling map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspData {
    pub cusp: Cusp,
    pub width: u64,
    pub scaling: ScalingMap,
}

/// Cusp classes together with the coset data used to recognize them.
#[derive(Clone, Debug)]
pub struct CuspTable {
    group: GroupId,
    space: Option<CosetSpace>,
    orbit: Vec<usize>,
    list: Vec<CuspData>,
}

impl CuspTable {
    pub fn new(group: GroupId) -> Result<Self> {
        if !group.in_sl2z() {
            let c = Cusp::infinity();
            let data = CuspData { cusp: c.clone(), width: 1, scaling: ScalingMap::new(&c, GroupElement::identity(), 1)? };
            return Ok(CuspTable { group, space: None, orbit: vec![], list: vec![data] });
        }
        let space = CosetSpace::new(group)?;
        let orbit = space.t_orbits();
        let classes = orbit.iter().max().unwrap() + 1;
        let mut found: Vec<Option<CuspData>> = vec![None; classes];
        let mut remaining = classes;
        let mut q: u64 = 0;
        while remaining > 0 {
            let candidates: Vec<Cusp> = if q == 0 {
                vec![Cusp::infinity()]
            } else {
                (0..q).filter(|p| num_integer::gcd(*p, q) == 1).map(|p| Cusp::new(p, q).unwrap()).collect()
            };
            for c in candidates {
                let base = c.base();
                let i = space.coset_of(&base);
                let k = orbit[i];
                if found[k].is_none() {
                    let width = space.t_orbit_len(i) as u64;
                    found[k] = Some(CuspData { cusp: c.clone(), width, scaling: ScalingMap { base, width } });
                    remaining -= 1;
                }
            }
            q += 1;
        }
        let mut list: Vec<CuspData> = found.into_iter().map(Option::unwrap).collect();
        list.sort_by_key(|x| (x.cusp.denom.clone(), x.cusp.numer.clone()));
        Ok(CuspTable { group, space: Some(space), orbit, list })
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn cusps(&self) -> &[CuspData] {
        &self.list
    }

    /// Position of the class of `c` in [`CuspTable::cusps`].
    pub fn class_of(&self, c: &Cusp) -> usize {
        let Some(space) = &self.space else { return 0 };
        let k = self.orbit[space.coset_of(&c.base())];
        self.list.iter().position(|d| self.orbit[space.coset_of(&d.cusp.base())] == k).unwrap()
    }

    /// The listed representative equivalent to `c`, if `c` is itself listed.
    pub fn find(&self, c: &Cusp) -> Option<&CuspData> {
        self.list.iter().find(|d| d.cusp == *c)
    }

    /// Scaling map for an arbitrary cusp point: base from [`Cusp::base`] and the class width.
    pub fn scaling_for(&self, c: &Cusp) -> ScalingMap {
        let width = self.list[self.class_of(c)].width;
        ScalingMap { base: c.base(), width }
    }

    /// Witness `τ ∈ G` with `τ·c1 = c2`.
    pub fn equivalent(&self, c1: &Cusp, c2: &Cusp) -> Option<GroupElement> {
        let g = self.group;
        if !g.in_sl2z() {
            let n = g.level;
            let inner = CuspTable::new(GroupId::gamma0(n)).ok()?;
            for e in exact_divisors(n) {
                let w = atkin_lehner(n, e).ok()?;
                let target = c2.act(&w.inverse());
                if let Some(t) = inner.equivalent(c1, &target) {
                    let tau = w.mul(&t);
                    debug_assert_eq!(c1.act(&tau), *c2);
                    return Some(tau);
                }
            }
            return None;
        }
        let (b1, b2) = (c1.base(), c2.base());
        let period = g.level.max(1);
        for k in 0..period {
            let tau = b2.mul(&GroupElement::t_pow(k)).mul(&b1.inverse());
            for t in [tau.clone(), tau.neg()] {
                if g.member(&t) {
                    debug_assert_eq!(c1.act(&t), *c2);
                    return Some(t);
                }
            }
        }
        None
    }

    /// Fixed cusp of a parabolic element and its power of the stabilizer generator
    /// of the listed class: returns `(class index, k)` with `γ ~ γ_𝔟^k`.
    pub fn parabolic_power(&self, g: &GroupElement) -> Result<(usize, BigInt)> {
        if g.classify() != super::MotionClass::Parabolic {
            return Err(Error::WrongClass { expected: "parabolic".into(), found: g.classify().to_string() });
        }
        let x = if g.c.is_zero() { Cusp::infinity() } else { Cusp::new(&g.a - &g.d, &g.c * 2)? };
        let idx = self.class_of_any(&x)?;
        let rep = &self.list[idx];
        let tau = self.equivalent(&x, &rep.cusp).ok_or_else(|| Error::Domain("cusp class lookup failed".into()))?;
        let h = rep.scaling.conjugate(&g.conj_by(&tau));
        debug_assert!(h.c.is_zero());
        // h = ±[[1, k w], [0, 1]]
        let k = (&h.b * &h.d) / BigInt::from(rep.width);
        Ok((idx, k))
    }

    fn class_of_any(&self, c: &Cusp) -> Result<usize> {
        if self.space.is_none() {
            return Ok(0);
        }
        Ok(self.class_of(c))
    }
}

/// Cusp classes of `G` with widths and scaling maps, in canonical order.
pub fn cusps(g: &GroupId) -> Result<Vec<CuspData>> {
    Ok(CuspTable::new(*g)?.list)
}

/// Witness `τ ∈ G` with `τ·c1 = c2`, if the cusps are equivalent.
pub fn cusp_equivalent(g: &GroupId, c1: &Cusp, c2: &Cusp) -> Option<GroupElement> {
    CuspTable::new(*g).ok()?.equivalent(c1, c2)
}

/// Width of the cusp class of `c`.
pub fn cusp_width(g: &GroupId, c: &Cusp) -> Result<u64> {
    let t = CuspTable::new(*g)?;
    if t.space.is_none() {
        return Ok(1);
    }
    Ok(t.list[t.class_of(c)].width)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(g: GroupId) -> Vec<(String, u64)> {
        cusps(&g).unwrap().into_iter().map(|d| (d.cusp.to_string(), d.width)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(summary(GroupId::sl2z()), vec![("inf".to_string(), 1)]);
        assert_eq!(
            summary(GroupId::gamma0(4)),
            vec![("inf".to_string(), 1), ("0".to_string(), 4), ("1/2".to_string(), 1)]
        );
        assert_eq!(summary(GroupId::gamma0_plus(11)), vec![("inf".to_string(), 1)]);
    }

    #[test]
    fn equivalences() {
        let s = cusp_equivalent(&GroupId::sl2z(), &Cusp::zero(), &Cusp::infinity()).unwrap();
        assert!(s.proj_eq(&GroupElement::s()));
        assert!(cusp_equivalent(&GroupId::gamma0(4), &Cusp::zero(), &"1/2".parse().unwrap()).is_none());
        let id = cusp_equivalent(&GroupId::gamma(2), &Cusp::infinity(), &Cusp::infinity()).unwrap();
        assert!(id.proj_eq(&GroupElement::identity()));
        let w = cusp_equivalent(&GroupId::gamma0_plus(11), &Cusp::zero(), &Cusp::infinity()).unwrap();
        assert!(GroupId::gamma0_plus(11).member(&w));
    }

    #[test]
    fn base_maps_infinity() {
        for s in ["inf", "0", "1/2", "-3/7", "5"] {
            let c: Cusp = s.parse().unwrap();
            assert_eq!(Cusp::infinity().act(&c.base()), c);
            assert!(c.base().is_unimodular());
        }
    }

    #[test]
    fn parabolic_power_of_t() {
        let t = CuspTable::new(GroupId::gamma0(4)).unwrap();
        let (i, k) = t.parabolic_power(&GroupElement::t_pow(3)).unwrap();
        assert_eq!((i, k), (0, BigInt::from(3)));
        let g = GroupElement::from_i64(1, 0, 4, 1);
        let (i, k) = t.parabolic_power(&g).unwrap();
        assert_eq!(t.cusps()[i].cusp, Cusp::zero());
        assert_eq!(k.abs(), BigInt::one());
    }
}
