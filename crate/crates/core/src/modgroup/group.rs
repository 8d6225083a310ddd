use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::GroupElement;
use crate::arith::{factor, is_squarefree};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Family {
    SL2Z,
    GammaN,
    Gamma0N,
    Gamma1N,
    Gamma0NPlus,
}

/// One of the supported congruence groups.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub struct GroupId {
    pub family: Family,
    pub level: u64,
}

impl GroupId {
    pub fn new(family: Family, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidLevel("level must be at least 1".into()));
        }
        if family == Family::Gamma0NPlus && !is_squarefree(level) {
            return Err(Error::InvalidLevel(format!("Gamma0({level})+ needs a squarefree level")));
        }
        let level = if family == Family::SL2Z { 1 } else { level };
        Ok(GroupId { family, level })
    }

    pub fn sl2z() -> Self {
        GroupId { family: Family::SL2Z, level: 1 }
    }

    pub fn gamma(n: u64) -> Self {
        Self::new(Family::GammaN, n).unwrap()
    }

    pub fn gamma0(n: u64) -> Self {
        Self::new(Family::Gamma0N, n).unwrap()
    }

    pub fn gamma1(n: u64) -> Self {
        Self::new(Family::Gamma1N, n).unwrap()
    }

    /// Panics unless `n` is squarefree.
    pub fn gamma0_plus(n: u64) -> Self {
        Self::new(Family::Gamma0NPlus, n).unwrap()
    }

    /// True when the group is all of `SL₂(ℤ)`.
    pub fn is_full(&self) -> bool {
        self.family == Family::SL2Z || self.level == 1
    }

    /// True for subgroups of `SL₂(ℤ)` (everything except a proper `Γ₀(N)⁺`).
    pub fn in_sl2z(&self) -> bool {
        self.family != Family::Gamma0NPlus || self.level == 1
    }

    pub fn member(&self, g: &GroupElement) -> bool {
        let n = BigInt::from(self.level);
        let div = |x: &BigInt| x.is_multiple_of(&n);
        let unimodular = g.e.is_one();
        match self.family {
            Family::SL2Z => unimodular,
            _ if self.level == 1 && self.family != Family::Gamma0NPlus => unimodular,
            Family::GammaN => {
                unimodular
                    && div(&g.b)
                    && div(&g.c)
                    && (div(&(&g.a - 1)) && div(&(&g.d - 1)) || div(&(&g.a + 1)) && div(&(&g.d + 1)))
            }
            Family::Gamma0N => unimodular && div(&g.c),
            Family::Gamma1N => unimodular && div(&g.c) && (div(&(&g.a - 1)) || div(&(&g.a + 1))),
            Family::Gamma0NPlus => {
                let e = &g.e;
                div(&g.c)
                    && n.is_multiple_of(e)
                    && (&n / e).gcd(e).is_one()
                    && g.a.is_multiple_of(e)
                    && g.d.is_multiple_of(e)
            }
        }
    }

    /// Index of the image in `PSL₂(ℤ)`; `None` for a proper `Γ₀(N)⁺`.
    pub fn index(&self) -> Option<u64> {
        let n = self.level;
        let primes: Vec<u64> = factor(n).iter().map(|&(p, _)| p).collect();
        let psl_gamma0 = primes.iter().fold(n, |acc, &p| acc / p * (p + 1));
        let sq = |m: u64| primes.iter().fold(m, |acc, &p| acc / (p * p) * (p * p - 1));
        Some(match self.family {
            Family::SL2Z => 1,
            _ if n == 1 && self.family != Family::Gamma0NPlus => 1,
            Family::GammaN if n == 2 => 6,
            Family::GammaN => sq(n * n * n) / 2,
            Family::Gamma0N => psl_gamma0,
            Family::Gamma1N if n <= 2 => psl_gamma0,
            Family::Gamma1N => sq(n * n) / 2,
            Family::Gamma0NPlus if n == 1 => 1,
            Family::Gamma0NPlus => return None,
        })
    }

    /// Number of Atkin-Lehner classes, `2^{ω(N)}` for `Γ₀(N)⁺` and 1 otherwise.
    pub fn atkin_lehner_count(&self) -> u64 {
        match self.family {
            Family::Gamma0NPlus => 1 << factor(self.level).len(),
            _ => 1,
        }
    }

    /// Sufficient containment test inside the supported lattice.
    pub fn is_subgroup_of(&self, other: &GroupId) -> bool {
        use Family::*;
        if other.is_full() {
            return self.in_sl2z() || other.family == Gamma0NPlus && self.level == other.level;
        }
        let divides = self.level.is_multiple_of(other.level);
        match (self.family, other.family) {
            (_, SL2Z) => self.in_sl2z(),
            (GammaN, GammaN) => divides,
            (GammaN | Gamma1N, Gamma1N) => divides,
            (GammaN | Gamma1N | Gamma0N, Gamma0N) => divides,
            (GammaN | Gamma1N | Gamma0N, Gamma0NPlus) => divides,
            (Gamma0NPlus, Gamma0NPlus) => self.level == other.level,
            (SL2Z, _) => false,
            _ => false,
        }
    }

    /// Short name used by the command line.
    pub fn cli_name(&self) -> &'static str {
        match self.family {
            Family::SL2Z => "sl2z",
            Family::GammaN => "gamma",
            Family::Gamma0N => "gamma0",
            Family::Gamma1N => "gamma1",
            Family::Gamma0NPlus => "gamma0+",
        }
    }

    /// Parses a command line family name together with a level.
    pub fn parse(name: &str, level: u64) -> Result<Self> {
        let family = match name.trim().to_ascii_lowercase().as_str() {
            "sl2z" | "sl2" | "gamma(1)" => Family::SL2Z,
            "gamma" => Family::GammaN,
            "gamma0" => Family::Gamma0N,
            "gamma1" => Family::Gamma1N,
            "gamma0+" | "gamma0plus" => Family::Gamma0NPlus,
            other => return Err(Error::Parse(format!("unknown group {other:?}"))),
        };
        Self::new(family, level)
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.level;
        match self.family {
            Family::SL2Z => write!(f, "SL2(Z)"),
            Family::GammaN => write!(f, "Gamma({n})"),
            Family::Gamma0N => write!(f, "Gamma0({n})"),
            Family::Gamma1N => write!(f, "Gamma1({n})"),
            Family::Gamma0NPlus => write!(f, "Gamma0({n})+"),
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    /// Accepts the display form, e.g. `Gamma0(11)+` or `SL2(Z)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "SL2(Z)" {
            return Ok(Self::sl2z());
        }
        let bad = || Error::Parse(format!("unknown group {s:?}"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let (num, tail) = rest.split_once(')').ok_or_else(bad)?;
        let level: u64 = num.parse().map_err(|_| bad())?;
        let family = match (head, tail) {
            ("Gamma", "") => Family::GammaN,
            ("Gamma0", "") => Family::Gamma0N,
            ("Gamma1", "") => Family::Gamma1N,
            ("Gamma0", "+") => Family::Gamma0NPlus,
            _ => return Err(bad()),
        };
        Self::new(family, level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert!(GroupId::gamma(2).member(&GroupElement::from_i64(3, 2, 4, 3)));
        assert!(GroupId::gamma0(11).member(&GroupElement::from_i64(1, 0, 11, 1)));
        let w = GroupElement::scaled(0, -1, 11, 0, 11).unwrap();
        assert!(GroupId::gamma0_plus(11).member(&w));
        assert!(!GroupId::gamma0(11).member(&w));
        assert!(!GroupId::gamma1(5).member(&GroupElement::from_i64(2, 1, 5, 3)));
        assert!(GroupId::gamma1(5).member(&GroupElement::from_i64(4, 1, 15, 4)));
    }

    #[test]
    fn indices() {
        assert_eq!(GroupId::gamma0(2).index(), Some(3));
        assert_eq!(GroupId::gamma0(11).index(), Some(12));
        assert_eq!(GroupId::gamma(2).index(), Some(6));
        assert_eq!(GroupId::gamma(3).index(), Some(12));
        assert_eq!(GroupId::gamma(5).index(), Some(60));
        assert_eq!(GroupId::gamma1(5).index(), Some(12));
        assert_eq!(GroupId::gamma0_plus(11).index(), None);
        assert_eq!(GroupId::gamma0_plus(30).atkin_lehner_count(), 8);
    }

    #[test]
    fn names_roundtrip() {
        for g in [GroupId::sl2z(), GroupId::gamma(4), GroupId::gamma0(6), GroupId::gamma1(7), GroupId::gamma0_plus(11)] {
            assert_eq!(g.to_string().parse::<GroupId>().unwrap(), g);
            assert_eq!(GroupId::parse(g.cli_name(), g.level).unwrap(), g);
        }
        assert!(GroupId::new(Family::Gamma0NPlus, 12).is_err());
    }
}
