//! Torsion certificates for cuspidal divisor classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::divisor::{Divisor, PeriodMap};
use crate::dedekind::{format_rat, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::modgroup::{schreier_generators, GroupElement, GroupId};
use crate::symbols::{PrecisionCtx, SymbolValue, Symbols};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    /// Every period came out as an exact rational.
    Exact,
    /// Some periods were reconstructed and passed the cross-checks.
    ReconstructedVerified,
    /// A period could not be certified rational; no order is claimed.
    NonRational,
}

impl CertificateStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateStatus::Exact => "exact",
            CertificateStatus::ReconstructedVerified => "reconstructed-verified",
            CertificateStatus::NonRational => "non-rational-flag",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(CertificateStatus::Exact),
            "reconstructed-verified" => Ok(CertificateStatus::ReconstructedVerified),
            "non-rational-flag" => Ok(CertificateStatus::NonRational),
            _ => Err(Error::Parse(format!("unknown certificate status {s:?}"))),
        }
    }
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Periods of a divisor on a generating set together with the order they imply.
#[derive(Clone, Debug)]
pub struct TorsionCertificate {
    pub group: GroupId,
    pub divisor: Divisor,
    pub generators: Vec<GroupElement>,
    pub periods: Vec<SymbolValue>,
    /// lcm of the period denominators; `None` under the non-rational flag.
    pub order: Option<BigInt>,
    pub status: CertificateStatus,
    /// Failed cross-checks, if any.
    pub notes: Vec<String>,
}

/// Certifies the order of the class of `D` from its periods on the Schreier generators.
///
/// Reconstructed periods count only after the homomorphism and cocycle checks
/// on consecutive generator pairs hold exactly.
pub fn torsion_certificate(group: &GroupId, divisor: &Divisor, ctx: &PrecisionCtx) -> Result<TorsionCertificate> {
    if divisor.group() != *group {
        return Err(Error::Domain(format!("divisor lives on {}, not {group}", divisor.group())));
    }
    let reg = Symbols::new(ctx.clone());
    let map = PeriodMap::new(&reg, divisor)?;
    let generators = schreier_generators(group)?;
    let periods: Vec<SymbolValue> = generators.par_iter().map(|g| map.period(g)).collect::<Result<_>>()?;

    let mut notes = vec![];
    let status = if periods.iter().any(SymbolValue::is_approx) {
        notes.push("a period was not reconstructed".to_string());
        CertificateStatus::NonRational
    } else if periods.iter().all(SymbolValue::is_exact) {
        CertificateStatus::Exact
    } else {
        notes = cross_check(&map, &generators, &periods)?;
        if notes.is_empty() {
            CertificateStatus::ReconstructedVerified
        } else {
            CertificateStatus::NonRational
        }
    };
    let order = match status {
        CertificateStatus::NonRational => None,
        _ => Some(order_of(periods.iter().map(|p| p.as_rat().unwrap()))),
    };
    Ok(TorsionCertificate { group: *group, divisor: divisor.clone(), generators, periods, order, status, notes })
}

fn order_of<'a>(values: impl Iterator<Item = &'a Rat>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn exactly_zero(v: &SymbolValue) -> bool {
    v.as_rat().is_some_and(Zero::is_zero)
}

/// Homomorphism and cocycle identities on pairs `(gᵢ, gᵢ₊₁)`; returns the failures.
fn cross_check(map: &PeriodMap<'_>, gens: &[GroupElement], periods: &[SymbolValue]) -> Result<Vec<String>> {
    let n = gens.len();
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let failures: Vec<Vec<String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut out = vec![];
            let prod = gens[i].mul(&gens[j]);
            let lhs = map.period(&prod)?;
            let resid = lhs.add(&periods[i].neg()).add(&periods[j].neg());
            if !exactly_zero(&resid) {
                out.push(format!("homomorphism fails on generators {i},{j}"));
            }
            for e in map.engines() {
                if !exactly_zero(&e.cocycle_residual(&gens[i], &gens[j])?) {
                    out.push(format!("cocycle fails at {} on generators {i},{j}", e.cusp()));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(failures.concat())
}

impl TorsionCertificate {
    /// `{"order", "generators", "periods", "status", ...}`.
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.to_string(),
            "divisor": self.divisor.to_string(),
            "order": self.order.as_ref().map(|n| n.to_u64().map_or_else(|| json!(n.to_string()), |k| json!(k))),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "periods": self.periods.iter().map(|p| p.to_json(30)).collect::<Vec<_>>(),
            "status": self.status.as_str(),
            "notes": self.notes,
        })
    }

    /// Reads back the output of [`TorsionCertificate::to_json`]. Approximate
    /// periods are not representable and are rejected.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("certificate: bad or missing {what}"));
        let group: GroupId = v["group"].as_str().ok_or_else(|| bad("group"))?.parse()?;
        let divisor = match v["divisor"].as_str().ok_or_else(|| bad("divisor"))? {
            "0" => Divisor::zero(group),
            s => Divisor::parse(group, s)?,
        };
        let generators = v["generators"]
            .as_array()
            .ok_or_else(|| bad("generators"))?
            .iter()
            .map(|g| g.as_str().ok_or_else(|| bad("generator"))?.parse())
            .collect::<Result<Vec<GroupElement>>>()?;
        let status = CertificateStatus::parse(v["status"].as_str().ok_or_else(|| bad("status"))?)?;
        let periods = v["periods"]
            .as_array()
            .ok_or_else(|| bad("periods"))?
            .iter()
            .map(|p| {
                let r = parse_rat(p.as_str().ok_or_else(|| bad("period"))?)?;
                Ok(match status {
                    CertificateStatus::Exact => SymbolValue::Exact(r),
                    _ => SymbolValue::Reconstructed { value: r, residual: 0.0 },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if periods.len() != generators.len() {
            return Err(bad("periods (length mismatch)"));
        }
        let order = match &v["order"] {
            Value::Null => None,
            Value::String(s) => Some(s.parse::<BigInt>().map_err(|_| bad("order"))?),
            Value::Number(n) => Some(BigInt::from(n.as_u64().ok_or_else(|| bad("order"))?)),
            _ => return Err(bad("order")),
        };
        let notes = v["notes"]
            .as_array()
            .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
            .unwrap_or_default();
        Ok(TorsionCertificate { group, divisor, generators, periods, order, status, notes })
    }

    /// Recomputes every listed period and the order; returns the mismatches.
    pub fn verify(&self, ctx: &PrecisionCtx) -> Result<Vec<String>> {
        let reg = Symbols::new(ctx.clone());
        let map = PeriodMap::new(&reg, &self.divisor)?;
        let mut out = vec![];
        for (k, (g, p)) in self.generators.iter().zip(&self.periods).enumerate() {
            let fresh = map.period(g)?;
            match (fresh.as_rat(), p.as_rat()) {
                (Some(a), Some(b)) if a == b => {}
                _ => out.push(format!("period {k} at {g}: listed {}, recomputed {}", p.render(20), fresh.render(20))),
            }
        }
        if let Some(n) = &self.order {
            let want = order_of(self.periods.iter().filter_map(SymbolValue::as_rat));
            if &want != n {
                out.push(format!("order {n} differs from lcm of denominators {want}"));
            }
        }
        Ok(out)
    }

    /// Periods as `p/q` strings.
    pub fn period_strings(&self) -> Vec<String> {
        self.periods.iter().map(|p| p.as_rat().map(format_rat).unwrap_or_else(|| p.render(20))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let ctx = PrecisionCtx::default();
        for (n, want) in [(2u64, 1u64), (3, 1), (5, 1), (11, 5)] {
            let g = GroupId::gamma0(n);
            let d = Divisor::zero_minus_infinity(g).unwrap();
            let cert = torsion_certificate(&g, &d, &ctx).unwrap();
            assert_eq!(cert.order, Some(BigInt::from(want)), "level {n}: {:?}", cert.notes);
            assert_ne!(cert.status, CertificateStatus::NonRational);
            assert!(cert.verify(&ctx).unwrap().is_empty());
        }
        let g = GroupId::gamma0(7);
        let cert = torsion_certificate(&g, &Divisor::zero(g), &ctx).unwrap();
        assert_eq!(cert.order, Some(BigInt::one()));
        assert_eq!(cert.status, CertificateStatus::Exact);
    }

    #[test]
    fn json_round_trip() {
        let ctx = PrecisionCtx::default();
        let g = GroupId::gamma0(11);
        let cert = torsion_certificate(&g, &Divisor::parse(g, "0:-1,inf:1").unwrap(), &ctx).unwrap();
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        let back = TorsionCertificate::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.order, cert.order);
        assert_eq!(back.status, cert.status);
        assert_eq!(back.divisor, cert.divisor);
        assert!(back.verify(&ctx).unwrap().is_empty());
        let mut forged = back.clone();
        forged.order = Some(BigInt::from(7));
        assert!(!forged.verify(&ctx).unwrap().is_empty());
    }
}
