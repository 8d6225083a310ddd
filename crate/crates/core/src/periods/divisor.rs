//! Degree-zero cuspidal divisors and the period homomorphism `I_m`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::is_prime;
use crate::dedekind::{psi_classical, Rat};
use crate::error::{Error, Result};
use crate::modgroup::{schreier_generators, Cusp, CuspTable, GroupElement, GroupId, MotionClass};
use crate::symbols::{PrecisionCtx, SymbolEngine, SymbolValue, Symbols};

/// `Σ mᵢ(𝔞ᵢ)` over listed cusp representatives, degree zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    group: GroupId,
    /// `(cusp, multiplicity)` in the order of the cusp table, zero terms dropped.
    terms: Vec<(Cusp, i64)>,
}

impl Divisor {
    /// Builds a divisor; every cusp must be a listed representative of `group`.
    pub fn new(group: GroupId, terms: &[(Cusp, i64)]) -> Result<Self> {
        let table = CuspTable::new(group)?;
        let mut mult = vec![0i64; table.cusps().len()];
        for (c, m) in terms {
            let i = table
                .cusps()
                .iter()
                .position(|d| d.cusp == *c)
                .ok_or_else(|| Error::UnknownCusp { cusp: c.to_string(), group: group.to_string() })?;
            mult[i] += m;
        }
        let deg: i64 = mult.iter().sum();
        if deg != 0 {
            return Err(Error::DivisorDegree(deg.to_string()));
        }
        let terms = table.cusps().iter().zip(mult).filter(|(_, m)| *m != 0).map(|(d, m)| (d.cusp.clone(), m)).collect();
        Ok(Divisor { group, terms })
    }

    pub fn zero(group: GroupId) -> Self {
        Divisor { group, terms: vec![] }
    }

    /// `(0) - (∞)`.
    pub fn zero_minus_infinity(group: GroupId) -> Result<Self> {
        Divisor::new(group, &[(Cusp::zero(), 1), (Cusp::infinity(), -1)])
    }

    /// Parses `"0:-1,inf:1"`.
    pub fn parse(group: GroupId, s: &str) -> Result<Self> {
        let mut terms = vec![];
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (c, m) = part
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("divisor term {part:?} is not cusp:multiplicity")))?;
            let m: i64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity in {part:?}")))?;
            terms.push((c.parse::<Cusp>()?, m));
        }
        Divisor::new(group, &terms)
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn terms(&self) -> &[(Cusp, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity at a listed cusp.
    pub fn multiplicity(&self, c: &Cusp) -> i64 {
        self.terms.iter().find(|(d, _)| d == c).map_or(0, |t| t.1)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let terms = if k == 0 { vec![] } else { self.terms.iter().map(|(c, m)| (c.clone(), m * k)).collect() };
        Divisor { group: self.group, terms }
    }

    pub fn to_json(&self) -> Value {
        json!(self.terms.iter().map(|(c, m)| json!({"cusp": c.to_string(), "mult": m})).collect::<Vec<_>>())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, m)| format!("{c}:{m}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `I_m(γ)` for one element.
#[derive(Clone, Debug)]
pub struct PeriodValue {
    pub element: GroupElement,
    pub value: SymbolValue,
    pub divisor: Divisor,
}

/// The period homomorphism `γ ↦ Σ mᵢ Ψ_{𝔞ᵢ}(γ)` of a divisor.
pub struct PeriodMap<'a> {
    divisor: Divisor,
    table: Arc<CuspTable>,
    engines: Vec<(i64, SymbolEngine<'a>)>,
}

impl<'a> PeriodMap<'a> {
    pub fn new(reg: &'a Symbols, divisor: &Divisor) -> Result<Self> {
        let g = divisor.group;
        let table = reg.cusp_table(&g)?;
        let engines = divisor.terms.iter().map(|(c, m)| Ok((*m, reg.engine(g, c)?))).collect::<Result<Vec<_>>>()?;
        Ok(PeriodMap { divisor: divisor.clone(), table, engines })
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn engines(&self) -> impl Iterator<Item = &SymbolEngine<'a>> {
        self.engines.iter().map(|(_, e)| e)
    }

    /// `I_m(γ)`: zero on elliptic elements, `k·m_𝔟` on `γ_𝔟^k`, the symbol
    /// combination on hyperbolic elements.
    pub fn period(&self, g: &GroupElement) -> Result<SymbolValue> {
        let group = self.divisor.group;
        if !group.member(g) {
            return Err(Error::NotMember { element: g.to_string(), group: group.to_string() });
        }
        match g.classify() {
            MotionClass::Identity | MotionClass::Elliptic(_) => Ok(SymbolValue::zero()),
            MotionClass::Parabolic => {
                let (class, k) = self.table.parabolic_power(g)?;
                let m = self.divisor.multiplicity(&self.table.cusps()[class].cusp);
                Ok(SymbolValue::Exact(Rat::from_integer(k * BigInt::from(m))))
            }
            MotionClass::Hyperbolic => self.combination(g),
        }
    }

    /// `Σ mᵢ Ψ_{𝔞ᵢ}(γ)` straight from the engines, for any class.
    pub fn combination(&self, g: &GroupElement) -> Result<SymbolValue> {
        let mut acc = SymbolValue::zero();
        for (m, e) in &self.engines {
            acc = acc.add(&e.psi(g)?.scale(&Rat::from_integer((*m).into())));
        }
        Ok(acc)
    }

    pub fn period_value(&self, g: &GroupElement) -> Result<PeriodValue> {
        Ok(PeriodValue { element: g.clone(), value: self.period(g)?, divisor: self.divisor.clone() })
    }
}

/// Periods of `D` on the Schreier generators of `G`, evaluated concurrently.
pub fn divisor_periods(group: &GroupId, divisor: &Divisor, ctx: &PrecisionCtx) -> Result<Vec<PeriodValue>> {
    if divisor.group != *group {
        return Err(Error::Domain(format!("divisor lives on {}, not {group}", divisor.group)));
    }
    let reg = Symbols::new(ctx.clone());
    let map = PeriodMap::new(&reg, divisor)?;
    let gens = schreier_generators(group)?;
    gens.par_iter().map(|g| map.period_value(g)).collect()
}

/// `Ψ(γ) - Ψ([[a, bN], [c/N, d]])` for prime `N` with `N | c`; equals the period
/// of `(N-1)((0) - (∞))` on `X₀(N)`.
pub fn x0_period_exact(n: u64, g: &GroupElement) -> Result<Rat> {
    if !is_prime(n) {
        return Err(Error::InvalidLevel(format!("{n} is not prime")));
    }
    if !g.is_unimodular() {
        return Err(Error::Determinant { expected: "1".into(), found: g.det().to_string() });
    }
    let nn = BigInt::from(n);
    if !(&g.c % &nn).is_zero() {
        return Err(Error::NotMember { element: g.to_string(), group: GroupId::gamma0(n).to_string() });
    }
    let h = GroupElement::new(g.a.clone(), &g.b * &nn, &g.c / &nn, g.d.clone())?;
    Ok(psi_classical(g)? - psi_classical(&h)?)
}
