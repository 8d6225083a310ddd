//! Symbol engines `Φ_𝔞`, `Ψ_𝔞` for every supported group and cusp.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::principal::PrincipalSymbol;
use super::value::{PrecisionCtx, SymbolValue};
use crate::arith::sign;
use crate::dedekind::{phi_classical, pi_over_volume, rat, rat_int, Rat};
use crate::error::{Error, Result};
use crate::modgroup::{cosets, Cusp, CuspTable, Family, GroupElement, GroupId, MotionClass, ScalingMap};

/// Shared state for building engines: principal symbols and cusp tables per level.
pub struct Symbols {
    ctx: PrecisionCtx,
    principal: Mutex<HashMap<u64, Arc<PrincipalSymbol>>>,
    tables: Mutex<HashMap<GroupId, Arc<CuspTable>>>,
}

impl Symbols {
    pub fn new(ctx: PrecisionCtx) -> Self {
        Symbols { ctx, principal: Mutex::new(HashMap::new()), tables: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &PrecisionCtx {
        &self.ctx
    }

    pub fn principal(&self, n: u64) -> Result<Arc<PrincipalSymbol>> {
        if let Some(p) = self.principal.lock().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let p = Arc::new(PrincipalSymbol::new(n, &self.ctx)?);
        Ok(self.principal.lock().unwrap().entry(n).or_insert(p).clone())
    }

    pub fn cusp_table(&self, g: &GroupId) -> Result<Arc<CuspTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(g) {
            return Ok(t.clone());
        }
        let t = Arc::new(CuspTable::new(*g)?);
        Ok(self.tables.lock().unwrap().entry(*g).or_insert(t).clone())
    }

    /// Engine for `group` at `cusp`, with the scaling map of the cusp's class.
    pub fn engine(&self, group: GroupId, cusp: &Cusp) -> Result<SymbolEngine<'_>> {
        if !group.in_sl2z() && !cusp.is_infinity() {
            return Err(Error::UnknownCusp { cusp: cusp.to_string(), group: group.to_string() });
        }
        let scaling = self.cusp_table(&group)?.scaling_for(cusp);
        self.engine_with(group, scaling)
    }

    /// Engine with an explicit scaling map.
    pub fn engine_with(&self, group: GroupId, scaling: ScalingMap) -> Result<SymbolEngine<'_>> {
        let route = if group.is_full() {
            Route::Classical
        } else {
            match group.family {
                Family::GammaN => Route::Principal(self.principal(group.level)?),
                Family::Gamma0N | Family::Gamma1N => {
                    let sub_group = GroupId::gamma(group.level);
                    let sub_scaling = ScalingMap { base: scaling.base.clone(), width: group.level };
                    let sub = self.engine_with(sub_group, sub_scaling)?;
                    Route::Lift { sub: Box::new(sub), reps: cosets(&sub_group, &group)? }
                }
                Family::Gamma0NPlus => {
                    let sub_group = GroupId::gamma0(group.level);
                    let sub = self.engine_with(sub_group, scaling.clone())?;
                    Route::Lift { sub: Box::new(sub), reps: cosets(&sub_group, &group)? }
                }
                Family::SL2Z => unreachable!(),
            }
        };
        Ok(SymbolEngine {
            reg: self,
            group,
            kappa: pi_over_volume(&group).value,
            scaling,
            route,
            memo: Mutex::new(HashMap::new()),
        })
    }
}

enum Route<'a> {
    Classical,
    Principal(Arc<PrincipalSymbol>),
    Lift { sub: Box<SymbolEngine<'a>>, reps: Vec<GroupElement> },
}

/// `Φ_𝔞` and `Ψ_𝔞` of one group at one cusp.
pub struct SymbolEngine<'a> {
    reg: &'a Symbols,
    group: GroupId,
    kappa: Rat,
    scaling: ScalingMap,
    route: Route<'a>,
    memo: Mutex<HashMap<GroupElement, SymbolValue>>,
}

impl<'a> SymbolEngine<'a> {
    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn cusp(&self) -> Cusp {
        self.scaling.cusp()
    }

    pub fn scaling(&self) -> &ScalingMap {
        &self.scaling
    }

    pub fn kappa(&self) -> &Rat {
        &self.kappa
    }

    /// Short tag of the evaluation route.
    pub fn method(&self) -> &'static str {
        match &self.route {
            Route::Classical => "classical",
            Route::Principal(_) => "principal",
            Route::Lift { .. } => "coset-lift",
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if !self.group.member(g) {
            return Err(Error::NotMember { element: g.to_string(), group: self.group.to_string() });
        }
        Ok(())
    }

    /// `σ^{-1} g σ` up to the positive width scaling of `c`.
    fn conj(&self, g: &GroupElement) -> GroupElement {
        self.scaling.conjugate(g)
    }

    fn csign(&self, g: &GroupElement) -> i32 {
        sign(&self.conj(g).c)
    }

    /// `-πV^{-1} sign(c₁c₂c₃)` for the product `g1·g2`.
    fn defect(&self, g1: &GroupElement, g2: &GroupElement) -> Rat {
        let s = self.csign(g1) * self.csign(g2) * self.csign(&g1.mul(g2));
        -&self.kappa * rat_int(s)
    }

    /// Dedekind symbol `Φ_𝔞(γ)`.
    pub fn phi(&self, g: &GroupElement) -> Result<SymbolValue> {
        self.check(g)?;
        let key = g.canonical();
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.phi_uncached(&key)?;
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn phi_uncached(&self, g: &GroupElement) -> Result<SymbolValue> {
        match &self.route {
            Route::Classical => Ok(SymbolValue::Exact(phi_classical(&self.conj(g))?)),
            Route::Principal(p) => p.phi(&self.conj(g)),
            Route::Lift { sub, reps } => match g.classify() {
                MotionClass::Identity => Ok(SymbolValue::zero()),
                MotionClass::Elliptic(m) => Ok(SymbolValue::Exact(self.elliptic(g, m))),
                MotionClass::Parabolic => self.parabolic(g),
                MotionClass::Hyperbolic => self.lifted(g, sub, reps),
            },
        }
    }

    /// `Φ(γ₁γ₂) - Φ(γ₁) - Φ(γ₂) + πV^{-1} sign(c₁c₂c₃)`, zero for a consistent symbol.
    pub fn cocycle_residual(&self, g1: &GroupElement, g2: &GroupElement) -> Result<SymbolValue> {
        let lhs = self.phi(&g1.mul(g2))?;
        Ok(lhs.add(&self.phi(g1)?.neg()).add(&self.phi(g2)?.neg()).add_rat(&-self.defect(g1, g2)))
    }

    /// Rademacher symbol `Ψ_𝔞(γ) = Φ_𝔞(γ) - πV^{-1} sign(c(a+d))`.
    pub fn psi(&self, g: &GroupElement) -> Result<SymbolValue> {
        let phi = self.phi(g)?;
        let x = self.conj(g);
        Ok(phi.add_rat(&(-&self.kappa * rat_int(sign(&(&x.c * x.trace()))))))
    }

    /// `m Φ(γ) = πV^{-1} Σ_{k=1}^{m-1} sign(c_γ c_{γ^k} c_{γ^{k+1}})` for `γ^m = ±I`.
    fn elliptic(&self, g: &GroupElement, m: u32) -> Rat {
        let cs: Vec<i32> = (1..=m as i64).map(|k| self.csign(&g.pow(k))).collect();
        let s: i32 = (1..m as usize).map(|k| cs[0] * cs[k - 1] * cs[k]).sum();
        &self.kappa * rat(s as i64, m as i64)
    }

    /// Parabolic elements: `k` at the engine's own cusp, otherwise split off a
    /// hyperbolic element of `Γ(N)` through the cocycle relation.
    fn parabolic(&self, g: &GroupElement) -> Result<SymbolValue> {
        let x = self.conj(g);
        if x.c.is_zero() {
            return Ok(SymbolValue::Exact(Rat::new(x.b.clone(), &x.d * self.scaling.width)));
        }
        let n = self.group.level as i64;
        let up = GroupElement::from_i64(1, n, 0, 1);
        let low = GroupElement::from_i64(1, 0, n, 1);
        let candidates = [up.mul(&low), low.mul(&up), up.mul(&low.inverse()), low.inverse().mul(&up)];
        for h in candidates.iter().flat_map(|h| [h.clone(), h.pow(2), h.inverse()]) {
            let gh = g.mul(&h);
            if gh.classify() == MotionClass::Hyperbolic {
                // Φ(gh) = Φ(g) + Φ(h) - κ sign(c c c)
                return Ok(self.phi(&gh)?.add(&self.phi(&h)?.neg()).add_rat(&-self.defect(g, &h)));
            }
        }
        Err(Error::Domain(format!("no hyperbolic splitting found for {g}")))
    }

    /// Hyperbolic `γ`: lift `Ψ` of `γ^n` from the normal subgroup, then divide
    /// back down through the cocycle relation.
    fn lifted(&self, g: &GroupElement, sub: &SymbolEngine<'a>, reps: &[GroupElement]) -> Result<SymbolValue> {
        let sub_group = sub.group;
        let mut n = 1i64;
        let mut h = g.clone();
        while !sub_group.member(&h) {
            h = h.mul(g);
            n += 1;
            if n > 1 << 20 {
                return Err(Error::Domain(format!("{g} has no power in {sub_group}")));
            }
        }
        let psi_h = coset_sum(sub, reps, &h)?;
        let xh = self.conj(&h);
        let phi_h = psi_h.add_rat(&(&self.kappa * rat_int(sign(&(&xh.c * xh.trace())))));
        let cs: Vec<i32> = (1..=n).map(|k| self.csign(&g.pow(k))).collect();
        let s: i32 = (1..n as usize).map(|k| cs[0] * cs[k - 1] * cs[k]).sum();
        Ok(phi_h.add_rat(&(&self.kappa * rat_int(s))).scale(&rat(1, n)))
    }

    /// The `Γ(N)` symbol underneath, when the engine is built over one.
    pub fn principal(&self) -> Option<Arc<PrincipalSymbol>> {
        match &self.route {
            Route::Classical => None,
            Route::Principal(p) => Some(p.clone()),
            Route::Lift { sub, .. } => sub.principal(),
        }
    }

    pub fn registry(&self) -> &'a Symbols {
        self.reg
    }
}

/// `Σ_τ Ψ^{G1}(τγτ^{-1})`, summed in representative order.
fn coset_sum(sub: &SymbolEngine<'_>, reps: &[GroupElement], g: &GroupElement) -> Result<SymbolValue> {
    let terms: Vec<SymbolValue> =
        reps.par_iter().map(|t| sub.psi(&g.conj_by(t))).collect::<Result<Vec<_>>>()?;
    Ok(terms.iter().fold(SymbolValue::zero(), |acc, v| acc.add(v)))
}

/// An engine at `𝔞` obtained from one at `𝔟` through `τ` with `τ𝔞 = 𝔟`:
/// `Φ_𝔞(γ) = Φ_𝔟(τγτ^{-1})`.
pub struct Transported<'e, 'a> {
    inner: &'e SymbolEngine<'a>,
    tau: GroupElement,
    cusp: Cusp,
}

impl Transported<'_, '_> {
    pub fn cusp(&self) -> &Cusp {
        &self.cusp
    }

    pub fn phi(&self, g: &GroupElement) -> Result<SymbolValue> {
        self.inner.phi(&g.conj_by(&self.tau))
    }

    pub fn psi(&self, g: &GroupElement) -> Result<SymbolValue> {
        self.inner.psi(&g.conj_by(&self.tau))
    }
}

/// Moves an engine from cusp `𝔟` to a cusp `𝔞` with `τ𝔞 = 𝔟`; `τ` must normalize the group.
pub fn transport_cusp<'e, 'a>(
    engine: &'e SymbolEngine<'a>,
    tau: &GroupElement,
    cusp_a: &Cusp,
) -> Result<Transported<'e, 'a>> {
    let target = engine.cusp();
    if cusp_a.act(tau) != target {
        return Err(Error::BadTransport { from: cusp_a.to_string(), to: target.to_string() });
    }
    Ok(Transported { inner: engine, tau: tau.clone(), cusp: cusp_a.clone() })
}

/// `Σ_{τ∈G1\G} Ψ^{G1}_𝔞(τγτ^{-1})` for hyperbolic `γ ∈ G1`, with `G1` normal in `G`.
pub fn lift_coset_sum(sub: &SymbolEngine<'_>, group: &GroupId, g: &GroupElement) -> Result<SymbolValue> {
    if !sub.group.member(g) {
        return Err(Error::NotMember { element: g.to_string(), group: sub.group.to_string() });
    }
    if g.classify() != MotionClass::Hyperbolic {
        return Err(Error::WrongClass { expected: "hyperbolic".into(), found: g.classify().to_string() });
    }
    coset_sum(sub, &cosets(&sub.group, group)?, g)
}

/// `Ψ_𝔞` on a parabolic element fixing `𝔟`: the power `k` of the stabilizer
/// generator when `𝔟 ~ 𝔞`, otherwise the value from the engine.
pub fn symbol_parabolic(engine: &SymbolEngine<'_>, g: &GroupElement) -> Result<SymbolValue> {
    engine.check(g)?;
    let table = engine.reg.cusp_table(&engine.group)?;
    let (class, k) = table.parabolic_power(g)?;
    let own = if engine.group.in_sl2z() { table.class_of(&engine.cusp()) } else { 0 };
    if class == own {
        return Ok(SymbolValue::Exact(Rat::from_integer(k)));
    }
    engine.psi(g)
}

/// `Φ_𝔞` on an elliptic element by the finite-order recursion.
pub fn symbol_elliptic(engine: &SymbolEngine<'_>, g: &GroupElement) -> Result<SymbolValue> {
    engine.check(g)?;
    match g.classify() {
        MotionClass::Identity => Ok(SymbolValue::zero()),
        MotionClass::Elliptic(m) => Ok(SymbolValue::Exact(engine.elliptic(g, m))),
        other => Err(Error::WrongClass { expected: "elliptic".into(), found: other.to_string() }),
    }
}

/// `Ψ^G_𝔞(γ)` through the full pipeline.
pub fn psi_general(group: &GroupId, cusp: &Cusp, g: &GroupElement, ctx: &PrecisionCtx) -> Result<SymbolValue> {
    let reg = Symbols::new(ctx.clone());
    let e = reg.engine(*group, cusp)?;
    e.psi(g)
}

/// Replaces `γ` by `±γ^{±1}` with `c ≥ 0` and positive trace; returns the sign
/// picked up by `Ψ`.
pub fn positive_trace(g: &GroupElement) -> (GroupElement, i32) {
    let mut x = g.clone();
    if x.trace().is_negative() {
        x = x.neg();
    }
    if x.c.is_negative() || (x.c.is_zero() && x.b.is_negative()) {
        (x.inverse(), -1)
    } else {
        (x, 1)
    }
}
