//! The symbol `Φ^{Γ(N)}_∞` of the principal congruence subgroup.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::real::{self, RM};
use super::reconstruct::reconstruct;
use super::takada::{takada_table, takada_table_numeric, TakadaConstant};
use super::value::{PrecisionCtx, SymbolValue};
use crate::arith::sign;
use crate::dedekind::{pi_over_volume, rat_int, Rat};
use crate::error::{Error, Result};
use crate::modgroup::{CosetSpace, Gen, GroupElement, GroupId, Letter, word_decompose};

/// Largest `N·|c|` handled by the direct sum in 128-bit arithmetic.
const DIRECT_HARD_LIMIT: u64 = 1 << 40;

/// `Φ^{Γ(N)}_∞` with cached generator values.
pub struct PrincipalSymbol {
    n: u64,
    kappa: Rat,
    consts: Vec<TakadaConstant>,
    exact: Option<Vec<Rat>>,
    ctx: PrecisionCtx,
    bound: BigInt,
    space: CosetSpace,
    steps: Mutex<HashMap<(usize, Gen), SymbolValue>>,
    loops: Mutex<HashMap<usize, (GroupElement, SymbolValue)>>,
}

impl std::fmt::Debug for PrincipalSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrincipalSymbol").field("n", &self.n).field("digits", &self.ctx.digits).finish()
    }
}

/// `12·N·[SL₂(ℤ):Γ(N)]·2¹⁰`.
pub fn default_denominator_bound(n: u64) -> BigInt {
    let mut idx = Rat::from_integer(BigInt::from(n).pow(3));
    for (p, _) in crate::arith::factor(n) {
        idx *= Rat::new(BigInt::from(p * p - 1), BigInt::from(p * p));
    }
    idx.to_integer() * 12 * n * 1024
}

impl PrincipalSymbol {
    pub fn new(n: u64, ctx: &PrecisionCtx) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidLevel(format!("principal symbol needs N >= 2, got {n}")));
        }
        let group = GroupId::gamma(n);
        let consts = if ctx.numeric_constants { takada_table_numeric(n, ctx)? } else { takada_table(n, ctx)? };
        let exact = consts.iter().map(|c| c.exact.clone()).collect::<Option<Vec<_>>>();
        let bound = ctx.denominator_bound.clone().unwrap_or_else(|| default_denominator_bound(n));
        Ok(PrincipalSymbol {
            n,
            kappa: pi_over_volume(&group).value,
            consts,
            exact,
            ctx: ctx.clone(),
            bound,
            space: CosetSpace::new(group)?,
            steps: Mutex::new(HashMap::new()),
            loops: Mutex::new(HashMap::new()),
        })
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn group(&self) -> GroupId {
        GroupId::gamma(self.n)
    }

    pub fn kappa(&self) -> &Rat {
        &self.kappa
    }

    pub fn ctx(&self) -> &PrecisionCtx {
        &self.ctx
    }

    /// True when every `C_{N,j}` is known exactly, so values never need reconstruction.
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if !self.group().member(g) {
            return Err(Error::NotMember { element: g.to_string(), group: self.group().to_string() });
        }
        Ok(())
    }

    /// `Φ(γ)`, by the direct sum when `|c|` is within the context's limit and
    /// by the Schreier fold otherwise.
    pub fn phi(&self, g: &GroupElement) -> Result<SymbolValue> {
        self.check(g)?;
        let small = g.c.abs().to_u64().is_some_and(|c| c <= self.ctx.direct_limit && c * self.n <= DIRECT_HARD_LIMIT);
        if small {
            self.direct(g)
        } else {
            self.fold(g)
        }
    }

    /// `Ψ(γ) = Φ(γ) - πV^{-1} sign(c(a+d))`.
    pub fn psi(&self, g: &GroupElement) -> Result<SymbolValue> {
        let s = sign(&(&g.c * g.trace()));
        Ok(self.phi(g)?.add_rat(&(-&self.kappa * rat_int(s))))
    }

    /// The explicit finite sum
    /// `(a+d)/(Nc) - (4πV^{-1}/(N²|c|)) Σ_{j<N²|c|} j C_{N,j} ((aj/c))`.
    pub fn direct(&self, g: &GroupElement) -> Result<SymbolValue> {
        self.check(g)?;
        let n = self.n;
        if g.c.is_zero() {
            return Ok(SymbolValue::Exact(Rat::new(g.b.clone(), &g.d * n)));
        }
        let c_abs = g.c.abs().to_u64().filter(|c| c * n <= DIRECT_HARD_LIMIT).ok_or_else(|| {
            Error::Domain(format!("|c| = {} too large for the direct sum", g.c.abs()))
        })?;
        let a_mod = g.a.mod_floor(&BigInt::from(c_abs)).to_u64().unwrap();
        let mut rnum = partial_sums(a_mod, c_abs, n);
        if g.c.is_negative() {
            rnum.iter_mut().for_each(|x| *x = -*x);
        }
        let head = Rat::new(g.trace(), &g.c * n);
        let c2 = &g.c * &g.c;
        let factor = &self.kappa * Rat::new(BigInt::from(2), c2 * (n * n));
        if let Some(ex) = &self.exact {
            let q: Rat = ex.iter().zip(&rnum).map(|(c, r)| c * rat_int(*r)).sum();
            return Ok(SymbolValue::Exact(head - factor * q));
        }
        let p = self.ctx.bits();
        let mut q = real::zero(p);
        let mut err = 0.0;
        for (c, r) in self.consts.iter().zip(&rnum) {
            q = q.add(&c.value.mul(&real::from_bigint(&BigInt::from(*r), p), p, RM), p, RM);
            err += c.error * (*r as f64).abs();
        }
        let value = real::from_rat(&head, p).sub(&real::from_rat(&factor, p).mul(&q, p, RM), p, RM);
        let scale = real::abs_f64(&value).max(1.0);
        let error = err * real::rat_to_f64(&factor) + scale * 2f64.powi(8 - p as i32) * n as f64;
        Ok(self.settle(value, error))
    }

    fn settle(&self, value: astro_float_num::BigFloat, error: f64) -> SymbolValue {
        let tol = self.ctx.residual_digits();
        if error < 10f64.powi(-(tol as i32)) {
            if let Some((r, residual)) = reconstruct(&value, tol, &self.bound) {
                return SymbolValue::Reconstructed { value: r, residual };
            }
        }
        SymbolValue::Approx { value, error }
    }

    /// Value on the Schreier element `rep_i · x · rep_{i·x}^{-1}`.
    fn step_value(&self, i: usize, x: Gen) -> Result<SymbolValue> {
        if let Some(v) = self.steps.lock().unwrap().get(&(i, x)) {
            return Ok(v.clone());
        }
        let h = self.space.schreier_element(i, x);
        let v = self.direct(&h)?;
        self.steps.lock().unwrap().insert((i, x), v.clone());
        Ok(v)
    }

    /// `P_i = rep_i T^w rep_i^{-1}` for the `T`-orbit length `w` through `i`, with `Φ(P_i)`.
    fn loop_value(&self, i: usize) -> Result<(GroupElement, SymbolValue)> {
        if let Some(v) = self.loops.lock().unwrap().get(&i) {
            return Ok(v.clone());
        }
        let mut acc = Fold::new(&self.kappa);
        let mut cur = i;
        for _ in 0..self.space.t_orbit_len(i) {
            acc.push(&self.space.schreier_element(cur, Gen::T), &self.step_value(cur, Gen::T)?);
            cur = self.space.act(cur, Gen::T);
        }
        let out = (acc.m, acc.v);
        self.loops.lock().unwrap().insert(i, out.clone());
        Ok(out)
    }

    /// `Φ(γ)` by rewriting `γ` in Schreier generators and folding the cocycle relation.
    pub fn fold(&self, g: &GroupElement) -> Result<SymbolValue> {
        self.check(g)?;
        let mut acc = Fold::new(&self.kappa);
        let mut cur = 0usize;
        for letter in word_decompose(g).0 {
            match letter {
                Letter::S => {
                    acc.push(&self.space.schreier_element(cur, Gen::S), &self.step_value(cur, Gen::S)?);
                    cur = self.space.act(cur, Gen::S);
                }
                Letter::T(k) => {
                    let x = if k.is_positive() { Gen::T } else { Gen::TInv };
                    let w = self.space.t_orbit_len(cur);
                    let (q, r) = k.abs().div_rem(&BigInt::from(w));
                    if !q.is_zero() {
                        let (p, phi_p) = self.loop_value(cur)?;
                        let (pq, v) = parabolic_power(&p, &phi_p, &q, &self.kappa);
                        if x == Gen::T {
                            acc.push(&pq, &v);
                        } else {
                            acc.push(&pq.inverse(), &v.neg());
                        }
                    }
                    for _ in 0..r.to_u64().unwrap() {
                        acc.push(&self.space.schreier_element(cur, x), &self.step_value(cur, x)?);
                        cur = self.space.act(cur, x);
                    }
                }
            }
        }
        if cur != 0 || !acc.m.proj_eq(g) {
            return Err(Error::NotMember { element: g.to_string(), group: self.group().to_string() });
        }
        Ok(acc.v)
    }

    /// The constants `C_{N,j}` in use.
    pub fn constants(&self) -> &[TakadaConstant] {
        &self.consts
    }
}

/// `2|c|·Σ_{j ≡ s (N), 0<j<N²|c|} j·((aj/|c|))` for each residue `s`.
fn partial_sums(a: u64, c: u64, n: u64) -> Vec<i128> {
    let (a, c, nn) = (a as i128, c as i128, n as i128);
    let base = nn * nn * c * (nn - 1) / 2;
    let step = (a * nn) % c;
    let mut out = vec![0i128; n as usize];
    for (s, slot) in out.iter_mut().enumerate() {
        let s = s as i128;
        let mut r = (a * s) % c;
        let mut acc = 0i128;
        for u in 0..c {
            if r != 0 {
                let j0 = s + nn * u;
                acc += (2 * r - c) * (nn * j0 + base);
            }
            r += step;
            if r >= c {
                r -= c;
            }
        }
        *slot = acc;
    }
    out
}

/// Running product with its symbol value under the cocycle relation.
struct Fold<'a> {
    kappa: &'a Rat,
    m: GroupElement,
    v: SymbolValue,
}

impl<'a> Fold<'a> {
    fn new(kappa: &'a Rat) -> Self {
        Fold { kappa, m: GroupElement::identity(), v: SymbolValue::zero() }
    }

    fn push(&mut self, x: &GroupElement, phi_x: &SymbolValue) {
        let next = self.m.mul(x);
        let s = sign(&self.m.c) * sign(&x.c) * sign(&next.c);
        self.v = self.v.add(phi_x).add_rat(&(-self.kappa * rat_int(s)));
        self.m = next;
    }
}

/// `P^q` and `Φ(P^q) = qΦ(P) - (q-1)πV^{-1} sign(c_P)` for parabolic `P`, `q >= 1`.
fn parabolic_power(p: &GroupElement, phi_p: &SymbolValue, q: &BigInt, kappa: &Rat) -> (GroupElement, SymbolValue) {
    // P = ±(I + M) with M nilpotent, so P^q = ±^q (I + qM)
    let (p, flip) = if p.trace().is_negative() { (p.neg(), true) } else { (p.clone(), false) };
    let mut pq = GroupElement::raw(
        BigInt::one() + q * (&p.a - 1),
        q * &p.b,
        q * &p.c,
        BigInt::one() + q * (&p.d - 1),
        BigInt::one(),
    );
    if flip && q.is_odd() {
        pq = pq.neg();
    }
    let qr = Rat::from_integer(q.clone());
    let corr = kappa * (&qr - Rat::one()) * rat_int(sign(&p.c));
    (pq, phi_p.scale(&qr).add_rat(&-corr))
}

/// `Φ^{Γ(N)}_∞(γ)` for `γ ∈ Γ(N)`.
pub fn takada_phi(n: u64, g: &GroupElement, ctx: &PrecisionCtx) -> Result<SymbolValue> {
    PrincipalSymbol::new(n, ctx)?.phi(g)
}
