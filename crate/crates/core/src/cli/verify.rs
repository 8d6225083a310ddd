//! Invariant suites behind `radsym verify`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::{Config, Failure};
use crate::arith::is_prime;
use crate::dedekind::{cocycle_defect, dedekind_sum, phi_classical, psi_classical, rat, sawtooth, Rat};
use crate::modgroup::{schreier_generators, Cusp, GroupElement, GroupId, ScalingMap};
use crate::periods::{period_numeric, phi_from_eta, x0_period_exact};
use crate::sample::{random_hyperbolic, random_sl2z, rng, GroupSampler};
use crate::symbols::{lift_coset_sum, Symbols};

pub const SUITES: [&str; 6] = ["reciprocity", "cocycle", "coset-sum", "lemma", "eta", "oracle"];

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub seed: u64,
    pub counterexample: Option<String>,
}

type Check = std::result::Result<(), String>;

fn report(suite: &str, seed: u64, cases: usize, outcome: Check) -> SuiteReport {
    SuiteReport { suite: suite.into(), passed: outcome.is_ok(), cases, seed, counterexample: outcome.err() }
}

/// Runs one named suite with a fixed seed.
pub fn run_suite(suite: &str, seed: u64, count: Option<usize>, level: Option<u64>, cfg: &Config) -> Result<SuiteReport, Failure> {
    let mut r = rng(seed);
    let (cases, outcome) = match suite {
        "reciprocity" => {
            let n = count.unwrap_or(2000);
            (n, reciprocity(&mut r, n)?)
        }
        "cocycle" => match level {
            None | Some(1) => {
                let n = count.unwrap_or(2000);
                (n, cocycle_sl2z(&mut r, n)?)
            }
            Some(l) => {
                let n = count.unwrap_or(100);
                (n, cocycle_gamma0(&mut r, n, l, cfg)?)
            }
        },
        "coset-sum" => {
            let n = count.unwrap_or(20);
            (n, coset_sum(&mut r, n, level.unwrap_or(2), cfg)?)
        }
        "lemma" => {
            let n = count.unwrap_or(10);
            (n, lemma(&mut r, n, cfg.tol)?)
        }
        "eta" => {
            let n = count.unwrap_or(200);
            (n, eta(&mut r, n)?)
        }
        "oracle" => {
            let l = level.unwrap_or(11);
            if !is_prime(l) {
                return Err(Failure::usage(format!("oracle suite needs a prime level, got {l}")));
            }
            oracle(l, cfg)?
        }
        other => return Err(Failure::usage(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(report(suite, seed, cases, outcome))
}

fn reciprocity(r: &mut impl Rng, n: usize) -> Result<Check, Failure> {
    for _ in 0..n {
        let (a, c) = loop {
            let a: i64 = r.gen_range(1..=500);
            let c: i64 = r.gen_range(1..=500);
            if a.gcd(&c) == 1 {
                break (a, c);
            }
        };
        let (ba, bc) = (BigInt::from(a), BigInt::from(c));
        let lhs = dedekind_sum(&ba, &bc)? + dedekind_sum(&bc, &ba)?;
        let rhs = rat(a * a + c * c + 1, 12 * a * c) - rat(1, 4);
        if lhs != rhs {
            return Ok(Err(format!("s({a},{c}) + s({c},{a}) = {lhs}, expected {rhs}")));
        }
        if c <= 200 {
            let direct: Rat = (1..c).map(|k| sawtooth(&rat(k, c)) * sawtooth(&rat(a * k, c))).sum();
            let fast = dedekind_sum(&ba, &bc)?;
            if direct != fast {
                return Ok(Err(format!("s({a},{c}): recursion {fast}, direct sum {direct}")));
            }
        }
    }
    Ok(Ok(()))
}

fn cocycle_sl2z(r: &mut impl Rng, n: usize) -> Result<Check, Failure> {
    let g = GroupId::sl2z();
    let id = ScalingMap::new(&Cusp::infinity(), GroupElement::identity(), 1)?;
    for _ in 0..n {
        let l1 = r.gen_range(1..=8);
        let l2 = r.gen_range(1..=8);
        let (x, y) = (random_sl2z(r, l1, 6), random_sl2z(r, l2, 6));
        let d = cocycle_defect(&g, &id, &x, &y, &phi_classical(&x)?, &phi_classical(&y)?, &phi_classical(&x.mul(&y))?);
        if !d.is_zero() {
            return Ok(Err(format!("defect {d} at [{x}]·[{y}]")));
        }
    }
    Ok(Ok(()))
}

fn cocycle_gamma0(r: &mut impl Rng, n: usize, level: u64, cfg: &Config) -> Result<Check, Failure> {
    let g = GroupId::gamma0(level);
    let reg = Symbols::new(cfg.ctx.clone());
    let sampler = GroupSampler::new(&g)?;
    let engines = [reg.engine(g, &Cusp::infinity())?, reg.engine(g, &Cusp::zero())?];
    for _ in 0..n {
        let x = sampler.element(r, 3);
        let y = sampler.element(r, 3);
        for e in &engines {
            let d = e.cocycle_residual(&x, &y)?;
            if !d.as_rat().is_some_and(Zero::is_zero) {
                return Ok(Err(format!("defect {} at cusp {} for [{x}]·[{y}]", d.render(20), e.cusp())));
            }
        }
    }
    Ok(Ok(()))
}

fn coset_sum(r: &mut impl Rng, n: usize, level: u64, cfg: &Config) -> Result<Check, Failure> {
    let sub = GroupId::gamma(level);
    let reg = Symbols::new(cfg.ctx.clone());
    let engine = reg.engine(sub, &Cusp::infinity())?;
    let sampler = GroupSampler::new(&sub)?;
    for _ in 0..n {
        let g = sampler.hyperbolic(r, 4, 100_000);
        let lhs = lift_coset_sum(&engine, &GroupId::sl2z(), &g)?;
        let want = psi_classical(&g)?;
        if lhs.as_rat() != Some(&want) {
            return Ok(Err(format!("[{g}]: coset sum {}, classical {want}", lhs.render(30))));
        }
    }
    Ok(Ok(()))
}

fn lemma(r: &mut impl Rng, n: usize, tol: f64) -> Result<Check, Failure> {
    for _ in 0..n {
        let g = random_hyperbolic(r, 60);
        let p = period_numeric(&g, tol)?;
        let want = psi_classical(&g)?.to_f64().unwrap();
        if (p.value - want).abs() >= tol {
            return Ok(Err(format!("[{g}]: quadrature {}, Ψ = {want}", p.value)));
        }
    }
    Ok(Ok(()))
}

fn eta(r: &mut impl Rng, n: usize) -> Result<Check, Failure> {
    let mut done = 0;
    while done < n {
        let len = r.gen_range(1..=5);
        let mut g = random_sl2z(r, len, 5);
        if g.c.is_zero() || g.height() > BigInt::from(400) {
            continue;
        }
        if g.c < BigInt::zero() {
            g = g.neg();
        }
        let got = phi_from_eta(&g)?;
        let want = phi_classical(&g)?;
        if !want.denom().is_one() || want.numer() != &BigInt::from(got) {
            return Ok(Err(format!("[{g}]: eta gives {got}, Φ = {want}")));
        }
        done += 1;
    }
    Ok(Ok(()))
}

fn oracle(level: u64, cfg: &Config) -> Result<(usize, Check), Failure> {
    let g = GroupId::gamma0(level);
    let reg = Symbols::new(cfg.ctx.clone());
    let (inf, zero) = (reg.engine(g, &Cusp::infinity())?, reg.engine(g, &Cusp::zero())?);
    let gens = schreier_generators(&g)?;
    let scale = Rat::from_integer(BigInt::from(level - 1));
    for x in &gens {
        let d = zero.psi(x)?.add(&inf.psi(x)?.neg());
        let Some(d) = d.as_rat() else {
            return Ok((gens.len(), Err(format!("[{x}]: symbol not reconstructed"))));
        };
        let want = x0_period_exact(level, x)?;
        if d * &scale != want {
            return Ok((gens.len(), Err(format!("[{x}]: (N-1)(Ψ_0 - Ψ_inf) = {}, oracle {want}", d * &scale))));
        }
    }
    Ok((gens.len(), Ok(())))
}
