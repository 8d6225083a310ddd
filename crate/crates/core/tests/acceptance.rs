mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_traits::Zero;
use radsym::dedekind::{cocycle_defect, dedekind_sum, phi_classical, psi_classical};
use radsym::modgroup::{cusps, Cusp, GroupElement, GroupId, MotionClass, ScalingMap};
use radsym::periods::{period_numeric, phi_from_eta, torsion_certificate, x0_period_exact, Divisor, PeriodMap};
use radsym::sample::{random_hyperbolic, random_sl2z, rng, GroupSampler};
use radsym::symbols::{lift_coset_sum, takada_C, PrecisionCtx, SymbolValue, Symbols};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn run(k: u32, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let t = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) if t <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the {:.0} s budget", limit.as_secs_f64())),
        Err(e) => (false, e),
    };
    println!(
        "{} criterion {k}: {title} [{detail}] ({:.3} s)",
        if ok { "PASS" } else { "FAIL" },
        t.as_secs_f64()
    );
    ok
}

fn rat(v: &SymbolValue) -> Result<Q, String> {
    v.as_rat().cloned().ok_or_else(|| format!("not rational: {v}"))
}

fn reciprocity() -> Outcome {
    let s = |a: i64, c: i64| dedekind_sum(&BigInt::from(a), &BigInt::from(c)).unwrap();
    let mut pairs = 0;
    for a in 1..=500i64 {
        for c in 1..=500i64 {
            if coprime(a, c) {
                let want = q(a * a + c * c + 1, 12 * a * c) - q(1, 4);
                ensure!(s(a, c) + s(c, a) == want, "reciprocity fails at ({a}, {c})");
                pairs += 1;
            }
        }
    }
    let mut sums = 0;
    for c in 1..=200i64 {
        for a in 0..c {
            if coprime(a, c) {
                ensure!(s(a, c) == dedekind_direct(a, c), "s({a},{c}) differs from the double sum");
                sums += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, {sums} double sums"))
}

fn cocycle() -> Outcome {
    let mut r = rng(2);
    let id = ScalingMap::new(&Cusp::infinity(), GroupElement::identity(), 1).unwrap();
    let sl = GroupId::sl2z();
    for _ in 0..10_000 {
        let len = r.gen_range(1..=6);
        let x = random_sl2z(&mut r, len, 6);
        let len = r.gen_range(1..=6);
        let y = random_sl2z(&mut r, len, 6);
        let (p1, p2, p12) = (phi_classical(&x).unwrap(), phi_classical(&y).unwrap(), phi_classical(&x.mul(&y)).unwrap());
        let d = cocycle_defect(&sl, &id, &x, &y, &p1, &p2, &p12);
        ensure!(d.is_zero(), "defect {d} at x={x}, y={y}");
    }
    Ok("10000 pairs".into())
}

fn conjugacy() -> Outcome {
    let mut r = rng(3);
    for _ in 0..1000 {
        let g = random_hyperbolic(&mut r, 100_000);
        let len = r.gen_range(1..=5);
        let h = random_sl2z(&mut r, len, 5);
        let p = psi_classical(&g).unwrap();
        ensure!(psi_classical(&g.conj_by(&h)).unwrap() == p, "conjugation by {h} changes the symbol of {g}");
        ensure!(psi_classical(&g.inverse()).unwrap() == -p.clone(), "inverse law fails at {g}");
        ensure!(psi_classical(&g.neg()).unwrap() == p, "sign law fails at {g}");
    }
    Ok("1000 hyperbolic elements".into())
}

fn lemma() -> Outcome {
    let mut r = rng(4);
    let (mut done, mut worst, mut nonzero) = (0, 0f64, 0);
    let mut seen = HashSet::new();
    while done < 12 {
        let g = random_hyperbolic(&mut r, 40);
        if g.c.is_zero() || !seen.insert(g.canonical()) {
            continue;
        }
        let want = psi_classical(&g).unwrap();
        let got = period_numeric(&g, 1e-11).map_err(|e| format!("{g}: {e}"))?;
        let err = (got.value - SymbolValue::Exact(want.clone()).to_f64()).abs();
        ensure!(err < 1e-8, "{g}: integral {} vs symbol {want}", got.value);
        worst = worst.max(err);
        nonzero += (!want.is_zero()) as usize;
        done += 1;
    }
    ensure!(nonzero >= 5, "only {nonzero} nonzero symbols sampled");
    Ok(format!("{done} elements, max error {worst:.1e}"))
}

fn eta() -> Outcome {
    let mut r = rng(5);
    let mut done = 0;
    while done < 200 {
        let len = r.gen_range(1..=5);
        let g = random_sl2z(&mut r, len, 5);
        let g = if g.c < BigInt::zero() { g.neg() } else { g };
        if g.c.is_zero() || g.height() > BigInt::from(400) {
            continue;
        }
        let got = phi_from_eta(&g).map_err(|e| format!("{g}: {e}"))?;
        ensure!(Q::from_integer(got.into()) == phi_classical(&g).unwrap(), "eta multiplier disagrees at {g}");
        done += 1;
    }
    Ok("200 elements".into())
}

/// Distinct hyperbolic elements of `Γ(n)` of moderate height.
fn principal_sample(n: u64, count: usize, seed: u64) -> Vec<GroupElement> {
    let sampler = GroupSampler::new(&GroupId::gamma(n)).unwrap();
    let mut r = rng(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let g = sampler.hyperbolic(&mut r, 4, 1_000_000);
        if seen.insert(g.canonical()) {
            out.push(g);
        }
    }
    out
}

fn coset_sum_two() -> Outcome {
    let reg = Symbols::new(PrecisionCtx::default());
    let sub = reg.engine(GroupId::gamma(2), &Cusp::infinity()).unwrap();
    for g in principal_sample(2, 24, 6) {
        let lhs = lift_coset_sum(&sub, &GroupId::sl2z(), &g).unwrap();
        ensure!(lhs.is_exact(), "level 2 value not exact at {g}");
        ensure!(rat(&lhs)? == psi_classical(&g).unwrap(), "coset sum differs at {g}");
    }
    Ok("24 elements of Γ(2)".into())
}

fn constants() -> Outcome {
    let ctx = PrecisionCtx::default();
    let mut worst = 0f64;
    for n in [3i64, 4, 5] {
        let want = takada_truncated(n, 10_000_000);
        for j in 0..n {
            let got = takada_C(n as u64, j, &ctx).unwrap().to_f64();
            let err = (got - want[j as usize]).abs();
            ensure!(err < 1e-6, "C({n},{j}) = {got} vs truncated {}", want[j as usize]);
            worst = worst.max(err);
        }
    }
    let numeric = PrecisionCtx { numeric_constants: true, ..PrecisionCtx::default() };
    let reg = Symbols::new(numeric);
    let sub = reg.engine(GroupId::gamma(3), &Cusp::infinity()).unwrap();
    let mut residual = 0f64;
    for g in principal_sample(3, 20, 7) {
        let lhs = lift_coset_sum(&sub, &GroupId::sl2z(), &g).map_err(|e| format!("{g}: {e}"))?;
        ensure!(matches!(lhs, SymbolValue::Reconstructed { .. }), "level 3 value at {g} was not reconstructed: {lhs:?}");
        ensure!(lhs.uncertainty() < 1e-20, "residual {:.1e} at {g}", lhs.uncertainty());
        ensure!(rat(&lhs)? == psi_classical(&g).unwrap(), "coset sum differs at {g}");
        residual = residual.max(lhs.uncertainty());
    }
    Ok(format!("constants within {worst:.1e}, 20 reconstructed coset sums, residual {residual:.1e}"))
}

fn torsion() -> Outcome {
    let ctx = PrecisionCtx::default();
    let mut orders = Vec::new();
    for n in [2u64, 3, 5, 7, 11, 13] {
        let g = GroupId::gamma0(n);
        let cert = torsion_certificate(&g, &Divisor::zero_minus_infinity(g).unwrap(), &ctx).unwrap();
        let want = q(n as i64 - 1, 12).numer().clone();
        ensure!(cert.order.as_ref() == Some(&want), "N={n}: order {:?}, expected {want}", cert.order);
        for (x, p) in cert.generators.iter().zip(&cert.periods) {
            let scaled = rat(p)? * q(n as i64 - 1, 1);
            ensure!(scaled == x0_period_exact(n, x).unwrap(), "N={n}: generator {x} disagrees with the classical oracle");
        }
        orders.push(format!("{n}→{want}"));
    }
    Ok(orders.join(" "))
}

fn periods() -> Outcome {
    let reg = Symbols::new(PrecisionCtx::default());
    let mut r = rng(9);
    let mut cases = 0;
    let exact = |v: SymbolValue| -> Result<Q, String> {
        if v.is_exact() {
            rat(&v)
        } else {
            Err(format!("inexact period {v}"))
        }
    };
    let divisors = |n: u64| -> Vec<Divisor> {
        let g = GroupId::gamma0(n);
        let last = cusps(&g).unwrap().last().unwrap().cusp.clone();
        vec![
            Divisor::zero_minus_infinity(g).unwrap(),
            Divisor::new(g, &[(last, 2), (Cusp::zero(), -1), (Cusp::infinity(), -1)]).unwrap(),
        ]
    };
    let small = |g: &GroupElement| g.height() <= BigInt::from(1_000_000);

    // additivity
    for n in [2u64, 3, 4, 6] {
        let sampler = GroupSampler::new(&GroupId::gamma0(n)).unwrap();
        let maps: Vec<_> = divisors(n).iter().map(|d| PeriodMap::new(&reg, d).unwrap()).collect();
        let mut done = 0;
        while done < 100 {
            let (x, y) = (sampler.element(&mut r, 3), sampler.element(&mut r, 3));
            if !small(&x) || !small(&y) {
                continue;
            }
            for m in &maps {
                let lhs = exact(m.period(&x.mul(&y)).unwrap())?;
                let rhs = exact(m.period(&x).unwrap())? + exact(m.period(&y).unwrap())?;
                ensure!(lhs == rhs, "additivity fails on Γ₀({n}) for {x}, {y}");
            }
            done += 1;
        }
        cases += done;
    }

    // elliptic
    for n in [2u64, 3] {
        let g = GroupId::gamma0(n);
        let sampler = GroupSampler::new(&g).unwrap();
        // orders 4 and 6
        let base = [GroupElement::from_i64(1, -1, 2, -1), GroupElement::from_i64(1, -1, 3, -2)];
        let base: Vec<_> = base.into_iter().filter(|x| g.member(x)).collect();
        ensure!(!base.is_empty(), "no elliptic base element on Γ₀({n})");
        let maps: Vec<_> = divisors(n).iter().map(|d| PeriodMap::new(&reg, d).unwrap()).collect();
        let mut done = 0;
        while done < 150 {
            let e = base[r.gen_range(0..base.len())].pow(r.gen_range(1..=3)).conj_by(&sampler.element(&mut r, 3));
            if !small(&e) || !matches!(e.classify(), MotionClass::Elliptic(_)) {
                continue;
            }
            for m in &maps {
                ensure!(exact(m.period(&e).unwrap())?.is_zero(), "nonzero elliptic period on Γ₀({n}) at {e}");
                ensure!(rat(&m.combination(&e).unwrap())?.is_zero(), "symbols do not cancel on Γ₀({n}) at {e}");
            }
            done += 1;
        }
        cases += done;
    }

    // parabolic
    for n in [4u64, 6] {
        let g = GroupId::gamma0(n);
        let sampler = GroupSampler::new(&g).unwrap();
        let list = cusps(&g).unwrap();
        let maps: Vec<_> = divisors(n).into_iter().map(|d| (PeriodMap::new(&reg, &d).unwrap(), d)).collect();
        let mut done = 0;
        while done < 150 {
            let data = &list[r.gen_range(0..list.len())];
            let k = [-3i64, -2, -1, 1, 2, 3][r.gen_range(0..6)];
            let x = data.scaling.stabilizer_generator().pow(k).conj_by(&sampler.element(&mut r, 3));
            if !small(&x) {
                continue;
            }
            for (m, d) in &maps {
                let want = q(k * d.multiplicity(&data.cusp), 1);
                ensure!(exact(m.period(&x).unwrap())? == want, "parabolic period on Γ₀({n}) at {x}");
                ensure!(rat(&m.combination(&x).unwrap())? == want, "symbol combination on Γ₀({n}) at {x}");
            }
            done += 1;
        }
        cases += done;
    }
    ensure!(cases >= 1000, "only {cases} cases");
    Ok(format!("{cases} cases"))
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run(1, "Dedekind reciprocity and double sums", s(10), reciprocity),
        run(2, "cocycle defect on random pairs", s(10), cocycle),
        run(3, "conjugacy, inverse and sign laws", s(5), conjugacy),
        run(4, "Eisenstein period integral equals the symbol", s(60), lemma),
        run(5, "eta multiplier reproduces the symbol", s(30), eta),
        run(6, "coset sum over Γ(2)", s(30), coset_sum_two),
        run(7, "character-sum constants and reconstructed level 3", s(300), constants),
        run(8, "Manin-Drinfeld torsion orders", s(300), torsion),
        run(9, "period map: additivity, elliptic, parabolic", s(10), periods),
    ];
    let failed: Vec<_> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
