use radsym::dedekind::{psi_classical, Rat};
use radsym::modgroup::{Cusp, GroupElement, GroupId, MotionClass};
use radsym::symbols::{lift_coset_sum, PrecisionCtx, Symbols};

fn x0_oracle(n: i64, g: &GroupElement) -> Rat {
    let t = GroupElement::new(g.a.clone(), &g.b * n, &g.c / n, g.d.clone()).unwrap();
    psi_classical(g).unwrap() - psi_classical(&t).unwrap()
}

fn hyperbolic_in(group: &GroupId, gens: &[GroupElement], count: usize) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let mut g = GroupElement::identity();
    let mut k = 0usize;
    while out.len() < count {
        g = g.mul(&gens[(k * 7 + k / 3) % gens.len()]);
        k += 1;
        if g.height() > 10_000.into() {
            g = gens[k % gens.len()].clone();
        }
        if g.classify() == MotionClass::Hyperbolic && group.member(&g) {
            out.push(g.clone());
        }
    }
    out
}

#[test]
fn coset_sum_over_principal_levels() {
    let reg = Symbols::new(PrecisionCtx::default());
    for n in [2u64, 3] {
        let sub = reg.engine(GroupId::gamma(n), &Cusp::infinity()).unwrap();
        let ni = n as i64;
        let gens = [GroupElement::from_i64(1, ni, 0, 1), GroupElement::from_i64(1, 0, ni, 1), GroupElement::from_i64(1, -ni, 0, 1)];
        for g in hyperbolic_in(&GroupId::gamma(n), &gens, 6) {
            let lhs = lift_coset_sum(&sub, &GroupId::sl2z(), &g).unwrap();
            assert_eq!(lhs.as_rat().unwrap(), &psi_classical(&g).unwrap(), "N={n} g={g}");
        }
    }
}

#[test]
fn gamma0_matches_classical_oracle() {
    let reg = Symbols::new(PrecisionCtx::default());
    for n in [2u64, 3, 5, 7] {
        let g0 = GroupId::gamma0(n);
        let inf = reg.engine(g0, &Cusp::infinity()).unwrap();
        let zero = reg.engine(g0, &Cusp::zero()).unwrap();
        let ni = n as i64;
        let gens = [GroupElement::t(), GroupElement::from_i64(1, 0, ni, 1), GroupElement::from_i64(2, 1, 2 * ni - 1, ni), GroupElement::from_i64(1, -1, 0, 1)];
        for g in hyperbolic_in(&g0, &gens, 4) {
            let p0 = zero.psi(&g).unwrap();
            let pi = inf.psi(&g).unwrap();
            let lhs = (p0.as_rat().unwrap() - pi.as_rat().unwrap()) * Rat::from_integer((ni - 1).into());
            assert_eq!(lhs, x0_oracle(ni, &g), "N={n} g={g}");
        }
    }
}
