//! Right coset spaces `G\SL₂(ℤ)` (projective) and Reidemeister-Schreier data.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::word::{word_decompose, Letter};
use super::{GroupElement, GroupId};
use crate::arith::{gcd_u64, inv_mod};
use crate::error::{Error, Result};
use crate::modgroup::group::Family;

/// Generators of `SL₂(ℤ)` used for the coset action.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    S = 0,
    T = 1,
    TInv = 2,
}

impl Gen {
    pub fn matrix(self) -> GroupElement {
        match self {
            Gen::S => GroupElement::s(),
            Gen::T => GroupElement::t(),
            Gen::TInv => GroupElement::from_i64(1, -1, 0, 1),
        }
    }
}

type Key = [u64; 4];

/// The projective coset space `G\SL₂(ℤ)` for `G ⊆ SL₂(ℤ)`, with right action
/// of `S`, `T` and `T^{-1}`.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    group: GroupId,
    reps: Vec<GroupElement>,
    index: HashMap<Key, usize>,
    act: Vec<[usize; 3]>,
    units: Vec<u64>,
}

impl CosetSpace {
    pub fn new(group: GroupId) -> Result<Self> {
        if !group.in_sl2z() {
            return Err(Error::NotSubgroup(group.to_string(), "SL2(Z)".into()));
        }
        let n = group.level;
        let units = (1..n.max(2)).filter(|&u| gcd_u64(u, n) == 1).collect();
        let mut space = CosetSpace { group, reps: Vec::new(), index: HashMap::new(), act: Vec::new(), units };
        let id = GroupElement::identity();
        space.index.insert(space.key(&id), 0);
        space.reps.push(id);
        let gens = [Gen::S, Gen::T, Gen::TInv];
        let mut i = 0;
        while i < space.reps.len() {
            let mut row = [0usize; 3];
            for g in gens {
                let y = space.reps[i].mul(&g.matrix());
                let k = space.key(&y);
                let j = match space.index.get(&k) {
                    Some(&j) => j,
                    None => {
                        let j = space.reps.len();
                        space.index.insert(k, j);
                        space.reps.push(y);
                        j
                    }
                };
                row[g as usize] = j;
            }
            space.act.push(row);
            i += 1;
        }
        Ok(space)
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &GroupElement {
        &self.reps[i]
    }

    /// Coset reached from coset `i` by right multiplication with `g`.
    pub fn act(&self, i: usize, g: Gen) -> usize {
        self.act[i][g as usize]
    }

    /// Index of the coset `G·x`.
    pub fn coset_of(&self, x: &GroupElement) -> usize {
        self.index[&self.key(x)]
    }

    fn key(&self, x: &GroupElement) -> Key {
        let n = self.group.level;
        if self.group.is_full() {
            return [0; 4];
        }
        let m = x.mod_n(n);
        let neg = |v: u64| (n - v) % n;
        match self.group.family {
            Family::GammaN => {
                let other = [neg(m[0]), neg(m[1]), neg(m[2]), neg(m[3])];
                m.min(other)
            }
            Family::Gamma1N => {
                let a = [m[2], m[3], 0, 0];
                let b = [neg(m[2]), neg(m[3]), 0, 0];
                a.min(b)
            }
            Family::Gamma0N => self
                .units
                .iter()
                .map(|&u| [(u * m[2]) % n, (u * m[3]) % n, 0, 0])
                .min()
                .unwrap(),
            Family::SL2Z | Family::Gamma0NPlus => unreachable!(),
        }
    }

    /// Length of the `T`-orbit through coset `i`.
    pub fn t_orbit_len(&self, i: usize) -> usize {
        let mut j = self.act(i, Gen::T);
        let mut len = 1;
        while j != i {
            j = self.act(j, Gen::T);
            len += 1;
        }
        len
    }

    /// Orbit label of every coset under `⟨T⟩`, numbered in order of first appearance.
    pub fn t_orbits(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        for i in 0..self.len() {
            if label[i] != usize::MAX {
                continue;
            }
            let mut j = i;
            loop {
                label[j] = next;
                j = self.act(j, Gen::T);
                if j == i {
                    break;
                }
            }
            next += 1;
        }
        label
    }

    /// Schreier element `rep_i · g · rep_{i·g}^{-1}` (lies in `±G`).
    pub fn schreier_element(&self, i: usize, g: Gen) -> GroupElement {
        let j = self.act(i, g);
        self.reps[i].mul(&g.matrix()).mul(&self.reps[j].inverse())
    }

    /// Reidemeister-Schreier generators over `{S, T}`, deduplicated up to sign
    /// and inversion, with `±I` removed.
    pub fn schreier_generators(&self) -> Vec<GroupElement> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for i in 0..self.len() {
            for g in [Gen::S, Gen::T] {
                let h = self.schreier_element(i, g);
                if h.is_scalar() {
                    continue;
                }
                let c = h.canonical();
                if seen.contains(&c) || seen.contains(&h.inverse().canonical()) {
                    continue;
                }
                seen.insert(c.clone());
                out.push(c);
            }
        }
        out
    }

    /// Rewrites `g ∈ G` as a product of Schreier elements; the product equals `±g`.
    pub fn schreier_rewrite(&self, g: &GroupElement) -> Vec<GroupElement> {
        let mut out = Vec::new();
        let mut cur = 0;
        let mut push = |cur: &mut usize, gen: Gen| {
            let h = self.schreier_element(*cur, gen);
            *cur = self.act(*cur, gen);
            if !h.is_scalar() {
                out.push(h);
            }
        };
        for letter in word_decompose(g).0 {
            match letter {
                Letter::S => push(&mut cur, Gen::S),
                Letter::T(k) => {
                    let gen = if k > BigInt::zero() { Gen::T } else { Gen::TInv };
                    let mut m = num_traits::Signed::abs(&k);
                    while !m.is_zero() {
                        push(&mut cur, gen);
                        m -= 1;
                    }
                }
            }
        }
        debug_assert_eq!(cur, 0, "element not in the group");
        out
    }

    /// Number of cosets fixed by `S` and by `ST`.
    pub fn elliptic_counts(&self) -> (usize, usize) {
        let nu2 = (0..self.len()).filter(|&i| self.act(i, Gen::S) == i).count();
        let nu3 = (0..self.len()).filter(|&i| self.act(self.act(i, Gen::S), Gen::T) == i).count();
        (nu2, nu3)
    }

    /// Genus of `X(G)` from the coset action.
    pub fn genus(&self) -> i64 {
        let mu = self.len() as i64;
        let (nu2, nu3) = self.elliptic_counts();
        let h = *self.t_orbits().iter().max().unwrap_or(&0) as i64 + 1;
        // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 h
        let twelve_g = 12 + mu - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * h;
        debug_assert_eq!(twelve_g % 12, 0);
        twelve_g / 12
    }
}

/// The Atkin-Lehner matrix `W_e = [[e x, y], [N z, e w]]` of determinant `e`, for `e ‖ N`.
pub fn atkin_lehner(n: u64, e: u64) -> Result<GroupElement> {
    if e == 0 || !n.is_multiple_of(e) || gcd_u64(e, n / e) != 1 {
        return Err(Error::Domain(format!("{e} is not an exact divisor of {n}")));
    }
    if e == 1 {
        return Ok(GroupElement::identity());
    }
    if e == n {
        return GroupElement::scaled(0, -1, n as i64, 0, n as i64);
    }
    // e x w - (N/e) y = 1 with z = 1
    let f = (n / e) as i64;
    let w = inv_mod(e as i64, f).unwrap();
    let y = (e as i64 * w - 1) / f;
    GroupElement::scaled(e as i64, y, n as i64, (e as i64) * w, e as i64)
}

/// Exact divisors of `N` in increasing order.
pub fn exact_divisors(n: u64) -> Vec<u64> {
    crate::arith::divisors(n).into_iter().filter(|&e| gcd_u64(e, n / e) == 1).collect()
}

/// Coset representatives for `G1\G`.
pub fn cosets(g1: &GroupId, g: &GroupId) -> Result<Vec<GroupElement>> {
    if g1 == g {
        return Ok(vec![GroupElement::identity()]);
    }
    if !g1.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(g1.to_string(), g.to_string()));
    }
    if g.in_sl2z() {
        let space = CosetSpace::new(*g1)?;
        return Ok(space.reps().iter().filter(|x| g.member(x)).cloned().collect());
    }
    let n = g.level;
    let al: Vec<GroupElement> = exact_divisors(n).iter().map(|&e| atkin_lehner(n, e).unwrap()).collect();
    let inner = cosets(g1, &GroupId::gamma0(n))?;
    let mut out = Vec::with_capacity(inner.len() * al.len());
    for w in &al {
        for t in &inner {
            out.push(t.mul(w));
        }
    }
    Ok(out)
}

/// Schreier generators of `G`; for `Γ₀(N)⁺` those of `Γ₀(N)` plus the Atkin-Lehner matrices.
pub fn schreier_generators(g: &GroupId) -> Result<Vec<GroupElement>> {
    if g.is_full() && g.in_sl2z() {
        return Ok(vec![GroupElement::s(), GroupElement::t()]);
    }
    if g.in_sl2z() {
        return Ok(CosetSpace::new(*g)?.schreier_generators());
    }
    let n = g.level;
    let mut out = CosetSpace::new(GroupId::gamma0(n))?.schreier_generators();
    for e in exact_divisors(n).into_iter().skip(1) {
        out.push(atkin_lehner(n, e)?);
    }
    Ok(out)
}

/// Computational normality test: `g h g^{-1} ∈ G1` for generators `g` of `G` and `h` of `G1`.
pub fn is_normal(g1: &GroupId, g: &GroupId) -> Result<bool> {
    if !g1.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(g1.to_string(), g.to_string()));
    }
    let outer = schreier_generators(g)?;
    let inner = schreier_generators(g1)?;
    Ok(outer.iter().all(|x| inner.iter().all(|h| g1.member(&h.conj_by(x)))))
}
