//! Seeded random elements for property checks and demonstrations.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::modgroup::{schreier_generators, GroupElement, GroupId, MotionClass};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random word `T^{k₁} S T^{k₂} S ...` with `len` letters and `|kᵢ| ≤ span`.
pub fn random_sl2z(rng: &mut impl Rng, len: usize, span: i64) -> GroupElement {
    let mut g = GroupElement::identity();
    for _ in 0..len {
        let k = rng.gen_range(-span..=span);
        g = g.mul(&GroupElement::t_pow(k)).mul(&GroupElement::s());
    }
    if rng.gen_bool(0.5) {
        g = g.neg();
    }
    g
}

/// Random hyperbolic element of `SL₂(ℤ)` with entries below `max_height`.
pub fn random_hyperbolic(rng: &mut impl Rng, max_height: i64) -> GroupElement {
    loop {
        let len = rng.gen_range(1..=6);
        let g = random_sl2z(rng, len, 4);
        if g.classify() == MotionClass::Hyperbolic && g.height() <= BigInt::from(max_height) {
            return g;
        }
    }
}

/// Random products of Schreier generators of `group` (and their inverses).
pub struct GroupSampler {
    gens: Vec<GroupElement>,
}

impl GroupSampler {
    pub fn new(group: &GroupId) -> Result<Self> {
        let base = schreier_generators(group)?;
        let mut gens = base.clone();
        gens.extend(base.iter().map(GroupElement::inverse));
        Ok(GroupSampler { gens })
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    /// Product of `len` random generators.
    pub fn element(&self, rng: &mut impl Rng, len: usize) -> GroupElement {
        (0..len).fold(GroupElement::identity(), |g, _| g.mul(&self.gens[rng.gen_range(0..self.gens.len())]))
    }

    /// Hyperbolic product of at most `len` generators with entries below `max_height`.
    pub fn hyperbolic(&self, rng: &mut impl Rng, len: usize, max_height: i64) -> GroupElement {
        loop {
            let k = rng.gen_range(1..=len.max(1));
            let g = self.element(rng, k);
            if g.classify() == MotionClass::Hyperbolic && g.height() <= BigInt::from(max_height) {
                return g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_members_and_reproducible() {
        let g = GroupId::gamma0(6);
        let s = GroupSampler::new(&g).unwrap();
        let (mut r1, mut r2) = (rng(7), rng(7));
        for _ in 0..20 {
            let x = s.hyperbolic(&mut r1, 4, 10_000);
            assert!(g.member(&x));
            assert_eq!(x, s.hyperbolic(&mut r2, 4, 10_000));
        }
        let h = random_hyperbolic(&mut r1, 500);
        assert!(h.is_unimodular() && h.classify() == MotionClass::Hyperbolic);
    }
}
