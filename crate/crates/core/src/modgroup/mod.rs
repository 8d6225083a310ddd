//! Integer matrix groups: elements, congruence subgroups, cusps, cosets and
//! Schreier generators.

mod coset;
mod cusp;
mod element;
mod group;
mod word;

pub use coset::{atkin_lehner, cosets, exact_divisors, is_normal, schreier_generators, CosetSpace, Gen};
pub use cusp::{cusp_equivalent, cusp_width, cusps, Cusp, CuspData, CuspTable, ScalingMap};
pub use element::{GroupElement, MotionClass};
pub use group::{Family, GroupId};
pub use word::{word_decompose, Letter, Word};

/// Motion type of `g`.
pub fn classify(g: &GroupElement) -> MotionClass {
    g.classify()
}

/// Membership of `g` in `G`.
pub fn member(g: &GroupElement, group: &GroupId) -> bool {
    group.member(g)
}
