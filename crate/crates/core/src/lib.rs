//! Dedekind sums and generalized Rademacher symbols for `SL₂(ℤ)` and its
//! congruence subgroups `Γ(N)`, `Γ₀(N)`, `Γ₁(N)` and the Atkin-Lehner
//! extensions `Γ₀(N)⁺`, with periods of weight-two Eisenstein series and
//! torsion certificates for cuspidal divisors.

pub mod arith;
pub mod cli;
pub mod dedekind;
mod error;
pub mod modgroup;
pub mod periods;
pub mod sample;
pub mod symbols;

pub use error::{Error, Result};
