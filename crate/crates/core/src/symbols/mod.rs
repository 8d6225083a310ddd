//! Generalized Dedekind and Rademacher symbols for congruence groups.

mod engine;
mod principal;
pub(crate) mod real;
mod reconstruct;
mod takada;
mod value;

pub use engine::{
    lift_coset_sum, positive_trace, psi_general, symbol_elliptic, symbol_parabolic, transport_cusp, SymbolEngine, Symbols,
    Transported,
};
pub use principal::{default_denominator_bound, takada_phi, PrincipalSymbol};
pub use reconstruct::{reconstruct, reconstruct_rat};
pub use takada::{takada_C, takada_table, takada_table_numeric, TakadaConstant};
pub use value::{PrecisionCtx, SymbolValue};
