use std::fmt;

use astro_float_num::BigFloat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::real::{self, RM};
use crate::dedekind::{format_rat, Rat};
use crate::error::{Error, Result};

/// Working precision and reconstruction policy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionCtx {
    /// Working decimal digits, at least 30.
    pub digits: u32,
    /// Overrides the default denominator bound `12·N·[SL₂(ℤ):Γ(N)]·2¹⁰`.
    pub denominator_bound: Option<BigInt>,
    /// Largest `|c|` evaluated by the direct finite sum; larger elements go
    /// through the Schreier-word fold.
    pub direct_limit: u64,
    /// Evaluate `C_{N,j}` numerically even where a closed form is known.
    pub numeric_constants: bool,
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        PrecisionCtx { digits: 60, denominator_bound: None, direct_limit: 1 << 14, numeric_constants: false }
    }
}

impl PrecisionCtx {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 30 {
            return Err(Error::Precision(format!("need at least 30 digits, got {digits}")));
        }
        Ok(PrecisionCtx { digits, ..Default::default() })
    }

    /// Binary working precision with guard bits.
    pub fn bits(&self) -> usize {
        ((self.digits as f64 + 20.0) * std::f64::consts::LOG2_10).ceil() as usize + 64
    }

    /// Reconstruction accepts residuals below `10^{-digits/2}`.
    pub fn residual_digits(&self) -> u32 {
        self.digits / 2
    }
}

/// A symbol value: exact, approximate with an error bound, or reconstructed.
#[derive(Clone, Debug)]
pub enum SymbolValue {
    Exact(Rat),
    Approx { value: BigFloat, error: f64 },
    Reconstructed { value: Rat, residual: f64 },
}

impl SymbolValue {
    pub fn zero() -> Self {
        SymbolValue::Exact(Rat::zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SymbolValue::Exact(_))
    }

    pub fn is_approx(&self) -> bool {
        matches!(self, SymbolValue::Approx { .. })
    }

    /// The rational value for `Exact` and `Reconstructed`.
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            SymbolValue::Exact(r) | SymbolValue::Reconstructed { value: r, .. } => Some(r),
            SymbolValue::Approx { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SymbolValue::Exact(r) | SymbolValue::Reconstructed { value: r, .. } => real::rat_to_f64(r),
            SymbolValue::Approx { value, .. } => real::to_f64(value),
        }
    }

    /// Error bound for approximations, residual for reconstructions, zero otherwise.
    pub fn uncertainty(&self) -> f64 {
        match self {
            SymbolValue::Exact(_) => 0.0,
            SymbolValue::Approx { error, .. } => *error,
            SymbolValue::Reconstructed { residual, .. } => *residual,
        }
    }

    fn float(&self, p: usize) -> BigFloat {
        match self {
            SymbolValue::Exact(r) | SymbolValue::Reconstructed { value: r, .. } => real::from_rat(r, p),
            SymbolValue::Approx { value, .. } => value.clone(),
        }
    }

    fn precision(&self) -> usize {
        match self {
            SymbolValue::Approx { value, .. } => value.precision().unwrap_or(256),
            _ => 256,
        }
    }

    pub fn add(&self, o: &SymbolValue) -> SymbolValue {
        use SymbolValue::*;
        match (self, o) {
            (Exact(a), Exact(b)) => Exact(a + b),
            (Approx { .. }, _) | (_, Approx { .. }) => {
                let p = self.precision().max(o.precision());
                let value = self.float(p).add(&o.float(p), p, RM);
                let ulp = 2f64.powi(-(p as i32) + 8) * value_scale(&value);
                Approx { value, error: self.uncertainty() + o.uncertainty() + ulp }
            }
            _ => Reconstructed {
                value: self.as_rat().unwrap() + o.as_rat().unwrap(),
                residual: self.uncertainty().max(o.uncertainty()),
            },
        }
    }

    pub fn add_rat(&self, r: &Rat) -> SymbolValue {
        self.add(&SymbolValue::Exact(r.clone()))
    }

    pub fn neg(&self) -> SymbolValue {
        self.scale(&-Rat::from_integer(1.into()))
    }

    pub fn scale(&self, r: &Rat) -> SymbolValue {
        use SymbolValue::*;
        match self {
            Exact(a) => Exact(a * r),
            Reconstructed { value, residual } => Reconstructed { value: value * r, residual: *residual },
            Approx { value, error } => {
                let p = self.precision();
                let v = value.mul(&real::from_rat(r, p), p, RM);
                let f = real::rat_to_f64(&r.abs());
                Approx { value: v, error: error * f + 2f64.powi(-(p as i32) + 8) }
            }
        }
    }

    /// Short text form: `p/q` or a decimal approximation.
    pub fn render(&self, digits: usize) -> String {
        match self {
            SymbolValue::Exact(r) | SymbolValue::Reconstructed { value: r, .. } => format_rat(r),
            SymbolValue::Approx { value, error } => format!("~{} (err {:.1e})", real::to_decimal(value, digits), error),
        }
    }

    /// `"p/q"` or `{"approx": ..., "err": ...}`.
    pub fn to_json(&self, digits: usize) -> Value {
        match self {
            SymbolValue::Exact(r) | SymbolValue::Reconstructed { value: r, .. } => json!(format_rat(r)),
            SymbolValue::Approx { value, error } => json!({"approx": real::to_decimal(value, digits), "err": error}),
        }
    }

    /// Method tag used in JSON output.
    pub fn method(&self) -> &'static str {
        match self {
            SymbolValue::Exact(_) => "exact",
            SymbolValue::Approx { .. } => "approx",
            SymbolValue::Reconstructed { .. } => "reconstructed",
        }
    }
}

fn value_scale(x: &BigFloat) -> f64 {
    real::abs_f64(x).max(1.0)
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(30))
    }
}

impl Default for SymbolValue {
    fn default() -> Self {
        SymbolValue::zero()
    }
}
