//! Eisenstein periods, the divisor period map and torsion certificates.

mod divisor;
mod eta;
mod quadrature;
mod torsion;

pub use eta::{e2_value, eta_log, phi_fourier_coefficient, phi_from_eta};
pub use quadrature::{period_numeric, NumericPeriod};
pub use divisor::{divisor_periods, x0_period_exact, Divisor, PeriodMap, PeriodValue};
pub use torsion::{torsion_certificate, CertificateStatus, TorsionCertificate};
