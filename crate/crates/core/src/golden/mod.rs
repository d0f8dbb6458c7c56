//! Exact golden-field and `Z[zeta_5]` arithmetic.

mod cyclo;
mod field;

pub use cyclo::{cyclo_scale_inv_phi, embed, phi_pow_f64, CycloPoint, Sin72Golden, SIN_72};
pub use field::{golden_compare, golden_mul, GoldenNum, PHI};
