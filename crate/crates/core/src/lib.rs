//! Exact Penrose kite/dart tilings and the density statistics of their
//! separated nets.
//!
//! * [`golden`]: exact arithmetic in `Q(phi)` and `Z[zeta_5]`.
//! * [`tiling`]: half-tile deflation, patches, substitution counts.
//! * [`net`]: one point per tile, separation and covering parameters.
//! * [`discrepancy`]: ratio-map iteration, density constant, `e_rho` and
//!   `E_rho` estimates, region analysis, partial products.
//! * [`report`]: the end-to-end analysis pipeline and its CSV/JSON output.

pub mod discrepancy;
pub mod error;
pub mod geom;
pub mod golden;
pub mod net;
pub mod report;
pub mod tiling;

pub use error::{Error, Result};
