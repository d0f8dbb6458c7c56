//! Tile areas, the density constant rho and the local discrepancy e_rho.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::golden::PHI;
use crate::tiling::{canonical_seed, TileKind};

/// Area of a full unit tile: twice the half-tile area, which is exactly
/// the half-tile's doubled signed area.
fn full_tile_area(kind: TileKind) -> f64 {
    canonical_seed(kind).signed_area2().to_f64().abs()
}

pub fn dart_area() -> f64 {
    full_tile_area(TileKind::HalfDart)
}

pub fn kite_area() -> f64 {
    full_tile_area(TileKind::HalfKite)
}

/// `phi^2 / ((1 + phi^2) psi)`.
pub fn compute_rho(psi: f64) -> Result<f64> {
    if psi.is_nan() || psi <= 0.0 {
        return Err(Error::InvalidArgument(format!("psi must be positive, got {psi}")));
    }
    let phi2 = PHI * PHI;
    Ok(phi2 / ((1.0 + phi2) * psi))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityModel {
    /// Dart area.
    pub psi: f64,
    /// Expected points per unit area.
    pub rho: f64,
}

impl DensityModel {
    pub fn penrose() -> Self {
        let psi = dart_area();
        DensityModel { psi, rho: compute_rho(psi).expect("dart area is positive") }
    }

    /// `rho psi (1 + phi^2) - phi^2`.
    pub fn residual(&self) -> f64 {
        self.rho * self.psi * (1.0 + PHI * PHI) - PHI * PHI
    }
}

/// `max(rho A / n, n / (rho A))`.
pub fn e_rho(count: u64, area: f64, rho: f64) -> Result<f64> {
    if count == 0 {
        return Err(Error::EmptySquare);
    }
    if !(area > 0.0) || !(rho > 0.0) {
        return Err(Error::InvalidArgument(format!("area and rho must be positive, got {area}, {rho}")));
    }
    let expected = rho * area;
    let n = count as f64;
    Ok((expected / n).max(n / expected))
}
