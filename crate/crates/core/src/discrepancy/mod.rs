//! Kite/dart ratio bounds, the density constant, e_rho / E_rho and the
//! area inequalities behind them.

pub mod density;
pub mod pipeline;
pub mod product;
pub mod ratio;
pub mod region;
pub mod squares;

pub use density::{compute_rho, dart_area, e_rho, kite_area, DensityModel};
pub use pipeline::{
    analyze, prop21_suite, AnalysisOptions, DiscrepancyReport, HardChecks, NetSummary, PatchSummary, Prop21Summary,
    ScaleRow, PROP21_N_MAX, PROP21_SEEDS,
};
pub use product::{partial_product, PartialProduct};
pub use ratio::{check_prop21, contraction_holds, iterate_ratio_map, ratio_map, RatioRow, RatioStep, RatioTrace};
pub use region::{phi_exponent, region_analysis, region_analysis_with, BoundCheck, RegionCounts};
pub use squares::{
    check_prop22, check_prop23, estimate_E_rho, prop22_bound, prop22_from_scan, Prop22Check, SquareCounter, SquareScan,
};

/// Pairwise (cascade) summation: deterministic and with `O(log n)` error
/// growth.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}
