//! Coarse-level area bookkeeping for one square.
//!
//! For a square of side `l` with `phi^m <= l < phi^(m+1)`, the tiles
//! `h = floor(m/2)` generations up the deflation tree have diameter
//! `a = phi^(h+1)`. Those wholly inside the square cover `V`, those meeting
//! it cover `W`, and `V` contains the concentric square of side `l - 2a`
//! while `W` sits inside the one of side `l + 2a`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::pairwise_sum;
use crate::error::{Error, Result};
use crate::geom::{triangle_inside_square, triangle_meets_square, Square};
use crate::golden::{phi_pow_f64, PHI};
use crate::tiling::{substitution_counts, Patch, TileCensus, DEFAULT_TILE_CAP};

/// One inequality `lhs <= rhs` (or `>=`, see the field docs of the owner).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// False when the inequality's hypothesis fails; `holds` is then true.
    pub applies: bool,
    pub holds: bool,
}

impl BoundCheck {
    fn le(lhs: f64, rhs: f64, applies: bool) -> Self {
        BoundCheck { lhs, rhs, applies, holds: !applies || lhs <= rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionCounts {
    pub square: Square,
    pub side: f64,
    pub m: i32,
    /// Generations between the coarse tiles and the patch.
    pub ancestor_rounds: u32,
    /// Coarse tile diameter `phi^(ancestor_rounds + 1)`.
    pub a: f64,
    /// Coarse half-tiles wholly inside the square.
    pub contained: TileCensus,
    /// Coarse half-tiles meeting the square's interior.
    pub intersecting: TileCensus,
    pub contained_area: f64,
    pub intersecting_area: f64,
    /// Final-level half-tiles covering `V`, by the recursion.
    pub fine_contained: TileCensus,
    /// Final-level half-tiles covering `W - V`.
    pub fine_frame: TileCensus,
    /// `l^2 - 4al <= |V|`, needing `l > 4a`.
    pub v_lower: BoundCheck,
    /// `|W - V| <= (l + 2a)^2 - (l - 2a)^2 = 8al`.
    pub frame: BoundCheck,
    /// Full darts in `W - V` against `8al / psi`.
    pub dart_fit: BoundCheck,
    /// Full kites in `W - V` against `8al / (psi phi)`.
    pub kite_fit: BoundCheck,
    /// `l^2/5 <= d_1`; only guaranteed for large squares, reported.
    pub d1_lower: BoundCheck,
    /// `|k_1/d_1 - phi| <= 2^(-h)`, needs `h >= 2` and a nonempty census.
    pub fine_ratio: BoundCheck,
}

impl RegionCounts {
    /// Checks that must hold at every scale.
    pub fn contract_ok(&self) -> bool {
        let c = &self.contained;
        let w = &self.intersecting;
        let l2 = self.side * self.side;
        let tol = 1e-9 * l2.max(1.0);
        c.kites <= w.kites
            && c.darts <= w.darts
            && self.contained_area <= l2 + tol
            && l2 <= self.intersecting_area + tol
    }

    /// The ratio sandwich `k1/(d1 + 32al) <= K/D <= (k1 + 16al)/d1` for the
    /// net counts of the same square.
    pub fn ratio_sandwich(&self, k: u64, d: u64) -> bool {
        let k1 = self.fine_contained.kites_u64() as f64;
        let d1 = self.fine_contained.darts_u64() as f64;
        let al = self.a * self.side;
        if d == 0 || d1 == 0.0 {
            return false;
        }
        let r = k as f64 / d as f64;
        k1 / (d1 + 32.0 * al) <= r && r <= (k1 + 16.0 * al) / d1
    }
}

/// `m` with `phi^m <= l < phi^(m+1)`.
pub fn phi_exponent(l: f64) -> i32 {
    let mut m = (l.ln() / PHI.ln()).floor() as i32;
    while phi_pow_f64(m) > l {
        m -= 1;
    }
    while phi_pow_f64(m + 1) <= l {
        m += 1;
    }
    m
}

pub fn region_analysis(patch: &Patch, square: &Square) -> Result<RegionCounts> {
    region_analysis_with(patch, square, None)
}

/// As `region_analysis`; `ancestors` may hold the patch regenerated at the
/// right generation to avoid rebuilding it.
pub fn region_analysis_with(patch: &Patch, square: &Square, ancestors: Option<&Patch>) -> Result<RegionCounts> {
    let window = patch.window.ok_or_else(|| Error::InvalidArgument("patch has no window".into()))?;
    if !window.dilate(1e-9).contains_square(square) {
        return Err(Error::OutsideWindow { square: square.to_string(), window: window.to_string() });
    }
    let l = square.side;
    if !(l >= 1.0) {
        return Err(Error::InvalidArgument(format!("square side must be >= 1, got {l}")));
    }
    let m = phi_exponent(l);
    let h = (m / 2) as u32;
    if h > patch.generation {
        return Err(Error::InvalidArgument(format!(
            "square side {l} needs {h} ancestor rounds, patch has only {}",
            patch.generation
        )));
    }
    let a = phi_pow_f64(h as i32 + 1);
    let owned;
    let coarse = match ancestors {
        Some(p) if p.generation == patch.generation - h => p,
        _ => {
            owned = patch.regenerate(patch.generation - h, DEFAULT_TILE_CAP)?;
            &owned
        }
    };

    // (is kite, inside, meets, area)
    let classified: Vec<(bool, bool, bool, f64)> = coarse
        .tiles
        .par_iter()
        .map(|t| {
            let tri = coarse.triangle(t);
            let inside = triangle_inside_square(&tri, square, 1e-9);
            let meets = inside || triangle_meets_square(&tri, square, -1e-9);
            (t.is_kite(), inside, meets, t.area(coarse.scale_exp))
        })
        .collect();
    let count = |pred: &dyn Fn(&(bool, bool, bool, f64)) -> bool| {
        let k = classified.iter().filter(|c| c.0 && pred(c)).count() as u64;
        let d = classified.iter().filter(|c| !c.0 && pred(c)).count() as u64;
        TileCensus::new(k, d)
    };
    let contained = count(&|c| c.1);
    let intersecting = count(&|c| c.2);
    let frame_coarse = count(&|c| c.2 && !c.1);
    let area_of = |pred: &dyn Fn(&(bool, bool, bool, f64)) -> bool| {
        let v: Vec<f64> = classified.iter().filter(|c| pred(c)).map(|c| c.3).collect();
        pairwise_sum(&v)
    };
    let contained_area = area_of(&|c| c.1);
    let intersecting_area = area_of(&|c| c.2);

    let fine_contained = substitution_counts(&contained, h);
    let fine_frame = substitution_counts(&frame_coarse, h);
    let psi = super::density::dart_area();
    let al = a * l;
    let frame_area = intersecting_area - contained_area;
    let d1 = fine_contained.darts_u64() as f64;
    let k1 = fine_contained.kites_u64() as f64;

    Ok(RegionCounts {
        square: *square,
        side: l,
        m,
        ancestor_rounds: h,
        a,
        v_lower: BoundCheck::le(l * l - 4.0 * al, contained_area, l > 4.0 * a),
        frame: BoundCheck::le(frame_area, 8.0 * al, true),
        dart_fit: BoundCheck::le(fine_frame.darts_u64() as f64 / 2.0, 8.0 * al / psi, true),
        kite_fit: BoundCheck::le(fine_frame.kites_u64() as f64 / 2.0, 8.0 * al / (psi * PHI), true),
        d1_lower: BoundCheck::le(l * l / 5.0, d1, true),
        fine_ratio: BoundCheck::le(
            if d1 > 0.0 { (k1 / d1 - PHI).abs() } else { f64::NAN },
            0.5f64.powi(h as i32),
            h >= 2 && !contained.kites.is_zero() && !contained.darts.is_zero(),
        ),
        contained,
        intersecting,
        contained_area,
        intersecting_area,
        fine_contained,
        fine_frame,
    })
}
