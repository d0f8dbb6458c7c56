//! Finite patches grown from a single seed half-tile.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::halftile::{Chirality, HalfTile, TileKind};
use super::substitution::{substitution_counts, TileCensus};
use crate::error::{Error, Result};
use crate::geom::{dist, triangle_contains, triangle_meets_square, Square, Xy};
use crate::golden::{phi_pow_f64, CycloPoint, PHI, SIN_72};

/// Default limit on the number of half-tiles a deflation may produce.
pub const DEFAULT_TILE_CAP: u64 = 50_000_000;

/// Where a patch came from: enough to rebuild any generation of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// The generation-0 tile, in ring coordinates at `seed_scale_exp`.
    pub seed: HalfTile,
    pub seed_scale_exp: i32,
    /// Tiles whose closure misses this square are dropped while deflating.
    pub clip: Option<Square>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Patch {
    pub tiles: Vec<HalfTile>,
    pub generation: u32,
    /// Every point of the patch is `ring point * phi^(-scale_exp)`.
    pub scale_exp: i32,
    pub provenance: Provenance,
    /// Region the patch is meant to cover, in physical coordinates.
    pub window: Option<Square>,
    /// Census the clipped-away tiles would have at this generation.
    pub pruned: TileCensus,
}

/// The canonical seed of the given kind: base on the x-axis from 0 to
/// `phi^size_exp` times the base length, apex above, right chirality.
pub fn canonical_seed(kind: TileKind) -> HalfTile {
    match kind {
        // apex = phi zeta = 1 + zeta + zeta^2, axis end 1, wing 0
        TileKind::HalfKite => HalfTile::new(
            kind,
            Chirality::Right,
            CycloPoint::new([1, 1, 1, 0]),
            CycloPoint::ONE,
            CycloPoint::ZERO,
            0,
        ),
        // tip phi, wing 0, apex phi + zeta^2 (reflex corner, 108 degrees)
        TileKind::HalfDart => HalfTile::new(
            kind,
            Chirality::Right,
            CycloPoint::PHI + CycloPoint::zeta_pow(2),
            CycloPoint::PHI,
            CycloPoint::ZERO,
            0,
        ),
    }
}

/// Square inscribed in the incircle of a triangle.
fn incircle_window(t: &[Xy; 3]) -> Square {
    let a = dist(t[1], t[2]);
    let b = dist(t[0], t[2]);
    let c = dist(t[0], t[1]);
    let p = a + b + c;
    let ix = (a * t[0].0 + b * t[1].0 + c * t[2].0) / p;
    let iy = (a * t[0].1 + b * t[1].1 + c * t[2].1) / p;
    let r = crate::geom::triangle_area(t) * 2.0 / p;
    let side = r * std::f64::consts::SQRT_2;
    Square::new(ix - side / 2.0, iy - side / 2.0, side)
}

impl Patch {
    /// A one-tile patch; its window is the square inscribed in the seed's
    /// incircle.
    pub fn from_seed(seed: HalfTile, scale_exp: i32) -> Self {
        let window = incircle_window(&seed.triangle(scale_exp));
        Patch {
            tiles: vec![seed],
            generation: 0,
            scale_exp,
            provenance: Provenance { seed, seed_scale_exp: scale_exp, clip: None },
            window: Some(window),
            pruned: TileCensus::default(),
        }
    }

    /// Canonical seed scaled by `phi^size_exp`: after `size_exp` deflation
    /// rounds the tiles have edge lengths 1 and `phi`.
    pub fn seed(kind: TileKind, size_exp: i32) -> Self {
        Patch::from_seed(canonical_seed(kind), -size_exp)
    }

    pub fn empty() -> Self {
        let mut p = Patch::seed(TileKind::HalfKite, 0);
        p.tiles.clear();
        p.window = None;
        p
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn census(&self) -> TileCensus {
        census(self)
    }

    /// Census predicted by the recursion from the seed, including tiles
    /// that clipping removed.
    pub fn expected_census(&self) -> TileCensus {
        let seed = census_of(std::slice::from_ref(&self.provenance.seed));
        substitution_counts(&seed, self.generation)
    }

    pub fn triangle(&self, t: &HalfTile) -> [Xy; 3] {
        t.triangle(self.scale_exp)
    }

    /// Rebuild this patch at an earlier (or equal) generation.
    pub fn regenerate(&self, generation: u32, cap: u64) -> Result<Patch> {
        let mut p = Patch::from_seed(self.provenance.seed, self.provenance.seed_scale_exp);
        p.provenance.clip = self.provenance.clip;
        p.window = self.window;
        deflate_patch_with_cap(&p, generation, cap)
    }
}

fn census_of(tiles: &[HalfTile]) -> TileCensus {
    let kites = tiles.iter().filter(|t| t.is_kite()).count() as u64;
    TileCensus::new(kites, tiles.len() as u64 - kites)
}

/// Half-kite and half-dart counts of a patch.
pub fn census(p: &Patch) -> TileCensus {
    census_of(&p.tiles)
}

pub fn deflate_patch(p: &Patch, rounds: u32) -> Result<Patch> {
    deflate_patch_with_cap(p, rounds, DEFAULT_TILE_CAP)
}

/// Deflate every tile `rounds` times.
///
/// The physical outline stays fixed: after splitting, ring coordinates are
/// multiplied by `phi` and `scale_exp` is incremented.
pub fn deflate_patch_with_cap(p: &Patch, rounds: u32, cap: u64) -> Result<Patch> {
    let clip = p.provenance.clip;
    if clip.is_none() {
        let projected = substitution_counts(&p.census(), rounds).total_u128();
        if projected > cap as u128 {
            return Err(Error::TileCap { projected, cap });
        }
    }
    let mut out = p.clone();
    for _ in 0..rounds {
        let projected = out.census().step().total_u128();
        if projected > cap as u128 {
            return Err(Error::TileCap { projected, cap });
        }
        let scale_exp = out.scale_exp + 1;
        let children: Vec<HalfTile> = out
            .tiles
            .par_iter()
            .flat_map_iter(|t| t.deflate().into_iter().map(|c| c.map_points(CycloPoint::mul_phi)))
            .collect();
        out.pruned = out.pruned.step();
        out.tiles = match clip {
            None => children,
            Some(sq) => {
                let (kept, dropped): (Vec<HalfTile>, Vec<HalfTile>) = children
                    .into_par_iter()
                    .partition(|t| triangle_meets_square(&t.triangle(scale_exp), &sq, 1e-6));
                out.pruned = &out.pruned + &census_of(&dropped);
                kept
            }
        };
        out.scale_exp = scale_exp;
        out.generation += 1;
    }
    Ok(out)
}

/// Ring point `a + b zeta` closest to the physical vector `v`.
fn nearest_lattice_offset(v: Xy) -> CycloPoint {
    let cos72 = 0.309_016_994_374_947_4;
    let b = (v.1 / SIN_72).round();
    let a = (v.0 - b * cos72).round();
    CycloPoint::new([a as i64, b as i64, 0, 0])
}

pub fn generate_patch_covering(square: &Square) -> Result<Patch> {
    generate_patch_covering_with_cap(square, DEFAULT_TILE_CAP)
}

/// Patch with unit-size tiles whose union contains `square`.
///
/// Uses the canonical half-kite seed grown by the least `phi^n` whose
/// inscribed square, after translating the seed by a lattice vector onto
/// the target, still contains the target; then deflates `n` rounds,
/// dropping tiles that miss the square.
pub fn generate_patch_covering_with_cap(square: &Square, cap: u64) -> Result<Patch> {
    if square.side.is_nan() || square.side <= 0.0 {
        return Err(Error::InvalidArgument(format!("square side must be positive, got {}", square.side)));
    }
    let seed = canonical_seed(TileKind::HalfKite);
    // height of the unit seed over its base of length 1
    let h1 = PHI * SIN_72;
    for n in 0..=64i32 {
        let s = phi_pow_f64(n);
        let sigma = s * h1 / (1.0 + h1);
        if sigma < square.side {
            continue;
        }
        let (cx, cy) = square.center();
        let offset = nearest_lattice_offset((cx - s / 2.0, cy - sigma / 2.0));
        let shift = offset.scale_phi_pow(-n);
        let placed = seed.map_points(|p| p + shift);
        let tri = placed.triangle(-n);
        if !square.corners().iter().all(|&c| triangle_contains(&tri, c, 0.0)) {
            continue;
        }
        let mut p = Patch::from_seed(placed, -n);
        p.provenance.clip = Some(*square);
        p.window = Some(*square);
        return deflate_patch_with_cap(&p, n as u32, cap);
    }
    Err(Error::InvalidArgument(format!("square {square} is too large to cover")))
}
