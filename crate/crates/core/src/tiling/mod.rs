//! Penrose kite/dart patches by repeated half-tile deflation.

mod format;
mod halftile;
mod patch;
mod substitution;

pub use format::{patch_to_string, read_patch, write_patch};
pub use halftile::{deflate_tile, Chirality, HalfTile, TileKind};
pub use patch::{
    canonical_seed, census, deflate_patch, deflate_patch_with_cap, generate_patch_covering,
    generate_patch_covering_with_cap, Patch, Provenance, DEFAULT_TILE_CAP,
};
pub use substitution::{
    generic_substitution_counts, substitution_counts, PerronData, SubstitutionRule, TileCensus,
};
