//! Half-kites and half-darts (Robinson triangles) and their deflation.
//!
//! Every half-tile stores its three vertices in a fixed role order:
//!
//! * `apex`: for a half-kite the kite's head (36° corner), for a half-dart
//!   the dart's reflex corner (108° corner);
//! * `axis_end`: the other end of the symmetry axis (kite tail, dart tip);
//! * `wing`: the off-axis corner.
//!
//! `apex`-`axis_end` is the cut along the tile's symmetry axis, so two
//! mirror halves of one kite or dart share exactly these two vertices.
//! A half-tile is `Left` when `wing` lies to the left of the directed axis.
//!
//! Deflation of a left half-kite `A`(apex) `C`(axis end) `B`(wing), with
//! split points `D = A + (C - A)/phi` and `E = B + (A - B)/phi`:
//!
//! ```text
//!                  B (wing)
//!                 /|\
//!                / | \
//!               /  |  \
//!              E   |   \
//!             / \ R|  L \
//!            /   \ |     \
//!           / dart\|      \
//!          A-------D-------C
//!       (apex)           (axis end)
//! ```
//!
//! * half-kite L `(B, D, C)` and half-kite R `(B, D, E)`, one full kite
//!   with its head on the parent's wing;
//! * half-dart L `(E, A, D)`, whose axis runs along the parent edge `AB`.
//!
//! Deflation of a left half-dart `A`(apex) `B`(tip) `C`(wing), with
//! `E = B + (C - B)/phi`:
//!
//! * half-kite R `(B, A, E)`, head on the dart tip, axis on the parent axis;
//! * half-dart L `(E, C, A)`, axis along the parent edge `BC`.
//!
//! Right parents produce the mirror image with every chirality flipped.
//! Children are exactly `phi` times smaller than the parent.

use serde::{Deserialize, Serialize};

use crate::geom::Xy;
use crate::golden::{embed, CycloPoint, Sin72Golden};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    HalfKite,
    HalfDart,
}

impl TileKind {
    pub fn label(self) -> &'static str {
        match self {
            TileKind::HalfKite => "half-kite",
            TileKind::HalfDart => "half-dart",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::Left => Chirality::Right,
            Chirality::Right => Chirality::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfTile {
    pub kind: TileKind,
    pub chirality: Chirality,
    pub apex: CycloPoint,
    pub axis_end: CycloPoint,
    pub wing: CycloPoint,
    pub generation: u32,
}

/// `a + (b - a)/phi`, the point at distance `|ab|/phi` from `a`.
fn golden_split(a: CycloPoint, b: CycloPoint) -> CycloPoint {
    a + (b - a).mul_inv_phi()
}

impl HalfTile {
    pub fn new(
        kind: TileKind,
        chirality: Chirality,
        apex: CycloPoint,
        axis_end: CycloPoint,
        wing: CycloPoint,
        generation: u32,
    ) -> Self {
        HalfTile { kind, chirality, apex, axis_end, wing, generation }
    }

    pub fn vertices(&self) -> [CycloPoint; 3] {
        [self.apex, self.axis_end, self.wing]
    }

    pub fn is_kite(&self) -> bool {
        self.kind == TileKind::HalfKite
    }

    /// Embedded vertices in role order.
    pub fn triangle(&self, scale_exp: i32) -> [Xy; 3] {
        self.vertices().map(|p| embed(p, scale_exp))
    }

    /// Exact twice-signed area in ring units, as `sin 72° (a + b phi)`.
    pub fn signed_area2(&self) -> Sin72Golden {
        let u = self.axis_end - self.apex;
        let v = self.wing - self.apex;
        u.cross(v)
    }

    /// Embedded area at the given patch scale.
    pub fn area(&self, scale_exp: i32) -> f64 {
        let s = crate::golden::phi_pow_f64(-scale_exp);
        self.signed_area2().to_f64().abs() / 2.0 * s * s
    }

    pub fn map_points(&self, f: impl Fn(CycloPoint) -> CycloPoint) -> HalfTile {
        HalfTile { apex: f(self.apex), axis_end: f(self.axis_end), wing: f(self.wing), ..*self }
    }

    /// Split into `phi`-times smaller children in the same coordinate frame.
    pub fn deflate(&self) -> Vec<HalfTile> {
        let g = self.generation + 1;
        let c = self.chirality;
        match self.kind {
            TileKind::HalfKite => {
                let (a, tail, b) = (self.apex, self.axis_end, self.wing);
                let d = golden_split(a, tail);
                let e = golden_split(b, a);
                vec![
                    HalfTile::new(TileKind::HalfKite, c, b, d, tail, g),
                    HalfTile::new(TileKind::HalfKite, c.flip(), b, d, e, g),
                    HalfTile::new(TileKind::HalfDart, c, e, a, d, g),
                ]
            }
            TileKind::HalfDart => {
                let (a, tip, wing) = (self.apex, self.axis_end, self.wing);
                let e = golden_split(tip, wing);
                vec![
                    HalfTile::new(TileKind::HalfKite, c.flip(), tip, a, e, g),
                    HalfTile::new(TileKind::HalfDart, c, e, wing, a, g),
                ]
            }
        }
    }

    /// Net point of the full kite or dart this half belongs to: the
    /// incenter of the full tile, which lies on the shared axis.
    ///
    /// For a kite it sits at distance `|axis|/phi` from the head, for a
    /// dart at distance `|axis|/phi` from the tip.
    pub fn full_tile_incenter(&self) -> CycloPoint {
        match self.kind {
            TileKind::HalfKite => golden_split(self.apex, self.axis_end),
            TileKind::HalfDart => golden_split(self.axis_end, self.apex),
        }
    }
}

/// Deflate one half-tile; see the module docs for the decomposition.
pub fn deflate_tile(t: &HalfTile) -> Vec<HalfTile> {
    t.deflate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{cross, dist, triangle_area, triangle_contains};
    use crate::golden::PHI;

    fn unit_kite() -> HalfTile {
        let apex = CycloPoint::ONE + CycloPoint::ZETA + CycloPoint::zeta_pow(2);
        HalfTile::new(TileKind::HalfKite, Chirality::Right, apex, CycloPoint::ONE, CycloPoint::ZERO, 0)
    }

    fn unit_dart() -> HalfTile {
        // apex 0, tip 1, wing at 108 degrees
        let wing = -CycloPoint::zeta_pow(4);
        HalfTile::new(TileKind::HalfDart, Chirality::Left, CycloPoint::ZERO, CycloPoint::ONE, wing, 0)
    }

    fn sides(t: &HalfTile) -> (f64, f64, f64) {
        let [a, b, c] = t.triangle(0);
        (dist(a, b), dist(a, c), dist(b, c))
    }

    fn orientation(t: &HalfTile) -> Chirality {
        let [a, b, c] = t.triangle(0);
        if cross(a, b, c) > 0.0 {
            Chirality::Left
        } else {
            Chirality::Right
        }
    }

    #[test]
    fn prototile_shapes() {
        let (axis, leg, base) = sides(&unit_kite());
        assert!((axis - PHI).abs() < 1e-12 && (leg - PHI).abs() < 1e-12 && (base - 1.0).abs() < 1e-12);
        let (axis, leg, base) = sides(&unit_dart());
        assert!((axis - 1.0).abs() < 1e-12 && (leg - 1.0).abs() < 1e-12 && (base - PHI).abs() < 1e-12);
        assert_eq!(orientation(&unit_kite()), Chirality::Right);
        assert_eq!(orientation(&unit_dart()), Chirality::Left);
    }

    #[test]
    fn child_counts() {
        let k = unit_kite().deflate();
        assert_eq!(k.iter().filter(|t| t.is_kite()).count(), 2);
        assert_eq!(k.len(), 3);
        let d = unit_dart().deflate();
        assert_eq!(d.iter().filter(|t| t.is_kite()).count(), 1);
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn children_have_scaled_shapes_and_consistent_chirality() {
        for parent in [unit_kite(), unit_dart(), unit_kite().map_points(|p| p.mul_zeta())] {
            for child in parent.deflate() {
                let (axis, leg, base) = sides(&child);
                let (ea, el, eb) = match child.kind {
                    TileKind::HalfKite => (1.0, 1.0, 1.0 / PHI),
                    TileKind::HalfDart => (1.0 / PHI, 1.0 / PHI, 1.0),
                };
                assert!((axis - ea).abs() < 1e-12, "{child:?}");
                assert!((leg - el).abs() < 1e-12);
                assert!((base - eb).abs() < 1e-12);
                assert_eq!(orientation(&child), child.chirality);
                assert_eq!(child.generation, parent.generation + 1);
            }
        }
    }

    #[test]
    fn children_tile_the_parent() {
        for parent in [unit_kite(), unit_dart()] {
            let tri = parent.triangle(0);
            let kids = parent.deflate();
            let sum: f64 = kids.iter().map(|t| t.area(0)).sum();
            assert!((sum - parent.area(0)).abs() < 1e-12);
            // exact area conservation
            let exact = kids
                .iter()
                .map(|t| {
                    let s = t.signed_area2();
                    if s.signum() == std::cmp::Ordering::Less {
                        Sin72Golden { a: -s.a, b: -s.b }
                    } else {
                        s
                    }
                })
                .fold(Sin72Golden::default(), |a, b| a + b);
            let p = parent.signed_area2();
            assert_eq!(exact.a.abs(), p.a.abs());
            assert_eq!(exact.b.abs(), p.b.abs());
            for k in &kids {
                for v in k.triangle(0) {
                    assert!(triangle_contains(&tri, v, 1e-9));
                }
                assert!(triangle_area(&k.triangle(0)) > 0.0);
            }
        }
    }

    #[test]
    fn incenters() {
        let kite = unit_kite();
        let [a, b, c] = kite.triangle(0);
        let i = embed(kite.full_tile_incenter(), 0);
        assert!((dist(i, a) - 1.0).abs() < 1e-12);
        // distance to the wing equals 1, to the tail 1/phi
        assert!((dist(i, c) - 1.0).abs() < 1e-12);
        assert!((dist(i, b) - 1.0 / PHI).abs() < 1e-12);
        let dart = unit_dart();
        let [r, tip, wing] = dart.triangle(0);
        let i = embed(dart.full_tile_incenter(), 0);
        assert!((dist(i, tip) - 1.0 / PHI).abs() < 1e-12);
        assert!((dist(i, r) - 1.0 / (PHI * PHI)).abs() < 1e-12);
        assert!((dist(i, wing) - (3.0 - PHI).sqrt()).abs() < 1e-12);
    }
}
