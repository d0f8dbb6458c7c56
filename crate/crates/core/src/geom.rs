//! Float-side planar helpers: axis-aligned squares and triangle predicates.

use std::fmt;

use serde::{Deserialize, Serialize};

pub type Xy = (f64, f64);

/// Axis-aligned square `[x, x + side] x [y, y + side]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Square {
    pub x: f64,
    pub y: f64,
    pub side: f64,
}

impl Square {
    pub fn new(x: f64, y: f64, side: f64) -> Self {
        Square { x, y, side }
    }

    pub fn center(&self) -> Xy {
        (self.x + self.side / 2.0, self.y + self.side / 2.0)
    }

    pub fn corners(&self) -> [Xy; 4] {
        let (x0, y0, s) = (self.x, self.y, self.side);
        [(x0, y0), (x0 + s, y0), (x0 + s, y0 + s), (x0, y0 + s)]
    }

    /// Half-open membership `[x, x + side) x [y, y + side)`.
    pub fn contains_half_open(&self, p: Xy) -> bool {
        p.0 >= self.x && p.0 < self.x + self.side && p.1 >= self.y && p.1 < self.y + self.side
    }

    pub fn contains_closed(&self, p: Xy, tol: f64) -> bool {
        p.0 >= self.x - tol
            && p.0 <= self.x + self.side + tol
            && p.1 >= self.y - tol
            && p.1 <= self.y + self.side + tol
    }

    pub fn contains_square(&self, other: &Square) -> bool {
        other.x >= self.x
            && other.y >= self.y
            && other.x + other.side <= self.x + self.side
            && other.y + other.side <= self.y + self.side
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    /// The square grown by `d` on every side.
    pub fn dilate(&self, d: f64) -> Square {
        Square::new(self.x - d, self.y - d, self.side + 2.0 * d)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]x[{}, {}]", self.x, self.x + self.side, self.y, self.y + self.side)
    }
}

pub fn cross(o: Xy, a: Xy, b: Xy) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn triangle_area(t: &[Xy; 3]) -> f64 {
    cross(t[0], t[1], t[2]).abs() / 2.0
}

pub fn dist(a: Xy, b: Xy) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Point-in-triangle with a tolerance on the (area-normalised) barycentric
/// signs; boundary points count as inside.
pub fn triangle_contains(t: &[Xy; 3], p: Xy, tol: f64) -> bool {
    let area2 = cross(t[0], t[1], t[2]);
    if area2 == 0.0 {
        return false;
    }
    let s = area2.signum();
    let scale = area2.abs();
    (0..3).all(|k| s * cross(t[k], t[(k + 1) % 3], p) / scale >= -tol)
}

/// Whether the closed triangle and the closed square meet (separating axis
/// test over the two square axes and the three triangle edge normals).
pub fn triangle_meets_square(t: &[Xy; 3], sq: &Square, tol: f64) -> bool {
    let (x0, x1, y0, y1) = (sq.x, sq.x + sq.side, sq.y, sq.y + sq.side);
    let tx_min = t.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let tx_max = t.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let ty_min = t.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ty_max = t.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if tx_max < x0 - tol || tx_min > x1 + tol || ty_max < y0 - tol || ty_min > y1 + tol {
        return false;
    }
    let corners = sq.corners();
    for k in 0..3 {
        let a = t[k];
        let b = t[(k + 1) % 3];
        let n = (a.1 - b.1, b.0 - a.0);
        let len = n.0.hypot(n.1);
        let proj = |p: Xy| (p.0 * n.0 + p.1 * n.1) / len;
        let tri: Vec<f64> = t.iter().map(|&p| proj(p)).collect();
        let (lo_t, hi_t) = (
            tri.iter().cloned().fold(f64::INFINITY, f64::min),
            tri.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        );
        let sqp: Vec<f64> = corners.iter().map(|&p| proj(p)).collect();
        let (lo_s, hi_s) = (
            sqp.iter().cloned().fold(f64::INFINITY, f64::min),
            sqp.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        );
        if hi_s < lo_t - tol || lo_s > hi_t + tol {
            return false;
        }
    }
    true
}

pub fn triangle_inside_square(t: &[Xy; 3], sq: &Square, tol: f64) -> bool {
    t.iter().all(|&p| sq.contains_closed(p, tol))
}
