//! Planar points in the cyclotomic ring `Z[zeta]`, `zeta = exp(2 pi i / 5)`.
//!
//! A point is stored by its integer coefficients in the basis
//! `{1, zeta, zeta^2, zeta^3}`; `zeta^4` is eliminated with
//! `1 + zeta + zeta^2 + zeta^3 + zeta^4 = 0`. Both `phi = -zeta^2 - zeta^3`
//! and `1/phi = zeta + zeta^4` are ring elements, so golden scalings never
//! leave the ring.
//!
//! The physical scale of a whole patch is carried separately as a power
//! of `phi` (see [`embed`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::field::{sign_int_a_plus_b_phi, sign_int_p_plus_q_sqrt5, GoldenNum, PHI};

// cos / sin of 72 k degrees, written to 36 digits and rounded once by the
// compiler.
#[allow(clippy::excessive_precision)]
const COS: [f64; 4] = [
    1.0,
    0.309016994374947424102293417182819059,
    -0.809016994374947424102293417182819059,
    -0.809016994374947424102293417182819059,
];
#[allow(clippy::excessive_precision)]
const SIN: [f64; 4] = [
    0.0,
    0.951056516295153572116439333379382143,
    0.587785252292473129168705954639072769,
    -0.587785252292473129168705954639072769,
];

/// `sin 72°`, the common factor of every exact cross product.
#[allow(clippy::excessive_precision)]
pub const SIN_72: f64 = 0.951056516295153572116439333379382143;

/// An exact point `c0 + c1 zeta + c2 zeta^2 + c3 zeta^3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct CycloPoint {
    pub c: [i64; 4],
}

/// A real number of the form `sin 72° * (a + b phi)` with integer `a`, `b`.
///
/// Exact cross products of ring points (twice the signed triangle area)
/// land in this set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Sin72Golden {
    pub a: i128,
    pub b: i128,
}

impl Sin72Golden {
    pub fn to_f64(self) -> f64 {
        SIN_72 * (self.a as f64 + self.b as f64 * PHI)
    }

    /// The golden-field factor `a + b phi`.
    pub fn golden(self) -> GoldenNum {
        GoldenNum::from_ints(self.a as i64, self.b as i64)
    }

    pub fn signum(self) -> Ordering {
        sign_int_a_plus_b_phi(self.a, self.b)
    }
}

impl Add for Sin72Golden {
    type Output = Sin72Golden;
    fn add(self, rhs: Sin72Golden) -> Sin72Golden {
        Sin72Golden { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl CycloPoint {
    pub const ZERO: CycloPoint = CycloPoint { c: [0, 0, 0, 0] };
    pub const ONE: CycloPoint = CycloPoint { c: [1, 0, 0, 0] };
    pub const ZETA: CycloPoint = CycloPoint { c: [0, 1, 0, 0] };
    /// `phi = -zeta^2 - zeta^3`
    pub const PHI: CycloPoint = CycloPoint { c: [0, 0, -1, -1] };
    /// `1/phi = zeta + zeta^4 = -1 - zeta^2 - zeta^3`
    pub const INV_PHI: CycloPoint = CycloPoint { c: [-1, 0, -1, -1] };

    pub const fn new(c: [i64; 4]) -> Self {
        CycloPoint { c }
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let mut p = CycloPoint::ONE;
        for _ in 0..k.rem_euclid(5) {
            p = p.mul_zeta();
        }
        p
    }

    /// The integer `n` as a ring point.
    pub fn from_int(n: i64) -> Self {
        CycloPoint::new([n, 0, 0, 0])
    }

    /// Rotation by 72 degrees.
    pub fn mul_zeta(self) -> Self {
        let [c0, c1, c2, c3] = self.c;
        CycloPoint::new([-c3, c0 - c3, c1 - c3, c2 - c3])
    }

    /// Ring product.
    pub fn mul(self, rhs: CycloPoint) -> Self {
        // convolution over zeta^0..zeta^6, then fold back
        let mut full = [0i64; 7];
        for (i, &x) in self.c.iter().enumerate() {
            for (j, &y) in rhs.c.iter().enumerate() {
                full[i + j] += x * y;
            }
        }
        // zeta^5 = 1, zeta^6 = zeta
        let mut five = [full[0] + full[5], full[1] + full[6], full[2], full[3], full[4]];
        // zeta^4 = -(1 + zeta + zeta^2 + zeta^3)
        let z4 = five[4];
        for c in five.iter_mut().take(4) {
            *c -= z4;
        }
        CycloPoint::new([five[0], five[1], five[2], five[3]])
    }

    pub fn scale_int(self, k: i64) -> Self {
        CycloPoint::new(self.c.map(|v| v * k))
    }

    pub fn mul_phi(self) -> Self {
        self.mul(CycloPoint::PHI)
    }

    /// Exact scaling by `1/phi`.
    pub fn mul_inv_phi(self) -> Self {
        self.mul(CycloPoint::INV_PHI)
    }

    /// Exact scaling by `phi^k`.
    pub fn scale_phi_pow(self, k: i32) -> Self {
        let step = if k >= 0 { CycloPoint::PHI } else { CycloPoint::INV_PHI };
        let mut p = self;
        for _ in 0..k.unsigned_abs() {
            p = p.mul(step);
        }
        p
    }

    /// Exact cross product `Im(conj(self) * other)`.
    pub fn cross(self, other: CycloPoint) -> Sin72Golden {
        // sin(72 d) for d = j - i mod 5 is 0, s, s/phi, -s/phi, -s with
        // s = sin 72 and 1/phi = phi - 1.
        let mut by_diff = [0i128; 5];
        for (i, &u) in self.c.iter().enumerate() {
            for (j, &v) in other.c.iter().enumerate() {
                by_diff[(j + 5 - i) % 5] += u as i128 * v as i128;
            }
        }
        let s1 = by_diff[1] - by_diff[4];
        let s2 = by_diff[2] - by_diff[3];
        Sin72Golden { a: s1 - s2, b: s2 }
    }

    /// Unscaled embedding into the real plane.
    pub fn to_xy(self) -> (f64, f64) {
        let mut x = 0.0;
        let mut y = 0.0;
        for k in 0..4 {
            let c = self.c[k] as f64;
            x += c * COS[k];
            y += c * SIN[k];
        }
        (x, y)
    }

    /// Exact `(floor(x), floor(y))` of the unscaled embedding.
    pub fn floor_xy(self) -> (i64, i64) {
        let [c0, c1, c2, c3] = self.c;
        let (fx, fy) = self.to_xy();

        // 4x = p + q sqrt5
        let p = 4 * c0 as i128 - c1 as i128 - c2 as i128 - c3 as i128;
        let q = c1 as i128 - c2 as i128 - c3 as i128;
        let mut kx = fx.floor() as i128;
        while sign_int_p_plus_q_sqrt5(p - 4 * kx, q) == Ordering::Less {
            kx -= 1;
        }
        while sign_int_p_plus_q_sqrt5(p - 4 * (kx + 1), q) != Ordering::Less {
            kx += 1;
        }

        // y = sin72 (ga + gb phi)
        let ga = c1 as i128 - c2 as i128 + c3 as i128;
        let gb = c2 as i128 - c3 as i128;
        let mut ky = fy.floor() as i128;
        while cmp_sin72_golden_int(ga, gb, ky) == Ordering::Less {
            ky -= 1;
        }
        while cmp_sin72_golden_int(ga, gb, ky + 1) != Ordering::Less {
            ky += 1;
        }
        (kx as i64, ky as i64)
    }

    pub fn is_zero(self) -> bool {
        self.c == [0; 4]
    }

    /// Complex conjugate (mirror in the real axis): `zeta^k -> zeta^(5-k)`.
    pub fn conj(self) -> Self {
        let [c0, c1, c2, c3] = self.c;
        CycloPoint::from_int(c0)
            + CycloPoint::zeta_pow(4).scale_int(c1)
            + CycloPoint::zeta_pow(3).scale_int(c2)
            + CycloPoint::zeta_pow(2).scale_int(c3)
    }
}

/// Compare `sin72 * (ga + gb phi)` with the integer `k`.
fn cmp_sin72_golden_int(ga: i128, gb: i128, k: i128) -> Ordering {
    let sg = sign_int_a_plus_b_phi(ga, gb);
    match (sg, k.cmp(&0)) {
        (Ordering::Equal, sk) => sk.reverse(),
        (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Less) => Ordering::Greater,
        (Ordering::Less, Ordering::Greater) => Ordering::Less,
        (s, _) => {
            // same sign: compare squares, sin^2 72 = (2 + phi) / 4
            let a2 = ga * ga + gb * gb;
            let b2 = 2 * ga * gb + gb * gb;
            let la = 2 * a2 + b2 - 4 * k * k;
            let lb = a2 + 3 * b2;
            let mag = sign_int_a_plus_b_phi(la, lb);
            if s == Ordering::Greater {
                mag
            } else {
                mag.reverse()
            }
        }
    }
}

/// Physical coordinates of `p` in a patch whose points carry the shared
/// scale `phi^(-scale_exp)`.
pub fn embed(p: CycloPoint, scale_exp: i32) -> (f64, f64) {
    let (x, y) = p.to_xy();
    let s = phi_pow_f64(-scale_exp);
    (x * s, y * s)
}

/// Exact scaling by `1/phi`.
pub fn cyclo_scale_inv_phi(p: CycloPoint) -> CycloPoint {
    p.mul_inv_phi()
}

/// `phi^k` by repeated multiplication, for reproducible results.
pub fn phi_pow_f64(k: i32) -> f64 {
    let base = if k >= 0 { PHI } else { 1.0 / PHI };
    let mut acc = 1.0;
    for _ in 0..k.unsigned_abs() {
        acc *= base;
    }
    acc
}

impl fmt::Debug for CycloPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{:?}", self.c)
    }
}

impl Add for CycloPoint {
    type Output = CycloPoint;
    fn add(self, rhs: CycloPoint) -> CycloPoint {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        CycloPoint::new(c)
    }
}

impl Sub for CycloPoint {
    type Output = CycloPoint;
    fn sub(self, rhs: CycloPoint) -> CycloPoint {
        self + (-rhs)
    }
}

impl Neg for CycloPoint {
    type Output = CycloPoint;
    fn neg(self) -> CycloPoint {
        CycloPoint::new(self.c.map(|v| -v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
        (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol
    }

    fn arb_point() -> impl Strategy<Value = CycloPoint> {
        prop::array::uniform4(-200i64..200).prop_map(CycloPoint::new)
    }

    #[test]
    fn zeta_powers_reduce() {
        // zeta^4 = -1 - zeta - zeta^2 - zeta^3
        assert_eq!(CycloPoint::zeta_pow(4).c, [-1, -1, -1, -1]);
        assert_eq!(CycloPoint::zeta_pow(5), CycloPoint::ONE);
        assert_eq!(CycloPoint::zeta_pow(-1), CycloPoint::zeta_pow(4));
        let sum = (0..5).fold(CycloPoint::ZERO, |acc, k| acc + CycloPoint::zeta_pow(k));
        assert!(sum.is_zero());
    }

    #[test]
    fn golden_units() {
        // 1 + zeta + zeta^4 = phi
        let phi = CycloPoint::ONE + CycloPoint::ZETA + CycloPoint::zeta_pow(4);
        assert_eq!(phi, CycloPoint::PHI);
        assert_eq!(CycloPoint::PHI.mul(CycloPoint::INV_PHI), CycloPoint::ONE);
        // phi^2 = phi + 1
        assert_eq!(CycloPoint::PHI.mul(CycloPoint::PHI), CycloPoint::PHI + CycloPoint::ONE);
        assert_eq!(cyclo_scale_inv_phi(CycloPoint::ZERO), CycloPoint::ZERO);
        assert_eq!(cyclo_scale_inv_phi(CycloPoint::ONE).c, [-1, 0, -1, -1]);
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embed(CycloPoint::ONE, 0), (1.0, 0.0));
        let z = embed(CycloPoint::ZETA, 0);
        assert!(close(z, (0.309016994374947, 0.951056516295154), 1e-12));
        let (px, _) = embed(CycloPoint::PHI, 0);
        assert!((px - PHI).abs() < 1e-15);
        let (x, y) = embed(CycloPoint::ONE, 2);
        assert!((x - 1.0 / (PHI * PHI)).abs() < 1e-15 && y == 0.0);
    }

    #[test]
    fn floor_handles_exact_lattice_lines() {
        // 3 = 3 * zeta^0 sits exactly on an integer line of both axes.
        assert_eq!(CycloPoint::from_int(3).floor_xy(), (3, 0));
        assert_eq!(CycloPoint::from_int(-3).floor_xy(), (-3, 0));
        assert_eq!(CycloPoint::PHI.floor_xy(), (1, 0));
        // zeta - zeta^4 is purely imaginary
        let imag = CycloPoint::ZETA - CycloPoint::zeta_pow(4);
        let (x, y) = imag.to_xy();
        assert!(x.abs() < 1e-15 && (y - 2.0 * SIN_72).abs() < 1e-15);
        assert_eq!(imag.floor_xy(), (0, 1));
        assert_eq!((-imag).floor_xy(), (0, -2));
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_point(), q in arb_point(), r in arb_point()) {
            prop_assert_eq!(p.mul(q).mul(r), p.mul(q.mul(r)));
            prop_assert_eq!(p.mul(q), q.mul(p));
            prop_assert_eq!(p.mul(q + r), p.mul(q) + p.mul(r));
            prop_assert_eq!(p.mul_zeta(), p.mul(CycloPoint::ZETA));
        }

        #[test]
        fn inverse_phi_roundtrip(p in arb_point()) {
            prop_assert_eq!(p.mul_inv_phi().mul_phi(), p);
            prop_assert_eq!(p.mul_phi().mul_inv_phi(), p);
            let twice = p.mul_inv_phi().mul_inv_phi();
            let (x, y) = twice.to_xy();
            let (ox, oy) = p.to_xy();
            prop_assert!((x * PHI * PHI - ox).abs() <= 1e-12 * (1.0 + ox.abs()) * 10.0);
            prop_assert!((y * PHI * PHI - oy).abs() <= 1e-12 * (1.0 + oy.abs()) * 10.0);
        }

        #[test]
        fn embedding_is_additive_and_rotation_covariant(p in arb_point(), q in arb_point()) {
            let (px, py) = p.to_xy();
            let (qx, qy) = q.to_xy();
            prop_assert!(close((p + q).to_xy(), (px + qx, py + qy), 1e-12));
            let (c, s) = (COS[1], SIN[1]);
            let rot = (c * px - s * py, s * px + c * py);
            prop_assert!(close(p.mul_zeta().to_xy(), rot, 1e-12));
        }

        #[test]
        fn cross_matches_float(p in arb_point(), q in arb_point()) {
            let (px, py) = p.to_xy();
            let (qx, qy) = q.to_xy();
            let f = px * qy - py * qx;
            let e = p.cross(q).to_f64();
            prop_assert!((f - e).abs() <= 1e-9 * (1.0 + f.abs()));
        }

        #[test]
        fn floor_matches_float_away_from_integers(p in arb_point()) {
            let (x, y) = p.to_xy();
            let (fx, fy) = p.floor_xy();
            if (x - x.round()).abs() > 1e-9 {
                prop_assert_eq!(fx, x.floor() as i64);
            }
            if (y - y.round()).abs() > 1e-9 {
                prop_assert_eq!(fy, y.floor() as i64);
            }
        }
    }
}
