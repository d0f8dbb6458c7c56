//! Exact arithmetic in the golden field `Q(phi)`.
//!
//! Elements are stored as `a + b*phi` with rational `a`, `b`. Products are
//! reduced with `phi^2 = phi + 1`, so the representation is canonical and
//! equality is coefficient-wise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Floating-point golden ratio, correctly rounded.
#[allow(clippy::excessive_precision)]
pub const PHI: f64 = 1.618033988749894848204586834365638118;

/// An exact element `a + b*phi` of the golden field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenNum {
    a: BigRational,
    b: BigRational,
}

impl GoldenNum {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GoldenNum { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenNum::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// The rational number `num / den` embedded in the field.
    ///
    /// Panics if `den` is zero.
    pub fn ratio<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Self {
        GoldenNum::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        GoldenNum::new(q, BigRational::zero())
    }

    pub fn phi() -> Self {
        GoldenNum::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        GoldenNum::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GoldenNum::from_ints(1, 0)
    }

    /// Rational coefficient.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `phi`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate, mapping `phi` to `1 - phi`.
    pub fn conjugate(&self) -> Self {
        GoldenNum::new(&self.a + &self.b, -self.b.clone())
    }

    /// Field norm `x * conj(x) = a^2 + ab - b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(GoldenNum::new(c.a / &n, c.b / n))
    }

    /// Integer power; negative exponents invert. Panics on `0^k` with `k < 0`.
    pub fn pow(&self, exp: i32) -> Self {
        let base = if exp < 0 {
            self.recip().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = GoldenNum::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// Exact sign, computed without floating point.
    ///
    /// `a + b*phi = p + q*sqrt(5)` with `p = a + b/2`, `q = b/2`; when `p`
    /// and `q` disagree in sign the larger of `p^2` and `5 q^2` wins.
    pub fn signum(&self) -> Ordering {
        let two = BigRational::from_integer(2.into());
        let p = &self.a + &self.b / &two;
        let q = &self.b / two;
        sign_p_plus_q_sqrt5(&p, &q)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * PHI
    }
}

fn sign_p_plus_q_sqrt5(p: &BigRational, q: &BigRational) -> Ordering {
    let sp = p.signum();
    let sq = q.signum();
    let zero = BigRational::zero();
    match (sp.cmp(&zero), sq.cmp(&zero)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (s1, s2) if s1 == s2 => s1,
        (sp_ord, _) => {
            // p and q have opposite signs: |p| vs |q| sqrt5.
            let five = BigRational::from_integer(5.into());
            let lhs = p * p;
            let rhs = five * q * q;
            match lhs.cmp(&rhs) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => sp_ord,
                Ordering::Less => sp_ord.reverse(),
            }
        }
    }
}

/// Exact comparison of two golden-field elements.
pub fn golden_compare(x: &GoldenNum, y: &GoldenNum) -> Ordering {
    (x - y).signum()
}

/// Exact product of two golden-field elements.
pub fn golden_mul(x: &GoldenNum, y: &GoldenNum) -> GoldenNum {
    x * y
}

/// Sign of `a + b*phi` for machine integers.
pub(crate) fn sign_int_a_plus_b_phi(a: i128, b: i128) -> Ordering {
    // 2(a + b phi) = (2a + b) + b sqrt5
    sign_int_p_plus_q_sqrt5(2 * a + b, b)
}

/// Sign of `p + q*sqrt(5)` for machine integers.
pub(crate) fn sign_int_p_plus_q_sqrt5(p: i128, q: i128) -> Ordering {
    match (p.cmp(&0), q.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (s1, s2) if s1 == s2 => s1,
        (sp, _) => match (p * p).cmp(&(5 * q * q)) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => sp,
            Ordering::Less => sp.reverse(),
        },
    }
}

impl PartialOrd for GoldenNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNum {
    fn cmp(&self, other: &Self) -> Ordering {
        golden_compare(self, other)
    }
}

impl fmt::Debug for GoldenNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})φ", self.a, self.b)
    }
}

impl fmt::Display for GoldenNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<i64> for GoldenNum {
    fn from(v: i64) -> Self {
        GoldenNum::from_ints(v, 0)
    }
}

impl From<BigRational> for GoldenNum {
    fn from(q: BigRational) -> Self {
        GoldenNum::rational(q)
    }
}

impl<'a> Add<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    fn add(self, rhs: &GoldenNum) -> GoldenNum {
        GoldenNum::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    fn sub(self, rhs: &GoldenNum) -> GoldenNum {
        GoldenNum::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    fn mul(self, rhs: &GoldenNum) -> GoldenNum {
        // (a + b phi)(c + d phi) = ac + (ad + bc) phi + bd (phi + 1)
        let bd = &self.b * &rhs.b;
        GoldenNum::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a + bd,
        )
    }
}

impl<'a> Div<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    fn div(self, rhs: &GoldenNum) -> GoldenNum {
        self * &rhs.recip().expect("division by zero in Q(phi)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GoldenNum {
            type Output = GoldenNum;
            fn $m(self, rhs: GoldenNum) -> GoldenNum {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GoldenNum {
    type Output = GoldenNum;
    fn neg(self) -> GoldenNum {
        GoldenNum::new(-self.a, -self.b)
    }
}

impl Zero for GoldenNum {
    fn zero() -> Self {
        GoldenNum::zero()
    }
    fn is_zero(&self) -> bool {
        GoldenNum::is_zero(self)
    }
}

impl One for GoldenNum {
    fn one() -> Self {
        GoldenNum::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> GoldenNum {
        GoldenNum::from_ints(a, b)
    }

    #[test]
    fn phi_squared() {
        let phi = GoldenNum::phi();
        assert_eq!(golden_mul(&phi, &phi), g(1, 1));
        assert!((&(&phi * &phi) - &phi - GoldenNum::one()).is_zero());
    }

    #[test]
    fn expand_one_plus_phi_squared() {
        // 1 + 2phi + phi^2 = 2 + 3phi
        let x = g(1, 1);
        assert_eq!(&x * &x, g(2, 3));
        assert_eq!(&GoldenNum::one() * &x, x);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(golden_compare(&GoldenNum::phi(), &GoldenNum::one()), Ordering::Greater);
        // 2 - phi ~ 0.382
        assert_eq!(golden_compare(&GoldenNum::phi(), &g(2, -1)), Ordering::Greater);
        let x = g(-7, 3);
        assert_eq!(golden_compare(&x, &x), Ordering::Equal);
        // 8/5 < phi < 13/8
        assert!(GoldenNum::ratio(8, 5) < GoldenNum::phi());
        assert!(GoldenNum::ratio(13, 8) > GoldenNum::phi());
    }

    #[test]
    fn recip_and_powers() {
        let phi = GoldenNum::phi();
        assert_eq!(phi.recip().unwrap(), g(-1, 1));
        assert_eq!(phi.pow(3), g(1, 2));
        assert_eq!(&phi.pow(-5) * &phi.pow(5), GoldenNum::one());
        assert!(GoldenNum::zero().recip().is_none());
    }

    #[test]
    fn int_sign_helpers() {
        assert_eq!(sign_int_a_plus_b_phi(-1, 1), Ordering::Greater);
        assert_eq!(sign_int_a_plus_b_phi(2, -1), Ordering::Greater);
        assert_eq!(sign_int_a_plus_b_phi(-2, 1), Ordering::Less);
        assert_eq!(sign_int_p_plus_q_sqrt5(-5, 0), Ordering::Less);
        assert_eq!(sign_int_p_plus_q_sqrt5(0, 0), Ordering::Equal);
        assert_eq!(sign_int_p_plus_q_sqrt5(9, -4), Ordering::Greater); // 81 > 80
        assert_eq!(sign_int_p_plus_q_sqrt5(-9, 4), Ordering::Less);
    }

    fn arb_golden() -> impl Strategy<Value = GoldenNum> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(an, ad, bn, bd)| {
            GoldenNum::new(
                BigRational::new(an.into(), ad.into()),
                BigRational::new(bn.into(), bd.into()),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb_golden(), y in arb_golden(), z in arb_golden()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn compare_agrees_with_floats(x in arb_golden(), y in arb_golden()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(golden_compare(&x, &y), fx.partial_cmp(&fy).unwrap());
            }
        }

        #[test]
        fn division_inverts_multiplication(x in arb_golden(), y in arb_golden()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!(&(&x * &y) / &y, x);
        }
    }
}
