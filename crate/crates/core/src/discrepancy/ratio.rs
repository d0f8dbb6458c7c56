//! The map `f(x) = (2x + 1)/(x + 1)` and exact kite/dart ratio traces.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::golden::GoldenNum;
use crate::tiling::{substitution_counts, TileCensus};

/// `(2x + 1)/(x + 1)`, exactly.
pub fn ratio_map(x: &GoldenNum) -> Result<GoldenNum> {
    if x.signum() == std::cmp::Ordering::Less {
        return Err(Error::InvalidArgument(format!("ratio map needs x >= 0, got {x}")));
    }
    let one = GoldenNum::one();
    let two = GoldenNum::from(2);
    let num = &(&two * x) + &one;
    let den = x + &one;
    Ok(&num / &den)
}

/// One entry of a ratio trace: `x_n = K_n / D_n` and its distance to phi.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioStep {
    pub n: u32,
    pub k: BigUint,
    pub d: BigUint,
    pub x: GoldenNum,
    /// `|x_n - phi|`, exact.
    pub gap: GoldenNum,
    pub bound: GoldenNum,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioTrace {
    pub steps: Vec<RatioStep>,
}

impl RatioTrace {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

fn rational(k: &BigUint, d: &BigUint) -> GoldenNum {
    GoldenNum::rational(BigRational::new(BigInt::from(k.clone()), BigInt::from(d.clone())))
}

fn gap_to_phi(x: &GoldenNum) -> GoldenNum {
    (x - &GoldenNum::phi()).abs()
}

/// `x0, f(x0), ..., f^n(x0)` with the check `|f^k(x0) - phi| <= 4^-k`.
///
/// For `x0 = p/q` the iterates are `K_k/D_k` under the half-tile recursion
/// started at `(p, q)`, which is how `k` and `d` are filled in.
pub fn iterate_ratio_map(x0: &BigRational, n: u32) -> Result<RatioTrace> {
    if x0.is_negative() {
        return Err(Error::InvalidArgument(format!("x0 must be >= 0, got {x0}")));
    }
    let mut c = TileCensus::new(
        x0.numer().magnitude().clone(),
        x0.denom().magnitude().clone(),
    );
    let quarter = GoldenNum::ratio(1, 4);
    let mut bound = GoldenNum::one();
    let mut steps = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let x = rational(&c.kites, &c.darts);
        let gap = gap_to_phi(&x);
        let holds = gap <= bound;
        steps.push(RatioStep { n: k, k: c.kites.clone(), d: c.darts.clone(), x, gap, bound: bound.clone(), holds });
        c = c.step();
        bound = &bound * &quarter;
    }
    Ok(RatioTrace { steps })
}

/// Exact check of `|K_n/D_n - phi| <= 2^(1-n)` for `3 <= n <= n_max`, where
/// `seed` is the census at `n = 1`.
pub fn check_prop21(seed: &TileCensus, n_max: u32) -> Result<RatioTrace> {
    if seed.kites.is_zero() || seed.darts.is_zero() {
        return Err(Error::InvalidArgument(format!("seed needs K >= 1 and D >= 1, got {seed}")));
    }
    if n_max < 3 {
        return Err(Error::InvalidArgument(format!("n_max must be >= 3, got {n_max}")));
    }
    let half = GoldenNum::ratio(1, 2);
    let mut c = substitution_counts(seed, 2);
    let mut bound = GoldenNum::ratio(1, 4);
    let mut steps = Vec::new();
    for n in 3..=n_max {
        let x = rational(&c.kites, &c.darts);
        let gap = gap_to_phi(&x);
        let holds = gap <= bound;
        steps.push(RatioStep { n, k: c.kites.clone(), d: c.darts.clone(), x, gap, bound: bound.clone(), holds });
        c = c.step();
        bound = &bound * &half;
    }
    Ok(RatioTrace { steps })
}

/// Compact float view of a trace step, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub n: u32,
    pub k: String,
    pub d: String,
    pub gap: f64,
    pub bound: f64,
    pub holds: bool,
}

impl From<&RatioStep> for RatioRow {
    fn from(s: &RatioStep) -> Self {
        RatioRow {
            n: s.n,
            k: s.k.to_string(),
            d: s.d.to_string(),
            gap: s.gap.to_f64(),
            bound: s.bound.to_f64(),
            holds: s.holds,
        }
    }
}

/// `true` iff `|f(x) - f(y)| <= |x - y|/4`, exactly.
pub fn contraction_holds(x: &BigRational, y: &BigRational) -> bool {
    let f = |v: &BigRational| (v * BigInt::from(2) + BigRational::one()) / (v + BigRational::one());
    let lhs = (f(x) - f(y)).abs();
    let rhs = (x - y).abs() / BigInt::from(4);
    lhs <= rhs
}
