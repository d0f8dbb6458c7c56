//! Combinatorial side of deflation: half-tile censuses and generic
//! substitution matrices.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numbers of half-kites and half-darts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TileCensus {
    pub kites: BigUint,
    pub darts: BigUint,
}

impl TileCensus {
    pub fn new(kites: impl Into<BigUint>, darts: impl Into<BigUint>) -> Self {
        TileCensus { kites: kites.into(), darts: darts.into() }
    }

    pub fn total(&self) -> BigUint {
        &self.kites + &self.darts
    }

    /// One deflation round: `K' = 2K + D`, `D' = K + D`.
    pub fn step(&self) -> TileCensus {
        TileCensus {
            kites: &self.kites * 2u32 + &self.darts,
            darts: &self.kites + &self.darts,
        }
    }

    pub fn total_u128(&self) -> u128 {
        self.total().to_u128().unwrap_or(u128::MAX)
    }

    pub fn kites_u64(&self) -> u64 {
        self.kites.to_u64().unwrap_or(u64::MAX)
    }

    pub fn darts_u64(&self) -> u64 {
        self.darts.to_u64().unwrap_or(u64::MAX)
    }
}

impl std::ops::Add for &TileCensus {
    type Output = TileCensus;
    fn add(self, rhs: &TileCensus) -> TileCensus {
        TileCensus { kites: &self.kites + &rhs.kites, darts: &self.darts + &rhs.darts }
    }
}

impl fmt::Display for TileCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K={} D={}", self.kites, self.darts)
    }
}

/// Apply the half-tile recursion `n` times.
pub fn substitution_counts(seed: &TileCensus, n: u32) -> TileCensus {
    (0..n).fold(seed.clone(), |c, _| c.step())
}

/// A substitution rule on `k` prototiles.
///
/// `matrix[i][j]` is the number of type-`i` children of a type-`j` parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionRule {
    pub prototiles: Vec<String>,
    pub matrix: Vec<Vec<u64>>,
}

/// Dominant eigenpair estimate from power iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct PerronData {
    pub eigenvalue: f64,
    /// Normalised to unit sum.
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
}

impl SubstitutionRule {
    pub fn new(prototiles: Vec<String>, matrix: Vec<Vec<u64>>) -> Result<Self> {
        let k = prototiles.len();
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return Err(Error::Dimension(format!(
                "{k} prototiles need a {k}x{k} matrix"
            )));
        }
        Ok(SubstitutionRule { prototiles, matrix })
    }

    /// The half-kite / half-dart rule `[[2, 1], [1, 1]]`.
    pub fn penrose() -> Self {
        SubstitutionRule {
            prototiles: vec!["half-kite".into(), "half-dart".into()],
            matrix: vec![vec![2, 1], vec![1, 1]],
        }
    }

    pub fn dim(&self) -> usize {
        self.prototiles.len()
    }

    /// Whether some power of the matrix is strictly positive.
    pub fn is_primitive(&self) -> bool {
        let k = self.dim();
        if k == 0 {
            return false;
        }
        let mut pattern: Vec<Vec<bool>> =
            self.matrix.iter().map(|r| r.iter().map(|&v| v > 0).collect()).collect();
        let base = pattern.clone();
        // Wielandt: primitive iff M^((k-1)^2 + 1) > 0
        for _ in 0..(k - 1) * (k - 1) {
            pattern = (0..k)
                .map(|i| (0..k).map(|j| (0..k).any(|l| pattern[i][l] && base[l][j])).collect())
                .collect();
        }
        pattern.iter().all(|r| r.iter().all(|&b| b))
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(&m, x)| BigInt::from(m) * x).sum())
            .collect()
    }

    /// Power iteration on the float matrix.
    pub fn perron(&self) -> PerronData {
        let k = self.dim();
        let mut v = vec![1.0 / k as f64; k];
        let mut lambda = 0.0;
        let mut iterations = 0;
        for it in 1..=10_000 {
            let w: Vec<f64> = self
                .matrix
                .iter()
                .map(|row| row.iter().zip(&v).map(|(&m, x)| m as f64 * x).sum())
                .collect();
            let s: f64 = w.iter().sum();
            let next: Vec<f64> = w.iter().map(|x| x / s).collect();
            let delta = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            v = next;
            lambda = s;
            iterations = it;
            if delta < 1e-16 && it > 2 {
                break;
            }
        }
        PerronData { eigenvalue: lambda, eigenvector: v, iterations }
    }
}

/// `M^n * seed`, exactly.
pub fn generic_substitution_counts(
    rule: &SubstitutionRule,
    seed: &[BigInt],
    n: u32,
) -> Result<Vec<BigInt>> {
    if seed.len() != rule.dim() {
        return Err(Error::Dimension(format!(
            "seed has {} entries, rule has {} prototiles",
            seed.len(),
            rule.dim()
        )));
    }
    Ok((0..n).fold(seed.to_vec(), |v, _| rule.apply(&v)))
}

impl TileCensus {
    pub fn is_empty(&self) -> bool {
        self.kites.is_zero() && self.darts.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::PHI;

    fn c(k: u32, d: u32) -> TileCensus {
        TileCensus::new(k, d)
    }

    // Independent oracle: the closed form K_n = F(2n+1), D_n = F(2n) from a
    // single half-kite, with F the Fibonacci numbers.
    fn fib(n: u32) -> u64 {
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..n {
            let t = a + b;
            a = b;
            b = t;
        }
        a
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(substitution_counts(&c(1, 0), 1), c(2, 1));
        assert_eq!(substitution_counts(&c(1, 1), 1), c(3, 2));
        assert_eq!(substitution_counts(&c(1, 0), 2), c(5, 3));
        assert_eq!(substitution_counts(&c(1, 0), 3), c(13, 8));
        assert_eq!(substitution_counts(&c(0, 1), 3), c(8, 5));
        assert_eq!(substitution_counts(&c(7, 4), 0), c(7, 4));
    }

    #[test]
    fn fibonacci_closed_form() {
        for n in 0..40 {
            let got = substitution_counts(&c(1, 0), n);
            assert_eq!(got, TileCensus::new(fib(2 * n + 1), fib(2 * n)));
        }
    }

    #[test]
    fn generic_matches_recursion() {
        let rule = SubstitutionRule::penrose();
        let seed = vec![BigInt::from(1), BigInt::from(0)];
        assert_eq!(
            generic_substitution_counts(&rule, &seed, 1).unwrap(),
            vec![BigInt::from(2), BigInt::from(1)]
        );
        assert_eq!(generic_substitution_counts(&rule, &seed, 0).unwrap(), seed);
        for n in 0..20 {
            let g = generic_substitution_counts(&rule, &seed, n).unwrap();
            let r = substitution_counts(&c(1, 0), n);
            assert_eq!(g[0], BigInt::from(r.kites));
            assert_eq!(g[1], BigInt::from(r.darts));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let rule = SubstitutionRule::penrose();
        assert!(generic_substitution_counts(&rule, &[BigInt::from(1)], 3).is_err());
        assert!(SubstitutionRule::new(vec!["a".into()], vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn penrose_perron_data() {
        let rule = SubstitutionRule::penrose();
        assert!(rule.is_primitive());
        let p = rule.perron();
        // roots of x^2 - 3x + 1
        let lambda = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((p.eigenvalue - lambda).abs() < 1e-10);
        assert!((p.eigenvalue - PHI * PHI).abs() < 1e-10);
        assert!((p.eigenvector[0] / p.eigenvector[1] - PHI).abs() < 1e-10);
    }

    #[test]
    fn primitivity() {
        let ok = SubstitutionRule::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(ok.is_primitive());
        let perm = SubstitutionRule::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!perm.is_primitive());
        assert!(!SubstitutionRule::new(vec![], vec![]).unwrap().is_primitive());
    }
}
