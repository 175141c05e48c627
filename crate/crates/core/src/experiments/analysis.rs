use std::fmt;

use serde::{Deserialize, Serialize};

use super::run::ExperimentReport;
use crate::error::{Error, Result};

/// `⌊m(m+1)/5⌋`, the observed dimension of a generic `N(X, Y)` for `4 ≤ m ≤ 10`.
/// Outside that range the value is computed but not meaningful.
pub fn expected_dimension(m: usize) -> usize {
    m * (m + 1) / 5
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimensions of the homogeneous components of degrees `1..=max_degree` of the
/// free Lie algebra on `gens` generators (Witt's formula).
pub fn witt_dims(gens: u32, max_degree: u32) -> Result<Vec<u128>> {
    if gens == 0 || max_degree == 0 {
        return Err(Error::Domain("generator count and degree must be positive".into()));
    }
    let overflow = || Error::Domain("Witt dimension overflows 128 bits".into());
    (1..=max_degree)
        .map(|d| {
            let mut sum: i128 = 0;
            for e in (1..=d).filter(|e| d % e == 0) {
                let mu = mobius(u64::from(e));
                if mu == 0 {
                    continue;
                }
                let power = i128::from(gens).checked_pow(d / e).ok_or_else(overflow)?;
                sum = sum
                    .checked_add(i128::from(mu) * power)
                    .ok_or_else(overflow)?;
            }
            Ok((sum / i128::from(d)) as u128)
        })
        .collect()
}

/// Dimension of the free nilpotent Lie algebra of class `class` on `gens` generators.
pub fn free_nilpotent_dim(gens: u32, class: u32) -> Result<u128> {
    Ok(witt_dims(gens, class)?.into_iter().sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceAnalysis {
    pub diffs: Vec<usize>,
    /// Differences start `2, 1, 2, 3` like the free two-generated algebra.
    pub prefix_matches_free: bool,
    /// Differences end `3, 2, 1` like the full upper-triangular algebra.
    pub suffix_matches_full: bool,
}

const FREE_PREFIX: [usize; 4] = [2, 1, 2, 3];
const FULL_SUFFIX: [usize; 3] = [3, 2, 1];

/// Successive differences of a strictly decreasing dimension sequence ending at 0.
pub fn difference_analysis(dims: &[usize]) -> Result<DifferenceAnalysis> {
    if dims.last() != Some(&0) {
        return Err(Error::Domain("dimension sequence must end at 0".into()));
    }
    if dims.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Domain("dimension sequence must strictly decrease".into()));
    }
    let diffs: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(DifferenceAnalysis {
        prefix_matches_free: diffs.starts_with(&FREE_PREFIX),
        suffix_matches_full: diffs.ends_with(&FULL_SUFFIX),
        diffs,
    })
}

/// One-directional rigidity test: a rigid nilpotent algebra has
/// characteristically nilpotent codimension-one ideals, so a sampled ideal
/// that is not characteristically nilpotent rules rigidity out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rigidity {
    NotRigid,
    Inconclusive,
}

impl fmt::Display for Rigidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rigidity::NotRigid => "not-rigid (Carles obstruction)",
            Rigidity::Inconclusive => "inconclusive",
        })
    }
}

pub fn rigidity_obstruction(report: &ExperimentReport) -> Rigidity {
    if report.results.codim1_ideal.der_nilpotent {
        Rigidity::Inconclusive
    } else {
        Rigidity::NotRigid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Lyndon words of length `n` over a `k`-letter alphabet, by brute force:
    /// a word is Lyndon iff it is strictly smaller than all its proper rotations.
    fn lyndon_count(k: u32, n: u32) -> u128 {
        let total = u64::from(k).pow(n);
        let mut count = 0;
        for code in 0..total {
            let mut w = Vec::with_capacity(n as usize);
            let mut c = code;
            for _ in 0..n {
                w.push(c % u64::from(k));
                c /= u64::from(k);
            }
            let lyndon = (1..n as usize).all(|r| {
                let rot: Vec<u64> = w[r..].iter().chain(&w[..r]).copied().collect();
                w < rot
            });
            if lyndon {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_dims(2, 5).unwrap(), vec![2, 1, 2, 3, 6]);
        assert_eq!(witt_dims(3, 1).unwrap(), vec![3]);
        assert_eq!(witt_dims(1, 3).unwrap(), vec![1, 0, 0]);
        assert_eq!(witt_dims(2, 6).unwrap()[5], 9);
        assert_eq!(free_nilpotent_dim(2, 5).unwrap(), 14);
        assert!(witt_dims(0, 3).is_err());
        assert!(witt_dims(2, 0).is_err());
    }

    #[test]
    fn witt_matches_lyndon_enumeration() {
        for (k, max) in [(2u32, 10u32), (3, 6), (4, 5)] {
            let witt = witt_dims(k, max).unwrap();
            for n in 1..=max {
                assert_eq!(witt[n as usize - 1], lyndon_count(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, mu) in (1..=12).zip(expected) {
            assert_eq!(mobius(n), mu, "n={n}");
        }
    }

    #[test]
    fn formula() {
        assert_eq!(expected_dimension(4), 4);
        assert_eq!(expected_dimension(7), 11);
        assert_eq!(expected_dimension(10), 22);
        // the reported sequence for m = 2..10 agrees on 4..=10 only
        let reported = [1, 3, 4, 6, 8, 11, 14, 18, 22];
        for (m, d) in (2..=10).zip(reported) {
            assert_eq!(expected_dimension(m) == d, m != 3, "m={m}");
        }
    }

    #[test]
    fn differences() {
        let a = difference_analysis(&[22, 20, 19, 17, 14, 10, 6, 3, 1, 0]).unwrap();
        assert_eq!(a.diffs, vec![2, 1, 2, 3, 4, 4, 3, 2, 1]);
        assert!(a.prefix_matches_free && a.suffix_matches_full);
        let a = difference_analysis(&[8, 6, 5, 3, 1, 0]).unwrap();
        assert_eq!(a.diffs, vec![2, 1, 2, 2, 1]);
        assert!(!a.prefix_matches_free && !a.suffix_matches_full);
        let a = difference_analysis(&[1, 0]).unwrap();
        assert_eq!(a.diffs, vec![1]);
        assert!(!a.prefix_matches_free && !a.suffix_matches_full);
        assert!(difference_analysis(&[3, 3, 0]).is_err());
        assert!(difference_analysis(&[1, 2, 0]).is_err());
        assert!(difference_analysis(&[3, 1]).is_err());
    }
}
