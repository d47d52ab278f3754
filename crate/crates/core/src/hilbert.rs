//! Weighted monomial counts and Hilbert series prefixes.
//!
//! The degree-`k` piece of the weighted polynomial ring on `w` has dimension
//! `h^0(P(w), O(k))`, the number of exponent tuples `s` with `sum s_i w_i = k`.
//! A complete intersection of degrees `d_1, .., d_c` has Hilbert series
//! `prod_j (1 - q^{d_j}) / prod_i (1 - q^{w_i})`, whose coefficients are read
//! off by inclusion-exclusion over subsets of the degrees.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::WeightSystem;
use crate::scalar::Scalar;

/// Default number of coefficients materialized beyond `c_0`.
pub const DEFAULT_TRUNCATION: usize = 64;

/// Coefficients `c_0 ..= c_N` of a Hilbert series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    coefficients: Vec<BigUint>,
}

impl SeriesPrefix {
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    /// Highest degree `N` present.
    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `c_k`, or `None` beyond the truncation.
    pub fn get(&self, k: usize) -> Option<&BigUint> {
        self.coefficients.get(k)
    }
}

/// `h^0(P(w), O(k))` for `0 <= k <= n`, by coin-change dynamic programming.
pub fn monomial_counts(w: &WeightSystem, n: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); n + 1];
    table[0] = BigUint::one();
    for &weight in w.weights() {
        let weight = weight as usize;
        for k in weight..=n {
            let (lo, hi) = table.split_at_mut(k);
            hi[0] += &lo[k - weight];
        }
    }
    table
}

/// Number of weighted monomials of degree `k`; zero for negative `k`.
pub fn count_monomials(w: &WeightSystem, k: i64) -> BigUint {
    match usize::try_from(k) {
        Ok(k) => monomial_counts(w, k).pop().expect("table has k+1 entries"),
        Err(_) => BigUint::zero(),
    }
}

/// Series of a hypersurface of degree `d`: `c_k = h^0(k) - h^0(k - d)`.
pub fn hypersurface_series(w: &WeightSystem, d: u64, n: usize) -> Result<SeriesPrefix> {
    ci_series(w, &[d], n)
}

/// Series of the complete intersection of the given degrees in `P(w)`,
/// truncated at degree `n`.
///
/// Fails with [`Error::NegativeCoefficient`] when some `c_k` is negative,
/// which means the data cannot be the Hilbert function of a graded ring.
pub fn ci_series(w: &WeightSystem, degrees: &[u64], n: usize) -> Result<SeriesPrefix> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::Precondition(format!(
            "degrees must be a nonempty list of positive integers, got {degrees:?}"
        )));
    }
    let counts = monomial_counts(w, n);
    // (shift, sign) for every subset of the numerator factors.
    let mut shifts: Vec<(u64, bool)> = vec![(0, true)];
    for &d in degrees {
        let extended: Vec<_> = shifts.iter().map(|&(s, pos)| (s + d, !pos)).collect();
        shifts.extend(extended);
    }
    let mut coefficients = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = BigInt::zero();
        for &(shift, positive) in &shifts {
            let Some(idx) = (k as u64).checked_sub(shift) else { continue };
            let term = BigInt::from(counts[idx as usize].clone());
            if positive {
                acc += term;
            } else {
                acc -= term;
            }
        }
        match acc.sign() {
            Sign::Minus => {
                return Err(Error::NegativeCoefficient { degree: k, value: acc.to_string() })
            }
            _ => coefficients.push(acc.magnitude().clone()),
        }
    }
    Ok(SeriesPrefix { coefficients })
}

/// `H^3 = d / prod w_i` for a 3-fold hypersurface of degree `d`.
pub fn degree_volume<Q: Scalar>(w: &WeightSystem, d: u64) -> Result<Q> {
    if w.len() != 5 {
        return Err(Error::AmbientDimension { expected: 4, found: w.len() });
    }
    ci_volume(w, &[d])
}

/// `H^3 = prod d_j / prod w_i` for a 3-fold complete intersection.
pub fn ci_volume<Q: Scalar>(w: &WeightSystem, degrees: &[u64]) -> Result<Q> {
    if w.len() != degrees.len() + 4 {
        return Err(Error::AmbientDimension { expected: degrees.len() + 3, found: w.len() });
    }
    let num: u64 = degrees.iter().product();
    let to_i64 = |x: u64| {
        i64::try_from(x).map_err(|_| Error::Precondition(format!("{x} exceeds i64 range")))
    };
    Ok(Q::from_frac(to_i64(num)?, to_i64(w.product())?))
}
