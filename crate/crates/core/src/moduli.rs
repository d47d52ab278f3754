//! Automorphism-group and moduli dimensions of weighted hypersurface families.
//!
//! `dim Aut P(w) = sum_i h^0(O(w_i)) - 1`: each coordinate may be replaced by
//! any weighted-homogeneous polynomial of its own degree, modulo the overall
//! scaling. The moduli dimension of degree-`d` hypersurfaces is then
//! `h^0(O(d)) - 1 - dim Aut P(w)`.
//!
//! The automorphism count has only been cross-checked on the three ambients
//! of the catalog and on ordinary projective space; other inputs are flagged
//! as extrapolated.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::hilbert::count_monomials;
use crate::model::WeightSystem;

/// Ambients on which the automorphism formula has been checked.
const CHECKED_AMBIENTS: [&[u64]; 3] = [&[1, 1, 2, 3, 8], &[1, 1, 1, 2, 6], &[1, 1, 1, 1, 5]];

pub fn aut_dimension(w: &WeightSystem) -> BigUint {
    let total: BigUint = w
        .weights()
        .iter()
        .map(|&wi| count_monomials(w, wi as i64))
        .sum();
    total - BigUint::one()
}

pub fn moduli_dimension(w: &WeightSystem, d: u64) -> BigInt {
    BigInt::from(count_monomials(w, d as i64)) - 1 - BigInt::from(aut_dimension(w))
}

/// Whether `aut_dimension` is outside the set of checked ambients.
pub fn is_extrapolated(w: &WeightSystem) -> bool {
    let ones = w.weights().iter().all(|&x| x == 1);
    !ones && !CHECKED_AMBIENTS.contains(&w.weights())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub weights: WeightSystem,
    pub degree: u64,
    #[serde(serialize_with = "crate::json::big_as_number")]
    pub sections: BigUint,
    #[serde(serialize_with = "crate::json::big_as_number")]
    pub aut_dim: BigUint,
    #[serde(serialize_with = "crate::json::big_as_number")]
    pub moduli_dim: BigInt,
    pub formula_extrapolated: bool,
}

pub fn moduli_report(w: &WeightSystem, d: u64) -> ModuliReport {
    ModuliReport {
        weights: w.clone(),
        degree: d,
        sections: count_monomials(w, d as i64),
        aut_dim: aut_dimension(w),
        moduli_dim: moduli_dimension(w, d),
        formula_extrapolated: is_extrapolated(w),
    }
}
