//! Exact numerical invariants of canonical 3-folds realized as weighted
//! hypersurfaces: weighted monomial counts and Hilbert series, Reid's
//! orbifold Riemann–Roch for plurigenera, basket search under plurigenus
//! constraints, moduli dimensions, and Noether-type volume bounds.
//!
//! All arithmetic is exact. Formulas are generic over [`scalar::Scalar`];
//! [`Rational`] (arbitrary precision) is the default parameter everywhere and
//! [`Rational64`] is available where machine-word speed matters.
//!
//! ```
//! use threefold::{reid_rr, Basket, NumericalData, Rational};
//! use threefold::scalar::Scalar;
//!
//! let data = NumericalData::new(Rational::from_frac(1, 3), -1, 2).unwrap();
//! let basket: Basket = "2x1/2,1x1/3".parse().unwrap();
//! let p2 = reid_rr::plurigenus(&data, &basket, 2).unwrap();
//! assert_eq!(p2, 4u32.into());
//! ```

pub mod basket_solver;
pub mod catalog;
pub mod checker;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod json;
pub mod model;
pub mod moduli;
pub mod noether;
pub mod reid_rr;
pub mod scalar;

pub use error::{Error, Result};
pub use model::{normalize_basket, Basket, BasketEntry, FamilyRecord, NumericalData, WeightSystem};

/// Arbitrary-precision rational; the default scalar.
pub type Rational = num_rational::BigRational;

/// Rational over `i64`. Overflow panics in debug builds.
pub type Rational64 = num_rational::Rational64;

pub type NumericalData64 = NumericalData<Rational64>;
pub type FamilyRecord64 = FamilyRecord<Rational64>;
pub type PlurigenusTable = reid_rr::PlurigenusTable<Rational>;
pub type PlurigenusTable64 = reid_rr::PlurigenusTable<Rational64>;
pub type Catalog = catalog::Catalog<Rational>;
