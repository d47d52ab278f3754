//! Volume lower bounds for minimal 3-folds of general type with `p_g >= 5`,
//! split by the behaviour of the canonical system, and their comparison with
//! the expected Noether line `K^3 >= (4/3) p_g - 10/3`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::Rational;

/// Which geometric case a bound applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PencilCase {
    /// `|K_X|` is not composed with a pencil of (1,2)-surfaces.
    #[serde(rename = "non_12_pencil")]
    Non12Pencil,
    /// `|K_X|` is composed with an irrational pencil.
    #[serde(rename = "irrational_pencil")]
    IrrationalPencil,
    /// `|K_X|` is composed with a rational pencil of (1,2)-surfaces.
    #[serde(rename = "rational_12_pencil")]
    Rational12Pencil,
}

impl PencilCase {
    pub const ALL: [PencilCase; 3] =
        [PencilCase::Non12Pencil, PencilCase::IrrationalPencil, PencilCase::Rational12Pencil];

    pub fn key(self) -> &'static str {
        match self {
            PencilCase::Non12Pencil => "non_12_pencil",
            PencilCase::IrrationalPencil => "irrational_pencil",
            PencilCase::Rational12Pencil => "rational_12_pencil",
        }
    }

    pub fn bound<Q: Scalar>(self, pg: u64) -> Result<Q> {
        match self {
            PencilCase::Non12Pencil => bound_non12pencil(pg),
            PencilCase::IrrationalPencil => bound_irrational_pencil(pg),
            PencilCase::Rational12Pencil => bound_rational_12pencil(pg),
        }
    }
}

impl fmt::Display for PencilCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PencilCase::Non12Pencil => "not a (1,2)-pencil",
            PencilCase::IrrationalPencil => "irrational pencil",
            PencilCase::Rational12Pencil => "rational (1,2)-pencil",
        })
    }
}

fn check_pg(pg: u64) -> Result<i64> {
    if pg < 5 {
        return Err(Error::Precondition(format!("bounds need p_g >= 5, got {pg}")));
    }
    i64::try_from(pg).map_err(|_| Error::Precondition(format!("p_g {pg} too large")))
}

/// `K^3 >= ceil(8/3 (2 p_g - 5)) / 4`.
pub fn bound_non12pencil<Q: Scalar>(pg: u64) -> Result<Q> {
    let pg = check_pg(pg)?;
    let surface_bound = Q::from_frac(8 * (2 * pg - 5), 3).ceil_int();
    let surface_bound = Q::from_bigint(&surface_bound).expect("small integer");
    Ok(surface_bound / Q::from_int(4))
}

/// Sub-bounds that appear while proving [`bound_non12pencil`], one per
/// dimension of the canonical image. Diagnostic only; the proposition's
/// statement is the value of `bound_non12pencil` itself.
pub fn non12pencil_diagnostics<Q: Scalar>(pg: u64) -> Result<Vec<(&'static str, Q)>> {
    let pg_i = check_pg(pg)?;
    Ok(vec![
        ("canonical image a 3-fold: K^3 >= 2p_g - 6", Q::from_int(2 * pg_i - 6)),
        ("canonical image a curve: K^3 > 2p_g - 6", Q::from_int(2 * pg_i - 6)),
        ("canonical image a surface, fibres of genus >= 3: K^3 >= 2p_g - 4", Q::from_int(2 * pg_i - 4)),
        ("canonical image a surface, genus 2 fibres: K^3 >= ceil(8/3 (2p_g - 5)) / 4", bound_non12pencil(pg)?),
    ])
}

/// `K^3 >= p_g`.
pub fn bound_irrational_pencil<Q: Scalar>(pg: u64) -> Result<Q> {
    Ok(Q::from_int(check_pg(pg)?))
}

/// `K^3 >= (p_g - 1)/(m + 1) * ((2p_g - 2)/p_g + m - 1)` with
/// `m = floor((7 p_g - 11) / 10)`.
pub fn bound_rational_12pencil<Q: Scalar>(pg: u64) -> Result<Q> {
    let pg = check_pg(pg)?;
    let m = Q::from_frac(7 * pg - 11, 10).floor_int();
    let m = Q::from_bigint(&m).expect("small integer");
    let one = Q::one();
    let lead = Q::from_int(pg - 1) / (m.clone() + one.clone());
    Ok(lead * (Q::from_frac(2 * pg - 2, pg) + m - one))
}

/// `(4/3) p_g - 10/3`.
pub fn expected_noether<Q: Scalar>(pg: u64) -> Q {
    Q::from_frac(4 * pg as i64 - 10, 3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "Q: Scalar"))]
pub struct LowerBound<Q = Rational> {
    #[serde(with = "scalar::as_string")]
    pub value: Q,
    /// Every case attaining the minimum.
    pub cases: Vec<PencilCase>,
}

/// Minimum of the three case bounds.
pub fn noether_lower_bound<Q: Scalar>(pg: u64) -> Result<LowerBound<Q>> {
    let bounds = PencilCase::ALL
        .iter()
        .map(|&c| c.bound::<Q>(pg).map(|b| (c, b)))
        .collect::<Result<Vec<_>>>()?;
    let value = bounds.iter().map(|(_, b)| b).min().expect("three cases").clone();
    let cases = bounds.into_iter().filter(|(_, b)| *b == value).map(|(c, _)| c).collect();
    Ok(LowerBound { value, cases })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "Q: Scalar"))]
pub struct CaseBounds<Q = Rational> {
    #[serde(with = "scalar::as_string")]
    pub non_12_pencil: Q,
    #[serde(with = "scalar::as_string")]
    pub irrational_pencil: Q,
    #[serde(with = "scalar::as_string")]
    pub rational_12_pencil: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "Q: Scalar"))]
pub struct NoetherRow<Q = Rational> {
    pub pg: u64,
    pub bounds: CaseBounds<Q>,
    #[serde(with = "scalar::as_string")]
    pub min: Q,
    pub minimizing: Vec<PencilCase>,
    #[serde(with = "scalar::as_string")]
    pub expected: Q,
    pub exceeds_expected: bool,
}

pub fn noether_row<Q: Scalar>(pg: u64) -> Result<NoetherRow<Q>> {
    let lower = noether_lower_bound::<Q>(pg)?;
    let expected = expected_noether::<Q>(pg);
    Ok(NoetherRow {
        pg,
        bounds: CaseBounds {
            non_12_pencil: bound_non12pencil(pg)?,
            irrational_pencil: bound_irrational_pencil(pg)?,
            rational_12_pencil: bound_rational_12pencil(pg)?,
        },
        exceeds_expected: lower.value > expected,
        min: lower.value,
        minimizing: lower.cases,
        expected,
    })
}

/// One row per `p_g` in `pg_from ..= pg_to`.
pub fn noether_table<Q: Scalar>(pg_from: u64, pg_to: u64) -> Result<Vec<NoetherRow<Q>>> {
    if pg_from < 5 || pg_from > pg_to {
        return Err(Error::Precondition(format!(
            "table range must satisfy 5 <= from <= to, got {pg_from}:{pg_to}"
        )));
    }
    (pg_from..=pg_to).map(noether_row).collect()
}
