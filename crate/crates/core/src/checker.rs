//! Numeric screening of a candidate family: weight shape, volume,
//! Riemann–Roch against the Hilbert series, and well-formedness.
//!
//! Quasismoothness of a general member and the behaviour of the
//! pluricanonical maps are geometric conditions; reports carry them as
//! assumed lines and never evaluate them.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{ci_series, ci_volume, degree_volume, hypersurface_series, SeriesPrefix};
use crate::model::{Basket, FamilyRecord, NumericalData, WeightSystem};
use crate::moduli::moduli_dimension;
use crate::reid_rr::plurigenus;
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not computed; recorded so the report states what it relies on.
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self { name, status, detail: detail.into() }
    }

    fn assumed(name: &'static str, detail: impl Into<String>) -> Self {
        Self { name, status: CheckStatus::Assumed, detail: detail.into() }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Assumed => "ASSUMED",
        };
        write!(f, "[{tag:>7}] {:<20} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "Q: Scalar"))]
pub struct CheckReport<Q = Rational> {
    pub family: FamilyRecord<Q>,
    pub checks: Vec<Check>,
}

impl<Q: Scalar> CheckReport<Q> {
    /// True iff no check failed.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }
}

/// Passes iff removing any one weight leaves weights with gcd 1.
pub fn check_wellformed(w: &WeightSystem) -> Check {
    const NAME: &str = "well-formed";
    let ws = w.weights();
    if ws.len() < 2 {
        return Check::new(NAME, false, format!("{w} has fewer than two weights"));
    }
    for skip in 0..ws.len() {
        let g = ws
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(0u64, |g, (_, &x)| g.gcd(&x));
        if g != 1 {
            return Check::new(
                NAME,
                false,
                format!("weights of {w} other than w_{skip} = {} share the factor {g}", ws[skip]),
            );
        }
    }
    Check::new(NAME, true, format!("every {} of the weights of {w} are coprime", ws.len() - 1))
}

fn quasismooth_line() -> Check {
    Check::assumed(
        "quasismooth",
        "quasismoothness of a general member is assumed (Fletcher's criterion is not evaluated)",
    )
}

/// Compares Riemann–Roch plurigenera with the series for `2 <= m <= k_max`
/// and `p_g` with `c_1`.
fn series_checks<Q: Scalar>(
    series: Result<SeriesPrefix>,
    data: &NumericalData<Q>,
    basket: &Basket,
    k_max: usize,
) -> [Check; 2] {
    let series = match series {
        Ok(s) => s,
        Err(e) => {
            let detail = format!("Hilbert series unavailable: {e}");
            return [Check::new("plurigenera", false, detail.clone()), Check::new("geometric-genus", false, detail)];
        }
    };
    let c1 = series.get(1).cloned().unwrap_or_default();
    let genus = Check::new(
        "geometric-genus",
        BigUint::from(data.pg()) == c1,
        format!("p_g = {}, series c_1 = {c1}", data.pg()),
    );
    let mut mismatch = None;
    for m in 2..=k_max {
        let expected = series.get(m).expect("series truncated at k_max");
        match plurigenus(data, basket, m as u32) {
            Ok(p) if &p == expected => {}
            Ok(p) => {
                mismatch = Some(format!("m={m}: Riemann–Roch gives {p}, Hilbert series gives {expected}"));
                break;
            }
            Err(e) => {
                mismatch = Some(format!("m={m}: {e} (Hilbert series gives {expected})"));
                break;
            }
        }
    }
    let plurigenera = match mismatch {
        Some(detail) => Check::new("plurigenera", false, detail),
        None => Check::new("plurigenera", true, format!("P_m = c_m for 2 <= m <= {k_max}")),
    };
    [plurigenera, genus]
}

/// Numeric hypotheses for a canonical 3-fold to be a hypersurface
/// `X_d` in `P(1, a1, a2, a3, a4)` with `d = 2 a4`.
pub fn check_hypersurface_numeric<Q: Scalar>(
    w: &WeightSystem,
    d: u64,
    data: &NumericalData<Q>,
    basket: &Basket,
    k_max: usize,
) -> Result<CheckReport<Q>> {
    let family = FamilyRecord {
        name: "candidate".into(),
        ambient: w.clone(),
        degrees: vec![d],
        data: data.clone(),
        basket: basket.clone(),
        moduli_dim: i64::try_from(moduli_dimension(w, d)).unwrap_or(i64::MAX),
        specializes: None,
        notes: Default::default(),
    };
    check_family(&family, k_max)
}

/// Runs the numeric checks appropriate to the record: the hypersurface
/// hypotheses for one degree, the complete-intersection bookkeeping for two.
pub fn check_family<Q: Scalar>(family: &FamilyRecord<Q>, k_max: usize) -> Result<CheckReport<Q>> {
    let w = &family.ambient;
    match family.degrees.as_slice() {
        [d] => hypersurface_checks(family, *d, k_max).map(|checks| CheckReport { family: family.clone(), checks }),
        [_, _] => ci_checks(family, k_max).map(|checks| CheckReport { family: family.clone(), checks }),
        other => Err(Error::Precondition(format!(
            "{w}: expected one or two defining degrees, got {other:?}"
        ))),
    }
}

fn hypersurface_checks<Q: Scalar>(family: &FamilyRecord<Q>, d: u64, k_max: usize) -> Result<Vec<Check>> {
    let w = &family.ambient;
    let ws = w.weights();
    if ws.len() != 5 {
        return Err(Error::AmbientDimension { expected: 4, found: ws.len() });
    }
    if (k_max as u64) < d {
        return Err(Error::Precondition(format!("k_max = {k_max} must be at least d = {d}")));
    }
    let (a1, a2, a3, a4) = (ws[1], ws[2], ws[3], ws[4]);
    let mut checks = Vec::new();

    let shape_ok = ws[0] == 1 && a3 < a4 && d == 2 * a4;
    checks.push(Check::new(
        "weight-shape",
        shape_ok,
        format!("{w}: need w_0 = 1, a3 < a4 and d = 2*a4 = {}; d = {d}", 2 * a4),
    ));

    let volume: Q = degree_volume(w, d)?;
    let closed_form = Q::from_frac(2, (a1 * a2 * a3) as i64);
    let volume_ok = *family.data.k3() == volume && volume == closed_form;
    checks.push(Check::new(
        "volume",
        volume_ok,
        format!("K^3 = {}, d/prod(w) = {volume}, 2/(a1 a2 a3) = {closed_form}", family.data.k3()),
    ));

    checks.extend(series_checks(hypersurface_series(w, d, k_max), &family.data, &family.basket, k_max));
    checks.push(check_wellformed(w));
    checks.push(quasismooth_line());
    checks.push(Check::assumed(
        "pluricanonical-maps",
        format!(
            "|{a2}H| a pencil, |{a3}H| generically finite of degree > 1 or with non-rational image, \
             |{a4}H| birational: geometric, asserted not computed"
        ),
    ));
    Ok(checks)
}

fn ci_checks<Q: Scalar>(family: &FamilyRecord<Q>, k_max: usize) -> Result<Vec<Check>> {
    let w = &family.ambient;
    let degrees = &family.degrees;
    let mut checks = Vec::new();
    let volume: Q = ci_volume(w, degrees)?;
    checks.push(Check::new(
        "volume",
        *family.data.k3() == volume,
        format!("K^3 = {}, prod(d)/prod(w) = {volume}", family.data.k3()),
    ));
    checks.extend(series_checks(ci_series(w, degrees, k_max), &family.data, &family.basket, k_max));
    checks.push(check_wellformed(w));
    checks.push(quasismooth_line());
    Ok(checks)
}
