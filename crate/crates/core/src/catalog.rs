//! The embedded catalog of minimal-volume families and the routine that
//! re-derives every stored number from the other modules.

use serde::{Deserialize, Serialize};

use crate::checker::{check_family, Check, CheckStatus};
use crate::error::{Error, Result};
use crate::hilbert::ci_series;
use crate::model::FamilyRecord;
use crate::moduli::moduli_dimension;
use crate::scalar::Scalar;
use crate::Rational;

/// The catalog shipped with the crate.
pub const CATALOG_JSON: &str = include_str!("../data/catalog.json");

pub const CATALOG_VERSION: u32 = 1;

/// Smallest `k_max` accepted by [`Catalog::verify_all`].
pub const MIN_VERIFY_K: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "Q: Scalar", deserialize = "Q: Scalar"))]
pub struct Catalog<Q = Rational> {
    pub version: u32,
    pub families: Vec<FamilyRecord<Q>>,
}

impl<Q: Scalar> Catalog<Q> {
    pub fn shipped() -> Self {
        Self::from_json(CATALOG_JSON).expect("embedded catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let catalog: Self = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        if catalog.version != CATALOG_VERSION {
            return Err(Error::Catalog(format!(
                "unsupported catalog version {} (expected {CATALOG_VERSION})",
                catalog.version
            )));
        }
        Ok(catalog)
    }

    /// Case-insensitive lookup by name.
    pub fn family(&self, name: &str) -> Option<&FamilyRecord<Q>> {
        self.families.iter().find(|f| f.name.eq_ignore_ascii_case(name))
    }

    pub fn family_mut(&mut self, name: &str) -> Option<&mut FamilyRecord<Q>> {
        self.families.iter_mut().find(|f| f.name.eq_ignore_ascii_case(name))
    }

    /// Re-checks every record: the checker report, the stored moduli
    /// dimension, and for complete intersections the termwise agreement of
    /// the series with the hypersurface family they specialize from.
    pub fn verify_all(&self, k_max: usize) -> Result<VerifyReport> {
        if k_max < MIN_VERIFY_K {
            return Err(Error::Precondition(format!(
                "k_max must be at least {MIN_VERIFY_K}, got {k_max}"
            )));
        }
        let families = self.families.iter().map(|f| self.verify_family(f, k_max)).collect();
        Ok(VerifyReport { k_max, families })
    }

    fn verify_family(&self, family: &FamilyRecord<Q>, k_max: usize) -> FamilyVerification {
        let mut checks = match check_family(family, k_max) {
            Ok(report) => report.checks,
            Err(e) => vec![fail("numeric-checks", e.to_string())],
        };
        match family.degrees.as_slice() {
            [d] => {
                let computed = moduli_dimension(&family.ambient, *d);
                checks.push(Check {
                    name: "moduli-dimension",
                    status: status(computed == family.moduli_dim.into()),
                    detail: format!("stored {}, computed {computed}", family.moduli_dim),
                });
            }
            _ => checks.extend(self.specialization_checks(family, k_max)),
        }
        FamilyVerification { family: family.name.clone(), label: family.label(), checks }
    }

    fn specialization_checks(&self, family: &FamilyRecord<Q>, k_max: usize) -> Vec<Check> {
        let Some(parent_name) = &family.specializes else {
            return vec![fail("specialization", "no hypersurface family linked")];
        };
        let Some(parent) = self.family(parent_name) else {
            return vec![fail("specialization", format!("linked family {parent_name:?} not in catalog"))];
        };
        let ours = ci_series(&family.ambient, &family.degrees, k_max);
        let theirs = ci_series(&parent.ambient, &parent.degrees, k_max);
        let series = match (ours, theirs) {
            (Ok(a), Ok(b)) => match (0..=k_max).find(|&k| a.get(k) != b.get(k)) {
                None => Check {
                    name: "specialization",
                    status: CheckStatus::Pass,
                    detail: format!("series agrees with {} for k <= {k_max}", parent.name),
                },
                Some(k) => fail(
                    "specialization",
                    format!(
                        "c_{k} = {} here, {} for {}",
                        a.get(k).expect("k <= k_max"),
                        b.get(k).expect("k <= k_max"),
                        parent.name
                    ),
                ),
            },
            (Err(e), _) | (_, Err(e)) => fail("specialization", e.to_string()),
        };
        let moduli = Check {
            name: "moduli-dimension",
            status: status(family.moduli_dim == parent.moduli_dim),
            detail: format!(
                "stored {}, moduli space of {} has dimension {}",
                family.moduli_dim, parent.name, parent.moduli_dim
            ),
        };
        let data = Check {
            name: "invariants",
            status: status(family.data == parent.data && family.basket == parent.basket),
            detail: format!("({}) basket {} vs {} for {}", family.data, family.basket, parent.basket, parent.name),
        };
        vec![series, data, moduli]
    }
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn fail(name: &'static str, detail: impl Into<String>) -> Check {
    Check { name, status: CheckStatus::Fail, detail: detail.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyVerification {
    pub family: String,
    pub label: String,
    pub checks: Vec<Check>,
}

impl FamilyVerification {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub k_max: usize,
    pub families: Vec<FamilyVerification>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyVerification::passed)
    }

    /// `(family, check)` for every failed check.
    pub fn failures(&self) -> impl Iterator<Item = (&str, &Check)> {
        self.families
            .iter()
            .flat_map(|f| f.checks.iter().filter(|c| c.failed()).map(move |c| (f.family.as_str(), c)))
    }
}
