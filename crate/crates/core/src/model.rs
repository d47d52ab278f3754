//! Shared domain types: weight systems, Reid baskets and the numerical data
//! of a minimal 3-fold.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::Rational;

/// Weights of a weighted projective space, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSystem(Vec<u64>);

impl WeightSystem {
    pub fn new<I: IntoIterator<Item = u64>>(weights: I) -> Result<Self> {
        let mut weights: Vec<u64> = weights.into_iter().collect();
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights(format!("weights must be positive: {weights:?}")));
        }
        weights.sort_unstable();
        Ok(Self(weights))
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u64 {
        *self.0.last().expect("weight systems are nonempty")
    }

    pub fn product(&self) -> u64 {
        self.0.iter().product()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Parses a comma separated list such as `1,1,2,3,8` (an optional `P(...)`
/// wrapper is accepted).
impl FromStr for WeightSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "weight system", input: s.to_string() };
        let inner = s.trim();
        let inner = inner.strip_prefix("P").unwrap_or(inner);
        let inner = inner.trim_start_matches('(').trim_end_matches(')');
        let weights = inner
            .split(',')
            .map(|w| w.trim().parse::<u64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }
}

impl Serialize for WeightSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<u64>::deserialize(deserializer)?;
        Self::new(raw).map_err(serde::de::Error::custom)
    }
}

/// An orbifold point of type `1/r (1, -1, b)`.
///
/// Field order makes the derived ordering sort by `(r, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasketEntry {
    r: u64,
    b: u64,
}

impl BasketEntry {
    /// Requires `0 < b <= r/2` and `gcd(b, r) = 1`. Representatives with
    /// `b > r/2` are rejected rather than reflected to `r - b`.
    pub fn new(b: u64, r: u64) -> Result<Self> {
        let invalid = |reason| Error::InvalidBasketEntry { b, r, reason };
        if b == 0 {
            return Err(invalid("b must be positive"));
        }
        if 2 * b > r {
            return Err(invalid("b must not exceed r/2"));
        }
        if b.gcd(&r) != 1 {
            return Err(invalid("b and r must be coprime"));
        }
        Ok(Self { r, b })
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn r(&self) -> u64 {
        self.r
    }
}

impl fmt::Display for BasketEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.r)
    }
}

/// A Reid basket: a multiset of [`BasketEntry`] kept in canonical `(r, b)`
/// order. The empty basket is the Gorenstein case.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Basket {
    entries: BTreeMap<BasketEntry, u32>,
}

impl Basket {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a basket from `(b, r)` pairs, one point per pair.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        normalize_basket(pairs.into_iter().map(|(b, r)| (1, b, r)))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of points, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.entries.values().map(|&m| m as usize).sum()
    }

    /// Distinct entries with multiplicities in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (BasketEntry, u32)> + '_ {
        self.entries.iter().map(|(&e, &m)| (e, m))
    }

    pub fn multiplicity(&self, entry: BasketEntry) -> u32 {
        self.entries.get(&entry).copied().unwrap_or(0)
    }

    pub fn with_multiplicity(&self, entry: BasketEntry, mult: u32) -> Self {
        let mut out = self.clone();
        if mult == 0 {
            out.entries.remove(&entry);
        } else {
            out.entries.insert(entry, mult);
        }
        out
    }

    /// Multiset union.
    pub fn union(&self, other: &Basket) -> Self {
        let mut out = self.clone();
        for (e, m) in other.iter() {
            *out.entries.entry(e).or_insert(0) += m;
        }
        out
    }

    /// Compact form `2x1/2,1x1/3` accepted by [`Basket::from_str`].
    pub fn to_compact(&self) -> String {
        self.iter()
            .map(|(e, m)| format!("{m}x{}/{}", e.b, e.r))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Canonicalizes a raw list of `(multiplicity, b, r)` triples into a basket.
/// Repeated entries are merged and zero multiplicities dropped.
pub fn normalize_basket<I>(raw: I) -> Result<Basket>
where
    I: IntoIterator<Item = (u32, u64, u64)>,
{
    let mut entries = BTreeMap::new();
    for (mult, b, r) in raw {
        let entry = BasketEntry::new(b, r)?;
        if mult > 0 {
            *entries.entry(entry).or_insert(0) += mult;
        }
    }
    Ok(Basket { entries })
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (e, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{e}")?;
            } else {
                write!(f, "{m}×{e}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Parses `2x1/2,1x1/3`; a bare `1/3` means multiplicity one, and the empty
/// string, `-`, `none` or `{}` give the empty basket.
impl FromStr for Basket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "{}" || s.eq_ignore_ascii_case("none") {
            return Ok(Basket::empty());
        }
        let err = || Error::Parse { what: "basket", input: s.to_string() };
        let mut raw = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let (mult, point) = match item.split_once(['x', '×', '*']) {
                Some((m, p)) => (m.trim().parse::<u32>().map_err(|_| err())?, p),
                None => (1, item),
            };
            let (b, r) = point.split_once('/').ok_or_else(err)?;
            let b = b.trim().parse::<u64>().map_err(|_| err())?;
            let r = r.trim().parse::<u64>().map_err(|_| err())?;
            raw.push((mult, b, r));
        }
        normalize_basket(raw)
    }
}

#[derive(Serialize, Deserialize)]
struct BasketItem {
    mult: u32,
    b: u64,
    r: u64,
}

impl Serialize for Basket {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let items: Vec<BasketItem> = self
            .iter()
            .map(|(e, mult)| BasketItem { mult, b: e.b, r: e.r })
            .collect();
        items.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<BasketItem>::deserialize(deserializer)?;
        normalize_basket(items.into_iter().map(|i| (i.mult, i.b, i.r)))
            .map_err(serde::de::Error::custom)
    }
}

/// `(K^3, chi(O_X), p_g)` of a minimal 3-fold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "Q: Scalar", deserialize = "Q: Scalar"))]
pub struct NumericalData<Q = Rational> {
    #[serde(with = "scalar::as_string")]
    k3: Q,
    chi: i64,
    pg: u64,
}

impl<Q: Scalar> NumericalData<Q> {
    pub fn new(k3: Q, chi: i64, pg: u64) -> Result<Self> {
        if !k3.is_positive() {
            return Err(Error::NonPositiveVolume(k3.to_string()));
        }
        Ok(Self { k3, chi, pg })
    }

    pub fn k3(&self) -> &Q {
        &self.k3
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn pg(&self) -> u64 {
        self.pg
    }
}

impl<Q: Scalar> fmt::Display for NumericalData<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K^3={}, chi={}, p_g={}", self.k3, self.chi, self.pg)
    }
}

/// A weighted hypersurface (one degree) or codimension-2 complete
/// intersection (two degrees) together with its invariant package.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "Q: Scalar", deserialize = "Q: Scalar"))]
pub struct FamilyRecord<Q = Rational> {
    pub name: String,
    pub ambient: WeightSystem,
    pub degrees: Vec<u64>,
    pub data: NumericalData<Q>,
    pub basket: Basket,
    pub moduli_dim: i64,
    /// Name of a hypersurface family this record specializes from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specializes: Option<String>,
    /// Free-form provenance notes, keyed by field name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

impl<Q: Scalar> FamilyRecord<Q> {
    pub fn is_hypersurface(&self) -> bool {
        self.degrees.len() == 1
    }

    pub fn label(&self) -> String {
        let degs = self
            .degrees
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        format!("X_{{{degs}}} in {}", self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basket_example_normalizes() {
        let basket = Basket::from_pairs([(1, 2), (1, 3), (1, 2)]).unwrap();
        assert_eq!(basket.to_string(), "{2×(1,2), (1,3)}");
        assert_eq!(basket.len(), 3);
        assert_eq!(basket.multiplicity(BasketEntry::new(1, 2).unwrap()), 2);
        assert_eq!(basket.to_compact(), "2x1/2,1x1/3");
    }

    #[test]
    fn empty_basket_is_legal() {
        let basket = Basket::from_pairs([]).unwrap();
        assert!(basket.is_empty());
        assert_eq!(basket.to_string(), "{}");
        assert_eq!("".parse::<Basket>().unwrap(), basket);
        assert_eq!("none".parse::<Basket>().unwrap(), basket);
    }

    #[test]
    fn rejects_unreduced_entries() {
        assert!(matches!(
            Basket::from_pairs([(2, 3)]),
            Err(Error::InvalidBasketEntry { b: 2, r: 3, .. })
        ));
        assert!(BasketEntry::new(0, 5).is_err());
        assert!(BasketEntry::new(2, 4).is_err());
        assert!(BasketEntry::new(2, 5).is_ok());
        assert!(BasketEntry::new(1, 1).is_err());
    }

    #[test]
    fn basket_ordering_is_by_r_then_b() {
        let basket: Basket = "1x2/5,3x1/3,1x1/5,1x1/2".parse().unwrap();
        assert_eq!(basket.to_compact(), "1x1/2,3x1/3,1x1/5,1x2/5");
    }

    #[test]
    fn basket_json_shape() {
        let basket: Basket = "2x1/2,1x1/3".parse().unwrap();
        let json = serde_json::to_string(&basket).unwrap();
        assert_eq!(json, r#"[{"mult":2,"b":1,"r":2},{"mult":1,"b":1,"r":3}]"#);
        let back: Basket = serde_json::from_str(&json).unwrap();
        assert_eq!(back, basket);
        assert!(serde_json::from_str::<Basket>(r#"[{"mult":1,"b":2,"r":3}]"#).is_err());
    }

    #[test]
    fn weight_system_parsing() {
        let w: WeightSystem = "8,3,2,1,1".parse().unwrap();
        assert_eq!(w.weights(), &[1, 1, 2, 3, 8]);
        assert_eq!(w.to_string(), "P(1,1,2,3,8)");
        assert_eq!("P(1,1,2,3,8)".parse::<WeightSystem>().unwrap(), w);
        assert!("1,0,2".parse::<WeightSystem>().is_err());
        assert!("".parse::<WeightSystem>().is_err());
    }

    #[test]
    fn numerical_data_requires_positive_volume() {
        assert!(NumericalData::new(Rational::from_int(0), -1, 2).is_err());
        let data = NumericalData::new(Rational::from_frac(1, 3), -1, 2).unwrap();
        let json = serde_json::to_string(&data).unwrap();
        assert_eq!(json, r#"{"k3":"1/3","chi":-1,"pg":2}"#);
    }

    fn raw_basket() -> impl Strategy<Value = Vec<(u32, u64, u64)>> {
        let entry = (2u64..12).prop_flat_map(|r| (Just(r), 1..=r / 2)).prop_filter_map(
            "coprime",
            |(r, b)| (b.gcd(&r) == 1).then_some((b, r)),
        );
        prop::collection::vec((0u32..4, entry).prop_map(|(m, (b, r))| (m, b, r)), 0..8)
    }

    proptest! {
        #[test]
        fn normalize_is_permutation_invariant(raw in raw_basket(), seed in any::<u64>()) {
            let a = normalize_basket(raw.clone()).unwrap();
            let mut shuffled = raw;
            let n = shuffled.len();
            if n > 1 {
                let mut s = seed;
                for i in (1..n).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    shuffled.swap(i, (s >> 33) as usize % (i + 1));
                }
            }
            let b = normalize_basket(shuffled).unwrap();
            prop_assert_eq!(&a, &b);
            let again = normalize_basket(a.iter().map(|(e, m)| (m, e.b(), e.r()))).unwrap();
            prop_assert_eq!(&again, &a);
            let reparsed: Basket = a.to_compact().parse().unwrap();
            prop_assert_eq!(reparsed, a);
        }

        #[test]
        fn weight_normalization_idempotent(mut w in prop::collection::vec(1u64..20, 1..7)) {
            let a = WeightSystem::new(w.clone()).unwrap();
            w.reverse();
            let b = WeightSystem::new(w).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(WeightSystem::new(a.weights().to_vec()).unwrap(), a);
        }
    }
}
