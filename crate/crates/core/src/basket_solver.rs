//! Exhaustive search for baskets and `chi(O_X)` compatible with a set of
//! linear plurigenus constraints.
//!
//! A scenario fixes `K^3`, `p_g`, a list of basket point types with
//! multiplicity ranges, and a range for `chi`. Every point of that finite box
//! is run through Riemann–Roch; a point survives if all plurigenera it needs
//! are nonnegative integers and every constraint holds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::model::{normalize_basket, Basket, BasketEntry, NumericalData};
use crate::reid_rr::{chi_mk, plurigenus_table, PlurigenusTable};
use crate::scalar::Scalar;
use crate::Rational;

/// Default multiplicity and `|chi|` bound of the preset search boxes.
pub const DEFAULT_BOUND: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    Le,
    Ge,
    Eq,
}

impl Comparator {
    fn holds<Q: Ord>(self, lhs: &Q, rhs: &Q) -> bool {
        match self {
            Comparator::Le => lhs <= rhs,
            Comparator::Ge => lhs >= rhs,
            Comparator::Eq => lhs == rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Comparator::Le => "<=",
            Comparator::Ge => ">=",
            Comparator::Eq => "=",
        }
    }
}

/// `sum_m c_m P_m + constant  (<=|>=|=)  0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint<Q = Rational> {
    /// `(m, c_m)` sorted by `m`, zero coefficients removed.
    terms: Vec<(u32, Q)>,
    constant: Q,
    cmp: Comparator,
}

impl<Q: Scalar> LinearConstraint<Q> {
    pub fn new(terms: Vec<(u32, Q)>, constant: Q, cmp: Comparator) -> Result<Self> {
        let mut merged: Vec<(u32, Q)> = Vec::new();
        let mut sorted = terms;
        sorted.sort_by_key(|(m, _)| *m);
        for (m, c) in sorted {
            if m == 0 {
                return Err(Error::Constraint {
                    input: format!("P{m}"),
                    reason: "plurigenus index must be at least 1".into(),
                });
            }
            match merged.last_mut() {
                Some((last, acc)) if *last == m => *acc = acc.clone() + c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Ok(Self { terms: merged, constant, cmp })
    }

    /// `P_m (cmp) value`.
    pub fn single(m: u32, cmp: Comparator, value: Q) -> Self {
        Self::new(vec![(m, Q::one())], -value, cmp).expect("m >= 1")
    }

    /// `P_m - P_n (cmp) value`.
    pub fn difference(m: u32, n: u32, cmp: Comparator, value: Q) -> Self {
        Self::new(vec![(m, Q::one()), (n, -Q::one())], -value, cmp).expect("m, n >= 1")
    }

    /// Largest plurigenus index referenced.
    pub fn max_index(&self) -> u32 {
        self.terms.iter().map(|(m, _)| *m).max().unwrap_or(0)
    }

    pub fn is_satisfied(&self, table: &PlurigenusTable<Q>) -> bool {
        self.holds_for(|m| {
            let p = table.get(m).expect("table covers every referenced index");
            Q::from_bigint(&BigInt::from(p)).expect("plurigenus fits the scalar type")
        })
    }

    fn holds_for(&self, p: impl Fn(u32) -> Q) -> bool {
        let lhs = self
            .terms
            .iter()
            .fold(self.constant.clone(), |acc, (m, c)| acc + c.clone() * p(*m));
        self.cmp.holds(&lhs, &Q::zero())
    }
}

impl<Q: Scalar> fmt::Display for LinearConstraint<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "P{m}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " {} {}", self.cmp.symbol(), -self.constant.clone())
    }
}

/// Parses constraints such as `P2<=4`, `P3>=P2+3` or `2P4-P3-3P2<=3`.
/// Coefficients may be rationals, optionally followed by `*`.
impl<Q: Scalar> FromStr for LinearConstraint<Q> {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Constraint { input: input.to_string(), reason: reason.to_string() };
        let (lhs, cmp, rhs) = if let Some((l, r)) = compact.split_once("<=") {
            (l, Comparator::Le, r)
        } else if let Some((l, r)) = compact.split_once(">=") {
            (l, Comparator::Ge, r)
        } else if let Some((l, r)) = compact.split_once("==") {
            (l, Comparator::Eq, r)
        } else if let Some((l, r)) = compact.split_once('=') {
            (l, Comparator::Eq, r)
        } else {
            return Err(err("expected one of <=, >=, ="));
        };
        let (mut terms, lconst) = parse_side::<Q>(lhs).map_err(|r| err(&r))?;
        let (rterms, rconst) = parse_side::<Q>(rhs).map_err(|r| err(&r))?;
        terms.extend(rterms.into_iter().map(|(m, c)| (m, -c)));
        Self::new(terms, lconst - rconst, cmp)
    }
}

/// Splits a linear expression into plurigenus terms and a constant.
fn parse_side<Q: Scalar>(side: &str) -> std::result::Result<(Vec<(u32, Q)>, Q), String> {
    if side.is_empty() {
        return Err("empty side".into());
    }
    let mut terms = Vec::new();
    let mut constant = Q::zero();
    let mut pieces = Vec::new();
    let mut start = 0;
    for (i, ch) in side.char_indices() {
        // a sign that does not follow a '/' or '*' starts a new summand
        if (ch == '+' || ch == '-') && i > 0 && !matches!(side.as_bytes()[i - 1], b'/' | b'*') {
            pieces.push(&side[start..i]);
            start = i;
        }
    }
    pieces.push(&side[start..]);
    for piece in pieces {
        let (negative, body) = match piece.as_bytes().first() {
            Some(b'-') => (true, &piece[1..]),
            Some(b'+') => (false, &piece[1..]),
            _ => (false, piece),
        };
        if body.is_empty() {
            return Err(format!("dangling sign in {side:?}"));
        }
        let (coef, var) = match body.find(['P', 'p']) {
            Some(pos) => {
                let coef = body[..pos].trim_end_matches('*');
                let coef = if coef.is_empty() {
                    Q::one()
                } else {
                    coef.parse::<Q>().map_err(|_| format!("bad coefficient {coef:?}"))?
                };
                let idx = body[pos + 1..].trim_start_matches('_');
                let m = idx.parse::<u32>().map_err(|_| format!("bad plurigenus index {idx:?}"))?;
                (coef, Some(m))
            }
            None => (body.parse::<Q>().map_err(|_| format!("bad constant {body:?}"))?, None),
        };
        let coef = if negative { -coef } else { coef };
        match var {
            Some(m) => terms.push((m, coef)),
            None => constant = constant + coef,
        }
    }
    Ok((terms, constant))
}

/// One basket point type with an inclusive multiplicity range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeRange {
    pub entry: BasketEntry,
    pub min: u32,
    pub max: u32,
}

impl ShapeRange {
    pub fn new(b: u64, r: u64, min: u32, max: u32) -> Result<Self> {
        Ok(Self { entry: BasketEntry::new(b, r)?, min, max })
    }
}

/// Parses `1/2:0-20` (type `(1,2)` with multiplicity `0..=20`).
impl FromStr for ShapeRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "basket shape range", input: s.to_string() };
        let (point, range) = s.trim().split_once(':').ok_or_else(err)?;
        let (b, r) = point.split_once('/').ok_or_else(err)?;
        let (lo, hi) = range.split_once('-').ok_or_else(err)?;
        Self::new(
            b.trim().parse().map_err(|_| err())?,
            r.trim().parse().map_err(|_| err())?,
            lo.trim().parse().map_err(|_| err())?,
            hi.trim().parse().map_err(|_| err())?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverScenario<Q = Rational> {
    pub k3: Q,
    pub pg: u64,
    pub shape: Vec<ShapeRange>,
    pub chi_min: i64,
    pub chi_max: i64,
    pub constraints: Vec<LinearConstraint<Q>>,
}

impl<Q: Scalar> SolverScenario<Q> {
    fn validate(&self) -> Result<()> {
        if !self.k3.is_positive() {
            return Err(Error::NonPositiveVolume(self.k3.to_string()));
        }
        if self.chi_min > self.chi_max {
            return Err(Error::Precondition(format!(
                "empty chi range [{}, {}]",
                self.chi_min, self.chi_max
            )));
        }
        for (i, s) in self.shape.iter().enumerate() {
            if s.min > s.max {
                return Err(Error::Precondition(format!(
                    "empty multiplicity range {}..={} for {}",
                    s.min, s.max, s.entry
                )));
            }
            if self.shape[..i].iter().any(|t| t.entry == s.entry) {
                return Err(Error::Precondition(format!("basket type {} listed twice", s.entry)));
            }
        }
        Ok(())
    }

    /// Highest plurigenus index the solver has to evaluate (at least 2).
    pub fn max_index(&self) -> u32 {
        self.constraints.iter().map(LinearConstraint::max_index).max().unwrap_or(0).max(2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverSolution<Q = Rational> {
    /// Multiplicity per shape entry, in scenario order.
    pub multiplicities: Vec<(BasketEntry, u32)>,
    pub chi: i64,
    pub table: PlurigenusTable<Q>,
}

impl<Q: Scalar> SolverSolution<Q> {
    pub fn basket(&self) -> &Basket {
        self.table.basket()
    }
}

/// All points of the scenario's box satisfying every constraint, ordered
/// lexicographically by (multiplicities in shape order, chi).
pub fn solve<Q: Scalar>(scenario: &SolverScenario<Q>) -> Result<Vec<SolverSolution<Q>>> {
    scenario.validate()?;
    let m_max = scenario.max_index();
    let mut solutions = Vec::new();
    let mut mults: Vec<u32> = scenario.shape.iter().map(|s| s.min).collect();
    loop {
        let basket = normalize_basket(
            scenario
                .shape
                .iter()
                .zip(&mults)
                .map(|(s, &m)| (m, s.entry.b(), s.entry.r())),
        )?;
        // chi(mK) + (2m - 1) chi does not depend on chi
        let chi_free: Vec<Q> = (0..=m_max)
            .map(|m| {
                let data = NumericalData::new(scenario.k3.clone(), 0, scenario.pg)?;
                Ok(chi_mk(&data, &basket, m))
            })
            .collect::<Result<_>>()?;
        for chi in scenario.chi_min..=scenario.chi_max {
            let mut p: Vec<Q> = chi_free
                .iter()
                .zip(0i64..)
                .map(|(v, m)| v.clone() - Q::from_int((2 * m - 1) * chi))
                .collect();
            p[1] = Q::from_int(scenario.pg as i64);
            if !p[2..].iter().all(|v| v.as_integer().is_some() && !v.is_negative()) {
                continue;
            }
            if scenario.constraints.iter().all(|c| c.holds_for(|m| p[m as usize].clone())) {
                let data = NumericalData::new(scenario.k3.clone(), chi, scenario.pg)?;
                let table = plurigenus_table(&data, &basket, m_max)?;
                solutions.push(SolverSolution {
                    multiplicities: scenario.shape.iter().map(|s| s.entry).zip(mults.iter().copied()).collect(),
                    chi,
                    table,
                });
            }
        }
        // odometer, last position fastest
        let mut pos = mults.len();
        loop {
            if pos == 0 {
                return Ok(solutions);
            }
            pos -= 1;
            if mults[pos] < scenario.shape[pos].max {
                mults[pos] += 1;
                for (m, s) in mults.iter_mut().zip(&scenario.shape).skip(pos + 1) {
                    *m = s.min;
                }
                break;
            }
        }
    }
}

/// The bound `P_2 <= floor(2K^3) + floor(2K^3 - 5(p_g - 1)/3) + 7`, valid
/// under the hypothesis `K^3 < (4/3) p_g - 17/6`.
pub fn hz_p2_bound<Q: Scalar>(k3: &Q, pg: u64) -> Result<BigInt> {
    let pg_i = i64::try_from(pg).map_err(|_| Error::Precondition(format!("p_g {pg} too large")))?;
    let threshold = Q::from_frac(4 * pg_i, 3) - Q::from_frac(17, 6);
    if *k3 >= threshold {
        return Err(Error::HypothesisFailed(format!(
            "requires K^3 < 4/3 p_g - 17/6 = {threshold}, got K^3 = {k3}"
        )));
    }
    let two_k3 = Q::from_int(2) * k3.clone();
    let second = two_k3.clone() - Q::from_frac(5 * (pg_i - 1), 3);
    Ok(two_k3.floor_int() + second.floor_int() + 7)
}

/// The three search scenarios that pin down the minimal-volume families
/// with `p_g = 2, 3, 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Pg2,
    Pg3,
    Pg4,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Pg2, Preset::Pg3, Preset::Pg4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Pg2 => "pg2",
            Preset::Pg3 => "pg3",
            Preset::Pg4 => "pg4",
        }
    }

    /// The scenario with multiplicities bounded by `bound` and
    /// `chi` in `[-bound, bound]` (the `pg4` scenario fixes `chi = -3`).
    pub fn scenario<Q: Scalar>(self, bound: u32) -> SolverScenario<Q> {
        use Comparator::{Ge, Le};
        let b = i64::from(bound);
        let half = |min| ShapeRange::new(1, 2, min, bound).expect("valid type");
        match self {
            // K^3 = 1/3: basket {a x (1,2), b x (1,3)} with b >= 1,
            // P2 <= 4, P3 >= P2 + 3, P4 >= P3 + 4.
            Preset::Pg2 => SolverScenario {
                k3: Q::from_frac(1, 3),
                pg: 2,
                shape: vec![half(0), ShapeRange::new(1, 3, 1, bound.max(1)).expect("valid type")],
                chi_min: -b,
                chi_max: b,
                constraints: vec![
                    LinearConstraint::single(2, Le, Q::from_int(4)),
                    LinearConstraint::difference(3, 2, Ge, Q::from_int(3)),
                    LinearConstraint::difference(4, 3, Ge, Q::from_int(4)),
                ],
            },
            // K^3 = 1: basket {a x (1,2)}, P2 <= 7, P3 >= P2 + 6.
            Preset::Pg3 => SolverScenario {
                k3: Q::from_int(1),
                pg: 3,
                shape: vec![half(0)],
                chi_min: -b,
                chi_max: b,
                constraints: vec![
                    LinearConstraint::single(2, Le, Q::from_int(7)),
                    LinearConstraint::difference(3, 2, Ge, Q::from_int(6)),
                ],
            },
            // K^3 = 2, chi = -3: l(2) >= 0 forces P2 >= K^3/2 - 3 chi = 10,
            // and the P2 bound above gives P2 <= 10.
            Preset::Pg4 => {
                let k3 = Q::from_int(2);
                let chi = -3;
                let lower = k3.clone() / Q::from_int(2) - Q::from_int(3 * chi);
                let upper = hz_p2_bound(&k3, 4).expect("hypothesis holds for K^3 = 2, p_g = 4");
                let upper = Q::from_bigint(&upper).expect("small integer");
                SolverScenario {
                    k3,
                    pg: 4,
                    shape: vec![half(0)],
                    chi_min: chi,
                    chi_max: chi,
                    constraints: vec![
                        LinearConstraint::single(2, Ge, lower),
                        LinearConstraint::single(2, Le, upper),
                    ],
                }
            }
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse { what: "solver preset", input: s.to_string() })
    }
}
