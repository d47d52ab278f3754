//! Reid's orbifold Riemann–Roch for multiples of the canonical divisor.
//!
//! For a minimal 3-fold `X` with canonical volume `K^3`, Euler characteristic
//! `chi = chi(O_X)` and basket `B`,
//!
//! ```text
//! chi(O_X(mK)) = m(m-1)(2m-1)/12 * K^3 - (2m-1) chi + l(m)
//! l(m)         = sum_{(b,r) in B} sum_{j=1}^{m-1} jb'(r - jb') / 2r,   jb' = jb mod r
//! ```
//!
//! and Kawamata–Viehweg vanishing gives `P_m = chi(O_X(mK))` for `m >= 2`.
//! `P_1 = p_g` is never derived from the formula.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::model::{Basket, NumericalData};
use crate::scalar::Scalar;
use crate::Rational;

/// Default upper index for batch evaluation.
pub const DEFAULT_M_MAX: u32 = 50;

/// Contribution of a single orbifold point `(b, r)` to `l(m)`.
fn point_term<Q: Scalar>(b: u64, r: u64, m: u32) -> Q {
    let r_i = r as i64;
    (1..i64::from(m.max(1)))
        .map(|j| {
            let residue = (j * b as i64).rem_euclid(r_i);
            Q::from_frac(residue * (r_i - residue), 2 * r_i)
        })
        .fold(Q::zero(), |acc, t| acc + t)
}

/// The basket correction `l(m)`. Zero for `m <= 1` or an empty basket.
pub fn l_term<Q: Scalar>(basket: &Basket, m: u32) -> Q {
    basket
        .iter()
        .map(|(e, mult)| point_term::<Q>(e.b(), e.r(), m) * Q::from_int(i64::from(mult)))
        .fold(Q::zero(), |acc, t| acc + t)
}

/// `chi(X, O_X(mK_X))` as an exact rational.
pub fn chi_mk<Q: Scalar>(data: &NumericalData<Q>, basket: &Basket, m: u32) -> Q {
    let m = i64::from(m);
    let volume_part = Q::from_frac(m * (m - 1) * (2 * m - 1), 12) * data.k3().clone();
    let chi_part = Q::from_int((2 * m - 1) * data.chi());
    volume_part - chi_part + l_term(basket, m as u32)
}

/// `P_m` for `m >= 2`, checked to be a nonnegative integer.
pub fn plurigenus<Q: Scalar>(data: &NumericalData<Q>, basket: &Basket, m: u32) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "P_{m} is not given by Riemann–Roch; P_1 = p_g is an input"
        )));
    }
    let value = chi_mk(data, basket, m);
    value
        .as_integer()
        .and_then(|n| n.to_biguint())
        .ok_or_else(|| Error::NonIntegralPlurigenus { m, value: value.to_string() })
}

/// Plurigenera `P_2 ..= P_{m_max}` together with the supplied `P_1 = p_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlurigenusTable<Q = Rational> {
    data: NumericalData<Q>,
    basket: Basket,
    values: Vec<(u32, BigUint)>,
}

impl<Q: Scalar> PlurigenusTable<Q> {
    pub fn data(&self) -> &NumericalData<Q> {
        &self.data
    }

    pub fn basket(&self) -> &Basket {
        &self.basket
    }

    pub fn p1(&self) -> u64 {
        self.data.pg()
    }

    /// `(m, P_m)` for `2 <= m <= m_max`.
    pub fn values(&self) -> &[(u32, BigUint)] {
        &self.values
    }

    pub fn m_max(&self) -> u32 {
        self.values.last().map_or(1, |&(m, _)| m)
    }

    /// `P_m` for any `1 <= m <= m_max`.
    pub fn get(&self, m: u32) -> Option<BigUint> {
        match m {
            0 => None,
            1 => Some(BigUint::from(self.p1())),
            _ => self.values.get(m as usize - 2).map(|(_, p)| p.clone()),
        }
    }
}

pub fn plurigenus_table<Q: Scalar>(
    data: &NumericalData<Q>,
    basket: &Basket,
    m_max: u32,
) -> Result<PlurigenusTable<Q>> {
    if m_max < 2 {
        return Err(Error::Precondition(format!("m_max must be at least 2, got {m_max}")));
    }
    let values = (2..=m_max)
        .map(|m| plurigenus(data, basket, m).map(|p| (m, p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PlurigenusTable { data: data.clone(), basket: basket.clone(), values })
}

/// True when `chi(mK)` is integral for every `1 <= m <= m_max`.
pub fn integral_up_to<Q: Scalar>(data: &NumericalData<Q>, basket: &Basket, m_max: u32) -> bool {
    (1..=m_max).all(|m| chi_mk(data, basket, m).as_integer().is_some())
}
