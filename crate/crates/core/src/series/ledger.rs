use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Bookkeeping for the fractional prefactors of theta and eta.
///
/// Represents `i^i_power * q^q_exp * prod_v v^var_exps[v]`. Series values never
/// carry these factors; a ledger is attached alongside and must cancel before a
/// result leaves the crate.
///
/// Square roots of negated arguments use the fixed branch `(-1)^(1/2) = i`, so
/// `(-x)^e = i^(2e) x^e` for half-integral `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefactorLedger {
    i_power: u8,
    q_exp: Rational64,
    var_exps: BTreeMap<String, Rational64>,
}

impl Default for PrefactorLedger {
    fn default() -> Self {
        Self::trivial()
    }
}

impl PrefactorLedger {
    pub fn trivial() -> Self {
        PrefactorLedger {
            i_power: 0,
            q_exp: Rational64::zero(),
            var_exps: BTreeMap::new(),
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_power(k: i64) -> Self {
        PrefactorLedger {
            i_power: k.rem_euclid(4) as u8,
            ..Self::trivial()
        }
    }

    pub fn q_power(exp: Rational64) -> Self {
        PrefactorLedger {
            q_exp: exp,
            ..Self::trivial()
        }
    }

    /// `v^exp` for a named tracking variable.
    pub fn var_power(name: &str, exp: Rational64) -> Self {
        let mut l = Self::trivial();
        if !exp.is_zero() {
            l.var_exps.insert(name.to_owned(), exp);
        }
        l
    }

    /// `(sign * prod_v v^e_v)^exp` where `exp` has denominator dividing 2.
    pub fn monomial_power(sign: i32, vars: &[(&str, i32)], exp: Rational64) -> Result<Self> {
        let mut l = Self::trivial();
        for &(name, e) in vars {
            l = l.mul(&Self::var_power(name, exp * Rational64::from_integer(e as i64)));
        }
        if sign < 0 {
            let twice = exp * Rational64::from_integer(2);
            if !twice.is_integer() {
                return Err(Error::ResidualLedger(format!(
                    "power {exp} of a negated argument is not half-integral"
                )));
            }
            l = l.mul(&Self::i_power(twice.to_integer()));
        }
        Ok(l)
    }

    pub fn i_exponent(&self) -> u8 {
        self.i_power
    }

    pub fn q_exponent(&self) -> Rational64 {
        self.q_exp
    }

    pub fn var_exponent(&self, name: &str) -> Rational64 {
        self.var_exps.get(name).copied().unwrap_or_else(Rational64::zero)
    }

    /// Componentwise addition of exponents.
    pub fn mul(&self, other: &Self) -> Self {
        let mut var_exps = self.var_exps.clone();
        for (k, v) in &other.var_exps {
            let e = var_exps.entry(k.clone()).or_insert_with(Rational64::zero);
            *e += v;
            if e.is_zero() {
                var_exps.remove(k);
            }
        }
        PrefactorLedger {
            i_power: (self.i_power + other.i_power) % 4,
            q_exp: self.q_exp + other.q_exp,
            var_exps,
        }
    }

    pub fn inverse(&self) -> Self {
        PrefactorLedger {
            i_power: (4 - self.i_power) % 4,
            q_exp: -self.q_exp,
            var_exps: self.var_exps.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let r = Rational64::from_integer(k);
        PrefactorLedger {
            i_power: (self.i_power as i64 * k).rem_euclid(4) as u8,
            q_exp: self.q_exp * r,
            var_exps: if k == 0 {
                BTreeMap::new()
            } else {
                self.var_exps.iter().map(|(n, v)| (n.clone(), v * r)).collect()
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.i_power == 0 && self.q_exp.is_zero() && self.var_exps.is_empty()
    }

    /// The real scalar `+1` or `-1` this ledger reduces to, if it has no
    /// variable or `q` dependence left and an even power of `i`.
    pub fn as_sign(&self) -> Option<i32> {
        if !self.q_exp.is_zero() || !self.var_exps.is_empty() {
            return None;
        }
        match self.i_power {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for PrefactorLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i^{}", self.i_power)?;
        if !self.q_exp.is_zero() {
            write!(f, " q^({})", self.q_exp)?;
        }
        for (n, e) in &self.var_exps {
            write!(f, " {n}^({e})")?;
        }
        if self.is_trivial() {
            write!(f, " (trivial)")?;
        }
        Ok(())
    }
}

impl One for PrefactorLedger {
    fn one() -> Self {
        Self::trivial()
    }
}

impl std::ops::Mul for PrefactorLedger {
    type Output = PrefactorLedger;
    fn mul(self, rhs: Self) -> Self {
        PrefactorLedger::mul(&self, &rhs)
    }
}
