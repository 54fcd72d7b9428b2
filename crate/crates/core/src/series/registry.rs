use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Integer exponent per registry variable. Negative entries are Laurent terms.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(SmallVec<[i32; 8]>);

impl ExponentVector {
    pub fn zero(len: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, len))
    }

    /// Unit vector `x_index^power` in a registry of `len` variables.
    pub fn unit(len: usize, index: usize, power: i32) -> Self {
        let mut e = Self::zero(len);
        e.0[index] = power;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    /// Sum of the entries (every variable with weight 1).
    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn scaled(&self, k: i32) -> Self {
        ExponentVector(self.0.iter().map(|&e| e * k).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &i32> {
        self.0.iter()
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

impl From<&[i32]> for ExponentVector {
    fn from(v: &[i32]) -> Self {
        ExponentVector(SmallVec::from_slice(v))
    }
}

impl<const N: usize> From<[i32; N]> for ExponentVector {
    fn from(v: [i32; N]) -> Self {
        ExponentVector(SmallVec::from_slice(&v))
    }
}

impl FromIterator<i32> for ExponentVector {
    fn from_iter<I: IntoIterator<Item = i32>>(iter: I) -> Self {
        ExponentVector(iter.into_iter().collect())
    }
}

impl Index<usize> for ExponentVector {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), rhs.len());
        ExponentVector(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), rhs.len());
        ExponentVector(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|e| -e).collect())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RegistryInner {
    names: Vec<String>,
    weights: Vec<i64>,
}

/// Ordered set of variable names together with the grading weight of each.
///
/// The truncation order of a series is measured in weighted degree
/// `sum_i weight_i * exp_i`. Registries that track curve classes use weight 1
/// everywhere, so there the order is the ordinary total degree. Bivariate and
/// trivariate q-series are built in registries whose weights equal the degrees
/// of the monomials they are later substituted with, which makes every such
/// substitution degree-preserving.
#[derive(Clone, PartialEq, Eq)]
pub struct VariableRegistry(Arc<RegistryInner>);

impl VariableRegistry {
    /// Registry with every weight equal to 1.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::with_weights(names, &vec![1; names.len()])
    }

    pub fn with_weights<S: AsRef<str>>(names: &[S], weights: &[i64]) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRegistry(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidRegistry("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRegistry(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VariableRegistry(Arc::new(RegistryInner {
            names,
            weights: weights.to_vec(),
        })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.0.weights
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_owned()))
    }

    /// Weighted degree of an exponent vector.
    pub fn degree(&self, exps: &ExponentVector) -> i64 {
        exps.iter()
            .zip(self.0.weights.iter())
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn check(&self, exps: &ExponentVector) -> Result<()> {
        if exps.len() != self.len() {
            return Err(Error::ExponentLength {
                expected: self.len(),
                got: exps.len(),
            });
        }
        Ok(())
    }

    /// Builds an exponent vector from `(name, power)` pairs; unnamed variables get 0.
    pub fn exps(&self, powers: &[(&str, i32)]) -> Result<ExponentVector> {
        let mut e = ExponentVector::zero(self.len());
        for &(name, p) in powers {
            e.0[self.index_of(name)?] += p;
        }
        Ok(e)
    }

    pub(crate) fn ensure_same(&self, other: &VariableRegistry) -> Result<()> {
        if Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0 {
            Ok(())
        } else {
            Err(Error::RegistryMismatch {
                left: self.0.names.clone(),
                right: other.0.names.clone(),
            })
        }
    }

    /// Human-readable rendering of a monomial, e.g. `r0^2*s1^-1`.
    pub fn render(&self, exps: &ExponentVector) -> String {
        let parts: Vec<String> = self
            .names()
            .iter()
            .zip(exps.iter())
            .filter(|(_, &e)| e != 0)
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for VariableRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .names()
            .iter()
            .zip(self.weights())
            .map(|(n, w)| format!("{n}:{w}"))
            .collect();
        write!(f, "Registry[{}]", entries.join(", "))
    }
}
