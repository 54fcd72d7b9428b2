//! Sparse multivariate truncated Laurent series over arbitrary-precision integers.
//!
//! A [`TruncatedSeries`] stores finitely many nonzero terms together with an
//! [`Order`]: every coefficient of weighted degree at most the order is exact.
//! Arithmetic propagates the order conservatively so no operation ever reports
//! a coefficient it cannot vouch for.

mod ledger;
mod registry;
mod substitute;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use ledger::PrefactorLedger;
pub use registry::{ExponentVector, VariableRegistry};
pub use substitute::{MonomialImage, Substitution};

use crate::error::{Error, Result};

/// Guaranteed-complete weighted degree of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    /// Coefficients of weighted degree `<= n` are exact.
    Upto(i64),
    /// The series is an exact Laurent polynomial.
    Exact,
}

impl Order {
    pub fn value(self) -> Option<i64> {
        match self {
            Order::Upto(n) => Some(n),
            Order::Exact => None,
        }
    }

    pub fn shift(self, k: i64) -> Order {
        match self {
            Order::Upto(n) => Order::Upto(n + k),
            Order::Exact => Order::Exact,
        }
    }

    pub fn admits(self, degree: i64) -> bool {
        match self {
            Order::Upto(n) => degree <= n,
            Order::Exact => true,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Upto(n) => write!(f, "{n}"),
            Order::Exact => write!(f, "exact"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    degree: i64,
    exps: ExponentVector,
    coeff: BigInt,
}

/// Canonical graded-lex order: ascending weighted degree, then descending
/// lexicographic exponents (so `r0` precedes `r1` within a degree).
fn key_cmp(da: i64, ea: &ExponentVector, db: i64, eb: &ExponentVector) -> Ordering {
    da.cmp(&db).then_with(|| eb.cmp(ea))
}

/// A coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub exps: ExponentVector,
    pub left: BigInt,
    pub right: BigInt,
}

/// Outcome of comparing two series on their common guaranteed range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub order: Order,
    pub terms_compared: usize,
    pub first_discrepancy: Option<Discrepancy>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

#[derive(Clone)]
pub struct TruncatedSeries {
    registry: VariableRegistry,
    terms: Vec<Term>,
    order: Order,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.registry == other.registry && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for TruncatedSeries {}

impl TruncatedSeries {
    pub fn zero(registry: &VariableRegistry, order: Order) -> Self {
        TruncatedSeries {
            registry: registry.clone(),
            terms: Vec::new(),
            order,
        }
    }

    pub fn one(registry: &VariableRegistry, order: Order) -> Self {
        Self::constant(registry, BigInt::one(), order)
    }

    pub fn constant(registry: &VariableRegistry, c: BigInt, order: Order) -> Self {
        Self::build(
            registry,
            std::iter::once((ExponentVector::zero(registry.len()), c)),
            order,
        )
    }

    /// Single term `coeff * x^exps`, exact up to `order`.
    pub fn monomial(
        registry: &VariableRegistry,
        exps: ExponentVector,
        coeff: BigInt,
        order: i64,
    ) -> Result<Self> {
        registry.check(&exps)?;
        let degree = registry.degree(&exps);
        if order < degree {
            return Err(Error::OrderBelowDegree { order, degree });
        }
        Ok(Self::build(registry, std::iter::once((exps, coeff)), Order::Upto(order)))
    }

    /// Exact Laurent polynomial from `(exponents, coefficient)` pairs.
    pub fn polynomial<I>(registry: &VariableRegistry, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        Self::from_terms(registry, terms, Order::Exact)
    }

    /// Collects terms, summing duplicates and dropping zeros and anything past `order`.
    pub fn from_terms<I>(registry: &VariableRegistry, terms: I, order: Order) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        for (e, _) in &terms {
            registry.check(e)?;
        }
        Ok(Self::build(registry, terms, order))
    }

    fn build<I>(registry: &VariableRegistry, terms: I, order: Order) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut acc: HashMap<ExponentVector, BigInt> = HashMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c;
        }
        Self::from_map(registry, acc, order)
    }

    fn from_map(
        registry: &VariableRegistry,
        acc: HashMap<ExponentVector, BigInt>,
        order: Order,
    ) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| Term {
                degree: registry.degree(&exps),
                exps,
                coeff,
            })
            .filter(|t| order.admits(t.degree))
            .collect();
        terms.sort_unstable_by(|a, b| key_cmp(a.degree, &a.exps, b.degree, &b.exps));
        TruncatedSeries {
            registry: registry.clone(),
            terms,
            order,
        }
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.registry
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// Lower bound on the weighted degree of every term of the true series.
    /// `None` means the series is exactly zero.
    pub fn floor(&self) -> Option<i64> {
        match (self.terms.first(), self.order) {
            (Some(t), _) => Some(t.degree),
            (None, Order::Upto(n)) => Some(n + 1),
            (None, Order::Exact) => None,
        }
    }

    /// Number of stored terms; [`Self::is_zero`] is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter().map(|t| (&t.exps, &t.coeff))
    }

    /// Exact coefficient of `x^exps`, or an error past the guaranteed order.
    pub fn coefficient(&self, exps: &ExponentVector) -> Result<BigInt> {
        self.registry.check(exps)?;
        let degree = self.registry.degree(exps);
        if let Order::Upto(order) = self.order {
            if degree > order {
                return Err(Error::BeyondOrder { degree, order });
            }
        }
        Ok(self
            .terms
            .binary_search_by(|t| key_cmp(t.degree, &t.exps, degree, exps))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_default())
    }

    /// Convenience lookup by variable name, e.g. `coeff_of(&[("r0", 1)])`.
    pub fn coeff_of(&self, powers: &[(&str, i32)]) -> Result<BigInt> {
        self.coefficient(&self.registry.exps(powers)?)
    }

    /// Terms of weighted degree exactly `degree`.
    fn slice(&self, degree: i64) -> &[Term] {
        let lo = self.terms.partition_point(|t| t.degree < degree);
        let hi = self.terms.partition_point(|t| t.degree <= degree);
        &self.terms[lo..hi]
    }

    fn prefix_upto(&self, degree: i64) -> &[Term] {
        &self.terms[..self.terms.partition_point(|t| t.degree <= degree)]
    }

    /// The unique term of minimal weighted degree.
    pub fn leading_term(&self) -> Result<(&ExponentVector, &BigInt)> {
        let first = self
            .terms
            .first()
            .ok_or_else(|| Error::NotAUnit("series is zero up to its order".into()))?;
        let count = self.slice(first.degree).len();
        if count > 1 {
            return Err(Error::AmbiguousLeadingTerm {
                degree: first.degree,
                count,
            });
        }
        Ok((&first.exps, &first.coeff))
    }

    /// Drops everything above `order` (or keeps the current order if lower).
    pub fn truncate(&self, order: i64) -> Self {
        let new_order = self.order.min(Order::Upto(order));
        TruncatedSeries {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| new_order.admits(t.degree))
                .cloned()
                .collect(),
            order: new_order,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.registry.ensure_same(&other.registry)?;
        let order = self.order.min(other.order);
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|t| (t.exps.clone(), t.coeff.clone()));
        Ok(Self::build(&self.registry, terms, order))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.registry, self.order);
        }
        TruncatedSeries {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    ..t.clone()
                })
                .collect(),
            order: self.order,
        }
    }

    /// Multiplies by the exact monomial `sign * x^exps`. The order shifts with it.
    pub fn mul_monomial(&self, exps: &ExponentVector, sign: i32) -> Result<Self> {
        self.registry.check(exps)?;
        let shift = self.registry.degree(exps);
        let s = BigInt::from(sign.signum());
        Ok(TruncatedSeries {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    degree: t.degree + shift,
                    exps: &t.exps + exps,
                    coeff: &t.coeff * &s,
                })
                .collect(),
            order: self.order.shift(shift),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.registry.ensure_same(&other.registry)?;
        let cap = |order: Order, floor: Option<i64>| match (order, floor) {
            (Order::Upto(n), Some(f)) => Order::Upto(n + f),
            _ => Order::Exact,
        };
        let order = cap(self.order, other.floor()).min(cap(other.order, self.floor()));
        let mut acc: HashMap<ExponentVector, BigInt> = HashMap::new();
        for ta in &self.terms {
            let partners = match order {
                Order::Upto(n) => other.prefix_upto(n - ta.degree),
                Order::Exact => &other.terms[..],
            };
            for tb in partners {
                *acc.entry(&ta.exps + &tb.exps).or_default() += &ta.coeff * &tb.coeff;
            }
        }
        Ok(Self::from_map(&self.registry, acc, order))
    }

    /// Product `(1 + c * x^exps) * self` without building the binomial.
    pub fn mul_binomial(&self, c: i32, exps: &ExponentVector) -> Result<Self> {
        let shifted = self.mul_monomial(exps, c)?;
        let deg = self.registry.degree(exps);
        if deg < 0 {
            // the binomial's floor is negative, so the order drops with it
            let order = self.order.shift(deg);
            return self.truncate_to(order).add(&shifted.truncate_to(order));
        }
        self.add(&shifted.truncate_to(self.order))
    }

    /// Quotient `self / (1 + c * x^exps)` for a positive-degree monomial,
    /// expanded as a geometric series.
    pub fn div_binomial(&self, c: i32, exps: &ExponentVector) -> Result<Self> {
        self.registry.check(exps)?;
        let deg = self.registry.degree(exps);
        if deg <= 0 {
            return Err(Error::NotAUnit(format!(
                "1 + c*{} has no unique leading term",
                self.registry.render(exps)
            )));
        }
        let (Order::Upto(n), Some(floor)) = (self.order, self.floor()) else {
            return match self.order {
                Order::Exact if !self.is_zero() => Err(Error::Unbounded("divided")),
                _ => Ok(self.clone()),
            };
        };
        let sign = if c < 0 { 1 } else { -1 };
        let mut result = self.clone();
        let mut power = self.clone();
        for _ in 0..(n - floor) / deg {
            power = power.mul_monomial(exps, sign)?.truncate(n);
            result = result.add(&power)?;
        }
        Ok(result)
    }

    fn truncate_to(&self, order: Order) -> Self {
        match order {
            Order::Upto(n) => self.truncate(n),
            Order::Exact => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut result = Self::one(&self.registry, Order::Exact);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Splits off the leading monomial `c x^e`: returns `(e, c, self / x^e)`.
    fn normalize(&self, what: &'static str) -> Result<(ExponentVector, BigInt, Self)> {
        let (lead_exps, lead_coeff) = self.leading_term()?;
        let lead_exps = lead_exps.clone();
        let lead_coeff = lead_coeff.clone();
        if self.order == Order::Exact && self.terms.len() > 1 {
            return Err(Error::Unbounded(what));
        }
        let shifted = self.mul_monomial(&-&lead_exps, 1)?;
        Ok((lead_exps, lead_coeff, shifted))
    }

    /// Multiplicative inverse of a series whose leading term is `+-x^e`.
    pub fn invert_unit(&self) -> Result<Self> {
        let (lead_exps, lead_coeff, a) = self.normalize("inverted")?;
        if lead_coeff.abs() != BigInt::one() {
            return Err(Error::NotAUnit(format!(
                "leading coefficient {lead_coeff} is not +-1"
            )));
        }
        // a = lead_coeff * (1 + higher terms); invert 1 + ... grade by grade
        let a = a.scale(&lead_coeff);
        let inner = match a.order {
            Order::Exact => Self::one(&self.registry, Order::Exact),
            Order::Upto(m) => a.graded_solve(m, |slices, d| {
                let mut acc: HashMap<ExponentVector, BigInt> = HashMap::new();
                for k in 1..=d {
                    accumulate_product(&mut acc, a.slice(k), &slices[(d - k) as usize], -1);
                }
                Ok(acc)
            })?,
        };
        Ok(inner.mul_monomial(&-&lead_exps, 1)?.scale(&lead_coeff))
    }

    /// Square root with positive leading coefficient, solved grade by grade.
    ///
    /// Every coefficient must come out integral; a failed division means the
    /// input is not a square in the integer series ring.
    pub fn sqrt_unit(&self) -> Result<Self> {
        let (lead_exps, lead_coeff, a) = self.normalize("square-rooted")?;
        if lead_exps.iter().any(|e| e % 2 != 0) {
            return Err(Error::OddLeadingExponent(lead_exps.as_slice().to_vec()));
        }
        let root = if lead_coeff.is_positive() {
            lead_coeff.sqrt()
        } else {
            BigInt::zero()
        };
        if root.is_zero() || &root * &root != lead_coeff {
            return Err(Error::NonSquareLeadingCoefficient(lead_coeff.to_string()));
        }
        let half = lead_exps.iter().map(|e| e / 2).collect::<ExponentVector>();
        let two_root = &root * BigInt::from(2);
        let inner = match a.order {
            Order::Exact => Self::constant(&self.registry, root.clone(), Order::Exact),
            Order::Upto(m) => {
                let zero = ExponentVector::zero(self.registry.len());
                a.graded_solve_from(m, vec![(zero, root.clone())], |slices, d| {
                    let mut acc: HashMap<ExponentVector, BigInt> = HashMap::new();
                    for t in a.slice(d) {
                        *acc.entry(t.exps.clone()).or_default() += &t.coeff;
                    }
                    for k in 1..d {
                        accumulate_product(
                            &mut acc,
                            &slices[k as usize],
                            &slices[(d - k) as usize],
                            -1,
                        );
                    }
                    for c in acc.values_mut() {
                        let (q, r) = c.div_rem(&two_root);
                        if !r.is_zero() {
                            return Err(Error::NonIntegralRoot { degree: d });
                        }
                        *c = q;
                    }
                    Ok(acc)
                })?
            }
        };
        inner.mul_monomial(&half, 1)
    }

    fn graded_solve<F>(&self, max_degree: i64, step: F) -> Result<Self>
    where
        F: FnMut(&[Vec<Term>], i64) -> Result<HashMap<ExponentVector, BigInt>>,
    {
        let zero = ExponentVector::zero(self.registry.len());
        self.graded_solve_from(max_degree, vec![(zero, BigInt::one())], step)
    }

    /// Builds a series with floor 0 slice by slice. Slice 0 is `initial`; slice
    /// `d` is produced by `step` from slices `0..d`.
    fn graded_solve_from<F>(
        &self,
        max_degree: i64,
        initial: Vec<(ExponentVector, BigInt)>,
        mut step: F,
    ) -> Result<Self>
    where
        F: FnMut(&[Vec<Term>], i64) -> Result<HashMap<ExponentVector, BigInt>>,
    {
        let reg = &self.registry;
        let to_terms = |items: Vec<(ExponentVector, BigInt)>| -> Vec<Term> {
            items
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exps, coeff)| Term {
                    degree: reg.degree(&exps),
                    exps,
                    coeff,
                })
                .collect()
        };
        let mut slices: Vec<Vec<Term>> = Vec::new();
        if max_degree >= 0 {
            slices.push(to_terms(initial));
        }
        for d in 1..=max_degree {
            let acc = step(&slices, d)?;
            slices.push(to_terms(acc.into_iter().collect()));
        }
        let terms = slices.into_iter().flatten().map(|t| (t.exps, t.coeff));
        Ok(Self::build(reg, terms, Order::Upto(max_degree)))
    }

    /// Compares coefficients on the common guaranteed range of both series.
    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        self.registry.ensure_same(&other.registry)?;
        let order = self.order.min(other.order);
        let diff = self.truncate_to(order).sub(&other.truncate_to(order))?;
        let terms_compared = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .filter(|t| order.admits(t.degree))
            .count();
        let first_discrepancy = match diff.terms.first() {
            None => None,
            Some(t) => Some(Discrepancy {
                exps: t.exps.clone(),
                left: self.coefficient(&t.exps)?,
                right: other.coefficient(&t.exps)?,
            }),
        };
        Ok(Comparison {
            order,
            terms_compared,
            first_discrepancy,
        })
    }

    /// Coefficientwise equality on the common guaranteed range.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.compare(other)?.agrees())
    }

    /// Renders the series as a sum of terms in canonical order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return format!("0 + O({})", self.order);
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let mono = self.registry.render(&t.exps);
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (abs.is_one(), mono.as_str()) {
                (true, "1") => out.push('1'),
                (true, m) => out.push_str(m),
                (false, "1") => out.push_str(&abs.to_string()),
                (false, m) => out.push_str(&format!("{abs}*{m}")),
            }
        }
        if let Order::Upto(n) = self.order {
            out.push_str(&format!(" + O({})", n + 1));
        }
        out
    }
}

fn accumulate_product(
    acc: &mut HashMap<ExponentVector, BigInt>,
    left: &[Term],
    right: &[Term],
    sign: i32,
) {
    for a in left {
        for b in right {
            let c = &a.coeff * &b.coeff;
            let e = acc.entry(&a.exps + &b.exps).or_default();
            if sign < 0 {
                *e -= c;
            } else {
                *e += c;
            }
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}", self.registry, self.render())
    }
}
