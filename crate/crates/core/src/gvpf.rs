//! Closed-form genus-0 Gopakumar-Vafa partition functions and the cross-check
//! against the enumeration oracle.
//!
//! Both closed forms live in [`BananaShape::registry`]: `(r0, r1, s0, s1)` for
//! 2x2 and `(r0, ..., r_{w-1}, s)` for 1xW, every variable of weight 1, so the
//! order of a result is its total degree.
//!
//! ```text
//! pf_22 = 2 sqrt( phi(r0) phi(s0) phi(r1) phi(s1) / (phi(r0 s0) phi(r1 s1)) ),   Q = r0 r1 s0 s1
//! pf_1w = s phi(s) sum_i prod_{k=i}^{i+w-2} Ell_{Q,s}(R_{i;k}),                    Q = prod_i r_i s
//! ```
//!
//! where `phi(x)` is `Jphi(Q, x)` and `R_{i;k} = r_i ... r_k s^{k-i+1}` with
//! indices mod `w`.

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::geometry::{BananaShape, CurveClass};
use crate::oracle::{behrend_twist, naive_pf};
use crate::qseries::{elliptic_genus_graded, jacobi_phi_graded, theta_ledger, ProductBuilder};
use crate::series::{
    Comparison, ExponentVector, Order, PrefactorLedger, Substitution, TruncatedSeries,
    VariableRegistry,
};

/// `Jphi(Q, x)` for monomials `Q` and `x` of the target registry, via
/// substitution from the bivariate series graded `(deg Q, deg x)`.
fn phi_at(target: &VariableRegistry, q: &ExponentVector, x: &ExponentVector, order: i64) -> Result<TruncatedSeries> {
    let phi = jacobi_phi_graded(target.degree(q), target.degree(x), order)?;
    let sub = Substitution::new(phi.registry(), target)
        .map_exps("q", 1, q.clone())?
        .map_exps("p", 1, x.clone())?;
    phi.substitute_monomials(&sub)
}

/// Margin for intermediate factors whose floors are negative.
const SLACK: i64 = 8;

/// Closed form for the 2x2 shape through total degree `order`.
pub fn pf_22(order: i64) -> Result<TruncatedSeries> {
    let reg = BananaShape::two_by_two().registry()?;
    let q = reg.exps(&[("r0", 1), ("r1", 1), ("s0", 1), ("s1", 1)])?;
    let work = order + SLACK;
    let mut numer = TruncatedSeries::one(&reg, Order::Exact);
    for v in ["r0", "s0", "r1", "s1"] {
        numer = numer.mul(&phi_at(&reg, &q, &reg.exps(&[(v, 1)])?, work)?)?;
    }
    let mut denom = TruncatedSeries::one(&reg, Order::Exact);
    for (a, b) in [("r0", "s0"), ("r1", "s1")] {
        denom = denom.mul(&phi_at(&reg, &q, &reg.exps(&[(a, 1), (b, 1)])?, work)?)?;
    }
    let ratio = numer.mul(&denom.invert_unit()?)?;
    let result = ratio.sqrt_unit()?.scale(&BigInt::from(2));
    checked_truncate(result, order)
}

fn checked_truncate(s: TruncatedSeries, order: i64) -> Result<TruncatedSeries> {
    match s.order() {
        Order::Upto(n) if n < order => Err(Error::BeyondOrder { degree: order, order: n }),
        _ => Ok(s.truncate(order)),
    }
}

/// A theta-route result with its assembled prefactor.
#[derive(Clone, Debug)]
pub struct ThetaRoute {
    pub series: TruncatedSeries,
    pub ledger: PrefactorLedger,
}

/// The 2x2 closed form through theta functions of negated arguments:
///
/// ```text
/// naive = c eta^{-6} theta(-r0) theta(-s0) theta(-r1) theta(-s1) / (theta(r0 s0) theta(r1 s1))
/// pf_22 = naive with every variable negated
/// ```
///
/// Each `theta` and `eta` contributes its prefactor to a ledger, with the
/// branch `(-1)^{1/2} = i` for negated arguments. The scalar `c = 2 i^2` is the
/// one for which the ledger cancels to exactly 1; the theta factors are
/// expanded directly as products, independently of the `phi` route.
pub fn pf_22_theta(order: i64) -> Result<ThetaRoute> {
    let reg = BananaShape::two_by_two().registry()?;
    let q = reg.exps(&[("r0", 1), ("r1", 1), ("s0", 1), ("s1", 1)])?;
    let mut ledger = PrefactorLedger::i_power(2)
        .mul(&PrefactorLedger::q_power(Rational64::new(1, 24)).pow(-6));
    let mut b = ProductBuilder::new(&reg).eta(&q, -6)?;
    for v in ["r0", "s0", "r1", "s1"] {
        // theta1(q, -x) = -i q^{1/8} (-x)^{-1/2} theta~(q, -x)
        ledger = ledger
            .mul(&PrefactorLedger::i_power(3))
            .mul(&PrefactorLedger::q_power(Rational64::new(1, 8)))
            .mul(&PrefactorLedger::monomial_power(-1, &[(v, 1)], Rational64::new(-1, 2))?);
        b = b.signed_theta(&q, -1, &reg.exps(&[(v, 1)])?, 1)?;
    }
    for (x, y) in [("r0", "s0"), ("r1", "s1")] {
        ledger = ledger.mul(&theta_ledger(&[(x, 1), (y, 1)])?.inverse());
        b = b.theta(&q, &reg.exps(&[(x, 1), (y, 1)])?, -1)?;
    }
    if !ledger.is_trivial() {
        return Err(Error::ResidualLedger(ledger.to_string()));
    }
    let naive = b.build(order)?.scale(&BigInt::from(2));
    Ok(ThetaRoute {
        series: behrend_twist(&naive)?,
        ledger,
    })
}

fn check_w(w: u32) -> Result<BananaShape> {
    if w == 0 {
        return Err(Error::InvalidShape("w must be positive".into()));
    }
    BananaShape::one_by(w)
}

/// Closed form for the 1xW shape through total degree `order`.
pub fn pf_1w(w: u32, order: i64) -> Result<TruncatedSeries> {
    let shape = check_w(w)?;
    let reg = shape.registry()?;
    let wi = w as i32;
    let r = |i: i32| format!("r{}", i.rem_euclid(wi));
    let s_exps = reg.exps(&[("s", 1)])?;
    let mut q = reg.exps(&[("s", wi)])?;
    for i in 0..wi {
        q = &q + &reg.exps(&[(&r(i), 1)])?;
    }
    let work = order + SLACK;
    // s phi(Q, s)
    let prefix = phi_at(&reg, &q, &s_exps, work)?.mul_monomial(&s_exps, 1)?;
    // Ell in the grading dictated by Q, s and R_{i;i+j}; one series per length j
    let ells: Vec<TruncatedSeries> = (0..wi - 1)
        .map(|j| elliptic_genus_graded([2 * w as i64, 1, 2 * j as i64 + 2], work))
        .collect::<Result<_>>()?;
    let mut total = TruncatedSeries::zero(&reg, Order::Exact);
    for i in 0..wi {
        let mut prod = TruncatedSeries::one(&reg, Order::Exact);
        for (j, ell) in ells.iter().enumerate() {
            let mut rr = reg.exps(&[("s", j as i32 + 1)])?;
            for l in i..=i + j as i32 {
                rr = &rr + &reg.exps(&[(&r(l), 1)])?;
            }
            let sub = Substitution::new(ell.registry(), &reg)
                .map_exps("q", 1, q.clone())?
                .map_exps("y", 1, s_exps.clone())?
                .map_exps("t", 1, rr)?;
            prod = prod.mul(&ell.substitute_monomials(&sub)?)?;
        }
        total = total.add(&prod)?;
    }
    checked_truncate(prefix.mul(&total)?, order)
}

/// Closed form for any supported shape.
pub fn pf(shape: BananaShape, order: i64) -> Result<TruncatedSeries> {
    shape.require_supported()?;
    if shape.is_two_by_two() {
        pf_22(order)
    } else {
        pf_1w(shape.w, order)
    }
}

/// Outcome of comparing the closed form with the twisted enumeration.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub shape: BananaShape,
    pub order: i64,
    pub comparison: Comparison,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.comparison.agrees()
    }
}

/// Compares `pf(shape)` with `behrend_twist(naive_pf(shape))` term by term.
pub fn cross_check(shape: BananaShape, order: u32) -> Result<CrossCheckReport> {
    let closed = pf(shape, order as i64)?;
    let twisted = behrend_twist(&naive_pf(shape, order)?)?;
    Ok(CrossCheckReport {
        shape,
        order: order as i64,
        comparison: closed.compare(&twisted)?,
    })
}

/// One row of a [`GVTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVEntry {
    pub class: CurveClass,
    pub exponents: Vec<i32>,
    pub value: BigInt,
}

/// Invariants `n^0_beta` for every class with B-degree one, through total
/// degree `order` in the A and C classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVTable {
    pub shape: BananaShape,
    pub order: i64,
    pub variables: Vec<String>,
    pub entries: Vec<GVEntry>,
}

/// Tabulates the closed-form partition function in graded-lex order.
pub fn gv_table(shape: BananaShape, order: i64) -> Result<GVTable> {
    table_from_series(shape, &pf(shape, order)?)
}

/// Tabulates an already computed partition function.
pub fn table_from_series(shape: BananaShape, series: &TruncatedSeries) -> Result<GVTable> {
    let order = series
        .order()
        .value()
        .ok_or(Error::Unbounded("tabulated"))?;
    let entries = series
        .terms()
        .map(|(e, c)| {
            Ok(GVEntry {
                class: CurveClass::from_exponents(shape, e.as_slice())?,
                exponents: e.as_slice().to_vec(),
                value: c.clone(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(GVTable {
        shape,
        order,
        variables: series.registry().names().to_vec(),
        entries,
    })
}
