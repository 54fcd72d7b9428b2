//! Theta, eta, the weak Jacobi form `phi_{-2,1}` and the equivariant elliptic
//! genus of `C^2`, all as truncated integer Laurent series.
//!
//! Fractional prefactors never enter a series. The reduced forms used here are
//!
//! ```text
//! eta~(q)     = prod_{m>=1} (1 - q^m)                      eta    = q^{1/24} eta~
//! theta~(q,p) = prod_{m>=1} (1 - q^m)(1 - q^{m-1} p)(1 - q^m / p)
//!                                                          theta1 = -i q^{1/8} p^{-1/2} theta~
//! Jphi(q,p)   = p^{-1} (1 - p)^2 prod_{m>=1} (1 - q^m/p)^2 (1 - q^m p)^2 / (1 - q^m)^4
//!             = p^{-1} theta~^2 / eta~^6
//! ```
//!
//! Every builder takes a grading. `q` must have positive weight larger than
//! the absolute weight of `p`; the returned order is in weighted degree. The
//! plain `(q, p)` constructors use weights `(1, 0)`, in which weighted order is
//! the q-order.

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::series::{
    ExponentVector, Order, PrefactorLedger, Substitution, TruncatedSeries, VariableRegistry,
};

/// One factor family of a [`ProductBuilder`].
#[derive(Clone, Debug)]
enum Family {
    /// `(1 + c x^exps)^power`
    Binomial(i32, ExponentVector, i32),
    /// `prod_{m >= 1} (1 + c q^m x^shift)^power`, expanded only as far as needed.
    Tail {
        c: i32,
        q: ExponentVector,
        shift: ExponentVector,
        power: i32,
    },
}

/// Lazily multiplied product `sign * x^E * prod (1 + c_j y_j)^{k_j}`, possibly
/// with infinite families `prod_m (1 - q^m x)^k`.
///
/// Binomials whose monomial has negative degree are rewritten as
/// `c y (1 + c / y)` so that every remaining factor is `1 + (positive degree)`,
/// or has degree zero and sits in a numerator. Infinite families are cut only
/// at build time, once the order needed for the unit part is known.
#[derive(Clone, Debug)]
pub struct ProductBuilder {
    registry: VariableRegistry,
    sign: i32,
    prefactor: ExponentVector,
    factors: Vec<Family>,
}

impl ProductBuilder {
    pub fn new(registry: &VariableRegistry) -> Self {
        ProductBuilder {
            registry: registry.clone(),
            sign: 1,
            prefactor: ExponentVector::zero(registry.len()),
            factors: Vec::new(),
        }
    }

    /// Multiplies by `sign * x^exps`.
    pub fn monomial(mut self, sign: i32, exps: &ExponentVector) -> Self {
        self.sign *= sign.signum();
        self.prefactor = &self.prefactor + exps;
        self
    }

    /// Multiplies by `(1 + c * x^exps)^power`; `c` is `+1` or `-1`.
    pub fn factor(mut self, c: i32, exps: ExponentVector, power: i32) -> Self {
        if power != 0 {
            self.factors.push(Family::Binomial(c.signum(), exps, power));
        }
        self
    }

    /// Multiplies by `prod_{m >= 1} (1 - q^m x^shift)^power`. Every factor must
    /// have positive degree, which holds when `deg q > |deg x^shift|`.
    pub fn tail(self, q: &ExponentVector, shift: &ExponentVector, power: i32) -> Result<Self> {
        self.signed_tail(-1, q, shift, power)
    }

    /// Like [`ProductBuilder::tail`] with factors `1 + c q^m x^shift`.
    pub fn signed_tail(
        mut self,
        c: i32,
        q: &ExponentVector,
        shift: &ExponentVector,
        power: i32,
    ) -> Result<Self> {
        let dq = self.registry.degree(q);
        let ds = self.registry.degree(shift);
        if dq <= ds.abs() {
            return Err(Error::InvalidRegistry(format!(
                "the modular parameter needs degree above {}, got {dq}",
                ds.abs()
            )));
        }
        if power != 0 {
            self.factors.push(Family::Tail {
                c: c.signum(),
                q: q.clone(),
                shift: shift.clone(),
                power,
            });
        }
        Ok(self)
    }

    /// Multiplies by `eta~(q)^power`.
    pub fn eta(self, q: &ExponentVector, power: i32) -> Result<Self> {
        let zero = ExponentVector::zero(self.registry.len());
        self.tail(q, &zero, power)
    }

    /// Multiplies by `theta~(q, x)^power`.
    pub fn theta(self, q: &ExponentVector, x: &ExponentVector, power: i32) -> Result<Self> {
        self.signed_theta(q, 1, x, power)
    }

    /// Multiplies by `theta~(q, sign * x)^power`.
    pub fn signed_theta(
        self,
        q: &ExponentVector,
        sign: i32,
        x: &ExponentVector,
        power: i32,
    ) -> Result<Self> {
        let c = -sign.signum();
        self.factor(c, x.clone(), power)
            .eta(q, power)?
            .signed_tail(c, q, x, power)?
            .signed_tail(c, q, &-x, power)
    }

    /// Expands the product through weighted degree `order`.
    pub fn build(&self, order: i64) -> Result<TruncatedSeries> {
        let reg = &self.registry;
        let mut sign = self.sign;
        let mut prefactor = self.prefactor.clone();
        // (c, exps, power) with c == 0 marking the constant factor 2
        let mut finite = Vec::new();
        for f in &self.factors {
            let Family::Binomial(c, exps, power) = f else {
                continue;
            };
            reg.check(exps)?;
            if exps.is_zero() {
                if *c < 0 {
                    if *power > 0 {
                        return Ok(TruncatedSeries::zero(reg, Order::Upto(order)));
                    }
                    return Err(Error::NotAUnit("division by 1 - 1".into()));
                }
                if *power < 0 {
                    return Err(Error::NotAUnit("division by 2".into()));
                }
                finite.push((0, exps.clone(), *power));
            } else if reg.degree(exps) < 0 {
                prefactor = &prefactor + &exps.scaled(*power);
                if *c < 0 && power % 2 != 0 {
                    sign = -sign;
                }
                finite.push((*c, -exps, *power));
            } else {
                finite.push((*c, exps.clone(), *power));
            }
        }
        let inner_order = order - reg.degree(&prefactor);
        for f in &self.factors {
            let Family::Tail { c, q, shift, power } = f else {
                continue;
            };
            reg.check(q)?;
            reg.check(shift)?;
            let dq = reg.degree(q);
            let ds = reg.degree(shift);
            let mut m = 1;
            while m * dq + ds <= inner_order {
                finite.push((*c, &q.scaled(m as i32) + shift, *power));
                m += 1;
            }
        }
        let mut acc = TruncatedSeries::one(reg, Order::Upto(inner_order));
        for (c, exps, power) in &finite {
            if *c == 0 {
                acc = acc.scale(&BigInt::from(2).pow(*power as u32));
                continue;
            }
            if reg.degree(exps) > inner_order {
                continue;
            }
            for _ in 0..power.unsigned_abs() {
                acc = if *power > 0 {
                    acc.mul_binomial(*c, exps)?
                } else {
                    acc.div_binomial(*c, exps)?
                };
            }
        }
        acc.mul_monomial(&prefactor, sign)
    }
}

/// `(q, p)` registry with the given weights.
pub fn qp_registry(wq: i64, wp: i64) -> Result<VariableRegistry> {
    VariableRegistry::with_weights(&["q", "p"], &[wq, wp])
}

/// `(q, y, t)` registry with the given weights.
pub fn qyt_registry(weights: [i64; 3]) -> Result<VariableRegistry> {
    VariableRegistry::with_weights(&["q", "y", "t"], &weights)
}

/// `eta~` evaluated at the monomial `q`, through weighted degree `order`.
pub fn eta_tilde_at(reg: &VariableRegistry, q: &ExponentVector, order: i64) -> Result<TruncatedSeries> {
    ProductBuilder::new(reg).eta(q, 1)?.build(order)
}

/// `theta~(q, p)` evaluated at monomials, through weighted degree `order`.
pub fn theta_tilde_at(
    reg: &VariableRegistry,
    q: &ExponentVector,
    p: &ExponentVector,
    order: i64,
) -> Result<TruncatedSeries> {
    ProductBuilder::new(reg).theta(q, p, 1)?.build(order)
}

/// `Jphi(q, p)` evaluated at monomials by direct product expansion.
pub fn jacobi_phi_at(
    reg: &VariableRegistry,
    q: &ExponentVector,
    p: &ExponentVector,
    order: i64,
) -> Result<TruncatedSeries> {
    ProductBuilder::new(reg)
        .monomial(1, &-p)
        .factor(-1, p.clone(), 2)
        .tail(q, p, 2)?
        .tail(q, &-p, 2)?
        .eta(q, -4)?
        .build(order)
}

/// `theta1 = ledger * series` with the ledger kept symbolic.
#[derive(Clone, Debug)]
pub struct ReducedTheta {
    pub series: TruncatedSeries,
    pub ledger: PrefactorLedger,
}

/// `eta = ledger * series`.
#[derive(Clone, Debug)]
pub struct ReducedEta {
    pub series: TruncatedSeries,
    pub ledger: PrefactorLedger,
}

/// `eta~(q)` over the one-variable registry `q`, through q-order `n`.
pub fn eta_reduced(n: i64) -> Result<ReducedEta> {
    let reg = VariableRegistry::new(&["q"])?;
    Ok(ReducedEta {
        series: eta_tilde_at(&reg, &reg.exps(&[("q", 1)])?, n)?,
        ledger: PrefactorLedger::q_power(Rational64::new(1, 24)),
    })
}

/// `theta~(q, p)` over `(q, p)` with weights `(1, 0)`, through q-order `n`.
pub fn theta1_reduced(n: i64) -> Result<ReducedTheta> {
    let reg = qp_registry(1, 0)?;
    Ok(ReducedTheta {
        series: theta_tilde_at(&reg, &reg.exps(&[("q", 1)])?, &reg.exps(&[("p", 1)])?, n)?,
        ledger: theta_ledger(&[("p", 1)])?,
    })
}

/// Prefactor `-i q^{1/8} x^{-1/2}` of `theta1(q, x)` for a monomial `x`.
pub fn theta_ledger(x: &[(&str, i32)]) -> Result<PrefactorLedger> {
    Ok(PrefactorLedger::i_power(3)
        .mul(&PrefactorLedger::q_power(Rational64::new(1, 8)))
        .mul(&PrefactorLedger::monomial_power(1, x, Rational64::new(-1, 2))?))
}

/// `theta1` at a monomial argument in an arbitrary registry; the ledger's
/// q-exponent counts powers of the monomial `q`.
pub fn theta1_at(
    reg: &VariableRegistry,
    q: &ExponentVector,
    x: &ExponentVector,
    order: i64,
) -> Result<ReducedTheta> {
    let named: Vec<(&str, i32)> = reg
        .names()
        .iter()
        .zip(x.iter())
        .filter(|(_, &e)| e != 0)
        .map(|(n, &e)| (n.as_str(), e))
        .collect();
    Ok(ReducedTheta {
        series: theta_tilde_at(reg, q, x, order)?,
        ledger: theta_ledger(&named)?,
    })
}

/// `eta` at a monomial `q` in an arbitrary registry.
pub fn eta_at(reg: &VariableRegistry, q: &ExponentVector, order: i64) -> Result<ReducedEta> {
    Ok(ReducedEta {
        series: eta_tilde_at(reg, q, order)?,
        ledger: PrefactorLedger::q_power(Rational64::new(1, 24)),
    })
}

/// `Jphi(q, p)` in the grading `(wq, wp)`, through weighted degree `order`.
///
/// Built as `p^{-1} theta~^2 / eta~^6`; [`jacobi_phi_at`] expands the product
/// directly instead and serves as an independent check.
pub fn jacobi_phi_graded(wq: i64, wp: i64, order: i64) -> Result<TruncatedSeries> {
    let reg = qp_registry(wq, wp)?;
    let q = reg.exps(&[("q", 1)])?;
    let p = reg.exps(&[("p", 1)])?;
    ProductBuilder::new(&reg)
        .monomial(1, &-&p)
        .theta(&q, &p, 2)?
        .eta(&q, -6)?
        .build(order)
}

/// `Jphi(q, p)` with weights `(1, 0)`, through q-order `n`.
pub fn jacobi_phi(n: i64) -> Result<TruncatedSeries> {
    jacobi_phi_graded(1, 0, n)
}

fn check_ell_weights(weights: [i64; 3]) -> Result<()> {
    let [wq, wy, wt] = weights;
    if wt.abs() <= wy.abs() || wq <= wt.abs() + wy.abs() {
        return Err(Error::InvalidRegistry(format!(
            "elliptic genus needs |w_t| > |w_y| and w_q > |w_t| + |w_y|, got {weights:?}"
        )));
    }
    Ok(())
}

/// Substitutes `q -> q`, `p -> y^a t^b` from `Jphi` graded to match.
fn phi_into_qyt(target: &VariableRegistry, a: i32, b: i32, order: i64) -> Result<TruncatedSeries> {
    let w = target.weights();
    let wp = a as i64 * w[1] + b as i64 * w[2];
    let phi = jacobi_phi_graded(w[0], wp, order)?;
    let sub = Substitution::new(phi.registry(), target)
        .map("q", 1, &[("q", 1)])?
        .map("p", 1, &[("y", a), ("t", b)])?;
    phi.substitute_monomials(&sub)
}

/// Equivariant elliptic genus of `C^2`,
/// `Ell(q, y, t) = sqrt(Jphi(q, y t) Jphi(q, t / y)) / Jphi(q, t)`,
/// over `(q, y, t)` with the given weights, through weighted degree `order`.
pub fn elliptic_genus_graded(weights: [i64; 3], order: i64) -> Result<TruncatedSeries> {
    check_ell_weights(weights)?;
    let reg = qyt_registry(weights)?;
    let a = phi_into_qyt(&reg, 1, 1, order)?;
    let b = phi_into_qyt(&reg, -1, 1, order)?;
    let c = phi_into_qyt(&reg, 0, 1, order)?;
    let root = a.mul(&b)?.sqrt_unit()?;
    Ok(root.mul(&c.invert_unit()?)?.truncate(order))
}

/// The same function as the theta ratio
/// `y^{-1} theta~(y t) theta~(y / t) / (theta~(t) theta~(1 / t))`.
pub fn elliptic_genus_theta_graded(weights: [i64; 3], order: i64) -> Result<TruncatedSeries> {
    check_ell_weights(weights)?;
    let reg = qyt_registry(weights)?;
    let q = reg.exps(&[("q", 1)])?;
    let arg = |a: i32, b: i32| reg.exps(&[("y", a), ("t", b)]);
    ProductBuilder::new(&reg)
        .monomial(1, &arg(-1, 0)?)
        .theta(&q, &arg(1, 1)?, 1)?
        .theta(&q, &arg(1, -1)?, 1)?
        .theta(&q, &arg(0, 1)?, -1)?
        .theta(&q, &arg(0, -1)?, -1)?
        .build(order)
}

/// Default grading for the elliptic genus: `(q, y, t)` weighted `(2, 0, 1)`,
/// so weighted order `2n` covers q-order `n`.
pub const ELL_WEIGHTS: [i64; 3] = [2, 0, 1];

/// Elliptic genus in the default grading through weighted degree `2n`.
pub fn elliptic_genus_c2(n: i64) -> Result<TruncatedSeries> {
    elliptic_genus_graded(ELL_WEIGHTS, 2 * n)
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub order: Order,
    pub terms_compared: usize,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Results of [`check_identities`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub q_order: i64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn record(name: &'static str, lhs: Result<TruncatedSeries>, rhs: Result<TruncatedSeries>) -> IdentityCheck {
    let outcome = lhs.and_then(|l| rhs.and_then(|r| l.compare(&r)));
    match outcome {
        Ok(cmp) => IdentityCheck {
            name,
            order: cmp.order,
            terms_compared: cmp.terms_compared,
            passed: cmp.agrees(),
            detail: cmp.first_discrepancy.map(|d| {
                format!("exponents {:?}: {} vs {}", d.exps, d.left, d.right)
            }),
        },
        Err(e) => IdentityCheck {
            name,
            order: Order::Upto(-1),
            terms_compared: 0,
            passed: false,
            detail: Some(e.to_string()),
        },
    }
}

/// Verifies the three prefactor-free theta/eta/phi identities through q-order `n`:
///
/// 1. `eta~^6 Jphi(q, p) = p^{-1} theta~(q, p)^2`
/// 2. `p Jphi(q, p) = (q / p) Jphi(q, q / p)`
/// 3. `Jphi(q, p) = Jphi(q, 1 / p)`
///
/// The first and third use weights `(1, 0)`. The second needs `p -> q/p` to
/// preserve degree, so it runs in weights `(2, 1)` to weighted order `3n + 2`,
/// which contains every term of q-order at most `n`.
pub fn check_identities(n: i64) -> IdentityReport {
    let checks = vec![
        record("eta^6 phi = theta^2 / p", identity_eta_theta(n).map(|x| x.0), identity_eta_theta(n).map(|x| x.1)),
        {
            let (l, r) = split(identity_shift(n));
            record("p phi(p) = (q/p) phi(q/p)", l, r)
        },
        {
            let (l, r) = split(identity_inversion(n));
            record("phi(p) = phi(1/p)", l, r)
        },
    ];
    IdentityReport { q_order: n, checks }
}

type Pair = (TruncatedSeries, TruncatedSeries);

fn split(r: Result<Pair>) -> (Result<TruncatedSeries>, Result<TruncatedSeries>) {
    match r {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.clone()), Err(e)),
    }
}

fn identity_eta_theta(n: i64) -> Result<Pair> {
    let reg = qp_registry(1, 0)?;
    let q = reg.exps(&[("q", 1)])?;
    let p = reg.exps(&[("p", 1)])?;
    let eta6 = eta_tilde_at(&reg, &q, n)?.pow(6)?;
    let lhs = eta6.mul(&jacobi_phi_at(&reg, &q, &p, n)?)?;
    let th = theta_tilde_at(&reg, &q, &p, n)?;
    let rhs = th.mul(&th)?.mul_monomial(&-&p, 1)?;
    Ok((lhs, rhs))
}

fn identity_shift(n: i64) -> Result<Pair> {
    let order = 3 * n + 2;
    let phi = jacobi_phi_graded(2, 1, order)?;
    let reg = phi.registry().clone();
    let p = reg.exps(&[("p", 1)])?;
    let lhs = phi.mul_monomial(&p, 1)?;
    let sub = Substitution::new(&reg, &reg).map("p", 1, &[("q", 1), ("p", -1)])?;
    let rhs = phi
        .substitute_monomials(&sub)?
        .mul_monomial(&reg.exps(&[("q", 1), ("p", -1)])?, 1)?;
    Ok((lhs, rhs))
}

fn identity_inversion(n: i64) -> Result<Pair> {
    let phi = jacobi_phi(n)?;
    let reg = phi.registry().clone();
    let sub = Substitution::new(&reg, &reg).map("p", 1, &[("p", -1)])?;
    let flipped = phi.substitute_monomials(&sub)?;
    Ok((phi, flipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_flips_negative_degree_factors() {
        let reg = VariableRegistry::new(&["p"]).unwrap();
        // (1 - 1/p) = -p^{-1} (1 - p)
        let s = ProductBuilder::new(&reg)
            .factor(-1, [-1].into(), 1)
            .build(3)
            .unwrap();
        assert_eq!(s.render(), "-p^-1 + 1 + O(4)");
        // 1 / (1 - 1/p) = -p / (1 - p)
        let s = ProductBuilder::new(&reg)
            .factor(-1, [-1].into(), -1)
            .build(3)
            .unwrap();
        assert_eq!(s.render(), "-p - p^2 - p^3 + O(4)");
    }

    #[test]
    fn direct_and_theta_built_phi_agree() {
        for (wq, wp) in [(1, 0), (4, 1), (4, 2), (3, -2), (2, 1)] {
            let a = jacobi_phi_graded(wq, wp, 14).unwrap();
            let reg = a.registry().clone();
            let b = jacobi_phi_at(&reg, &reg.exps(&[("q", 1)]).unwrap(), &reg.exps(&[("p", 1)]).unwrap(), 14)
                .unwrap();
            assert!(a.agrees_with(&b).unwrap(), "weights ({wq}, {wp})");
            assert_eq!(a.order(), Order::Upto(14));
        }
    }

    #[test]
    fn ell_weights_validated() {
        assert!(elliptic_genus_graded([2, 1, 1], 4).is_err());
        assert!(elliptic_genus_graded([2, 0, 2], 4).is_err());
        assert!(elliptic_genus_graded([4, 1, -2], 4).is_ok());
    }
}
