use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use super::{ExponentVector, Order, TruncatedSeries, VariableRegistry};
use crate::error::{Error, Result};

/// Image `sign * x^exps` of one source variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialImage {
    pub sign: i32,
    pub exps: ExponentVector,
}

/// A monomial substitution from one registry into another.
///
/// The completeness bound works as follows. Let `w_i` be the source weights and
/// `d_i` the target degrees of the images. The substitution is admissible when
/// there is a single rational `lambda > 0` with `d_i = lambda * w_i` for every
/// variable (zero-weight variables must map to degree-0 monomials). Then every
/// source term of degree `k` lands in target degree `lambda * k`. Terms missing
/// from a source exact through degree `N` have degree `>= N + 1`, so the image
/// is exact through `ceil(lambda * (N + 1)) - 1`.
///
/// Bivariate q-series are therefore built in the grading dictated by their
/// images (for `q -> Q`, `p -> M` the source weights are `(deg Q, deg M)`),
/// which makes `lambda = 1`.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: VariableRegistry,
    target: VariableRegistry,
    images: Vec<Option<MonomialImage>>,
}

impl Substitution {
    /// Starts with every source variable sent to the same-named target
    /// variable, where one exists.
    pub fn new(source: &VariableRegistry, target: &VariableRegistry) -> Self {
        let images = source
            .names()
            .iter()
            .map(|n| {
                target.index_of(n).ok().map(|i| MonomialImage {
                    sign: 1,
                    exps: ExponentVector::unit(target.len(), i, 1),
                })
            })
            .collect();
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    /// Sends `var` to `sign * prod target^power`.
    pub fn map(self, var: &str, sign: i32, powers: &[(&str, i32)]) -> Result<Self> {
        let exps = self.target.exps(powers)?;
        self.map_exps(var, sign, exps)
    }

    pub fn map_exps(mut self, var: &str, sign: i32, exps: ExponentVector) -> Result<Self> {
        self.target.check(&exps)?;
        let i = self.source.index_of(var)?;
        self.images[i] = Some(MonomialImage {
            sign: if sign < 0 { -1 } else { 1 },
            exps,
        });
        Ok(self)
    }

    /// Negates every variable of a registry: `x -> -x`.
    pub fn negate_all(registry: &VariableRegistry) -> Self {
        let mut sub = Self::new(registry, registry);
        for img in sub.images.iter_mut().flatten() {
            img.sign = -1;
        }
        sub
    }

    pub fn target(&self) -> &VariableRegistry {
        &self.target
    }

    fn images(&self) -> Result<Vec<&MonomialImage>> {
        self.images
            .iter()
            .zip(self.source.names())
            .map(|(img, name)| {
                img.as_ref().ok_or_else(|| {
                    Error::NonHomogeneousSubstitution(format!("no image for variable `{name}`"))
                })
            })
            .collect()
    }

    /// The uniform degree scale `lambda`.
    pub fn degree_scale(&self) -> Result<Rational64> {
        let mut lambda: Option<Rational64> = None;
        for (i, img) in self.images()?.into_iter().enumerate() {
            let w = self.source.weights()[i];
            let d = self.target.degree(&img.exps);
            let name = &self.source.names()[i];
            if w == 0 {
                if d != 0 {
                    return Err(Error::NonHomogeneousSubstitution(format!(
                        "`{name}` has weight 0 but its image has degree {d}"
                    )));
                }
                continue;
            }
            let r = Rational64::new(d, w);
            match lambda {
                None => lambda = Some(r),
                Some(l) if l != r => {
                    return Err(Error::NonHomogeneousSubstitution(format!(
                        "`{name}` scales degrees by {r}, earlier variables by {l}"
                    )))
                }
                _ => {}
            }
        }
        match lambda {
            Some(l) if l.is_positive() => Ok(l),
            Some(l) => Err(Error::NonHomogeneousSubstitution(format!(
                "degree scale {l} is not positive"
            ))),
            None => Err(Error::NonHomogeneousSubstitution(
                "every source variable has weight 0".into(),
            )),
        }
    }

    /// Guaranteed order of the image of a series exact through `order`.
    pub fn image_order(&self, order: Order) -> Result<Order> {
        let lambda = self.degree_scale()?;
        Ok(match order {
            Order::Exact => Order::Exact,
            Order::Upto(n) => {
                let top = *lambda.numer() * (n + 1);
                Order::Upto(Integer::div_ceil(&top, lambda.denom()) - 1)
            }
        })
    }
}

impl TruncatedSeries {
    /// Applies a monomial substitution; `-1` signs implement `x -> -x`.
    pub fn substitute_monomials(&self, sub: &Substitution) -> Result<TruncatedSeries> {
        self.registry.ensure_same(&sub.source)?;
        let order = sub.image_order(self.order)?;
        let images = sub.images()?;
        let target = &sub.target;
        let mut acc: HashMap<ExponentVector, BigInt> = HashMap::new();
        for t in &self.terms {
            let mut exps = ExponentVector::zero(target.len());
            let mut negative = false;
            for (&e, img) in t.exps.iter().zip(&images) {
                if e == 0 {
                    continue;
                }
                exps = &exps + &img.exps.scaled(e);
                if img.sign < 0 && e % 2 != 0 {
                    negative = !negative;
                }
            }
            let entry = acc.entry(exps).or_insert_with(BigInt::zero);
            if negative {
                *entry -= &t.coeff;
            } else {
                *entry += &t.coeff;
            }
        }
        Ok(TruncatedSeries::from_map(target, acc, order))
    }
}
