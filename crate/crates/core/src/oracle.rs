//! Brute-force enumeration of admissible curve configurations.
//!
//! Along a branch, the inside thickenings of successive edges form a weakly
//! decreasing sequence `mu`, and the conjugate partition of `mu` must have
//! pairwise distinct odd parts. A configuration contributes
//! `prod_j label_j^{mu_j}`. Summing over all four branches at every B location
//! gives the naive (unweighted) partition function; negating every tracking
//! variable turns it into the Gopakumar-Vafa generating function.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{b_locations, closed_form_branch_specs, BananaShape, BranchSpec};
use crate::qseries::ProductBuilder;
use crate::series::{ExponentVector, Order, Substitution, TruncatedSeries, VariableRegistry};

/// Inside multiplicities along a branch, edge by edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchPartition {
    parts: Vec<u32>,
}

impl BranchPartition {
    /// Validates that `parts` is positive, weakly decreasing and admissible.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if !conjugate_has_distinct_odd_parts(&parts) {
            return Err(Error::InvalidPartition(format!(
                "conjugate of {parts:?} repeats an odd part"
            )));
        }
        Ok(BranchPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// Conjugate of a weakly decreasing sequence.
pub fn conjugate(parts: &[u32]) -> Vec<u32> {
    let largest = parts.first().copied().unwrap_or(0);
    (1..=largest)
        .map(|k| parts.iter().take_while(|&&p| p >= k).count() as u32)
        .collect()
}

/// Whether the conjugate of `parts` has no repeated odd part.
pub fn conjugate_has_distinct_odd_parts(parts: &[u32]) -> bool {
    let conj = conjugate(parts);
    let mut seen = std::collections::HashSet::new();
    conj.iter().filter(|&&p| p % 2 == 1).all(|&p| seen.insert(p))
}

/// Equivalent local form of the constraint: consecutive parts `mu_k` and
/// `mu_{k+1}` differ by at most one whenever `k` is odd (1-based), counting
/// the part after the last one as 0.
pub fn satisfies_local_rule(parts: &[u32]) -> bool {
    (0..parts.len()).step_by(2).all(|i| {
        let next = parts.get(i + 1).copied().unwrap_or(0);
        parts[i] - next <= 1
    })
}

/// Visits every admissible weakly decreasing sequence with total at most
/// `max_total`. The callback receives each sequence once.
fn enumerate<F: FnMut(&[u32])>(max_total: u32, mut visit: F) {
    fn rec<F: FnMut(&[u32])>(parts: &mut Vec<u32>, remaining: u32, cap: u32, visit: &mut F) {
        visit(parts);
        for next in (1..=cap.min(remaining)).rev() {
            parts.push(next);
            // prune with the local rule once a pair (mu_k, mu_{k+1}), k odd, is complete
            let k = parts.len();
            let ok = k % 2 == 1 || parts[k - 2] - parts[k - 1] <= 1;
            if ok {
                rec(parts, remaining - next, next, visit);
            }
            parts.pop();
        }
    }
    let mut parts = Vec::new();
    rec(&mut parts, max_total, max_total, &mut |p: &[u32]| {
        if conjugate_has_distinct_odd_parts(p) {
            visit(p)
        }
    });
}

/// All admissible branch partitions of total size at most `max_total`.
pub fn branch_partitions(max_total: u32) -> Vec<BranchPartition> {
    let mut out = Vec::new();
    enumerate(max_total, |p| out.push(BranchPartition { parts: p.to_vec() }));
    out
}

/// Number of partitions of `n` whose conjugate has distinct odd parts.
pub fn count_distinct_odd_conjugate(n: u32) -> u64 {
    let mut count = 0;
    enumerate(n, |p| {
        if p.iter().sum::<u32>() == n {
            count += 1;
        }
    });
    count
}

fn label_indices(spec: &BranchSpec, registry: &VariableRegistry) -> Result<Vec<usize>> {
    spec.labels.iter().map(|l| registry.index_of(l)).collect()
}

/// Generating function of one branch by explicit enumeration, through total
/// degree `order` in a registry whose variables all have weight 1.
pub fn branch_series(
    spec: &BranchSpec,
    registry: &VariableRegistry,
    order: u32,
) -> Result<TruncatedSeries> {
    let idx = label_indices(spec, registry)?;
    let mut acc: HashMap<ExponentVector, BigInt> = HashMap::new();
    enumerate(order, |parts| {
        let mut e = vec![0i32; registry.len()];
        for (j, &mu) in parts.iter().enumerate() {
            e[idx[j % idx.len()]] += mu as i32;
        }
        let key = ExponentVector::from(e);
        if registry.degree(&key) <= order as i64 {
            *acc.entry(key).or_insert_with(BigInt::zero) += 1;
        }
    });
    TruncatedSeries::from_terms(registry, acc, Order::Upto(order as i64))
}

/// The same generating function from its product form
/// `prod_{n>=1} (1 + m(2n-1)) / (1 - m(2n))`, where `m(j)` is the product of
/// the first `j` labels.
pub fn branch_series_product(
    spec: &BranchSpec,
    registry: &VariableRegistry,
    order: u32,
) -> Result<TruncatedSeries> {
    let idx = label_indices(spec, registry)?;
    if registry.weights().iter().any(|&w| w <= 0) {
        return Err(Error::InvalidRegistry("branch variables need positive weight".into()));
    }
    let mut b = ProductBuilder::new(registry);
    let mut m = ExponentVector::zero(registry.len());
    let mut j = 0usize;
    loop {
        let mut step = vec![0i32; registry.len()];
        step[idx[j % idx.len()]] = 1;
        m = &m + &ExponentVector::from(step);
        j += 1;
        if registry.degree(&m) > order as i64 {
            break;
        }
        b = if j % 2 == 1 {
            b.factor(1, m.clone(), 1)
        } else {
            b.factor(-1, m.clone(), -1)
        };
    }
    b.build(order as i64)
}

/// Sum over B locations of the product over the four branches.
///
/// Branch labels are taken in the closed-form frame, so the result lives in
/// [`BananaShape::registry`] and is directly comparable with the closed forms.
pub fn naive_pf(shape: BananaShape, order: u32) -> Result<TruncatedSeries> {
    naive_pf_by_location(shape, order)?
        .into_iter()
        .try_fold(None::<TruncatedSeries>, |acc, s| {
            Ok::<_, Error>(Some(match acc {
                None => s,
                Some(a) => a.add(&s)?,
            }))
        })?
        .ok_or_else(|| Error::InvalidShape(format!("{shape} has no B location")))
}

/// The contribution of each B location separately.
pub fn naive_pf_by_location(shape: BananaShape, order: u32) -> Result<Vec<TruncatedSeries>> {
    let reg = shape.registry()?;
    b_locations(shape)?
        .iter()
        .map(|loc| {
            let mut prod = TruncatedSeries::one(&reg, Order::Exact);
            for spec in closed_form_branch_specs(shape, loc.index)? {
                spec.validate(shape)?;
                prod = prod.mul(&branch_series(&spec, &reg, order)?)?;
            }
            Ok(prod.truncate(order as i64))
        })
        .collect()
}

/// Replaces every tracking variable by its negative.
pub fn behrend_twist(series: &TruncatedSeries) -> Result<TruncatedSeries> {
    series.substitute_monomials(&Substitution::negate_all(series.registry()))
}
