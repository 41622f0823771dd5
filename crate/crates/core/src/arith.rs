//! Exact integer invariants of a dimension vector.
//!
//! Everything here is computed in checked `i128` arithmetic; an overflow is
//! reported as [`LmeError::Overflow`] and never wraps.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{LmeError, Result};

/// A weakly increasing tuple of local dimensions `(d_1, ..., d_n)`.
///
/// Construction enforces `n >= 2`, positive entries, at least two entries
/// `>= 2`, and that the full product fits in an `i128`. Trivial subsystems
/// (`d_i = 1`) are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DimVec(Vec<u64>);

impl DimVec {
    /// Validates and sorts unsigned dimensions.
    pub fn new(raw: &[u64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(LmeError::TooFewSubsystems(raw.len()));
        }
        if raw.contains(&0) {
            return Err(LmeError::NonPositiveEntry(0));
        }
        if raw.iter().filter(|&&d| d >= 2).count() < 2 {
            return Err(LmeError::InsufficientNontrivial);
        }
        let mut dims = raw.to_vec();
        dims.sort_unstable();
        let d = DimVec(dims);
        d.product()?;
        Ok(d)
    }

    /// Builds from an already sorted vector known to satisfy the invariants.
    pub(crate) fn from_sorted_unchecked(dims: Vec<u64>) -> Self {
        debug_assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(dims.iter().filter(|&&d| d >= 2).count() >= 2);
        DimVec(dims)
    }

    pub fn dims(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: a valid vector has at least two entries.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest entry `d_n`.
    pub fn last(&self) -> u64 {
        *self.0.last().expect("DimVec has at least two entries")
    }

    /// `d_1 * ... * d_n`.
    pub fn product(&self) -> Result<i128> {
        checked_product(&self.0)
    }

    /// `P = d_1 * ... * d_{n-1}`.
    pub fn leading_product(&self) -> Result<i128> {
        checked_product(&self.0[..self.0.len() - 1])
    }

    /// `sum_i d_i`.
    pub fn entry_sum(&self) -> i128 {
        self.0.iter().map(|&d| d as i128).sum()
    }

    /// Number of entries equal to 1.
    pub fn ones(&self) -> usize {
        self.0.iter().take_while(|&&d| d == 1).count()
    }
}

impl TryFrom<Vec<u64>> for DimVec {
    type Error = LmeError;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        DimVec::new(&v)
    }
}

impl From<DimVec> for Vec<u64> {
    fn from(d: DimVec) -> Self {
        d.0
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Validates raw user input, which may contain zero or negative entries.
pub fn validate_dims(raw: &[i64]) -> Result<DimVec> {
    if raw.len() < 2 {
        return Err(LmeError::TooFewSubsystems(raw.len()));
    }
    if let Some(&bad) = raw.iter().find(|&&d| d <= 0) {
        return Err(LmeError::NonPositiveEntry(bad));
    }
    let unsigned: Vec<u64> = raw.iter().map(|&d| d as u64).collect();
    DimVec::new(&unsigned)
}

fn checked_product(xs: &[u64]) -> Result<i128> {
    xs.iter().try_fold(1i128, |acc, &d| {
        acc.checked_mul(d as i128)
            .ok_or(LmeError::Overflow("product of dimensions"))
    })
}

fn square(x: u64) -> Result<i128> {
    (x as i128)
        .checked_mul(x as i128)
        .ok_or(LmeError::Overflow("squared gcd"))
}

/// The quantities that drive the closed-form classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub delta: i128,
    pub r: i128,
    pub gmax: u64,
    pub product: i128,
}

impl InvariantBundle {
    pub fn compute(d: &DimVec) -> Result<Self> {
        Ok(InvariantBundle {
            delta: delta(d)?,
            r: r_invariant(d)?,
            gmax: gmax(d),
            product: d.product()?,
        })
    }
}

/// Expected dimension `prod d_i - 1 - sum (d_i^2 - 1)`.
pub fn delta(d: &DimVec) -> Result<i128> {
    let mut acc = d
        .product()?
        .checked_sub(1)
        .ok_or(LmeError::Overflow("delta"))?;
    for &x in d.dims() {
        let term = square(x)? - 1;
        acc = acc.checked_sub(term).ok_or(LmeError::Overflow("delta"))?;
    }
    Ok(acc)
}

/// `G_1, ..., G_n` in one pass. Index `k - 1` holds `G_k`.
///
/// Subsets are never listed: the table tracks, for every subset size, how
/// many subsets share each running gcd, which stays polynomial in `n`.
pub fn gk_all(d: &DimVec) -> Result<Vec<i128>> {
    let n = d.len();
    // by_size[s]: gcd -> number of s-subsets with that gcd (gcd of the empty set is 0)
    let mut by_size: Vec<BTreeMap<u64, i128>> = vec![BTreeMap::new(); n + 1];
    by_size[0].insert(0, 1);
    for (seen, &x) in d.dims().iter().enumerate() {
        for s in (0..=seen).rev() {
            let updates: Vec<(u64, i128)> =
                by_size[s].iter().map(|(&g, &c)| (g.gcd(&x), c)).collect();
            for (g, c) in updates {
                let slot = by_size[s + 1].entry(g).or_insert(0);
                *slot = slot
                    .checked_add(c)
                    .ok_or(LmeError::Overflow("subset count"))?;
            }
        }
    }
    by_size[1..]
        .iter()
        .map(|table| {
            table.iter().try_fold(0i128, |acc, (&g, &c)| {
                c.checked_mul(square(g)?)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(LmeError::Overflow("G_k"))
            })
        })
        .collect()
}

/// Sum over all `k`-subsets of the squared gcd of the selected entries.
pub fn gk(d: &DimVec, k: usize) -> Result<i128> {
    if k == 0 || k > d.len() {
        return Err(LmeError::IndexOutOfRange {
            index: k,
            n: d.len(),
        });
    }
    Ok(gk_all(d)?[k - 1])
}

/// `R(d) = prod d_i + sum_k (-1)^k G_k(d)`. Its sign decides emptiness.
pub fn r_invariant(d: &DimVec) -> Result<i128> {
    let mut acc = d.product()?;
    for (i, g) in gk_all(d)?.into_iter().enumerate() {
        let k = i + 1;
        acc = if k % 2 == 0 {
            acc.checked_add(g)
        } else {
            acc.checked_sub(g)
        }
        .ok_or(LmeError::Overflow("R"))?;
    }
    Ok(acc)
}

/// Largest pairwise gcd.
pub fn gmax(d: &DimVec) -> u64 {
    let xs = d.dims();
    let mut best = 1;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            best = best.max(xs[i].gcd(&xs[j]));
        }
    }
    best
}

/// Drops every entry equal to 1.
pub fn strip_ones(d: &DimVec) -> Result<DimVec> {
    let rest: Vec<u64> = d.dims().iter().copied().filter(|&x| x != 1).collect();
    if rest.len() < 2 {
        return Err(LmeError::InsufficientNontrivial);
    }
    Ok(DimVec::from_sorted_unchecked(rest))
}

/// `lcm(d_1, ..., d_n)`.
pub fn lcm_all(d: &DimVec) -> Result<u64> {
    d.dims().iter().try_fold(1u64, |acc, &x| {
        (acc / acc.gcd(&x))
            .checked_mul(x)
            .ok_or(LmeError::Overflow("lcm"))
    })
}
