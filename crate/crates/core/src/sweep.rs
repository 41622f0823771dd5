//! Exhaustive enumeration of dimension vectors in lexicographic order.

use std::fmt::Display;

use serde::{Serialize, Serializer};

use crate::arith::{lcm_all, DimVec};
use crate::classify::{classify, hyperdet_nonzero};
use crate::error::{LmeError, Result};
use crate::recursion::{run_recursion, TerminalCase};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub n_min: usize,
    pub n_max: usize,
    pub max_product: u64,
    pub max_entry: u64,
    /// When false, vectors with fewer than two entries `>= 2` are reported
    /// as skipped instead of silently omitted.
    pub require_nontrivial: bool,
}

impl EnumerationBounds {
    pub fn new(n_min: usize, n_max: usize, max_product: u64) -> Self {
        EnumerationBounds {
            n_min,
            n_max,
            max_product,
            max_entry: max_product,
            require_nontrivial: true,
        }
    }

    pub fn with_max_entry(mut self, max_entry: u64) -> Self {
        self.max_entry = max_entry;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min < 2 {
            return Err(LmeError::TooFewSubsystems(self.n_min));
        }
        if self.n_max < self.n_min || self.max_product < 4 || self.max_entry < 2 {
            return Err(LmeError::InsufficientNontrivial);
        }
        Ok(())
    }
}

/// One line of an enumeration table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordRow {
    pub dims: DimVec,
    pub delta: i128,
    pub r: i128,
    pub gmax: u64,
    pub product: i128,
    /// -1 empty, 0 point, k dimension.
    pub status: i128,
    #[serde(serialize_with = "as_display")]
    pub terminal_case: TerminalCase,
    pub terminal_vector: DimVec,
    pub trace_length: usize,
    pub hyperdet_nonzero: bool,
    pub lcm: u64,
}

fn as_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl RecordRow {
    pub fn compute(d: &DimVec) -> Result<Self> {
        let c = classify(d)?;
        let trace = run_recursion(d)?;
        Ok(RecordRow {
            dims: d.clone(),
            delta: c.invariants.delta,
            r: c.invariants.r,
            gmax: c.invariants.gmax,
            product: c.invariants.product,
            status: c.status.code(),
            terminal_case: trace.case,
            trace_length: trace.castle_count(),
            terminal_vector: trace.terminal,
            hyperdet_nonzero: hyperdet_nonzero(d),
            lcm: lcm_all(d)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepItem {
    Row(RecordRow),
    Skipped { dims: Vec<u64>, reason: LmeError },
}

/// Every weakly increasing vector inside `bounds`, each exactly once,
/// in lexicographic order.
pub fn dim_vectors(bounds: EnumerationBounds) -> DimVectors {
    DimVectors {
        bounds,
        prefix: Vec::new(),
        products: vec![1],
        started: false,
    }
}

/// Depth-first walk over weakly increasing prefixes. Preorder with
/// ascending children is exactly lexicographic order.
#[derive(Clone, Debug)]
pub struct DimVectors {
    bounds: EnumerationBounds,
    prefix: Vec<u64>,
    /// `products[i]` is the product of the first `i` entries.
    products: Vec<u64>,
    started: bool,
}

impl DimVectors {
    fn fits(&self, x: u64) -> bool {
        let base = *self.products.last().expect("nonempty");
        x <= self.bounds.max_entry
            && base
                .checked_mul(x)
                .is_some_and(|p| p <= self.bounds.max_product)
    }

    fn push(&mut self, x: u64) {
        let base = *self.products.last().expect("nonempty");
        self.prefix.push(x);
        self.products.push(base * x);
    }

    fn pop(&mut self) -> Option<u64> {
        self.products.pop();
        self.prefix.pop()
    }

    /// Moves to the next prefix in preorder; false when exhausted.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.push(1);
            return true;
        }
        let last = *self.prefix.last().unwrap_or(&1);
        if self.prefix.len() < self.bounds.n_max && self.fits(last) {
            self.push(last);
            return true;
        }
        while let Some(x) = self.pop() {
            if self.fits(x + 1) {
                self.push(x + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for DimVectors {
    /// Raw vector plus whether it has two entries `>= 2`.
    type Item = (Vec<u64>, bool);

    fn next(&mut self) -> Option<Self::Item> {
        while self.advance() {
            let len = self.prefix.len();
            if len < self.bounds.n_min {
                continue;
            }
            // sorted, so the nontrivial test only needs the second-to-last entry
            let nontrivial = self.prefix[len - 2] >= 2;
            if nontrivial || !self.bounds.require_nontrivial {
                return Some((self.prefix.clone(), nontrivial));
            }
        }
        None
    }
}

/// Fully populated rows for every vector inside `bounds`.
pub fn enumerate(bounds: EnumerationBounds) -> Result<impl Iterator<Item = SweepItem>> {
    bounds.validate()?;
    Ok(dim_vectors(bounds).map(|(raw, _)| {
        match DimVec::new(&raw).and_then(|d| RecordRow::compute(&d)) {
            Ok(row) => SweepItem::Row(row),
            Err(reason) => SweepItem::Skipped { dims: raw, reason },
        }
    }))
}
