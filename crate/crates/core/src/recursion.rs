//! The castling recursion for the quotient dimension `D(d)`.
//!
//! With `P = d_1 * ... * d_{n-1}` a vector is terminal when `d_n > P`
//! (case A), `d_n = P` (case B) or `2 d_n <= P` (case D). Otherwise it is
//! castled to `sort(d_1, ..., d_{n-1}, P - d_n)`, which strictly lowers the
//! entry sum. All halving comparisons are done as `2 d_n <= P`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{delta, strip_ones, DimVec};
use crate::error::{LmeError, Result};

/// Sub-pattern of a case D terminal vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialPattern {
    /// `(1, ..., 1, 2, 2, 2)`
    Special222,
    /// `(1, ..., 1, 2, d, d)` with `d >= 3`
    Special2dd(u64),
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TerminalCase {
    CaseA,
    CaseB,
    CaseD(SpecialPattern),
}

impl fmt::Display for TerminalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminalCase::CaseA => write!(f, "CaseA"),
            TerminalCase::CaseB => write!(f, "CaseB"),
            TerminalCase::CaseD(SpecialPattern::Generic) => write!(f, "CaseD"),
            TerminalCase::CaseD(SpecialPattern::Special222) => write!(f, "CaseD/Special222"),
            TerminalCase::CaseD(SpecialPattern::Special2dd(d)) => {
                write!(f, "CaseD/Special2dd({d})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    Terminal(TerminalCase),
    NonTerminal,
}

/// Full castling path from a start vector to its terminal vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionTrace {
    pub start: DimVec,
    /// Every vector visited, starting with `start` and ending with `terminal`.
    pub steps: Vec<DimVec>,
    pub terminal: DimVec,
    pub case: TerminalCase,
    /// `D(d)`: -1 for empty, 0 for a point, otherwise the dimension.
    pub d_value: i128,
}

impl RecursionTrace {
    /// Number of castling moves performed.
    pub fn castle_count(&self) -> usize {
        self.steps.len() - 1
    }
}

/// One castling move `d -> sort(d_1, ..., d_{n-1}, P - d_n)`.
pub fn castle(d: &DimVec) -> Result<DimVec> {
    let p = d.leading_product()?;
    let last = d.last() as i128;
    let twice = last.checked_mul(2).ok_or(LmeError::Overflow("2 d_n"))?;
    if !(p < twice && last < p) {
        return Err(LmeError::NotCaseC(d.to_string()));
    }
    let replacement = (p - last) as u64;
    let mut dims = d.dims()[..d.len() - 1].to_vec();
    let at = dims.partition_point(|&x| x <= replacement);
    dims.insert(at, replacement);
    Ok(DimVec::from_sorted_unchecked(dims))
}

/// Locates `d` among cases A, B, (C) and D.
pub fn classify_case(d: &DimVec) -> Result<CaseOutcome> {
    let p = d.leading_product()?;
    let last = d.last() as i128;
    let twice = last.checked_mul(2).ok_or(LmeError::Overflow("2 d_n"))?;
    let outcome = if last > p {
        CaseOutcome::Terminal(TerminalCase::CaseA)
    } else if last == p {
        CaseOutcome::Terminal(TerminalCase::CaseB)
    } else if twice <= p {
        CaseOutcome::Terminal(TerminalCase::CaseD(special_pattern(d)))
    } else {
        CaseOutcome::NonTerminal
    };
    Ok(outcome)
}

/// Matches `(1, ..., 1, 2, 2, 2)` and `(1, ..., 1, 2, d, d)` on the raw vector.
pub fn special_pattern(d: &DimVec) -> SpecialPattern {
    let xs = d.dims();
    let ones = d.ones();
    match &xs[ones..] {
        [2, 2, 2] => SpecialPattern::Special222,
        [2, a, b] if a == b && *a >= 3 => SpecialPattern::Special2dd(*a),
        _ => SpecialPattern::Generic,
    }
}

/// Same match, performed after removing the 1s.
pub fn special_pattern_stripped(d: &DimVec) -> SpecialPattern {
    match strip_ones(d) {
        Ok(a) => match a.dims() {
            [2, 2, 2] => SpecialPattern::Special222,
            &[2, x, y] if x == y && x >= 3 => SpecialPattern::Special2dd(x),
            _ => SpecialPattern::Generic,
        },
        Err(_) => SpecialPattern::Generic,
    }
}

/// Castles until a terminal case is reached and assigns `D(d)`.
pub fn run_recursion(d: &DimVec) -> Result<RecursionTrace> {
    let mut steps = vec![d.clone()];
    let case = loop {
        let current = steps.last().expect("nonempty");
        match classify_case(current)? {
            CaseOutcome::Terminal(case) => break case,
            CaseOutcome::NonTerminal => {
                let next = castle(current)?;
                steps.push(next);
            }
        }
    };
    let terminal = steps.last().expect("nonempty").clone();
    let d_value = match case {
        TerminalCase::CaseA => -1,
        TerminalCase::CaseB => 0,
        TerminalCase::CaseD(SpecialPattern::Special222) => 0,
        TerminalCase::CaseD(SpecialPattern::Special2dd(a)) => a as i128 - 3,
        TerminalCase::CaseD(SpecialPattern::Generic) => delta(&terminal)?,
    };
    Ok(RecursionTrace {
        start: d.clone(),
        steps,
        terminal,
        case,
        d_value,
    })
}

/// `D(d)` without the trace.
pub fn dimension(d: &DimVec) -> Result<i128> {
    Ok(run_recursion(d)?.d_value)
}
