//! Closed-form classification from `Delta`, `R` and `g_max`.
//!
//! Nothing in this module calls into [`crate::recursion`] except
//! [`cross_check`], which exists to compare the two routes.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{lcm_all, DimVec, InvariantBundle};
use crate::error::{LmeError, Result};
use crate::recursion::{run_recursion, RecursionTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Empty,
    Point,
    PositiveDim(u64),
}

impl Status {
    /// -1 for empty, 0 for a point, `k` for dimension `k`.
    pub fn code(self) -> i128 {
        match self {
            Status::Empty => -1,
            Status::Point => 0,
            Status::PositiveDim(k) => k as i128,
        }
    }

    pub fn from_dimension(dim: i128) -> Status {
        match dim {
            d if d < 0 => Status::Empty,
            0 => Status::Point,
            d => Status::PositiveDim(d as u64),
        }
    }

    pub fn is_empty(self) -> bool {
        self == Status::Empty
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Empty => write!(f, "empty"),
            Status::Point => write!(f, "point"),
            Status::PositiveDim(k) => write!(f, "dim {k}"),
        }
    }
}

/// Which branch of the closed form decided the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    DeltaGreaterThanMinus2,
    DeltaEqualsMinus2,
    DeltaLessThanMinus2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub status: Status,
    pub invariants: InvariantBundle,
    pub rule: Rule,
}

pub fn classify(d: &DimVec) -> Result<Classification> {
    let inv = InvariantBundle::compute(d)?;
    let (status, rule) = match inv.delta {
        delta if delta > -2 => {
            if inv.r <= 0 {
                return Err(inconsistent(d, "Delta > -2 but R <= 0"));
            }
            (
                Status::PositiveDim(delta as u64),
                Rule::DeltaGreaterThanMinus2,
            )
        }
        -2 => {
            if inv.r <= 0 {
                return Err(inconsistent(d, "Delta = -2 but R <= 0"));
            }
            let dim = inv.gmax.saturating_sub(3);
            let status = if dim == 0 {
                Status::Point
            } else {
                Status::PositiveDim(dim)
            };
            (status, Rule::DeltaEqualsMinus2)
        }
        _ => {
            let status = match inv.r {
                0 => Status::Point,
                r if r < 0 => Status::Empty,
                _ => return Err(inconsistent(d, "Delta < -2 but R > 0")),
            };
            (status, Rule::DeltaLessThanMinus2)
        }
    };
    if let Status::PositiveDim(0) = status {
        return Err(inconsistent(d, "Delta > -2 but Delta < 1"));
    }
    Ok(Classification {
        status,
        invariants: inv,
        rule,
    })
}

fn inconsistent(d: &DimVec, what: &str) -> LmeError {
    LmeError::InternalInconsistency(format!("{what} for {d}"))
}

/// Closed form for the family `(2, b, c)` with `2 <= b <= c`.
///
/// Nonempty iff `b = c` (dimension `max(b - 3, 0)`) or `c / b` reduces to
/// `(k + 1) / k`, in which case the quotient is a point.
pub fn classify_2bc(b: u64, c: u64) -> Result<Classification> {
    let (b, c) = (b.min(c), b.max(c));
    if b < 2 {
        return Err(LmeError::InsufficientNontrivial);
    }
    let d = DimVec::new(&[2, b, c])?;
    let inv = InvariantBundle::compute(&d)?;
    let status = if b == c {
        match b.saturating_sub(3) {
            0 => Status::Point,
            k => Status::PositiveDim(k),
        }
    } else {
        let g = b.gcd(&c);
        let (q, p) = (b / g, c / g);
        if p == q + 1 && b > 1 {
            Status::Point
        } else {
            Status::Empty
        }
    };
    let rule = match inv.delta {
        x if x > -2 => Rule::DeltaGreaterThanMinus2,
        -2 => Rule::DeltaEqualsMinus2,
        _ => Rule::DeltaLessThanMinus2,
    };
    Ok(Classification {
        status,
        invariants: inv,
        rule,
    })
}

/// Whether the hyperdeterminant of this format is a nonzero polynomial:
/// `d_n <= d_1 + ... + d_{n-1} - (n - 2)`.
pub fn hyperdet_nonzero(d: &DimVec) -> bool {
    let xs = d.dims();
    let n = xs.len() as i128;
    let head: i128 = xs[..xs.len() - 1].iter().map(|&x| x as i128).sum();
    (d.last() as i128) <= head - (n - 2)
}

/// Degrees `l, 2l, ... <= k_max` with `l = lcm(d)`; invariants of any other
/// degree vanish.
pub fn invariant_degrees(d: &DimVec, k_max: u64) -> Result<Vec<u64>> {
    let l = lcm_all(d)?;
    Ok((1..=k_max / l).map(|q| q * l).collect())
}

/// Outcome of running both the closed form and the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub dims: DimVec,
    pub closed_form: Classification,
    pub recursive_dim: i128,
    pub agree: bool,
    pub trace: RecursionTrace,
}

pub fn cross_check(d: &DimVec) -> Result<ConsistencyReport> {
    let closed_form = classify(d)?;
    let trace = run_recursion(d)?;
    let recursive_dim = trace.d_value;
    Ok(ConsistencyReport {
        dims: d.clone(),
        agree: closed_form.status.code() == recursive_dim,
        closed_form,
        recursive_dim,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(xs: &[u64]) -> DimVec {
        DimVec::new(xs).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&dv(&[2, 5, 5])).unwrap();
        assert_eq!(c.status, Status::PositiveDim(2));
        assert_eq!(c.rule, Rule::DeltaEqualsMinus2);
        assert_eq!(classify(&dv(&[2, 3, 4])).unwrap().status, Status::Point);
        let c = classify(&dv(&[2, 2, 5])).unwrap();
        assert_eq!(c.status, Status::Empty);
        assert_eq!(c.invariants.r, -8);
        assert_eq!(
            classify(&dv(&[3, 3, 3])).unwrap().status,
            Status::PositiveDim(2)
        );
        assert_eq!(classify(&dv(&[2, 2, 2])).unwrap().status, Status::Point);
        assert_eq!(classify(&dv(&[1, 2, 2])).unwrap().status, Status::Point);
    }

    #[test]
    fn two_bc_examples() {
        assert_eq!(classify_2bc(5, 5).unwrap().status, Status::PositiveDim(2));
        assert_eq!(classify_2bc(4, 6).unwrap().status, Status::Point);
        assert_eq!(classify_2bc(3, 7).unwrap().status, Status::Empty);
        assert_eq!(classify_2bc(2, 2).unwrap().status, Status::Point);
        assert!(classify_2bc(1, 1).is_err());
    }

    #[test]
    fn hyperdet_examples() {
        assert!(hyperdet_nonzero(&dv(&[2, 2, 3])));
        assert!(!hyperdet_nonzero(&dv(&[2, 2, 4])));
        assert!(hyperdet_nonzero(&dv(&[7, 7])));
        assert!(!hyperdet_nonzero(&dv(&[6, 7])));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(
            invariant_degrees(&dv(&[2, 3, 6]), 20).unwrap(),
            vec![6, 12, 18]
        );
        assert_eq!(invariant_degrees(&dv(&[2, 2, 2]), 5).unwrap(), vec![2, 4]);
        assert!(invariant_degrees(&dv(&[2, 3, 5]), 29).unwrap().is_empty());
    }

    #[test]
    fn cross_check_examples() {
        for (xs, code) in [(&[2u64, 3, 4][..], 0), (&[3, 3, 3], 2), (&[2, 2, 5], -1)] {
            let rep = cross_check(&dv(xs)).unwrap();
            assert!(rep.agree);
            assert_eq!(rep.recursive_dim, code);
            assert_eq!(rep.closed_form.status.code(), code);
        }
    }

    #[test]
    fn two_bc_matches_general() {
        for b in 2..=64u64 {
            for c in b..=64u64 {
                let general = classify(&dv(&[2, b, c])).unwrap();
                let family = classify_2bc(b, c).unwrap();
                assert_eq!(general.status, family.status, "(2,{b},{c})");
            }
        }
    }
}
