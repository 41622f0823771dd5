//! Locally maximally entangled states: when they exist, how large their
//! moduli space is, and numerical witnesses for them.
//!
//! Two independent routes give the dimension of the quotient
//! `P(V_1 (x) ... (x) V_n) // SL_{d_1} x ... x SL_{d_n}`: the closed form in
//! [`classify`] (driven by the gcd invariant `R`) and the castling recursion
//! in [`recursion`]. [`witness`] searches for an explicit state whose
//! one-body marginals are all maximally mixed.

pub mod arith;
pub mod classify;
pub mod error;
pub mod recursion;
pub mod sweep;
pub mod witness;

pub use arith::{delta, gk, gmax, r_invariant, strip_ones, validate_dims, DimVec, InvariantBundle};
pub use classify::{
    classify, classify_2bc, cross_check, hyperdet_nonzero, invariant_degrees, Classification,
    ConsistencyReport, Rule, Status,
};
pub use error::{LmeError, Result};
pub use recursion::{
    castle, classify_case, dimension, run_recursion, CaseOutcome, RecursionTrace, SpecialPattern,
    TerminalCase,
};
pub use sweep::{enumerate, EnumerationBounds, RecordRow, SweepItem};
pub use witness::{
    lme_residual, random_state, reduced_density, residual_gradient, search_witness, verify_witness,
    PureState, WitnessConfig, WitnessReport,
};
