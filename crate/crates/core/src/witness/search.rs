//! Multi-start projected gradient descent on the unit sphere.
//!
//! Restart `k` starts from [`random_state_on_stream`] with stream `k`, so a
//! report depends only on the configuration, never on scheduling. Among
//! equal residuals the lowest restart index wins.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::residual::{residual_and_gradient, residual_raw};
use super::state::{norm, random_state_on_stream, tensor_len, Layout, PureState, WitnessExport};
use super::verify_witness;
use crate::arith::DimVec;
use crate::classify::{classify, Classification};
use crate::error::{LmeError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessConfig {
    pub restarts: u32,
    pub max_iters: u32,
    /// Stop a descent once one accepted step lowers `f` by less than this.
    pub step_tolerance: f64,
    /// A restart succeeds once `f` is at or below this.
    pub success_tolerance: f64,
    pub seed: u64,
    /// Largest tensor (number of amplitudes) the search will touch.
    pub max_amplitudes: usize,
    pub initial_step: f64,
    pub armijo: f64,
    /// Stop at the first successful restart.
    pub early_exit: bool,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            restarts: 100,
            max_iters: 5000,
            step_tolerance: 1e-14,
            success_tolerance: 1e-10,
            seed: 42,
            max_amplitudes: 1_000_000,
            initial_step: 0.1,
            armijo: 1e-4,
            early_exit: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub dims: DimVec,
    pub predicted: Classification,
    pub best_residual: f64,
    pub best_state: PureState,
    pub per_subsystem_deviation: Vec<f64>,
    pub best_restart: u32,
    pub restarts_used: u32,
    pub iterations_total: u64,
    pub succeeded: bool,
}

impl WitnessReport {
    pub fn export(&self) -> WitnessExport {
        WitnessExport::from_state(&self.best_state)
    }
}

/// Result of a single descent.
#[derive(Clone, Debug)]
pub struct Descent {
    pub state: PureState,
    pub residual: f64,
    pub iterations: u32,
}

/// Smallest backtracking step before a descent is declared stalled.
const MIN_STEP: f64 = 1e-16;

/// Runs one descent from `start`.
pub fn descend(start: PureState, cfg: &WitnessConfig) -> Descent {
    let layout = Layout::new(start.dims());
    let n = start.dims().len();
    let mut psi = start;
    let (mut f, mut grad) = residual_and_gradient(psi.amplitudes(), &layout, n);
    let mut iterations = 0;
    let mut candidate: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); grad.len()];

    while iterations < cfg.max_iters && f > cfg.success_tolerance {
        let gnorm2: f64 = grad.iter().map(|g| g.norm_sqr()).sum();
        if gnorm2 == 0.0 {
            break;
        }
        iterations += 1;
        let mut step = cfg.initial_step;
        let accepted = loop {
            for ((c, p), g) in candidate.iter_mut().zip(psi.amplitudes()).zip(&grad) {
                *c = p - g * step;
            }
            let scale = norm(&candidate);
            for c in candidate.iter_mut() {
                *c /= scale;
            }
            let fc = residual_raw(&candidate, &layout, n);
            if fc <= f - cfg.armijo * step * gnorm2 {
                break Some(fc);
            }
            step *= 0.5;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some(fc) = accepted else { break };
        psi.amplitudes_mut().copy_from_slice(&candidate);
        let decrease = f - fc;
        (f, grad) = residual_and_gradient(psi.amplitudes(), &layout, n);
        if decrease < cfg.step_tolerance {
            break;
        }
    }
    Descent {
        state: psi,
        residual: f,
        iterations,
    }
}

/// Looks for an LME state of the given format.
///
/// Success is numerical evidence only; a failure does not prove
/// nonexistence. [`Classification`] is the certificate either way.
pub fn search_witness(d: &DimVec, cfg: &WitnessConfig) -> Result<WitnessReport> {
    let len = tensor_len(d)?;
    if len > cfg.max_amplitudes {
        return Err(LmeError::Overflow("tensor size above the witness cap"));
    }
    let predicted = classify(d)?;
    let mut best: Option<(u32, Descent)> = None;
    let mut restarts_used = 0;
    let mut iterations_total = 0u64;
    for k in 0..cfg.restarts.max(1) {
        let start = random_state_on_stream(d, cfg.seed, k as u64)?;
        let run = descend(start, cfg);
        restarts_used += 1;
        iterations_total += run.iterations as u64;
        let better = best.as_ref().is_none_or(|(_, b)| run.residual < b.residual);
        let done = run.residual <= cfg.success_tolerance;
        if better {
            best = Some((k, run));
        }
        if done && cfg.early_exit {
            break;
        }
    }
    let (best_restart, best) = best.expect("at least one restart");
    let (_, per_subsystem_deviation) = verify_witness(&best.state, f64::INFINITY);
    Ok(WitnessReport {
        dims: d.clone(),
        predicted,
        best_residual: best.residual,
        succeeded: best.residual <= cfg.success_tolerance,
        best_state: best.state,
        per_subsystem_deviation,
        best_restart,
        restarts_used,
        iterations_total,
    })
}
