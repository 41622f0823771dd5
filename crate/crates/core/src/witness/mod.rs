//! Numerical witnesses for locally maximally entangled states.

mod residual;
mod search;
mod state;

pub use residual::{lme_residual, lme_residual_from_purity, residual_gradient};
pub use search::{descend, search_witness, Descent, WitnessConfig, WitnessReport};
pub use state::{
    random_state, random_state_on_stream, reduced_density, DensityMatrix, PureState, WitnessExport,
    NORM_TOLERANCE,
};

/// Checks `||rho_i - 1/d_i||_F <= tol` for every subsystem and returns all
/// deviations.
pub fn verify_witness(psi: &PureState, tol: f64) -> (bool, Vec<f64>) {
    let dev: Vec<f64> = (0..psi.dims().len())
        .map(|i| {
            reduced_density(psi, i)
                .expect("index in range")
                .deviation_from_maximally_mixed()
        })
        .collect();
    (dev.iter().all(|&x| x <= tol), dev)
}
