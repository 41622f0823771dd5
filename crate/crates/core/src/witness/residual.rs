//! The merit function `f(psi) = sum_i ||rho_i - 1/d_i||_F^2` and its
//! gradient on the unit sphere. `f` vanishes exactly on the LME states.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::{partial_trace, DensityMatrix, Layout, PureState};

/// `sum_i ||rho_i - 1/d_i||_F^2`.
pub fn lme_residual(psi: &PureState) -> f64 {
    let layout = Layout::new(psi.dims());
    residual_raw(psi.amplitudes(), &layout, psi.dims().len())
}

/// `sum_i (tr rho_i^2 - 1/d_i)`; equal to [`lme_residual`] on unit states.
pub fn lme_residual_from_purity(psi: &PureState) -> f64 {
    (0..psi.dims().len())
        .map(|i| {
            let rho = super::reduced_density(psi, i).expect("index in range");
            rho.purity() - 1.0 / rho.dim() as f64
        })
        .sum()
}

pub(crate) fn residual_raw(amps: &[Complex64], layout: &Layout, n: usize) -> f64 {
    (0..n)
        .map(|i| {
            let rho = partial_trace(amps, layout, i);
            let dm = DensityMatrix {
                subsystem: i,
                matrix: rho,
            };
            dm.deviation_from_maximally_mixed().powi(2)
        })
        .sum()
}

/// Riemannian gradient of [`lme_residual`] at `psi`, with respect to the
/// `2 * prod d_i` real coordinates (real and imaginary parts).
///
/// The ambient gradient is `4 sum_i (rho_i - 1/d_i)` applied to slot `i`;
/// its component along `psi` is then removed.
pub fn residual_gradient(psi: &PureState) -> Vec<Complex64> {
    let layout = Layout::new(psi.dims());
    residual_and_gradient(psi.amplitudes(), &layout, psi.dims().len()).1
}

pub(crate) fn residual_and_gradient(
    amps: &[Complex64],
    layout: &Layout,
    n: usize,
) -> (f64, Vec<Complex64>) {
    let mut grad = vec![Complex64::new(0.0, 0.0); amps.len()];
    let mut value = 0.0;
    for i in 0..n {
        let mut a = partial_trace(amps, layout, i);
        let d = a.nrows();
        for k in 0..d {
            a[(k, k)] -= 1.0 / d as f64;
        }
        value += a.norm_squared();
        apply_on_slot(&a, amps, layout, i, 4.0, &mut grad);
    }
    let overlap: Complex64 = amps.iter().zip(&grad).map(|(p, g)| p.conj() * g).sum();
    for (g, p) in grad.iter_mut().zip(amps) {
        *g -= overlap * p;
    }
    (value, grad)
}

/// `out += scale * (A acting on slot i) psi`
fn apply_on_slot(
    a: &DMatrix<Complex64>,
    amps: &[Complex64],
    layout: &Layout,
    i: usize,
    scale: f64,
    out: &mut [Complex64],
) {
    let (outer, d, inner) = layout.split(i);
    for o in 0..outer {
        let base = o * d * inner;
        for r in 0..d {
            for c in 0..d {
                let coeff = a[(r, c)] * scale;
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let src = &amps[base + c * inner..base + (c + 1) * inner];
                let dst = &mut out[base + r * inner..base + (r + 1) * inner];
                for (y, x) in dst.iter_mut().zip(src) {
                    *y += coeff * x;
                }
            }
        }
    }
}
