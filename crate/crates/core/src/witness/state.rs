use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::arith::DimVec;
use crate::error::{LmeError, Result};

/// Normalization tolerance for [`PureState`].
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A unit vector in `V_1 (x) ... (x) V_n`, stored flat in row-major
/// multi-index order (the first index varies slowest).
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: DimVec,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Normalizes `amplitudes` and wraps them.
    pub fn new(dims: DimVec, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = tensor_len(&dims)?;
        if amplitudes.len() != expected {
            return Err(LmeError::ShapeMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        let mut state = PureState { dims, amplitudes };
        state.normalize();
        Ok(state)
    }

    pub fn dims(&self) -> &DimVec {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub(crate) fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amplitudes {
                *a /= n;
            }
        }
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// `(|0...0> + |1...1> + ...)/sqrt(d_1)`, the generalized GHZ state.
    pub fn ghz(dims: DimVec) -> Result<Self> {
        let len = tensor_len(&dims)?;
        let layout = Layout::new(&dims);
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        for j in 0..dims.dims()[0] as usize {
            amps[layout.diagonal_index(j)] = Complex64::new(1.0, 0.0);
        }
        PureState::new(dims, amps)
    }

    /// The basis vector with the given multi-index.
    pub fn basis(dims: DimVec, index: &[usize]) -> Result<Self> {
        let len = tensor_len(&dims)?;
        let layout = Layout::new(&dims);
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[layout.flat(index)] = Complex64::new(1.0, 0.0);
        PureState::new(dims, amps)
    }
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn tensor_len(dims: &DimVec) -> Result<usize> {
    usize::try_from(dims.product()?).map_err(|_| LmeError::Overflow("tensor size"))
}

/// Row-major strides of the amplitude tensor.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl Layout {
    pub(crate) fn new(dims: &DimVec) -> Self {
        let dims: Vec<usize> = dims.dims().iter().map(|&d| d as usize).collect();
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Layout { dims, strides }
    }

    pub(crate) fn flat(&self, index: &[usize]) -> usize {
        index.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    fn diagonal_index(&self, j: usize) -> usize {
        self.strides.iter().map(|s| j * s).sum()
    }

    /// `(outer, d_i, inner)` view of the tensor around slot `i`.
    pub(crate) fn split(&self, i: usize) -> (usize, usize, usize) {
        let outer = self.dims[..i].iter().product();
        (outer, self.dims[i], self.strides[i])
    }
}

/// Haar-random unit state from complex Gaussian amplitudes.
///
/// Reproducible: the generator is ChaCha20 seeded from `seed` on stream 0.
pub fn random_state(d: &DimVec, seed: u64) -> Result<PureState> {
    random_state_on_stream(d, seed, 0)
}

/// Stream `k` of the ChaCha20 generator seeded by `seed`. Restart `k` of a
/// witness search draws its start point from stream `k`.
pub fn random_state_on_stream(d: &DimVec, seed: u64, stream: u64) -> Result<PureState> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let len = tensor_len(d)?;
    let amps = (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    PureState::new(d.clone(), amps)
}

/// Reduced density matrix of one subsystem.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    /// 0-based subsystem index.
    pub subsystem: usize,
    pub matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `||M - M^dagger||_F`
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `tr(rho^2)`
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `||rho - 1/d||_F`
    pub fn deviation_from_maximally_mixed(&self) -> f64 {
        let d = self.dim();
        let inv = 1.0 / d as f64;
        let mut acc = 0.0;
        for r in 0..d {
            for c in 0..d {
                let mut z = self.matrix[(r, c)];
                if r == c {
                    z -= inv;
                }
                acc += z.norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// `rho_i = tr_{all but i} |psi><psi|`, with `i` 0-based.
pub fn reduced_density(psi: &PureState, i: usize) -> Result<DensityMatrix> {
    let n = psi.dims.len();
    if i >= n {
        return Err(LmeError::IndexOutOfRange { index: i, n });
    }
    let layout = Layout::new(&psi.dims);
    Ok(DensityMatrix {
        subsystem: i,
        matrix: partial_trace(&psi.amplitudes, &layout, i),
    })
}

pub(crate) fn partial_trace(amps: &[Complex64], layout: &Layout, i: usize) -> DMatrix<Complex64> {
    let (outer, d, inner) = layout.split(i);
    let mut rho = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    for o in 0..outer {
        let block = &amps[o * d * inner..(o + 1) * d * inner];
        for a in 0..d {
            let row_a = &block[a * inner..(a + 1) * inner];
            for b in a..d {
                let row_b = &block[b * inner..(b + 1) * inner];
                let s: Complex64 = row_a.iter().zip(row_b).map(|(x, y)| x * y.conj()).sum();
                rho[(a, b)] += s;
            }
        }
    }
    for a in 0..d {
        for b in 0..a {
            rho[(a, b)] = rho[(b, a)].conj();
        }
    }
    rho
}

/// Plain serialization of a witness state together with its quality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessExport {
    pub dims: DimVec,
    /// `[re, im]` pairs in row-major order.
    pub amplitudes: Vec<[f64; 2]>,
    pub residual: f64,
    pub per_subsystem_deviation: Vec<f64>,
}

impl WitnessExport {
    pub fn from_state(psi: &PureState) -> Self {
        let rhos: Vec<DensityMatrix> = (0..psi.dims.len())
            .map(|i| reduced_density(psi, i).expect("index in range"))
            .collect();
        let dev: Vec<f64> = rhos
            .iter()
            .map(|r| r.deviation_from_maximally_mixed())
            .collect();
        WitnessExport {
            dims: psi.dims.clone(),
            amplitudes: psi.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
            residual: dev.iter().map(|x| x * x).sum(),
            per_subsystem_deviation: dev,
        }
    }

    /// Rebuilds (and renormalizes) the stored state.
    pub fn to_state(&self) -> Result<PureState> {
        let amps = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        PureState::new(self.dims.clone(), amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(xs: &[u64]) -> DimVec {
        DimVec::new(xs).unwrap()
    }

    fn assert_matrix(rho: &DensityMatrix, expected: &[&[f64]]) {
        for (r, row) in expected.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert!((rho.matrix[(r, c)] - Complex64::new(v, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn random_state_is_reproducible() {
        let a = random_state(&dv(&[2, 2]), 7).unwrap();
        let b = random_state(&dv(&[2, 2]), 7).unwrap();
        let c = random_state(&dv(&[2, 2]), 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.amplitudes().len(), 4);
        let s = random_state(&dv(&[2, 2, 2]), 123).unwrap();
        assert!((s.norm() - 1.0).abs() < NORM_TOLERANCE);
        let other_stream = random_state_on_stream(&dv(&[2, 2]), 7, 1).unwrap();
        assert_ne!(a, other_stream);
    }

    #[test]
    fn ghz_marginals() {
        let ghz = PureState::ghz(dv(&[2, 2, 2])).unwrap();
        for i in 0..3 {
            assert_matrix(
                &reduced_density(&ghz, i).unwrap(),
                &[&[0.5, 0.0], &[0.0, 0.5]],
            );
        }
    }

    #[test]
    fn product_marginal() {
        let psi = PureState::basis(dv(&[2, 2]), &[0, 0]).unwrap();
        assert_matrix(
            &reduced_density(&psi, 1).unwrap(),
            &[&[1.0, 0.0], &[0.0, 0.0]],
        );
    }

    #[test]
    fn bell_marginal() {
        for d in 2..=5u64 {
            let psi = PureState::ghz(dv(&[d, d])).unwrap();
            let rho = reduced_density(&psi, 0).unwrap();
            assert!(rho.deviation_from_maximally_mixed() < 1e-12);
        }
    }

    #[test]
    fn index_out_of_range() {
        let psi = PureState::ghz(dv(&[2, 2])).unwrap();
        assert_eq!(
            reduced_density(&psi, 2),
            Err(LmeError::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn shape_mismatch() {
        let err = PureState::new(dv(&[2, 3]), vec![Complex64::new(1.0, 0.0); 5]).unwrap_err();
        assert_eq!(
            err,
            LmeError::ShapeMismatch {
                expected: 6,
                got: 5
            }
        );
    }

    #[test]
    fn asymmetric_slot_layout() {
        // |psi> = |0>|2>|1> on (2,3,4): each marginal is a pure projector
        let psi = PureState::basis(dv(&[2, 3, 4]), &[0, 2, 1]).unwrap();
        for (slot, hot) in [(0, 0), (1, 2), (2, 1)] {
            let rho = reduced_density(&psi, slot).unwrap();
            assert!((rho.matrix[(hot, hot)].re - 1.0).abs() < 1e-15);
            assert!((rho.purity() - 1.0).abs() < 1e-15);
        }
    }
}
