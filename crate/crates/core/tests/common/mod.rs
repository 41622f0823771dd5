//! Reference computations that share no code with the library's
//! partial trace or gradient.

#![allow(dead_code)]

use lme_core::witness::PureState;
use lme_core::DimVec;
use num_complex::Complex64;

/// Decodes a flat row-major index into a multi-index.
pub fn multi_index(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    idx
}

/// `rho_i` by summing over every pair of multi-indices that agree off slot `i`.
pub fn partial_trace_bruteforce(
    amps: &[Complex64],
    dims: &[usize],
    i: usize,
) -> Vec<Vec<Complex64>> {
    let d = dims[i];
    let mut rho = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for x in 0..amps.len() {
        let ix = multi_index(x, dims);
        for y in 0..amps.len() {
            let iy = multi_index(y, dims);
            let same_rest = (0..dims.len()).all(|k| k == i || ix[k] == iy[k]);
            if same_rest {
                rho[ix[i]][iy[i]] += amps[x] * amps[y].conj();
            }
        }
    }
    rho
}

/// `sum_i ||rho_i - 1/d_i||_F^2` of the normalized input.
pub fn residual_bruteforce(amps: &[Complex64], dims: &[usize]) -> f64 {
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let unit: Vec<Complex64> = amps.iter().map(|a| a / norm).collect();
    (0..dims.len())
        .map(|i| {
            let rho = partial_trace_bruteforce(&unit, dims, i);
            let d = dims[i];
            let mut acc = 0.0;
            for r in 0..d {
                for c in 0..d {
                    let target = if r == c { 1.0 / d as f64 } else { 0.0 };
                    acc += (rho[r][c] - target).norm_sqr();
                }
            }
            acc
        })
        .sum()
}

/// Central differences of `psi -> f(psi / |psi|)` along each real coordinate.
pub fn gradient_fd(psi: &PureState, h: f64) -> Vec<Complex64> {
    let dims = usize_dims(psi.dims());
    let base = psi.amplitudes().to_vec();
    let mut out = Vec::with_capacity(base.len());
    for j in 0..base.len() {
        let mut parts = [0.0; 2];
        for (part, dir) in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]
            .iter()
            .enumerate()
        {
            let mut plus = base.clone();
            plus[j] += dir * h;
            let mut minus = base.clone();
            minus[j] -= dir * h;
            parts[part] = (residual_bruteforce(&plus, &dims) - residual_bruteforce(&minus, &dims))
                / (2.0 * h);
        }
        out.push(Complex64::new(parts[0], parts[1]));
    }
    out
}

pub fn usize_dims(d: &DimVec) -> Vec<usize> {
    d.dims().iter().map(|&x| x as usize).collect()
}

pub fn relative_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let scale: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    diff / scale
}

/// Haar-ish random unitary: Gram-Schmidt on a seeded complex matrix.
pub fn random_unitary(d: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = || {
        // xorshift64*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        (state.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for _ in 0..d {
        let mut v: Vec<Complex64> = (0..d).map(|_| Complex64::new(next(), next())).collect();
        for u in &cols {
            let ip: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= ip * ui;
            }
        }
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    cols
}

/// Applies `u` to slot `i` of the tensor.
pub fn apply_local(
    amps: &[Complex64],
    dims: &[usize],
    i: usize,
    u: &[Vec<Complex64>],
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for x in 0..amps.len() {
        let ix = multi_index(x, dims);
        for a in 0..dims[i] {
            let mut iy = ix.clone();
            iy[i] = a;
            let y = iy.iter().zip(dims).fold(0, |acc, (k, d)| acc * d + k);
            // u is stored by columns: u[col][row]
            out[y] += u[ix[i]][a] * amps[x];
        }
    }
    out
}
