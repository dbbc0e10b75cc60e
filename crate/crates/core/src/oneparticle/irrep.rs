use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Lowest weight `n` positive-energy module truncated to the basis `e_0 … e_{d-1}`.
///
/// The rotation generator acts diagonally with `l e_k = 2π(n + k) e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowestWeightIrrep {
    weight: u32,
    dim: usize,
}

impl LowestWeightIrrep {
    pub fn new(weight: u32, dim: usize) -> Result<Self> {
        if weight == 0 {
            return Err(Error::Domain("lowest weight must be positive".into()));
        }
        if dim == 0 {
            return Err(Error::Domain("truncation dimension must be positive".into()));
        }
        Ok(Self { weight, dim })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues `2π(n+k)` of the rotation generator, `k = 0 … d-1`, increasing.
    pub fn rotation_spectrum(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|k| 2.0 * PI * (self.weight as f64 + k as f64))
            .collect()
    }

    /// The rotation generator `l^(n)` as a diagonal matrix.
    pub fn rotation_generator(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.rotation_spectrum()))
    }

    /// `e^{-β l^(n)}` on the truncated module.
    pub fn gibbs_factor(&self, beta: f64) -> DMatrix<f64> {
        let diag: Vec<f64> = self.rotation_spectrum().iter().map(|e| (-beta * e).exp()).collect();
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    }

    /// Ladder operators `(L₊, L₋, L₀)` in the discrete-series normalization
    /// `L₊ e_k = √((k+1)(k+2n)) e_{k+1}`, `L₋ = L₊ᵀ`, `L₀ e_k = (n+k) e_k`.
    ///
    /// `L₊ e_{d-1}` is dropped, so `[L₋, L₊] = 2L₀` fails on the last basis vector.
    pub fn ladder_operators(&self) -> Result<(DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)> {
        if self.dim < 2 {
            return Err(Error::Domain("ladder operators need d >= 2".into()));
        }
        let d = self.dim;
        let n = self.weight as f64;
        let mut plus = DMatrix::zeros(d, d);
        for k in 0..d - 1 {
            let kf = k as f64;
            plus[(k + 1, k)] = ((kf + 1.0) * (kf + 2.0 * n)).sqrt();
        }
        let zero = DMatrix::from_fn(d, d, |i, j| if i == j { n + i as f64 } else { 0.0 });
        let minus = plus.transpose();
        Ok((plus, minus, zero))
    }
}

/// `Tr e^{-β l^(n)} = e^{-2πβn} / (1 - e^{-2πβ})` on the untruncated module.
pub fn one_particle_gibbs_trace(weight: u32, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    if weight == 0 {
        return Err(Error::Domain("lowest weight must be positive".into()));
    }
    let a = 2.0 * PI * beta;
    Ok((-a * weight as f64).exp() / -(-a).exp_m1())
}
