use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::subspace::to_real;
use super::{subspace_distance, RealSubspace};
use crate::error::{Error, Result};

/// Modular data of a standard subspace `H ⊂ ℂ^d`.
///
/// Anti-linear maps are stored as `v ↦ M v̄`: the Tomita operator `S(h + ik) = h − ik`
/// as `S v = M_S v̄`, and the modular conjugation as `J v = U v̄` with `U` unitary.
/// With this encoding `Δ = S*S = conj(M_S* M_S)` and `S = JΔ^{1/2}` gives
/// `U = M_S · conj(Δ^{-1/2})`.
#[derive(Debug, Clone)]
pub struct TomitaData {
    s_matrix: DMatrix<Complex64>,
    delta: DMatrix<Complex64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
    j_unitary: DMatrix<Complex64>,
    conditioning: f64,
}

impl TomitaData {
    pub fn new(h: &RealSubspace) -> Result<Self> {
        let report = h.standardness();
        if !report.standard {
            return Err(Error::NotStandard { rank_sum: report.rank_sum, intersection: report.intersection_dim });
        }
        let d = h.ambient_dim();
        let vectors = h.basis_vectors();
        // columns: a real basis of H, which is a complex basis of ℂ^d
        let basis = DMatrix::from_fn(d, d, |r, c| vectors[c][r]);
        let inv = basis
            .map(|z| z.conj())
            .try_inverse()
            .ok_or(Error::NotStandard { rank_sum: report.rank_sum, intersection: report.intersection_dim })?;
        let s_matrix = &basis * inv;
        let delta = (s_matrix.adjoint() * &s_matrix).map(|z| z.conj());
        let delta = hermitian_part(&delta);
        let eig = SymmetricEigen::new(delta.clone());
        let eigenvectors = eig.eigenvectors;
        // Eigenvalues below 1 carry only absolute accuracy ε‖Δ‖ from the solver. Since S² = 1,
        // Δ⁻¹ = M_S M_S* without inversion, and its Rayleigh quotient restores relative accuracy.
        let inverse = hermitian_part(&(&s_matrix * s_matrix.adjoint()));
        let eigenvalues = DVector::from_fn(d, |k, _| {
            let v = eigenvectors.column(k);
            if eig.eigenvalues[k] < 1.0 {
                1.0 / (v.adjoint() * &inverse * v)[(0, 0)].re
            } else {
                eig.eigenvalues[k]
            }
        });
        let inv_sqrt = function_of(&eigenvectors, &eigenvalues, |l| Complex64::new(l.powf(-0.5), 0.0));
        let j_unitary = &s_matrix * inv_sqrt.map(|z| z.conj());
        Ok(Self { s_matrix, delta, eigenvalues, eigenvectors, j_unitary, conditioning: report.conditioning })
    }

    /// `M_S` with `S v = M_S v̄`.
    pub fn s_matrix(&self) -> &DMatrix<Complex64> {
        &self.s_matrix
    }

    /// The modular operator Δ.
    pub fn delta(&self) -> &DMatrix<Complex64> {
        &self.delta
    }

    /// The unitary `U` with `J v = U v̄`.
    pub fn j_unitary(&self) -> &DMatrix<Complex64> {
        &self.j_unitary
    }

    /// Ratio of extreme singular values of `[H, iH]`; small values mean a nearly degenerate `H`.
    pub fn conditioning(&self) -> f64 {
        self.conditioning
    }

    /// Eigenvalues of Δ, ascending.
    pub fn delta_spectrum(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn apply_s(&self, v: &[Complex64]) -> Vec<Complex64> {
        apply_antilinear(&self.s_matrix, v)
    }

    pub fn apply_j(&self, v: &[Complex64]) -> Vec<Complex64> {
        apply_antilinear(&self.j_unitary, v)
    }

    /// `Δ^a` for real `a`.
    pub fn delta_power(&self, a: f64) -> DMatrix<Complex64> {
        function_of(&self.eigenvectors, &self.eigenvalues, |l| Complex64::new(l.powf(a), 0.0))
    }

    /// The modular unitary `Δ^{it}`.
    pub fn delta_it(&self, t: f64) -> DMatrix<Complex64> {
        function_of(&self.eigenvectors, &self.eigenvalues, |l| Complex64::from_polar(1.0, t * l.ln()))
    }

    /// Matrix of the linear map `J²` (the identity when `J` is an involution).
    pub fn j_squared(&self) -> DMatrix<Complex64> {
        &self.j_unitary * self.j_unitary.map(|z| z.conj())
    }

    /// Matrix of the linear map `JΔJ`.
    pub fn j_delta_j(&self) -> DMatrix<Complex64> {
        &self.j_unitary * self.delta.map(|z| z.conj()) * self.j_unitary.map(|z| z.conj())
    }

    /// Matrix of the linear map `S²`.
    pub fn s_squared(&self) -> DMatrix<Complex64> {
        &self.s_matrix * self.s_matrix.map(|z| z.conj())
    }
}

fn apply_antilinear(m: &DMatrix<Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    let conj = DVector::from_iterator(v.len(), v.iter().map(|z| z.conj()));
    (m * conj).iter().copied().collect()
}

fn hermitian_part(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).map(|z| z * 0.5)
}

fn function_of(
    vectors: &DMatrix<Complex64>,
    values: &DVector<f64>,
    f: impl Fn(f64) -> Complex64,
) -> DMatrix<Complex64> {
    let diag = DMatrix::from_diagonal(&values.map(f));
    vectors * diag * vectors.adjoint()
}

fn image(h: &RealSubspace, map: impl Fn(&[Complex64]) -> Vec<Complex64>) -> RealSubspace {
    let d = h.ambient_dim();
    let vectors = h.basis_vectors();
    let mut m = DMatrix::zeros(2 * d, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, &to_real(&map(v)));
    }
    RealSubspace::from_real_columns(d, &m)
}

/// Largest principal angle between `Δ^{it}H` and `H` over the given times.
pub fn modular_flow_check(h: &RealSubspace, times: &[f64]) -> Result<f64> {
    let data = h.tomita()?;
    Ok(times
        .iter()
        .map(|&t| {
            let u = data.delta_it(t);
            let moved = image(h, |v| (&u * DVector::from_column_slice(v)).iter().copied().collect());
            subspace_distance(&moved, h)
        })
        .fold(0.0, f64::max))
}

/// Largest principal angle between `JH` and the symplectic complement `H′`.
pub fn conjugation_defect(h: &RealSubspace) -> Result<f64> {
    let data = h.tomita()?;
    let jh = image(h, |v| data.apply_j(v));
    Ok(subspace_distance(&jh, &h.symplectic_complement()))
}

#[cfg(test)]
mod tests {
    use super::super::subspace::times_i_matrix;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cmax(m: &DMatrix<Complex64>) -> f64 {
        m.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    fn random_standard(rng: &mut ChaCha8Rng, d: usize) -> RealSubspace {
        loop {
            let gens: Vec<Vec<Complex64>> = (0..d)
                .map(|_| (0..d).map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect())
                .collect();
            let h = RealSubspace::from_generators(d, &gens).unwrap();
            if h.standardness().conditioning > 1e-2 {
                return h;
            }
        }
    }

    /// Dense real-linear oracle: S acts on ℝ^{2d} as B·diag(I, −I)·B⁻¹ with B = [H, iH];
    /// the real transpose is the realified adjoint, so Δ = SᵀS.
    fn delta_by_realification(h: &RealSubspace) -> DMatrix<f64> {
        let d = h.ambient_dim();
        let q = h.basis();
        let mut b = DMatrix::zeros(2 * d, 2 * d);
        b.columns_mut(0, d).copy_from(q);
        b.columns_mut(d, d).copy_from(&(times_i_matrix(d) * q));
        let sign = DMatrix::from_fn(2 * d, 2 * d, |r, col| if r != col { 0.0 } else if r < d { 1.0 } else { -1.0 });
        let s = &b * sign * b.try_inverse().unwrap();
        s.transpose() * s
    }

    fn realify(m: &DMatrix<Complex64>) -> DMatrix<f64> {
        let d = m.nrows();
        DMatrix::from_fn(2 * d, 2 * d, |r, col| {
            let z = m[(r % d, col % d)];
            match (r < d, col < d) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        })
    }

    #[test]
    fn real_line_has_trivial_modular_data() {
        let h = RealSubspace::from_generators(1, &[vec![c(1.0, 0.0)]]).unwrap();
        let data = h.tomita().unwrap();
        assert!((data.delta()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((data.j_unitary()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(data.apply_j(&[c(0.3, 0.7)]), vec![c(0.3, -0.7)]);
        assert!(modular_flow_check(&h, &[0.5, 3.0]).unwrap() < 1e-15);
    }

    #[test]
    fn non_standard_input_is_rejected() {
        let err = RealSubspace::full(1).tomita().unwrap_err();
        assert!(err.to_string().starts_with("Tomita data requires a standard subspace"));
        assert!(modular_flow_check(&RealSubspace::zero(2), &[1.0]).is_err());
    }

    #[test]
    fn tilted_pair_matches_realified_oracle() {
        let (ct, st) = (FRAC_PI_4.cos(), FRAC_PI_4.sin());
        let h = RealSubspace::from_generators(2, &[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, ct), c(0.0, st)]]).unwrap();
        let data = h.tomita().unwrap();
        let oracle = delta_by_realification(&h);
        assert!((realify(data.delta()) - oracle).amax() < 1e-12);
        let spec = data.delta_spectrum();
        assert!((spec[0] * spec[1] - 1.0).abs() < 1e-10);
        // from the oracle: λ_min = (√2 − 1)², λ_max = (√2 + 1)²
        assert!((spec[0] - (2f64.sqrt() - 1.0).powi(2)).abs() < 1e-12, "{spec:?}");
    }

    #[test]
    fn small_eigenvalues_keep_relative_accuracy() {
        // tilt 0.01: Δ has eigenvalues tan²(θ/2) ≈ 2.5e-5 and its inverse (checked in 50-digit arithmetic)
        let th: f64 = 0.01;
        let h = RealSubspace::from_generators(2, &[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, th.cos()), c(0.0, th.sin())]])
            .unwrap();
        let data = h.tomita().unwrap();
        let spec = data.delta_spectrum();
        let expected = (th / 2.0).tan().powi(2);
        assert!((spec[0] / expected - 1.0).abs() < 1e-9, "{spec:?}");
        assert!((spec[0] * spec[1] - 1.0).abs() < 1e-9);
        let inv = data.delta_power(-1.0);
        assert!(cmax(&(data.j_delta_j() - &inv)) / cmax(&inv) < 1e-10);
    }

    #[test]
    fn random_subspaces_satisfy_modular_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for d in 1..=3 {
            for _ in 0..10 {
                let h = random_standard(&mut rng, d);
                let data = h.tomita().unwrap();
                let id = DMatrix::<Complex64>::identity(d, d);
                assert!(cmax(&(data.s_squared() - &id)) < 1e-10);
                assert!(cmax(&(data.j_squared() - &id)) < 1e-10);
                let inv = data.delta_power(-1.0);
                assert!(cmax(&(data.j_delta_j() - inv)) < 1e-10);
                for v in h.basis_vectors() {
                    let sv = data.apply_s(&v);
                    assert!(sv.iter().zip(&v).all(|(a, b)| (a - b).norm() < 1e-10));
                }
                assert!((realify(data.delta()) - delta_by_realification(&h)).amax() < 1e-8);
                assert!(modular_flow_check(&h, &[0.1, 1.0, 10.0]).unwrap() < 1e-9);
                assert!(conjugation_defect(&h).unwrap() < 1e-9);
            }
        }
    }
}
