use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::tomita::TomitaData;
use crate::error::{Error, Result};

/// Relative singular-value threshold for every rank decision.
pub const RANK_TOL: f64 = 1e-10;

/// Realification `v ↦ (Re v, Im v)`.
pub fn to_real(v: &[Complex64]) -> DVector<f64> {
    let d = v.len();
    DVector::from_fn(2 * d, |i, _| if i < d { v[i].re } else { v[i - d].im })
}

pub fn to_complex(v: &[f64]) -> Vec<Complex64> {
    let d = v.len() / 2;
    (0..d).map(|j| Complex64::new(v[j], v[d + j])).collect()
}

/// Multiplication by `i` on `ℝ^{2d}`.
pub(crate) fn times_i_matrix(d: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * d, 2 * d);
    for j in 0..d {
        m[(d + j, j)] = 1.0;
        m[(j, d + j)] = -1.0;
    }
    m
}

/// Real-linear span inside `ℂ^d`, stored as an orthonormal basis of `ℝ^{2d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSubspace {
    d: usize,
    basis: DMatrix<f64>,
}

/// Rank data behind the standardness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardnessReport {
    pub real_dim: usize,
    /// Real rank of `H + iH`; `2d` when `H + iH` is dense.
    pub rank_sum: usize,
    /// Real dimension of `H ∩ iH`.
    pub intersection_dim: usize,
    /// Ratio of extreme singular values of `[H, iH]`.
    pub conditioning: f64,
    pub standard: bool,
}

/// JSON form `{"d":…, "generators":[[[re, im], …], …]}`, one inner list per generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceSpec {
    pub d: usize,
    pub generators: Vec<Vec<[f64; 2]>>,
}

impl RealSubspace {
    /// Real span of complex generators in `ℂ^d`.
    pub fn from_generators(d: usize, generators: &[Vec<Complex64>]) -> Result<Self> {
        let mut m = DMatrix::zeros(2 * d, generators.len());
        for (j, g) in generators.iter().enumerate() {
            if g.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: g.len() });
            }
            m.set_column(j, &to_real(g));
        }
        Ok(Self::from_real_columns(d, &m))
    }

    /// Span of the columns of a `2d × m` real matrix.
    pub fn from_real_columns(d: usize, columns: &DMatrix<f64>) -> Self {
        assert_eq!(columns.nrows(), 2 * d, "columns must live in R^(2d)");
        Self { d, basis: orthonormal_range(columns) }
    }

    pub fn zero(d: usize) -> Self {
        Self { d, basis: DMatrix::zeros(2 * d, 0) }
    }

    pub fn full(d: usize) -> Self {
        Self { d, basis: DMatrix::identity(2 * d, 2 * d) }
    }

    /// Complex dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn real_dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthonormal basis (columns) in the realification.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Complex64>> {
        self.basis.column_iter().map(|c| to_complex(c.as_slice())).collect()
    }

    /// `iH`.
    pub fn times_i(&self) -> Self {
        Self { d: self.d, basis: times_i_matrix(self.d) * &self.basis }
    }

    /// `H + K` (real span of the union).
    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut m = DMatrix::zeros(2 * self.d, self.real_dim() + other.real_dim());
        m.columns_mut(0, self.real_dim()).copy_from(&self.basis);
        m.columns_mut(self.real_dim(), other.real_dim()).copy_from(&other.basis);
        Self::from_real_columns(self.d, &m)
    }

    /// Orthogonal complement for the real inner product `Re⟨·,·⟩`.
    pub fn orthogonal_complement(&self) -> Self {
        let n = 2 * self.d;
        let projector = DMatrix::identity(n, n) - &self.basis * self.basis.transpose();
        let eig = SymmetricEigen::new(projector);
        let keep: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
        let basis = DMatrix::from_fn(n, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])]);
        Self { d: self.d, basis }
    }

    /// `H′ = {k : Im⟨h,k⟩ = 0 ∀h ∈ H}`.
    ///
    /// Since `Im⟨h,k⟩ = Re⟨ih,k⟩`, this is the real orthogonal complement of `iH`.
    pub fn symplectic_complement(&self) -> Self {
        self.times_i().orthogonal_complement()
    }

    pub fn standardness(&self) -> StandardnessReport {
        let m = self.real_dim();
        let mut joint = DMatrix::zeros(2 * self.d, 2 * m);
        joint.columns_mut(0, m).copy_from(&self.basis);
        joint.columns_mut(m, m).copy_from(&(times_i_matrix(self.d) * &self.basis));
        let sv: Vec<f64> = if joint.is_empty() { Vec::new() } else { joint.singular_values().iter().copied().collect() };
        let max = sv.iter().copied().fold(0.0, f64::max);
        let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let rank_sum = sv.iter().filter(|&&s| s > RANK_TOL * max).count();
        let intersection_dim = 2 * m - rank_sum;
        let conditioning = if max > 0.0 { min / max } else { 0.0 };
        StandardnessReport {
            real_dim: m,
            rank_sum,
            intersection_dim,
            conditioning,
            standard: rank_sum == 2 * self.d && intersection_dim == 0,
        }
    }

    /// `H + iH = ℂ^d` and `H ∩ iH = {0}`.
    pub fn is_standard(&self) -> bool {
        self.standardness().standard
    }

    pub fn tomita(&self) -> Result<TomitaData> {
        TomitaData::new(self)
    }

    /// A random element `Σ cⱼ bⱼ` with standard normal real coefficients.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Complex64> {
        let coeffs = DVector::from_fn(self.real_dim(), |_, _| rng.sample::<f64, _>(StandardNormal));
        to_complex((&self.basis * coeffs).as_slice())
    }

    pub fn to_spec(&self) -> SubspaceSpec {
        SubspaceSpec {
            d: self.d,
            generators: self.basis_vectors().iter().map(|v| v.iter().map(|c| [c.re, c.im]).collect()).collect(),
        }
    }

    pub fn from_spec(spec: &SubspaceSpec) -> Result<Self> {
        let gens: Vec<Vec<Complex64>> = spec
            .generators
            .iter()
            .map(|g| g.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        Self::from_generators(spec.d, &gens)
    }
}

fn orthonormal_range(columns: &DMatrix<f64>) -> DMatrix<f64> {
    let n = columns.nrows();
    if columns.ncols() == 0 {
        return DMatrix::zeros(n, 0);
    }
    let svd = columns.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors were requested");
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| max > 0.0 && svd.singular_values[i] > RANK_TOL * max)
        .collect();
    DMatrix::from_fn(n, keep.len(), |r, c| u[(r, keep[c])])
}

#[cfg(test)]
mod tests {
    use super::super::subspace_distance;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_subspace(rng: &mut ChaCha8Rng, d: usize, m: usize) -> RealSubspace {
        let gens: Vec<Vec<Complex64>> = (0..m)
            .map(|_| (0..d).map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect())
            .collect();
        RealSubspace::from_generators(d, &gens).unwrap()
    }

    #[test]
    fn realification_round_trip_and_imaginary_part() {
        let h = vec![c(1.0, -2.0), c(0.5, 3.0)];
        let k = vec![c(-0.7, 0.2), c(2.0, 1.0)];
        assert_eq!(to_complex(to_real(&h).as_slice()), h);
        let ip: Complex64 = h.iter().zip(&k).map(|(a, b)| a.conj() * b).sum();
        let ih = times_i_matrix(2) * to_real(&h);
        assert!((ih.dot(&to_real(&k)) - ip.im).abs() < 1e-15);
        assert!((to_real(&h).dot(&to_real(&k)) - ip.re).abs() < 1e-15);
    }

    #[test]
    fn complement_examples() {
        let real_line = RealSubspace::from_generators(1, &[vec![c(1.0, 0.0)]]).unwrap();
        let comp = real_line.symplectic_complement();
        assert_eq!(comp.real_dim(), 1);
        assert!(subspace_distance(&comp, &real_line) < 1e-15);
        let whole = RealSubspace::full(1);
        assert_eq!(whole.symplectic_complement().real_dim(), 0);
        assert_eq!(RealSubspace::zero(2).symplectic_complement().real_dim(), 4);
    }

    #[test]
    fn double_complement_and_dimension_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for m in 0..=6 {
            let h = random_subspace(&mut rng, 3, m);
            let hp = h.symplectic_complement();
            assert_eq!(h.real_dim() + hp.real_dim(), 6);
            let hpp = hp.symplectic_complement();
            assert!(subspace_distance(&h, &hpp) <= 1e-10);
            // rank oracle: Im⟨h,k⟩ vanishes on H × H′
            for hv in h.basis_vectors() {
                for kv in hp.basis_vectors() {
                    let ip: Complex64 = hv.iter().zip(&kv).map(|(a, b)| a.conj() * b).sum();
                    assert!(ip.im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn standardness_examples() {
        let real_line = RealSubspace::from_generators(1, &[vec![c(1.0, 0.0)]]).unwrap();
        assert!(real_line.is_standard());
        let r = RealSubspace::full(1).standardness();
        assert!(!r.standard);
        assert_eq!((r.rank_sum, r.intersection_dim), (2, 2));
        let h = RealSubspace::from_generators(2, &[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        let r = h.standardness();
        assert!(r.standard);
        assert_eq!((r.rank_sum, r.intersection_dim), (4, 0));
        // too small: H + iH is not dense
        let h = RealSubspace::from_generators(2, &[vec![c(1.0, 0.0), c(0.0, 1.0)]]).unwrap();
        let r = h.standardness();
        assert!(!r.standard);
        assert_eq!((r.rank_sum, r.intersection_dim), (2, 0));
        // the right size but containing a complex line
        let h = RealSubspace::from_generators(2, &[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]).unwrap();
        let r = h.standardness();
        assert!(!r.standard);
        assert_eq!(r.intersection_dim, 2);
        assert!(!RealSubspace::zero(1).is_standard());
    }

    #[test]
    fn rank_is_stable_below_threshold() {
        let h = RealSubspace::from_generators(
            2,
            &[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 1e-13), c(0.0, 0.0)]],
        )
        .unwrap();
        assert_eq!(h.real_dim(), 1);
        assert!(RealSubspace::from_generators(2, &[vec![c(1.0, 0.0)]]).is_err());
    }

    #[test]
    fn subspace_spec_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = random_subspace(&mut rng, 2, 2);
        let json = serde_json::to_string(&h.to_spec()).unwrap();
        let back: SubspaceSpec = serde_json::from_str(&json).unwrap();
        let h2 = RealSubspace::from_spec(&back).unwrap();
        assert!(subspace_distance(&h, &h2) < 1e-12);
        let spec: SubspaceSpec = serde_json::from_str(r#"{"d":1,"generators":[[[1.0,0.0]]]}"#).unwrap();
        assert!(RealSubspace::from_spec(&spec).unwrap().is_standard());
    }
}
