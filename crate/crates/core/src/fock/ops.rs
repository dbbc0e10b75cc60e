use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::operator::FockOperator;
use super::space::TruncatedFockSpace;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::oneparticle::LowestWeightIrrep;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// One-particle inner product `⟨h, k⟩ = Σ h̄_j k_j`.
pub fn inner(h: &[Complex64], k: &[Complex64]) -> Complex64 {
    h.iter().zip(k).map(|(a, b)| a.conj() * b).sum()
}

pub fn identity(space: &TruncatedFockSpace) -> FockOperator {
    FockOperator::from_parts(space, SparseMatrix::identity(space.dim()), space.max_particles() as i64, (0, 0))
}

/// `P_Ω`, the projection onto the vacuum.
pub fn vacuum_projection(space: &TruncatedFockSpace) -> FockOperator {
    let m = SparseMatrix::from_triplets(space.dim(), vec![(0, 0, ONE)]);
    FockOperator::from_parts(space, m, space.max_particles() as i64, (0, 0))
}

fn creation(space: &TruncatedFockSpace, h: &[Complex64], left: bool) -> Result<FockOperator> {
    space.check_one_particle(h)?;
    let d = space.one_particle_dim();
    let n_max = space.max_particles();
    let mut triplets = Vec::new();
    for k in 0..n_max {
        let target_base = space.offset(k + 1);
        for (local, src) in space.sector_range(k).enumerate() {
            for (j, &hj) in h.iter().enumerate() {
                if hj == ZERO {
                    continue;
                }
                let target = if left {
                    target_base + j * space.power(k) + local
                } else {
                    target_base + local * d + j
                };
                triplets.push((target, src, hj));
            }
        }
    }
    let m = SparseMatrix::from_triplets(space.dim(), triplets);
    Ok(FockOperator::from_parts(space, m, n_max as i64 - 1, (1, 1)))
}

/// Left creation `ℓ(h)`: `φ₁⊗…⊗φ_k ↦ h⊗φ₁⊗…⊗φ_k`; the top sector is sent to 0.
pub fn left_creation(space: &TruncatedFockSpace, h: &[Complex64]) -> Result<FockOperator> {
    creation(space, h, true)
}

/// Right creation `r(h)`: `φ₁⊗…⊗φ_k ↦ φ₁⊗…⊗φ_k⊗h`; the top sector is sent to 0.
pub fn right_creation(space: &TruncatedFockSpace, h: &[Complex64]) -> Result<FockOperator> {
    creation(space, h, false)
}

/// Left field `s(h) = ℓ(h) + ℓ(h)*`.
pub fn field_s(space: &TruncatedFockSpace, h: &[Complex64]) -> Result<FockOperator> {
    let l = left_creation(space, h)?;
    Ok(&l + &l.adjoint())
}

/// Right field `d(h) = r(h) + r(h)*`.
pub fn field_d(space: &TruncatedFockSpace, h: &[Complex64]) -> Result<FockOperator> {
    let r = right_creation(space, h)?;
    Ok(&r + &r.adjoint())
}

/// The involution `Z` reversing the order of tensor factors.
pub fn flip(space: &TruncatedFockSpace) -> FockOperator {
    let triplets = (0..space.dim())
        .map(|i| {
            let mut t = space.unrank(i);
            t.reverse();
            (space.rank(&t).expect("reversed tuple stays in the space"), i, ONE)
        })
        .collect();
    let m = SparseMatrix::from_triplets(space.dim(), triplets);
    FockOperator::from_parts(space, m, space.max_particles() as i64, (0, 0))
}

/// Second quantization `Γ(u) = ⊕_k u^{⊗k}`, the identity on the vacuum.
pub fn second_quantize(space: &TruncatedFockSpace, u: &DMatrix<Complex64>) -> Result<FockOperator> {
    let d = space.one_particle_dim();
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: if u.nrows() != d { u.nrows() } else { u.ncols() } });
    }
    let columns: Vec<Vec<(usize, Complex64)>> = (0..d)
        .map(|j| (0..d).filter(|&i| u[(i, j)] != ZERO).map(|i| (i, u[(i, j)])).collect())
        .collect();
    let mut triplets = vec![(0, 0, ONE)];
    for k in 1..=space.max_particles() {
        let base = space.offset(k);
        for src in space.sector_range(k) {
            let mut terms = vec![(0usize, ONE)];
            for a in space.unrank(src) {
                terms = terms
                    .iter()
                    .flat_map(|&(idx, coef)| columns[a].iter().map(move |&(r, v)| (idx * d + r, coef * v)))
                    .collect();
            }
            triplets.extend(terms.into_iter().map(|(idx, v)| (base + idx, src, v)));
        }
    }
    let m = SparseMatrix::from_triplets(space.dim(), triplets);
    Ok(FockOperator::from_parts(space, m, space.max_particles() as i64, (0, 0)))
}

/// `e^{-βL^(n)} = Γ(e^{-β l^(n)})` on the truncated space.
pub fn conformal_hamiltonian_gibbs(
    space: &TruncatedFockSpace,
    irrep: &LowestWeightIrrep,
    beta: f64,
) -> Result<FockOperator> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    if irrep.dim() != space.one_particle_dim() {
        return Err(Error::DimensionMismatch { expected: space.one_particle_dim(), got: irrep.dim() });
    }
    let u = irrep.gibbs_factor(beta).map(|v| Complex64::new(v, 0.0));
    second_quantize(space, &u)
}

fn band_for_commutator(space: &TruncatedFockSpace) -> Result<usize> {
    let n = space.max_particles();
    if n < 2 {
        return Err(Error::Truncation(format!("field commutators need N >= 2, got N = {n}")));
    }
    Ok(n - 2)
}

/// Operator norm of `[s(h), d(k)]` on particle numbers `≤ N−2`.
pub fn field_commutator_band_norm(space: &TruncatedFockSpace, h: &[Complex64], k: &[Complex64]) -> Result<f64> {
    let band = band_for_commutator(space)?;
    let c = field_s(space, h)?.commutator(&field_d(space, k)?);
    Ok(c.band_norm(space, band))
}

/// Operator norm of `[s(h), d(k)] − 2i·Im⟨h,k⟩·P_Ω` on particle numbers `≤ N−2`.
pub fn commutator_defect(space: &TruncatedFockSpace, h: &[Complex64], k: &[Complex64]) -> Result<f64> {
    let band = band_for_commutator(space)?;
    let c = field_s(space, h)?.commutator(&field_d(space, k)?);
    let expected = Complex64::new(0.0, 2.0 * inner(h, k).im);
    let defect = c.add_scaled(&vacuum_projection(space), -expected);
    Ok(defect.band_norm(space, band))
}

/// Vacuum moment `⟨s(h)^p Ω, Ω⟩`.
///
/// Evaluated by matrix powers on the cyclic subspace `span{ĥ^{⊗k} : k ≤ N}`, where
/// `s(h)` is `‖h‖` times the 0/1 Jacobi matrix.
pub fn vacuum_moment(space: &TruncatedFockSpace, h: &[Complex64], p: usize) -> Result<Complex64> {
    space.check_one_particle(h)?;
    let n = space.max_particles();
    if n < p.div_ceil(2) {
        return Err(Error::Truncation(format!("moment of order {p} needs N >= {}, got N = {n}", p.div_ceil(2))));
    }
    let norm = inner(h, h).re.sqrt();
    let jacobi = DMatrix::from_fn(n + 1, n + 1, |i, j| if i.abs_diff(j) == 1 { norm } else { 0.0 });
    let mut v = DVector::zeros(n + 1);
    v[0] = 1.0;
    for _ in 0..p {
        v = &jacobi * v;
    }
    Ok(Complex64::new(v[0], 0.0))
}
