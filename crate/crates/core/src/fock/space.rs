use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest total dimension accepted by [`TruncatedFockSpace::new`].
pub const DEFAULT_MAX_DIM: usize = 1 << 20;

/// `⊕_{k=0}^{N} ℋ^{⊗k}` over a `d`-dimensional one-particle space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedFockSpace {
    d: usize,
    n_max: usize,
    // offsets[k] = Σ_{j<k} d^j, with offsets[N+1] = total dimension
    offsets: Vec<usize>,
    powers: Vec<usize>,
}

impl TruncatedFockSpace {
    pub fn new(d: usize, n_max: usize) -> Result<Self> {
        Self::with_limit(d, n_max, DEFAULT_MAX_DIM)
    }

    pub fn with_limit(d: usize, n_max: usize, limit: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("one-particle dimension must be positive".into()));
        }
        let mut powers = Vec::with_capacity(n_max + 1);
        let mut offsets = vec![0usize];
        let mut p: u128 = 1;
        let mut total: u128 = 0;
        for _ in 0..=n_max {
            total += p;
            if total > limit as u128 {
                // report the full dimension when it is representable
                let dim = (0..=n_max as u32)
                    .try_fold(0u128, |acc, k| (d as u128).checked_pow(k).and_then(|v| acc.checked_add(v)))
                    .unwrap_or(u128::MAX);
                return Err(Error::DimensionTooLarge { dim, limit: limit as u128 });
            }
            powers.push(p as usize);
            offsets.push(total as usize);
            p *= d as u128;
        }
        Ok(Self { d, n_max, offsets, powers })
    }

    /// One-particle truncation `d`.
    pub fn one_particle_dim(&self) -> usize {
        self.d
    }

    /// Maximum particle number `N`.
    pub fn max_particles(&self) -> usize {
        self.n_max
    }

    /// Total dimension `Σ_{k≤N} d^k`.
    pub fn dim(&self) -> usize {
        self.offsets[self.n_max + 1]
    }

    /// Number of basis states with at most `k` particles.
    pub fn band_dim(&self, k: usize) -> usize {
        self.offsets[k.min(self.n_max) + 1]
    }

    pub fn sector_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn sector_of(&self, index: usize) -> usize {
        debug_assert!(index < self.dim());
        self.offsets.partition_point(|&o| o <= index) - 1
    }

    /// Basis index of the tuple `(a₁,…,a_k)`.
    pub fn rank(&self, tuple: &[usize]) -> Option<usize> {
        let k = tuple.len();
        if k > self.n_max {
            return None;
        }
        let mut idx = 0usize;
        for &a in tuple {
            if a >= self.d {
                return None;
            }
            idx = idx * self.d + a;
        }
        Some(self.offsets[k] + idx)
    }

    pub fn unrank(&self, index: usize) -> Vec<usize> {
        let k = self.sector_of(index);
        let mut rem = index - self.offsets[k];
        let mut tuple = vec![0; k];
        for slot in tuple.iter_mut().rev() {
            *slot = rem % self.d;
            rem /= self.d;
        }
        tuple
    }

    pub(crate) fn power(&self, k: usize) -> usize {
        self.powers[k]
    }

    pub(crate) fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    pub(crate) fn check_one_particle(&self, h: &[Complex64]) -> Result<()> {
        if h.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: h.len() });
        }
        Ok(())
    }
}

/// Element of a [`TruncatedFockSpace`], stored in the tuple basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Vec<Complex64>,
}

impl FockVector {
    pub fn zero(space: &TruncatedFockSpace) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); space.dim()] }
    }

    /// The vacuum Ω.
    pub fn vacuum(space: &TruncatedFockSpace) -> Self {
        let mut v = Self::zero(space);
        v.coeffs[0] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn basis(space: &TruncatedFockSpace, tuple: &[usize]) -> Result<Self> {
        let idx = space
            .rank(tuple)
            .ok_or_else(|| Error::Invalid(format!("tuple {tuple:?} is not a basis state")))?;
        let mut v = Self::zero(space);
        v.coeffs[idx] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn from_coeffs(space: &TruncatedFockSpace, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), got: coeffs.len() });
        }
        Ok(Self { coeffs })
    }

    /// Product vector `φ₁ ⊗ … ⊗ φ_k`.
    pub fn tensor(space: &TruncatedFockSpace, factors: &[&[Complex64]]) -> Result<Self> {
        for f in factors {
            space.check_one_particle(f)?;
        }
        let k = factors.len();
        if k > space.max_particles() {
            return Err(Error::Truncation(format!("{k} factors exceed N = {}", space.max_particles())));
        }
        let mut v = Self::zero(space);
        let mut block = vec![Complex64::new(1.0, 0.0)];
        for f in factors {
            block = block.iter().flat_map(|&b| f.iter().map(move |&c| b * c)).collect();
        }
        v.coeffs[space.sector_range(k)].copy_from_slice(&block);
        Ok(v)
    }

    pub(crate) fn from_raw(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dimensions() {
        let s = TruncatedFockSpace::new(2, 3).unwrap();
        assert_eq!(s.dim(), 15);
        assert_eq!(s.band_dim(0), 1);
        assert_eq!(s.band_dim(1), 3);
        assert_eq!(s.band_dim(2), 7);
        assert_eq!(TruncatedFockSpace::new(1, 4).unwrap().dim(), 5);
        assert_eq!(TruncatedFockSpace::new(3, 0).unwrap().dim(), 1);
        assert!(TruncatedFockSpace::new(0, 2).is_err());
    }

    #[test]
    fn dimension_guard() {
        // 2^21 - 1 states
        match TruncatedFockSpace::new(2, 20) {
            Err(Error::DimensionTooLarge { dim, limit }) => {
                assert_eq!(dim, (1u128 << 21) - 1);
                assert_eq!(limit, 1 << 20);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(TruncatedFockSpace::new(2, 19).is_ok());
        assert!(TruncatedFockSpace::with_limit(2, 20, 1 << 21).is_ok());
        assert!(TruncatedFockSpace::new(1000, 40).is_err());
    }

    #[test]
    fn basis_order_is_by_particle_number_then_lexicographic() {
        let s = TruncatedFockSpace::new(2, 2).unwrap();
        let tuples: Vec<Vec<usize>> = (0..s.dim()).map(|i| s.unrank(i)).collect();
        let expected: Vec<Vec<usize>> =
            vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        assert_eq!(tuples, expected);
        assert_eq!(s.rank(&[]), Some(0));
        assert_eq!(s.rank(&[2]), None);
        assert_eq!(s.rank(&[0, 0, 0]), None);
    }

    #[test]
    fn tensor_inner_product_factorizes() {
        let s = TruncatedFockSpace::new(2, 3).unwrap();
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let a = [c(1.0, 2.0), c(0.5, -1.0)];
        let b = [c(-0.3, 0.0), c(2.0, 1.0)];
        let u = FockVector::tensor(&s, &[&a, &b]).unwrap();
        let v = FockVector::tensor(&s, &[&b, &b]).unwrap();
        let ip = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(p, q)| p.conj() * q).sum() };
        let expected = ip(&a, &b) * ip(&b, &b);
        assert!((u.inner(&v) - expected).norm() < 1e-14);
        let w = FockVector::tensor(&s, &[&a]).unwrap();
        assert_eq!(w.inner(&u), c(0.0, 0.0));
        assert_eq!(FockVector::vacuum(&s).norm(), 1.0);
    }

    proptest! {
        #[test]
        fn rank_unrank_are_inverse(d in 1usize..5, n in 0usize..5, seed in 0usize..10_000) {
            let s = TruncatedFockSpace::new(d, n).unwrap();
            let idx = seed % s.dim();
            let t = s.unrank(idx);
            prop_assert!(t.len() <= n);
            prop_assert_eq!(s.rank(&t), Some(idx));
            prop_assert_eq!(s.sector_of(idx), t.len());
        }
    }
}
