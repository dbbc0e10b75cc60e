use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::space::{FockVector, TruncatedFockSpace};
use super::sparse::SparseMatrix;

/// Linear map on a truncated Fock space.
///
/// Besides the matrix, an operator carries the range `[shift_lo, shift_hi]` of particle
/// number changes it produces and its exactness band: the largest particle number `b` such
/// that on every source sector `≤ b` the stored action equals the untruncated one.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    d: usize,
    n_max: usize,
    matrix: SparseMatrix,
    band: i64,
    shift: (i64, i64),
}

/// JSON debug form `{"d":…, "N":…, "entries":[[row, col, re, im], …]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDump {
    pub d: usize,
    #[serde(rename = "N")]
    pub n_max: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl FockOperator {
    pub(crate) fn from_parts(space: &TruncatedFockSpace, matrix: SparseMatrix, band: i64, shift: (i64, i64)) -> Self {
        debug_assert_eq!(matrix.dim(), space.dim());
        Self { d: space.one_particle_dim(), n_max: space.max_particles(), matrix, band, shift }
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Largest source particle number on which the action is exact, if any.
    pub fn exact_band(&self) -> Option<usize> {
        (self.band >= 0).then_some(self.band as usize)
    }

    /// Minimal and maximal change of particle number.
    pub fn particle_shift(&self) -> (i64, i64) {
        self.shift
    }

    /// Stored entries whose source tuple lies outside the exactness band.
    pub fn flagged_entries<'a>(&'a self, space: &'a TruncatedFockSpace) -> impl Iterator<Item = (usize, usize, Complex64)> + 'a {
        let band = self.band;
        self.matrix.triplets().filter(move |&(_, c, _)| space.sector_of(c) as i64 > band)
    }

    pub fn adjoint(&self) -> Self {
        // a target sector k collects sources from [k - hi, k - lo]
        let band = (self.band + self.shift.0).min(self.n_max as i64);
        Self {
            d: self.d,
            n_max: self.n_max,
            matrix: self.matrix.adjoint(),
            band,
            shift: (-self.shift.1, -self.shift.0),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { matrix: self.matrix.scale(s), ..self.clone() }
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        Self {
            d: self.d,
            n_max: self.n_max,
            matrix: self.matrix.matmul(&rhs.matrix),
            band: rhs.band.min(self.band - rhs.shift.1),
            shift: (self.shift.0 + rhs.shift.0, self.shift.1 + rhs.shift.1),
        }
    }

    pub fn add_scaled(&self, rhs: &Self, s: Complex64) -> Self {
        self.check_same(rhs);
        Self {
            d: self.d,
            n_max: self.n_max,
            matrix: self.matrix.add_scaled(&rhs.matrix, s),
            band: self.band.min(rhs.band),
            shift: (self.shift.0.min(rhs.shift.0), self.shift.1.max(rhs.shift.1)),
        }
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).add_scaled(&rhs.compose(self), Complex64::new(-1.0, 0.0))
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector::from_raw(self.matrix.apply(v.coeffs()))
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Dense block on basis states with at most `k` particles.
    pub fn band_block(&self, space: &TruncatedFockSpace, k: usize) -> DMatrix<Complex64> {
        self.matrix.leading_block(space.band_dim(k))
    }

    /// Operator norm (largest singular value) of [`band_block`](Self::band_block).
    pub fn band_norm(&self, space: &TruncatedFockSpace, k: usize) -> f64 {
        spectral_norm(self.band_block(space, k))
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    pub fn to_dump(&self) -> OperatorDump {
        OperatorDump {
            d: self.d,
            n_max: self.n_max,
            entries: self.matrix.triplets().map(|(r, c, v)| (r, c, v.re, v.im)).collect(),
        }
    }

    pub fn to_debug_json(&self) -> String {
        serde_json::to_string(&self.to_dump()).expect("operator dump is always serializable")
    }

    fn check_same(&self, rhs: &Self) {
        assert!(
            self.d == rhs.d && self.n_max == rhs.n_max,
            "operators live on different truncated spaces"
        );
    }
}

pub(crate) fn spectral_norm(m: DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().fold(0.0f64, |a, &b| a.max(b))
}

impl Mul for &FockOperator {
    type Output = FockOperator;

    fn mul(self, rhs: Self) -> FockOperator {
        self.compose(rhs)
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;

    fn add(self, rhs: Self) -> FockOperator {
        self.add_scaled(rhs, Complex64::new(1.0, 0.0))
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;

    fn sub(self, rhs: Self) -> FockOperator {
        self.add_scaled(rhs, Complex64::new(-1.0, 0.0))
    }
}
