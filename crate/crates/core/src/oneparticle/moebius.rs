use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

const DET_TOL: f64 = 1e-12;

/// A point of the projective real line ℝ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinePoint {
    Finite(f64),
    Infinity,
}

/// Cayley transform `x ↦ (1 + ix)/(1 - ix)`, `∞ ↦ -1`.
///
/// ℝ₊ goes onto the upper semicircle `I₀`, with `0 ↦ 1` and `∞ ↦ -1` as its endpoints.
pub fn cayley(p: LinePoint) -> Complex64 {
    match p {
        LinePoint::Finite(x) => Complex64::new(1.0, x) / Complex64::new(1.0, -x),
        LinePoint::Infinity => Complex64::new(-1.0, 0.0),
    }
}

/// Inverse Cayley transform `z ↦ i(1 - z)/(1 + z)`; `-1 ↦ ∞`.
pub fn inverse_cayley(z: Complex64) -> LinePoint {
    let den = Complex64::new(1.0, 0.0) + z;
    if den.norm() == 0.0 {
        return LinePoint::Infinity;
    }
    let x = Complex64::i() * (Complex64::new(1.0, 0.0) - z) / den;
    LinePoint::Finite(x.re)
}

/// Reflection `r_{I₀}: z ↦ z̄` of the circle.
pub fn reflect(z: Complex64) -> Complex64 {
    z.conj()
}

/// The reflection seen on the line through the Cayley transform: `x ↦ -x`.
pub fn reflect_line(p: LinePoint) -> LinePoint {
    match p {
        LinePoint::Finite(x) => LinePoint::Finite(-x),
        LinePoint::Infinity => LinePoint::Infinity,
    }
}

/// Element of SL(2,ℝ) acting by `x ↦ (ax + b)/(cx + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MoebiusElement {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let g = Self { a, b, c, d };
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(1.0);
        if (g.det() - 1.0).abs() > DET_TOL * scale * scale {
            return Err(Error::Invalid(format!("determinant {} is not 1", g.det())));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn act_line(&self, p: LinePoint) -> LinePoint {
        match p {
            LinePoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    LinePoint::Infinity
                } else {
                    LinePoint::Finite((self.a * x + self.b) / den)
                }
            }
            LinePoint::Infinity => {
                if self.c == 0.0 {
                    LinePoint::Infinity
                } else {
                    LinePoint::Finite(self.a / self.c)
                }
            }
        }
    }

    /// Action on S¹ obtained by conjugating with the Cayley transform.
    pub fn act_circle(&self, z: Complex64) -> Complex64 {
        let [alpha, beta, gamma, delta] = self.circle_matrix();
        (alpha * z + beta) / (gamma * z + delta)
    }

    /// Entries `[α, β, γ, δ]` of `K g K⁻¹` with `K = [[i, 1], [-i, 1]]`.
    pub fn circle_matrix(&self) -> [Complex64; 4] {
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let k = [i, one, -i, one];
        // K⁻¹ = (1 / 2i) [[1, -1], [i, i]]
        let s = one / (2.0 * i);
        let kinv = [s, -s, i * s, i * s];
        let g = [
            Complex64::new(self.a, 0.0),
            Complex64::new(self.b, 0.0),
            Complex64::new(self.c, 0.0),
            Complex64::new(self.d, 0.0),
        ];
        mul2(&mul2(&k, &g), &kinv)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d]
            .iter()
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Mul for MoebiusElement {
    type Output = MoebiusElement;

    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

fn mul2(x: &[Complex64; 4], y: &[Complex64; 4]) -> [Complex64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// Dilation flow `Λ_{I₀}(t)`: `x ↦ eᵗ x` on the line.
pub fn dilation(t: f64) -> MoebiusElement {
    let h = (0.5 * t).exp();
    MoebiusElement { a: h, b: 0.0, c: 0.0, d: 1.0 / h }
}

/// Translation flow `T_{I₀}(t)`: `x ↦ x + t` on the line.
pub fn translation(t: f64) -> MoebiusElement {
    MoebiusElement { a: 1.0, b: t, c: 0.0, d: 1.0 }
}
