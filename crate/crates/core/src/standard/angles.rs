use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;

use super::RealSubspace;

/// Principal angles between two real subspaces, ascending.
///
/// Small angles are taken from sines and large ones from cosines so that both ends of the
/// range keep full precision. Returns `min(dim a, dim b)` angles.
pub fn principal_angles(a: &RealSubspace, b: &RealSubspace) -> Vec<f64> {
    assert_eq!(a.ambient_dim(), b.ambient_dim(), "subspaces live in different spaces");
    let (small, large) = if a.real_dim() <= b.real_dim() { (a, b) } else { (b, a) };
    let p = small.real_dim();
    if p == 0 {
        return Vec::new();
    }
    let q1 = small.basis();
    let q2 = large.basis();
    let mut cosines = singular_values(q2.transpose() * q1);
    let residual = q1 - q2 * (q2.transpose() * q1);
    let mut sines = singular_values(residual);
    cosines.sort_by(|x, y| y.total_cmp(x));
    sines.sort_by(|x, y| x.total_cmp(y));
    cosines.resize(p, 0.0);
    sines.resize(p, 1.0);
    cosines
        .iter()
        .zip(&sines)
        .map(|(&c, &s)| if c * c < 0.5 { c.clamp(0.0, 1.0).acos() } else { s.clamp(0.0, 1.0).asin() })
        .collect()
}

/// Largest principal angle; `π/2` when the dimensions differ.
pub fn subspace_distance(a: &RealSubspace, b: &RealSubspace) -> f64 {
    if a.real_dim() != b.real_dim() {
        return FRAC_PI_2;
    }
    principal_angles(a, b).into_iter().fold(0.0, f64::max)
}

fn singular_values(m: DMatrix<f64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.singular_values().iter().copied().collect()
}
