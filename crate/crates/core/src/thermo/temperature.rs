use std::f64::consts::PI;

use super::check_weight;
use crate::error::Result;

/// Inverse maximal temperature `β_n` together with the root it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxTemperature {
    pub weight: u32,
    pub beta: f64,
    /// Root `x = e^{-2πβ_n}` of `xⁿ + x − 1` in `(0, 1)`.
    pub x_root: f64,
    /// `|x_rootⁿ + x_root − 1|` as evaluated in floating point.
    pub residual: f64,
}

/// Solves `xⁿ + x = 1` on `(0, 1)` and returns `β_n = −ln(x)/(2π)`.
///
/// The left side is strictly increasing with values `−1` and `1` at the ends, so bisection
/// is run until the bracket collapses to adjacent floats.
pub fn beta_max(n: u32) -> Result<MaxTemperature> {
    check_weight(n)?;
    let f = |x: f64| x.powi(n as i32) + x - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v < 0.0 {
            lo = mid;
        } else if v > 0.0 {
            hi = mid;
        } else {
            lo = mid;
            hi = mid;
            break;
        }
    }
    let x = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    Ok(MaxTemperature { weight: n, beta: -x.ln() / (2.0 * PI), x_root: x, residual: f(x).abs() })
}

/// Residue `c_n = −1/q′(β_n)` of the partition function at its pole:
/// `Tr e^{−βL^(n)} · (β − β_n) → c_n` as `β ↓ β_n`.
pub fn pole_coefficient(n: u32) -> Result<f64> {
    let root = beta_max(n)?;
    let x = root.x_root;
    let nf = n as f64;
    // q = xⁿ/(1−x), dq/dβ = −2πx·dq/dx
    let xn = x.powi(n as i32);
    Ok((1.0 - x).powi(2) / (2.0 * PI * xn * (nf * (1.0 - x) + x)))
}

/// Report line on the split criterion: the trace-class condition never holds for every β.
pub fn split_annotation(n: u32) -> Result<String> {
    let root = beta_max(n)?;
    Ok(format!("trace-class for all β>0: NO (β_{n} = {:.12}) — split not implied", root.beta))
}
