use std::f64::consts::PI;

use super::multiplicity::multiplicities;
use super::temperature::beta_max;
use super::{check_beta, check_weight};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartitionStatus {
    Finite(f64),
    Divergent,
}

/// `Tr e^{−βL^(n)}` in closed form, with the governing ratio `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionResult {
    pub weight: u32,
    pub beta: f64,
    pub q: f64,
    pub status: PartitionStatus,
}

impl PartitionResult {
    pub fn value(&self) -> Option<f64> {
        match self.status {
            PartitionStatus::Finite(v) => Some(v),
            PartitionStatus::Divergent => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.status, PartitionStatus::Finite(_))
    }
}

/// Partial sum `Σ_{m ≤ m_max} ν_m e^{−2πβm}` and, below the maximal temperature, a bound on
/// its distance to the full trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedPartition {
    pub value: f64,
    pub m_max: usize,
    /// `None` when `β ≤ β_n` (the series diverges and no bound exists).
    pub tail_bound: Option<f64>,
}

/// One-particle ratio `q = e^{−2πβn}/(1 − e^{−2πβ})`.
pub fn q_ratio(n: u32, beta: f64) -> Result<f64> {
    check_weight(n)?;
    check_beta(beta)?;
    let a = 2.0 * PI * beta;
    Ok((-a * n as f64).exp() / -(-a).exp_m1())
}

/// Geometric series `Σ_k q^k = 1/(1 − q)`.
///
/// Finite exactly when `β > β_n`; when `β` is within rounding of `β_n` and the computed `q`
/// is not below 1, the result is reported as divergent.
pub fn partition_closed(n: u32, beta: f64) -> Result<PartitionResult> {
    let q = q_ratio(n, beta)?;
    let threshold = beta_max(n)?.beta;
    let status = if beta > threshold && q < 1.0 {
        PartitionStatus::Finite(1.0 / (1.0 - q))
    } else {
        PartitionStatus::Divergent
    };
    Ok(PartitionResult { weight: n, beta, q, status })
}

/// Schatten `p`-norm `‖e^{−βL^(n)}‖_p = (Tr e^{−pβL^(n)})^{1/p}`.
///
/// The returned `q` is the ratio at `pβ`; the norm is finite exactly when `pβ > β_n`.
pub fn schatten_norm(n: u32, beta: f64, p: f64) -> Result<PartitionResult> {
    check_beta(beta)?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!("p must be positive and finite, got {p}")));
    }
    let inner = partition_closed(n, p * beta)?;
    let status = match inner.status {
        PartitionStatus::Finite(v) => PartitionStatus::Finite(v.powf(1.0 / p)),
        PartitionStatus::Divergent => PartitionStatus::Divergent,
    };
    Ok(PartitionResult { weight: n, beta, q: inner.q, status })
}

/// Sums the multiplicity series up to `m_max`.
///
/// The tail `Σ_{m > M} ν_m xᵐ` (`x = e^{−2πβ}`) is bounded by `(x/y)^{M+1} F(y)` for any
/// `y ∈ [x, x_n)`, where `F(y) = 1/(1 − yⁿ/(1−y))` is the generating function and `x_n` its
/// radius of convergence; `y` is chosen by minimizing this bound. A rounding allowance for
/// both the partial and the closed sum is added.
pub fn partition_truncated(n: u32, beta: f64, m_max: usize) -> Result<TruncatedPartition> {
    check_weight(n)?;
    check_beta(beta)?;
    let table = multiplicities(n, m_max)?;
    let ln_x = -2.0 * PI * beta;
    let value: f64 = (0..=m_max)
        .rev()
        .map(|m| {
            let ln_nu = table.ln_nu(m);
            if ln_nu == f64::NEG_INFINITY {
                0.0
            } else {
                (ln_nu + m as f64 * ln_x).exp()
            }
        })
        .sum();
    let closed = partition_closed(n, beta)?;
    let tail_bound = match closed.status {
        PartitionStatus::Divergent => None,
        PartitionStatus::Finite(_) => {
            let radius = beta_max(n)?.x_root;
            let analytic = tail_bound(n, ln_x, radius.ln(), m_max);
            let rounding = 8.0 * f64::EPSILON * ((m_max + 1) as f64 + 1.0 / (1.0 - closed.q)) * value;
            Some(analytic + rounding)
        }
    };
    Ok(TruncatedPartition { value, m_max, tail_bound })
}

fn ln_generating_function(n: u32, ln_y: f64) -> f64 {
    let y = ln_y.exp();
    let g = y.powi(n as i32) / -(ln_y.exp_m1());
    if g >= 1.0 || !g.is_finite() {
        f64::INFINITY
    } else {
        -(-g).ln_1p()
    }
}

fn tail_bound(n: u32, ln_x: f64, ln_radius: f64, m_max: usize) -> f64 {
    let k = (m_max + 1) as f64;
    // convex in ln y: a linear term plus the log of a power series with positive coefficients
    let objective = |s: f64| k * (ln_x - s) + ln_generating_function(n, s);
    let (mut lo, mut hi) = (ln_x, ln_radius);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let a = hi - inv_phi * (hi - lo);
        let b = lo + inv_phi * (hi - lo);
        if objective(a) <= objective(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let best = objective(lo).min(objective(ln_x));
    best.exp()
}
