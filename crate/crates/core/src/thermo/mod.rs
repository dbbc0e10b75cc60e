//! Thermodynamics of the second-quantized rotation generator `L^(n)`.
//!
//! With `x = e^{-2πβ}`, the one-particle trace is `q = xⁿ/(1−x)` and the full Fock space
//! trace is the geometric series `Σ_k q^k`, finite exactly when `q < 1`, i.e. when `β`
//! exceeds the root `β_n` of `xⁿ + x = 1`. Divergence is reported as data
//! ([`PartitionStatus::Divergent`]), never as an error.

mod multiplicity;
mod partition;
mod temperature;

pub use multiplicity::{multiplicities, MultiplicityTable};
pub use partition::{
    partition_closed, partition_truncated, q_ratio, schatten_norm, PartitionResult, PartitionStatus,
    TruncatedPartition,
};
pub use temperature::{beta_max, pole_coefficient, split_annotation, MaxTemperature};

use crate::error::{Error, Result};

pub(crate) fn check_weight(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("lowest weight must be positive".into()));
    }
    if n > i32::MAX as u32 {
        return Err(Error::Domain(format!("lowest weight {n} is too large")));
    }
    Ok(())
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain(format!("beta must be positive and finite, got {beta}")));
    }
    Ok(())
}
