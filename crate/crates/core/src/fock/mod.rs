//! Full Fock space with Boltzmann statistics, truncated at a maximum particle number.
//!
//! Basis tuples are ordered first by particle number, then lexicographically, so the
//! states with at most `k` particles form a prefix `0..space.band_dim(k)` of the basis.
//! Every [`FockOperator`] records the particle numbers on which it agrees with its
//! untruncated counterpart.

mod operator;
mod ops;
mod space;
mod sparse;

pub use operator::{FockOperator, OperatorDump};
pub use ops::{
    commutator_defect, conformal_hamiltonian_gibbs, field_commutator_band_norm, field_d, field_s, flip, identity,
    inner, left_creation, right_creation, second_quantize, vacuum_moment, vacuum_projection,
};
pub use space::{FockVector, TruncatedFockSpace, DEFAULT_MAX_DIM};
pub use sparse::SparseMatrix;
