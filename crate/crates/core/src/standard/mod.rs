//! Real-linear subspaces of `ℂ^d` and their modular data.
//!
//! Real-linear algebra is done on the realification `ℂ^d ≅ ℝ^{2d}`, `v ↦ (Re v, Im v)`,
//! where `Re⟨h,k⟩` is the Euclidean product and multiplication by `i` is
//! `(x, y) ↦ (−y, x)`. Rank decisions use singular values with relative threshold
//! [`RANK_TOL`]; subspaces are compared through principal angles.

mod angles;
mod duality;
mod subspace;
mod tomita;

pub use angles::{principal_angles, subspace_distance};
pub use duality::twisted_duality_generators;
pub use subspace::{to_complex, to_real, RealSubspace, StandardnessReport, SubspaceSpec, RANK_TOL};
pub use tomita::{conjugation_defect, modular_flow_check, TomitaData};
