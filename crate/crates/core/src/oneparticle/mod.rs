//! One-particle data: truncated lowest-weight modules of the Möbius group and
//! the geometry of the upper semicircle `I₀` under the Cayley identification.

mod irrep;
mod moebius;

pub use irrep::{one_particle_gibbs_trace, LowestWeightIrrep};
pub use moebius::{cayley, dilation, inverse_cayley, reflect, reflect_line, translation, LinePoint, MoebiusElement};
