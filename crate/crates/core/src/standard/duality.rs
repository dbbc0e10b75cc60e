use num_complex::Complex64;
use rand::Rng;

use super::RealSubspace;
use crate::error::{Error, Result};
use crate::fock::{field_commutator_band_norm, TruncatedFockSpace};

/// Largest band norm of `[s(h), d(k)]` over random pairs `(h, k) ∈ H × H′`.
///
/// Samples are normalized to unit length, so the result is a relative defect. Pairs from
/// `H × H′` have `Im⟨h,k⟩ = 0`, and the commutator vanishes below the cutoff.
pub fn twisted_duality_generators<R: Rng + ?Sized>(
    space: &TruncatedFockSpace,
    h: &RealSubspace,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let report = h.standardness();
    if !report.standard {
        return Err(Error::NotStandard { rank_sum: report.rank_sum, intersection: report.intersection_dim });
    }
    if h.ambient_dim() != space.one_particle_dim() {
        return Err(Error::DimensionMismatch { expected: space.one_particle_dim(), got: h.ambient_dim() });
    }
    let complement = h.symplectic_complement();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = normalized(h.sample(rng));
        let b = normalized(complement.sample(rng));
        worst = worst.max(field_commutator_band_norm(space, &a, &b)?);
    }
    Ok(worst)
}

fn normalized(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::inner;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_line_duality() {
        let space = TruncatedFockSpace::new(1, 3).unwrap();
        let h = RealSubspace::from_generators(1, &[vec![c(1.0, 0.0)]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(twisted_duality_generators(&space, &h, 5, &mut rng).unwrap() <= 1e-12);
        assert!(field_commutator_band_norm(&space, &[c(1.0, 0.0)], &[c(1.0, 0.0)]).unwrap() <= 1e-12);
    }

    #[test]
    fn random_standard_pairs_commute_and_controls_do_not() {
        let space = TruncatedFockSpace::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let h = RealSubspace::from_generators(2, &[vec![c(1.0, 0.3), c(-0.2, 0.0)], vec![c(0.4, 0.0), c(0.9, -1.1)]]).unwrap();
        assert!(h.is_standard());
        assert!(twisted_duality_generators(&space, &h, 50, &mut rng).unwrap() <= 1e-12);
        // k outside H′: the commutator is 2i·Im⟨h,k⟩·P_Ω on the band
        for _ in 0..10 {
            let a = h.sample(&mut rng);
            let b = h.sample(&mut rng);
            let k: Vec<Complex64> = b.iter().map(|z| z * Complex64::i()).collect();
            let im = inner(&a, &k).im;
            let norm = field_commutator_band_norm(&space, &a, &k).unwrap();
            assert!((norm - 2.0 * im.abs()).abs() <= 1e-10);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let space = TruncatedFockSpace::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(twisted_duality_generators(&space, &RealSubspace::full(2), 1, &mut rng).is_err());
        let h = RealSubspace::from_generators(1, &[vec![c(1.0, 0.0)]]).unwrap();
        assert!(twisted_duality_generators(&space, &h, 1, &mut rng).is_err());
    }
}
