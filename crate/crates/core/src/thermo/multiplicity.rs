use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::check_weight;
use crate::error::Result;

/// Multiplicities `ν_m` of the eigenvalue `2πm` of `L^(n)`, `m = 0 … m_max`.
///
/// `ν_m` counts ordered tuples of integers `≥ n` summing to `m` (compositions with parts
/// at least `n`), so it grows like `2^m` for `n = 1` and is kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    weight: u32,
    nu: Vec<BigUint>,
}

/// Fills the table with `ν_0 = 1`, `ν_m = Σ_{a=n}^{m} ν_{m−a}`.
pub fn multiplicities(n: u32, m_max: usize) -> Result<MultiplicityTable> {
    check_weight(n)?;
    let n = n as usize;
    let mut nu: Vec<BigUint> = Vec::with_capacity(m_max + 1);
    nu.push(BigUint::from(1u32));
    // running[m] = Σ_{j ≤ m} ν_j keeps the recurrence linear
    let mut running: Vec<BigUint> = vec![BigUint::from(1u32)];
    for m in 1..=m_max {
        let value = if m >= n { running[m - n].clone() } else { BigUint::zero() };
        running.push(&running[m - 1] + &value);
        nu.push(value);
    }
    Ok(MultiplicityTable { weight: n as u32, nu })
}

impl MultiplicityTable {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn m_max(&self) -> usize {
        self.nu.len() - 1
    }

    pub fn nu(&self) -> &[BigUint] {
        &self.nu
    }

    pub fn get(&self, m: usize) -> Option<&BigUint> {
        self.nu.get(m)
    }

    /// `ln ν_m`, or `-∞` when `ν_m = 0`; accurate even when `ν_m` overflows `f64`.
    pub fn ln_nu(&self, m: usize) -> f64 {
        let v = &self.nu[m];
        if v.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = v.bits();
        if bits <= 1000 {
            v.to_f64().expect("BigUint always converts").ln()
        } else {
            let shift = bits - 64;
            (v >> shift).to_f64().expect("BigUint always converts").ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumeration oracle: lists every ordered tuple of parts `≥ n` with sum `m`.
    fn enumerate(n: usize, m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in n..=m {
            for mut rest in enumerate(n, m - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn weight_one_gives_powers_of_two() {
        let table = multiplicities(1, 40).unwrap();
        assert_eq!(table.get(0), Some(&BigUint::from(1u32)));
        for m in 1..=40usize {
            assert_eq!(table.nu()[m], BigUint::from(1u64) << (m - 1));
        }
    }

    #[test]
    fn recurrence_matches_enumeration() {
        for n in 1..=4usize {
            let table = multiplicities(n as u32, 12).unwrap();
            for m in 0..=12 {
                let tuples = enumerate(n, m);
                assert!(tuples.iter().all(|t| t.iter().sum::<usize>() == m && t.iter().all(|&a| a >= n)));
                assert_eq!(table.nu()[m], BigUint::from(tuples.len()), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn examples_and_invariants() {
        let t2 = multiplicities(2, 10).unwrap();
        assert_eq!(t2.nu()[4], BigUint::from(2u32));
        assert_eq!(enumerate(2, 4), vec![vec![2, 2], vec![4]]);
        for n in 1..=6u32 {
            let t = multiplicities(n, 20).unwrap();
            assert_eq!(t.nu()[0], BigUint::from(1u32));
            assert_eq!(t.nu()[n as usize], BigUint::from(1u32));
            for m in 1..n as usize {
                assert!(t.nu()[m].is_zero());
            }
        }
        assert_eq!(multiplicities(3, 0).unwrap().m_max(), 0);
        assert!(multiplicities(0, 3).is_err());
    }

    #[test]
    fn big_values_stay_exact() {
        let t = multiplicities(1, 1500).unwrap();
        assert_eq!(t.nu()[1500], BigUint::from(1u32) << 1499usize);
        let expected = 1499.0 * std::f64::consts::LN_2;
        assert!((t.ln_nu(1500) - expected).abs() < 1e-12 * expected);
        assert!((t.ln_nu(11) - 1024f64.ln()).abs() < 1e-15);
        assert_eq!(multiplicities(3, 2).unwrap().ln_nu(1), f64::NEG_INFINITY);
    }
}
