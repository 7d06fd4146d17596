//! Shared numeric helpers: compensated summation and subset-indexed
//! probability tables.

use alloc::vec;
use alloc::vec::Vec;
// Resolves float methods under no_std; redundant (hence allowed) with std.
#[allow(unused_imports)]
use num_traits::Float;

/// Neumaier's variant of Kahan summation. The 2^n-term sums in this crate
/// mix signs (Mobius coefficients alternate), so plain accumulation can lose
/// digits; the compensated total is good to within a few ulps regardless of
/// term order.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Probability of each component state under independent Bernoulli marginals:
/// `table[m] = prod_{i in m} p[i] * prod_{i not in m} (1 - p[i])`.
pub(crate) fn bernoulli_state_table(p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let mut table = vec![0.0; 1 << n];
    table[0] = 1.0;
    let mut size = 1usize;
    for &pi in p {
        for m in (0..size).rev() {
            let v = table[m];
            table[m | size] = v * pi;
            table[m] = v * (1.0 - pi);
        }
        size <<= 1;
    }
    table
}

/// Monomial table `table[m] = prod_{i in m} x[i]` for all subsets at once.
pub(crate) fn monomial_table(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut table = vec![0.0; 1 << n];
    table[0] = 1.0;
    for m in 1..table.len() {
        let low = m & m.wrapping_neg();
        table[m] = table[m ^ low] * x[low.trailing_zeros() as usize];
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut s = NeumaierSum::new();
        s.add(1.0);
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.total(), 2.0);
    }

    #[test]
    fn bernoulli_table_sums_to_one() {
        let p = [0.3, 0.7, 0.25];
        let table = bernoulli_state_table(&p);
        let total: f64 = table.iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!((table[0b101] - 0.3 * 0.3 * 0.25).abs() < 1e-15);
    }

    #[test]
    fn monomials_multiply_along_bits() {
        let x = [2.0, 3.0, 5.0];
        let table = monomial_table(&x);
        assert_eq!(table[0], 1.0);
        assert_eq!(table[0b111], 30.0);
        assert_eq!(table[0b110], 15.0);
    }
}
