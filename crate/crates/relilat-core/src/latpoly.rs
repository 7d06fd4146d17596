//! Weighted lattice polynomials: lifetime-to-lifetime system maps.
//!
//! A weighted lattice polynomial sends component lifetimes to the system
//! lifetime through min/max expressions with constant bounds in [0, inf]. It
//! is determined by its weight function `w(A)`: the system lifetime when the
//! components in `A` last forever and the rest fail immediately. Plain
//! structure functions are the special case with weights in {0, inf}.
//!
//! Everything here is exact lattice arithmetic: evaluation uses only min,
//! max, and comparisons on f64, none of which round, so the three evaluation
//! forms agree bit for bit and thresholding commutes with evaluation exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::setfun::{BoolSetFunction, SetFunction, Subset, MAX_COMPONENTS};
use crate::structure::SystemStructure;

/// Evaluation form for [`WeightedLatticePolynomial::eval`]. All three return
/// identical values; they exist to cross-check each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WlpForm {
    /// Max over subsets of (weight and the members' minimum lifetime).
    Disjunctive,
    /// Min over subsets of (complement weight or the members' maximum).
    Conjunctive,
    /// Recursive median decomposition on the lowest-index component.
    Median,
}

impl WlpForm {
    pub const ALL: [WlpForm; 3] = [WlpForm::Disjunctive, WlpForm::Conjunctive, WlpForm::Median];
}

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum LatPolyError {
    /// A weight was NaN or negative.
    InvalidWeight { at: Subset, value: f64 },
    /// Weights must be nondecreasing along set inclusion.
    NotMonotone { smaller: Subset, larger: Subset, smaller_value: f64, larger_value: f64 },
    /// An argument vector had the wrong length.
    DimensionMismatch { expected: usize, got: usize },
    /// A term referenced components outside the ground set.
    SubsetOutOfRange { set: Subset, n: usize },
    /// A lifetime argument was NaN or negative.
    InvalidTime { index: usize, value: f64 },
    /// A symmetric profile entry was NaN, negative, or decreasing.
    InvalidProfile { index: usize, value: f64 },
    /// Ground set empty or beyond [`MAX_COMPONENTS`].
    InvalidGroundSet { n: usize },
}

impl fmt::Display for LatPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatPolyError::InvalidWeight { at, value } => {
                write!(f, "weight {value} at subset {at:?} is not in [0, inf]")
            }
            LatPolyError::NotMonotone { smaller, larger, smaller_value, larger_value } => {
                write!(
                    f,
                    "weights are not monotone: w{smaller:?} = {smaller_value} exceeds \
                     w{larger:?} = {larger_value}"
                )
            }
            LatPolyError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} components, got {got}")
            }
            LatPolyError::SubsetOutOfRange { set, n } => {
                write!(f, "subset {set:?} does not fit a ground set of {n} components")
            }
            LatPolyError::InvalidTime { index, value } => {
                write!(f, "lifetime {value} at component {index} is not in [0, inf]")
            }
            LatPolyError::InvalidProfile { index, value } => {
                write!(f, "profile level {value} at cardinality {index} is invalid")
            }
            LatPolyError::InvalidGroundSet { n } => {
                write!(f, "ground set of {n} components is not supported (need 1..={MAX_COMPONENTS})")
            }
        }
    }
}

impl core::error::Error for LatPolyError {}

/// Thresholding a weighted lattice polynomial at time t yields either a
/// proper structure function or one of the two constant systems: always
/// alive when even the empty state outlives t, always dead when even the
/// full state does not.
#[derive(Clone, Debug)]
pub enum ThresholdedSystem {
    Proper(SystemStructure),
    AlwaysAlive,
    AlwaysDead,
}

impl ThresholdedSystem {
    pub fn eval_mask(&self, state: Subset) -> bool {
        match self {
            ThresholdedSystem::Proper(s) => s.eval_mask(state),
            ThresholdedSystem::AlwaysAlive => true,
            ThresholdedSystem::AlwaysDead => false,
        }
    }

    pub fn as_structure(&self) -> Option<&SystemStructure> {
        match self {
            ThresholdedSystem::Proper(s) => Some(s),
            _ => None,
        }
    }
}

/// Sparse minimal representations: only the subsets that actually constrain
/// the polynomial, with their weights. Evaluating either list reproduces the
/// full polynomial exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalWlpRepresentation {
    pub n: usize,
    /// Jump sets A (every proper subset has strictly smaller weight) with
    /// w(A) > 0, sorted by (cardinality, mask). Evaluate as
    /// `max_A min(w(A), min_{i in A} t_i)`, floored at 0.
    pub disjunctive: Vec<(Subset, f64)>,
    /// Drop sets B (every proper superset has strictly larger weight) with
    /// w(B) < inf, sorted by (cardinality, mask). Evaluate as
    /// `min_B max(w(B), max_{i not in B} t_i)`, capped at inf.
    pub conjunctive: Vec<(Subset, f64)>,
}

impl MinimalWlpRepresentation {
    /// Evaluates the disjunctive support list at a lifetime vector.
    pub fn eval_disjunctive(&self, t: &[f64]) -> f64 {
        let mut acc = 0.0f64;
        for &(set, weight) in &self.disjunctive {
            let mut term = weight;
            for i in set.members() {
                term = term.min(t[i]);
            }
            acc = acc.max(term);
        }
        acc
    }

    /// Evaluates the conjunctive support list at a lifetime vector.
    pub fn eval_conjunctive(&self, t: &[f64]) -> f64 {
        let mut acc = f64::INFINITY;
        for &(set, weight) in &self.conjunctive {
            let mut term = weight;
            for i in set.complement(self.n).members() {
                term = term.max(t[i]);
            }
            acc = acc.min(term);
        }
        acc
    }
}

/// A weighted lattice polynomial, stored through its weight function.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedLatticePolynomial {
    w: SetFunction<f64>,
}

impl WeightedLatticePolynomial {
    /// Validates a weight function: values in [0, inf], nondecreasing along
    /// set inclusion. The first violation in (mask, component) order is
    /// reported.
    pub fn from_weights(w: SetFunction<f64>) -> Result<Self, LatPolyError> {
        if w.n() == 0 {
            return Err(LatPolyError::InvalidGroundSet { n: 0 });
        }
        let values = w.values();
        for (m, &value) in values.iter().enumerate() {
            if value.is_nan() || value < 0.0 {
                return Err(LatPolyError::InvalidWeight { at: Subset::from_mask(m as u32), value });
            }
        }
        for m in 0..values.len() {
            for i in Subset::from_mask(m as u32).members() {
                let below = m ^ (1 << i);
                if values[below] > values[m] {
                    return Err(LatPolyError::NotMonotone {
                        smaller: Subset::from_mask(below as u32),
                        larger: Subset::from_mask(m as u32),
                        smaller_value: values[below],
                        larger_value: values[m],
                    });
                }
            }
        }
        Ok(WeightedLatticePolynomial { w })
    }

    /// Lifetime view of a structure function: weight inf on working states,
    /// 0 on failed ones. The system then lives exactly as long as its
    /// structure evaluates to true on the set of still-working components.
    pub fn from_structure(s: &SystemStructure) -> Self {
        let w = SetFunction::from_fn(s.n(), |a| {
            if s.eval_mask(a) {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .expect("structure n is within bounds");
        WeightedLatticePolynomial { w }
    }

    /// Builds the weight function from disjunctive terms: each (set, bound)
    /// pair contributes `bound and min of the set's lifetimes`, and the
    /// weight of A is the best bound among terms inside A (0 if none).
    pub fn from_terms(n: usize, terms: &[(Subset, f64)]) -> Result<Self, LatPolyError> {
        if n == 0 || n > MAX_COMPONENTS {
            return Err(LatPolyError::InvalidGroundSet { n });
        }
        for &(set, value) in terms {
            if !set.is_subset_of(Subset::full(n)) {
                return Err(LatPolyError::SubsetOutOfRange { set, n });
            }
            if value.is_nan() || value < 0.0 {
                return Err(LatPolyError::InvalidWeight { at: set, value });
            }
        }
        let mut values = vec![0.0f64; 1 << n];
        for &(set, value) in terms {
            let m = set.mask() as usize;
            values[m] = values[m].max(value);
        }
        for b in 0..n {
            let bit = 1usize << b;
            for m in 0..values.len() {
                if m & bit != 0 {
                    values[m] = values[m].max(values[m ^ bit]);
                }
            }
        }
        WeightedLatticePolynomial::from_weights(SetFunction::new(n, values).expect("sized table"))
    }

    /// Series-with-floors family: slot i stays covered until its component
    /// dies or its guaranteed bound expires, whichever is later, and every
    /// slot is needed: `p(t) = min_i max(t_i, c_i)`. The weight of a state
    /// is the smallest bound among its failed components.
    pub fn weighted_min(bounds: &[f64]) -> Result<Self, LatPolyError> {
        let n = bounds.len();
        if n == 0 || n > MAX_COMPONENTS {
            return Err(LatPolyError::InvalidGroundSet { n });
        }
        for (i, &b) in bounds.iter().enumerate() {
            if b.is_nan() || b < 0.0 {
                return Err(LatPolyError::InvalidTime { index: i, value: b });
            }
        }
        let values = (0..1usize << n)
            .map(|m| {
                Subset::from_mask(m as u32)
                    .complement(n)
                    .members()
                    .fold(f64::INFINITY, |acc, i| acc.min(bounds[i]))
            })
            .collect();
        WeightedLatticePolynomial::from_weights(SetFunction::new(n, values).expect("sized table"))
    }

    /// Parallel-with-caps family: component i sustains the system until its
    /// lifetime or its cap expires, whichever is earlier, and the best one
    /// wins: `p(t) = max_i min(t_i, c_i)`. The weight of a state is the
    /// largest cap among its working components.
    pub fn weighted_max(bounds: &[f64]) -> Result<Self, LatPolyError> {
        let n = bounds.len();
        if n == 0 || n > MAX_COMPONENTS {
            return Err(LatPolyError::InvalidGroundSet { n });
        }
        for (i, &b) in bounds.iter().enumerate() {
            if b.is_nan() || b < 0.0 {
                return Err(LatPolyError::InvalidTime { index: i, value: b });
            }
        }
        let values = (0..1usize << n)
            .map(|m| {
                Subset::from_mask(m as u32)
                    .members()
                    .fold(0.0f64, |acc, i| acc.max(bounds[i]))
            })
            .collect();
        WeightedLatticePolynomial::from_weights(SetFunction::new(n, values).expect("sized table"))
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    pub fn weights(&self) -> &SetFunction<f64> {
        &self.w
    }

    pub fn weight_empty(&self) -> f64 {
        self.w.values()[0]
    }

    pub fn weight_full(&self) -> f64 {
        self.w.values()[self.w.subset_count() - 1]
    }

    /// True when the weights take only the values 0 and inf, i.e. the
    /// polynomial is a plain structure function in lifetime clothing.
    pub fn is_binary(&self) -> bool {
        self.w.values().iter().all(|&v| v == 0.0 || v.is_infinite())
    }

    /// Distinct finite positive weight values in ascending order: the times
    /// where the thresholded structure changes.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut bps: Vec<f64> = self
            .w
            .values()
            .iter()
            .copied()
            .filter(|v| v.is_finite() && *v > 0.0)
            .collect();
        bps.sort_by(|a, b| a.partial_cmp(b).expect("no NaN weights"));
        bps.dedup();
        bps
    }

    /// System lifetime for the given component lifetimes. Exact min/max
    /// arithmetic; every form returns the identical f64.
    pub fn eval(&self, t: &[f64], form: WlpForm) -> Result<f64, LatPolyError> {
        let n = self.n();
        if t.len() != n {
            return Err(LatPolyError::DimensionMismatch { expected: n, got: t.len() });
        }
        for (i, &ti) in t.iter().enumerate() {
            if ti.is_nan() || ti < 0.0 {
                return Err(LatPolyError::InvalidTime { index: i, value: ti });
            }
        }
        Ok(match form {
            WlpForm::Disjunctive => self.eval_disjunctive(t),
            WlpForm::Conjunctive => self.eval_conjunctive(t),
            WlpForm::Median => self.eval_median(t),
        })
    }

    fn eval_disjunctive(&self, t: &[f64]) -> f64 {
        // max_A ( w(A) and min_{i in A} t_i ); the empty set contributes
        // w(empty) because its min over no members is +inf.
        let mins = min_table(self.n(), t);
        let mut acc = 0.0f64;
        for (m, &w) in self.w.values().iter().enumerate() {
            acc = acc.max(w.min(mins[m]));
        }
        acc
    }

    fn eval_conjunctive(&self, t: &[f64]) -> f64 {
        // min_A ( w(complement A) or max_{i in A} t_i ); the empty set
        // contributes w(full) because its max over no members is 0.
        let maxs = max_table(self.n(), t);
        let full = self.w.subset_count() - 1;
        let mut acc = f64::INFINITY;
        let values = self.w.values();
        for (m, &mx) in maxs.iter().enumerate() {
            acc = acc.min(values[full & !m].max(mx));
        }
        acc
    }

    fn eval_median(&self, t: &[f64]) -> f64 {
        // p(t) = median( p with t_k -> 0, t_k, p with t_k -> inf ), applied
        // bottom-up so level k holds values with components 0..k-1 fixed.
        let mut level: Vec<f64> = self.w.values().to_vec();
        for k in (0..self.n()).rev() {
            let half = 1usize << k;
            for m in 0..half {
                level[m] = median3(level[m], t[k], level[m | half]);
            }
            level.truncate(half);
        }
        level[0]
    }

    /// Indicator system at threshold t: works in state A iff the lifetime of
    /// the polynomial with A's components immortal exceeds t. Thresholding
    /// commutes with evaluation: `p(T) > t` iff the thresholded structure
    /// accepts the state `{i : T_i > t}`.
    pub fn threshold(&self, t: f64) -> ThresholdedSystem {
        debug_assert!(!t.is_nan());
        if self.weight_empty() > t {
            return ThresholdedSystem::AlwaysAlive;
        }
        if !(self.weight_full() > t) {
            return ThresholdedSystem::AlwaysDead;
        }
        let v = BoolSetFunction::from_fn(self.n(), |s| *self.w.value(s) > t).expect("same n");
        ThresholdedSystem::Proper(
            SystemStructure::new(v).expect("thresholded monotone weights are semicoherent"),
        )
    }

    /// Sparse disjunctive and conjunctive supports; dropping any entry from
    /// either list changes the polynomial.
    pub fn minimal_representation(&self) -> MinimalWlpRepresentation {
        let n = self.n();
        let values = self.w.values();
        let mut disjunctive = Vec::new();
        let mut conjunctive = Vec::new();
        for m in 0..values.len() {
            let s = Subset::from_mask(m as u32);
            let w = values[m];
            if w > 0.0 && s.members().all(|i| values[m ^ (1 << i)] < w) {
                disjunctive.push((s, w));
            }
            if w < f64::INFINITY && s.complement(n).members().all(|i| values[m | (1 << i)] > w) {
                conjunctive.push((s, w));
            }
        }
        disjunctive.sort_by_key(|(s, _)| (s.card(), s.mask()));
        conjunctive.sort_by_key(|(s, _)| (s.card(), s.mask()));
        MinimalWlpRepresentation { n, disjunctive, conjunctive }
    }
}

/// Symmetric weight profile: the weight depends only on how many components
/// work, through a nondecreasing level list of length n + 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricProfile {
    levels: Vec<f64>,
}

impl SymmetricProfile {
    pub fn new(levels: Vec<f64>) -> Result<Self, LatPolyError> {
        let n = levels.len().saturating_sub(1);
        if levels.len() < 2 || n > MAX_COMPONENTS {
            return Err(LatPolyError::InvalidGroundSet { n });
        }
        for (k, &v) in levels.iter().enumerate() {
            if v.is_nan() || v < 0.0 {
                return Err(LatPolyError::InvalidProfile { index: k, value: v });
            }
            if k > 0 && v < levels[k - 1] {
                return Err(LatPolyError::InvalidProfile { index: k, value: v });
            }
        }
        Ok(SymmetricProfile { levels })
    }

    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// The dense polynomial with w(A) = levels[|A|].
    pub fn to_wlp(&self) -> WeightedLatticePolynomial {
        let w = SetFunction::from_fn(self.n(), |s| self.levels[s.card()]).expect("valid n");
        WeightedLatticePolynomial::from_weights(w).expect("nondecreasing levels are monotone")
    }

    /// Closed-form evaluation through order statistics: with the lifetimes
    /// sorted, the system lifetime is the best of `levels[k] and the
    /// (n-k+1)-th smallest lifetime` over k, no 2^n table needed.
    pub fn eval(&self, t: &[f64]) -> Result<f64, LatPolyError> {
        let n = self.n();
        if t.len() != n {
            return Err(LatPolyError::DimensionMismatch { expected: n, got: t.len() });
        }
        for (i, &ti) in t.iter().enumerate() {
            if ti.is_nan() || ti < 0.0 {
                return Err(LatPolyError::InvalidTime { index: i, value: ti });
            }
        }
        let mut sorted = t.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("validated non-NaN"));
        let mut acc = self.levels[0];
        for k in 1..=n {
            acc = acc.max(self.levels[k].min(sorted[n - k]));
        }
        Ok(acc)
    }

    /// Smallest number of working components keeping the system alive past
    /// t; `n + 1` when even full strength is not enough, 0 when no component
    /// is needed.
    pub fn critical_count(&self, t: f64) -> usize {
        debug_assert!(!t.is_nan());
        (0..self.levels.len()).find(|&k| self.levels[k] > t).unwrap_or(self.levels.len())
    }
}

/// `table[m] = min_{i in m} t[i]`, with +inf on the empty set.
fn min_table(n: usize, t: &[f64]) -> Vec<f64> {
    let mut table = vec![f64::INFINITY; 1 << n];
    for m in 1..table.len() {
        let low = m & m.wrapping_neg();
        table[m] = table[m ^ low].min(t[low.trailing_zeros() as usize]);
    }
    table
}

/// `table[m] = max_{i in m} t[i]`, with 0 on the empty set.
fn max_table(n: usize, t: &[f64]) -> Vec<f64> {
    let mut table = vec![0.0f64; 1 << n];
    for m in 1..table.len() {
        let low = m & m.wrapping_neg();
        table[m] = table[m ^ low].max(t[low.trailing_zeros() as usize]);
    }
    table
}

/// Lattice median of three: (a and b) or (b and c) or (c and a).
fn median3(a: f64, b: f64, c: f64) -> f64 {
    a.min(b).max(b.min(c)).max(c.min(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::MleForm;
    use proptest::prelude::*;
    use rand_core::{RngCore, SeedableRng};

    /// The bounded bridge: infinite bounds on the two rails, bound l = 1 on
    /// the short diagonal paths, bound u = 2 on the long ones.
    fn weighted_bridge() -> WeightedLatticePolynomial {
        WeightedLatticePolynomial::from_terms(
            5,
            &[
                (Subset::from_members([0, 3]), f64::INFINITY),
                (Subset::from_members([1, 4]), f64::INFINITY),
                (Subset::from_members([0, 4]), 1.0),
                (Subset::from_members([0, 2, 4]), 2.0),
                (Subset::from_members([1, 3]), 1.0),
                (Subset::from_members([1, 2, 3]), 2.0),
            ],
        )
        .unwrap()
    }

    fn random_monotone_weights(seed: u64, n: usize) -> WeightedLatticePolynomial {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let mut values = vec![0.0f64; 1 << n];
        for m in 0..values.len() {
            let palette = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, f64::INFINITY];
            let own = palette[(rng.next_u32() as usize) % palette.len()];
            let floor = Subset::from_mask(m as u32)
                .members()
                .fold(0.0f64, |acc, i| acc.max(values[m ^ (1 << i)]));
            values[m] = floor.max(own);
        }
        WeightedLatticePolynomial::from_weights(SetFunction::new(n, values).unwrap()).unwrap()
    }

    fn random_times(rng: &mut rand_chacha::ChaCha12Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 4.0).collect()
    }

    #[test]
    fn weighted_bridge_example_value() {
        let p = weighted_bridge();
        let t = [3.0, 0.0, 3.0, 0.0, 3.0];
        for form in WlpForm::ALL {
            assert_eq!(p.eval(&t, form).unwrap(), 2.0, "{form:?}");
        }
    }

    #[test]
    fn weighted_bridge_threshold_paths() {
        let p = weighted_bridge();
        // Between the two bound levels only the rails and the u-bounded
        // diagonals survive thresholding.
        let at = p.threshold(1.5);
        let s = at.as_structure().expect("proper at 1.5");
        assert_eq!(
            s.minimal_paths(),
            &[
                Subset::from_members([0, 3]),
                Subset::from_members([1, 4]),
                Subset::from_members([1, 2, 3]),
                Subset::from_members([0, 2, 4]),
            ]
        );
        // Above every finite bound only the rails are left.
        let high = p.threshold(10.0);
        assert_eq!(
            high.as_structure().unwrap().minimal_paths(),
            &[Subset::from_members([0, 3]), Subset::from_members([1, 4])]
        );
    }

    #[test]
    fn threshold_degenerate_cases() {
        let mut values = vec![5.0f64; 8];
        values[7] = 9.0;
        let p =
            WeightedLatticePolynomial::from_weights(SetFunction::new(3, values).unwrap()).unwrap();
        assert!(matches!(p.threshold(2.0), ThresholdedSystem::AlwaysAlive));
        assert!(matches!(p.threshold(9.0), ThresholdedSystem::AlwaysDead));
        assert!(matches!(p.threshold(5.0), ThresholdedSystem::Proper(_)));
        assert!(matches!(p.threshold(-1.0), ThresholdedSystem::AlwaysAlive));
    }

    #[test]
    fn plain_structure_round_trip() {
        let bridge = SystemStructure::bridge();
        let p = WeightedLatticePolynomial::from_structure(&bridge);
        assert!(p.is_binary());
        assert!(p.breakpoints().is_empty());
        // Thresholding at any time recovers the original structure.
        for t in [0.0, 1.0, 100.0] {
            let thresholded = p.threshold(t);
            assert_eq!(
                thresholded.as_structure().unwrap().truth_table(),
                bridge.truth_table()
            );
        }
    }

    #[test]
    fn monotonicity_violation_reports_first_pair() {
        let values = vec![0.0, 2.0, 0.0, 1.0];
        let err = WeightedLatticePolynomial::from_weights(SetFunction::new(2, values).unwrap())
            .unwrap_err();
        assert_eq!(
            err,
            LatPolyError::NotMonotone {
                smaller: Subset::from_members([0]),
                larger: Subset::from_members([0, 1]),
                smaller_value: 2.0,
                larger_value: 1.0,
            }
        );
    }

    #[test]
    fn weighted_min_and_max_families() {
        let bounds = [1.0, 3.0, 2.0];
        let pmin = WeightedLatticePolynomial::weighted_min(&bounds).unwrap();
        let pmax = WeightedLatticePolynomial::weighted_max(&bounds).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for _ in 0..50 {
            let t = random_times(&mut rng, 3);
            let expect_min =
                t.iter().zip(bounds).map(|(&ti, b)| ti.max(b)).fold(f64::INFINITY, f64::min);
            let expect_max = t.iter().zip(bounds).map(|(&ti, b)| ti.min(b)).fold(0.0, f64::max);
            assert_eq!(pmin.eval(&t, WlpForm::Disjunctive).unwrap(), expect_min);
            assert_eq!(pmax.eval(&t, WlpForm::Disjunctive).unwrap(), expect_max);
        }
        assert_eq!(pmin.weight_full(), f64::INFINITY);
        assert_eq!(pmax.weight_empty(), 0.0);
    }

    #[test]
    fn symmetric_profile_matches_dense_polynomial() {
        let profile = SymmetricProfile::new(vec![0.0, 0.5, 2.0, f64::INFINITY]).unwrap();
        let dense = profile.to_wlp();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(6);
        for _ in 0..100 {
            let t = random_times(&mut rng, 3);
            let fast = profile.eval(&t).unwrap();
            for form in WlpForm::ALL {
                assert_eq!(dense.eval(&t, form).unwrap(), fast);
            }
        }
        assert_eq!(profile.critical_count(0.25), 1);
        assert_eq!(profile.critical_count(1.0), 2);
        assert_eq!(profile.critical_count(1e9), 3);
        let finite = SymmetricProfile::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(finite.critical_count(2.0), 3); // beyond the top level
        let alive = SymmetricProfile::new(vec![1.0, 1.0, 2.0]).unwrap();
        assert_eq!(alive.critical_count(0.5), 0);
    }

    #[test]
    fn minimal_representation_of_the_weighted_bridge() {
        let p = weighted_bridge();
        let rep = p.minimal_representation();
        let expected: Vec<(Subset, f64)> = vec![
            (Subset::from_members([0, 3]), f64::INFINITY),
            (Subset::from_members([1, 3]), 1.0),
            (Subset::from_members([0, 4]), 1.0),
            (Subset::from_members([1, 4]), f64::INFINITY),
            (Subset::from_members([1, 2, 3]), 2.0),
            (Subset::from_members([0, 2, 4]), 2.0),
        ];
        assert_eq!(rep.disjunctive, expected);
    }

    #[test]
    fn eval_validation() {
        let p = weighted_bridge();
        assert!(matches!(
            p.eval(&[1.0; 4], WlpForm::Median),
            Err(LatPolyError::DimensionMismatch { expected: 5, got: 4 })
        ));
        assert!(matches!(
            p.eval(&[1.0, 1.0, -0.5, 1.0, 1.0], WlpForm::Median),
            Err(LatPolyError::InvalidTime { index: 2, .. })
        ));
        // +inf lifetimes are legal (immortal components).
        let v = p.eval(&[f64::INFINITY; 5], WlpForm::Disjunctive).unwrap();
        assert_eq!(v, f64::INFINITY);
    }

    proptest! {
        #[test]
        fn forms_agree_exactly(seed in 0u64..300, tseed in 0u64..50) {
            let n = 1 + (seed % 5) as usize;
            let p = random_monotone_weights(seed, n);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(tseed);
            for _ in 0..5 {
                let t = random_times(&mut rng, n);
                let d = p.eval(&t, WlpForm::Disjunctive).unwrap();
                let c = p.eval(&t, WlpForm::Conjunctive).unwrap();
                let m = p.eval(&t, WlpForm::Median).unwrap();
                prop_assert_eq!(d, c);
                prop_assert_eq!(d, m);
            }
        }

        #[test]
        fn minimal_representations_reproduce_the_polynomial(seed in 0u64..200) {
            let n = 1 + (seed % 5) as usize;
            let p = random_monotone_weights(seed, n);
            let rep = p.minimal_representation();
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ 0xabcd);
            for _ in 0..8 {
                let t = random_times(&mut rng, n);
                let full = p.eval(&t, WlpForm::Disjunctive).unwrap();
                prop_assert_eq!(rep.eval_disjunctive(&t), full);
                prop_assert_eq!(rep.eval_conjunctive(&t), full);
            }
        }

        #[test]
        fn thresholding_commutes_with_evaluation(seed in 0u64..200, threshold_q in 0u32..16) {
            let n = 1 + (seed % 4) as usize;
            let p = random_monotone_weights(seed, n);
            let threshold = threshold_q as f64 * 0.25;
            let system = p.threshold(threshold);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ 0x5555);
            for _ in 0..10 {
                let t = random_times(&mut rng, n);
                let alive = p.eval(&t, WlpForm::Median).unwrap() > threshold;
                let state = Subset::from_members(
                    (0..n).filter(|&i| t[i] > threshold),
                );
                prop_assert_eq!(system.eval_mask(state), alive);
            }
        }

        #[test]
        fn thresholded_structures_have_threshold_paths(seed in 0u64..100) {
            // Minimal paths of the thresholded system are exactly the
            // minimal sets whose weight clears the threshold.
            let p = random_monotone_weights(seed, 4);
            for bp in p.breakpoints() {
                let t = bp - 0.125;
                if let ThresholdedSystem::Proper(s) = p.threshold(t) {
                    for path in s.minimal_paths() {
                        prop_assert!(*p.weights().value(*path) > t);
                        for i in path.members() {
                            prop_assert!(*p.weights().value(path.without(i)) <= t);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn thresholded_extension_interpolates_weighted_reliability() {
        // Consistency hook with the structure module: thresholding then
        // taking the multilinear extension is how survival curves are built.
        let p = weighted_bridge();
        let s = match p.threshold(1.5) {
            ThresholdedSystem::Proper(s) => s,
            _ => unreachable!(),
        };
        let x = [0.9, 0.8, 0.7, 0.6, 0.5];
        let primal = s.mle(&x, MleForm::Primal).unwrap();
        let pivotal = s.mle(&x, MleForm::Pivotal).unwrap();
        assert!((primal - pivotal).abs() < 1e-15);
    }
}
