//! Semicoherent structure functions and their multilinear extensions.
//!
//! A [`SystemStructure`] wraps a validated truth table together with
//! everything repeatedly needed downstream: Mobius coefficients, the dual
//! function and its coefficients, minimal path and cut sets, and a list of
//! irrelevant components. All of it is O(n 2^n) to build, so it is computed
//! eagerly once and the structure is immutable afterwards.

use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::numeric::{bernoulli_state_table, monomial_table, NeumaierSum};
use crate::setfun::{BoolSetFunction, MobiusTransform, SemicoherenceReport, SetFunction, Subset};

/// Algebraic form used to evaluate the multilinear extension. All forms agree
/// pointwise on the unit cube; they differ in the arithmetic that gets there,
/// which is exactly what cross-checking needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MleForm {
    /// Sum of state probabilities over working states.
    Primal,
    /// One minus the dual's primal form on complemented arguments.
    Dual,
    /// Mobius coefficients times monomials in x.
    PrimalMobius,
    /// Dual Mobius coefficients times co-monomials (1 - prod(1 - x)).
    DualMobius,
    /// Minimal paths, expanded exactly in the idempotent subset algebra.
    DisjunctiveNormal,
    /// Minimal cuts, expanded exactly in the idempotent subset algebra.
    ConjunctiveNormal,
    /// Recursive pivotal decomposition on the lowest-index component.
    Pivotal,
}

impl MleForm {
    pub const ALL: [MleForm; 7] = [
        MleForm::Primal,
        MleForm::Dual,
        MleForm::PrimalMobius,
        MleForm::DualMobius,
        MleForm::DisjunctiveNormal,
        MleForm::ConjunctiveNormal,
        MleForm::Pivotal,
    ];
}

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum StructureError {
    /// The truth table is not monotone nonconstant; the report says where.
    NotSemicoherent(SemicoherenceReport),
    /// An argument vector had the wrong length.
    DimensionMismatch { expected: usize, got: usize },
    /// A multilinear-extension argument left [0, 1] (or was NaN).
    DomainError { index: usize, value: f64 },
    /// A path or cut set referenced components outside the ground set.
    SubsetOutOfRange { set: Subset, n: usize },
    /// Ground set exceeds [`crate::setfun::MAX_COMPONENTS`].
    TooManyComponents { n: usize },
    /// `from_path_sets` / `from_cut_sets` with an empty list.
    EmptySets,
    /// k-out-of-n needs 1 <= k <= n.
    InvalidK { n: usize, k: usize },
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::NotSemicoherent(report) => {
                if let Some((a, b)) = &report.first_violation {
                    write!(f, "not monotone: v{a:?} = 1 but v{b:?} = 0")
                } else if !report.dead_at_empty {
                    write!(f, "not semicoherent: system works with no working components")
                } else {
                    write!(f, "not semicoherent: system fails with all components working")
                }
            }
            StructureError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} components, got {got}")
            }
            StructureError::DomainError { index, value } => {
                write!(f, "argument {value} at component {index} is outside [0, 1]")
            }
            StructureError::SubsetOutOfRange { set, n } => {
                write!(f, "subset {set:?} does not fit a ground set of {n} components")
            }
            StructureError::TooManyComponents { n } => {
                write!(
                    f,
                    "{n} components exceed the supported maximum of {}",
                    crate::setfun::MAX_COMPONENTS
                )
            }
            StructureError::EmptySets => write!(f, "at least one path or cut set is required"),
            StructureError::InvalidK { n, k } => {
                write!(f, "k-out-of-n requires 1 <= k <= n, got k = {k}, n = {n}")
            }
        }
    }
}

impl core::error::Error for StructureError {}

/// Minimal path and cut sets, each sorted by (cardinality, mask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCutReport {
    pub n: usize,
    pub minimal_paths: Vec<Subset>,
    pub minimal_cuts: Vec<Subset>,
}

/// A validated semicoherent structure function with precomputed companions.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemStructure {
    v: BoolSetFunction,
    dual_v: BoolSetFunction,
    mobius_v: MobiusTransform,
    mobius_dual_v: MobiusTransform,
    minimal_paths: Vec<Subset>,
    minimal_cuts: Vec<Subset>,
    irrelevant: Vec<usize>,
}

impl SystemStructure {
    pub fn new(v: BoolSetFunction) -> Result<Self, StructureError> {
        let report = v.validate_semicoherent();
        if !report.is_semicoherent() {
            return Err(StructureError::NotSemicoherent(report));
        }

        let n = v.n();
        let table = v.values();
        let full = table.len() - 1;

        // Minimal path: works, and dropping any single member breaks it.
        let mut minimal_paths = Vec::new();
        for m in 0..table.len() {
            if table[m] && Subset::from_mask(m as u32).members().all(|i| !table[m ^ (1 << i)]) {
                minimal_paths.push(Subset::from_mask(m as u32));
            }
        }
        // Minimal cut: removing it kills the system, and sparing any single
        // member revives it.
        let mut minimal_cuts = Vec::new();
        for c in 0..table.len() {
            let rest = full & !c;
            if !table[rest]
                && Subset::from_mask(c as u32).members().all(|i| table[rest | (1 << i)])
            {
                minimal_cuts.push(Subset::from_mask(c as u32));
            }
        }
        minimal_paths.sort_by_key(|s| (s.card(), s.mask()));
        minimal_cuts.sort_by_key(|s| (s.card(), s.mask()));

        let irrelevant = (0..n)
            .filter(|&i| {
                let bit = 1usize << i;
                (0..table.len()).all(|m| m & bit != 0 || table[m] == table[m | bit])
            })
            .collect();

        let dual_v = v.dual();
        let mobius_v = v.mobius();
        let mobius_dual_v = dual_v.mobius();
        Ok(SystemStructure {
            v,
            dual_v,
            mobius_v,
            mobius_dual_v,
            minimal_paths,
            minimal_cuts,
            irrelevant,
        })
    }

    /// Structure that works iff some given path set is fully working.
    pub fn from_path_sets(n: usize, sets: &[Subset]) -> Result<Self, StructureError> {
        if sets.is_empty() {
            return Err(StructureError::EmptySets);
        }
        if n > crate::setfun::MAX_COMPONENTS {
            return Err(StructureError::TooManyComponents { n });
        }
        let mut table = vec![false; 1usize << n];
        for &s in sets {
            if !s.is_subset_of(Subset::full(n)) {
                return Err(StructureError::SubsetOutOfRange { set: s, n });
            }
            table[s.mask() as usize] = true;
        }
        // Upward closure: supersets of a working set work.
        for b in 0..n {
            let bit = 1usize << b;
            for m in 0..table.len() {
                if m & bit != 0 && table[m ^ bit] {
                    table[m] = true;
                }
            }
        }
        SystemStructure::new(BoolSetFunction::new(n, table).expect("validated size"))
    }

    /// Structure that fails iff some given cut set is fully failed. Built as
    /// the dual of the path construction on the same sets.
    pub fn from_cut_sets(n: usize, sets: &[Subset]) -> Result<Self, StructureError> {
        let primal_of_cuts = SystemStructure::from_path_sets(n, sets)?;
        Ok(primal_of_cuts.dual_structure())
    }

    /// Works iff at least k of the n components work.
    pub fn k_of_n(n: usize, k: usize) -> Result<Self, StructureError> {
        if k == 0 || k > n {
            return Err(StructureError::InvalidK { n, k });
        }
        let v = BoolSetFunction::from_fn(n, |s| s.card() >= k)
            .map_err(|_| StructureError::TooManyComponents { n })?;
        SystemStructure::new(v)
    }

    pub fn series(n: usize) -> Result<Self, StructureError> {
        SystemStructure::k_of_n(n, n)
    }

    pub fn parallel(n: usize) -> Result<Self, StructureError> {
        SystemStructure::k_of_n(n, 1)
    }

    /// The five-component bridge: components 0 and 1 in the upper rail, 3 and
    /// 4 in the lower, component 2 across the middle.
    pub fn bridge() -> Self {
        let paths = [
            Subset::from_members([0, 3]),
            Subset::from_members([1, 4]),
            Subset::from_members([0, 2, 4]),
            Subset::from_members([1, 2, 3]),
        ];
        SystemStructure::from_path_sets(5, &paths).expect("bridge is semicoherent")
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    pub fn truth_table(&self) -> &BoolSetFunction {
        &self.v
    }

    pub fn dual_truth_table(&self) -> &BoolSetFunction {
        &self.dual_v
    }

    pub fn mobius(&self) -> &MobiusTransform {
        &self.mobius_v
    }

    pub fn dual_mobius(&self) -> &MobiusTransform {
        &self.mobius_dual_v
    }

    pub fn minimal_paths(&self) -> &[Subset] {
        &self.minimal_paths
    }

    pub fn minimal_cuts(&self) -> &[Subset] {
        &self.minimal_cuts
    }

    /// Components whose state never changes the system state. Semicoherence
    /// does not rule them out, so they are surfaced as a diagnostic.
    pub fn irrelevant_components(&self) -> &[usize] {
        &self.irrelevant
    }

    pub fn path_cut_report(&self) -> PathCutReport {
        PathCutReport {
            n: self.n(),
            minimal_paths: self.minimal_paths.clone(),
            minimal_cuts: self.minimal_cuts.clone(),
        }
    }

    /// The dual system: minimal paths become minimal cuts and vice versa.
    pub fn dual_structure(&self) -> SystemStructure {
        SystemStructure::new(self.dual_v.to_owned()).expect("dual of semicoherent is semicoherent")
    }

    pub fn eval_mask(&self, state: Subset) -> bool {
        self.v.value(state)
    }

    pub fn eval(&self, state: &[bool]) -> Result<bool, StructureError> {
        if state.len() != self.n() {
            return Err(StructureError::DimensionMismatch { expected: self.n(), got: state.len() });
        }
        let mut mask = 0u32;
        for (i, &up) in state.iter().enumerate() {
            if up {
                mask |= 1 << i;
            }
        }
        Ok(self.v.value(Subset::from_mask(mask)))
    }

    /// Multilinear extension at `x` in [0, 1]^n: the system survival
    /// probability when component i works independently with probability
    /// `x[i]`. Every [`MleForm`] returns the same value up to rounding.
    pub fn mle(&self, x: &[f64], form: MleForm) -> Result<f64, StructureError> {
        if x.len() != self.n() {
            return Err(StructureError::DimensionMismatch { expected: self.n(), got: x.len() });
        }
        for (i, &xi) in x.iter().enumerate() {
            if !(0.0..=1.0).contains(&xi) {
                return Err(StructureError::DomainError { index: i, value: xi });
            }
        }
        Ok(match form {
            MleForm::Primal => self.mle_primal(x),
            MleForm::Dual => self.mle_dual(x),
            MleForm::PrimalMobius => self.mle_primal_mobius(x),
            MleForm::DualMobius => self.mle_dual_mobius(x),
            MleForm::DisjunctiveNormal => self.mle_disjunctive(x),
            MleForm::ConjunctiveNormal => self.mle_conjunctive(x),
            MleForm::Pivotal => self.mle_pivotal(x),
        })
    }

    fn mle_primal(&self, x: &[f64]) -> f64 {
        let weights = bernoulli_state_table(x);
        let mut acc = NeumaierSum::new();
        for (m, &works) in self.v.values().iter().enumerate() {
            if works {
                acc.add(weights[m]);
            }
        }
        acc.total()
    }

    fn mle_dual(&self, x: &[f64]) -> f64 {
        // 1 - sum_A v*(A) prod_{i in A}(1 - x_i) prod_{i not in A} x_i; the
        // product over A's members of failure probabilities is the state
        // weight of A's complement.
        let weights = bernoulli_state_table(x);
        let full = weights.len() - 1;
        let mut acc = NeumaierSum::new();
        for (m, &dual_works) in self.dual_v.values().iter().enumerate() {
            if dual_works {
                acc.add(weights[full & !m]);
            }
        }
        1.0 - acc.total()
    }

    fn mle_primal_mobius(&self, x: &[f64]) -> f64 {
        let mono = monomial_table(x);
        let mut acc = NeumaierSum::new();
        for (m, &c) in self.mobius_v.values().iter().enumerate() {
            if c != 0 {
                acc.add(c as f64 * mono[m]);
            }
        }
        acc.total()
    }

    fn mle_dual_mobius(&self, x: &[f64]) -> f64 {
        // sum_A m_{v*}(A) (1 - prod_{i in A}(1 - x_i)); the dual Mobius
        // coefficients sum to 1, so the constant parts telescope.
        let complements: Vec<f64> = x.iter().map(|&xi| 1.0 - xi).collect();
        let mono = monomial_table(&complements);
        let mut acc = NeumaierSum::new();
        for (m, &c) in self.mobius_dual_v.values().iter().enumerate() {
            if c != 0 {
                acc.add(c as f64 * (1.0 - mono[m]));
            }
        }
        acc.total()
    }

    fn mle_disjunctive(&self, x: &[f64]) -> f64 {
        1.0 - one_minus_monomials_product(self.v.subset_count(), &self.minimal_paths, x)
    }

    fn mle_conjunctive(&self, x: &[f64]) -> f64 {
        // Each cut factor is 1 - prod_{i in K}(1 - x_i); in the complemented
        // variables y = 1 - x the product of factors is again a product of
        // (1 - y^K), reducible in the subset algebra.
        let complements: Vec<f64> = x.iter().map(|&xi| 1.0 - xi).collect();
        one_minus_monomials_product(self.v.subset_count(), &self.minimal_cuts, &complements)
    }

    fn mle_pivotal(&self, x: &[f64]) -> f64 {
        // phi(x) = (1 - x_k) phi(0_k, x) + x_k phi(1_k, x), pivoting bottom-up
        // so that level k holds the extension with components 0..k-1 fixed.
        let mut level: Vec<f64> =
            self.v.values().iter().map(|&works| if works { 1.0 } else { 0.0 }).collect();
        for k in (0..self.n()).rev() {
            let half = 1usize << k;
            for m in 0..half {
                level[m] = (1.0 - x[k]) * level[m] + x[k] * level[m | half];
            }
            level.truncate(half);
        }
        level[0]
    }
}

/// Expands `prod_j (1 - z^{S_j})` in the idempotent subset algebra (where
/// `z^A z^B = z^{A u B}`) and evaluates the reduced multilinear polynomial at
/// `z`. Reduction before evaluation is what makes normal forms agree exactly
/// with the other extension forms instead of only on 0/1 points.
fn one_minus_monomials_product(table_len: usize, sets: &[Subset], z: &[f64]) -> f64 {
    let mut coeffs = vec![0.0f64; table_len];
    coeffs[0] = 1.0;
    for s in sets {
        let sm = s.mask() as usize;
        // Descending scan: every write lands on an index >= the current one,
        // so each coefficient is still unmodified when read.
        for m in (0..table_len).rev() {
            let c = coeffs[m];
            if c != 0.0 {
                coeffs[m | sm] -= c;
            }
        }
    }
    let mono = monomial_table(z);
    let mut acc = NeumaierSum::new();
    for (m, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            acc.add(c * mono[m]);
        }
    }
    acc.total()
}

/// Mobius coefficients of the k-out-of-n structure in closed form: zero
/// below cardinality k, and `(-1)^(a - k) * C(a - 1, k - 1)` at cardinality
/// a >= k.
pub fn k_of_n_mobius(n: usize, k: usize) -> Result<MobiusTransform, StructureError> {
    if k == 0 || k > n {
        return Err(StructureError::InvalidK { n, k });
    }
    let mut choose = vec![vec![0i64; n + 1]; n + 1];
    for a in 0..=n {
        choose[a][0] = 1;
        for b in 1..=a {
            choose[a][b] = choose[a - 1][b - 1] + choose[a - 1][b];
        }
    }
    SetFunction::from_fn(n, |s| {
        let a = s.card();
        if a < k {
            0
        } else {
            let magnitude = choose[a - 1][k - 1];
            if (a - k) % 2 == 0 {
                magnitude
            } else {
                -magnitude
            }
        }
    })
    .map_err(|_| StructureError::TooManyComponents { n })
}
