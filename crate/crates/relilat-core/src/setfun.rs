//! Dense set functions on the subset lattice of {0, .., n-1}.
//!
//! A subset is a `u32` bit mask (bit i = component i), and a set function
//! stores one value per subset in ascending mask order, so lattice operations
//! are bit twiddling and the zeta / Mobius transforms are in-place
//! butterflies in O(n 2^n).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{AddAssign, SubAssign};

/// Largest supported ground set. Dense tables hold 2^n entries, so this
/// bounds memory at 16 Mi entries.
pub const MAX_COMPONENTS: usize = 24;

/// A subset of components, encoded as a bit mask with bit i for component i.
///
/// Component indices are 0-based throughout the library; text IO layers that
/// prefer 1-based labels renumber at the edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set {0, .., n-1}.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_COMPONENTS, "ground set too large");
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Subset {
        assert!(i < MAX_COMPONENTS, "component index out of range");
        Subset(1 << i)
    }

    pub fn from_mask(mask: u32) -> Subset {
        Subset(mask)
    }

    /// Collects 0-based member indices; panics if any index is out of range.
    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Subset {
        let mut mask = 0u32;
        for i in members {
            assert!(i < MAX_COMPONENTS, "component index out of range");
            mask |= 1 << i;
        }
        Subset(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        assert!(i < MAX_COMPONENTS, "component index out of range");
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        assert!(i < MAX_COMPONENTS, "component index out of range");
        Subset(self.0 & !(1 << i))
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(Subset::full(n).0 & !self.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in ascending order.
    pub fn members(self) -> Members {
        Members(self.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the member indices of a [`Subset`].
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[non_exhaustive]
pub enum SetFunctionError {
    /// Ground set exceeds [`MAX_COMPONENTS`].
    TooManyComponents { n: usize },
    /// Value table length is not 2^n.
    LengthMismatch { n: usize, expected: usize, got: usize },
    /// A table expected to be 0/1-valued held something else.
    NotBoolean { at: Subset, value: i64 },
}

impl fmt::Display for SetFunctionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetFunctionError::TooManyComponents { n } => {
                write!(f, "{n} components exceed the supported maximum of {MAX_COMPONENTS}")
            }
            SetFunctionError::LengthMismatch { n, expected, got } => {
                write!(f, "value table for n = {n} must have {expected} entries, got {got}")
            }
            SetFunctionError::NotBoolean { at, value } => {
                write!(f, "value {value} at subset {at:?} is not 0 or 1")
            }
        }
    }
}

impl core::error::Error for SetFunctionError {}

/// A function from subsets of {0, .., n-1} to `T`, stored densely in
/// ascending mask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction<T> {
    n: usize,
    values: Vec<T>,
}

/// Mobius coefficients of a boolean set function are integers; keeping them
/// in `i64` makes the transform and its inverse exact.
pub type MobiusTransform = SetFunction<i64>;

impl<T> SetFunction<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self, SetFunctionError> {
        if n > MAX_COMPONENTS {
            return Err(SetFunctionError::TooManyComponents { n });
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(SetFunctionError::LengthMismatch { n, expected, got: values.len() });
        }
        Ok(SetFunction { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> T) -> Result<Self, SetFunctionError> {
        if n > MAX_COMPONENTS {
            return Err(SetFunctionError::TooManyComponents { n });
        }
        let values = (0..1u32 << n).map(|m| f(Subset(m))).collect();
        Ok(SetFunction { n, values })
    }

    pub fn constant(n: usize, value: T) -> Result<Self, SetFunctionError>
    where
        T: Clone,
    {
        if n > MAX_COMPONENTS {
            return Err(SetFunctionError::TooManyComponents { n });
        }
        Ok(SetFunction { n, values: vec![value; 1 << n] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, s: Subset) -> &T {
        &self.values[s.mask() as usize]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// All subsets in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..1u32 << self.n).map(Subset)
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> SetFunction<U> {
        SetFunction { n: self.n, values: self.values.iter().map(|v| f(v)).collect() }
    }
}

impl<T: Copy + AddAssign + SubAssign> SetFunction<T> {
    /// Zeta transform: subset sums, `(zf)(A) = sum_{B subseteq A} f(B)`.
    /// In-place butterfly, O(n 2^n).
    pub fn zeta(mut self) -> SetFunction<T> {
        let len = self.values.len();
        for b in 0..self.n {
            let bit = 1usize << b;
            for m in 0..len {
                if m & bit != 0 {
                    let lower = self.values[m ^ bit];
                    self.values[m] += lower;
                }
            }
        }
        self
    }

    /// Mobius transform: the inverse of [`SetFunction::zeta`],
    /// `(mf)(A) = sum_{B subseteq A} (-1)^{|A \ B|} f(B)`.
    pub fn mobius(mut self) -> SetFunction<T> {
        let len = self.values.len();
        for b in 0..self.n {
            let bit = 1usize << b;
            for m in 0..len {
                if m & bit != 0 {
                    let lower = self.values[m ^ bit];
                    self.values[m] -= lower;
                }
            }
        }
        self
    }
}

/// The truth table of a boolean set function, e.g. a structure function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolSetFunction {
    n: usize,
    values: Vec<bool>,
}

impl BoolSetFunction {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self, SetFunctionError> {
        if n > MAX_COMPONENTS {
            return Err(SetFunctionError::TooManyComponents { n });
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(SetFunctionError::LengthMismatch { n, expected, got: values.len() });
        }
        Ok(BoolSetFunction { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> bool) -> Result<Self, SetFunctionError> {
        if n > MAX_COMPONENTS {
            return Err(SetFunctionError::TooManyComponents { n });
        }
        let values = (0..1u32 << n).map(|m| f(Subset(m))).collect();
        Ok(BoolSetFunction { n, values })
    }

    /// Inverts a Mobius table back to a truth table. Fails with
    /// [`SetFunctionError::NotBoolean`] if the subset sums leave {0, 1}.
    pub fn from_mobius(m: &MobiusTransform) -> Result<Self, SetFunctionError> {
        let summed = m.clone().zeta();
        let mut values = Vec::with_capacity(summed.subset_count());
        for (mask, &v) in summed.values().iter().enumerate() {
            match v {
                0 => values.push(false),
                1 => values.push(true),
                other => {
                    return Err(SetFunctionError::NotBoolean {
                        at: Subset(mask as u32),
                        value: other,
                    })
                }
            }
        }
        Ok(BoolSetFunction { n: m.n(), values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, s: Subset) -> bool {
        self.values[s.mask() as usize]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..1u32 << self.n).map(Subset)
    }

    pub fn to_i64(&self) -> SetFunction<i64> {
        SetFunction { n: self.n, values: self.values.iter().map(|&b| b as i64).collect() }
    }

    /// Mobius coefficients of the truth table, exact in `i64`.
    pub fn mobius(&self) -> MobiusTransform {
        self.to_i64().mobius()
    }

    /// Dual function `v*(A) = 1 - v({0..n-1} \ A)`: the dual system works
    /// exactly when the original fails on the complementary state.
    pub fn dual(&self) -> BoolSetFunction {
        let full = (self.values.len() - 1) as u32;
        let values = (0..=full).map(|m| !self.values[(full & !m) as usize]).collect();
        BoolSetFunction { n: self.n, values }
    }

    /// Checks the semicoherence requirements: monotone, dead with no working
    /// components, alive with all of them.
    pub fn validate_semicoherent(&self) -> SemicoherenceReport {
        let mut first_violation = None;
        'scan: for m in 0..self.values.len() {
            for i in 0..self.n {
                let bit = 1usize << i;
                if m & bit != 0 && self.values[m ^ bit] && !self.values[m] {
                    first_violation = Some((Subset((m ^ bit) as u32), Subset(m as u32)));
                    break 'scan;
                }
            }
        }
        SemicoherenceReport {
            monotone: first_violation.is_none(),
            first_violation,
            dead_at_empty: !self.values[0],
            alive_at_full: self.values[self.values.len() - 1],
        }
    }
}

/// Outcome of [`BoolSetFunction::validate_semicoherent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemicoherenceReport {
    pub monotone: bool,
    /// First pair (A, A + {i}) in ascending (mask, component) order with
    /// v(A) = 1 but v(A + {i}) = 0.
    pub first_violation: Option<(Subset, Subset)>,
    /// v(empty) = 0.
    pub dead_at_empty: bool,
    /// v(full) = 1.
    pub alive_at_full: bool,
}

impl SemicoherenceReport {
    pub fn is_semicoherent(&self) -> bool {
        self.monotone && self.dead_at_empty && self.alive_at_full
    }

    /// Monotone functions are nonconstant exactly when they span 0 at the
    /// bottom and 1 at the top.
    pub fn nonconstant(&self) -> bool {
        self.dead_at_empty && self.alive_at_full
    }
}
