//! Component lifetime models.
//!
//! Marginals are continuous distributions on [0, inf) given by their survival
//! function; joint models add the dependence structure. Three joint models
//! are supported: independent components, a finite discrete joint
//! distribution given by atoms, and the comonotone coupling where a single
//! latent uniform drives every component through its quantile.
//!
//! The bridge to the combinatorial side is [`JointLifetimeModel::state_vector_dist`]:
//! the distribution of the indicator vector `X_i(t) = [T_i > t]` over all 2^n
//! component states, from which every state-based reliability route follows.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
// Resolves float methods under no_std; redundant (hence allowed) with std.
#[allow(unused_imports)]
use num_traits::Float;
use rand_core::{RngCore, SeedableRng};

use crate::numeric::{bernoulli_state_table, monomial_table, NeumaierSum};
use crate::setfun::{SetFunction, Subset, MAX_COMPONENTS};

/// Negative Mobius mass below this threshold is treated as rounding noise
/// and clamped to zero; anything larger is reported as a numerical error.
pub const STATE_MASS_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum LifetimeError {
    /// A distribution parameter was NaN, infinite, or non-positive.
    InvalidParameter { name: &'static str, value: f64 },
    /// A piecewise survival curve broke one of its rules.
    InvalidKnot { index: usize, reason: &'static str },
    /// A discrete atom broke one of its rules.
    InvalidAtom { index: usize, reason: &'static str },
    /// Atom probabilities do not sum to 1 within 1e-12.
    NotNormalized { total: f64 },
    /// Ground set empty or beyond [`MAX_COMPONENTS`].
    InvalidGroundSet { n: usize },
    /// An argument vector had the wrong length.
    DimensionMismatch { expected: usize, got: usize },
    /// An evaluation argument was out of its domain (NaN time, |z| > 1).
    DomainError { index: usize, value: f64 },
    /// Mobius inversion produced negative mass beyond tolerance.
    NumericalError { at: Subset, mass: f64 },
}

impl fmt::Display for LifetimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LifetimeError::InvalidParameter { name, value } => {
                write!(f, "parameter {name} = {value} must be positive and finite")
            }
            LifetimeError::InvalidKnot { index, reason } => {
                write!(f, "knot {index}: {reason}")
            }
            LifetimeError::InvalidAtom { index, reason } => {
                write!(f, "atom {index}: {reason}")
            }
            LifetimeError::NotNormalized { total } => {
                write!(f, "atom probabilities sum to {total}, not 1")
            }
            LifetimeError::InvalidGroundSet { n } => {
                write!(f, "{n} components outside the supported range 1..={MAX_COMPONENTS}")
            }
            LifetimeError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} components, got {got}")
            }
            LifetimeError::DomainError { index, value } => {
                write!(f, "argument {value} at position {index} is out of domain")
            }
            LifetimeError::NumericalError { at, mass } => {
                write!(f, "state {at:?} received negative probability mass {mass}")
            }
        }
    }
}

impl core::error::Error for LifetimeError {}

/// Parameters of a marginal lifetime distribution.
#[derive(Clone, Debug, PartialEq)]
pub enum MarginalKind {
    Exponential { rate: f64 },
    /// Survival `exp(-(t / scale)^shape)`.
    Weibull { shape: f64, scale: f64 },
    /// Piecewise-linear survival through (time, survival) knots; starts at
    /// (0, 1), ends at survival 0.
    PiecewiseEmpirical { knots: Vec<(f64, f64)> },
}

/// A validated marginal lifetime distribution on [0, inf).
#[derive(Clone, Debug, PartialEq)]
pub struct MarginalLifetime {
    kind: MarginalKind,
}

impl MarginalLifetime {
    pub fn exponential(rate: f64) -> Result<Self, LifetimeError> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(LifetimeError::InvalidParameter { name: "rate", value: rate });
        }
        Ok(MarginalLifetime { kind: MarginalKind::Exponential { rate } })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self, LifetimeError> {
        if !shape.is_finite() || shape <= 0.0 {
            return Err(LifetimeError::InvalidParameter { name: "shape", value: shape });
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(LifetimeError::InvalidParameter { name: "scale", value: scale });
        }
        Ok(MarginalLifetime { kind: MarginalKind::Weibull { shape, scale } })
    }

    /// Knots are (time, survival) pairs with strictly increasing times,
    /// nonincreasing survival, first knot (0, 1) and final survival 0, so
    /// the distribution is proper (no mass escapes to infinity).
    pub fn piecewise_empirical(knots: Vec<(f64, f64)>) -> Result<Self, LifetimeError> {
        if knots.len() < 2 {
            return Err(LifetimeError::InvalidKnot { index: 0, reason: "need at least two knots" });
        }
        if knots[0] != (0.0, 1.0) {
            return Err(LifetimeError::InvalidKnot {
                index: 0,
                reason: "first knot must be (0, 1)",
            });
        }
        for (i, &(t, s)) in knots.iter().enumerate() {
            if !t.is_finite() || t < 0.0 {
                return Err(LifetimeError::InvalidKnot { index: i, reason: "time must be finite" });
            }
            if !(0.0..=1.0).contains(&s) {
                return Err(LifetimeError::InvalidKnot {
                    index: i,
                    reason: "survival must lie in [0, 1]",
                });
            }
            if i > 0 {
                if t <= knots[i - 1].0 {
                    return Err(LifetimeError::InvalidKnot {
                        index: i,
                        reason: "times must be strictly increasing",
                    });
                }
                if s > knots[i - 1].1 {
                    return Err(LifetimeError::InvalidKnot {
                        index: i,
                        reason: "survival must be nonincreasing",
                    });
                }
            }
        }
        if knots.last().unwrap().1 != 0.0 {
            return Err(LifetimeError::InvalidKnot {
                index: knots.len() - 1,
                reason: "final survival must be 0 (defective distributions are not supported)",
            });
        }
        Ok(MarginalLifetime { kind: MarginalKind::PiecewiseEmpirical { knots } })
    }

    pub fn kind(&self) -> &MarginalKind {
        &self.kind
    }

    /// P(T > t); 1 for negative t, 0 at t = inf.
    pub fn survival(&self, t: f64) -> f64 {
        debug_assert!(!t.is_nan());
        if t < 0.0 {
            return 1.0;
        }
        match &self.kind {
            MarginalKind::Exponential { rate } => (-rate * t).exp(),
            MarginalKind::Weibull { shape, scale } => {
                if t == 0.0 {
                    1.0 // avoids 0^shape edge cases for shape < 1
                } else {
                    (-(t / scale).powf(*shape)).exp()
                }
            }
            MarginalKind::PiecewiseEmpirical { knots } => {
                let last = knots.last().unwrap();
                if t >= last.0 {
                    return 0.0;
                }
                let j = knots.partition_point(|&(kt, _)| kt <= t);
                // knots[j-1].0 <= t < knots[j].0
                let (t0, s0) = knots[j - 1];
                let (t1, s1) = knots[j];
                s0 + (s1 - s0) * ((t - t0) / (t1 - t0))
            }
        }
    }

    pub fn cdf(&self, t: f64) -> f64 {
        1.0 - self.survival(t)
    }

    /// Inverse survival: the smallest t with S(t) <= u, for u in (0, 1].
    /// Feeding a uniform draw through this is how sampling works; the
    /// comonotone model feeds every component the same draw.
    pub fn quantile_survival(&self, u: f64) -> f64 {
        debug_assert!(u > 0.0 && u <= 1.0);
        match &self.kind {
            MarginalKind::Exponential { rate } => -u.ln() / rate,
            MarginalKind::Weibull { shape, scale } => scale * (-u.ln()).powf(1.0 / shape),
            MarginalKind::PiecewiseEmpirical { knots } => {
                if u >= 1.0 {
                    return 0.0;
                }
                let j = knots.partition_point(|&(_, s)| s > u);
                // survival still above u before j, at or below from j on
                let (t0, s0) = knots[j - 1];
                let (t1, s1) = knots[j];
                t0 + (s0 - u) / (s0 - s1) * (t1 - t0)
            }
        }
    }

    /// Times where the survival curve is not smooth; quadrature splits here.
    fn kink_times(&self) -> Vec<f64> {
        match &self.kind {
            MarginalKind::PiecewiseEmpirical { knots } => {
                knots.iter().map(|&(t, _)| t).filter(|&t| t > 0.0).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// A discrete joint atom: one lifetime per component, with a probability.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    lifetimes: Vec<f64>,
    prob: f64,
}

impl Atom {
    pub fn lifetimes(&self) -> &[f64] {
        &self.lifetimes
    }

    pub fn prob(&self) -> f64 {
        self.prob
    }
}

/// Dependence structure of a joint lifetime model.
#[derive(Clone, Debug, PartialEq)]
pub enum JointKind {
    Independent(Vec<MarginalLifetime>),
    /// Finitely many lifetime vectors with probabilities summing to 1.
    DiscreteJoint(Vec<Atom>),
    /// One latent uniform drives all components: all lifetimes are long or
    /// short together, the strongest positive dependence possible.
    Comonotone(Vec<MarginalLifetime>),
}

/// A joint distribution of the n component lifetimes.
#[derive(Clone, Debug, PartialEq)]
pub struct JointLifetimeModel {
    n: usize,
    kind: JointKind,
}

impl JointLifetimeModel {
    pub fn independent(marginals: Vec<MarginalLifetime>) -> Result<Self, LifetimeError> {
        let n = marginals.len();
        if n == 0 || n > MAX_COMPONENTS {
            return Err(LifetimeError::InvalidGroundSet { n });
        }
        Ok(JointLifetimeModel { n, kind: JointKind::Independent(marginals) })
    }

    pub fn comonotone(marginals: Vec<MarginalLifetime>) -> Result<Self, LifetimeError> {
        let n = marginals.len();
        if n == 0 || n > MAX_COMPONENTS {
            return Err(LifetimeError::InvalidGroundSet { n });
        }
        Ok(JointLifetimeModel { n, kind: JointKind::Comonotone(marginals) })
    }

    /// Atom lifetimes must be strictly positive and finite (components are
    /// alive at time 0 and eventually fail); probabilities are nonnegative
    /// and sum to 1 within 1e-12.
    pub fn discrete_joint(atoms: Vec<(Vec<f64>, f64)>) -> Result<Self, LifetimeError> {
        if atoms.is_empty() {
            return Err(LifetimeError::InvalidGroundSet { n: 0 });
        }
        let n = atoms[0].0.len();
        if n == 0 || n > MAX_COMPONENTS {
            return Err(LifetimeError::InvalidGroundSet { n });
        }
        let mut total = NeumaierSum::new();
        let mut validated = Vec::with_capacity(atoms.len());
        for (i, (lifetimes, prob)) in atoms.into_iter().enumerate() {
            if lifetimes.len() != n {
                return Err(LifetimeError::InvalidAtom {
                    index: i,
                    reason: "lifetime vector length differs from the first atom",
                });
            }
            if lifetimes.iter().any(|&t| !t.is_finite() || t <= 0.0) {
                return Err(LifetimeError::InvalidAtom {
                    index: i,
                    reason: "lifetimes must be strictly positive and finite",
                });
            }
            if !prob.is_finite() || prob < 0.0 {
                return Err(LifetimeError::InvalidAtom {
                    index: i,
                    reason: "probability must be in [0, 1]",
                });
            }
            total.add(prob);
            validated.push(Atom { lifetimes, prob });
        }
        let total = total.total();
        if (total - 1.0).abs() > 1e-12 {
            return Err(LifetimeError::NotNormalized { total });
        }
        Ok(JointLifetimeModel { n, kind: JointKind::DiscreteJoint(validated) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &JointKind {
        &self.kind
    }

    pub fn is_independent(&self) -> bool {
        matches!(self.kind, JointKind::Independent(_))
    }

    /// P(T_i > t_i for all i). Coordinates may be 0 (always survived, since
    /// lifetimes are positive) or +inf (never survived).
    pub fn joint_survival(&self, t: &[f64]) -> Result<f64, LifetimeError> {
        self.check_vector(t)?;
        Ok(match &self.kind {
            JointKind::Independent(marginals) => {
                let mut p = 1.0;
                for (m, &ti) in marginals.iter().zip(t) {
                    p *= m.survival(ti);
                }
                p
            }
            JointKind::DiscreteJoint(atoms) => {
                let mut acc = NeumaierSum::new();
                for atom in atoms {
                    if atom.lifetimes.iter().zip(t).all(|(&life, &ti)| life > ti) {
                        acc.add(atom.prob);
                    }
                }
                acc.total()
            }
            JointKind::Comonotone(marginals) => {
                // The latent uniform must fall below every S_i(t_i).
                marginals
                    .iter()
                    .zip(t)
                    .map(|(m, &ti)| m.survival(ti))
                    .fold(1.0, f64::min)
            }
        })
    }

    /// P(T_i <= t_i for all i).
    pub fn joint_cdf(&self, t: &[f64]) -> Result<f64, LifetimeError> {
        self.check_vector(t)?;
        Ok(match &self.kind {
            JointKind::Independent(marginals) => {
                let mut p = 1.0;
                for (m, &ti) in marginals.iter().zip(t) {
                    p *= m.cdf(ti);
                }
                p
            }
            JointKind::DiscreteJoint(atoms) => {
                let mut acc = NeumaierSum::new();
                for atom in atoms {
                    if atom.lifetimes.iter().zip(t).all(|(&life, &ti)| life <= ti) {
                        acc.add(atom.prob);
                    }
                }
                acc.total()
            }
            JointKind::Comonotone(marginals) => {
                // The latent uniform must clear every S_i(t_i).
                1.0 - marginals
                    .iter()
                    .zip(t)
                    .map(|(m, &ti)| m.survival(ti))
                    .fold(0.0, f64::max)
            }
        })
    }

    pub fn marginal_survival(&self, i: usize, t: f64) -> f64 {
        assert!(i < self.n, "component index out of range");
        match &self.kind {
            JointKind::Independent(ms) | JointKind::Comonotone(ms) => ms[i].survival(t),
            JointKind::DiscreteJoint(atoms) => {
                let mut acc = NeumaierSum::new();
                for atom in atoms {
                    if atom.lifetimes[i] > t {
                        acc.add(atom.prob);
                    }
                }
                acc.total()
            }
        }
    }

    pub fn marginal_cdf(&self, i: usize, t: f64) -> f64 {
        match &self.kind {
            JointKind::DiscreteJoint(atoms) => {
                let mut acc = NeumaierSum::new();
                for atom in atoms {
                    if atom.lifetimes[i] <= t {
                        acc.add(atom.prob);
                    }
                }
                acc.total()
            }
            _ => 1.0 - self.marginal_survival(i, t),
        }
    }

    /// Distribution of the working/failed indicator vector at time t over
    /// the 2^n component states.
    ///
    /// Independent models multiply marginal probabilities directly. For
    /// dependent models the state probabilities are the Mobius transform of
    /// the blockwise cdf `g(B) = P(T_i <= t for i outside B)`; tiny negative
    /// masses from float cancellation (within [`STATE_MASS_TOLERANCE`]) are
    /// clamped to zero and the vector renormalized, anything worse errors.
    pub fn state_vector_dist(&self, t: f64) -> Result<StateVectorDistribution, LifetimeError> {
        if t.is_nan() {
            return Err(LifetimeError::DomainError { index: 0, value: t });
        }
        if let JointKind::Independent(marginals) = &self.kind {
            let survivals: Vec<f64> = marginals.iter().map(|m| m.survival(t)).collect();
            let probs = SetFunction::new(self.n, bernoulli_state_table(&survivals))
                .expect("validated n");
            return Ok(StateVectorDistribution { t, probs, clamped_mass: 0.0 });
        }
        let mut point = vec![0.0f64; self.n];
        let g = SetFunction::from_fn(self.n, |b: Subset| {
            for i in 0..self.n {
                point[i] = if b.contains(i) { f64::INFINITY } else { t };
            }
            self.joint_cdf(&point).expect("validated dimensions")
        })
        .expect("validated n");
        let mut probs = g.mobius();
        let mut clamped_mass = 0.0;
        for s in probs.subsets() {
            let mass = *probs.value(s);
            if mass < -STATE_MASS_TOLERANCE {
                return Err(LifetimeError::NumericalError { at: s, mass });
            }
            if mass < 0.0 {
                clamped_mass += -mass;
            }
        }
        if clamped_mass > 0.0 {
            let cleaned: Vec<f64> = probs.values().iter().map(|&p| p.max(0.0)).collect();
            let total: f64 = cleaned.iter().sum();
            let values = cleaned.into_iter().map(|p| p / total).collect();
            probs = SetFunction::new(self.n, values).expect("validated n");
        }
        Ok(StateVectorDistribution { t, probs, clamped_mass })
    }

    /// Probability generating function of the state vector,
    /// `G(z, t) = sum_A P(state = A) prod_{i in A} z_i`, for z in [-1, 1]^n.
    pub fn pgf(&self, z: &[f64], t: f64) -> Result<f64, LifetimeError> {
        if z.len() != self.n {
            return Err(LifetimeError::DimensionMismatch { expected: self.n, got: z.len() });
        }
        for (i, &zi) in z.iter().enumerate() {
            if !(-1.0..=1.0).contains(&zi) {
                return Err(LifetimeError::DomainError { index: i, value: zi });
            }
        }
        let dist = self.state_vector_dist(t)?;
        let mono = monomial_table(z);
        let mut acc = NeumaierSum::new();
        for (m, &p) in dist.probs.values().iter().enumerate() {
            if p != 0.0 {
                acc.add(p * mono[m]);
            }
        }
        Ok(acc.total())
    }

    /// Draws one lifetime vector. The draw order is fixed: independent
    /// models consume one uniform per component in index order, the discrete
    /// joint consumes one uniform, the comonotone model consumes one uniform
    /// shared by all components.
    pub fn sample_into(&self, rng: &mut impl RngCore, out: &mut [f64]) {
        assert_eq!(out.len(), self.n, "output buffer length");
        match &self.kind {
            JointKind::Independent(marginals) => {
                for (slot, m) in out.iter_mut().zip(marginals) {
                    *slot = m.quantile_survival(unit_open_low(rng));
                }
            }
            JointKind::DiscreteJoint(atoms) => {
                let u = unit_half_open(rng);
                let mut acc = 0.0;
                let mut chosen = atoms.len() - 1;
                for (k, atom) in atoms.iter().enumerate() {
                    acc += atom.prob;
                    if u < acc {
                        chosen = k;
                        break;
                    }
                }
                out.copy_from_slice(&atoms[chosen].lifetimes);
            }
            JointKind::Comonotone(marginals) => {
                let u = unit_open_low(rng);
                for (slot, m) in out.iter_mut().zip(marginals) {
                    *slot = m.quantile_survival(u);
                }
            }
        }
    }

    /// Draws `count` lifetime vectors from a single ChaCha12 stream seeded
    /// with `seed`; same seed, same platform-independent samples.
    pub fn sample_lifetimes(&self, seed: u64, count: usize) -> Vec<Vec<f64>> {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut row = vec![0.0; self.n];
            self.sample_into(&mut rng, &mut row);
            out.push(row);
        }
        out
    }

    /// Times where some marginal survival curve or atom coordinate makes the
    /// reliability curve non-smooth; quadrature splits here.
    pub(crate) fn kink_times(&self) -> Vec<f64> {
        let mut kinks = match &self.kind {
            JointKind::Independent(ms) | JointKind::Comonotone(ms) => {
                ms.iter().flat_map(|m| m.kink_times()).collect()
            }
            JointKind::DiscreteJoint(atoms) => atoms
                .iter()
                .flat_map(|a| a.lifetimes.iter().copied())
                .collect::<Vec<f64>>(),
        };
        kinks.sort_by(|a, b| a.partial_cmp(b).expect("validated non-NaN"));
        kinks.dedup();
        kinks
    }

    fn check_vector(&self, t: &[f64]) -> Result<(), LifetimeError> {
        if t.len() != self.n {
            return Err(LifetimeError::DimensionMismatch { expected: self.n, got: t.len() });
        }
        for (i, &ti) in t.iter().enumerate() {
            if ti.is_nan() {
                return Err(LifetimeError::DomainError { index: i, value: ti });
            }
        }
        Ok(())
    }
}

/// Distribution of the component state vector at a fixed time.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVectorDistribution {
    t: f64,
    probs: SetFunction<f64>,
    clamped_mass: f64,
}

impl StateVectorDistribution {
    pub fn t(&self) -> f64 {
        self.t
    }

    /// P(working set = s) at time t.
    pub fn prob(&self, s: Subset) -> f64 {
        *self.probs.value(s)
    }

    pub fn probs(&self) -> &SetFunction<f64> {
        &self.probs
    }

    /// Total negative mass that was clamped away during Mobius inversion;
    /// zero for exact models, tiny for heavily dependent ones.
    pub fn clamped_mass(&self) -> f64 {
        self.clamped_mass
    }
}

/// Uniform in [0, 1): 53 random mantissa bits.
pub(crate) fn unit_half_open(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in (0, 1]: safe to take logarithms of.
pub(crate) fn unit_open_low(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
}
