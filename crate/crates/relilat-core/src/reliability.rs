//! System reliability, lifetime distributions, and mean time to failure.
//!
//! An [`Analysis`] couples a system description (a plain structure or a
//! weighted lattice polynomial) with a joint lifetime model and evaluates
//! R_S(t) = Pr(system alive at t) through any of several routes that must
//! agree: summing the state-vector distribution against the truth table,
//! the dual of that, Mobius-weighted joint survivals or cdfs, or (under
//! independence) the multilinear extension at the marginal survivals.
//!
//! The weighted case reduces to the plain case pointwise: thresholding the
//! weight function at t yields the structure in force on each inter-weight
//! interval, so curves and integrals only rebuild it at breakpoints.

use alloc::borrow::Cow;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
// Resolves float methods under no_std; redundant (hence allowed) with std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::latpoly::{SymmetricProfile, ThresholdedSystem, WeightedLatticePolynomial};
use crate::lifetimes::{JointKind, JointLifetimeModel, LifetimeError, MarginalKind};
use crate::numeric::NeumaierSum;
use crate::quadrature::{self, QuadratureError};
use crate::setfun::Subset;
use crate::structure::{MleForm, StructureError, SystemStructure};

/// How many grid subdivisions the adaptive integrator may spend per piece.
const MTTF_MAX_SUBDIVISIONS: usize = 10_000;
/// Absolute tolerance per quadrature piece.
const MTTF_ABS_TOL: f64 = 1e-9;
/// The weighted exponential closed form enumerates all subset pairs B <= A,
/// which is 3^n work; past this size quadrature is cheaper anyway.
const CLOSED_FORM_WEIGHTED_MAX_N: usize = 16;

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum ReliabilityError {
    DimensionMismatch { system_n: usize, lifetimes_n: usize },
    /// An independence-only formula was requested for a dependent model.
    ModelMismatch,
    InvalidTime { value: f64 },
    GridNotSorted { index: usize },
    Lifetime(LifetimeError),
    Structure(StructureError),
    Quadrature(QuadratureError),
}

impl fmt::Display for ReliabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReliabilityError::DimensionMismatch { system_n, lifetimes_n } => write!(
                f,
                "system has {system_n} components but the lifetime model has {lifetimes_n}"
            ),
            ReliabilityError::ModelMismatch => {
                write!(f, "multilinear-extension formulas need independent lifetimes")
            }
            ReliabilityError::InvalidTime { value } => {
                write!(f, "time must be finite and nonnegative, got {value}")
            }
            ReliabilityError::GridNotSorted { index } => {
                write!(f, "time grid must be ascending and nonnegative (entry {index})")
            }
            ReliabilityError::Lifetime(e) => write!(f, "{e}"),
            ReliabilityError::Structure(e) => write!(f, "{e}"),
            ReliabilityError::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ReliabilityError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            ReliabilityError::Lifetime(e) => Some(e),
            ReliabilityError::Structure(e) => Some(e),
            ReliabilityError::Quadrature(e) => Some(e),
            _ => None,
        }
    }
}

impl From<LifetimeError> for ReliabilityError {
    fn from(e: LifetimeError) -> Self {
        ReliabilityError::Lifetime(e)
    }
}

impl From<StructureError> for ReliabilityError {
    fn from(e: StructureError) -> Self {
        ReliabilityError::Structure(e)
    }
}

impl From<QuadratureError> for ReliabilityError {
    fn from(e: QuadratureError) -> Self {
        ReliabilityError::Quadrature(e)
    }
}

/// The system side of an analysis: either a fixed structure or a weighted
/// lattice polynomial whose effective structure depends on the time.
#[derive(Clone, Debug, PartialEq)]
pub enum SystemModel {
    Structure(SystemStructure),
    Wlp(WeightedLatticePolynomial),
}

impl SystemModel {
    pub fn n(&self) -> usize {
        match self {
            SystemModel::Structure(s) => s.n(),
            SystemModel::Wlp(p) => p.n(),
        }
    }
}

/// Evaluation route for R_S(t). All routes agree within 1e-10; they differ
/// in cost and in which lifetime queries they touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    /// Multilinear extension when independent, Mobius-survival otherwise.
    Auto,
    /// Sum of state-vector probabilities over working states.
    StateVector,
    /// Complement sum through the dual structure.
    StateVectorDual,
    /// Mobius coefficients against blockwise joint survivals.
    MobiusSurvival,
    /// Dual Mobius coefficients against blockwise joint cdfs.
    MobiusCdf,
    /// Multilinear extension at the marginal survivals; independent only.
    IndependentMle(MleForm),
}

impl Formula {
    fn resolve(self, independent: bool) -> Formula {
        match self {
            Formula::Auto => {
                if independent {
                    Formula::IndependentMle(MleForm::PrimalMobius)
                } else {
                    Formula::MobiusSurvival
                }
            }
            other => other,
        }
    }
}

/// How an MTTF value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MttfMethod {
    ClosedFormExponential,
    PiecewiseQuadrature,
}

/// Mean time to failure; infinite when the system can never die.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mttf {
    pub value: f64,
    pub method: MttfMethod,
}

/// A reliability curve over a grid, with the route used at each point and
/// the MTTF of the same system.
#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityReport {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub formula_used: Vec<Formula>,
    pub mttf: Mttf,
}

/// The structure in force on one inter-breakpoint interval.
enum Regime<'a> {
    Proper(Cow<'a, SystemStructure>),
    AlwaysAlive,
    AlwaysDead,
}

/// A system paired with a joint lifetime model of matching dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    system: SystemModel,
    lifetimes: JointLifetimeModel,
}

impl Analysis {
    pub fn new(system: SystemModel, lifetimes: JointLifetimeModel) -> Result<Self, ReliabilityError> {
        if system.n() != lifetimes.n() {
            return Err(ReliabilityError::DimensionMismatch {
                system_n: system.n(),
                lifetimes_n: lifetimes.n(),
            });
        }
        Ok(Analysis { system, lifetimes })
    }

    pub fn system(&self) -> &SystemModel {
        &self.system
    }

    pub fn lifetimes(&self) -> &JointLifetimeModel {
        &self.lifetimes
    }

    fn n(&self) -> usize {
        self.lifetimes.n()
    }

    /// The effective structure for times in [t, next breakpoint). The strict
    /// inequality in thresholding makes R_S right-continuous, so evaluating
    /// at a breakpoint uses the regime to its right.
    fn regime_at(&self, t: f64) -> Regime<'_> {
        match &self.system {
            SystemModel::Structure(s) => Regime::Proper(Cow::Borrowed(s)),
            SystemModel::Wlp(p) => match p.threshold(t) {
                ThresholdedSystem::Proper(s) => Regime::Proper(Cow::Owned(s)),
                ThresholdedSystem::AlwaysAlive => Regime::AlwaysAlive,
                ThresholdedSystem::AlwaysDead => Regime::AlwaysDead,
            },
        }
    }

    /// Smallest and largest weights; a plain structure behaves like weights
    /// 0 at the empty set and infinity at the full set.
    fn weight_range(&self) -> (f64, f64) {
        match &self.system {
            SystemModel::Structure(_) => (0.0, f64::INFINITY),
            SystemModel::Wlp(p) => (p.weight_empty(), p.weight_full()),
        }
    }

    fn weight_breakpoints(&self) -> Vec<f64> {
        match &self.system {
            SystemModel::Structure(_) => Vec::new(),
            SystemModel::Wlp(p) => p.breakpoints(),
        }
    }

    fn check_time(&self, t: f64) -> Result<(), ReliabilityError> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(ReliabilityError::InvalidTime { value: t });
        }
        Ok(())
    }

    pub fn reliability_at(&self, t: f64, formula: Formula) -> Result<f64, ReliabilityError> {
        self.check_time(t)?;
        let formula = formula.resolve(self.lifetimes.is_independent());
        if matches!(formula, Formula::IndependentMle(_)) && !self.lifetimes.is_independent() {
            return Err(ReliabilityError::ModelMismatch);
        }
        self.reliability_in_regime(&self.regime_at(t), t, formula)
    }

    /// Pr(system has failed by t); the complement of `reliability_at` and
    /// the distribution function of the polynomial applied to the lifetimes.
    pub fn distribution_at(&self, t: f64, formula: Formula) -> Result<f64, ReliabilityError> {
        Ok(1.0 - self.reliability_at(t, formula)?)
    }

    fn reliability_in_regime(
        &self,
        regime: &Regime<'_>,
        t: f64,
        formula: Formula,
    ) -> Result<f64, ReliabilityError> {
        let s = match regime {
            Regime::AlwaysAlive => return Ok(1.0),
            Regime::AlwaysDead => return Ok(0.0),
            Regime::Proper(s) => s.as_ref(),
        };
        let n = self.n();
        match formula {
            Formula::Auto => unreachable!("resolved by the caller"),
            Formula::StateVector => {
                let dist = self.lifetimes.state_vector_dist(t)?;
                let mut acc = NeumaierSum::new();
                for (a, &alive) in s.truth_table().values().iter().enumerate() {
                    if alive {
                        acc.add(dist.probs().values()[a]);
                    }
                }
                Ok(acc.total())
            }
            Formula::StateVectorDual => {
                let dist = self.lifetimes.state_vector_dist(t)?;
                let full = Subset::full(n).mask() as usize;
                let mut acc = NeumaierSum::new();
                for (a, &dual_alive) in s.dual_truth_table().values().iter().enumerate() {
                    if dual_alive {
                        acc.add(dist.probs().values()[full ^ a]);
                    }
                }
                Ok(1.0 - acc.total())
            }
            Formula::MobiusSurvival => {
                // Sum of m_v(A) * Pr(T_i > t for all i in A).
                let mut times = vec![0.0; n];
                let mut acc = NeumaierSum::new();
                for (a, &m) in s.mobius().values().iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    for (i, slot) in times.iter_mut().enumerate() {
                        *slot = if a >> i & 1 == 1 { t } else { 0.0 };
                    }
                    acc.add(m as f64 * self.lifetimes.joint_survival(&times)?);
                }
                Ok(acc.total())
            }
            Formula::MobiusCdf => {
                // 1 - sum of m_{v*}(A) * Pr(T_i <= t for all i in A).
                let mut times = vec![0.0; n];
                let mut acc = NeumaierSum::new();
                for (a, &m) in s.dual_mobius().values().iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    for (i, slot) in times.iter_mut().enumerate() {
                        *slot = if a >> i & 1 == 1 { t } else { f64::INFINITY };
                    }
                    acc.add(m as f64 * self.lifetimes.joint_cdf(&times)?);
                }
                Ok(1.0 - acc.total())
            }
            Formula::IndependentMle(form) => {
                let survivals: Vec<f64> =
                    (0..n).map(|i| self.lifetimes.marginal_survival(i, t)).collect();
                Ok(s.mle(&survivals, form)?)
            }
        }
    }

    /// Evaluates the reliability over an ascending grid, rebuilding the
    /// thresholded structure only when the grid crosses a weight breakpoint.
    pub fn reliability_curve(
        &self,
        grid: &[f64],
        formula: Formula,
    ) -> Result<ReliabilityReport, ReliabilityError> {
        for (i, &t) in grid.iter().enumerate() {
            if !(t >= 0.0) || !t.is_finite() || (i > 0 && t < grid[i - 1]) {
                return Err(ReliabilityError::GridNotSorted { index: i });
            }
        }
        let formula = formula.resolve(self.lifetimes.is_independent());
        if matches!(formula, Formula::IndependentMle(_)) && !self.lifetimes.is_independent() {
            return Err(ReliabilityError::ModelMismatch);
        }
        let breakpoints = self.weight_breakpoints();
        let mut values = Vec::with_capacity(grid.len());
        let mut regime: Option<(usize, Regime<'_>)> = None;
        for &t in grid {
            let index = breakpoints.partition_point(|&b| b <= t);
            let cached = match &regime {
                Some((held, r)) if *held == index => r,
                _ => &regime.insert((index, self.regime_at(t))).1,
            };
            values.push(self.reliability_in_regime(cached, t, formula)?);
        }
        Ok(ReliabilityReport {
            grid: grid.to_vec(),
            values,
            formula_used: vec![formula; grid.len()],
            mttf: self.mttf(formula)?,
        })
    }

    /// Mean time to failure: the closed form when the lifetimes are
    /// independent exponentials (and the weighted subset enumeration is
    /// affordable), piecewise quadrature of the reliability curve otherwise.
    pub fn mttf(&self, formula: Formula) -> Result<Mttf, ReliabilityError> {
        match self.mttf_closed_form() {
            Some(mttf) => Ok(mttf),
            None => self.mttf_quadrature(formula),
        }
    }

    /// The exponential closed form, when it applies.
    ///
    /// Unweighted systems need one term per nonzero Mobius coefficient:
    /// the sum of m_v(A) / rate(A) over nonempty A, where rate(A) is the
    /// total failure rate of A. Weighted systems add an inner alternating
    /// sum over subsets B of A of (1 - exp(-rate(A) w(B))) / rate(A), plus
    /// the always-alive head w(empty). When every weight is 0 or infinity
    /// the inner sums collapse to the Mobius coefficients term by term, so
    /// both variants produce bit-identical totals there.
    pub fn mttf_closed_form(&self) -> Option<Mttf> {
        let rates = self.independent_exponential_rates()?;
        let method = MttfMethod::ClosedFormExponential;
        let rate_of = |mask: usize| -> f64 {
            let mut lam = 0.0;
            for (i, &r) in rates.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    lam += r;
                }
            }
            lam
        };
        match &self.system {
            SystemModel::Structure(s) => {
                let mut acc = NeumaierSum::new();
                for (a, &m) in s.mobius().values().iter().enumerate() {
                    if m != 0 {
                        acc.add(m as f64 / rate_of(a));
                    }
                }
                Some(Mttf { value: acc.total(), method })
            }
            SystemModel::Wlp(p) => {
                if p.weight_empty().is_infinite() {
                    // Alive below w(empty) = infinity, i.e. forever.
                    return Some(Mttf { value: f64::INFINITY, method });
                }
                if p.n() > CLOSED_FORM_WEIGHTED_MAX_N {
                    return None;
                }
                let w = p.weights().values();
                let mut acc = NeumaierSum::new();
                acc.add(p.weight_empty());
                let full = p.weights().subset_count() - 1;
                for a in 1..=full {
                    let lam = rate_of(a);
                    let mut inner = NeumaierSum::new();
                    let mut b = a;
                    loop {
                        let flip = (a.count_ones() - b.count_ones()) & 1 == 1;
                        let wb = w[b];
                        let term = if wb.is_infinite() {
                            1.0
                        } else {
                            -(-lam * wb).exp_m1()
                        };
                        inner.add(if flip { -term } else { term });
                        if b == 0 {
                            break;
                        }
                        b = (b - 1) & a;
                    }
                    acc.add(inner.total() / lam);
                }
                Some(Mttf { value: acc.total(), method })
            }
        }
    }

    /// Integrates the reliability curve piecewise: splits where the
    /// effective structure changes (weight breakpoints) and where survival
    /// curves kink, handles the tail to infinity by substitution, and stops
    /// early once a regime can never work again.
    pub fn mttf_quadrature(&self, formula: Formula) -> Result<Mttf, ReliabilityError> {
        let formula = formula.resolve(self.lifetimes.is_independent());
        if matches!(formula, Formula::IndependentMle(_)) && !self.lifetimes.is_independent() {
            return Err(ReliabilityError::ModelMismatch);
        }
        let method = MttfMethod::PiecewiseQuadrature;
        let (w_empty, w_full) = self.weight_range();
        if w_empty.is_infinite() {
            return Ok(Mttf { value: f64::INFINITY, method });
        }
        let cap = if w_full.is_finite() { Some(w_full) } else { None };
        let mut cuts = vec![0.0];
        cuts.extend(self.weight_breakpoints());
        cuts.extend(self.lifetimes.kink_times());
        cuts.retain(|&c| c >= 0.0 && cap.map_or(true, |hi| c < hi));
        if let Some(hi) = cap {
            cuts.push(hi);
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let mut total = NeumaierSum::new();
        let mut dead = false;
        for pair in cuts.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            match self.regime_at(lo) {
                Regime::AlwaysAlive => total.add(hi - lo),
                Regime::AlwaysDead => {
                    dead = true;
                    break;
                }
                Regime::Proper(s) => {
                    let regime = Regime::Proper(s);
                    total.add(self.integrate_piece(&regime, formula, lo, Some(hi))?);
                }
            }
        }
        if !dead && cap.is_none() {
            let start = *cuts.last().expect("cuts always holds 0");
            match self.regime_at(start) {
                Regime::AlwaysAlive => return Ok(Mttf { value: f64::INFINITY, method }),
                Regime::AlwaysDead => {}
                Regime::Proper(s) => {
                    let regime = Regime::Proper(s);
                    total.add(self.integrate_piece(&regime, formula, start, None)?);
                }
            }
        }
        Ok(Mttf { value: total.total(), method })
    }

    fn integrate_piece(
        &self,
        regime: &Regime<'_>,
        formula: Formula,
        lo: f64,
        hi: Option<f64>,
    ) -> Result<f64, ReliabilityError> {
        let mut failure: Option<ReliabilityError> = None;
        let mut integrand = |t: f64| match self.reliability_in_regime(regime, t, formula) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        };
        let outcome = match hi {
            Some(hi) => {
                quadrature::integrate(&mut integrand, lo, hi, MTTF_ABS_TOL, MTTF_MAX_SUBDIVISIONS)
            }
            None => {
                quadrature::integrate_tail(&mut integrand, lo, MTTF_ABS_TOL, MTTF_MAX_SUBDIVISIONS)
            }
        };
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(outcome?.value)
    }

    fn independent_exponential_rates(&self) -> Option<Vec<f64>> {
        match self.lifetimes.kind() {
            JointKind::Independent(ms) => ms
                .iter()
                .map(|m| match m.kind() {
                    MarginalKind::Exponential { rate } => Some(*rate),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }
}

/// Reliability of a symmetric system through the component count alone:
/// the system works at t exactly when at least `critical_count(t)` of the
/// components do, so the answer is a tail sum of Pr(|X(t)| = j).
pub fn symmetric_reliability_at(
    profile: &SymmetricProfile,
    lifetimes: &JointLifetimeModel,
    t: f64,
) -> Result<f64, ReliabilityError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(ReliabilityError::InvalidTime { value: t });
    }
    let n = profile.n();
    if n != lifetimes.n() {
        return Err(ReliabilityError::DimensionMismatch {
            system_n: n,
            lifetimes_n: lifetimes.n(),
        });
    }
    let k = profile.critical_count(t);
    if k > n {
        return Ok(0.0);
    }
    if k == 0 {
        return Ok(1.0);
    }
    let dist = lifetimes.state_vector_dist(t)?;
    let mut acc = NeumaierSum::new();
    for (a, &p) in dist.probs().values().iter().enumerate() {
        if a.count_ones() as usize >= k {
            acc.add(p);
        }
    }
    Ok(acc.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifetimes::MarginalLifetime;
    use crate::setfun::SetFunction;

    fn exp_model(rates: &[f64]) -> JointLifetimeModel {
        let ms = rates.iter().map(|&r| MarginalLifetime::exponential(r).unwrap()).collect();
        JointLifetimeModel::independent(ms).unwrap()
    }

    fn all_formulas(independent: bool) -> Vec<Formula> {
        let mut fs = vec![
            Formula::Auto,
            Formula::StateVector,
            Formula::StateVectorDual,
            Formula::MobiusSurvival,
            Formula::MobiusCdf,
        ];
        if independent {
            fs.extend(MleForm::ALL.iter().map(|&f| Formula::IndependentMle(f)));
        }
        fs
    }

    #[test]
    fn series_reliability_is_joint_survival() {
        let rates = [0.5, 1.0, 2.0];
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::series(3).unwrap()),
            exp_model(&rates),
        )
        .unwrap();
        for &t in &[0.0, 0.3, 1.0, 4.0] {
            let expected = (-(rates.iter().sum::<f64>()) * t).exp();
            for f in all_formulas(true) {
                assert!((a.reliability_at(t, f).unwrap() - expected).abs() < 1e-12, "{f:?}");
            }
        }
    }

    #[test]
    fn two_of_three_polynomial() {
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::k_of_n(3, 2).unwrap()),
            exp_model(&[1.0, 1.0, 1.0]),
        )
        .unwrap();
        for &t in &[0.1, 0.7, 2.0] {
            let p = (-t).exp();
            let expected = 3.0 * p * p - 2.0 * p * p * p;
            assert!((a.reliability_at(t, Formula::Auto).unwrap() - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn comonotone_parallel_pair_is_single_lifetime() {
        let ms = vec![
            MarginalLifetime::exponential(1.0).unwrap(),
            MarginalLifetime::exponential(1.0).unwrap(),
        ];
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::parallel(2).unwrap()),
            JointLifetimeModel::comonotone(ms).unwrap(),
        )
        .unwrap();
        for &t in &[0.2, 1.0, 3.0] {
            // Both components share one latent draw, so the max is just the
            // common lifetime: e^-t, not the independent 2e^-t - e^-2t.
            assert!((a.reliability_at(t, Formula::Auto).unwrap() - (-t).exp()).abs() < 1e-12);
            assert!(
                (a.reliability_at(t, Formula::StateVector).unwrap() - (-t).exp()).abs() < 1e-12
            );
        }
    }

    #[test]
    fn k_of_n_is_binomial_tail() {
        let n = 5;
        let lam = 0.8;
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::k_of_n(n, 3).unwrap()),
            exp_model(&[lam; 5]),
        )
        .unwrap();
        let t = 0.9;
        let p = (-lam * t).exp();
        let mut tail = 0.0;
        for j in 3..=n {
            let c = (1..=n).product::<usize>() / ((1..=j).product::<usize>() * (1..=(n - j)).product::<usize>());
            tail += c as f64 * p.powi(j as i32) * (1.0 - p).powi((n - j) as i32);
        }
        assert!((a.reliability_at(t, Formula::Auto).unwrap() - tail).abs() < 1e-12);
    }

    #[test]
    fn independence_only_formula_rejects_dependent_models() {
        let atoms = vec![(vec![1.0, 2.0], 0.5), (vec![2.0, 1.0], 0.5)];
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::series(2).unwrap()),
            JointLifetimeModel::discrete_joint(atoms).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            a.reliability_at(1.0, Formula::IndependentMle(MleForm::Primal)),
            Err(ReliabilityError::ModelMismatch)
        ));
        // Auto still works by picking a dependence-safe route.
        a.reliability_at(1.0, Formula::Auto).unwrap();
    }

    #[test]
    fn curve_matches_pointwise_and_is_nonincreasing() {
        let p = WeightedLatticePolynomial::from_structure(&SystemStructure::bridge());
        let a = Analysis::new(SystemModel::Wlp(p), exp_model(&[1.0, 0.5, 2.0, 1.5, 1.0])).unwrap();
        let grid: Vec<f64> = (0..60).map(|i| i as f64 * 0.1).collect();
        let report = a.reliability_curve(&grid, Formula::Auto).unwrap();
        for (i, &t) in grid.iter().enumerate() {
            assert_eq!(report.values[i], a.reliability_at(t, Formula::Auto).unwrap());
            if i > 0 {
                assert!(report.values[i] <= report.values[i - 1]);
            }
        }
        assert_eq!(report.formula_used[0], Formula::IndependentMle(MleForm::PrimalMobius));
    }

    #[test]
    fn alive_head_from_empty_set_weight() {
        // w(empty) = 2 keeps the system alive below t = 2 no matter what.
        let n = 2;
        let w = SetFunction::from_fn(n, |s| if s.is_empty() { 2.0 } else { f64::INFINITY })
            .unwrap();
        let p = WeightedLatticePolynomial::from_weights(w).unwrap();
        let a = Analysis::new(SystemModel::Wlp(p), exp_model(&[1.0, 1.0])).unwrap();
        assert_eq!(a.reliability_at(1.9, Formula::Auto).unwrap(), 1.0);
        let r2 = a.reliability_at(2.0, Formula::Auto).unwrap();
        assert!(r2 < 1.0, "strict threshold: the regime flips at the breakpoint");
    }

    #[test]
    fn mttf_series_and_parallel_closed_forms() {
        let rates = [0.5, 1.5];
        let series = Analysis::new(
            SystemModel::Structure(SystemStructure::series(2).unwrap()),
            exp_model(&rates),
        )
        .unwrap();
        let m = series.mttf(Formula::Auto).unwrap();
        assert_eq!(m.method, MttfMethod::ClosedFormExponential);
        assert!((m.value - 1.0 / 2.0).abs() < 1e-14);

        let parallel = Analysis::new(
            SystemModel::Structure(SystemStructure::parallel(2).unwrap()),
            exp_model(&rates),
        )
        .unwrap();
        let expected = 1.0 / 0.5 + 1.0 / 1.5 - 1.0 / 2.0;
        assert!((parallel.mttf(Formula::Auto).unwrap().value - expected).abs() < 1e-12);
    }

    #[test]
    fn mttf_two_of_three() {
        let lam = 0.7;
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::k_of_n(3, 2).unwrap()),
            exp_model(&[lam; 3]),
        )
        .unwrap();
        let m = a.mttf(Formula::Auto).unwrap();
        assert!((m.value - 5.0 / (6.0 * lam)).abs() < 1e-13);
        let q = a.mttf_quadrature(Formula::Auto).unwrap();
        assert_eq!(q.method, MttfMethod::PiecewiseQuadrature);
        assert!((q.value - m.value).abs() < 1e-8);
    }

    #[test]
    fn mttf_single_component_with_cap() {
        let lam = 1.3;
        let u = 0.9;
        let p = WeightedLatticePolynomial::weighted_max(&[u]).unwrap();
        let a = Analysis::new(SystemModel::Wlp(p), exp_model(&[lam])).unwrap();
        let m = a.mttf(Formula::Auto).unwrap();
        assert_eq!(m.method, MttfMethod::ClosedFormExponential);
        let expected = (1.0 - (-lam * u).exp()) / lam;
        assert!((m.value - expected).abs() < 1e-14);
        let q = a.mttf_quadrature(Formula::Auto).unwrap();
        assert!((q.value - expected).abs() < 1e-8);
    }

    #[test]
    fn weighted_closed_form_with_binary_weights_matches_unweighted_exactly() {
        let s = SystemStructure::bridge();
        let rates = [1.0, 0.4, 2.2, 0.9, 1.7];
        let plain = Analysis::new(SystemModel::Structure(s.clone()), exp_model(&rates)).unwrap();
        let lifted = Analysis::new(
            SystemModel::Wlp(WeightedLatticePolynomial::from_structure(&s)),
            exp_model(&rates),
        )
        .unwrap();
        let a = plain.mttf_closed_form().unwrap();
        let b = lifted.mttf_closed_form().unwrap();
        // Same route term by term, so bit-identical, not merely close.
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn weighted_mttf_closed_form_vs_quadrature() {
        let p = WeightedLatticePolynomial::from_terms(
            3,
            &[
                (Subset::from_members([0, 1]), 2.0),
                (Subset::from_members([2]), 1.0),
                (Subset::from_members([0, 1, 2]), f64::INFINITY),
            ],
        )
        .unwrap();
        let a = Analysis::new(SystemModel::Wlp(p), exp_model(&[1.0, 0.5, 2.0])).unwrap();
        let closed = a.mttf_closed_form().unwrap();
        let quad = a.mttf_quadrature(Formula::Auto).unwrap();
        assert!((closed.value - quad.value).abs() < 1e-6 * closed.value.max(1.0));
    }

    #[test]
    fn never_dying_system_has_infinite_mttf() {
        let w = SetFunction::constant(2, f64::INFINITY).unwrap();
        let p = WeightedLatticePolynomial::from_weights(w).unwrap();
        let a = Analysis::new(SystemModel::Wlp(p), exp_model(&[1.0, 1.0])).unwrap();
        assert_eq!(a.mttf(Formula::Auto).unwrap().value, f64::INFINITY);
        assert_eq!(a.mttf_quadrature(Formula::Auto).unwrap().value, f64::INFINITY);
    }

    #[test]
    fn distribution_complements_reliability() {
        let p = WeightedLatticePolynomial::weighted_min(&[0.5, 1.5]).unwrap();
        let a = Analysis::new(SystemModel::Wlp(p), exp_model(&[1.0, 2.0])).unwrap();
        for &t in &[0.0, 0.4, 0.5, 1.0, 2.0] {
            let r = a.reliability_at(t, Formula::Auto).unwrap();
            let f = a.distribution_at(t, Formula::Auto).unwrap();
            assert!((r + f - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn single_component_distribution_is_marginal_cdf() {
        let lam = 0.8;
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::series(1).unwrap()),
            exp_model(&[lam]),
        )
        .unwrap();
        for &t in &[0.0, 0.5, 2.0] {
            let f = a.distribution_at(t, Formula::Auto).unwrap();
            assert!((f - (1.0 - (-lam * t).exp())).abs() < 1e-14);
        }
    }

    #[test]
    fn min_of_two_exponentials() {
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::series(2).unwrap()),
            exp_model(&[0.7, 1.1]),
        )
        .unwrap();
        let t = 0.6;
        let f = a.distribution_at(t, Formula::Auto).unwrap();
        assert!((f - (1.0 - (-1.8 * t).exp())).abs() < 1e-14);
    }

    #[test]
    fn symmetric_route_matches_generic() {
        let profile = SymmetricProfile::new(vec![0.0, 1.0, 2.0, f64::INFINITY]).unwrap();
        let model = exp_model(&[1.0, 0.5, 1.5]);
        let a = Analysis::new(SystemModel::Wlp(profile.to_wlp()), model.clone()).unwrap();
        for &t in &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            let direct = symmetric_reliability_at(&profile, &model, t).unwrap();
            let generic = a.reliability_at(t, Formula::Auto).unwrap();
            assert!((direct - generic).abs() < 1e-12, "t = {t}");
        }
        // Past the top level the system cannot work; before it k(1.5) = 2.
        assert_eq!(profile.critical_count(1.5), 2);
        let dist = model.state_vector_dist(1.5).unwrap();
        let mut two_or_more = 0.0;
        for (m, &p) in dist.probs().values().iter().enumerate() {
            if m.count_ones() >= 2 {
                two_or_more += p;
            }
        }
        assert!(
            (symmetric_reliability_at(&profile, &model, 1.5).unwrap() - two_or_more).abs() < 1e-14
        );
    }

    #[test]
    fn symmetric_k_of_n_profile_is_binomial_tail() {
        // Levels are an indicator profile: infinite from the k-th position.
        let n = 4;
        let k = 2;
        let levels: Vec<f64> =
            (0..=n).map(|j| if j >= k { f64::INFINITY } else { 0.0 }).collect();
        let profile = SymmetricProfile::new(levels).unwrap();
        let lam = 1.0;
        let model = exp_model(&[lam; 4]);
        let t = 0.8;
        let p = (-lam * t).exp();
        let mut tail = 0.0;
        for j in k..=n {
            let c = match j {
                2 => 6.0,
                3 => 4.0,
                4 => 1.0,
                _ => unreachable!(),
            };
            tail += c * p.powi(j as i32) * (1.0 - p).powi((n - j) as i32);
        }
        assert!((symmetric_reliability_at(&profile, &model, t).unwrap() - tail).abs() < 1e-13);
        // Beyond the largest level nothing works.
        let capped = SymmetricProfile::new(vec![0.0, 1.0, 2.0, 2.5, 3.0]).unwrap();
        assert_eq!(symmetric_reliability_at(&capped, &model, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn weighted_min_max_closed_forms_under_independence() {
        let bounds = [0.5, 2.0, 1.0];
        let rates = [1.0, 0.6, 1.4];
        let model = exp_model(&rates);
        let amin = Analysis::new(
            SystemModel::Wlp(WeightedLatticePolynomial::weighted_min(&bounds).unwrap()),
            model.clone(),
        )
        .unwrap();
        let amax = Analysis::new(
            SystemModel::Wlp(WeightedLatticePolynomial::weighted_max(&bounds).unwrap()),
            model.clone(),
        )
        .unwrap();
        for &t in &[0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5] {
            // Floor b_i guarantees component i holds past t whenever b_i > t.
            let mut prod = 1.0;
            for (i, &b) in bounds.iter().enumerate() {
                prod *= if b > t { 1.0 } else { model.marginal_survival(i, t) };
            }
            assert!((amin.reliability_at(t, Formula::Auto).unwrap() - prod).abs() < 1e-12);
            // Cap b_i kills component i's contribution from t >= b_i on.
            let mut coprod = 1.0;
            for (i, &b) in bounds.iter().enumerate() {
                let ri = if b > t { model.marginal_survival(i, t) } else { 0.0 };
                coprod *= 1.0 - ri;
            }
            assert!((amax.reliability_at(t, Formula::Auto).unwrap() - (1.0 - coprod)).abs() < 1e-12);
        }
    }

    #[test]
    fn route_agreement_with_dependent_models() {
        let s = SystemStructure::bridge();
        let marginals: Vec<MarginalLifetime> = (0..5)
            .map(|i| MarginalLifetime::weibull(0.8 + 0.2 * i as f64, 1.0 + 0.3 * i as f64).unwrap())
            .collect();
        let models = [
            JointLifetimeModel::independent(marginals.clone()).unwrap(),
            JointLifetimeModel::comonotone(marginals).unwrap(),
            JointLifetimeModel::discrete_joint(vec![
                (vec![1.0, 2.0, 3.0, 4.0, 5.0], 0.3),
                (vec![2.0, 1.0, 2.0, 1.0, 2.0], 0.25),
                (vec![0.5, 0.5, 4.0, 4.0, 0.5], 0.45),
            ])
            .unwrap(),
        ];
        for model in models {
            let independent = model.is_independent();
            let a =
                Analysis::new(SystemModel::Structure(s.clone()), model).unwrap();
            for &t in &[0.0, 0.5, 1.0, 2.0, 3.5] {
                let reference = a.reliability_at(t, Formula::StateVector).unwrap();
                for f in all_formulas(independent) {
                    let v = a.reliability_at(t, f).unwrap();
                    assert!((v - reference).abs() < 1e-10, "{f:?} at t = {t}");
                }
            }
        }
    }

    #[test]
    fn degenerate_weights_approach_unweighted_mttf() {
        let s = SystemStructure::k_of_n(3, 2).unwrap();
        let rates = [1.0, 1.0, 1.0];
        let plain =
            Analysis::new(SystemModel::Structure(s.clone()), exp_model(&rates)).unwrap();
        let big = 1e6;
        let w = SetFunction::from_fn(3, |a| if s.eval_mask(a) { big } else { 0.0 }).unwrap();
        let softened = Analysis::new(
            SystemModel::Wlp(WeightedLatticePolynomial::from_weights(w).unwrap()),
            exp_model(&rates),
        )
        .unwrap();
        let exact = plain.mttf(Formula::Auto).unwrap().value;
        let soft = softened.mttf(Formula::Auto).unwrap().value;
        assert!((soft - exact).abs() < 1e-4 * exact);
    }

    #[test]
    fn grid_validation() {
        let a = Analysis::new(
            SystemModel::Structure(SystemStructure::series(2).unwrap()),
            exp_model(&[1.0, 1.0]),
        )
        .unwrap();
        assert!(matches!(
            a.reliability_curve(&[0.0, 1.0, 0.5], Formula::Auto),
            Err(ReliabilityError::GridNotSorted { index: 2 })
        ));
        assert!(matches!(
            a.reliability_curve(&[-1.0], Formula::Auto),
            Err(ReliabilityError::GridNotSorted { index: 0 })
        ));
        assert!(matches!(
            a.reliability_at(f64::NAN, Formula::Auto),
            Err(ReliabilityError::InvalidTime { .. })
        ));
        let mismatch = Analysis::new(
            SystemModel::Structure(SystemStructure::series(2).unwrap()),
            exp_model(&[1.0]),
        );
        assert!(matches!(mismatch, Err(ReliabilityError::DimensionMismatch { .. })));
    }
}
