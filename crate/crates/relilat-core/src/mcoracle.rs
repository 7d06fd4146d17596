//! Monte Carlo verification oracle.
//!
//! Estimates reliability and MTTF by drawing lifetime vectors and evaluating
//! the lattice polynomial on each draw, with no shared code path into the
//! exact formulas. Every reliability sample additionally checks the defining
//! identity of the thresholded structure: the polynomial exceeds t exactly
//! when the structure accepts the set of components still alive at t. A
//! violation is reported as an error, it can only mean a bug, never bad luck.
//!
//! Sampling is blocked: block `k` of [`BLOCK_SAMPLES`] draws uses an rng
//! seeded with `seed ^ (k * 0x9E37_79B9_7F4A_7C15)` (wrapping), so blocks are
//! independent streams that could be drawn in parallel; reduction here is
//! sequential in block order to keep results bit-stable.

use alloc::vec;
use core::fmt;
// Resolves float methods under no_std; redundant (hence allowed) with std.
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::latpoly::WeightedLatticePolynomial;
use crate::lifetimes::JointLifetimeModel;
use crate::setfun::Subset;

pub const MIN_SAMPLES: usize = 100;
pub const BLOCK_SAMPLES: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum McError {
    TooFewSamples { got: usize },
    DimensionMismatch { system_n: usize, lifetimes_n: usize },
    /// Ind(p_w(T) > t) disagreed with the thresholded structure on a draw.
    IdentityViolation { sample: usize, t: f64 },
    /// A drawn system lifetime was infinite, so the MTTF sample mean is not.
    InfiniteSample { sample: usize },
}

impl fmt::Display for McError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            McError::TooFewSamples { got } => {
                write!(f, "need at least {MIN_SAMPLES} samples, got {got}")
            }
            McError::DimensionMismatch { system_n, lifetimes_n } => write!(
                f,
                "system has {system_n} components but the lifetime model has {lifetimes_n}"
            ),
            McError::IdentityViolation { sample, t } => write!(
                f,
                "sample {sample}: polynomial value and thresholded structure disagree at t = {t}"
            ),
            McError::InfiniteSample { sample } => {
                write!(f, "sample {sample} has infinite system lifetime; MTTF is infinite")
            }
        }
    }
}

impl core::error::Error for McError {}

/// A sample mean with its standard error and provenance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

fn block_seed(seed: u64, block: u64) -> u64 {
    seed ^ block.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn check_inputs(
    p: &WeightedLatticePolynomial,
    lifetimes: &JointLifetimeModel,
    n_samples: usize,
) -> Result<(), McError> {
    if n_samples < MIN_SAMPLES {
        return Err(McError::TooFewSamples { got: n_samples });
    }
    if p.n() != lifetimes.n() {
        return Err(McError::DimensionMismatch {
            system_n: p.n(),
            lifetimes_n: lifetimes.n(),
        });
    }
    Ok(())
}

/// Estimates Pr(p_w(T) > t) as the success fraction over `n_samples` draws,
/// asserting the threshold identity on every one of them.
pub fn estimate_reliability(
    p: &WeightedLatticePolynomial,
    lifetimes: &JointLifetimeModel,
    t: f64,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate, McError> {
    check_inputs(p, lifetimes, n_samples)?;
    let rep = p.minimal_representation();
    let thresholded = p.threshold(t);
    let n = p.n();
    let mut draw = vec![0.0; n];
    let mut successes: u64 = 0;
    let mut sample = 0usize;
    let mut block = 0u64;
    while sample < n_samples {
        let mut rng = ChaCha12Rng::seed_from_u64(block_seed(seed, block));
        let in_block = BLOCK_SAMPLES.min(n_samples - sample);
        for _ in 0..in_block {
            lifetimes.sample_into(&mut rng, &mut draw);
            let alive_now = p_value_exceeds(&rep, &draw, t);
            let state = Subset::from_members(
                (0..n).filter(|&i| draw[i] > t),
            );
            if alive_now != thresholded.eval_mask(state) {
                return Err(McError::IdentityViolation { sample, t });
            }
            successes += alive_now as u64;
            sample += 1;
        }
        block += 1;
    }
    let mean = successes as f64 / n_samples as f64;
    let stderr = (mean * (1.0 - mean) / (n_samples as f64 - 1.0)).sqrt();
    Ok(McEstimate { mean, stderr, n_samples, seed })
}

fn p_value_exceeds(
    rep: &crate::latpoly::MinimalWlpRepresentation,
    draw: &[f64],
    t: f64,
) -> bool {
    rep.eval_disjunctive(draw) > t
}

/// Estimates E[p_w(T)] as the sample mean of the polynomial over draws.
/// Each block keeps a running mean and sum of squared deviations; blocks are
/// merged pairwise, which is stable for means over long runs.
pub fn estimate_mttf(
    p: &WeightedLatticePolynomial,
    lifetimes: &JointLifetimeModel,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate, McError> {
    check_inputs(p, lifetimes, n_samples)?;
    let rep = p.minimal_representation();
    let n = p.n();
    let mut draw = vec![0.0; n];
    let (mut count, mut mean, mut m2) = (0usize, 0.0f64, 0.0f64);
    let mut sample = 0usize;
    let mut block = 0u64;
    while sample < n_samples {
        let mut rng = ChaCha12Rng::seed_from_u64(block_seed(seed, block));
        let in_block = BLOCK_SAMPLES.min(n_samples - sample);
        let (mut bc, mut bmean, mut bm2) = (0usize, 0.0f64, 0.0f64);
        for _ in 0..in_block {
            lifetimes.sample_into(&mut rng, &mut draw);
            let life = rep.eval_disjunctive(&draw);
            if life.is_infinite() {
                return Err(McError::InfiniteSample { sample });
            }
            bc += 1;
            let delta = life - bmean;
            bmean += delta / bc as f64;
            bm2 += delta * (life - bmean);
            sample += 1;
        }
        let merged = count + bc;
        let delta = bmean - mean;
        mean += delta * bc as f64 / merged as f64;
        m2 += bm2 + delta * delta * (count as f64 * bc as f64 / merged as f64);
        count = merged;
        block += 1;
    }
    let variance = m2 / (n_samples as f64 - 1.0);
    let stderr = (variance / n_samples as f64).sqrt();
    Ok(McEstimate { mean, stderr, n_samples, seed })
}
