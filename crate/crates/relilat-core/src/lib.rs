//! Reliability analysis of semicoherent systems on the subset lattice.
//!
//! A system of `n` components is described either by a boolean structure
//! function (which subsets of working components keep the system working) or,
//! more generally, by a weighted lattice polynomial that maps component
//! lifetimes directly to the system lifetime through min/max expressions with
//! constant bounds. This crate covers the algebra and the probability side:
//!
//! * [`setfun`]: dense set functions indexed by bit masks, fast zeta and
//!   Mobius transforms, duality, semicoherence checks;
//! * [`structure`]: structure functions with cached transforms, minimal path
//!   and cut sets, and the multilinear extension in several algebraic forms;
//! * [`latpoly`]: weighted lattice polynomials, their disjunctive,
//!   conjunctive, and median evaluation forms, thresholding back to structure
//!   functions, and minimal representations;
//! * [`lifetimes`]: marginal and joint lifetime models (independent, finite
//!   discrete joint, comonotone) with state-vector distributions and
//!   generating functions;
//! * [`reliability`]: survival probabilities through several exact routes,
//!   reliability curves, failure distributions, and mean time to failure
//!   (closed form or adaptive quadrature);
//! * [`mcoracle`]: a seeded Monte Carlo oracle that cross-checks the exact
//!   routes sample by sample.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only selects the standard library float implementations.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod latpoly;
pub mod lifetimes;
pub mod mcoracle;
mod numeric;
pub mod quadrature;
pub mod reliability;
pub mod setfun;
pub mod structure;

pub use latpoly::{
    LatPolyError, MinimalWlpRepresentation, SymmetricProfile, ThresholdedSystem,
    WeightedLatticePolynomial, WlpForm,
};
pub use lifetimes::{JointLifetimeModel, LifetimeError, MarginalLifetime, StateVectorDistribution};
pub use mcoracle::{McError, McEstimate};
pub use reliability::{
    Analysis, Formula, Mttf, MttfMethod, ReliabilityError, ReliabilityReport, SystemModel,
};
pub use setfun::{BoolSetFunction, MobiusTransform, SetFunction, Subset, MAX_COMPONENTS};
pub use structure::{MleForm, PathCutReport, SystemStructure};
