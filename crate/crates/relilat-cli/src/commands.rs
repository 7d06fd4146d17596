//! The nine commands. Each takes the parsed spec plus its flags and returns
//! the full output text; formatting is deterministic so identical inputs
//! always produce identical bytes.
//!
//! Output conventions: subsets print as space-separated 1-based component
//! numbers; set lists are ordered by size, then lexicographically by
//! members; floats print in Rust's shortest round-trip form; CSV bodies
//! follow a header row.

use std::fmt::Write as _;

use relilat_core::latpoly::ThresholdedSystem;
use relilat_core::lifetimes::LifetimeError;
use relilat_core::mcoracle::{self, McError};
use relilat_core::reliability::{Analysis, Formula, ReliabilityError, SystemModel};
use relilat_core::setfun::Subset;
use relilat_core::structure::SystemStructure;
use relilat_core::WeightedLatticePolynomial;

use crate::specfile::SpecFile;
use crate::CliError;

fn members(s: Subset) -> Vec<usize> {
    s.members().map(|i| i + 1).collect()
}

fn subset_line(s: Subset) -> String {
    let m = members(s);
    if m.is_empty() {
        "-".to_string()
    } else {
        m.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// Sets ordered the way a person lists them: small before large, then by
/// the members themselves.
fn presentation_order(sets: &[Subset]) -> Vec<Subset> {
    let mut sorted = sets.to_vec();
    sorted.sort_by_key(|s| (s.card(), members(*s)));
    sorted
}

fn reliability_error(e: ReliabilityError) -> CliError {
    match e {
        ReliabilityError::Quadrature(q) => CliError::Numerical(q.to_string()),
        ReliabilityError::Lifetime(LifetimeError::NumericalError { .. }) => {
            CliError::Numerical(e.to_string())
        }
        other => CliError::Validation(other.to_string()),
    }
}

fn mc_error(e: McError) -> CliError {
    match e {
        McError::IdentityViolation { .. } => {
            CliError::Verification { output: String::new(), failures: 1 }
        }
        other => CliError::Validation(other.to_string()),
    }
}

/// The structure in force at `--at-time` (default 0 when that is
/// unambiguous). Weighted systems with real breakpoints need the flag, and
/// a time past the last breakpoint (or before the first, if the empty set
/// carries weight) has no proper structure to report on.
fn structure_in_force(
    system: &SystemModel,
    at_time: Option<f64>,
) -> Result<SystemStructure, CliError> {
    if let Some(t) = at_time {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(CliError::Validation(format!(
                "--at-time must be finite and nonnegative, got {t}"
            )));
        }
    }
    match system {
        SystemModel::Structure(s) => Ok(s.clone()),
        SystemModel::Wlp(p) => {
            let t = match at_time {
                Some(t) => t,
                None if p.is_binary() => 0.0,
                None => {
                    return Err(CliError::Validation(
                        "weighted system: pass --at-time to pick the structure in force"
                            .to_string(),
                    ))
                }
            };
            match p.threshold(t) {
                ThresholdedSystem::Proper(s) => Ok(s),
                ThresholdedSystem::AlwaysAlive => Err(CliError::Validation(format!(
                    "at t = {t} the system always works; no proper structure"
                ))),
                ThresholdedSystem::AlwaysDead => Err(CliError::Validation(format!(
                    "at t = {t} the system always fails; no proper structure"
                ))),
            }
        }
    }
}

/// `--grid a:b:s` or `--times t1,t2,...`, resolved to an ascending list.
pub fn resolve_times(
    grid: Option<&str>,
    times: Option<&[f64]>,
) -> Result<Vec<f64>, CliError> {
    match (grid, times) {
        (Some(g), None) => parse_grid(g),
        (None, Some(ts)) => {
            for (i, &t) in ts.iter().enumerate() {
                if !(t >= 0.0) || !t.is_finite() || (i > 0 && t < ts[i - 1]) {
                    return Err(CliError::Validation(format!(
                        "--times must be ascending and nonnegative (entry {})",
                        i + 1
                    )));
                }
            }
            Ok(ts.to_vec())
        }
        (Some(_), Some(_)) => {
            Err(CliError::Parse("--grid and --times are mutually exclusive".to_string()))
        }
        (None, None) => Err(CliError::Parse("one of --grid or --times is required".to_string())),
    }
}

fn parse_grid(grid: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(CliError::Parse(format!(
            "--grid must look like start:stop:step, got '{grid}'"
        )));
    };
    let parse = |text: &str| {
        text.parse::<f64>().map_err(|_| {
            CliError::Parse(format!("--grid has a non-numeric part '{text}'"))
        })
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
        return Err(CliError::Validation("--grid values must be finite".to_string()));
    }
    if start < 0.0 || stop < start || step <= 0.0 {
        return Err(CliError::Validation(
            "--grid needs 0 <= start <= stop and step > 0".to_string(),
        ));
    }
    // The +1e-9 absorbs float error so stop itself lands on the grid.
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

pub fn check(spec: &SpecFile, emit_canonical: bool) -> Result<String, CliError> {
    let (system, lifetimes) = spec.build()?;
    if emit_canonical {
        return Ok(spec.canonical());
    }
    let mut out = String::from("ok\n");
    let _ = writeln!(out, "n: {}", lifetimes.n());
    match &system {
        SystemModel::Structure(s) => {
            let _ = writeln!(out, "structure: {} (plain)", spec.structure_kind());
            let _ = writeln!(out, "minimal paths: {}", s.minimal_paths().len());
            let _ = writeln!(out, "minimal cuts: {}", s.minimal_cuts().len());
            let irrelevant = s.irrelevant_components();
            if irrelevant.is_empty() {
                out.push_str("irrelevant components: none\n");
            } else {
                let list: Vec<String> =
                    irrelevant.iter().map(|&i| (i + 1).to_string()).collect();
                let _ = writeln!(out, "irrelevant components: {}", list.join(" "));
            }
        }
        SystemModel::Wlp(p) => {
            let _ = writeln!(out, "structure: {} (weighted)", spec.structure_kind());
            let breaks = p.breakpoints();
            if breaks.is_empty() {
                out.push_str("breakpoints: none\n");
            } else {
                let list: Vec<String> = breaks.iter().map(f64::to_string).collect();
                let _ = writeln!(out, "breakpoints: {}", list.join(" "));
            }
        }
    }
    let _ = writeln!(out, "lifetimes: {}", spec.lifetimes_kind());
    Ok(out)
}

pub fn paths(spec: &SpecFile, at_time: Option<f64>) -> Result<String, CliError> {
    let (system, _) = spec.build()?;
    let s = structure_in_force(&system, at_time)?;
    let mut out = String::new();
    for p in presentation_order(s.minimal_paths()) {
        let _ = writeln!(out, "{}", subset_line(p));
    }
    Ok(out)
}

pub fn cuts(spec: &SpecFile, at_time: Option<f64>) -> Result<String, CliError> {
    let (system, _) = spec.build()?;
    let s = structure_in_force(&system, at_time)?;
    let mut out = String::new();
    for c in presentation_order(s.minimal_cuts()) {
        let _ = writeln!(out, "{}", subset_line(c));
    }
    Ok(out)
}

pub fn mobius(spec: &SpecFile, at_time: Option<f64>) -> Result<String, CliError> {
    let (system, _) = spec.build()?;
    let s = structure_in_force(&system, at_time)?;
    let mut out = String::from("A,m_v\n");
    for (a, &m) in s.mobius().values().iter().enumerate() {
        if m != 0 {
            let _ = writeln!(out, "{},{m}", subset_line(Subset::from_mask(a as u32)));
        }
    }
    Ok(out)
}

pub fn dual(spec: &SpecFile, at_time: Option<f64>) -> Result<String, CliError> {
    let (system, _) = spec.build()?;
    let s = structure_in_force(&system, at_time)?;
    // One 0/1 per subset in ascending mask order, the same shape the
    // truth_table spec kind accepts, so the output can be pasted back in.
    let bits: String =
        s.dual_truth_table().values().iter().map(|&b| if b { '1' } else { '0' }).collect();
    Ok(format!("{bits}\n"))
}

pub fn reliability(
    spec: &SpecFile,
    grid: Option<&str>,
    times: Option<&[f64]>,
    formula: Formula,
) -> Result<String, CliError> {
    let (system, lifetimes) = spec.build()?;
    let analysis = Analysis::new(system, lifetimes).map_err(reliability_error)?;
    let ts = resolve_times(grid, times)?;
    let report = analysis.reliability_curve(&ts, formula).map_err(reliability_error)?;
    let mut out = String::from("t,R_S\n");
    for (t, r) in report.grid.iter().zip(&report.values) {
        let _ = writeln!(out, "{t},{r}");
    }
    Ok(out)
}

pub fn mttf(spec: &SpecFile, formula: Formula) -> Result<String, CliError> {
    let (system, lifetimes) = spec.build()?;
    let analysis = Analysis::new(system, lifetimes).map_err(reliability_error)?;
    let m = analysis.mttf(formula).map_err(reliability_error)?;
    let tag = match m.method {
        relilat_core::MttfMethod::ClosedFormExponential => "closed_form_exponential",
        relilat_core::MttfMethod::PiecewiseQuadrature => "piecewise_quadrature",
    };
    Ok(format!("{} {tag}\n", m.value))
}

pub fn dist(
    spec: &SpecFile,
    grid: Option<&str>,
    times: Option<&[f64]>,
    formula: Formula,
) -> Result<String, CliError> {
    let (system, lifetimes) = spec.build()?;
    let analysis = Analysis::new(system, lifetimes).map_err(reliability_error)?;
    let ts = resolve_times(grid, times)?;
    let report = analysis.reliability_curve(&ts, formula).map_err(reliability_error)?;
    let mut out = String::from("t,F\n");
    for (t, r) in report.grid.iter().zip(&report.values) {
        let _ = writeln!(out, "{t},{}", 1.0 - r);
    }
    Ok(out)
}

pub fn verify(
    spec: &SpecFile,
    grid: Option<&str>,
    times: Option<&[f64]>,
    seed: u64,
    samples: usize,
) -> Result<String, CliError> {
    let (system, lifetimes) = spec.build()?;
    let wlp = match &system {
        SystemModel::Wlp(p) => p.clone(),
        SystemModel::Structure(s) => WeightedLatticePolynomial::from_structure(s),
    };
    let analysis = Analysis::new(system, lifetimes.clone()).map_err(reliability_error)?;
    let ts = resolve_times(grid, times)?;
    let mut out = String::from("t,exact,mc,stderr,status\n");
    let mut failures = 0;
    for &t in &ts {
        let exact = analysis.reliability_at(t, Formula::Auto).map_err(reliability_error)?;
        let est = mcoracle::estimate_reliability(&wlp, &lifetimes, t, samples, seed)
            .map_err(mc_error)?;
        let pass = (exact - est.mean).abs() <= 3.0 * est.stderr;
        if !pass {
            failures += 1;
        }
        let status = if pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{t},{exact},{},{},{status}", est.mean, est.stderr);
    }
    if failures > 0 {
        return Err(CliError::Verification { output: out, failures });
    }
    Ok(out)
}
