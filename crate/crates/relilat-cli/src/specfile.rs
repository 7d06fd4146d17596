//! The on-disk system description: a TOML document carrying the component
//! count, the structure (in any of several equivalent notations), and the
//! joint lifetime model, so that an analysis is reproducible from one file.
//!
//! ```toml
//! n = 5
//!
//! [structure]
//! kind = "path_sets"
//! sets = [[1, 4], [2, 5], [1, 3, 5], [2, 3, 4]]
//!
//! [lifetimes]
//! kind = "independent"
//! marginals = [
//!     { kind = "exponential", rate = 1.0 },
//!     { kind = "exponential", rate = 1.0 },
//!     { kind = "weibull", shape = 1.5, scale = 2.0 },
//!     { kind = "exponential", rate = 1.0 },
//!     { kind = "empirical", knots = [[0.0, 1.0], [4.0, 0.0]] },
//! ]
//! ```
//!
//! Components are written 1-based, matching the usual component numbering;
//! weights use TOML's `inf` literal for infinity. Weight lists may be
//! partial: an unlisted subset inherits the largest weight of any listed
//! subset it contains (0 if none), and an explicit entry always wins, with
//! monotonicity checked after the fill-in.

use serde::{Deserialize, Serialize};

use relilat_core::latpoly::LatPolyError;
use relilat_core::lifetimes::{JointLifetimeModel, MarginalLifetime};
use relilat_core::reliability::SystemModel;
use relilat_core::setfun::{SetFunction, Subset, MAX_COMPONENTS};
use relilat_core::structure::{StructureError, SystemStructure};
use relilat_core::{SymmetricProfile, WeightedLatticePolynomial};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub n: usize,
    pub structure: StructureSpec,
    pub lifetimes: LifetimesSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StructureSpec {
    PathSets { sets: Vec<Vec<usize>> },
    CutSets { sets: Vec<Vec<usize>> },
    /// 2^n characters of 0/1, subset masks ascending (bit i = component i+1).
    TruthTable { bits: String },
    #[serde(rename = "kofn")]
    KOfN { k: usize },
    Series,
    Parallel,
    Weights { entries: Vec<WeightEntry> },
    WeightedMin { bounds: Vec<f64> },
    WeightedMax { bounds: Vec<f64> },
    Symmetric { levels: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub set: Vec<usize>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LifetimesSpec {
    Independent { marginals: Vec<MarginalSpec> },
    DiscreteJoint { atoms: Vec<AtomSpec> },
    Comonotone { marginals: Vec<MarginalSpec> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MarginalSpec {
    Exponential { rate: f64 },
    Weibull { shape: f64, scale: f64 },
    Empirical { knots: Vec<(f64, f64)> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub lifetimes: Vec<f64>,
    pub prob: f64,
}

/// Formats a subset with 1-based members for diagnostics: `{1 3}`, `{}`.
pub fn fmt_subset(s: Subset) -> String {
    let members: Vec<String> = s.members().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", members.join(" "))
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, CliError> {
        toml::from_str(text).map_err(|e| {
            // The toml error renders multi-line with a source snippet; the
            // first line carries the position, the message the reason.
            let position = e.to_string().lines().next().unwrap_or_default().to_string();
            CliError::Parse(format!("{position}: {}", e.message()))
        })
    }

    /// Canonical text: the parsed document re-emitted, so formatting and
    /// comments are gone but every declared value survives bit for bit.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("spec files always serialize")
    }

    pub fn build(&self) -> Result<(SystemModel, JointLifetimeModel), CliError> {
        if self.n == 0 || self.n > MAX_COMPONENTS {
            return Err(CliError::Validation(format!(
                "n must be between 1 and {MAX_COMPONENTS}, got {}",
                self.n
            )));
        }
        let system = self.build_system()?;
        let lifetimes = self.build_lifetimes()?;
        if system.n() != lifetimes.n() {
            return Err(CliError::Validation(format!(
                "lifetimes describe {} components but n = {}",
                lifetimes.n(),
                system.n()
            )));
        }
        Ok((system, lifetimes))
    }

    pub fn structure_kind(&self) -> &'static str {
        match &self.structure {
            StructureSpec::PathSets { .. } => "path_sets",
            StructureSpec::CutSets { .. } => "cut_sets",
            StructureSpec::TruthTable { .. } => "truth_table",
            StructureSpec::KOfN { .. } => "kofn",
            StructureSpec::Series => "series",
            StructureSpec::Parallel => "parallel",
            StructureSpec::Weights { .. } => "weights",
            StructureSpec::WeightedMin { .. } => "weighted_min",
            StructureSpec::WeightedMax { .. } => "weighted_max",
            StructureSpec::Symmetric { .. } => "symmetric",
        }
    }

    pub fn lifetimes_kind(&self) -> &'static str {
        match &self.lifetimes {
            LifetimesSpec::Independent { .. } => "independent",
            LifetimesSpec::DiscreteJoint { .. } => "discrete_joint",
            LifetimesSpec::Comonotone { .. } => "comonotone",
        }
    }

    fn build_system(&self) -> Result<SystemModel, CliError> {
        let n = self.n;
        match &self.structure {
            StructureSpec::PathSets { sets } => {
                let sets = parse_subsets(n, sets)?;
                Ok(SystemModel::Structure(
                    SystemStructure::from_path_sets(n, &sets).map_err(structure_error)?,
                ))
            }
            StructureSpec::CutSets { sets } => {
                let sets = parse_subsets(n, sets)?;
                Ok(SystemModel::Structure(
                    SystemStructure::from_cut_sets(n, &sets).map_err(structure_error)?,
                ))
            }
            StructureSpec::TruthTable { bits } => {
                if bits.len() != 1 << n {
                    return Err(CliError::Validation(format!(
                        "truth_table needs 2^{n} = {} bits, got {}",
                        1usize << n,
                        bits.len()
                    )));
                }
                let mut values = Vec::with_capacity(bits.len());
                for (i, c) in bits.chars().enumerate() {
                    match c {
                        '0' => values.push(false),
                        '1' => values.push(true),
                        other => {
                            return Err(CliError::Validation(format!(
                                "truth_table bit {i} is '{other}', expected 0 or 1"
                            )))
                        }
                    }
                }
                let v = relilat_core::BoolSetFunction::new(n, values)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                Ok(SystemModel::Structure(
                    SystemStructure::new(v).map_err(structure_error)?,
                ))
            }
            StructureSpec::KOfN { k } => Ok(SystemModel::Structure(
                SystemStructure::k_of_n(n, *k).map_err(structure_error)?,
            )),
            StructureSpec::Series => Ok(SystemModel::Structure(
                SystemStructure::series(n).map_err(structure_error)?,
            )),
            StructureSpec::Parallel => Ok(SystemModel::Structure(
                SystemStructure::parallel(n).map_err(structure_error)?,
            )),
            StructureSpec::Weights { entries } => {
                let w = fill_in_weights(n, entries)?;
                Ok(SystemModel::Wlp(
                    WeightedLatticePolynomial::from_weights(w).map_err(latpoly_error)?,
                ))
            }
            StructureSpec::WeightedMin { bounds } => {
                check_bounds_len(n, bounds)?;
                Ok(SystemModel::Wlp(
                    WeightedLatticePolynomial::weighted_min(bounds).map_err(latpoly_error)?,
                ))
            }
            StructureSpec::WeightedMax { bounds } => {
                check_bounds_len(n, bounds)?;
                Ok(SystemModel::Wlp(
                    WeightedLatticePolynomial::weighted_max(bounds).map_err(latpoly_error)?,
                ))
            }
            StructureSpec::Symmetric { levels } => {
                if levels.len() != n + 1 {
                    return Err(CliError::Validation(format!(
                        "symmetric needs n + 1 = {} levels, got {}",
                        n + 1,
                        levels.len()
                    )));
                }
                let profile = SymmetricProfile::new(levels.clone()).map_err(latpoly_error)?;
                Ok(SystemModel::Wlp(profile.to_wlp()))
            }
        }
    }

    fn build_lifetimes(&self) -> Result<JointLifetimeModel, CliError> {
        let lifetime_error = |e: relilat_core::LifetimeError| CliError::Validation(e.to_string());
        match &self.lifetimes {
            LifetimesSpec::Independent { marginals } => {
                JointLifetimeModel::independent(build_marginals(marginals)?).map_err(lifetime_error)
            }
            LifetimesSpec::Comonotone { marginals } => {
                JointLifetimeModel::comonotone(build_marginals(marginals)?).map_err(lifetime_error)
            }
            LifetimesSpec::DiscreteJoint { atoms } => JointLifetimeModel::discrete_joint(
                atoms.iter().map(|a| (a.lifetimes.clone(), a.prob)).collect(),
            )
            .map_err(lifetime_error),
        }
    }
}

fn build_marginals(specs: &[MarginalSpec]) -> Result<Vec<MarginalLifetime>, CliError> {
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let built = match spec {
                MarginalSpec::Exponential { rate } => MarginalLifetime::exponential(*rate),
                MarginalSpec::Weibull { shape, scale } => {
                    MarginalLifetime::weibull(*shape, *scale)
                }
                MarginalSpec::Empirical { knots } => {
                    MarginalLifetime::piecewise_empirical(knots.clone())
                }
            };
            built.map_err(|e| CliError::Validation(format!("marginal {}: {e}", i + 1)))
        })
        .collect()
}

fn parse_subsets(n: usize, sets: &[Vec<usize>]) -> Result<Vec<Subset>, CliError> {
    sets.iter().map(|s| parse_subset(n, s)).collect()
}

fn parse_subset(n: usize, members: &[usize]) -> Result<Subset, CliError> {
    let mut mask = 0u32;
    for &m in members {
        if m == 0 || m > n {
            return Err(CliError::Validation(format!(
                "component {m} is outside 1..={n}"
            )));
        }
        mask |= 1 << (m - 1);
    }
    Ok(Subset::from_mask(mask))
}

fn check_bounds_len(n: usize, bounds: &[f64]) -> Result<(), CliError> {
    if bounds.len() != n {
        return Err(CliError::Validation(format!(
            "need one bound per component ({n}), got {}",
            bounds.len()
        )));
    }
    Ok(())
}

/// Expands a partial weight list into a full table: explicit entries as
/// given, everything else the largest listed weight under it (or 0).
fn fill_in_weights(n: usize, entries: &[WeightEntry]) -> Result<SetFunction<f64>, CliError> {
    let size = 1usize << n;
    let mut explicit: Vec<Option<f64>> = vec![None; size];
    for e in entries {
        let mask = parse_subset(n, &e.set)?.mask() as usize;
        if explicit[mask].is_some() {
            return Err(CliError::Validation(format!(
                "subset {} has two weight entries",
                fmt_subset(Subset::from_mask(mask as u32))
            )));
        }
        explicit[mask] = Some(e.value);
    }
    let mut table = vec![0.0f64; size];
    for a in 0..size {
        let mut inherited = 0.0f64;
        for i in 0..n {
            if a >> i & 1 == 1 {
                inherited = inherited.max(table[a ^ (1 << i)]);
            }
        }
        table[a] = explicit[a].unwrap_or(inherited);
    }
    Ok(SetFunction::new(n, table).expect("length matches by construction"))
}

fn structure_error(e: StructureError) -> CliError {
    let text = match &e {
        StructureError::NotSemicoherent(report) => match report.first_violation {
            Some((a, b)) => format!(
                "structure is not monotone: state {} works but superset {} fails",
                fmt_subset(a),
                fmt_subset(b)
            ),
            None => e.to_string(),
        },
        other => other.to_string(),
    };
    CliError::Validation(text)
}

fn latpoly_error(e: LatPolyError) -> CliError {
    let text = match e {
        LatPolyError::NotMonotone { smaller, larger, smaller_value, larger_value } => format!(
            "weights are not monotone: w({}) = {smaller_value} exceeds w({}) = {larger_value}",
            fmt_subset(smaller),
            fmt_subset(larger)
        ),
        LatPolyError::InvalidWeight { at, value } => {
            format!("weight {value} at subset {} is not in [0, inf]", fmt_subset(at))
        }
        other => other.to_string(),
    };
    CliError::Validation(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BRIDGE: &str = r#"
n = 5

[structure]
kind = "path_sets"
sets = [[1, 4], [2, 5], [1, 3, 5], [2, 3, 4]]

[lifetimes]
kind = "independent"
marginals = [
    { kind = "exponential", rate = 1.0 },
    { kind = "exponential", rate = 1.0 },
    { kind = "exponential", rate = 1.0 },
    { kind = "exponential", rate = 1.0 },
    { kind = "exponential", rate = 1.0 },
]
"#;

    #[test]
    fn bridge_paths_round_trip() {
        let spec = SpecFile::parse(BRIDGE).unwrap();
        let (system, lifetimes) = spec.build().unwrap();
        assert_eq!(lifetimes.n(), 5);
        let SystemModel::Structure(s) = &system else { panic!("expected a plain structure") };
        let paths: Vec<Subset> = ["14", "25", "135", "234"]
            .iter()
            .map(|t| Subset::from_members(t.chars().map(|c| c.to_digit(10).unwrap() as usize - 1)))
            .collect();
        let mut expected = paths.clone();
        expected.sort_by_key(|s| (s.card(), s.mask()));
        assert_eq!(s.minimal_paths(), expected.as_slice());
    }

    #[test]
    fn canonical_text_reparses_to_the_same_objects() {
        let spec = SpecFile::parse(BRIDGE).unwrap();
        let again = SpecFile::parse(&spec.canonical()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.build().unwrap(), again.build().unwrap());
    }

    #[test]
    fn weight_fill_in_uses_containment_and_explicit_wins() {
        let text = r#"
n = 2

[structure]
kind = "weights"
entries = [
    { set = [1], value = 1.0 },
    { set = [1, 2], value = inf },
]

[lifetimes]
kind = "independent"
marginals = [
    { kind = "exponential", rate = 1.0 },
    { kind = "exponential", rate = 1.0 },
]
"#;
        let (system, _) = SpecFile::parse(text).unwrap().build().unwrap();
        let SystemModel::Wlp(p) = system else { panic!("expected weighted") };
        let w = p.weights().values();
        assert_eq!(w, &[0.0, 1.0, 0.0, f64::INFINITY]);
    }

    #[test]
    fn non_monotone_weights_name_the_pair() {
        let text = r#"
n = 2

[structure]
kind = "weights"
entries = [
    { set = [1], value = 2.0 },
    { set = [1, 2], value = 1.0 },
]

[lifetimes]
kind = "independent"
marginals = [
    { kind = "exponential", rate = 1.0 },
    { kind = "exponential", rate = 1.0 },
]
"#;
        let err = SpecFile::parse(text).unwrap().build().unwrap_err();
        let CliError::Validation(msg) = err else { panic!("expected validation error") };
        assert!(msg.contains("w({1}) = 2") && msg.contains("w({1 2}) = 1"), "{msg}");
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        let err = SpecFile::parse("n = \"five\"").unwrap_err();
        let CliError::Parse(msg) = err else { panic!("expected parse error") };
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn kofn_and_marginal_kinds() {
        let text = r#"
n = 3

[structure]
kind = "kofn"
k = 2

[lifetimes]
kind = "comonotone"
marginals = [
    { kind = "weibull", shape = 1.5, scale = 2.0 },
    { kind = "empirical", knots = [[0.0, 1.0], [1.0, 0.25], [3.0, 0.0]] },
    { kind = "exponential", rate = 0.5 },
]
"#;
        let (system, lifetimes) = SpecFile::parse(text).unwrap().build().unwrap();
        let SystemModel::Structure(s) = &system else { panic!() };
        assert_eq!(s.minimal_paths().len(), 3);
        assert!(!lifetimes.is_independent());
    }

    #[test]
    fn dimension_mismatch_is_caught() {
        let text = r#"
n = 3

[structure]
kind = "series"

[lifetimes]
kind = "independent"
marginals = [{ kind = "exponential", rate = 1.0 }]
"#;
        assert!(matches!(
            SpecFile::parse(text).unwrap().build(),
            Err(CliError::Validation(_))
        ));
    }
}
