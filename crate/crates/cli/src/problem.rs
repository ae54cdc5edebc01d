//! Problem files: JSON documents naming states, acts, utilities, credal sets
//! and the preferences, panels and mechanisms built from them.
//!
//! Every number is a string holding an integer or `numerator/denominator`.
//! Parsing resolves all references and runs each constructor's checks;
//! failures carry the JSON path of the offending entry.

use hopeprep_core::aggregation::ExpertPanel;
use hopeprep_core::mechanism::DirectMechanism;
use hopeprep_core::rational::{format_rational, parse_rational};
use hopeprep_core::{
    Act, AffineUtility, AlphaMeu, Bewley, CredalSet, HopeAndPrepare, NascimentoRiella, Outcome,
    PreferenceSpec, ProbabilityVector, Rational, StateSpace, Twofold,
};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

impl ProblemError {
    pub fn path(&self) -> Option<&str> {
        match self {
            Self::Json(_) => None,
            Self::Invalid { path, .. } => Some(path),
        }
    }
}

fn invalid(path: impl Into<String>, message: impl ToString) -> ProblemError {
    ProblemError::Invalid {
        path: path.into(),
        message: message.to_string(),
    }
}

fn one() -> usize {
    1
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// An outcome: a bare rational for one-dimensional outcomes, otherwise a
/// list of coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawOutcome {
    Scalar(String),
    Vector(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawUtility {
    pub weights: Vec<String>,
    #[serde(default = "zero_string")]
    pub offset: String,
}

fn zero_string() -> String {
    "0".into()
}

/// A preference over named credal sets. A missing utility means `u(x) = x`
/// on one-dimensional outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawSpec {
    HopeAndPrepare {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        utility: Option<String>,
        pessimistic: String,
        optimistic: String,
        /// Admit disjoint sets, which the representation itself rules out.
        #[serde(default, skip_serializing_if = "is_false")]
        allow_disjoint: bool,
    },
    Bewley {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        utility: Option<String>,
        scenarios: String,
    },
    Twofold {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        utility: Option<String>,
        pessimistic: String,
        optimistic: String,
    },
    Nr {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        utility: Option<String>,
        class: Vec<String>,
    },
    AlphaMeu {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        utility: Option<String>,
        pessimistic: String,
        optimistic: String,
        alpha: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPanel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility: Option<String>,
    pub experts: Vec<String>,
}

/// A direct mechanism. `outcomes` lists one outcome per full type profile,
/// in lexicographic order with the first agent most significant.
/// `utilities[i][t]` names the utility of agent `i` with type `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMechanism {
    pub agents: Vec<String>,
    pub types: Vec<Vec<String>>,
    pub utilities: Vec<Vec<String>>,
    pub outcomes: Vec<RawOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub states: Vec<String>,
    #[serde(default = "one")]
    pub outcome_dimension: usize,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub utilities: IndexMap<String, RawUtility>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub acts: IndexMap<String, Vec<RawOutcome>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub credal_sets: IndexMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub specs: IndexMap<String, RawSpec>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub panels: IndexMap<String, RawPanel>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub mechanisms: IndexMap<String, RawMechanism>,
}

/// A fully resolved problem file.
#[derive(Debug, Clone)]
pub struct Problem {
    pub raw: RawProblem,
    pub space: Option<StateSpace>,
    pub utilities: IndexMap<String, AffineUtility>,
    pub acts: IndexMap<String, Act>,
    pub credal_sets: IndexMap<String, CredalSet>,
    pub specs: IndexMap<String, PreferenceSpec>,
    pub panels: IndexMap<String, ExpertPanel>,
    pub mechanisms: IndexMap<String, DirectMechanism>,
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let raw: RawProblem = serde_json::from_str(text)?;
    Resolver::new(raw).resolve()
}

/// The canonical text of a problem: pretty JSON, reduced rationals, scalar
/// outcomes written bare, default fields omitted.
pub fn canonical_text(problem: &Problem) -> String {
    let mut s = serde_json::to_string_pretty(&problem.raw).expect("plain data serializes");
    s.push('\n');
    s
}

fn rational(path: &str, s: &str) -> Result<Rational, ProblemError> {
    parse_rational(s).map_err(|e| invalid(path, e))
}

fn canonical(r: &Rational) -> String {
    format_rational(r)
}

struct Resolver {
    raw: RawProblem,
    problem: Problem,
}

impl Resolver {
    fn new(raw: RawProblem) -> Self {
        let problem = Problem {
            raw: raw.clone(),
            space: None,
            utilities: IndexMap::new(),
            acts: IndexMap::new(),
            credal_sets: IndexMap::new(),
            specs: IndexMap::new(),
            panels: IndexMap::new(),
            mechanisms: IndexMap::new(),
        };
        Self { raw, problem }
    }

    fn resolve(mut self) -> Result<Problem, ProblemError> {
        let dim = self.raw.outcome_dimension;
        if dim == 0 {
            return Err(invalid("outcome_dimension", "must be at least 1"));
        }
        if !self.raw.states.is_empty() {
            let space = StateSpace::new(self.raw.states.clone()).map_err(|e| invalid("states", e))?;
            self.problem.space = Some(space);
        }
        self.utilities()?;
        self.acts()?;
        self.credal_sets()?;
        self.specs()?;
        self.panels()?;
        self.mechanisms()?;
        Ok(self.problem)
    }

    fn n_states(&self, path: &str) -> Result<usize, ProblemError> {
        self.problem
            .space
            .as_ref()
            .map(StateSpace::len)
            .ok_or_else(|| invalid(path, "requires a non-empty `states` list"))
    }

    fn utilities(&mut self) -> Result<(), ProblemError> {
        let dim = self.raw.outcome_dimension;
        for (name, u) in &self.raw.utilities {
            let path = format!("utilities.{name}");
            if u.weights.len() != dim {
                return Err(invalid(
                    format!("{path}.weights"),
                    format!("expected {dim} weights, found {}", u.weights.len()),
                ));
            }
            let weights = u
                .weights
                .iter()
                .enumerate()
                .map(|(i, w)| rational(&format!("{path}.weights[{i}]"), w))
                .collect::<Result<Vec<_>, _>>()?;
            let offset = rational(&format!("{path}.offset"), &u.offset)?;
            let utility = AffineUtility::new(weights.clone(), offset.clone()).map_err(|e| invalid(&path, e))?;
            let entry = self.problem.raw.utilities.get_mut(name).unwrap();
            entry.weights = weights.iter().map(canonical).collect();
            entry.offset = canonical(&offset);
            self.problem.utilities.insert(name.clone(), utility);
        }
        Ok(())
    }

    fn outcome(&self, path: &str, raw: &RawOutcome) -> Result<(Outcome, RawOutcome), ProblemError> {
        let dim = self.raw.outcome_dimension;
        let coords = match raw {
            RawOutcome::Scalar(s) => vec![rational(path, s)?],
            RawOutcome::Vector(v) => v
                .iter()
                .enumerate()
                .map(|(i, s)| rational(&format!("{path}[{i}]"), s))
                .collect::<Result<Vec<_>, _>>()?,
        };
        if coords.len() != dim {
            return Err(invalid(path, format!("expected {dim} coordinates, found {}", coords.len())));
        }
        let canon = if dim == 1 {
            RawOutcome::Scalar(canonical(&coords[0]))
        } else {
            RawOutcome::Vector(coords.iter().map(canonical).collect())
        };
        Ok((Outcome::new(coords).map_err(|e| invalid(path, e))?, canon))
    }

    fn acts(&mut self) -> Result<(), ProblemError> {
        for (name, outcomes) in &self.raw.acts {
            let path = format!("acts.{name}");
            let n = self.n_states(&path)?;
            if outcomes.len() != n {
                return Err(invalid(&path, format!("expected {n} outcomes, found {}", outcomes.len())));
            }
            let mut resolved = Vec::new();
            let mut canon = Vec::new();
            for (i, o) in outcomes.iter().enumerate() {
                let (x, c) = self.outcome(&format!("{path}[{i}]"), o)?;
                resolved.push(x);
                canon.push(c);
            }
            let act = Act::new(resolved).map_err(|e| invalid(&path, e))?;
            self.problem.raw.acts.insert(name.clone(), canon);
            self.problem.acts.insert(name.clone(), act);
        }
        Ok(())
    }

    fn credal_sets(&mut self) -> Result<(), ProblemError> {
        for (name, generators) in &self.raw.credal_sets {
            let path = format!("credal_sets.{name}");
            let n = self.n_states(&path)?;
            let mut points = Vec::new();
            let mut canon = Vec::new();
            for (i, g) in generators.iter().enumerate() {
                let gpath = format!("{path}[{i}]");
                if g.len() != n {
                    return Err(invalid(&gpath, format!("expected {n} probabilities, found {}", g.len())));
                }
                let mass = g
                    .iter()
                    .enumerate()
                    .map(|(j, s)| rational(&format!("{gpath}[{j}]"), s))
                    .collect::<Result<Vec<_>, _>>()?;
                canon.push(mass.iter().map(canonical).collect());
                points.push(ProbabilityVector::new(mass).map_err(|e| invalid(&gpath, e))?);
            }
            let set = CredalSet::new(points).map_err(|e| invalid(&path, e))?;
            self.problem.raw.credal_sets.insert(name.clone(), canon);
            self.problem.credal_sets.insert(name.clone(), set);
        }
        Ok(())
    }

    fn utility(&self, path: &str, name: &Option<String>) -> Result<AffineUtility, ProblemError> {
        match name {
            Some(n) => self
                .problem
                .utilities
                .get(n)
                .cloned()
                .ok_or_else(|| invalid(format!("{path}.utility"), format!("unknown utility `{n}`"))),
            None if self.raw.outcome_dimension == 1 => Ok(AffineUtility::identity()),
            None => Err(invalid(
                format!("{path}.utility"),
                "required when outcomes have more than one coordinate",
            )),
        }
    }

    fn set(&self, path: &str, name: &str) -> Result<CredalSet, ProblemError> {
        self.problem
            .credal_sets
            .get(name)
            .cloned()
            .ok_or_else(|| invalid(path, format!("unknown credal set `{name}`")))
    }

    fn specs(&mut self) -> Result<(), ProblemError> {
        for (name, raw) in &self.raw.specs {
            let path = format!("specs.{name}");
            let field = |f: &str| format!("{path}.{f}");
            let spec: PreferenceSpec = match raw {
                RawSpec::HopeAndPrepare {
                    utility,
                    pessimistic,
                    optimistic,
                    allow_disjoint,
                } => {
                    let u = self.utility(&path, utility)?;
                    let c = self.set(&field("pessimistic"), pessimistic)?;
                    let d = self.set(&field("optimistic"), optimistic)?;
                    let built = if *allow_disjoint {
                        HopeAndPrepare::new_allowing_disjoint(u, c, d)
                    } else {
                        HopeAndPrepare::new(u, c, d)
                    };
                    built.map_err(|e| invalid(&path, e))?.into()
                }
                RawSpec::Bewley { utility, scenarios } => {
                    let u = self.utility(&path, utility)?;
                    Bewley::new(u, self.set(&field("scenarios"), scenarios)?).into()
                }
                RawSpec::Twofold {
                    utility,
                    pessimistic,
                    optimistic,
                } => {
                    let u = self.utility(&path, utility)?;
                    let c = self.set(&field("pessimistic"), pessimistic)?;
                    let d = self.set(&field("optimistic"), optimistic)?;
                    Twofold::new(u, c, d).map_err(|e| invalid(&path, e))?.into()
                }
                RawSpec::Nr { utility, class } => {
                    let u = self.utility(&path, utility)?;
                    let sets = class
                        .iter()
                        .enumerate()
                        .map(|(i, k)| self.set(&format!("{path}.class[{i}]"), k))
                        .collect::<Result<Vec<_>, _>>()?;
                    NascimentoRiella::new(u, sets).map_err(|e| invalid(&path, e))?.into()
                }
                RawSpec::AlphaMeu {
                    utility,
                    pessimistic,
                    optimistic,
                    alpha,
                } => {
                    let u = self.utility(&path, utility)?;
                    let c = self.set(&field("pessimistic"), pessimistic)?;
                    let d = self.set(&field("optimistic"), optimistic)?;
                    let a = rational(&field("alpha"), alpha)?;
                    if let Some(RawSpec::AlphaMeu { alpha, .. }) = self.problem.raw.specs.get_mut(name) {
                        *alpha = canonical(&a);
                    }
                    AlphaMeu::new(u, c, d, a).map_err(|e| invalid(&path, e))?.into()
                }
            };
            self.problem.specs.insert(name.clone(), spec);
        }
        Ok(())
    }

    fn panels(&mut self) -> Result<(), ProblemError> {
        for (name, raw) in &self.raw.panels {
            let path = format!("panels.{name}");
            let u = self.utility(&path, &raw.utility)?;
            let experts = raw
                .experts
                .iter()
                .enumerate()
                .map(|(i, k)| self.set(&format!("{path}.experts[{i}]"), k))
                .collect::<Result<Vec<_>, _>>()?;
            let panel = ExpertPanel::new(u, experts).map_err(|e| invalid(&path, e))?;
            self.problem.panels.insert(name.clone(), panel);
        }
        Ok(())
    }

    fn mechanisms(&mut self) -> Result<(), ProblemError> {
        for (name, raw) in &self.raw.mechanisms {
            let path = format!("mechanisms.{name}");
            let utilities = raw
                .utilities
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(t, u)| self.utility(&format!("{path}.utilities[{i}][{t}]"), &Some(u.clone())))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let expected: usize = raw.types.iter().map(Vec::len).product();
            if raw.outcomes.len() != expected || raw.types.is_empty() {
                return Err(invalid(
                    format!("{path}.outcomes"),
                    format!("expected {expected} outcomes, one per type profile, found {}", raw.outcomes.len()),
                ));
            }
            let mut outcomes = Vec::new();
            let mut canon = Vec::new();
            for (i, o) in raw.outcomes.iter().enumerate() {
                let (x, c) = self.outcome(&format!("{path}.outcomes[{i}]"), o)?;
                outcomes.push(x);
                canon.push(c);
            }
            let sizes: Vec<usize> = raw.types.iter().map(Vec::len).collect();
            let m = DirectMechanism::from_fn(raw.agents.clone(), raw.types.clone(), utilities, |profile| {
                let mut index = 0;
                for (t, k) in profile.iter().zip(&sizes) {
                    index = index * k + t;
                }
                Ok(outcomes[index].clone())
            })
            .map_err(|e| invalid(&path, e))?;
            if let Some(entry) = self.problem.raw.mechanisms.get_mut(name) {
                entry.outcomes = canon;
            }
            self.problem.mechanisms.insert(name.clone(), m);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopeprep_core::rational::rat;

    #[test]
    fn minimal_file_parses() {
        let p = parse_problem(r#"{"states": ["s"], "acts": {"f": ["1"]}}"#).unwrap();
        assert_eq!(p.acts.len(), 1);
    }

    #[test]
    fn probabilities_summing_to_two_name_the_generator() {
        let text = r#"{"states": ["a", "b"], "credal_sets": {"C": [["1/2", "1/2"], ["1", "1"]]}}"#;
        let err = parse_problem(text).unwrap_err();
        assert_eq!(err.path(), Some("credal_sets.C[1]"));
    }

    #[test]
    fn decimals_are_rejected() {
        let text = r#"{"states": ["a"], "acts": {"f": ["0.5"]}}"#;
        assert_eq!(parse_problem(text).unwrap_err().path(), Some("acts.f[0]"));
        let text = r#"{"states": ["a"], "acts": {"f": [0.5]}}"#;
        assert!(matches!(parse_problem(text).unwrap_err(), ProblemError::Json(_)));
    }

    #[test]
    fn unknown_reference_is_reported() {
        let text = r#"{"states": ["a"], "specs": {"s": {"type": "bewley", "scenarios": "K"}}}"#;
        assert_eq!(parse_problem(text).unwrap_err().path(), Some("specs.s.scenarios"));
    }

    #[test]
    fn disjoint_sets_need_the_flag() {
        let base = r#"{"states": ["a", "b"], "credal_sets": {"C": [["1", "0"]], "D": [["0", "1"]]},
            "specs": {"s": {"type": "hope_and_prepare", "pessimistic": "C", "optimistic": "D"FLAG}}}"#;
        assert!(parse_problem(&base.replace("FLAG", "")).is_err());
        assert!(parse_problem(&base.replace("FLAG", r#", "allow_disjoint": true"#)).is_ok());
    }

    #[test]
    fn canonical_text_is_stable() {
        let text = r#"{"states": ["a", "b"], "acts": {"f": [["2/4"], "+3"]},
            "credal_sets": {"C": [["2/4", "1/2"]]}, "utilities": {"u": {"weights": ["6/3"]}}}"#;
        let once = canonical_text(&parse_problem(text).unwrap());
        let twice = canonical_text(&parse_problem(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.contains("\"1/2\"") && once.contains("\"3\""));
        let p = parse_problem(&once).unwrap();
        assert_eq!(p.utilities["u"].weights(), &[rat(2, 1)]);
    }
}
