//! Direct mechanisms and obvious manipulations.
//!
//! From agent `i`'s point of view the states are the type profiles of the
//! other agents, enumerated lexicographically: agents in index order, the
//! earliest agent most significant, types in declaration order. A report
//! induces an act over these states. Comparing two reports by both their
//! worst and best outcomes is the hope-and-prepare comparison with both sets
//! equal to the full simplex.

use serde::Serialize;

use crate::act::{apply_utility, Act, AffineUtility, Outcome, StateSpace, UtilityProfile};
use crate::credal::full_simplex;
use crate::criteria::{HopeAndPrepare, Relation};
use crate::error::{Error, Result};
use crate::rational::{serde_rational, Rational};

/// Label of the single state seen by the only agent of a one-agent mechanism.
pub const DUMMY_STATE: &str = "(none)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectMechanism {
    agents: Vec<String>,
    type_spaces: Vec<Vec<String>>,
    /// Outcomes of all full type profiles, in lexicographic order.
    outcomes: Vec<Outcome>,
    /// `utilities[i][t]` is agent `i`'s utility when of type `t`.
    utilities: Vec<Vec<AffineUtility>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMechanism(msg.into())
}

impl DirectMechanism {
    /// Builds the outcome table by calling `outcome` on every full type
    /// profile in lexicographic order.
    pub fn from_fn(
        agents: Vec<String>,
        type_spaces: Vec<Vec<String>>,
        utilities: Vec<Vec<AffineUtility>>,
        mut outcome: impl FnMut(&[usize]) -> Result<Outcome>,
    ) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::Empty("agent list"));
        }
        if type_spaces.len() != agents.len() || utilities.len() != agents.len() {
            return Err(invalid("one type space and one utility list per agent required"));
        }
        for (i, (types, us)) in type_spaces.iter().zip(&utilities).enumerate() {
            if types.is_empty() {
                return Err(invalid(format!("agent {} has no types", agents[i])));
            }
            if us.len() != types.len() {
                return Err(invalid(format!("agent {} needs one utility per type", agents[i])));
            }
            StateSpace::new(types.clone())
                .map_err(|_| invalid(format!("agent {} has duplicate types", agents[i])))?;
        }
        let sizes: Vec<usize> = type_spaces.iter().map(Vec::len).collect();
        let outcomes = lexicographic(&sizes)
            .iter()
            .map(|p| outcome(p))
            .collect::<Result<Vec<_>>>()?;
        let dim = outcomes[0].dim();
        if outcomes.iter().any(|o| o.dim() != dim) {
            return Err(invalid("outcomes differ in dimension"));
        }
        if utilities.iter().flatten().any(|u| u.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: utilities.iter().flatten().find(|u| u.dim() != dim).unwrap().dim(),
            });
        }
        Ok(Self {
            agents,
            type_spaces,
            outcomes,
            utilities,
        })
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn type_spaces(&self) -> &[Vec<String>] {
        &self.type_spaces
    }

    pub fn utility(&self, agent: usize, true_type: usize) -> &AffineUtility {
        &self.utilities[agent][true_type]
    }

    fn check(&self, agent: usize, types: &[usize]) -> Result<()> {
        let space = self
            .type_spaces
            .get(agent)
            .ok_or_else(|| invalid(format!("no agent with index {agent}")))?;
        for &t in types {
            if t >= space.len() {
                return Err(invalid(format!("agent {} has no type {t}", self.agents[agent])));
            }
        }
        Ok(())
    }

    pub fn outcome(&self, profile: &[usize]) -> &Outcome {
        let mut index = 0;
        for (t, space) in profile.iter().zip(&self.type_spaces) {
            index = index * space.len() + t;
        }
        &self.outcomes[index]
    }

    /// Type profiles of the agents other than `agent`, lexicographically.
    fn others(&self, agent: usize) -> Vec<Vec<usize>> {
        let sizes: Vec<usize> = (0..self.agents.len())
            .filter(|&j| j != agent)
            .map(|j| self.type_spaces[j].len())
            .collect();
        lexicographic(&sizes)
    }

    /// The state labels `agent` faces, in order.
    pub fn state_labels(&self, agent: usize) -> Vec<String> {
        let others: Vec<usize> = (0..self.agents.len()).filter(|&j| j != agent).collect();
        if others.is_empty() {
            return vec![DUMMY_STATE.to_string()];
        }
        self.others(agent)
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&others)
                    .map(|(t, &j)| format!("{}={}", self.agents[j], self.type_spaces[j][*t]))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    }

    /// The act obtained by `agent` reporting `report`.
    pub fn induced_act(&self, agent: usize, report: usize) -> Result<(StateSpace, Act)> {
        self.check(agent, &[report])?;
        let outcomes = self
            .others(agent)
            .iter()
            .map(|rest| {
                let mut full = rest.clone();
                full.insert(agent, report);
                self.outcome(&full).clone()
            })
            .collect();
        Ok((StateSpace::new(self.state_labels(agent))?, Act::new(outcomes)?))
    }

    fn induced_profile(&self, agent: usize, true_type: usize, report: usize) -> Result<UtilityProfile> {
        let (_, act) = self.induced_act(agent, report)?;
        apply_utility(self.utility(agent, true_type), &act)
    }
}

fn lexicographic(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in sizes {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..k).map(move |t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    out
}

/// Whether reporting `a` beats reporting `b` for `agent` of type
/// `true_type`, in both the worst and the best case over the others' types.
///
/// Computed through the hope-and-prepare comparison over the full simplex
/// and directly from state-wise minima and maxima; the two must agree.
pub fn hp_dominates_report(
    m: &DirectMechanism,
    agent: usize,
    true_type: usize,
    a: usize,
    b: usize,
) -> Result<bool> {
    m.check(agent, &[true_type, a, b])?;
    let (space, fa) = m.induced_act(agent, a)?;
    let (_, fb) = m.induced_act(agent, b)?;
    let spec = HopeAndPrepare::concordant(m.utility(agent, true_type).clone(), full_simplex(&space));
    let via_hp = spec.compare(&fa, &fb)?.is_first_strict();
    let direct = direct_dominates_report(m, agent, true_type, a, b)?;
    assert_eq!(via_hp, direct, "full-simplex comparison disagrees with state extremes");
    Ok(via_hp)
}

/// Strict improvement of both the state-wise minimum and maximum.
pub fn direct_dominates_report(
    m: &DirectMechanism,
    agent: usize,
    true_type: usize,
    a: usize,
    b: usize,
) -> Result<bool> {
    m.check(agent, &[true_type, a, b])?;
    let pa = m.induced_profile(agent, true_type, a)?;
    let pb = m.induced_profile(agent, true_type, b)?;
    Ok(pa.min() > pb.min() && pa.max() > pb.max())
}

/// One (agent, true type, misreport) line of the audit.
///
/// `worst_case_improves` flags a misreport whose lowest utility beats the
/// lowest utility of truth-telling; `best_case_improves` does the same for
/// the highest. Either flag marks an obvious manipulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManipulationRow {
    pub agent: String,
    pub true_type: String,
    pub misreport: String,
    #[serde(with = "serde_rational")]
    pub min_truth: Rational,
    #[serde(with = "serde_rational")]
    pub max_truth: Rational,
    #[serde(with = "serde_rational")]
    pub min_misreport: Rational,
    #[serde(with = "serde_rational")]
    pub max_misreport: Rational,
    pub worst_case_improves: bool,
    pub best_case_improves: bool,
}

impl ManipulationRow {
    pub fn is_obvious_manipulation(&self) -> bool {
        self.worst_case_improves || self.best_case_improves
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManipulabilityAudit {
    /// For each agent, the labels of the states it faces, in order.
    pub state_orders: Vec<Vec<String>>,
    pub rows: Vec<ManipulationRow>,
    pub non_obviously_manipulable: bool,
}

pub fn audit_obvious_manipulability(m: &DirectMechanism) -> Result<ManipulabilityAudit> {
    let mut rows = Vec::new();
    for (i, types) in m.type_spaces.iter().enumerate() {
        for truth in 0..types.len() {
            let pt = m.induced_profile(i, truth, truth)?;
            for lie in (0..types.len()).filter(|&t| t != truth) {
                let pl = m.induced_profile(i, truth, lie)?;
                rows.push(ManipulationRow {
                    agent: m.agents[i].clone(),
                    true_type: types[truth].clone(),
                    misreport: types[lie].clone(),
                    min_truth: pt.min().clone(),
                    max_truth: pt.max().clone(),
                    min_misreport: pl.min().clone(),
                    max_misreport: pl.max().clone(),
                    worst_case_improves: pl.min() > pt.min(),
                    best_case_improves: pl.max() > pt.max(),
                });
            }
        }
    }
    Ok(ManipulabilityAudit {
        state_orders: (0..m.agents.len()).map(|i| m.state_labels(i)).collect(),
        non_obviously_manipulable: !rows.iter().any(ManipulationRow::is_obvious_manipulation),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn names(prefix: &str, k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("{prefix}{i}")).collect()
    }

    fn scalar_mech(types: &[usize], table: impl Fn(&[usize]) -> i64) -> DirectMechanism {
        let agents = names("a", types.len());
        let spaces = types.iter().map(|&k| names("t", k)).collect();
        let utilities = types
            .iter()
            .map(|&k| vec![AffineUtility::identity(); k])
            .collect();
        DirectMechanism::from_fn(agents, spaces, utilities, |p| Ok(Outcome::scalar(int(table(p))))).unwrap()
    }

    #[test]
    fn induced_act_orders_states_lexicographically() {
        let m = scalar_mech(&[2, 2, 2], |p| (p[0] * 100 + p[1] * 10 + p[2]) as i64);
        let (space, act) = m.induced_act(1, 1).unwrap();
        assert_eq!(space.labels(), ["a1=t1,a3=t1", "a1=t1,a3=t2", "a1=t2,a3=t1", "a1=t2,a3=t2"]);
        let values: Vec<Rational> = act.outcomes().iter().map(|o| o.coords()[0].clone()).collect();
        assert_eq!(values, vec![int(10), int(11), int(110), int(111)]);
    }

    #[test]
    fn two_agents_give_two_states() {
        let m = scalar_mech(&[2, 2], |p| p[1] as i64);
        let (space, _) = m.induced_act(0, 0).unwrap();
        assert_eq!(space.len(), 2);
    }

    #[test]
    fn constant_mechanism_is_not_manipulable() {
        let m = scalar_mech(&[3, 2], |_| 4);
        let audit = audit_obvious_manipulability(&m).unwrap();
        assert!(audit.non_obviously_manipulable);
        assert_eq!(audit.rows.len(), 3 * 2 + 2);
    }

    #[test]
    fn dominance_needs_both_extremes() {
        // agent 1 reports t1: outcomes (1, 4); t2: (0, 5)
        let m = scalar_mech(&[2, 2], |p| match (p[0], p[1]) {
            (0, 0) => 1,
            (0, 1) => 4,
            (1, 0) => 0,
            _ => 5,
        });
        assert!(!hp_dominates_report(&m, 0, 0, 0, 1).unwrap());
        assert!(!hp_dominates_report(&m, 0, 0, 1, 0).unwrap());
        assert!(!hp_dominates_report(&m, 0, 0, 0, 0).unwrap());
        let audit = audit_obvious_manipulability(&m).unwrap();
        let row = &audit.rows[0];
        assert_eq!((row.true_type.as_str(), row.misreport.as_str()), ("t1", "t2"));
        assert!(row.best_case_improves && !row.worst_case_improves);
        assert!(!audit.non_obviously_manipulable);
    }

    #[test]
    fn statewise_better_report_dominates() {
        let m = scalar_mech(&[2, 3], |p| (p[0] * 10 + p[1]) as i64);
        assert!(hp_dominates_report(&m, 0, 0, 1, 0).unwrap());
    }

    #[test]
    fn single_agent_sees_one_state() {
        let m = scalar_mech(&[3], |p| p[0] as i64);
        let (space, act) = m.induced_act(0, 2).unwrap();
        assert_eq!(space.labels(), [DUMMY_STATE]);
        assert_eq!(act.n_states(), 1);
        assert!(hp_dominates_report(&m, 0, 0, 2, 1).unwrap());
    }

    #[test]
    fn bad_indices_rejected() {
        let m = scalar_mech(&[2, 2], |_| 0);
        assert!(m.induced_act(2, 0).is_err());
        assert!(m.induced_act(0, 5).is_err());
    }
}
