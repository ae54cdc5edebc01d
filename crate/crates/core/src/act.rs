//! States, outcomes, affine utilities and acts.
//!
//! Outcomes are points of `Q^d`; the outcome space is implicitly the convex
//! hull of whatever points are in play, so statewise mixtures never leave it.

use std::collections::HashSet;
use std::ops::Index;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{is_unit_interval, one, serde_rational, serde_rational_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpace {
    labels: Vec<String>,
}

impl StateSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("state space"));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateState(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// States named `s1..sn`.
    pub fn anonymous(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("s{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Outcome(#[serde(with = "serde_rational_vec")] Vec<Rational>);

impl Outcome {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyOutcome);
        }
        Ok(Self(coords))
    }

    pub fn scalar(x: Rational) -> Self {
        Self(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    fn mix(&self, other: &Outcome, alpha: &Rational) -> Outcome {
        let beta = one() - alpha;
        Outcome(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| alpha * a + &beta * b)
                .collect(),
        )
    }
}

/// A non-constant affine functional `x -> weights . x + offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineUtility {
    #[serde(with = "serde_rational_vec")]
    weights: Vec<Rational>,
    #[serde(with = "serde_rational")]
    offset: Rational,
}

impl AffineUtility {
    pub fn new(weights: Vec<Rational>, offset: Rational) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyOutcome);
        }
        if weights.iter().all(Zero::is_zero) {
            return Err(Error::ConstantUtility);
        }
        Ok(Self { weights, offset })
    }

    /// `u(x) = x` on the real line.
    pub fn identity() -> Self {
        Self {
            weights: vec![one()],
            offset: Rational::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn value(&self, x: &Outcome) -> Result<Rational> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(x.coords())
            .fold(self.offset.clone(), |acc, (w, c)| acc + w * c))
    }

    /// An outcome with utility `level`: all coordinates zero except the first
    /// one carrying a nonzero weight.
    pub fn outcome_with_value(&self, level: &Rational) -> Outcome {
        let pivot = self
            .weights
            .iter()
            .position(|w| !w.is_zero())
            .expect("non-constant utility");
        let mut coords = vec![Rational::zero(); self.dim()];
        coords[pivot] = (level - &self.offset) / &self.weights[pivot];
        Outcome(coords)
    }

    /// The act whose utility profile is `profile`.
    pub fn realize(&self, profile: &UtilityProfile) -> Act {
        Act {
            outcomes: profile
                .values()
                .iter()
                .map(|v| self.outcome_with_value(v))
                .collect(),
        }
    }

    /// Representative of the positive-affine class: offset 0, first nonzero
    /// weight of magnitude 1.
    pub fn canonical(&self) -> AffineUtility {
        let scale = self
            .weights
            .iter()
            .find(|w| !w.is_zero())
            .expect("non-constant utility")
            .abs();
        AffineUtility {
            weights: self.weights.iter().map(|w| w / &scale).collect(),
            offset: Rational::zero(),
        }
    }

    /// True when `other = a * self + b` for some `a > 0`.
    pub fn is_equivalent(&self, other: &AffineUtility) -> bool {
        self.dim() == other.dim() && self.canonical().weights == other.canonical().weights
    }
}

/// Statewise utilities `u(f(s))` of an act.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UtilityProfile(#[serde(with = "serde_rational_vec")] Vec<Rational>);

impl UtilityProfile {
    pub fn new(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn constant(level: Rational, n: usize) -> Self {
        Self(vec![level; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, weights: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(weights)
            .fold(Rational::zero(), |acc, (v, w)| acc + v * w)
    }

    /// `scale * self + shift`, statewise.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> UtilityProfile {
        Self(self.0.iter().map(|v| scale * v + shift).collect())
    }

    /// `alpha * self + (1 - alpha) * other`, statewise.
    pub fn mix(&self, other: &UtilityProfile, alpha: &Rational) -> UtilityProfile {
        let beta = one() - alpha;
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| alpha * a + &beta * b)
                .collect(),
        )
    }

    pub fn min(&self) -> &Rational {
        self.0.iter().min().expect("non-empty profile")
    }

    pub fn max(&self) -> &Rational {
        self.0.iter().max().expect("non-empty profile")
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Strictly greater in every state.
    pub fn dominates(&self, other: &UtilityProfile) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a > b)
    }
}

impl Index<usize> for UtilityProfile {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for UtilityProfile {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

/// A simple act: one outcome per state, in state-space order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Act {
    outcomes: Vec<Outcome>,
}

impl Act {
    pub fn new(outcomes: Vec<Outcome>) -> Result<Self> {
        let first = outcomes.first().ok_or(Error::Empty("act"))?;
        let d = first.dim();
        if let Some(bad) = outcomes.iter().find(|o| o.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        Ok(Self { outcomes })
    }

    /// One-dimensional act with the given scalar outcomes.
    pub fn scalar(values: Vec<Rational>) -> Result<Self> {
        Self::new(values.into_iter().map(Outcome::scalar).collect())
    }

    pub fn n_states(&self) -> usize {
        self.outcomes.len()
    }

    pub fn dim(&self) -> usize {
        self.outcomes[0].dim()
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn is_constant(&self) -> bool {
        self.outcomes.windows(2).all(|w| w[0] == w[1])
    }

    fn check_compatible(&self, other: &Act) -> Result<()> {
        if self.n_states() != other.n_states() {
            return Err(Error::StateMismatch {
                expected: self.n_states(),
                found: other.n_states(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// `[alpha f + (1 - alpha) g](s) = alpha f(s) + (1 - alpha) g(s)`.
pub fn mix_acts(f: &Act, g: &Act, alpha: &Rational) -> Result<Act> {
    f.check_compatible(g)?;
    if !is_unit_interval(alpha) {
        return Err(Error::WeightOutOfRange(alpha.to_string()));
    }
    Ok(Act {
        outcomes: f
            .outcomes
            .iter()
            .zip(&g.outcomes)
            .map(|(a, b)| a.mix(b, alpha))
            .collect(),
    })
}

pub fn apply_utility(u: &AffineUtility, f: &Act) -> Result<UtilityProfile> {
    f.outcomes
        .iter()
        .map(|x| u.value(x))
        .collect::<Result<Vec<_>>>()
        .map(UtilityProfile)
}

pub fn constant_act(x: &Outcome, space: &StateSpace) -> Act {
    Act {
        outcomes: vec![x.clone(); space.len()],
    }
}

/// `u(f(s)) > u(g(s))` in every state.
pub fn statewise_dominates(u: &AffineUtility, f: &Act, g: &Act) -> Result<bool> {
    f.check_compatible(g)?;
    Ok(apply_utility(u, f)?.dominates(&apply_utility(u, g)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn scalar(vs: &[i64]) -> Act {
        Act::scalar(vs.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn state_space_rejects_duplicates_and_empty() {
        assert!(StateSpace::new(vec![]).is_err());
        assert_eq!(
            StateSpace::new(vec!["a".into(), "a".into()]),
            Err(Error::DuplicateState("a".into()))
        );
        assert_eq!(StateSpace::anonymous(3).unwrap().len(), 3);
    }

    #[test]
    fn mixing_with_unit_weight_is_identity() {
        let f = scalar(&[3, 0]);
        let g = scalar(&[0, 3]);
        assert_eq!(mix_acts(&f, &g, &one()).unwrap(), f);
    }

    #[test]
    fn midpoint_of_constants() {
        let f = scalar(&[2]);
        let g = scalar(&[0]);
        assert_eq!(mix_acts(&f, &g, &rat(1, 2)).unwrap(), scalar(&[1]));
    }

    #[test]
    fn one_third_mixture() {
        let f = scalar(&[3, 0]);
        let g = scalar(&[0, 3]);
        assert_eq!(mix_acts(&f, &g, &rat(1, 3)).unwrap(), scalar(&[1, 2]));
    }

    #[test]
    fn mixing_rejects_bad_weight_and_mismatch() {
        let f = scalar(&[1, 2]);
        assert!(matches!(
            mix_acts(&f, &f, &rat(3, 2)),
            Err(Error::WeightOutOfRange(_))
        ));
        assert!(matches!(
            mix_acts(&f, &scalar(&[1]), &rat(1, 2)),
            Err(Error::StateMismatch { .. })
        ));
        let two_d = Act::new(vec![
            Outcome::new(vec![int(1), int(1)]).unwrap(),
            Outcome::new(vec![int(1), int(1)]).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            mix_acts(&f, &two_d, &rat(1, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn betting_utility_profile() {
        let u = AffineUtility::new(vec![rat(1, 2)], int(0)).unwrap();
        let f = scalar(&[50, -30]);
        assert_eq!(
            apply_utility(&u, &f).unwrap().values(),
            &[int(25), int(-15)]
        );
    }

    #[test]
    fn zero_weights_rejected() {
        assert_eq!(
            AffineUtility::new(vec![int(0), int(0)], int(1)),
            Err(Error::ConstantUtility)
        );
    }

    #[test]
    fn affine_evaluation() {
        let u = AffineUtility::new(vec![int(2)], int(1)).unwrap();
        assert_eq!(
            apply_utility(&u, &scalar(&[0, 1])).unwrap().values(),
            &[int(1), int(3)]
        );
    }

    #[test]
    fn constant_acts() {
        let space = StateSpace::anonymous(3).unwrap();
        let x = constant_act(&Outcome::scalar(int(5)), &space);
        assert_eq!(
            apply_utility(&AffineUtility::identity(), &x).unwrap(),
            UtilityProfile::constant(int(5), 3)
        );
        let y = constant_act(&Outcome::scalar(int(1)), &space);
        assert!(mix_acts(&x, &y, &rat(2, 7)).unwrap().is_constant());
    }

    #[test]
    fn statewise_dominance_is_strict() {
        let u = AffineUtility::identity();
        assert!(statewise_dominates(&u, &scalar(&[2, 2]), &scalar(&[1, 1])).unwrap());
        assert!(!statewise_dominates(&u, &scalar(&[2, 1]), &scalar(&[1, 1])).unwrap());
        assert!(!statewise_dominates(&u, &scalar(&[1, 0]), &scalar(&[0, 1])).unwrap());
    }

    #[test]
    fn realize_inverts_apply_utility() {
        let u = AffineUtility::new(vec![int(0), int(-3)], int(2)).unwrap();
        let profile = UtilityProfile::new(vec![rat(1, 2), int(-4), int(7)]);
        let act = u.realize(&profile);
        assert_eq!(apply_utility(&u, &act).unwrap(), profile);
    }

    #[test]
    fn equivalence_up_to_positive_affine_maps() {
        let u = AffineUtility::new(vec![int(2), int(-1)], int(5)).unwrap();
        let v = AffineUtility::new(vec![int(6), int(-3)], int(-1)).unwrap();
        let w = AffineUtility::new(vec![int(-2), int(1)], int(5)).unwrap();
        assert!(u.is_equivalent(&v));
        assert!(!u.is_equivalent(&w));
    }
}
