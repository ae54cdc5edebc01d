//! Alpha-MEU completions of a hope-and-prepare preference and recovery of the
//! weight from evaluations.
//!
//! A complete extension evaluates `f` as `a * min_C u(f) + (1 - a) * max_D u(f)`.
//! Given such evaluations on acts with `min_C < max_D`, the weight is pinned
//! down by the convex-combination equation, and must be the same for every
//! such act.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::act::{apply_utility, Act, AffineUtility, UtilityProfile};
use crate::comparative::{extension_check, set_separation_probes, PairKind};
use crate::credal::{hull_union, CredalSet, ProbabilityVector};
use crate::lp::{feasible_point, StandardForm};
use crate::criteria::{
    weighted_mixture_sets, weighted_value, AlphaMeu, Comparison, EuRange, HopeAndPrepare, Relation,
};
use crate::error::{Error, Result};
use crate::mixture::AlphaIntervalSet;
use crate::rational::{format_rational, int, is_unit_interval, serde_rational, Rational};
use crate::sampling::Witness;

pub fn complete_with_alpha(hp: &HopeAndPrepare, alpha: Rational) -> Result<AlphaMeu> {
    AlphaMeu::new(
        hp.utility().clone(),
        hp.pessimistic().clone(),
        hp.optimistic().clone(),
        alpha,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub extends: bool,
    pub witnesses: Vec<Witness>,
    pub trials: u64,
    pub active_trials: u64,
}

/// Samples pairs ranked by `hp` and checks that `ext` ranks them the same
/// way. When `ext` exposes scenario sets, pairs separating `C` from, and `D`
/// from, the hull of those sets are tried first.
pub fn verify_extension(
    ext: &dyn Relation,
    hp: &HopeAndPrepare,
    trials: u64,
    seed: u64,
) -> Result<ExtensionReport> {
    let mut probes = Vec::new();
    if let Some((c, d)) = ext.scenario_sets() {
        let hull = hull_union(&[c.clone(), d.clone()])?;
        probes.extend(set_separation_probes(hp.pessimistic(), &hull)?);
        probes.extend(set_separation_probes(&hull, hp.optimistic())?);
    }
    let check = extension_check(hp, ext, PairKind::Any, &probes, trials, seed)?;
    Ok(ExtensionReport {
        extends: check.holds,
        witnesses: check.witnesses,
        trials: check.trials,
        active_trials: check.active_trials,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaRecovery {
    Unique {
        #[serde(with = "serde_rational")]
        alpha: Rational,
    },
    /// Every probe has `min_C = max_D`, so any weight fits.
    NonUnique,
}

/// Recovers the weight from evaluations `I(f)` of acts.
pub fn recover_alpha(hp: &HopeAndPrepare, values: &[(Act, Rational)]) -> Result<AlphaRecovery> {
    let profiles = values
        .iter()
        .map(|(f, v)| Ok((apply_utility(hp.utility(), f)?, v.clone())))
        .collect::<Result<Vec<_>>>()?;
    recover_alpha_from_profiles(hp, &profiles)
}

pub fn recover_alpha_from_profiles(
    hp: &HopeAndPrepare,
    values: &[(UtilityProfile, Rational)],
) -> Result<AlphaRecovery> {
    let n = hp.n_states();
    let mut alpha: Option<Rational> = None;
    for (f, value) in values {
        if f.len() != n {
            return Err(Error::StateMismatch {
                expected: n,
                found: f.len(),
            });
        }
        let (lo, hi) = (hp.lower(f), hp.upper(f));
        if lo == hi {
            if *value != lo {
                return Err(Error::InconsistentProbes(format!(
                    "act with min = max = {} evaluated at {}",
                    format_rational(&lo),
                    format_rational(value)
                )));
            }
            continue;
        }
        let a = (value - &hi) / (&lo - &hi);
        match &alpha {
            None => alpha = Some(a),
            Some(prev) if *prev != a => {
                return Err(Error::InconsistentProbes(format!(
                    "weights {} and {} from different acts",
                    format_rational(prev),
                    format_rational(&a)
                )))
            }
            Some(_) => {}
        }
    }
    match alpha {
        None => Ok(AlphaRecovery::NonUnique),
        Some(a) if is_unit_interval(&a) => Ok(AlphaRecovery::Unique { alpha: a }),
        Some(a) => Err(Error::RecoveredWeightOutOfRange(format_rational(&a))),
    }
}

/// State indicators, rescaled so that `min_C = -1` and `max_D = 0` wherever
/// the two differ; indicators with `min_C = max_D` are kept as they are.
pub fn default_probes(hp: &HopeAndPrepare) -> Vec<UtilityProfile> {
    let n = hp.n_states();
    (0..n)
        .map(|s| {
            let e = UtilityProfile::new(
                (0..n)
                    .map(|t| if s == t { Rational::from_integer(1.into()) } else { Rational::zero() })
                    .collect(),
            );
            let (lo, hi) = (hp.lower(&e), hp.upper(&e));
            if lo == hi {
                e
            } else {
                let scale = Rational::from_integer(1.into()) / (&hi - &lo);
                e.affine(&scale, &(-&hi * &scale))
            }
        })
        .collect()
}

/// `(probe, I(probe))` for an alpha-MEU evaluation.
pub fn evaluate_probes(ext: &AlphaMeu, probes: &[UtilityProfile]) -> Vec<(UtilityProfile, Rational)> {
    probes.iter().map(|p| (p.clone(), ext.value_of(p))).collect()
}

/// The alpha-MEU functional with an unchecked weight. With a weight outside
/// `[0, 1]` this is no longer monotone, which the axiom harness detects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCombiner {
    utility: AffineUtility,
    pessimistic: CredalSet,
    optimistic: CredalSet,
    alpha: Rational,
}

impl RawCombiner {
    pub fn new(hp: &HopeAndPrepare, alpha: Rational) -> Self {
        Self {
            utility: hp.utility().clone(),
            pessimistic: hp.pessimistic().clone(),
            optimistic: hp.optimistic().clone(),
            alpha,
        }
    }

    pub fn value_of(&self, f: &UtilityProfile) -> Rational {
        weighted_value(&self.pessimistic, &self.optimistic, &self.alpha, f)
    }
}

impl Relation for RawCombiner {
    fn utility(&self) -> &AffineUtility {
        &self.utility
    }

    fn n_states(&self) -> usize {
        self.pessimistic.n_states()
    }

    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        let (a, b) = (self.value_of(f), self.value_of(g));
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => Comparison::FirstStrict,
            std::cmp::Ordering::Less => Comparison::SecondStrict,
            std::cmp::Ordering::Equal => Comparison::Indifferent,
        }
    }

    fn incomparability_band(&self, f: &UtilityProfile) -> Option<EuRange> {
        let v = self.value_of(f);
        Some(EuRange::new(v.clone(), v))
    }

    fn mixture_sets(
        &self,
        f: &UtilityProfile,
        g: &UtilityProfile,
        h: &UtilityProfile,
    ) -> Option<(AlphaIntervalSet, AlphaIntervalSet)> {
        Some(weighted_mixture_sets(
            &self.pessimistic,
            &self.optimistic,
            &self.alpha,
            f,
            g,
            h,
        ))
    }

    fn scenario_sets(&self) -> Option<(&CredalSet, &CredalSet)> {
        Some((&self.pessimistic, &self.optimistic))
    }
}

/// Some `g` at which `p` is the unique minimizer over `c` and `q` the unique
/// maximizer over `d`, each by a margin of at least 1.
fn cell_point(
    p: &ProbabilityVector,
    c: &[ProbabilityVector],
    q: &ProbabilityVector,
    d: &[ProbabilityVector],
) -> Option<UtilityProfile> {
    let n = p.mass().len();
    let rows: Vec<Vec<Rational>> = c
        .iter()
        .filter(|x| *x != p)
        .map(|x| x.mass().iter().zip(p.mass()).map(|(a, b)| a - b).collect())
        .chain(
            d.iter()
                .filter(|x| *x != q)
                .map(|x| q.mass().iter().zip(x.mass()).map(|(a, b)| a - b).collect()),
        )
        .collect();
    // columns: g+ (n), g- (n), surplus per row
    let mut lp = StandardForm::new(2 * n + rows.len());
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); lp.n_vars()];
        for k in 0..n {
            row[k] = r[k].clone();
            row[n + k] = -r[k].clone();
        }
        row[2 * n + i] = int(-1);
        lp.push_row(row, int(1));
    }
    let x = feasible_point(&lp)?;
    Some(UtilityProfile::new((0..n).map(|k| &x[k] - &x[n + k]).collect()))
}

/// A pair `(f, g)` with `f` above `g` in every state and
/// `a * min_C f + (1 - a) * max_D f <= a * min_C g + (1 - a) * max_D g`, or
/// `None` when the functional with weight `a` is strictly monotone.
///
/// The functional is linear with gradient `a p + (1 - a) q` on each open
/// cell where `p` minimizes over `C` and `q` maximizes over `D`; it fails
/// monotonicity exactly when some non-empty cell has a negative gradient
/// entry. Raising that state slightly inside the cell gives the pair.
pub fn monotonicity_counterexample(hp: &HopeAndPrepare, alpha: &Rational) -> Option<(UtilityProfile, UtilityProfile)> {
    let c = hp.pessimistic().pruned();
    let d = hp.optimistic().pruned();
    let one = int(1);
    for p in c.generators() {
        for q in d.generators() {
            let grad: Vec<Rational> = p
                .mass()
                .iter()
                .zip(q.mass())
                .map(|(a, b)| alpha * a + (&one - alpha) * b)
                .collect();
            let (s, worst) = grad.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap();
            if !worst.is_negative() {
                continue;
            }
            let Some(g) = cell_point(p, c.generators(), q, d.generators()) else {
                continue;
            };
            // steps of at most 1/8 keep both optimizers unique
            let eps = Rational::new(1.into(), 8.into()) / (&one - worst);
            let delta = &eps * -worst / int(2);
            let f = UtilityProfile::new(
                g.values()
                    .iter()
                    .enumerate()
                    .map(|(k, v)| if k == s { v + &delta + &eps } else { v + &delta })
                    .collect(),
            );
            return Some((f, g));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::credal::{simplex, ProbabilityVector};
    use crate::rational::{int, rat};
    use crate::sampling::{random_incomplete_hp, random_profile, random_unit_weight, trial_rng};

    fn pv(a: Rational) -> ProbabilityVector {
        ProbabilityVector::new(vec![a.clone(), int(1) - a]).unwrap()
    }

    fn interval(lo: Rational, hi: Rational) -> CredalSet {
        CredalSet::new(vec![pv(lo), pv(hi)]).unwrap()
    }

    #[test]
    fn extremes_of_completion() {
        let hp = HopeAndPrepare::new(
            AffineUtility::identity(),
            interval(rat(1, 3), rat(1, 2)),
            interval(rat(53, 150), rat(13, 25)),
        )
        .unwrap();
        let f = UtilityProfile::new(vec![int(25), int(-15)]);
        assert_eq!(complete_with_alpha(&hp, int(1)).unwrap().value_of(&f), hp.lower(&f));
        assert_eq!(complete_with_alpha(&hp, int(0)).unwrap().value_of(&f), hp.upper(&f));
        assert!(complete_with_alpha(&hp, int(2)).is_err());
    }

    #[test]
    fn single_probe_recovery() {
        // range [0, 1] over the two Diracs, evaluation 1/4 gives weight 3/4
        let hp = HopeAndPrepare::concordant(AffineUtility::identity(), simplex(2));
        let f = Act::scalar(vec![int(1), int(0)]).unwrap();
        assert_eq!(
            recover_alpha(&hp, &[(f, rat(1, 4))]).unwrap(),
            AlphaRecovery::Unique { alpha: rat(3, 4) }
        );
    }

    #[test]
    fn degenerate_probes_are_not_unique() {
        let p = pv(rat(1, 3));
        let hp = HopeAndPrepare::concordant(AffineUtility::identity(), CredalSet::singleton(p));
        let ext = complete_with_alpha(&hp, rat(1, 2)).unwrap();
        let probes = evaluate_probes(&ext, &default_probes(&hp));
        assert_eq!(recover_alpha_from_profiles(&hp, &probes).unwrap(), AlphaRecovery::NonUnique);
    }

    #[test]
    fn inconsistent_and_out_of_range_probes() {
        let hp = HopeAndPrepare::concordant(AffineUtility::identity(), simplex(2));
        let f = UtilityProfile::new(vec![int(1), int(0)]);
        let g = UtilityProfile::new(vec![int(0), int(2)]);
        assert!(matches!(
            recover_alpha_from_profiles(&hp, &[(f.clone(), rat(1, 4)), (g, rat(1, 4))]),
            Err(Error::InconsistentProbes(_))
        ));
        assert!(matches!(
            recover_alpha_from_profiles(&hp, &[(f, rat(11, 10))]),
            Err(Error::RecoveredWeightOutOfRange(_))
        ));
    }

    #[test]
    fn normalized_probes_pin_the_unit_range() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..50 {
            let hp = random_incomplete_hp(&mut rng, 3, 4);
            for p in default_probes(&hp) {
                if hp.lower(&p) != hp.upper(&p) {
                    assert_eq!(hp.lower(&p), int(-1));
                    assert_eq!(hp.upper(&p), int(0));
                }
            }
        }
    }

    #[test]
    fn round_trip_with_rescaled_probes() {
        let mut rng = trial_rng(9, 0);
        for _ in 0..40 {
            let hp = random_incomplete_hp(&mut rng, 3, 4);
            let alpha = random_unit_weight(&mut rng);
            let ext = complete_with_alpha(&hp, alpha.clone()).unwrap();
            let mut probes = default_probes(&hp);
            for _ in 0..5 {
                let f = random_profile(&mut rng, 3);
                probes.push(f.affine(&rat(7, 3), &int(-2)));
                probes.push(f);
            }
            let values = evaluate_probes(&ext, &probes);
            assert_eq!(
                recover_alpha_from_profiles(&hp, &values).unwrap(),
                AlphaRecovery::Unique { alpha }
            );
        }
    }

    #[test]
    fn completion_extends_hp() {
        let hp = HopeAndPrepare::new(
            AffineUtility::identity(),
            interval(rat(1, 3), rat(1, 2)),
            interval(rat(53, 150), rat(13, 25)),
        )
        .unwrap();
        let ext = complete_with_alpha(&hp, rat(1, 2)).unwrap();
        let report = verify_extension(&ext, &hp, 500, 2).unwrap();
        assert!(report.extends);
        assert!(report.active_trials > 0);
    }

    #[test]
    fn foreign_sets_break_extension() {
        let hp = HopeAndPrepare::concordant(AffineUtility::identity(), interval(rat(0, 1), rat(1, 4)));
        let other = interval(rat(1, 2), rat(1, 1));
        let ext = AlphaMeu::new(AffineUtility::identity(), other.clone(), other, rat(1, 2)).unwrap();
        let report = verify_extension(&ext, &hp, 100, 2).unwrap();
        assert!(!report.extends);
        assert!(report.witnesses.iter().any(|w| w.trial.is_none()));
    }

    #[test]
    fn monotonicity_counterexample_is_exact() {
        for i in 0..40 {
            let hp = random_incomplete_hp(&mut trial_rng(12, i), 3, 3);
            for alpha in [rat(-1, 10), rat(3, 2), rat(1, 3)] {
                let raw = RawCombiner::new(&hp, alpha.clone());
                match monotonicity_counterexample(&hp, &alpha) {
                    Some((f, g)) => {
                        assert!(f.values().iter().zip(g.values()).all(|(a, b)| a > b));
                        assert!(raw.value_of(&f) < raw.value_of(&g));
                    }
                    None => {
                        let r = crate::axioms::check_axiom(&raw, crate::axioms::Axiom::Monotonicity, 200, i);
                        assert!(r.verdict.is_pass(), "{:?}", r.verdict);
                    }
                }
            }
            assert!(monotonicity_counterexample(&hp, &rat(1, 3)).is_none());
        }
    }

    #[test]
    fn full_simplex_breaks_negative_weight() {
        let s = simplex(2);
        let hp = HopeAndPrepare::concordant(AffineUtility::identity(), s);
        let (f, g) = monotonicity_counterexample(&hp, &rat(-1, 10)).unwrap();
        let raw = RawCombiner::new(&hp, rat(-1, 10));
        assert!(raw.value_of(&f) < raw.value_of(&g));
    }
}
