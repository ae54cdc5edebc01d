//! Aggregating a panel of Bewley experts into a planner preference.
//!
//! The planner adopts the convex hull of the experts' sets. Two audits check
//! the panel/planner pair: Pareto (unanimous strict rankings carry over) and
//! caution (incomparability for any single expert between an act and a
//! constant carries over).

use rand::Rng;
use serde::Serialize;

use crate::act::{AffineUtility, UtilityProfile};
use crate::comparative::{is_concordant, outside_probes};
use crate::credal::{hull_union, is_subset, separating_profile, CredalSet};
use crate::criteria::{Bewley, HopeAndPrepare, PreferenceSpec, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sampling::{
    band_probes, random_increment, random_profile, run_trials, SearchOutcome, Trial, Verdict,
    Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpertPanel {
    utility: AffineUtility,
    experts: Vec<CredalSet>,
}

impl ExpertPanel {
    pub fn new(utility: AffineUtility, experts: Vec<CredalSet>) -> Result<Self> {
        let first = experts.first().ok_or(Error::Empty("expert panel"))?;
        for k in &experts {
            if k.n_states() != first.n_states() {
                return Err(Error::StateMismatch {
                    expected: first.n_states(),
                    found: k.n_states(),
                });
            }
        }
        Ok(Self { utility, experts })
    }

    /// Builds a panel from Bewley preferences, which must share a utility up
    /// to positive affine rescaling.
    pub fn from_experts(experts: Vec<Bewley>) -> Result<Self> {
        let first = experts.first().ok_or(Error::Empty("expert panel"))?;
        let utility = first.utility().clone();
        if experts.iter().any(|e| !e.utility().is_equivalent(&utility)) {
            return Err(Error::UtilityMismatch);
        }
        Self::new(utility, experts.into_iter().map(|e| e.scenarios().clone()).collect())
    }

    pub fn utility(&self) -> &AffineUtility {
        &self.utility
    }

    pub fn experts(&self) -> &[CredalSet] {
        &self.experts
    }

    pub fn n_states(&self) -> usize {
        self.experts[0].n_states()
    }

    pub fn hull(&self) -> CredalSet {
        hull_union(&self.experts).expect("non-empty panel")
    }

    fn relations(&self) -> Vec<Bewley> {
        self.experts
            .iter()
            .map(|k| Bewley::new(self.utility.clone(), k.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationMode {
    Bewley,
    ConcordantHp,
}

pub fn aggregate(panel: &ExpertPanel, mode: AggregationMode) -> PreferenceSpec {
    let hull = panel.hull();
    match mode {
        AggregationMode::Bewley => Bewley::new(panel.utility.clone(), hull).into(),
        AggregationMode::ConcordantHp => HopeAndPrepare::concordant(panel.utility.clone(), hull).into(),
    }
}

/// The planner's single set of scenarios, for Bewley and concordant
/// hope-and-prepare planners.
pub fn planner_set(planner: &PreferenceSpec) -> Option<&CredalSet> {
    match planner {
        PreferenceSpec::Bewley(b) => Some(b.scenarios()),
        PreferenceSpec::HopeAndPrepare(hp) if is_concordant(hp) => Some(hp.pessimistic()),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PanelAxiom {
    Pareto,
    Caution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub axiom: PanelAxiom,
    /// The containment certificate, when the planner has a single set.
    pub certified: Option<bool>,
    pub verdict: Verdict,
    pub trials: u64,
    pub active_trials: u64,
}

impl AuditReport {
    fn from_search(
        axiom: PanelAxiom,
        certified: Option<bool>,
        constructive: Option<Witness>,
        probe_active: u64,
        search: SearchOutcome,
    ) -> Self {
        let active = search.active + probe_active;
        let verdict = match constructive.or(search.witness) {
            Some(w) => Verdict::Violated(Box::new(w)),
            None if certified == Some(false) || active == 0 => Verdict::Inconclusive,
            None => Verdict::Pass,
        };
        Self {
            axiom,
            certified,
            verdict,
            trials: search.trials_run,
            active_trials: active,
        }
    }
}

fn check_planner(panel: &ExpertPanel, planner: &PreferenceSpec) -> Result<()> {
    if !planner.utility().is_equivalent(&panel.utility) {
        return Err(Error::UtilityMismatch);
    }
    if planner.n_states() != panel.n_states() {
        return Err(Error::StateMismatch {
            expected: panel.n_states(),
            found: planner.n_states(),
        });
    }
    Ok(())
}

/// Pareto: if every expert ranks `f` above `g`, so does the planner.
pub fn audit_pareto(
    panel: &ExpertPanel,
    planner: &PreferenceSpec,
    trials: u64,
    seed: u64,
) -> Result<AuditReport> {
    check_planner(panel, planner)?;
    let hull = panel.hull();
    let certified = planner_set(planner).map(|c0| is_subset(c0, &hull)).transpose()?;
    let experts = panel.relations();
    let unanimous = |f: &UtilityProfile, g: &UtilityProfile| {
        experts.iter().all(|e| e.compare_profiles(f, g).is_first_strict())
    };
    let fails = |f: &UtilityProfile, g: &UtilityProfile| !planner.compare_profiles(f, g).is_first_strict();

    let mut probes = Vec::new();
    if let Some((c0, d0)) = planner.scenario_sets() {
        probes.extend(outside_probes(c0, &hull)?);
        probes.extend(outside_probes(d0, &hull)?);
    }
    let mut probe_active = 0;
    let mut constructive = None;
    for (f, g) in &probes {
        if unanimous(f, g) {
            probe_active += 1;
            if fails(f, g) && constructive.is_none() {
                constructive = Some(
                    Witness::new("unanimous experts, planner not strict")
                        .profile("f", f)
                        .profile("g", g),
                );
            }
        }
    }

    let n = panel.n_states();
    let search = run_trials(trials, seed, |rng| {
        let f = random_profile(rng, n);
        let g = match rng.random_range(0..3) {
            0 => random_profile(rng, n),
            1 => {
                let e = &experts[rng.random_range(0..experts.len())];
                let band = e.incomparability_band(&f).expect("bewley band");
                let probes = band_probes(&band.lo, &band.hi, rng);
                UtilityProfile::constant(probes[rng.random_range(0..probes.len())].clone(), n)
            }
            _ => {
                let d = random_increment(rng, n);
                UtilityProfile::new(f.values().iter().zip(d.values()).map(|(a, b)| a - b).collect())
            }
        };
        if !unanimous(&f, &g) {
            Trial::Vacuous
        } else if fails(&f, &g) {
            Trial::Violated(
                Witness::new("unanimous experts, planner not strict")
                    .profile("f", &f)
                    .profile("g", &g),
            )
        } else {
            Trial::Held
        }
    });
    Ok(AuditReport::from_search(
        PanelAxiom::Pareto,
        certified,
        constructive,
        probe_active,
        search,
    ))
}

/// Caution: if some expert cannot rank `f` against the constant `x`, neither
/// can the planner.
pub fn audit_caution(
    panel: &ExpertPanel,
    planner: &PreferenceSpec,
    trials: u64,
    seed: u64,
) -> Result<AuditReport> {
    check_planner(panel, planner)?;
    let hull = panel.hull();
    let certified = planner_set(planner).map(|c0| is_subset(&hull, c0)).transpose()?;
    let experts = panel.relations();
    let n = panel.n_states();
    let unranked_by = |f: &UtilityProfile, x: &Rational| {
        let c = UtilityProfile::constant(x.clone(), n);
        experts
            .iter()
            .position(|e| !e.compare_profiles(f, &c).is_strict())
    };
    let planner_ranks = |f: &UtilityProfile, x: &Rational| {
        planner
            .compare_profiles(f, &UtilityProfile::constant(x.clone(), n))
            .is_strict()
    };
    let witness = |f: &UtilityProfile, x: &Rational, i: usize| {
        Witness::new(format!("expert {i} cannot rank f against x, planner can"))
            .profile("f", f)
            .constant("x", x)
    };

    // a hull generator outside the planner's set, separated from it, with the
    // constants at the experts' band ends
    let mut constructive = None;
    let mut probe_active = 0;
    let target = match planner.scenario_sets() {
        Some((c0, d0)) => Some(hull_union(&[c0.clone(), d0.clone()])?),
        None => None,
    };
    if let Some(target) = target {
        'outer: for p in hull.generators() {
            let single = CredalSet::singleton(p.clone());
            for sep in [separating_profile(&single, &target)?, separating_profile(&target, &single)?]
                .into_iter()
                .flatten()
            {
                let psi = sep.profile;
                let mut xs = vec![sep.threshold];
                for e in &experts {
                    let band = e.incomparability_band(&psi).expect("bewley band");
                    xs.push(band.lo);
                    xs.push(band.hi);
                }
                for x in &xs {
                    if let Some(i) = unranked_by(&psi, x) {
                        probe_active += 1;
                        if planner_ranks(&psi, x) {
                            constructive = Some(witness(&psi, x, i));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }

    let search = run_trials(trials, seed, |rng| {
        let f = random_profile(rng, n);
        // an expert cannot rank f against x exactly when x lies in its band
        let bands: Vec<_> = experts
            .iter()
            .map(|e| e.incomparability_band(&f).expect("bewley band"))
            .collect();
        let mut xs = Vec::new();
        for band in &bands {
            xs.extend(band_probes(&band.lo, &band.hi, rng));
        }
        let planner_band = planner.incomparability_band(&f);
        if let Some(band) = &planner_band {
            xs.extend(band_probes(&band.lo, &band.hi, rng));
        }
        let mut active = false;
        for x in &xs {
            if let Some(i) = bands.iter().position(|b| b.contains(x)) {
                active = true;
                let outside = planner_band.as_ref().is_none_or(|b| !b.contains(x));
                if outside && planner_ranks(&f, x) {
                    return Trial::Violated(witness(&f, x, i));
                }
            }
        }
        if active {
            Trial::Held
        } else {
            Trial::Vacuous
        }
    });
    Ok(AuditReport::from_search(
        PanelAxiom::Caution,
        certified,
        constructive,
        probe_active,
        search,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::credal::{contains_point, is_equal, ProbabilityVector};
    use crate::rational::{int, rat};

    fn pv(a: Rational) -> ProbabilityVector {
        ProbabilityVector::new(vec![a.clone(), int(1) - a]).unwrap()
    }

    fn set(points: &[Rational]) -> CredalSet {
        CredalSet::new(points.iter().cloned().map(pv).collect()).unwrap()
    }

    fn panel() -> ExpertPanel {
        ExpertPanel::new(
            AffineUtility::identity(),
            vec![set(&[rat(1, 3), rat(1, 1)]), set(&[rat(1, 3), rat(2, 5)])],
        )
        .unwrap()
    }

    #[test]
    fn single_expert_planner_is_that_expert() {
        let k = set(&[rat(1, 4), rat(3, 4)]);
        let p = ExpertPanel::new(AffineUtility::identity(), vec![k.clone()]).unwrap();
        for mode in [AggregationMode::Bewley, AggregationMode::ConcordantHp] {
            let spec = aggregate(&p, mode);
            assert!(is_equal(planner_set(&spec).unwrap(), &k).unwrap());
        }
    }

    #[test]
    fn disjoint_singletons_span_a_segment() {
        let p = ExpertPanel::new(
            AffineUtility::identity(),
            vec![set(&[rat(0, 1)]), set(&[rat(1, 1)])],
        )
        .unwrap();
        let spec = aggregate(&p, AggregationMode::Bewley);
        assert!(contains_point(planner_set(&spec).unwrap(), &pv(rat(1, 2))).unwrap());
    }

    #[test]
    fn hull_contains_every_expert_generator() {
        let spec = aggregate(&panel(), AggregationMode::ConcordantHp);
        for q in [rat(1, 3), rat(1, 1), rat(2, 5)] {
            assert!(contains_point(planner_set(&spec).unwrap(), &pv(q)).unwrap());
        }
    }

    #[test]
    fn aggregate_passes_both_audits() {
        for mode in [AggregationMode::Bewley, AggregationMode::ConcordantHp] {
            let spec = aggregate(&panel(), mode);
            let pareto = audit_pareto(&panel(), &spec, 300, 1).unwrap();
            let caution = audit_caution(&panel(), &spec, 300, 1).unwrap();
            assert_eq!(pareto.verdict, Verdict::Pass, "{mode:?}");
            assert_eq!(caution.verdict, Verdict::Pass, "{mode:?}");
            assert_eq!(pareto.certified, Some(true));
            assert_eq!(caution.certified, Some(true));
        }
    }

    #[test]
    fn narrow_planner_fails_caution_constructively() {
        let planner: PreferenceSpec =
            Bewley::new(AffineUtility::identity(), set(&[rat(1, 3), rat(2, 5)])).into();
        let report = audit_caution(&panel(), &planner, 0, 0).unwrap();
        assert_eq!(report.certified, Some(false));
        let w = report.verdict.witness().expect("constructive witness");
        assert!(w.trial.is_none());
    }

    #[test]
    fn wide_planner_fails_pareto_constructively() {
        let planner: PreferenceSpec =
            HopeAndPrepare::concordant(AffineUtility::identity(), set(&[rat(0, 1), rat(1, 1)])).into();
        let report = audit_pareto(&panel(), &planner, 0, 0).unwrap();
        assert_eq!(report.certified, Some(false));
        assert!(report.verdict.is_violated());
    }

    #[test]
    fn heterogeneous_utilities_rejected() {
        let k = set(&[rat(1, 2)]);
        let a = Bewley::new(AffineUtility::identity(), k.clone());
        let b = Bewley::new(AffineUtility::new(vec![int(-2)], int(0)).unwrap(), k.clone());
        assert_eq!(ExpertPanel::from_experts(vec![a.clone(), b]), Err(Error::UtilityMismatch));
        let c = Bewley::new(AffineUtility::new(vec![int(2)], int(5)).unwrap(), k);
        assert!(ExpertPanel::from_experts(vec![a, c]).is_ok());
    }
}
