//! Conservatism and ambiguity-attitude comparisons.
//!
//! Each comparison has a containment certificate decided exactly on credal
//! sets, and a semantic check that samples act pairs. When the certificate
//! fails, the semantic check is seeded with constructive probes: a generator
//! outside the target set is separated from it by a utility profile, and the
//! profile together with a constant between the two sides is tried in both
//! orders.

use rand::Rng;
use serde::Serialize;

use crate::act::{AffineUtility, UtilityProfile};
use crate::credal::{
    generator_outside, hull_union, is_equal, is_subset, separating_profile, CredalSet,
    ProbabilityVector,
};
use crate::criteria::{Bewley, HopeAndPrepare, Relation, Twofold};
use crate::error::{Error, Result};
use crate::sampling::{band_probes, random_profile, run_trials, Trial, Witness};

pub fn is_concordant(spec: &HopeAndPrepare) -> bool {
    is_equal(spec.pessimistic(), spec.optimistic()).expect("sizes checked at construction")
}

/// Which pairs a semantic check quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// Any two acts.
    Any,
    /// An act against a constant below it.
    ActOverConstant,
    /// A constant against an act below it.
    ConstantOverAct,
}

impl PairKind {
    fn admits(self, f: &UtilityProfile, g: &UtilityProfile) -> bool {
        match self {
            Self::Any => true,
            Self::ActOverConstant => g.is_constant(),
            Self::ConstantOverAct => f.is_constant(),
        }
    }
}

/// Probes from strict separations of two sets, in either direction: each
/// separating `(psi, t)` yields the profile pairs `(psi, t)` and `(t, psi)`.
pub(crate) fn set_separation_probes(
    a: &CredalSet,
    b: &CredalSet,
) -> Result<Vec<(UtilityProfile, UtilityProfile)>> {
    let mut out = Vec::new();
    for sep in [separating_profile(a, b)?, separating_profile(b, a)?]
        .into_iter()
        .flatten()
    {
        let t = UtilityProfile::constant(sep.threshold, a.n_states());
        out.push((sep.profile.clone(), t.clone()));
        out.push((t, sep.profile));
    }
    Ok(out)
}

/// Probes separating a point outside `k` from `k`.
pub(crate) fn separation_probes(
    point: &ProbabilityVector,
    k: &CredalSet,
) -> Result<Vec<(UtilityProfile, UtilityProfile)>> {
    set_separation_probes(&CredalSet::singleton(point.clone()), k)
}

/// Probes from every generator of `a` outside `b`.
pub(crate) fn outside_probes(a: &CredalSet, b: &CredalSet) -> Result<Vec<(UtilityProfile, UtilityProfile)>> {
    let mut out = Vec::new();
    for p in a.generators() {
        if generator_outside(&CredalSet::singleton(p.clone()), b)?.is_some() {
            out.extend(separation_probes(p, b)?);
        }
    }
    Ok(out)
}

/// Outcome of sampling the implication `f >_1 g  =>  f >_2 g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemanticCheck {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub trials: u64,
    pub active_trials: u64,
}

fn pair_witness(note: &str, f: &UtilityProfile, g: &UtilityProfile) -> Witness {
    Witness::new(note).profile("f", f).profile("g", g)
}

/// Samples pairs on which `first` is strict and checks that `second` is
/// strict in the same direction. `probes` are tried before the random pairs.
pub fn extension_check(
    first: &dyn Relation,
    second: &dyn Relation,
    kind: PairKind,
    probes: &[(UtilityProfile, UtilityProfile)],
    trials: u64,
    seed: u64,
) -> Result<SemanticCheck> {
    if !first.utility().is_equivalent(second.utility()) {
        return Err(Error::UtilityMismatch);
    }
    let n = first.n_states();
    if second.n_states() != n {
        return Err(Error::StateMismatch {
            expected: n,
            found: second.n_states(),
        });
    }
    let violates = |f: &UtilityProfile, g: &UtilityProfile| {
        first.compare_profiles(f, g).is_first_strict()
            && !second.compare_profiles(f, g).is_first_strict()
    };
    let mut witnesses = Vec::new();
    let mut probe_active = 0;
    for (f, g) in probes.iter().filter(|(f, g)| kind.admits(f, g)) {
        if first.compare_profiles(f, g).is_first_strict() {
            probe_active += 1;
        }
        if violates(f, g) {
            witnesses.push(pair_witness("constructive probe", f, g));
        }
    }
    let outcome = run_trials(trials, seed, |rng| {
        let f = random_profile(rng, n);
        let (f, g) = match (kind, rng.random_range(0..3)) {
            (PairKind::Any, 0) => (f, random_profile(rng, n)),
            (PairKind::Any, 1) | (PairKind::ActOverConstant, _) => {
                let k = constant_near(first, &f, rng);
                (f, UtilityProfile::constant(k, n))
            }
            _ => {
                let k = constant_near(first, &f, rng);
                (UtilityProfile::constant(k, n), f)
            }
        };
        if !first.compare_profiles(&f, &g).is_first_strict() {
            Trial::Vacuous
        } else if violates(&f, &g) {
            Trial::Violated(pair_witness("sampled pair", &f, &g))
        } else {
            Trial::Held
        }
    });
    witnesses.extend(outcome.witness);
    Ok(SemanticCheck {
        holds: witnesses.is_empty(),
        witnesses,
        trials: outcome.trials_run,
        active_trials: outcome.active + probe_active,
    })
}

fn constant_near(r: &dyn Relation, f: &UtilityProfile, rng: &mut impl Rng) -> crate::rational::Rational {
    let (lo, hi) = match r.incomparability_band(f) {
        Some(b) => (b.lo, b.hi),
        None => (f.min().clone(), f.max().clone()),
    };
    let probes = band_probes(&lo, &hi, rng);
    probes[rng.random_range(0..probes.len())].clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConservatismStatus {
    /// Certified, and no sample contradicts it.
    Holds,
    /// Not certified, and a violating pair was exhibited.
    Fails,
    /// Not certified, but the budget found no violating pair.
    Inconclusive,
    /// Certified yet contradicted by a sample; indicates a defect.
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConservatismVerdict {
    pub certified: bool,
    pub semantic: bool,
    pub witnesses: Vec<Witness>,
    pub trials: u64,
    pub status: ConservatismStatus,
}

impl ConservatismVerdict {
    fn new(certified: bool, check: SemanticCheck) -> Self {
        let status = match (certified, check.holds) {
            (true, true) => ConservatismStatus::Holds,
            (false, false) => ConservatismStatus::Fails,
            (false, true) => ConservatismStatus::Inconclusive,
            (true, false) => ConservatismStatus::Discrepancy,
        };
        Self {
            certified,
            semantic: check.holds,
            witnesses: check.witnesses,
            trials: check.trials,
            status,
        }
    }
}

fn same_utility(a: &AffineUtility, b: &AffineUtility) -> Result<()> {
    if a.is_equivalent(b) {
        Ok(())
    } else {
        Err(Error::UtilityMismatch)
    }
}

/// Whether `hp` extends the Bewley preference `bw`: certified by
/// `co(C ∪ D) ⊆ C_B`.
pub fn bewley_more_conservative_than_hp(
    bw: &Bewley,
    hp: &HopeAndPrepare,
    trials: u64,
    seed: u64,
) -> Result<ConservatismVerdict> {
    same_utility(bw.utility(), hp.utility())?;
    let hull = hull_union(&[hp.pessimistic().clone(), hp.optimistic().clone()])?;
    let certified = is_subset(&hull, bw.scenarios())?;
    let probes = outside_probes(&hull, bw.scenarios())?;
    let check = extension_check(bw, hp, PairKind::Any, &probes, trials, seed)?;
    Ok(ConservatismVerdict::new(certified, check))
}

/// Whether `hp` extends the twofold preference `tf`: certified by
/// `C ⊆ C_T` and `D ⊆ D_T`.
pub fn twofold_more_conservative_than_hp(
    tf: &Twofold,
    hp: &HopeAndPrepare,
    trials: u64,
    seed: u64,
) -> Result<ConservatismVerdict> {
    same_utility(tf.utility(), hp.utility())?;
    let certified = is_subset(hp.pessimistic(), tf.pessimistic())?
        && is_subset(hp.optimistic(), tf.optimistic())?;
    let mut probes = outside_probes(hp.pessimistic(), tf.pessimistic())?;
    probes.extend(outside_probes(hp.optimistic(), tf.optimistic())?);
    let check = extension_check(tf, hp, PairKind::Any, &probes, trials, seed)?;
    Ok(ConservatismVerdict::new(certified, check))
}

/// Whether `hp1` is more ambiguity averse than `hp2` (`f >_1 x` implies
/// `f >_2 x`): certified by `C_2 ⊆ C_1`.
pub fn more_ambiguity_averse(
    hp1: &HopeAndPrepare,
    hp2: &HopeAndPrepare,
    trials: u64,
    seed: u64,
) -> Result<ConservatismVerdict> {
    same_utility(hp1.utility(), hp2.utility())?;
    let certified = is_subset(hp2.pessimistic(), hp1.pessimistic())?;
    let probes = outside_probes(hp2.pessimistic(), hp1.pessimistic())?;
    let check = extension_check(hp1, hp2, PairKind::ActOverConstant, &probes, trials, seed)?;
    Ok(ConservatismVerdict::new(certified, check))
}

/// Whether `hp1` is more ambiguity loving than `hp2` (`x >_1 f` implies
/// `x >_2 f`): certified by `D_2 ⊆ D_1`.
pub fn more_ambiguity_loving(
    hp1: &HopeAndPrepare,
    hp2: &HopeAndPrepare,
    trials: u64,
    seed: u64,
) -> Result<ConservatismVerdict> {
    same_utility(hp1.utility(), hp2.utility())?;
    let certified = is_subset(hp2.optimistic(), hp1.optimistic())?;
    let probes = outside_probes(hp2.optimistic(), hp1.optimistic())?;
    let check = extension_check(hp1, hp2, PairKind::ConstantOverAct, &probes, trials, seed)?;
    Ok(ConservatismVerdict::new(certified, check))
}

/// Whether `second` extends `first`, by sampling plus the given probes. No
/// containment characterization is assumed.
pub fn more_conservative(
    first: &dyn Relation,
    second: &dyn Relation,
    probes: &[(UtilityProfile, UtilityProfile)],
    trials: u64,
    seed: u64,
) -> Result<SemanticCheck> {
    extension_check(first, second, PairKind::Any, probes, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::credal::simplex;
    use crate::rational::{int, rat};

    fn pv(a: (i64, i64)) -> ProbabilityVector {
        ProbabilityVector::new(vec![rat(a.0, a.1), int(1) - rat(a.0, a.1)]).unwrap()
    }

    fn set(points: &[(i64, i64)]) -> CredalSet {
        CredalSet::new(points.iter().map(|&p| pv(p)).collect()).unwrap()
    }

    fn id() -> AffineUtility {
        AffineUtility::identity()
    }

    #[test]
    fn concordance_ignores_redundant_generators() {
        let hp = HopeAndPrepare::new(id(), set(&[(0, 1), (1, 1)]), set(&[(0, 1), (1, 2), (1, 1)])).unwrap();
        assert!(is_concordant(&hp));
        let hp = HopeAndPrepare::new(id(), set(&[(1, 1)]), set(&[(1, 3), (1, 1)])).unwrap();
        assert!(!is_concordant(&hp));
    }

    #[test]
    fn bewley_reflexive_case_holds() {
        let c = set(&[(1, 3), (1, 2)]);
        let v = bewley_more_conservative_than_hp(
            &Bewley::new(id(), c.clone()),
            &HopeAndPrepare::concordant(id(), c),
            500,
            3,
        )
        .unwrap();
        assert_eq!(v.status, ConservatismStatus::Holds);
    }

    #[test]
    fn bewley_narrower_set_fails_with_witness() {
        let v = bewley_more_conservative_than_hp(
            &Bewley::new(id(), set(&[(2, 5), (1, 2)])),
            &HopeAndPrepare::concordant(id(), set(&[(1, 3), (1, 2)])),
            200,
            3,
        )
        .unwrap();
        assert!(!v.certified);
        assert_eq!(v.status, ConservatismStatus::Fails);
        assert!(v.witnesses.iter().any(|w| w.trial.is_none()));
    }

    #[test]
    fn twofold_containment_shapes() {
        let hp = HopeAndPrepare::concordant(id(), set(&[(1, 3), (1, 2)]));
        let wide = Twofold::new(id(), simplex(2), simplex(2)).unwrap();
        let v = twofold_more_conservative_than_hp(&wide, &hp, 500, 1).unwrap();
        assert_eq!(v.status, ConservatismStatus::Holds);
        let narrow = Twofold::new(id(), set(&[(2, 5)]), set(&[(2, 5), (1, 2)])).unwrap();
        let v = twofold_more_conservative_than_hp(&narrow, &hp, 200, 1).unwrap();
        assert_eq!(v.status, ConservatismStatus::Fails);
    }

    #[test]
    fn attitudes_follow_containment() {
        let hp1 = HopeAndPrepare::concordant(id(), set(&[(1, 3), (1, 2)]));
        let hp2 = HopeAndPrepare::concordant(id(), set(&[(2, 5)]));
        assert_eq!(more_ambiguity_averse(&hp1, &hp2, 500, 0).unwrap().status, ConservatismStatus::Holds);
        assert_eq!(more_ambiguity_averse(&hp2, &hp1, 200, 0).unwrap().status, ConservatismStatus::Fails);
        assert_eq!(more_ambiguity_loving(&hp1, &hp2, 500, 0).unwrap().status, ConservatismStatus::Holds);
        assert_eq!(more_ambiguity_loving(&hp2, &hp1, 200, 0).unwrap().status, ConservatismStatus::Fails);
    }

    #[test]
    fn mismatched_utilities_rejected() {
        let c = set(&[(1, 3)]);
        let u2 = AffineUtility::new(vec![int(-1)], int(0)).unwrap();
        let r = bewley_more_conservative_than_hp(
            &Bewley::new(id(), c.clone()),
            &HopeAndPrepare::concordant(u2, c.clone()),
            10,
            0,
        );
        assert_eq!(r.unwrap_err(), Error::UtilityMismatch);
        let u3 = AffineUtility::new(vec![int(3)], int(7)).unwrap();
        assert!(bewley_more_conservative_than_hp(
            &Bewley::new(id(), c.clone()),
            &HopeAndPrepare::concordant(u3, c),
            10,
            0
        )
        .is_ok());
    }
}
