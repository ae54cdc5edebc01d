use super::*;
use crate::act::{Act, AffineUtility, UtilityProfile};
use crate::credal::{CredalSet, ProbabilityVector};
use crate::criteria::{Bewley, Twofold};
use crate::rational::{int, rat, Rational};
use crate::sampling::{random_hp, random_profile, trial_rng};

fn pv(a: Rational) -> ProbabilityVector {
    ProbabilityVector::new(vec![a.clone(), int(1) - a]).unwrap()
}

fn set(points: &[Rational]) -> CredalSet {
    CredalSet::new(points.iter().cloned().map(pv).collect()).unwrap()
}

fn prof(v: &[i64]) -> UtilityProfile {
    UtilityProfile::new(v.iter().map(|&x| int(x)).collect())
}

fn act(v: &[i64]) -> Act {
    Act::scalar(v.iter().map(|&x| int(x)).collect()).unwrap()
}

fn hp(c: &[Rational], d: &[Rational]) -> HopeAndPrepare {
    HopeAndPrepare::new(AffineUtility::identity(), set(c), set(d)).unwrap()
}

fn wide() -> HopeAndPrepare {
    hp(&[rat(1, 3), rat(1, 2)], &[rat(1, 4), rat(2, 3)])
}

#[test]
fn axiom_numbers_round_trip() {
    for a in Axiom::ALL {
        assert_eq!(Axiom::from_number(a.number()), Some(a));
    }
    assert_eq!(Axiom::from_number(0), None);
    assert_eq!(Axiom::from_number(10), None);
    assert_eq!(Axiom::ConsonantEvidence.to_string(), "A7");
}

#[test]
fn complementary_examples() {
    let u = AffineUtility::identity();
    let g = complementary_pair(&u, &act(&[3, 3]), &int(1)).unwrap();
    assert_eq!(g, act(&[-1, -1]));
    let g = complementary_pair(&u, &act(&[1, 0]), &half()).unwrap();
    assert_eq!(g, act(&[0, 1]));
    let f = act(&[5, -2]);
    let k = rat(2, 3);
    let back = complementary_pair(&u, &complementary_pair(&u, &f, &k).unwrap(), &k).unwrap();
    assert_eq!(back, f);
}

#[test]
fn alpha_set_constant_line() {
    let spec = wide();
    let f = act(&[2, 2]);
    let full = mixture_preference_alpha_set(&spec, &f, &f, &act(&[1, 1])).unwrap();
    assert!(full.contains(&int(0)) && full.contains(&int(1)));
    let none = mixture_preference_alpha_set(&spec, &f, &f, &act(&[3, 3])).unwrap();
    assert!(none.is_empty());
}

#[test]
fn alpha_set_between_dominated_acts() {
    // C = D = {(1/2, 1/2)}: mix of (4,0) and (0,0) is worth 2a, above 1 iff a > 1/2
    let spec = hp(&[half()], &[half()]);
    let s = mixture_preference_alpha_set(&spec, &act(&[4, 0]), &act(&[0, 0]), &act(&[1, 1])).unwrap();
    assert_eq!(s.intervals().len(), 1);
    assert_eq!(s.intervals()[0].lo, half());
    assert!(!s.contains(&half()));
    assert!(s.contains(&int(1)));
    assert!(s.is_relatively_open());
}

#[test]
fn alpha_set_far_above_is_empty() {
    let s = mixture_preference_alpha_set(&wide(), &act(&[1, 0]), &act(&[0, 1]), &act(&[9, 9])).unwrap();
    assert!(s.is_empty());
}

#[test]
fn hp_passes_axioms_one_to_seven() {
    let spec = wide();
    for a in &Axiom::ALL[..7] {
        let r = check_axiom(&spec, *a, 300, 7);
        assert!(r.verdict.is_pass(), "{a}: {:?}", r.verdict);
    }
}

#[test]
fn twofold_violates_monotonicity_and_consonance() {
    let t = Twofold::new(AffineUtility::identity(), set(&[rat(1, 3), rat(1, 2)]), set(&[rat(1, 4), rat(2, 3)])).unwrap();
    for a in [Axiom::Monotonicity, Axiom::ConsonantEvidence] {
        let r = check_axiom(&t, a, 2000, 1);
        assert!(r.verdict.is_violated(), "{a}: {:?}", r.verdict);
    }
}

#[test]
fn bewley_passes_unanimity() {
    let b = Bewley::new(AffineUtility::identity(), set(&[rat(1, 5), rat(3, 4)]));
    let r = check_axiom(&b, Axiom::IncomparabilityUnanimity, 500, 3);
    assert!(r.verdict.is_pass(), "{:?}", r.verdict);
}

#[test]
fn pessimism_probe_fires_when_d_escapes_c() {
    // C strictly inside D
    let spec = hp(&[half()], &[rat(1, 3), rat(2, 3)]);
    let r = check_axiom(&spec, Axiom::Pessimism, 10, 0);
    let w = r.verdict.witness().expect("constructed witness");
    assert!(w.note.contains("separating"));
    let (f, k) = (&w.profiles["f"], &w.constants["k"]);
    assert!(spec.compare_profiles(f, &UtilityProfile::constant(k.clone(), 2)).is_first_strict());
}

#[test]
fn concordance_agrees_with_containments() {
    let spec1 = hp(&[int(1)], &[rat(1, 3), int(1)]);
    let r = check_concordance_axioms(&spec1, 200, 5);
    assert!(r.c_subset_d && !r.d_subset_c);
    assert!(r.consistent);
    assert!(r.pessimism.verdict.is_violated());
    assert!(r.optimism.verdict.is_pass());

    let concordant = HopeAndPrepare::concordant(AffineUtility::identity(), set(&[rat(1, 4), rat(3, 4)]));
    let r = check_concordance_axioms(&concordant, 200, 5);
    assert!(r.consistent && r.pessimism.verdict.is_pass() && r.optimism.verdict.is_pass());
}

#[test]
fn concordance_on_random_specs() {
    for i in 0..30 {
        let spec = random_hp(&mut trial_rng(11, i), 3, 3);
        let r = check_concordance_axioms(&spec, 100, i);
        assert!(r.consistent, "instance {i}: {r:?}");
    }
}

#[test]
fn derived_relations_hold() {
    let r = check_derived_relations(&wide(), 400, 2);
    assert!(r.verdict.is_pass(), "{:?}", r.verdict);
}

#[test]
fn constant_band_is_degenerate() {
    let spec = wide();
    let b = spec.incomparability_band(&prof(&[3, 3])).unwrap();
    assert_eq!((b.lo, b.hi), (int(3), int(3)));
}

#[test]
fn band_agrees_with_grid() {
    let spec = wide();
    let grid: Vec<Rational> = (-40..=40).map(|k| rat(k, 4)).collect();
    for i in 0..50 {
        let f = random_profile(&mut trial_rng(3, i), 2);
        assert!(band_matches_grid(&spec, &f, &grid));
    }
}

#[test]
fn existential_definitions_match_closed_form() {
    let spec = wide();
    for i in 0..200 {
        let rng = &mut trial_rng(9, i);
        let (f, g) = (random_profile(rng, 2), random_profile(rng, 2));
        assert_eq!(pessimistic_by_constants(&spec, &f, &g), spec.pessimistic_profiles(&f, &g).is_first_strict());
        assert_eq!(optimistic_by_constants(&spec, &f, &g), spec.optimistic_profiles(&f, &g).is_first_strict());
    }
}

#[test]
fn violated_reports_replay() {
    let t = Twofold::new(AffineUtility::identity(), set(&[rat(1, 3), rat(1, 2)]), set(&[rat(1, 2), rat(2, 3)])).unwrap();
    let a = check_axiom(&t, Axiom::Monotonicity, 500, 42);
    let b = check_axiom(&t, Axiom::Monotonicity, 500, 42);
    assert!(a.verdict.is_violated());
    assert_eq!(a, b);
}
