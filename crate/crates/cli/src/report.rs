//! JSON renderings of evaluations and comparisons.

use hopeprep_core::rational::format_rational;
use hopeprep_core::{Comparison, CredalSet, PreferenceSpec, Rational, Relation, UtilityProfile};
use serde::Serialize;
use serde_json::{json, Value};

/// One side-by-side quantity behind a comparison verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub first: String,
    pub second: String,
}

pub fn r(x: &Rational) -> String {
    format_rational(x)
}

pub fn verdict_text(c: Comparison, first: &str, second: &str) -> String {
    match c {
        Comparison::FirstStrict => format!("{first} ≻ {second}"),
        Comparison::SecondStrict => format!("{second} ≻ {first}"),
        Comparison::Incomparable => format!("{first} ⋈ {second}"),
        Comparison::Indifferent => format!("{first} ~ {second}"),
    }
}

fn range(k: &CredalSet, f: &UtilityProfile) -> Value {
    json!({"min": r(&k.min_expectation(f)), "max": r(&k.max_expectation(f))})
}

/// The quantities each criterion evaluates an act by.
pub fn evaluation(spec: &PreferenceSpec, f: &UtilityProfile) -> Value {
    let mut v = match spec {
        PreferenceSpec::HopeAndPrepare(s) => json!({
            "lower": r(&s.lower(f)),
            "upper": r(&s.upper(f)),
            "pessimistic": range(s.pessimistic(), f),
            "optimistic": range(s.optimistic(), f),
        }),
        PreferenceSpec::Bewley(s) => json!({
            "scenarios": range(s.scenarios(), f),
            "expectations": s.scenarios().generators().iter().map(|p| r(&p.expectation(f))).collect::<Vec<_>>(),
        }),
        PreferenceSpec::Twofold(s) => json!({
            "pessimistic": range(s.pessimistic(), f),
            "optimistic": range(s.optimistic(), f),
        }),
        PreferenceSpec::NascimentoRiella(s) => json!({
            "class_minima": s.class().iter().map(|k| r(&k.min_expectation(f))).collect::<Vec<_>>(),
        }),
        PreferenceSpec::AlphaMeu(s) => json!({
            "value": r(&s.value_of(f)),
            "alpha": r(s.alpha()),
            "pessimistic": range(s.pessimistic(), f),
            "optimistic": range(s.optimistic(), f),
        }),
    };
    v["incomparability_band"] = match spec.incomparability_band(f) {
        Some(b) => json!({"lo": r(&b.lo), "hi": r(&b.hi)}),
        None => Value::Null,
    };
    v
}

fn pair(label: impl Into<String>, first: &Rational, second: &Rational) -> Inequality {
    Inequality {
        label: label.into(),
        first: r(first),
        second: r(second),
    }
}

/// The numbers a verdict between `f` and `g` rests on.
pub fn inequalities(spec: &PreferenceSpec, f: &UtilityProfile, g: &UtilityProfile) -> Vec<Inequality> {
    match spec {
        PreferenceSpec::HopeAndPrepare(s) => vec![
            pair("min over pessimistic", &s.lower(f), &s.lower(g)),
            pair("max over optimistic", &s.upper(f), &s.upper(g)),
        ],
        PreferenceSpec::Bewley(s) => s
            .scenarios()
            .generators()
            .iter()
            .enumerate()
            .map(|(i, p)| pair(format!("expectation under scenario {i}"), &p.expectation(f), &p.expectation(g)))
            .collect(),
        PreferenceSpec::Twofold(s) => vec![
            pair(
                "min over pessimistic of first vs max over optimistic of second",
                &s.pessimistic().min_expectation(f),
                &s.optimistic().max_expectation(g),
            ),
            pair(
                "max over optimistic of first vs min over pessimistic of second",
                &s.optimistic().max_expectation(f),
                &s.pessimistic().min_expectation(g),
            ),
        ],
        PreferenceSpec::NascimentoRiella(s) => s
            .class()
            .iter()
            .enumerate()
            .map(|(i, k)| pair(format!("min over class member {i}"), &k.min_expectation(f), &k.min_expectation(g)))
            .collect(),
        PreferenceSpec::AlphaMeu(s) => vec![pair("alpha-MEU value", &s.value_of(f), &s.value_of(g))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopeprep_core::rational::{int, rat};
    use hopeprep_core::{AffineUtility, Bewley, HopeAndPrepare, ProbabilityVector};

    fn set(points: &[Rational]) -> CredalSet {
        CredalSet::new(
            points
                .iter()
                .map(|a| ProbabilityVector::new(vec![a.clone(), int(1) - a]).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn verdict_names_the_winner_first() {
        assert_eq!(verdict_text(Comparison::SecondStrict, "f", "g"), "g ≻ f");
        assert_eq!(verdict_text(Comparison::Incomparable, "f", "g"), "f ⋈ g");
    }

    #[test]
    fn hp_inequalities_pair_bounds() {
        let spec: PreferenceSpec = HopeAndPrepare::concordant(AffineUtility::identity(), set(&[rat(1, 4), rat(3, 4)])).into();
        let f = UtilityProfile::new(vec![int(4), int(0)]);
        let g = UtilityProfile::new(vec![int(2), int(2)]);
        let ineq = inequalities(&spec, &f, &g);
        assert_eq!((ineq[0].first.as_str(), ineq[0].second.as_str()), ("1", "2"));
        assert_eq!((ineq[1].first.as_str(), ineq[1].second.as_str()), ("3", "2"));
        assert_eq!(evaluation(&spec, &f)["incomparability_band"], json!({"lo": "1", "hi": "3"}));
    }

    #[test]
    fn bewley_lists_each_scenario() {
        let spec: PreferenceSpec = Bewley::new(AffineUtility::identity(), set(&[rat(1, 4), rat(3, 4)])).into();
        let f = UtilityProfile::new(vec![int(4), int(0)]);
        assert_eq!(inequalities(&spec, &f, &f).len(), 2);
        assert_eq!(evaluation(&spec, &f)["expectations"], json!(["1", "3"]));
    }
}
