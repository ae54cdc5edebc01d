//! Multiple-prior preference criteria.
//!
//! Each criterion ranks acts through expected utilities taken over credal
//! sets. The central one is the hope-and-prepare relation: `f` beats `g`
//! exactly when it wins both the worst case over the pessimistic set `C` and
//! the best case over the optimistic set `D`. Bewley, twofold, N&R and
//! alpha-MEU preferences are implemented alongside for comparison.
//!
//! Every criterion implements [`Relation`], which works on utility profiles so
//! the property harnesses can sample directly in utility space.

mod order;

pub use order::{partial_order, StrictDigraph};

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::act::{apply_utility, Act, AffineUtility, UtilityProfile};
use crate::credal::{intersects, CredalSet};
use crate::error::{Error, Result};
use crate::mixture::{all_positive, AlphaIntervalSet, PiecewiseLinear};
use crate::rational::{is_unit_interval, one, serde_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    FirstStrict,
    SecondStrict,
    Incomparable,
    /// Only produced by weak-order criteria.
    Indifferent,
}

impl Comparison {
    pub fn reverse(self) -> Self {
        match self {
            Self::FirstStrict => Self::SecondStrict,
            Self::SecondStrict => Self::FirstStrict,
            other => other,
        }
    }

    pub fn is_first_strict(self) -> bool {
        self == Self::FirstStrict
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Self::FirstStrict | Self::SecondStrict)
    }

    fn from_conjunction(first: bool, second: bool) -> Self {
        match (first, second) {
            (true, _) => Self::FirstStrict,
            (false, true) => Self::SecondStrict,
            (false, false) => Self::Incomparable,
        }
    }

    fn from_values(a: &Rational, b: &Rational) -> Self {
        match a.cmp(b) {
            std::cmp::Ordering::Greater => Self::FirstStrict,
            std::cmp::Ordering::Less => Self::SecondStrict,
            std::cmp::Ordering::Equal => Self::Indifferent,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FirstStrict => "first_strict",
            Self::SecondStrict => "second_strict",
            Self::Incomparable => "incomparable",
            Self::Indifferent => "indifferent",
        })
    }
}

/// The interval of expected utilities an act attains over a credal set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EuRange {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl EuRange {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn is_within(&self, other: &EuRange) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

fn profile_for(u: &AffineUtility, k: &CredalSet, f: &Act) -> Result<UtilityProfile> {
    let profile = apply_utility(u, f)?;
    if profile.len() != k.n_states() {
        return Err(Error::StateMismatch {
            expected: k.n_states(),
            found: profile.len(),
        });
    }
    Ok(profile)
}

pub fn min_eu(u: &AffineUtility, k: &CredalSet, f: &Act) -> Result<Rational> {
    Ok(k.min_expectation(&profile_for(u, k, f)?))
}

pub fn max_eu(u: &AffineUtility, k: &CredalSet, f: &Act) -> Result<Rational> {
    Ok(k.max_expectation(&profile_for(u, k, f)?))
}

pub fn eu_range(u: &AffineUtility, k: &CredalSet, f: &Act) -> Result<EuRange> {
    let p = profile_for(u, k, f)?;
    Ok(EuRange::new(k.min_expectation(&p), k.max_expectation(&p)))
}

/// Strict strong-set order on ranges: both endpoints strictly higher.
pub fn strong_set_strict(rf: &EuRange, rg: &EuRange) -> Comparison {
    Comparison::from_conjunction(
        rf.lo > rg.lo && rf.hi > rg.hi,
        rg.lo > rf.lo && rg.hi > rf.hi,
    )
}

/// A binary relation over acts that compares through utility profiles.
pub trait Relation: Send + Sync {
    fn utility(&self) -> &AffineUtility;

    fn n_states(&self) -> usize;

    /// Compares two utility profiles of length [`Relation::n_states`].
    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison;

    /// The constants `k` whose constant act is incomparable to `f`, a closed
    /// interval; `None` when empty.
    fn incomparability_band(&self, f: &UtilityProfile) -> Option<EuRange>;

    /// Exact `({a : a f + (1-a) g > h}, {a : h > a f + (1-a) g})`, when the
    /// relation supports it.
    fn mixture_sets(
        &self,
        _f: &UtilityProfile,
        _g: &UtilityProfile,
        _h: &UtilityProfile,
    ) -> Option<(AlphaIntervalSet, AlphaIntervalSet)> {
        None
    }

    /// The (pessimistic, optimistic) scenario sets, for relations built from
    /// such a pair.
    fn scenario_sets(&self) -> Option<(&CredalSet, &CredalSet)> {
        None
    }

    fn compare(&self, f: &Act, g: &Act) -> Result<Comparison> {
        let pf = apply_utility(self.utility(), f)?;
        let pg = apply_utility(self.utility(), g)?;
        for p in [&pf, &pg] {
            if p.len() != self.n_states() {
                return Err(Error::StateMismatch {
                    expected: self.n_states(),
                    found: p.len(),
                });
            }
        }
        Ok(self.compare_profiles(&pf, &pg))
    }
}

fn check_pair(c: &CredalSet, d: &CredalSet) -> Result<()> {
    if c.n_states() != d.n_states() {
        return Err(Error::StateMismatch {
            expected: c.n_states(),
            found: d.n_states(),
        });
    }
    Ok(())
}

fn check_overlap(c: &CredalSet, d: &CredalSet) -> Result<()> {
    check_pair(c, d)?;
    if !intersects(c, d)? {
        return Err(Error::DisjointScenarios);
    }
    Ok(())
}

pub(crate) fn mixture_lines(k: &CredalSet, f: &UtilityProfile, g: &UtilityProfile) -> Vec<(Rational, Rational)> {
    k.generators()
        .iter()
        .map(|p| (p.expectation(g), p.expectation(f)))
        .collect()
}

pub(crate) fn min_along(k: &CredalSet, f: &UtilityProfile, g: &UtilityProfile) -> PiecewiseLinear {
    PiecewiseLinear::lower_envelope(&mixture_lines(k, f, g))
}

pub(crate) fn max_along(k: &CredalSet, f: &UtilityProfile, g: &UtilityProfile) -> PiecewiseLinear {
    PiecewiseLinear::upper_envelope(&mixture_lines(k, f, g))
}

fn constant_pl(c: Rational) -> PiecewiseLinear {
    PiecewiseLinear::constant(c)
}

fn ordered_band(a: Rational, b: Rational) -> EuRange {
    if a <= b {
        EuRange::new(a, b)
    } else {
        EuRange::new(b, a)
    }
}

/// Hope-and-prepare preference `(u, C, D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopeAndPrepare {
    pub(crate) utility: AffineUtility,
    pub(crate) pessimistic: CredalSet,
    pub(crate) optimistic: CredalSet,
}

impl HopeAndPrepare {
    /// Requires `C` and `D` to share at least one scenario.
    pub fn new(utility: AffineUtility, pessimistic: CredalSet, optimistic: CredalSet) -> Result<Self> {
        check_overlap(&pessimistic, &optimistic)?;
        Ok(Self {
            utility,
            pessimistic,
            optimistic,
        })
    }

    /// Skips the overlap requirement. The comparison rule is still well
    /// defined, but results that rely on `C ∩ D ≠ ∅` no longer apply.
    pub fn new_allowing_disjoint(
        utility: AffineUtility,
        pessimistic: CredalSet,
        optimistic: CredalSet,
    ) -> Result<Self> {
        check_pair(&pessimistic, &optimistic)?;
        Ok(Self {
            utility,
            pessimistic,
            optimistic,
        })
    }

    pub fn concordant(utility: AffineUtility, scenarios: CredalSet) -> Self {
        Self {
            utility,
            optimistic: scenarios.clone(),
            pessimistic: scenarios,
        }
    }

    pub fn pessimistic(&self) -> &CredalSet {
        &self.pessimistic
    }

    pub fn optimistic(&self) -> &CredalSet {
        &self.optimistic
    }

    pub fn overlaps(&self) -> bool {
        intersects(&self.pessimistic, &self.optimistic).expect("sizes checked")
    }

    /// Worst case over `C`.
    pub fn lower(&self, f: &UtilityProfile) -> Rational {
        self.pessimistic.min_expectation(f)
    }

    /// Best case over `D`.
    pub fn upper(&self, f: &UtilityProfile) -> Rational {
        self.optimistic.max_expectation(f)
    }

    /// `≻_p`: strict comparison of worst cases over `C`.
    pub fn pessimistic_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        Comparison::from_values(&self.lower(f), &self.lower(g))
    }

    /// `≻_o`: strict comparison of best cases over `D`.
    pub fn optimistic_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        Comparison::from_values(&self.upper(f), &self.upper(g))
    }
}

impl Relation for HopeAndPrepare {
    fn utility(&self) -> &AffineUtility {
        &self.utility
    }

    fn n_states(&self) -> usize {
        self.pessimistic.n_states()
    }

    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        let (lf, lg) = (self.lower(f), self.lower(g));
        let (uf, ug) = (self.upper(f), self.upper(g));
        Comparison::from_conjunction(lf > lg && uf > ug, lg > lf && ug > uf)
    }

    fn incomparability_band(&self, f: &UtilityProfile) -> Option<EuRange> {
        Some(ordered_band(self.lower(f), self.upper(f)))
    }

    fn mixture_sets(
        &self,
        f: &UtilityProfile,
        g: &UtilityProfile,
        h: &UtilityProfile,
    ) -> Option<(AlphaIntervalSet, AlphaIntervalSet)> {
        let lo = min_along(&self.pessimistic, f, g);
        let hi = max_along(&self.optimistic, f, g);
        let (lh, uh) = (constant_pl(self.lower(h)), constant_pl(self.upper(h)));
        Some((
            all_positive(&[lo.minus(&lh), hi.minus(&uh)]),
            all_positive(&[lh.minus(&lo), uh.minus(&hi)]),
        ))
    }

    fn scenario_sets(&self) -> Option<(&CredalSet, &CredalSet)> {
        Some((&self.pessimistic, &self.optimistic))
    }
}

/// Bewley preference `(u, C)`: unanimity of expected utility over `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bewley {
    pub(crate) utility: AffineUtility,
    pub(crate) scenarios: CredalSet,
}

impl Bewley {
    pub fn new(utility: AffineUtility, scenarios: CredalSet) -> Self {
        Self { utility, scenarios }
    }

    pub fn scenarios(&self) -> &CredalSet {
        &self.scenarios
    }
}

impl Relation for Bewley {
    fn utility(&self) -> &AffineUtility {
        &self.utility
    }

    fn n_states(&self) -> usize {
        self.scenarios.n_states()
    }

    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        let gens = self.scenarios.generators();
        let first = gens.iter().all(|p| p.expectation(f) > p.expectation(g));
        let second = !first && gens.iter().all(|p| p.expectation(g) > p.expectation(f));
        Comparison::from_conjunction(first, second)
    }

    fn incomparability_band(&self, f: &UtilityProfile) -> Option<EuRange> {
        Some(EuRange::new(
            self.scenarios.min_expectation(f),
            self.scenarios.max_expectation(f),
        ))
    }

    fn mixture_sets(
        &self,
        f: &UtilityProfile,
        g: &UtilityProfile,
        h: &UtilityProfile,
    ) -> Option<(AlphaIntervalSet, AlphaIntervalSet)> {
        let (mut up, mut down) = (Vec::new(), Vec::new());
        for p in self.scenarios.generators() {
            let line = PiecewiseLinear::line((p.expectation(g), p.expectation(f)));
            let level = constant_pl(p.expectation(h));
            up.push(line.minus(&level));
            down.push(level.minus(&line));
        }
        Some((all_positive(&up), all_positive(&down)))
    }

    fn scenario_sets(&self) -> Option<(&CredalSet, &CredalSet)> {
        Some((&self.scenarios, &self.scenarios))
    }
}

/// Twofold preference `(u, C, D)`: worst case over `C` beats the rival's
/// best case over `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Twofold {
    pub(crate) utility: AffineUtility,
    pub(crate) pessimistic: CredalSet,
    pub(crate) optimistic: CredalSet,
}

impl Twofold {
    pub fn new(utility: AffineUtility, pessimistic: CredalSet, optimistic: CredalSet) -> Result<Self> {
        check_overlap(&pessimistic, &optimistic)?;
        Ok(Self {
            utility,
            pessimistic,
            optimistic,
        })
    }

    pub fn pessimistic(&self) -> &CredalSet {
        &self.pessimistic
    }

    pub fn optimistic(&self) -> &CredalSet {
        &self.optimistic
    }
}

impl Relation for Twofold {
    fn utility(&self) -> &AffineUtility {
        &self.utility
    }

    fn n_states(&self) -> usize {
        self.pessimistic.n_states()
    }

    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        let first = self.pessimistic.min_expectation(f) > self.optimistic.max_expectation(g);
        let second = self.pessimistic.min_expectation(g) > self.optimistic.max_expectation(f);
        Comparison::from_conjunction(first, second)
    }

    fn incomparability_band(&self, f: &UtilityProfile) -> Option<EuRange> {
        let lo = self.pessimistic.min_expectation(f);
        let hi = self.optimistic.max_expectation(f);
        (lo <= hi).then(|| EuRange::new(lo, hi))
    }

    fn mixture_sets(
        &self,
        f: &UtilityProfile,
        g: &UtilityProfile,
        h: &UtilityProfile,
    ) -> Option<(AlphaIntervalSet, AlphaIntervalSet)> {
        let lo = min_along(&self.pessimistic, f, g);
        let hi = max_along(&self.optimistic, f, g);
        let uh = constant_pl(self.optimistic.max_expectation(h));
        let lh = constant_pl(self.pessimistic.min_expectation(h));
        Some((
            all_positive(&[lo.minus(&uh)]),
            all_positive(&[lh.minus(&hi)]),
        ))
    }

    fn scenario_sets(&self) -> Option<(&CredalSet, &CredalSet)> {
        Some((&self.pessimistic, &self.optimistic))
    }
}

/// N&R preference: unanimity of maxmin evaluations over a class of sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NascimentoRiella {
    pub(crate) utility: AffineUtility,
    pub(crate) class: Vec<CredalSet>,
}

impl NascimentoRiella {
    pub fn new(utility: AffineUtility, class: Vec<CredalSet>) -> Result<Self> {
        let first = class.first().ok_or(Error::Empty("class of credal sets"))?;
        for k in &class {
            check_pair(first, k)?;
        }
        Ok(Self { utility, class })
    }

    pub fn class(&self) -> &[CredalSet] {
        &self.class
    }
}

impl Relation for NascimentoRiella {
    fn utility(&self) -> &AffineUtility {
        &self.utility
    }

    fn n_states(&self) -> usize {
        self.class[0].n_states()
    }

    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        let first = self
            .class
            .iter()
            .all(|k| k.min_expectation(f) > k.min_expectation(g));
        let second = !first
            && self
                .class
                .iter()
                .all(|k| k.min_expectation(g) > k.min_expectation(f));
        Comparison::from_conjunction(first, second)
    }

    fn incomparability_band(&self, f: &UtilityProfile) -> Option<EuRange> {
        let mins: Vec<Rational> = self.class.iter().map(|k| k.min_expectation(f)).collect();
        Some(EuRange::new(
            mins.iter().min().unwrap().clone(),
            mins.iter().max().unwrap().clone(),
        ))
    }

    fn mixture_sets(
        &self,
        f: &UtilityProfile,
        g: &UtilityProfile,
        h: &UtilityProfile,
    ) -> Option<(AlphaIntervalSet, AlphaIntervalSet)> {
        let (mut up, mut down) = (Vec::new(), Vec::new());
        for k in &self.class {
            let lo = min_along(k, f, g);
            let level = constant_pl(k.min_expectation(h));
            up.push(lo.minus(&level));
            down.push(level.minus(&lo));
        }
        Some((all_positive(&up), all_positive(&down)))
    }
}

/// Asymmetric alpha-MEU preference `(u, C, D, alpha)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaMeu {
    pub(crate) utility: AffineUtility,
    pub(crate) pessimistic: CredalSet,
    pub(crate) optimistic: CredalSet,
    #[serde(with = "serde_rational")]
    pub(crate) alpha: Rational,
}

impl AlphaMeu {
    pub fn new(
        utility: AffineUtility,
        pessimistic: CredalSet,
        optimistic: CredalSet,
        alpha: Rational,
    ) -> Result<Self> {
        if !is_unit_interval(&alpha) {
            return Err(Error::WeightOutOfRange(alpha.to_string()));
        }
        check_overlap(&pessimistic, &optimistic)?;
        Ok(Self {
            utility,
            pessimistic,
            optimistic,
            alpha,
        })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn pessimistic(&self) -> &CredalSet {
        &self.pessimistic
    }

    pub fn optimistic(&self) -> &CredalSet {
        &self.optimistic
    }

    pub fn value_of(&self, f: &UtilityProfile) -> Rational {
        weighted_value(&self.pessimistic, &self.optimistic, &self.alpha, f)
    }
}

pub(crate) fn weighted_value(
    c: &CredalSet,
    d: &CredalSet,
    alpha: &Rational,
    f: &UtilityProfile,
) -> Rational {
    alpha * c.min_expectation(f) + (one() - alpha) * d.max_expectation(f)
}

pub(crate) fn weighted_mixture_sets(
    c: &CredalSet,
    d: &CredalSet,
    alpha: &Rational,
    f: &UtilityProfile,
    g: &UtilityProfile,
    h: &UtilityProfile,
) -> (AlphaIntervalSet, AlphaIntervalSet) {
    let lo = min_along(c, f, g);
    let hi = max_along(d, f, g);
    let value = PiecewiseLinear::combine(&[(alpha.clone(), &lo), (one() - alpha, &hi)], &Rational::zero());
    let level = constant_pl(weighted_value(c, d, alpha, h));
    (
        all_positive(&[value.minus(&level)]),
        all_positive(&[level.minus(&value)]),
    )
}

impl Relation for AlphaMeu {
    fn utility(&self) -> &AffineUtility {
        &self.utility
    }

    fn n_states(&self) -> usize {
        self.pessimistic.n_states()
    }

    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        Comparison::from_values(&self.value_of(f), &self.value_of(g))
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

/// Any of the supported criteria.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PreferenceSpec {
    HopeAndPrepare(HopeAndPrepare),
    Bewley(Bewley),
    Twofold(Twofold),
    #[serde(rename = "nr")]
    NascimentoRiella(NascimentoRiella),
    AlphaMeu(AlphaMeu),
}

impl PreferenceSpec {
    fn inner(&self) -> &dyn Relation {
        match self {
            Self::HopeAndPrepare(s) => s,
            Self::Bewley(s) => s,
            Self::Twofold(s) => s,
            Self::NascimentoRiella(s) => s,
            Self::AlphaMeu(s) => s,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::HopeAndPrepare(_) => "hope_and_prepare",
            Self::Bewley(_) => "bewley",
            Self::Twofold(_) => "twofold",
            Self::NascimentoRiella(_) => "nr",
            Self::AlphaMeu(_) => "alpha_meu",
        }
    }
}

impl Relation for PreferenceSpec {
    fn utility(&self) -> &AffineUtility {
        self.inner().utility()
    }

    fn n_states(&self) -> usize {
        self.inner().n_states()
    }

    fn compare_profiles(&self, f: &UtilityProfile, g: &UtilityProfile) -> Comparison {
        self.inner().compare_profiles(f, g)
    }

    fn incomparability_band(&self, f: &UtilityProfile) -> Option<EuRange> {
        self.inner().incomparability_band(f)
    }

    fn mixture_sets(
        &self,
        f: &UtilityProfile,
        g: &UtilityProfile,
        h: &UtilityProfile,
    ) -> Option<(AlphaIntervalSet, AlphaIntervalSet)> {
        self.inner().mixture_sets(f, g, h)
    }

    fn scenario_sets(&self) -> Option<(&CredalSet, &CredalSet)> {
        self.inner().scenario_sets()
    }
}

macro_rules! spec_from {
    ($($t:ident),*) => {$(
        impl From<$t> for PreferenceSpec {
            fn from(s: $t) -> Self {
                Self::$t(s)
            }
        }
    )*};
}
spec_from!(HopeAndPrepare, Bewley, Twofold, AlphaMeu);

impl From<NascimentoRiella> for PreferenceSpec {
    fn from(s: NascimentoRiella) -> Self {
        Self::NascimentoRiella(s)
    }
}

pub fn hp_compare(spec: &HopeAndPrepare, f: &Act, g: &Act) -> Result<Comparison> {
    spec.compare(f, g)
}

pub fn bewley_compare(spec: &Bewley, f: &Act, g: &Act) -> Result<Comparison> {
    spec.compare(f, g)
}

pub fn twofold_compare(spec: &Twofold, f: &Act, g: &Act) -> Result<Comparison> {
    spec.compare(f, g)
}

pub fn nr_compare(spec: &NascimentoRiella, f: &Act, g: &Act) -> Result<Comparison> {
    spec.compare(f, g)
}

pub fn alpha_meu_value(spec: &AlphaMeu, f: &Act) -> Result<Rational> {
    Ok(spec.value_of(&profile_for(&spec.utility, &spec.pessimistic, f)?))
}

pub fn alpha_meu_compare(spec: &AlphaMeu, f: &Act, g: &Act) -> Result<Comparison> {
    spec.compare(f, g)
}

pub fn pessimistic_compare(spec: &HopeAndPrepare, f: &Act, g: &Act) -> Result<Comparison> {
    let pf = profile_for(&spec.utility, &spec.pessimistic, f)?;
    let pg = profile_for(&spec.utility, &spec.pessimistic, g)?;
    Ok(spec.pessimistic_profiles(&pf, &pg))
}

pub fn optimistic_compare(spec: &HopeAndPrepare, f: &Act, g: &Act) -> Result<Comparison> {
    let pf = profile_for(&spec.utility, &spec.optimistic, f)?;
    let pg = profile_for(&spec.utility, &spec.optimistic, g)?;
    Ok(spec.optimistic_profiles(&pf, &pg))
}
