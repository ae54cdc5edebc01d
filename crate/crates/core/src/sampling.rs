//! Deterministic random instances and the parallel trial runner.
//!
//! Every trial draws from its own generator derived from `(seed, trial)`, so
//! reports do not depend on thread scheduling and any witness can be replayed
//! from the seed alone.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::act::{AffineUtility, UtilityProfile};
use crate::credal::{CredalSet, ProbabilityVector};
use crate::criteria::HopeAndPrepare;
use crate::rational::{int, rat, Rational};

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Largest denominator used for sampled probabilities and weights.
pub const MAX_DENOMINATOR: i64 = 12;

/// A probability vector whose entries share a random denominator `<= 12`.
pub fn random_probability(rng: &mut impl Rng, n: usize) -> ProbabilityVector {
    let d = rng.random_range(1..=MAX_DENOMINATOR);
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.random_range(0..=d)).collect();
    cuts.push(0);
    cuts.push(d);
    cuts.sort_unstable();
    let mass = cuts.windows(2).map(|w| rat(w[1] - w[0], d)).collect();
    ProbabilityVector::new(mass).expect("composition sums to one")
}

pub fn random_credal(rng: &mut impl Rng, n: usize, max_generators: usize) -> CredalSet {
    let k = rng.random_range(1..=max_generators.max(1));
    CredalSet::new((0..k).map(|_| random_probability(rng, n)).collect()).expect("same length")
}

/// A random point of `k`, as a random convex combination of its generators.
pub fn random_member(rng: &mut impl Rng, k: &CredalSet) -> ProbabilityVector {
    let weights = random_probability(rng, k.generators().len());
    let n = k.n_states();
    let mut mass = vec![Rational::zero(); n];
    for (w, p) in weights.mass().iter().zip(k.generators()) {
        for (m, q) in mass.iter_mut().zip(p.mass()) {
            *m += w * q;
        }
    }
    ProbabilityVector::new(mass).expect("convex combination")
}

/// Utility values `a / b` with `|a| <= 12` and `b <= 4`.
pub fn random_value(rng: &mut impl Rng) -> Rational {
    rat(rng.random_range(-12..=12), rng.random_range(1..=4))
}

pub fn random_profile(rng: &mut impl Rng, n: usize) -> UtilityProfile {
    UtilityProfile::new((0..n).map(|_| random_value(rng)).collect())
}

/// A strictly positive increment vector whose entries span two orders of
/// magnitude, so dominance probes reach both coarse and thin margins.
pub fn random_increment(rng: &mut impl Rng, n: usize) -> UtilityProfile {
    UtilityProfile::new(
        (0..n)
            .map(|_| rat(rng.random_range(1..=MAX_DENOMINATOR), rng.random_range(1..=MAX_DENOMINATOR)))
            .collect(),
    )
}

/// A strictly positive increment raising one state by up to 12 and every
/// other state by `10^-k` for `k` in `1..=4`, for functionals whose
/// gradient is negative only in a thin direction.
pub fn random_spike_increment(rng: &mut impl Rng, n: usize) -> UtilityProfile {
    let spike = rng.random_range(0..n);
    let base = Rational::new(1.into(), 10i64.pow(rng.random_range(1..=4)).into());
    let top = rat(rng.random_range(1..=MAX_DENOMINATOR), rng.random_range(1..=4));
    UtilityProfile::new(
        (0..n)
            .map(|s| if s == spike { top.clone() } else { base.clone() })
            .collect(),
    )
}

/// A weight in the open interval `(0, 1)`.
pub fn random_open_weight(rng: &mut impl Rng) -> Rational {
    let d = rng.random_range(2..=MAX_DENOMINATOR);
    rat(rng.random_range(1..d), d)
}

/// A weight in the closed interval `[0, 1]`.
pub fn random_unit_weight(rng: &mut impl Rng) -> Rational {
    let d = rng.random_range(1..=MAX_DENOMINATOR);
    rat(rng.random_range(0..=d), d)
}

/// A random non-constant utility over `Q^dim`.
pub fn random_utility(rng: &mut impl Rng, dim: usize) -> AffineUtility {
    loop {
        let weights: Vec<Rational> = (0..dim).map(|_| random_value(rng)).collect();
        if weights.iter().any(|w| !w.is_zero()) {
            return AffineUtility::new(weights, random_value(rng)).expect("non-constant");
        }
    }
}

/// A hope-and-prepare preference over `n` states whose sets overlap by
/// construction: one generator of `D` is drawn from inside `C`. Roughly one
/// instance in five is concordant.
pub fn random_hp(rng: &mut impl Rng, n: usize, max_generators: usize) -> HopeAndPrepare {
    let c = random_credal(rng, n, max_generators);
    if rng.random_ratio(1, 5) {
        return HopeAndPrepare::concordant(AffineUtility::identity(), c);
    }
    let mut gens = vec![random_member(rng, &c)];
    let extra = rng.random_range(0..max_generators.max(1));
    gens.extend((0..extra).map(|_| random_probability(rng, n)));
    let d = CredalSet::new(gens).expect("same length");
    HopeAndPrepare::new(AffineUtility::identity(), c, d).expect("overlap by construction")
}

/// Some `u(x) = x` hope-and-prepare preference whose sets are not both the
/// same singleton, so that some act has a genuine range.
pub fn random_incomplete_hp(rng: &mut impl Rng, n: usize, max_generators: usize) -> HopeAndPrepare {
    assert!(n >= 2, "a single state admits only complete preferences");
    loop {
        let hp = random_hp(rng, n, max_generators);
        let (c, d) = (hp.pessimistic().pruned(), hp.optimistic().pruned());
        let single = c.generators().len() == 1 && d.generators() == c.generators();
        if !single {
            return hp;
        }
    }
}

/// A replayable counterexample or certificate probe.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Witness {
    /// Trial index, or `None` for the deterministic constructive probes.
    pub trial: Option<u64>,
    pub profiles: BTreeMap<String, UtilityProfile>,
    #[serde(serialize_with = "serialize_rational_map")]
    pub constants: BTreeMap<String, Rational>,
    #[serde(serialize_with = "serialize_rational_map")]
    pub weights: BTreeMap<String, Rational>,
    pub note: String,
}

fn serialize_rational_map<S: serde::Serializer>(
    map: &BTreeMap<String, Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(map.len()))?;
    for (k, v) in map {
        m.serialize_entry(k, &crate::rational::format_rational(v))?;
    }
    m.end()
}

impl Witness {
    pub fn new(note: impl Into<String>) -> Self {
        Self {
            note: note.into(),
            ..Self::default()
        }
    }

    pub fn profile(mut self, name: &str, p: &UtilityProfile) -> Self {
        self.profiles.insert(name.to_string(), p.clone());
        self
    }

    pub fn constant(mut self, name: &str, k: &Rational) -> Self {
        self.constants.insert(name.to_string(), k.clone());
        self
    }

    pub fn weight(mut self, name: &str, a: &Rational) -> Self {
        self.weights.insert(name.to_string(), a.clone());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Violated(Box<Witness>),
    /// No trial exercised the property's hypothesis, or the search budget ran
    /// out where a violation is known to exist.
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Self::Violated(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Self::Violated(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Pass => "PASS",
            Self::Violated(_) => "VIOLATED",
            Self::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// The result of one sampled trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trial {
    /// The hypothesis of the property did not hold; nothing was tested.
    Vacuous,
    Held,
    Violated(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub trials_run: u64,
    pub active: u64,
    pub witness: Option<Witness>,
}

impl SearchOutcome {
    /// Pass when some trial was active and none failed.
    pub fn verdict(&self) -> Verdict {
        match &self.witness {
            Some(w) => Verdict::Violated(Box::new(w.clone())),
            None if self.active == 0 => Verdict::Inconclusive,
            None => Verdict::Pass,
        }
    }
}

const CHUNK: u64 = 256;

/// Runs `trials` independent trials in parallel and stops after the first
/// chunk containing a violation. The reported witness is always the one with
/// the smallest trial index.
pub fn run_trials<F>(trials: u64, seed: u64, trial: F) -> SearchOutcome
where
    F: Fn(&mut TrialRng) -> Trial + Sync,
{
    let mut active = 0;
    let mut start = 0;
    while start < trials {
        let end = (start + CHUNK).min(trials);
        let results: Vec<Trial> = (start..end)
            .into_par_iter()
            .map(|t| trial(&mut trial_rng(seed, t)))
            .collect();
        for (offset, r) in results.into_iter().enumerate() {
            let t = start + offset as u64;
            match r {
                Trial::Vacuous => {}
                Trial::Held => active += 1,
                Trial::Violated(mut w) => {
                    w.trial = Some(t);
                    return SearchOutcome {
                        trials_run: t + 1,
                        active: active + 1,
                        witness: Some(w),
                    };
                }
            }
        }
        start = end;
    }
    SearchOutcome {
        trials_run: trials,
        active,
        witness: None,
    }
}

/// Candidate constants around a closed band: both endpoints, the midpoint
/// and points just outside.
pub fn band_probes(lo: &Rational, hi: &Rational, rng: &mut impl Rng) -> Vec<Rational> {
    let step = rat(1, rng.random_range(1..=8));
    let mid = (lo + hi) / int(2);
    vec![
        lo.clone(),
        hi.clone(),
        mid,
        lo - &step,
        hi + &step,
        lo + (hi - lo) * random_unit_weight(rng),
    ]
}
