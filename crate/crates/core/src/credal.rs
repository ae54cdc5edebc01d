//! Finitely generated credal sets.
//!
//! A credal set is stored by its generators only. Membership, containment and
//! intersection are decided by exact feasibility problems over convex weights,
//! and separation by a small max-margin program; see [`crate::lp`].

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::act::{StateSpace, UtilityProfile};
use crate::error::{Error, Result};
use crate::lp::{feasible_point, solve, LpOutcome, StandardForm};
use crate::rational::{int, serde_rational_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProbabilityVector(#[serde(with = "serde_rational_vec")] Vec<Rational>);

impl ProbabilityVector {
    pub fn new(mass: Vec<Rational>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::Empty("probability vector"));
        }
        if let Some((i, m)) = mass.iter().enumerate().find(|(_, m)| m.is_negative()) {
            return Err(Error::InvalidProbability(format!(
                "entry {i} is negative ({m})"
            )));
        }
        let total: Rational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidProbability(format!(
                "entries sum to {total}, not 1"
            )));
        }
        Ok(Self(mass))
    }

    /// Point mass on state `i` of `n`.
    pub fn dirac(n: usize, i: usize) -> Self {
        let mut mass = vec![Rational::zero(); n];
        mass[i] = Rational::one();
        Self(mass)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mass(&self) -> &[Rational] {
        &self.0
    }

    pub fn expectation(&self, profile: &UtilityProfile) -> Rational {
        profile.dot(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CredalSet {
    generators: Vec<ProbabilityVector>,
}

impl CredalSet {
    pub fn new(generators: Vec<ProbabilityVector>) -> Result<Self> {
        let first = generators.first().ok_or(Error::Empty("credal set"))?;
        let n = first.len();
        if let Some(bad) = generators.iter().find(|p| p.len() != n) {
            return Err(Error::StateMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self { generators })
    }

    pub fn singleton(p: ProbabilityVector) -> Self {
        Self {
            generators: vec![p],
        }
    }

    pub fn n_states(&self) -> usize {
        self.generators[0].len()
    }

    pub fn generators(&self) -> &[ProbabilityVector] {
        &self.generators
    }

    /// Minimum expectation of `profile`; attained at a generator.
    pub fn min_expectation(&self, profile: &UtilityProfile) -> Rational {
        self.generators
            .iter()
            .map(|p| p.expectation(profile))
            .min()
            .expect("non-empty credal set")
    }

    pub fn max_expectation(&self, profile: &UtilityProfile) -> Rational {
        self.generators
            .iter()
            .map(|p| p.expectation(profile))
            .max()
            .expect("non-empty credal set")
    }

    /// Same hull with duplicate and non-extreme generators removed.
    pub fn pruned(&self) -> CredalSet {
        let mut kept: Vec<ProbabilityVector> = Vec::new();
        for p in &self.generators {
            if !kept.contains(p) {
                kept.push(p.clone());
            }
        }
        let mut i = 0;
        while kept.len() > 1 && i < kept.len() {
            let candidate = kept.remove(i);
            let rest = CredalSet {
                generators: kept.clone(),
            };
            if hull_contains(&rest, &candidate) {
                continue;
            }
            kept.insert(i, candidate);
            i += 1;
        }
        CredalSet { generators: kept }
    }

    fn check_states(&self, n: usize) -> Result<()> {
        if self.n_states() != n {
            return Err(Error::StateMismatch {
                expected: n,
                found: self.n_states(),
            });
        }
        Ok(())
    }
}

fn hull_contains(k: &CredalSet, p: &ProbabilityVector) -> bool {
    // weights lambda >= 0 with sum_j lambda_j q_j = p; sum lambda = 1 follows
    // from both sides summing to one but is kept for clarity of the system
    let g = k.generators.len();
    let mut lp = StandardForm::new(g);
    for s in 0..k.n_states() {
        lp.push_row(
            k.generators.iter().map(|q| q.0[s].clone()).collect(),
            p.0[s].clone(),
        );
    }
    lp.push_row(vec![Rational::one(); g], Rational::one());
    feasible_point(&lp).is_some()
}

pub fn contains_point(k: &CredalSet, p: &ProbabilityVector) -> Result<bool> {
    k.check_states(p.len())?;
    Ok(hull_contains(k, p))
}

/// `co(A) ⊆ co(B)`: every generator of `a` lies in the hull of `b`.
pub fn is_subset(a: &CredalSet, b: &CredalSet) -> Result<bool> {
    b.check_states(a.n_states())?;
    Ok(a.generators.iter().all(|p| hull_contains(b, p)))
}

pub fn is_equal(a: &CredalSet, b: &CredalSet) -> Result<bool> {
    Ok(is_subset(a, b)? && is_subset(b, a)?)
}

/// Whether the two hulls share a point: one joint feasibility system in the
/// convex weights of both generator lists.
pub fn intersects(a: &CredalSet, b: &CredalSet) -> Result<bool> {
    b.check_states(a.n_states())?;
    let (ga, gb) = (a.generators.len(), b.generators.len());
    let mut lp = StandardForm::new(ga + gb);
    for s in 0..a.n_states() {
        let mut row: Vec<Rational> = a.generators.iter().map(|q| q.0[s].clone()).collect();
        row.extend(b.generators.iter().map(|q| -q.0[s].clone()));
        lp.push_row(row, Rational::zero());
    }
    let mut row = vec![Rational::one(); ga];
    row.extend(vec![Rational::zero(); gb]);
    lp.push_row(row, Rational::one());
    let mut row = vec![Rational::zero(); ga];
    row.extend(vec![Rational::one(); gb]);
    lp.push_row(row, Rational::one());
    Ok(feasible_point(&lp).is_some())
}

/// Convex hull of a union of credal sets, redundant generators pruned.
pub fn hull_union(sets: &[CredalSet]) -> Result<CredalSet> {
    let first = sets.first().ok_or(Error::Empty("list of credal sets"))?;
    let n = first.n_states();
    let mut generators = Vec::new();
    for k in sets {
        k.check_states(n)?;
        generators.extend(k.generators.iter().cloned());
    }
    Ok(CredalSet { generators }.pruned())
}

/// All probability vectors on the state space: the hull of the Dirac masses.
pub fn full_simplex(space: &StateSpace) -> CredalSet {
    simplex(space.len())
}

pub fn simplex(n: usize) -> CredalSet {
    CredalSet {
        generators: (0..n).map(|i| ProbabilityVector::dirac(n, i)).collect(),
    }
}

/// A profile strictly separating two hulls: every expectation over `above`
/// exceeds `threshold`, every expectation over `below` falls short of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub profile: UtilityProfile,
    pub threshold: Rational,
}

/// Finds `phi` in `[-1, 1]^n` and `s` maximizing the margin `t` in
/// `min_above phi >= s + t`, `max_below phi <= s - t`. A positive optimum is
/// a strict separation; otherwise the hulls meet and `None` is returned.
pub fn separating_profile(above: &CredalSet, below: &CredalSet) -> Result<Option<Separation>> {
    below.check_states(above.n_states())?;
    let n = above.n_states();
    let (ga, gb) = (above.generators.len(), below.generators.len());
    // columns: phi+ (n), phi- (n), s+, s-, t+, t-, surplus (ga + gb), box slack (2n)
    let phi_p = 0;
    let phi_m = n;
    let s_p = 2 * n;
    let s_m = s_p + 1;
    let t_p = s_p + 2;
    let t_m = s_p + 3;
    let surplus = s_p + 4;
    let boxes = surplus + ga + gb;
    let n_vars = boxes + 2 * n;
    let mut lp = StandardForm::new(n_vars);
    lp.objective[t_p] = Rational::one();
    lp.objective[t_m] = int(-1);
    let zero_row = || vec![Rational::zero(); n_vars];
    // phi . a - s - t - w = 0
    for (j, a) in above.generators.iter().enumerate() {
        let mut row = zero_row();
        for k in 0..n {
            row[phi_p + k] = a.0[k].clone();
            row[phi_m + k] = -a.0[k].clone();
        }
        row[s_p] = int(-1);
        row[s_m] = int(1);
        row[t_p] = int(-1);
        row[t_m] = int(1);
        row[surplus + j] = int(-1);
        lp.push_row(row, Rational::zero());
    }
    // s - phi . b - t - w = 0
    for (j, b) in below.generators.iter().enumerate() {
        let mut row = zero_row();
        for k in 0..n {
            row[phi_p + k] = -b.0[k].clone();
            row[phi_m + k] = b.0[k].clone();
        }
        row[s_p] = int(1);
        row[s_m] = int(-1);
        row[t_p] = int(-1);
        row[t_m] = int(1);
        row[surplus + ga + j] = int(-1);
        lp.push_row(row, Rational::zero());
    }
    for k in 0..n {
        let mut row = zero_row();
        row[phi_p + k] = int(1);
        row[boxes + k] = int(1);
        lp.push_row(row, Rational::one());
        let mut row = zero_row();
        row[phi_m + k] = int(1);
        row[boxes + n + k] = int(1);
        lp.push_row(row, Rational::one());
    }
    // s and t are pinned only up to a common drift in their split parts,
    // which the objective ignores, so the program is bounded
    match solve(&lp) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let profile = UtilityProfile::new(
                (0..n).map(|k| &x[phi_p + k] - &x[phi_m + k]).collect(),
            );
            let lo = above.min_expectation(&profile);
            let hi = below.max_expectation(&profile);
            debug_assert!(lo > hi);
            Ok(Some(Separation {
                threshold: (lo + hi) / int(2),
                profile,
            }))
        }
        LpOutcome::Optimal { .. } => Ok(None),
        LpOutcome::Infeasible | LpOutcome::Unbounded => {
            unreachable!("separation program is feasible and bounded")
        }
    }
}

/// First generator of `a` outside the hull of `b`.
pub fn generator_outside(a: &CredalSet, b: &CredalSet) -> Result<Option<ProbabilityVector>> {
    b.check_states(a.n_states())?;
    Ok(a.generators.iter().find(|p| !hull_contains(b, p)).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pv(v: &[(i64, i64)]) -> ProbabilityVector {
        ProbabilityVector::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn set(ps: &[&[(i64, i64)]]) -> CredalSet {
        CredalSet::new(ps.iter().map(|p| pv(p)).collect()).unwrap()
    }

    #[test]
    fn probability_vectors_are_validated() {
        assert!(ProbabilityVector::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(ProbabilityVector::new(vec![int(2), int(-1)]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
    }

    #[test]
    fn credal_sets_need_generators_of_one_size() {
        assert!(CredalSet::new(vec![]).is_err());
        assert!(CredalSet::new(vec![pv(&[(1, 1)]), pv(&[(1, 2), (1, 2)])]).is_err());
    }

    #[test]
    fn midpoint_membership() {
        let k = set(&[&[(1, 3), (2, 3)], &[(1, 1), (0, 1)]]);
        assert!(contains_point(&k, &pv(&[(2, 3), (1, 3)])).unwrap());
    }

    #[test]
    fn dirac_excludes_other_dirac() {
        let k = set(&[&[(1, 1), (0, 1)]]);
        assert!(!contains_point(&k, &pv(&[(0, 1), (1, 1)])).unwrap());
    }

    #[test]
    fn segment_p1_p3_excludes_p2() {
        // lambda/3 + 2(1-lambda)/5 = 1 has lambda = -9 < 0
        let k = set(&[&[(1, 3), (2, 3)], &[(2, 5), (3, 5)]]);
        assert!(!contains_point(&k, &pv(&[(1, 1), (0, 1)])).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        let k = set(&[&[(1, 1), (0, 1)]]);
        assert!(contains_point(&k, &pv(&[(1, 1)])).is_err());
    }

    #[test]
    fn subset_cases() {
        let p1: &[(i64, i64)] = &[(1, 3), (2, 3)];
        let p2: &[(i64, i64)] = &[(1, 1), (0, 1)];
        let a = set(&[p1, p2]);
        assert!(is_subset(&a, &a).unwrap());
        assert!(!is_subset(&a, &set(&[p1])).unwrap());
        assert!(is_subset(&set(&[p2]), &a).unwrap());
    }

    #[test]
    fn intersection_cases() {
        let p1: &[(i64, i64)] = &[(1, 3), (2, 3)];
        let p2: &[(i64, i64)] = &[(1, 1), (0, 1)];
        assert!(intersects(&set(&[p1]), &set(&[p1, p2])).unwrap());
        assert!(!intersects(&set(&[(&[(1, 1), (0, 1)])]), &set(&[&[(0, 1), (1, 1)]])).unwrap());
    }

    #[test]
    fn betting_sets_overlap() {
        // P(A wins) in [1/3, 1/2] against [1/3 + 1/50, 1/2 + 1/50]
        let c = set(&[&[(1, 3), (2, 3)], &[(1, 2), (1, 2)]]);
        let d = set(&[&[(53, 150), (97, 150)], &[(13, 25), (12, 25)]]);
        assert!(intersects(&c, &d).unwrap());
        let far = set(&[&[(3, 5), (2, 5)], &[(4, 5), (1, 5)]]);
        assert!(!intersects(&c, &far).unwrap());
    }

    #[test]
    fn union_of_diracs_is_simplex() {
        let u = hull_union(&[set(&[&[(1, 1), (0, 1)]]), set(&[&[(0, 1), (1, 1)]])]).unwrap();
        assert!(is_equal(&u, &simplex(2)).unwrap());
        assert!(hull_union(&[]).is_err());
    }

    #[test]
    fn union_keeps_all_inputs() {
        let p1: &[(i64, i64)] = &[(1, 3), (2, 3)];
        let p2: &[(i64, i64)] = &[(1, 1), (0, 1)];
        let p3: &[(i64, i64)] = &[(2, 5), (3, 5)];
        let u = hull_union(&[set(&[p1, p2]), set(&[p1, p3])]).unwrap();
        for p in [p1, p2, p3] {
            assert!(contains_point(&u, &pv(p)).unwrap());
        }
        // p3 lies on the segment p1 p2 and is pruned
        assert_eq!(u.generators().len(), 2);
    }

    #[test]
    fn pruning_drops_interior_points() {
        let k = set(&[
            &[(1, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1)],
            &[(1, 3), (1, 3), (1, 3)],
            &[(1, 1), (0, 1), (0, 1)],
        ]);
        let p = k.pruned();
        assert_eq!(p.generators().len(), 3);
        assert!(is_equal(&p, &k).unwrap());
    }

    #[test]
    fn simplex_shapes() {
        let space = StateSpace::anonymous(1).unwrap();
        assert_eq!(full_simplex(&space).generators(), &[pv(&[(1, 1)])]);
        let s2 = simplex(2);
        let profile = UtilityProfile::new(vec![int(3), int(-1)]);
        assert_eq!(s2.min_expectation(&profile), int(-1));
        assert_eq!(s2.max_expectation(&profile), int(3));
    }

    #[test]
    fn separation_of_disjoint_sets() {
        let a = set(&[&[(1, 1), (0, 1)]]);
        let b = set(&[&[(1, 3), (2, 3)], &[(2, 5), (3, 5)]]);
        let sep = separating_profile(&a, &b).unwrap().unwrap();
        assert!(a.min_expectation(&sep.profile) > sep.threshold);
        assert!(b.max_expectation(&sep.profile) < sep.threshold);
        assert!(separating_profile(&b, &a).unwrap().is_some());
    }

    #[test]
    fn no_separation_when_hulls_meet() {
        let a = set(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        let b = set(&[&[(1, 2), (1, 2)]]);
        assert!(separating_profile(&a, &b).unwrap().is_none());
        assert!(separating_profile(&b, &a).unwrap().is_none());
    }
}
