//! Exact analysis along mixture lines `alpha -> alpha f + (1 - alpha) g`.
//!
//! Every criterion evaluates a mixture through minima and maxima of
//! expectations, each linear in `alpha`, so the evaluation is piecewise linear
//! with rational knots. Strict comparisons along the line therefore carve
//! `[0, 1]` into finitely many intervals with rational endpoints.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::rational::{format_rational, int, one, zero, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaInterval {
    #[serde(with = "crate::rational::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl AlphaInterval {
    pub fn contains(&self, a: &Rational) -> bool {
        let above = if self.lo_closed { *a >= self.lo } else { *a > self.lo };
        let below = if self.hi_closed { *a <= self.hi } else { *a < self.hi };
        above && below
    }
}

impl std::fmt::Display for AlphaInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            format_rational(&self.lo),
            format_rational(&self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finite union of disjoint, sorted intervals inside `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct AlphaIntervalSet {
    intervals: Vec<AlphaInterval>,
}

impl AlphaIntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            intervals: vec![AlphaInterval {
                lo: zero(),
                hi: one(),
                lo_closed: true,
                hi_closed: true,
            }],
        }
    }

    pub fn intervals(&self) -> &[AlphaInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, a: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(a))
    }

    /// Open relative to `[0, 1]`: no degenerate pieces, and an endpoint may be
    /// included only when it is 0 (left) or 1 (right).
    pub fn is_relatively_open(&self) -> bool {
        self.intervals.iter().all(|iv| {
            iv.lo < iv.hi
                && (!iv.lo_closed || iv.lo.is_zero())
                && (!iv.hi_closed || iv.hi == one())
        })
    }

    /// Endpoints that belong to the set although they lie strictly inside
    /// `(0, 1)`; empty exactly when the set is relatively open.
    pub fn closed_interior_endpoints(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for iv in &self.intervals {
            if iv.lo_closed && iv.lo.is_positive() {
                out.push(iv.lo.clone());
            }
            if iv.hi_closed && iv.hi < one() && !out.contains(&iv.hi) {
                out.push(iv.hi.clone());
            }
        }
        out
    }

    fn endpoints(&self) -> impl Iterator<Item = &Rational> {
        self.intervals.iter().flat_map(|iv| [&iv.lo, &iv.hi])
    }

    pub fn intersect(&self, other: &AlphaIntervalSet) -> AlphaIntervalSet {
        let critical: Vec<Rational> = self.endpoints().chain(other.endpoints()).cloned().collect();
        Self::from_predicate(critical, |a| self.contains(a) && other.contains(a))
    }

    /// Builds the set `{a in [0,1] : member(a)}` assuming membership is
    /// constant on each open gap between consecutive `critical` points.
    pub fn from_predicate(
        mut critical: Vec<Rational>,
        member: impl Fn(&Rational) -> bool,
    ) -> AlphaIntervalSet {
        critical.retain(|c| !c.is_negative() && *c <= one());
        critical.push(zero());
        critical.push(one());
        critical.sort();
        critical.dedup();

        let mut out = Vec::new();
        let mut cur: Option<AlphaInterval> = None;
        for (i, c) in critical.iter().enumerate() {
            if member(c) {
                match cur.as_mut() {
                    Some(iv) => {
                        iv.hi = c.clone();
                        iv.hi_closed = true;
                    }
                    None => {
                        cur = Some(AlphaInterval {
                            lo: c.clone(),
                            hi: c.clone(),
                            lo_closed: true,
                            hi_closed: true,
                        })
                    }
                }
            } else if let Some(iv) = cur.take() {
                out.push(iv);
            }
            let Some(next) = critical.get(i + 1) else {
                break;
            };
            let mid = (c + next) / int(2);
            if member(&mid) {
                match cur.as_mut() {
                    Some(iv) => {
                        iv.hi = next.clone();
                        iv.hi_closed = false;
                    }
                    None => {
                        cur = Some(AlphaInterval {
                            lo: c.clone(),
                            hi: next.clone(),
                            lo_closed: false,
                            hi_closed: false,
                        })
                    }
                }
            } else if let Some(iv) = cur.take() {
                out.push(iv);
            }
        }
        out.extend(cur);
        AlphaIntervalSet { intervals: out }
    }
}

impl std::fmt::Display for AlphaIntervalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.intervals.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" U "))
    }
}

/// A continuous piecewise-linear function on `[0, 1]`, stored by its values
/// at the knots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    knots: Vec<Rational>,
    values: Vec<Rational>,
}

/// A line on `[0, 1]` given by its values at 0 and at 1.
pub type Line = (Rational, Rational);

fn line_at(line: &Line, a: &Rational) -> Rational {
    &line.0 + a * (&line.1 - &line.0)
}

impl PiecewiseLinear {
    pub fn constant(c: Rational) -> Self {
        Self {
            knots: vec![zero(), one()],
            values: vec![c.clone(), c],
        }
    }

    pub fn line(line: Line) -> Self {
        Self {
            knots: vec![zero(), one()],
            values: vec![line.0, line.1],
        }
    }

    fn envelope(lines: &[Line], lower: bool) -> Self {
        assert!(!lines.is_empty(), "envelope of no lines");
        let mut knots = vec![zero(), one()];
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                let slope_a = &a.1 - &a.0;
                let slope_b = &b.1 - &b.0;
                if slope_a != slope_b {
                    let x = (&b.0 - &a.0) / (slope_a - slope_b);
                    if x.is_positive() && x < one() {
                        knots.push(x);
                    }
                }
            }
        }
        knots.sort();
        knots.dedup();
        let values = knots
            .iter()
            .map(|k| {
                let it = lines.iter().map(|l| line_at(l, k));
                if lower {
                    it.min().unwrap()
                } else {
                    it.max().unwrap()
                }
            })
            .collect();
        Self { knots, values }
    }

    /// Pointwise minimum of lines.
    pub fn lower_envelope(lines: &[Line]) -> Self {
        Self::envelope(lines, true)
    }

    /// Pointwise maximum of lines.
    pub fn upper_envelope(lines: &[Line]) -> Self {
        Self::envelope(lines, false)
    }

    pub fn knots(&self) -> &[Rational] {
        &self.knots
    }

    pub fn eval(&self, a: &Rational) -> Rational {
        let i = match self.knots.binary_search(a) {
            Ok(i) => return self.values[i].clone(),
            Err(i) => i,
        };
        assert!(i > 0 && i < self.knots.len(), "evaluation outside [0, 1]");
        let (x0, x1) = (&self.knots[i - 1], &self.knots[i]);
        let (y0, y1) = (&self.values[i - 1], &self.values[i]);
        y0 + (y1 - y0) * (a - x0) / (x1 - x0)
    }

    /// `sum_k coef_k * f_k + shift`.
    pub fn combine(terms: &[(Rational, &PiecewiseLinear)], shift: &Rational) -> Self {
        let mut knots: Vec<Rational> = terms
            .iter()
            .flat_map(|(_, f)| f.knots.iter().cloned())
            .collect();
        knots.push(zero());
        knots.push(one());
        knots.sort();
        knots.dedup();
        let values = knots
            .iter()
            .map(|k| {
                terms
                    .iter()
                    .fold(shift.clone(), |acc, (c, f)| acc + c * f.eval(k))
            })
            .collect();
        Self { knots, values }
    }

    pub fn minus(&self, other: &PiecewiseLinear) -> Self {
        Self::combine(&[(one(), self), (int(-1), other)], &zero())
    }

    /// Exact `{a in [0,1] : self(a) > 0}`.
    pub fn positive_set(&self) -> AlphaIntervalSet {
        let mut critical = self.knots.clone();
        for w in 0..self.knots.len() - 1 {
            let (x0, x1) = (&self.knots[w], &self.knots[w + 1]);
            let (y0, y1) = (&self.values[w], &self.values[w + 1]);
            if (y0.is_positive() && y1.is_negative()) || (y0.is_negative() && y1.is_positive()) {
                critical.push(x0 - y0 * (x1 - x0) / (y1 - y0));
            }
        }
        AlphaIntervalSet::from_predicate(critical, |a| self.eval(a).is_positive())
    }
}

/// Intersection of the positive sets of several functions.
pub fn all_positive(conditions: &[PiecewiseLinear]) -> AlphaIntervalSet {
    conditions
        .iter()
        .fold(AlphaIntervalSet::full(), |acc, c| acc.intersect(&c.positive_set()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn envelope_values() {
        // lines 1 - a and a cross at 1/2
        let lines = vec![(int(1), int(0)), (int(0), int(1))];
        let lo = PiecewiseLinear::lower_envelope(&lines);
        assert_eq!(lo.knots(), &[int(0), rat(1, 2), int(1)]);
        assert_eq!(lo.eval(&rat(1, 4)), rat(1, 4));
        assert_eq!(lo.eval(&rat(3, 4)), rat(1, 4));
        let hi = PiecewiseLinear::upper_envelope(&lines);
        assert_eq!(hi.eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(hi.eval(&int(1)), int(1));
    }

    #[test]
    fn positive_set_of_line_is_half_open() {
        // 2a - 1 > 0 on (1/2, 1]
        let f = PiecewiseLinear::line((int(-1), int(1)));
        let s = f.positive_set();
        assert_eq!(s.intervals().len(), 1);
        let iv = &s.intervals()[0];
        assert_eq!((iv.lo.clone(), iv.hi.clone()), (rat(1, 2), int(1)));
        assert!(!iv.lo_closed && iv.hi_closed);
        assert!(s.is_relatively_open());
        assert_eq!(s.to_string(), "(1/2, 1]");
    }

    #[test]
    fn tent_has_two_components_removed() {
        // |a - 1/2| - 1/4 > 0 on [0, 1/4) U (3/4, 1]
        let v = PiecewiseLinear::upper_envelope(&[(rat(1, 2), rat(-1, 2)), (rat(-1, 2), rat(1, 2))]);
        let f = PiecewiseLinear::combine(&[(one(), &v)], &rat(-1, 4));
        let s = f.positive_set();
        assert_eq!(s.to_string(), "[0, 1/4) U (3/4, 1]");
        assert!(s.contains(&zero()) && !s.contains(&rat(1, 4)) && s.contains(&rat(4, 5)));
    }

    #[test]
    fn non_open_sets_are_detected() {
        // a - 1/2 >= 0 is closed at 1/2
        let closed = AlphaIntervalSet::from_predicate(vec![rat(1, 2)], |a| *a >= rat(1, 2));
        assert!(!closed.is_relatively_open());
        assert_eq!(closed.closed_interior_endpoints(), vec![rat(1, 2)]);
        let point = AlphaIntervalSet::from_predicate(vec![rat(1, 3)], |a| *a == rat(1, 3));
        assert!(!point.is_relatively_open());
        assert!(AlphaIntervalSet::full().is_relatively_open());
        assert!(AlphaIntervalSet::empty().is_relatively_open());
    }

    #[test]
    fn intersection() {
        let a = PiecewiseLinear::line((int(-1), int(1))).positive_set(); // (1/2, 1]
        let b = PiecewiseLinear::line((int(3), int(-1))).positive_set(); // [0, 3/4)
        assert_eq!(a.intersect(&b).to_string(), "(1/2, 3/4)");
        assert!(all_positive(&[]).contains(&rat(1, 7)));
    }
}
