//! Set encodings for the three base-space kinds.
//!
//! A [`Region`] is always in canonical form, so structural equality is set
//! equality. Open sets and the closures of open sets share one encoding per
//! kind: point subsets for finite discrete spaces, unions of disjoint spans
//! for `[0, D]`, and finite-or-cofinite sets for `N ∪ {INF}`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::rational::Rational;

/// One connected component of a subset of the real line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl Span {
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Span { lo, lo_closed: false, hi, hi_closed: false }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Span { lo, lo_closed: true, hi, hi_closed: true }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = *x > self.lo || (*x == self.lo && self.lo_closed);
        let below = *x < self.hi || (*x == self.hi && self.hi_closed);
        above && below
    }

    fn intersect(&self, other: &Span) -> Span {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo.clone(), self.lo_closed)
        } else if self.lo < other.lo {
            (other.lo.clone(), other.lo_closed)
        } else {
            (self.lo.clone(), self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi.clone(), self.hi_closed)
        } else if self.hi > other.hi {
            (other.hi.clone(), other.hi_closed)
        } else {
            (self.hi.clone(), self.hi_closed && other.hi_closed)
        };
        Span { lo, lo_closed, hi, hi_closed }
    }
}

/// A finite union of pairwise disjoint, non-adjacent spans, sorted by `lo`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct SpanSet {
    spans: Vec<Span>,
}

impl SpanSet {
    pub fn empty() -> Self {
        SpanSet { spans: Vec::new() }
    }

    pub fn from_spans(spans: impl IntoIterator<Item = Span>) -> Self {
        let mut v: Vec<Span> = spans.into_iter().filter(|s| !s.is_empty()).collect();
        v.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Span> = Vec::with_capacity(v.len());
        for s in v {
            if let Some(last) = out.last_mut() {
                let touches = s.lo < last.hi || (s.lo == last.hi && (last.hi_closed || s.lo_closed));
                if touches {
                    if s.hi > last.hi {
                        last.hi = s.hi;
                        last.hi_closed = s.hi_closed;
                    } else if s.hi == last.hi {
                        last.hi_closed |= s.hi_closed;
                    }
                    continue;
                }
            }
            out.push(s);
        }
        SpanSet { spans: out }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.spans.iter().any(|s| s.contains(x))
    }

    pub fn intersect(&self, other: &SpanSet) -> SpanSet {
        let mut out = Vec::new();
        for a in &self.spans {
            for b in &other.spans {
                let c = a.intersect(b);
                if !c.is_empty() {
                    out.push(c);
                }
            }
        }
        SpanSet::from_spans(out)
    }

    pub fn union(&self, other: &SpanSet) -> SpanSet {
        SpanSet::from_spans(self.spans.iter().chain(other.spans.iter()).cloned())
    }

    /// Topological closure in the real line.
    pub fn closure(&self) -> SpanSet {
        SpanSet::from_spans(self.spans.iter().map(|s| Span::closed(s.lo.clone(), s.hi.clone())))
    }

    /// Every span grown by `e` on both sides, with the chosen endpoint kind.
    pub(crate) fn grow(&self, e: &Rational, closed: bool) -> SpanSet {
        SpanSet::from_spans(self.spans.iter().map(|s| Span {
            lo: &s.lo - e,
            lo_closed: closed,
            hi: &s.hi + e,
            hi_closed: closed,
        }))
    }
}

/// Subsets of `N ∪ {INF}` with finite points isolated and cofinite
/// neighborhoods at `INF`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TailSet {
    /// A finite set of naturals (never contains `INF`).
    Finite(BTreeSet<u64>),
    /// Every natural except the listed ones, together with `INF`.
    Cofinite(BTreeSet<u64>),
}

impl TailSet {
    pub fn whole() -> Self {
        TailSet::Cofinite(BTreeSet::new())
    }

    pub fn empty() -> Self {
        TailSet::Finite(BTreeSet::new())
    }

    /// `{n, n+1, ...} ∪ {INF}`.
    pub fn tail_from(n: u64) -> Self {
        TailSet::Cofinite((0..n).collect())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, TailSet::Finite(s) if s.is_empty())
    }

    pub fn contains_nat(&self, k: u64) -> bool {
        match self {
            TailSet::Finite(s) => s.contains(&k),
            TailSet::Cofinite(ex) => !ex.contains(&k),
        }
    }

    pub fn contains_inf(&self) -> bool {
        matches!(self, TailSet::Cofinite(_))
    }

    pub fn intersect(&self, other: &TailSet) -> TailSet {
        match (self, other) {
            (TailSet::Finite(a), TailSet::Finite(b)) => TailSet::Finite(a.intersection(b).copied().collect()),
            (TailSet::Finite(a), TailSet::Cofinite(ex)) | (TailSet::Cofinite(ex), TailSet::Finite(a)) => {
                TailSet::Finite(a.difference(ex).copied().collect())
            }
            (TailSet::Cofinite(a), TailSet::Cofinite(b)) => TailSet::Cofinite(a.union(b).copied().collect()),
        }
    }

    pub fn union(&self, other: &TailSet) -> TailSet {
        match (self, other) {
            (TailSet::Finite(a), TailSet::Finite(b)) => TailSet::Finite(a.union(b).copied().collect()),
            (TailSet::Finite(a), TailSet::Cofinite(ex)) | (TailSet::Cofinite(ex), TailSet::Finite(a)) => {
                TailSet::Cofinite(ex.difference(a).copied().collect())
            }
            (TailSet::Cofinite(a), TailSet::Cofinite(b)) => TailSet::Cofinite(a.intersection(b).copied().collect()),
        }
    }

    /// Least natural in the set, if any.
    pub fn least_nat(&self) -> Option<u64> {
        match self {
            TailSet::Finite(s) => s.iter().next().copied(),
            TailSet::Cofinite(ex) => (0..).find(|k| !ex.contains(k)),
        }
    }
}

/// An open set (or the closure of one) of a particular base space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Finite(BTreeSet<usize>),
    Interval(SpanSet),
    Tail(TailSet),
}

impl Region {
    pub fn is_empty(&self) -> bool {
        match self {
            Region::Finite(s) => s.is_empty(),
            Region::Interval(s) => s.is_empty(),
            Region::Tail(s) => s.is_empty(),
        }
    }

    /// Intersection of two regions of the same space.
    ///
    /// Panics if the regions belong to different space kinds.
    pub fn intersect(&self, other: &Region) -> Region {
        match (self, other) {
            (Region::Finite(a), Region::Finite(b)) => Region::Finite(a.intersection(b).copied().collect()),
            (Region::Interval(a), Region::Interval(b)) => Region::Interval(a.intersect(b)),
            (Region::Tail(a), Region::Tail(b)) => Region::Tail(a.intersect(b)),
            _ => panic!("intersecting regions of different space kinds"),
        }
    }

    pub fn union(&self, other: &Region) -> Region {
        match (self, other) {
            (Region::Finite(a), Region::Finite(b)) => Region::Finite(a.union(b).copied().collect()),
            (Region::Interval(a), Region::Interval(b)) => Region::Interval(a.union(b)),
            (Region::Tail(a), Region::Tail(b)) => Region::Tail(a.union(b)),
            _ => panic!("joining regions of different space kinds"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn spans_merge_only_when_connected() {
        let s = SpanSet::from_spans([Span::open(q(0, 1), q(1, 1)), Span::open(q(1, 1), q(2, 1))]);
        assert_eq!(s.spans().len(), 2);
        let t = SpanSet::from_spans([
            Span::open(q(0, 1), q(1, 1)),
            Span { lo: q(1, 1), lo_closed: true, hi: q(2, 1), hi_closed: false },
        ]);
        assert_eq!(t.spans(), &[Span::open(q(0, 1), q(2, 1))]);
        let u = SpanSet::from_spans([Span::open(q(3, 1), q(5, 1)), Span::open(q(0, 1), q(4, 1))]);
        assert_eq!(u.spans(), &[Span::open(q(0, 1), q(5, 1))]);
    }

    #[test]
    fn span_intersection_and_closure() {
        let a = SpanSet::from_spans([Span::open(q(2, 1), q(5, 1))]);
        let b = SpanSet::from_spans([Span::closed(q(5, 1), q(7, 1))]);
        assert!(a.intersect(&b).is_empty());
        assert!(!a.closure().intersect(&b).is_empty());
        assert_eq!(a.closure().spans(), &[Span::closed(q(2, 1), q(5, 1))]);
    }

    #[test]
    fn tail_set_algebra() {
        let cof = TailSet::Cofinite([0, 1].into_iter().collect());
        let zero = TailSet::Finite([0].into_iter().collect());
        assert!(cof.intersect(&zero).is_empty());
        assert_eq!(cof.least_nat(), Some(2));
        assert!(cof.contains_inf());
        assert_eq!(cof.union(&zero), TailSet::Cofinite([1].into_iter().collect()));
    }
}
