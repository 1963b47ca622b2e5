//! Intervals `[K, K']`, finite trees and convex closures in `F(X)`, with
//! closed-form nearest-point projections and brute-force enumeration
//! counterparts.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::forest::ForestElement;
use crate::path_space::{Path, PointedFiniteMetric};
use crate::rational::{Extended, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("elements lie in different finite-distance components")]
    DifferentComponents,
    #[error("elements lie in different finite-distance components")]
    MixedComponents,
    #[error("interval {0} is disjoint from the preceding intervals")]
    DisconnectedInterval(usize),
    #[error("truncation r = {r} must be positive and at least d(K, K') = {distance}")]
    BadTruncation { distance: Box<Extended>, r: Box<Rational> },
    #[error("basepoint is not an endpoint of the interval")]
    NotAnEndpoint,
    #[error("a finite tree needs at least one interval")]
    EmptyTree,
    #[error("nearest point is not unique ({0} minimizers)")]
    NonUniqueProjection(usize),
}

/// The interval `[K, K']`: every initial segment of `K` or `K'` that extends
/// `m = K ⊓ K'`, listed in arc order from `K` to `K'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    start: ForestElement,
    end: ForestElement,
    meet: ForestElement,
    elements: Vec<ForestElement>,
    positions: Vec<Rational>,
}

impl Interval {
    pub fn new(k: &ForestElement, k2: &ForestElement) -> Result<Interval, TreeError> {
        let shared = k.common_prefix(k2).ok_or(TreeError::DifferentComponents)?;
        let meet = k.prefix(shared);
        let m_len = meet.length().clone();
        let mut elements = Vec::with_capacity(k.breakpoint_count() + k2.breakpoint_count() - 2 * shared + 1);
        let mut positions = Vec::with_capacity(elements.capacity());
        for i in (shared..=k.breakpoint_count()).rev() {
            let e = k.prefix(i);
            positions.push(k.length() - e.length());
            elements.push(e);
        }
        let up_from = k.length() - &m_len;
        for i in shared + 1..=k2.breakpoint_count() {
            let e = k2.prefix(i);
            positions.push(&up_from + (e.length() - &m_len));
            elements.push(e);
        }
        Ok(Interval { start: k.clone(), end: k2.clone(), meet, elements, positions })
    }

    pub fn start(&self) -> &ForestElement {
        &self.start
    }

    pub fn end(&self) -> &ForestElement {
        &self.end
    }

    pub fn meet(&self) -> &ForestElement {
        &self.meet
    }

    /// Elements in arc order from `start` to `end`.
    pub fn elements(&self) -> &[ForestElement] {
        &self.elements
    }

    /// Arc position `d(start, E)` of each element.
    pub fn positions(&self) -> &[Rational] {
        &self.positions
    }

    /// `d(start, end)`.
    pub fn length(&self) -> &Rational {
        self.positions.last().expect("nonempty")
    }

    pub fn contains(&self, e: &ForestElement) -> bool {
        self.meet.is_prefix_of(e) && (e.is_prefix_of(&self.start) || e.is_prefix_of(&self.end))
    }

    /// The interval read as a path from `basepoint` (an endpoint): arc
    /// positions mapped to tip values.
    pub fn as_path(&self, basepoint: &ForestElement) -> Result<Path, TreeError> {
        let total = self.length().clone();
        let pairs: Vec<(Rational, _)> = if basepoint == &self.start {
            self.positions.iter().cloned().zip(self.elements.iter().map(|e| e.tip().clone())).collect()
        } else if basepoint == &self.end {
            self.positions
                .iter()
                .rev()
                .map(|p| &total - p)
                .zip(self.elements.iter().rev().map(|e| e.tip().clone()))
                .collect()
        } else {
            return Err(TreeError::NotAnEndpoint);
        };
        let (times, values) = pairs.into_iter().unzip();
        Ok(Path::from_parts(times, values))
    }

    /// The pointed finite metric `d` restricted to the interval's elements,
    /// with the given endpoint as basepoint.
    pub fn pointed_metric(&self, basepoint: &ForestElement) -> Result<PointedFiniteMetric, TreeError> {
        let c = self.elements.iter().position(|e| e == basepoint).ok_or(TreeError::NotAnEndpoint)?;
        if basepoint != &self.start && basepoint != &self.end {
            return Err(TreeError::NotAnEndpoint);
        }
        let n = self.elements.len();
        let metric = self
            .elements
            .iter()
            .map(|a| self.elements.iter().map(|b| a.distance(b).finite().cloned().expect("one component")).collect())
            .collect();
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        Ok(PointedFiniteMetric::new(labels, metric, c).expect("d is a metric on one component"))
    }

    /// Closed-form nearest point: the longest of `m`, `A ⊓ K` (when it
    /// extends `m`) and `A ⊓ K'` (when it extends `m`).
    pub fn project(&self, a: &ForestElement) -> Result<ForestElement, TreeError> {
        let to_start = a.common_prefix(&self.start).ok_or(TreeError::DifferentComponents)?;
        let to_end = a.common_prefix(&self.end).expect("same component");
        let m = self.meet.breakpoint_count();
        if to_start > m {
            Ok(self.start.prefix(to_start))
        } else if to_end > m {
            Ok(self.end.prefix(to_end))
        } else {
            Ok(self.meet.clone())
        }
    }

    /// `d(A, [K, K'])` by the closed form.
    pub fn distance_to(&self, a: &ForestElement) -> Extended {
        match self.project(a) {
            Ok(p) => a.distance(&p),
            Err(_) => Extended::Infinite,
        }
    }
}

/// Every minimizer of `d(a, ·)` over `elements` (after structural dedup).
///
/// This is the enumeration oracle for the closed-form projections.
pub fn nearest_by_enumeration<'a>(
    a: &ForestElement,
    elements: &'a [ForestElement],
) -> (Extended, Vec<&'a ForestElement>) {
    let mut best = Extended::Infinite;
    let mut argmin: Vec<&ForestElement> = Vec::new();
    for e in elements {
        let d = a.distance(e);
        if d < best {
            best = d;
            argmin.clear();
            argmin.push(e);
        } else if d == best && d.is_finite() && !argmin.contains(&e) {
            argmin.push(e);
        }
    }
    (best, argmin)
}

/// `δ_{K,K',r}(A) = min{d_{2r}(A,K) + d_{2r}(A,K') - d_r(K,K'), r}`,
/// evaluated literally for `0 < r` and `d(K, K') <= r`.
///
/// It vanishes exactly on `[K, K']`, but off the interval it equals
/// `min{2 d(A, [K, K']), r}`, not `min{d(A, [K, K']), r}`.
pub fn delta_predicate(
    k: &ForestElement,
    k2: &ForestElement,
    r: &Rational,
    a: &ForestElement,
) -> Result<Rational, TreeError> {
    let dkk = k.distance(k2);
    if !r.is_positive() || dkk.finite().is_none_or(|d| d > r) {
        return Err(TreeError::BadTruncation { distance: Box::new(dkk), r: Box::new(r.clone()) });
    }
    let two_r = r + r;
    let sum = a.distance_trunc(k, &two_r) + a.distance_trunc(k2, &two_r) - k.distance_trunc(k2, r);
    Ok(Rational::min_of(&sum, r))
}

/// A finite tree: a union of intervals, each meeting the union of its
/// predecessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTree {
    intervals: Vec<Interval>,
    elements: Vec<ForestElement>,
}

impl FiniteTree {
    pub fn new(pairs: &[(ForestElement, ForestElement)]) -> Result<FiniteTree, TreeError> {
        let first = pairs.first().ok_or(TreeError::EmptyTree)?;
        let root = first.0.root();
        if pairs.iter().any(|(a, b)| a.root() != root || b.root() != root) {
            return Err(TreeError::DifferentComponents);
        }
        let mut set: BTreeSet<ForestElement> = BTreeSet::new();
        let mut intervals = Vec::with_capacity(pairs.len());
        for (i, (a, b)) in pairs.iter().enumerate() {
            let iv = Interval::new(a, b)?;
            if i > 0 && !iv.elements().iter().any(|e| set.contains(e)) {
                return Err(TreeError::DisconnectedInterval(i));
            }
            set.extend(iv.elements().iter().cloned());
            intervals.push(iv);
        }
        Ok(FiniteTree { intervals, elements: set.into_iter().collect() })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// The element set in canonical (structural) order.
    pub fn elements(&self) -> &[ForestElement] {
        &self.elements
    }

    pub fn generators(&self) -> Vec<(ForestElement, ForestElement)> {
        self.intervals.iter().map(|iv| (iv.start.clone(), iv.end.clone())).collect()
    }

    pub fn root(&self) -> &crate::base_space::BasePoint {
        self.elements[0].root()
    }

    pub fn contains(&self, e: &ForestElement) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    pub fn is_subset_of(&self, other: &FiniteTree) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// The unique nearest element and its distance, from the per-interval
    /// closed-form projections. A non-unique minimizer is reported as an
    /// error rather than tie-broken.
    pub fn project(&self, a: &ForestElement) -> Result<(ForestElement, Rational), TreeError> {
        let mut best: Option<Rational> = None;
        let mut argmin: Vec<ForestElement> = Vec::new();
        for iv in &self.intervals {
            let p = iv.project(a)?;
            let d = a.distance(&p).finite().cloned().expect("same component");
            match &best {
                Some(b) if d > *b => {}
                Some(b) if d == *b => {
                    if !argmin.contains(&p) {
                        argmin.push(p);
                    }
                }
                _ => {
                    best = Some(d);
                    argmin = vec![p];
                }
            }
        }
        if argmin.len() != 1 {
            return Err(TreeError::NonUniqueProjection(argmin.len()));
        }
        Ok((argmin.pop().expect("one"), best.expect("nonempty tree")))
    }

    pub fn max_label(&self) -> Option<u64> {
        self.elements.iter().filter_map(|e| e.max_label()).max()
    }
}

/// `ccl(a_0, ..., a_{n-1})`: the tree generated by `[a_i, a_{i+1}]`.
pub fn ccl(points: &[ForestElement]) -> Result<FiniteTree, TreeError> {
    let first = points.first().ok_or(TreeError::EmptyTree)?;
    if points.iter().any(|p| !p.same_component(first)) {
        return Err(TreeError::MixedComponents);
    }
    let pairs: Vec<_> = if points.len() == 1 {
        vec![(first.clone(), first.clone())]
    } else {
        points.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    };
    FiniteTree::new(&pairs)
}

/// Outcome of projecting `c` and `e` onto `[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum BigDistance {
    /// Both project to the same point; no claim is made.
    Degenerate,
    Decomposed {
        d_ce: Rational,
        d_c_cp: Rational,
        d_cp_ep: Rational,
        d_ep_e: Rational,
        /// `d(c,e) = d(c,c') + d(c',e') + d(e',e)`.
        holds: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigDistanceRecord {
    pub c_proj: ForestElement,
    pub e_proj: ForestElement,
    pub outcome: BigDistance,
}

pub fn big_distance_decompose(
    a: &ForestElement,
    b: &ForestElement,
    c: &ForestElement,
    e: &ForestElement,
) -> Result<BigDistanceRecord, TreeError> {
    if [b, c, e].iter().any(|x| !x.same_component(a)) {
        return Err(TreeError::MixedComponents);
    }
    let iv = Interval::new(a, b)?;
    let c_proj = iv.project(c)?;
    let e_proj = iv.project(e)?;
    let fin = |x: &ForestElement, y: &ForestElement| x.distance(y).finite().cloned().expect("same component");
    let outcome = if c_proj == e_proj {
        BigDistance::Degenerate
    } else {
        let d_ce = fin(c, e);
        let d_c_cp = fin(c, &c_proj);
        let d_cp_ep = fin(&c_proj, &e_proj);
        let d_ep_e = fin(&e_proj, e);
        let holds = d_ce == &(&d_c_cp + &d_cp_ep) + &d_ep_e;
        BigDistance::Decomposed { d_ce, d_c_cp, d_cp_ep, d_ep_e, holds }
    };
    Ok(BigDistanceRecord { c_proj, e_proj, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::q;

    #[test]
    fn interval_enumeration_examples() {
        let iv = Interval::new(&k3(), &k2()).unwrap();
        assert_eq!(iv.elements(), &[k3(), pt_a(), k1(), k2()]);
        assert_eq!(iv.positions(), &[q(0, 1), q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(iv.length(), &q(3, 1));
        let chain = Interval::new(&k1(), &k2()).unwrap();
        assert_eq!(chain.elements(), &[k1(), k2()]);
        let single = Interval::new(&k5(), &k5()).unwrap();
        assert_eq!(single.elements(), &[k5()]);
        assert_eq!(Interval::new(&k1(), &l_b()), Err(TreeError::DifferentComponents));
    }

    #[test]
    fn interval_as_path_examples() {
        let x = x3();
        let iv = Interval::new(&k3(), &k2()).unwrap();
        let p = iv.as_path(&k3()).unwrap();
        assert_eq!(p.values(), &[B, A, B, C]);
        assert_eq!(p.times(), &[q(0, 1), q(1, 1), q(2, 1), q(3, 1)]);
        p.validate(&x).unwrap();
        let back = iv.as_path(&k2()).unwrap();
        assert_eq!(back.values(), &[C, B, A, B]);
        let chain = Interval::new(&k1(), &k2()).unwrap().as_path(&k1()).unwrap();
        assert_eq!(chain.values(), &[B, C]);
        let single = Interval::new(&k6(), &k6()).unwrap().as_path(&k6()).unwrap();
        assert_eq!(single, Path::point(B));
        assert_eq!(iv.as_path(&k1()), Err(TreeError::NotAnEndpoint));
    }

    #[test]
    fn delta_predicate_examples() {
        let r = q(3, 1);
        assert_eq!(delta_predicate(&k3(), &k2(), &r, &k1()).unwrap(), Rational::zero());
        assert_eq!(delta_predicate(&k3(), &k2(), &r, &k5()).unwrap(), q(2, 1));
        let iv = Interval::new(&k3(), &k2()).unwrap();
        let (d, argmin) = nearest_by_enumeration(&k5(), iv.elements());
        assert_eq!(d, Extended::Finite(q(1, 1)));
        assert_eq!(argmin, vec![&k1()]);
        assert_eq!(delta_predicate(&k3(), &k2(), &r, &l_b()).unwrap(), r);
        assert!(matches!(delta_predicate(&k3(), &k2(), &q(2, 1), &k1()), Err(TreeError::BadTruncation { .. })));
    }

    #[test]
    fn projection_examples() {
        let iv = Interval::new(&k3(), &k2()).unwrap();
        assert_eq!(iv.project(&k5()).unwrap(), k1());
        assert_eq!(iv.distance_to(&k5()), Extended::Finite(q(1, 1)));
        assert_eq!(iv.project(&k6()).unwrap(), pt_a());
        assert_eq!(iv.distance_to(&k6()), Extended::Finite(q(1, 1)));
        assert_eq!(iv.project(&k2()).unwrap(), k2());
        assert_eq!(iv.distance_to(&k2()), Extended::Finite(Rational::zero()));
        assert_eq!(iv.project(&l_b()), Err(TreeError::DifferentComponents));
        assert_eq!(iv.distance_to(&l_b()), Extended::Infinite);
    }

    #[test]
    fn finite_tree_examples() {
        let t = FiniteTree::new(&[(k3(), k2())]).unwrap();
        assert_eq!(t.elements().len(), 4);
        assert_eq!(FiniteTree::new(&[(k3(), k2()), (k5(), k5())]), Err(TreeError::DisconnectedInterval(1)));
        let t2 = FiniteTree::new(&[(k3(), k2()), (pt_a(), k6())]).unwrap();
        let mut want = vec![pt_a(), k3(), k1(), k2(), k6()];
        want.sort();
        assert_eq!(t2.elements(), want.as_slice());
        assert_eq!(FiniteTree::new(&[(k3(), l_b())]), Err(TreeError::DifferentComponents));
    }

    #[test]
    fn tree_projection_examples() {
        let t = FiniteTree::new(&[(k3(), k2()), (pt_a(), k6())]).unwrap();
        assert_eq!(t.project(&k5()).unwrap(), (k1(), q(1, 1)));
        assert_eq!(t.project(&k6()).unwrap(), (k6(), Rational::zero()));
        let single = FiniteTree::new(&[(k3(), k2())]).unwrap();
        assert_eq!(single.project(&k6()).unwrap(), (pt_a(), q(1, 1)));
        let dists: Vec<_> = [pt_a(), k3(), k1(), k2(), k6()].iter().map(|e| k5().distance(e)).collect();
        let want: Vec<_> = [2, 3, 1, 2, 3].iter().map(|&n| Extended::Finite(q(n, 1))).collect();
        assert_eq!(dists, want);
    }

    #[test]
    fn ccl_examples() {
        let t = ccl(&[k3(), k2()]).unwrap();
        assert_eq!(t.elements().len(), 4);
        assert_eq!(ccl(&[k1()]).unwrap().elements(), &[k1()]);
        let t3 = ccl(&[k3(), k2(), k6()]).unwrap();
        let mut want = vec![pt_a(), k3(), k1(), k2(), k6()];
        want.sort();
        assert_eq!(t3.elements(), want.as_slice());
        assert_eq!(ccl(&[k1(), l_b()]), Err(TreeError::MixedComponents));
    }

    #[test]
    fn big_distance_examples() {
        let rec = big_distance_decompose(&k3(), &k2(), &k5(), &k6()).unwrap();
        assert_eq!(rec.c_proj, k1());
        assert_eq!(rec.e_proj, pt_a());
        assert_eq!(
            rec.outcome,
            BigDistance::Decomposed { d_ce: q(3, 1), d_c_cp: q(1, 1), d_cp_ep: q(1, 1), d_ep_e: q(1, 1), holds: true }
        );
        let same = big_distance_decompose(&k3(), &k2(), &k5(), &k5()).unwrap();
        assert_eq!(same.outcome, BigDistance::Degenerate);
        let x = x3();
        let longer = k5().graft(&Path::new(&x, vec![(q(0, 1), C), (q(1, 1), B)]).unwrap(), 7).unwrap();
        let rec = big_distance_decompose(&k3(), &k2(), &k5(), &longer).unwrap();
        assert_eq!((rec.c_proj.clone(), rec.outcome), (k1(), BigDistance::Degenerate));
    }

    #[test]
    fn pointed_metric_of_interval_satisfies_axioms() {
        let iv = Interval::new(&k3(), &k2()).unwrap();
        let p = iv.pointed_metric(&k3()).unwrap();
        assert!(crate::path_space::check_path_axioms(&p, &q(3, 1)));
        assert!(!crate::path_space::check_path_axioms(&p, &q(2, 1)));
    }
}
