//! Finitely presented elements of the generic R-forest structure `F(X)`.
//!
//! An element is a decorated path: a finite time domain starting at 0, a
//! 1-Lipschitz map into the base space, and a natural-number branch label on
//! every breakpoint except the last. Two elements lie in the same finite
//! distance component exactly when they start at the same base point, and
//! then `d(K, K') = |K| + |K'| - 2 |K ⊓ K'|`.

use thiserror::Error;

use crate::base_space::{BasePoint, BaseSpace, FunctionSpec};
use crate::path_space::{Path, ShapeError};
use crate::rational::{Extended, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("the last breakpoint must not carry a label")]
    LabelOnSupremum,
    #[error("breakpoint {0} is missing its label")]
    MissingLabel(usize),
    #[error("elements lie in different finite-distance components")]
    MixedComponents,
    #[error("empty family")]
    EmptyFamily,
    #[error("path starts at a point other than the tip of the element")]
    RootMismatch,
}

/// One breakpoint of a raw element description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakpoint {
    pub r: Rational,
    pub x: BasePoint,
    pub label: Option<u64>,
}

impl Breakpoint {
    pub fn new(r: Rational, x: BasePoint, label: Option<u64>) -> Self {
        Breakpoint { r, x, label }
    }
}

/// A validated element `K = (π(K), K_X, K_ω)` of `F(X)`.
///
/// Ordered structurally (times, then values, then labels), which gives the
/// canonical order used for element sets of intervals and trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForestElement {
    path: Path,
    labels: Vec<u64>,
}

impl ForestElement {
    pub fn new(space: &BaseSpace, breakpoints: Vec<Breakpoint>) -> Result<ForestElement, ForestError> {
        let n = breakpoints.len();
        let mut labels = Vec::with_capacity(n.saturating_sub(1));
        let mut pts = Vec::with_capacity(n);
        for (i, bp) in breakpoints.into_iter().enumerate() {
            match (i + 1 == n, bp.label) {
                (true, Some(_)) => return Err(ForestError::LabelOnSupremum),
                (false, None) => return Err(ForestError::MissingLabel(i)),
                (false, Some(l)) => labels.push(l),
                (true, None) => {}
            }
            pts.push((bp.r, bp.x));
        }
        let path = Path::new(space, pts)?;
        Ok(ForestElement { path, labels })
    }

    /// The length-zero element at `x`.
    pub fn point(x: BasePoint) -> ForestElement {
        ForestElement { path: Path::point(x), labels: Vec::new() }
    }

    pub(crate) fn from_parts(path: Path, labels: Vec<u64>) -> ForestElement {
        debug_assert_eq!(labels.len() + 1, path.times().len());
        ForestElement { path, labels }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The labels `K_ω`, one per breakpoint except the last.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn times(&self) -> &[Rational] {
        self.path.times()
    }

    pub fn values(&self) -> &[BasePoint] {
        self.path.values()
    }

    pub fn breakpoint_count(&self) -> usize {
        self.path.times().len()
    }

    pub fn breakpoints(&self) -> Vec<Breakpoint> {
        (0..self.breakpoint_count())
            .map(|i| Breakpoint {
                r: self.times()[i].clone(),
                x: self.values()[i].clone(),
                label: self.labels.get(i).copied(),
            })
            .collect()
    }

    /// `|K|`, the last breakpoint.
    pub fn length(&self) -> &Rational {
        self.path.length()
    }

    pub fn root(&self) -> &BasePoint {
        self.path.start()
    }

    /// The tip value `K_X(|K|)`, i.e. `tp_X(K)`.
    pub fn tip(&self) -> &BasePoint {
        self.path.end()
    }

    /// Re-checks every invariant against `space`.
    pub fn validate(&self, space: &BaseSpace) -> Result<(), ForestError> {
        self.path.validate(space)?;
        if self.labels.len() + 1 != self.breakpoint_count() {
            return Err(ForestError::MissingLabel(self.labels.len()));
        }
        Ok(())
    }

    /// The first `k >= 1` breakpoints as an element.
    pub(crate) fn prefix(&self, k: usize) -> ForestElement {
        debug_assert!(k >= 1 && k <= self.breakpoint_count());
        if k == self.breakpoint_count() {
            return self.clone();
        }
        ForestElement { path: self.path.prefix(k), labels: self.labels[..k - 1].to_vec() }
    }

    /// The initial segment `K↾[0, r]`: breakpoints `π(K) ∩ [0, r]`.
    pub fn restrict(&self, r: &Rational) -> ForestElement {
        let k = self.times().partition_point(|t| t <= r).max(1);
        self.prefix(k)
    }

    /// Number of leading breakpoints shared by the longest common initial
    /// segment, or `None` for different components.
    pub fn common_prefix(&self, other: &ForestElement) -> Option<usize> {
        if self.root() != other.root() {
            return None;
        }
        let limit = self.breakpoint_count().min(other.breakpoint_count());
        let mut i = 0;
        while i + 1 < limit
            && self.labels[i] == other.labels[i]
            && self.times()[i + 1] == other.times()[i + 1]
            && self.values()[i + 1] == other.values()[i + 1]
        {
            i += 1;
        }
        Some(i + 1)
    }

    pub fn same_component(&self, other: &ForestElement) -> bool {
        self.root() == other.root()
    }

    /// `K ⊓ K'`, the longest common initial segment.
    pub fn meet(&self, other: &ForestElement) -> Option<ForestElement> {
        self.common_prefix(other).map(|k| self.prefix(k))
    }

    /// `|K ⊓ K'|` without materializing the meet.
    pub fn meet_length(&self, other: &ForestElement) -> Option<&Rational> {
        self.common_prefix(other).map(|k| &self.times()[k - 1])
    }

    /// `K ⊑ K'`: `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &ForestElement) -> bool {
        self.common_prefix(other) == Some(self.breakpoint_count())
    }

    pub fn distance(&self, other: &ForestElement) -> Extended {
        match self.meet_length(other) {
            None => Extended::Infinite,
            Some(m) => {
                let two_m = m + m;
                Extended::Finite(self.length() + other.length() - two_m)
            }
        }
    }

    /// `d_s = min(d, s)`.
    pub fn distance_trunc(&self, other: &ForestElement, s: &Rational) -> Rational {
        self.distance(other).truncate(s)
    }

    /// `U_f(K) = f(K_X(|K|))`.
    pub fn eval_predicate(&self, space: &BaseSpace, f: &FunctionSpec) -> Rational {
        space.eval_function(f, self.tip())
    }

    /// Extends `self` by the path `f` on a fresh branch labelled
    /// `fresh_label` (at the old tip and every grafted interior breakpoint).
    pub fn graft(&self, f: &Path, fresh_label: u64) -> Result<ForestElement, ForestError> {
        if f.start() != self.tip() {
            return Err(ForestError::RootMismatch);
        }
        if f.length().is_zero() {
            return Ok(self.clone());
        }
        let base = self.length();
        let mut times = self.times().to_vec();
        let mut values = self.values().to_vec();
        let mut labels = self.labels.clone();
        for (t, x) in f.times().iter().zip(f.values()).skip(1) {
            labels.push(fresh_label);
            times.push(base + t);
            values.push(x.clone());
        }
        Ok(ForestElement::from_parts(Path::from_parts(times, values), labels))
    }

    pub fn max_label(&self) -> Option<u64> {
        self.labels.iter().copied().max()
    }
}

/// `⨅ Ks`, the longest common initial segment of a family in one component.
pub fn meet_family<'a, I>(family: I) -> Result<ForestElement, ForestError>
where
    I: IntoIterator<Item = &'a ForestElement>,
{
    let mut it = family.into_iter();
    let first = it.next().ok_or(ForestError::EmptyFamily)?;
    let mut k = first.breakpoint_count();
    for other in it {
        let shared = first.common_prefix(other).ok_or(ForestError::MixedComponents)?;
        k = k.min(shared);
    }
    Ok(first.prefix(k))
}

/// Diameter of a finite family under `d` (`Infinite` across components).
pub fn family_diameter(family: &[ForestElement]) -> Extended {
    let mut best = Extended::Finite(Rational::zero());
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let d = a.distance(b);
            if d > best {
                best = d;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::q;

    #[test]
    fn make_element_examples() {
        let x = x3();
        assert!(ForestElement::new(&x, vec![bp(0, A, Some(0)), bp(1, B, None)]).is_ok());
        assert_eq!(
            ForestElement::new(&x, vec![bp(0, A, Some(0)), bp(1, C, None)]),
            Err(ForestError::Shape(ShapeError::LipschitzViolation(0)))
        );
        let pt = ForestElement::new(&x, vec![bp(0, A, None)]).unwrap();
        assert_eq!(pt.length(), &Rational::zero());
        assert_eq!(
            ForestElement::new(&x, vec![bp(0, A, Some(0)), bp(1, B, Some(3))]),
            Err(ForestError::LabelOnSupremum)
        );
        assert_eq!(
            ForestElement::new(&x, vec![bp(1, A, None)]),
            Err(ForestError::Shape(ShapeError::MissingZeroBreakpoint))
        );
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(k2().restrict(&q(1, 1)), k1());
        assert_eq!(k2().restrict(&q(3, 2)), k1());
        assert_eq!(k2().restrict(&Rational::zero()), pt_a());
        assert_eq!(k2().restrict(&q(9, 1)), k2());
    }

    #[test]
    fn meet_examples() {
        assert_eq!(k1().meet(&k2()), Some(k1()));
        assert_eq!(k1().meet(&k3()), Some(pt_a()));
        assert_eq!(k1().meet(&l_b()), None);
        assert!(k1().is_prefix_of(&k2()));
        assert!(!k3().is_prefix_of(&k2()));
    }

    #[test]
    fn meet_family_examples() {
        assert_eq!(meet_family(&[k1(), k2(), k5()]).unwrap(), k1());
        assert_eq!(meet_family(&[k1(), k3(), k5()]).unwrap(), pt_a());
        assert_eq!(meet_family(&[k2()]).unwrap(), k2());
        assert_eq!(meet_family(&[k2(), l_b()]), Err(ForestError::MixedComponents));
        assert_eq!(meet_family(&[]), Err(ForestError::EmptyFamily));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(k1().distance(&k2()), Extended::Finite(q(1, 1)));
        assert_eq!(k5().distance(&k3()), Extended::Finite(q(3, 1)));
        assert_eq!(k5().distance_trunc(&k3(), &q(2, 1)), q(2, 1));
        assert_eq!(k2().distance(&k2()), Extended::Finite(Rational::zero()));
        assert_eq!(k1().distance(&l_b()), Extended::Infinite);
    }

    #[test]
    fn predicate_and_tip_examples() {
        let x = x3();
        let f = x.distance_function(&A);
        assert_eq!(k2().eval_predicate(&x, &f), q(2, 1));
        assert_eq!(pt_a().eval_predicate(&x, &f), Rational::zero());
        assert_eq!(k1().eval_predicate(&x, &f), q(1, 1));
        assert_eq!(k2().tip(), &C);
        assert_eq!(pt_a().tip(), &A);
        assert_eq!(k6().tip(), &B);
        assert!(k1().same_component(&k2()));
        assert!(!k1().same_component(&l_b()));
    }

    #[test]
    fn graft_examples() {
        let x = x3();
        let ab = Path::new(&x, vec![(q(0, 1), A), (q(1, 1), B)]).unwrap();
        let expect = ForestElement::new(&x, vec![bp(0, A, Some(9)), bp(1, B, None)]).unwrap();
        assert_eq!(pt_a().graft(&ab, 9).unwrap(), expect);
        assert_eq!(k1().graft(&Path::point(B), 9).unwrap(), k1());
        let bc = Path::new(&x, vec![(q(0, 1), B), (q(1, 1), C)]).unwrap();
        let expect = ForestElement::new(&x, vec![bp(0, A, Some(0)), bp(1, B, Some(9)), bp(2, C, None)]).unwrap();
        assert_eq!(k1().graft(&bc, 9).unwrap(), expect);
        assert_eq!(k1().graft(&ab, 9), Err(ForestError::RootMismatch));
    }
}
