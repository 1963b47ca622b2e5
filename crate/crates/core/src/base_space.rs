//! Compact topometric base spaces with open metric.
//!
//! Three presentations sit behind [`BaseSpace`]:
//!
//! * a finite discrete space with an explicit rational metric matrix,
//! * the interval `[0, D]` with `|x - y|` and its usual topology,
//! * the one-point compactification `N ∪ {INF}` with the `{0, 1}` metric,
//!   whose topology (cofinite neighborhoods of `INF`) is strictly coarser
//!   than the metric topology.
//!
//! Each one exposes the same set and uniformity operations: strict and
//! non-strict fattening, entourage balls, entourage shrinking, separation of
//! two points by open sets with far-apart closures, and deterministic
//! witness extraction.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{ParseRationalError, Rational};
use crate::region::{Region, Span, SpanSet, TailSet};

/// Largest natural that may be named in a tail-compactification description.
pub const DEFAULT_TAIL_BOUND: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("metric axiom violated ({axiom}) at ({0}, {1}, {2})", .witness.0, .witness.1, .witness.2)]
    MetricAxiomViolation { axiom: &'static str, witness: (String, String, String) },
    #[error("a space with a single point has no positive diameter")]
    SinglePointSpace,
    #[error("not a rational value: {0}")]
    NonRationalValue(#[from] ParseRationalError),
    #[error("metric matrix must be square with one row per point")]
    MalformedMatrix,
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("interval length must be positive")]
    NonPositiveDiameter,
    #[error("point {0} does not belong to this space")]
    ForeignPoint(String),
    #[error("points {x} and {y} are not more than {s} apart")]
    SeparationImpossible { x: String, y: String, s: Rational },
    #[error("no point of the region lies within {bound} of {y}")]
    EmptyChoice { y: String, bound: Rational },
    #[error("function is not {lipschitz}-Lipschitz: {detail}")]
    NotLipschitz { lipschitz: Rational, detail: String },
    #[error("malformed function: {0}")]
    MalformedFunction(String),
}

/// A point of `N ∪ {INF}`. `Nat(_) < Inf` in the derived order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TailPoint {
    Nat(u64),
    Inf,
}

/// A point of some base space; the variant must match the space kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasePoint {
    /// Index into the point list of a finite discrete space.
    Finite(usize),
    /// A rational in `[0, D]`.
    Real(Rational),
    Tail(TailPoint),
}

/// Basis parameter for the uniformity of a base space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EntourageIndex {
    /// `V_r = {(x, y) : der(x, y) < r}` for the metric presentations.
    Radius(Rational),
    /// `V_n = diagonal ∪ T_n × T_n` with `T_n = {k >= n} ∪ {INF}`.
    Tail(u64),
}

impl EntourageIndex {
    /// The basis element contained in both `self` and `other`.
    pub fn intersect(&self, other: &EntourageIndex) -> EntourageIndex {
        match (self, other) {
            (EntourageIndex::Radius(a), EntourageIndex::Radius(b)) => EntourageIndex::Radius(Rational::min_of(a, b)),
            (EntourageIndex::Tail(a), EntourageIndex::Tail(b)) => EntourageIndex::Tail(*a.max(b)),
            _ => panic!("entourage indices of different kinds"),
        }
    }
}

/// A continuous real-valued function on a base space with a stored
/// Lipschitz constant; its modulus of uniform continuity is `t ↦ L t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpec {
    /// One value per point of a finite discrete space.
    Table { values: Vec<Rational>, lipschitz: Rational },
    /// Piecewise linear on `[0, D]` through the given knots; the first knot is
    /// at 0 and the last at `D`.
    PiecewiseLinear { knots: Vec<(Rational, Rational)>, lipschitz: Rational },
    /// `values[k]` at each `k < values.len()`, and `tail` everywhere else
    /// including `INF`.
    EventuallyConstant { values: Vec<Rational>, tail: Rational, lipschitz: Rational },
}

impl FunctionSpec {
    pub fn lipschitz(&self) -> &Rational {
        match self {
            FunctionSpec::Table { lipschitz, .. }
            | FunctionSpec::PiecewiseLinear { lipschitz, .. }
            | FunctionSpec::EventuallyConstant { lipschitz, .. } => lipschitz,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDiscrete {
    labels: Vec<String>,
    metric: Vec<Vec<Rational>>,
    diameter: Rational,
}

impl FiniteDiscrete {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn metric(&self) -> &[Vec<Rational>] {
        &self.metric
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    FiniteDiscrete,
    Interval,
    TailCompactification,
}

/// A validated compact topometric space with open metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSpace {
    FiniteDiscrete(FiniteDiscrete),
    Interval { length: Rational },
    Tail { bound: u64 },
}

/// Raw, unvalidated space description as it appears in JSON.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDesc {
    FiniteDiscrete {
        points: Vec<String>,
        metric: Vec<Vec<String>>,
    },
    Interval {
        diameter: String,
    },
    TailCompactification {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<u64>,
    },
}

impl BaseSpace {
    pub fn from_desc(desc: &SpaceDesc) -> Result<BaseSpace, SpaceError> {
        match desc {
            SpaceDesc::FiniteDiscrete { points, metric } => {
                let rows = metric
                    .iter()
                    .map(|row| row.iter().map(|s| s.parse::<Rational>()).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                BaseSpace::finite(points.clone(), rows)
            }
            SpaceDesc::Interval { diameter } => BaseSpace::interval(diameter.parse()?),
            SpaceDesc::TailCompactification { bound } => {
                Ok(BaseSpace::Tail { bound: bound.unwrap_or(DEFAULT_TAIL_BOUND) })
            }
        }
    }

    pub fn to_desc(&self) -> SpaceDesc {
        match self {
            BaseSpace::FiniteDiscrete(fd) => SpaceDesc::FiniteDiscrete {
                points: fd.labels.clone(),
                metric: fd.metric.iter().map(|row| row.iter().map(|r| r.to_string()).collect()).collect(),
            },
            BaseSpace::Interval { length } => SpaceDesc::Interval { diameter: length.to_string() },
            BaseSpace::Tail { bound } => {
                SpaceDesc::TailCompactification { bound: (*bound != DEFAULT_TAIL_BOUND).then_some(*bound) }
            }
        }
    }

    /// Validates a finite discrete space exhaustively: zero diagonal,
    /// positivity off the diagonal, symmetry and every triangle.
    #[allow(clippy::needless_range_loop)]
    pub fn finite(labels: Vec<String>, metric: Vec<Vec<Rational>>) -> Result<BaseSpace, SpaceError> {
        let n = labels.len();
        if metric.len() != n || metric.iter().any(|row| row.len() != n) {
            return Err(SpaceError::MalformedMatrix);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        if n < 2 {
            return Err(SpaceError::SinglePointSpace);
        }
        let name = |i: usize| labels[i].clone();
        let violation =
            |axiom, i, j, k| SpaceError::MetricAxiomViolation { axiom, witness: (name(i), name(j), name(k)) };
        for i in 0..n {
            if !metric[i][i].is_zero() {
                return Err(violation("zero self-distance", i, i, i));
            }
            for j in 0..n {
                if i != j && !metric[i][j].is_positive() {
                    return Err(violation("identity of indiscernibles", i, j, j));
                }
                if metric[i][j] != metric[j][i] {
                    return Err(violation("symmetry", i, j, i));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if metric[i][j] > &metric[i][k] + &metric[k][j] {
                        return Err(violation("triangle inequality", i, j, k));
                    }
                }
            }
        }
        let diameter = metric.iter().flatten().max().cloned().unwrap_or_default();
        Ok(BaseSpace::FiniteDiscrete(FiniteDiscrete { labels, metric, diameter }))
    }

    pub fn interval(length: Rational) -> Result<BaseSpace, SpaceError> {
        if !length.is_positive() {
            return Err(SpaceError::NonPositiveDiameter);
        }
        Ok(BaseSpace::Interval { length })
    }

    pub fn tail() -> BaseSpace {
        BaseSpace::Tail { bound: DEFAULT_TAIL_BOUND }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            BaseSpace::FiniteDiscrete(_) => SpaceKind::FiniteDiscrete,
            BaseSpace::Interval { .. } => SpaceKind::Interval,
            BaseSpace::Tail { .. } => SpaceKind::TailCompactification,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteDiscrete> {
        match self {
            BaseSpace::FiniteDiscrete(fd) => Some(fd),
            _ => None,
        }
    }

    /// `sup der` over `X × X`; exact for every presentation.
    pub fn diameter(&self) -> Rational {
        match self {
            BaseSpace::FiniteDiscrete(fd) => fd.diameter.clone(),
            BaseSpace::Interval { length } => length.clone(),
            BaseSpace::Tail { .. } => Rational::one(),
        }
    }

    pub fn contains_point(&self, x: &BasePoint) -> bool {
        match (self, x) {
            (BaseSpace::FiniteDiscrete(fd), BasePoint::Finite(i)) => *i < fd.labels.len(),
            (BaseSpace::Interval { length }, BasePoint::Real(r)) => !r.is_negative() && r <= length,
            (BaseSpace::Tail { .. }, BasePoint::Tail(_)) => true,
            _ => false,
        }
    }

    pub fn check_point(&self, x: &BasePoint) -> Result<(), SpaceError> {
        if self.contains_point(x) {
            Ok(())
        } else {
            Err(SpaceError::ForeignPoint(format!("{x:?}")))
        }
    }

    /// Human-readable point name, matching the JSON point encoding.
    pub fn point_name(&self, x: &BasePoint) -> String {
        match (self, x) {
            (BaseSpace::FiniteDiscrete(fd), BasePoint::Finite(i)) => {
                fd.labels.get(*i).cloned().unwrap_or_else(|| format!("#{i}"))
            }
            (_, BasePoint::Real(r)) => r.to_string(),
            (_, BasePoint::Tail(TailPoint::Nat(k))) => k.to_string(),
            (_, BasePoint::Tail(TailPoint::Inf)) => "INF".to_string(),
            (_, BasePoint::Finite(i)) => format!("#{i}"),
        }
    }

    /// The base metric `der`. Panics on points of the wrong kind.
    pub fn der(&self, x: &BasePoint, y: &BasePoint) -> Rational {
        match (self, x, y) {
            (BaseSpace::FiniteDiscrete(fd), BasePoint::Finite(i), BasePoint::Finite(j)) => fd.metric[*i][*j].clone(),
            (BaseSpace::Interval { .. }, BasePoint::Real(a), BasePoint::Real(b)) => a.dist(b),
            (BaseSpace::Tail { .. }, BasePoint::Tail(a), BasePoint::Tail(b)) => {
                if a == b {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            }
            _ => panic!("der on points foreign to the space"),
        }
    }

    pub fn whole(&self) -> Region {
        match self {
            BaseSpace::FiniteDiscrete(fd) => Region::Finite((0..fd.labels.len()).collect()),
            BaseSpace::Interval { length } => {
                Region::Interval(SpanSet::from_spans([Span::closed(Rational::zero(), length.clone())]))
            }
            BaseSpace::Tail { .. } => Region::Tail(TailSet::whole()),
        }
    }

    pub fn empty(&self) -> Region {
        match self {
            BaseSpace::FiniteDiscrete(_) => Region::Finite(BTreeSet::new()),
            BaseSpace::Interval { .. } => Region::Interval(SpanSet::empty()),
            BaseSpace::Tail { .. } => Region::Tail(TailSet::empty()),
        }
    }

    /// The singleton `{x}` (open only in the discrete presentations).
    pub fn singleton(&self, x: &BasePoint) -> Region {
        match x {
            BasePoint::Finite(i) => Region::Finite([*i].into_iter().collect()),
            BasePoint::Real(r) => Region::Interval(SpanSet::from_spans([Span::closed(r.clone(), r.clone())])),
            BasePoint::Tail(TailPoint::Nat(k)) => Region::Tail(TailSet::Finite([*k].into_iter().collect())),
            BasePoint::Tail(TailPoint::Inf) => panic!("{{INF}} is not representable as a tail region"),
        }
    }

    /// Builds an open region of `[0, D]` from open real intervals, clipping to
    /// the space (endpoints `0` and `D` become relatively-open closed ends).
    pub fn interval_region(&self, spans: impl IntoIterator<Item = (Rational, Rational)>) -> Region {
        let BaseSpace::Interval { length } = self else { panic!("interval_region on a non-interval space") };
        Region::Interval(clip(SpanSet::from_spans(spans.into_iter().map(|(a, b)| Span::open(a, b))), length))
    }

    pub fn member(&self, x: &BasePoint, s: &Region) -> bool {
        match (x, s) {
            (BasePoint::Finite(i), Region::Finite(set)) => set.contains(i),
            (BasePoint::Real(r), Region::Interval(spans)) => spans.contains(r),
            (BasePoint::Tail(TailPoint::Nat(k)), Region::Tail(t)) => t.contains_nat(*k),
            (BasePoint::Tail(TailPoint::Inf), Region::Tail(t)) => t.contains_inf(),
            _ => panic!("membership test across space kinds"),
        }
    }

    /// Whether the region is open in this space's topology.
    pub fn is_open(&self, s: &Region) -> bool {
        match (self, s) {
            (BaseSpace::Interval { length }, Region::Interval(spans)) => spans.spans().iter().all(|sp| {
                let lo_ok = !sp.lo_closed || sp.lo.is_zero();
                let hi_ok = !sp.hi_closed || &sp.hi == length;
                lo_ok && hi_ok && !sp.lo.is_negative() && sp.hi <= *length
            }),
            (BaseSpace::FiniteDiscrete(_), Region::Finite(_)) | (BaseSpace::Tail { .. }, Region::Tail(_)) => true,
            _ => false,
        }
    }

    /// Topological closure.
    pub fn closure(&self, s: &Region) -> Region {
        match s {
            // Discrete topology; finite tail sets and cofinite sets with INF
            // are already closed.
            Region::Finite(_) | Region::Tail(_) => s.clone(),
            Region::Interval(spans) => Region::Interval(spans.closure()),
        }
    }

    /// `S^{<e} = {x : der(x, S) < e}`; empty when `e = 0`.
    pub fn fatten(&self, s: &Region, e: &Rational) -> Region {
        if !e.is_positive() || s.is_empty() {
            return self.empty();
        }
        match (self, s) {
            (BaseSpace::FiniteDiscrete(fd), Region::Finite(set)) => {
                Region::Finite((0..fd.labels.len()).filter(|&x| set.iter().any(|&y| fd.metric[x][y] < *e)).collect())
            }
            (BaseSpace::Interval { length }, Region::Interval(spans)) => {
                Region::Interval(clip(spans.grow(e, false), length))
            }
            (BaseSpace::Tail { .. }, Region::Tail(_)) => {
                if *e > Rational::one() {
                    self.whole()
                } else {
                    s.clone()
                }
            }
            _ => panic!("fatten across space kinds"),
        }
    }

    /// `C^{<=s} = {x : der(x, C) <= s}` for a closed region `C`.
    pub fn fatten_closed(&self, c: &Region, s: &Rational) -> Region {
        if c.is_empty() {
            return self.empty();
        }
        match (self, c) {
            (BaseSpace::FiniteDiscrete(fd), Region::Finite(set)) => {
                Region::Finite((0..fd.labels.len()).filter(|&x| set.iter().any(|&y| fd.metric[x][y] <= *s)).collect())
            }
            (BaseSpace::Interval { length }, Region::Interval(spans)) => {
                Region::Interval(clip(spans.grow(s, true), length))
            }
            (BaseSpace::Tail { .. }, Region::Tail(_)) => {
                if *s >= Rational::one() {
                    self.whole()
                } else {
                    c.clone()
                }
            }
            _ => panic!("fatten across space kinds"),
        }
    }

    /// The entourage ball `V_i(x) = {y : (x, y) ∈ V_i}`.
    pub fn entourage_ball(&self, i: &EntourageIndex, x: &BasePoint) -> Region {
        match (self, i, x) {
            (BaseSpace::FiniteDiscrete(fd), EntourageIndex::Radius(r), BasePoint::Finite(a)) => {
                Region::Finite((0..fd.labels.len()).filter(|&b| fd.metric[*a][b] < *r).collect())
            }
            (BaseSpace::Interval { length }, EntourageIndex::Radius(r), BasePoint::Real(a)) => {
                Region::Interval(clip(SpanSet::from_spans([Span::open(a - r, a + r)]), length))
            }
            (BaseSpace::Tail { .. }, EntourageIndex::Tail(n), BasePoint::Tail(p)) => match p {
                TailPoint::Nat(k) if k < n => Region::Tail(TailSet::Finite([*k].into_iter().collect())),
                _ => Region::Tail(TailSet::tail_from(*n)),
            },
            _ => panic!("entourage index does not match the space"),
        }
    }

    pub fn entourage_member(&self, i: &EntourageIndex, x: &BasePoint, y: &BasePoint) -> bool {
        match (self, i) {
            (BaseSpace::FiniteDiscrete(_) | BaseSpace::Interval { .. }, EntourageIndex::Radius(r)) => {
                self.der(x, y) < *r
            }
            (BaseSpace::Tail { .. }, EntourageIndex::Tail(n)) => {
                let in_tail = |p: &BasePoint| match p {
                    BasePoint::Tail(TailPoint::Nat(k)) => k >= n,
                    BasePoint::Tail(TailPoint::Inf) => true,
                    _ => panic!("foreign point"),
                };
                x == y || (in_tail(x) && in_tail(y))
            }
            _ => panic!("entourage index does not match the space"),
        }
    }

    pub fn entourage_matches(&self, i: &EntourageIndex) -> bool {
        match (self, i) {
            (BaseSpace::FiniteDiscrete(_) | BaseSpace::Interval { .. }, EntourageIndex::Radius(r)) => r.is_positive(),
            (BaseSpace::Tail { .. }, EntourageIndex::Tail(_)) => true,
            _ => false,
        }
    }

    /// A smaller basis entourage `V_j ⊆ V_i` and `0 < delta < e` such that
    /// the closure of every `V_j(x)`, fattened by `delta`, stays in `V_i(x)`.
    /// `V_j ∘ V_j ⊆ V_i` also holds.
    pub fn shrink(&self, i: &EntourageIndex, e: &Rational) -> (EntourageIndex, Rational) {
        let two = Rational::from_int(2);
        match i {
            EntourageIndex::Radius(r) => {
                let quarter = r / Rational::from_int(4);
                let delta = Rational::min_of(e, &quarter) / &two;
                (EntourageIndex::Radius(r / &two), delta)
            }
            EntourageIndex::Tail(n) => {
                let delta = Rational::min_of(e, &Rational::one()) / &two;
                (EntourageIndex::Tail(*n), delta)
            }
        }
    }

    /// Open `B ∋ x` and `C ∋ y` with `cl(B)^{<=s} ∩ cl(C) = ∅`.
    pub fn separate(&self, x: &BasePoint, y: &BasePoint, s: &Rational) -> Result<(Region, Region), SpaceError> {
        let gap = self.der(x, y);
        if gap <= *s {
            return Err(SpaceError::SeparationImpossible {
                x: self.point_name(x),
                y: self.point_name(y),
                s: s.clone(),
            });
        }
        match (self, x, y) {
            (BaseSpace::FiniteDiscrete(fd), BasePoint::Finite(a), _) => {
                let b = self.singleton(x);
                let c = Region::Finite((0..fd.labels.len()).filter(|&z| fd.metric[*a][z] > *s).collect());
                Ok((b, c))
            }
            (BaseSpace::Interval { .. }, BasePoint::Real(a), BasePoint::Real(b)) => {
                let rho = (&gap - s) / Rational::from_int(3);
                let ball = |c: &Rational| self.interval_region([(c - &rho, c + &rho)]);
                Ok((ball(a), ball(b)))
            }
            (BaseSpace::Tail { .. }, BasePoint::Tail(a), BasePoint::Tail(b)) => {
                let finite = |k: u64| Region::Tail(TailSet::Finite([k].into_iter().collect()));
                let cofinite = |k: u64| Region::Tail(TailSet::Cofinite([k].into_iter().collect()));
                Ok(match (a, b) {
                    (TailPoint::Nat(i), TailPoint::Nat(j)) => (finite(*i), finite(*j)),
                    (TailPoint::Inf, TailPoint::Nat(j)) => (cofinite(*j), finite(*j)),
                    (TailPoint::Nat(i), TailPoint::Inf) => (finite(*i), cofinite(*i)),
                    (TailPoint::Inf, TailPoint::Inf) => unreachable!("der(INF, INF) = 0"),
                })
            }
            _ => panic!("separate on points foreign to the space"),
        }
    }

    /// Canonical element of `S ∩ {z : der(y, z) < b}`.
    ///
    /// Finite spaces return the least index; `[0, D]` returns the rational of
    /// least denominator (then numerator) in the leftmost component; the tail
    /// space returns the least natural, else `INF`.
    pub fn pick_within(&self, s: &Region, y: &BasePoint, b: &Rational) -> Result<BasePoint, SpaceError> {
        let empty = || SpaceError::EmptyChoice { y: self.point_name(y), bound: b.clone() };
        if !b.is_positive() {
            return Err(empty());
        }
        match (self, s) {
            (BaseSpace::FiniteDiscrete(fd), Region::Finite(set)) => {
                let BasePoint::Finite(yi) = y else { panic!("foreign point") };
                set.iter().copied().find(|&z| fd.metric[*yi][z] < *b).map(BasePoint::Finite).ok_or_else(empty)
            }
            (BaseSpace::Interval { length }, Region::Interval(spans)) => {
                let BasePoint::Real(yr) = y else { panic!("foreign point") };
                let ball = clip(SpanSet::from_spans([Span::open(yr - b, yr + b)]), length);
                let meet = spans.intersect(&ball);
                let first = meet.spans().first().ok_or_else(empty)?;
                Rational::simplest_between(&first.lo, first.lo_closed, &first.hi, first.hi_closed)
                    .map(BasePoint::Real)
                    .ok_or_else(empty)
            }
            (BaseSpace::Tail { .. }, Region::Tail(t)) => {
                let BasePoint::Tail(yp) = y else { panic!("foreign point") };
                let near = if *b > Rational::one() {
                    t.clone()
                } else {
                    match yp {
                        TailPoint::Nat(k) => TailSet::Finite([*k].into_iter().collect()).intersect(t),
                        TailPoint::Inf => {
                            return if t.contains_inf() { Ok(y.clone()) } else { Err(empty()) };
                        }
                    }
                };
                if let Some(k) = near.least_nat() {
                    Ok(BasePoint::Tail(TailPoint::Nat(k)))
                } else if near.contains_inf() {
                    Ok(BasePoint::Tail(TailPoint::Inf))
                } else {
                    Err(empty())
                }
            }
            _ => panic!("pick_within across space kinds"),
        }
    }

    /// Checks the stored Lipschitz constant and the shape of `f`.
    pub fn validate_function(&self, f: &FunctionSpec) -> Result<(), SpaceError> {
        let not_lip = |detail: String| SpaceError::NotLipschitz { lipschitz: f.lipschitz().clone(), detail };
        if f.lipschitz().is_negative() {
            return Err(SpaceError::MalformedFunction("negative Lipschitz constant".into()));
        }
        match (self, f) {
            (BaseSpace::FiniteDiscrete(fd), FunctionSpec::Table { values, lipschitz }) => {
                if values.len() != fd.labels.len() {
                    return Err(SpaceError::MalformedFunction("one value per point required".into()));
                }
                for i in 0..values.len() {
                    for j in 0..values.len() {
                        if values[i].dist(&values[j]) > lipschitz * &fd.metric[i][j] {
                            return Err(not_lip(format!("between {} and {}", fd.labels[i], fd.labels[j])));
                        }
                    }
                }
                Ok(())
            }
            (BaseSpace::Interval { length }, FunctionSpec::PiecewiseLinear { knots, lipschitz }) => {
                let ok_shape = knots.len() >= 2
                    && knots[0].0.is_zero()
                    && &knots[knots.len() - 1].0 == length
                    && knots.windows(2).all(|w| w[0].0 < w[1].0);
                if !ok_shape {
                    return Err(SpaceError::MalformedFunction("knots must increase strictly from 0 to D".into()));
                }
                for w in knots.windows(2) {
                    let slope = (&w[1].1 - &w[0].1).abs() / (&w[1].0 - &w[0].0);
                    if slope > *lipschitz {
                        return Err(not_lip(format!("slope {slope} on [{}, {}]", w[0].0, w[1].0)));
                    }
                }
                Ok(())
            }
            (BaseSpace::Tail { .. }, FunctionSpec::EventuallyConstant { values, tail, lipschitz }) => {
                let lo = values.iter().chain(std::iter::once(tail)).min().expect("nonempty");
                let hi = values.iter().chain(std::iter::once(tail)).max().expect("nonempty");
                if &(hi - lo) > lipschitz {
                    return Err(not_lip(format!("range {lo}..{hi} wider than the constant")));
                }
                Ok(())
            }
            _ => Err(SpaceError::MalformedFunction("function kind does not match the space".into())),
        }
    }

    /// Exact value `f(x)`.
    pub fn eval_function(&self, f: &FunctionSpec, x: &BasePoint) -> Rational {
        match (f, x) {
            (FunctionSpec::Table { values, .. }, BasePoint::Finite(i)) => values[*i].clone(),
            (FunctionSpec::PiecewiseLinear { knots, .. }, BasePoint::Real(t)) => {
                let seg = knots.windows(2).find(|w| *t <= w[1].0).unwrap_or(&knots[knots.len() - 2..]);
                let (x0, y0) = &seg[0];
                let (x1, y1) = &seg[1];
                y0 + (y1 - y0) * (t - x0) / (x1 - x0)
            }
            (FunctionSpec::EventuallyConstant { values, tail, .. }, BasePoint::Tail(p)) => match p {
                TailPoint::Nat(k) => values.get(*k as usize).unwrap_or(tail).clone(),
                TailPoint::Inf => tail.clone(),
            },
            _ => panic!("function does not match the point kind"),
        }
    }

    /// `der(·, p)` as a 1-Lipschitz function specification.
    pub fn distance_function(&self, p: &BasePoint) -> FunctionSpec {
        match (self, p) {
            (BaseSpace::FiniteDiscrete(fd), BasePoint::Finite(i)) => {
                FunctionSpec::Table { values: fd.metric[*i].clone(), lipschitz: Rational::one() }
            }
            (BaseSpace::Interval { length }, BasePoint::Real(r)) => {
                let mut knots = vec![(Rational::zero(), r.clone())];
                if r.is_positive() && r < length {
                    knots.push((r.clone(), Rational::zero()));
                }
                knots.push((length.clone(), length - r));
                FunctionSpec::PiecewiseLinear { knots, lipschitz: Rational::one() }
            }
            (BaseSpace::Tail { .. }, BasePoint::Tail(p)) => match p {
                TailPoint::Nat(k) => {
                    let mut values = vec![Rational::one(); *k as usize + 1];
                    values[*k as usize] = Rational::zero();
                    FunctionSpec::EventuallyConstant { values, tail: Rational::one(), lipschitz: Rational::one() }
                }
                TailPoint::Inf => FunctionSpec::EventuallyConstant {
                    values: Vec::new(),
                    tail: Rational::zero(),
                    lipschitz: Rational::one(),
                },
            },
            _ => panic!("foreign point"),
        }
    }
}

fn clip(spans: SpanSet, length: &Rational) -> SpanSet {
    let whole = SpanSet::from_spans([Span::closed(Rational::zero(), length.clone())]);
    spans.intersect(&whole)
}
