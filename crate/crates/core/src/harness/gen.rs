//! Seeded random instances. Every generated value passes its validator:
//! consecutive breakpoints are joined by sampling the next base point within
//! the time gap, and families share components by branching off a common
//! base element.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base_space::{BasePoint, BaseSpace, EntourageIndex, FunctionSpec, TailPoint};
use crate::forest::{Breakpoint, ForestElement};
use crate::path_space::Path;
use crate::rational::Rational;
use crate::region::{Region, TailSet};
use crate::tree_geometry::{FiniteTree, Interval};
use crate::type_space::{DeskModel, TypePoint};

/// Size knobs for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_breakpoints: usize,
    pub max_family: usize,
    pub max_intervals: usize,
    /// Largest denominator used for times and interval points; powers of two
    /// up to this bound are drawn.
    pub max_denominator: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_breakpoints: 6, max_family: 6, max_intervals: 4, max_denominator: 64 }
    }
}

/// Labels are drawn from a small alphabet so that branches collide often.
const LABELS: u64 = 3;
const TAIL_SPREAD: u64 = 12;

/// `(K, K', r, A)` with `d(K, K') <= r` and `r > 0`.
#[derive(Clone, Debug)]
pub struct IntervalConfig {
    pub k: ForestElement,
    pub k2: ForestElement,
    pub r: Rational,
    pub a: ForestElement,
}

pub struct Gen<'a> {
    pub space: &'a BaseSpace,
    pub bounds: Bounds,
    pub rng: ChaCha8Rng,
}

impl<'a> Gen<'a> {
    pub fn new(space: &'a BaseSpace, bounds: Bounds, rng: ChaCha8Rng) -> Self {
        Gen { space, bounds, rng }
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }

    fn denominator(&mut self) -> i64 {
        let max_exp = 31 - self.bounds.max_denominator.max(1).leading_zeros();
        1 << self.rng.gen_range(0..=max_exp)
    }

    /// A grid rational in `(0, 2]`.
    pub fn positive(&mut self) -> Rational {
        let den = self.denominator();
        Rational::new(self.rng.gen_range(1..=2 * den), den)
    }

    /// A grid rational in `[lo, hi]`, or `None` if the grid misses it.
    fn grid_in(&mut self, lo: &Rational, hi: &Rational) -> Option<Rational> {
        let den = self.denominator();
        let d = Rational::from_int(den);
        let a = i64::try_from((lo * &d).ceil()).ok()?;
        let b = i64::try_from((hi * &d).floor()).ok()?;
        (a <= b).then(|| Rational::new(self.rng.gen_range(a..=b), den))
    }

    pub fn point(&mut self) -> BasePoint {
        match self.space {
            BaseSpace::FiniteDiscrete(fd) => BasePoint::Finite(self.rng.gen_range(0..fd.labels().len())),
            BaseSpace::Interval { length } => {
                let length = length.clone();
                BasePoint::Real(self.grid_in(&Rational::zero(), &length).unwrap_or_else(Rational::zero))
            }
            BaseSpace::Tail { bound } => {
                if self.chance(1, 4) {
                    BasePoint::Tail(TailPoint::Inf)
                } else {
                    BasePoint::Tail(TailPoint::Nat(self.rng.gen_range(0..=TAIL_SPREAD.min(*bound))))
                }
            }
        }
    }

    /// A point other than `x`.
    pub fn other_point(&mut self, x: &BasePoint) -> BasePoint {
        loop {
            let y = self.point();
            if &y != x {
                return y;
            }
        }
    }

    /// A point `y` with `der(x, y) <= budget`; `x` itself a quarter of the time.
    pub fn point_near(&mut self, x: &BasePoint, budget: &Rational) -> BasePoint {
        if self.chance(1, 4) {
            return x.clone();
        }
        match (self.space, x) {
            (BaseSpace::FiniteDiscrete(fd), BasePoint::Finite(i)) => {
                let near: Vec<usize> = (0..fd.labels().len()).filter(|&j| fd.metric()[*i][j] <= *budget).collect();
                BasePoint::Finite(*near.choose(&mut self.rng).expect("x is near itself"))
            }
            (BaseSpace::Interval { length }, BasePoint::Real(t)) => {
                let lo = Rational::max_of(&Rational::zero(), &(t - budget));
                let hi = Rational::min_of(length, &(t + budget));
                BasePoint::Real(self.grid_in(&lo, &hi).unwrap_or_else(|| t.clone()))
            }
            (BaseSpace::Tail { .. }, _) => {
                if *budget >= Rational::one() {
                    self.point()
                } else {
                    x.clone()
                }
            }
            _ => panic!("point from another space"),
        }
    }

    fn label(&mut self) -> u64 {
        self.rng.gen_range(0..LABELS)
    }

    /// Appends `steps` breakpoints to `base`, labelling its old tip.
    pub fn extend(&mut self, base: &ForestElement, steps: usize) -> ForestElement {
        if steps == 0 {
            return base.clone();
        }
        let mut bps = base.breakpoints();
        for _ in 0..steps {
            let last = bps.last_mut().expect("nonempty");
            last.label = Some(self.label());
            let (r, x) = (last.r.clone(), last.x.clone());
            let gap = self.positive();
            let y = self.point_near(&x, &gap);
            bps.push(Breakpoint::new(r + gap, y, None));
        }
        ForestElement::new(self.space, bps).expect("steps respect the Lipschitz bound")
    }

    pub fn element_from(&mut self, root: BasePoint) -> ForestElement {
        let n = self.rng.gen_range(1..=self.bounds.max_breakpoints.max(1));
        self.extend(&ForestElement::point(root), n - 1)
    }

    pub fn element(&mut self) -> ForestElement {
        let root = self.point();
        self.element_from(root)
    }

    pub fn path(&mut self) -> Path {
        self.element().path().clone()
    }

    pub fn path_from(&mut self, start: BasePoint) -> Path {
        self.element_from(start).path().clone()
    }

    /// An element sharing a random initial segment with `base`.
    pub fn branch(&mut self, base: &ForestElement) -> ForestElement {
        let k = self.rng.gen_range(1..=base.breakpoint_count());
        let room = self.bounds.max_breakpoints.max(1).saturating_sub(k);
        let steps = self.rng.gen_range(0..=room);
        self.extend(&base.prefix(k), steps)
    }

    /// A path sharing a random initial segment with `f`.
    pub fn branch_path(&mut self, f: &Path) -> Path {
        let labels = vec![0; f.times().len() - 1];
        self.branch(&ForestElement::from_parts(f.clone(), labels)).path().clone()
    }

    /// `n` elements of one component, each branching off the base or an
    /// earlier member.
    pub fn family_of(&mut self, n: usize) -> Vec<ForestElement> {
        let mut out = vec![self.element()];
        while out.len() < n {
            let parent = out.choose(&mut self.rng).expect("nonempty").clone();
            out.push(self.branch(&parent));
        }
        out.shuffle(&mut self.rng);
        out
    }

    pub fn family(&mut self) -> Vec<ForestElement> {
        let n = self.rng.gen_range(1..=self.bounds.max_family.max(1));
        self.family_of(n)
    }

    /// Usually in the component of `k`, occasionally an independent element.
    pub fn companion(&mut self, k: &ForestElement) -> ForestElement {
        if self.chance(1, 8) {
            self.element()
        } else {
            self.branch(k)
        }
    }

    pub fn interval_config(&mut self) -> IntervalConfig {
        let fam = self.family_of(3);
        let (k, k2) = (fam[0].clone(), fam[1].clone());
        let d = k.distance(&k2).finite().cloned().expect("one family");
        let r = if d.is_positive() && self.chance(1, 4) { d } else { d + self.positive() };
        let a = if self.chance(1, 10) {
            let root = self.other_point(k.root());
            self.element_from(root)
        } else if self.chance(1, 3) {
            // Something on the interval, possibly extended off it.
            let iv = Interval::new(&k, &k2).expect("one component");
            let e = iv.elements().choose(&mut self.rng).expect("nonempty").clone();
            let steps = self.rng.gen_range(0..=2);
            self.extend(&e, steps)
        } else {
            fam[2].clone()
        };
        IntervalConfig { k, k2, r, a }
    }

    /// A finite tree on the component of `root`.
    pub fn tree_rooted(&mut self, root: BasePoint) -> FiniteTree {
        let base = self.element_from(root);
        let first = (base.clone(), self.branch(&base));
        let mut known: Vec<ForestElement> = Interval::new(&first.0, &first.1).expect("same root").elements().to_vec();
        let mut pairs = vec![first];
        let n = self.rng.gen_range(1..=self.bounds.max_intervals.max(1));
        while pairs.len() < n {
            let k = known.choose(&mut self.rng).expect("nonempty").clone();
            let parent = known.choose(&mut self.rng).expect("nonempty").clone();
            let l = self.branch(&parent);
            known.extend(Interval::new(&k, &l).expect("same root").elements().iter().cloned());
            pairs.push((k, l));
        }
        FiniteTree::new(&pairs).expect("every interval meets its predecessors")
    }

    pub fn tree(&mut self) -> FiniteTree {
        let root = self.point();
        self.tree_rooted(root)
    }

    /// One or two trees with distinct roots.
    pub fn desk_model(&mut self) -> DeskModel {
        let first = self.tree();
        let mut trees = vec![first];
        if self.chance(1, 2) {
            let root = self.other_point(trees[0].root());
            trees.push(self.tree_rooted(root));
        }
        DeskModel::new(self.space, trees).expect("distinct roots")
    }

    pub fn type_point(&mut self, model: &DeskModel) -> TypePoint {
        if self.chance(1, 6) {
            return TypePoint::InfiniteType { x: self.point() };
        }
        let tree = model.trees().choose(&mut self.rng).expect("nonempty model");
        let m = tree.elements().choose(&mut self.rng).expect("nonempty tree").clone();
        if self.chance(1, 5) {
            return TypePoint::realized(m);
        }
        let f = self.path_from(m.tip().clone());
        TypePoint::PathType { m, f }
    }

    /// A type related to `t`: same base element with a branched path, a
    /// different base element of the same tree, or unrelated.
    pub fn type_near(&mut self, model: &DeskModel, t: &TypePoint) -> TypePoint {
        match t {
            TypePoint::PathType { m, f } if self.chance(2, 3) => {
                if self.chance(1, 2) {
                    TypePoint::PathType { m: m.clone(), f: self.branch_path(f) }
                } else {
                    let tree = &model.trees()[model.locate(m).expect("valid type")];
                    let m2 = tree.elements().choose(&mut self.rng).expect("nonempty").clone();
                    let f2 = if m2.tip() == m.tip() && self.chance(1, 2) {
                        self.branch_path(f)
                    } else {
                        self.path_from(m2.tip().clone())
                    };
                    TypePoint::PathType { m: m2, f: f2 }
                }
            }
            _ => self.type_point(model),
        }
    }

    pub fn type_pair(&mut self) -> (DeskModel, TypePoint, TypePoint) {
        let model = self.desk_model();
        let t1 = self.type_point(&model);
        let t2 = self.type_near(&model, &t1);
        (model, t1, t2)
    }

    pub fn entourage(&mut self) -> EntourageIndex {
        match self.space {
            BaseSpace::Tail { .. } => EntourageIndex::Tail(self.rng.gen_range(0..=TAIL_SPREAD)),
            _ => EntourageIndex::Radius(self.positive()),
        }
    }

    fn value(&mut self) -> Rational {
        let den = self.denominator();
        Rational::new(self.rng.gen_range(0..=3 * den), den)
    }

    /// A random function with its least valid Lipschitz constant, plus slack
    /// half the time.
    pub fn function(&mut self) -> FunctionSpec {
        let slack = if self.chance(1, 2) { self.value() } else { Rational::zero() };
        match self.space {
            BaseSpace::FiniteDiscrete(fd) => {
                let n = fd.labels().len();
                let values: Vec<Rational> = (0..n).map(|_| self.value()).collect();
                let mut lip = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            lip = Rational::max_of(&lip, &(values[i].dist(&values[j]) / &fd.metric()[i][j]));
                        }
                    }
                }
                FunctionSpec::Table { values, lipschitz: lip + slack }
            }
            BaseSpace::Interval { length } => {
                let length = length.clone();
                let mut xs: Vec<Rational> = (0..self.rng.gen_range(0..4))
                    .filter_map(|_| self.grid_in(&Rational::zero(), &length))
                    .filter(|x| x.is_positive() && *x < length)
                    .collect();
                xs.push(Rational::zero());
                xs.push(length);
                xs.sort();
                xs.dedup();
                let knots: Vec<(Rational, Rational)> = xs.into_iter().map(|x| (x, self.value())).collect();
                let lip =
                    knots.windows(2).map(|w| (&w[1].1 - &w[0].1).abs() / (&w[1].0 - &w[0].0)).max().expect("two knots");
                FunctionSpec::PiecewiseLinear { knots, lipschitz: lip + slack }
            }
            BaseSpace::Tail { .. } => {
                let values: Vec<Rational> = (0..self.rng.gen_range(0..6)).map(|_| self.value()).collect();
                let tail = self.value();
                let all = || values.iter().chain(std::iter::once(&tail));
                let lip = all().max().expect("nonempty") - all().min().expect("nonempty");
                FunctionSpec::EventuallyConstant { values: values.clone(), tail: tail.clone(), lipschitz: lip + slack }
            }
        }
    }

    /// A random member of a nonempty region.
    pub fn point_in(&mut self, s: &Region) -> Option<BasePoint> {
        match s {
            Region::Finite(set) => {
                let v: Vec<usize> = set.iter().copied().collect();
                v.choose(&mut self.rng).map(|&i| BasePoint::Finite(i))
            }
            Region::Interval(spans) => {
                let span = spans.spans().choose(&mut self.rng)?.clone();
                if span.lo == span.hi {
                    return Some(BasePoint::Real(span.lo));
                }
                let m = self.rng.gen_range(2..=9);
                let k = self.rng.gen_range(1..m);
                let t = &span.lo + (&span.hi - &span.lo) * Rational::new(k, m);
                Some(BasePoint::Real(t))
            }
            Region::Tail(TailSet::Finite(set)) => {
                let v: Vec<u64> = set.iter().copied().collect();
                v.choose(&mut self.rng).map(|&k| BasePoint::Tail(TailPoint::Nat(k)))
            }
            Region::Tail(TailSet::Cofinite(excluded)) => {
                if self.chance(1, 4) {
                    return Some(BasePoint::Tail(TailPoint::Inf));
                }
                let top = excluded.iter().next_back().map_or(0, |m| m + 1) + TAIL_SPREAD;
                loop {
                    let k = self.rng.gen_range(0..=top);
                    if !excluded.contains(&k) {
                        return Some(BasePoint::Tail(TailPoint::Nat(k)));
                    }
                }
            }
        }
    }
}
