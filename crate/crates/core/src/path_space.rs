//! The path space `P(X)`: finite-domain 1-Lipschitz partial maps into the
//! base space with 0 in the domain, its entourage uniformity, finite checkers
//! for the pointed path-metric axioms, and the parallel-paths construction.

use serde::Serialize;
use thiserror::Error;

use crate::base_space::{BasePoint, BaseSpace, EntourageIndex, SpaceError};
use crate::rational::Rational;
use crate::region::Region;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("a path needs at least one breakpoint")]
    Empty,
    #[error("the first breakpoint must be 0")]
    MissingZeroBreakpoint,
    #[error("breakpoints must increase strictly (at index {0})")]
    NotIncreasing(usize),
    #[error("1-Lipschitz condition fails between breakpoints {0} and {next}", next = .0 + 1)]
    LipschitzViolation(usize),
    #[error("value at breakpoint {0} is not a point of the space")]
    ForeignPoint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("entourage index does not match the space")]
    EntourageMismatch,
    #[error("point {0} lies outside the neighborhood O")]
    PointOutsideO(String),
    #[error("metric axiom fails: {0}")]
    NotAMetric(String),
}

/// A finite-domain path `f` with `0 ∈ dom f`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    times: Vec<Rational>,
    values: Vec<BasePoint>,
}

impl Path {
    pub fn new(space: &BaseSpace, points: Vec<(Rational, BasePoint)>) -> Result<Path, ShapeError> {
        let (times, values) = points.into_iter().unzip();
        let p = Path { times, values };
        p.validate(space)?;
        Ok(p)
    }

    pub fn point(x: BasePoint) -> Path {
        Path { times: vec![Rational::zero()], values: vec![x] }
    }

    pub(crate) fn from_parts(times: Vec<Rational>, values: Vec<BasePoint>) -> Path {
        Path { times, values }
    }

    pub fn validate(&self, space: &BaseSpace) -> Result<(), ShapeError> {
        if self.times.is_empty() || self.times.len() != self.values.len() {
            return Err(ShapeError::Empty);
        }
        if !self.times[0].is_zero() {
            return Err(ShapeError::MissingZeroBreakpoint);
        }
        if let Some(i) = self.values.iter().position(|x| !space.contains_point(x)) {
            return Err(ShapeError::ForeignPoint(i));
        }
        for i in 0..self.times.len() - 1 {
            let gap = &self.times[i + 1] - &self.times[i];
            if !gap.is_positive() {
                return Err(ShapeError::NotIncreasing(i + 1));
            }
            // Consecutive checks suffice by the triangle inequality.
            if space.der(&self.values[i], &self.values[i + 1]) > gap {
                return Err(ShapeError::LipschitzViolation(i));
            }
        }
        Ok(())
    }

    pub fn times(&self) -> &[Rational] {
        &self.times
    }

    pub fn values(&self) -> &[BasePoint] {
        &self.values
    }

    /// `|f| = sup dom f`.
    pub fn length(&self) -> &Rational {
        self.times.last().expect("nonempty domain")
    }

    pub fn start(&self) -> &BasePoint {
        &self.values[0]
    }

    pub fn end(&self) -> &BasePoint {
        self.values.last().expect("nonempty domain")
    }

    pub(crate) fn prefix(&self, k: usize) -> Path {
        Path { times: self.times[..k].to_vec(), values: self.values[..k].to_vec() }
    }

    /// `f↾[0, r]`.
    pub fn restrict(&self, r: &Rational) -> Path {
        let k = self.times.partition_point(|t| t <= r).max(1);
        self.prefix(k)
    }

    /// The tail of `f` from breakpoint `k`, shifted back to start at 0.
    pub fn suffix_from(&self, k: usize) -> Path {
        let t0 = self.times[k].clone();
        Path { times: self.times[k..].iter().map(|t| t - &t0).collect(), values: self.values[k..].to_vec() }
    }

    /// Number of leading breakpoints on which `f` and `g` agree.
    pub fn common_prefix(&self, other: &Path) -> Option<usize> {
        if self.values[0] != other.values[0] {
            return None;
        }
        let limit = self.times.len().min(other.times.len());
        let mut k = 1;
        while k < limit && self.times[k] == other.times[k] && self.values[k] == other.values[k] {
            k += 1;
        }
        Some(k)
    }
}

/// `f ⊓ f'`, the longest common initial segment of two paths.
pub fn path_meet(f: &Path, g: &Path) -> Option<Path> {
    f.common_prefix(g).map(|k| f.prefix(k))
}

/// The basic entourage `U_{V, e}` of `P(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEntourage {
    pub index: EntourageIndex,
    pub epsilon: Rational,
}

impl PathEntourage {
    pub fn new(index: EntourageIndex, epsilon: Rational) -> Result<Self, PathError> {
        if !epsilon.is_positive() {
            return Err(PathError::NonPositiveEpsilon);
        }
        Ok(PathEntourage { index, epsilon })
    }
}

/// `(f, g) ∈ U_{V, e}`: every breakpoint of either path has a `V`-close
/// breakpoint of the other at time distance `< e`.
pub fn entourage_test(space: &BaseSpace, f: &Path, g: &Path, u: &PathEntourage) -> bool {
    let covered = |a: &Path, b: &Path, a_first: bool| {
        a.times.iter().zip(&a.values).all(|(r, x)| {
            b.times.iter().zip(&b.values).any(|(s, y)| {
                r.dist(s) < u.epsilon
                    && if a_first {
                        space.entourage_member(&u.index, x, y)
                    } else {
                        space.entourage_member(&u.index, y, x)
                    }
            })
        })
    };
    covered(f, g, true) && covered(g, f, false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawViolation {
    /// `U_{V∩W, min(e, δ)} ⊄ U_{V, e} ∩ U_{W, δ}` at this pair.
    Intersection { pair: usize },
    /// `U_{W, e/2}^{∘2} ⊄ U_{V, e}` at this triple.
    Composition { triple: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    /// How many sampled pairs/triples actually satisfied the premise.
    pub premises_met: usize,
    pub violations: Vec<LawViolation>,
}

/// Checks the two entourage laws that make `{U_{V,e}}` a uniformity basis:
/// the intersection law for `(u, u2)` on every pair, and the composition law
/// for `u` (with `W` from [`BaseSpace::shrink`], so `W ∘ W ⊆ V`) on every
/// triple.
pub fn entourage_laws_check(
    space: &BaseSpace,
    u: &PathEntourage,
    u2: &PathEntourage,
    pairs: &[(Path, Path)],
    triples: &[(Path, Path, Path)],
) -> LawReport {
    let mut report = LawReport::default();
    let meet =
        PathEntourage { index: u.index.intersect(&u2.index), epsilon: Rational::min_of(&u.epsilon, &u2.epsilon) };
    for (i, (f, g)) in pairs.iter().enumerate() {
        report.pairs_checked += 1;
        if entourage_test(space, f, g, &meet) {
            report.premises_met += 1;
            if !(entourage_test(space, f, g, u) && entourage_test(space, f, g, u2)) {
                report.violations.push(LawViolation::Intersection { pair: i });
            }
        }
    }
    let (w, _) = space.shrink(&u.index, &u.epsilon);
    let half = PathEntourage { index: w, epsilon: &u.epsilon / Rational::from_int(2) };
    for (i, (f, g, h)) in triples.iter().enumerate() {
        report.triples_checked += 1;
        if entourage_test(space, f, g, &half) && entourage_test(space, g, h, &half) {
            report.premises_met += 1;
            if !entourage_test(space, f, h, u) {
                report.violations.push(LawViolation::Composition { triple: i });
            }
        }
    }
    report
}

/// A finite metric space with a distinguished basepoint `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedFiniteMetric {
    labels: Vec<String>,
    metric: Vec<Vec<Rational>>,
    basepoint: usize,
}

impl PointedFiniteMetric {
    pub fn new(labels: Vec<String>, metric: Vec<Vec<Rational>>, basepoint: usize) -> Result<Self, PathError> {
        let n = labels.len();
        if n == 0 || basepoint >= n || metric.len() != n || metric.iter().any(|r| r.len() != n) {
            return Err(PathError::NotAMetric("malformed matrix or basepoint".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let dij = &metric[i][j];
                if (i == j) != dij.is_zero() || dij.is_negative() || *dij != metric[j][i] {
                    return Err(PathError::NotAMetric(format!("at ({}, {})", labels[i], labels[j])));
                }
                for k in 0..n {
                    if *dij > &metric[i][k] + &metric[k][j] {
                        return Err(PathError::NotAMetric(format!(
                            "triangle at ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(PointedFiniteMetric { labels, metric, basepoint })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn metric(&self) -> &[Vec<Rational>] {
        &self.metric
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }
}

/// Whether `p` satisfies the axioms identifying models with paths of length
/// at most `r`: all distances `<= r`; every triple has
/// `d_r(x,y) + d_r(x,z) + d_r(y,z) = 2 max{...}`; and the basepoint is an
/// endpoint, `min{d(c,x), d(c,y)} + d(x,y) = max{d(c,x), d(c,y)}`.
pub fn check_path_axioms(p: &PointedFiniteMetric, r: &Rational) -> bool {
    let n = p.labels.len();
    let d = &p.metric;
    let dr = |i: usize, j: usize| Rational::min_of(&d[i][j], r);
    let two = Rational::from_int(2);
    if d.iter().flatten().any(|x| x > r) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (dr(i, j), dr(i, k), dr(j, k));
                let max = Rational::max_of(&Rational::max_of(&a, &b), &c);
                if a + b + c != &two * &max {
                    return false;
                }
            }
        }
    }
    let c = p.basepoint;
    for i in 0..n {
        for j in i + 1..n {
            let (ci, cj) = (&d[c][i], &d[c][j]);
            if Rational::min_of(ci, cj) + &d[i][j] != Rational::max_of(ci, cj) {
                return false;
            }
        }
    }
    true
}

/// The output of the parallel-paths construction for `(f, V, e)`: an open
/// neighborhood `O ∋ f(0)` and a builder producing, for every `x ∈ O`, a
/// path `g` with `g(0) = x`, `(f, g) ∈ U_{V, e}` and `|g| < |f| + e`.
#[derive(Clone, Debug)]
pub struct ParallelPaths {
    source: Path,
    entourage: PathEntourage,
    shrunk: EntourageIndex,
    delta: Rational,
    gamma: Rational,
    steps: Vec<Rational>,
    /// `E_0, ..., E_n`; `E_0` is the neighborhood `O`.
    targets: Vec<Region>,
}

impl ParallelPaths {
    /// The neighborhood `O`.
    pub fn region(&self) -> &Region {
        &self.targets[0]
    }

    /// The nested targets `E_0 ⊇ ... `; `E_i` is an open neighborhood of `f(r_i)`.
    pub fn targets(&self) -> &[Region] {
        &self.targets
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn shrunk_index(&self) -> &EntourageIndex {
        &self.shrunk
    }

    /// `d(i) = der(f(r_i), f(r_{i+1}))`.
    pub fn steps(&self) -> &[Rational] {
        &self.steps
    }

    pub fn source(&self) -> &Path {
        &self.source
    }

    pub fn entourage(&self) -> &PathEntourage {
        &self.entourage
    }

    /// The parallel path starting at `x`: domain `γ · dom f`, values chosen
    /// through the targets with `γ⁻¹ d(i) <= der(x_i, x_{i+1}) <= γ d(i)`.
    pub fn build(&self, space: &BaseSpace, x: &BasePoint) -> Result<Path, PathError> {
        if !space.contains_point(x) || !space.member(x, self.region()) {
            return Err(PathError::PointOutsideO(space.point_name(x)));
        }
        let mut values = Vec::with_capacity(self.targets.len());
        values.push(x.clone());
        for (i, d) in self.steps.iter().enumerate() {
            let prev = &values[i];
            let next = if d.is_zero() {
                prev.clone()
            } else {
                space.pick_within(&self.targets[i + 1], prev, &(&self.gamma * d))?
            };
            values.push(next);
        }
        let times = self.source.times().iter().map(|r| &self.gamma * r).collect();
        Ok(Path::from_parts(times, values))
    }
}

/// Runs the parallel-paths construction on the finite domain of `f`.
pub fn parallel_path(
    space: &BaseSpace,
    f: &Path,
    v: &EntourageIndex,
    e: &Rational,
) -> Result<ParallelPaths, PathError> {
    if !e.is_positive() {
        return Err(PathError::NonPositiveEpsilon);
    }
    if !space.entourage_matches(v) {
        return Err(PathError::EntourageMismatch);
    }
    f.validate(space)?;
    let (w, delta) = space.shrink(v, e);
    let n = f.times().len() - 1;
    let one = Rational::one();
    // γ > 1 with (γ - 1)|f| < δ/2.
    let gamma = &one + Rational::min_of(&delta, e) / (Rational::from_int(2) * (f.length() + &one));
    let gamma_inv = gamma.recip();
    let steps: Vec<Rational> = (0..n).map(|i| space.der(&f.values()[i], &f.values()[i + 1])).collect();

    // B_i for i < n and C_i for i > 0; whole space on zero steps and at the ends.
    let mut b = vec![space.whole(); n + 1];
    let mut c = vec![space.whole(); n + 1];
    for i in 0..n {
        if steps[i].is_positive() {
            let (bi, ci) = space.separate(&f.values()[i], &f.values()[i + 1], &(&gamma_inv * &steps[i]))?;
            b[i] = bi;
            c[i + 1] = ci;
        }
    }
    let d_regions: Vec<Region> =
        (0..=n).map(|i| space.entourage_ball(&w, &f.values()[i]).intersect(&b[i]).intersect(&c[i])).collect();

    let mut targets = d_regions.clone();
    for i in (0..n).rev() {
        targets[i] = if steps[i].is_zero() {
            d_regions[i].intersect(&targets[i + 1])
        } else {
            d_regions[i].intersect(&space.fatten(&targets[i + 1], &(&gamma * &steps[i])))
        };
    }
    debug_assert!(space.member(f.start(), &targets[0]));
    Ok(ParallelPaths {
        source: f.clone(),
        entourage: PathEntourage { index: v.clone(), epsilon: e.clone() },
        shrunk: w,
        delta,
        gamma,
        steps,
        targets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::q;

    fn real(n: i64, d: i64) -> BasePoint {
        BasePoint::Real(q(n, d))
    }

    fn ipath(pts: &[(i64, i64, i64, i64)]) -> Path {
        Path::new(&interval10(), pts.iter().map(|&(a, b, c, d)| (q(a, b), real(c, d))).collect()).unwrap()
    }

    #[test]
    fn strip_drops_labels() {
        let p = k2().path().clone();
        assert_eq!(p.values(), &[A, B, C]);
        assert_eq!(pt_a().path(), &Path::point(A));
        assert_eq!(k3().path().values(), &[A, B]);
    }

    #[test]
    fn entourage_test_examples() {
        let s = interval10();
        let f = ipath(&[(0, 1, 3, 1), (2, 1, 5, 1)]);
        let g = ipath(&[(0, 1, 16, 5), (2, 1, 26, 5)]);
        let u = PathEntourage::new(EntourageIndex::Radius(q(1, 2)), q(1, 4)).unwrap();
        assert!(entourage_test(&s, &f, &f, &u));
        assert!(entourage_test(&s, &f, &g, &u));
        assert!(entourage_test(&s, &g, &f, &u));
        let g2 = ipath(&[(0, 1, 3, 1), (4, 1, 5, 1)]);
        let u1 = PathEntourage::new(EntourageIndex::Radius(q(1, 2)), q(1, 1)).unwrap();
        assert!(!entourage_test(&s, &f, &g2, &u1));
    }

    #[test]
    fn path_axioms_examples() {
        let r = Rational::from_int;
        let line = PointedFiniteMetric::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![vec![r(0), r(1), r(2)], vec![r(1), r(0), r(1)], vec![r(2), r(1), r(0)]],
            0,
        )
        .unwrap();
        assert!(check_path_axioms(&line, &r(5)));
        // Basepoint in the middle is not an endpoint.
        let mid = PointedFiniteMetric::new(line.labels.clone(), line.metric.clone(), 1).unwrap();
        assert!(!check_path_axioms(&mid, &r(5)));
        assert!(!check_path_axioms(&line, &r(1)));
        let tripod = PointedFiniteMetric::new(
            vec!["a".into(), "b".into(), "c".into(), "o".into()],
            vec![
                vec![r(0), r(2), r(2), r(1)],
                vec![r(2), r(0), r(2), r(1)],
                vec![r(2), r(2), r(0), r(1)],
                vec![r(1), r(1), r(1), r(0)],
            ],
            0,
        )
        .unwrap();
        assert!(!check_path_axioms(&tripod, &r(5)));
        let single = PointedFiniteMetric::new(vec!["p".into()], vec![vec![r(0)]], 0).unwrap();
        assert!(check_path_axioms(&single, &r(1)));
    }

    #[test]
    fn path_meet_examples() {
        let x = x3();
        let p = |pts: Vec<(i64, BasePoint)>| {
            Path::new(&x, pts.into_iter().map(|(t, v)| (Rational::from_int(t), v)).collect()).unwrap()
        };
        let ab = p(vec![(0, A), (1, B)]);
        let abc = p(vec![(0, A), (1, B), (2, C)]);
        let ac = p(vec![(0, A), (2, C)]);
        assert_eq!(path_meet(&ab, &abc), Some(ab.clone()));
        assert_eq!(path_meet(&ab, &ac), Some(Path::point(A)));
        assert_eq!(path_meet(&ab, &ab), Some(ab.clone()));
        assert_eq!(path_meet(&ab, &Path::point(B)), None);
    }

    #[test]
    fn parallel_path_point_path() {
        let s = interval10();
        let f = Path::point(real(4, 1));
        let v = EntourageIndex::Radius(q(1, 1));
        let pp = parallel_path(&s, &f, &v, &q(1, 2)).unwrap();
        assert_eq!(pp.region(), &s.entourage_ball(pp.shrunk_index(), &real(4, 1)));
        let g = pp.build(&s, &real(17, 4)).unwrap();
        assert_eq!(g, Path::point(real(17, 4)));
        assert!(entourage_test(&s, &f, &g, pp.entourage()));
    }

    #[test]
    fn parallel_path_on_x3() {
        let x = x3();
        let f = k1().path().clone();
        let v = EntourageIndex::Radius(q(1, 2));
        let pp = parallel_path(&x, &f, &v, &q(1, 2)).unwrap();
        assert_eq!(pp.region(), &Region::Finite([0].into_iter().collect()));
        let g = pp.build(&x, &A).unwrap();
        assert_eq!(g.values(), f.values());
        assert_eq!(g.times()[1], pp.gamma().clone());
        g.validate(&x).unwrap();
        assert!(entourage_test(&x, &f, &g, pp.entourage()));
        assert!(matches!(pp.build(&x, &B), Err(PathError::PointOutsideO(_))));
    }

    #[test]
    fn parallel_path_on_interval() {
        let s = interval10();
        let f = ipath(&[(0, 1, 3, 1), (2, 1, 5, 1)]);
        let v = EntourageIndex::Radius(q(1, 2));
        let e = q(1, 1);
        let pp = parallel_path(&s, &f, &v, &e).unwrap();
        assert!(s.is_open(pp.region()));
        assert!(s.member(&real(3, 1), pp.region()));
        // The separating ball around 3 has radius (2 - 2/γ)/3, far below 1/4.
        assert!(!s.member(&real(13, 4), pp.region()));
        let x = real(601, 200);
        assert!(s.member(&x, pp.region()));
        let g = pp.build(&s, &x).unwrap();
        g.validate(&s).unwrap();
        assert_eq!(g.start(), &x);
        assert!(entourage_test(&s, &f, &g, pp.entourage()));
        assert!(*g.length() < q(3, 1));
        let d0 = &pp.steps()[0];
        let step = s.der(&g.values()[0], &g.values()[1]);
        assert!(&pp.gamma().recip() * d0 <= step && step <= pp.gamma() * d0);
    }

    #[test]
    fn parallel_path_zero_steps_and_tail() {
        let t = tail();
        let nat = |k| BasePoint::Tail(crate::base_space::TailPoint::Nat(k));
        let inf = BasePoint::Tail(crate::base_space::TailPoint::Inf);
        let f = Path::new(
            &t,
            vec![(q(0, 1), inf.clone()), (q(1, 2), inf.clone()), (q(3, 2), nat(2)), (q(5, 2), inf.clone())],
        )
        .unwrap();
        let pp = parallel_path(&t, &f, &EntourageIndex::Tail(4), &q(1, 3)).unwrap();
        let g = pp.build(&t, &nat(9)).unwrap();
        g.validate(&t).unwrap();
        assert!(entourage_test(&t, &f, &g, pp.entourage()));
        assert_eq!(g.values()[1], nat(9));
    }
}
