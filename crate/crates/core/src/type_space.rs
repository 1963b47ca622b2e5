//! Symbolic 1-types over desk models, their metric, an explicit realization
//! oracle, and the desk-scale check that 1-types over the empty set are
//! isometric to the base space.
//!
//! A desk model is a finite union of finite trees, one per finite-distance
//! component. Types over it are labels:
//!
//! * `PathType { m, f }` for an element `m` of the model and a path `f`
//!   starting at `tp_X(m)` (a realized type is the zero-length case), and
//! * `InfiniteType { x }` for a point of the base space, at infinite
//!   distance from the model.

use serde::Serialize;
use thiserror::Error;

use crate::base_space::{BasePoint, BaseSpace};
use crate::forest::{Breakpoint, ForestElement};
use crate::path_space::{path_meet, Path};
use crate::rational::Rational;
use crate::tree_geometry::FiniteTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("two trees share the component root {0}")]
    DuplicateComponentRoot(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeskModel {
    trees: Vec<FiniteTree>,
}

impl DeskModel {
    pub fn new(space: &BaseSpace, trees: Vec<FiniteTree>) -> Result<DeskModel, TypeError> {
        for (i, t) in trees.iter().enumerate() {
            if trees[..i].iter().any(|u| u.root() == t.root()) {
                return Err(TypeError::DuplicateComponentRoot(space.point_name(t.root())));
            }
        }
        Ok(DeskModel { trees })
    }

    pub fn trees(&self) -> &[FiniteTree] {
        &self.trees
    }

    /// Index of the tree containing `m`.
    pub fn locate(&self, m: &ForestElement) -> Option<usize> {
        self.trees.iter().position(|t| t.contains(m))
    }

    fn max_label(&self) -> u64 {
        self.trees.iter().filter_map(FiniteTree::max_label).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypePoint {
    /// `p_{m,f}`; realized types are the `|f| = 0` case.
    PathType { m: ForestElement, f: Path },
    /// `q_x`.
    InfiniteType { x: BasePoint },
}

impl TypePoint {
    pub fn realized(m: ForestElement) -> TypePoint {
        let f = Path::point(m.tip().clone());
        TypePoint::PathType { m, f }
    }

    pub fn is_realized(&self) -> bool {
        matches!(self, TypePoint::PathType { f, .. } if f.length().is_zero())
    }

    /// Checks root compatibility `f(0) = tp_X(m)` and that `m ∈ M`.
    pub fn validate(&self, space: &BaseSpace, model: &DeskModel) -> Result<(), TypeError> {
        match self {
            TypePoint::PathType { m, f } => {
                f.validate(space).map_err(|e| TypeError::InvalidType(e.to_string()))?;
                if f.start() != m.tip() {
                    return Err(TypeError::InvalidType("path does not start at tp_X(m)".into()));
                }
                if model.locate(m).is_none() {
                    return Err(TypeError::InvalidType("m is not an element of the model".into()));
                }
                Ok(())
            }
            TypePoint::InfiniteType { x } => space.check_point(x).map_err(|e| TypeError::InvalidType(e.to_string())),
        }
    }
}

/// The metric on `S_1(M)`, clipped at `diam X`:
///
/// * `m ≠ m'` in one tree: `|f| + d(m, m') + |f'|`;
/// * `m`, `m'` in different trees, or a path type against `q_x`: `diam X`;
/// * same `m`: `|f| + |f'| - 2 |f ⊓ f'|`;
/// * `q_x` against `q_{x'}`: `der(x, x')`.
pub fn type_distance(
    t1: &TypePoint,
    t2: &TypePoint,
    model: &DeskModel,
    space: &BaseSpace,
) -> Result<Rational, TypeError> {
    t1.validate(space, model)?;
    t2.validate(space, model)?;
    let diam = space.diameter();
    let raw = match (t1, t2) {
        (TypePoint::PathType { m, f }, TypePoint::PathType { m: m2, f: f2 }) => {
            if m == m2 {
                let shared = path_meet(f, f2).expect("same start point");
                f.length() + f2.length() - (shared.length() + shared.length())
            } else if model.locate(m) == model.locate(m2) {
                let d = m.distance(m2).finite().cloned().expect("one tree");
                f.length() + d + f2.length()
            } else {
                diam.clone()
            }
        }
        (TypePoint::InfiniteType { x }, TypePoint::InfiniteType { x: y }) => space.der(x, y),
        _ => diam.clone(),
    };
    Ok(Rational::min_of(&raw, &diam))
}

/// Distance between explicit realizations of two path types over the same
/// tree, built by grafting each path onto its base element on a fresh
/// branch. For a shared base element every branching point along the common
/// prefix `f ⊓ f'` is tried and the minimum is taken.
pub fn realization_oracle(
    t1: &TypePoint,
    t2: &TypePoint,
    model: &DeskModel,
    space: &BaseSpace,
) -> Result<Rational, TypeError> {
    t1.validate(space, model)?;
    t2.validate(space, model)?;
    let (TypePoint::PathType { m, f }, TypePoint::PathType { m: m2, f: f2 }) = (t1, t2) else {
        return Err(TypeError::InvalidType("oracle needs two path types".into()));
    };
    if model.locate(m) != model.locate(m2) {
        return Err(TypeError::InvalidType("oracle needs types over the same tree".into()));
    }
    let fresh1 = model.max_label() + 1;
    let fresh2 = fresh1 + 1;
    let graft = |base: &ForestElement, p: &Path, l| base.graft(p, l).expect("root checked");
    let a = graft(m, f, fresh1);
    let dist = |x: &ForestElement, y: &ForestElement| x.distance(y).finite().cloned().expect("one component");
    let best = if m != m2 {
        dist(&a, &graft(m2, f2, fresh2))
    } else {
        let shared = f.common_prefix(f2).expect("same start point");
        (0..shared)
            .map(|k| {
                let branch_at = a.prefix(m.breakpoint_count() + k);
                dist(&a, &graft(&branch_at, &f2.suffix_from(k), fresh2))
            })
            .min()
            .expect("at least the base breakpoint")
    };
    Ok(Rational::min_of(&best, &space.diameter()))
}

/// Elements `K`, `L` with `tp_X(K) = x`, `tp_X(L) = y` and
/// `d(K, L) = der(x, y)`: the point at `x` and a single straight step to `y`.
pub fn witness_pair(x: &BasePoint, y: &BasePoint, space: &BaseSpace) -> (ForestElement, ForestElement) {
    let k = ForestElement::point(x.clone());
    if x == y {
        return (k.clone(), k);
    }
    let l = ForestElement::new(
        space,
        vec![Breakpoint::new(Rational::zero(), x.clone(), Some(0)), Breakpoint::new(space.der(x, y), y.clone(), None)],
    )
    .expect("a step of length der(x, y) is 1-Lipschitz");
    (k, l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum S1Violation {
    /// The witness pair misses `der(x, y)`.
    Witness { x: String, y: String, d: Rational, der: Rational },
    /// A pair beats the lower bound `der(tp K, tp L) <= d_diam(K, L)`.
    LowerBound { index: usize, d_trunc: Rational, der: Rational },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct S1Report {
    pub witness_pairs: usize,
    pub lower_bound_pairs: usize,
    pub violations: Vec<S1Violation>,
}

/// Desk-scale isometry check between 1-types over the empty set and `X`:
/// every witness pair realizes `d_diam(K, L) = der(x, y)`, and no sampled
/// pair of elements has `d_diam(K', L') < der(tp K', tp L')`.
pub fn s1_empty_check(
    space: &BaseSpace,
    points: &[(BasePoint, BasePoint)],
    elements: &[(ForestElement, ForestElement)],
) -> S1Report {
    let diam = space.diameter();
    let mut report = S1Report::default();
    for (x, y) in points {
        report.witness_pairs += 1;
        let (k, l) = witness_pair(x, y, space);
        let der = space.der(x, y);
        let d = k.distance_trunc(&l, &diam);
        let tips_ok = k.tip() == x && l.tip() == y;
        if d != der || !tips_ok || Rational::min_of(&der, &diam) != der {
            report.violations.push(S1Violation::Witness { x: space.point_name(x), y: space.point_name(y), d, der });
        }
    }
    for (i, (k, l)) in elements.iter().enumerate() {
        report.lower_bound_pairs += 1;
        let der = space.der(k.tip(), l.tip());
        let d_trunc = k.distance_trunc(l, &diam);
        if d_trunc < der {
            report.violations.push(S1Violation::LowerBound { index: i, d_trunc, der });
        }
    }
    report
}
