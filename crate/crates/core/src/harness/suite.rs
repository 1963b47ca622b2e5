//! Property suites. Each case draws its own generator from
//! `(seed, case index)`, so reports are deterministic however cases are
//! scheduled.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::gen::{Bounds, Gen};
use super::json::{element_to_json, model_to_json, path_to_json, point_to_json, type_to_json};
use super::par::{map_cases, Execution};
use crate::base_space::{BasePoint, BaseSpace, SpaceKind};
use crate::forest::{family_diameter, meet_family, ForestElement, ForestError};
use crate::path_space::{check_path_axioms, entourage_laws_check, entourage_test, parallel_path, PathEntourage};
use crate::rational::{Extended, Rational};
use crate::tree_geometry::{
    big_distance_decompose, ccl, delta_predicate, nearest_by_enumeration, BigDistance, Interval, TreeError,
};
use crate::type_space::{realization_oracle, s1_empty_check, type_distance, TypePoint};

pub const SUITES: [&str; 11] = [
    "metric-axioms",
    "meet-bounds",
    "interval-delta",
    "projection-unique",
    "tree-containment",
    "big-distance",
    "parallel-paths",
    "entourage-laws",
    "path-axioms",
    "type-metric",
    "main-theorem",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("a suite needs at least one case")]
    NoCases,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub bounds: Bounds,
}

impl SuiteConfig {
    pub fn new(suite: &str, seed: u64, cases: usize) -> Self {
        SuiteConfig { suite: suite.to_string(), seed, cases, bounds: Bounds::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub case: usize,
    pub check: &'static str,
    pub counterexample: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub space: SpaceKind,
    /// Individual assertions evaluated across all cases.
    pub checks: u64,
    pub violations: Vec<Violation>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// The report with the wall time zeroed, for determinism comparisons.
    pub fn timeless(&self) -> RunReport {
        RunReport { wall_time_ms: 0, ..self.clone() }
    }
}

struct Case<'a> {
    g: Gen<'a>,
    index: usize,
    checks: u64,
    violations: Vec<Violation>,
}

impl<'a> Case<'a> {
    fn space(&self) -> &'a BaseSpace {
        self.g.space
    }

    fn check(&mut self, check: &'static str, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation { case: self.index, check, counterexample: counterexample() });
        }
    }
}

fn el(space: &BaseSpace, k: &ForestElement) -> Value {
    element_to_json(space, k)
}

fn els(space: &BaseSpace, ks: &[&ForestElement]) -> Value {
    Value::Array(ks.iter().map(|k| el(space, k)).collect())
}

type CaseFn = fn(&mut Case);

fn case_fn(suite: &str) -> Option<CaseFn> {
    Some(match suite {
        "metric-axioms" => metric_axioms,
        "meet-bounds" => meet_bounds,
        "interval-delta" => interval_delta,
        "projection-unique" => projection_unique,
        "tree-containment" => tree_containment,
        "big-distance" => big_distance,
        "parallel-paths" => parallel_paths,
        "entourage-laws" => entourage_laws,
        "path-axioms" => path_axioms,
        "type-metric" => type_metric,
        "main-theorem" => main_theorem,
        _ => return None,
    })
}

pub fn run_suite(space: &BaseSpace, cfg: &SuiteConfig) -> Result<RunReport, SuiteError> {
    run_suite_with(space, cfg, Execution::default())
}

pub fn run_suite_with(space: &BaseSpace, cfg: &SuiteConfig, exec: Execution) -> Result<RunReport, SuiteError> {
    let f = case_fn(&cfg.suite).ok_or_else(|| SuiteError::UnknownSuite(cfg.suite.clone()))?;
    if cfg.cases == 0 {
        return Err(SuiteError::NoCases);
    }
    let start = Instant::now();
    let results = map_cases(cfg.cases, exec, |index| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64);
        let mut case = Case { g: Gen::new(space, cfg.bounds, rng), index, checks: 0, violations: Vec::new() };
        f(&mut case);
        (case.checks, case.violations)
    });
    let mut report = RunReport {
        suite: cfg.suite.clone(),
        seed: cfg.seed,
        cases: cfg.cases,
        space: space.kind(),
        checks: 0,
        violations: Vec::new(),
        wall_time_ms: 0,
    };
    for (checks, violations) in results {
        report.checks += checks;
        report.violations.extend(violations);
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn finite_d(a: &ForestElement, b: &ForestElement) -> Rational {
    a.distance(b).finite().cloned().expect("same component")
}

fn metric_axioms(c: &mut Case) {
    let sp = c.space();
    let mut fam = c.g.family_of(3);
    if c.g.chance(1, 5) {
        fam[2] = c.g.element();
    }
    let diam = c.space().diameter();
    let s = if c.g.chance(1, 2) { diam.clone() } else { c.g.positive() };
    let dm: Vec<Vec<Extended>> = fam.iter().map(|a| fam.iter().map(|b| a.distance(b)).collect()).collect();
    let dsm: Vec<Vec<Rational>> = dm.iter().map(|row| row.iter().map(|x| x.truncate(&s)).collect()).collect();
    let d = |i: usize, j: usize| &dm[i][j];
    let ds = |i: usize, j: usize| &dsm[i][j];
    for i in 0..3 {
        c.check("identity", d(i, i).is_zero() && ds(i, i).is_zero(), || el(sp, &fam[i]));
        for j in 0..3 {
            let pair = || els(sp, &[&fam[i], &fam[j]]);
            c.check("separation", d(i, j).is_zero() == (fam[i] == fam[j]), pair);
            c.check("symmetry", d(i, j) == d(j, i), pair);
            c.check("truncated symmetry", ds(i, j) == ds(j, i), pair);
            for k in 0..3 {
                let triple = || json!({ "triple": els(sp, &[&fam[i], &fam[j], &fam[k]]), "s": s });
                c.check("triangle", *d(i, k) <= d(i, j) + d(j, k), triple);
                c.check("truncated triangle", *ds(i, k) <= ds(i, j) + ds(j, k), triple);
            }
        }
    }
    let (a, b) = (&fam[0], &fam[1]);
    if let Some(dab) = a.distance(b).finite() {
        c.check("length bound", a.length().dist(b.length()) <= *dab, || els(sp, &[a, b]));
    }
    let cut =
        if c.g.chance(1, 2) { a.times()[c.g.rng.gen_range(0..a.breakpoint_count())].clone() } else { c.g.positive() };
    let p = a.restrict(&cut);
    c.check(
        "distance along a prefix",
        p.is_prefix_of(a) && a.distance(&p) == Extended::Finite(a.length() - p.length()),
        || json!({ "element": el(sp, a), "r": cut }),
    );
    let f = c.g.function();
    let spec = format!("{f:?}");
    let dd = a.distance_trunc(b, &diam);
    let ua = a.eval_predicate(c.space(), &f);
    let ub = b.eval_predicate(c.space(), &f);
    c.check(
        "predicate transfer",
        ua.dist(&ub) <= f.lipschitz() * &dd,
        || json!({ "pair": els(sp, &[a, b]), "function": spec }),
    );
    let der = c.space().der(a.tip(), b.tip());
    c.check("tip lower bound", der <= dd, || els(sp, &[a, b]));
}

fn meet_bounds(c: &mut Case) {
    let sp = c.space();
    let fam = c.g.family();
    let m = meet_family(&fam).expect("one component");
    let diam = family_diameter(&fam).finite().cloned().expect("one component");
    let longest = fam.iter().map(|k| k.length()).max().expect("nonempty").clone();
    let ks: Vec<&ForestElement> = fam.iter().collect();
    c.check("common initial segment bound", *m.length() >= &longest - &diam, || els(sp, &ks));
    for k in &fam {
        c.check("meet is a prefix", m.is_prefix_of(k), || els(sp, &ks));
        c.check("meet within the diameter", finite_d(k, &m) <= diam, || els(sp, &ks));
    }
    let iterated = fam[1..].iter().fold(fam[0].clone(), |acc, k| acc.meet(k).expect("one component"));
    c.check("iterated pairwise meet", iterated == m, || els(sp, &ks));
    if m.breakpoint_count() < fam[0].breakpoint_count() {
        let longer = fam[0].prefix(m.breakpoint_count() + 1);
        c.check("meet is longest", !fam.iter().all(|k| longer.is_prefix_of(k)), || els(sp, &ks));
    }
    let stranger = {
        let root = c.g.other_point(fam[0].root());
        c.g.element_from(root)
    };
    let mixed: Vec<ForestElement> = fam.iter().cloned().chain(std::iter::once(stranger)).collect();
    c.check("mixed components rejected", meet_family(&mixed) == Err(ForestError::MixedComponents), || {
        els(sp, &mixed.iter().collect::<Vec<_>>())
    });

    // Modulus of d_r with respect to d_diam.
    let diam_x = c.space().diameter();
    let pick = |c: &mut Case| fam[c.g.rng.gen_range(0..fam.len())].clone();
    let (k, l, k2, l2) = (pick(c), pick(c), pick(c), pick(c));
    let r = c.g.positive() + c.g.positive();
    let lhs = k.distance_trunc(&l, &r).dist(&k2.distance_trunc(&l2, &r));
    let moved = Rational::max_of(&k.distance_trunc(&k2, &diam_x), &l.distance_trunc(&l2, &diam_x));
    let modulus = Rational::from_int(2) + &r / &diam_x;
    c.check(
        "truncated distance modulus",
        lhs <= modulus * moved,
        || json!({ "quadruple": els(sp, &[&k, &l, &k2, &l2]), "r": r }),
    );
}

fn interval_delta(c: &mut Case) {
    let sp = c.space();
    let cfg = c.g.interval_config();
    let (k, k2, r, a) = (&cfg.k, &cfg.k2, &cfg.r, &cfg.a);
    let ce = || json!({ "k": el(sp, k), "k2": el(sp, k2), "r": r, "a": el(sp, a) });
    let iv = Interval::new(k, k2).expect("one component");
    let delta = delta_predicate(k, k2, r, a).expect("d(K, K') <= r");
    let dist = iv.distance_to(a);
    let (enumerated, _) = nearest_by_enumeration(a, iv.elements());
    c.check("closed form distance equals enumeration", dist == enumerated, ce);
    c.check("delta vanishes exactly on the interval", delta.is_zero() == iv.contains(a), ce);
    c.check("delta is min(2 dist, r)", delta == enumerated.double().truncate(r), ce);
    let member = iv.elements().iter().any(|e| e == a);
    c.check("structural membership", member == iv.contains(a), ce);

    // Shape of the enumerated interval.
    let shared = k.common_prefix(k2).expect("one component");
    let expected = k.breakpoint_count() + k2.breakpoint_count() + 1 - 2 * shared;
    c.check("element count", iv.elements().len() == expected, ce);
    let m = iv.meet();
    let len = iv.length().clone();
    for (e, pos) in iv.elements().iter().zip(iv.positions()) {
        let on_arc = m.is_prefix_of(e) && (e.is_prefix_of(k) || e.is_prefix_of(k2));
        let isometric = finite_d(k, e) == *pos && finite_d(e, k2) == &len - pos;
        c.check("arc position isometry", on_arc && isometric, ce);
    }
    let as_path = iv.as_path(k).expect("endpoint");
    c.check("interval path is 1-Lipschitz", as_path.validate(c.space()).is_ok(), ce);
}

fn projection_unique(c: &mut Case) {
    let sp = c.space();
    let cfg = c.g.interval_config();
    let (k, k2, a) = (&cfg.k, &cfg.k2, &cfg.a);
    let ce = || json!({ "k": el(sp, k), "k2": el(sp, k2), "a": el(sp, a) });
    let iv = Interval::new(k, k2).expect("one component");
    let (best, argmin) = nearest_by_enumeration(a, iv.elements());
    match iv.project(a) {
        Ok(p) => {
            c.check("interval argmin is the closed form", argmin == [&p], ce);
            c.check("interval projection distance", a.distance(&p) == best, ce);
            let toward_a = Interval::new(k, a).expect("same component");
            c.check("projection lies in [K, A]", toward_a.contains(&p), ce);
        }
        Err(e) => c.check(
            "foreign element has no projection",
            e == TreeError::DifferentComponents && !best.is_finite() && !a.same_component(k),
            ce,
        ),
    }

    let tree = c.g.tree();
    let anchor = tree.elements()[c.g.rng.gen_range(0..tree.elements().len())].clone();
    let b = c.g.branch(&anchor);
    let tce = || json!({ "tree": tree.generators().iter().map(|(x, y)| els(sp, &[x, y])).collect::<Vec<_>>(), "a": el(sp, &b) });
    let (best, argmin) = nearest_by_enumeration(&b, tree.elements());
    match tree.project(&b) {
        Ok((p, d)) => {
            c.check("tree argmin is the closed form", argmin == [&p], tce);
            c.check("tree projection distance", Extended::Finite(d) == best, tce);
        }
        Err(_) => c.check("tree projection is unique", false, tce),
    }
}

fn tree_containment(c: &mut Case) {
    let sp = c.space();
    let tree = c.g.tree();
    let members = tree.elements();
    let gens = || json!(tree.generators().iter().map(|(x, y)| els(sp, &[x, y])).collect::<Vec<_>>());
    let pick = |c: &mut Case| members[c.g.rng.gen_range(0..members.len())].clone();
    let (k, l) = (pick(c), pick(c));
    let iv = Interval::new(&k, &l).expect("one tree");
    c.check(
        "interval inside the tree",
        iv.elements().iter().all(|e| tree.contains(e)),
        || json!({ "tree": gens(), "k": el(sp, &k), "l": el(sp, &l) }),
    );
    let m = k.meet(&l).expect("one tree");
    c.check("tree is meet-closed", tree.contains(&m), || json!({ "tree": gens(), "k": el(sp, &k), "l": el(sp, &l) }));

    let fam = c.g.family_of(3);
    let (e, f, g) = (&fam[0], &fam[1], &fam[2]);
    let eg = Interval::new(e, g).expect("one family");
    let ef = Interval::new(e, f).expect("one family");
    let fg = Interval::new(f, g).expect("one family");
    c.check("three-point containment", eg.elements().iter().all(|x| ef.contains(x) || fg.contains(x)), || {
        els(sp, &[e, f, g])
    });

    let n = c.g.rng.gen_range(1..=4);
    let tuple: Vec<ForestElement> = (0..n).map(|_| pick(c)).collect();
    let hull = ccl(&tuple).expect("one tree");
    let tuple_json = || els(sp, &tuple.iter().collect::<Vec<_>>());
    c.check("hull contains the tuple", tuple.iter().all(|a| hull.contains(a)), tuple_json);
    c.check(
        "hull inside every containing tree",
        hull.is_subset_of(&tree),
        || json!({ "tree": gens(), "tuple": tuple_json() }),
    );
    let mut wider = tuple.clone();
    wider.push(c.g.branch(&tuple[0]));
    let wider_hull = ccl(&wider).expect("one component");
    c.check("hull is monotone", hull.is_subset_of(&wider_hull), || els(sp, &wider.iter().collect::<Vec<_>>()));
}

const DISTINCT_PROJECTION_ATTEMPTS: usize = 500;

fn big_distance(c: &mut Case) {
    let sp = c.space();
    for _ in 0..DISTINCT_PROJECTION_ATTEMPTS {
        let fam = c.g.family_of(2);
        let (a, b) = (&fam[0], &fam[1]);
        let iv = Interval::new(a, b).expect("one family");
        let n = iv.elements().len();
        let (pc, pe) = (c.g.rng.gen_range(0..n), c.g.rng.gen_range(0..n));
        if pc == pe {
            continue;
        }
        let (sc, se) = (c.g.rng.gen_range(0..=2), c.g.rng.gen_range(0..=2));
        let ce_elem = c.g.extend(&iv.elements()[pc], sc);
        let e_elem = c.g.extend(&iv.elements()[pe], se);
        let rec = big_distance_decompose(a, b, &ce_elem, &e_elem).expect("one component");
        let counter = || els(sp, &[a, b, &ce_elem, &e_elem]);
        c.check(
            "projections match the interval projection",
            rec.c_proj == iv.project(&ce_elem).expect("same component")
                && rec.e_proj == iv.project(&e_elem).expect("same component"),
            counter,
        );
        if let BigDistance::Decomposed { holds, .. } = rec.outcome {
            c.check("three-term decomposition", holds, counter);
            return;
        }
    }
    c.check("found a quadruple with distinct projections", false, || json!(null));
}

fn parallel_paths(c: &mut Case) {
    let space = c.space();
    let f = c.g.path();
    let v = c.g.entourage();
    let e = c.g.positive();
    let made = parallel_path(space, &f, &v, &e);
    let ce = || json!({ "f": path_to_json(space, &f), "v": format!("{v:?}"), "e": e });
    let Ok(pp) = made else {
        c.check("construction succeeds", false, ce);
        return;
    };
    c.check("O is open", space.is_open(pp.region()), ce);
    c.check("f(0) lies in O", space.member(f.start(), pp.region()), ce);
    let mut xs = vec![f.start().clone()];
    for _ in 0..2 {
        xs.push(c.g.point_in(pp.region()).expect("O contains f(0)"));
    }
    for x in &xs {
        let cex = || json!({ "instance": ce(), "x": point_to_json(space, x) });
        let Ok(g) = pp.build(space, x) else {
            c.check("build succeeds on O", false, cex);
            continue;
        };
        c.check("g starts at x", g.start() == x, cex);
        c.check("g is 1-Lipschitz", g.validate(space).is_ok(), cex);
        c.check("entourage test", entourage_test(space, &f, &g, pp.entourage()), cex);
        c.check("length bound", *g.length() < f.length() + &e, cex);
        let gamma = pp.gamma();
        for (i, d) in pp.steps().iter().enumerate() {
            if d.is_positive() {
                let step = space.der(&g.values()[i], &g.values()[i + 1]);
                c.check("chain bounds", &gamma.recip() * d <= step && step <= gamma * d, cex);
            }
        }
    }
    let stray = c.g.point();
    if !space.member(&stray, pp.region()) {
        c.check("points outside O are refused", pp.build(space, &stray).is_err(), ce);
    }
}

fn entourage_laws(c: &mut Case) {
    let space = c.space();
    let f = c.g.path();
    let v = c.g.entourage();
    let e = c.g.positive();
    let u = PathEntourage::new(v.clone(), e.clone()).expect("positive epsilon");
    let (w, _) = space.shrink(&v, &e);
    let half_e = &e / Rational::from_int(2);
    let half = PathEntourage::new(w.clone(), half_e.clone()).expect("positive epsilon");
    let near = |c: &mut Case, p: &crate::path_space::Path| {
        let pp = parallel_path(space, p, &w, &half_e).expect("valid path");
        let x = c.g.point_in(pp.region()).expect("nonempty");
        pp.build(space, &x).expect("x in O")
    };
    let g = near(c, &f);
    let h = near(c, &g);
    let stranger = c.g.path();
    let u2 = PathEntourage::new(c.g.entourage(), c.g.positive()).expect("positive epsilon");
    let ce = || {
        json!({
            "paths": [path_to_json(space, &f), path_to_json(space, &g), path_to_json(space, &h), path_to_json(space, &stranger)],
            "u": format!("{u:?}"),
            "u2": format!("{u2:?}"),
        })
    };
    let premise = entourage_test(space, &f, &g, &half) && entourage_test(space, &g, &h, &half);
    c.check("parallel copies are close", premise, ce);
    let pairs =
        vec![(f.clone(), g.clone()), (f.clone(), h.clone()), (f.clone(), stranger.clone()), (f.clone(), f.clone())];
    let triples = vec![(f.clone(), g.clone(), h.clone()), (f.clone(), f.clone(), f.clone())];
    let report = entourage_laws_check(space, &u, &u2, &pairs, &triples);
    c.check("entourage laws", report.violations.is_empty(), || json!({ "instance": ce(), "report": report }));
    for (p, q) in &pairs {
        c.check("entourage test is symmetric", entourage_test(space, p, q, &u) == entourage_test(space, q, p, &u), ce);
    }
}

fn path_axioms(c: &mut Case) {
    let sp = c.space();
    let fam = c.g.family_of(2);
    let (k, k2) = (&fam[0], &fam[1]);
    let iv = Interval::new(k, k2).expect("one family");
    let d = iv.length().clone();
    let r = if d.is_positive() && c.g.chance(1, 3) { d.clone() } else { &d + c.g.positive() };
    let ce = || json!({ "k": el(sp, k), "k2": el(sp, k2), "r": r });
    for base in [k, k2] {
        let pm = iv.pointed_metric(base).expect("endpoint");
        c.check("interval metric satisfies the path axioms", check_path_axioms(&pm, &r), ce);
        let p = iv.as_path(base).expect("endpoint");
        c.check("interval path", p.validate(c.space()).is_ok() && *p.length() == d, ce);
    }
    if d.is_positive() {
        let short = &d / Rational::from_int(2);
        let pm = iv.pointed_metric(k).expect("endpoint");
        c.check("radius below the diameter is refused", !check_path_axioms(&pm, &short), ce);
    }
}

fn type_metric(c: &mut Case) {
    let space = c.space();
    let (model, t1, t2) = c.g.type_pair();
    let t3 = if c.g.chance(1, 2) { c.g.type_near(&model, &t1) } else { c.g.type_near(&model, &t2) };
    let ts = [t1, t2, t3];
    let diam = space.diameter();
    let ce = || json!({ "model": model_to_json(space, &model), "types": ts.iter().map(|t| type_to_json(space, t)).collect::<Vec<_>>() });
    let d = |i: usize, j: usize| type_distance(&ts[i], &ts[j], &model, space).expect("valid types");
    for i in 0..3 {
        c.check("zero on the diagonal", d(i, i).is_zero(), ce);
        for j in 0..3 {
            let dij = d(i, j);
            c.check("symmetry", dij == d(j, i), ce);
            c.check("clipped to [0, diam X]", !dij.is_negative() && dij <= diam, ce);
            c.check("separates distinct labels", dij.is_zero() == (ts[i] == ts[j]), ce);
            let mixed = matches!(
                (&ts[i], &ts[j]),
                (TypePoint::PathType { .. }, TypePoint::InfiniteType { .. })
                    | (TypePoint::InfiniteType { .. }, TypePoint::PathType { .. })
            );
            if mixed {
                c.check("infinite types sit at distance diam X", dij == diam, ce);
            }
            if let (TypePoint::PathType { m, .. }, TypePoint::PathType { m: m2, .. }) = (&ts[i], &ts[j]) {
                if model.locate(m) == model.locate(m2) {
                    let oracle = realization_oracle(&ts[i], &ts[j], &model, space).expect("same tree");
                    c.check("realization oracle agrees", oracle == dij, ce);
                }
            }
            for k in 0..3 {
                c.check("triangle", d(i, k) <= dij.clone() + d(j, k), ce);
            }
        }
    }
}

fn main_theorem(c: &mut Case) {
    let sp = c.space();
    let space = c.space();
    let (x, y) = match space {
        BaseSpace::FiniteDiscrete(fd) if c.index < fd.labels().len().pow(2) => {
            let n = fd.labels().len();
            (BasePoint::Finite(c.index / n), BasePoint::Finite(c.index % n))
        }
        _ => {
            let x = c.g.point();
            let y = if c.g.chance(1, 2) { c.g.point() } else { c.g.point_near(&x, &Rational::one()) };
            (x, y)
        }
    };
    let k = c.g.element();
    let l = c.g.companion(&k);
    let report = s1_empty_check(space, &[(x.clone(), y.clone())], &[(k.clone(), l.clone())]);
    c.check("witness and lower bound", report.violations.is_empty(), || {
        json!({
            "x": point_to_json(space, &x),
            "y": point_to_json(space, &y),
            "pair": els(sp, &[&k, &l]),
            "report": report,
        })
    });
    c.checks += (report.witness_pairs + report.lower_bound_pairs) as u64 - 1;
}
