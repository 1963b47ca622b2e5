//! Acceptance gate: one line per criterion, exact arithmetic, wall-clock
//! limits. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rforest::fixtures::{interval10, k2, k3, k5, tail, x3};
use rforest::harness::suite::{run_suite, RunReport, SuiteConfig};
use rforest::path_space::{check_path_axioms, PointedFiniteMetric};
use rforest::rational::{q, Rational};
use rforest::tree_geometry::{delta_predicate, Interval};
use rforest::BaseSpace;

const SEED: u64 = 20_261_014;

type Criterion = (&'static str, Duration, Box<dyn FnOnce(&mut Vec<String>) -> bool>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(space: &BaseSpace, name: &str, cases: usize, detail: &mut Vec<String>) -> bool {
    let report: RunReport = run_suite(space, &SuiteConfig::new(name, SEED, cases)).expect("known suite");
    let kind = serde_json::to_value(report.space).expect("kind serializes");
    detail.push(format!(
        "{name}/{} cases={} checks={} violations={}",
        kind.as_str().unwrap_or("?"),
        report.cases,
        report.checks,
        report.violations.len()
    ));
    if let Some(v) = report.violations.first() {
        detail.push(format!("first: {}", serde_json::to_string(v).expect("serializable")));
    }
    report.passed() && report.cases == cases
}

fn spaces() -> [BaseSpace; 3] {
    [x3(), interval10(), tail()]
}

fn run(limit: Duration, body: impl FnOnce(&mut Vec<String>) -> bool) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut detail = Vec::new();
    let ok = body(&mut detail);
    let elapsed = start.elapsed();
    let ok = ok && elapsed < limit;
    (Outcome { ok, detail: detail.join("; ") }, elapsed)
}

fn tripod() -> PointedFiniteMetric {
    let r = Rational::from_int;
    let labels = ["a", "b", "c", "o"].map(String::from).to_vec();
    let metric = vec![
        vec![r(0), r(2), r(2), r(1)],
        vec![r(2), r(0), r(2), r(1)],
        vec![r(2), r(2), r(0), r(1)],
        vec![r(1), r(1), r(1), r(0)],
    ];
    PointedFiniteMetric::new(labels, metric, 0).expect("tripod is a metric")
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        (
            "metric axioms",
            secs(5),
            Box::new(|d| spaces().iter().map(|s| suite(s, "metric-axioms", 10_000, d)).fold(true, |a, b| a & b)),
        ),
        ("meet bounds", secs(5), Box::new(|d| suite(&x3(), "meet-bounds", 5_000, d))),
        (
            "interval predicate",
            secs(10),
            Box::new(|d| {
                let x = x3();
                let fixture = delta_predicate(&k3(), &k2(), &q(3, 1), &k5()) == Ok(q(2, 1))
                    && Interval::new(&k3(), &k2()).expect("one component").distance_to(&k5()).finite()
                        == Some(&q(1, 1));
                d.push(format!("fixture delta=2 vs distance=1: {fixture}"));
                suite(&x, "interval-delta", 5_000, d) & fixture
            }),
        ),
        ("projection uniqueness", secs(10), Box::new(|d| suite(&x3(), "projection-unique", 5_000, d))),
        ("tree containment and convex closure", secs(10), Box::new(|d| suite(&x3(), "tree-containment", 2_000, d))),
        ("big distance", secs(5), Box::new(|d| suite(&x3(), "big-distance", 5_000, d))),
        (
            "parallel paths",
            secs(10),
            Box::new(|d| spaces().iter().map(|s| suite(s, "parallel-paths", 1_000, d)).fold(true, |a, b| a & b)),
        ),
        (
            "entourage laws and path axioms",
            secs(5),
            Box::new(|d| {
                let s = interval10();
                let laws = suite(&s, "entourage-laws", 2_000, d);
                let axioms = suite(&x3(), "path-axioms", 2_000, d);
                let rejected = !check_path_axioms(&tripod(), &q(5, 1));
                d.push(format!("tripod rejected: {rejected}"));
                laws & axioms & rejected
            }),
        ),
        ("type metric", secs(10), Box::new(|d| suite(&x3(), "type-metric", 2_000, d))),
        (
            "main theorem at desk scale",
            secs(5),
            Box::new(|d| suite(&x3(), "main-theorem", 9, d) & suite(&interval10(), "main-theorem", 2_000, d)),
        ),
    ];
    let mut all = true;
    for (i, (name, limit, body)) in criteria.into_iter().enumerate() {
        let (outcome, elapsed) = run(limit, body);
        all &= outcome.ok;
        println!(
            "criterion {:>2} {:<38} {} in {:>6} ms (limit {} s) [{}]",
            i + 1,
            name,
            if outcome.ok { "PASS" } else { "FAIL" },
            elapsed.as_millis(),
            limit.as_secs(),
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
