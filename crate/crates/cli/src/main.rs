//! `rforest`: JSON in, JSON out. Results go to stdout, diagnostics to
//! stderr. Exit status is 0 on success, 1 when an input fails validation or
//! a property suite finds a violation, and 2 on usage errors.

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rforest::harness::gen::Bounds;
use rforest::harness::json::{self as wire, WireError};
use rforest::harness::par::Execution;
use rforest::harness::suite::{run_suite_with, SuiteConfig, SUITES};
use rforest::path_space::{check_path_axioms, entourage_test, parallel_path, PathEntourage};
use rforest::tree_geometry::{ccl, delta_predicate, nearest_by_enumeration, Interval};
use rforest::type_space::{realization_oracle, type_distance};
use rforest::{BaseSpace, Rational};

#[derive(Parser)]
#[command(name = "rforest", version, about = "Exact computations on R-forests over compact topometric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a space description or print its diameter.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Forest elements: distance, meet, restriction, base type.
    #[command(subcommand)]
    Elem(ElemCmd),
    /// Intervals [K, K']: enumeration, the literal δ predicate, projection.
    #[command(subcommand)]
    Interval(IntervalCmd),
    /// Finite trees: convex closure and projection.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Paths: entourage test, parallel paths, path-metric axioms.
    #[command(subcommand)]
    Path(PathCmd),
    /// 1-types over a desk model.
    #[command(subcommand)]
    Types(TypesCmd),
    /// Property suites.
    #[command(subcommand)]
    Prop(PropCmd),
}

#[derive(Subcommand)]
enum SpaceCmd {
    Check { file: PathBuf },
    Diameter { file: PathBuf },
}

#[derive(Args)]
struct SpaceArg {
    /// Space description (JSON file).
    #[arg(long)]
    space: PathBuf,
}

#[derive(Subcommand)]
enum ElemCmd {
    Dist {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Also report `min(d, s)`.
        #[arg(long)]
        trunc: Option<String>,
    },
    Meet {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    Restrict {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        r: String,
    },
    Tp {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        a: PathBuf,
    },
}

#[derive(Subcommand)]
enum IntervalCmd {
    Enum {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    Delta {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        r: String,
        /// The element whose δ value is computed.
        #[arg(long)]
        x: PathBuf,
    },
    Project {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    Ccl {
        #[command(flatten)]
        space: SpaceArg,
        /// Elements of the tuple, in order.
        #[arg(long = "elem", required = true)]
        elems: Vec<PathBuf>,
    },
    Project {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
}

#[derive(Subcommand)]
enum PathCmd {
    Test {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Entourage index: a radius such as `1/2`, or `n` for the tail space.
        #[arg(long)]
        v: String,
        #[arg(long)]
        e: String,
    },
    Parallel {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        v: String,
        #[arg(long)]
        e: String,
        /// Points to build parallel paths from (`a`, `7/2`, `5`, `INF`).
        #[arg(long = "at")]
        at: Vec<String>,
    },
    Axioms {
        /// Pointed finite metric (JSON file).
        #[arg(long)]
        metric: PathBuf,
        #[arg(long)]
        r: String,
    },
}

#[derive(Subcommand)]
enum TypesCmd {
    Dist(TypesArgs),
    Oracle(TypesArgs),
}

#[derive(Args)]
struct TypesArgs {
    #[command(flatten)]
    space: SpaceArg,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    t1: PathBuf,
    #[arg(long)]
    t2: PathBuf,
}

#[derive(Subcommand)]
enum PropCmd {
    Run {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, default_value_t = Bounds::default().max_breakpoints)]
        max_breakpoints: usize,
        #[arg(long, default_value_t = Bounds::default().max_family)]
        max_family: usize,
        #[arg(long, default_value_t = Bounds::default().max_intervals)]
        max_intervals: usize,
        #[arg(long, default_value_t = Bounds::default().max_denominator)]
        max_denominator: u32,
        /// Run cases on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    /// Bad invocation, unreadable file: exit 2.
    Usage(String),
    /// Input parsed but is invalid, or a check failed: exit 1.
    Invalid(String),
    /// A result is printed but signals failure: exit 1.
    Reported(Value),
}

impl From<WireError> for Failure {
    fn from(e: WireError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn read_json(path: &FsPath) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_space(arg: &SpaceArg) -> Result<BaseSpace, Failure> {
    load_space_file(&arg.space)
}

fn load_space_file(path: &FsPath) -> Result<BaseSpace, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(wire::parse_space(&text)?)
}

fn rational(s: &str) -> Result<Rational, Failure> {
    s.parse().map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
}

/// Accepts bare tokens (`a`, `7/2`, `INF`) as well as JSON literals.
fn token(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

fn dispatch(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Space(cmd) => {
            let (SpaceCmd::Check { file } | SpaceCmd::Diameter { file }) = &cmd;
            let text = fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            match (wire::parse_space(&text), &cmd) {
                (Ok(s), SpaceCmd::Check { .. }) => Ok(json!({ "valid": true, "diameter": s.diameter() })),
                (Ok(s), SpaceCmd::Diameter { .. }) => Ok(json!({ "diameter": s.diameter() })),
                (Err(e), SpaceCmd::Check { .. }) => {
                    Err(Failure::Reported(json!({ "valid": false, "error": e.to_string() })))
                }
                (Err(e), SpaceCmd::Diameter { .. }) => Err(e.into()),
            }
        }
        Command::Elem(cmd) => elem(cmd),
        Command::Interval(cmd) => interval(cmd),
        Command::Tree(cmd) => tree(cmd),
        Command::Path(cmd) => path(cmd),
        Command::Types(cmd) => types(cmd),
        Command::Prop(cmd) => prop(cmd),
    }
}

fn elem(cmd: ElemCmd) -> Result<Value, Failure> {
    match cmd {
        ElemCmd::Dist { space, a, b, trunc } => {
            let s = load_space(&space)?;
            let ka = wire::element_from_json(&s, &read_json(&a)?)?;
            let kb = wire::element_from_json(&s, &read_json(&b)?)?;
            let mut out = json!({ "d": ka.distance(&kb) });
            if let Some(t) = trunc {
                let t = rational(&t)?;
                if !t.is_positive() {
                    return Err(Failure::Usage("truncation must be positive".into()));
                }
                out["d_trunc"] = json!(ka.distance_trunc(&kb, &t));
            }
            Ok(out)
        }
        ElemCmd::Meet { space, a, b } => {
            let s = load_space(&space)?;
            let ka = wire::element_from_json(&s, &read_json(&a)?)?;
            let kb = wire::element_from_json(&s, &read_json(&b)?)?;
            let meet = ka.meet(&kb).map(|m| wire::element_to_json(&s, &m));
            Ok(json!({ "meet": meet }))
        }
        ElemCmd::Restrict { space, a, r } => {
            let s = load_space(&space)?;
            let k = wire::element_from_json(&s, &read_json(&a)?)?;
            let r = rational(&r)?;
            if r.is_negative() {
                return Err(Failure::Usage("restriction time must be nonnegative".into()));
            }
            Ok(wire::element_to_json(&s, &k.restrict(&r)))
        }
        ElemCmd::Tp { space, a } => {
            let s = load_space(&space)?;
            let k = wire::element_from_json(&s, &read_json(&a)?)?;
            Ok(json!({ "tp": wire::point_to_json(&s, k.tip()) }))
        }
    }
}

fn interval(cmd: IntervalCmd) -> Result<Value, Failure> {
    match cmd {
        IntervalCmd::Enum { space, a, b } => {
            let s = load_space(&space)?;
            let k = wire::element_from_json(&s, &read_json(&a)?)?;
            let k2 = wire::element_from_json(&s, &read_json(&b)?)?;
            let iv = Interval::new(&k, &k2).map_err(invalid)?;
            Ok(wire::interval_to_json(&s, &iv))
        }
        IntervalCmd::Delta { space, a, b, r, x } => {
            let s = load_space(&space)?;
            let k = wire::element_from_json(&s, &read_json(&a)?)?;
            let k2 = wire::element_from_json(&s, &read_json(&b)?)?;
            let el = wire::element_from_json(&s, &read_json(&x)?)?;
            let r = rational(&r)?;
            let delta = delta_predicate(&k, &k2, &r, &el).map_err(invalid)?;
            let iv = Interval::new(&k, &k2).map_err(invalid)?;
            let (distance, _) = nearest_by_enumeration(&el, iv.elements());
            Ok(json!({ "delta": delta, "distance": distance, "on_interval": iv.contains(&el) }))
        }
        IntervalCmd::Project { space, a, b, x } => {
            let s = load_space(&space)?;
            let k = wire::element_from_json(&s, &read_json(&a)?)?;
            let k2 = wire::element_from_json(&s, &read_json(&b)?)?;
            let el = wire::element_from_json(&s, &read_json(&x)?)?;
            let iv = Interval::new(&k, &k2).map_err(invalid)?;
            let p = iv.project(&el).map_err(invalid)?;
            Ok(json!({ "projection": wire::element_to_json(&s, &p), "distance": el.distance(&p) }))
        }
    }
}

fn tree(cmd: TreeCmd) -> Result<Value, Failure> {
    match cmd {
        TreeCmd::Ccl { space, elems } => {
            let s = load_space(&space)?;
            let tuple = elems
                .iter()
                .map(|p| Ok(wire::element_from_json(&s, &read_json(p)?)?))
                .collect::<Result<Vec<_>, Failure>>()?;
            let t = ccl(&tuple).map_err(invalid)?;
            Ok(wire::tree_to_json(&s, &t))
        }
        TreeCmd::Project { space, tree, x } => {
            let s = load_space(&space)?;
            let t = wire::tree_from_json(&s, &read_json(&tree)?)?;
            let el = wire::element_from_json(&s, &read_json(&x)?)?;
            let (p, d) = t.project(&el).map_err(invalid)?;
            Ok(json!({ "projection": wire::element_to_json(&s, &p), "distance": d }))
        }
    }
}

fn entourage(s: &BaseSpace, v: &str, e: &str) -> Result<PathEntourage, Failure> {
    let index = wire::entourage_from_json(s, &token(v)).map_err(|e| Failure::Usage(e.to_string()))?;
    PathEntourage::new(index, rational(e)?).map_err(|e| Failure::Usage(e.to_string()))
}

fn path(cmd: PathCmd) -> Result<Value, Failure> {
    match cmd {
        PathCmd::Test { space, f, g, v, e } => {
            let s = load_space(&space)?;
            let pf = wire::path_from_json(&s, &read_json(&f)?)?;
            let pg = wire::path_from_json(&s, &read_json(&g)?)?;
            let u = entourage(&s, &v, &e)?;
            Ok(json!({ "close": entourage_test(&s, &pf, &pg, &u) }))
        }
        PathCmd::Parallel { space, f, v, e, at } => {
            let s = load_space(&space)?;
            let pf = wire::path_from_json(&s, &read_json(&f)?)?;
            let u = entourage(&s, &v, &e)?;
            let pp = parallel_path(&s, &pf, &u.index, &u.epsilon).map_err(invalid)?;
            let mut samples = Vec::new();
            let mut all_ok = true;
            for raw in &at {
                let x = wire::point_from_json(&s, &token(raw))?;
                let sample = match pp.build(&s, &x) {
                    Ok(g) => {
                        let ok = entourage_test(&s, &pf, &g, pp.entourage());
                        all_ok &= ok;
                        json!({ "x": wire::point_to_json(&s, &x), "path": wire::path_to_json(&s, &g), "entourage_test": ok })
                    }
                    Err(err) => {
                        all_ok = false;
                        json!({ "x": wire::point_to_json(&s, &x), "error": err.to_string() })
                    }
                };
                samples.push(sample);
            }
            let out = json!({
                "region": wire::region_to_json(&s, pp.region()),
                "gamma": pp.gamma(),
                "delta": pp.delta(),
                "shrunk": wire::entourage_to_json(pp.shrunk_index()),
                "samples": samples,
            });
            if all_ok {
                Ok(out)
            } else {
                Err(Failure::Reported(out))
            }
        }
        PathCmd::Axioms { metric, r } => {
            let pm = wire::pointed_metric_from_json(&read_json(&metric)?)?;
            let r = rational(&r)?;
            if !r.is_positive() {
                return Err(Failure::Usage("r must be positive".into()));
            }
            Ok(json!({ "accepts": check_path_axioms(&pm, &r) }))
        }
    }
}

fn types(cmd: TypesCmd) -> Result<Value, Failure> {
    let (args, oracle) = match cmd {
        TypesCmd::Dist(a) => (a, false),
        TypesCmd::Oracle(a) => (a, true),
    };
    let s = load_space(&args.space)?;
    let model = wire::model_from_json(&s, &read_json(&args.model)?)?;
    let t1 = wire::type_from_json(&s, &read_json(&args.t1)?)?;
    let t2 = wire::type_from_json(&s, &read_json(&args.t2)?)?;
    let d = if oracle { realization_oracle(&t1, &t2, &model, &s) } else { type_distance(&t1, &t2, &model, &s) }
        .map_err(invalid)?;
    Ok(json!({ "d": d }))
}

fn prop(cmd: PropCmd) -> Result<Value, Failure> {
    let PropCmd::Run {
        suite,
        seed,
        cases,
        space,
        max_breakpoints,
        max_family,
        max_intervals,
        max_denominator,
        sequential,
    } = cmd;
    if !SUITES.contains(&suite.as_str()) {
        return Err(Failure::Usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))));
    }
    if cases == 0 || max_breakpoints == 0 || max_family == 0 || max_intervals == 0 || max_denominator == 0 {
        return Err(Failure::Usage("cases and size bounds must be positive".into()));
    }
    let s = load_space(&space)?;
    let cfg = SuiteConfig {
        suite,
        seed,
        cases,
        bounds: Bounds { max_breakpoints, max_family, max_intervals, max_denominator },
    };
    let exec = if sequential { Execution::Sequential } else { Execution::default() };
    let report = run_suite_with(&s, &cfg, exec).map_err(|e| Failure::Usage(e.to_string()))?;
    let out = serde_json::to_value(&report).expect("reports serialize");
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Reported(out))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(Failure::Reported(v)) => {
            println!("{v}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("rforest: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("rforest: {msg}");
            ExitCode::from(2)
        }
    }
}
