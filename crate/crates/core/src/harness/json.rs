//! JSON wire formats. Points are encoded per space kind: a label string for
//! finite discrete spaces, a rational string for intervals, and a natural
//! number or `"INF"` for the tail compactification.

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::base_space::{BasePoint, BaseSpace, EntourageIndex, SpaceDesc, SpaceError, TailPoint};
use crate::forest::{Breakpoint, ForestElement, ForestError};
use crate::path_space::{Path, PathError, PointedFiniteMetric, ShapeError};
use crate::rational::{ParseRationalError, Rational};
use crate::region::{Region, TailSet};
use crate::tree_geometry::{FiniteTree, Interval, TreeError};
use crate::type_space::{DeskModel, TypeError, TypePoint};

#[derive(Debug, Error)]
pub enum WireError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("{0}")]
    Point(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

pub fn parse_space(text: &str) -> Result<BaseSpace, WireError> {
    let desc: SpaceDesc = serde_json::from_str(text)?;
    Ok(BaseSpace::from_desc(&desc)?)
}

pub fn space_to_json(space: &BaseSpace) -> Value {
    serde_json::to_value(space.to_desc()).expect("descriptions serialize")
}

pub fn point_to_json(space: &BaseSpace, x: &BasePoint) -> Value {
    match x {
        BasePoint::Tail(TailPoint::Nat(k)) => json!(k),
        _ => Value::String(space.point_name(x)),
    }
}

pub fn point_from_json(space: &BaseSpace, v: &Value) -> Result<BasePoint, WireError> {
    let bad = || WireError::Point(format!("{v} is not a point of a {:?} space", space.kind()));
    let x = match space {
        BaseSpace::FiniteDiscrete(fd) => {
            let label = v.as_str().ok_or_else(bad)?;
            BasePoint::Finite(fd.index_of(label).ok_or_else(bad)?)
        }
        BaseSpace::Interval { .. } => match v {
            Value::String(s) => BasePoint::Real(s.parse()?),
            Value::Number(n) => BasePoint::Real(Rational::from_int(n.as_i64().ok_or_else(bad)?)),
            _ => return Err(bad()),
        },
        BaseSpace::Tail { .. } => match v {
            Value::String(s) if s == "INF" => BasePoint::Tail(TailPoint::Inf),
            Value::String(s) => BasePoint::Tail(TailPoint::Nat(s.parse().map_err(|_| bad())?)),
            Value::Number(n) => BasePoint::Tail(TailPoint::Nat(n.as_u64().ok_or_else(bad)?)),
            _ => return Err(bad()),
        },
    };
    space.check_point(&x)?;
    Ok(x)
}

pub fn rational_from_json(v: &Value) -> Result<Rational, WireError> {
    Ok(serde_json::from_value(v.clone())?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BreakpointWire {
    r: Rational,
    x: Value,
    #[serde(default)]
    label: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceWire {
    breakpoints: Vec<BreakpointWire>,
}

pub fn element_from_json(space: &BaseSpace, v: &Value) -> Result<ForestElement, WireError> {
    let wire: SequenceWire = serde_json::from_value(v.clone())?;
    let bps = wire
        .breakpoints
        .into_iter()
        .map(|b| Ok(Breakpoint::new(b.r, point_from_json(space, &b.x)?, b.label)))
        .collect::<Result<Vec<_>, WireError>>()?;
    Ok(ForestElement::new(space, bps)?)
}

pub fn element_to_json(space: &BaseSpace, k: &ForestElement) -> Value {
    let bps: Vec<Value> = k
        .breakpoints()
        .iter()
        .map(|b| {
            let mut o = json!({ "r": b.r.to_string(), "x": point_to_json(space, &b.x) });
            if let Some(l) = b.label {
                o["label"] = json!(l);
            }
            o
        })
        .collect();
    json!({ "breakpoints": bps })
}

pub fn path_from_json(space: &BaseSpace, v: &Value) -> Result<Path, WireError> {
    let wire: SequenceWire = serde_json::from_value(v.clone())?;
    if wire.breakpoints.iter().any(|b| b.label.is_some()) {
        return Err(WireError::Point("paths carry no labels".into()));
    }
    let pts = wire
        .breakpoints
        .into_iter()
        .map(|b| Ok((b.r, point_from_json(space, &b.x)?)))
        .collect::<Result<Vec<_>, WireError>>()?;
    Ok(Path::new(space, pts)?)
}

pub fn path_to_json(space: &BaseSpace, p: &Path) -> Value {
    let bps: Vec<Value> = p
        .times()
        .iter()
        .zip(p.values())
        .map(|(r, x)| json!({ "r": r.to_string(), "x": point_to_json(space, x) }))
        .collect();
    json!({ "breakpoints": bps })
}

pub fn region_to_json(space: &BaseSpace, s: &Region) -> Value {
    match (space, s) {
        (BaseSpace::FiniteDiscrete(fd), Region::Finite(set)) => {
            json!({ "points": set.iter().map(|&i| fd.labels()[i].clone()).collect::<Vec<_>>() })
        }
        (_, Region::Interval(spans)) => json!({ "spans": spans }),
        (_, Region::Tail(TailSet::Finite(set))) => json!({ "finite": set }),
        (_, Region::Tail(TailSet::Cofinite(excluded))) => json!({ "cofinite_excluding": excluded }),
        _ => panic!("region does not belong to this space"),
    }
}

/// Accepts `"1/2"` as a radius for the metric presentations and a natural
/// `n` for the tail compactification.
pub fn entourage_from_json(space: &BaseSpace, v: &Value) -> Result<EntourageIndex, WireError> {
    let i = match space {
        BaseSpace::Tail { .. } => EntourageIndex::Tail(
            v.as_u64()
                .or_else(|| v.as_str().and_then(|s| s.parse().ok()))
                .ok_or_else(|| WireError::Point(format!("{v} is not a tail index")))?,
        ),
        _ => {
            let r = rational_from_json(v)?;
            if !r.is_positive() {
                return Err(WireError::Point("entourage radius must be positive".into()));
            }
            EntourageIndex::Radius(r)
        }
    };
    Ok(i)
}

pub fn entourage_to_json(i: &EntourageIndex) -> Value {
    match i {
        EntourageIndex::Radius(r) => json!({ "radius": r }),
        EntourageIndex::Tail(n) => json!({ "tail": n }),
    }
}

pub fn interval_to_json(space: &BaseSpace, iv: &Interval) -> Value {
    let elems: Vec<Value> = iv
        .elements()
        .iter()
        .zip(iv.positions())
        .map(|(e, p)| json!({ "pos": p.to_string(), "element": element_to_json(space, e) }))
        .collect();
    json!({
        "start": element_to_json(space, iv.start()),
        "end": element_to_json(space, iv.end()),
        "meet": element_to_json(space, iv.meet()),
        "length": iv.length().to_string(),
        "elements": elems,
    })
}

fn pair_from_json(space: &BaseSpace, v: &Value) -> Result<(ForestElement, ForestElement), WireError> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((element_from_json(space, a)?, element_from_json(space, b)?)),
        _ => Err(WireError::Point("an interval is a pair [element, element]".into())),
    }
}

pub fn tree_from_json(space: &BaseSpace, v: &Value) -> Result<FiniteTree, WireError> {
    let pairs = v
        .get("intervals")
        .and_then(Value::as_array)
        .ok_or_else(|| WireError::Point("a tree is {\"intervals\": [...]}".into()))?
        .iter()
        .map(|p| pair_from_json(space, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteTree::new(&pairs)?)
}

pub fn tree_to_json(space: &BaseSpace, t: &FiniteTree) -> Value {
    let intervals: Vec<Value> =
        t.generators().iter().map(|(a, b)| json!([element_to_json(space, a), element_to_json(space, b)])).collect();
    let elements: Vec<Value> = t.elements().iter().map(|e| element_to_json(space, e)).collect();
    json!({ "intervals": intervals, "elements": elements })
}

pub fn model_from_json(space: &BaseSpace, v: &Value) -> Result<DeskModel, WireError> {
    let trees = v
        .get("trees")
        .and_then(Value::as_array)
        .ok_or_else(|| WireError::Point("a desk model is {\"trees\": [...]}".into()))?
        .iter()
        .map(|t| tree_from_json(space, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DeskModel::new(space, trees)?)
}

pub fn model_to_json(space: &BaseSpace, m: &DeskModel) -> Value {
    let trees: Vec<Value> = m
        .trees()
        .iter()
        .map(|t| {
            let intervals: Vec<Value> = t
                .generators()
                .iter()
                .map(|(a, b)| json!([element_to_json(space, a), element_to_json(space, b)]))
                .collect();
            json!({ "intervals": intervals })
        })
        .collect();
    json!({ "trees": trees })
}

/// `{"kind":"path","m":..,"f":..}`, `{"kind":"realized","m":..}` or
/// `{"kind":"infinite","x":..}`.
pub fn type_from_json(space: &BaseSpace, v: &Value) -> Result<TypePoint, WireError> {
    let field = |name: &str| v.get(name).ok_or_else(|| WireError::Point(format!("type is missing {name:?}")));
    match v.get("kind").and_then(Value::as_str) {
        Some("path") => Ok(TypePoint::PathType {
            m: element_from_json(space, field("m")?)?,
            f: path_from_json(space, field("f")?)?,
        }),
        Some("realized") => Ok(TypePoint::realized(element_from_json(space, field("m")?)?)),
        Some("infinite") => Ok(TypePoint::InfiniteType { x: point_from_json(space, field("x")?)? }),
        _ => Err(WireError::Point("type kind must be path, realized or infinite".into())),
    }
}

pub fn type_to_json(space: &BaseSpace, t: &TypePoint) -> Value {
    match t {
        TypePoint::PathType { m, f } => json!({
            "kind": "path",
            "m": element_to_json(space, m),
            "f": path_to_json(space, f),
        }),
        TypePoint::InfiniteType { x } => json!({ "kind": "infinite", "x": point_to_json(space, x) }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointedWire {
    points: Vec<String>,
    metric: Vec<Vec<Rational>>,
    basepoint: String,
}

/// `{"points":[..],"metric":[[..]],"basepoint":"label"}`.
pub fn pointed_metric_from_json(v: &Value) -> Result<PointedFiniteMetric, WireError> {
    let wire: PointedWire = serde_json::from_value(v.clone())?;
    let c = wire
        .points
        .iter()
        .position(|p| *p == wire.basepoint)
        .ok_or_else(|| WireError::Point(format!("basepoint {:?} is not listed", wire.basepoint)))?;
    Ok(PointedFiniteMetric::new(wire.points, wire.metric, c)?)
}

pub fn pointed_metric_to_json(p: &PointedFiniteMetric) -> Value {
    json!({
        "points": p.labels(),
        "metric": p.metric(),
        "basepoint": p.labels()[p.basepoint()],
    })
}
