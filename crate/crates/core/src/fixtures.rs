//! Small canonical spaces and elements used by tests, examples and the CLI
//! documentation.
//!
//! `X3 = {a, b, c}` with `der(a,b) = der(b,c) = 1` and `der(a,c) = 2`, and
//! the elements (written `⟨r:value/label, ...⟩`)
//!
//! | name   | element                  |
//! |--------|--------------------------|
//! | `pt_a` | `⟨0:a⟩`                  |
//! | `k1`   | `⟨0:a/0, 1:b⟩`           |
//! | `k2`   | `⟨0:a/0, 1:b/0, 2:c⟩`    |
//! | `k3`   | `⟨0:a/1, 1:b⟩`           |
//! | `k5`   | `⟨0:a/0, 1:b/1, 2:c⟩`    |
//! | `k6`   | `⟨0:a/2, 1:b⟩`           |
//! | `l_b`  | `⟨0:b⟩`                  |

use crate::base_space::{BasePoint, BaseSpace};
use crate::forest::{Breakpoint, ForestElement};
use crate::rational::Rational;

pub const A: BasePoint = BasePoint::Finite(0);
pub const B: BasePoint = BasePoint::Finite(1);
pub const C: BasePoint = BasePoint::Finite(2);

pub fn x3() -> BaseSpace {
    let r = Rational::from_int;
    BaseSpace::finite(
        vec!["a".into(), "b".into(), "c".into()],
        vec![vec![r(0), r(1), r(2)], vec![r(1), r(0), r(1)], vec![r(2), r(1), r(0)]],
    )
    .expect("X3 is a metric space")
}

/// `[0, 10]`.
pub fn interval10() -> BaseSpace {
    BaseSpace::interval(Rational::from_int(10)).expect("positive length")
}

pub fn tail() -> BaseSpace {
    BaseSpace::tail()
}

/// Breakpoint at an integer time.
pub fn bp(r: i64, x: BasePoint, label: Option<u64>) -> Breakpoint {
    Breakpoint::new(Rational::from_int(r), x, label)
}

fn elem(bps: Vec<Breakpoint>) -> ForestElement {
    ForestElement::new(&x3(), bps).expect("fixture is valid")
}

pub fn pt_a() -> ForestElement {
    elem(vec![bp(0, A, None)])
}

pub fn k1() -> ForestElement {
    elem(vec![bp(0, A, Some(0)), bp(1, B, None)])
}

pub fn k2() -> ForestElement {
    elem(vec![bp(0, A, Some(0)), bp(1, B, Some(0)), bp(2, C, None)])
}

pub fn k3() -> ForestElement {
    elem(vec![bp(0, A, Some(1)), bp(1, B, None)])
}

pub fn k5() -> ForestElement {
    elem(vec![bp(0, A, Some(0)), bp(1, B, Some(1)), bp(2, C, None)])
}

pub fn k6() -> ForestElement {
    elem(vec![bp(0, A, Some(2)), bp(1, B, None)])
}

pub fn l_b() -> ForestElement {
    elem(vec![bp(0, B, None)])
}
