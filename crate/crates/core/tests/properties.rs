//! Randomized contracts for the base-space primitives, the generators and the
//! wire format. Each proptest case seeds a generator, so failures shrink to a
//! seed that replays exactly.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rforest::fixtures::{interval10, tail, x3};
use rforest::harness::gen::{Bounds, Gen};
use rforest::harness::json;
use rforest::rational::q;
use rforest::region::Span;
use rforest::tree_geometry::ccl;
use rforest::{BasePoint, BaseSpace, Rational, Region, SpanSet};

fn space(i: usize) -> BaseSpace {
    [x3(), interval10(), tail()][i].clone()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-400i64..400, 1i64..65).prop_map(|(n, d)| Rational::new(n, d))
}

/// `der(x, S)` for a union of spans, straight from the definition.
fn distance_to_spans(x: &Rational, spans: &SpanSet) -> Option<Rational> {
    spans
        .spans()
        .iter()
        .map(|s| {
            if x < &s.lo {
                &s.lo - x
            } else if x > &s.hi {
                x - &s.hi
            } else {
                Rational::zero()
            }
        })
        .min()
}

proptest! {
    #[test]
    fn rational_display_round_trips(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn simplest_between_is_least_denominator(
        lo_n in 0i64..200, lo_d in 1i64..30, w_n in 0i64..40, w_d in 1i64..30,
        lo_closed in any::<bool>(), hi_closed in any::<bool>(),
    ) {
        let lo = Rational::new(lo_n, lo_d);
        let hi = &lo + &Rational::new(w_n, w_d);
        let inside = |x: &Rational| {
            (if lo_closed { x >= &lo } else { x > &lo }) && (if hi_closed { x <= &hi } else { x < &hi })
        };
        let brute = (1i64..=900).find_map(|d| {
            let start = (&lo * &Rational::from_int(d)).floor();
            let start = i64::try_from(start).unwrap();
            (start..=start + w_n * d + 2).map(|n| Rational::new(n, d)).find(|x| inside(x) && x.denom() == &d.into())
        });
        let got = Rational::simplest_between(&lo, lo_closed, &hi, hi_closed);
        prop_assert_eq!(got, brute);
    }

    #[test]
    fn interval_fatten_matches_pointwise_distance(
        cuts in proptest::collection::vec(0i64..=40, 2..8),
        e_n in 1i64..20, x_n in 0i64..=80,
    ) {
        let s = interval10();
        let mut cuts = cuts;
        cuts.sort();
        let spans: Vec<Span> = cuts
            .chunks(2)
            .filter(|c| c.len() == 2 && c[0] < c[1])
            .map(|c| Span::open(Rational::new(c[0], 4), Rational::new(c[1], 4)))
            .collect();
        prop_assume!(!spans.is_empty());
        let set = SpanSet::from_spans(spans);
        let e = Rational::new(e_n, 8);
        let x = Rational::new(x_n, 8);
        let fat = s.fatten(&Region::Interval(set.clone()), &e);
        let expected = distance_to_spans(&x, &set).is_some_and(|d| d < e);
        prop_assert_eq!(s.member(&BasePoint::Real(x), &fat), expected);
    }

    #[test]
    fn separate_contract(which in 0usize..3, seed in any::<u64>(), s_k in 0i64..8) {
        let sp = space(which);
        let mut g = Gen::new(&sp, Bounds::default(), rng(seed));
        let x = g.point();
        let y = g.other_point(&x);
        let gap = sp.der(&x, &y);
        prop_assume!(gap.is_positive());
        let s = &gap * &Rational::new(s_k, 8);
        let (b, c) = sp.separate(&x, &y, &s).unwrap();
        prop_assert!(sp.member(&x, &b) && sp.member(&y, &c));
        prop_assert!(sp.is_open(&b) && sp.is_open(&c));
        let grown = sp.fatten_closed(&sp.closure(&b), &s);
        prop_assert!(grown.intersect(&sp.closure(&c)).is_empty(), "{:?} vs {:?}", grown, c);
        prop_assert!(sp.separate(&x, &y, &gap).is_err());
    }

    #[test]
    fn shrink_contract(which in 0usize..3, seed in any::<u64>()) {
        let sp = space(which);
        let mut g = Gen::new(&sp, Bounds::default(), rng(seed));
        let i = g.entourage();
        let e = g.positive();
        let (j, delta) = sp.shrink(&i, &e);
        prop_assert!(delta.is_positive() && delta < e);
        let x = g.point();
        let inner = sp.fatten_closed(&sp.closure(&sp.entourage_ball(&j, &x)), &delta);
        for _ in 0..8 {
            let z = g.point_in(&inner).unwrap();
            prop_assert!(sp.entourage_member(&i, &x, &z));
            let y = g.point_in(&sp.entourage_ball(&j, &x)).unwrap();
            let w = g.point_in(&sp.entourage_ball(&j, &y)).unwrap();
            prop_assert!(sp.entourage_member(&i, &x, &w));
        }
    }

    #[test]
    fn pick_within_lands_in_the_region(which in 0usize..3, seed in any::<u64>()) {
        let sp = space(which);
        let mut g = Gen::new(&sp, Bounds::default(), rng(seed));
        let i = g.entourage();
        let centre = g.point();
        let region = sp.entourage_ball(&i, &centre);
        let y = g.point();
        let b = g.positive();
        match sp.pick_within(&region, &y, &b) {
            Ok(z) => {
                prop_assert!(sp.member(&z, &region));
                prop_assert!(sp.der(&y, &z) < b);
            }
            Err(_) => {
                if let Some(z) = g.point_in(&region) {
                    prop_assert!(sp.der(&y, &z) >= b);
                }
            }
        }
    }

    #[test]
    fn generated_instances_are_valid(which in 0usize..3, seed in any::<u64>()) {
        let sp = space(which);
        let mut g = Gen::new(&sp, Bounds::default(), rng(seed));
        let k = g.element();
        prop_assert!(k.validate(&sp).is_ok());
        prop_assert!(k.breakpoint_count() <= Bounds::default().max_breakpoints);
        let f = g.path();
        prop_assert!(f.validate(&sp).is_ok());
        let t = g.tree();
        for e in t.elements() {
            prop_assert!(e.validate(&sp).is_ok());
        }
        let family = g.family();
        prop_assert!(!family.is_empty() && family.len() <= Bounds::default().max_family);
        if family.iter().all(|e| e.same_component(&family[0])) {
            let hull = ccl(&family).unwrap();
            prop_assert!(family.iter().all(|e| hull.contains(e)));
        }
        let (model, t1, t2) = g.type_pair();
        prop_assert!(t1.validate(&sp, &model).is_ok());
        prop_assert!(t2.validate(&sp, &model).is_ok());
    }

    #[test]
    fn generators_are_deterministic(which in 0usize..3, seed in any::<u64>()) {
        let sp = space(which);
        let draw = || {
            let mut g = Gen::new(&sp, Bounds::default(), rng(seed));
            (g.element(), g.path(), g.tree().generators())
        };
        prop_assert_eq!(draw(), draw());
    }

    #[test]
    fn wire_format_round_trips(which in 0usize..3, seed in any::<u64>()) {
        let sp = space(which);
        let mut g = Gen::new(&sp, Bounds::default(), rng(seed));
        let k = g.element();
        prop_assert_eq!(json::element_from_json(&sp, &json::element_to_json(&sp, &k)).unwrap(), k);
        let f = g.path();
        prop_assert_eq!(json::path_from_json(&sp, &json::path_to_json(&sp, &f)).unwrap(), f);
        let t = g.tree();
        let back = json::tree_from_json(&sp, &json::tree_to_json(&sp, &t)).unwrap();
        prop_assert_eq!(back.elements(), t.elements());
        let (model, t1, _) = g.type_pair();
        let model_back = json::model_from_json(&sp, &json::model_to_json(&sp, &model)).unwrap();
        prop_assert_eq!(model_back.trees().len(), model.trees().len());
        prop_assert_eq!(json::type_from_json(&sp, &json::type_to_json(&sp, &t1)).unwrap(), t1);
        let desc = json::space_to_json(&sp);
        prop_assert_eq!(json::parse_space(&desc.to_string()).unwrap().diameter(), sp.diameter());
    }
}

#[test]
fn max_breakpoints_one_gives_point_elements() {
    for which in 0..3 {
        let sp = space(which);
        let bounds = Bounds { max_breakpoints: 1, ..Bounds::default() };
        let mut g = Gen::new(&sp, bounds, rng(1));
        for _ in 0..200 {
            let k = g.element();
            assert_eq!(k.breakpoint_count(), 1);
            assert_eq!(k.length(), &Rational::zero());
        }
    }
}

#[test]
fn separate_on_the_interval_example() {
    let sp = interval10();
    let (b, c) = sp.separate(&BasePoint::Real(q(1, 1)), &BasePoint::Real(q(4, 1)), &q(1, 1)).unwrap();
    let grown = sp.fatten_closed(&sp.closure(&b), &q(1, 1));
    assert!(grown.intersect(&sp.closure(&c)).is_empty());
}
