// Shared strategies and oracles for the integration tests.
#![allow(dead_code)]

use modcalc::basis::{int, rat};
use modcalc::{BasisSymbol, CurveClass, DivisorClass, Rational, SpaceId};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

pub fn space() -> impl Strategy<Value = SpaceId> {
    prop_oneof![
        (2u32..=6, 0u32..=4).prop_map(|(g, n)| SpaceId::pointed(g, n).unwrap()),
        (2u32..=10).prop_map(|g| SpaceId::spin(g).unwrap()),
    ]
}

fn terms(space: SpaceId) -> impl Strategy<Value = Vec<(BasisSymbol, Rational)>> {
    let symbols = space.all_symbols();
    proptest::collection::vec((proptest::sample::select(symbols), small_rational()), 0..8)
}

pub fn class_on(space: SpaceId) -> impl Strategy<Value = DivisorClass> {
    terms(space).prop_map(move |t| DivisorClass::from_terms(space, t).unwrap())
}

pub fn curve_on(space: SpaceId) -> impl Strategy<Value = CurveClass> {
    terms(space).prop_map(move |t| CurveClass::from_terms(space, t).unwrap())
}

pub fn class() -> impl Strategy<Value = DivisorClass> {
    space().prop_flat_map(class_on)
}

/// Two classes and a curve on one space.
pub fn triple() -> impl Strategy<Value = (DivisorClass, DivisorClass, CurveClass)> {
    space().prop_flat_map(|s| (class_on(s), class_on(s), curve_on(s)))
}

/// Pairing computed term by term, without going through the library.
pub fn dot(curve: &CurveClass, d: &DivisorClass) -> Rational {
    d.terms()
        .map(|(s, c)| c * curve.pairing(s))
        .fold(int(0), |acc, x| acc + x)
}
