//! Exact divisor-class and test-curve calculus on moduli spaces of pointed
//! and even spin curves.

pub mod basis;
pub mod catalog;
pub mod criteria;
pub mod dsl;
pub mod error;
pub mod ledger;
pub mod maps;
pub mod pencils;

pub use basis::{
    combine, pair, BasisSymbol, CurveClass, DivisorClass, KnownSupport, LabelSet, Rational, SpaceId,
};
pub use error::{CalcError, Result};
