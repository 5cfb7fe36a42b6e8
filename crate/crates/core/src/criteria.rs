//! Decision procedures on top of the pairing: slopes, rigidity witnesses, the
//! two-divisor uniruledness test, canonical-class interpolation and
//! coefficientwise effectivity.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::basis::{
    binomial, combine, int, memoized, pair, rat, BasisSymbol, ClassCache, CurveClass, DivisorClass,
    LabelSet, Rational, SpaceId,
};
use crate::catalog::{
    bn_class, canonical_mgn_class, canonical_spin_class, pointed_pencil_class, theta_null_class,
};
use crate::error::{CalcError, Result};
use crate::maps::{forgetful_pullback, spin_pullback};

/// One checked condition of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub value: Rational,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        Self {
            holds: witnesses.iter().all(|w| w.satisfied),
            witnesses,
        }
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.name == name)
    }
}

fn witness(name: impl Into<String>, value: Rational, satisfied: bool) -> Witness {
    Witness {
        name: name.into(),
        value,
        satisfied,
    }
}

/// `a/b` for a class `aλ - bδ_irr - ...` with `a, b > 0`.
pub fn slope(d: &DivisorClass) -> Result<Rational> {
    let a = d.known_coeff(&BasisSymbol::Lambda)?;
    let irr = d.known_coeff(&BasisSymbol::DeltaIrr)?;
    if irr.is_zero() {
        return Err(CalcError::ZeroDelta0);
    }
    let b = -irr.clone();
    if !a.is_positive() || !b.is_positive() {
        return Err(CalcError::SignError {
            lambda: crate::basis::fmt_rational(&a),
            delta: crate::basis::fmt_rational(&irr),
        });
    }
    Ok(a / b)
}

/// Holds when `Γ·D < 0` and `Γ·D_j = 0` for every other component `D_j`.
pub fn rigidity_witness(
    curve: &CurveClass,
    d: &DivisorClass,
    others: &[DivisorClass],
) -> Result<Verdict> {
    let main = pair(curve, d)?;
    let mut witnesses = vec![witness("curve.D", main.clone(), main.is_negative())];
    for (k, other) in others.iter().enumerate() {
        let v = pair(curve, other)?;
        let ok = v.is_zero();
        witnesses.push(witness(format!("curve.D{}", k + 1), v, ok));
    }
    Ok(Verdict::from_witnesses(witnesses))
}

/// The six pairings of two covering curves against two divisors and `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniruledInput {
    pub p11: Rational,
    pub p12: Rational,
    pub p21: Rational,
    pub p22: Rational,
    pub k1: Rational,
    pub k2: Rational,
}

impl UniruledInput {
    pub fn from_ints(v: [i64; 6]) -> Self {
        let [p11, p12, p21, p22, k1, k2] = v.map(int);
        Self {
            p11,
            p12,
            p21,
            p22,
            k1,
            k2,
        }
    }

    /// Pairs `Γ_1, Γ_2` against `D_1, D_2, K`.
    pub fn from_pairings(
        curves: [&CurveClass; 2],
        d1: &DivisorClass,
        d2: &DivisorClass,
        k: &DivisorClass,
    ) -> Result<Self> {
        let [c1, c2] = curves;
        Ok(Self {
            p11: pair(c1, d1)?,
            p12: pair(c1, d2)?,
            p21: pair(c2, d1)?,
            p22: pair(c2, d2)?,
            k1: pair(c1, k)?,
            k2: pair(c2, k)?,
        })
    }

    pub fn det1(&self) -> Rational {
        &self.p11 * &self.p22 - &self.p12 * &self.p21
    }

    pub fn det2(&self) -> Rational {
        &self.k1 * &self.p21 - &self.p11 * &self.k2
    }
}

/// Holds when `Γ_1·D_1 < 0`, `Γ_2·D_2 < 0`,
/// `det[[p11, p12], [p21, p22]] <= 0` and `det[[k1, p11], [k2, p21]] < 0`.
pub fn uniruledness_check(input: &UniruledInput) -> Verdict {
    let det1 = input.det1();
    let det2 = input.det2();
    Verdict::from_witnesses(vec![
        witness("p11", input.p11.clone(), input.p11.is_negative()),
        witness("p22", input.p22.clone(), input.p22.is_negative()),
        witness("det1", det1.clone(), !det1.is_positive()),
        witness("det2", det2.clone(), det2.is_negative()),
    ])
}

/// `K - Σ coeff·class`.
pub fn interpolate_decomposition(
    k: &DivisorClass,
    fixed: &[(Rational, DivisorClass)],
) -> Result<DivisorClass> {
    let mut terms = vec![(int(1), k)];
    for (c, class) in fixed {
        if class.is_partial() {
            return Err(CalcError::Unsupported(
                "interpolation against a partial class".into(),
            ));
        }
        terms.push((-c.clone(), class));
    }
    combine(&k.space(), &terms)
}

/// Closed form of the coefficient of `δ_{i:c}` in the genus-11 interpolation.
pub fn d_closed_form(i: u32, c: u32) -> Result<Rational> {
    if i > 5 || c > 11 || (i == 0 && c < 2) {
        return Err(CalcError::InvalidIndex(format!("d_{{{i}:{c}}}")));
    }
    if i == 0 {
        let c = i64::from(c);
        return Ok(rat(c * c + c - 4, 2));
    }
    const BASE: [i64; 5] = [7, 16, 22, 26, 28];
    Ok(int(BASE[i as usize - 1]) + binomial(u64::from(i.abs_diff(c)) + 1, 2))
}

fn first_unknown(d: &DivisorClass) -> Option<BasisSymbol> {
    if !d.is_partial() {
        return None;
    }
    d.space()
        .all_symbols()
        .into_iter()
        .find(|s| !d.support().contains(s))
}

/// Holds when every coefficient of `D1 - D2` is nonnegative.
pub fn effective_difference(d1: &DivisorClass, d2: &DivisorClass) -> Result<Verdict> {
    for d in [d1, d2] {
        if let Some(symbol) = first_unknown(d) {
            return Err(CalcError::UnknownSupport { symbol });
        }
    }
    let diff = d1.sub(d2)?;
    let witnesses = diff
        .terms()
        .map(|(s, c)| witness(s.to_string(), c.clone(), !c.is_negative()))
        .collect();
    Ok(Verdict::from_witnesses(witnesses))
}

/// `K_spin(8) - (1/2)π^*(bn_8) - 8Θ_null(8)`.
pub fn spin8_residual() -> Result<DivisorClass> {
    interpolate_decomposition(
        &canonical_spin_class(8)?,
        &[
            (rat(1, 2), spin_pullback(&bn_class(8)?)?),
            (int(8), theta_null_class(8)?),
        ],
    )
}

/// `K_{M(11,11)} - D_11 - 2φ^*(bn_11)`, a pure boundary class.
pub fn genus11_residual() -> Result<DivisorClass> {
    static CACHE: ClassCache<()> = OnceLock::new();
    memoized(&CACHE, (), || {
        interpolate_decomposition(
            &canonical_mgn_class(11, 11)?,
            &[
                (int(1), pointed_pencil_class(11)?),
                (int(2), forgetful_pullback(&bn_class(11)?, 11)?),
            ],
        )
    })
}

/// The residual without its rational-tail part `Σ d_{0:c} δ_{0:c}`.
pub fn genus11_residual_without_tails() -> Result<DivisorClass> {
    let r = genus11_residual()?;
    let tails: Vec<_> = r
        .terms()
        .filter(|(s, _)| matches!(s, BasisSymbol::Boundary { genus: 0, .. }))
        .map(|(s, c)| (*s, c.clone()))
        .collect();
    r.sub(&DivisorClass::from_terms(r.space(), tails)?)
}

/// Coefficient of `δ_{i:T}` for the representative `T = {1..c}`, read off a
/// class on `M(g,n)`.
pub fn aggregate_coeff(d: &DivisorClass, i: u32, c: u32) -> Result<Rational> {
    let space: SpaceId = d.space();
    let sym = crate::basis::canonicalize_boundary(&space, i, LabelSet::range(1, c))?;
    d.known_coeff(&sym)
}
