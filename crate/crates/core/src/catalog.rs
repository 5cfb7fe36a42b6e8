//! Named divisor classes: theta-null and canonical classes on the spin moduli
//! space, the canonical class of `M(g,n)`, Brill-Noether classes, the pointed
//! divisor `D_g`, and the node/cusp classes of plane curves.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_traits::Signed;

use crate::basis::{
    binomial, canonicalize_boundary, factorial, int, memoized, rat, BasisSymbol, ClassCache,
    DivisorClass, KnownSupport, LabelSet, Rational, SpaceId,
};
use crate::error::{CalcError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedClassId {
    ThetaNull(u32),
    KSpin(u32),
    KMgn(u32, u32),
    Bn(u32),
    Dg(u32),
    Node(u32),
    Cusp(u32),
    BClass11,
    BPrimeClass11(Box<[Rational; 5]>),
}

impl NamedClassId {
    pub fn class(&self) -> Result<DivisorClass> {
        match self {
            NamedClassId::ThetaNull(g) => theta_null_class(*g),
            NamedClassId::KSpin(g) => canonical_spin_class(*g),
            NamedClassId::KMgn(g, n) => canonical_mgn_class(*g, *n),
            NamedClassId::Bn(g) => bn_class(*g),
            NamedClassId::Dg(g) => pointed_pencil_class(*g),
            NamedClassId::Node(g) => node_class(*g),
            NamedClassId::Cusp(g) => cusp_class(*g),
            NamedClassId::BClass11 => b_class_11(),
            NamedClassId::BPrimeClass11(a) => b_prime_class_11(a),
        }
    }
}

fn delta(g: u32, i: u32) -> BasisSymbol {
    debug_assert!(i >= 1 && i <= g / 2);
    BasisSymbol::boundary(i, LabelSet::EMPTY)
}

/// `(1/4)λ - (1/16)α_0 - (1/2)Σ_{i>=1} β_i` on `S+(g)`.
pub fn theta_null_class(g: u32) -> Result<DivisorClass> {
    let space = SpaceId::spin(g)?;
    let mut terms = vec![
        (BasisSymbol::Lambda, rat(1, 4)),
        (BasisSymbol::Alpha(0), rat(-1, 16)),
    ];
    terms.extend((1..=g / 2).map(|i| (BasisSymbol::Beta(i), rat(-1, 2))));
    DivisorClass::from_terms(space, terms)
}

/// `13λ - 2α_0 - 3β_0 - 2Σ(α_i + β_i) - (α_1 + β_1)`.
pub fn canonical_spin_class(g: u32) -> Result<DivisorClass> {
    let space = SpaceId::spin(g)?;
    let mut terms = vec![
        (BasisSymbol::Lambda, int(13)),
        (BasisSymbol::Alpha(0), int(-2)),
        (BasisSymbol::Beta(0), int(-3)),
    ];
    for i in 1..=g / 2 {
        let c = if i == 1 { int(-3) } else { int(-2) };
        terms.push((BasisSymbol::Alpha(i), c.clone()));
        terms.push((BasisSymbol::Beta(i), c));
    }
    DivisorClass::from_terms(space, terms)
}

/// Canonical class of `M(g,n)`:
/// `13λ - 2δ_irr + Σψ_i - 2Σδ_{i:T} - Σ_T δ_{1:T}`.
///
/// The last sum runs over every `T`, including the ones whose canonical form
/// has genus part 1 only after reflection.
pub fn canonical_mgn_class(g: u32, n: u32) -> Result<DivisorClass> {
    static CACHE: ClassCache<(u32, u32)> = OnceLock::new();
    memoized(&CACHE, (g, n), || build_canonical_mgn(g, n))
}

fn build_canonical_mgn(g: u32, n: u32) -> Result<DivisorClass> {
    let space = SpaceId::pointed(g, n)?;
    let mut terms = vec![
        (BasisSymbol::Lambda, int(13)),
        (BasisSymbol::DeltaIrr, int(-2)),
    ];
    terms.extend((1..=n).map(|k| (BasisSymbol::Psi(k), int(1))));
    for sym in space.boundary_symbols() {
        let c = match sym {
            BasisSymbol::Boundary { genus: 1, .. } => int(-3),
            _ => int(-2),
        };
        terms.push((sym, c));
    }
    DivisorClass::from_terms(space, terms)
}

/// The printed Brill-Noether classes on `M(g,0)` for `g` in 7, 8, 11.
pub fn bn_class(g: u32) -> Result<DivisorClass> {
    let (lambda, irr, tail): (i64, i64, &[i64]) = match g {
        7 => (15, -2, &[-9, -15, -18]),
        8 => (22, -3, &[-14, -24, -30, -32]),
        11 => (7, -1, &[-5, -9, -12, -14, -15]),
        _ => {
            return Err(CalcError::Unsupported(format!(
                "no Brill-Noether class stored for genus {g}"
            )))
        }
    };
    let space = SpaceId::pointed(g, 0)?;
    let mut terms = vec![
        (BasisSymbol::Lambda, int(lambda)),
        (BasisSymbol::DeltaIrr, int(irr)),
    ];
    terms.extend(
        tail.iter()
            .enumerate()
            .map(|(k, c)| (delta(g, k as u32 + 1), int(*c))),
    );
    DivisorClass::from_terms(space, terms)
}

fn d_binomial(i: u32, card: u32) -> Rational {
    binomial(u64::from(i.abs_diff(card)) + 1, 2)
}

/// The divisor `D_g` of `g`-pointed curves with `h^0(x_1 + ... + x_g) >= 2` on `M(g,g)`:
/// `-λ + Σψ_i - Σ C(|#T - i| + 1, 2) δ_{i:T}`, one term per boundary divisor.
pub fn pointed_pencil_class(g: u32) -> Result<DivisorClass> {
    if g < 3 {
        return Err(CalcError::InvalidSpace(format!(
            "D_g needs g >= 3, got {g}"
        )));
    }
    static CACHE: ClassCache<u32> = OnceLock::new();
    memoized(&CACHE, g, || build_pointed_pencil(g))
}

fn build_pointed_pencil(g: u32) -> Result<DivisorClass> {
    let space = SpaceId::pointed(g, g)?;
    let mut terms = vec![(BasisSymbol::Lambda, int(-1))];
    terms.extend((1..=g).map(|k| (BasisSymbol::Psi(k), int(1))));
    for sym in space.boundary_symbols() {
        let BasisSymbol::Boundary { genus, labels } = sym else {
            unreachable!()
        };
        let here = d_binomial(genus, labels.len());
        let reflected = d_binomial(g - genus, labels.complement(g).len());
        if here != reflected {
            return Err(CalcError::Unsupported(format!(
                "D_{g} coefficient of {sym} depends on the presentation ({here} vs {reflected})"
            )));
        }
        terms.push((sym, -here));
    }
    DivisorClass::from_terms(space, terms)
}

fn check_node_genus(g: u32) -> Result<u32> {
    if g < 4 || g % 3 != 1 {
        return Err(CalcError::InvalidGenus(g));
    }
    Ok((2 * g + 7) / 3)
}

/// `c_g = 24(g-2)! / ((g-d+5)!(g-d+3)!(g-d+1)!)` with `d = (2g+7)/3`.
pub fn c_const(g: u32) -> Result<Rational> {
    let d = check_node_genus(g)?;
    // g - d >= -1 for every admissible g
    let r = i64::from(g) - i64::from(d);
    let fact = |k: i64| factorial(k as u64);
    let num = factorial(u64::from(g) - 2) * 24;
    let den = fact(r + 5) * fact(r + 3) * fact(r + 1);
    Ok(Rational::new(num, den))
}

/// Class of the divisor of nodes of plane curves on `M(g,2)`.
///
/// Only `λ, ψ_1, ψ_2, δ_irr, δ_{0:{1,2}}` are known; the rest of the class is
/// an unknown tail.
pub fn node_class(g: u32) -> Result<DivisorClass> {
    let c = c_const(g)?;
    let space = SpaceId::pointed(g, 2)?;
    let sixth = rat(i64::from(g) + 2, 6);
    let d012 = BasisSymbol::boundary(0, LabelSet::range(1, 2));
    let terms = [
        (BasisSymbol::Lambda, int(i64::from(g) + 4)),
        (BasisSymbol::Psi(1), sixth.clone()),
        (BasisSymbol::Psi(2), sixth.clone()),
        (BasisSymbol::DeltaIrr, -sixth),
        (d012, int(-i64::from(g))),
    ];
    let known: BTreeSet<BasisSymbol> = terms.iter().map(|(s, _)| *s).collect();
    DivisorClass::from_terms(space, terms.into_iter().map(|(s, v)| (s, v * &c)))?
        .with_support(KnownSupport::Only(known))
}

/// Class of the divisor of cusps of plane curves on `M(g,1)`:
/// `c_g[(g+4)λ + gψ - (g+2)/6 δ_irr - Σ_{i=1}^{g-1} (i+1)(g-i) δ_{i:{1}}]`.
pub fn cusp_class(g: u32) -> Result<DivisorClass> {
    let c = c_const(g)?;
    let space = SpaceId::pointed(g, 1)?;
    let gi = i64::from(g);
    let mut coeffs = BTreeMap::new();
    coeffs.insert(BasisSymbol::Lambda, int(gi + 4) * &c);
    coeffs.insert(BasisSymbol::Psi(1), int(gi) * &c);
    coeffs.insert(BasisSymbol::DeltaIrr, -rat(gi + 2, 6) * &c);
    let one = LabelSet::range(1, 1);
    for i in 1..g {
        let sym = canonicalize_boundary(&space, i, one)?;
        let ii = i64::from(i);
        let prev = coeffs.insert(sym, -int((ii + 1) * (gi - ii)) * &c);
        if prev.is_some() {
            return Err(CalcError::Unsupported(format!(
                "cusp class terms collide on {sym}"
            )));
        }
    }
    DivisorClass::from_terms(space, coeffs)
}

/// Intermediate scalars of the `C_2 · Node_g` computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeC2Pairing {
    pub theta_w: Rational,
    pub c1: Rational,
    pub value: Rational,
}

/// `C_2 · Node_g = -2θ·[W^2_d] + (d-1)c_1` with `θ·[W^2_d] = c_g(g-d+5)/4`
/// and `c_1 = 3g c_g / 4`.
pub fn node_c2_pairing(g: u32) -> Result<NodeC2Pairing> {
    let d = check_node_genus(g)?;
    let c = c_const(g)?;
    let theta_w = &c * rat(i64::from(g) - i64::from(d) + 5, 4);
    let c1 = &c * rat(3 * i64::from(g), 4);
    let value = int(-2) * &theta_w + int(i64::from(d) - 1) * &c1;
    Ok(NodeC2Pairing { theta_w, c1, value })
}

/// `B = bn_11 + 4δ_3 + 7δ_4 + 8δ_5` on `M(11,0)`.
pub fn b_class_11() -> Result<DivisorClass> {
    let bn = bn_class(11)?;
    let extra = DivisorClass::from_terms(
        bn.space(),
        [
            (delta(11, 3), int(4)),
            (delta(11, 4), int(7)),
            (delta(11, 5), int(8)),
        ],
    )?;
    bn.add(&extra)
}

/// `B' = 2 bn_11 + Σ a_i δ_i` with every `a_i >= 0`.
pub fn b_prime_class_11(a: &[Rational; 5]) -> Result<DivisorClass> {
    for (k, ak) in a.iter().enumerate() {
        if ak.is_negative() {
            return Err(CalcError::NegativeCoefficient {
                name: format!("a_{}", k + 1),
                value: crate::basis::fmt_rational(ak),
            });
        }
    }
    let bn = bn_class(11)?;
    let extra = DivisorClass::from_terms(
        bn.space(),
        a.iter()
            .enumerate()
            .map(|(k, ak)| (delta(11, k as u32 + 1), ak.clone())),
    )?;
    bn.scaled(&int(2)).add(&extra)
}
