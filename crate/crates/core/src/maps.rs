//! Pullbacks and pushforwards between Picard groups.
//!
//! Each map is given by the image of every generator. Partial inputs stay
//! partial: an unknown coefficient upstairs makes every symbol in its image
//! unknown downstairs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::basis::{
    canonicalize_boundary, collect_terms, int, BasisSymbol, DivisorClass, KnownSupport, LabelSet,
    Rational, SpaceId,
};
use crate::error::{CalcError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapId {
    /// `π: S+(g) -> M(g,0)`, pulled back.
    SpinCover(u32),
    /// `φ: M(g,n) -> M(g,0)`, pulled back.
    Forgetful(u32, u32),
    /// `φ_12: M(g,n) -> M(g,2)`, pulled back.
    ForgetTwoPoint(u32, u32),
    /// `j: M(g,1) -> M(g+1,0)` attaching an elliptic tail, pulled back.
    EllipticTail(u32),
    /// `D ↦ (φ_1)_*(D · δ_{0:12})` from `M(g,2)` to `M(g,1)`.
    SectionPushforward(u32),
}

impl MapId {
    pub fn source(&self) -> Result<SpaceId> {
        match *self {
            MapId::SpinCover(g) | MapId::Forgetful(g, _) => SpaceId::pointed(g, 0),
            MapId::ForgetTwoPoint(g, _) | MapId::SectionPushforward(g) => SpaceId::pointed(g, 2),
            MapId::EllipticTail(g) => SpaceId::pointed(g + 1, 0),
        }
    }

    pub fn target(&self) -> Result<SpaceId> {
        match *self {
            MapId::SpinCover(g) => SpaceId::spin(g),
            MapId::Forgetful(g, n) | MapId::ForgetTwoPoint(g, n) => SpaceId::pointed(g, n),
            MapId::EllipticTail(g) | MapId::SectionPushforward(g) => SpaceId::pointed(g, 1),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MapId::SpinCover(_) => "pi^*".into(),
            MapId::Forgetful(_, n) => format!("phi^*({n})"),
            MapId::ForgetTwoPoint(_, n) => format!("phi12^*({n})"),
            MapId::EllipticTail(_) => "j^*".into(),
            MapId::SectionPushforward(_) => "phi1_*".into(),
        }
    }

    pub fn apply(&self, d: &DivisorClass) -> Result<DivisorClass> {
        match *self {
            MapId::SpinCover(_) => spin_pullback(d),
            MapId::Forgetful(_, n) => forgetful_pullback(d, n),
            MapId::ForgetTwoPoint(_, n) => two_point_pullback(d, n),
            MapId::EllipticTail(_) => elliptic_tail_pullback(d),
            MapId::SectionPushforward(_) => section_product_pushforward(d),
        }
    }
}

type Image = Vec<(BasisSymbol, Rational)>;

fn unsupported(map: &MapId, symbol: &BasisSymbol) -> CalcError {
    CalcError::UnsupportedSymbol {
        map: map.name(),
        symbol: *symbol,
    }
}

fn expect_source(map: &MapId, d: &DivisorClass) -> Result<SpaceId> {
    let source = map.source()?;
    if d.space() != source {
        return Err(CalcError::SpaceMismatch {
            left: source,
            right: d.space(),
        });
    }
    map.target()
}

/// Applies `rule` to every stored term. For a partial input the images of all
/// unknown generators become unknown.
fn push_linear<F>(map: &MapId, d: &DivisorClass, rule: F) -> Result<DivisorClass>
where
    F: Fn(&BasisSymbol) -> Result<Image>,
{
    let target = expect_source(map, d)?;
    let mut images = Vec::new();
    for (sym, c) in d.terms() {
        for (img, m) in rule(sym)? {
            images.push((img, c * m));
        }
    }
    let coeffs = collect_terms(images);
    let support = match d.support() {
        KnownSupport::All => KnownSupport::All,
        known => {
            let mut lost = BTreeSet::new();
            for sym in d
                .space()
                .all_symbols()
                .iter()
                .filter(|s| !known.contains(s))
            {
                let image = rule(sym).map_err(|_| {
                    CalcError::Unsupported(format!(
                        "{} has no rule for {sym}, which lies in the unknown tail of the input",
                        map.name()
                    ))
                })?;
                lost.extend(image.into_iter().map(|(s, _)| s));
            }
            KnownSupport::Except(lost)
        }
    };
    Ok(DivisorClass::from_parts(target, coeffs, support))
}

/// `π^*`: `λ ↦ λ`, `δ_irr ↦ α_0 + 2β_0`, `δ_i ↦ α_i + β_i`.
pub fn spin_pullback(d: &DivisorClass) -> Result<DivisorClass> {
    let map = MapId::SpinCover(d.space().genus());
    push_linear(&map, d, |sym| match *sym {
        BasisSymbol::Lambda => Ok(vec![(BasisSymbol::Lambda, int(1))]),
        BasisSymbol::DeltaIrr => Ok(vec![
            (BasisSymbol::Alpha(0), int(1)),
            (BasisSymbol::Beta(0), int(2)),
        ]),
        BasisSymbol::Boundary { genus, labels } if labels.is_empty() && genus >= 1 => Ok(vec![
            (BasisSymbol::Alpha(genus), int(1)),
            (BasisSymbol::Beta(genus), int(1)),
        ]),
        _ => Err(unsupported(&map, sym)),
    })
}

/// Degree `2^{g-1}(2^g + 1)` of `π` restricted to the even component.
pub fn spin_cover_degree(g: u32) -> Result<BigInt> {
    SpaceId::spin(g)?;
    let half: BigInt = BigInt::from(1) << (g - 1);
    let full: BigInt = BigInt::from(1) << g;
    Ok(half * (full + 1))
}

/// `φ^*` from `M(g,0)` to `M(g,n)`: `δ_i` becomes the sum of every boundary
/// divisor whose genus pair is `{i, g-i}`.
pub fn forgetful_pullback(d: &DivisorClass, n: u32) -> Result<DivisorClass> {
    let g = d.space().genus();
    let map = MapId::Forgetful(g, n);
    let target = map.target()?;
    let boundary = target.boundary_symbols();
    push_linear(&map, d, |sym| match *sym {
        BasisSymbol::Lambda | BasisSymbol::DeltaIrr => Ok(vec![(*sym, int(1))]),
        BasisSymbol::Boundary { genus, labels } if labels.is_empty() && genus >= 1 => Ok(boundary
            .iter()
            .filter(|s| matches!(s, BasisSymbol::Boundary { genus: h, .. } if *h == genus))
            .map(|s| (*s, int(1)))
            .collect()),
        _ => Err(unsupported(&map, sym)),
    })
}

/// `φ_12^*` from `M(g,2)` to `M(g,n)`, forgetting the labels `3..n`.
pub fn two_point_pullback(d: &DivisorClass, n: u32) -> Result<DivisorClass> {
    let g = d.space().genus();
    let map = MapId::ForgetTwoPoint(g, n);
    if n < 2 {
        return Err(CalcError::InvalidSpace(format!(
            "{} needs n >= 2",
            map.name()
        )));
    }
    let target = map.target()?;
    let extra = LabelSet::subsets_of(LabelSet::range(3, n));
    push_linear(&map, d, |sym| match *sym {
        BasisSymbol::Lambda | BasisSymbol::DeltaIrr => Ok(vec![(*sym, int(1))]),
        BasisSymbol::Psi(j) => {
            let mut image = vec![(BasisSymbol::Psi(j), int(1))];
            let base = LabelSet::range(j, j);
            for t in extra.iter().filter(|t| !t.is_empty()) {
                image.push((canonicalize_boundary(&target, 0, base.union(*t))?, int(-1)));
            }
            Ok(image)
        }
        BasisSymbol::Boundary { genus, labels } => extra
            .iter()
            .map(|t| {
                Ok((
                    canonicalize_boundary(&target, genus, labels.union(*t))?,
                    int(1),
                ))
            })
            .collect(),
        _ => Err(unsupported(&map, sym)),
    })
}

/// `j^*` from `M(g+1,0)` to `M(g,1)`: only `λ`, `δ_irr` and `δ_1` have rules.
pub fn elliptic_tail_pullback(d: &DivisorClass) -> Result<DivisorClass> {
    let g = d.space().genus().saturating_sub(1);
    let map = MapId::EllipticTail(g);
    let target = map.target()?;
    push_linear(&map, d, |sym| match *sym {
        BasisSymbol::Lambda | BasisSymbol::DeltaIrr => Ok(vec![(*sym, int(1))]),
        BasisSymbol::Boundary { genus: 1, labels } if labels.is_empty() => Ok(vec![
            (BasisSymbol::Psi(1), int(-1)),
            (
                canonicalize_boundary(&target, g - 1, LabelSet::range(1, 1))?,
                int(1),
            ),
        ]),
        _ => Err(unsupported(&map, sym)),
    })
}

/// `D ↦ (φ_1)_*(D · δ_{0:12})`: `λ` and `δ_irr` pass through, the
/// `δ_{0:12}` coefficient lands on `-ψ`, and `ψ_i` are killed.
///
/// A partial input yields a class known only on `λ, ψ_1, δ_irr`.
pub fn section_product_pushforward(d: &DivisorClass) -> Result<DivisorClass> {
    let g = d.space().genus();
    let map = MapId::SectionPushforward(g);
    let target = expect_source(&map, d)?;
    let d012 = BasisSymbol::boundary(0, LabelSet::range(1, 2));
    let mut coeffs = BTreeMap::new();
    for (sym, c) in d.terms() {
        match *sym {
            BasisSymbol::Lambda | BasisSymbol::DeltaIrr => {
                coeffs.insert(*sym, c.clone());
            }
            BasisSymbol::Psi(_) => {}
            s if s == d012 => {
                coeffs.insert(BasisSymbol::Psi(1), -c.clone());
            }
            _ => return Err(unsupported(&map, sym)),
        }
    }
    let support = if d.is_partial() {
        KnownSupport::Only(
            [
                BasisSymbol::Lambda,
                BasisSymbol::Psi(1),
                BasisSymbol::DeltaIrr,
            ]
            .into_iter()
            .collect(),
        )
    } else {
        KnownSupport::All
    };
    Ok(DivisorClass::from_parts(target, coeffs, support))
}
