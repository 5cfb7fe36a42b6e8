//! Test curves from fibered surfaces, and the catalog of every pencil used in
//! the computations.
//!
//! A fibration `S -> P^1` with fibers of genus `g` meets `λ` in
//! `χ(O_S) + g - 1` and the whole boundary in `c_2(S) + 4(g-1)`; sections
//! become marked points with `ψ = -(self-intersection)`.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::basis::{fmt_rational, int, rat, BasisSymbol, CurveClass, LabelSet, Rational, SpaceId};
use crate::error::{CalcError, Result};

/// `β_0` contribution of a fiber with one node blown up.
pub const NODE_FIBER_BETA0: i64 = 1;

/// `β_0` contribution of a fiber passing through an admissible cover (`7/2`).
pub fn admissible_cover_fiber_beta0() -> Rational {
    rat(7, 2)
}

/// `c_2 = 12χ - K^2`.
pub fn noether_c2(chi: i64, k2: i64) -> i64 {
    12 * chi - k2
}

/// `χ(O_S)` and `K_S^2` of a smooth surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub k2: i64,
}

impl SurfaceInvariants {
    pub fn c2(&self) -> i64 {
        noether_c2(self.chi, self.k2)
    }

    /// Blowing up `k` points leaves `χ` alone and lowers `K^2` by `k`.
    pub fn blow_up(&self, k: i64) -> Self {
        Self {
            chi: self.chi,
            k2: self.k2 - k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationRecipe {
    pub g: u32,
    pub chi: i64,
    pub c2: i64,
    /// `(label, self-intersection)` of each section.
    pub sections: Vec<(u32, i64)>,
    /// Explicit boundary pairings other than `δ_irr`.
    pub boundary_hits: Vec<(BasisSymbol, Rational)>,
    pub base_change_degree: u32,
}

impl FibrationRecipe {
    pub fn new(g: u32, surface: SurfaceInvariants) -> Self {
        Self {
            g,
            chi: surface.chi,
            c2: surface.c2(),
            sections: Vec::new(),
            boundary_hits: Vec::new(),
            base_change_degree: 1,
        }
    }

    pub fn sections(mut self, sections: impl IntoIterator<Item = (u32, i64)>) -> Self {
        self.sections.extend(sections);
        self
    }

    pub fn hit(mut self, sym: BasisSymbol, value: Rational) -> Self {
        self.boundary_hits.push((sym, value));
        self
    }

    fn degree(&self) -> Rational {
        int(i64::from(self.base_change_degree))
    }

    pub fn lambda(&self) -> Rational {
        self.degree() * int(self.chi + i64::from(self.g) - 1)
    }

    pub fn total_boundary(&self) -> Rational {
        self.degree() * int(self.c2 + 4 * (i64::from(self.g) - 1))
    }

    fn explicit_hits(&self) -> Rational {
        self.degree()
            * self
                .boundary_hits
                .iter()
                .map(|(_, v)| v.clone())
                .sum::<Rational>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinFibrationRecipe {
    pub base: FibrationRecipe,
    pub beta0: Rational,
}

/// Intersection vector of the curve swept by a fibration on `M(g,n)`.
///
/// A base change of degree `d` multiplies every number, section
/// self-intersections included.
pub fn surface_pencil_curve(space: SpaceId, recipe: &FibrationRecipe) -> Result<CurveClass> {
    if space.is_spin() || space.genus() != recipe.g {
        return Err(CalcError::InvalidSpace(format!(
            "genus-{} fibration does not map to {space}",
            recipe.g
        )));
    }
    if recipe.base_change_degree == 0 {
        return Err(CalcError::InvalidIndex(
            "base change degree must be positive".into(),
        ));
    }
    let d = recipe.degree();
    let total = recipe.total_boundary();
    let hits = recipe.explicit_hits();
    let irr = &total - &hits;
    if irr.is_negative() {
        return Err(CalcError::NegativeBoundary {
            total: fmt_rational(&total),
            hits: fmt_rational(&hits),
        });
    }
    let mut curve = CurveClass::from_terms(
        space,
        [
            (BasisSymbol::Lambda, recipe.lambda()),
            (BasisSymbol::DeltaIrr, irr),
        ],
    )?;
    let mut seen = LabelSet::EMPTY;
    for (label, self_int) in &recipe.sections {
        if seen.contains(*label) {
            return Err(CalcError::DuplicateLabel(*label));
        }
        seen = seen.union(LabelSet::from_labels([*label])?);
        curve.add_pairing(BasisSymbol::Psi(*label), -(&d * int(*self_int)))?;
    }
    for (sym, v) in &recipe.boundary_hits {
        curve.add_pairing(*sym, &d * v)?;
    }
    Ok(curve)
}

/// Intersection vector on `S+(g)`: `α_0 + 2β_0` absorbs the boundary degree
/// not claimed by explicit hits.
pub fn spin_pencil_curve(recipe: &SpinFibrationRecipe) -> Result<CurveClass> {
    let base = &recipe.base;
    let space = SpaceId::spin(base.g)?;
    if !base.sections.is_empty() {
        return Err(CalcError::InvalidSpace(format!(
            "{space} carries no marked points"
        )));
    }
    let d = base.degree();
    let beta0 = &d * &recipe.beta0;
    if beta0.is_negative() {
        return Err(CalcError::NegativeCoefficient {
            name: "beta0".into(),
            value: fmt_rational(&beta0),
        });
    }
    let total = base.total_boundary();
    let claimed = base.explicit_hits() + int(2) * &beta0;
    let alpha0 = &total - &claimed;
    if alpha0.is_negative() {
        return Err(CalcError::NegativeBoundary {
            total: fmt_rational(&total),
            hits: fmt_rational(&claimed),
        });
    }
    let mut curve = CurveClass::from_terms(
        space,
        [
            (BasisSymbol::Lambda, base.lambda()),
            (BasisSymbol::Alpha(0), alpha0),
            (BasisSymbol::Beta(0), beta0),
        ],
    )?;
    for (sym, v) in &base.boundary_hits {
        curve.add_pairing(*sym, &d * v)?;
    }
    Ok(curve)
}

/// Pulls a curve back along a degree-`d` cover of its base and turns
/// multisections into new marked points.
///
/// Each promoted entry is `(label, self-intersection on the cover, ramification)`
/// and contributes `ψ_label = -self + ramification`.
pub fn base_change_curve(
    curve: &CurveClass,
    d: u32,
    promoted: &[(u32, i64, i64)],
) -> Result<CurveClass> {
    if d == 0 {
        return Err(CalcError::InvalidIndex(
            "base change degree must be positive".into(),
        ));
    }
    let space = curve.space();
    if space.is_spin() && !promoted.is_empty() {
        return Err(CalcError::InvalidSpace(format!(
            "{space} carries no marked points"
        )));
    }
    let mut n = space.marked();
    let mut fresh = LabelSet::EMPTY;
    for (label, _, _) in promoted {
        if *label <= space.marked() || fresh.contains(*label) {
            return Err(CalcError::DuplicateLabel(*label));
        }
        fresh = fresh.union(LabelSet::from_labels([*label])?);
        n = n.max(*label);
    }
    let target = if space.is_spin() {
        space
    } else {
        SpaceId::pointed(space.genus(), n)?
    };
    let mut out = curve.scaled(&int(i64::from(d))).relabel_space(target);
    for (label, self_int, ram) in promoted {
        out.add_pairing(BasisSymbol::Psi(*label), int(ram - self_int))?;
    }
    Ok(out)
}

/// Stable names of the catalog pencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogId {
    /// Nodal canonical surfaces with a spin structure, `7 <= g <= 9`.
    SpinK3(u32),
    /// Genus-4 pencil on a quadric cone.
    Cone4,
    /// Lefschetz pencil of 7-nodal plane septics, with `n` base points marked.
    Septic8(u32),
    /// Genus-8 pencil on a K3 surface through two admissible covers.
    SpinDoubleElliptic,
    /// Lefschetz pencil on a K3 surface with `g` of the base points marked.
    K3Pointed(u32),
    /// One `Γ_ij` of the genus-`g` double-cover construction.
    OrbitComponent(u32, u32, u32),
    /// The symmetric-group average of the `Γ_ij`.
    OrbitAverage(u32),
    /// Genus-11 pencil with a rational tail carrying the labels `1..=c`.
    RT(u32),
    /// Unpointed Lefschetz pencil of genus-11 curves on a K3 surface.
    Lefschetz11,
    /// Genus-5 sextic pencil with 13 marked points, before the last base change.
    SexticGamma,
    /// `SexticGamma` after a degree-6 base change promoting a multisection.
    SexticU,
    /// Genus-8 curves glued to a moving elliptic tail, `n` points marked.
    Glue78(u32),
    /// Genus-7 pencil covering the pulled-back node divisor.
    SepticsG7A,
    /// Genus-7 pencil of plane septics through 26 points.
    SepticsG7B,
    /// Two-pointed test curve used against the node divisor.
    TwoPointTest(u32),
}

impl CatalogId {
    /// One representative of every family, for listings.
    pub fn examples() -> Vec<CatalogId> {
        use CatalogId::*;
        vec![
            SpinK3(8),
            Cone4,
            Septic8(12),
            SpinDoubleElliptic,
            K3Pointed(11),
            OrbitComponent(10, 1, 2),
            OrbitAverage(10),
            RT(2),
            Lefschetz11,
            SexticGamma,
            SexticU,
            Glue78(12),
            SepticsG7A,
            SepticsG7B,
            TwoPointTest(7),
        ]
    }

    pub fn space(&self) -> Result<SpaceId> {
        use CatalogId::*;
        match *self {
            SpinK3(g) => SpaceId::spin(g),
            Cone4 => SpaceId::spin(4),
            SpinDoubleElliptic => SpaceId::spin(8),
            Septic8(n) => SpaceId::pointed(8, n),
            K3Pointed(g) | OrbitComponent(g, _, _) | OrbitAverage(g) => SpaceId::pointed(g, g),
            RT(_) => SpaceId::pointed(11, 11),
            Lefschetz11 => SpaceId::pointed(11, 0),
            SexticGamma => SpaceId::pointed(5, 13),
            SexticU => SpaceId::pointed(5, 14),
            Glue78(n) => SpaceId::pointed(8, n),
            SepticsG7A | SepticsG7B => SpaceId::pointed(7, 13),
            TwoPointTest(g) => SpaceId::pointed(g, 2),
        }
    }

    pub fn curve(&self) -> Result<CurveClass> {
        catalog_curve(*self)
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CatalogId::*;
        match self {
            SpinK3(g) => write!(f, "SpinK3({g})"),
            Cone4 => write!(f, "Cone4"),
            Septic8(n) => write!(f, "Septic8({n})"),
            SpinDoubleElliptic => write!(f, "SpinDoubleElliptic"),
            K3Pointed(g) => write!(f, "K3Pointed({g})"),
            OrbitComponent(g, i, j) => write!(f, "OrbitComponent({g},{i},{j})"),
            OrbitAverage(g) => write!(f, "OrbitAverage({g})"),
            RT(c) => write!(f, "RT({c})"),
            Lefschetz11 => write!(f, "Lefschetz11"),
            SexticGamma => write!(f, "SexticGamma"),
            SexticU => write!(f, "SexticU"),
            Glue78(n) => write!(f, "Glue78({n})"),
            SepticsG7A => write!(f, "SepticsG7A"),
            SepticsG7B => write!(f, "SepticsG7B"),
            TwoPointTest(g) => write!(f, "TwoPointTest({g})"),
        }
    }
}

impl FromStr for CatalogId {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self> {
        use CatalogId::*;
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || CalcError::UnknownId(s.to_string());
        let (name, args) = match compact.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
                let args = inner
                    .split(',')
                    .map(|a| a.parse::<u32>().map_err(|_| unknown()))
                    .collect::<Result<Vec<_>>>()?;
                (name.to_string(), args)
            }
            None => (compact.clone(), Vec::new()),
        };
        let id = match (name.as_str(), args.as_slice()) {
            ("SpinK3", [g]) => SpinK3(*g),
            ("Cone4", []) => Cone4,
            ("Septic8", [n]) => Septic8(*n),
            ("SpinDoubleElliptic", []) => SpinDoubleElliptic,
            ("K3Pointed", [g]) => K3Pointed(*g),
            ("OrbitComponent", [g, i, j]) => OrbitComponent(*g, *i, *j),
            ("OrbitAverage", [g]) => OrbitAverage(*g),
            ("RT", [c]) => RT(*c),
            ("Lefschetz11", []) => Lefschetz11,
            ("SexticGamma", []) => SexticGamma,
            ("SexticU", []) => SexticU,
            ("Glue78", [n]) => Glue78(*n),
            ("SepticsG7A", []) => SepticsG7A,
            ("SepticsG7B", []) => SepticsG7B,
            ("TwoPointTest", [g]) => TwoPointTest(*g),
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

fn out_of_range(id: CatalogId) -> CalcError {
    CalcError::UnknownId(format!("{id} (parameter out of range)"))
}

fn k3_with_nodes(g: u32, nodes: i64) -> SurfaceInvariants {
    // K3 surface, then one blow-up per base point of the pencil
    SurfaceInvariants { chi: 2, k2: 0 }.blow_up(nodes.max(0) + 2 * i64::from(g) - 2)
}

/// Recipe of a spin catalog pencil.
pub fn spin_recipe(id: CatalogId) -> Result<SpinFibrationRecipe> {
    use CatalogId::*;
    match id {
        SpinK3(g) if (7..=9).contains(&g) => Ok(SpinFibrationRecipe {
            // canonical surface with 8 nodes, resolved: χ = 8, K^2 = 16
            base: FibrationRecipe::new(g, SurfaceInvariants { chi: 8, k2: 16 }),
            beta0: int(8 * NODE_FIBER_BETA0),
        }),
        Cone4 => Ok(SpinFibrationRecipe {
            base: FibrationRecipe::new(4, SurfaceInvariants { chi: 1, k2: 8 }.blow_up(18)),
            beta0: int(NODE_FIBER_BETA0),
        }),
        SpinDoubleElliptic => Ok(SpinFibrationRecipe {
            base: FibrationRecipe::new(8, k3_with_nodes(8, 0)),
            beta0: admissible_cover_fiber_beta0() * int(2),
        }),
        _ => Err(out_of_range(id)),
    }
}

/// Recipe of a pointed catalog pencil, when the surface data determine it.
pub fn pointed_recipe(id: CatalogId) -> Result<FibrationRecipe> {
    use CatalogId::*;
    let d012 = BasisSymbol::boundary(0, LabelSet::range(1, 2));
    match id {
        Septic8(n) if n <= 21 => Ok(FibrationRecipe::new(
            8,
            SurfaceInvariants { chi: 1, k2: 9 }.blow_up(28),
        )
        .sections((1..=n).map(|l| (l, -1)))),
        K3Pointed(g) if (3..=11).contains(&g) && g != 10 => {
            Ok(FibrationRecipe::new(g, k3_with_nodes(g, 0)).sections((1..=g).map(|l| (l, -1))))
        }
        Lefschetz11 => Ok(FibrationRecipe::new(11, k3_with_nodes(11, 0))),
        // double cover of the sextic pencil's base, already blown up
        SexticGamma => Ok(FibrationRecipe::new(5, SurfaceInvariants { chi: 6, k2: 6 })
            .sections([(1, -5), (2, -5)])
            .sections((3..=13).map(|l| (l, -2)))
            .hit(d012, int(2))),
        SepticsG7B => Ok(
            FibrationRecipe::new(7, SurfaceInvariants { chi: 1, k2: 9 }.blow_up(26))
                .sections((1..=13).map(|l| (l, -1))),
        ),
        _ => Err(out_of_range(id)),
    }
}

/// Surface behind `SepticsG7A` before its degree-7 base change.
pub fn septics_g7a_base() -> Result<CurveClass> {
    let recipe = FibrationRecipe::new(7, SurfaceInvariants { chi: 8, k2: 14 })
        .sections([(1, -5), (2, -5)])
        .sections((3..=12).map(|l| (l, -2)))
        .hit(BasisSymbol::boundary(0, LabelSet::range(1, 2)), int(2));
    surface_pencil_curve(SpaceId::pointed(7, 12)?, &recipe)
}

fn printed(space: SpaceId, terms: Vec<(BasisSymbol, Rational)>) -> Result<CurveClass> {
    CurveClass::from_terms(space, terms)
}

/// The intersection vector of a catalog pencil.
pub fn catalog_curve(id: CatalogId) -> Result<CurveClass> {
    use CatalogId::*;
    let space = id.space()?;
    match id {
        SpinK3(_) | Cone4 | SpinDoubleElliptic => spin_pencil_curve(&spin_recipe(id)?),
        Septic8(_) | K3Pointed(_) | Lefschetz11 | SexticGamma | SepticsG7B => {
            surface_pencil_curve(space, &pointed_recipe(id)?)
        }
        OrbitComponent(g, i, j) => {
            if !(3..=10).contains(&g) || g == 9 || i == 0 || i >= j || j > g {
                return Err(out_of_range(id));
            }
            let gi = i64::from(g);
            let mut terms = vec![
                (BasisSymbol::Lambda, int(2 * (gi + 1))),
                (BasisSymbol::DeltaIrr, int(2 * (6 * gi + 17))),
                (
                    BasisSymbol::boundary(0, LabelSet::from_labels([i, j])?),
                    int(2),
                ),
            ];
            terms.extend((1..=g).map(|l| {
                (
                    BasisSymbol::Psi(l),
                    if l == i || l == j { int(5) } else { int(2) },
                )
            }));
            printed(space, terms)
        }
        OrbitAverage(g) => {
            if !(3..=10).contains(&g) || g == 9 {
                return Err(out_of_range(id));
            }
            let mut sum = CurveClass::zero(space);
            for j in 2..=g {
                for i in 1..j {
                    sum = sum.add(&catalog_curve(OrbitComponent(g, i, j))?)?;
                }
            }
            Ok(sum.scaled(&rat(1, i64::from(g * (g - 1)))))
        }
        RT(c) => {
            if !(2..=11).contains(&c) {
                return Err(out_of_range(id));
            }
            let t = LabelSet::range(1, c);
            let mut terms = vec![
                (BasisSymbol::Lambda, int(12)),
                (BasisSymbol::DeltaIrr, int(84)),
                (BasisSymbol::boundary(0, t), int(-1)),
            ];
            terms.extend((c + 1..=11).map(|l| (BasisSymbol::Psi(l), int(1))));
            printed(space, terms)
        }
        SexticU => base_change_curve(&catalog_curve(SexticGamma)?, 6, &[(14, 0, 10)]),
        Glue78(n) => {
            let mut terms = vec![
                (BasisSymbol::DeltaIrr, int(-14)),
                (BasisSymbol::boundary(1, LabelSet::EMPTY), int(1)),
            ];
            terms.extend((1..=n).map(|l| (BasisSymbol::Psi(l), int(1))));
            printed(space, terms)
        }
        SepticsG7A => {
            let mut terms = vec![
                (BasisSymbol::Lambda, int(98)),
                (BasisSymbol::DeltaIrr, int(728)),
                (BasisSymbol::boundary(0, LabelSet::range(1, 2)), int(14)),
                (BasisSymbol::Psi(1), int(35)),
                (BasisSymbol::Psi(2), int(35)),
                (BasisSymbol::Psi(13), int(24)),
            ];
            terms.extend((3..=12).map(|l| (BasisSymbol::Psi(l), int(14))));
            printed(space, terms)
        }
        TwoPointTest(g) => printed(
            space,
            vec![
                (BasisSymbol::Psi(1), int(1)),
                (BasisSymbol::Psi(2), int(2 * i64::from(g) - 1)),
                (BasisSymbol::boundary(0, LabelSet::range(1, 2)), int(1)),
            ],
        ),
    }
}
