//! Moduli-space descriptors, the generators of their Picard groups, and the
//! exact linear algebra (divisor classes, curve classes, pairing) built on them.
//!
//! A pointed-curve space `M(g,n)` has generators `λ, ψ_1..ψ_n, δ_irr` and the
//! boundary classes `δ_{i:T}`; an even spin space `S+(g)` has `λ, α_i, β_i` for
//! `0 <= i <= g/2`. Every number is an exact rational.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CalcError, Result};

pub type Rational = BigRational;

/// Largest number of marked points a [`LabelSet`] can hold.
pub const MAX_LABELS: u32 = 63;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` with `q` omitted when it is 1.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceKind {
    PointedCurves,
    EvenSpin,
}

/// Which moduli space a class or curve lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceId {
    kind: SpaceKind,
    g: u32,
    n: u32,
}

impl SpaceId {
    pub fn pointed(g: u32, n: u32) -> Result<Self> {
        if g < 2 {
            return Err(CalcError::InvalidSpace(format!("genus {g} < 2")));
        }
        if n > MAX_LABELS {
            return Err(CalcError::InvalidSpace(format!(
                "{n} marked points exceeds the supported maximum {MAX_LABELS}"
            )));
        }
        Ok(Self {
            kind: SpaceKind::PointedCurves,
            g,
            n,
        })
    }

    pub fn spin(g: u32) -> Result<Self> {
        if g < 2 {
            return Err(CalcError::InvalidSpace(format!("genus {g} < 2")));
        }
        Ok(Self {
            kind: SpaceKind::EvenSpin,
            g,
            n: 0,
        })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn marked(&self) -> u32 {
        self.n
    }

    pub fn is_spin(&self) -> bool {
        self.kind == SpaceKind::EvenSpin
    }

    pub fn half_genus(&self) -> u32 {
        self.g / 2
    }

    fn expect_kind(&self, kind: SpaceKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(CalcError::InvalidSpace(format!(
                "operation not defined on {self}"
            )))
        }
    }

    /// Fails unless `sym` is a canonical generator of this space.
    pub fn check_symbol(&self, sym: &BasisSymbol) -> Result<()> {
        let bad = |why: &str| Err(CalcError::InvalidIndex(format!("{sym} on {self}: {why}")));
        match (self.kind, sym) {
            (_, BasisSymbol::Lambda) => Ok(()),
            (SpaceKind::PointedCurves, BasisSymbol::DeltaIrr) => Ok(()),
            (SpaceKind::PointedCurves, BasisSymbol::Psi(k)) => {
                if *k >= 1 && *k <= self.n {
                    Ok(())
                } else {
                    bad("label out of range")
                }
            }
            (SpaceKind::PointedCurves, BasisSymbol::Boundary { genus, labels }) => {
                let canon = canonicalize_boundary(self, *genus, *labels)?;
                if &canon == sym {
                    Ok(())
                } else {
                    bad("boundary symbol not in canonical form")
                }
            }
            (SpaceKind::EvenSpin, BasisSymbol::Alpha(i) | BasisSymbol::Beta(i)) => {
                if *i <= self.half_genus() {
                    Ok(())
                } else {
                    bad("index exceeds g/2")
                }
            }
            _ => bad("symbol family does not exist on this space"),
        }
    }

    /// Every canonical boundary symbol of a pointed-curve space.
    /// Exponential in `n`.
    pub fn boundary_symbols(&self) -> Vec<BasisSymbol> {
        if self.kind != SpaceKind::PointedCurves {
            return Vec::new();
        }
        static CACHE: OnceLock<Mutex<HashMap<SpaceId, Arc<Vec<BasisSymbol>>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(hit) = cache.lock().expect("cache lock").get(self) {
            return hit.as_ref().clone();
        }
        let mut out = Vec::new();
        for genus in 0..=self.half_genus() {
            for labels in LabelSet::all_subsets(self.n) {
                if let Ok(sym) = canonicalize_boundary(self, genus, labels) {
                    out.push(sym);
                }
            }
        }
        out.sort_unstable_by_key(BasisSymbol::sort_key);
        out.dedup();
        cache
            .lock()
            .expect("cache lock")
            .insert(*self, Arc::new(out.clone()));
        out
    }

    /// Every generator of the space, in basis order. Exponential in `n`.
    pub fn all_symbols(&self) -> Vec<BasisSymbol> {
        let mut out = vec![BasisSymbol::Lambda];
        match self.kind {
            SpaceKind::PointedCurves => {
                out.extend((1..=self.n).map(BasisSymbol::Psi));
                out.push(BasisSymbol::DeltaIrr);
                out.extend(self.boundary_symbols());
            }
            SpaceKind::EvenSpin => {
                for i in 0..=self.half_genus() {
                    out.push(BasisSymbol::Alpha(i));
                    out.push(BasisSymbol::Beta(i));
                }
            }
        }
        out
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::PointedCurves => write!(f, "M({},{})", self.g, self.n),
            SpaceKind::EvenSpin => write!(f, "S+({})", self.g),
        }
    }
}

impl FromStr for SpaceId {
    type Err = CalcError;

    /// Accepts `M(g,n)` and `S+(g)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || {
            CalcError::InvalidSpace(format!(
                "cannot parse space '{s}' (expected M(g,n) or S+(g))"
            ))
        };
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        if let Some(inner) = compact.strip_prefix("M(").and_then(|r| r.strip_suffix(')')) {
            let (g, n) = inner.split_once(',').ok_or_else(bad)?;
            SpaceId::pointed(num(g)?, num(n)?)
        } else if let Some(inner) = compact
            .strip_prefix("S+(")
            .and_then(|r| r.strip_suffix(')'))
        {
            SpaceId::spin(num(inner)?)
        } else {
            Err(bad())
        }
    }
}

/// A subset of the marked labels `{1..n}`, stored as a bitmask.
///
/// Ordered by cardinality, then by the smallest label in which two sets differ
/// (the set containing it comes first), so `{1,2} < {1,3} < {2,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LabelSet(u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Result<Self> {
        let mut bits = 0u64;
        for l in labels {
            if l == 0 || l > MAX_LABELS {
                return Err(CalcError::InvalidIndex(format!("label {l} out of range")));
            }
            bits |= 1 << (l - 1);
        }
        Ok(LabelSet(bits))
    }

    /// `{lo..=hi}` (empty when `lo > hi`).
    pub fn range(lo: u32, hi: u32) -> Self {
        let mut bits = 0u64;
        for l in lo.max(1)..=hi.min(MAX_LABELS) {
            bits |= 1 << (l - 1);
        }
        LabelSet(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, label: u32) -> bool {
        (1..=MAX_LABELS).contains(&label) && self.0 & (1 << (label - 1)) != 0
    }

    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn complement(&self, n: u32) -> LabelSet {
        LabelSet(Self::range(1, n).0 & !self.0)
    }

    pub fn within(&self, n: u32) -> bool {
        self.0 & !Self::range(1, n).0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=MAX_LABELS).filter(move |l| self.contains(*l))
    }

    /// All `2^n` subsets of `{1..n}`.
    pub fn all_subsets(n: u32) -> impl Iterator<Item = LabelSet> {
        (0..(1u64 << n)).map(LabelSet)
    }

    /// All subsets of `{1..n}` with exactly `size` elements.
    pub fn subsets_of_size(n: u32, size: u32) -> impl Iterator<Item = LabelSet> {
        Self::all_subsets(n).filter(move |s| s.len() == size)
    }

    /// All subsets of `base` (including empty and `base`).
    pub fn subsets_of(base: LabelSet) -> Vec<LabelSet> {
        let elems: Vec<u32> = base.iter().collect();
        (0..(1u64 << elems.len()))
            .map(|mask| {
                let mut bits = 0u64;
                for (k, l) in elems.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        bits |= 1 << (l - 1);
                    }
                }
                LabelSet(bits)
            })
            .collect()
    }
}

impl Ord for LabelSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for LabelSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One generator of a Picard-group basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisSymbol {
    Lambda,
    Psi(u32),
    DeltaIrr,
    Boundary { genus: u32, labels: LabelSet },
    Alpha(u32),
    Beta(u32),
}

impl BasisSymbol {
    fn family_rank(&self) -> u8 {
        match self {
            BasisSymbol::Lambda => 0,
            BasisSymbol::Psi(_) => 1,
            BasisSymbol::DeltaIrr => 2,
            BasisSymbol::Boundary { .. } => 3,
            BasisSymbol::Alpha(_) | BasisSymbol::Beta(_) => 4,
        }
    }

    /// Shorthand for `Boundary` with explicit labels; not canonicalized.
    pub fn boundary(genus: u32, labels: LabelSet) -> Self {
        BasisSymbol::Boundary { genus, labels }
    }
}

impl BasisSymbol {
    /// Packs the basis order into one integer: family, then index or genus,
    /// then (for boundary symbols) cardinality and the lowest differing label.
    fn sort_key(&self) -> u128 {
        let (primary, secondary, tertiary): (u32, u8, u64) = match *self {
            BasisSymbol::Lambda | BasisSymbol::DeltaIrr => (0, 0, 0),
            BasisSymbol::Psi(k) => (k, 0, 0),
            // a set holding the lowest differing label sorts first
            BasisSymbol::Boundary { genus, labels } => {
                (genus, labels.len() as u8, !labels.bits().reverse_bits())
            }
            BasisSymbol::Alpha(i) => (i, 0, 0),
            BasisSymbol::Beta(i) => (i, 1, 0),
        };
        (u128::from(self.family_rank()) << 120)
            | (u128::from(primary) << 72)
            | (u128::from(secondary) << 64)
            | u128::from(tertiary)
    }
}

impl Ord for BasisSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for BasisSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::Lambda => write!(f, "l"),
            BasisSymbol::Psi(k) => write!(f, "psi_{k}"),
            BasisSymbol::DeltaIrr => write!(f, "dirr"),
            BasisSymbol::Boundary { genus, labels } if labels.is_empty() => {
                write!(f, "d{{{genus}:}}")
            }
            BasisSymbol::Boundary { genus, labels } => write!(f, "d{{{genus}:{labels}}}"),
            BasisSymbol::Alpha(i) => write!(f, "a_{i}"),
            BasisSymbol::Beta(i) => write!(f, "b_{i}"),
        }
    }
}

/// Canonical encoding of the boundary divisor `δ_{i:T} = δ_{g-i:T^c}`.
///
/// The encoding with the smaller genus part wins; when `i = g - i` the one
/// whose label set contains label 1 wins. A genus-zero side must carry at
/// least two labels.
pub fn canonicalize_boundary(space: &SpaceId, genus: u32, labels: LabelSet) -> Result<BasisSymbol> {
    space.expect_kind(SpaceKind::PointedCurves)?;
    let g = space.genus();
    let n = space.marked();
    if genus > g {
        return Err(CalcError::InvalidIndex(format!(
            "boundary genus {genus} exceeds g = {g}"
        )));
    }
    if !labels.within(n) {
        return Err(CalcError::InvalidIndex(format!(
            "label set {labels} not contained in {{1..{n}}}"
        )));
    }
    let other_genus = g - genus;
    let other_labels = labels.complement(n);
    let stable = |h: u32, t: LabelSet| h > 0 || t.len() >= 2;
    if !stable(genus, labels) || !stable(other_genus, other_labels) {
        return Err(CalcError::InvalidIndex(format!(
            "delta_{{{genus}:{labels}}} on {space}: genus-0 side needs at least two marked points"
        )));
    }
    let keep = match genus.cmp(&other_genus) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => n == 0 || labels.contains(1),
    };
    Ok(if keep {
        BasisSymbol::boundary(genus, labels)
    } else {
        BasisSymbol::boundary(other_genus, other_labels)
    })
}

/// Which coefficients of a class are actually known.
///
/// Classes printed with an unspecified tail are *partial*: only symbols in the
/// known support may be paired against.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum KnownSupport {
    #[default]
    All,
    /// Only these symbols are known.
    Only(BTreeSet<BasisSymbol>),
    /// Everything except these symbols is known.
    Except(BTreeSet<BasisSymbol>),
}

impl KnownSupport {
    pub fn contains(&self, sym: &BasisSymbol) -> bool {
        match self {
            KnownSupport::All => true,
            KnownSupport::Only(s) => s.contains(sym),
            KnownSupport::Except(s) => !s.contains(sym),
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, KnownSupport::All)
    }

    pub fn intersect(&self, other: &KnownSupport) -> KnownSupport {
        use KnownSupport::*;
        match (self, other) {
            (All, x) | (x, All) => x.clone(),
            (Only(a), Only(b)) => Only(a.intersection(b).copied().collect()),
            (Only(a), Except(b)) | (Except(b), Only(a)) => Only(a.difference(b).copied().collect()),
            (Except(a), Except(b)) => Except(a.union(b).copied().collect()),
        }
    }
}

fn insert_term(map: &mut BTreeMap<BasisSymbol, Rational>, sym: BasisSymbol, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    let entry = map.entry(sym).or_insert_with(Rational::zero);
    *entry += coeff;
    if entry.is_zero() {
        map.remove(&sym);
    }
}

/// Sums duplicate symbols and drops zeros. Sorting first lets the map be
/// bulk-built, which matters for classes with tens of thousands of terms.
/// Process-wide memo for the large named classes, keyed by their parameters.
pub(crate) type ClassCache<K> = OnceLock<Mutex<HashMap<K, DivisorClass>>>;

pub(crate) fn memoized<K: Eq + std::hash::Hash>(
    cache: &'static ClassCache<K>,
    key: K,
    build: impl FnOnce() -> Result<DivisorClass>,
) -> Result<DivisorClass> {
    let cache = cache.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    // built outside the lock so builders may consult other caches
    let value = build()?;
    cache.lock().expect("cache lock").insert(key, value.clone());
    Ok(value)
}

pub(crate) fn collect_terms(
    mut terms: Vec<(BasisSymbol, Rational)>,
) -> BTreeMap<BasisSymbol, Rational> {
    terms.sort_by_cached_key(|t| t.0.sort_key());
    let mut merged: Vec<(BasisSymbol, Rational)> = Vec::with_capacity(terms.len());
    for (sym, c) in terms {
        match merged.last_mut() {
            Some((last, acc)) if *last == sym => *acc += c,
            _ => merged.push((sym, c)),
        }
    }
    merged.retain(|(_, c)| !c.is_zero());
    merged.into_iter().collect()
}

/// An exact rational divisor class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    space: SpaceId,
    coeffs: BTreeMap<BasisSymbol, Rational>,
    support: KnownSupport,
}

impl DivisorClass {
    pub fn zero(space: SpaceId) -> Self {
        Self {
            space,
            coeffs: BTreeMap::new(),
            support: KnownSupport::All,
        }
    }

    /// Sums the given terms; every symbol must be a canonical generator of `space`.
    pub fn from_terms<I>(space: SpaceId, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisSymbol, Rational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        for (sym, _) in &terms {
            space.check_symbol(sym)?;
        }
        Ok(Self {
            space,
            coeffs: collect_terms(terms),
            support: KnownSupport::All,
        })
    }

    /// Marks the class as partial. Fails if a stored coefficient lies outside `support`.
    pub fn with_support(mut self, support: KnownSupport) -> Result<Self> {
        if let Some(sym) = self.coeffs.keys().find(|s| !support.contains(s)) {
            return Err(CalcError::UnknownSupport { symbol: *sym });
        }
        self.support = support;
        Ok(self)
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn support(&self) -> &KnownSupport {
        &self.support
    }

    pub fn is_partial(&self) -> bool {
        !self.support.is_all()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The stored coefficient, zero when absent (even outside the known support).
    pub fn coeff(&self, sym: &BasisSymbol) -> Rational {
        self.coeffs.get(sym).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient, failing when it belongs to an unknown tail.
    pub fn known_coeff(&self, sym: &BasisSymbol) -> Result<Rational> {
        if self.support.contains(sym) {
            Ok(self.coeff(sym))
        } else {
            Err(CalcError::UnknownSupport { symbol: *sym })
        }
    }

    pub fn scaled(&self, by: &Rational) -> Self {
        if by.is_zero() {
            return Self {
                space: self.space,
                coeffs: BTreeMap::new(),
                support: self.support.clone(),
            };
        }
        Self {
            space: self.space,
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, c * by)).collect(),
            support: self.support.clone(),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<Self> {
        combine(&self.space, &[(int(1), self), (int(1), other)])
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<Self> {
        combine(&self.space, &[(int(1), self), (int(-1), other)])
    }

    /// Equality of the known parts, ignoring support bookkeeping.
    pub fn same_coefficients(&self, other: &DivisorClass) -> bool {
        self.space == other.space && self.coeffs == other.coeffs
    }

    pub(crate) fn from_parts(
        space: SpaceId,
        coeffs: BTreeMap<BasisSymbol, Rational>,
        support: KnownSupport,
    ) -> Self {
        let mut class = Self {
            space,
            coeffs,
            support,
        };
        class.normalize();
        class
    }

    fn normalize(&mut self) {
        let support = &self.support;
        self.coeffs
            .retain(|s, c| !c.is_zero() && support.contains(s));
    }
}

/// Exact linear combination `Σ coeff·class` over one space.
///
/// The result's known support is the intersection of the terms' supports;
/// coefficients that fall outside it are unknown and dropped.
pub fn combine(space: &SpaceId, terms: &[(Rational, &DivisorClass)]) -> Result<DivisorClass> {
    let mut all = Vec::new();
    let mut support = KnownSupport::All;
    for (a, class) in terms {
        if class.space != *space {
            return Err(CalcError::SpaceMismatch {
                left: *space,
                right: class.space,
            });
        }
        support = support.intersect(&class.support);
        if a.is_zero() {
            continue;
        }
        if a.is_one() {
            all.extend(class.coeffs.iter().map(|(s, c)| (*s, c.clone())));
        } else {
            all.extend(class.coeffs.iter().map(|(s, c)| (*s, a * c)));
        }
    }
    Ok(DivisorClass::from_parts(
        *space,
        collect_terms(all),
        support,
    ))
}

/// A 1-cycle, recorded by its intersection numbers with the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    space: SpaceId,
    pairings: BTreeMap<BasisSymbol, Rational>,
}

impl CurveClass {
    pub fn zero(space: SpaceId) -> Self {
        Self {
            space,
            pairings: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(space: SpaceId, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisSymbol, Rational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        for (sym, _) in &terms {
            space.check_symbol(sym)?;
        }
        Ok(Self {
            space,
            pairings: collect_terms(terms),
        })
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &Rational)> {
        self.pairings.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.pairings.is_empty()
    }

    pub fn pairing(&self, sym: &BasisSymbol) -> Rational {
        self.pairings
            .get(sym)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, by: &Rational) -> Self {
        let mut out = Self::zero(self.space);
        for (s, c) in &self.pairings {
            insert_term(&mut out.pairings, *s, c * by);
        }
        out
    }

    pub fn add(&self, other: &CurveClass) -> Result<Self> {
        if self.space != other.space {
            return Err(CalcError::SpaceMismatch {
                left: self.space,
                right: other.space,
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.pairings {
            insert_term(&mut out.pairings, *s, c.clone());
        }
        Ok(out)
    }

    /// Moves the curve to `space` (same kind and genus, at least as many labels).
    pub(crate) fn relabel_space(mut self, space: SpaceId) -> Self {
        self.space = space;
        self
    }

    pub(crate) fn add_pairing(&mut self, sym: BasisSymbol, value: Rational) -> Result<()> {
        self.space.check_symbol(&sym)?;
        insert_term(&mut self.pairings, sym, value);
        Ok(())
    }
}

/// The intersection number `curve · divisor`.
pub fn pair(curve: &CurveClass, divisor: &DivisorClass) -> Result<Rational> {
    if curve.space != divisor.space {
        return Err(CalcError::SpaceMismatch {
            left: curve.space,
            right: divisor.space,
        });
    }
    let mut total = Rational::zero();
    for (sym, v) in &curve.pairings {
        total += v * divisor.known_coeff(sym)?;
    }
    Ok(total)
}

/// `δ_{i:c} = Σ_{|T| = c} δ_{i:T}`, with `δ_{0:c} = 0` for `c < 2`.
///
/// Unstable encodings are skipped; canonical duplicates accumulate.
pub fn expand_aggregate(space: &SpaceId, genus: u32, count: u32) -> Result<DivisorClass> {
    space.expect_kind(SpaceKind::PointedCurves)?;
    if genus > space.genus() || count > space.marked() {
        return Err(CalcError::InvalidIndex(format!(
            "delta_{{{genus}:{count}}} on {space}"
        )));
    }
    let terms = LabelSet::subsets_of_size(space.marked(), count)
        .filter_map(|labels| canonicalize_boundary(space, genus, labels).ok())
        .map(|sym| (sym, int(1)))
        .collect();
    Ok(DivisorClass::from_parts(
        *space,
        collect_terms(terms),
        KnownSupport::All,
    ))
}

/// Binomial coefficient `C(n, k)` as a rational (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::from(1);
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    Rational::from_integer(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}
