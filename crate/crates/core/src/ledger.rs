//! The built-in claim ledger.
//!
//! Every claim names a printed value and a recipe for recomputing it from the
//! catalog, the maps and the criteria. Claims live in `data/claims.json`;
//! known disagreements between printed and recomputed values live in
//! `data/allowlist.json` and are reported, never reconciled.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::{pair, CurveClass, DivisorClass, Rational, SpaceId};
use crate::criteria::{
    aggregate_coeff, d_closed_form, effective_difference, rigidity_witness, slope,
    uniruledness_check, UniruledInput, Verdict,
};
use crate::dsl::{parse_class, parse_curve, render_rational};
use crate::pencils::CatalogId;
use crate::{catalog, maps};

const CLAIMS: &str = include_str!("../data/claims.json");
const ALLOWLIST: &str = include_str!("../data/allowlist.json");

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// The class whose `δ_{i:c}` coefficients the closed-form sweep reads.
const GENUS11_RESIDUAL: &str = "K(11,11) - Dg(11) - 2*phi^*(11)(bn(11))";

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("malformed ledger data: {0}")]
    Data(#[from] serde_json::Error),
    #[error("duplicate claim id {0}")]
    DuplicateId(String),
    #[error("bad filter: {0}")]
    Filter(#[from] glob::PatternError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub cite: String,
    pub quote: String,
}

/// How a claim is recomputed. Class and curve fields are DSL text; a curve
/// may also be a catalog id, which fixes the space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    Pair {
        curve: String,
        class: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<String>,
    },
    ClassCoeff {
        space: String,
        class: String,
        symbol: String,
    },
    /// Coefficientwise equality of two class expressions (known parts only).
    ClassEq {
        space: String,
        class: String,
        equals: String,
    },
    Slope {
        space: String,
        class: String,
    },
    CConst {
        g: u32,
    },
    SpinCoverDegree {
        g: u32,
    },
    /// Every `δ_{i:c}` coefficient of the genus-11 residual against its closed form.
    ClosedFormSweep {
        i: u32,
    },
    Rigidity {
        curve: String,
        class: String,
        others: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    Uniruled {
        space: String,
        curves: [String; 2],
        d1: String,
        d2: String,
        k: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    /// The criterion on six given pairings `p11, p12, p21, p22, k1, k2`.
    UniruledValues {
        values: [String; 6],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    /// `d1 - d2` has no negative coefficient.
    Effective {
        space: String,
        d1: String,
        d2: String,
    },
}

/// A claim value: an exact rational in `p/q` text, or a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Verdict(bool),
    Number(String),
}

impl Value {
    fn number(q: &Rational) -> Self {
        Value::Number(render_rational(q))
    }

    fn canonical(&self) -> Value {
        match self {
            Value::Number(s) => match Rational::from_str(s.trim()) {
                Ok(q) => Value::number(&q),
                Err(_) => self.clone(),
            },
            v => v.clone(),
        }
    }

    fn same(&self, other: &Value) -> bool {
        self.canonical() == other.canonical()
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Verdict(b) => write!(f, "{}", if *b { "holds" } else { "fails" }),
            Value::Number(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub anchor: Anchor,
    pub check: Check,
    pub expected: Value,
}

#[derive(Deserialize)]
struct ClaimFile {
    claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowEntry {
    pub id: String,
    pub printed: Value,
    pub recomputed: Value,
    pub note: String,
}

#[derive(Deserialize)]
struct AllowFile {
    entries: Vec<AllowEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "MISMATCH-ALLOWLISTED")]
    MismatchAllowlisted,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::MismatchAllowlisted => "MISMATCH-ALLOWLISTED",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: Anchor,
    pub expected: Value,
    pub got: Option<Value>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub allowlisted: usize,
    pub skipped: usize,
}

/// A known disagreement that the run actually observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub id: String,
    pub printed: Value,
    pub recomputed: Value,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
    pub discrepancies: Vec<Discrepancy>,
}

impl Report {
    /// 0 when every mismatch is allowlisted, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.mismatched == 0 {
            0
        } else {
            1
        }
    }

    pub fn get(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let got = c
                .got
                .as_ref()
                .map_or_else(|| "-".to_string(), Value::to_string);
            let _ = write!(
                out,
                "{:<21} {:<28} expected {:<8} got {}",
                c.status.label(),
                c.id,
                c.expected.to_string(),
                got
            );
            if let Some(reason) = &c.reason {
                let _ = write!(out, " ({reason})");
            }
            out.push('\n');
        }
        for d in &self.discrepancies {
            let _ = writeln!(
                out,
                "known discrepancy {}: printed {}, recomputed {}. {}",
                d.id, d.printed, d.recomputed, d.note
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} claims: {} match, {} mismatch, {} allowlisted, {} skipped",
            s.total, s.matched, s.mismatched, s.allowlisted, s.skipped
        );
        out
    }
}

/// The embedded claims, in file order.
pub fn claims() -> Result<Vec<Claim>, LedgerError> {
    let file: ClaimFile = serde_json::from_str(CLAIMS)?;
    let mut seen = BTreeSet::new();
    for c in &file.claims {
        if !seen.insert(c.id.as_str()) {
            return Err(LedgerError::DuplicateId(c.id.clone()));
        }
    }
    Ok(file.claims)
}

pub fn allowlist() -> Result<Vec<AllowEntry>, LedgerError> {
    let file: AllowFile = serde_json::from_str(ALLOWLIST)?;
    Ok(file.entries)
}

/// Evaluates every claim whose id matches `filter` (all claims when the
/// filter is absent or empty).
pub fn verify(filter: Option<&str>) -> Result<Report, LedgerError> {
    let pattern = match filter {
        Some(f) if !f.is_empty() => Some(glob::Pattern::new(f)?),
        _ => None,
    };
    let allow = allowlist()?;
    let mut selected: Vec<Claim> = claims()?
        .into_iter()
        .filter(|c| pattern.as_ref().is_none_or(|p| p.matches(&c.id)))
        .collect();
    selected.sort_by(|a, b| a.id.cmp(&b.id));

    let mut ev = Evaluator::default();
    let mut results = Vec::with_capacity(selected.len());
    let mut discrepancies = Vec::new();
    let mut summary = Summary {
        total: selected.len(),
        ..Summary::default()
    };
    for claim in selected {
        let (got, status, reason) = match ev.run(&claim.check) {
            Err(reason) => (None, Status::Skipped, Some(reason)),
            Ok(got) if got.same(&claim.expected) => (Some(got), Status::Match, None),
            Ok(got) => {
                let entry = allow.iter().find(|e| {
                    e.id == claim.id && e.printed.same(&claim.expected) && e.recomputed.same(&got)
                });
                match entry {
                    Some(e) => {
                        discrepancies.push(Discrepancy {
                            id: claim.id.clone(),
                            printed: claim.expected.canonical(),
                            recomputed: got.clone(),
                            note: e.note.clone(),
                        });
                        (Some(got), Status::MismatchAllowlisted, None)
                    }
                    None => (Some(got), Status::Mismatch, None),
                }
            }
        };
        match status {
            Status::Match => summary.matched += 1,
            Status::Mismatch => summary.mismatched += 1,
            Status::MismatchAllowlisted => summary.allowlisted += 1,
            Status::Skipped => summary.skipped += 1,
        }
        results.push(ClaimResult {
            id: claim.id,
            anchor: claim.anchor,
            expected: claim.expected.canonical(),
            got,
            status,
            reason,
        });
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        claims: results,
        summary,
        discrepancies,
    })
}

/// Resolves curve text: a catalog id, or assignments on `space`.
pub fn resolve_curve(text: &str, space: Option<SpaceId>) -> Result<CurveClass, String> {
    if let Ok(id) = CatalogId::from_str(text) {
        let curve = id.curve().map_err(|e| e.to_string())?;
        return match space {
            Some(s) if s != curve.space() => {
                Err(format!("{id} lives on {}, not {s}", curve.space()))
            }
            _ => Ok(curve),
        };
    }
    let space =
        space.ok_or_else(|| format!("'{text}' is not a catalog id and no space was given"))?;
    parse_curve(text, space).map_err(|e| e.to_string())
}

/// Parsed classes are cached: the genus-11 claims share a few large classes.
#[derive(Default)]
struct Evaluator {
    classes: HashMap<(SpaceId, String), DivisorClass>,
}

fn space_of(text: &str) -> Result<SpaceId, String> {
    SpaceId::from_str(text).map_err(|e| e.to_string())
}

fn rational(text: &str) -> Result<Rational, String> {
    Rational::from_str(text.trim()).map_err(|_| format!("'{text}' is not a rational"))
}

fn verdict_value(v: &Verdict, witness: Option<&str>) -> Result<Value, String> {
    match witness {
        None => Ok(Value::Verdict(v.holds)),
        Some(name) => v
            .witness(name)
            .map(|w| Value::number(&w.value))
            .ok_or_else(|| format!("no witness named {name}")),
    }
}

impl Evaluator {
    fn class(&mut self, text: &str, space: SpaceId) -> Result<DivisorClass, String> {
        let key = (space, text.to_string());
        if let Some(d) = self.classes.get(&key) {
            return Ok(d.clone());
        }
        let d = parse_class(text, space).map_err(|e| e.to_string())?;
        self.classes.insert(key, d.clone());
        Ok(d)
    }

    fn curve(&self, text: &str, space: Option<&String>) -> Result<CurveClass, String> {
        resolve_curve(text, space.map(|s| space_of(s)).transpose()?)
    }

    fn run(&mut self, check: &Check) -> Result<Value, String> {
        let err = |e: crate::CalcError| e.to_string();
        match check {
            Check::Pair {
                curve,
                class,
                space,
            } => {
                let c = self.curve(curve, space.as_ref())?;
                let d = self.class(class, c.space())?;
                Ok(Value::number(&pair(&c, &d).map_err(err)?))
            }
            Check::ClassCoeff {
                space,
                class,
                symbol,
            } => {
                let space = space_of(space)?;
                let d = self.class(class, space)?;
                let sym = self.class(symbol, space)?;
                let mut terms = sym.terms();
                let (s, _) = match (terms.next(), terms.next()) {
                    (Some(t), None) => t,
                    _ => return Err(format!("'{symbol}' is not a single generator")),
                };
                Ok(Value::number(&d.known_coeff(s).map_err(err)?))
            }
            Check::ClassEq {
                space,
                class,
                equals,
            } => {
                let space = space_of(space)?;
                let a = self.class(class, space)?;
                let b = self.class(equals, space)?;
                Ok(Value::Verdict(a.same_coefficients(&b)))
            }
            Check::Slope { space, class } => {
                let d = self.class(class, space_of(space)?)?;
                Ok(Value::number(&slope(&d).map_err(err)?))
            }
            Check::CConst { g } => Ok(Value::number(&catalog::c_const(*g).map_err(err)?)),
            Check::SpinCoverDegree { g } => Ok(Value::Number(
                maps::spin_cover_degree(*g).map_err(err)?.to_string(),
            )),
            Check::ClosedFormSweep { i } => {
                let r = self.class(GENUS11_RESIDUAL, SpaceId::pointed(11, 11).map_err(err)?)?;
                let first = if *i == 0 { 2 } else { 0 };
                for c in first..=11 {
                    let got = aggregate_coeff(&r, *i, c).map_err(err)?;
                    if got != d_closed_form(*i, c).map_err(err)? {
                        return Ok(Value::Verdict(false));
                    }
                }
                Ok(Value::Verdict(true))
            }
            Check::Rigidity {
                curve,
                class,
                others,
                space,
                witness,
            } => {
                let c = self.curve(curve, space.as_ref())?;
                let d = self.class(class, c.space())?;
                let others = others
                    .iter()
                    .map(|o| self.class(o, c.space()))
                    .collect::<Result<Vec<_>, _>>()?;
                verdict_value(
                    &rigidity_witness(&c, &d, &others).map_err(err)?,
                    witness.as_deref(),
                )
            }
            Check::Uniruled {
                space,
                curves,
                d1,
                d2,
                k,
                witness,
            } => {
                let s = space_of(space)?;
                let c1 = self.curve(&curves[0], Some(space))?;
                let c2 = self.curve(&curves[1], Some(space))?;
                let (d1, d2, k) = (self.class(d1, s)?, self.class(d2, s)?, self.class(k, s)?);
                let input = UniruledInput::from_pairings([&c1, &c2], &d1, &d2, &k).map_err(err)?;
                verdict_value(&uniruledness_check(&input), witness.as_deref())
            }
            Check::UniruledValues { values, witness } => {
                let [p11, p12, p21, p22, k1, k2] = values.clone().map(|v| rational(&v));
                let input = UniruledInput {
                    p11: p11?,
                    p12: p12?,
                    p21: p21?,
                    p22: p22?,
                    k1: k1?,
                    k2: k2?,
                };
                verdict_value(&uniruledness_check(&input), witness.as_deref())
            }
            Check::Effective { space, d1, d2 } => {
                let s = space_of(space)?;
                let (a, b) = (self.class(d1, s)?, self.class(d2, s)?);
                Ok(Value::Verdict(
                    effective_difference(&a, &b).map_err(err)?.holds,
                ))
            }
        }
    }
}
