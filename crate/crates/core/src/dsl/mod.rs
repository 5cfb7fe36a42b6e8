//! A small expression language for divisor classes and curve vectors.
//!
//! Classes are written as linear combinations of generators (`l`, `psi_k`,
//! `dirr`, `d{i:T}`, `a_i`, `b_i`), named classes (`theta(g)`, `K(g,n)`,
//! `bn(g)`, ...) and maps (`pi^*`, `phi^*(n)`, `phi12^*(n)`, `j^*`, `phi1_*`).
//! Curves are comma-separated assignments `sym=value`.

mod lexer;
mod parser;
mod render;

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::basis::{
    canonicalize_boundary, expand_aggregate, int, BasisSymbol, CurveClass, DivisorClass, LabelSet,
    Rational, SpaceId,
};
use crate::catalog;
use crate::error::CalcError;
use crate::maps::MapId;

pub use lexer::Span;
pub use render::{render_class, render_curve, render_rational};

use parser::{BinOp, Expr, MapRef, Parser, SymRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DslError {
    Syntax {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },
    Type {
        span: Span,
        msg: String,
    },
    Calc {
        span: Span,
        err: CalcError,
    },
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Syntax {
                pos,
                expected,
                found,
            } => {
                write!(
                    f,
                    "syntax error at {pos}: expected {}, found {found}",
                    expected.join(" or ")
                )
            }
            DslError::Type { span, msg } => write!(f, "type error at {span}: {msg}"),
            DslError::Calc { span, err } => write!(f, "error at {span}: {err}"),
        }
    }
}

impl std::error::Error for DslError {}

impl DslError {
    pub fn calc(&self) -> Option<&CalcError> {
        match self {
            DslError::Calc { err, .. } => Some(err),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Value {
    Scalar(Rational),
    Class(DivisorClass),
}

fn type_err(span: Span, msg: impl Into<String>) -> DslError {
    DslError::Type {
        span,
        msg: msg.into(),
    }
}

fn calc_err(span: Span) -> impl Fn(CalcError) -> DslError {
    move |err| match err {
        CalcError::InvalidIndex(msg) => DslError::Type { span, msg },
        err => DslError::Calc { span, err },
    }
}

fn lex(text: &str) -> Result<Parser, DslError> {
    let tokens = lexer::tokenize(text).map_err(|pos| DslError::Syntax {
        pos,
        expected: vec!["token".into()],
        found: format!("'{}'", text[pos..].chars().next().unwrap_or(' ')),
    })?;
    Ok(Parser::new(tokens))
}

/// Parses and evaluates a class expression on `space`.
pub fn parse_class(text: &str, space: SpaceId) -> Result<DivisorClass, DslError> {
    let mut p = lex(text)?;
    let expr = p.expr()?;
    p.finish()?;
    match eval(&expr, space)? {
        Value::Class(d) => Ok(d),
        Value::Scalar(q) if q.is_zero() => Ok(DivisorClass::zero(space)),
        Value::Scalar(_) => Err(type_err(
            expr.span(),
            "expected a divisor class, got a nonzero scalar",
        )),
    }
}

/// Parses `sym=value, ...` into a curve on `space`; an aggregate `d{i:c}`
/// assigns the value to every symbol it expands to.
pub fn parse_curve(text: &str, space: SpaceId) -> Result<CurveClass, DslError> {
    let mut p = lex(text)?;
    let mut terms = Vec::new();
    if !p.at_end() {
        loop {
            let (sym, span, value) = p.assignment()?;
            match sym {
                SymRef::Aggregate(i, c) => {
                    let agg = expand_aggregate(&space, i, c).map_err(calc_err(span))?;
                    terms.extend(agg.terms().map(|(s, _)| (*s, value.clone())));
                }
                other => terms.push((resolve_symbol(&other, space, span)?, value)),
            }
            if !p.eat_comma() {
                break;
            }
        }
    }
    p.finish()?;
    CurveClass::from_terms(space, terms).map_err(calc_err(Span {
        start: 0,
        end: text.len(),
    }))
}

fn resolve_symbol(sym: &SymRef, space: SpaceId, span: Span) -> Result<BasisSymbol, DslError> {
    let s = match sym {
        SymRef::Lambda => BasisSymbol::Lambda,
        SymRef::Psi(k) => BasisSymbol::Psi(*k),
        SymRef::DeltaIrr => BasisSymbol::DeltaIrr,
        SymRef::Alpha(i) => BasisSymbol::Alpha(*i),
        SymRef::Beta(i) => BasisSymbol::Beta(*i),
        SymRef::Boundary(i, labels) => {
            if space.is_spin() {
                return Err(type_err(
                    span,
                    format!("boundary symbols d{{..}} do not exist on {space}"),
                ));
            }
            let t = LabelSet::from_labels(labels.iter().copied()).map_err(calc_err(span))?;
            canonicalize_boundary(&space, *i, t).map_err(calc_err(span))?
        }
        SymRef::Aggregate(..) => unreachable!("aggregates expand to classes"),
    };
    space.check_symbol(&s).map_err(calc_err(span))?;
    Ok(s)
}

fn scalar_arg(expr: &Expr, space: SpaceId) -> Result<Rational, DslError> {
    match eval(expr, space)? {
        Value::Scalar(q) => Ok(q),
        Value::Class(_) => Err(type_err(expr.span(), "expected a number")),
    }
}

fn int_arg(expr: &Expr, space: SpaceId) -> Result<u32, DslError> {
    let q = scalar_arg(expr, space)?;
    if !q.is_integer() {
        return Err(type_err(expr.span(), "expected an integer"));
    }
    q.to_integer()
        .to_u32()
        .ok_or_else(|| type_err(expr.span(), "expected a nonnegative integer"))
}

fn named(name: &str, args: &[Expr], space: SpaceId, span: Span) -> Result<DivisorClass, DslError> {
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(type_err(
                span,
                format!("{name} takes {k} argument(s), got {}", args.len()),
            ))
        }
    };
    let ints = |k: usize| -> Result<Vec<u32>, DslError> {
        arity(k)?;
        args.iter().map(|a| int_arg(a, space)).collect()
    };
    let c = calc_err(span);
    let class = match name {
        "theta" => catalog::theta_null_class(ints(1)?[0]).map_err(c)?,
        "K_spin" => catalog::canonical_spin_class(ints(1)?[0]).map_err(c)?,
        "K" => {
            let v = ints(2)?;
            catalog::canonical_mgn_class(v[0], v[1]).map_err(c)?
        }
        "bn" => catalog::bn_class(ints(1)?[0]).map_err(c)?,
        "Dg" => catalog::pointed_pencil_class(ints(1)?[0]).map_err(c)?,
        "node" => catalog::node_class(ints(1)?[0]).map_err(c)?,
        "cusp" => catalog::cusp_class(ints(1)?[0]).map_err(c)?,
        "B11" => catalog::b_class_11().map_err(c)?,
        "Bprime" => {
            arity(5)?;
            let a: Vec<Rational> = args
                .iter()
                .map(|e| scalar_arg(e, space))
                .collect::<Result<_, _>>()?;
            let a: [Rational; 5] = a.try_into().expect("arity checked");
            catalog::b_prime_class_11(&a).map_err(c)?
        }
        _ => unreachable!("parser only accepts known names"),
    };
    if class.space() != space {
        return Err(type_err(
            span,
            format!("{name} lives on {}, expected {space}", class.space()),
        ));
    }
    Ok(class)
}

fn map_for(map: MapRef, target: SpaceId, span: Span) -> Result<MapId, DslError> {
    let g = target.genus();
    let id = match map {
        MapRef::Spin => MapId::SpinCover(g),
        MapRef::Forget(n) => MapId::Forgetful(g, n),
        MapRef::ForgetTwo(n) => MapId::ForgetTwoPoint(g, n),
        MapRef::EllipticTail => MapId::EllipticTail(g),
        MapRef::SectionPush => MapId::SectionPushforward(g),
    };
    let expected = id.target().map_err(calc_err(span))?;
    if expected != target {
        return Err(type_err(
            span,
            format!("{} lands on {expected}, expected {target}", id.name()),
        ));
    }
    Ok(id)
}

fn eval(expr: &Expr, space: SpaceId) -> Result<Value, DslError> {
    match expr {
        Expr::Num(q, _) => Ok(Value::Scalar(q.clone())),
        Expr::Sym(SymRef::Aggregate(i, c), span) => {
            if space.is_spin() {
                return Err(type_err(
                    *span,
                    format!("boundary symbols d{{..}} do not exist on {space}"),
                ));
            }
            Ok(Value::Class(
                expand_aggregate(&space, *i, *c).map_err(calc_err(*span))?,
            ))
        }
        Expr::Sym(sym, span) => {
            let s = resolve_symbol(sym, space, *span)?;
            Ok(Value::Class(
                DivisorClass::from_terms(space, [(s, int(1))]).map_err(calc_err(*span))?,
            ))
        }
        Expr::Named { name, args, span } => Ok(Value::Class(named(name, args, space, *span)?)),
        Expr::Map { map, arg, span } => {
            let id = map_for(*map, space, *span)?;
            let source = id.source().map_err(calc_err(*span))?;
            let d = match eval(arg, source)? {
                Value::Class(d) => d,
                Value::Scalar(q) if q.is_zero() => DivisorClass::zero(source),
                Value::Scalar(_) => {
                    return Err(type_err(
                        arg.span(),
                        "maps apply to classes, not nonzero scalars",
                    ))
                }
            };
            let image = id.apply(&d).map_err(calc_err(*span))?;
            Ok(Value::Class(image))
        }
        Expr::Neg(inner, _) => Ok(match eval(inner, space)? {
            Value::Scalar(q) => Value::Scalar(-q),
            Value::Class(d) => Value::Class(d.scaled(&int(-1))),
        }),
        Expr::Bin { op, lhs, rhs, span } => {
            let a = eval(lhs, space)?;
            let b = eval(rhs, space)?;
            binary(*op, a, b, *span, rhs.span())
        }
    }
}

fn as_class(v: Value, space_of: &DivisorClass, span: Span) -> Result<DivisorClass, DslError> {
    match v {
        Value::Class(d) => Ok(d),
        Value::Scalar(q) if q.is_zero() => Ok(DivisorClass::zero(space_of.space())),
        Value::Scalar(_) => Err(type_err(span, "cannot add a nonzero scalar to a class")),
    }
}

fn binary(op: BinOp, a: Value, b: Value, span: Span, rhs_span: Span) -> Result<Value, DslError> {
    use Value::*;
    match op {
        BinOp::Add | BinOp::Sub => {
            let sign = if op == BinOp::Add { int(1) } else { int(-1) };
            match (a, b) {
                (Scalar(x), Scalar(y)) => Ok(Scalar(x + sign * y)),
                (Class(x), other) => {
                    let y = as_class(other, &x, span)?;
                    Ok(Class(
                        crate::basis::combine(&x.space(), &[(int(1), &x), (sign, &y)])
                            .map_err(calc_err(span))?,
                    ))
                }
                (other, Class(y)) => {
                    let x = as_class(other, &y, span)?;
                    Ok(Class(
                        crate::basis::combine(&y.space(), &[(int(1), &x), (sign, &y)])
                            .map_err(calc_err(span))?,
                    ))
                }
            }
        }
        BinOp::Mul => match (a, b) {
            (Scalar(x), Scalar(y)) => Ok(Scalar(x * y)),
            (Scalar(x), Class(d)) | (Class(d), Scalar(x)) => Ok(Class(d.scaled(&x))),
            (Class(_), Class(_)) => Err(type_err(
                span,
                "product of two divisor classes is not a divisor class",
            )),
        },
        BinOp::Div => {
            let Scalar(y) = b else {
                return Err(type_err(rhs_span, "can only divide by a number"));
            };
            if y.is_zero() {
                return Err(type_err(rhs_span, "division by zero"));
            }
            Ok(match a {
                Scalar(x) => Scalar(x / y),
                Class(d) => Class(d.scaled(&(int(1) / y))),
            })
        }
    }
}
