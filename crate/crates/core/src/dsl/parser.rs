//! LL(1) parser for class expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | map unary | primary
//! map     := 'pi' '^*' | 'phi' '^*' '(' INT ')' | 'phi12' '^*' '(' INT ')'
//!          | 'j' '^*' | 'phi1' '_*'
//! primary := NUMBER | '(' expr ')' | symbol | NAME '(' expr (',' expr)* ')' | 'B11'
//! symbol  := 'l' | 'la' | 'dirr' | 'psi_'K | 'a_'I | 'b_'I
//!          | 'd' '{' INT ':' ( | INT | '{' INT (',' INT)* '}' | '{' '}' ) '}'
//! ```

use num_bigint::BigInt;

use super::lexer::{Span, Tok, Token};
use super::DslError;
use crate::basis::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymRef {
    Lambda,
    Psi(u32),
    DeltaIrr,
    Alpha(u32),
    Beta(u32),
    Boundary(u32, Vec<u32>),
    Aggregate(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapRef {
    Spin,
    Forget(u32),
    ForgetTwo(u32),
    EllipticTail,
    SectionPush,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational, Span),
    Sym(SymRef, Span),
    Named {
        name: String,
        args: Vec<Expr>,
        span: Span,
    },
    Map {
        map: MapRef,
        arg: Box<Expr>,
        span: Span,
    },
    Neg(Box<Expr>, Span),
    Bin {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
        span: Span,
    },
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Num(_, s) | Expr::Sym(_, s) | Expr::Neg(_, s) => *s,
            Expr::Named { span, .. } | Expr::Map { span, .. } | Expr::Bin { span, .. } => *span,
        }
    }
}

pub const NAMED: [&str; 9] = [
    "theta", "K_spin", "K", "bn", "Dg", "node", "cusp", "B11", "Bprime",
];

pub struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(tokens: Vec<Token>) -> Self {
        Self { tokens, pos: 0 }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> DslError {
        let t = self.peek();
        DslError::Syntax {
            pos: t.span.start,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, DslError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn integer(&mut self) -> Result<(u32, Span), DslError> {
        match &self.peek().tok {
            Tok::Number(n) => {
                let value = n
                    .parse::<u32>()
                    .map_err(|_| self.error(&["small integer"]))?;
                let span = self.bump().span;
                Ok((value, span))
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    pub fn at_end(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn finish(&self) -> Result<(), DslError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(&["'+'", "'-'", "'*'", "'/'", "end of input"]))
        }
    }

    pub fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span().join(rhs.span());
            lhs = Expr::Bin {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                span,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span().join(rhs.span());
            lhs = Expr::Bin {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                span,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.peek().tok == Tok::Minus {
            let start = self.bump().span;
            let inner = self.unary()?;
            let span = start.join(inner.span());
            return Ok(Expr::Neg(Box::new(inner), span));
        }
        if let Some((map, span)) = self.map_prefix()? {
            let arg = self.unary()?;
            let span = span.join(arg.span());
            return Ok(Expr::Map {
                map,
                arg: Box::new(arg),
                span,
            });
        }
        self.primary()
    }

    fn map_prefix(&mut self) -> Result<Option<(MapRef, Span)>, DslError> {
        let Tok::Ident(name) = &self.peek().tok else {
            return Ok(None);
        };
        let marker = self.peek_at(1).clone();
        let map = match (name.as_str(), &marker) {
            ("pi", Tok::PullStar) => MapRef::Spin,
            ("j", Tok::PullStar) => MapRef::EllipticTail,
            ("phi1", Tok::PushStar) => MapRef::SectionPush,
            ("phi" | "phi12", Tok::PullStar) => {
                let two = name == "phi12";
                let start = self.bump().span;
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let (n, _) = self.integer()?;
                let end = self.expect(Tok::RParen, "')'")?.span;
                let map = if two {
                    MapRef::ForgetTwo(n)
                } else {
                    MapRef::Forget(n)
                };
                return Ok(Some((map, start.join(end))));
            }
            _ => return Ok(None),
        };
        let start = self.bump().span;
        let end = self.bump().span;
        Ok(Some((map, start.join(end))))
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        let token = self.peek().clone();
        match token.tok {
            Tok::Number(_) => self.number(),
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if name == "d" && *self.peek_at(1) == Tok::LBrace {
                    return self.boundary();
                }
                if NAMED.contains(&name.as_str()) {
                    return self.named(name);
                }
                let sym = parse_symbol_name(&name)
                    .ok_or_else(|| self.error(&["class symbol or named class"]))?;
                self.bump();
                Ok(Expr::Sym(sym, token.span))
            }
            _ => Err(self.error(&["number", "'('", "'-'", "symbol", "named class", "map"])),
        }
    }

    fn number(&mut self) -> Result<Expr, DslError> {
        let t = self.bump();
        let Tok::Number(digits) = t.tok else {
            unreachable!()
        };
        let value: BigInt = digits.parse().expect("lexer yields digits");
        Ok(Expr::Num(Rational::from_integer(value), t.span))
    }

    fn named(&mut self, name: String) -> Result<Expr, DslError> {
        let start = self.bump().span;
        if name == "B11" {
            return Ok(Expr::Named {
                name,
                args: Vec::new(),
                span: start,
            });
        }
        self.expect(Tok::LParen, "'('")?;
        let mut args = vec![self.expr()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        let end = self.expect(Tok::RParen, "')' or ','")?.span;
        Ok(Expr::Named {
            name,
            args,
            span: start.join(end),
        })
    }

    fn boundary(&mut self) -> Result<Expr, DslError> {
        let start = self.bump().span;
        self.expect(Tok::LBrace, "'{'")?;
        let (i, _) = self.integer()?;
        self.expect(Tok::Colon, "':'")?;
        let sym = match self.peek().tok {
            Tok::RBrace => SymRef::Boundary(i, Vec::new()),
            Tok::Number(_) => SymRef::Aggregate(i, self.integer()?.0),
            Tok::LBrace => {
                self.bump();
                let mut labels = Vec::new();
                if self.peek().tok != Tok::RBrace {
                    labels.push(self.integer()?.0);
                    while self.peek().tok == Tok::Comma {
                        self.bump();
                        labels.push(self.integer()?.0);
                    }
                }
                self.expect(Tok::RBrace, "'}' or ','")?;
                SymRef::Boundary(i, labels)
            }
            _ => return Err(self.error(&["'}'", "integer", "'{'"])),
        };
        let end = self.expect(Tok::RBrace, "'}'")?.span;
        Ok(Expr::Sym(sym, start.join(end)))
    }

    /// `symbol '=' ['-'] NUMBER ['/' NUMBER]`, one curve assignment.
    pub fn assignment(&mut self) -> Result<(SymRef, Span, Rational), DslError> {
        let lhs = match self.peek().tok.clone() {
            Tok::Ident(name) if name == "d" => self.boundary()?,
            Tok::Ident(name) => {
                let sym = parse_symbol_name(&name).ok_or_else(|| self.error(&["class symbol"]))?;
                let span = self.bump().span;
                Expr::Sym(sym, span)
            }
            _ => return Err(self.error(&["class symbol"])),
        };
        let Expr::Sym(sym, span) = lhs else {
            unreachable!()
        };
        self.expect(Tok::Equals, "'='")?;
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Expr::Num(mut value, _) = (match self.peek().tok {
            Tok::Number(_) => self.number()?,
            _ => return Err(self.error(&["number"])),
        }) else {
            unreachable!()
        };
        if self.peek().tok == Tok::Slash {
            self.bump();
            let Expr::Num(den, den_span) = (match self.peek().tok {
                Tok::Number(_) => self.number()?,
                _ => return Err(self.error(&["number"])),
            }) else {
                unreachable!()
            };
            if den == Rational::from_integer(BigInt::from(0)) {
                return Err(DslError::Type {
                    span: den_span,
                    msg: "division by zero".into(),
                });
            }
            value /= den;
        }
        if negative {
            value = -value;
        }
        Ok((sym, span, value))
    }

    pub fn eat_comma(&mut self) -> bool {
        if self.peek().tok == Tok::Comma {
            self.bump();
            true
        } else {
            false
        }
    }
}

fn parse_index(rest: &str) -> Option<u32> {
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

pub fn parse_symbol_name(name: &str) -> Option<SymRef> {
    match name {
        "l" | "la" => return Some(SymRef::Lambda),
        "dirr" => return Some(SymRef::DeltaIrr),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("psi_") {
        return parse_index(rest).map(SymRef::Psi);
    }
    if let Some(rest) = name.strip_prefix("a_") {
        return parse_index(rest).map(SymRef::Alpha);
    }
    if let Some(rest) = name.strip_prefix("b_") {
        return parse_index(rest).map(SymRef::Beta);
    }
    None
}
