//! Lexer, parser and printer for the expression language.
//!
//! ```text
//! expr   := term { ("+"|"-") term }
//! term   := factor { ("*"|"/") factor }
//! factor := base [ "^" int ]
//! base   := int | "q" | "(" expr ")" | "-" factor | call
//! call   := NAME "(" args ")"
//! mon    := ["+"|"-"] "q" ["^" int] | ["+"|"-"] "1"
//! int    := ["+"|"-"] DIGITS
//! ```
//!
//! Unary minus takes a whole `factor`, so `-q^2` is `-(q^2)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use qhecke::theta::PochLength;
use qhecke::QMonomial;

/// Byte range `start..end` in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn to(self, other: Span) -> Span {
        Span {
            start: self.start,
            end: other.end,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// A library primitive with its structural parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitive {
    /// `J(m)`
    Eta { m: i64 },
    /// `J(a,m)`
    J { a: i64, m: i64 },
    /// `JB(a,m)`
    JBar { a: i64, m: i64 },
    /// `jt(x, m)`
    Theta { x: QMonomial, m: i64 },
    /// `m(x, M, z)`
    Appell { x: QMonomial, m: i64, z: QMonomial },
    /// `f(a,b,c; x, y)`
    F { abc: [i64; 3], x: QMonomial, y: QMonomial },
    /// `g(a,b,c,d,e,f; x, y, z)`
    G {
        coeffs: [i64; 6],
        x: QMonomial,
        y: QMonomial,
        z: QMonomial,
    },
    Chi0,
    Chi1,
    KlA,
    KlB,
    /// `ptheta(A,B[,C])`
    PartialTheta { a: i64, b: i64, c: Option<i64> },
    /// `poch(x, n)` or `poch(x, inf)`
    Poch { x: QMonomial, len: PochLength },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(BigInt),
    Q,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Primitive),
}

/// Expression node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(op, ..) => op.precedence(),
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            ExprKind::Num(_) | ExprKind::Q | ExprKind::Call(_) => 5,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Num(n) => write!(f, "{n}"),
            ExprKind::Q => f.write_str("q"),
            ExprKind::Neg(e) => {
                f.write_str("-")?;
                write_operand(f, e, e.precedence() < 4)
            }
            ExprKind::Binary(op, l, r) => {
                write_operand(f, l, l.precedence() < op.precedence())?;
                write!(f, " {} ", op.symbol())?;
                write_operand(f, r, r.precedence() <= op.precedence())
            }
            ExprKind::Pow(b, k) => {
                write_operand(f, b, b.precedence() < 5)?;
                write!(f, "^{k}")
            }
            ExprKind::Call(p) => write!(f, "{p}"),
        }
    }
}

/// Monomial in argument syntax: `q`, `-q^3`, `q^-2`, `1`, `-1`.
pub fn format_monomial(x: QMonomial) -> String {
    let sign = if x.sign() < 0 { "-" } else { "" };
    match x.exp() {
        0 => format!("{sign}1"),
        1 => format!("{sign}q"),
        e => format!("{sign}q^{e}"),
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mon = |x: &QMonomial| format_monomial(*x);
        match self {
            Primitive::Eta { m } => write!(f, "J({m})"),
            Primitive::J { a, m } => write!(f, "J({a},{m})"),
            Primitive::JBar { a, m } => write!(f, "JB({a},{m})"),
            Primitive::Theta { x, m } => write!(f, "jt({}, {m})", mon(x)),
            Primitive::Appell { x, m, z } => write!(f, "m({}, {m}, {})", mon(x), mon(z)),
            Primitive::F { abc, x, y } => write!(f, "f({}; {}, {})", join(abc), mon(x), mon(y)),
            Primitive::G { coeffs, x, y, z } => {
                write!(f, "g({}; {}, {}, {})", join(coeffs), mon(x), mon(y), mon(z))
            }
            Primitive::Chi0 => f.write_str("chi0()"),
            Primitive::Chi1 => f.write_str("chi1()"),
            Primitive::KlA => f.write_str("klA()"),
            Primitive::KlB => f.write_str("klB()"),
            Primitive::PartialTheta { a, b, c: None } => write!(f, "ptheta({a},{b})"),
            Primitive::PartialTheta { a, b, c: Some(c) } => write!(f, "ptheta({a},{b},{c})"),
            Primitive::Poch { x, len } => match len {
                PochLength::Finite(n) => write!(f, "poch({}, {n})", mon(x)),
                PochLength::Infinite => write!(f, "poch({}, inf)", mon(x)),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub offset: usize,
    /// Descriptions of the tokens that would have been accepted.
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset,
            expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut end = i + c.len_utf8();
        let tok = if c.is_ascii_digit() {
            chars.next();
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            Tok::Int(text[i..end].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            chars.next();
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            Tok::Ident(text[i..end].to_string())
        } else if "+-*/^(),;".contains(c) {
            chars.next();
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                offset: i,
                expected: BTreeSet::from(["expression token".to_string()]),
                found: format!("`{c}`"),
            });
        };
        out.push(Token {
            tok,
            span: Span { start: i, end },
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span {
            start: text.len(),
            end: text.len(),
        },
    });
    Ok(out)
}

const PRIMITIVES: &str = "J, JB, jt, m, f, g, chi0, chi1, klA, klB, ptheta, poch";

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    expected: BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn error(&mut self) -> ParseError {
        let (offset, found) = (self.peek().span.start, self.peek().tok.describe());
        ParseError {
            offset,
            expected: std::mem::take(&mut self.expected),
            found,
        }
    }

    fn error_expecting(&mut self, what: &str) -> ParseError {
        self.expected.insert(what.to_string());
        self.error()
    }

    /// Consumes the symbol `c` if it is next.
    fn eat(&mut self, c: char) -> Option<Span> {
        if self.peek().tok == Tok::Sym(c) {
            Some(self.advance().span)
        } else {
            self.expected.insert(c.to_string());
            None
        }
    }

    fn expect(&mut self, c: char) -> Result<Span, ParseError> {
        match self.eat(c) {
            Some(s) => Ok(s),
            None => Err(self.error()),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+').is_some() {
                BinOp::Add
            } else if self.eat('-').is_some() {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = if self.eat('*').is_some() {
                BinOp::Mul
            } else if self.eat('/').is_some() {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.eat('^').is_none() {
            return Ok(base);
        }
        let (k, end) = self.small_int()?;
        let span = base.span.to(end);
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), k),
            span,
        })
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.advance();
                Ok(Expr {
                    kind: ExprKind::Num(n),
                    span: t.span,
                })
            }
            Tok::Ident(name) if name == "q" => {
                self.advance();
                Ok(Expr {
                    kind: ExprKind::Q,
                    span: t.span,
                })
            }
            Tok::Ident(name) => self.call(&name, t.span),
            Tok::Sym('(') => {
                self.advance();
                let inner = self.expr()?;
                let close = self.expect(')')?;
                Ok(Expr {
                    kind: inner.kind,
                    span: t.span.to(close),
                })
            }
            Tok::Sym('-') => {
                self.advance();
                let inner = self.factor()?;
                let span = t.span.to(inner.span);
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    span,
                })
            }
            _ => {
                for what in ["integer", "q", "(", "-", "primitive call"] {
                    self.expected.insert(what.to_string());
                }
                Err(self.error())
            }
        }
    }

    /// Optionally signed integer fitting in an `i64`.
    fn small_int(&mut self) -> Result<(i64, Span), ParseError> {
        let start = self.peek().span;
        let negative = if self.eat('-').is_some() {
            true
        } else {
            self.eat('+');
            false
        };
        let t = self.peek().clone();
        let Tok::Int(n) = t.tok else {
            return Err(self.error_expecting("integer"));
        };
        let n = if negative { -n } else { n };
        match i64::try_from(&n) {
            Ok(v) => {
                self.advance();
                Ok((v, start.to(t.span)))
            }
            Err(_) => Err(self.error_expecting("integer fitting in 64 bits")),
        }
    }

    fn monomial(&mut self) -> Result<QMonomial, ParseError> {
        let sign = if self.eat('-').is_some() {
            -1
        } else {
            self.eat('+');
            1
        };
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(ref s) if s == "q" => {
                self.advance();
                let exp = if self.eat('^').is_some() { self.small_int()?.0 } else { 1 };
                Ok(QMonomial::new(sign, exp))
            }
            Tok::Int(ref n) if *n == BigInt::from(1) => {
                self.advance();
                Ok(QMonomial::new(sign, 0))
            }
            _ => {
                self.expected.insert("q".to_string());
                self.expected.insert("1".to_string());
                Err(self.error())
            }
        }
    }

    /// `n` comma-separated integers.
    fn ints<const N: usize>(&mut self) -> Result<[i64; N], ParseError> {
        let mut out = [0; N];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.expect(',')?;
            }
            *slot = self.small_int()?.0;
        }
        Ok(out)
    }

    fn monomials<const N: usize>(&mut self) -> Result<[QMonomial; N], ParseError> {
        let mut out = [QMonomial::one(); N];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.expect(',')?;
            }
            *slot = self.monomial()?;
        }
        Ok(out)
    }

    fn call(&mut self, name: &str, name_span: Span) -> Result<Expr, ParseError> {
        let known = matches!(
            name,
            "J" | "JB" | "jt" | "m" | "f" | "g" | "chi0" | "chi1" | "klA" | "klB" | "ptheta" | "poch"
        );
        if !known {
            return Err(self.error_expecting(&format!("primitive name ({PRIMITIVES}) or q")));
        }
        self.advance();
        self.expect('(')?;
        let prim = match name {
            "J" => {
                let [first] = self.ints::<1>()?;
                if self.eat(',').is_some() {
                    let [m] = self.ints::<1>()?;
                    Primitive::J { a: first, m }
                } else {
                    Primitive::Eta { m: first }
                }
            }
            "JB" => {
                let [a, m] = self.ints()?;
                Primitive::JBar { a, m }
            }
            "jt" => {
                let [x] = self.monomials()?;
                self.expect(',')?;
                let [m] = self.ints()?;
                Primitive::Theta { x, m }
            }
            "m" => {
                let [x] = self.monomials()?;
                self.expect(',')?;
                let [m] = self.ints()?;
                self.expect(',')?;
                let [z] = self.monomials()?;
                Primitive::Appell { x, m, z }
            }
            "f" => {
                let abc = self.ints()?;
                self.expect(';')?;
                let [x, y] = self.monomials()?;
                Primitive::F { abc, x, y }
            }
            "g" => {
                let coeffs = self.ints()?;
                self.expect(';')?;
                let [x, y, z] = self.monomials()?;
                Primitive::G { coeffs, x, y, z }
            }
            "chi0" => Primitive::Chi0,
            "chi1" => Primitive::Chi1,
            "klA" => Primitive::KlA,
            "klB" => Primitive::KlB,
            "ptheta" => {
                let [a, b] = self.ints()?;
                let c = if self.eat(',').is_some() {
                    Some(self.ints::<1>()?[0])
                } else {
                    None
                };
                Primitive::PartialTheta { a, b, c }
            }
            "poch" => {
                let [x] = self.monomials()?;
                self.expect(',')?;
                let len = match &self.peek().tok {
                    Tok::Ident(s) if s == "inf" => {
                        self.advance();
                        PochLength::Infinite
                    }
                    Tok::Int(n) => match u64::try_from(n) {
                        Ok(n) => {
                            self.advance();
                            PochLength::Finite(n)
                        }
                        Err(_) => return Err(self.error_expecting("length fitting in 64 bits")),
                    },
                    _ => {
                        self.expected.insert("nonnegative integer".to_string());
                        return Err(self.error_expecting("inf"));
                    }
                };
                Primitive::Poch { x, len }
            }
            _ => unreachable!("checked above"),
        };
        let close = self.expect(')')?;
        Ok(Expr {
            kind: ExprKind::Call(prim),
            span: name_span.to(close),
        })
    }
}

fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
    let span = lhs.span.to(rhs.span);
    Expr {
        kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
        span,
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        expected: BTreeSet::new(),
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_expecting("end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("-q^2").unwrap();
        assert_eq!(e.to_string(), "-q^2");
        assert!(matches!(e.kind, ExprKind::Neg(_)));
        let e = parse("1 - 2 - 3").unwrap();
        assert_eq!(e.to_string(), "1 - 2 - 3");
        let e = parse("1 - (2 - 3)").unwrap();
        assert_eq!(e.to_string(), "1 - (2 - 3)");
        let e = parse("q^-1 * (1 + q)^2 / J(1)").unwrap();
        assert_eq!(e.to_string(), "q^-1 * (1 + q)^2 / J(1)");
    }

    #[test]
    fn spans() {
        let e = parse("2 * J(1, 3)").unwrap();
        assert_eq!(e.span, Span { start: 0, end: 11 });
        let ExprKind::Binary(_, _, r) = e.kind else { panic!() };
        assert_eq!(r.span, Span { start: 4, end: 11 });
    }

    #[test]
    fn errors() {
        let err = parse("m(q^7, 15, q^9").unwrap_err();
        assert_eq!(err.offset, 14);
        assert!(err.expected.contains(")"));
        let err = parse("f(1,2,1, q, q)").unwrap_err();
        assert_eq!(err.offset, 7);
        assert!(err.expected.contains(";"));
        let err = parse("sin(q)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(parse("q $ 1").is_err());
        assert!(parse("").is_err());
        assert!(parse("q^2^3").is_err());
        assert!(parse("jt(2q, 1)").is_err());
    }

    #[test]
    fn primitives_print_canonically() {
        for text in [
            "J(3)",
            "J(-1,4)",
            "JB(0,1)",
            "jt(-q^-2, 3)",
            "m(q^7, 15, -1)",
            "f(1,2,1; q, q)",
            "g(1,2,1,2,2,1; q, q^2, q^3)",
            "chi0() + chi1() - klA() * klB()",
            "ptheta(3,3)",
            "ptheta(6,8,1)",
            "poch(q, 5) / poch(-1, inf)",
        ] {
            assert_eq!(parse(text).unwrap().to_string(), text);
        }
    }
}
