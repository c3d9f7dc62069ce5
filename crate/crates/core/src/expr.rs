//! A small expression language for curve components.
//!
//! Expressions have exactly one free variable, `t`. The grammar is
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' integer)?
//! atom   := number | 't' | func '(' expr ')' | '(' expr ')' | '-' factor
//! func   := sin | cos | sinh | cosh | exp
//! ```
//!
//! Unary minus takes a `factor` operand, so `-t^2` is `-(t^2)`. Exponents are
//! non-negative integer literals, which keeps [`Expr::differentiate`] closed
//! over the same node set.

use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sinh" => Some(Func::Sinh),
            "cosh" => Some(Func::Cosh),
            "exp" => Some(Func::Exp),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Exp => v.exp(),
        }
    }
}

/// Expression tree over the single variable `t`.
///
/// Division by zero is detected when the expression is evaluated, never at
/// parse time.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero in `{expr}` at t = {t}")]
    DivisionByZero { expr: String, t: f64 },
}

pub fn parse(source: &str) -> Result<Expr, ParseError> {
    Expr::parse(source)
}

impl Expr {
    pub fn parse(source: &str) -> Result<Expr, ParseError> {
        let tokens = tokenize(source)?;
        if tokens.len() == 1 {
            return Err(ParseError::Empty);
        }
        let mut parser = Parser { tokens, pos: 0 };
        let expr = parser.expr()?;
        let tok = parser.peek();
        if tok.kind != TokenKind::End {
            return Err(ParseError::Syntax {
                offset: tok.offset,
                expected: vec!["'+'", "'-'", "'*'", "'/'", "end of input"],
                found: tok.kind.describe(),
            });
        }
        Ok(expr)
    }

    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Neg(a) => -a.eval(t)?,
            Expr::Add(a, b) => a.eval(t)? + b.eval(t)?,
            Expr::Sub(a, b) => a.eval(t)? - b.eval(t)?,
            Expr::Mul(a, b) => a.eval(t)? * b.eval(t)?,
            Expr::Div(a, b) => {
                let den = b.eval(t)?;
                if den == 0.0 {
                    return Err(EvalError::DivisionByZero {
                        expr: self.to_string(),
                        t,
                    });
                }
                a.eval(t)? / den
            }
            Expr::Pow(a, n) => a.eval(t)?.powi(*n as i32),
            Expr::Call(f, a) => f.apply(a.eval(t)?),
        })
    }

    /// Symbolic derivative with respect to `t`, with constant folding only.
    pub fn differentiate(&self) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var => Expr::Const(1.0),
            Expr::Neg(a) => neg(a.differentiate()),
            Expr::Add(a, b) => add(a.differentiate(), b.differentiate()),
            Expr::Sub(a, b) => sub(a.differentiate(), b.differentiate()),
            Expr::Mul(a, b) => add(
                mul(a.differentiate(), (**b).clone()),
                mul((**a).clone(), b.differentiate()),
            ),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.differentiate(), (**b).clone()),
                    mul((**a).clone(), b.differentiate()),
                ),
                pow((**b).clone(), 2),
            ),
            Expr::Pow(a, n) => match n {
                0 => Expr::Const(0.0),
                _ => mul(
                    mul(Expr::Const(*n as f64), pow((**a).clone(), n - 1)),
                    a.differentiate(),
                ),
            },
            Expr::Call(f, a) => {
                let inner = a.differentiate();
                let outer = match f {
                    Func::Sin => call(Func::Cos, (**a).clone()),
                    Func::Cos => neg(call(Func::Sin, (**a).clone())),
                    Func::Sinh => call(Func::Cosh, (**a).clone()),
                    Func::Cosh => call(Func::Sinh, (**a).clone()),
                    Func::Exp => call(Func::Exp, (**a).clone()),
                };
                mul(outer, inner)
            }
        }
    }

    /// `k`-th derivative, `k = 0` returning a clone.
    pub fn nth_derivative(&self, k: usize) -> Expr {
        (0..k).fold(self.clone(), |e, _| e.differentiate())
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(c) if c.is_sign_negative() => 3,
            Expr::Const(_) | Expr::Var | Expr::Call(..) => 5,
        }
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        (Expr::Const(z), other) | (other, Expr::Const(z)) if z == 0.0 => other,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
        (other, Expr::Const(z)) if z == 0.0 => other,
        (Expr::Const(z), other) if z == 0.0 => neg(other),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
        (Expr::Const(z), _) | (_, Expr::Const(z)) if z == 0.0 => Expr::Const(0.0),
        (Expr::Const(o), other) | (other, Expr::Const(o)) if o == 1.0 => other,
        (Expr::Const(m), other) | (other, Expr::Const(m)) if m == -1.0 => neg(other),
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(z), _) if z == 0.0 => Expr::Const(0.0),
        (other, Expr::Const(o)) if o == 1.0 => other,
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, n: u32) -> Expr {
    match (a, n) {
        (_, 0) => Expr::Const(1.0),
        (a, 1) => a,
        (Expr::Const(c), n) => Expr::Const(c.powi(n as i32)),
        (a, n) => Expr::Pow(Box::new(a), n),
    }
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Left operands need precedence >= the operator's, right operands
        // strictly greater, so the printed text parses back to the same tree.
        fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if e.precedence() >= min {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        }
        match self {
            Expr::Const(c) => {
                if c.is_sign_negative() {
                    write!(f, "-{}", -c)
                } else {
                    write!(f, "{c}")
                }
            }
            Expr::Var => f.write_str("t"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let (op, prec) = match self {
                    Expr::Add(..) => (" + ", 1),
                    Expr::Sub(..) => (" - ", 1),
                    Expr::Mul(..) => ("*", 2),
                    _ => ("/", 2),
                };
                wrap(f, a, prec)?;
                f.write_str(op)?;
                wrap(f, b, prec + 1)
            }
            Expr::Pow(a, n) => {
                wrap(f, a, 5)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number { value: f64, integer: Option<u32> },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Number { value, .. } => format!("number {value}"),
            TokenKind::Ident(name) => format!("identifier `{name}`"),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Caret => "'^'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars: Peekable<CharIndices<'_>> = source.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            chars.next();
            tokens.push(Token { kind, offset });
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let end = scan_number(source, offset);
            let text = &source[offset..end];
            let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                offset,
                expected: vec!["number"],
                found: format!("`{text}`"),
            })?;
            let integer = if text.bytes().all(|b| b.is_ascii_digit()) {
                text.parse::<u32>().ok()
            } else {
                None
            };
            while chars.peek().is_some_and(|&(i, _)| i < end) {
                chars.next();
            }
            tokens.push(Token {
                kind: TokenKind::Number { value, integer },
                offset,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = offset;
            while let Some(&(i, ch)) = chars.peek() {
                if ch.is_ascii_alphanumeric() || ch == '_' {
                    end = i + ch.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Ident(source[offset..end].to_string()),
                offset,
            });
            continue;
        }
        return Err(ParseError::Syntax {
            offset,
            expected: vec!["number", "'t'", "function name", "operator", "parenthesis"],
            found: format!("character {c:?}"),
        });
    }
    tokens.push(Token {
        kind: TokenKind::End,
        offset: source.len(),
    });
    Ok(tokens)
}

/// End byte of the numeric literal starting at `start`: digits, an optional
/// fraction and an optional signed exponent.
fn scan_number(source: &str, start: usize) -> usize {
    let bytes = source.as_bytes();
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::End {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, kind: TokenKind, what: &'static str) -> Result<(), ParseError> {
        let tok = self.bump();
        if tok.kind == kind {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: tok.offset,
                expected: vec![what],
                found: tok.kind.describe(),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                TokenKind::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                TokenKind::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let tok = self.bump();
        match tok.kind {
            TokenKind::Number {
                integer: Some(n), ..
            } => Ok(Expr::Pow(Box::new(base), n)),
            other => Err(ParseError::Syntax {
                offset: tok.offset,
                expected: vec!["non-negative integer exponent"],
                found: other.describe(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.bump();
        match tok.kind {
            TokenKind::Number { value, .. } => Ok(Expr::Const(value)),
            TokenKind::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(inner)
            }
            TokenKind::Ident(name) => {
                if name == "t" {
                    return Ok(Expr::Var);
                }
                match Func::from_name(&name) {
                    Some(func) => {
                        self.expect(TokenKind::LParen, "'('")?;
                        let arg = self.expr()?;
                        self.expect(TokenKind::RParen, "')'")?;
                        Ok(Expr::Call(func, Box::new(arg)))
                    }
                    None => Err(ParseError::UnknownIdentifier {
                        name,
                        offset: tok.offset,
                    }),
                }
            }
            other => Err(ParseError::Syntax {
                offset: tok.offset,
                expected: vec!["number", "'t'", "function call", "'('", "'-'"],
                found: other.describe(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn parses_single_function() {
        assert_eq!(p("cos(t)"), Expr::Call(Func::Cos, Box::new(Expr::Var)));
    }

    #[test]
    fn parses_polynomial_with_precedence() {
        let expected = Expr::Add(
            Box::new(Expr::Mul(Box::new(Expr::Var), Box::new(Expr::Var))),
            Box::new(Expr::Const(1.0)),
        );
        assert_eq!(p("t*t + 1"), expected);
        assert_eq!(p("  t * t+1 "), expected);
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(
            p("-t^2"),
            Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var), 2)))
        );
        assert_eq!(
            p("(-t)^2"),
            Expr::Pow(Box::new(Expr::Neg(Box::new(Expr::Var))), 2)
        );
        assert_eq!(p("-t^2").eval(3.0).unwrap(), -9.0);
    }

    #[test]
    fn left_associative() {
        assert_eq!(p("1 - 2 - 3").eval(0.0).unwrap(), -4.0);
        assert_eq!(p("8/2/2").eval(0.0).unwrap(), 2.0);
    }

    #[test]
    fn rejects_unknown_identifier() {
        match parse("xy+1") {
            Err(ParseError::UnknownIdentifier { name, offset }) => {
                assert_eq!(name, "xy");
                assert_eq!(offset, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_offset_and_expectation() {
        match parse("t + * 2") {
            Err(ParseError::Syntax {
                offset, expected, ..
            }) => {
                assert_eq!(offset, 4);
                assert!(!expected.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("t^1.5"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("sin t"),
            Err(ParseError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            parse("(t"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("t t"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert_eq!(parse("   "), Err(ParseError::Empty));
    }

    #[test]
    fn derivative_table() {
        assert_eq!(p("sin(t)").differentiate(), p("cos(t)"));
        assert_eq!(p("t^3").differentiate(), p("3*t^2"));
        assert_eq!(p("cos(t)").nth_derivative(4), p("cos(t)"));
        assert_eq!(p("exp(t)").differentiate(), p("exp(t)"));
        assert_eq!(p("sinh(t)").differentiate(), p("cosh(t)"));
        assert_eq!(p("7").differentiate(), Expr::Const(0.0));
    }

    #[test]
    fn eval_basics() {
        assert_eq!(p("cos(t)").eval(0.0).unwrap(), 1.0);
        assert_eq!(p("t*t+1").eval(1.0).unwrap(), 2.0);
        assert!(matches!(
            p("1/t").eval(0.0),
            Err(EvalError::DivisionByZero { .. })
        ));
        assert_eq!(p("2.5e-1 * 4").eval(0.0).unwrap(), 1.0);
    }

    #[test]
    fn quotient_rule() {
        let e = p("1/(t*t + 1)");
        let d = e.differentiate();
        let t = 0.7;
        let expected = -2.0 * t / (t * t + 1.0f64).powi(2);
        assert!((d.eval(t).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p("t*t + 1").to_string(), "t*t + 1");
        assert_eq!(p("sin( t )").to_string(), "sin(t)");
        assert_eq!(p("1 - (t - 2)").to_string(), "1 - (t - 2)");
        assert_eq!(p("(-t)^2").to_string(), "(-t)^2");
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            Just(Expr::Var),
            (0u32..40).prop_map(|k| Expr::Const(k as f64 / 8.0)),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
                (
                    inner,
                    prop_oneof![
                        Just(Func::Sin),
                        Just(Func::Cos),
                        Just(Func::Sinh),
                        Just(Func::Cosh),
                        Just(Func::Exp)
                    ]
                )
                    .prop_map(|(a, f)| Expr::Call(f, Box::new(a))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parse(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e);
            prop_assert_eq!(parse(&reparsed.to_string()).unwrap(), reparsed);
        }
    }
}
