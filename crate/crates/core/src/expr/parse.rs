//! Recursive-descent parser for the ASCII expression grammar:
//!
//! ```text
//! expr       := term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := atom ('^' natural)?
//! atom       := rational | 'j' | identifier | '(' expr ')' | '-' atom
//! rational   := integer ('/' positive-integer)?
//! identifier := letter (letter|digit|'_'|'\'')*
//! ```
//!
//! Parsing normalizes on the fly, so the result is always canonical.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::chart::Chart;
use super::poly::Poly;
use super::scalar::SplitComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
}

/// A parse failure. `offset` is the 0-based character position; `line` and
/// `column` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => {
                write!(f, "syntax error at line {}, column {}: {}", self.line, self.column, msg)
            }
            ParseErrorKind::UnknownIdentifier(name) => write!(
                f,
                "unknown identifier `{}` at line {}, column {}",
                name, self.line, self.column
            ),
        }
    }
}

impl ParseError {
    /// Shifts the reported location, for expressions embedded in a larger file.
    pub fn relocate(mut self, line: usize, column_offset: usize) -> Self {
        if self.line == 1 {
            self.column += column_offset;
        }
        self.line += line - 1;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
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

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    chars: Vec<char>,
}

impl<'a> Lexer<'a> {
    fn tokenize(text: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let lexer = Lexer { text, chars: text.chars().collect() };
        lexer.run()
    }

    fn run(&self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        let mut i = 0;
        let n = self.chars.len();
        while i < n {
            let c = self.chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                d if d.is_ascii_digit() => {
                    while i < n && self.chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = self.chars[start..i].iter().collect();
                    out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                    continue;
                }
                a if a.is_ascii_alphabetic() => {
                    while i < n && (self.chars[i].is_ascii_alphanumeric() || matches!(self.chars[i], '_' | '\'')) {
                        i += 1;
                    }
                    out.push((Tok::Ident(self.chars[start..i].iter().collect()), start));
                    continue;
                }
                other => {
                    return Err(error_at(self.text, start, ParseErrorKind::Syntax(format!("unexpected character `{other}`"))));
                }
            };
            out.push((tok, start));
            i += 1;
        }
        out.push((Tok::End, n));
        Ok(out)
    }
}

fn error_at(text: &str, offset: usize, kind: ParseErrorKind) -> ParseError {
    let mut line = 1;
    let mut column = 1;
    for c in text.chars().take(offset) {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    ParseError { kind, offset, line, column }
}

struct Parser<'a> {
    text: &'a str,
    chart: &'a Chart,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        error_at(self.text, self.offset(), ParseErrorKind::Syntax(msg.into()))
    }

    fn expected(&self, what: &str) -> ParseError {
        self.syntax(format!("expected {what}, found {}", self.peek().describe()))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(n) => {
                let exp = n.to_u32().ok_or_else(|| self.syntax("exponent too large"))?;
                Ok(base.pow(exp))
            }
            _ => {
                self.pos -= 1;
                Err(self.expected("a natural-number exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                let mut value = BigRational::from_integer(num);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(den) if !den.is_zero() => {
                            self.bump();
                            value /= BigRational::from_integer(den);
                        }
                        Tok::Int(_) => return Err(self.syntax("zero denominator")),
                        _ => return Err(self.expected("a positive-integer denominator")),
                    }
                }
                Ok(Poly::constant(self.chart, SplitComplex::real(value)))
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "j" {
                    return Ok(Poly::constant(self.chart, SplitComplex::j()));
                }
                match self.chart.index_of(&name) {
                    Some(i) => Ok(Poly::var(self.chart, i)),
                    None => Err(error_at(self.text, at, ParseErrorKind::UnknownIdentifier(name))),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.expected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => {
                self.bump();
                Ok(-self.atom()?)
            }
            _ => Err(self.expected("a number, `j`, an identifier or `(`")),
        }
    }
}

/// Parses `text` into a canonical polynomial over `chart`.
pub fn parse_expr(text: &str, chart: &Chart) -> Result<Poly, ParseError> {
    let toks = Lexer::tokenize(text)?;
    let mut parser = Parser { text, chart, toks, pos: 0 };
    let poly = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.expected("an operator or end of input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::poly::Monomial;

    fn chart() -> Chart {
        Chart::new(&["x", "y", "t"]).unwrap()
    }

    #[test]
    fn direct_reading() {
        let p = parse_expr("3/2*x^2*y - j*t", &chart()).unwrap();
        let terms: Vec<_> = p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (vec![0, 0, 1], -SplitComplex::j()),
                (vec![2, 1, 0], SplitComplex::from_ratio(3, 2)),
            ]
        );
    }

    #[test]
    fn expansion() {
        let c = chart();
        assert_eq!(parse_expr("(x+y)^2", &c).unwrap(), parse_expr("x^2 + 2*x*y + y^2", &c).unwrap());
        assert_eq!(parse_expr("x^0", &c).unwrap(), Poly::one(&c));
    }

    #[test]
    fn unary_minus_binds_to_atom() {
        let c = chart();
        assert_eq!(parse_expr("-x^2", &c).unwrap(), parse_expr("x^2", &c).unwrap());
        assert_eq!(parse_expr("-1*x^2", &c).unwrap(), -parse_expr("x^2", &c).unwrap());
        assert_eq!(parse_expr("--x", &c).unwrap(), parse_expr("x", &c).unwrap());
    }

    #[test]
    fn dangling_operator_reports_position() {
        let err = parse_expr("x + ", &chart()).unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!((err.line, err.column), (1, 5));
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn unknown_identifier_is_named() {
        let err = parse_expr("x + zz*2", &chart()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("zz".into()));
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn malformed_inputs() {
        let c = chart();
        for bad in ["", "x y", "(x", "x^y", "3/0", "3/", "x ^ -1", "x $ y", "*x"] {
            assert!(parse_expr(bad, &c).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn primed_identifiers() {
        let c = Chart::new(&["x", "x'"]).unwrap();
        let p = parse_expr("x'*x", &c).unwrap();
        assert_eq!(p.terms().next().unwrap().0, &Monomial::from_exponents(vec![1, 1]));
    }

    #[test]
    fn multi_line_location() {
        let err = parse_expr("x +\n  )", &chart()).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
    }
}
