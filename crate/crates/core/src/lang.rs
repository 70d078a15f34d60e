//! Parser for the textual input language describing ideals and rigid
//! hypersurfaces (`.germ` files).
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! ideal file:  ring z1..zN ; ideal = <poly> ("," <poly>)* ;
//! hyper file:  ring z1..zN ; hyper = Re(<poly>) ("+" abs2(<poly>))* ;
//! <poly>:      integer or rational literals (p/q), variables z1..zN,
//!              + - * ^, unary minus, parentheses
//! ```
//!
//! Exponents must be non-negative integer literals. Every error carries a
//! line/column position; the parser never panics on malformed input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::ideal::IdealPresentation;
use crate::poly::{Polynomial, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocKind {
    Ideal,
    Hypersurface,
}

/// Raw input text plus its declared kind.
#[derive(Debug, Clone)]
pub struct SourceDocument {
    pub text: String,
    pub kind: DocKind,
}

impl SourceDocument {
    pub fn ideal(text: impl Into<String>) -> Self {
        SourceDocument {
            text: text.into(),
            kind: DocKind::Ideal,
        }
    }

    pub fn hypersurface(text: impl Into<String>) -> Self {
        SourceDocument {
            text: text.into(),
            kind: DocKind::Hypersurface,
        }
    }

    /// Guess the kind from the keyword after the ring declaration.
    pub fn detect(text: impl Into<String>) -> Result<Self, ParseError> {
        let text = text.into();
        let kind = if text.contains("hyper") {
            DocKind::Hypersurface
        } else if text.contains("ideal") {
            DocKind::Ideal
        } else {
            return Err(ParseError::at(
                1,
                1,
                "input declares neither `ideal` nor `hyper`".into(),
            ));
        };
        Ok(SourceDocument { text, kind })
    }
}

/// Hypersurface data `Re(h) + sum |f_j|^2` in parsed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedHypersurface {
    pub nvars: usize,
    /// The pure term `h`; has a nonzero degree-1 part.
    pub h: Polynomial,
    /// The squared-modulus terms `f_j`.
    pub fs: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, col: usize, message: String) -> Self {
        ParseError { line, col, message }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    Semi,
    Equals,
    DotDot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::DotDot => write!(f, "`..`"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(&c) = self.chars.peek() else {
                return Ok(out);
            };
            let tok = match c {
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '^' => {
                    self.bump();
                    Tok::Caret
                }
                '/' => {
                    self.bump();
                    Tok::Slash
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                ';' => {
                    self.bump();
                    Tok::Semi
                }
                '=' => {
                    self.bump();
                    Tok::Equals
                }
                '.' => {
                    self.bump();
                    if self.chars.peek() == Some(&'.') {
                        self.bump();
                        Tok::DotDot
                    } else {
                        return Err(ParseError::at(line, col, "expected `..`".into()));
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut digits = String::new();
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_digit()) {
                        digits.push(self.bump().unwrap());
                    }
                    Tok::Int(digits.parse().expect("digit run parses as integer"))
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut ident = String::new();
                    while matches!(self.chars.peek(),
                        Some(d) if d.is_ascii_alphanumeric() || *d == '_')
                    {
                        ident.push(self.bump().unwrap());
                    }
                    Tok::Ident(ident)
                }
                other => {
                    return Err(ParseError::at(
                        line,
                        col,
                        format!("unexpected character `{other}`"),
                    ));
                }
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: Lexer::new(text).tokenize()?,
            pos: 0,
            nvars: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or((1, 1), |(_, l, c)| (*l, *c))
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        let suffix = if self.pos >= self.toks.len() {
            " (at end of input)".to_string()
        } else {
            String::new()
        };
        ParseError::at(line, col, format!("{}{}", message.into(), suffix))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {want}, found {t}"))),
            None => Err(self.err(format!("expected {want}"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected `{kw}`, found {t}"))),
            None => Err(self.err(format!("expected `{kw}`"))),
        }
    }

    /// `ring z1..zN ;` establishes the variable count.
    fn parse_ring(&mut self) -> Result<(), ParseError> {
        self.expect_keyword("ring")?;
        let first = self.parse_var_name()?;
        if first != 1 {
            return Err(self.err("ring declaration must start at z1"));
        }
        self.expect(&Tok::DotDot)?;
        let last = self.parse_var_name()?;
        if last < 1 {
            return Err(self.err("ring needs at least one variable"));
        }
        self.nvars = last;
        self.expect(&Tok::Semi)?;
        Ok(())
    }

    fn parse_var_name(&mut self) -> Result<usize, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                let idx = var_index(&s)
                    .ok_or_else(|| self.err(format!("expected a variable like z1, found `{s}`")))?;
                self.pos += 1;
                Ok(idx + 1)
            }
            Some(t) => Err(self.err(format!("expected a variable name, found {t}"))),
            None => Err(self.err("expected a variable name")),
        }
    }

    fn parse_polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.parse_term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.parse_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.parse_factor()?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.parse_factor()?);
        }
        let base = self.parse_atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exp = self.parse_exponent()?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                if n.is_negative() {
                    return Err(self.err("exponents must be non-negative"));
                }
                let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(e)
            }
            Some(t) => Err(self.err(format!("expected an integer exponent, found {t}"))),
            None => Err(self.err("expected an integer exponent")),
        }
    }

    fn parse_atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                // Optional `/ d` makes an exact rational literal.
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            Ok(Polynomial::constant(self.nvars, Rat::new(n, d)))
                        }
                        Some(Tok::Int(_)) => Err(self.err("zero denominator")),
                        _ => Err(self.err("expected a denominator after `/`")),
                    }
                } else {
                    Ok(Polynomial::constant(self.nvars, Rat::from_integer(n)))
                }
            }
            Some(Tok::Ident(s)) => {
                let Some(idx) = var_index(&s) else {
                    return Err(self.err(format!("unknown name `{s}` in polynomial")));
                };
                if idx >= self.nvars {
                    return Err(self.err(format!(
                        "undeclared variable `{s}` (ring has {} variables)",
                        self.nvars
                    )));
                }
                self.pos += 1;
                Ok(Polynomial::var(self.nvars, idx))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_polynomial()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("expected a polynomial, found {t}"))),
            None => Err(self.err("expected a polynomial")),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            let (t, _, _) = &self.toks[self.pos];
            let t = t.clone();
            Err(self.err(format!("unexpected trailing {t}")))
        } else {
            Ok(())
        }
    }
}

fn var_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('z')?;
    if rest.is_empty() || rest.starts_with('0') {
        return None;
    }
    let idx: usize = rest.parse().ok()?;
    Some(idx - 1)
}

/// Parse an ideal document into an `IdealPresentation`.
pub fn parse_ideal(doc: &SourceDocument) -> Result<IdealPresentation, ParseError> {
    assert_eq!(doc.kind, DocKind::Ideal, "document is not an ideal");
    let mut p = Parser::new(&doc.text)?;
    p.parse_ring()?;
    p.expect_keyword("ideal")?;
    p.expect(&Tok::Equals)?;
    let mut gens = Vec::new();
    let mut positions = Vec::new();
    loop {
        positions.push(p.here());
        gens.push(p.parse_polynomial()?);
        match p.peek() {
            Some(Tok::Comma) => {
                p.pos += 1;
            }
            Some(Tok::Semi) => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.err("expected `,` or `;` after generator")),
        }
    }
    p.expect_end()?;
    for (g, (line, col)) in gens.iter().zip(&positions) {
        if !g.constant_term().is_zero() {
            return Err(ParseError::at(
                *line,
                *col,
                "generator has a nonzero constant term".into(),
            ));
        }
    }
    IdealPresentation::new(p.nvars, gens).map_err(|e| ParseError::at(1, 1, e.to_string()))
}

/// Parse a hypersurface document `Re(h) + abs2(f1) + ...`.
pub fn parse_hypersurface(doc: &SourceDocument) -> Result<ParsedHypersurface, ParseError> {
    assert_eq!(
        doc.kind,
        DocKind::Hypersurface,
        "document is not a hypersurface"
    );
    let mut p = Parser::new(&doc.text)?;
    p.parse_ring()?;
    p.expect_keyword("hyper")?;
    p.expect(&Tok::Equals)?;
    let re_pos = p.here();
    p.expect_keyword("Re")?;
    p.expect(&Tok::LParen)?;
    let h = p.parse_polynomial()?;
    p.expect(&Tok::RParen)?;
    if !h.constant_term().is_zero() {
        return Err(ParseError::at(
            re_pos.0,
            re_pos.1,
            "Re-term does not vanish at the origin".into(),
        ));
    }
    if h.linear_part().iter().all(|c| c.is_zero()) {
        return Err(ParseError::at(
            re_pos.0,
            re_pos.1,
            "Re-term has zero linear part (dh(0) = 0)".into(),
        ));
    }
    let mut fs = Vec::new();
    loop {
        match p.peek() {
            Some(Tok::Plus) => {
                p.pos += 1;
                let pos = p.here();
                p.expect_keyword("abs2")?;
                p.expect(&Tok::LParen)?;
                let f = p.parse_polynomial()?;
                p.expect(&Tok::RParen)?;
                if !f.constant_term().is_zero() {
                    return Err(ParseError::at(
                        pos.0,
                        pos.1,
                        "abs2-term does not vanish at the origin".into(),
                    ));
                }
                fs.push(f);
            }
            Some(Tok::Semi) => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.err("expected `+ abs2(...)` or `;`")),
        }
    }
    p.expect_end()?;
    Ok(ParsedHypersurface {
        nvars: p.nvars,
        h,
        fs,
    })
}

/// Parse a single polynomial expression in a ring of `nvars` variables.
/// Used to re-check serialized witness claims.
pub fn parse_polynomial_str(nvars: usize, text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text)?;
    p.nvars = nvars;
    let poly = p.parse_polynomial()?;
    p.expect_end()?;
    Ok(poly)
}

/// Render an ideal back into the input language; reparsing the result
/// reproduces the presentation exactly.
pub fn print_ideal(ideal: &IdealPresentation) -> String {
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    format!("ring z1..z{}; ideal = {};", ideal.nvars(), gens.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    #[test]
    fn parses_the_worked_example_ideal() {
        let doc = SourceDocument::ideal("ring z1..z3; ideal = z1^3 - z2*z3, z2^2;");
        let ideal = parse_ideal(&doc).unwrap();
        assert_eq!(ideal.nvars(), 3);
        assert_eq!(
            ideal.generators()[0],
            poly(3, &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)])
        );
        assert_eq!(ideal.generators()[1], poly(3, &[(&[0, 2, 0], 1)]));
    }

    #[test]
    fn parses_single_generator() {
        let doc = SourceDocument::ideal("ring z1..z2; ideal = z1;");
        let ideal = parse_ideal(&doc).unwrap();
        assert_eq!(ideal.generators().len(), 1);
        assert_eq!(ideal.generators()[0], Polynomial::var(2, 0));
    }

    #[test]
    fn dangling_operator_is_a_positioned_error() {
        let doc = SourceDocument::ideal("ring z1..z2; ideal = z1^3 - ;");
        let err = parse_ideal(&doc).unwrap_err();
        // The missing operand is discovered at the `;`.
        assert_eq!((err.line, err.col), (1, 29));
    }

    #[test]
    fn undeclared_variable_is_rejected() {
        let doc = SourceDocument::ideal("ring z1..z2; ideal = z5;");
        let err = parse_ideal(&doc).unwrap_err();
        assert!(err.message.contains("undeclared variable `z5`"));
    }

    #[test]
    fn nonzero_constant_term_is_rejected() {
        let doc = SourceDocument::ideal("ring z1..z2; ideal = z1 + 1;");
        let err = parse_ideal(&doc).unwrap_err();
        assert!(err.message.contains("constant term"));
    }

    #[test]
    fn rational_literals_and_parentheses() {
        let doc = SourceDocument::ideal("ring z1..z2; ideal = 1/2*z1*(z1 - 2/3*z2);");
        let ideal = parse_ideal(&doc).unwrap();
        let expected = Polynomial::from_terms(
            2,
            vec![
                (vec![2, 0], crate::poly::ratio(1, 2)),
                (vec![1, 1], crate::poly::ratio(-1, 3)),
            ],
        );
        assert_eq!(ideal.generators()[0], expected);
    }

    #[test]
    fn parses_the_worked_example_hypersurface() {
        let doc = SourceDocument::hypersurface(
            "ring z1..z4; hyper = Re(z4) + abs2(z1^3 - z3*z2) + abs2(z2^2);",
        );
        let hyper = parse_hypersurface(&doc).unwrap();
        assert_eq!(hyper.h, Polynomial::var(4, 3));
        assert_eq!(
            hyper.fs[0],
            poly(4, &[(&[3, 0, 0, 0], 1), (&[0, 1, 1, 0], -1)])
        );
        assert_eq!(hyper.fs[1], poly(4, &[(&[0, 2, 0, 0], 1)]));
    }

    #[test]
    fn hypersurface_without_abs2_terms() {
        let doc = SourceDocument::hypersurface("ring z1..z2; hyper = Re(z2);");
        let hyper = parse_hypersurface(&doc).unwrap();
        assert_eq!(hyper.h, Polynomial::var(2, 1));
        assert!(hyper.fs.is_empty());
    }

    #[test]
    fn zero_linear_part_is_rejected() {
        let doc = SourceDocument::hypersurface("ring z1..z2; hyper = Re(z1^2);");
        let err = parse_hypersurface(&doc).unwrap_err();
        assert!(err.message.contains("zero linear part"));
    }

    #[test]
    fn print_parse_round_trip() {
        let texts = [
            "ring z1..z3; ideal = z1^3 - z2*z3, z2^2;",
            "ring z1..z2; ideal = 1/2*z1 - z2^4, z1*z2;",
            "ring z1..z1; ideal = z1^5;",
        ];
        for text in texts {
            let ideal = parse_ideal(&SourceDocument::ideal(text)).unwrap();
            let printed = print_ideal(&ideal);
            let reparsed = parse_ideal(&SourceDocument::ideal(printed)).unwrap();
            assert_eq!(reparsed, ideal);
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let doc = SourceDocument::ideal("ring z1..z2;\nideal = z1 +\n  $;");
        let err = parse_ideal(&doc).unwrap_err();
        assert_eq!(err.line, 3);
    }

    proptest::proptest! {
        // The parser is total: arbitrary input either parses or reports a
        // positioned error, but never panics.
        #[test]
        fn parser_never_panics(text in ".{0,120}") {
            let _ = parse_ideal(&SourceDocument::ideal(text.clone()));
            let _ = parse_hypersurface(&SourceDocument::hypersurface(text));
        }
    }
}
