//! The expression language for command arguments.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := rational | ident | 'T(' expr ')' | 'w[' int ',' int ']' | '(' expr ')'
//!         | atom '.(' int ')' atom
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;
use vertex_core::scalar::{Param, ParamScalar, ParamSet, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Param(String),
    /// `y_i`, zero-based.
    Coord(usize),
    /// `d_i`, zero-based.
    Frame(usize),
    /// A product of coordinate powers, collapsed at parse time.
    Monomial(Vec<i32>),
    T(Box<Expr>),
    Gluing(u32, u32),
    /// Signed terms; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i32),
    NProduct(Box<Expr>, i64, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!("; expected one of: {}", expected.join(", "))
    }
}

/// Declared coordinates and parameters. A parameter may carry a value, in
/// which case it is substituted on evaluation.
#[derive(Clone, Debug)]
pub struct Session {
    pub nvars: usize,
    params: BTreeMap<String, Option<ParamScalar>>,
    set: ParamSet,
}

impl Session {
    pub fn new(nvars: usize) -> Self {
        Session {
            nvars,
            params: BTreeMap::new(),
            set: ParamSet::new(Vec::<String>::new()),
        }
    }

    pub fn declare(&mut self, name: &str, value: Option<ParamScalar>) {
        self.params.insert(name.to_string(), value);
        self.set = ParamSet::new(self.params.keys().cloned());
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.params.contains_key(name)
    }

    pub fn value(&self, name: &str) -> Option<&ParamScalar> {
        self.params.get(name).and_then(Option::as_ref)
    }

    pub fn param(&self, name: &str) -> Option<Param> {
        self.set.get(name).ok()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.params.keys().map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    DotParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(r) => write!(f, "number `{r}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::DotParen => f.write_str("`.(`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let mut out = Vec::new();
    let err = |line, column, message: String| ParseError {
        line,
        column,
        message,
        expected: Vec::new(),
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            column += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(1, &mut i);
            }
            let num: String = chars[start..i].iter().collect();
            let mut value: Rational = num.parse::<num_bigint::BigInt>().expect("digits").into();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                advance(1, &mut i);
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(1, &mut i);
                }
                let den: num_bigint::BigInt = chars[s..i].iter().collect::<String>().parse().expect("digits");
                if den == 0.into() {
                    return Err(err(l0, c0, "zero denominator".into()));
                }
                value /= Rational::from(den);
            }
            out.push(Spanned {
                tok: Tok::Number(value),
                line: l0,
                column: c0,
            });
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(1, &mut i);
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '.' if chars.get(i + 1) == Some(&'(') => {
                    advance(2, &mut i);
                    out.push(Spanned {
                        tok: Tok::DotParen,
                        line: l0,
                        column: c0,
                    });
                    continue;
                }
                other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
            }
        };
        advance(1, &mut i);
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    session: &'a Session,
    /// Positions of currently open parentheses, for unbalanced diagnostics.
    open: Vec<(usize, usize)>,
}

const ATOM_START: &[&str] = &["number", "y<i>", "d<i>", "parameter", "`T(`", "`w[`", "`(`"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Spanned, ParseError> {
        let t = self.next();
        if t.tok == tok {
            return Ok(t);
        }
        if tok == Tok::RParen && matches!(t.tok, Tok::End) {
            let (line, column) = self.open.last().copied().unwrap_or((t.line, t.column));
            return Err(ParseError {
                line,
                column,
                message: "unbalanced parentheses: `(` is never closed".into(),
                expected: vec![what.to_string()],
            });
        }
        Err(self.error_at(&t, format!("unexpected {}", t.tok), &[what]))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut neg = false;
        match self.peek().tok {
            Tok::Plus => {
                self.next();
            }
            Tok::Minus => {
                self.next();
                neg = true;
            }
            _ => {}
        }
        terms.push((neg, self.term()?));
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    terms.push((false, self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    terms.push((true, self.term()?));
                }
                _ => break,
            }
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek().tok == Tok::Star {
            self.next();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(collapse_monomial(factors, self.session.nvars))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.power()?;
        while self.peek().tok == Tok::DotParen {
            self.next();
            let n = self.int("integer mode")?;
            self.expect(Tok::RParen, "`)`")?;
            let right = self.power()?;
            left = Expr::NProduct(Box::new(left), n, Box::new(right));
        }
        Ok(left)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let e = self.exponent()?;
        Ok(match base {
            Expr::Coord(i) => {
                let mut exp = vec![0; self.session.nvars];
                exp[i] = e;
                Expr::Monomial(exp)
            }
            other => Expr::Pow(Box::new(other), e),
        })
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let at = self.peek().clone();
        let malformed = |p: &Self, t: &Spanned| p.error_at(t, "malformed exponent", &["integer", "`-` integer", "`(` integer `)`"]);
        let paren = at.tok == Tok::LParen;
        if paren {
            self.next();
        }
        let neg = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Number(r) = &t.tok else {
            return Err(malformed(self, &t));
        };
        if !r.is_integer() {
            return Err(malformed(self, &t));
        }
        let Ok(mut v) = r.to_integer().to_string().parse::<i32>() else {
            return Err(malformed(self, &t));
        };
        if neg {
            v = -v;
        }
        if paren {
            let close = self.next();
            if close.tok != Tok::RParen {
                return Err(malformed(self, &close));
            }
        }
        Ok(v)
    }

    fn int(&mut self, what: &str) -> Result<i64, ParseError> {
        let neg = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match &t.tok {
            Tok::Number(r) if r.is_integer() => {
                let v: i64 = r
                    .to_integer()
                    .to_string()
                    .parse()
                    .map_err(|_| self.error_at(&t, "integer out of range", &[what]))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error_at(&t, format!("unexpected {}", t.tok), &[what])),
        }
    }

    fn index(&self, t: &Spanned, name: &str, prefix: char) -> Result<Option<usize>, ParseError> {
        let Some(rest) = name.strip_prefix(prefix) else {
            return Ok(None);
        };
        let Ok(i) = rest.parse::<usize>() else {
            return Ok(None);
        };
        if i == 0 || i > self.session.nvars {
            return Err(self.error_at(
                t,
                format!("unknown identifier `{name}`: coordinates run from 1 to {}", self.session.nvars),
                &[],
            ));
        }
        Ok(Some(i - 1))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Number(r) => Ok(Expr::Number(r.clone())),
            Tok::LParen => {
                self.open.push((t.line, t.column));
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                self.open.pop();
                Ok(e)
            }
            Tok::Ident(name) if name == "T" && self.peek().tok == Tok::LParen => {
                let lp = self.next();
                self.open.push((lp.line, lp.column));
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                self.open.pop();
                Ok(Expr::T(Box::new(e)))
            }
            Tok::Ident(name) if name == "w" && self.peek().tok == Tok::LBracket => {
                self.next();
                let a = self.int("integer")?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.int("integer")?;
                self.expect(Tok::RBracket, "`]`")?;
                if a < 1 || b < 1 {
                    return Err(self.error_at(&t, "gluing indices must be at least 1", &[]));
                }
                Ok(Expr::Gluing(a as u32, b as u32))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.index(&t, name, 'y')? {
                    return Ok(Expr::Coord(i));
                }
                if let Some(i) = self.index(&t, name, 'd')? {
                    return Ok(Expr::Frame(i));
                }
                if self.session.is_declared(name) {
                    return Ok(Expr::Param(name.clone()));
                }
                let declared: Vec<String> = self.session.names().map(|s| format!("`{s}`")).collect();
                let mut expected: Vec<&str> = vec!["y<i>", "d<i>", "`T(`", "`w[`"];
                expected.extend(declared.iter().map(String::as_str));
                Err(self.error_at(&t, format!("unknown identifier `{name}`"), &expected))
            }
            Tok::RParen => Err(self.error_at(&t, "unbalanced parentheses: unexpected `)`", ATOM_START)),
            other => Err(self.error_at(&t, format!("unexpected {other}"), ATOM_START)),
        }
    }
}

fn collapse_monomial(factors: Vec<Expr>, n: usize) -> Expr {
    let mut exp = vec![0; n];
    for f in &factors {
        match f {
            Expr::Coord(i) => exp[*i] += 1,
            Expr::Monomial(e) => {
                for (x, y) in exp.iter_mut().zip(e) {
                    *x += y;
                }
            }
            _ => return Expr::Product(factors),
        }
    }
    Expr::Monomial(exp)
}

/// Parses `text` against the declarations in `session`.
pub fn parse_expr(text: &str, session: &Session) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        session,
        open: Vec::new(),
    };
    let e = p.expr()?;
    let t = p.peek().clone();
    match t.tok {
        Tok::End => Ok(e),
        Tok::RParen => Err(p.error_at(&t, "unbalanced parentheses: unexpected `)`", &["end of input"])),
        _ => Err(p.error_at(&t, format!("unexpected {}", t.tok), &["`+`", "`-`", "`*`", "`^`", "`.(`", "end of input"])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vertex_core::scalar::rat;

    fn session() -> Session {
        let mut s = Session::new(2);
        s.declare("k", None);
        s
    }

    #[test]
    fn monomial_node() {
        assert_eq!(parse_expr("y1^2*y2^-1", &session()).unwrap(), Expr::Monomial(vec![2, -1]));
    }

    #[test]
    fn twisted_section() {
        let e = parse_expr("y2*d1 - k*T(y2)*y1^-1", &session()).unwrap();
        let Expr::Sum(terms) = e else { panic!("expected a sum") };
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0], (false, Expr::Product(vec![Expr::Coord(1), Expr::Frame(0)])));
        assert_eq!(
            terms[1],
            (
                true,
                Expr::Product(vec![
                    Expr::Param("k".into()),
                    Expr::T(Box::new(Expr::Coord(1))),
                    Expr::Monomial(vec![-1, 0]),
                ])
            )
        );
    }

    #[test]
    fn mode_product() {
        assert_eq!(
            parse_expr("y1 .(0) d1", &session()).unwrap(),
            Expr::NProduct(Box::new(Expr::Coord(0)), 0, Box::new(Expr::Frame(0)))
        );
        assert_eq!(
            parse_expr("d1.(-1)d2", &session()).unwrap(),
            Expr::NProduct(Box::new(Expr::Frame(0)), -1, Box::new(Expr::Frame(1)))
        );
    }

    #[test]
    fn literals() {
        assert_eq!(parse_expr("3/4", &session()).unwrap(), Expr::Number(rat(3) / rat(4)));
        assert_eq!(parse_expr("2*w[1,3]", &session()).unwrap(), Expr::Product(vec![Expr::Number(rat(2)), Expr::Gluing(1, 3)]));
    }

    #[test]
    fn diagnostics() {
        let e = parse_expr("y1 +\n  z", &session()).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown identifier"));
        assert!(e.expected.iter().any(|s| s == "`k`"));

        let e = parse_expr("y1^x", &session()).unwrap_err();
        assert!(e.message.contains("malformed exponent"));
        assert_eq!(e.column, 4);

        let e = parse_expr("(y1 + y2", &session()).unwrap_err();
        assert!(e.message.contains("unbalanced"));
        assert_eq!((e.line, e.column), (1, 1));

        let e = parse_expr("y1)", &session()).unwrap_err();
        assert!(e.message.contains("unbalanced"));

        let e = parse_expr("y3", &session()).unwrap_err();
        assert!(e.message.contains("unknown identifier"));
    }

    #[test]
    fn whitespace_is_irrelevant() {
        let s = session();
        let a = parse_expr("y2*d1-k*T(y2)*y1^-1", &s).unwrap();
        let b = parse_expr("  y2 * d1\n -  k * T( y2 ) * y1 ^ -1 ", &s).unwrap();
        assert_eq!(a, b);
    }
}
