//! Map expressions: `(expr, expr, ...)` with explicit `*`.
//!
//! Map variables are x, y, z (or x, y for two components, and always x, y
//! over Q(z)). The coefficient indeterminate of the chosen backend may appear
//! anywhere, and division is allowed by any nonzero expression free of map
//! variables.

use std::fmt;

use tamelimits::autmap::PolyMap;
use tamelimits::coeff::{Field, Indeterminate, RatFunc, Rational};
use tamelimits::multipoly::{vars, MultiPoly, Vars};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("illegal divisor at offset {offset}: {msg}")]
    IllegalDivisor { offset: usize, msg: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::IllegalDivisor { offset, .. } => *offset,
        }
    }
}

/// The declared coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Q,
    QT,
    QZ,
    QLambda,
}

impl Backend {
    /// Q(t) if `t` occurs as a word, Q(λ) if `lambda` does, Q otherwise.
    pub fn detect(text: &str) -> Backend {
        let words: Vec<&str> = text
            .split(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .collect();
        if words.contains(&"t") {
            Backend::QT
        } else if words.contains(&"lambda") {
            Backend::QLambda
        } else {
            Backend::Q
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Q => "Q",
            Backend::QT => "Q(t)",
            Backend::QZ => "Q(z)",
            Backend::QLambda => "Q(lambda)",
        })
    }
}

/// A scalar field the parser can target.
pub trait ParseScalar: Field {
    fn indeterminate() -> Option<(&'static str, Self)>;
}

impl ParseScalar for Rational {
    fn indeterminate() -> Option<(&'static str, Self)> {
        None
    }
}

impl<V: Indeterminate> ParseScalar for RatFunc<V> {
    fn indeterminate() -> Option<(&'static str, Self)> {
        Some((V::NAME, RatFunc::var()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push((Tok::Num(s), i));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_alphanumeric() || *d == '_') {
                s.push(d);
                chars.next();
            }
            out.push((Tok::Ident(s), i));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Sym(c), i));
            chars.next();
        } else {
            return Err(ParseError::Syntax {
                offset: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<C> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vars,
    coeff_var: Option<(&'static str, C)>,
}

impl<C: ParseScalar> Parser<C> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            msg: msg.into(),
        })
    }

    fn found(&self) -> String {
        match self.peek() {
            Tok::Num(s) | Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.syntax(format!("expected '{c}', found {}", self.found()))
        }
    }

    fn expr(&mut self) -> Result<MultiPoly<C>, ParseError> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<C>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if *self.peek() == Tok::Sym('/') {
                let at = self.offset();
                self.pos += 1;
                let divisor = self.factor()?;
                acc = acc.scale(&self.divisor_inverse(&divisor, at)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn divisor_inverse(&self, d: &MultiPoly<C>, at: usize) -> Result<C, ParseError> {
        let illegal = |msg: String| Err(ParseError::IllegalDivisor { offset: at, msg });
        match d.as_constant() {
            None => illegal(format!("divisor {d} involves a map variable")),
            Some(c) => match c.inv() {
                Some(inv) => Ok(inv),
                None => illegal("division by zero".into()),
            },
        }
    }

    fn factor(&mut self) -> Result<MultiPoly<C>, ParseError> {
        let base = self.base()?;
        if self.eat('^') {
            match self.peek().clone() {
                Tok::Num(s) => match s.parse::<u32>() {
                    Ok(e) => {
                        self.pos += 1;
                        Ok(base.pow(e))
                    }
                    Err(_) => self.syntax(format!("exponent {s} is too large")),
                },
                _ => self.syntax(format!("expected exponent, found {}", self.found())),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly<C>, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.pos += 1;
                let q: Rational = s.parse().expect("digits");
                Ok(MultiPoly::constant(self.vars.clone(), C::from_rational(&q)))
            }
            Tok::Ident(name) => {
                if let Some(p) = MultiPoly::var_named(self.vars.clone(), &name) {
                    self.pos += 1;
                    return Ok(p);
                }
                match &self.coeff_var {
                    Some((v, c)) if *v == name => {
                        self.pos += 1;
                        Ok(MultiPoly::constant(self.vars.clone(), c.clone()))
                    }
                    _ => self.syntax(format!("unknown variable '{name}'")),
                }
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.syntax(format!("expected a term, found {}", self.found())),
        }
    }
}

fn count_components(toks: &[(Tok, usize)]) -> usize {
    let mut depth = 0i32;
    let mut n = 1;
    for (t, _) in toks {
        match t {
            Tok::Sym('(') => depth += 1,
            Tok::Sym(')') => depth -= 1,
            Tok::Sym(',') if depth == 1 => n += 1,
            _ => {}
        }
    }
    n
}

fn map_vars<C: ParseScalar>(components: usize) -> Vars {
    let plane = components == 2 || C::indeterminate().is_some_and(|(v, _)| v == "z");
    if plane {
        vars(&["x", "y"])
    } else {
        vars(&["x", "y", "z"])
    }
}

/// Parses `(f₁, …, fₙ)` over the scalar field `C`.
pub fn parse_map<C: ParseScalar>(text: &str) -> Result<PolyMap<C>, ParseError> {
    let toks = lex(text)?;
    let n = count_components(&toks);
    let mut p = Parser {
        toks,
        pos: 0,
        vars: map_vars::<C>(n),
        coeff_var: C::indeterminate(),
    };
    p.expect('(')?;
    let mut comps = vec![p.expr()?];
    while p.eat(',') {
        comps.push(p.expr()?);
    }
    p.expect(')')?;
    if *p.peek() != Tok::End {
        return p.syntax(format!("trailing input {}", p.found()));
    }
    if comps.len() != p.vars.len() {
        return Err(ParseError::Syntax {
            offset: 0,
            msg: format!("{} components for {} variables", comps.len(), p.vars.len()),
        });
    }
    Ok(PolyMap::new(comps).expect("components share the ring"))
}
