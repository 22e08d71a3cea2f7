//! Virtual Poincaré polynomials of a small catalog of spaces, and an evaluator
//! for set expressions built from them by disjoint union, product and
//! difference.
//!
//! Textual encoding:
//!
//! | text       | meaning                          | β                |
//! |------------|----------------------------------|------------------|
//! | `pt`       | a point                          | 1                |
//! | `A(m)`     | affine space R^m                 | u^m              |
//! | `S(m)`     | sphere S^m                       | 1 + u^m          |
//! | `RP(m)`    | projective space RP^m            | 1 + u + … + u^m  |
//! | `Rstar`    | the real line minus a point      | u − 1            |
//! | `U(a,…)`   | disjoint union                   | sum              |
//! | `X(a,…)`   | product                          | product          |
//! | `D(a,b)`   | `a` minus a subset `b`           | difference       |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Point,
    Affine(u32),
    Sphere(u32),
    ProjSpace(u32),
    PuncturedLine,
}

impl Atom {
    pub fn dimension(self) -> u32 {
        match self {
            Atom::Point => 0,
            Atom::Affine(m) | Atom::Sphere(m) | Atom::ProjSpace(m) => m,
            Atom::PuncturedLine => 1,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Point => f.write_str("pt"),
            Atom::Affine(m) => write!(f, "A({m})"),
            Atom::Sphere(m) => write!(f, "S({m})"),
            Atom::ProjSpace(m) => write!(f, "RP({m})"),
            Atom::PuncturedLine => f.write_str("Rstar"),
        }
    }
}

pub fn catalog_beta(atom: Atom) -> Poly {
    match atom {
        Atom::Point => Poly::one(),
        Atom::Affine(m) => Poly::monomial(m as u64),
        Atom::Sphere(m) => &Poly::one() + &Poly::monomial(m as u64),
        Atom::ProjSpace(m) => Poly::from_coeffs(vec![BigInt::from(1); m as usize + 1]),
        Atom::PuncturedLine => Poly::from_i64s(&[-1, 1]),
    }
}

/// One line per catalog atom, used by `catalog --atoms`.
pub const ATOM_SYNTAX: &[(&str, &str, &str)] = &[
    ("pt", "point", "1"),
    ("A(m)", "affine space R^m", "u^m"),
    ("S(m)", "sphere S^m", "1 + u^m"),
    ("RP(m)", "real projective space RP^m", "1 + u + ... + u^m"),
    ("Rstar", "real line minus a point", "u - 1"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Atom(Atom),
    DisjointUnion(Vec<SetExpr>),
    Product(Vec<SetExpr>),
    /// `ambient ∖ subset`, with containment asserted by the caller.
    Difference(Box<SetExpr>, Box<SetExpr>),
}

impl SetExpr {
    pub fn atom(a: Atom) -> SetExpr {
        SetExpr::Atom(a)
    }
}

pub fn beta_eval(expr: &SetExpr) -> Poly {
    match expr {
        SetExpr::Atom(a) => catalog_beta(*a),
        SetExpr::DisjointUnion(children) => children.iter().map(beta_eval).sum(),
        SetExpr::Product(children) => children
            .iter()
            .fold(Poly::one(), |acc, c| &acc * &beta_eval(c)),
        SetExpr::Difference(a, b) => &beta_eval(a) - &beta_eval(b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaEvaluation {
    pub expr: String,
    pub beta: Poly,
    /// Subset relations the result relies on, as `subset ⊆ ambient` text.
    pub asserted_subsets: Vec<String>,
    /// Nonzero result whose leading coefficient is not positive; some subset
    /// assertion is then probably false.
    pub suspicious: bool,
}

pub fn evaluate(expr: &SetExpr) -> BetaEvaluation {
    fn collect(e: &SetExpr, out: &mut Vec<String>) {
        match e {
            SetExpr::Atom(_) => {}
            SetExpr::DisjointUnion(cs) | SetExpr::Product(cs) => {
                cs.iter().for_each(|c| collect(c, out));
            }
            SetExpr::Difference(a, b) => {
                out.push(format!("{b} <= {a}"));
                collect(a, out);
                collect(b, out);
            }
        }
    }
    let beta = beta_eval(expr);
    let mut asserted_subsets = Vec::new();
    collect(expr, &mut asserted_subsets);
    let suspicious = match beta.leading() {
        Ok(c) => *c <= BigInt::from(0),
        Err(_) => false,
    };
    BetaEvaluation {
        expr: expr.to_string(),
        beta,
        asserted_subsets,
        suspicious,
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, tag: &str, cs: &[SetExpr]| {
            write!(f, "{tag}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        };
        match self {
            SetExpr::Atom(a) => write!(f, "{a}"),
            SetExpr::DisjointUnion(cs) => list(f, "U", cs),
            SetExpr::Product(cs) => list(f, "X", cs),
            SetExpr::Difference(a, b) => write!(f, "D({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("set expression parse error at byte {pos}: {msg}")]
pub struct SetExprParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SetExprParseError> {
        Err(SetExprParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SetExprParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn number(&mut self) -> Result<u32, SetExprParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match text.parse() {
            Ok(m) => Ok(m),
            Err(_) => self.err("expected a nonnegative integer"),
        }
    }

    fn dim_arg(&mut self) -> Result<u32, SetExprParseError> {
        self.expect(b'(')?;
        let m = self.number()?;
        self.expect(b')')?;
        Ok(m)
    }

    fn children(&mut self) -> Result<Vec<SetExpr>, SetExprParseError> {
        self.expect(b'(')?;
        let mut out = Vec::new();
        if self.eat(b')') {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(b')') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn expr(&mut self) -> Result<SetExpr, SetExprParseError> {
        let start = self.pos;
        let name = self.ident();
        Ok(match name {
            "pt" => SetExpr::Atom(Atom::Point),
            "Rstar" => SetExpr::Atom(Atom::PuncturedLine),
            "A" => SetExpr::Atom(Atom::Affine(self.dim_arg()?)),
            "S" => SetExpr::Atom(Atom::Sphere(self.dim_arg()?)),
            "RP" => SetExpr::Atom(Atom::ProjSpace(self.dim_arg()?)),
            "U" => SetExpr::DisjointUnion(self.children()?),
            "X" => SetExpr::Product(self.children()?),
            "D" => {
                let mut cs = self.children()?;
                if cs.len() != 2 {
                    self.pos = start;
                    return self.err("D takes exactly two arguments");
                }
                let b = cs.pop().unwrap();
                let a = cs.pop().unwrap();
                SetExpr::Difference(Box::new(a), Box::new(b))
            }
            "" => return self.err("expected a set expression"),
            other => {
                self.pos = start;
                return self.err(format!("unknown constructor {other:?}"));
            }
        })
    }
}

impl FromStr for SetExpr {
    type Err = SetExprParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}
