//! Multivariate polynomials with rational coefficients, and polynomial maps
//! R^n -> R^n given by them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::series::TruncatedSeries;
use super::OracleError;

/// Exponent vector -> coefficient. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&exps) {
            Some(x) => x + c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, sum);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, m: u32) -> MPoly {
        (0..m).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    /// Evaluates at series arguments, truncated at `order`.
    pub fn eval_series(&self, args: &[TruncatedSeries], order: usize) -> TruncatedSeries {
        assert_eq!(args.len(), self.nvars, "argument count");
        let mut acc = TruncatedSeries::zero(order);
        for (e, c) in &self.terms {
            let mut term = TruncatedSeries::constant(c.clone(), order);
            for (arg, &p) in args.iter().zip(e) {
                if p > 0 {
                    term = term.mul(&arg.pow(p));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes polynomials (in any common number of variables) for the variables.
    pub fn substitute(&self, args: &[MPoly]) -> MPoly {
        assert_eq!(args.len(), self.nvars, "argument count");
        let target_vars = args.first().map_or(0, MPoly::nvars);
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_vars, c.clone());
            for (arg, &p) in args.iter().zip(e) {
                if p > 0 {
                    term = term.mul(&arg.pow(p));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        DisplayMPoly { p: self, vars }
    }

    pub fn parse(text: &str, vars: &[String]) -> Result<MPoly, OracleError> {
        PolyParser::new(text, vars).parse()
    }
}

struct DisplayMPoly<'a> {
    p: &'a MPoly,
    vars: &'a [String],
}

impl fmt::Display for DisplayMPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.iter().all(|&p| p == 0) {
                factors.push(abs.to_string());
            }
            for (v, &p) in self.vars.iter().zip(e) {
                match p {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{p}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Sums of products of rational numbers, variables and `var^exp`.
struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [String],
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str, vars: &'a [String]) -> Self {
        PolyParser { src, pos: 0, vars }
    }

    fn err<T>(&self, msg: &str) -> Result<T, OracleError> {
        Err(OracleError::Parse(format!(
            "{msg} at byte {} of {:?}",
            self.pos, self.src
        )))
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.peek();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !f(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn parse(mut self) -> Result<MPoly, OracleError> {
        let n = self.vars.len();
        let mut acc = MPoly::zero(n);
        let mut sign = BigRational::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let term = self.term()?;
            acc = acc.add(&term.scale(&sign));
            match self.peek() {
                None => return Ok(acc),
                Some('+') => sign = BigRational::one(),
                Some('-') => sign = -BigRational::one(),
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MPoly, OracleError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, OracleError> {
        let n = self.vars.len();
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.take_while(|c| c.is_ascii_digit());
                let mut value = BigRational::from_integer(num.parse::<BigInt>().unwrap());
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.take_while(|c| c.is_ascii_digit());
                    let den: BigInt = match den.parse() {
                        Ok(d) => d,
                        Err(_) => return self.err("expected a denominator"),
                    };
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= BigRational::from_integer(den);
                }
                MPoly::constant(n, value)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => MPoly::var(n, i),
                    None => return self.err(&format!("unknown variable {name:?}")),
                }
            }
            Some('(') => {
                self.pos += 1;
                let depth_start = self.pos;
                let mut depth = 1;
                let bytes = self.src.as_bytes();
                while self.pos < bytes.len() && depth > 0 {
                    match bytes[self.pos] {
                        b'(' => depth += 1,
                        b')' => depth -= 1,
                        _ => {}
                    }
                    self.pos += 1;
                }
                if depth != 0 {
                    return self.err("unbalanced parenthesis");
                }
                PolyParser::new(&self.src[depth_start..self.pos - 1], self.vars).parse()?
            }
            _ => return self.err("expected a number, variable or '('"),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.take_while(|c| c.is_ascii_digit());
            match e.parse::<u32>() {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => self.err("expected an exponent"),
            }
        } else {
            Ok(base)
        }
    }
}

/// Default variable names: `x, y, z, w` up to four variables, else `x1..xn`.
pub fn default_vars(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// A polynomial map with as many components as variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    vars: Vec<String>,
    components: Vec<MPoly>,
}

impl PolyMap {
    pub fn new(vars: Vec<String>, components: Vec<MPoly>) -> Result<Self, OracleError> {
        if vars.len() != components.len() || components.iter().any(|c| c.nvars() != vars.len()) {
            return Err(OracleError::Arity(format!(
                "{} components for {} variables",
                components.len(),
                vars.len()
            )));
        }
        Ok(PolyMap { vars, components })
    }

    pub fn parse<S: AsRef<str>>(
        components: &[S],
        vars: Option<Vec<String>>,
    ) -> Result<Self, OracleError> {
        let vars = vars.unwrap_or_else(|| default_vars(components.len()));
        let comps = components
            .iter()
            .map(|c| MPoly::parse(c.as_ref(), &vars))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vars, comps)
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            vars: default_vars(n),
            components: (0..n).map(|i| MPoly::var(n, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn components(&self) -> &[MPoly] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, OracleError> {
        if self.dim() != inner.dim() {
            return Err(OracleError::Arity(
                "composition of maps of different dimension".into(),
            ));
        }
        let comps = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components))
            .collect();
        PolyMap::new(inner.vars.clone(), comps)
    }

    /// Determinant of the matrix of partial derivatives, by cofactor expansion.
    pub fn jacobian_det(&self) -> MPoly {
        let n = self.dim();
        let matrix: Vec<Vec<MPoly>> = self
            .components
            .iter()
            .map(|c| (0..n).map(|v| c.derivative(v)).collect())
            .collect();
        let cols: Vec<usize> = (0..n).collect();
        det(&matrix, 0, &cols, n)
    }

    pub fn apply_to_arc(&self, arc: &ArcGerm) -> ArcGerm {
        let k = arc.order();
        ArcGerm {
            comps: self
                .components
                .iter()
                .map(|c| c.eval_series(&arc.comps, k))
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| c.display_with(&self.vars).to_string())
            .collect();
        format!("({}) -> ({})", self.vars.join(","), parts.join(", "))
    }
}

fn det(m: &[Vec<MPoly>], row: usize, cols: &[usize], nvars: usize) -> MPoly {
    if cols.is_empty() {
        return MPoly::one(nvars);
    }
    let mut acc = MPoly::zero(nvars);
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det(m, row + 1, &rest, nvars);
        let term = entry.mul(&minor);
        acc = if idx % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// An arc germ `t -> (γ_1(t), …, γ_n(t))` known to a shared order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcGerm {
    comps: Vec<TruncatedSeries>,
}

impl ArcGerm {
    pub fn new(comps: Vec<TruncatedSeries>) -> Result<Self, OracleError> {
        let Some(first) = comps.first() else {
            return Err(OracleError::Arity("arc with no components".into()));
        };
        let k = first.order();
        if comps.iter().any(|c| c.order() != k) {
            return Err(OracleError::Arity(
                "arc components have different truncation orders".into(),
            ));
        }
        Ok(ArcGerm { comps })
    }

    pub fn from_ints(comps: &[&[i64]], order: usize) -> Self {
        ArcGerm {
            comps: comps
                .iter()
                .map(|c| TruncatedSeries::from_ints(c, order))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.comps[0].order()
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.comps
    }

    pub fn truncate(&self, order: usize) -> ArcGerm {
        ArcGerm {
            comps: self.comps.iter().map(|c| c.truncate(order)).collect(),
        }
    }
}
