//! Univariate polynomials in `u` with arbitrary-precision integer coefficients.
//!
//! Every virtual Poincaré polynomial in the crate is a [`Poly`]. Coefficients
//! are stored low-to-high and the representation is kept canonical: no
//! trailing zero coefficients, and the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("LEADING_OF_ZERO: the zero polynomial has no leading coefficient")]
    LeadingOfZero,
    #[error("invalid polynomial coefficient {0:?}")]
    BadCoefficient(String),
    #[error("non-canonical polynomial encoding: trailing zero coefficient")]
    NonCanonical,
}

/// Degree of a polynomial. The zero polynomial has degree `MinusInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `self + other`, with `-inf` absorbing.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::MinusInfinity => s.serialize_none(),
            Degree::Finite(d) => s.serialize_u64(*d),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::from_coeffs(vec![c.into()])
    }

    /// The indeterminate `u`.
    pub fn u() -> Poly {
        Poly::monomial(1)
    }

    /// `u^d`.
    pub fn monomial(d: u64) -> Poly {
        let mut coeffs = vec![BigInt::zero(); d as usize];
        coeffs.push(BigInt::one());
        Poly { coeffs }
    }

    /// Builds a polynomial from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            len => Degree::Finite(len as u64 - 1),
        }
    }

    pub fn leading(&self) -> Result<&BigInt, PolyError> {
        self.coeffs.last().ok_or(PolyError::LeadingOfZero)
    }

    /// Sign of the leading coefficient; `Equal` for the zero polynomial.
    pub fn leading_sign(&self) -> Ordering {
        match self.coeffs.last() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn pow(&self, m: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies by `u^d`.
    pub fn shift(&self, d: u64) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Interchange encoding: decimal strings, low-to-high.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigInt::to_string).collect()
    }

    /// Parses the interchange encoding. Trailing zeros are rejected.
    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly, PolyError> {
        let coeffs = items
            .iter()
            .map(|s| {
                let s = s.as_ref();
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| PolyError::BadCoefficient(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(PolyError::NonCanonical);
        }
        Ok(Poly { coeffs })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match i {
                0 => write!(f, "{abs}")?,
                1 if unit => f.write_str("u")?,
                1 => write!(f, "{abs}*u")?,
                _ if unit => write!(f, "u^{i}")?,
                _ => write!(f, "{abs}*u^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Poly::from_strings(&items).map_err(D::Error::custom)
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> Poly {
    let len = a.len().max(b.len());
    let coeffs = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p(&[1, 1]) + &p(&[-1, 1]), p(&[0, 2]));
        assert_eq!(&p(&[3, 0, 4]) + &Poly::zero(), p(&[3, 0, 4]));
        let z = &p(&[1, 1]) + &p(&[-1, -1]);
        assert!(z.is_zero());
        assert!(z.coeffs().is_empty());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert!((&p(&[5, 2]) * &Poly::zero()).is_zero());
        assert_eq!(&p(&[1, 1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(p(&[-1, 1]).pow(2), p(&[1, -2, 1]));
        assert_eq!(p(&[-1, 1]).pow(0), Poly::one());
        assert_eq!(Poly::u().pow(3), Poly::monomial(3));
    }

    #[test]
    fn degree_and_leading() {
        assert_eq!(p(&[-1, 0, 1]).degree(), Degree::Finite(2));
        assert_eq!(Poly::zero().degree(), Degree::MinusInfinity);
        assert_eq!(p(&[5]).degree(), Degree::Finite(0));
        assert!(Degree::MinusInfinity < Degree::Finite(0));

        assert_eq!(p(&[-1, 0, 1]).leading().unwrap(), &BigInt::from(1));
        assert_eq!(p(&[3, -2]).leading().unwrap(), &BigInt::from(-2));
        assert_eq!(p(&[7]).leading().unwrap(), &BigInt::from(7));
        assert_eq!(Poly::zero().leading(), Err(PolyError::LeadingOfZero));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval(&BigInt::from(3)), BigInt::from(8));
        assert_eq!(Poly::zero().eval(&BigInt::from(17)), BigInt::zero());
        assert_eq!(p(&[1, 1]).eval(&BigInt::from(-1)), BigInt::zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 0, 0, 0, 0, 0, -1, 0, 1]).to_string(), "u^8 - u^6");
        assert_eq!(p(&[3, -2]).to_string(), "-2*u + 3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn interchange_encoding() {
        let q = p(&[1, 0, -3]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"["1","0","-3"]"#);
        assert_eq!(serde_json::from_str::<Poly>(&json).unwrap(), q);
        assert!(serde_json::from_str::<Poly>(r#"["1","0"]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"["x"]"#).is_err());
        assert_eq!(serde_json::from_str::<Poly>("[]").unwrap(), Poly::zero());
    }

    #[test]
    fn big_binomials_do_not_overflow() {
        let q = p(&[-1, 1]).pow(80);
        // C(80, 40) does not fit in 64 bits.
        let mid = q.coeff(40);
        assert!(mid > BigInt::from(u64::MAX));
        assert_eq!(q.eval(&BigInt::from(1)), BigInt::zero());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-50i64..50, 0..8).prop_map(|c| Poly::from_i64s(&c))
    }

    fn canonical(q: &Poly) -> bool {
        q.coeffs().last().is_none_or(|c| !c.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_form_is_closed(a in arb_poly(), b in arb_poly(), m in 0u32..4) {
            prop_assert!(canonical(&(&a + &b)));
            prop_assert!(canonical(&(&a - &b)));
            prop_assert!(canonical(&(&a * &b)));
            prop_assert!(canonical(&a.pow(m)));
        }

        #[test]
        fn degree_is_additive(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree(), a.degree().plus(b.degree()));
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), x in -20i64..20) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
