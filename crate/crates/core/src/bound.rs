//! The rational degree bound `n(k+1) − k/(2m)` compared against integer
//! degrees by cross-multiplication.

use serde::Serialize;

use crate::poly::Degree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    pub numerator: i128,
    pub denominator: i128,
}

impl DegreeBound {
    /// `n(k+1) − k/(2 nu_max)` as `(2 nu_max n(k+1) − k) / (2 nu_max)`.
    pub fn new(n: u32, k: u64, nu_max: u64) -> DegreeBound {
        assert!(nu_max >= 1, "nu_max must be positive");
        let den = 2 * nu_max as i128;
        DegreeBound {
            numerator: den * n as i128 * (k as i128 + 1) - k as i128,
            denominator: den,
        }
    }

    /// `d < bound`. The zero polynomial's degree is below every bound.
    pub fn exceeds(&self, d: Degree) -> bool {
        match d {
            Degree::MinusInfinity => true,
            Degree::Finite(d) => self.denominator * (d as i128) < self.numerator,
        }
    }

    /// `d >= bound`.
    pub fn reached_by(&self, d: Degree) -> bool {
        !self.exceeds(d)
    }

    pub fn reached_by_int(&self, d: i64) -> bool {
        self.denominator * d as i128 >= self.numerator
    }
}

impl std::fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}
