//! Arc-level verification on explicit polynomial charts.
//!
//! Everything here works with truncated power series over the rationals and
//! is independent of the β-level engine: jacobian orders are measured along
//! concrete arcs, and jet fibers are counted by explicit series division.

pub mod mpoly;
pub mod probe;
pub mod series;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::config::{MultiIndex, MultiplicityVector};
pub use mpoly::{default_vars, ArcGerm, MPoly, PolyMap};
pub use series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("COMPOSE_NONZERO_CONSTANT: inner series has a nonzero constant term")]
    ComposeNonzeroConstant,
    #[error(
        "PRECISION_EXHAUSTED: all coefficients up to t^{order} vanish; raise the truncation order"
    )]
    PrecisionExhausted { order: usize },
    #[error("NOT_TRIANGULAR: {0}")]
    NotTriangular(String),
    #[error("NOT_IN_IMAGE: {0}")]
    NotInImage(String),
    #[error("PRECONDITION_K: k = {k} < 2e = {}", 2 * .e)]
    PreconditionK { k: usize, e: usize },
    #[error("ARITY: {0}")]
    Arity(String),
    #[error("MAP_MISMATCH: {0}")]
    MapMismatch(String),
    #[error("PARSE: {0}")]
    Parse(String),
}

impl OracleError {
    pub fn code(&self) -> &'static str {
        match self {
            OracleError::ComposeNonzeroConstant => "COMPOSE_NONZERO_CONSTANT",
            OracleError::PrecisionExhausted { .. } => "PRECISION_EXHAUSTED",
            OracleError::NotTriangular(_) => "NOT_TRIANGULAR",
            OracleError::NotInImage(_) => "NOT_IN_IMAGE",
            OracleError::PreconditionK { .. } => "PRECONDITION_K",
            OracleError::Arity(_) => "ARITY",
            OracleError::MapMismatch(_) => "MAP_MISMATCH",
            OracleError::Parse(_) => "PARSE",
        }
    }
}

/// Default truncation for probing an arc with expected order `expected` at jet level `k`.
pub fn default_truncation(k: usize, expected: usize) -> usize {
    (2 * k).max(4 * expected) + 4
}

/// Order in `t` of `p(γ(t))`.
pub fn ord_along_arc(p: &MPoly, arc: &ArcGerm) -> Result<usize, OracleError> {
    if p.nvars() != arc.dim() {
        return Err(OracleError::Arity(format!(
            "polynomial in {} variables, arc in {} dimensions",
            p.nvars(),
            arc.dim()
        )));
    }
    p.eval_series(arc.components(), arc.order()).ord()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityOutcome {
    pub measured_contact: Vec<usize>,
    pub expected_contact: Vec<u64>,
    pub measured_order: usize,
    pub expected_order: u64,
    pub pass: bool,
}

/// Measures the contact of `arc` with each component (given by its local
/// equation) and the jacobian order of `map` along it; passes when the
/// contacts are `expected` and the order is `<nu, expected>`.
pub fn multiplicity_check(
    map: &PolyMap,
    arc: &ArcGerm,
    equations: &[MPoly],
    expected: &MultiIndex,
    nu: &MultiplicityVector,
) -> Result<MultiplicityOutcome, OracleError> {
    if equations.len() != expected.values().len() || nu.len() != expected.values().len() {
        return Err(OracleError::Arity(
            "equations, contact vector and multiplicities differ in length".into(),
        ));
    }
    let measured_contact = equations
        .iter()
        .map(|e| ord_along_arc(e, arc))
        .collect::<Result<Vec<_>, _>>()?;
    let measured_order = ord_along_arc(&map.jacobian_det(), arc)?;
    let expected_order = expected.pairing(nu);
    let contact_ok = measured_contact
        .iter()
        .zip(expected.values())
        .all(|(&m, &e)| m as u64 == e);
    Ok(MultiplicityOutcome {
        measured_contact,
        expected_contact: expected.values().to_vec(),
        measured_order,
        expected_order,
        pass: contact_ok && measured_order as u64 == expected_order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainRuleOutcome {
    pub ord_det_sigma: usize,
    pub ord_det_sigma_prime: usize,
    /// Order of `det(df) ∘ σ ∘ γ`: measured when `f` is supplied, else the difference.
    pub ord_det_f: i64,
    pub f_measured: bool,
    pub pass: bool,
}

/// Checks `ord(det dσ′∘γ) − ord(det dσ∘γ) = ord(det df∘σ∘γ)` for `σ′ = f∘σ`.
pub fn chain_rule_check(
    sigma: &PolyMap,
    sigma_prime: &PolyMap,
    f: Option<&PolyMap>,
    arc: &ArcGerm,
) -> Result<ChainRuleOutcome, OracleError> {
    let ord_det_sigma = ord_along_arc(&sigma.jacobian_det(), arc)?;
    let ord_det_sigma_prime = ord_along_arc(&sigma_prime.jacobian_det(), arc)?;
    let diff = ord_det_sigma_prime as i64 - ord_det_sigma as i64;
    match f {
        None => Ok(ChainRuleOutcome {
            ord_det_sigma,
            ord_det_sigma_prime,
            ord_det_f: diff,
            f_measured: false,
            pass: diff >= 0,
        }),
        Some(f) => {
            if &f.compose(sigma)? != sigma_prime {
                return Err(OracleError::MapMismatch(format!(
                    "f ∘ sigma = {} differs from sigma' = {}",
                    f.compose(sigma)?.describe(),
                    sigma_prime.describe()
                )));
            }
            let image = sigma.apply_to_arc(arc);
            let ord_f = f
                .jacobian_det()
                .eval_series(image.components(), image.order())
                .ord()?;
            Ok(ChainRuleOutcome {
                ord_det_sigma,
                ord_det_sigma_prime,
                ord_det_f: ord_f as i64,
                f_measured: true,
                pass: ord_f as i64 == diff,
            })
        }
    }
}

/// `c · Π_{v<i} x_v^{a_v} · x_i` for component `i`: the coefficient and earlier exponents.
fn triangular_shape(map: &PolyMap) -> Result<Vec<(BigRational, Vec<u32>)>, OracleError> {
    map.components()
        .iter()
        .enumerate()
        .map(|(i, comp)| {
            let mut terms = comp.terms();
            let (Some((e, c)), None) = (terms.next(), terms.next()) else {
                return Err(OracleError::NotTriangular(format!(
                    "component {i} is not a single monomial"
                )));
            };
            if e[i] != 1 || e[i + 1..].iter().any(|&p| p != 0) {
                return Err(OracleError::NotTriangular(format!(
                    "component {i} must be linear in its own variable and free of later ones"
                )));
            }
            Ok((c.clone(), e[..i].to_vec()))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberProbe {
    pub k: usize,
    /// Free k-jet coefficients of the preimage, per variable.
    pub free_per_variable: Vec<usize>,
    pub measured: usize,
    /// Order of the jacobian determinant along the lifted arc.
    pub jacobian_order: usize,
    /// Fiber points (the base lift plus the random samples) whose image
    /// reproduced the target.
    pub samples_verified: usize,
    pub pass: bool,
}

/// Lifts the k-jet `target` through `map` and counts the dimension of the
/// jet fiber over it.
///
/// Component `i` is solved from `target_i = D_i · x_i` where `D_i` only
/// involves earlier variables. With `d_i = ord D_i`, the coefficients of
/// `x_i` up to `t^{k−d_i}` are forced and the top `d_i` are free. Each free
/// coordinate is sampled at random and the image is recomputed to confirm
/// that it stays on the target.
pub fn fiber_dimension_probe<R: Rng>(
    map: &PolyMap,
    k: usize,
    target: &ArcGerm,
    samples: usize,
    rng: &mut R,
) -> Result<FiberProbe, OracleError> {
    let shape = triangular_shape(map)?;
    if target.dim() != map.dim() {
        return Err(OracleError::Arity(
            "target dimension differs from the map".into(),
        ));
    }
    if target.order() < k {
        return Err(OracleError::PrecisionExhausted {
            order: target.order(),
        });
    }
    let target = target.truncate(k);
    let draw = |rng: &mut R| {
        BigRational::new(
            rng.gen_range(-9i64..=9).into(),
            rng.gen_range(1i64..=5).into(),
        )
    };

    let lift = |rng: &mut R, random_free: bool| -> Result<(ArcGerm, Vec<usize>), OracleError> {
        let n = map.dim();
        let mut xs: Vec<TruncatedSeries> = Vec::with_capacity(n);
        let mut free = Vec::with_capacity(n);
        for (i, (c, exps)) in shape.iter().enumerate() {
            let mut divisor = TruncatedSeries::constant(c.clone(), k);
            for (x, &p) in xs.iter().zip(exps) {
                if p > 0 {
                    divisor = divisor.mul(&x.pow(p));
                }
            }
            let ti = &target.components()[i];
            let d = match divisor.ord() {
                Ok(d) => d,
                Err(_) if ti.is_zero_to_order() => {
                    return Err(OracleError::PrecisionExhausted { order: k })
                }
                Err(_) => {
                    return Err(OracleError::NotInImage(format!(
                        "component {i}: divisor vanishes to order {k} but the target does not"
                    )))
                }
            };
            if let Some(m) = (0..d).find(|&m| !ti.coeffs()[m].is_zero()) {
                return Err(OracleError::NotInImage(format!(
                    "component {i}: target has a nonzero t^{m} coefficient below the divisor order {d}"
                )));
            }
            let lead = &divisor.coeffs()[d];
            let mut x = vec![BigRational::zero(); k + 1];
            for m in 0..=k - d {
                let mut acc = ti.coeffs()[m + d].clone();
                for (l, xl) in x.iter().enumerate().take(m) {
                    acc -= xl * &divisor.coeffs()[d + m - l];
                }
                x[m] = acc / lead;
            }
            if random_free {
                for slot in x.iter_mut().skip(k - d + 1) {
                    *slot = draw(rng);
                }
            }
            free.push(d);
            xs.push(TruncatedSeries::new(x, k));
        }
        Ok((ArcGerm::new(xs)?, free))
    };

    let (base, free_per_variable) = lift(rng, false)?;
    let measured: usize = free_per_variable.iter().sum();
    if k < 2 * measured {
        return Err(OracleError::PreconditionK { k, e: measured });
    }
    let jacobian_order = ord_along_arc(&map.jacobian_det(), &base)?;

    let mut samples_verified = usize::from(map.apply_to_arc(&base) == target);
    for _ in 0..samples {
        let (point, _) = lift(rng, true)?;
        if map.apply_to_arc(&point) == target {
            samples_verified += 1;
        }
    }
    Ok(FiberProbe {
        k,
        pass: measured == jacobian_order && samples_verified == samples + 1,
        free_per_variable,
        measured,
        jacobian_order,
        samples_verified,
    })
}

/// A seeded random arc `(t^{j_1} u_1, …)` where `contacts[i]` gives the
/// order of component `i` (a unit times `t^j`); `None` components are
/// arbitrary series.
pub fn random_arc<R: Rng>(rng: &mut R, contacts: &[Option<usize>], order: usize) -> ArcGerm {
    let mut coeff = |nonzero: bool| loop {
        let num: i64 = rng.gen_range(-9..=9);
        if nonzero && num == 0 {
            continue;
        }
        break BigRational::new(num.into(), rng.gen_range(1i64..=5).into());
    };
    let comps = contacts
        .iter()
        .map(|c| {
            let start = c.unwrap_or(0);
            let mut v = vec![BigRational::zero(); order + 1];
            for (m, slot) in v.iter_mut().enumerate().skip(start) {
                *slot = coeff(c.is_some() && m == start);
            }
            TruncatedSeries::new(v, order)
        })
        .collect();
    ArcGerm::new(comps).expect("uniform truncation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn map(c: &[&str]) -> PolyMap {
        PolyMap::parse(c, None).unwrap()
    }

    fn poly(s: &str, n: usize) -> MPoly {
        MPoly::parse(s, &default_vars(n)).unwrap()
    }

    #[test]
    fn orders_along_arcs() {
        let arc = ArcGerm::from_ints(&[&[0, 0, 0, 1], &[1, 1]], 8);
        assert_eq!(ord_along_arc(&poly("x", 2), &arc), Ok(3));
        let arc = ArcGerm::from_ints(&[&[0, 0, 1], &[1]], 8);
        assert_eq!(ord_along_arc(&poly("x^2", 2), &arc), Ok(4));
        let arc = ArcGerm::from_ints(&[&[], &[0, 1]], 8);
        assert_eq!(
            ord_along_arc(&poly("x", 2), &arc),
            Err(OracleError::PrecisionExhausted { order: 8 })
        );
    }

    #[test]
    fn multiplicity_examples() {
        let planar = map(&["x", "x*y"]);
        let arc = ArcGerm::from_ints(&[&[0, 0, 1], &[1, 1]], 8);
        let out = multiplicity_check(
            &planar,
            &arc,
            &[poly("x", 2)],
            &MultiIndex::new(vec![2]),
            &MultiplicityVector::new(vec![1]),
        )
        .unwrap();
        assert!(out.pass);
        assert_eq!(out.measured_order, 2);

        let space = map(&["x", "x*y", "x*z"]);
        let arc = ArcGerm::from_ints(&[&[0, 1], &[1], &[1]], 8);
        let out = multiplicity_check(
            &space,
            &arc,
            &[poly("x", 3)],
            &MultiIndex::new(vec![1]),
            &MultiplicityVector::new(vec![2]),
        )
        .unwrap();
        assert!(out.pass);
        assert_eq!(out.measured_order, 2);

        let id = PolyMap::identity(2);
        let arc = ArcGerm::from_ints(&[&[0, 1], &[0, 0, 1]], 8);
        let out = multiplicity_check(
            &id,
            &arc,
            &[],
            &MultiIndex::new(vec![]),
            &MultiplicityVector::new(vec![]),
        )
        .unwrap();
        assert!(out.pass);
        assert_eq!(out.measured_order, 0);
    }

    #[test]
    fn multiplicity_mismatch_fails() {
        let planar = map(&["x", "x*y"]);
        let arc = ArcGerm::from_ints(&[&[0, 0, 0, 2], &[1]], 8);
        let out = multiplicity_check(
            &planar,
            &arc,
            &[poly("x", 2)],
            &MultiIndex::new(vec![2]),
            &MultiplicityVector::new(vec![1]),
        )
        .unwrap();
        assert!(!out.pass);
        assert_eq!(out.measured_contact, vec![3]);
    }

    #[test]
    fn chain_rule_examples() {
        let sigma = map(&["x", "x*y"]);
        let arc = ArcGerm::from_ints(&[&[0, 1], &[1]], 8);

        let out = chain_rule_check(&sigma, &sigma, Some(&PolyMap::identity(2)), &arc).unwrap();
        assert!(out.pass);
        assert_eq!(out.ord_det_f, 0);

        let f = map(&["x", "2*y"]);
        let sp = f.compose(&sigma).unwrap();
        let out = chain_rule_check(&sigma, &sp, Some(&f), &arc).unwrap();
        assert!(out.pass);
        assert_eq!(
            (out.ord_det_sigma, out.ord_det_sigma_prime, out.ord_det_f),
            (1, 1, 0)
        );

        let f = map(&["x", "x^2*y"]);
        let sp = map(&["x", "x^3*y"]);
        let out = chain_rule_check(&sigma, &sp, Some(&f), &arc).unwrap();
        assert!(out.pass);
        assert_eq!(
            (out.ord_det_sigma, out.ord_det_sigma_prime, out.ord_det_f),
            (1, 3, 2)
        );

        let out = chain_rule_check(&sigma, &sp, None, &arc).unwrap();
        assert!(out.pass && !out.f_measured);
        assert_eq!(out.ord_det_f, 2);

        let wrong = map(&["x", "x^4*y"]);
        assert!(matches!(
            chain_rule_check(&sigma, &wrong, Some(&f), &arc),
            Err(OracleError::MapMismatch(_))
        ));
    }

    #[test]
    fn fiber_examples() {
        let planar = map(&["x", "x*y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);

        let target = ArcGerm::from_ints(&[&[0, 0, 1], &[0, 0, 1, 1]], 6);
        let out = fiber_dimension_probe(&planar, 6, &target, 4, &mut rng).unwrap();
        assert_eq!(out.free_per_variable, vec![0, 2]);
        assert_eq!(out.measured, 2);
        assert_eq!(out.jacobian_order, 2);
        assert!(out.pass);

        let target = ArcGerm::from_ints(&[&[0, 1], &[0, 1]], 4);
        let out = fiber_dimension_probe(&planar, 4, &target, 4, &mut rng).unwrap();
        assert_eq!(out.measured, 1);
        assert!(out.pass);

        let target = ArcGerm::from_ints(&[&[], &[0, 1]], 4);
        assert!(matches!(
            fiber_dimension_probe(&planar, 4, &target, 4, &mut rng),
            Err(OracleError::NotInImage(_))
        ));
    }

    #[test]
    fn fiber_preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let planar = map(&["x", "x*y"]);
        let target = ArcGerm::from_ints(&[&[0, 0, 0, 1], &[0, 0, 0, 1]], 4);
        assert_eq!(
            fiber_dimension_probe(&planar, 4, &target, 1, &mut rng),
            Err(OracleError::PreconditionK { k: 4, e: 3 })
        );
        let target = ArcGerm::from_ints(&[&[0, 1], &[1]], 4);
        assert!(matches!(
            fiber_dimension_probe(&planar, 4, &target, 1, &mut rng),
            Err(OracleError::NotInImage(_))
        ));
        let twisted = map(&["x*y", "y"]);
        assert!(matches!(
            fiber_dimension_probe(&twisted, 4, &target, 1, &mut rng),
            Err(OracleError::NotTriangular(_))
        ));
        let sum = map(&["x", "x*y + x"]);
        assert!(matches!(
            fiber_dimension_probe(&sum, 4, &target, 1, &mut rng),
            Err(OracleError::NotTriangular(_))
        ));
    }

    #[test]
    fn random_arcs_have_requested_contact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for j in 1..6 {
            let arc = random_arc(&mut rng, &[Some(j), None], 12);
            assert_eq!(arc.components()[0].ord(), Ok(j));
        }
    }
}
