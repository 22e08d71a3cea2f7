//! Jet stratification of the k-jet space L_k by contact multi-indices.
//!
//! For each admissible `j` the stratum `X_{k,j}` has
//!
//! ```text
//! β(X_{k,j}) = β(E̊_J) (u − 1)^{|J|} u^{nk − s_j − <ν,j>}
//! dim X_{k,j} = n(k+1) − s_j − <ν,j>
//! ```
//!
//! and the residual set `Z_k` is whatever the strata leave of `u^{nk}`.

use serde::Serialize;
use thiserror::Error;

use crate::bound::DegreeBound;
use crate::config::{DivisorConfiguration, MultiIndex, MultiplicityVector};
use crate::parallel::Schedule;
use crate::poly::{Degree, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("NEGATIVE_EXPONENT: j = {j} gives nk - s_j - <nu,j> = {exponent}")]
    NegativeExponent { j: String, exponent: i64 },
    #[error("k must be positive")]
    ZeroK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StrataWarning {
    NonRealizableWarning,
    DimensionOverflowWarning,
    DimensionDegreeMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumRecord {
    pub j: MultiIndex,
    pub dim: i64,
    pub beta: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetStratification {
    pub k: u64,
    pub n: u32,
    pub nu_max: u64,
    pub strata: Vec<StratumRecord>,
    pub residual_beta: Poly,
    pub residual_degree: Degree,
    pub bound: DegreeBound,
    pub bound_ok: bool,
    pub warnings: Vec<StrataWarning>,
}

/// Admissible contact indices: support equal to a nonempty origin stratum,
/// `j_i >= 1` on the support, `2<nu,j> <= k`. Sorted lexicographically.
pub fn admissible_multiindices(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    k: u64,
) -> Vec<MultiIndex> {
    fn fill(
        support: &[usize],
        nu: &MultiplicityVector,
        budget: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<MultiIndex>,
    ) {
        let Some((&i, rest)) = support.split_first() else {
            out.push(MultiIndex::new(current.clone()));
            return;
        };
        // leave room for the remaining components at j = 1
        let reserved: u64 = rest.iter().map(|&r| nu.get(r)).sum();
        let w = nu.get(i);
        let mut v = 1;
        while w * v + reserved <= budget {
            current[i] = v;
            fill(rest, nu, budget - w * v, current, out);
            v += 1;
        }
        current[i] = 0;
    }

    let budget = k / 2;
    let mut out = Vec::new();
    for s in c.origin_strata() {
        let mut current = vec![0; c.components.len()];
        fill(&s.support, nu, budget, &mut current, &mut out);
    }
    out.sort();
    out
}

fn exponent(c: &DivisorConfiguration, nu: &MultiplicityVector, j: &MultiIndex, k: u64) -> i64 {
    (c.n as i64) * (k as i64) - j.size() as i64 - j.pairing(nu) as i64
}

/// `β(E̊_J)(u−1)^{|J|} u^{nk − s_j − <nu,j>}`. Zero when E̊_J is not listed.
pub fn stratum_beta(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    j: &MultiIndex,
    k: u64,
) -> Result<Poly, StrataError> {
    let e = exponent(c, nu, j, k);
    if e < 0 {
        return Err(StrataError::NegativeExponent {
            j: j.to_string(),
            exponent: e,
        });
    }
    let support = j.support();
    let Some(stratum) = c.stratum(&support) else {
        return Ok(Poly::zero());
    };
    let fiber = Poly::from_i64s(&[-1, 1]).pow(support.len() as u32);
    Ok((&stratum.beta * &fiber).shift(e as u64))
}

/// `n(k+1) − s_j − <nu,j>`.
pub fn stratum_dim(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    j: &MultiIndex,
    k: u64,
) -> i64 {
    (c.n as i64) * (k as i64 + 1) - j.size() as i64 - j.pairing(nu) as i64
}

pub fn stratify(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    k: u64,
) -> Result<JetStratification, StrataError> {
    if k == 0 {
        return Err(StrataError::ZeroK);
    }
    let mut warnings = Vec::new();
    let mut strata = Vec::new();
    let mut covered = Poly::zero();
    let nk = c.n as i64 * k as i64;
    for j in admissible_multiindices(c, nu, k) {
        let beta = stratum_beta(c, nu, &j, k)?;
        let dim = stratum_dim(c, nu, &j, k);
        if let Degree::Finite(d) = beta.degree() {
            if d as i64 != dim {
                warnings.push(StrataWarning::DimensionDegreeMismatch);
            }
        }
        if dim > nk {
            warnings.push(StrataWarning::DimensionOverflowWarning);
        }
        covered = &covered + &beta;
        strata.push(StratumRecord { j, dim, beta });
    }
    let residual_beta = &Poly::monomial(nk as u64) - &covered;
    let nu_max = nu.max();
    let bound = DegreeBound::new(c.n, k, nu_max);
    let residual_degree = residual_beta.degree();
    let bound_ok = residual_beta.is_zero()
        || (bound.exceeds(residual_degree)
            && residual_beta.leading_sign() == std::cmp::Ordering::Greater);
    if !bound_ok {
        warnings.push(StrataWarning::NonRealizableWarning);
    }
    warnings.sort_unstable();
    warnings.dedup();
    Ok(JetStratification {
        k,
        n: c.n,
        nu_max,
        strata,
        residual_beta,
        residual_degree,
        bound,
        bound_ok,
        warnings,
    })
}

/// One stratification per `k`, in the order given.
pub fn stratify_sweep(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    ks: Vec<u64>,
    schedule: Schedule,
) -> Result<Vec<JetStratification>, StrataError> {
    schedule
        .map(ks, |k| stratify(c, nu, k))
        .into_iter()
        .collect()
}

/// CSV projection of a sweep: `k,deg_residual,bound_num,bound_den,bound_ok`.
pub fn sweep_csv(sweep: &[JetStratification]) -> String {
    let mut out = String::from("k,deg_residual,bound_num,bound_den,bound_ok\n");
    for s in sweep {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.k, s.residual_degree, s.bound.numerator, s.bound.denominator, s.bound_ok
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{builtin_config, Stratum};

    fn j(v: &[u64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn poly_terms(terms: &[(i64, u64)]) -> Poly {
        terms
            .iter()
            .map(|&(c, d)| &Poly::constant(c) * &Poly::monomial(d))
            .sum()
    }

    #[test]
    fn admissible_sets() {
        let (c2, nu2) = builtin_config("blowup_point_R2").unwrap();
        assert_eq!(
            admissible_multiindices(&c2, &nu2, 4),
            vec![j(&[1]), j(&[2])]
        );
        let (c3, nu3) = builtin_config("blowup_point_R3").unwrap();
        assert_eq!(admissible_multiindices(&c3, &nu3, 4), vec![j(&[1])]);
        assert!(admissible_multiindices(&c2, &nu2, 1).is_empty());
        assert!(admissible_multiindices(&c3, &nu3, 1).is_empty());
    }

    #[test]
    fn stratum_values() {
        let (c2, nu2) = builtin_config("blowup_point_R2").unwrap();
        let (c3, nu3) = builtin_config("blowup_point_R3").unwrap();
        assert_eq!(
            stratum_beta(&c2, &nu2, &j(&[1]), 4).unwrap(),
            poly_terms(&[(1, 8), (-1, 6)])
        );
        assert_eq!(
            stratum_beta(&c2, &nu2, &j(&[2]), 4).unwrap(),
            poly_terms(&[(1, 6), (-1, 4)])
        );
        assert_eq!(
            stratum_beta(&c3, &nu3, &j(&[1]), 4).unwrap(),
            poly_terms(&[(1, 12), (-1, 9)])
        );
        assert_eq!(stratum_dim(&c2, &nu2, &j(&[1]), 4), 8);
        assert_eq!(stratum_dim(&c3, &nu3, &j(&[1]), 4), 12);
    }

    #[test]
    fn negative_exponent() {
        let (c2, nu2) = builtin_config("blowup_point_R2").unwrap();
        let err = stratum_beta(&c2, &nu2, &j(&[5]), 4).unwrap_err();
        assert_eq!(
            err,
            StrataError::NegativeExponent {
                j: "(5)".into(),
                exponent: -2
            }
        );
    }

    #[test]
    fn planar_k4() {
        let (c, nu) = builtin_config("blowup_point_R2").unwrap();
        let s = stratify(&c, &nu, 4).unwrap();
        assert_eq!(s.strata.len(), 2);
        assert_eq!(s.residual_beta, Poly::monomial(4));
        assert!(s.bound_ok);
        assert!(s.warnings.is_empty());
    }

    #[test]
    fn space_k8() {
        let (c, nu) = builtin_config("blowup_point_R3").unwrap();
        let s = stratify(&c, &nu, 8).unwrap();
        assert_eq!(s.residual_beta, Poly::monomial(18));
        // 27 - 8/4 = 25
        assert_eq!((s.bound.numerator, s.bound.denominator), (100, 4));
        assert!(s.bound_ok);
    }

    #[test]
    fn k1_has_no_strata() {
        for name in ["blowup_point_R2", "blowup_point_R3", "blowup_point_R4"] {
            let (c, nu) = builtin_config(name).unwrap();
            let s = stratify(&c, &nu, 1).unwrap();
            assert!(s.strata.is_empty());
            assert_eq!(s.residual_beta, Poly::monomial(c.n as u64));
        }
    }

    #[test]
    fn closed_form_for_point_blowups() {
        // Independent telescoping: sum_{j=1}^{m} (u^n - 1) u^{n(k-j)} = u^{nk} - u^{n(k-m)}
        for n in 2u64..=4 {
            let (c, nu) = builtin_config(&format!("blowup_point_R{n}")).unwrap();
            for k in 1u64..=40 {
                let m = k / (2 * (n - 1));
                let s = stratify(&c, &nu, k).unwrap();
                assert_eq!(s.residual_beta, Poly::monomial(n * (k - m)), "n={n} k={k}");
            }
        }
    }

    fn normal_crossing_pair() -> (DivisorConfiguration, MultiplicityVector) {
        // two curves crossing at one point over the origin in a surface:
        // E̊_1 ≅ E̊_2 ≅ R minus one point, E̊_12 a point
        let c = DivisorConfiguration {
            n: 2,
            components: vec!["E1".into(), "E2".into()],
            strata: vec![
                Stratum {
                    support: vec![0],
                    beta: Poly::from_i64s(&[-1, 1]),
                    maps_to_origin: true,
                },
                Stratum {
                    support: vec![1],
                    beta: Poly::from_i64s(&[-1, 1]),
                    maps_to_origin: true,
                },
                Stratum {
                    support: vec![0, 1],
                    beta: Poly::one(),
                    maps_to_origin: true,
                },
            ],
        };
        (c, MultiplicityVector::new(vec![1, 2]))
    }

    #[test]
    fn two_component_enumeration_matches_brute_force() {
        let (c, nu) = normal_crossing_pair();
        for k in 1..=20u64 {
            let mut brute = Vec::new();
            for a in 0..=k {
                for b in 0..=k {
                    let jj = j(&[a, b]);
                    if (a, b) != (0, 0) && 2 * jj.pairing(&nu) <= k {
                        brute.push(jj);
                    }
                }
            }
            brute.sort();
            assert_eq!(admissible_multiindices(&c, &nu, k), brute, "k={k}");
            let s = stratify(&c, &nu, k).unwrap();
            let total: Poly = s.strata.iter().map(|r| r.beta.clone()).sum();
            assert_eq!(&s.residual_beta + &total, Poly::monomial(2 * k));
            for r in &s.strata {
                assert_eq!(r.beta.degree(), Degree::Finite(r.dim as u64));
            }
        }
    }

    #[test]
    fn unlisted_support_is_skipped() {
        let (mut c, nu) = normal_crossing_pair();
        c.strata.pop();
        let js = admissible_multiindices(&c, &nu, 12);
        assert!(js.iter().all(|x| x.support().len() == 1));
    }

    #[test]
    fn inconsistent_data_warns_instead_of_failing() {
        // pretend the exceptional divisor of the planar blow-up were RP^1 twice over
        let (mut c, nu) = builtin_config("blowup_point_R2").unwrap();
        c.strata[0].beta = Poly::from_i64s(&[2, 2]);
        let s = stratify(&c, &nu, 6).unwrap();
        assert!(!s.bound_ok);
        assert!(s.warnings.contains(&StrataWarning::NonRealizableWarning));
    }

    #[test]
    fn dimension_overflow_is_flagged() {
        // nu = 1 on a divisor in R^3 breaks s_j + <nu,j> >= n
        let c = DivisorConfiguration {
            n: 3,
            components: vec!["E1".into()],
            strata: vec![Stratum {
                support: vec![0],
                beta: Poly::from_i64s(&[1, 1, 1]),
                maps_to_origin: true,
            }],
        };
        let nu = MultiplicityVector::new(vec![1]);
        let s = stratify(&c, &nu, 4).unwrap();
        // dim = 3*5 - 1 - 1 = 13 > nk = 12
        assert!(s
            .warnings
            .contains(&StrataWarning::DimensionOverflowWarning));
    }

    #[test]
    fn sweep_schedules_agree() {
        let (c, nu) = builtin_config("blowup_point_R3").unwrap();
        let ks: Vec<u64> = (1..=30).collect();
        let a = stratify_sweep(&c, &nu, ks.clone(), Schedule::Auto).unwrap();
        let b = stratify_sweep(&c, &nu, ks, Schedule::Sequential).unwrap();
        assert_eq!(a, b);
        let csv = sweep_csv(&a[..2]);
        assert_eq!(
            csv,
            "k,deg_residual,bound_num,bound_den,bound_ok\n1,3,23,4,true\n2,6,34,4,true\n"
        );
    }
}
