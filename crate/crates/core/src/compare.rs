//! Decision procedures comparing two multiplicity vectors ν, ν′ on a shared
//! normal crossing configuration.
//!
//! * Jacobian-bounded direction (ν ≤ ν′): the polynomial identity
//!   `P = Q′ − Q + β(Z_k(σ′)) − β(Z_k(σ))` cannot hold once `deg P` reaches
//!   the common bound `n(k+1) − k/(2ν′_max)` on every right-hand term.
//! * Lipschitz direction (ν′ ≤ ν): indices with `<ν,j> > <ν′,j>` produce
//!   σ′-image strata of dimension `n(k+1) − s_j − <ν′,j>`, which eventually
//!   exceed both residual bounds.
//!
//! A scan up to `k_max` either finds a witness k or reports `INCONCLUSIVE`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::bound::DegreeBound;
use crate::config::{DivisorConfiguration, MultiIndex, MultiplicityVector};
use crate::parallel::Schedule;
use crate::poly::{Degree, Poly};
use crate::strata::{admissible_multiindices, stratify, StrataError};

pub const DEFAULT_STABILITY_WINDOW: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("PRECONDITION_ORDER: {0}")]
    PreconditionOrder(String),
    #[error("k_max must be at least 2, got {0}")]
    ScanTooShort(u64),
    #[error("stability window must be positive")]
    ZeroWindow,
    #[error(transparent)]
    Strata(#[from] StrataError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    JacobianBounded,
    LipschitzDirection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    AlreadyEqual,
    EqualForced { witness_k: u64 },
    Inconclusive { max_k_tried: u64 },
}

impl Verdict {
    pub fn witness(&self) -> Option<u64> {
        match self {
            Verdict::EqualForced { witness_k } => Some(*witness_k),
            _ => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::AlreadyEqual => f.write_str("ALREADY_EQUAL"),
            Verdict::EqualForced { witness_k } => {
                write!(f, "EQUAL_FORCED(witness k = {witness_k})")
            }
            Verdict::Inconclusive { max_k_tried } => {
                write!(f, "INCONCLUSIVE(k_max = {max_k_tried})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pqq {
    pub p: Poly,
    pub q: Poly,
    pub q_prime: Poly,
}

fn check_order(
    lo: &MultiplicityVector,
    hi: &MultiplicityVector,
    what: &str,
) -> Result<(), CompareError> {
    if lo.len() != hi.len() {
        return Err(CompareError::PreconditionOrder(format!(
            "multiplicity vectors have lengths {} and {}",
            lo.len(),
            hi.len()
        )));
    }
    if let Some(i) = (0..lo.len()).find(|&i| lo.get(i) > hi.get(i)) {
        return Err(CompareError::PreconditionOrder(format!(
            "{what} fails at component {i}: {} > {}",
            lo.get(i),
            hi.get(i)
        )));
    }
    Ok(())
}

/// `β(E̊_J)(u−1)^{|J|} u^e`, zero for unlisted supports.
fn open_term(c: &DivisorConfiguration, j: &MultiIndex, e: i64) -> Result<Poly, StrataError> {
    if e < 0 {
        return Err(StrataError::NegativeExponent {
            j: j.to_string(),
            exponent: e,
        });
    }
    let support = j.support();
    Ok(match c.stratum(&support) {
        Some(s) => (&s.beta * &Poly::from_i64s(&[-1, 1]).pow(support.len() as u32)).shift(e as u64),
        None => Poly::zero(),
    })
}

fn base_exponent(c: &DivisorConfiguration, j: &MultiIndex, k: u64) -> i64 {
    c.n as i64 * k as i64 - j.size() as i64
}

/// The three sums of the jacobian-bounded identity. Requires ν ≤ ν′.
pub fn pqq_decomposition(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: &MultiplicityVector,
    k: u64,
) -> Result<Pqq, CompareError> {
    check_order(nu, nu_prime, "nu <= nu'")?;
    let a: BTreeSet<MultiIndex> = admissible_multiindices(c, nu, k).into_iter().collect();
    let a_prime: BTreeSet<MultiIndex> = admissible_multiindices(c, nu_prime, k)
        .into_iter()
        .collect();

    let mut p = Poly::zero();
    for j in a.intersection(&a_prime) {
        let gap = j.pairing(nu_prime) - j.pairing(nu);
        let head = open_term(c, j, base_exponent(c, j, k) - j.pairing(nu_prime) as i64)?;
        let tail = &Poly::monomial(gap) - &Poly::one();
        p = &p + &(&head * &tail);
    }
    let mut q = Poly::zero();
    for j in a.difference(&a_prime) {
        q = &q + &open_term(c, j, base_exponent(c, j, k) - j.pairing(nu) as i64)?;
    }
    let mut q_prime = Poly::zero();
    for j in a_prime.difference(&a) {
        q_prime = &q_prime + &open_term(c, j, base_exponent(c, j, k) - j.pairing(nu_prime) as i64)?;
    }
    Ok(Pqq { p, q, q_prime })
}

/// `min { s_j + <ν,j> : j ∈ A_k(σ′), <ν′−ν, j> > 0 }`, or `None` when empty.
pub fn contact_minimum(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: &MultiplicityVector,
    k: u64,
) -> Result<Option<u64>, CompareError> {
    check_order(nu, nu_prime, "nu <= nu'")?;
    Ok(admissible_multiindices(c, nu_prime, k)
        .iter()
        .filter(|j| j.pairing(nu_prime) > j.pairing(nu))
        .map(|j| j.size() + j.pairing(nu))
        .min())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobianRecord {
    pub k: u64,
    pub a_sigma_size: usize,
    pub a_sigma_prime_size: usize,
    pub p: Poly,
    pub q: Poly,
    pub q_prime: Poly,
    pub deg_p: Degree,
    pub c_k: Option<u64>,
    /// `deg P == n(k+1) − c_k`; absent when `C_k` is empty.
    pub degree_matches_c_k: Option<bool>,
    pub c_k_stable: bool,
    pub bound: DegreeBound,
    pub contradiction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitEntry {
    pub j: MultiIndex,
    pub dim_sigma: i64,
    pub dim_sigma_prime: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LipschitzRecord {
    pub k: u64,
    pub a_sigma_size: usize,
    pub a_prime: Vec<SplitEntry>,
    pub a_double_prime: Vec<SplitEntry>,
    /// Degree of β(Z_k(σ)).
    pub z_sigma_degree: Degree,
    pub bound_sigma: DegreeBound,
    pub bound_sigma_prime: DegreeBound,
    /// Descriptive reading of the β identity over A″: each term
    /// `β(X_{k,j}(σ)) − β(X̃_{k,j}(σ′))` has degree `dim_sigma_prime` and a
    /// negative leading coefficient.
    pub a_double_prime_term_degrees: Vec<i64>,
    pub witness_j: Option<MultiIndex>,
    pub contradiction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PerK {
    Jacobian(Vec<JacobianRecord>),
    Lipschitz(Vec<LipschitzRecord>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub mode: Mode,
    pub n: u32,
    pub components: Vec<String>,
    pub nu: MultiplicityVector,
    pub nu_prime: MultiplicityVector,
    pub k_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability_window: Option<usize>,
    pub per_k: PerK,
    pub verdict: Verdict,
    pub witness_k: Option<u64>,
}

impl ComparisonReport {
    /// CSV projection: `k,degree,bound_num,bound_den,contradiction`, where
    /// `degree` is `deg P` or the largest A″ image dimension.
    pub fn csv(&self) -> String {
        let mut out = String::from("k,degree,bound_num,bound_den,contradiction\n");
        match &self.per_k {
            PerK::Jacobian(rs) => {
                for r in rs {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        r.k, r.deg_p, r.bound.numerator, r.bound.denominator, r.contradiction
                    ));
                }
            }
            PerK::Lipschitz(rs) => {
                for r in rs {
                    let deg = r
                        .a_double_prime
                        .iter()
                        .map(|e| e.dim_sigma_prime)
                        .max()
                        .map_or("-inf".to_string(), |d| d.to_string());
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        r.k,
                        deg,
                        r.bound_sigma.numerator,
                        r.bound_sigma.denominator,
                        r.contradiction
                    ));
                }
            }
        }
        out
    }
}

fn jacobian_record(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: &MultiplicityVector,
    k: u64,
) -> Result<JacobianRecord, CompareError> {
    let Pqq { p, q, q_prime } = pqq_decomposition(c, nu, nu_prime, k)?;
    let c_k = contact_minimum(c, nu, nu_prime, k)?;
    let deg_p = p.degree();
    let top = c.n as i64 * (k as i64 + 1);
    let degree_matches_c_k = c_k.map(|m| deg_p == Degree::Finite((top - m as i64).max(0) as u64));
    let bound = DegreeBound::new(c.n, k, nu_prime.max());
    let contradiction = c_k.is_some() && bound.reached_by(deg_p);
    Ok(JacobianRecord {
        k,
        a_sigma_size: admissible_multiindices(c, nu, k).len(),
        a_sigma_prime_size: admissible_multiindices(c, nu_prime, k).len(),
        p,
        q,
        q_prime,
        deg_p,
        c_k,
        degree_matches_c_k,
        c_k_stable: false,
        bound,
        contradiction,
    })
}

/// Scans `k = 2..=k_max` for a contradiction in the jacobian-bounded
/// direction. A witness also needs `c_k` constant over the last `window`
/// values of k.
pub fn thm1_verdict(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: &MultiplicityVector,
    k_max: u64,
    window: usize,
    schedule: Schedule,
) -> Result<ComparisonReport, CompareError> {
    check_order(nu, nu_prime, "nu <= nu'")?;
    if k_max < 2 {
        return Err(CompareError::ScanTooShort(k_max));
    }
    if window == 0 {
        return Err(CompareError::ZeroWindow);
    }
    let mut report = ComparisonReport {
        mode: Mode::JacobianBounded,
        n: c.n,
        components: c.components.clone(),
        nu: nu.clone(),
        nu_prime: nu_prime.clone(),
        k_max,
        stability_window: Some(window),
        per_k: PerK::Jacobian(Vec::new()),
        verdict: Verdict::AlreadyEqual,
        witness_k: None,
    };
    if nu == nu_prime {
        return Ok(report);
    }
    let ks: Vec<u64> = (2..=k_max).collect();
    let mut records = schedule
        .map(ks, |k| jacobian_record(c, nu, nu_prime, k))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..records.len() {
        if i + 1 >= window {
            let tail = &records[i + 1 - window..=i];
            let first = tail[0].c_k;
            records[i].c_k_stable = first.is_some() && tail.iter().all(|r| r.c_k == first);
        }
    }
    report.verdict = records
        .iter()
        .find(|r| r.contradiction && r.c_k_stable)
        .map_or(Verdict::Inconclusive { max_k_tried: k_max }, |r| {
            Verdict::EqualForced { witness_k: r.k }
        });
    report.witness_k = report.verdict.witness();
    report.per_k = PerK::Jacobian(records);
    Ok(report)
}

/// Splits A_k(σ) into `<ν,j> = <ν′,j>` and `<ν,j> > <ν′,j>`. Requires ν′ ≤ ν.
pub fn split_a(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: &MultiplicityVector,
    k: u64,
) -> Result<(Vec<MultiIndex>, Vec<MultiIndex>), CompareError> {
    check_order(nu_prime, nu, "nu' <= nu")?;
    Ok(admissible_multiindices(c, nu, k)
        .into_iter()
        .partition(|j| j.pairing(nu) == j.pairing(nu_prime)))
}

fn lipschitz_record(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: &MultiplicityVector,
    k: u64,
) -> Result<LipschitzRecord, CompareError> {
    let (a1, a2) = split_a(c, nu, nu_prime, k)?;
    let top = c.n as i64 * (k as i64 + 1);
    let entry = |j: MultiIndex| {
        let dim_sigma = top - j.size() as i64 - j.pairing(nu) as i64;
        let dim_sigma_prime = dim_sigma + (j.pairing(nu) - j.pairing(nu_prime)) as i64;
        SplitEntry {
            j,
            dim_sigma,
            dim_sigma_prime,
        }
    };
    // strata with empty E̊_J contribute nothing
    let live = |j: &MultiIndex| c.stratum(&j.support()).is_some_and(|s| !s.beta.is_zero());
    let a_size = a1.len() + a2.len();
    let a_prime: Vec<SplitEntry> = a1.into_iter().filter(live).map(entry).collect();
    let a_double_prime: Vec<SplitEntry> = a2.into_iter().filter(live).map(entry).collect();
    let bound_sigma = DegreeBound::new(c.n, k, nu.max());
    let bound_sigma_prime = DegreeBound::new(c.n, k, nu_prime.max());
    let witness_j = a_double_prime
        .iter()
        .find(|e| {
            bound_sigma.reached_by_int(e.dim_sigma_prime)
                && bound_sigma_prime.reached_by_int(e.dim_sigma_prime)
        })
        .map(|e| e.j.clone());
    let z_sigma_degree = stratify(c, nu, k)?.residual_degree;
    Ok(LipschitzRecord {
        k,
        a_sigma_size: a_size,
        a_double_prime_term_degrees: a_double_prime.iter().map(|e| e.dim_sigma_prime).collect(),
        a_prime,
        a_double_prime,
        z_sigma_degree,
        bound_sigma,
        bound_sigma_prime,
        contradiction: witness_j.is_some(),
        witness_j,
    })
}

/// Scans `k = 2..=k_max` in the Lipschitz direction (ν′ ≤ ν).
pub fn lipschitz_verdict(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: &MultiplicityVector,
    k_max: u64,
    schedule: Schedule,
) -> Result<ComparisonReport, CompareError> {
    check_order(nu_prime, nu, "nu' <= nu")?;
    if k_max < 2 {
        return Err(CompareError::ScanTooShort(k_max));
    }
    let mut report = ComparisonReport {
        mode: Mode::LipschitzDirection,
        n: c.n,
        components: c.components.clone(),
        nu: nu.clone(),
        nu_prime: nu_prime.clone(),
        k_max,
        stability_window: None,
        per_k: PerK::Lipschitz(Vec::new()),
        verdict: Verdict::AlreadyEqual,
        witness_k: None,
    };
    if nu == nu_prime {
        return Ok(report);
    }
    let ks: Vec<u64> = (2..=k_max).collect();
    let records = schedule
        .map(ks, |k| lipschitz_record(c, nu, nu_prime, k))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    report.verdict = records
        .iter()
        .find(|r| r.contradiction)
        .map_or(Verdict::Inconclusive { max_k_tried: k_max }, |r| {
            Verdict::EqualForced { witness_k: r.k }
        });
    report.witness_k = report.verdict.witness();
    report.per_k = PerK::Lipschitz(records);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{builtin_config, Stratum};

    fn mv(v: &[u64]) -> MultiplicityVector {
        MultiplicityVector::new(v.to_vec())
    }

    fn planar() -> DivisorConfiguration {
        builtin_config("blowup_point_R2").unwrap().0
    }

    fn terms(t: &[(i64, u64)]) -> Poly {
        t.iter()
            .map(|&(c, d)| &Poly::constant(c) * &Poly::monomial(d))
            .sum()
    }

    #[test]
    fn pqq_planar_k8() {
        let c = planar();
        let got = pqq_decomposition(&c, &mv(&[1]), &mv(&[2]), 8).unwrap();
        let u2m1 = terms(&[(1, 2), (-1, 0)]);
        let um1 = terms(&[(1, 1), (-1, 0)]);
        let p = &u2m1 * &(&(&um1 * &Poly::monomial(13)) + &(&u2m1 * &Poly::monomial(10)));
        let q = &u2m1 * &(&Poly::monomial(10) + &Poly::monomial(8));
        assert_eq!(got.p, p);
        assert_eq!(got.q, q);
        assert!(got.q_prime.is_zero());
        assert_eq!(got.p.degree(), Degree::Finite(16));
    }

    #[test]
    fn pqq_equal_vectors_vanish() {
        let c = planar();
        let got = pqq_decomposition(&c, &mv(&[1]), &mv(&[1]), 9).unwrap();
        assert!(got.p.is_zero() && got.q.is_zero() && got.q_prime.is_zero());
    }

    #[test]
    fn order_preconditions() {
        let c = planar();
        assert!(matches!(
            pqq_decomposition(&c, &mv(&[2]), &mv(&[1]), 4),
            Err(CompareError::PreconditionOrder(_))
        ));
        assert!(matches!(
            contact_minimum(&c, &mv(&[2]), &mv(&[1]), 4),
            Err(CompareError::PreconditionOrder(_))
        ));
        assert!(matches!(
            split_a(&c, &mv(&[1]), &mv(&[2]), 4),
            Err(CompareError::PreconditionOrder(_))
        ));
        assert!(matches!(
            thm1_verdict(&c, &mv(&[2]), &mv(&[1]), 10, 4, Schedule::Auto),
            Err(CompareError::PreconditionOrder(_))
        ));
        assert!(matches!(
            lipschitz_verdict(&c, &mv(&[1]), &mv(&[2]), 10, Schedule::Auto),
            Err(CompareError::PreconditionOrder(_))
        ));
    }

    #[test]
    fn contact_minimum_examples() {
        let c = planar();
        assert_eq!(
            contact_minimum(&c, &mv(&[1]), &mv(&[2]), 8).unwrap(),
            Some(2)
        );
        assert_eq!(contact_minimum(&c, &mv(&[1]), &mv(&[1]), 8).unwrap(), None);
        assert_eq!(contact_minimum(&c, &mv(&[1]), &mv(&[2]), 2).unwrap(), None);
    }

    #[test]
    fn jacobian_scan_planar() {
        let c = planar();
        let r = thm1_verdict(&c, &mv(&[1]), &mv(&[2]), 12, 4, Schedule::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::EqualForced { witness_k: 8 });
        assert_eq!(r.witness_k, Some(8));
        let r = thm1_verdict(&c, &mv(&[1]), &mv(&[2]), 6, 4, Schedule::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive { max_k_tried: 6 });
        let r = thm1_verdict(&c, &mv(&[1]), &mv(&[1]), 6, 4, Schedule::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::AlreadyEqual);
        assert!(matches!(
            thm1_verdict(&c, &mv(&[1]), &mv(&[2]), 1, 4, Schedule::Auto),
            Err(CompareError::ScanTooShort(1))
        ));
    }

    #[test]
    fn jacobian_witness_solves_the_rational_inequality() {
        // deg P = 2k once C_k is nonempty (k >= 2 nu'), bound 2(k+1) - k/(2 nu'):
        // 2k >= 2k + 2 - k/(2 nu')  <=>  k >= 4 nu'
        let c = planar();
        for nu_p in 2..=4u64 {
            let r = thm1_verdict(&c, &mv(&[1]), &mv(&[nu_p]), 40, 4, Schedule::Auto).unwrap();
            assert_eq!(r.witness_k, Some(4 * nu_p), "nu' = {nu_p}");
        }
    }

    #[test]
    fn jacobian_records_hold_invariants() {
        let c = planar();
        let r = thm1_verdict(&c, &mv(&[1]), &mv(&[3]), 30, 4, Schedule::Sequential).unwrap();
        let PerK::Jacobian(records) = &r.per_k else {
            panic!()
        };
        let w = r.witness_k.unwrap();
        for rec in records {
            assert!(rec.q_prime.is_zero());
            if rec.c_k.is_some() {
                assert_eq!(rec.degree_matches_c_k, Some(true), "k={}", rec.k);
            }
            if rec.k >= w {
                assert!(rec.contradiction, "k={}", rec.k);
            }
        }
    }

    #[test]
    fn split_examples() {
        let c = planar();
        let (a1, a2) = split_a(&c, &mv(&[2]), &mv(&[1]), 8).unwrap();
        assert!(a1.is_empty());
        assert_eq!(a2, vec![MultiIndex::new(vec![1]), MultiIndex::new(vec![2])]);

        let (a1, a2) = split_a(&c, &mv(&[1]), &mv(&[1]), 8).unwrap();
        assert_eq!(a1.len(), 4);
        assert!(a2.is_empty());

        let two = DivisorConfiguration {
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
        let (a1, a2) = split_a(&two, &mv(&[2, 1]), &mv(&[1, 1]), 6).unwrap();
        assert!(a1.contains(&MultiIndex::new(vec![0, 1])));
        assert!(a1.iter().all(|j| j.values()[0] == 0));
        assert!(a2.contains(&MultiIndex::new(vec![1, 0])));
    }

    #[test]
    fn lipschitz_planar() {
        let c = planar();
        let r = lipschitz_verdict(&c, &mv(&[2]), &mv(&[1]), 16, Schedule::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::EqualForced { witness_k: 8 });
        let r = lipschitz_verdict(&c, &mv(&[2]), &mv(&[1]), 7, Schedule::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive { max_k_tried: 7 });
        let r = lipschitz_verdict(&c, &mv(&[1]), &mv(&[1]), 7, Schedule::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::AlreadyEqual);
    }

    #[test]
    fn equal_vectors_agree_in_both_modes() {
        let (c, _) = builtin_config("blowup_point_R3").unwrap();
        for v in 1..=5 {
            let nu = mv(&[v]);
            let a = thm1_verdict(&c, &nu, &nu, 10, 4, Schedule::Auto).unwrap();
            let b = lipschitz_verdict(&c, &nu, &nu, 10, Schedule::Auto).unwrap();
            assert_eq!(a.verdict, Verdict::AlreadyEqual);
            assert_eq!(b.verdict, Verdict::AlreadyEqual);
        }
    }

    #[test]
    fn schedules_give_identical_reports() {
        let c = planar();
        let a = thm1_verdict(&c, &mv(&[1]), &mv(&[2]), 20, 4, Schedule::Auto).unwrap();
        let b = thm1_verdict(&c, &mv(&[1]), &mv(&[2]), 20, 4, Schedule::Sequential).unwrap();
        assert_eq!(a, b);
        let a = lipschitz_verdict(&c, &mv(&[3]), &mv(&[1]), 20, Schedule::Auto).unwrap();
        let b = lipschitz_verdict(&c, &mv(&[3]), &mv(&[1]), 20, Schedule::Sequential).unwrap();
        assert_eq!(a, b);
    }
}
