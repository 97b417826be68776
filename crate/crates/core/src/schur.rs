//! Partitions, Schur determinants and the positivity report for the twisted
//! cotangent bundle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::bounds::{symmetric_positivity_threshold, taylor_positivity_threshold};
use crate::chow::{segre_cotangent, ModelParams};
use crate::error::{arg_err, Error, Result};
use crate::poly::{elementary_symmetric, series_inverse, MultidegreePoly};
use crate::ring::{bareiss_det, cofactor_det, Ring};

/// Weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(arg_err!("partition parts must be positive: {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(arg_err!("partition parts must be weakly decreasing: {parts:?}"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32)
                .collect(),
        )
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// All partitions of `weight`, largest first part first, then
/// lexicographically decreasing.
pub fn partitions_of(weight: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, weight, &mut Vec::new(), &mut out);
    out
}

/// `det(c_{lambda_i + j - i})`; indices below 0 or past the end read as 0.
pub fn schur_det<R: Ring>(lambda: &Partition, classes: &[R]) -> Result<R> {
    let sample = classes
        .first()
        .ok_or_else(|| arg_err!("class sequence needs at least c_0"))?;
    let len = lambda.len();
    let matrix: Vec<Vec<R>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let idx = lambda.0[i] as i64 + j as i64 - i as i64;
                    if idx < 0 || idx as usize >= classes.len() {
                        sample.zero_like()
                    } else {
                        classes[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    let one = sample.one_like();
    match bareiss_det(matrix.clone(), &one) {
        Some(d) => Ok(d),
        None => Ok(cofactor_det(&matrix, &one)),
    }
}

fn ser_opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMethod {
    /// Closed form for combinations of elementary symmetric polynomials.
    Symmetric,
    /// Taylor expansion at the diagonal with per-coefficient root bounds.
    Taylor,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchurRecord {
    pub lambda: Partition,
    pub lambda_bar: Partition,
    /// `h^l` coefficient of `Delta_{lambda_bar}(s(Omega_X(-a)))`.
    pub polynomial: MultidegreePoly,
    pub dominant: MultidegreePoly,
    pub dominant_positive: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub threshold: Option<BigRational>,
    pub threshold_method: Option<ThresholdMethod>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchurReport {
    pub params: ModelParams,
    pub a: i64,
    pub records: Vec<SchurRecord>,
    /// Maximum of the per-partition thresholds; `None` if any is missing.
    #[serde(rename = "D", serialize_with = "ser_opt_rational")]
    pub threshold: Option<BigRational>,
}

/// Uniform threshold for one polynomial, preferring the symmetric closed
/// form when the polynomial is a combination of `eps_j`.
pub fn polynomial_threshold(p: &MultidegreePoly) -> Result<Option<(BigRational, ThresholdMethod)>> {
    if let Ok(expr) = p.express_in_elementary() {
        if let Some((k, lead)) = expr.first() {
            if lead.is_positive() && *k <= p.num_vars() {
                let lead = BigRational::from_integer(lead.clone());
                let coeffs: Vec<(usize, BigRational)> = expr
                    .iter()
                    .map(|(j, a)| (*j, BigRational::from_integer(a.clone()) / &lead))
                    .collect();
                let r = symmetric_positivity_threshold(&coeffs, p.num_vars(), *k)?;
                return Ok(Some((r, ThresholdMethod::Symmetric)));
            }
        }
    }
    Ok(taylor_positivity_threshold(p)?.map(|r| (r, ThresholdMethod::Taylor)))
}

/// For every partition `lambda` of every `l = 1..=n`, the Schur polynomial
/// `Delta_{lambda_bar}` of `s(Omega_X(-a))`, its dominant part and a uniform
/// degree threshold beyond which it is positive.
pub fn positivity_report(params: ModelParams, a: i64) -> Result<SchurReport> {
    let (n, c) = (params.dim(), params.codim());
    if c < n {
        return Err(Error::Precondition(format!(
            "numerical positivity needs c >= n, got c = {c}, n = {n}"
        )));
    }
    // Entries are homogeneous (s_k is a multiple of h^k), so the h^l
    // coefficient of the determinant is the determinant of the coefficients.
    let twisted: Vec<MultidegreePoly> = segre_cotangent(params, -a)
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.coeff(k).clone())
        .collect();
    let eps: Vec<MultidegreePoly> = (0..=n)
        .map(|k| elementary_symmetric(k as i64, c))
        .collect::<Result<_>>()?;
    let eps_dual = series_inverse(&eps, n)?;

    let mut records = Vec::new();
    let mut overall: Option<BigRational> = Some(BigRational::zero());
    for l in 1..=n as u32 {
        for lambda in partitions_of(l) {
            let lambda_bar = lambda.conjugate();
            let polynomial = schur_det(&lambda_bar, &twisted)?;
            let dominant = polynomial.dominant_part();
            let via_eps = schur_det(&lambda_bar, &eps)?;
            let via_dual = schur_det(&lambda, &eps_dual)?;
            if dominant != via_eps || via_eps != via_dual {
                return Err(Error::Invariant(format!(
                    "dominant part of Delta_{lambda_bar} disagrees with the Schur polynomial of eps: {dominant} vs {via_eps} vs {via_dual}"
                )));
            }
            let dominant_positive = dominant.has_positive_coefficients();
            if !dominant_positive {
                return Err(Error::Invariant(format!(
                    "dominant part {dominant} of Delta_{lambda_bar} has a negative coefficient"
                )));
            }
            let found = polynomial_threshold(&polynomial)?;
            overall = match (&overall, &found) {
                (Some(o), Some((r, _))) => Some(o.clone().max(r.clone())),
                _ => None,
            };
            records.push(SchurRecord {
                lambda,
                lambda_bar,
                polynomial,
                dominant,
                dominant_positive,
                threshold: found.as_ref().map(|(r, _)| r.clone()),
                threshold_method: found.map(|(_, m)| m),
            });
        }
    }
    Ok(SchurReport {
        params,
        a,
        records,
        threshold: overall,
    })
}

impl SchurReport {
    /// Plain-text table: partition | dominant part | threshold.
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 3]> = self
            .records
            .iter()
            .map(|r| {
                [
                    r.lambda.to_string(),
                    r.dominant.to_string(),
                    r.threshold
                        .as_ref()
                        .map_or_else(|| "none".to_string(), |t| t.to_string()),
                ]
            })
            .collect();
        let header = ["partition", "dominant", "threshold"];
        let widths: Vec<usize> = (0..3)
            .map(|i| {
                rows.iter()
                    .map(|r| r[i].len())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: [&str; 3]| {
            format!(
                "{:<w0$} | {:<w1$} | {}",
                cells[0],
                cells[1],
                cells[2],
                w0 = widths[0],
                w1 = widths[1]
            )
        };
        let mut out = vec![line(header)];
        for r in &rows {
            out.push(line([&r[0], &r[1], &r[2]]));
        }
        out.push(format!(
            "D = {}",
            self.threshold
                .as_ref()
                .map_or_else(|| "none".to_string(), |t| t.to_string())
        ));
        out.join("\n")
    }
}

/// Random-free helper for tests and acceptance: the sequence `1, c_1, ..., c_k`.
pub fn integer_classes(values: &[i64]) -> Vec<BigInt> {
    std::iter::once(BigInt::from(1))
        .chain(values.iter().map(|&v| BigInt::from(v)))
        .collect()
}

/// `Delta_lambda(c) == Delta_{lambda_bar}(s)` with `s = series_inverse(c)`,
/// over all partitions of weight at most `max_weight`.
pub fn duality_holds(c: &[BigInt], max_weight: u32) -> Result<bool> {
    let s = series_inverse(c, max_weight as usize)?;
    for w in 0..=max_weight {
        for lambda in partitions_of(w) {
            if schur_det(&lambda, c)? != schur_det(&lambda.conjugate(), &s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ceil_to_int;
    use crate::poly::Degree;
    use proptest::prelude::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(2), vec![part(&[2]), part(&[1, 1])]);
        assert_eq!(partitions_of(0), vec![part(&[])]);
        let counts: Vec<usize> = (0..=10).map(|w| partitions_of(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(part(&[2]).conjugate(), part(&[1, 1]));
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        for w in 0..=9 {
            for p in partitions_of(w) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().weight(), w);
            }
        }
    }

    #[test]
    fn small_schur_determinants() {
        // generic symbols c1, c2, c3 as polynomial variables
        let c: Vec<MultidegreePoly> = std::iter::once(MultidegreePoly::one(3))
            .chain((0..3).map(|i| MultidegreePoly::var(3, i)))
            .collect();
        assert_eq!(schur_det(&part(&[1]), &c).unwrap(), c[1]);
        assert_eq!(schur_det(&part(&[1, 1]), &c).unwrap(), &(&c[1] * &c[1]) - &c[2]);
        assert_eq!(schur_det(&part(&[2]), &c).unwrap(), c[2]);
        assert_eq!(schur_det(&part(&[]), &c).unwrap(), MultidegreePoly::one(3));
        let d = schur_det(&part(&[2, 1]), &c).unwrap();
        assert_eq!(d, &(&c[2] * &c[1]) - &c[3]);
    }

    proptest! {
        #[test]
        fn duality(values in proptest::collection::vec(-6i64..6, 8)) {
            prop_assert!(duality_holds(&integer_classes(&values), 8).unwrap());
        }
    }

    #[test]
    fn report_for_surfaces() {
        let params = ModelParams::new(4, 2).unwrap();
        let report = positivity_report(params, 0).unwrap();
        let names: Vec<String> = report.records.iter().map(|r| r.lambda.to_string()).collect();
        assert_eq!(names, vec!["(1)", "(2)", "(1,1)"]);
        assert!(report.threshold.is_some());
        let eps1 = elementary_symmetric(1, 2).unwrap();
        assert_eq!(report.records[0].dominant, eps1);
        // lambda = (1,1): Delta_(2)(s~) = s~_2, dominant eps_2
        assert_eq!(report.records[2].dominant, elementary_symmetric(2, 2).unwrap());
        // lambda = (2): Delta_(1,1)(s~) = s~_1^2 - s~_2, dominant eps_1^2 - eps_2
        let e2 = elementary_symmetric(2, 2).unwrap();
        assert_eq!(report.records[1].dominant, &(&eps1 * &eps1) - &e2);
        assert!(positivity_report(ModelParams::new(5, 3).unwrap(), 0).is_err());
        let table = report.to_table();
        assert!(table.lines().count() == 5 && table.contains("(1,1)"));
    }

    fn grid_ok(p: &MultidegreePoly, r: &BigRational) -> bool {
        let base = ceil_to_int(r);
        let c = p.num_vars();
        let offsets = [0i64, 1, 5];
        (0..3usize.pow(c as u32)).all(|mut code| {
            let pt: Vec<BigInt> = (0..c)
                .map(|_| {
                    let o = offsets[code % 3];
                    code /= 3;
                    &base + o
                })
                .collect();
            p.eval(&pt).unwrap().is_positive()
        })
    }

    #[test]
    fn report_thresholds_are_sound() {
        for (big_n, n) in [(4, 2), (5, 2), (6, 3), (3, 1), (6, 2)] {
            for a in [-2, 0, 3, 6] {
                let report = positivity_report(ModelParams::new(big_n, n).unwrap(), a).unwrap();
                for r in &report.records {
                    let t = r.threshold.as_ref().expect("threshold found");
                    assert!(grid_ok(&r.polynomial, t), "{} N={big_n} a={a}", r.lambda);
                    assert_eq!(r.dominant.total_degree(), Degree::Finite(r.lambda.weight()));
                }
            }
        }
    }

    #[test]
    fn dominant_matches_determinant_of_dominant_parts() {
        for (big_n, n) in [(4, 2), (6, 3), (7, 3), (5, 2), (7, 2)] {
            let params = ModelParams::new(big_n, n).unwrap();
            let twisted: Vec<MultidegreePoly> = segre_cotangent(params, 0)
                .into_iter()
                .enumerate()
                .map(|(k, s)| s.coeff(k).clone())
                .collect();
            let dom: Vec<MultidegreePoly> = twisted.iter().map(|p| p.dominant_part()).collect();
            for l in 1..=n as u32 {
                for lambda in partitions_of(l) {
                    let of_dom = schur_det(&lambda, &dom).unwrap();
                    if !of_dom.is_zero() {
                        assert_eq!(schur_det(&lambda, &twisted).unwrap().dominant_part(), of_dom);
                    }
                }
            }
        }
    }
}
