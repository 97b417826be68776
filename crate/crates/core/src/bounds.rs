//! Effective degree thresholds.
//!
//! All arithmetic is exact over `Q`. A rational threshold `r` is turned into
//! an integer degree by taking `ceil(r)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chow::ModelParams;
use crate::error::{arg_err, Error, Result};
use crate::jet::kappa_degree_search;
use crate::poly::{binomial, MultidegreePoly};

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `1 + max |a_i|` for the monic polynomial `x^k + a_{k-1} x^{k-1} + ... + a_0`.
pub fn monic_root_bound(coeffs: &[BigRational]) -> Result<BigRational> {
    if coeffs.is_empty() {
        return Err(arg_err!("monic root bound needs degree >= 1"));
    }
    let max = coeffs
        .iter()
        .map(|a| a.abs())
        .max()
        .expect("non-empty");
    Ok(BigRational::one() + max)
}

/// Root bound for `sum_i coeffs[i] x^i` with a positive leading coefficient,
/// after dividing by it. `None` when the leading coefficient is not positive;
/// `Some(0)` for a positive constant.
pub fn positive_root_bound(coeffs: &[BigRational]) -> Option<BigRational> {
    let top = coeffs.iter().rposition(|a| !a.is_zero())?;
    let lead = &coeffs[top];
    if !lead.is_positive() {
        return None;
    }
    if top == 0 {
        return Some(BigRational::zero());
    }
    let normalized: Vec<BigRational> = coeffs[..top].iter().map(|a| a / lead).collect();
    Some(monic_root_bound(&normalized).expect("degree >= 1"))
}

/// `D_a^{N,n,j}`, the coefficient of `eps_j` in the normalized `kappa = 1`
/// Morse difference.
#[allow(non_snake_case)]
pub fn D_coeff(big_n: usize, n: usize, a: i64, j: usize) -> Result<BigInt> {
    if n == 0 || n >= big_n {
        return Err(arg_err!("need 1 <= n < N, got n = {n}, N = {big_n}"));
    }
    if n > big_n - n {
        return Err(Error::Precondition(format!(
            "closed form needs n <= c, got n = {n}, c = {}",
            big_n - n
        )));
    }
    if j > n {
        return Err(arg_err!("index j = {j} exceeds n = {n}"));
    }
    let (big_n, n, j) = (big_n as i64, n as i64, j as i64);
    let mut acc = BigInt::zero();
    for i in 0..=n - j {
        // 2^{i-1} (2 - i (2 + a)), kept integral at i = 0
        let mid = if i == 0 {
            BigInt::one()
        } else {
            BigInt::from(2).pow(i as u32) - BigInt::from(i * (2 + a)) * BigInt::from(2).pow(i as u32 - 1)
        };
        let term = mid * binomial(2 * n - 1, i) * binomial(big_n + n - i - j, big_n);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(if (n - j) % 2 == 1 { -acc } else { acc })
}

/// `[D_a^{N,n,0}, ..., D_a^{N,n,n}]`.
#[allow(non_snake_case)]
pub fn D_coeffs(big_n: usize, n: usize, a: i64) -> Result<Vec<BigInt>> {
    (0..=n).map(|j| D_coeff(big_n, n, a, j)).collect()
}

/// Uniform threshold for `P = sum_j a_j eps_j(x_1..x_c)` with `a_k = 1`:
/// `1 + max_{i<k} |a_i binom(c,i) / binom(c,k)|`.
pub fn symmetric_positivity_threshold(
    coeffs: &[(usize, BigRational)],
    c: usize,
    k: usize,
) -> Result<BigRational> {
    if k > c {
        return Err(arg_err!("leading index k = {k} exceeds c = {c}"));
    }
    let mut by_index: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (j, a) in coeffs {
        if *j > k {
            return Err(arg_err!("coefficient index {j} exceeds leading index {k}"));
        }
        *by_index.entry(*j).or_insert_with(BigRational::zero) += a;
    }
    if by_index.get(&k) != Some(&BigRational::one()) {
        return Err(arg_err!("leading coefficient a_{k} must be 1; divide first"));
    }
    let bk = rat(binomial(c as i64, k as i64));
    let max = by_index
        .iter()
        .filter(|(&i, _)| i < k)
        .map(|(&i, a)| (a * rat(binomial(c as i64, i as i64)) / &bk).abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    Ok(BigRational::one() + max)
}

/// Threshold `r` with `P(x) > 0` whenever every `x_i >= r`, from the Taylor
/// expansion `P(r + y) = sum_alpha q_alpha(r) y^alpha`: each nonzero
/// `q_alpha` must have a positive leading coefficient, and `r` is the largest
/// of their root bounds (at least 1). `None` when some `q_alpha` is
/// eventually negative, or when `P` has no positive part at all.
pub fn taylor_positivity_threshold(p: &MultidegreePoly) -> Result<Option<BigRational>> {
    let c = p.num_vars();
    if p.is_zero() {
        return Ok(None);
    }
    // variable 0 is r, variables 1..=c are y_1..y_c
    let images: Vec<MultidegreePoly> = (0..c)
        .map(|i| &MultidegreePoly::var(c + 1, 0) + &MultidegreePoly::var(c + 1, i + 1))
        .collect();
    let shifted = p.substitute(&images)?;
    let mut groups: BTreeMap<Vec<u32>, Vec<BigRational>> = BTreeMap::new();
    for (m, coeff) in shifted.terms() {
        let e = m.exps();
        let q = groups.entry(e[1..].to_vec()).or_default();
        let deg = e[0] as usize;
        if q.len() <= deg {
            q.resize(deg + 1, BigRational::zero());
        }
        q[deg] += rat(coeff.clone());
    }
    let zero_key = vec![0u32; c];
    if !groups.contains_key(&zero_key) {
        return Ok(None);
    }
    let mut best = BigRational::one();
    for q in groups.values() {
        match positive_root_bound(q) {
            Some(b) => best = best.max(b),
            None => return Ok(None),
        }
    }
    Ok(Some(best))
}

/// Smallest integer `>= r`.
pub fn ceil_to_int(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// `2 (N + 1 + 3a) / (N - 3)`, the surface bound.
pub fn gamma_dim2(big_n: usize, a: i64) -> Result<BigRational> {
    if big_n < 4 {
        return Err(Error::Domain(format!(
            "surface bound needs N >= 4 so that D^(N,2,0) >= 0, got N = {big_n}"
        )));
    }
    let n = big_n as i64;
    Ok(BigRational::new(
        BigInt::from(2 * (n + 1 + 3 * a)),
        BigInt::from(n - 3),
    ))
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(2^{n-1} (n(2+a) - 2) n^2/(N+1) binom(2n-1,n) + 1) binom(n, n/2)
///  (N+n)! (N-2n)! / (N! (N-n)!)`.
pub fn gamma_rough(big_n: usize, n: usize, a: i64) -> Result<BigRational> {
    if n == 0 {
        return Err(arg_err!("n must be >= 1"));
    }
    if big_n < 2 * n {
        return Err(Error::Domain(format!(
            "rough bound needs N >= 2n, got N = {big_n}, n = {n}"
        )));
    }
    let (nn, n) = (big_n as i64, n as i64);
    let first = rat(BigInt::from(2).pow(n as u32 - 1) * BigInt::from(n * (2 + a) - 2) * n * n)
        / rat(nn + 1)
        * rat(binomial(2 * n - 1, n))
        + BigRational::one();
    let ratio = BigRational::new(
        factorial(nn + n) * factorial(nn - 2 * n),
        factorial(nn) * factorial(nn - n),
    );
    Ok(first * rat(binomial(n, n / 2)) * ratio)
}

/// The large-`N` value quoted for `Gamma_{N,n,N+a}`:
/// `2^{n-1} n^3 binom(2n-1,n) binom(n, n/2)`.
pub fn gamma_rough_quoted_limit(n: usize) -> BigInt {
    let n = n as i64;
    BigInt::from(2).pow(n as u32 - 1) * BigInt::from(n * n * n) * binomial(2 * n - 1, n) * binomial(n, n / 2)
}

/// The actual limit of `gamma_rough(N, n, N + a)` as `N -> infinity`:
/// `(2^{n-1} n^3 binom(2n-1,n) + 1) binom(n, n/2)`.
pub fn gamma_rough_limit(n: usize) -> BigInt {
    let n = n as i64;
    (BigInt::from(2).pow(n as u32 - 1) * BigInt::from(n * n * n) * binomial(2 * n - 1, n) + 1)
        * binomial(n, n / 2)
}

/// `Gamma_{N,n,a+N}`: the surface bound when `n = 2`, the rough bound otherwise.
pub fn delta_for_main_theorem(big_n: usize, n: usize, a: i64) -> Result<BigRational> {
    let shifted = a + big_n as i64;
    if n == 2 {
        gamma_dim2(big_n, shifted)
    } else {
        gamma_rough(big_n, n, shifted)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMethod {
    Rough,
    Dim2,
    Scan,
}

impl std::str::FromStr for BoundMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rough" => Ok(BoundMethod::Rough),
            "dim2" => Ok(BoundMethod::Dim2),
            "scan" => Ok(BoundMethod::Scan),
            _ => Err(arg_err!("unknown method {s:?}; expected rough, dim2 or scan")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    #[serde(rename = "N")]
    pub ambient: usize,
    pub n: usize,
    pub a: i64,
    /// `D_a^{N,n,j}` for `j = 0..n`; empty when `n > c`.
    #[serde(serialize_with = "ser_decimals")]
    pub coefficients: Vec<BigInt>,
    /// `None` when a scan finds no positive frontier.
    #[serde(serialize_with = "ser_opt_rational")]
    pub gamma: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub degree_threshold: Option<BigInt>,
    pub method: BoundMethod,
}

fn ser_decimals<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_opt_decimal<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Largest uniform degree tried by the scan method.
pub const SCAN_LIMIT: i64 = 10_000;

impl BoundReport {
    pub fn compute(big_n: usize, n: usize, a: i64, method: BoundMethod) -> Result<Self> {
        let params = ModelParams::new(big_n, n)?;
        let coefficients = if n <= params.codim() {
            D_coeffs(big_n, n, a)?
        } else {
            Vec::new()
        };
        let gamma = match method {
            BoundMethod::Dim2 => {
                if n != 2 {
                    return Err(arg_err!("method dim2 needs n = 2, got n = {n}"));
                }
                Some(gamma_dim2(big_n, a)?)
            }
            BoundMethod::Rough => Some(gamma_rough(big_n, n, a)?),
            BoundMethod::Scan => {
                if a < 0 {
                    return Err(arg_err!("a must be >= 0, got {a}"));
                }
                kappa_degree_search(params, a, SCAN_LIMIT)?.map(rat)
            }
        };
        Ok(BoundReport {
            ambient: big_n,
            n,
            a,
            coefficients,
            degree_threshold: gamma.as_ref().map(ceil_to_int),
            gamma,
            method,
        })
    }
}
