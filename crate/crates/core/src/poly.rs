//! Sparse integer polynomials in the multidegree variables `d1, ..., dc`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so iteration, text rendering and JSON output are
//! reproducible. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg_err, Error, Result};
use crate::ring::Ring;

/// Exponent vector, ordered by total degree first and lexicographically after
/// (so `d1^2 > d1*d2 > d2^2 > d1 > d2 > 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree; the zero polynomial has degree `MinusInfinity`, which sorts
/// below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultidegreePoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultidegreePoly {
    pub fn zero(num_vars: usize) -> Self {
        MultidegreePoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    pub fn constant(num_vars: usize, value: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial(vec![0; num_vars]), value.into());
        p
    }

    /// The variable `d_{index+1}` (zero based index).
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index {index} out of range");
        let mut exps = vec![0; num_vars];
        exps[index] = 1;
        Self::monomial(exps, BigInt::one())
    }

    pub fn monomial(exps: Vec<u32>, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Monomial(exps), coeff.into());
        p
    }

    pub fn from_terms<I, C>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(arg_err!(
                    "exponent vector {exps:?} has length {}, expected {num_vars}",
                    exps.len()
                ));
            }
            p.add_term(Monomial(exps), c.into());
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.num_vars])
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(arg_err!(
                "polynomials in {} and {} variables cannot be combined",
                self.num_vars,
                other.num_vars
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.num_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.num_vars);
        }
        MultidegreePoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::MinusInfinity, |m| Degree::Finite(m.degree()))
    }

    /// Sum of the terms of maximal total degree.
    pub fn dominant_part(&self) -> Self {
        match self.total_degree() {
            Degree::MinusInfinity => self.clone(),
            Degree::Finite(d) => self.homogeneous_part(d),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        MultidegreePoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e <= 1))
    }

    /// True when every coefficient is non-negative and at least one is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    /// Rewrite a multilinear symmetric polynomial as `sum_j coeff_j * eps_j`.
    /// Returned in decreasing `j`, zero coefficients omitted.
    pub fn express_in_elementary(&self) -> Result<Vec<(usize, BigInt)>> {
        let c = self.num_vars;
        let mut by_degree: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (m, coeff) in &self.terms {
            if let Some(e) = m.0.iter().find(|&&e| e > 1) {
                return Err(Error::Domain(format!(
                    "monomial {} has exponent {e} > 1; only multilinear input is supported",
                    render_monomial(m)
                )));
            }
            let j = m.degree() as usize;
            match by_degree.get(&j) {
                None => {
                    by_degree.insert(j, coeff.clone());
                }
                Some(prev) if prev != coeff => {
                    return Err(Error::Domain(format!(
                        "monomial {} has coefficient {coeff} but another degree-{j} monomial has {prev}; input is not symmetric",
                        render_monomial(m)
                    )));
                }
                Some(_) => {}
            }
        }
        for (&j, coeff) in &by_degree {
            let expected = binomial_usize(c, j);
            let present = self.terms.keys().filter(|m| m.degree() as usize == j).count();
            if present != expected {
                let missing = (0..c)
                    .combinations(j)
                    .map(|idx| {
                        let mut e = vec![0u32; c];
                        idx.iter().for_each(|&i| e[i] = 1);
                        Monomial(e)
                    })
                    .find(|m| !self.terms.contains_key(m))
                    .expect("a missing monomial exists");
                return Err(Error::Domain(format!(
                    "monomial {} is missing (expected coefficient {coeff}); input is not symmetric",
                    render_monomial(&missing)
                )));
            }
        }
        Ok(by_degree.into_iter().rev().collect())
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.num_vars {
            return Err(arg_err!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.num_vars
            ));
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_i64(&self, point: &[i64]) -> Result<BigInt> {
        let p: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        self.eval(&p)
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.num_vars {
            return Err(arg_err!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.num_vars
            ));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute `d_i -> images[i]`, all images sharing one variable count.
    pub fn substitute(&self, images: &[MultidegreePoly]) -> Result<MultidegreePoly> {
        if images.len() != self.num_vars {
            return Err(arg_err!(
                "{} images supplied for {} variables",
                images.len(),
                self.num_vars
            ));
        }
        let target = images.first().map_or(0, |p| p.num_vars);
        if images.iter().any(|p| p.num_vars != target) {
            return Err(arg_err!("substitution images disagree on variable count"));
        }
        let mut powers: Vec<Vec<MultidegreePoly>> = images
            .iter()
            .map(|p| vec![MultidegreePoly::one(target), p.clone()])
            .collect();
        let mut acc = MultidegreePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultidegreePoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                if e > 0 {
                    t = &t * &table[e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Exact multivariate division by leading terms.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if self.num_vars != divisor.num_vars {
            return None;
        }
        let (lead_m, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.num_vars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let qm = m.checked_div(lead_m)?;
            if !(c % lead_c).is_zero() {
                return None;
            }
            let qc = c / lead_c;
            let step = MultidegreePoly::monomial(qm.0, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }
}

/// `eps_i(d_1, ..., d_c)`; zero when `i > c`.
pub fn elementary_symmetric(i: i64, c: usize) -> Result<MultidegreePoly> {
    if i < 0 {
        return Err(arg_err!("elementary symmetric index must be >= 0, got {i}"));
    }
    if c == 0 {
        return Err(arg_err!("need at least one variable"));
    }
    let i = i as usize;
    let mut p = MultidegreePoly::zero(c);
    if i > c {
        return Ok(p);
    }
    for idx in (0..c).combinations(i) {
        let mut e = vec![0u32; c];
        idx.iter().for_each(|&k| e[k] = 1);
        p.add_term(Monomial(e), BigInt::one());
    }
    Ok(p)
}

/// All elementary symmetric functions `e_0, ..., e_len` of the given ring
/// elements. `sample` supplies zero/one when `values` is empty.
pub fn elementary_symmetric_of<R: Ring>(values: &[R], sample: &R) -> Vec<R> {
    let mut e = vec![sample.one_like()];
    for x in values {
        e.push(sample.zero_like());
        for k in (1..e.len()).rev() {
            e[k] = e[k].plus(&e[k - 1].times(x));
        }
    }
    e
}

/// Solve `(1 + c1 t + c2 t^2 + ...)(1 - s1 t + s2 t^2 - ...) = 1` up to `t^order`.
///
/// `c_seq[0]` is read as 1 whatever it holds; entries past the end are 0. The
/// result is `[s_0 = 1, s_1, ..., s_order]`, indexed like the input, so the map
/// is an involution.
pub fn series_inverse<R: Ring>(c_seq: &[R], order: usize) -> Result<Vec<R>> {
    let sample = c_seq
        .first()
        .ok_or_else(|| arg_err!("series_inverse needs at least the c_0 slot"))?;
    let c = |i: usize| -> R {
        if i < c_seq.len() {
            c_seq[i].clone()
        } else {
            sample.zero_like()
        }
    };
    // sigma_k = (-1)^k s_k satisfies sum_{i=0}^k c_i sigma_{k-i} = 0 for k >= 1.
    let mut sigma = vec![sample.one_like()];
    for k in 1..=order {
        let mut acc = sample.zero_like();
        for i in 1..=k {
            acc = acc.plus(&c(i).times(&sigma[k - i]));
        }
        sigma.push(acc.negated());
    }
    Ok(sigma
        .into_iter()
        .enumerate()
        .map(|(k, x)| if k % 2 == 0 { x } else { x.negated() })
        .collect())
}

pub(crate) fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Binomial coefficient over the integers; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn render_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("d{}", i + 1)
            } else {
                format!("d{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for MultidegreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", render_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", render_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Vec<u32>,
}

impl Serialize for MultidegreePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m.0.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl MultidegreePoly {
    /// Parse the JSON term list; the variable count must be given because the
    /// zero polynomial serializes to `[]`.
    pub fn from_json(value: &serde_json::Value, num_vars: usize) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())
            .map_err(|e| arg_err!("bad polynomial json: {e}"))?;
        let parsed = terms
            .into_iter()
            .map(|t| {
                t.coeff
                    .parse::<BigInt>()
                    .map(|c| (t.exps, c))
                    .map_err(|e| arg_err!("bad coefficient {:?}: {e}", t.coeff))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(num_vars, parsed)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live in different variable counts; use the
        /// `try_*` methods to get an error instead.
        impl $trait<&MultidegreePoly> for &MultidegreePoly {
            type Output = MultidegreePoly;
            fn $method(self, rhs: &MultidegreePoly) -> MultidegreePoly {
                self.$checked(rhs).expect("variable count mismatch")
            }
        }
        impl $trait<MultidegreePoly> for MultidegreePoly {
            type Output = MultidegreePoly;
            fn $method(self, rhs: MultidegreePoly) -> MultidegreePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultidegreePoly {
    type Output = MultidegreePoly;
    fn neg(self) -> MultidegreePoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for MultidegreePoly {
    type Output = MultidegreePoly;
    fn neg(self) -> MultidegreePoly {
        -&self
    }
}

impl Ring for MultidegreePoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.num_vars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.num_vars)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        MultidegreePoly::div_exact(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(c: usize, i: usize) -> MultidegreePoly {
        MultidegreePoly::var(c, i)
    }

    fn k(c: usize, v: i64) -> MultidegreePoly {
        MultidegreePoly::constant(c, v)
    }

    #[test]
    fn ring_identities() {
        let (d1, d2) = (d(2, 0), d(2, 1));
        assert_eq!(&(&d1 + &d2) * &(&d1 - &d2), &(&d1 * &d1) - &(&d2 * &d2));
        assert_eq!(&d1 + &MultidegreePoly::zero(2), d1);
        let m = &d1 * &d2;
        assert_eq!(&m * &m, MultidegreePoly::monomial(vec![2, 2], 1));
        assert!((&d1 - &d1).is_zero());
    }

    #[test]
    fn mismatched_variable_counts_are_rejected() {
        let err = d(2, 0).arith(&d(3, 0), ArithOp::Mul).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
        assert!(d(2, 0).eval_i64(&[1, 2, 3]).is_err());
    }

    #[test]
    fn degree_and_dominant_part() {
        let (d1, d2) = (d(2, 0), d(2, 1));
        let p = &(&(&d1 * &d1) * &d2) + &(&d1 * &k(2, 3));
        assert_eq!(p.total_degree(), Degree::Finite(3));
        assert_eq!(p.dominant_part(), MultidegreePoly::monomial(vec![2, 1], 1));
        let z = MultidegreePoly::zero(2);
        assert_eq!(z.total_degree(), Degree::MinusInfinity);
        assert!(z.dominant_part().is_zero());
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        let q = &(&d1 + &d2) + &k(2, 7);
        assert_eq!(q.total_degree(), Degree::Finite(1));
        assert_eq!(q.dominant_part(), &d1 + &d2);
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elementary_symmetric(1, 2).unwrap(), &d(2, 0) + &d(2, 1));
        assert!(elementary_symmetric(3, 2).unwrap().is_zero());
        assert_eq!(elementary_symmetric(0, 3).unwrap(), MultidegreePoly::one(3));
        let e2 = elementary_symmetric(2, 3).unwrap();
        assert_eq!(e2.to_string(), "d1*d2 + d1*d3 + d2*d3");
        assert!(elementary_symmetric(-1, 2).is_err());
    }

    #[test]
    fn express_in_elementary_examples() {
        let (d1, d2) = (d(2, 0), d(2, 1));
        let p = &(&(&d1 * &d2) - &(&(&d1 + &d2) * &k(2, 5))) + &k(2, 3);
        assert_eq!(
            p.express_in_elementary().unwrap(),
            vec![(2, 1.into()), (1, (-5).into()), (0, 3.into())]
        );
        let e2 = elementary_symmetric(2, 4).unwrap();
        assert_eq!(e2.express_in_elementary().unwrap(), vec![(2, 1.into())]);
    }

    #[test]
    fn express_in_elementary_rejects_bad_input() {
        let (d1, d2) = (d(2, 0), d(2, 1));
        let err = (&d1 * &d1).express_in_elementary().unwrap_err();
        assert!(matches!(&err, Error::Domain(m) if m.contains("d1^2")));
        let err = (&d1 + &(&d2 * &k(2, 2))).express_in_elementary().unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let err = d1.express_in_elementary().unwrap_err();
        assert!(matches!(&err, Error::Domain(m) if m.contains("d2")));
    }

    #[test]
    fn evaluation() {
        let d1 = d(1, 0);
        let p = &(&(&d1 * &d1) - &(&d1 * &k(1, 34))) + &k(1, 15);
        assert_eq!(p.eval_i64(&[34]).unwrap(), BigInt::from(15));
        assert_eq!(p.eval_i64(&[0]).unwrap(), p.constant_term());
        let e2 = elementary_symmetric(2, 2).unwrap();
        assert_eq!(e2.eval_i64(&[34, 34]).unwrap(), BigInt::from(1156));
    }

    #[test]
    fn series_inverse_examples() {
        let c1 = d(2, 0);
        let c2 = d(2, 1);
        let one = MultidegreePoly::one(2);
        let s = series_inverse(&[one.clone(), c1.clone()], 1).unwrap();
        assert_eq!(s[1], c1);
        let s = series_inverse(&[one.clone(), c1.clone(), c2.clone()], 2).unwrap();
        assert_eq!(s[2], &(&c1 * &c1) - &c2);
        let zeros = vec![one.clone(), MultidegreePoly::zero(2), MultidegreePoly::zero(2)];
        let s = series_inverse(&zeros, 4).unwrap();
        assert!(s[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rendering_and_json() {
        let (d1, d2) = (d(2, 0), d(2, 1));
        let p = &(&(&(&d1 * &d1) * &d2) - &(&d1 * &k(2, 5))) + &k(2, 3);
        assert_eq!(p.to_string(), "d1^2*d2 - 5*d1 + 3");
        assert_eq!((-&d1).to_string(), "-d1");
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"coeff": "1", "exps": [2, 1]},
                {"coeff": "-5", "exps": [1, 0]},
                {"coeff": "3", "exps": [0, 0]}
            ])
        );
        assert_eq!(MultidegreePoly::from_json(&v, 2).unwrap(), p);
    }

    #[test]
    fn exact_division() {
        let (d1, d2) = (d(2, 0), d(2, 1));
        let a = &(&d1 + &d2) + &k(2, 3);
        let b = &(&d1 * &d1) - &(&d2 * &k(2, 7));
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&d1), None);
    }

    fn arb_poly(c: usize) -> impl Strategy<Value = MultidegreePoly> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, c), -9i64..9), 0..5)
            .prop_map(move |ts| MultidegreePoly::from_terms(c, ts).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(3), q in arb_poly(3), r in arb_poly(3)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn dominant_part_is_multiplicative(p in arb_poly(3), q in arb_poly(3)) {
            let rhs = &p.dominant_part() * &q.dominant_part();
            if !rhs.is_zero() {
                prop_assert_eq!((&p * &q).dominant_part(), rhs);
            }
        }

        #[test]
        fn elementary_round_trip(coeffs in proptest::collection::vec(-50i64..50, 5)) {
            let c = 4;
            let mut p = MultidegreePoly::zero(c);
            for (j, &a) in coeffs.iter().enumerate() {
                p = &p + &elementary_symmetric(j as i64, c).unwrap().scale(&BigInt::from(a));
            }
            let mut back = MultidegreePoly::zero(c);
            for (j, a) in p.express_in_elementary().unwrap() {
                back = &back + &elementary_symmetric(j as i64, c).unwrap().scale(&a);
            }
            prop_assert_eq!(back, p);
        }

        #[test]
        fn series_inverse_is_involutive(cs in proptest::collection::vec(-30i64..30, 1..7)) {
            let mut seq: Vec<BigInt> = vec![BigInt::one()];
            seq.extend(cs.iter().map(|&x| BigInt::from(x)));
            let order = cs.len();
            let s = series_inverse(&seq, order).unwrap();
            let back = series_inverse(&s, order).unwrap();
            prop_assert_eq!(back, seq);
        }
    }
}
