//! The Chow ring of a complete intersection `X` in `P^N`, truncated at `h^n`.
//!
//! A class is stored as its coefficients on `1, h, ..., h^n`, each a
//! polynomial in the multidegree `(d_1, ..., d_c)`. Integration pairs the top
//! coefficient with the degree `d_1 * ... * d_c` of `X`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{arg_err, Result};
use crate::poly::{binomial, elementary_symmetric, elementary_symmetric_of, MultidegreePoly};

/// Numerical type of the complete intersection: ambient dimension `N`,
/// dimension `n`, codimension `c = N - n`, `kappa = ceil(n / c)` and `b` with
/// `n = (kappa - 1) c + b`, `0 < b <= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModelParams {
    #[serde(rename = "N")]
    ambient: usize,
    #[serde(rename = "n")]
    dim: usize,
    #[serde(rename = "c")]
    codim: usize,
    kappa: usize,
    b: usize,
}

impl ModelParams {
    pub fn new(ambient: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(arg_err!("dimension n must be >= 1"));
        }
        if dim >= ambient {
            return Err(arg_err!(
                "dimension n = {dim} must be smaller than the ambient dimension N = {ambient}"
            ));
        }
        let codim = ambient - dim;
        let kappa = dim.div_ceil(codim);
        let b = dim - (kappa - 1) * codim;
        debug_assert!(b > 0 && b <= codim);
        Ok(ModelParams {
            ambient,
            dim,
            codim,
            kappa,
            b,
        })
    }

    pub fn from_dim_codim(dim: usize, codim: usize) -> Result<Self> {
        Self::new(dim + codim, dim)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn codim(&self) -> usize {
        self.codim
    }
    pub fn kappa(&self) -> usize {
        self.kappa
    }
    pub fn b(&self) -> usize {
        self.b
    }

    /// Dimension of the `k`-th jet tower level, `n + k (n - 1)`.
    pub fn jet_dim(&self, k: usize) -> usize {
        self.dim + k * (self.dim - 1)
    }

    /// Degree of `X`, the product of the `d_i`.
    pub fn bezout(&self) -> MultidegreePoly {
        elementary_symmetric(self.codim as i64, self.codim).expect("valid index")
    }

    pub(crate) fn d(&self, i: usize) -> MultidegreePoly {
        MultidegreePoly::var(self.codim, i)
    }

    pub(crate) fn constant(&self, v: impl Into<BigInt>) -> MultidegreePoly {
        MultidegreePoly::constant(self.codim, v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    params: ModelParams,
    coeffs: Vec<MultidegreePoly>,
}

impl ChowClass {
    pub fn zero(params: ModelParams) -> Self {
        ChowClass {
            params,
            coeffs: vec![MultidegreePoly::zero(params.codim); params.dim + 1],
        }
    }

    pub fn one(params: ModelParams) -> Self {
        Self::pure(params, 0, MultidegreePoly::one(params.codim))
    }

    /// `coeff * h^degree`; zero when `degree > n`.
    pub fn pure(params: ModelParams, degree: usize, coeff: MultidegreePoly) -> Self {
        let mut x = Self::zero(params);
        if degree <= params.dim {
            x.coeffs[degree] = coeff;
        }
        x
    }

    pub fn h_power(params: ModelParams, degree: usize) -> Self {
        Self::pure(params, degree, MultidegreePoly::one(params.codim))
    }

    /// Coefficients beyond `h^n` are discarded.
    pub fn from_coeffs(params: ModelParams, coeffs: Vec<MultidegreePoly>) -> Result<Self> {
        if let Some(p) = coeffs.iter().find(|p| p.num_vars() != params.codim) {
            return Err(arg_err!(
                "coefficient in {} variables, expected {}",
                p.num_vars(),
                params.codim
            ));
        }
        let mut x = Self::zero(params);
        for (j, p) in coeffs.into_iter().enumerate().take(params.dim + 1) {
            x.coeffs[j] = p;
        }
        Ok(x)
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn coeffs(&self) -> &[MultidegreePoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &MultidegreePoly {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    /// `Some(j)` when the class is a multiple of `h^j` (zero counts as any).
    pub fn pure_degree(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.coeffs.len())
            .filter(|&j| !self.coeffs[j].is_zero())
            .collect();
        match nz.as_slice() {
            [] => None,
            [j] => Some(*j),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(arg_err!(
                "classes live on different varieties: {:?} vs {:?}",
                self.params,
                other.params
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ChowClass {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ChowClass {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &MultidegreePoly) -> Self {
        ChowClass {
            params: self.params,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Truncated product: `(x y)_j = sum_{p+q=j} x_p y_q` for `j <= n`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.params.dim;
        let mut out = Self::zero(self.params);
        for p in 0..=n {
            if self.coeffs[p].is_zero() {
                continue;
            }
            for q in 0..=n - p {
                if other.coeffs[q].is_zero() {
                    continue;
                }
                out.coeffs[p + q] = &out.coeffs[p + q] + &(&self.coeffs[p] * &other.coeffs[q]);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.params);
        for _ in 0..e {
            acc = acc.mul(self).expect("same params");
        }
        acc
    }

    /// Degree of the zero-cycle part: `x_n * d_1 ... d_c`.
    pub fn integrate(&self) -> MultidegreePoly {
        &self.coeffs[self.params.dim] * &self.params.bezout()
    }
}

/// `s_0, ..., s_n` of `Omega_X(m)` from the product formula
/// `(1 + (1-m) h)^{-(N+1)} (1 - m h) prod_i (1 + (d_i - m) h)`.
pub fn segre_cotangent(params: ModelParams, twist: i64) -> Vec<ChowClass> {
    let n = params.dim;
    let ratio = BigInt::from(-(1 - twist));
    let geometric = ChowClass::from_coeffs(
        params,
        (0..=n)
            .map(|k| params.constant(num_traits::pow(ratio.clone(), k)))
            .collect(),
    )
    .expect("well formed");
    let mut total = geometric.pow(params.ambient as u32 + 1);
    let linear = |a: MultidegreePoly| {
        ChowClass::from_coeffs(params, vec![MultidegreePoly::one(params.codim), a])
            .expect("well formed")
    };
    total = total.mul(&linear(params.constant(-twist))).expect("same params");
    for i in 0..params.codim {
        let factor = linear(&params.d(i) - &params.constant(twist));
        total = total.mul(&factor).expect("same params");
    }
    (0..=n)
        .map(|j| ChowClass::pure(params, j, total.coeffs[j].clone()))
        .collect()
}

/// `h^j` coefficient of `s_j(Omega_X)` from the closed form
/// `sum_{k=0}^{j} binom(N+k, N) (-1)^k eps_{j-k}`.
pub fn segre_closed_form(params: ModelParams, j: usize) -> Result<MultidegreePoly> {
    if j > params.dim {
        return Err(arg_err!("Segre index {j} exceeds dim X = {}", params.dim));
    }
    let big_n = params.ambient as i64;
    let mut acc = MultidegreePoly::zero(params.codim);
    for k in 0..=j {
        let mut coeff = binomial(big_n + k as i64, big_n);
        if k % 2 == 1 {
            coeff = -coeff;
        }
        let eps = elementary_symmetric((j - k) as i64, params.codim)?;
        acc = &acc + &eps.scale(&coeff);
    }
    Ok(acc)
}

/// Segre classes of `E (x) L` for a rank `rank` bundle `E` with Segre classes
/// `s_seq` and a line bundle with first Chern class `l_class`:
/// `s_i(E (x) L) = sum_j binom(r - 1 + i, i - j) s_j(E) c_1(L)^{i-j}`.
pub fn twist_segre(s_seq: &[ChowClass], rank: i64, l_class: &ChowClass) -> Result<Vec<ChowClass>> {
    let first = s_seq
        .first()
        .ok_or_else(|| arg_err!("empty Segre sequence"))?;
    let params = first.params;
    if *first != ChowClass::one(params) {
        return Err(arg_err!("s_0 must be 1"));
    }
    if s_seq.iter().any(|s| s.params != params) || l_class.params != params {
        return Err(arg_err!("classes live on different varieties"));
    }
    if !l_class.is_zero() && l_class.pure_degree() != Some(1) {
        return Err(arg_err!("the line bundle class must be a pure multiple of h"));
    }
    let powers: Vec<ChowClass> = (0..s_seq.len()).map(|e| l_class.pow(e as u32)).collect();
    let mut out = Vec::with_capacity(s_seq.len());
    for i in 0..s_seq.len() {
        let mut acc = ChowClass::zero(params);
        for (j, s_j) in s_seq.iter().enumerate().take(i + 1) {
            let b = binomial(rank - 1 + i as i64, (i - j) as i64);
            if b.is_zero() {
                continue;
            }
            let term = s_j.mul(&powers[i - j])?.scale(&params.constant(b));
            acc = acc.add(&term)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Chern classes `c_0, ..., c_n` of `sum_i O_X(d_i + shifts_i)`.
pub fn chern_line_sum(params: ModelParams, shifts: &[i64]) -> Result<Vec<ChowClass>> {
    if shifts.len() != params.codim {
        return Err(arg_err!(
            "{} shifts supplied, codimension is {}",
            shifts.len(),
            params.codim
        ));
    }
    let roots: Vec<MultidegreePoly> = shifts
        .iter()
        .enumerate()
        .map(|(i, &s)| &params.d(i) + &params.constant(s))
        .collect();
    let eps = elementary_symmetric_of(&roots, &MultidegreePoly::one(params.codim));
    Ok((0..=params.dim)
        .map(|l| {
            let coeff = eps
                .get(l)
                .cloned()
                .unwrap_or_else(|| MultidegreePoly::zero(params.codim));
            ChowClass::pure(params, l, coeff)
        })
        .collect())
}

/// JSON shape of a Segre table.
#[derive(Debug, Clone, Serialize)]
pub struct SegreTable {
    #[serde(rename = "N")]
    pub ambient: usize,
    pub n: usize,
    pub c: usize,
    pub m: i64,
    pub classes: Vec<(usize, MultidegreePoly)>,
}

impl SegreTable {
    pub fn compute(params: ModelParams, twist: i64) -> Self {
        let classes = segre_cotangent(params, twist)
            .into_iter()
            .enumerate()
            .map(|(j, s)| (j, s.coeffs[j].clone()))
            .collect();
        SegreTable {
            ambient: params.ambient,
            n: params.dim,
            c: params.codim,
            m: twist,
            classes,
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Degree;

    fn p(n_amb: usize, n: usize) -> ModelParams {
        ModelParams::new(n_amb, n).unwrap()
    }

    #[test]
    fn params_validation() {
        let q = p(7, 5);
        assert_eq!((q.codim(), q.kappa(), q.b()), (2, 3, 1));
        let q = p(4, 2);
        assert_eq!((q.codim(), q.kappa(), q.b()), (2, 1, 2));
        assert!(ModelParams::new(4, 4).is_err());
        assert!(ModelParams::new(4, 0).is_err());
        assert_eq!(q.jet_dim(2), 4);
    }

    #[test]
    fn truncated_multiplication() {
        let q = p(4, 2);
        let h = ChowClass::h_power(q, 1);
        assert!(h.mul(&ChowClass::h_power(q, 2)).unwrap().is_zero());
        let x = ChowClass::pure(q, 1, q.d(0));
        assert_eq!(ChowClass::one(q).mul(&x).unwrap(), x);

        let q1 = p(3, 1);
        let a = ChowClass::from_coeffs(q1, vec![MultidegreePoly::one(2), q1.d(0)]).unwrap();
        let b = ChowClass::from_coeffs(q1, vec![MultidegreePoly::one(2), q1.d(1)]).unwrap();
        let expected =
            ChowClass::from_coeffs(q1, vec![MultidegreePoly::one(2), &q1.d(0) + &q1.d(1)]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
        assert!(a.mul(&ChowClass::one(q)).is_err());
    }

    #[test]
    fn integration() {
        let q = p(4, 2);
        assert_eq!(ChowClass::h_power(q, 2).integrate(), q.bezout());
        assert!(ChowClass::h_power(q, 1).integrate().is_zero());
        let e1 = &q.d(0) + &q.d(1);
        let top = ChowClass::pure(q, 2, e1.clone());
        assert_eq!(top.integrate(), &e1 * &(&q.d(0) * &q.d(1)));
        assert_eq!(top.integrate().to_string(), "d1^2*d2 + d1*d2^2");
    }

    #[test]
    fn first_segre_class() {
        for (n_amb, n) in [(4, 2), (5, 1), (7, 3)] {
            let q = p(n_amb, n);
            let s = segre_cotangent(q, 0);
            let eps1 = elementary_symmetric(1, q.codim()).unwrap();
            assert_eq!(s[1].coeff(1), &(&eps1 - &q.constant(n_amb as i64 + 1)));
            assert_eq!(s[0], ChowClass::one(q));
            assert_eq!(s.len(), n + 1);
        }
    }

    #[test]
    fn closed_form_small_cases() {
        let q = p(4, 2);
        assert_eq!(segre_closed_form(q, 0).unwrap(), MultidegreePoly::one(2));
        let e1 = elementary_symmetric(1, 2).unwrap();
        let e2 = elementary_symmetric(2, 2).unwrap();
        assert_eq!(segre_closed_form(q, 1).unwrap(), &e1 - &q.constant(5));
        assert_eq!(
            segre_closed_form(q, 2).unwrap(),
            &(&e2 - &e1.scale(&5.into())) + &q.constant(15)
        );
        assert!(segre_closed_form(q, 3).is_err());
    }

    #[test]
    fn twisting() {
        let q = p(3, 2);
        let s = segre_cotangent(q, 0);
        let unchanged = twist_segre(&s, 2, &ChowClass::zero(q)).unwrap();
        assert_eq!(unchanged, s);
        let l = ChowClass::pure(q, 1, q.constant(3));
        let t = twist_segre(&s, 2, &l).unwrap();
        assert_eq!(t[1], s[1].add(&l.scale(&q.constant(2))).unwrap());
        assert!(twist_segre(&s, 2, &ChowClass::one(q)).is_err());
        // N = 3, c = 1, m = 1
        assert_eq!(t.len(), 3);
        let l1 = ChowClass::h_power(q, 1);
        assert_eq!(twist_segre(&s, 2, &l1).unwrap(), segre_cotangent(q, 1));
    }

    #[test]
    fn chern_classes_of_line_sums() {
        let q = p(5, 2);
        let c = chern_line_sum(q, &[0, 0, 0]).unwrap();
        assert_eq!(c[1].coeff(1), &elementary_symmetric(1, 3).unwrap());
        let q2 = p(4, 2);
        let c = chern_line_sum(q2, &[0, 0]).unwrap();
        assert_eq!(c[2].coeff(2), &q2.bezout());
        let c = chern_line_sum(q, &[-2, -2, -2]).unwrap();
        assert_eq!(
            c[1].coeff(1),
            &(&elementary_symmetric(1, 3).unwrap() - &q.constant(6))
        );
        assert!(chern_line_sum(q, &[0]).is_err());
    }

    #[test]
    fn dominant_part_of_twisted_segre() {
        for m in -3..=3 {
            let q = p(6, 2);
            let s = segre_cotangent(q, m);
            for l in 0..=2 {
                assert_eq!(
                    s[l].coeff(l).dominant_part(),
                    elementary_symmetric(l as i64, q.codim()).unwrap()
                );
            }
            let q = p(4, 3);
            let s = segre_cotangent(q, m);
            assert!(s[3].coeff(3).total_degree() <= Degree::Finite(1));
        }
    }
}
