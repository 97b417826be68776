//! Classes on the jet tower `X_k -> X_{k-1} -> ... -> X_0 = X`.
//!
//! A [`JetClass`] at level `k` is an integer combination of monomials
//! `u_1^{p_1} ... u_k^{p_k} h^q s_{0,1}^{e_1} ... s_{0,n}^{e_n}` where `u_j` is
//! the tautological class of level `j` and `s_{0,i}` are the Segre classes of
//! `Omega_X`. Higher Segre classes `s_{j,i}` are expanded into this basis as
//! soon as they are created.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chow::{segre_cotangent, ChowClass, ModelParams};
use crate::error::{arg_err, Error, Result};
use crate::poly::MultidegreePoly;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetMonomial {
    /// Exponents of `u_1, ..., u_k`.
    pub u: Vec<u32>,
    pub h: u32,
    /// Exponents of `s_{0,1}, ..., s_{0,n}`.
    pub s: Vec<u32>,
}

impl JetMonomial {
    fn base_degree(&self) -> u32 {
        self.h
            + self
                .s
                .iter()
                .enumerate()
                .map(|(i, e)| (i as u32 + 1) * e)
                .sum::<u32>()
    }

    fn degree(&self) -> u32 {
        self.u.iter().sum::<u32>() + self.base_degree()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetClass {
    params: ModelParams,
    level: usize,
    terms: BTreeMap<JetMonomial, BigInt>,
}

impl JetClass {
    pub fn zero(params: ModelParams, level: usize) -> Self {
        JetClass {
            params,
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(params: ModelParams, level: usize, c: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(params, level);
        x.insert(x.empty_monomial(), c.into());
        x
    }

    pub fn one(params: ModelParams, level: usize) -> Self {
        Self::constant(params, level, 1)
    }

    /// `u_j` for `1 <= j <= level`.
    pub fn u(params: ModelParams, level: usize, j: usize) -> Result<Self> {
        if j == 0 || j > level {
            return Err(arg_err!("u_{j} does not exist at level {level}"));
        }
        let mut x = Self::zero(params, level);
        let mut m = x.empty_monomial();
        m.u[j - 1] = 1;
        x.insert(m, BigInt::one());
        Ok(x)
    }

    pub fn h(params: ModelParams, level: usize) -> Self {
        let mut x = Self::zero(params, level);
        let mut m = x.empty_monomial();
        m.h = 1;
        x.insert(m, BigInt::one());
        x
    }

    /// The symbol `s_{0,i}` pulled back to `level`; `1` for `i = 0`, zero for
    /// `i < 0` or `i > n`.
    pub fn base_segre(params: ModelParams, level: usize, i: i64) -> Self {
        if i == 0 {
            return Self::one(params, level);
        }
        let mut x = Self::zero(params, level);
        if i < 0 || i as usize > params.dim() {
            return x;
        }
        let mut m = x.empty_monomial();
        m.s[i as usize - 1] = 1;
        x.insert(m, BigInt::one());
        x
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn empty_monomial(&self) -> JetMonomial {
        JetMonomial {
            u: vec![0; self.level],
            h: 0,
            s: vec![0; self.params.dim()],
        }
    }

    /// Adds `c * m`, dropping monomials that vanish for degree reasons.
    fn insert(&mut self, m: JetMonomial, c: BigInt) {
        if c.is_zero()
            || m.degree() as usize > self.params.jet_dim(self.level)
            || m.base_degree() as usize > self.params.dim()
        {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params != other.params || self.level != other.level {
            return Err(arg_err!(
                "jet classes at different levels or on different varieties"
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.params, self.level);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.params, self.level);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = JetMonomial {
                    u: m1.u.iter().zip(&m2.u).map(|(a, b)| a + b).collect(),
                    h: m1.h + m2.h,
                    s: m1.s.iter().zip(&m2.s).map(|(a, b)| a + b).collect(),
                };
                out.insert(m, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.params, self.level);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same level");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same level");
            }
        }
        acc
    }

    /// Pullback to `level + 1`.
    pub fn lift(&self) -> Self {
        let mut out = Self::zero(self.params, self.level + 1);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.u.push(0);
            out.insert(m, c.clone());
        }
        out
    }

    /// Number of stored terms whose degree differs from `n_k`.
    pub fn off_degree_terms(&self) -> usize {
        let top = self.params.jet_dim(self.level) as u32;
        self.terms.keys().filter(|m| m.degree() != top).count()
    }
}

fn generalized_binomial(x: i64, i: i64) -> BigInt {
    if i < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..i {
        acc = acc * BigInt::from(x - t) / BigInt::from(t + 1);
    }
    acc
}

type MTable = RwLock<HashMap<(i64, i64, i64), BigInt>>;

fn m_table() -> &'static MTable {
    static TABLE: OnceLock<MTable> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `M^n_{l,j} = sum_{i=0}^{l-j} (-1)^i binom(n-2+i+j, i)`.
#[allow(non_snake_case)]
pub fn M_coeff(n: i64, l: i64, j: i64) -> Result<BigInt> {
    if j < 0 || j > l {
        return Err(arg_err!("M coefficient needs 0 <= j <= l, got j = {j}, l = {l}"));
    }
    if let Some(v) = m_table().read().expect("poisoned").get(&(n, l, j)) {
        return Ok(v.clone());
    }
    let mut acc = BigInt::zero();
    for i in 0..=l - j {
        let b = generalized_binomial(n - 2 + i + j, i);
        if i % 2 == 0 {
            acc += b;
        } else {
            acc -= b;
        }
    }
    m_table()
        .write()
        .expect("poisoned")
        .insert((n, l, j), acc.clone());
    Ok(acc)
}

type SegreKey = (ModelParams, usize, i64);

fn segre_cache() -> &'static RwLock<HashMap<SegreKey, JetClass>> {
    static CACHE: OnceLock<RwLock<HashMap<SegreKey, JetClass>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `s_{k,l}` expanded via `s_{k,l} = sum_j M^n_{l,j} s_{k-1,j} u_k^{l-j}`.
pub fn expand_segre(params: ModelParams, k: usize, l: i64) -> JetClass {
    if l < 0 {
        return JetClass::zero(params, k);
    }
    if l == 0 {
        return JetClass::one(params, k);
    }
    if k == 0 {
        return JetClass::base_segre(params, 0, l);
    }
    let key = (params, k, l);
    if let Some(v) = segre_cache().read().expect("poisoned").get(&key) {
        return v.clone();
    }
    let n = params.dim() as i64;
    let uk = JetClass::u(params, k, k).expect("k >= 1");
    let mut acc = JetClass::zero(params, k);
    for j in 0..=l {
        let m = M_coeff(n, l, j).expect("0 <= j <= l");
        if m.is_zero() {
            continue;
        }
        let lower = expand_segre(params, k - 1, j).lift();
        if lower.is_zero() {
            continue;
        }
        let term = lower.mul(&uk.pow((l - j) as u32)).expect("same level");
        acc = acc.add(&term.scale(&m)).expect("same level");
    }
    segre_cache()
        .write()
        .expect("poisoned")
        .insert(key, acc.clone());
    acc
}

/// Fiber integration along `X_k -> X_{k-1}`: `u_k^{i+n-1} -> s_{k-1,i}`.
pub fn pushforward_once(x: &JetClass) -> Result<JetClass> {
    if x.level == 0 {
        return Err(arg_err!("nothing to push forward from level 0"));
    }
    let params = x.params;
    let k = x.level;
    let fiber = params.dim() as i64 - 1;
    let mut by_power: BTreeMap<u32, JetClass> = BTreeMap::new();
    for (m, c) in &x.terms {
        let p = m.u[k - 1];
        if (p as i64) < fiber {
            continue;
        }
        let mut rest = m.clone();
        rest.u.pop();
        by_power
            .entry(p)
            .or_insert_with(|| JetClass::zero(params, k - 1))
            .insert(rest, c.clone());
    }
    let mut out = JetClass::zero(params, k - 1);
    for (p, rest) in by_power {
        let image = expand_segre(params, k - 1, p as i64 - fiber);
        if image.level != k - 1 {
            return Err(Error::Invariant("Segre expansion at wrong level".into()));
        }
        out = out.add(&rest.mul(&image)?)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetIntegral {
    pub value: MultidegreePoly,
    /// Input terms of degree different from `n_k`; these contribute nothing.
    pub dropped_terms: usize,
}

/// Integrates a level-`k` class over `X_k` by `k` pushforwards followed by
/// integration over `X`.
pub fn integrate_jet(x: &JetClass) -> JetIntegral {
    let params = x.params;
    let dropped_terms = x.off_degree_terms();
    let mut y = x.clone();
    while y.level > 0 {
        y = pushforward_once(&y).expect("level >= 1");
    }
    let segre = segre_cotangent(params, 0);
    let h = ChowClass::h_power(params, 1);
    let mut total = ChowClass::zero(params);
    for (m, c) in &y.terms {
        if m.base_degree() as usize != params.dim() {
            continue;
        }
        let mut cls = h.pow(m.h);
        for (i, &e) in m.s.iter().enumerate() {
            if e > 0 {
                cls = cls.mul(&segre[i + 1].pow(e)).expect("same params");
            }
        }
        total = total
            .add(&cls.scale(&params.constant(c.clone())))
            .expect("same params");
    }
    JetIntegral {
        value: total.integrate(),
        dropped_terms,
    }
}

/// `l_k = u_k + sum_{j<k} 2 * 3^{k-1-j} u_j + 2 * 3^{k-1} h` at level `k`.
pub fn ell_class(params: ModelParams, k: usize) -> Result<JetClass> {
    if k == 0 {
        return Err(arg_err!("ell_k is defined for k >= 1"));
    }
    let mut x = JetClass::u(params, k, k)?;
    for j in 1..k {
        let w = BigInt::from(2) * num_traits::pow(BigInt::from(3), k - 1 - j);
        x = x.add(&JetClass::u(params, k, j)?.scale(&w))?;
    }
    let w = BigInt::from(2) * num_traits::pow(BigInt::from(3), k - 1);
    x.add(&JetClass::h(params, k).scale(&w))
}

/// `l_j` pulled back to level `k >= j`.
pub fn ell_class_at(params: ModelParams, j: usize, k: usize) -> Result<JetClass> {
    if j > k {
        return Err(arg_err!("ell_{j} does not live at level {k}"));
    }
    let mut x = ell_class(params, j)?;
    while x.level < k {
        x = x.lift();
    }
    Ok(x)
}

/// `l_1 + ... + l_kappa` at level `kappa`.
pub fn ell_sum(params: ModelParams) -> JetClass {
    let kappa = params.kappa();
    let mut s = JetClass::zero(params, kappa);
    for j in 1..=kappa {
        s = s
            .add(&ell_class_at(params, j, kappa).expect("j <= kappa"))
            .expect("same level");
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct MorseCertificate {
    #[serde(rename = "N")]
    pub ambient: usize,
    pub n: usize,
    pub c: usize,
    pub kappa: usize,
    pub a: i64,
    pub m: i64,
    pub difference: MultidegreePoly,
    pub evaluated_at: Option<Vec<i64>>,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub value: Option<BigInt>,
    pub positive: Option<bool>,
}

fn ser_opt_decimal<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// `int S^{n_kappa} - n_kappa int S^{n_kappa - 1} G` with `S = sum l_i` and
/// `G = (3^kappa - 1 + a) h`, divided by `deg X = d_1 ... d_c`, optionally
/// evaluated at a multidegree. The division does not change the sign.
pub fn morse_certificate(params: ModelParams, a: i64, d: Option<&[i64]>) -> Result<MorseCertificate> {
    if a < 0 {
        return Err(arg_err!("a must be >= 0, got {a}"));
    }
    if let Some(d) = d {
        if d.len() != params.codim() {
            return Err(arg_err!(
                "{} degrees supplied, codimension is {}",
                d.len(),
                params.codim()
            ));
        }
    }
    let kappa = params.kappa();
    let top = params.jet_dim(kappa) as u32;
    let m = 3i64.pow(kappa as u32) - 1;
    let s = ell_sum(params);
    let s_prev = s.pow(top - 1);
    let f_top = integrate_jet(&s_prev.mul(&s)?).value;
    let g = JetClass::h(params, kappa).scale(&BigInt::from(m + a));
    let cross = integrate_jet(&s_prev.mul(&g)?).value;
    let raw = &f_top - &cross.scale(&BigInt::from(top));
    let difference = raw
        .div_exact(&params.bezout())
        .ok_or_else(|| Error::Invariant("intersection number not divisible by deg X".into()))?;
    let value = d.map(|d| difference.eval_i64(d)).transpose()?;
    Ok(MorseCertificate {
        ambient: params.ambient(),
        n: params.dim(),
        c: params.codim(),
        kappa,
        a,
        m,
        positive: value.as_ref().map(|v| v.is_positive()),
        value,
        evaluated_at: d.map(|d| d.to_vec()),
        difference,
    })
}

/// Smallest `r <= d_max` such that the Morse difference is positive at every
/// uniform multidegree `(r', ..., r')` with `r <= r' <= d_max`.
pub fn kappa_degree_search(params: ModelParams, a: i64, d_max: i64) -> Result<Option<i64>> {
    if d_max < 1 {
        return Err(arg_err!("d_max must be >= 1, got {d_max}"));
    }
    let diff = morse_certificate(params, a, None)?.difference;
    let mut frontier = None;
    for r in (1..=d_max).rev() {
        let v = diff.eval_i64(&vec![r; params.codim()])?;
        if v.is_positive() {
            frontier = Some(r);
        } else {
            break;
        }
    }
    Ok(frontier)
}

/// `int_X s_{i_1} ... s_{i_m} h^q` for base Segre classes of `Omega_X`.
pub fn integrate_base(params: ModelParams, segre_indices: &[usize], h_power: u32) -> MultidegreePoly {
    let mut x = JetClass::h(params, 0).pow(h_power);
    for &i in segre_indices {
        x = x
            .mul(&JetClass::base_segre(params, 0, i as i64))
            .expect("level 0");
    }
    integrate_jet(&x).value
}
