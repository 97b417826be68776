//! Vector fields on the affine chart of the universal relative tangent space
//! and exact checks of their tangency to `f_i = 0`, `f'_i = 0`.
//!
//! Chart variables are `z_1..z_N`, `z'_1..z'_N` and the coefficients
//! `a^i_alpha`, `|alpha| <= d_i`. In the normalized chart the coefficient
//! `a^i_{(d_i,0,...,0)}` is the constant 1 and is not a variable.
//!
//! Indices `i`, `j`, `k` and `p` are 0-based in the API; rendered names are
//! 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{arg_err, Error, Result};
use crate::poly::binomial;
use crate::ring::bareiss_det;

pub type Var = u32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
struct Mono(Vec<(Var, u32)>);

impl Mono {
    fn var(v: Var) -> Self {
        Mono(vec![(v, 1)])
    }

    fn mul(&self, other: &Mono) -> Mono {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    fn derivative(&self, v: Var) -> Option<(u32, Mono)> {
        let pos = self.0.iter().position(|&(w, _)| w == v)?;
        let e = self.0[pos].1;
        let mut rest = self.0.clone();
        if e == 1 {
            rest.remove(pos);
        } else {
            rest[pos].1 -= 1;
        }
        Some((e, Mono(rest)))
    }

    fn degree_in(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.0.iter().filter(|(v, _)| pred(*v)).map(|(_, e)| e).sum()
    }
}

/// Sparse integer polynomial in the chart variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChartPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl ChartPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::default(), c.into());
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::var(v), BigInt::one());
        p
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.derivative(v) {
                out.add_term(rest, c * BigInt::from(e));
            }
        }
        out
    }

    /// Variables that occur with a nonzero coefficient.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| *v))
            .collect()
    }

    /// Maximal total degree in the variables selected by `pred`; 0 for zero.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool + Copy) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(pred))
            .max()
            .unwrap_or(0)
    }

    /// Evaluates at a dense point indexed by variable.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in &m.0 {
                t *= num_traits::pow(point[v as usize].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }
}

impl std::ops::Add for &ChartPoly {
    type Output = ChartPoly;
    fn add(self, rhs: &ChartPoly) -> ChartPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &ChartPoly {
    type Output = ChartPoly;
    fn sub(self, rhs: &ChartPoly) -> ChartPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &ChartPoly {
    type Output = ChartPoly;
    fn mul(self, rhs: &ChartPoly) -> ChartPoly {
        let mut out = ChartPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &ChartPoly {
    type Output = ChartPoly;
    fn neg(self) -> ChartPoly {
        self.scale(&BigInt::from(-1))
    }
}

/// All `alpha` in `N^n` with `|alpha| <= d`, by degree then lexicographically.
pub fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for e in (0..=rest).rev() {
            prefix.push(e);
            go(n, rest - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=d {
        go(n, total, &mut Vec::new(), &mut out);
    }
    out
}

fn unit(n: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    Z,
    ZPrime,
    Coeff,
}

#[derive(Debug, Clone)]
pub struct UniversalChart {
    ambient: usize,
    degrees: Vec<u32>,
    normalized: bool,
    coeff_vars: Vec<BTreeMap<Vec<u32>, Var>>,
    names: Vec<String>,
}

impl UniversalChart {
    /// Chart with `a^i_{(d_i,0,...,0)} = 1`.
    pub fn new(ambient: usize, degrees: &[u32]) -> Result<Self> {
        Self::build(ambient, degrees, true)
    }

    /// Chart in which every `a^i_alpha` is a variable.
    pub fn unnormalized(ambient: usize, degrees: &[u32]) -> Result<Self> {
        Self::build(ambient, degrees, false)
    }

    fn build(ambient: usize, degrees: &[u32], normalized: bool) -> Result<Self> {
        if ambient == 0 {
            return Err(arg_err!("N must be >= 1"));
        }
        if degrees.is_empty() {
            return Err(arg_err!("at least one degree is required"));
        }
        if let Some(d) = degrees.iter().find(|&&d| d == 0) {
            return Err(arg_err!("degrees must be >= 1, got {d}"));
        }
        let mut names: Vec<String> = (1..=ambient).map(|j| format!("z{j}")).collect();
        names.extend((1..=ambient).map(|k| format!("z'{k}")));
        let mut coeff_vars = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            let pinned = Self::normalized_index_for(ambient, d);
            let mut map = BTreeMap::new();
            for alpha in exponents(ambient, d) {
                if normalized && alpha == pinned {
                    continue;
                }
                let idx: Vec<String> = alpha.iter().map(|e| e.to_string()).collect();
                map.insert(alpha, names.len() as Var);
                names.push(format!("a{}_{}", i + 1, idx.join("")));
            }
            coeff_vars.push(map);
        }
        Ok(UniversalChart {
            ambient,
            degrees: degrees.to_vec(),
            normalized,
            coeff_vars,
            names,
        })
    }

    fn normalized_index_for(ambient: usize, d: u32) -> Vec<u32> {
        let mut e = vec![0; ambient];
        e[0] = d;
        e
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, v: Var) -> &str {
        &self.names[v as usize]
    }

    /// `(d_i, 0, ..., 0)`.
    pub fn normalized_index(&self, i: usize) -> Vec<u32> {
        Self::normalized_index_for(self.ambient, self.degrees[i])
    }

    fn kind(&self, v: Var) -> VarKind {
        let v = v as usize;
        if v < self.ambient {
            VarKind::Z
        } else if v < 2 * self.ambient {
            VarKind::ZPrime
        } else {
            VarKind::Coeff
        }
    }

    pub fn is_z(&self, v: Var) -> bool {
        self.kind(v) == VarKind::Z
    }

    pub fn is_coeff(&self, v: Var) -> bool {
        self.kind(v) == VarKind::Coeff
    }

    pub fn z_var(&self, j: usize) -> Var {
        j as Var
    }

    pub fn zp_var(&self, k: usize) -> Var {
        (self.ambient + k) as Var
    }

    pub fn z(&self, j: usize) -> ChartPoly {
        ChartPoly::var(self.z_var(j))
    }

    pub fn zp(&self, k: usize) -> ChartPoly {
        ChartPoly::var(self.zp_var(k))
    }

    /// Variable of `a^i_alpha`; `None` for the normalized coefficient or an
    /// index outside `|alpha| <= d_i`.
    pub fn coeff_var(&self, i: usize, alpha: &[u32]) -> Option<Var> {
        self.coeff_vars.get(i)?.get(alpha).copied()
    }

    /// `a^i_alpha` as a polynomial (the constant 1 when normalized).
    pub fn a(&self, i: usize, alpha: &[u32]) -> Result<ChartPoly> {
        if i >= self.codim() || alpha.len() != self.ambient {
            return Err(arg_err!("no coefficient a^{}_{alpha:?}", i + 1));
        }
        if self.normalized && alpha == self.normalized_index(i).as_slice() {
            return Ok(ChartPoly::one());
        }
        self.coeff_var(i, alpha)
            .map(ChartPoly::var)
            .ok_or_else(|| arg_err!("|alpha| exceeds d_{} for alpha = {alpha:?}", i + 1))
    }

    pub fn coeff_vars(&self, i: usize) -> impl Iterator<Item = (&Vec<u32>, &Var)> {
        self.coeff_vars[i].iter()
    }

    pub fn z_monomial(&self, alpha: &[u32]) -> ChartPoly {
        let mut p = ChartPoly::one();
        for (j, &e) in alpha.iter().enumerate() {
            if e > 0 {
                p = &p * &self.z(j).pow(e);
            }
        }
        p
    }

    /// `sum_k d(z^alpha)/dz_k z'_k`.
    pub fn z_monomial_derivative(&self, alpha: &[u32]) -> ChartPoly {
        let m = self.z_monomial(alpha);
        let mut acc = ChartPoly::zero();
        for k in 0..self.ambient {
            acc = &acc + &(&m.derivative(self.z_var(k)) * &self.zp(k));
        }
        acc
    }

    /// `(f_1..f_c, f'_1..f'_c)`.
    pub fn defining_equations(&self) -> (Vec<ChartPoly>, Vec<ChartPoly>) {
        let mut fs = Vec::new();
        let mut fps = Vec::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            let mut f = ChartPoly::zero();
            let mut fp = ChartPoly::zero();
            for alpha in exponents(self.ambient, d) {
                let a = self.a(i, &alpha).expect("alpha in range");
                f = &f + &(&a * &self.z_monomial(&alpha));
                fp = &fp + &(&a * &self.z_monomial_derivative(&alpha));
            }
            fs.push(f);
            fps.push(fp);
        }
        (fs, fps)
    }

    pub fn render(&self, p: &ChartPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut terms: Vec<(&Mono, &BigInt)> = p.terms.iter().collect();
        terms.sort_by(|x, y| {
            let dx = x.0.degree_in(|_| true);
            let dy = y.0.degree_in(|_| true);
            dy.cmp(&dx).then_with(|| y.0.cmp(x.0))
        });
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        self.names[v as usize].clone()
                    } else {
                        format!("{}^{e}", self.names[v as usize])
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PoleOrders {
    /// Maximal total degree in `z` over all coefficients.
    pub z: u32,
    /// Maximal total degree in the `a^i_alpha` over all coefficients.
    pub a: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    label: String,
    components: BTreeMap<Var, ChartPoly>,
    pole_orders: PoleOrders,
}

impl VectorField {
    pub fn new(chart: &UniversalChart, label: impl Into<String>, components: BTreeMap<Var, ChartPoly>) -> Self {
        let components: BTreeMap<Var, ChartPoly> =
            components.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        let z = components
            .values()
            .map(|p| p.degree_in(|v| chart.is_z(v)))
            .max()
            .unwrap_or(0);
        let a = components
            .values()
            .map(|p| p.degree_in(|v| chart.is_coeff(v)))
            .max()
            .unwrap_or(0);
        VectorField {
            label: label.into(),
            components,
            pole_orders: PoleOrders { z, a },
        }
    }

    pub fn zero(chart: &UniversalChart) -> Self {
        Self::new(chart, "zero", BTreeMap::new())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn pole_orders(&self) -> PoleOrders {
        self.pole_orders
    }

    pub fn component(&self, v: Var) -> Option<&ChartPoly> {
        self.components.get(&v)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Var, &ChartPoly)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `T(g) = sum_v T^v dg/dv`.
    pub fn apply(&self, g: &ChartPoly) -> ChartPoly {
        let present = g.variables();
        let mut acc = ChartPoly::zero();
        for (v, coeff) in &self.components {
            if present.contains(v) {
                acc = &acc + &(coeff * &g.derivative(*v));
            }
        }
        acc
    }

    /// Same field with the sign of one component flipped.
    pub fn with_flipped_component(&self, chart: &UniversalChart, v: Var) -> Self {
        let mut comps = self.components.clone();
        if let Some(p) = comps.get_mut(&v) {
            *p = -&*p;
        }
        Self::new(chart, format!("{} (flipped)", self.label), comps)
    }

    pub fn render(&self, chart: &UniversalChart) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(v, p)| format!("({}) d/d{}", chart.render(p), chart.var_name(*v)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Default pivot for equation `i`: the first `p` such that `a^i_{e_p}` is a
/// variable of the chart.
pub fn default_pivot(chart: &UniversalChart, i: usize) -> Result<usize> {
    (0..chart.ambient)
        .find(|&p| chart.coeff_var(i, &unit(chart.ambient, p)).is_some())
        .ok_or_else(|| {
            arg_err!(
                "equation {} has no free linear coefficient to solve for (N = 1, d = 1)",
                i + 1
            )
        })
}

/// Coefficients eligible as free data for the solved family: `|alpha| <=
/// min(N, d_i)`, excluding `0`, `e_p` and the normalized coefficient.
pub fn free_indices(chart: &UniversalChart, i: usize, pivot: usize) -> Vec<Vec<u32>> {
    let bound = chart.degrees[i].min(chart.ambient as u32);
    let ep = unit(chart.ambient, pivot);
    exponents(chart.ambient, bound)
        .into_iter()
        .filter(|alpha| {
            alpha.iter().any(|&e| e > 0) && *alpha != ep && chart.coeff_var(i, alpha).is_some()
        })
        .collect()
}

/// The field `sum A^i_alpha d/da^i_alpha` with free `A^i_alpha` and the
/// coefficients of `a^i_0`, `a^i_{e_p}` solved from `T(f_i) = T(f'_i) = 0`,
/// multiplied through by `z'_p`:
/// `A_{e_p} = -R_1`, `A_0 = z_p R_1 - z'_p R_0`, `A_alpha = z'_p * free_alpha`.
pub fn build_low_coeff_field(
    chart: &UniversalChart,
    i: usize,
    free_data: &BTreeMap<Vec<u32>, BigInt>,
    pivot: Option<usize>,
) -> Result<VectorField> {
    if i >= chart.codim() {
        return Err(arg_err!("equation index {} out of range", i + 1));
    }
    let p = match pivot {
        Some(p) if p < chart.ambient => p,
        Some(p) => return Err(arg_err!("pivot {} exceeds N = {}", p + 1, chart.ambient)),
        None => default_pivot(chart, i)?,
    };
    let ep = unit(chart.ambient, p);
    let zero_idx = vec![0u32; chart.ambient];
    let v0 = chart.coeff_var(i, &zero_idx).expect("constant term is a variable");
    let vp = chart
        .coeff_var(i, &ep)
        .ok_or_else(|| arg_err!("a^{}_e{} is not a variable; choose another pivot", i + 1, p + 1))?;
    let mut r0 = ChartPoly::zero();
    let mut r1 = ChartPoly::zero();
    let mut comps = BTreeMap::new();
    let zpp = chart.zp(p);
    for (alpha, value) in free_data {
        if alpha.len() != chart.ambient {
            return Err(arg_err!("index {alpha:?} has the wrong length"));
        }
        let size: u32 = alpha.iter().sum();
        if size as usize > chart.ambient {
            return Err(arg_err!(
                "|alpha| = {size} > N = {}: the family only covers |alpha| <= N",
                chart.ambient
            ));
        }
        if *alpha == zero_idx || *alpha == ep {
            return Err(arg_err!("a^{}_{alpha:?} is solved for, not free", i + 1));
        }
        let v = chart.coeff_var(i, alpha).ok_or_else(|| {
            arg_err!("a^{}_{alpha:?} is not a variable of the chart", i + 1)
        })?;
        let a = ChartPoly::constant(value.clone());
        r0 = &r0 + &(&a * &chart.z_monomial(alpha));
        r1 = &r1 + &(&a * &chart.z_monomial_derivative(alpha));
        comps.insert(v, &zpp * &a);
    }
    comps.insert(vp, -&r1);
    comps.insert(v0, &(&chart.z(p) * &r1) - &(&zpp * &r0));
    Ok(VectorField::new(
        chart,
        format!("solved[i={},p={}]", i + 1, p + 1),
        comps,
    ))
}

/// Uniformly random integer free data in `[-bound, bound]`.
pub fn random_free_data(
    chart: &UniversalChart,
    i: usize,
    pivot: usize,
    bound: i64,
    rng: &mut impl Rng,
) -> BTreeMap<Vec<u32>, BigInt> {
    free_indices(chart, i, pivot)
        .into_iter()
        .map(|alpha| (alpha, BigInt::from(rng.gen_range(-bound..=bound))))
        .collect()
}

/// `T_j = d/dz_j - sum_i sum_{|alpha| <= d_i - 1} (alpha_j + 1) a^i_{alpha+e_j} d/da^i_alpha`.
#[allow(non_snake_case)]
pub fn build_Tj(chart: &UniversalChart, j: usize) -> Result<VectorField> {
    if j >= chart.ambient {
        return Err(arg_err!("j = {} exceeds N = {}", j + 1, chart.ambient));
    }
    let mut comps = BTreeMap::new();
    comps.insert(chart.z_var(j), ChartPoly::one());
    for (i, &d) in chart.degrees.iter().enumerate() {
        for alpha in exponents(chart.ambient, d - 1) {
            let v = chart.coeff_var(i, &alpha).expect("|alpha| < d_i");
            let mut shifted = alpha.clone();
            shifted[j] += 1;
            let coeff = chart.a(i, &shifted)?.scale(&BigInt::from(-(alpha[j] as i64 + 1)));
            comps.insert(v, coeff);
        }
    }
    Ok(VectorField::new(chart, format!("T{}", j + 1), comps))
}

/// Which index the derivative in `T^l_alpha` acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftConvention {
    /// `d/da_{alpha - l}` as displayed.
    Ell,
    /// `d/da_{alpha - l'}`, following the summation variable.
    EllPrime,
}

/// `T^l_alpha = sum_{l' + l'' = l} l!/(l'! l''!) z^{l''} d/da^i_{alpha - l}`
/// (or `alpha - l'`). Terms whose target index is negative or not a chart
/// variable are omitted.
#[allow(non_snake_case)]
pub fn build_T_alpha_ell(
    chart: &UniversalChart,
    i: usize,
    alpha: &[u32],
    ell: &[u32],
    convention: ShiftConvention,
) -> Result<VectorField> {
    let n = chart.ambient;
    if i >= chart.codim() || alpha.len() != n || ell.len() != n {
        return Err(arg_err!("malformed T^l_alpha request"));
    }
    if alpha.iter().sum::<u32>() > chart.degrees[i] {
        return Err(arg_err!("|alpha| exceeds d_{}", i + 1));
    }
    if ell.iter().sum::<u32>() as usize > n {
        return Err(arg_err!("|l| must be <= N"));
    }
    let mut comps: BTreeMap<Var, ChartPoly> = BTreeMap::new();
    let splits: Vec<Vec<u32>> = ell
        .iter()
        .map(|&e| (0..=e).collect::<Vec<u32>>())
        .fold(vec![Vec::new()], |acc, choices| {
            acc.into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect()
        });
    for l1 in splits {
        let l2: Vec<u32> = ell.iter().zip(&l1).map(|(l, a)| l - a).collect();
        let shift = match convention {
            ShiftConvention::Ell => ell,
            ShiftConvention::EllPrime => &l1[..],
        };
        if alpha.iter().zip(shift).any(|(a, s)| a < s) {
            continue;
        }
        let target: Vec<u32> = alpha.iter().zip(shift).map(|(a, s)| a - s).collect();
        let Some(v) = chart.coeff_var(i, &target) else {
            continue;
        };
        let multinomial = ell
            .iter()
            .zip(&l1)
            .fold(BigInt::one(), |acc, (&l, &a)| acc * binomial(l as i64, a as i64));
        let term = chart.z_monomial(&l2).scale(&multinomial);
        let slot = comps.entry(v).or_default();
        *slot = &*slot + &term;
    }
    let fmt_idx = |x: &[u32]| x.iter().map(|e| e.to_string()).collect::<String>();
    Ok(VectorField::new(
        chart,
        format!("T^{}_{}[i={}]", fmt_idx(ell), fmt_idx(alpha), i + 1),
        comps,
    ))
}

/// Supplies the `d/da` part of `T_Lambda` for one equation.
pub trait ASolution {
    /// Factor by which the whole field is multiplied to clear denominators.
    fn clearing_factor(&self, chart: &UniversalChart) -> Result<ChartPoly>;
    /// Cleared coefficients `A^i_alpha` for equation `i`, given the uncleared
    /// `d/dz'_k` coefficients `w_k = sum_l Lambda[l][k] z'_l`.
    fn coefficients(&self, chart: &UniversalChart, i: usize, w: &[ChartPoly]) -> Result<BTreeMap<Var, ChartPoly>>;
}

/// No `d/da` part.
pub struct ZeroSolution;

impl ASolution for ZeroSolution {
    fn clearing_factor(&self, _: &UniversalChart) -> Result<ChartPoly> {
        Ok(ChartPoly::one())
    }
    fn coefficients(&self, _: &UniversalChart, _: usize, _: &[ChartPoly]) -> Result<BTreeMap<Var, ChartPoly>> {
        Ok(BTreeMap::new())
    }
}

/// Absorbs `Phi = sum_k w_k df_i/dz_k` into `a^i_0` and `a^i_{e_p}`; with the
/// field multiplied by `z'_p`, `A_{e_p} = -Phi` and `A_0 = z_p Phi`.
pub struct PivotSolution;

impl PivotSolution {
    fn pivot(chart: &UniversalChart) -> Result<usize> {
        (0..chart.ambient)
            .find(|&p| (0..chart.codim()).all(|i| chart.coeff_var(i, &unit(chart.ambient, p)).is_some()))
            .ok_or_else(|| arg_err!("no pivot index is free in every equation"))
    }
}

impl ASolution for PivotSolution {
    fn clearing_factor(&self, chart: &UniversalChart) -> Result<ChartPoly> {
        Ok(chart.zp(Self::pivot(chart)?))
    }

    fn coefficients(&self, chart: &UniversalChart, i: usize, w: &[ChartPoly]) -> Result<BTreeMap<Var, ChartPoly>> {
        let p = Self::pivot(chart)?;
        let (fs, _) = chart.defining_equations();
        let mut phi = ChartPoly::zero();
        for (k, wk) in w.iter().enumerate() {
            phi = &phi + &(wk * &fs[i].derivative(chart.z_var(k)));
        }
        let vp = chart.coeff_var(i, &unit(chart.ambient, p)).expect("pivot is free");
        let v0 = chart.coeff_var(i, &vec![0; chart.ambient]).expect("constant term");
        let mut out = BTreeMap::new();
        out.insert(vp, -&phi);
        out.insert(v0, &chart.z(p) * &phi);
        Ok(out)
    }
}

/// `T_Lambda = sum_k (sum_l Lambda[l][k] z'_l) d/dz'_k + sum_i sum_alpha A^i_alpha d/da^i_alpha`,
/// with the `A` part supplied by `solution` and the whole field multiplied
/// by its clearing factor.
#[allow(non_snake_case)]
pub fn build_T_Lambda(chart: &UniversalChart, lambda: &[Vec<i64>], solution: &dyn ASolution) -> Result<VectorField> {
    let n = chart.ambient;
    if lambda.len() != n || lambda.iter().any(|row| row.len() != n) {
        return Err(arg_err!("Lambda must be {n}x{n}"));
    }
    let m: Vec<Vec<BigInt>> = lambda
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let det = bareiss_det(m, &BigInt::one()).expect("integers form a domain");
    if det.is_zero() {
        return Err(arg_err!("Lambda is singular"));
    }
    let factor = solution.clearing_factor(chart)?;
    let w: Vec<ChartPoly> = (0..n)
        .map(|k| {
            let mut acc = ChartPoly::zero();
            for (l, row) in lambda.iter().enumerate() {
                acc = &acc + &chart.zp(l).scale(&BigInt::from(row[k]));
            }
            acc
        })
        .collect();
    let mut comps: BTreeMap<Var, ChartPoly> = BTreeMap::new();
    for (k, wk) in w.iter().enumerate() {
        comps.insert(chart.zp_var(k), &factor * wk);
    }
    for i in 0..chart.codim() {
        for (v, p) in solution.coefficients(chart, i, &w)? {
            let slot = comps.entry(v).or_default();
            *slot = &*slot + &p;
        }
    }
    Ok(VectorField::new(chart, "T_Lambda", comps))
}

/// `T(f_i)` and `T(f'_i)` for all `i`, in that order.
pub fn images(chart: &UniversalChart, field: &VectorField) -> Vec<(String, ChartPoly)> {
    let (fs, fps) = chart.defining_equations();
    let mut out = Vec::new();
    for (i, (f, fp)) in fs.iter().zip(&fps).enumerate() {
        out.push((format!("f{}", i + 1), field.apply(f)));
        out.push((format!("f'{}", i + 1), field.apply(fp)));
    }
    out
}

/// True when `T(f_i)` and `T(f'_i)` are the zero polynomial for every `i`.
pub fn identically_tangent(chart: &UniversalChart, field: &VectorField) -> bool {
    images(chart, field).iter().all(|(_, p)| p.is_zero())
}

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub sample: usize,
    pub equation: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TangencyReport {
    pub field: String,
    pub samples: usize,
    pub seed: u64,
    pub resamples: usize,
    pub residuals: Vec<Residual>,
}

impl TangencyReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Maximum number of consecutive degenerate draws before giving up.
pub const MAX_RESAMPLES: usize = 50;

fn random_rational(rng: &mut impl Rng) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=4);
    BigRational::new(num.into(), den.into())
}

/// Draws a point with `f_i = f'_i = 0` for all `i`: random `z`, `z'` and
/// coefficients, then solves the two linear equations of each `i` for `a^i_0`
/// and the first `a^i_beta` whose coefficient in `f'_i` is nonzero there.
/// When `f'_i` has no coefficient variable it is solved for some `z'_k`.
pub fn sample_locus_point(chart: &UniversalChart, rng: &mut impl Rng) -> Result<(Vec<BigRational>, usize)> {
    let (fs, fps) = chart.defining_equations();
    let zero_idx = vec![0u32; chart.ambient];
    'attempt: for attempt in 0..=MAX_RESAMPLES {
        let mut point: Vec<BigRational> = (0..chart.num_vars()).map(|_| random_rational(rng)).collect();
        // an f'_i free of coefficient variables (N = 1, d_i = 1) pins z'
        for fp in &fps {
            if fp.variables().iter().any(|&v| chart.is_coeff(v)) {
                continue;
            }
            let pivot = (0..chart.ambient).find_map(|k| {
                let c = fp.derivative(chart.zp_var(k)).eval(&point);
                (!c.is_zero()).then_some((chart.zp_var(k) as usize, c))
            });
            if let Some((vk, ck)) = pivot {
                point[vk] = BigRational::zero();
                let rest = fp.eval(&point);
                point[vk] = -rest / ck;
            }
        }
        for i in 0..chart.codim() {
            let v0 = chart.coeff_var(i, &zero_idx).expect("constant term") as usize;
            let beta = chart.coeff_vars(i).find_map(|(alpha, &v)| {
                if *alpha == zero_idx {
                    return None;
                }
                let c = chart.z_monomial_derivative(alpha).eval(&point);
                (!c.is_zero()).then_some((v as usize, c))
            });
            match beta {
                Some((vb, cb)) => {
                    point[vb] = BigRational::zero();
                    let rest = fps[i].eval(&point);
                    point[vb] = -rest / cb;
                }
                None if fps[i].eval(&point).is_zero() => {}
                None => continue 'attempt,
            }
            point[v0] = BigRational::zero();
            let rest = fs[i].eval(&point);
            point[v0] = -rest;
        }
        for (f, fp) in fs.iter().zip(&fps) {
            if !f.eval(&point).is_zero() || !fp.eval(&point).is_zero() {
                return Err(Error::Invariant("sampled point is not on the locus".into()));
            }
        }
        return Ok((point, attempt));
    }
    Err(Error::Domain(format!(
        "no non-degenerate point found after {MAX_RESAMPLES} draws"
    )))
}

/// Evaluates `T(f_i)`, `T(f'_i)` at `samples` random points of the locus.
pub fn point_tangency_check(
    chart: &UniversalChart,
    field: &VectorField,
    samples: usize,
    seed: u64,
) -> Result<TangencyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let imgs = images(chart, field);
    let mut residuals = Vec::new();
    let mut resamples = 0;
    for s in 0..samples {
        let (point, retries) = sample_locus_point(chart, &mut rng)?;
        resamples += retries;
        for (name, p) in &imgs {
            let v = p.eval(&point);
            if !v.is_zero() {
                residuals.push(Residual {
                    sample: s,
                    equation: name.clone(),
                    value: v.to_string(),
                });
            }
        }
    }
    Ok(TangencyReport {
        field: field.label.clone(),
        samples,
        seed,
        resamples,
        residuals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Solved,
    Tj,
    Talpha,
    Tlambda,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "solved" => Ok(Family::Solved),
            "tj" => Ok(Family::Tj),
            "talpha" => Ok(Family::Talpha),
            "tlambda" => Ok(Family::Tlambda),
            _ => Err(arg_err!(
                "unknown family {s:?}; expected solved, tj, talpha or tlambda"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Solved => "solved",
            Family::Tj => "tj",
            Family::Talpha => "talpha",
            Family::Tlambda => "tlambda",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldSummary {
    pub field: String,
    pub identically_zero: bool,
    pub pole_orders: PoleOrders,
    pub nonzero_residuals: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    #[serde(rename = "N")]
    pub ambient: usize,
    pub degrees: Vec<u32>,
    /// `true`/`false` for the solved and `T_j` families, `"n/a"` otherwise.
    pub identical_vanishing: serde_json::Value,
    pub residuals: Vec<Residual>,
    pub pole_orders: Vec<FieldSummary>,
    pub samples: usize,
    pub seed: u64,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.identical_vanishing != serde_json::Value::Bool(false) && self.residuals.is_empty()
    }
}

/// Builds every field of `family` on the normalized chart and checks it.
pub fn verify_family(
    ambient: usize,
    degrees: &[u32],
    family: Family,
    samples: usize,
    seed: u64,
) -> Result<FamilyReport> {
    let chart = UniversalChart::new(ambient, degrees)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fields = Vec::new();
    match family {
        Family::Solved => {
            for i in 0..chart.codim() {
                let p = default_pivot(&chart, i)?;
                let data = random_free_data(&chart, i, p, 9, &mut rng);
                fields.push(build_low_coeff_field(&chart, i, &data, Some(p))?);
            }
        }
        Family::Tj => {
            for j in 0..ambient {
                fields.push(build_Tj(&chart, j)?);
            }
        }
        Family::Talpha => {
            let last = ambient - 1;
            for (i, &d) in degrees.iter().enumerate() {
                let mut alpha = vec![0; ambient];
                alpha[last] = d;
                let ell = unit(ambient, last);
                for conv in [ShiftConvention::Ell, ShiftConvention::EllPrime] {
                    fields.push(build_T_alpha_ell(&chart, i, &alpha, &ell, conv)?);
                }
            }
        }
        Family::Tlambda => {
            let lambda = loop {
                let m: Vec<Vec<i64>> = (0..ambient)
                    .map(|_| (0..ambient).map(|_| rng.gen_range(-3..=3)).collect())
                    .collect();
                let big: Vec<Vec<BigInt>> = m
                    .iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                if !bareiss_det(big, &BigInt::one()).expect("domain").is_zero() {
                    break m;
                }
            };
            fields.push(build_T_Lambda(&chart, &lambda, &PivotSolution)?);
        }
    }
    let mut summaries = Vec::new();
    let mut residuals = Vec::new();
    let mut all_identical = true;
    for (idx, field) in fields.iter().enumerate() {
        let identically_zero = identically_tangent(&chart, field);
        all_identical &= identically_zero;
        let report = point_tangency_check(&chart, field, samples, seed.wrapping_add(idx as u64 + 1))?;
        summaries.push(FieldSummary {
            field: field.label.clone(),
            identically_zero,
            pole_orders: field.pole_orders,
            nonzero_residuals: report.residuals.len(),
        });
        residuals.extend(report.residuals.into_iter().map(|mut r| {
            r.equation = format!("{}: {}", field.label, r.equation);
            r
        }));
    }
    let identical_vanishing = match family {
        Family::Solved | Family::Tj => serde_json::Value::Bool(all_identical),
        Family::Talpha | Family::Tlambda => serde_json::Value::String("n/a".into()),
    };
    Ok(FamilyReport {
        family,
        ambient,
        degrees: degrees.to_vec(),
        identical_vanishing,
        residuals,
        pole_orders: summaries,
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(exponents(3, 3).len(), 20);
        assert_eq!(exponents(4, 3).len(), 35);
    }

    #[test]
    fn equations_of_small_charts() {
        let chart = UniversalChart::unnormalized(2, &[1]).unwrap();
        let (fs, fps) = chart.defining_equations();
        assert_eq!(chart.render(&fs[0]), "z2*a1_01 + z1*a1_10 + a1_00");
        assert_eq!(chart.render(&fps[0]), "z'2*a1_01 + z'1*a1_10");
        let chart = UniversalChart::new(2, &[2]).unwrap();
        let (fs, fps) = chart.defining_equations();
        // the normalized a_20 contributes z1^2 and 2 z1 z'1
        assert!(chart.render(&fs[0]).contains("z1^2"));
        assert!(chart.render(&fps[0]).contains("2*z1*z'1"));
        assert_eq!(chart.num_vars(), 4 + 5);
        assert!(UniversalChart::new(0, &[1]).is_err());
        assert!(UniversalChart::new(2, &[0]).is_err());
    }

    #[test]
    fn single_monomial_derivative() {
        let chart = UniversalChart::unnormalized(2, &[2]).unwrap();
        let a20 = chart.a(0, &[2, 0]).unwrap();
        let fp = &a20 * &chart.z_monomial_derivative(&[2, 0]);
        assert_eq!(chart.render(&fp), "2*z1*z'1*a1_20");
        assert!(chart.z_monomial_derivative(&[0, 0]).is_zero());
    }

    #[test]
    fn apply_basics() {
        let chart = UniversalChart::new(2, &[2]).unwrap();
        let mut comps = BTreeMap::new();
        comps.insert(chart.z_var(0), ChartPoly::one());
        let t = VectorField::new(&chart, "d/dz1", comps);
        assert_eq!(t.apply(&chart.z(0).pow(2)), chart.z(0).scale(&BigInt::from(2)));
        assert!(VectorField::zero(&chart).apply(&chart.z(0)).is_zero());
        let g = &chart.z(0).pow(3) + &chart.zp(1);
        let h = &chart.z(0) * &chart.z(1);
        assert_eq!(t.apply(&(&g + &h)), &t.apply(&g) + &t.apply(&h));
    }

    #[test]
    fn tj_hypersurface_of_degree_one() {
        let chart = UniversalChart::unnormalized(1, &[1]).unwrap();
        let t = build_Tj(&chart, 0).unwrap();
        assert_eq!(t.render(&chart), "(1) d/dz1 + (-a1_1) d/da1_0");
        assert!(identically_tangent(&chart, &t));
        let chart = UniversalChart::new(1, &[1]).unwrap();
        let t = build_Tj(&chart, 0).unwrap();
        assert_eq!(t.render(&chart), "(1) d/dz1 + (-1) d/da1_0");
        assert!(identically_tangent(&chart, &t));
    }

    #[test]
    fn tj_family_is_tangent() {
        for n in 1..=3 {
            for degrees in [vec![1], vec![2], vec![3], vec![2, 3]] {
                for normalized in [true, false] {
                    let chart = if normalized {
                        UniversalChart::new(n, &degrees).unwrap()
                    } else {
                        UniversalChart::unnormalized(n, &degrees).unwrap()
                    };
                    for j in 0..n {
                        let t = build_Tj(&chart, j).unwrap();
                        assert!(identically_tangent(&chart, &t), "N={n} d={degrees:?} j={j}");
                        assert!(t.pole_orders().a <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn solved_family_is_tangent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            for degrees in [vec![1], vec![2], vec![3], vec![1, 2]] {
                let chart = UniversalChart::new(n, &degrees).unwrap();
                for i in 0..degrees.len() {
                    let Ok(p) = default_pivot(&chart, i) else {
                        assert!(n == 1 && degrees[i] == 1);
                        continue;
                    };
                    let data = random_free_data(&chart, i, p, 9, &mut rng);
                    let t = build_low_coeff_field(&chart, i, &data, Some(p)).unwrap();
                    assert!(identically_tangent(&chart, &t), "N={n} d={degrees:?} i={i}");
                    assert!(t.pole_orders().z <= n as u32);
                }
            }
        }
    }

    #[test]
    fn solved_family_edge_cases() {
        let chart = UniversalChart::new(2, &[3]).unwrap();
        let empty = BTreeMap::new();
        assert!(build_low_coeff_field(&chart, 0, &empty, None).unwrap().is_zero());
        let mut bad = BTreeMap::new();
        bad.insert(vec![3, 0], BigInt::from(1));
        assert!(build_low_coeff_field(&chart, 0, &bad, None).is_err());
        let mut bad = BTreeMap::new();
        bad.insert(vec![1, 0], BigInt::from(1));
        assert!(build_low_coeff_field(&chart, 0, &bad, Some(0)).is_err());
        // d = 1: e_1 is normalized, so the default pivot moves to e_2
        let chart = UniversalChart::new(2, &[1]).unwrap();
        assert_eq!(default_pivot(&chart, 0).unwrap(), 1);
        assert!(build_low_coeff_field(&chart, 0, &empty, Some(0)).is_err());
        assert!(default_pivot(&UniversalChart::new(1, &[1]).unwrap(), 0).is_err());
    }

    #[test]
    fn displayed_sign_of_constant_coefficient_fails() {
        // A_0 = -z_1/z'_1 R_1 - R_0, cleared: -z_1 R_1 - z'_1 R_0
        let chart = UniversalChart::new(2, &[2]).unwrap();
        let mut data = BTreeMap::new();
        data.insert(vec![0, 1], BigInt::from(3));
        data.insert(vec![1, 1], BigInt::from(-2));
        let good = build_low_coeff_field(&chart, 0, &data, Some(0)).unwrap();
        let v0 = chart.coeff_var(0, &[0, 0]).unwrap();
        let mut comps: BTreeMap<Var, ChartPoly> = good.components().map(|(v, p)| (*v, p.clone())).collect();
        let r1 = -good.component(chart.coeff_var(0, &[1, 0]).unwrap()).unwrap();
        let r0 = {
            let mut r0 = ChartPoly::zero();
            for (alpha, c) in &data {
                r0 = &r0 + &chart.z_monomial(alpha).scale(c);
            }
            r0
        };
        comps.insert(v0, &(-&(&chart.z(0) * &r1)) - &(&chart.zp(0) * &r0));
        let displayed = VectorField::new(&chart, "displayed", comps);
        assert!(identically_tangent(&chart, &good));
        assert!(!identically_tangent(&chart, &displayed));
    }

    #[test]
    fn t_alpha_ell_shapes() {
        let chart = UniversalChart::new(2, &[3]).unwrap();
        let t = build_T_alpha_ell(&chart, 0, &[1, 1], &[0, 0], ShiftConvention::Ell).unwrap();
        assert_eq!(t.render(&chart), "(1) d/da1_11");
        let t = build_T_alpha_ell(&chart, 0, &[1, 1], &[1, 1], ShiftConvention::Ell).unwrap();
        // all four terms land on a_00: 1 + z1 + z2 + z1 z2
        assert_eq!(t.component(chart.coeff_var(0, &[0, 0]).unwrap()).unwrap().len(), 4);
        let t = build_T_alpha_ell(&chart, 0, &[1, 1], &[1, 1], ShiftConvention::EllPrime).unwrap();
        assert_eq!(t.components().count(), 4);
        assert!(build_T_alpha_ell(&chart, 0, &[3, 1], &[0, 0], ShiftConvention::Ell).is_err());
        assert!(build_T_alpha_ell(&chart, 0, &[1, 0], &[2, 1], ShiftConvention::Ell).is_err());
    }

    #[test]
    fn t_lambda() {
        let chart = UniversalChart::new(2, &[2]).unwrap();
        let id = vec![vec![1, 0], vec![0, 1]];
        let t = build_T_Lambda(&chart, &id, &ZeroSolution).unwrap();
        assert_eq!(t.render(&chart), "(z'1) d/dz'1 + (z'2) d/dz'2");
        assert!(build_T_Lambda(&chart, &[vec![1, 2], vec![2, 4]], &ZeroSolution).is_err());
        let lambda = vec![vec![2, 1], vec![-1, 3]];
        let t = build_T_Lambda(&chart, &lambda, &PivotSolution).unwrap();
        assert!(identically_tangent(&chart, &t));
        let t = build_T_Lambda(&chart, &lambda, &ZeroSolution).unwrap();
        assert!(!identically_tangent(&chart, &t));
    }

    #[test]
    fn sampling_agrees_with_symbolic_checks() {
        let chart = UniversalChart::new(3, &[2, 3]).unwrap();
        let t = build_Tj(&chart, 1).unwrap();
        assert!(point_tangency_check(&chart, &t, 20, 1).unwrap().all_zero());
        assert!(point_tangency_check(&chart, &VectorField::zero(&chart), 5, 1).unwrap().all_zero());
        let v = chart.coeff_var(0, &[0, 1, 0]).unwrap();
        let broken = t.with_flipped_component(&chart, v);
        let report = point_tangency_check(&chart, &broken, 10, 3).unwrap();
        assert!(!report.all_zero());
    }

    #[test]
    fn family_reports() {
        for fam in [Family::Solved, Family::Tj, Family::Tlambda] {
            let r = verify_family(3, &[2, 2], fam, 5, 11).unwrap();
            assert!(r.passed(), "{fam}");
        }
        let r = verify_family(3, &[2], Family::Talpha, 3, 11).unwrap();
        assert_eq!(r.identical_vanishing, serde_json::json!("n/a"));
        assert_eq!(r.pole_orders.len(), 2);
        assert!("nope".parse::<Family>().is_err());
        let json = serde_json::to_value(verify_family(2, &[1], Family::Tj, 2, 0).unwrap()).unwrap();
        assert_eq!(json["family"], "tj");
        assert_eq!(json["identical_vanishing"], true);
    }
}
