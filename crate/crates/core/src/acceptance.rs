//! End-to-end acceptance checks shared by `segrejet selftest` and the
//! `acceptance` integration test. Each criterion reports pass/fail, a
//! one-line detail and its runtime against a fixed budget.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{ceil_to_int, gamma_dim2, gamma_rough, gamma_rough_limit, gamma_rough_quoted_limit, symmetric_positivity_threshold, D_coeff};
use crate::chow::{segre_closed_form, segre_cotangent, twist_segre, ChowClass, ModelParams};
use crate::error::Result;
use crate::jet::{ell_class_at, ell_sum, expand_segre, integrate_base, integrate_jet, kappa_degree_search, morse_certificate, JetClass};
use crate::poly::{binomial, elementary_symmetric, Degree, MultidegreePoly};
use crate::schur::{duality_holds, integer_classes, positivity_report};
use crate::vecfields::{
    build_Tj, build_low_coeff_field, default_pivot, identically_tangent, point_tangency_check, random_free_data,
    UniversalChart,
};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
    #[serde(serialize_with = "ser_secs")]
    pub budget: Duration,
    /// For criteria that fail as stated: whether the weaker, provable
    /// statement behind them holds.
    pub fallback_holds: Option<bool>,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {:<32} {:>8.2}s / {:>4}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

struct Check {
    passed: bool,
    detail: String,
    fallback: Option<bool>,
}

impl Check {
    fn plain(passed: bool, detail: String) -> Self {
        Check {
            passed,
            detail,
            fallback: None,
        }
    }
}

pub const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "segre closed form", 10),
    (2, "chern/segre duality", 30),
    (3, "surface coefficients", 1),
    (4, "flagship threshold", 1),
    (5, "kappa=1 pipeline", 60),
    (6, "jet dominant identity", 300),
    (7, "integral degree bounds", 60),
    (8, "threshold soundness", 60),
    (9, "vector field tangency", 120),
    (10, "rough bound consistency", 10),
];

pub fn run_criterion(id: u8, seed: u64) -> Result<CriterionOutcome> {
    let &(_, name, secs) = CRITERIA
        .iter()
        .find(|(i, _, _)| *i == id)
        .ok_or_else(|| crate::error::arg_err!("no criterion {id}; expected 1..=10"))?;
    let start = Instant::now();
    let check = match id {
        1 => segre_closed_form_check(),
        2 => duality_check(seed),
        3 => surface_coefficients_check(),
        4 => flagship_check(),
        5 => kappa_one_check(),
        6 => jet_dominant_check(),
        7 => integral_degree_check(seed),
        8 => threshold_soundness_check(seed),
        9 => tangency_check(seed),
        _ => rough_bound_check(),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(secs);
    let (passed, detail, fallback) = match check {
        Ok(c) => (c.passed, c.detail, c.fallback),
        Err(e) => (false, format!("error: {e}"), None),
    };
    let over = elapsed > budget;
    Ok(CriterionOutcome {
        id,
        name,
        passed: passed && !over,
        detail: if over {
            format!("{detail}; over budget")
        } else {
            detail
        },
        elapsed,
        budget,
        fallback_holds: fallback,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .map(|&(id, _, _)| run_criterion(id, seed).expect("known criterion"))
        .collect()
}

fn params(big_n: usize, n: usize) -> Result<ModelParams> {
    ModelParams::new(big_n, n)
}

fn segre_closed_form_check() -> Result<Check> {
    let mut cases = 0;
    for big_n in 2..=10 {
        for c in 1..big_n {
            let p = params(big_n, big_n - c)?;
            let product = segre_cotangent(p, 0);
            for (j, s) in product.iter().enumerate() {
                if *s.coeff(j) != segre_closed_form(p, j)? {
                    return Ok(Check::plain(false, format!("mismatch at N={big_n} c={c} j={j}")));
                }
                cases += 1;
            }
        }
    }
    let mut twists = 0;
    for big_n in 2..=6 {
        for c in 1..big_n {
            let p = params(big_n, big_n - c)?;
            let base = segre_cotangent(p, 0);
            for m in -3i64..=3 {
                let l = ChowClass::pure(p, 1, MultidegreePoly::constant(c, m));
                if twist_segre(&base, p.dim() as i64, &l)? != segre_cotangent(p, m) {
                    return Ok(Check::plain(false, format!("twist mismatch at N={big_n} c={c} m={m}")));
                }
                twists += 1;
            }
        }
    }
    Ok(Check::plain(
        true,
        format!("{cases} closed-form coefficients, {twists} twists"),
    ))
}

fn duality_check(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..200 {
        let mut values = vec![1i64];
        values.extend((0..8).map(|_| rng.gen_range(-20..=20)));
        if !duality_holds(&integer_classes(&values), 8)? {
            return Ok(Check::plain(false, format!("trial {trial}: {values:?}")));
        }
    }
    Ok(Check::plain(true, "200 sequences, all partitions of weight <= 8".into()))
}

fn surface_coefficients_check() -> Result<Check> {
    for big_n in 4..=12i64 {
        for a in 0..=6i64 {
            let expected = [
                binomial(big_n + 2, big_n) + BigInt::from(3 * a * (big_n + 1) - 12 * (a + 1)),
                BigInt::from(-(big_n + 1) - 3 * a),
                BigInt::one(),
            ];
            for (j, e) in expected.iter().enumerate() {
                let got = D_coeff(big_n as usize, 2, a, j)?;
                if got != *e {
                    return Ok(Check::plain(false, format!("N={big_n} a={a} j={j}: {got} != {e}")));
                }
            }
        }
    }
    Ok(Check::plain(true, "63 (N, a) pairs".into()))
}

fn flagship_check() -> Result<Check> {
    let gamma = gamma_dim2(4, 4)?;
    let p = params(4, 2)?;
    let at34 = morse_certificate(p, 4, Some(&[34, 34]))?.value.unwrap_or_default();
    let at33 = morse_certificate(p, 4, Some(&[33, 33]))?.value.unwrap_or_default();
    let frontier = kappa_degree_search(p, 4, 200)?;
    let passed = gamma == BigRational::from_integer(34.into())
        && at34 == BigInt::from(15)
        && at33 == BigInt::from(-18)
        && frontier == Some(34);
    Ok(Check::plain(
        passed,
        format!(
            "gamma_dim2 = {gamma}, value(34,34) = {at34}, value(33,33) = {at33}, frontier = {frontier:?}"
        ),
    ))
}

fn kappa_one_check() -> Result<Check> {
    let mut cases = 0;
    for c in 1..=6 {
        for n in 1..=c {
            let big_n = n + c;
            let p = params(big_n, n)?;
            for a in [0, big_n as i64] {
                let got = morse_certificate(p, a, None)?.difference;
                let mut expected = MultidegreePoly::zero(c);
                for j in 0..=n {
                    let e = elementary_symmetric(j as i64, c)?.scale(&D_coeff(big_n, n, a, j)?);
                    expected = &expected + &e;
                }
                if got != expected {
                    return Ok(Check::plain(false, format!("N={big_n} n={n} a={a}")));
                }
                cases += 1;
            }
        }
    }
    Ok(Check::plain(true, format!("{cases} (N, n, a) cases")))
}

/// Degree-`N` parts of `int (sum l_i)^{n_kappa}`, of the single monomial
/// `int l_kappa^{b+n-1} l_{kappa-1}^{c+n-1} ... l_1^{c+n-1}`, and of
/// `int_X s_b s_c^{kappa-1}`.
pub fn jet_dominant_parts(p: ModelParams) -> Result<[MultidegreePoly; 3]> {
    let big = p.ambient() as u32;
    let (n, c, kappa, b) = (p.dim(), p.codim(), p.kappa(), p.b());
    let full = integrate_jet(&ell_sum(p).pow(p.jet_dim(kappa) as u32))
        .value
        .homogeneous_part(big);
    let mut mono = ell_class_at(p, kappa, kappa)?.pow((b + n - 1) as u32);
    for j in 1..kappa {
        mono = mono.mul(&ell_class_at(p, j, kappa)?.pow((c + n - 1) as u32))?;
    }
    let mono = integrate_jet(&mono).value.homogeneous_part(big);
    let mut idx = vec![b];
    idx.extend(std::iter::repeat_n(c, kappa - 1));
    let base = integrate_base(p, &idx, 0).homogeneous_part(big);
    Ok([full, mono, base])
}

/// Both sides of the reduction step from level `k` to `k - 1`:
/// `int_{X_k} s_{k,b} s_{k,c}^{kappa-k-1} l_k^{c+n-1} ... l_1^{c+n-1}` and
/// `int_{X_{k-1}} s_{k-1,b} s_{k-1,c}^{kappa-k} l_{k-1}^{c+n-1} ... l_1^{c+n-1}`.
pub fn reduction_step(p: ModelParams, k: usize) -> Result<(MultidegreePoly, MultidegreePoly)> {
    let (n, c, kappa, b) = (p.dim(), p.codim(), p.kappa(), p.b());
    let side = |level: usize, c_power: usize| -> Result<MultidegreePoly> {
        let segre = |i: usize| {
            if level == 0 {
                JetClass::base_segre(p, 0, i as i64)
            } else {
                expand_segre(p, level, i as i64)
            }
        };
        let mut x = segre(b).mul(&segre(c).pow(c_power as u32))?;
        for j in 1..=level {
            x = x.mul(&ell_class_at(p, j, level)?.pow((c + n - 1) as u32))?;
        }
        Ok(integrate_jet(&x).value)
    };
    Ok((side(k, kappa - k - 1)?, side(k - 1, kappa - k)?))
}

fn jet_dominant_check() -> Result<Check> {
    let mut passed = true;
    let mut fallback = true;
    let mut notes = Vec::new();
    for (n, c) in [(2, 1), (2, 2), (3, 2)] {
        let p = ModelParams::from_dim_codim(n, c)?;
        let [full, mono, base] = jet_dominant_parts(p)?;
        let equal = full == base;
        passed &= equal;
        // the weaker statement: the monomial term alone reproduces the
        // dominant part and the full power dominates it coefficientwise
        let dominated = (&full - &base).terms().all(|(_, v)| !v.is_negative());
        fallback &= mono == base && dominated;
        let ratio = match (full.terms().next(), base.terms().next()) {
            (Some((m, v)), Some(_)) => format!("{}", BigRational::new(v.clone(), base.coeff(m.exps())) ),
            _ => "-".into(),
        };
        notes.push(format!("(n,c)=({n},{c}) {}x", if equal { "1".into() } else { ratio }));
    }
    Ok(Check {
        passed,
        detail: format!(
            "full power / target: {}; monomial term matches and full power dominates: {fallback}",
            notes.join(", ")
        ),
        fallback: Some(fallback),
    })
}

fn random_composition(rng: &mut impl Rng, total: usize, parts: usize) -> Vec<usize> {
    let mut out = vec![0; parts];
    for _ in 0..total {
        out[rng.gen_range(0..parts)] += 1;
    }
    out.sort_unstable();
    out
}

fn integral_degree_check(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut violations = Vec::new();
    let finite = |d: Degree| d.finite().map(|x| x as usize);
    while cases < 600 {
        let big_n = rng.gen_range(3..=8);
        let n = rng.gen_range(1..big_n);
        let p = params(big_n, n)?;
        let c = p.codim();
        match cases % 3 {
            0 => {
                let l = rng.gen_range(1..=n);
                let parts = rng.gen_range(1..=3);
                let idx = random_composition(&mut rng, n - l, parts);
                let deg = finite(integrate_base(p, &idx, l as u32).total_degree());
                if deg.is_some_and(|d| d >= big_n) {
                    violations.push(format!("L1 N={big_n} n={n} {idx:?} h^{l}"));
                }
            }
            1 => {
                let parts = rng.gen_range(1..=4);
                let idx = random_composition(&mut rng, n, parts);
                let deg = finite(integrate_base(p, &idx, 0).total_degree());
                let top = deg == Some(big_n);
                if top != (idx.iter().max().copied().unwrap_or(0) <= c) {
                    violations.push(format!("L2 N={big_n} n={n} {idx:?} deg {deg:?}"));
                }
            }
            _ => {
                let kappa = p.kappa();
                let b = p.b();
                let idx = random_composition(&mut rng, n, kappa);
                let low = idx[0] < b || (idx[0] == b && idx[1..].iter().any(|&i| i < c));
                if low {
                    let deg = finite(integrate_base(p, &idx, 0).total_degree());
                    if deg.is_some_and(|d| d >= big_n) {
                        violations.push(format!("L3 N={big_n} n={n} {idx:?}"));
                    }
                }
            }
        }
        cases += 1;
    }
    Ok(Check::plain(
        violations.is_empty(),
        if violations.is_empty() {
            format!("{cases} integrands, no violations")
        } else {
            format!("{} violations, first {}", violations.len(), violations[0])
        },
    ))
}

fn positive_on_grid(p: &MultidegreePoly, start: &BigInt, width: i64) -> Result<bool> {
    let c = p.num_vars();
    let start: i64 = start.try_into().unwrap_or(i64::MAX / 4).max(1);
    let mut point = vec![0i64; c];
    let total = (width as usize).pow(c as u32);
    for idx in 0..total {
        let mut r = idx;
        for x in point.iter_mut() {
            *x = start + (r % width as usize) as i64;
            r /= width as usize;
        }
        if !p.eval_i64(&point)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn threshold_soundness_check(seed: u64) -> Result<Check> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for big_n in 2..=7 {
        for n in 1..=big_n / 2 {
            for a in 0..=3 {
                let report = positivity_report(params(big_n, n)?, a)?;
                for rec in &report.records {
                    if let Some(r) = &rec.threshold {
                        instances += 1;
                        if !positive_on_grid(&rec.polynomial, &ceil_to_int(r), 4)? {
                            failures.push(format!("N={big_n} n={n} a={a} {}", rec.lambda));
                        }
                    }
                }
                if let Some(d) = &report.threshold {
                    for rec in &report.records {
                        if !positive_on_grid(&rec.polynomial, &ceil_to_int(d), 2)? {
                            failures.push(format!("D for N={big_n} n={n} a={a}"));
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let c = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=c);
        let mut coeffs: Vec<(usize, BigRational)> = (0..k)
            .map(|j| (j, BigRational::from_integer(rng.gen_range(-30..=30).into())))
            .collect();
        coeffs.push((k, BigRational::one()));
        let r = symmetric_positivity_threshold(&coeffs, c, k)?;
        let mut poly = MultidegreePoly::zero(c);
        for (j, a) in &coeffs {
            poly = &poly + &elementary_symmetric(*j as i64, c)?.scale(a.numer());
        }
        instances += 1;
        if !positive_on_grid(&poly, &ceil_to_int(&r), 5)? {
            failures.push(format!("symmetric {coeffs:?}"));
        }
    }
    Ok(Check::plain(
        failures.is_empty() && instances >= 100,
        if failures.is_empty() {
            format!("{instances} thresholds validated on grids")
        } else {
            format!("{} failures, first {}", failures.len(), failures[0])
        },
    ))
}

fn tangency_check(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fields = 0;
    let mut failures = Vec::new();
    let mut max_z = 0;
    let mut max_a = 0;
    for big_n in 1..=4usize {
        let mut shapes: Vec<Vec<u32>> = (1..=3).map(|d| vec![d]).collect();
        for d1 in 1..=3 {
            for d2 in d1..=3 {
                shapes.push(vec![d1, d2]);
            }
        }
        for degrees in shapes {
            let chart = UniversalChart::new(big_n, &degrees)?;
            let mut built = Vec::new();
            for i in 0..degrees.len() {
                // N = 1, d = 1 leaves no linear coefficient to solve for
                if let Ok(pivot) = default_pivot(&chart, i) {
                    let data = random_free_data(&chart, i, pivot, 9, &mut rng);
                    let t = build_low_coeff_field(&chart, i, &data, Some(pivot))?;
                    if t.pole_orders().z > big_n as u32 {
                        failures.push(format!("{} z-degree {}", t.label(), t.pole_orders().z));
                    }
                    max_z = max_z.max(t.pole_orders().z);
                    built.push(t);
                }
            }
            for j in 0..big_n {
                let t = build_Tj(&chart, j)?;
                if t.pole_orders().a > 1 {
                    failures.push(format!("{} a-degree {}", t.label(), t.pole_orders().a));
                }
                max_a = max_a.max(t.pole_orders().a);
                built.push(t);
            }
            for (idx, t) in built.iter().enumerate() {
                fields += 1;
                if !identically_tangent(&chart, t) {
                    failures.push(format!("N={big_n} d={degrees:?} {} not tangent", t.label()));
                }
                let report = point_tangency_check(&chart, t, 100, seed.wrapping_add(idx as u64))?;
                if !report.all_zero() {
                    failures.push(format!("N={big_n} d={degrees:?} {} residuals", t.label()));
                }
            }
        }
    }
    Ok(Check::plain(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{fields} fields, 100 samples each; max z-degree (solved) {max_z}, max a-degree (T_j) {max_a}")
        } else {
            format!("{} failures, first {}", failures.len(), failures[0])
        },
    ))
}

fn rough_bound_check() -> Result<Check> {
    for big_n in 4..=12 {
        for a in 0..=6 {
            if gamma_rough(big_n, 2, a)? < gamma_dim2(big_n, a)? {
                return Ok(Check::plain(false, format!("rough < dim2 at N={big_n} a={a}")));
            }
        }
    }
    let quoted = BigRational::from_integer(gamma_rough_quoted_limit(2));
    let limit = BigRational::from_integer(gamma_rough_limit(2));
    let mut prev: Option<BigRational> = None;
    let mut monotone = true;
    for big_n in 4..=200usize {
        let g = gamma_rough(big_n, 2, big_n as i64)?;
        monotone &= g > quoted && prev.as_ref().is_none_or(|p| g < *p);
        prev = Some(g);
    }
    let last = prev.unwrap_or_else(BigRational::zero);
    let approaches = limit == quoted;
    Ok(Check {
        passed: monotone && approaches,
        detail: format!(
            "rough >= dim2 on grid; decreasing and above {quoted} up to N=200 (value {:.4}); exact limit {limit}",
            rational_to_f64(&last)
        ),
        fallback: Some(monotone && last > limit),
    })
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
