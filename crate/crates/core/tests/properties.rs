use proptest::prelude::*;

use segrejet::acceptance::{jet_dominant_parts, reduction_step};
use segrejet::chow::{segre_cotangent, ModelParams};
use segrejet::jet::integrate_base;
use segrejet::poly::elementary_symmetric;
use segrejet::{Degree, MultidegreePoly};

fn top(p: &MultidegreePoly, params: ModelParams) -> MultidegreePoly {
    p.homogeneous_part(params.ambient() as u32)
}

#[test]
fn reduction_steps_agree_in_top_degree() {
    let mut checked = 0;
    for big_n in 3..=7 {
        for n in 1..big_n {
            let p = ModelParams::new(big_n, n).unwrap();
            if p.kappa() < 2 {
                continue;
            }
            for k in 1..p.kappa() {
                let (lhs, rhs) = reduction_step(p, k).unwrap();
                assert_eq!(top(&lhs, p), top(&rhs, p), "N={big_n} n={n} k={k}");
                assert_eq!(top(&rhs, p).total_degree(), Degree::Finite(big_n as u32));
                checked += 1;
            }
        }
    }
    assert!(checked >= 10);
}

#[test]
fn leading_jet_monomial_reduces_to_base_integral() {
    for (n, c) in [(2, 1), (2, 2), (3, 2), (3, 1), (4, 2)] {
        let p = ModelParams::from_dim_codim(n, c).unwrap();
        let [full, mono, base] = jet_dominant_parts(p).unwrap();
        assert_eq!(mono, base, "n={n} c={c}");
        assert!(!base.is_zero());
        assert!((&full - &base).terms().all(|(_, v)| v >= &0.into()));
    }
}

#[test]
fn dominant_segre_classes_are_elementary() {
    for big_n in 3..=7 {
        for n in 1..big_n {
            let p = ModelParams::new(big_n, n).unwrap();
            let c = p.codim();
            for m in -2..=2 {
                for (l, s) in segre_cotangent(p, m).iter().enumerate().take(c + 1) {
                    let e = elementary_symmetric(l as i64, c).unwrap();
                    assert_eq!(s.coeff(l).dominant_part(), e, "N={big_n} n={n} m={m} l={l}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn base_integrals_have_predicted_degree(
        big_n in 3usize..=7,
        n_frac in 0.0f64..1.0,
        cuts in proptest::collection::vec(0.0f64..1.0, 0..3),
    ) {
        let n = 1 + ((big_n - 1) as f64 * n_frac) as usize;
        let n = n.min(big_n - 1);
        let p = ModelParams::new(big_n, n).unwrap();
        let c = p.codim();
        let mut points: Vec<usize> = cuts.iter().map(|x| (x * n as f64) as usize).collect();
        points.sort_unstable();
        let mut idx = Vec::new();
        let mut prev = 0;
        for q in points.into_iter().chain([n]) {
            idx.push(q - prev);
            prev = q;
        }
        // deg s~_i = min(i, c), plus c from the fundamental class
        let predicted: usize = idx.iter().map(|&i| i.min(c)).sum::<usize>() + c;
        let value = integrate_base(p, &idx, 0);
        prop_assert_eq!(value.total_degree(), Degree::Finite(predicted as u32));
    }
}
