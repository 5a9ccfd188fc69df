mod common;

use common::{cofactor_det, int, naive_det_sequence, naive_moments, principal_minors_psd, q, seeded_measure};
use moment_core::exact_algebra::sturm::{cauchy_bound, sign_variations, sign_variations_at_infinity, sturm_chain};
use moment_core::exact_algebra::{poly_eval, scalar::ten_pow_neg};
use moment_core::hankel::classify_with_determinants;
use moment_core::identities::SplitMix64;
use moment_core::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = ExactScalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn distinct_rationals(max: usize) -> impl Strategy<Value = Vec<ExactScalar>> {
    proptest::collection::btree_set((-12i64..=12, 1i64..=5).prop_map(|(n, d)| q(n, d)), 1..=max)
        .prop_map(|s| s.into_iter().collect())
}

#[test]
fn poly_eval_matches_power_sum() {
    // 3x^2 - 12 at 1: 3 - 12
    let p = RationalPoly::from_ints(&[-12, 0, 3]);
    assert_eq!(poly_eval(&p, &int(1)), int(-9));
    assert_eq!(poly_eval(&RationalPoly::from_ints(&[-4, 0, 1]), &int(2)), int(0));
    assert_eq!(poly_eval(&RationalPoly::zero(), &int(7)), int(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn horner_matches_power_sum(coeffs in proptest::collection::vec(rational(), 0..7), x in rational()) {
        let p = RationalPoly::new(coeffs.clone());
        let direct = coeffs.iter().enumerate().fold(ExactScalar::zero(), |acc, (j, c)| acc + c * num_traits::pow(x.clone(), j));
        prop_assert_eq!(poly_eval(&p, &x), direct);
    }

    #[test]
    fn planted_rational_roots_found_exactly(roots in distinct_rationals(6), scale in rational()) {
        prop_assume!(!scale.is_zero());
        let p = RationalPoly::from_roots(&roots).scale(&scale);
        let found = sturm_isolate(&p).unwrap();
        let exact: Vec<ExactScalar> = found.iter().map(|iv| iv.exact().cloned().expect("exact root")).collect();
        prop_assert_eq!(exact, roots);
    }

    #[test]
    fn isolating_intervals_bracket_and_count(coeffs in proptest::collection::vec(-9i64..=9, 2..8)) {
        let p = RationalPoly::from_ints(&coeffs);
        prop_assume!(p.degree().unwrap_or(0) >= 1 && p.is_square_free());
        let found = sturm_isolate(&p).unwrap();
        for iv in &found {
            let a = poly_eval(&p, iv.lo());
            let b = poly_eval(&p, iv.hi());
            prop_assert!(a.is_zero() || b.is_zero() || (a.is_positive() != b.is_positive()));
        }
        for w in found.windows(2) {
            prop_assert!(w[0].hi() < w[1].lo());
        }
        let chain = sturm_chain(&p);
        let b = cauchy_bound(&p) + int(1);
        let count = sign_variations(&chain, &-b.clone()) - sign_variations(&chain, &b);
        prop_assert_eq!(found.len(), count);
        let at_inf = sign_variations_at_infinity(&chain, true) - sign_variations_at_infinity(&chain, false);
        prop_assert_eq!(found.len(), at_inf);
    }

    #[test]
    fn refinement_is_nested_and_idempotent(coeffs in proptest::collection::vec(-9i64..=9, 3..7), digits in 1u32..12) {
        let p = RationalPoly::from_ints(&coeffs);
        prop_assume!(p.degree().unwrap_or(0) >= 1 && p.is_square_free());
        for iv in sturm_isolate(&p).unwrap() {
            let r = refine_root(&iv, digits);
            prop_assert!(r.lo() >= iv.lo() && r.hi() <= iv.hi());
            prop_assert!(r.width() <= ten_pow_neg(digits));
            prop_assert_eq!(refine_root(&r, digits), r.clone());
            let a = poly_eval(&p, r.lo());
            let b = poly_eval(&p, r.hi());
            prop_assert!(a.is_zero() || b.is_zero() || (a.is_positive() != b.is_positive()));
        }
    }
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut rng = SplitMix64::new(2024);
    for trial in 0..500 {
        let n = rng.range_usize(0, 5);
        let mut m = common::random_matrix(&mut rng, n);
        // Force repeated and zero rows now and then to exercise pivoting.
        if n >= 2 && trial % 5 == 0 {
            for j in 0..n {
                m[(0, j)] = ExactScalar::zero();
            }
        }
        if n >= 2 && trial % 7 == 0 {
            for j in 0..n {
                m[(n - 1, j)] = m[(1, j)].clone();
            }
        }
        assert_eq!(det_exact(&m).unwrap(), cofactor_det(&m), "trial {trial}: {m}");
    }
}

#[test]
fn psd_test_matches_principal_minors() {
    let mut rng = SplitMix64::new(99);
    let (mut yes, mut no) = (0, 0);
    for trial in 0..200 {
        let n = rng.range_usize(1, 5);
        let m = common::random_symmetric(&mut rng, n);
        let expected = principal_minors_psd(&m);
        assert_eq!(is_psd(&m).unwrap(), expected, "trial {trial}: {m}");
        if expected {
            yes += 1
        } else {
            no += 1
        }
    }
    assert!(yes > 20 && no > 20, "unbalanced sample: {yes} psd, {no} not");
}

#[test]
fn counterexample_has_nonnegative_minors_but_is_not_psd() {
    let w = MomentWindow::from_ints(&[1, 1, 1, 1, 0]);
    let d = det_sequence(&w);
    assert!(d.iter().all(|v| !v.is_negative()));
    assert!(!is_psd(&hankel_matrix(&w, 2).unwrap()).unwrap());
    assert_eq!(classify(&w), Classification::Degenerate { n0: 1, window_consistent: false });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atom_count_fixes_the_determinant_pattern(n in 1usize..=5, extra in 0usize..3, seed in any::<u64>()) {
        let mu = seeded_measure(n, seed);
        let pairs = mu.exact_pairs().unwrap();
        let len = 2 * (n + extra) + 1;
        let s = naive_moments(&pairs, len);
        let w = MomentWindow::new(s.clone()).unwrap();
        let d = det_sequence(&w);
        prop_assert_eq!(&d, &naive_det_sequence(&s));
        for (k, v) in d.iter().enumerate() {
            if k < n { prop_assert!(v.is_positive()) } else { prop_assert!(v.is_zero()) }
        }
        prop_assert_eq!(classify(&w), Classification::Degenerate { n0: n, window_consistent: true });
        for k in 0..=w.horizon() {
            prop_assert!(is_psd(&hankel_matrix(&w, k).unwrap()).unwrap());
        }
    }

    #[test]
    fn classification_follows_the_scan(s in proptest::collection::vec(-3i64..=3, 1..8)) {
        let w = MomentWindow::from_ints(&s);
        let (class, d) = classify_with_determinants(&w);
        let negative = d.iter().position(|v| v.is_negative());
        let zero_then_pos = d.iter().position(|v| v.is_zero()).and_then(|z| d[z..].iter().position(|v| !v.is_zero()).map(|i| i + z));
        match class {
            Classification::Invalid { first_violation, reason } => match reason {
                InvalidReason::ZeroS0NonzeroTail => prop_assert!(s[0] == 0 && s.iter().any(|&v| v != 0)),
                _ => {
                    prop_assert!(s[0] != 0);
                    let first = [negative, zero_then_pos].into_iter().flatten().min();
                    prop_assert_eq!(Some(first_violation), first);
                }
            },
            Classification::PositiveWindow { horizon } => {
                prop_assert_eq!(horizon, w.horizon());
                prop_assert!(d.iter().all(|v| v.is_positive()));
            }
            Classification::Degenerate { n0, window_consistent } => {
                prop_assert!(negative.is_none() && zero_then_pos.is_none());
                if s[0] != 0 {
                    prop_assert!(d[..n0].iter().all(|v| v.is_positive()));
                    prop_assert!(d[n0..].iter().all(|v| v.is_zero()));
                } else {
                    prop_assert!(n0 == 0 && s.iter().all(|&v| v == 0));
                }
                if window_consistent {
                    for k in 0..=w.horizon() {
                        prop_assert!(is_psd(&hankel_matrix(&w, k).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonal_polynomials_of_measure_windows(n in 1usize..=4, extra in 0usize..3, seed in any::<u64>()) {
        let mu = seeded_measure(n + extra, seed);
        let s = naive_moments(&mu.exact_pairs().unwrap(), 2 * (n + extra) + 1);
        let w = MomentWindow::new(s.clone()).unwrap();
        let form = MomentForm::new(w.clone());
        let d = det_sequence(&w);
        for deg in 1..=w.horizon() {
            let p = orthogonal_poly(&w, deg).unwrap();
            prop_assert_eq!(p.leading().cloned().unwrap_or_else(ExactScalar::zero), d[deg - 1].clone());
            prop_assert_eq!(form.inner_product(&p, &p).unwrap(), &d[deg - 1] * &d[deg]);
            for k in 0..deg {
                prop_assert!(form.inner_product(&p, &RationalPoly::monomial(k)).unwrap().is_zero());
            }
        }
        let n0 = n + extra;
        let kernel = monic_orthogonal_poly(&w, n0).unwrap();
        prop_assert!(kernel.is_square_free());
        prop_assert_eq!(sturm_isolate(&kernel).unwrap().len(), n0);
    }

    #[test]
    fn measure_to_moments_to_measure(n in 1usize..=5, seed in any::<u64>()) {
        let mu = seeded_measure(n, seed);
        let s = measure_moments(&mu, 2 * n + 1, DEFAULT_DIGITS);
        let s: Vec<ExactScalar> = s.iter().map(|v| v.exact().cloned().unwrap()).collect();
        prop_assert_eq!(&s, &naive_moments(&mu.exact_pairs().unwrap(), 2 * n + 1));
        let back = reconstruct(&MomentWindow::new(s).unwrap(), DEFAULT_DIGITS).unwrap();
        prop_assert_eq!(back, mu);
    }

    #[test]
    fn extension_is_coherent_and_agrees_with_the_measure(n in 1usize..=4, seed in any::<u64>(), t in 0usize..=10) {
        let mu = seeded_measure(n, seed);
        let pairs = mu.exact_pairs().unwrap();
        let m_len = 2 * n + 1;
        let w = MomentWindow::new(naive_moments(&pairs, m_len)).unwrap();
        let ext = extend(&w, t).unwrap();
        prop_assert_eq!(&ext[..], &naive_moments(&pairs, m_len + t)[m_len..]);
        let longer = w.extended(ext);
        prop_assert_eq!(classify(&longer), Classification::Degenerate { n0: n, window_consistent: true });
        let rebuilt = reconstruct(&w, DEFAULT_DIGITS).unwrap();
        let from_measure = measure_moments(&rebuilt, m_len + t, DEFAULT_DIGITS);
        prop_assert_eq!(longer.moments(), &from_measure.iter().map(|v| v.exact().cloned().unwrap()).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn perturbing_an_extended_term_breaks_degeneracy(n in 1usize..=4, seed in any::<u64>(), t in 1usize..=4, eps in rational()) {
        prop_assume!(!eps.is_zero());
        let mu = seeded_measure(n, seed);
        let w = MomentWindow::new(naive_moments(&mu.exact_pairs().unwrap(), 2 * n + 1)).unwrap();
        let mut ext = extend(&w, t).unwrap();
        let idx = ext.len() - 1;
        ext[idx] += &eps;
        let perturbed = w.extended(ext);
        prop_assert_ne!(classify(&perturbed), Classification::Degenerate { n0: n, window_consistent: true });
    }
}

#[test]
fn irrational_round_trip_reproduces_every_window_term() {
    // a = 3 example: atoms +-sqrt3.
    let s: Vec<i64> = (0..9).map(|k| 3i64.pow(k / 2)).collect();
    let w = MomentWindow::from_ints(&s);
    assert_eq!(classify(&w), Classification::Degenerate { n0: 2, window_consistent: true });
    let mu = reconstruct(&w, 40).unwrap();
    assert!(mu.atoms().iter().all(|a| a.exact().is_none()));
    let tol = ten_pow_neg(40);
    for (m, target) in measure_moments(&mu, w.len(), 40).iter().zip(w.moments()) {
        assert!(m.contains(target), "{m:?} misses {target}");
        assert!(m.enclosure().width() <= tol);
    }
}
