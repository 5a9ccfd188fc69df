//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{cofactor_det, int, naive_moments, principal_minors_psd, q, random_symmetric};
use moment_core::identities::{
    det2_check, random_det1_instance, random_det2_instance, resample_fill, InstanceBounds, SplitMix64,
};
use moment_core::{
    classify, det_exact, det_sequence, extend, hankel_matrix, is_psd, reconstruct, Classification, DiscreteMeasure,
    ExactScalar, MomentWindow, DEFAULT_DIGITS,
};
use num_traits::{Signed, Zero};

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const CAMPAIGN_SEED: u64 = 0x5EED_0001;

fn exact_pairs(mu: &DiscreteMeasure) -> Result<Vec<(ExactScalar, ExactScalar)>, String> {
    mu.exact_pairs().ok_or_else(|| format!("measure is not exact: {mu:?}"))
}

/// The 200 random measures shared by criteria 3-5: `n <= 5` atoms, window
/// long enough for horizon `n + 2`.
fn criterion3_windows() -> Vec<(usize, DiscreteMeasure, MomentWindow)> {
    let mut rng = SplitMix64::new(CAMPAIGN_SEED);
    (0..200)
        .map(|_| {
            let n = rng.range_usize(1, 5);
            let mu = common::seeded_measure(n, rng.next_u64());
            let s = naive_moments(&mu.exact_pairs().unwrap(), 2 * (n + 2) + 1);
            (n, mu, MomentWindow::new(s).unwrap())
        })
        .collect()
}

fn zero_run_counterexample() -> Outcome {
    let w = MomentWindow::from_ints(&[1, 1, 1, 1, 0, 0, 0]);
    let class = classify(&w);
    ensure!(matches!(class, Classification::Invalid { first_violation: 3, .. }), "classification {class:?}");
    let d = det_sequence(&w);
    ensure!(d == [int(1), int(0), int(0), int(1)], "determinants {d:?}");
    let h2 = hankel_matrix(&w, 2).map_err(|e| e.to_string())?;
    ensure!(!is_psd(&h2).map_err(|e| e.to_string())?, "H_2 reported PSD");
    Ok(())
}

fn two_atom_example(
    a: ExactScalar,
    root: ExactScalar,
    lower_branch: bool,
    expect_weights: [ExactScalar; 2],
) -> Outcome {
    // a >= 1: s_{2n} = s_{2n+1} = a^n.  0 <= a <= 1: s_0 = 1, s_{2n-1} = s_{2n} = a^n.
    let term = |k: usize| {
        let e = if lower_branch { k.div_ceil(2) } else { k / 2 };
        num_traits::pow(a.clone(), e)
    };
    let w = MomentWindow::new((0..5).map(term).collect()).unwrap();
    let class = classify(&w);
    ensure!(class == Classification::Degenerate { n0: 2, window_consistent: true }, "classification {class:?}");
    let mu = reconstruct(&w, DEFAULT_DIGITS).map_err(|e| e.to_string())?;
    let pairs = exact_pairs(&mu)?;
    let expected = vec![(-root.clone(), expect_weights[0].clone()), (root, expect_weights[1].clone())];
    ensure!(pairs == expected, "measure {pairs:?}, expected {expected:?}");
    let ext = extend(&w, 4).map_err(|e| e.to_string())?;
    let want: Vec<ExactScalar> = (5..9).map(term).collect();
    ensure!(ext == want, "extension {ext:?}, expected {want:?}");
    Ok(())
}

fn two_atom_examples() -> Outcome {
    // a = 4: weights (sqrt a -+ 1) / (2 sqrt a) = 1/4, 3/4.
    two_atom_example(int(4), int(2), false, [q(1, 4), q(3, 4)])?;
    let ext = extend(&MomentWindow::from_ints(&[1, 1, 4, 4, 16]), 4).map_err(|e| e.to_string())?;
    ensure!(ext == [int(16), int(64), int(64), int(256)], "extension {ext:?}");
    // a = 1/4: weights (1 -+ sqrt a) / 2 = 1/4, 3/4.
    two_atom_example(q(1, 4), q(1, 2), true, [q(1, 4), q(3, 4)])
}

fn determinant_pattern(cases: &[(usize, DiscreteMeasure, MomentWindow)]) -> Outcome {
    for (i, (n, _, w)) in cases.iter().enumerate() {
        ensure!(w.horizon() >= n + 2, "case {i}: horizon {} < {}", w.horizon(), n + 2);
        let d = det_sequence(w);
        for (k, v) in d.iter().enumerate() {
            let ok = if k < *n { v.is_positive() } else { v.is_zero() };
            ensure!(ok, "case {i}: n = {n}, D_{k} = {v}");
        }
    }
    Ok(())
}

fn forward_direction(cases: &[(usize, DiscreteMeasure, MomentWindow)]) -> Outcome {
    for (i, (n, _, w)) in cases.iter().enumerate() {
        let class = classify(w);
        ensure!(
            class == Classification::Degenerate { n0: *n, window_consistent: true },
            "case {i}: {class:?}, expected n0 = {n}"
        );
        for k in 0..=w.horizon() {
            let psd = is_psd(&hankel_matrix(w, k).unwrap()).map_err(|e| e.to_string())?;
            ensure!(psd, "case {i}: H_{k} not PSD");
        }
    }
    Ok(())
}

fn converse_round_trip(cases: &[(usize, DiscreteMeasure, MomentWindow)]) -> Outcome {
    for (i, (_, mu, w)) in cases.iter().enumerate() {
        let back = reconstruct(w, DEFAULT_DIGITS).map_err(|e| format!("case {i}: {e}"))?;
        ensure!(&back == mu, "case {i}: recovered {back:?}, planted {mu:?}");
    }
    Ok(())
}

fn vanishing_determinants() -> Outcome {
    let mut rng = SplitMix64::new(CAMPAIGN_SEED ^ 1);
    let bounds = InstanceBounds::default();
    for trial in 0..200 {
        let inst = random_det1_instance(&mut rng, bounds);
        ensure!(
            inst.measure.len() <= 4 && inst.p <= 3 && *inst.cs.last().unwrap() <= 8,
            "trial {trial}: out of bounds"
        );
        let d = inst.determinant().map_err(|e| e.to_string())?;
        ensure!(d.is_zero(), "trial {trial}: determinant {d} for {inst:?}");
    }
    Ok(())
}

fn anti_diagonal_identity() -> Outcome {
    let mut rng = SplitMix64::new(CAMPAIGN_SEED ^ 2);
    let bounds = InstanceBounds::default();
    let mut collisions = 0;
    for trial in 0..200 {
        let force = trial % 4 == 0;
        let inst = random_det2_instance(&mut rng, bounds, force);
        ensure!(inst.n <= 4 && inst.p <= 3, "trial {trial}: out of bounds");
        let r = det2_check(&inst).map_err(|e| e.to_string())?;
        ensure!(r.equal, "trial {trial}: lhs {} != rhs {} for {inst:?}", r.lhs, r.rhs);
        if force {
            collisions += 1;
            ensure!(r.lhs.is_zero(), "trial {trial}: collision did not vanish");
        }
        for _ in 0..2 {
            let other = det2_check(&resample_fill(&inst, &mut rng)).map_err(|e| e.to_string())?;
            ensure!(other.lhs == r.lhs, "trial {trial}: fill changed determinant {} -> {}", r.lhs, other.lhs);
        }
    }
    ensure!(collisions == 50, "expected 50 forced collisions, ran {collisions}");
    Ok(())
}

fn geometric_case() -> Outcome {
    let mut rng = SplitMix64::new(CAMPAIGN_SEED ^ 3);
    for trial in 0..20 {
        let a = rng.small_rational(15, 7);
        let w = MomentWindow::new(vec![int(1), a.clone(), &a * &a]).unwrap();
        let class = classify(&w);
        ensure!(
            class == Classification::Degenerate { n0: 1, window_consistent: true },
            "trial {trial}: a = {a}: {class:?}"
        );
        let ext = extend(&w, 5).map_err(|e| e.to_string())?;
        let want: Vec<ExactScalar> = (3..8).map(|k| num_traits::pow(a.clone(), k)).collect();
        ensure!(ext == want, "trial {trial}: a = {a}: {ext:?}");
    }
    Ok(())
}

fn perturbation_probe() -> Outcome {
    let mut rng = SplitMix64::new(CAMPAIGN_SEED ^ 4);
    for trial in 0..50 {
        let n0 = rng.range_usize(1, 5);
        let mu = common::seeded_measure(n0, rng.next_u64());
        let mut s = naive_moments(&exact_pairs(&mu)?, 2 * (n0 + 1) + 1);
        let base = MomentWindow::new(s.clone()).unwrap();
        ensure!(classify(&base).consistent_degree() == Some(n0), "trial {trial}: base window not degenerate");
        let d_prev = det_sequence(&base)[n0 - 1].clone();
        let eps = moment_core::identities::nonzero_rational(&mut rng, 9, 7);
        s[2 * n0] += &eps;
        let w = MomentWindow::new(s).unwrap();
        let d = det_exact(&hankel_matrix(&w, n0).unwrap()).unwrap();
        ensure!(d == &eps * &d_prev, "trial {trial}: D_n0(eps) = {d}, expected {}", &eps * &d_prev);
        let class = classify(&w);
        ensure!(
            !matches!(class, Classification::Degenerate { n0: k, .. } if k == n0),
            "trial {trial}: still {class:?}"
        );
    }
    Ok(())
}

fn oracle_agreement() -> Outcome {
    let mut rng = SplitMix64::new(CAMPAIGN_SEED ^ 5);
    for trial in 0..500 {
        let n = rng.range_usize(1, 5);
        let m = common::random_matrix(&mut rng, n);
        let (fast, slow) = (det_exact(&m).unwrap(), cofactor_det(&m));
        ensure!(fast == slow, "det trial {trial}: {fast} vs {slow} for {m}");
    }
    for trial in 0..200 {
        let n = rng.range_usize(1, 5);
        let m = random_symmetric(&mut rng, n);
        let (fast, slow) = (is_psd(&m).unwrap(), principal_minors_psd(&m));
        ensure!(fast == slow, "psd trial {trial}: {fast} vs {slow} for {m}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cases = criterion3_windows();
    let criteria: Vec<Criterion> = vec![
        ("1 counterexample 1,1,1,1,0,0,0", Duration::from_secs(1), Box::new(zero_run_counterexample)),
        ("2 two-atom examples a = 4 and a = 1/4", Duration::from_secs(1), Box::new(two_atom_examples)),
        ("3 determinant pattern of n-atom measures", Duration::from_secs(60), Box::new(|| determinant_pattern(&cases))),
        ("4 forward direction: degenerate and PSD", Duration::MAX, Box::new(|| forward_direction(&cases))),
        ("5 converse: exact measure round trip", Duration::MAX, Box::new(|| converse_round_trip(&cases))),
        ("6 vanishing shifted-row determinants", Duration::from_secs(30), Box::new(vanishing_determinants)),
        ("7 anti-diagonal closed form", Duration::from_secs(30), Box::new(anti_diagonal_identity)),
        ("8 single-atom geometric continuation", Duration::MAX, Box::new(geometric_case)),
        ("9 perturbation of s_2n0", Duration::MAX, Box::new(perturbation_probe)),
        ("10 oracle agreement (det, PSD)", Duration::from_secs(60), Box::new(oracle_agreement)),
    ];

    let mut failed = 0;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome =
            outcome.and_then(
                |()| {
                    if elapsed > *limit {
                        Err(format!("took {elapsed:?}, limit {limit:?}"))
                    } else {
                        Ok(())
                    }
                },
            );
        match outcome {
            Ok(()) => println!("PASS  criterion {name} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
