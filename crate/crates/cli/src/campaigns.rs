//! Seeded randomized checks behind `verify`.
//!
//! Trial `i` of a campaign with seed `S` draws from
//! `SplitMix64::for_trial(S, i)`, so any failure can be replayed on its own
//! from the seed and trial index in the report.

use moment_core::exact_algebra::canonical_string;
use moment_core::identities::{
    det2_check, exact_measure_moments, random_det1_instance, random_det2_instance, random_measure, resample_fill,
    Det1Instance, Det2Instance, InstanceBounds, MeasureGenSpec, SplitMix64,
};
use moment_core::{
    classify, det_sequence, extend, hankel_matrix, is_psd, reconstruct, Classification, DiscreteMeasure, Matrix,
    MomentWindow, DEFAULT_DIGITS,
};
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::documents::MeasureDocument;
use crate::report::ClassificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Campaign {
    Det1,
    Det2,
    Roundtrip,
    PsdTheorem,
}

impl Campaign {
    pub fn name(self) -> &'static str {
        match self {
            Campaign::Det1 => "det1",
            Campaign::Det2 => "det2",
            Campaign::Roundtrip => "roundtrip",
            Campaign::PsdTheorem => "psd-theorem",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_n: usize,
    pub max_p: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub trial: u64,
    pub reason: String,
    pub instance: Value,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignReport {
    pub campaign: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub max_n: usize,
    pub max_p: usize,
    pub passed: u64,
    pub failed: u64,
    pub ok: bool,
    pub failures: Vec<Failure>,
}

type TrialResult = Result<(), (String, Value)>;

pub fn run_campaign(campaign: Campaign, cfg: CampaignConfig) -> CampaignReport {
    let bounds = InstanceBounds { max_n: cfg.max_n, max_p: cfg.max_p, ..InstanceBounds::default() };
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let mut rng = SplitMix64::for_trial(cfg.seed, trial);
        let outcome = match campaign {
            Campaign::Det1 => det1_trial(&mut rng, bounds),
            Campaign::Det2 => det2_trial(&mut rng, bounds, trial % 4 == 0),
            Campaign::Roundtrip => roundtrip_trial(&mut rng, cfg.max_n),
            Campaign::PsdTheorem => psd_theorem_trial(&mut rng, cfg.max_n),
        };
        if let Err((reason, instance)) = outcome {
            failures.push(Failure { trial, reason, instance });
        }
    }
    let failed = failures.len() as u64;
    CampaignReport {
        campaign: campaign.name(),
        seed: cfg.seed,
        trials: cfg.trials,
        max_n: cfg.max_n,
        max_p: cfg.max_p,
        passed: cfg.trials - failed,
        failed,
        ok: failed == 0,
        failures,
    }
}

fn rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(canonical_string).collect()).collect()
}

fn strings(values: &[moment_core::ExactScalar]) -> Vec<String> {
    values.iter().map(canonical_string).collect()
}

fn det1_dump(inst: &Det1Instance) -> Value {
    let matrix = moment_core::identities::det1_matrix(&inst.measure, &inst.cs, inst.p, &inst.filler)
        .map(|m| json!(rows(&m)))
        .unwrap_or_else(|e| json!(e.to_string()));
    json!({
        "measure": MeasureDocument::from_measure(&inst.measure),
        "cs": inst.cs,
        "p": inst.p,
        "filler": rows(&inst.filler),
        "matrix": matrix,
    })
}

fn det1_trial(rng: &mut SplitMix64, bounds: InstanceBounds) -> TrialResult {
    let inst = random_det1_instance(rng, bounds);
    match inst.determinant() {
        Ok(d) if d.is_zero() => Ok(()),
        Ok(d) => Err((format!("determinant is {d}, expected 0"), det1_dump(&inst))),
        Err(e) => Err((e.to_string(), det1_dump(&inst))),
    }
}

fn det2_dump(inst: &Det2Instance) -> Value {
    let matrix = inst.matrix().map(|m| json!(rows(&m))).unwrap_or_else(|e| json!(e.to_string()));
    json!({
        "n": inst.n,
        "p": inst.p,
        "baseMeasure": MeasureDocument::from_measure(&inst.base_measure),
        "xs": strings(&inst.xs),
        "fill": rows(&inst.fill),
        "matrix": matrix,
    })
}

fn det2_trial(rng: &mut SplitMix64, bounds: InstanceBounds, force_collision: bool) -> TrialResult {
    let inst = random_det2_instance(rng, bounds, force_collision);
    let report = det2_check(&inst).map_err(|e| (e.to_string(), det2_dump(&inst)))?;
    if !report.equal {
        return Err((format!("determinant {} differs from closed form {}", report.lhs, report.rhs), det2_dump(&inst)));
    }
    let other = resample_fill(&inst, rng);
    let again = det2_check(&other).map_err(|e| (e.to_string(), det2_dump(&other)))?;
    if again.lhs != report.lhs {
        return Err((
            format!(
                "redrawing entries below the anti-diagonal changed the determinant from {} to {}",
                report.lhs, again.lhs
            ),
            det2_dump(&other),
        ));
    }
    Ok(())
}

/// Random measure with `1..=max_n` atoms and its first `len(n)` moments.
fn measure_window(
    rng: &mut SplitMix64,
    max_n: usize,
    len: impl Fn(usize) -> usize,
) -> (usize, DiscreteMeasure, MomentWindow) {
    let n = rng.range_usize(1, max_n.max(1));
    let mu = random_measure(&MeasureGenSpec::new(n, rng.next_u64())).expect("default generator spec is feasible");
    let s = exact_measure_moments(&mu, len(n)).expect("generated measures are exact");
    (n, mu, MomentWindow::new(s).expect("nonempty window"))
}

fn window_dump(mu: &DiscreteMeasure, w: &MomentWindow) -> Value {
    let (class, dets) = moment_core::hankel::classify_with_determinants(w);
    json!({
        "measure": MeasureDocument::from_measure(mu),
        "moments": strings(w.moments()),
        "classification": ClassificationReport::new(&class, &dets),
    })
}

fn roundtrip_trial(rng: &mut SplitMix64, max_n: usize) -> TrialResult {
    let (n, mu, full) = measure_window(rng, max_n, |n| 2 * n + 7);
    let w = MomentWindow::new(full.moments()[..2 * n + 3].to_vec()).expect("nonempty window");
    let fail = |reason: String| Err((reason, window_dump(&mu, &w)));
    let class = classify(&w);
    if class != (Classification::Degenerate { n0: n, window_consistent: true }) {
        return fail(format!("classified as {class:?}, expected degenerate with n0 = {n}"));
    }
    match reconstruct(&w, DEFAULT_DIGITS) {
        Ok(back) if back == mu => {}
        Ok(back) => return fail(format!("reconstructed {:?}", MeasureDocument::from_measure(&back))),
        Err(e) => return fail(format!("reconstruction failed: {e}")),
    }
    match extend(&w, 4) {
        Ok(ext) if ext == full.moments()[w.len()..] => Ok(()),
        Ok(ext) => fail(format!("extension {:?} differs from the measure's moments", strings(&ext))),
        Err(e) => fail(format!("extension failed: {e}")),
    }
}

fn psd_theorem_trial(rng: &mut SplitMix64, max_n: usize) -> TrialResult {
    let (n, mu, w) = measure_window(rng, max_n, |n| 2 * (n + 2) + 1);
    let fail = |reason: String| Err((reason, window_dump(&mu, &w)));
    for (k, d) in det_sequence(&w).iter().enumerate() {
        let ok = if k < n { d.is_positive() } else { d.is_zero() };
        if !ok {
            return fail(format!("D_{k} = {d} breaks the pattern for {n} atoms"));
        }
    }
    let class = classify(&w);
    if class != (Classification::Degenerate { n0: n, window_consistent: true }) {
        return fail(format!("classified as {class:?}, expected degenerate with n0 = {n}"));
    }
    for k in 0..=w.horizon() {
        let h = hankel_matrix(&w, k).expect("k within horizon");
        match is_psd(&h) {
            Ok(true) => {}
            Ok(false) => return fail(format!("H_{k} is not positive semidefinite")),
            Err(e) => return fail(format!("H_{k}: {e}")),
        }
    }
    Ok(())
}
