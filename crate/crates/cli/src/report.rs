use moment_core::exact_algebra::canonical_string;
use moment_core::{Classification, ExactScalar};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub variant: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    pub determinants: Vec<String>,
}

impl ClassificationReport {
    pub fn new(class: &Classification, determinants: &[ExactScalar]) -> Self {
        let mut report = ClassificationReport {
            variant: "",
            horizon: None,
            n0: None,
            window_consistent: None,
            first_violation: None,
            reason: None,
            determinants: determinants.iter().map(canonical_string).collect(),
        };
        match *class {
            Classification::PositiveWindow { horizon } => {
                report.variant = "positive_window";
                report.horizon = Some(horizon);
            }
            Classification::Degenerate { n0, window_consistent } => {
                report.variant = "degenerate";
                report.n0 = Some(n0);
                report.window_consistent = Some(window_consistent);
            }
            Classification::Invalid { first_violation, reason } => {
                report.variant = "invalid";
                report.first_violation = Some(first_violation);
                report.reason = Some(reason.as_str());
            }
        }
        report
    }
}
