//! Command-line front end for `moment-core`.
//!
//! Every command prints a single JSON object on standard output and sends
//! diagnostics to standard error. Exit status is 0 on success, 1 when the
//! input is well formed but the requested operation fails on it, and 2 for
//! usage and parse errors.

pub mod campaigns;
pub mod documents;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use moment_core::exact_algebra::canonical_string;
use moment_core::hankel::classify_with_determinants;
use moment_core::{
    det_sequence, extend, measure_moments, parse_rational, reconstruct, Classification, ExactScalar, MomentWindow,
    DEFAULT_DIGITS,
};
use num_traits::{One, Signed};
use serde::Serialize;

use campaigns::{run_campaign, Campaign, CampaignConfig};
use documents::{display_interval, MeasureDocument, SequenceDocument, ValueDocument};
use report::ClassificationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "moments", version, about = "Exact Hankel classification and recovery of finite moment sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a sequence by the sign pattern of its Hankel determinants.
    Classify { file: PathBuf },
    /// Print the Hankel determinants D_0..D_N.
    Determinants { file: PathBuf },
    /// Recover the finitely supported measure of a degenerate sequence.
    Reconstruct {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DIGITS, value_parser = digits_parser())]
        digits: u32,
    },
    /// Print the next terms of a degenerate sequence.
    Extend {
        file: PathBuf,
        #[arg(long)]
        count: usize,
    },
    /// Print the first moments of a measure document.
    Moments {
        file: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_DIGITS, value_parser = digits_parser())]
        digits: u32,
    },
    /// Run a seeded randomized verification campaign.
    Verify {
        #[arg(value_enum)]
        campaign: CampaignArg,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_n: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=6))]
        max_p: u64,
    },
    /// Build the two-atom example sequence for a parameter a >= 0 and recover its measure.
    Demo {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = DEFAULT_DIGITS, value_parser = digits_parser())]
        digits: u32,
    },
}

fn digits_parser() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(0..=10_000)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CampaignArg {
    Det1,
    Det2,
    Roundtrip,
    PsdTheorem,
}

impl From<CampaignArg> for Campaign {
    fn from(c: CampaignArg) -> Self {
        match c {
            CampaignArg::Det1 => Campaign::Det1,
            CampaignArg::Det2 => Campaign::Det2,
            CampaignArg::Roundtrip => Campaign::Roundtrip,
            CampaignArg::PsdTheorem => Campaign::PsdTheorem,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<(serde_json::Value, i32), Failure>;

/// Runs the CLI on `args` (program name first). Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((report, code)) => {
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            if writeln!(out, "{text}").is_err() {
                return EXIT_FAILURE;
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_window(path: &Path) -> Result<MomentWindow, Failure> {
    let doc = SequenceDocument::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    doc.to_window().map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn strings(values: &[ExactScalar]) -> Vec<String> {
    values.iter().map(canonical_string).collect()
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Classify { file } => {
            let (class, dets) = classify_with_determinants(&load_window(&file)?);
            Ok((to_json(&ClassificationReport::new(&class, &dets)), EXIT_OK))
        }
        Command::Determinants { file } => {
            let dets = det_sequence(&load_window(&file)?);
            Ok((serde_json::json!({ "determinants": strings(&dets) }), EXIT_OK))
        }
        Command::Reconstruct { file, digits } => {
            let w = load_window(&file)?;
            let mu = reconstruct(&w, digits).map_err(|e| Failure::Domain(e.to_string()))?;
            Ok((to_json(&MeasureDocument::from_measure(&mu)), EXIT_OK))
        }
        Command::Extend { file, count } => {
            let ext = extend(&load_window(&file)?, count).map_err(|e| Failure::Domain(e.to_string()))?;
            Ok((serde_json::json!({ "extension": strings(&ext) }), EXIT_OK))
        }
        Command::Moments { file, count, digits } => {
            let text = read(&file)?;
            let doc = MeasureDocument::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let mu = doc.to_measure().map_err(|e| Failure::Usage(e.to_string()))?;
            let moments: Vec<ValueDocument> =
                measure_moments(&mu, count, digits).iter().map(ValueDocument::from_value).collect();
            Ok((serde_json::json!({ "moments": moments }), EXIT_OK))
        }
        Command::Verify { campaign, trials, seed, max_n, max_p } => {
            let cfg = CampaignConfig { trials, seed, max_n: max_n as usize, max_p: max_p as usize };
            let report = run_campaign(campaign.into(), cfg);
            let code = if report.ok { EXIT_OK } else { EXIT_FAILURE };
            Ok((to_json(&report), code))
        }
        Command::Demo { a, digits } => demo(&a, digits),
    }
}

#[derive(Serialize)]
struct DemoReport {
    a: String,
    branch: &'static str,
    moments: Vec<String>,
    classification: ClassificationReport,
    atoms: Vec<String>,
    weights: Vec<String>,
    measure: MeasureDocument,
}

/// Two-atom example: for `a >= 1`, `s_{2n} = s_{2n+1} = a^n`; for
/// `0 <= a <= 1`, `s_0 = 1` and `s_{2n-1} = s_{2n} = a^n`.
fn demo_sequence(a: &ExactScalar, terms: usize) -> (Vec<ExactScalar>, &'static str) {
    let upper = *a >= ExactScalar::one();
    let exponent = |k: usize| if upper { k / 2 } else { k.div_ceil(2) };
    let s = (0..terms).map(|k| num_traits::pow(a.clone(), exponent(k))).collect();
    (s, if upper { "a >= 1" } else { "0 <= a <= 1" })
}

fn demo(a: &str, digits: u32) -> Outcome {
    let a = parse_rational(a).map_err(|e| Failure::Usage(format!("--a: {e}")))?;
    if a.is_negative() {
        return Err(Failure::Usage(format!("--a must be nonnegative, got {a}")));
    }
    let (s, branch) = demo_sequence(&a, 7);
    let w = MomentWindow::new(s).expect("nonempty window");
    let (class, dets) = classify_with_determinants(&w);
    if !matches!(class, Classification::Degenerate { window_consistent: true, .. }) {
        return Err(Failure::Domain(format!("example sequence classified as {class:?}")));
    }
    let mu = reconstruct(&w, digits).map_err(|e| Failure::Domain(e.to_string()))?;
    let report = DemoReport {
        a: canonical_string(&a),
        branch,
        moments: strings(w.moments()),
        classification: ClassificationReport::new(&class, &dets),
        atoms: mu.atoms().iter().map(|x| display_interval(&x.enclosure())).collect(),
        weights: mu.weights().iter().map(|m| display_interval(&m.enclosure())).collect(),
        measure: MeasureDocument::from_measure(&mu),
    };
    Ok((to_json(&report), EXIT_OK))
}
