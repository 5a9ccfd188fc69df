//! JSON and CSV documents for moment windows and discrete measures.
//!
//! Rationals always travel as strings. Enclosures carry a decimal rendering
//! whose length is derived from the enclosure width, so parsing and
//! re-serializing a document reproduces it exactly.

use moment_core::exact_algebra::{canonical_string, decimal_string};
use moment_core::{
    parse_rational, AtomValue, CertifiedValue, DiscreteMeasure, ExactScalar, IsolatingInterval, MomentWindow,
    RationalInterval, RationalPoly,
};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Longest decimal rendering emitted for an enclosure.
const MAX_DECIMAL_DIGITS: usize = 2000;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error("line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("invalid measure: {0}")]
    Measure(#[from] moment_core::Error),
}

fn rational(s: &str) -> Result<ExactScalar, DocumentError> {
    parse_rational(s).map_err(|e| DocumentError::Shape(e.to_string()))
}

fn strings(values: &[ExactScalar]) -> Vec<String> {
    values.iter().map(canonical_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub moments: Vec<String>,
}

impl SequenceDocument {
    pub fn from_window(w: &MomentWindow) -> Self {
        SequenceDocument { moments: strings(w.moments()) }
    }

    pub fn to_window(&self) -> Result<MomentWindow, DocumentError> {
        let values = self.moments.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?;
        MomentWindow::new(values).map_err(|e| DocumentError::Shape(e.to_string()))
    }

    /// Parses a JSON document (a bare array or `{"moments": [...]}`, entries
    /// as strings or integers) or, failing a leading `[`/`{`, CSV with one
    /// value per line.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let trimmed = text.trim_start_matches('\u{feff}').trim();
        let doc = if trimmed.starts_with('[') || trimmed.starts_with('{') {
            Self::parse_json(trimmed)?
        } else {
            Self::parse_csv(trimmed)?
        };
        doc.to_window()?;
        Ok(doc)
    }

    fn parse_json(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text)?;
        let items = match &value {
            Value::Array(items) => items,
            Value::Object(map) => match map.get("moments") {
                Some(Value::Array(items)) => items,
                _ => return Err(DocumentError::Shape("expected a \"moments\" array".into())),
            },
            _ => return Err(DocumentError::Shape("expected an array or an object".into())),
        };
        let moments = items
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Value::String(s) => Ok(canonical_string(&rational(s)?)),
                Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
                _ => Err(DocumentError::Shape(format!("moment {i}: expected a rational string or an integer"))),
            })
            .collect::<Result<_, _>>()?;
        Ok(SequenceDocument { moments })
    }

    fn parse_csv(text: &str) -> Result<Self, DocumentError> {
        let mut moments = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let field = line.trim();
            if field.is_empty() {
                continue;
            }
            let q = parse_rational(field).map_err(|e| DocumentError::Csv { line: i + 1, msg: e.to_string() })?;
            moments.push(canonical_string(&q));
        }
        Ok(SequenceDocument { moments })
    }
}

/// `{lo, hi, decimal}` with `decimal` the midpoint rendered to the digits
/// the width supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosureDocument {
    pub lo: String,
    pub hi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

impl EnclosureDocument {
    pub fn from_interval(iv: &RationalInterval) -> Self {
        EnclosureDocument {
            lo: canonical_string(iv.lo()),
            hi: canonical_string(iv.hi()),
            decimal: Some(enclosure_decimal(iv)),
        }
    }

    fn to_interval(&self) -> Result<RationalInterval, DocumentError> {
        interval(&self.lo, &self.hi)
    }
}

fn interval(lo: &str, hi: &str) -> Result<RationalInterval, DocumentError> {
    let (lo, hi) = (rational(lo)?, rational(hi)?);
    if lo > hi {
        return Err(DocumentError::Shape(format!("empty interval [{lo}, {hi}]")));
    }
    Ok(RationalInterval::new(lo, hi))
}

/// Smallest `d` with `10^-d <= width`, capped.
fn supported_digits(width: &ExactScalar) -> usize {
    if width.is_zero() {
        return MAX_DECIMAL_DIGITS;
    }
    let ten = ExactScalar::from_integer(10.into());
    let mut step = ExactScalar::one();
    let mut d = 0;
    while d < MAX_DECIMAL_DIGITS && step > *width {
        step /= &ten;
        d += 1;
    }
    d
}

pub fn enclosure_decimal(iv: &RationalInterval) -> String {
    decimal_string(&iv.midpoint(), supported_digits(&iv.width()))
}

/// Human-readable value: the exact rational, or the enclosure's decimal.
pub fn display_interval(iv: &RationalInterval) -> String {
    if iv.is_point() {
        canonical_string(iv.lo())
    } else {
        enclosure_decimal(iv)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDocument {
    Exact(String),
    Enclosure(EnclosureDocument),
    Pair([String; 2]),
}

impl ValueDocument {
    pub fn from_value(v: &CertifiedValue) -> Self {
        match v {
            CertifiedValue::Exact(q) => ValueDocument::Exact(canonical_string(q)),
            CertifiedValue::Enclosure(iv) => ValueDocument::Enclosure(EnclosureDocument::from_interval(iv)),
        }
    }

    pub fn to_value(&self) -> Result<CertifiedValue, DocumentError> {
        let iv = match self {
            ValueDocument::Exact(s) => return Ok(CertifiedValue::Exact(rational(s)?)),
            ValueDocument::Enclosure(e) => e.to_interval()?,
            ValueDocument::Pair([lo, hi]) => interval(lo, hi)?,
        };
        Ok(if iv.is_point() { CertifiedValue::Exact(iv.lo().clone()) } else { CertifiedValue::Enclosure(iv) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AtomDocument {
    Exact {
        exact: String,
    },
    Algebraic {
        interval: [String; 2],
        poly: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decimal: Option<String>,
    },
}

impl AtomDocument {
    pub fn from_atom(a: &AtomValue) -> Self {
        match a {
            AtomValue::Exact(x) => AtomDocument::Exact { exact: canonical_string(x) },
            AtomValue::Algebraic(iv) => match iv.exact() {
                Some(x) => AtomDocument::Exact { exact: canonical_string(x) },
                None => AtomDocument::Algebraic {
                    interval: [canonical_string(iv.lo()), canonical_string(iv.hi())],
                    poly: strings(iv.poly().coeffs()),
                    decimal: Some(enclosure_decimal(&iv.enclosure())),
                },
            },
        }
    }

    pub fn to_atom(&self) -> Result<AtomValue, DocumentError> {
        match self {
            AtomDocument::Exact { exact } => Ok(AtomValue::Exact(rational(exact)?)),
            AtomDocument::Algebraic { interval: [lo, hi], poly, .. } => {
                let coeffs = poly.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?;
                let iv = IsolatingInterval::new(rational(lo)?, rational(hi)?, RationalPoly::new(coeffs))?;
                Ok(AtomValue::Algebraic(iv))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureDocument {
    pub atoms: Vec<AtomDocument>,
    pub weights: Vec<ValueDocument>,
}

impl MeasureDocument {
    pub fn from_measure(mu: &DiscreteMeasure) -> Self {
        MeasureDocument {
            atoms: mu.atoms().iter().map(AtomDocument::from_atom).collect(),
            weights: mu.weights().iter().map(ValueDocument::from_value).collect(),
        }
    }

    pub fn to_measure(&self) -> Result<DiscreteMeasure, DocumentError> {
        let atoms = self.atoms.iter().map(AtomDocument::to_atom).collect::<Result<Vec<_>, _>>()?;
        let weights = self.weights.iter().map(ValueDocument::to_value).collect::<Result<Vec<_>, _>>()?;
        Ok(DiscreteMeasure::new(atoms, weights)?)
    }

    /// Parses and validates a measure document.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: MeasureDocument = serde_json::from_str(text.trim_start_matches('\u{feff}'))?;
        doc.to_measure()?;
        Ok(doc)
    }

    /// The same measure in canonical form.
    pub fn canonical(&self) -> Result<Self, DocumentError> {
        Ok(Self::from_measure(&self.to_measure()?))
    }
}
