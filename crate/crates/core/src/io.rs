//! Canonical text formats for complexes and reports.
//!
//! JSON documents look like
//! `{"format_version":"1","kind":"nonvoid","n":4,"dim":1,"facets":[[-1,4]]}`
//! with facets internally ascending and listed in lexicographic order. The flat
//! format has one facet per line as space-separated signed ids; a blank line is
//! the empty face and `#` starts a comment line. Equal complexes serialize to
//! identical bytes in both formats.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexKind, Face};
use crate::verify::{Status, VerificationReport, Witness};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document at {position}: {message}")]
    Invalid { position: String, message: String },
    #[error("line {line}: cannot parse {token:?} as a vertex id")]
    Token { line: usize, token: String },
    #[error("vertex {vertex} is outside V_{n}")]
    OutOfRange { vertex: i32, n: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocumentKind {
    Void,
    Nonvoid,
}

/// Serialized form of a complex on `V_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub format_version: String,
    pub kind: DocumentKind,
    pub n: u32,
    pub dim: i64,
    pub facets: Vec<Vec<i32>>,
}

impl ComplexDocument {
    pub fn from_complex(a: &Complex, n: u32) -> Result<Self, FormatError> {
        if let Some(v) = a.vertices().into_iter().find(|v| v.pair() > n) {
            return Err(FormatError::OutOfRange { vertex: v.id(), n });
        }
        Ok(ComplexDocument {
            format_version: FORMAT_VERSION.to_string(),
            kind: match a.kind() {
                ComplexKind::Void => DocumentKind::Void,
                ComplexKind::NonVoid => DocumentKind::Nonvoid,
            },
            n,
            dim: a.dim() as i64,
            facets: a.facets().iter().map(Face::ids).collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Validates every document invariant and builds the complex.
    pub fn to_complex(&self) -> Result<Complex, FormatError> {
        let invalid = |position: String, message: &str| FormatError::Invalid {
            position,
            message: message.to_string(),
        };
        if self.format_version != FORMAT_VERSION {
            return Err(invalid(
                "format_version".into(),
                "unsupported format version",
            ));
        }
        if (self.kind == DocumentKind::Void) != self.facets.is_empty() {
            return Err(invalid(
                "kind".into(),
                "void documents have no facets and nonvoid ones have at least one",
            ));
        }
        let mut faces = Vec::with_capacity(self.facets.len());
        for (k, ids) in self.facets.iter().enumerate() {
            if let Some(w) = ids.windows(2).find(|w| w[0] >= w[1]) {
                return Err(invalid(
                    format!("facets[{k}]"),
                    &format!("ids must be strictly ascending ({} then {})", w[0], w[1]),
                ));
            }
            if let Some(&id) = ids
                .iter()
                .find(|&&id| id == 0 || id.unsigned_abs() > self.n)
            {
                if id == 0 {
                    return Err(invalid(format!("facets[{k}]"), "vertex id 0"));
                }
                return Err(FormatError::OutOfRange {
                    vertex: id,
                    n: self.n,
                });
            }
            let face =
                Face::from_ids(ids).map_err(|e| invalid(format!("facets[{k}]"), &e.to_string()))?;
            if let Some(prev) = faces.last() {
                if *prev >= face {
                    return Err(invalid(
                        format!("facets[{k}]"),
                        "facets must be in strictly increasing lexicographic order",
                    ));
                }
            }
            faces.push(face);
        }
        let complex = Complex::from_faces(faces.iter().cloned());
        if complex.num_facets() != faces.len() {
            let absorbed = faces
                .iter()
                .position(|f| complex.facets().binary_search(f).is_err())
                .unwrap_or(0);
            return Err(invalid(
                format!("facets[{absorbed}]"),
                "facet is contained in another facet",
            ));
        }
        if complex.dim() as i64 != self.dim {
            return Err(invalid(
                "dim".into(),
                &format!(
                    "declared {}, facets have dimension {}",
                    self.dim,
                    complex.dim()
                ),
            ));
        }
        Ok(complex)
    }
}

/// Canonical compact JSON for `a` as a complex on `V_n`.
pub fn to_json(a: &Complex, n: u32) -> Result<String, FormatError> {
    let doc = ComplexDocument::from_complex(a, n)?;
    Ok(serde_json::to_string(&doc).expect("document serializes"))
}

pub fn from_json(text: &str) -> Result<Complex, FormatError> {
    ComplexDocument::parse(text)?.to_complex()
}

/// One facet per line in lexicographic facet order, each line terminated by LF.
pub fn to_flat(a: &Complex) -> String {
    let mut out = String::new();
    for f in a.facets() {
        let line: Vec<String> = f.ids().iter().map(i32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a facet list. Facets may come in any order and non-maximal faces are
/// absorbed; text without facet lines is the void complex.
pub fn from_flat(text: &str) -> Result<Complex, FormatError> {
    let mut faces = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        let ids = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>().map_err(|_| FormatError::Token {
                    line: k + 1,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let face = Face::from_ids(&ids).map_err(|e| FormatError::Invalid {
            position: format!("line {}", k + 1),
            message: e.to_string(),
        })?;
        faces.push(face);
    }
    Ok(Complex::from_faces(faces))
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    format_version: &'a str,
    passed: usize,
    failed: usize,
    checks: Vec<CheckDocument<'a>>,
}

#[derive(Serialize)]
struct CheckDocument<'a> {
    claim: &'a str,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vec<i32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

/// JSON rendering of a report. Timings are omitted unless requested so that
/// repeated runs produce identical bytes.
pub fn report_to_json(report: &VerificationReport, with_timings: bool) -> String {
    let checks: Vec<CheckDocument> = report
        .checks
        .iter()
        .map(|c| CheckDocument {
            claim: &c.claim,
            status: match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            },
            detail: c.failure.as_ref().map(|f| f.detail.as_str()),
            witness: c.witness().map(|w| match w {
                Witness::Face(f) => vec![f.ids()],
                Witness::Pair(a, b) => vec![a.ids(), b.ids()],
            }),
            elapsed_ms: with_timings.then_some(c.elapsed.as_secs_f64() * 1e3),
        })
        .collect();
    let failed = report.failures().count();
    let doc = ReportDocument {
        format_version: FORMAT_VERSION,
        passed: report.len() - failed,
        failed,
        checks,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}
