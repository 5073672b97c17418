//! On-disk interchange formats: polynomial map documents and sample files.
//!
//! A map document lists the nonzero strict upper entries of the matrix,
//! each as a list of terms with an exact coefficient string ("p" or "p/q"
//! with q > 0) and one exponent per variable. Parsing and emission are
//! mutually inverse on canonical documents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use unipoly::{Layout, MPoly, PolyMap, RingTag, Scalar, UniTri};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RingDoc {
    Rational,
    Mod { m: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyMapDocument {
    pub n: usize,
    #[serde(rename = "N")]
    pub vars: usize,
    pub ring: RingDoc,
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub t: i64,
    pub matrix: Vec<Vec<serde_json::Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplesDocument {
    pub samples: Vec<SampleDoc>,
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

/// Parse an exact rational from "p" or "p/q" with q > 0.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| domain(format!("malformed coefficient {s:?}")))?;
    let q: BigInt = match den {
        Some(q) => q
            .parse()
            .map_err(|_| domain(format!("malformed coefficient {s:?}")))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(domain(format!("coefficient {s:?}: zero denominator")));
    }
    if q.is_negative() {
        return Err(domain(format!(
            "coefficient {s:?}: denominator must be positive"
        )));
    }
    Ok(BigRational::new(p, q))
}

/// Canonical string form of an exact rational: "p" or "p/q" with q > 1.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn scalar_string(s: &Scalar) -> String {
    match s {
        Scalar::Rat(r) => rational_string(r),
        Scalar::Mod { value, .. } => value.to_string(),
    }
}

fn parse_coeff(s: &str, ring: &RingDoc, context: &str) -> Result<Scalar, CliError> {
    let with_context = |e: CliError| match e {
        CliError::Domain(msg) => domain(format!("{context}: {msg}")),
        other => other,
    };
    let r = parse_rational(s).map_err(with_context)?;
    match ring {
        RingDoc::Rational => Ok(Scalar::Rat(r)),
        RingDoc::Mod { m } => {
            if !r.denom().is_one() {
                return Err(domain(format!(
                    "{context}: residue coefficients must be integers, got {s:?}"
                )));
            }
            Scalar::modular_from_bigint(r.numer(), *m)
                .map_err(|e| domain(format!("{context}: {e}")))
        }
    }
}

/// Build a polynomial map from a parsed document. Only rational documents
/// describe maps; residue documents are rejected here with a clear message.
pub fn doc_to_polymap(doc: &PolyMapDocument) -> Result<PolyMap, CliError> {
    if doc.n < 1 {
        return Err(domain("matrix size n must be at least 1"));
    }
    if doc.vars < 1 {
        return Err(domain("variable count N must be at least 1"));
    }
    if let RingDoc::Mod { .. } = doc.ring {
        return Err(domain(
            "map operations need rational coefficients; residue rings apply only to reduced sequences",
        ));
    }
    let layout = Layout::single("t", doc.vars);
    let mut entries = Vec::new();
    let mut seen = Vec::new();
    for entry in &doc.entries {
        let (row, col) = (entry.row, entry.col);
        let at = format!("entry ({row}, {col})");
        if row == col {
            return Err(domain(format!("{at}: diagonal entry not allowed")));
        }
        if row > col {
            return Err(domain(format!("{at}: below-diagonal entry not allowed")));
        }
        if row < 1 || col > doc.n {
            return Err(domain(format!("{at}: index out of range for size {}", doc.n)));
        }
        if seen.contains(&(row, col)) {
            return Err(domain(format!("{at}: duplicate entry")));
        }
        seen.push((row, col));
        let mut poly = MPoly::zero(RingTag::Rational, layout.clone());
        for (k, term) in entry.terms.iter().enumerate() {
            let context = format!("{at}, term {k}");
            if term.exps.len() != doc.vars {
                return Err(domain(format!(
                    "{context}: exponent vector of wrong length, expected {} got {}",
                    doc.vars,
                    term.exps.len()
                )));
            }
            let coeff = parse_coeff(&term.coeff, &doc.ring, &context)?;
            let monomial = MPoly::from_terms(
                RingTag::Rational,
                layout.clone(),
                vec![(term.exps.clone(), coeff)],
            )
            .map_err(|e| domain(format!("{context}: {e}")))?;
            poly = poly.add(&monomial).map_err(|e| domain(format!("{context}: {e}")))?;
        }
        entries.push(((row, col), poly));
    }
    PolyMap::from_entries(doc.n, doc.vars, entries).map_err(|e| domain(e.to_string()))
}

/// Canonical document for a map: nonzero entries in row-major order, terms
/// in the graded-lexicographic order the polynomials store internally.
pub fn polymap_to_doc(f: &PolyMap) -> PolyMapDocument {
    let mut entries = Vec::new();
    for ((row, col), poly) in f.matrix().indexed_entries() {
        if poly.is_zero() {
            continue;
        }
        let terms = poly
            .terms()
            .map(|(m, c)| TermDoc { coeff: scalar_string(c), exps: m.0.clone() })
            .collect();
        entries.push(EntryDoc { row, col, terms });
    }
    PolyMapDocument {
        n: f.n(),
        vars: f.layout().arity(),
        ring: RingDoc::Rational,
        entries,
    }
}

pub fn parse_polymap_str(text: &str) -> Result<PolyMap, CliError> {
    let doc: PolyMapDocument =
        serde_json::from_str(text).map_err(|e| domain(format!("malformed map document: {e}")))?;
    doc_to_polymap(&doc)
}

fn value_to_rational(v: &serde_json::Value, context: &str) -> Result<BigRational, CliError> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(BigInt::from(u)))
            } else {
                Err(domain(format!(
                    "{context}: matrix entries must be exact integers or rational strings"
                )))
            }
        }
        serde_json::Value::String(s) => {
            parse_rational(s).map_err(|e| match e {
                CliError::Domain(msg) => domain(format!("{context}: {msg}")),
                other => other,
            })
        }
        _ => Err(domain(format!(
            "{context}: matrix entries must be exact integers or rational strings"
        ))),
    }
}

/// Parse one sample matrix, checking the unitriangular shape exactly.
fn sample_to_matrix(sample: &SampleDoc) -> Result<UniTri<Scalar>, CliError> {
    let n = sample.matrix.len();
    if n == 0 {
        return Err(domain(format!("sample t = {}: empty matrix", sample.t)));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in sample.matrix.iter().enumerate() {
        if row.len() != n {
            return Err(domain(format!(
                "sample t = {}: row {} has {} entries, expected {n}",
                sample.t,
                i + 1,
                row.len()
            )));
        }
        let mut parsed = Vec::with_capacity(n);
        for (j, v) in row.iter().enumerate() {
            let context = format!("sample t = {}, entry ({}, {})", sample.t, i + 1, j + 1);
            parsed.push(value_to_rational(v, &context)?);
        }
        rows.push(parsed);
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j && !v.is_one() {
                return Err(domain(format!(
                    "sample t = {}: diagonal entry ({}, {}) must be 1",
                    sample.t,
                    i + 1,
                    j + 1
                )));
            }
            if i > j && !v.is_zero() {
                return Err(domain(format!(
                    "sample t = {}: entry ({}, {}) below the diagonal must be 0",
                    sample.t,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(UniTri::from_fn(n, |i, j| Scalar::Rat(rows[i - 1][j - 1].clone())))
}

pub fn parse_samples_str(text: &str) -> Result<Vec<(i64, UniTri<Scalar>)>, CliError> {
    let doc: SamplesDocument = serde_json::from_str(text)
        .map_err(|e| domain(format!("malformed samples document: {e}")))?;
    if doc.samples.is_empty() {
        return Err(domain("samples document contains no samples"));
    }
    let n = doc.samples[0].matrix.len();
    let mut out = Vec::with_capacity(doc.samples.len());
    for sample in &doc.samples {
        if sample.matrix.len() != n {
            return Err(domain(format!(
                "sample t = {}: matrix size {} differs from the first sample's {n}",
                sample.t,
                sample.matrix.len()
            )));
        }
        out.push((sample.t, sample_to_matrix(sample)?));
    }
    Ok(out)
}

/// Canonical samples document with rational strings as entries.
pub fn samples_to_doc(samples: &[(i64, UniTri<Scalar>)]) -> SamplesDocument {
    let samples = samples
        .iter()
        .map(|(t, m)| {
            let n = m.n();
            let matrix = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| {
                            let s = if i == j {
                                "1".to_string()
                            } else if i > j {
                                "0".to_string()
                            } else {
                                scalar_string(m.get(i, j))
                            };
                            serde_json::Value::String(s)
                        })
                        .collect()
                })
                .collect();
            SampleDoc { t: *t, matrix }
        })
        .collect();
    SamplesDocument { samples }
}
