//! The on-disk certificate format.

use balfact_core::factor_search::{MatrixCertificate, SearchMethod};
use balfact_core::fields::{render_rational, Element, FieldCtx};
use balfact_core::scalar_factor::{is_power, Provenance, Rejection, ScalarCertificate};
use balfact_core::{make_field, GaloisField, Gf, Matrix, Rational, Scalar};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Scalar,
    Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub balanced: bool,
    pub nonpower: bool,
    pub commuting: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub kind: Kind,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub k: usize,
    pub target: String,
    pub factors: Vec<String>,
    pub flags: Flags,
    pub provenance: String,
    pub verified: bool,
}

/// Why a document could not even be checked.
#[derive(Debug)]
pub enum Malformed {
    Json(serde_json::Error),
    Schema(String),
    Content(String),
}

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Malformed::Json(e) => write!(f, "malformed JSON: {e}"),
            Malformed::Schema(v) => write!(f, "unsupported schema_version {v:?}"),
            Malformed::Content(m) => write!(f, "malformed certificate: {m}"),
        }
    }
}

/// Serializes any value with object keys sorted, pretty-printed, newline-terminated.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("documents serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("documents serialize");
    text.push('\n');
    text
}

fn scalar_document<T: Scalar>(
    field: String,
    cert: &ScalarCertificate<T>,
    render: impl Fn(&T) -> String,
) -> CertificateDocument {
    let sum_zero = cert
        .factors
        .iter()
        .fold(cert.target.zero_like(), |acc, f| acc + f.clone())
        .is_zero();
    CertificateDocument {
        schema_version: SCHEMA_VERSION.into(),
        kind: Kind::Scalar,
        field,
        n: None,
        k: cert.k,
        target: render(&cert.target),
        factors: cert.factors.iter().map(render).collect(),
        flags: Flags {
            balanced: sum_zero,
            nonpower: cert.nonpower,
            commuting: true,
        },
        provenance: cert.provenance.as_str().into(),
        verified: cert.verify().is_ok(),
    }
}

pub fn from_gf(cert: &ScalarCertificate<Gf>) -> CertificateDocument {
    let field = cert.target.field().clone();
    scalar_document(field.spec_string(), cert, |x| field.render_idx(x.index()))
}

pub fn from_rational(cert: &ScalarCertificate<Rational>) -> CertificateDocument {
    scalar_document("Q".into(), cert, render_rational)
}

pub fn from_matrix(cert: &MatrixCertificate) -> CertificateDocument {
    let field = cert.target.field();
    let n = cert.target.n();
    let sum = cert
        .factors
        .iter()
        .try_fold(Matrix::zero(field, n).expect("valid shape"), |acc, x| {
            acc.add(x)
        });
    CertificateDocument {
        schema_version: SCHEMA_VERSION.into(),
        kind: Kind::Matrix,
        field: field.spec_string(),
        n: Some(n),
        k: cert.k,
        target: cert.target.render(),
        factors: cert.factors.iter().map(Matrix::render).collect(),
        flags: Flags {
            balanced: sum.is_ok_and(|s| s.is_zero()),
            nonpower: !is_power(&cert.factors),
            commuting: cert.commuting,
        },
        provenance: cert.method.as_str().into(),
        verified: cert.verify().is_ok(),
    }
}

pub fn parse_document(text: &str) -> Result<CertificateDocument, Malformed> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(Malformed::Json)?;
    match value.get("schema_version") {
        Some(serde_json::Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(other) => return Err(Malformed::Schema(other.to_string())),
        None => return Err(Malformed::Content("missing schema_version".into())),
    }
    serde_json::from_value(value).map_err(Malformed::Json)
}

fn content<E: std::fmt::Display>(e: E) -> Malformed {
    Malformed::Content(e.to_string())
}

/// Re-verifies a document: `Ok(Ok(()))` if valid, `Ok(Err(reason))` if it fails a check.
pub fn check_document(doc: &CertificateDocument) -> Result<Result<(), Rejection>, Malformed> {
    let ctx = make_field(&doc.field).map_err(content)?;
    match doc.kind {
        Kind::Scalar => check_scalar(doc, &ctx),
        Kind::Matrix => {
            let field = ctx.galois().ok_or_else(|| {
                Malformed::Content("matrix certificates need a finite field".into())
            })?;
            check_matrix(doc, field)
        }
    }
}

fn check_scalar(
    doc: &CertificateDocument,
    ctx: &FieldCtx,
) -> Result<Result<(), Rejection>, Malformed> {
    let provenance = Provenance::parse(&doc.provenance)
        .ok_or_else(|| Malformed::Content(format!("unknown provenance {:?}", doc.provenance)))?;
    let target = ctx.parse(&doc.target).map_err(content)?;
    let factors: Vec<Element> = doc
        .factors
        .iter()
        .map(|f| ctx.parse(f))
        .collect::<Result<_, _>>()
        .map_err(content)?;
    if !doc.flags.balanced {
        return Err(Malformed::Content(
            "certificates must claim to be balanced".into(),
        ));
    }
    Ok(match target {
        Element::Galois(t) => {
            let factors = factors
                .into_iter()
                .map(|f| match f {
                    Element::Galois(x) => x,
                    Element::Rational(_) => unreachable!("parsed in the same context"),
                })
                .collect();
            ScalarCertificate {
                target: t,
                k: doc.k,
                factors,
                nonpower: doc.flags.nonpower,
                provenance,
            }
            .verify()
        }
        Element::Rational(t) => {
            let factors = factors
                .into_iter()
                .map(|f| match f {
                    Element::Rational(x) => x,
                    Element::Galois(_) => unreachable!("parsed in the same context"),
                })
                .collect();
            ScalarCertificate {
                target: t,
                k: doc.k,
                factors,
                nonpower: doc.flags.nonpower,
                provenance,
            }
            .verify()
        }
    })
}

fn check_matrix(
    doc: &CertificateDocument,
    field: &GaloisField,
) -> Result<Result<(), Rejection>, Malformed> {
    let method = SearchMethod::parse(&doc.provenance)
        .ok_or_else(|| Malformed::Content(format!("unknown provenance {:?}", doc.provenance)))?;
    let n = doc
        .n
        .ok_or_else(|| Malformed::Content("matrix certificates need n".into()))?;
    let target = Matrix::parse(field, &doc.target).map_err(content)?;
    let factors: Vec<Matrix> = doc
        .factors
        .iter()
        .map(|f| Matrix::parse(field, f))
        .collect::<Result<_, _>>()
        .map_err(content)?;
    if !doc.flags.balanced {
        return Err(Malformed::Content(
            "certificates must claim to be balanced".into(),
        ));
    }
    if target.n() != n {
        return Ok(Err(Rejection::ContextMismatch));
    }
    if doc.flags.nonpower && is_power(&factors) {
        return Ok(Err(Rejection::PowerDecomposition));
    }
    let cert = MatrixCertificate {
        target,
        k: doc.k,
        factors,
        commuting: doc.flags.commuting,
        in_subalgebra: method == SearchMethod::SubalgebraSearch,
        method,
    };
    Ok(cert.verify())
}
