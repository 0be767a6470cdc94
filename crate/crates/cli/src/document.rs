//! Canonical JSON documents: rings, laws, series, polynomials, and
//! certificates.
//!
//! Normative conventions: rational values serialize as reduced "num/den"
//! strings with "/den" omitted when the denominator is 1; coefficient lists
//! are sorted by (total series degree, exponents, monomial graded-lex),
//! which is exactly the engine's canonical iteration order; zero values are
//! never emitted. Monomial maps omit zero exponents and key their entries by
//! generator name (serialized in sorted key order).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use fgl_core::rational::{format_rat, parse_rat};
use fgl_core::ring::{make_ring, RingRef};
use fgl_core::{Error as CoreError, GradedPolynomial, RingBase, TruncatedSeries};

/// A one-line diagnostic; every parse or precondition failure becomes one.
#[derive(Debug)]
pub struct Diagnostic(pub String);

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for Diagnostic {}

impl From<CoreError> for Diagnostic {
    fn from(e: CoreError) -> Self {
        Diagnostic(e.to_string())
    }
}

pub type DocResult<T> = Result<T, Diagnostic>;

pub fn bad_input<T>(msg: impl Into<String>) -> DocResult<T> {
    Err(Diagnostic(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlainBase {
    Q,
    Z,
}

/// Base ring tag: "Q", "Z", or {"Zp": p}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DocBase {
    Plain(PlainBase),
    PLocal {
        #[serde(rename = "Zp")]
        p: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocGenerator {
    pub name: String,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocRing {
    pub base: DocBase,
    pub generators: Vec<DocGenerator>,
}

impl DocRing {
    pub fn to_ring(&self) -> DocResult<RingRef> {
        let base = match self.base {
            DocBase::Plain(PlainBase::Q) => RingBase::Rationals,
            DocBase::Plain(PlainBase::Z) => RingBase::Integers,
            DocBase::PLocal { p } => RingBase::PLocalIntegers(p),
        };
        let gens: Vec<(String, u32)> =
            self.generators.iter().map(|g| (g.name.clone(), g.weight)).collect();
        Ok(make_ring(base, gens)?)
    }

    pub fn from_ring(ring: &RingRef) -> Self {
        let base = match ring.base() {
            RingBase::Rationals => DocBase::Plain(PlainBase::Q),
            RingBase::Integers => DocBase::Plain(PlainBase::Z),
            RingBase::PLocalIntegers(p) => DocBase::PLocal { p },
        };
        let generators = ring
            .generators()
            .iter()
            .map(|g| DocGenerator { name: g.name.clone(), weight: g.weight })
            .collect();
        DocRing { base, generators }
    }
}

fn monomial_map(ring: &RingRef, exps: &[u32]) -> BTreeMap<String, u32> {
    ring.generators()
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| (g.name.clone(), e))
        .collect()
}

fn monomial_exps(ring: &RingRef, map: &BTreeMap<String, u32>) -> DocResult<Vec<u32>> {
    let mut exps = vec![0u32; ring.num_generators()];
    for (name, &e) in map {
        match ring.generator_index(name) {
            Some(i) => exps[i] = e,
            None => return bad_input(format!("unknown generator `{name}` in monomial")),
        }
    }
    Ok(exps)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocFglTerm {
    pub xexp: u32,
    pub yexp: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monomial: BTreeMap<String, u32>,
    pub value: String,
}

/// A bivariate series document (the serialized form of a law).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocFgl {
    pub ring: DocRing,
    pub truncation: u32,
    pub coefficients: Vec<DocFglTerm>,
}

impl DocFgl {
    pub fn to_series(&self) -> DocResult<TruncatedSeries> {
        let ring = self.ring.to_ring()?;
        let mut terms = Vec::with_capacity(self.coefficients.len());
        for term in &self.coefficients {
            let exps = monomial_exps(&ring, &term.monomial)?;
            let value = parse_rat(&term.value)?;
            let poly = GradedPolynomial::monomial(&ring, exps, value)?;
            terms.push((vec![term.xexp, term.yexp], poly));
        }
        Ok(TruncatedSeries::from_terms(&ring, 2, self.truncation, terms)?)
    }

    pub fn from_series(series: &TruncatedSeries) -> Self {
        assert_eq!(series.vars(), 2);
        let ring = series.ring();
        let mut coefficients = Vec::new();
        for (e, poly) in series.iter() {
            let exps = e.as_slice();
            for (mono, value) in poly.iter() {
                coefficients.push(DocFglTerm {
                    xexp: exps[0],
                    yexp: exps[1],
                    monomial: monomial_map(ring, mono.as_slice()),
                    value: format_rat(value),
                });
            }
        }
        DocFgl {
            ring: DocRing::from_ring(ring),
            truncation: series.truncation(),
            coefficients,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocSeriesTerm {
    pub exp: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monomial: BTreeMap<String, u32>,
    pub value: String,
}

/// A univariate series document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocSeries {
    pub ring: DocRing,
    pub truncation: u32,
    pub coefficients: Vec<DocSeriesTerm>,
}

impl DocSeries {
    pub fn to_series(&self) -> DocResult<TruncatedSeries> {
        let ring = self.ring.to_ring()?;
        let mut terms = Vec::with_capacity(self.coefficients.len());
        for term in &self.coefficients {
            let exps = monomial_exps(&ring, &term.monomial)?;
            let value = parse_rat(&term.value)?;
            let poly = GradedPolynomial::monomial(&ring, exps, value)?;
            terms.push((vec![term.exp], poly));
        }
        Ok(TruncatedSeries::from_terms(&ring, 1, self.truncation, terms)?)
    }

    pub fn from_series(series: &TruncatedSeries) -> Self {
        assert_eq!(series.vars(), 1);
        let ring = series.ring();
        let mut coefficients = Vec::new();
        for (e, poly) in series.iter() {
            for (mono, value) in poly.iter() {
                coefficients.push(DocSeriesTerm {
                    exp: e.as_slice()[0],
                    monomial: monomial_map(ring, mono.as_slice()),
                    value: format_rat(value),
                });
            }
        }
        DocSeries {
            ring: DocRing::from_ring(ring),
            truncation: series.truncation(),
            coefficients,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocPolyTerm {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monomial: BTreeMap<String, u32>,
    pub value: String,
}

/// A polynomial document (ring given by the surrounding context).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocPoly {
    pub terms: Vec<DocPolyTerm>,
}

impl DocPoly {
    pub fn from_poly(poly: &GradedPolynomial) -> Self {
        let terms = poly
            .iter()
            .map(|(mono, value)| DocPolyTerm {
                monomial: monomial_map(poly.ring(), mono.as_slice()),
                value: format_rat(value),
            })
            .collect();
        DocPoly { terms }
    }
}

/// One entry of a certificate's violation list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocViolation {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Machine-readable verdict document. `verdict` is false exactly when
/// `violations` is nonempty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub verdict: bool,
    pub violations: Vec<DocViolation>,
    pub inputs_digest: String,
}

impl Certificate {
    pub fn new(kind: &str, violations: Vec<DocViolation>, inputs_digest: String) -> Self {
        Certificate {
            kind: kind.to_string(),
            verdict: violations.is_empty(),
            violations,
            inputs_digest,
        }
    }
}

/// Canonical sha-256 digest of a JSON value, prefixed with the algorithm.
pub fn digest_of(value: &serde_json::Value) -> String {
    use sha2::{Digest, Sha256};
    let canonical = serde_json::to_string(value).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("sha256:{}", hex::encode(hasher.finalize()))
}
