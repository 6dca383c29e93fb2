//! Serializable output documents. Field order is declaration order and maps
//! are sorted, so output is byte-stable for a fixed input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use twist_cert_core::rational::to_exact_string;
use twist_cert_core::traintrack::{IntMatrix, QuadraticNumber};
use twist_cert_core::{Certificate, Verdict, Witness};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 10;
pub const EXIT_UNKNOWN: i32 = 20;
pub const EXIT_INPUT: i32 = 1;

/// Largest magnitude written as a bare JSON number.
const SAFE: i64 = (1 << 53) - 1;

/// Integer written as a JSON number when it is safe for double-based
/// readers, otherwise as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntOut(pub BigInt);

impl From<u64> for IntOut {
    fn from(v: u64) -> Self {
        IntOut(v.into())
    }
}

impl From<&BigInt> for IntOut {
    fn from(v: &BigInt) -> Self {
        IntOut(v.clone())
    }
}

impl Serialize for IntOut {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) if (-SAFE..=SAFE).contains(&v) => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<IntOut>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(IntOut::from).collect())
        .collect()
}

#[derive(Debug, Serialize)]
pub struct QuadraticDoc {
    pub a: String,
    pub b: String,
    pub d: IntOut,
    pub text: String,
}

impl From<&QuadraticNumber> for QuadraticDoc {
    fn from(q: &QuadraticNumber) -> Self {
        QuadraticDoc {
            a: to_exact_string(q.a()),
            b: to_exact_string(q.b()),
            d: IntOut::from(q.d()),
            text: q.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub kind: &'static str,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<IntOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Relation(r) => WitnessDoc {
                kind: "relation",
                statement: r.statement(),
                relation: Some(r.name.as_str()),
                word: None,
                trace: None,
                m: None,
                n: None,
            },
            Witness::ReducibleWord { word, trace, m, n } => WitnessDoc {
                kind: "reducible_word",
                statement: w.statement(),
                relation: None,
                word: Some(word.to_string()),
                trace: Some(IntOut::from(trace)),
                m: Some(*m),
                n: Some(*n),
            },
            Witness::IdentityWord { word, m, n } => WitnessDoc {
                kind: "identity_word",
                statement: w.statement(),
                relation: None,
                word: Some(word.to_string()),
                trace: None,
                m: Some(*m),
                n: Some(*n),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateDoc {
    pub verdict: &'static str,
    pub basis: Option<&'static str>,
    pub parameters: BTreeMap<String, String>,
    pub witness: Option<WitnessDoc>,
    pub notes: Vec<String>,
}

impl From<&Certificate> for CertificateDoc {
    fn from(c: &Certificate) -> Self {
        CertificateDoc {
            verdict: c.verdict().as_str(),
            basis: c.basis().map(|b| b.tag()),
            parameters: c
                .parameters()
                .iter()
                .map(|(k, v)| (k.clone(), to_exact_string(v)))
                .collect(),
            witness: c.witness().map(WitnessDoc::from),
            notes: c.notes().to_vec(),
        }
    }
}

pub fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::CertifiedFree | Verdict::CertifiedRelPA => EXIT_POSITIVE,
        Verdict::CertifiedNotFree | Verdict::CertifiedNotRelPA => EXIT_NEGATIVE,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

/// Certificate document and its exit code.
pub fn emit_certificate(cert: &Certificate) -> (String, i32) {
    let doc = CertificateDoc::from(cert);
    (
        serde_json::to_string_pretty(&doc).expect("serializable"),
        verdict_exit(cert.verdict()),
    )
}
