//! Machine-readable documents. Field order is fixed by declaration order,
//! so serialized output is byte-stable.

use super::expr;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::ideals::{classify, Ambient, GenWitness, IdealPresentation, MembershipWitness};
use crate::rings::RingSpec;
use crate::stci::{Certificate, ObstructionReport, TraceStep};
use crate::verify::{Check, OracleReport, RadicalMembership, RadicalProof, SideProof, Witness, ZCheck};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub ring: String,
    pub target: String,
    pub ambient: String,
    pub shape: String,
    pub height: u32,
    pub generators: Vec<String>,
    pub exponent_hints: Vec<u32>,
    pub trace: Vec<TraceStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub status: String,
    pub bound_used: u32,
    pub seed: u64,
    pub inward: Vec<CheckDoc>,
    pub outward: Vec<CheckDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_set: Option<TestSetDoc>,
    pub spot_checks: Vec<CheckDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extended_checks: Vec<CheckDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub element: String,
    pub exponent: u32,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestSetDoc {
    pub elements: Vec<String>,
    pub justification: String,
}

pub fn ambient_from_name(s: &str) -> Result<Ambient> {
    match s {
        "base" => Ok(Ambient::Base),
        "poly" => Ok(Ambient::Poly),
        "extended" => Ok(Ambient::Extended),
        other => Err(Error::Usage(format!("unknown ambient `{other}`"))),
    }
}

fn witness_strings(w: &Witness) -> Vec<String> {
    let shown = |v: &[crate::poly::UniPoly]| v.iter().map(|c| c.to_string()).collect();
    match w {
        Witness::Prime(MembershipWitness::Combination(v)) | Witness::Generated(GenWitness::Combination(v)) => shown(v),
        Witness::Prime(MembershipWitness::Zero) => vec!["zero".into()],
        Witness::Prime(MembershipWitness::EvalZero) => vec!["evaluation".into()],
        Witness::Prime(MembershipWitness::Lattice) | Witness::Generated(GenWitness::Lattice) => vec!["lattice".into()],
    }
}

pub fn check_doc(c: &Check) -> CheckDoc {
    CheckDoc { element: c.element.to_string(), exponent: c.n, witness: witness_strings(&c.witness) }
}

fn zcheck_doc(c: &ZCheck) -> CheckDoc {
    let witness = c
        .witnesses
        .iter()
        .map(|w| match w {
            GenWitness::Combination(v) => {
                let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                format!("[{}]", parts.join(", "))
            }
            GenWitness::Lattice => "lattice".into(),
        })
        .collect();
    CheckDoc { element: c.element.to_string(), exponent: c.n, witness }
}

pub fn verification_doc(proof: &RadicalProof, seed: u64) -> VerificationDoc {
    VerificationDoc {
        status: "verified".into(),
        bound_used: proof.bound_used,
        seed,
        inward: proof.inward.iter().map(check_doc).collect(),
        outward: proof.outward.iter().map(check_doc).collect(),
        test_set: proof.test_set.as_ref().map(|t| TestSetDoc {
            elements: t.elements.iter().map(|e| e.to_string()).collect(),
            justification: t.justification.clone(),
        }),
        spot_checks: proof.spot_checks.iter().map(check_doc).collect(),
        extended_checks: proof.extended_checks.iter().map(zcheck_doc).collect(),
    }
}

pub fn certificate_doc(c: &Certificate, proof: Option<&RadicalProof>, seed: u64) -> CertificateDoc {
    CertificateDoc {
        ring: c.ring().to_string(),
        target: c.target.to_string(),
        ambient: c.target.ambient().name().into(),
        shape: c.target.shape_name().into(),
        height: c.target.height(),
        generators: c.generators.iter().map(|g| g.to_string()).collect(),
        exponent_hints: c.exponent_hints.clone(),
        trace: c.trace.clone(),
        verification: proof.map(|p| verification_doc(p, seed)),
    }
}

impl CertificateDoc {
    pub fn parse(raw: &str) -> Result<Self> {
        serde_json::from_str(raw).map_err(|e| Error::Usage(format!("invalid certificate document: {e}")))
    }

    /// Rebuild the certificate, reclassifying the target from its text.
    pub fn to_certificate(&self, cfg: &Config) -> Result<Certificate> {
        let ring: RingSpec = self.ring.parse()?;
        let ambient = ambient_from_name(&self.ambient)?;
        let pres = expr::parse_ideal(ring, ambient, &self.target)?;
        let mut target = classify(&pres, cfg)?;
        while target.ambient() < ambient {
            target = target.extend()?;
        }
        if target.shape_name() != self.shape {
            return Err(Error::Usage(format!(
                "target {} classifies as {}, but the document says {}",
                self.target,
                target.shape_name(),
                self.shape
            )));
        }
        let generators: Result<Vec<_>> = self.generators.iter().map(|g| expr::parse_poly(ring, g)).collect();
        Ok(Certificate {
            target,
            generators: generators?,
            exponent_hints: self.exponent_hints.clone(),
            trace: self.trace.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyDoc {
    pub ring: String,
    pub ideal: String,
    pub ambient: String,
    pub shape: String,
    pub height: u32,
    pub normal_form: String,
    pub contraction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDoc {
    pub ring: String,
    pub ideal: String,
    pub element: String,
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub bound: u32,
}

impl WitnessDoc {
    pub fn new(ring: RingSpec, ideal: String, element: String, r: &RadicalMembership, bound: u32) -> Self {
        let (result, exponent, witness, reason) = match r {
            RadicalMembership::Found { n, witness } => ("found", Some(*n), witness_strings(witness), None),
            RadicalMembership::Refuted { reason } => ("refuted", None, Vec::new(), Some(reason.clone())),
            RadicalMembership::NotProven { reason, .. } => ("not-proven", None, Vec::new(), Some(reason.clone())),
        };
        WitnessDoc { ring: ring.to_string(), ideal, element, result: result.into(), exponent, witness, reason, bound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingCoefficient {
    pub n: u32,
    pub coefficient: String,
    pub subring_member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionDoc {
    pub ring: String,
    pub element: String,
    pub kernel: String,
    pub forced_form: String,
    pub monic_member: String,
    pub failing_coefficients: Vec<FailingCoefficient>,
    pub conclusion: String,
    pub trace: Vec<TraceStep>,
}

impl From<&ObstructionReport> for ObstructionDoc {
    fn from(r: &ObstructionReport) -> Self {
        ObstructionDoc {
            ring: r.ring.to_string(),
            element: r.element.to_string(),
            kernel: r.kernel.to_string(),
            forced_form: r.forced_form.clone(),
            monic_member: r.monic_member.to_string(),
            failing_coefficients: r
                .failing_coefficients
                .iter()
                .map(|(n, c)| FailingCoefficient { n: *n, coefficient: c.to_string(), subring_member: false })
                .collect(),
            conclusion: r.conclusion.clone(),
            trace: r.trace.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentDoc {
    pub ring: String,
    pub generators: Vec<String>,
    pub maximal: String,
    pub contents: Vec<String>,
    pub a: String,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityDoc {
    pub ring: String,
    pub lhs: String,
    pub rhs: String,
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub forward: Vec<CheckDoc>,
    pub backward: Vec<CheckDoc>,
}

impl EqualityDoc {
    pub fn new(ring: RingSpec, lhs: &IdealPresentation, rhs: &IdealPresentation) -> Self {
        EqualityDoc {
            ring: ring.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            result: String::new(),
            reason: None,
            forward: Vec::new(),
            backward: Vec::new(),
        }
    }

    pub fn with_proof(mut self, p: &SideProof) -> Self {
        self.result = "equal".into();
        self.forward = p.forward.iter().map(check_doc).collect();
        self.backward = p.backward.iter().map(check_doc).collect();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleDoc {
    pub ring: String,
    pub lhs: String,
    pub rhs: String,
    pub cap: u32,
    pub enumerated: String,
    pub lhs_count: u64,
    pub rhs_count: u64,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreement: Option<String>,
}

impl OracleDoc {
    pub fn new(ring: RingSpec, lhs: &IdealPresentation, rhs: &IdealPresentation, cap: u32, r: &OracleReport) -> Self {
        OracleDoc {
            ring: ring.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            cap,
            enumerated: r.enumerated.to_string(),
            lhs_count: r.lhs_count,
            rhs_count: r.rhs_count,
            agree: r.agree(),
            disagreement: r.disagreement.as_ref().map(|d| d.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorDoc {
    pub status: String,
    pub exit_code: i32,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<&Error> for ErrorDoc {
    fn from(e: &Error) -> Self {
        let code = e.outcome().exit_code();
        let status = match code {
            2 => "refuted",
            3 => "not-proven",
            _ => "usage",
        };
        let witness = match e {
            Error::NotPrime { witness, .. } => witness.clone(),
            _ => None,
        };
        ErrorDoc { status: status.into(), exit_code: code, message: e.to_string(), witness }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize") + "\n"
}
