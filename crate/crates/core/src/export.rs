//! On-disk document formats: Family A and ADS caches (JSON), correlation
//! reports (JSON), per-shift profiles and tables (CSV).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{TableRecord, TheoremParams};
use crate::diffset::{classify_set, CosetPattern, CyclicSubset, DsKind, SetClassification};
use crate::qcss::{CorrelationReport, Optimality, Provenance, QcssSet, ShiftClass};
use crate::z4::{FamilyA, Z4Polynomial, Z4Sequence};
use crate::{Error, Result};

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document types serialize");
    s.push('\n');
    s
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed document: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub n: u32,
    pub polynomial: Vec<u8>,
    pub members: Vec<Vec<u8>>,
    pub l0_index: usize,
}

impl FamilyDocument {
    pub fn from_family(family: &FamilyA) -> Self {
        FamilyDocument {
            n: family.n(),
            polynomial: family.generator().coefficients().to_vec(),
            members: family.members().iter().map(|m| m.symbols().to_vec()).collect(),
            l0_index: 0,
        }
    }

    /// Rebuilds and fully re-validates the family.
    pub fn into_family(self) -> Result<FamilyA> {
        if self.l0_index != 0 {
            return Err(Error::invalid("l0_index must be 0"));
        }
        let generator = Z4Polynomial::new(self.polynomial)?;
        let members = self
            .members
            .into_iter()
            .map(Z4Sequence::new)
            .collect::<Result<Vec<_>>>()?;
        FamilyA::from_parts(self.n, generator, members)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdsDocument {
    pub f: u32,
    pub ds: DsKind,
    pub q: u32,
    pub elements: Vec<u32>,
    pub classification: SetClassification,
    pub pattern: CosetPattern,
}

impl AdsDocument {
    pub fn new(f: u32, ds: DsKind, set: &CyclicSubset, pattern: CosetPattern) -> Self {
        AdsDocument {
            f,
            ds,
            q: set.modulus(),
            elements: set.elements().to_vec(),
            classification: classify_set(set),
            pattern,
        }
    }

    /// Rebuilds the set and re-classifies it; the stored classification must
    /// match the measured one.
    pub fn into_subset(self) -> Result<CyclicSubset> {
        let set = CyclicSubset::new(self.q, self.elements)?;
        let measured = classify_set(&set);
        if measured != self.classification {
            return Err(Error::ConstructionFailure {
                reason: format!(
                    "stored classification {} disagrees with measured {measured}",
                    self.classification
                ),
                witness: None,
                measured: Some(measured),
            });
        }
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub q: u32,
}

/// Claimed versus measured values. Never a pass/fail criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremComparison {
    pub claimed_delta: f64,
    pub measured_delta: f64,
    pub claimed_rho_range: (f64, f64),
    pub measured_rho: Option<f64>,
    pub delta_within_claim: bool,
    pub rho_within_claim: bool,
}

impl TheoremComparison {
    pub fn new(params: &TheoremParams, report: &CorrelationReport) -> Self {
        let (lo, hi) = params.claimed_rho_range;
        TheoremComparison {
            claimed_delta: params.claimed_delta,
            measured_delta: report.delta_max,
            claimed_rho_range: params.claimed_rho_range,
            measured_rho: report.rho,
            delta_within_claim: report.delta_max <= params.claimed_delta + 1e-6,
            rho_within_claim: report.rho.is_some_and(|r| r > lo && r < hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument {
    pub parameters: Parameters,
    pub provenance: Provenance,
    #[serde(flatten)]
    pub correlation: CorrelationReport,
    pub optimality: Option<Optimality>,
    pub alpha_max: Option<f64>,
    pub theorem: Option<TheoremComparison>,
}

impl ReportDocument {
    pub fn new(set: &QcssSet, correlation: CorrelationReport) -> Self {
        let optimality = correlation.rho.map(Optimality::from_rho);
        ReportDocument {
            parameters: Parameters { k: set.k(), m: set.m(), n: set.n(), q: set.q() },
            provenance: set.provenance.clone(),
            correlation,
            optimality,
            alpha_max: None,
            theorem: None,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }
}

/// `tau,class,maxMagnitude`, one row per shift.
pub fn profile_csv(report: &CorrelationReport, q: u32) -> String {
    let mut out = String::from("tau,class,maxMagnitude\n");
    for (tau, m) in report.per_shift_max.iter().enumerate() {
        let _ = writeln!(out, "{tau},{},{m:.9}", ShiftClass::of(tau, q).as_str());
    }
    out
}

/// `f_or_q,K,M,K_over_M,rho` with `rho` rounded to `digits` decimals.
pub fn table_csv(records: &[TableRecord], digits: usize) -> String {
    let mut out = String::from("f_or_q,K,M,K_over_M,rho\n");
    for r in records {
        let _ = writeln!(out, "{},{},{},{},{:.*}", r.f_or_q, r.k, r.m, r.k_over_m, digits, r.rho);
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> String {
    to_json(value)
}
