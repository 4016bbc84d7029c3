//! Machine-readable run reports: deterministic JSON with canonical surd
//! text for every exact quantity.

use serde::Serialize;

use crate::classify::Classification;
use crate::params::ScanRow;
use crate::torus::{Counts, QuotientVerdict};

#[derive(Serialize, Clone, Debug, Default)]
pub struct CountsJson {
    pub v: u64,
    pub e: u64,
    pub f: u64,
    pub flags: u64,
    pub group_order: u64,
}

impl From<Counts> for CountsJson {
    fn from(c: Counts) -> Self {
        CountsJson {
            v: c.v,
            e: c.e,
            f: c.f,
            flags: c.flags,
            group_order: c.group_order,
        }
    }
}

/// One quotient verdict in the external JSON schema.
#[derive(Serialize, Clone, Debug)]
pub struct VerdictJson {
    pub polyhedron: String,
    pub lattice_family: String,
    pub params: Vec<String>,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub counts: CountsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_prediction: Option<bool>,
    pub discrepancy: bool,
}

impl VerdictJson {
    pub fn from_verdict(
        polyhedron: &str,
        family: &str,
        params: &[String],
        v: &QuotientVerdict,
        prediction: Option<bool>,
    ) -> Self {
        VerdictJson {
            polyhedron: polyhedron.to_string(),
            lattice_family: family.to_string(),
            params: params.to_vec(),
            accepted: v.accepted,
            reason: v.reason.map(|r| r.label().to_string()),
            counts: v.counts.into(),
            table_prediction: prediction,
            discrepancy: prediction.map_or(false, |p| p != v.accepted),
        }
    }

    pub fn from_scan_row(r: &ScanRow) -> Self {
        VerdictJson {
            polyhedron: r.polyhedron.clone(),
            lattice_family: r.family.id().to_string(),
            params: r.params.iter().map(|p| p.to_string()).collect(),
            accepted: r.accepted,
            reason: r.reason.map(|x| x.label().to_string()),
            counts: r.counts.into(),
            table_prediction: Some(r.table_prediction),
            discrepancy: r.discrepancy,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ClassificationJson {
    pub family: String,
    pub diag: Vec<String>,
    pub witness: Vec<Vec<i128>>,
}

impl From<&Classification> for ClassificationJson {
    fn from(c: &Classification) -> Self {
        ClassificationJson {
            family: c.family.id().to_string(),
            diag: c.diag.iter().map(|d| d.to_string()).collect(),
            witness: c.witness.clone(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
#[serde(tag = "item", rename_all = "kebab-case")]
pub enum ReportItem {
    Verdict(VerdictJson),
    Classification(ClassificationJson),
    CrystalCheck {
        pass: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        offender: Option<String>,
    },
    Calibration {
        table: u8,
        orientation: String,
        unresolved: Vec<String>,
    },
    CatalogEntry {
        name: String,
        schlafli: String,
        polyhedron_kind: String,
        base_vertex: Vec<String>,
        h_class: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        petrie_partner: Option<String>,
        lattice_families: Vec<String>,
    },
}

/// Top-level report: deterministic for identical inputs (items are emitted
/// in sorted job order, all numbers in canonical surd text).
#[derive(Serialize, Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub typo_corrections: Vec<String>,
    pub items: Vec<ReportItem>,
    pub discrepancies: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            typo_corrections: crate::catalog::corrections_log(),
            items: Vec::new(),
            discrepancies: 0,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
