//! Deterministic serialization of spectra.
//!
//! Reports carry no timestamps or host identifiers; identical inputs
//! produce byte-identical output. Floats are rounded to 15 significant
//! digits before JSON emission and printed as `%.14e` in CSV, so both
//! formats encode exactly the same data.

use serde::Serialize;

use crate::berger::{self, BergerParams};
use crate::geometry::Group;
use crate::laplacian::{Spectrum, SpectrumEntry};

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap()
}

/// Fixed-precision float formatting used in CSV output.
pub fn fmt15(x: f64) -> String {
    format!("{x:.14e}")
}

/// One serialized spectrum row; `family` is populated only by the
/// closed-form Berger generator.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRecord {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub k: usize,
    pub degree: u8,
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

impl From<&SpectrumEntry> for SpectrumRecord {
    fn from(e: &SpectrumEntry) -> Self {
        SpectrumRecord {
            eigenvalue: round15(e.eigenvalue),
            multiplicity: e.multiplicity,
            k: e.k,
            degree: e.degree,
            tag: e.tag.to_string(),
            family: None,
        }
    }
}

pub fn spectrum_records(spec: &Spectrum) -> Vec<SpectrumRecord> {
    spec.entries.iter().map(SpectrumRecord::from).collect()
}

/// Closed-form Berger spectrum rows up to `k_max`, with family
/// provenance and global multiplicities. The ν family are the exact
/// eigenforms; every μ is coexact.
pub fn berger_records(p: &BergerParams, group: Group, k_max: usize) -> Vec<SpectrumRecord> {
    let weights = crate::laplacian::contributing_weights(group, k_max);
    let mut records = Vec::new();
    for k in weights {
        for ev in berger::berger_block_spectrum(k, p) {
            let tag = match ev.family {
                berger::BergerFamily::Nu { .. } => "exact",
                _ => "coexact",
            };
            records.push(SpectrumRecord {
                eigenvalue: round15(ev.value),
                multiplicity: k + 1,
                k,
                degree: 1,
                tag: tag.to_string(),
                family: Some(ev.family.to_string()),
            });
        }
    }
    records.sort_by(|a, b| {
        a.eigenvalue
            .partial_cmp(&b.eigenvalue)
            .unwrap()
            .then(a.k.cmp(&b.k))
    });
    records
}

/// CSV encoding of spectrum rows: header plus one line per record.
pub fn records_to_csv(records: &[SpectrumRecord]) -> String {
    let with_family = records.iter().any(|r| r.family.is_some());
    let mut out = String::from("eigenvalue,multiplicity,k,degree,tag");
    if with_family {
        out.push_str(",family");
    }
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}",
            fmt15(r.eigenvalue),
            r.multiplicity,
            r.k,
            r.degree,
            r.tag
        ));
        if with_family {
            out.push(',');
            out.push_str(r.family.as_deref().unwrap_or(""));
        }
        out.push('\n');
    }
    out
}
