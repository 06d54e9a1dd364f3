//! JSON serialization of verification reports and cone computations.
//!
//! The layout is schema-stable: rows are emitted in lexicographic order and
//! timings are kept out, so the same input always produces byte-identical
//! output.

use serde::Serialize;

use crate::exactcone::{Cone, IntVector};
use crate::pipeline::{ConeReport, VerifyMode};

fn rows_to_json(rows: &[IntVector]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| (0..r.dim()).map(|i| r.entry_i64(i)).collect())
        .collect();
    out.sort();
    out
}

#[derive(Serialize)]
pub struct JsonReport {
    pub variety: String,
    pub mode: VerifyMode,
    pub status: &'static str,
    pub ray_count: usize,
    pub facet_count: usize,
    pub missing_generators: Vec<Vec<i64>>,
    pub spurious_generators: Vec<Vec<i64>>,
    pub missing_inequalities: Vec<Vec<i64>>,
    pub spurious_inequalities: Vec<Vec<i64>>,
}

impl JsonReport {
    pub fn from_report(report: &ConeReport) -> Self {
        JsonReport {
            variety: report.variety.to_string(),
            mode: report.mode,
            status: if report.is_exact() { "exact" } else { "discrepancy" },
            ray_count: report.computed_rays.len(),
            facet_count: report.computed_facets.len(),
            missing_generators: rows_to_json(&report.missing_generators),
            spurious_generators: rows_to_json(&report.spurious_generators),
            missing_inequalities: rows_to_json(&report.missing_inequalities),
            spurious_inequalities: rows_to_json(&report.spurious_inequalities),
        }
    }
}

#[derive(Serialize)]
pub struct JsonCone {
    pub dim: usize,
    pub lineality_dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
}

impl JsonCone {
    pub fn from_cone(cone: &Cone) -> Self {
        JsonCone {
            dim: cone.dim(),
            lineality_dim: cone.lineality_dim(),
            rays: rows_to_json(cone.rays()),
            facets: rows_to_json(cone.facets()),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Catalog, VarietyId};
    use crate::pipeline::verify;

    #[test]
    fn json_output_is_deterministic() {
        let c = Catalog::bundled();
        let report = verify(&c, VarietyId::X122).unwrap();
        let a = to_json(&JsonReport::from_report(&report));
        let report2 = verify(&c, VarietyId::X122).unwrap();
        let b = to_json(&JsonReport::from_report(&report2));
        assert_eq!(a, b);
        assert!(a.contains("\"status\": \"exact\""));
    }
}
