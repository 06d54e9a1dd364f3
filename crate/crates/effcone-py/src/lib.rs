//! Python bindings for the cone engine, the table regression, and the
//! positivity certificates.
//!
//! Vectors cross the boundary as lists of ints in the table coordinates
//! (degree block first, then the exceptional block with nonpositive entries
//! for effective classes).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use effcone::catalog::{Catalog, VarietyId};
use effcone::exactcone::{self, IntVector};
use effcone::fano;
use effcone::io::tables::TableKind;
use effcone::lattice::Lattice;
use effcone::pipeline;

use num_bigint::BigInt;
use num_rational::BigRational;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_vectors(rows: Vec<Vec<i64>>) -> Vec<IntVector> {
    rows.iter().map(|r| IntVector::from_i64(r)).collect()
}

fn from_vectors(rows: &[IntVector]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| (0..r.dim()).map(|i| r.entry_i64(i)).collect())
        .collect()
}

fn parse_variety(name: &str) -> PyResult<VarietyId> {
    VarietyId::parse(name).map_err(err)
}

/// Extreme rays of `{x : f . x >= 0}`; returns (rays, irredundant facets,
/// lineality dimension).
#[pyfunction]
fn extreme_rays(facets: Vec<Vec<i64>>, dim: usize) -> PyResult<(Vec<Vec<i64>>, Vec<Vec<i64>>, usize)> {
    let cone = exactcone::extreme_rays(&to_vectors(facets), dim).map_err(err)?;
    Ok((
        from_vectors(cone.rays()),
        from_vectors(cone.facets()),
        cone.lineality_dim(),
    ))
}

/// Minimal supporting inequalities of the cone spanned by the rows.
#[pyfunction]
fn facets(rays: Vec<Vec<i64>>, dim: usize) -> PyResult<(Vec<Vec<i64>>, Vec<Vec<i64>>, usize)> {
    let cone = exactcone::facets(&to_vectors(rays), dim).map_err(err)?;
    Ok((
        from_vectors(cone.rays()),
        from_vectors(cone.facets()),
        cone.lineality_dim(),
    ))
}

#[pyfunction]
fn minimal_generators(rays: Vec<Vec<i64>>) -> PyResult<Vec<Vec<i64>>> {
    Ok(from_vectors(
        &exactcone::minimal_generators(&to_vectors(rays)).map_err(err)?,
    ))
}

/// Names of all catalogued varieties.
#[pyfunction]
fn varieties() -> Vec<String> {
    VarietyId::ALL.iter().map(|v| v.to_string()).collect()
}

/// Expanded reference table of a variety, kind `generators` or
/// `inequalities`.
#[pyfunction]
fn table(variety: &str, kind: &str) -> PyResult<Vec<Vec<i64>>> {
    let catalog = Catalog::bundled();
    let kind = match kind {
        "generators" => TableKind::Generators,
        "inequalities" => TableKind::Inequalities,
        other => return Err(err(format!("unknown kind `{other}`"))),
    };
    let rows = catalog.expanded(parse_variety(variety)?, kind).map_err(err)?;
    Ok(from_vectors(&rows))
}

/// Recomputes the cone of a variety and compares it to the tables.
#[pyfunction]
fn verify(py: Python<'_>, variety: &str) -> PyResult<Py<PyDict>> {
    let catalog = Catalog::bundled();
    let report = pipeline::verify(&catalog, parse_variety(variety)?).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("variety", report.variety.to_string())?;
    dict.set_item("exact", report.is_exact())?;
    dict.set_item("ray_count", report.computed_rays.len())?;
    dict.set_item("facet_count", report.computed_facets.len())?;
    dict.set_item("missing_generators", from_vectors(&report.missing_generators))?;
    dict.set_item("spurious_generators", from_vectors(&report.spurious_generators))?;
    dict.set_item("missing_inequalities", from_vectors(&report.missing_inequalities))?;
    dict.set_item("spurious_inequalities", from_vectors(&report.spurious_inequalities))?;
    Ok(dict.unbind())
}

/// Anticanonical cube `54 - 8s` and the weak Fano verdict for the blowup of
/// P^1 x P^2 in `s` points.
#[pyfunction]
fn weak_fano(s: u32) -> PyResult<(i64, bool)> {
    let report = fano::weak_fano_check(s).map_err(err)?;
    Ok((report.anticanonical_cube, report.weak_fano))
}

/// Mori-dream-space status of the blowup of P^1 x P^n in `s` very general
/// points: "mds", "not_mds" or "open".
#[pyfunction]
fn mds_status(n: u32, s: u32) -> &'static str {
    match fano::mds_status(n, s) {
        fano::MdsStatus::Mds => "mds",
        fano::MdsStatus::NotMds => "not_mds",
        fano::MdsStatus::Open => "open",
    }
}

/// Log Fano certificate for the fourfold with `s` in {5, 6} points at the
/// boundary parameter `eps_num / eps_den`; returns the log discrepancies as
/// strings.
#[pyfunction]
fn log_fano(s: u32, eps_num: i64, eps_den: i64) -> PyResult<Vec<String>> {
    let eps = BigRational::new(BigInt::from(eps_num), BigInt::from(eps_den));
    let report = fano::log_fano_certificate(s, &eps).map_err(err)?;
    Ok(report.discrepancies.iter().map(|a| a.to_string()).collect())
}

/// Virtual dimension of a divisor class row on the blowup of P^m x P^n.
#[pyfunction]
fn virtual_dim(m: u32, n: u32, class_row: Vec<i64>) -> PyResult<i64> {
    let points = class_row.len() as u32 - (if m > 0 { 1 } else { 0 }) - (if n > 0 { 1 } else { 0 });
    let lattice = Lattice::ProductBlowup { m, n, points };
    let v = lattice
        .virtual_dim(&IntVector::from_i64(&class_row))
        .map_err(err)?;
    i64::try_from(v).map_err(|_| err("value out of range"))
}

/// Top self-intersection of a divisor class row on the blowup of P^m x P^n.
#[pyfunction]
fn top_self_intersection(m: u32, n: u32, class_row: Vec<i64>) -> PyResult<i64> {
    let points = class_row.len() as u32 - (if m > 0 { 1 } else { 0 }) - (if n > 0 { 1 } else { 0 });
    let lattice = Lattice::ProductBlowup { m, n, points };
    let v = lattice
        .top_self_intersection(&IntVector::from_i64(&class_row))
        .map_err(err)?;
    i64::try_from(v).map_err(|_| err("value out of range"))
}

#[pymodule]
fn effcone_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(extreme_rays, m)?)?;
    m.add_function(wrap_pyfunction!(facets, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_generators, m)?)?;
    m.add_function(wrap_pyfunction!(varieties, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(weak_fano, m)?)?;
    m.add_function(wrap_pyfunction!(mds_status, m)?)?;
    m.add_function(wrap_pyfunction!(log_fano, m)?)?;
    m.add_function(wrap_pyfunction!(virtual_dim, m)?)?;
    m.add_function(wrap_pyfunction!(top_self_intersection, m)?)?;
    Ok(())
}
