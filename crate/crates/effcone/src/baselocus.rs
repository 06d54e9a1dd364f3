//! Base-locus multiplicity bounds for the fixed-divisor families, and the
//! effectivity inequalities they contribute to the cone pipeline.
//!
//! Every rule comes from a covering-curve computation: a fixed divisor `F`
//! swept by curves of a class `C` with `F . C = -f < 0` forces `F` into the
//! base locus of `D` at least `ceil((-D . C) / f)` times. The inequality fed
//! to the pipeline is the statement that this bound is zero.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactcone::IntVector;
use crate::lattice::{Lattice, SurfaceLattice};
use crate::num::ceil_div_clamped;

/// Fixed-divisor families with catalogued base-locus bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum RuleId {
    /// Exceptional divisor over a point.
    ExcPoint,
    /// Exceptional divisor over the blown-up line.
    ExcLine,
    /// Fibre divisor `H1 - Ei` on blowups of P^1 x P^n.
    FibrePlane,
    /// `H2 - Ei - Ej` on blowups of P^1 x P^2.
    PairPlane,
    /// Bidegree (1,1) surface through five points on blowups of P^1 x P^2.
    Deg11Surface,
    /// Bidegree (0,2) surface through five points on blowups of P^1 x P^2.
    Deg02Surface,
    /// Bidegree (1,4) surface with one triple point on the 6-point blowup
    /// of P^1 x P^2.
    Deg14Surface,
    /// Plane through three points on line blowups of P^3.
    PointPlane,
    /// Plane through the line and one point on line blowups of P^3.
    LinePlane,
    /// Quadric cone through six points, singular at one of them, on the
    /// 6-point line blowup of P^3.
    NodalQuadric,
    /// Bidegree (1,1) divisor through the line and three points on line
    /// blowups of P^1 x P^2.
    LineDeg11,
    /// Plane `H2 - Ei - Ej - Ek` on blowups of P^1 x P^3.
    TriplePlane,
}

impl RuleId {
    pub const ALL: [RuleId; 12] = [
        RuleId::ExcPoint,
        RuleId::ExcLine,
        RuleId::FibrePlane,
        RuleId::PairPlane,
        RuleId::Deg11Surface,
        RuleId::Deg02Surface,
        RuleId::Deg14Surface,
        RuleId::PointPlane,
        RuleId::LinePlane,
        RuleId::NodalQuadric,
        RuleId::LineDeg11,
        RuleId::TriplePlane,
    ];

    /// Number of distinct point indices a family member is attached to.
    pub fn arity(&self) -> usize {
        match self {
            RuleId::ExcLine => 0,
            RuleId::ExcPoint | RuleId::FibrePlane | RuleId::Deg14Surface | RuleId::LinePlane
            | RuleId::NodalQuadric => 1,
            RuleId::PairPlane => 2,
            RuleId::PointPlane | RuleId::LineDeg11 | RuleId::TriplePlane => 3,
            RuleId::Deg11Surface | RuleId::Deg02Surface => 5,
        }
    }

    pub fn applies_to(&self, lattice: &Lattice) -> bool {
        let s = lattice.points();
        match (self, lattice) {
            (RuleId::ExcPoint, _) => s >= 1,
            (RuleId::ExcLine, Lattice::LineBlowupP3 { .. })
            | (RuleId::ExcLine, Lattice::LineBlowupP1P2 { .. }) => true,
            (RuleId::FibrePlane, Lattice::ProductBlowup { m: 1, .. }) => s >= 1,
            (RuleId::PairPlane, Lattice::ProductBlowup { m: 1, n: 2, .. }) => s >= 2,
            (RuleId::Deg11Surface, Lattice::ProductBlowup { m: 1, n: 2, .. }) => s >= 5,
            (RuleId::Deg02Surface, Lattice::ProductBlowup { m: 1, n: 2, .. }) => s >= 5,
            (RuleId::Deg14Surface, Lattice::ProductBlowup { m: 1, n: 2, .. }) => s == 6,
            (RuleId::PointPlane, Lattice::LineBlowupP3 { .. }) => s >= 3,
            (RuleId::LinePlane, Lattice::LineBlowupP3 { .. }) => s >= 1,
            (RuleId::NodalQuadric, Lattice::LineBlowupP3 { .. }) => s == 6,
            (RuleId::LineDeg11, Lattice::LineBlowupP1P2 { .. }) => s >= 3,
            (RuleId::TriplePlane, Lattice::ProductBlowup { m: 1, n: 3, .. }) => s >= 3,
            _ => false,
        }
    }
}

/// One family member: its index assignment, fixed class, and the bound
/// expressions as inequality rows with denominators.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub indices: Vec<usize>,
    pub fixed_class: IntVector,
    /// Rows `r` with the bound numerator `-(r . class)` and the denominator.
    pub bounds: Vec<(IntVector, i64)>,
}

/// Generic covering-curve bound: `max(0, ceil(d/f))` for `f < 0`.
pub fn generic_bound(f_dot_c: i64, d_dot_c: i64) -> Result<i64> {
    if f_dot_c >= 0 {
        return Err(Error::Invalid(
            "covering-curve pairing with the fixed divisor must be negative".into(),
        ));
    }
    Ok(ceil_div_clamped(-d_dot_c, -f_dot_c))
}

fn check_applicable(rule: RuleId, lattice: &Lattice) -> Result<()> {
    if !rule.applies_to(lattice) {
        return Err(Error::Invalid(format!(
            "rule {rule:?} does not apply to {lattice:?}"
        )));
    }
    Ok(())
}

/// Row with given degree-block coefficients and +1 multiplicity weights.
fn ineq_row(lattice: &Lattice, degree: &[i64], weights: &[(usize, i64)]) -> IntVector {
    let rank = lattice.rank();
    let deg = lattice.degree_block();
    assert!(degree.len() <= deg);
    let mut v = vec![0i64; rank];
    v[..degree.len()].copy_from_slice(degree);
    for &(slot, w) in weights {
        v[deg + slot - 1] = w;
    }
    IntVector::from_i64(&v)
}

/// Class row with given degree-block coefficients and exceptional parts.
fn class_row(lattice: &Lattice, degree: &[i64], exc: &[(usize, i64)]) -> IntVector {
    let rank = lattice.rank();
    let deg = lattice.degree_block();
    let mut v = vec![0i64; rank];
    v[..degree.len()].copy_from_slice(degree);
    for &(slot, b) in exc {
        v[deg + slot - 1] = b;
    }
    IntVector::from_i64(&v)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// All family members of a rule on the given lattice.
pub fn family_members(rule: RuleId, lattice: &Lattice) -> Result<Vec<FamilyMember>> {
    check_applicable(rule, lattice)?;
    let s = lattice.points();
    let deg = lattice.degree_block();
    let mut members = Vec::new();
    match rule {
        RuleId::ExcPoint => {
            for i in 1..=s {
                members.push(FamilyMember {
                    indices: vec![i],
                    fixed_class: class_row(lattice, &[], &[(i, 1)]),
                    bounds: vec![(ineq_row(lattice, &[], &[(i, -1)]), 1)],
                });
            }
        }
        RuleId::ExcLine => {
            // The line-exceptional slot sits right before the point block.
            let mut fixed = vec![0i64; lattice.rank()];
            fixed[deg - 1] = 1;
            let mut row = vec![0i64; lattice.rank()];
            row[deg - 1] = -1;
            members.push(FamilyMember {
                indices: vec![],
                fixed_class: IntVector::from_i64(&fixed),
                bounds: vec![(IntVector::from_i64(&row), 1)],
            });
        }
        RuleId::FibrePlane => {
            for i in 1..=s {
                members.push(FamilyMember {
                    indices: vec![i],
                    fixed_class: class_row(lattice, &[1, 0], &[(i, -1)]),
                    bounds: vec![(ineq_row(lattice, &[0, 1], &[(i, 1)]), 1)],
                });
            }
        }
        RuleId::PairPlane => {
            for pair in combinations(s, 2) {
                let w: Vec<(usize, i64)> = pair.iter().map(|&i| (i, 1)).collect();
                let e: Vec<(usize, i64)> = pair.iter().map(|&i| (i, -1)).collect();
                members.push(FamilyMember {
                    indices: pair,
                    fixed_class: class_row(lattice, &[0, 1], &e),
                    bounds: vec![(ineq_row(lattice, &[1, 1], &w), 1)],
                });
            }
        }
        RuleId::Deg11Surface => {
            for set in combinations(s, 5) {
                let w: Vec<(usize, i64)> = set.iter().map(|&i| (i, 1)).collect();
                let w2: Vec<(usize, i64)> = set.iter().map(|&i| (i, 2)).collect();
                let e: Vec<(usize, i64)> = set.iter().map(|&i| (i, -1)).collect();
                let mut bounds = vec![
                    (ineq_row(lattice, &[1, 3], &w), 1),
                    (ineq_row(lattice, &[3, 5], &w2), 2),
                ];
                if s > 5 {
                    for extra in 1..=s {
                        if set.contains(&extra) {
                            continue;
                        }
                        let mut w3 = w2.clone();
                        w3.push((extra, 1));
                        bounds.push((ineq_row(lattice, &[4, 5], &w3), 3));
                    }
                }
                members.push(FamilyMember {
                    indices: set,
                    fixed_class: class_row(lattice, &[1, 1], &e),
                    bounds,
                });
            }
        }
        RuleId::Deg02Surface => {
            for set in combinations(s, 5) {
                let w: Vec<(usize, i64)> = set.iter().map(|&i| (i, 1)).collect();
                let e: Vec<(usize, i64)> = set.iter().map(|&i| (i, -1)).collect();
                members.push(FamilyMember {
                    indices: set,
                    fixed_class: class_row(lattice, &[0, 2], &e),
                    bounds: vec![(ineq_row(lattice, &[3, 2], &w), 1)],
                });
            }
        }
        RuleId::Deg14Surface => {
            for a in 1..=s {
                let mut w = vec![(a, 2)];
                let mut e = vec![(a, -3)];
                for i in 1..=s {
                    if i != a {
                        w.push((i, 1));
                        e.push((i, -2));
                    }
                }
                members.push(FamilyMember {
                    indices: vec![a],
                    fixed_class: class_row(lattice, &[1, 4], &e),
                    bounds: vec![(ineq_row(lattice, &[3, 3], &w), 1)],
                });
            }
        }
        RuleId::PointPlane => {
            for set in combinations(s, 3) {
                let w: Vec<(usize, i64)> = set.iter().map(|&i| (i, 1)).collect();
                let e: Vec<(usize, i64)> = set.iter().map(|&i| (i, -1)).collect();
                members.push(FamilyMember {
                    indices: set,
                    fixed_class: class_row(lattice, &[1, 0], &e),
                    bounds: vec![(ineq_row(lattice, &[2, 0], &w), 1)],
                });
            }
        }
        RuleId::LinePlane => {
            for i in 1..=s {
                members.push(FamilyMember {
                    indices: vec![i],
                    fixed_class: class_row(lattice, &[1, -1], &[(i, -1)]),
                    bounds: vec![(ineq_row(lattice, &[1, 1], &[(i, 1)]), 1)],
                });
            }
        }
        RuleId::NodalQuadric => {
            for j in 1..=s {
                let mut w = vec![(j, 2)];
                let mut e = vec![(j, -2)];
                for i in 1..=s {
                    if i != j {
                        w.push((i, 1));
                        e.push((i, -1));
                    }
                }
                members.push(FamilyMember {
                    indices: vec![j],
                    fixed_class: class_row(lattice, &[2, 0], &e),
                    bounds: vec![(ineq_row(lattice, &[4, 0], &w), 1)],
                });
            }
        }
        RuleId::LineDeg11 => {
            // The bound pairs against the line multiplicity as well, as the
            // covering-curve computation shows.
            for set in combinations(s, 3) {
                let w: Vec<(usize, i64)> = set.iter().map(|&i| (i, 1)).collect();
                let e: Vec<(usize, i64)> = set.iter().map(|&i| (i, -1)).collect();
                members.push(FamilyMember {
                    indices: set,
                    fixed_class: class_row(lattice, &[1, 1, -1], &e),
                    bounds: vec![(ineq_row(lattice, &[1, 2, 1], &w), 1)],
                });
            }
        }
        RuleId::TriplePlane => {
            for set in combinations(s, 3) {
                let w: Vec<(usize, i64)> = set.iter().map(|&i| (i, 1)).collect();
                let e: Vec<(usize, i64)> = set.iter().map(|&i| (i, -1)).collect();
                members.push(FamilyMember {
                    indices: set,
                    fixed_class: class_row(lattice, &[0, 1], &e),
                    bounds: vec![(ineq_row(lattice, &[1, 2], &w), 1)],
                });
            }
        }
    }
    Ok(members)
}

/// Bound for one family member on one divisor class: the maximum over its
/// bound expressions of `max(0, ceil(numerator / denominator))`.
pub fn multiplicity_bound(
    rule: RuleId,
    lattice: &Lattice,
    indices: &[usize],
    class: &IntVector,
) -> Result<i64> {
    let members = family_members(rule, lattice)?;
    let mut sorted_idx = indices.to_vec();
    sorted_idx.sort_unstable();
    if sorted_idx.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invalid("indices must be distinct".into()));
    }
    let member = members
        .iter()
        .find(|m| {
            let mut mi = m.indices.clone();
            mi.sort_unstable();
            mi == sorted_idx
        })
        .ok_or_else(|| Error::Invalid(format!("no family member with indices {indices:?}")))?;
    member_bound(member, class)
}

fn member_bound(member: &FamilyMember, class: &IntVector) -> Result<i64> {
    let mut best = 0i64;
    for (row, den) in &member.bounds {
        let num = -row.dot(class)?;
        let num = num
            .to_i64()
            .ok_or_else(|| Error::Invalid("bound numerator too large".into()))?;
        best = best.max(ceil_div_clamped(num, *den));
    }
    Ok(best)
}

/// All fixed classes of a rule's family (one per index assignment).
pub fn fixed_classes(rule: RuleId, lattice: &Lattice) -> Result<Vec<IntVector>> {
    Ok(family_members(rule, lattice)?
        .into_iter()
        .map(|m| m.fixed_class)
        .collect())
}

/// Effectivity inequalities of a rule: one row per bound expression, per
/// index choice, with the ceilings dropped. Deduplicated, set semantics.
pub fn effectivity_inequalities(rule: RuleId, lattice: &Lattice) -> Result<Vec<IntVector>> {
    let mut rows: Vec<IntVector> = Vec::new();
    for m in family_members(rule, lattice)? {
        for (row, _) in m.bounds {
            if !rows.contains(&row) {
                rows.push(row);
            }
        }
    }
    rows.sort();
    Ok(rows)
}

/// One covering-curve certificate: the denominator of a bound expression is
/// the negated intersection of the fixed class with the curve sweeping it.
pub struct CurveCertificate {
    pub lattice: Lattice,
    pub divisor: IntVector,
    pub curve: IntVector,
    /// `true` when the pairing is the stored surface form rather than the
    /// ambient divisor-curve pairing.
    pub on_surface: bool,
    pub denominator: i64,
}

fn p2_blowup(extra: usize) -> Lattice {
    let rank = 1 + extra;
    let mut gram = vec![vec![0i64; rank]; rank];
    gram[0][0] = 1;
    for i in 1..rank {
        gram[i][i] = -1;
    }
    static LABELS: [&str; 9] = ["h", "e", "e1", "e2", "e3", "e4", "e5", "e6", "e7"];
    Lattice::Surface(SurfaceLattice {
        labels: LABELS[..rank].to_vec(),
        gram,
    })
}

fn p1p1_blowup(points: usize) -> Lattice {
    let rank = 2 + points;
    let mut gram = vec![vec![0i64; rank]; rank];
    gram[0][1] = 1;
    gram[1][0] = 1;
    for i in 2..rank {
        gram[i][i] = -1;
    }
    static LABELS: [&str; 8] = ["h1", "h2", "e1", "e2", "e3", "e4", "e5", "e6"];
    Lattice::Surface(SurfaceLattice {
        labels: LABELS[..rank].to_vec(),
        gram,
    })
}

/// The covering-curve data behind each rule, for cross-checking the stored
/// denominators through the intersection pairings.
pub fn curve_certificates(rule: RuleId) -> Vec<CurveCertificate> {
    let x12 = |s: u32| Lattice::ProductBlowup { m: 1, n: 2, points: s };
    let iv = IntVector::from_i64;
    match rule {
        RuleId::ExcPoint => vec![CurveCertificate {
            lattice: x12(1),
            divisor: iv(&[0, 0, 1]),
            curve: iv(&[0, 0, 1]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::ExcLine => vec![CurveCertificate {
            lattice: Lattice::LineBlowupP3 { points: 1 },
            divisor: iv(&[0, 1, 0]),
            curve: iv(&[0, 1, 0]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::FibrePlane => vec![CurveCertificate {
            lattice: x12(1),
            divisor: iv(&[1, 0, -1]),
            curve: iv(&[0, 1, -1]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::PairPlane => vec![CurveCertificate {
            lattice: x12(2),
            divisor: iv(&[0, 1, -1, -1]),
            curve: iv(&[1, 1, -1, -1]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::Deg11Surface => vec![
            // Restriction of the surface to itself on the 6-point plane
            // blowup, against its two sweeping curve classes, and the
            // 7-point variant behind the third expression.
            CurveCertificate {
                lattice: p2_blowup(6),
                divisor: iv(&[2, -1, -1, -1, -1, -1, -1]),
                curve: iv(&[3, -2, -1, -1, -1, -1, -1]),
                on_surface: true,
                denominator: 1,
            },
            CurveCertificate {
                lattice: p2_blowup(6),
                divisor: iv(&[2, -1, -1, -1, -1, -1, -1]),
                curve: iv(&[5, -2, -2, -2, -2, -2, -2]),
                on_surface: true,
                denominator: 2,
            },
            CurveCertificate {
                lattice: p2_blowup(7),
                divisor: iv(&[2, -1, -1, -1, -1, -1, -1, -1]),
                curve: iv(&[5, -2, -2, -2, -2, -2, -2, -1]),
                on_surface: true,
                denominator: 3,
            },
        ],
        RuleId::Deg02Surface => vec![CurveCertificate {
            lattice: p1p1_blowup(5),
            divisor: iv(&[0, 4, -1, -1, -1, -1, -1]),
            curve: iv(&[1, 3, -1, -1, -1, -1, -1]),
            on_surface: true,
            denominator: 1,
        }],
        RuleId::Deg14Surface => vec![CurveCertificate {
            lattice: x12(6),
            divisor: iv(&[1, 4, -3, -2, -2, -2, -2, -2]),
            curve: iv(&[3, 3, -2, -1, -1, -1, -1, -1]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::PointPlane => vec![CurveCertificate {
            lattice: Lattice::LineBlowupP3 { points: 3 },
            divisor: iv(&[1, 0, -1, -1, -1]),
            curve: iv(&[2, 0, -1, -1, -1]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::LinePlane => vec![CurveCertificate {
            lattice: Lattice::LineBlowupP3 { points: 1 },
            divisor: iv(&[1, -1, -1]),
            curve: iv(&[1, -1, -1]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::NodalQuadric => vec![CurveCertificate {
            lattice: Lattice::LineBlowupP3 { points: 6 },
            divisor: iv(&[2, 0, -2, -1, -1, -1, -1, -1]),
            curve: iv(&[4, 0, -2, -1, -1, -1, -1, -1]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::LineDeg11 => vec![CurveCertificate {
            lattice: Lattice::LineBlowupP1P2 { points: 5 },
            divisor: iv(&[1, 1, -1, -1, -1, -1, 0, 0]),
            curve: iv(&[1, 2, -1, -1, -1, -1, 0, 0]),
            on_surface: false,
            denominator: 1,
        }],
        RuleId::TriplePlane => vec![CurveCertificate {
            lattice: Lattice::ProductBlowup { m: 1, n: 3, points: 3 },
            divisor: iv(&[0, 1, -1, -1, -1]),
            curve: iv(&[1, 2, -1, -1, -1]),
            on_surface: false,
            denominator: 1,
        }],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn x12(s: u32) -> Lattice {
        Lattice::ProductBlowup { m: 1, n: 2, points: s }
    }

    #[test]
    fn generic_bound_values() {
        assert_eq!(generic_bound(-1, -3).unwrap(), 3);
        assert_eq!(generic_bound(-2, -3).unwrap(), 2);
        assert_eq!(generic_bound(-1, 5).unwrap(), 0);
        assert!(generic_bound(0, -3).is_err());
        assert!(generic_bound(1, -3).is_err());
    }

    #[test]
    fn exceptional_bound() {
        // mi = -2 means the class has +2 on the exceptional coordinate.
        let d = iv(&[1, 1, 2, 0, 0]);
        assert_eq!(multiplicity_bound(RuleId::ExcPoint, &x12(3), &[1], &d).unwrap(), 2);
        assert_eq!(multiplicity_bound(RuleId::ExcPoint, &x12(3), &[2], &d).unwrap(), 0);
    }

    #[test]
    fn deg11_surface_bound() {
        // d = (1,1), all multiplicities 1: max(0, 1, ceil(2/2)) = 1.
        let d = iv(&[1, 1, -1, -1, -1, -1, -1]);
        assert_eq!(
            multiplicity_bound(RuleId::Deg11Surface, &x12(5), &[1, 2, 3, 4, 5], &d).unwrap(),
            1
        );
    }

    #[test]
    fn point_plane_bound_vanishes_on_balanced_class() {
        let y = Lattice::LineBlowupP3 { points: 3 };
        let d = iv(&[3, 0, -2, -2, -2]);
        assert_eq!(multiplicity_bound(RuleId::PointPlane, &y, &[1, 2, 3], &d).unwrap(), 0);
    }

    #[test]
    fn fibre_plane_inequalities() {
        let rows = effectivity_inequalities(RuleId::FibrePlane, &x12(5)).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.contains(&iv(&[0, 1, 1, 0, 0, 0, 0])));
    }

    #[test]
    fn exceptional_inequality_sign() {
        let rows = effectivity_inequalities(RuleId::ExcPoint, &x12(2)).unwrap();
        // 0 >= -mi, stored as a single -1 weight; it pairs to +1 against a
        // class with bi = -1.
        assert!(rows.contains(&iv(&[0, 0, -1, 0])));
        let e1 = iv(&[0, 0, 1, 0]);
        assert_eq!(iv(&[0, 0, -1, 0]).dot(&e1).unwrap(), (-1).into());
    }

    #[test]
    fn deg14_inequalities_are_one_per_triple_point() {
        let rows = effectivity_inequalities(RuleId::Deg14Surface, &x12(6)).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.contains(&iv(&[3, 3, 2, 1, 1, 1, 1, 1])));
    }

    #[test]
    fn deg11_surface_inequality_count_at_six_points() {
        let rows = effectivity_inequalities(RuleId::Deg11Surface, &x12(6)).unwrap();
        // 6 five-point subsets for each of the first two expressions, plus
        // 6 (subset, extra point) pairs for the third.
        assert_eq!(rows.len(), 18);
        assert!(rows.contains(&iv(&[4, 5, 2, 2, 2, 2, 2, 1])));
    }

    #[test]
    fn denominators_match_curve_pairings() {
        for rule in RuleId::ALL {
            for cert in curve_certificates(rule) {
                let value = if cert.on_surface {
                    cert.lattice.surface_pair(&cert.divisor, &cert.curve).unwrap()
                } else {
                    cert.lattice.pair_divisor_curve(&cert.divisor, &cert.curve).unwrap()
                };
                assert_eq!(
                    -value,
                    cert.denominator.into(),
                    "rule {rule:?} certificate mismatch"
                );
            }
        }
    }

    #[test]
    fn bound_denominators_appear_in_certificates() {
        // Every denominator used by a rule's bound expressions is certified.
        let lattices: Vec<Lattice> = vec![
            x12(5),
            x12(6),
            Lattice::LineBlowupP3 { points: 6 },
            Lattice::LineBlowupP1P2 { points: 5 },
            Lattice::ProductBlowup { m: 1, n: 3, points: 6 },
        ];
        for rule in RuleId::ALL {
            let denominators: std::collections::BTreeSet<i64> = curve_certificates(rule)
                .iter()
                .map(|c| c.denominator)
                .collect();
            for l in &lattices {
                if !rule.applies_to(l) {
                    continue;
                }
                for m in family_members(rule, l).unwrap() {
                    for (_, den) in &m.bounds {
                        assert!(denominators.contains(den), "rule {rule:?} denominator {den}");
                    }
                }
            }
        }
    }

    #[test]
    fn bound_vanishes_inside_the_rule_cone() {
        // If a class satisfies all of a rule's inequalities, every member
        // bound is zero.
        let l = x12(6);
        let d = iv(&[2, 3, -2, -1, -1, -1, 0, 0]);
        for rule in [
            RuleId::ExcPoint,
            RuleId::FibrePlane,
            RuleId::PairPlane,
            RuleId::Deg11Surface,
            RuleId::Deg02Surface,
            RuleId::Deg14Surface,
        ] {
            let rows = effectivity_inequalities(rule, &l).unwrap();
            let inside = rows.iter().all(|r| r.dot(&d).unwrap() >= 0.into());
            if inside {
                for m in family_members(rule, &l).unwrap() {
                    assert_eq!(member_bound(&m, &d).unwrap(), 0);
                }
            }
        }
    }
}
