//! Exact integer polyhedral cone algebra.
//!
//! A cone is handled in both descriptions at once: a list of extreme rays and
//! a list of supporting inequalities ("facets"), all primitive integer
//! vectors. Rays and inequality rows live in dual coordinates paired by the
//! plain dot product, so `facet · ray >= 0` holds on the cone.

mod dd;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::{self, Coeff, Overflow};

/// Primitive integer vector; the building block of rays and inequalities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector {
    entries: Vec<BigInt>,
}

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector {
            entries: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        IntVector {
            entries: vec![BigInt::ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn entry_i64(&self, i: usize) -> i64 {
        use num_traits::ToPrimitive;
        self.entries[i].to_i64().expect("entry fits in i64")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Divides by the gcd of the entries; orientation is preserved.
    pub fn normalized(&self) -> Self {
        let mut v = self.entries.clone();
        num::reduce_primitive(&mut v);
        IntVector { entries: v }
    }

    pub fn dot(&self, other: &IntVector) -> Result<BigInt> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn neg(&self) -> Self {
        IntVector {
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &IntVector) -> Result<IntVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(IntVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: i64) -> IntVector {
        IntVector {
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    /// Removes the coordinate at `pos`.
    pub fn drop_coord(&self, pos: usize) -> IntVector {
        let mut v = self.entries.clone();
        v.remove(pos);
        IntVector { entries: v }
    }

    /// Inserts a zero coordinate at `pos`.
    pub fn insert_zero(&self, pos: usize) -> IntVector {
        let mut v = self.entries.clone();
        v.insert(pos, BigInt::ZERO);
        IntVector { entries: v }
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Pointed (or not) rational polyhedral cone with both descriptions.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    rays: Vec<IntVector>,
    facets: Vec<IntVector>,
    lineality: Vec<IntVector>,
}

impl Cone {
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }
    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }
    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }
    pub fn lineality_basis(&self) -> &[IntVector] {
        &self.lineality
    }
}

fn validate_input(vectors: &[IntVector], dim: usize) -> Result<()> {
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
    }
    Ok(())
}

fn to_coeff_rows<C: Coeff>(vectors: &[IntVector]) -> Option<Vec<Vec<C>>> {
    vectors
        .iter()
        .map(|v| v.entries.iter().map(C::from_bigint).collect())
        .collect()
}

fn from_coeff_row<C: Coeff>(row: &[C]) -> IntVector {
    IntVector {
        entries: row.iter().map(Coeff::to_bigint).collect(),
    }
}

struct DualPair {
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
}

/// Runs the double description method, promoting from `i128` to `BigInt`
/// arithmetic if any intermediate value overflows.
fn run_dd(dim: usize, constraints: &[IntVector]) -> DualPair {
    if let Some(rows) = to_coeff_rows::<i128>(constraints) {
        match dd::double_description(dim, &rows) {
            Ok(out) => {
                return DualPair {
                    rays: out.rays.iter().map(|r| from_coeff_row(r)).collect(),
                    lineality: out.lineality.iter().map(|r| from_coeff_row(r)).collect(),
                }
            }
            Err(Overflow) => {}
        }
    }
    let rows = to_coeff_rows::<BigInt>(constraints).expect("BigInt conversion is total");
    let out = dd::double_description(dim, &rows).expect("BigInt arithmetic does not overflow");
    DualPair {
        rays: out.rays.iter().map(|r| from_coeff_row(r)).collect(),
        lineality: out.lineality.iter().map(|r| from_coeff_row(r)).collect(),
    }
}

fn rank_of(vectors: &[&IntVector], dim: usize) -> usize {
    let refs: Vec<Vec<i128>> = match vectors
        .iter()
        .map(|v| v.entries.iter().map(i128::from_bigint).collect())
        .collect()
    {
        Some(rows) => rows,
        None => {
            let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.entries.clone()).collect();
            let refs: Vec<&[BigInt]> = rows.iter().map(|r| r.as_slice()).collect();
            return num::rank_of_rows(&refs, dim).expect("BigInt arithmetic does not overflow");
        }
    };
    let slices: Vec<&[i128]> = refs.iter().map(|r| r.as_slice()).collect();
    match num::rank_of_rows(&slices, dim) {
        Ok(r) => r,
        Err(Overflow) => {
            let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.entries.clone()).collect();
            let refs: Vec<&[BigInt]> = rows.iter().map(|r| r.as_slice()).collect();
            num::rank_of_rows(&refs, dim).expect("BigInt arithmetic does not overflow")
        }
    }
}

fn normalize_dedup(vectors: &[IntVector]) -> Vec<IntVector> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in vectors {
        let n = v.normalized();
        if seen.insert(n.clone()) {
            out.push(n);
        }
    }
    out
}

fn sorted(mut v: Vec<IntVector>) -> Vec<IntVector> {
    v.sort();
    v
}

/// The cone `{x : f · x >= 0 for all f}` with its extreme rays.
///
/// The facet list of the result is the irredundant subset of the input. If
/// the cone is not pointed, the lineality space is reported and the rays
/// generate the pointed part.
pub fn extreme_rays(facets: &[IntVector], dim: usize) -> Result<Cone> {
    if dim == 0 {
        return Err(Error::Invalid("ambient dimension must be positive".into()));
    }
    validate_input(facets, dim)?;
    let input = normalize_dedup(facets);
    let pair = run_dd(dim, &input);
    let lin_dim = pair.lineality.len();

    // An input inequality supports a facet exactly when the rays tight on it
    // together with the lineality space span a hyperplane.
    let mut kept = Vec::new();
    for f in &input {
        let mut tight: Vec<&IntVector> = pair.lineality.iter().collect();
        for r in &pair.rays {
            if Zero::is_zero(&f.dot(r)?) {
                tight.push(r);
            }
        }
        if rank_of(&tight, dim) == dim - 1 {
            kept.push(f.clone());
        }
    }

    let _ = lin_dim;
    Ok(Cone {
        dim,
        rays: sorted(pair.rays),
        facets: sorted(normalize_dedup(&kept)),
        lineality: pair.lineality,
    })
}

/// Minimal supporting inequalities of `cone(rays)`; dual of `extreme_rays`.
///
/// When the rays do not span the ambient space the description includes an
/// opposite pair of inequalities per missing dimension, so the facet list
/// always cuts out exactly the cone.
pub fn facets(rays: &[IntVector], dim: usize) -> Result<Cone> {
    if dim == 0 {
        return Err(Error::Invalid("ambient dimension must be positive".into()));
    }
    validate_input(rays, dim)?;
    let input = normalize_dedup(rays);
    let dual = run_dd(dim, &input);

    let mut facet_list = dual.rays.clone();
    for w in &dual.lineality {
        facet_list.push(w.clone());
        facet_list.push(w.neg());
    }

    // Primal lineality: directions on which every supporting functional
    // vanishes.
    let functional_rows: Vec<Vec<BigInt>> = dual
        .rays
        .iter()
        .chain(dual.lineality.iter())
        .map(|v| v.entries.clone())
        .collect();
    let lineality: Vec<IntVector> = num::kernel_basis(&functional_rows, dim)
        .into_iter()
        .map(IntVector::new)
        .collect();
    let lin_dim = lineality.len();

    // Keep the extremal members of the input ray list.
    let mut kept = Vec::new();
    for r in &input {
        if extremal_in(r, &dual, dim, lin_dim)? {
            kept.push(r.clone());
        }
    }

    Ok(Cone {
        dim,
        rays: sorted(kept),
        facets: sorted(normalize_dedup(&facet_list)),
        lineality,
    })
}

fn extremal_in(r: &IntVector, dual: &DualPair, dim: usize, lin_dim: usize) -> Result<bool> {
    let mut tight: Vec<&IntVector> = dual.lineality.iter().collect();
    for f in &dual.rays {
        if Zero::is_zero(&f.dot(r)?) {
            tight.push(f);
        }
    }
    Ok(rank_of(&tight, dim) == dim - lin_dim - 1)
}

/// Deduplicates (up to positive scaling) and removes non-extremal members.
pub fn minimal_generators(rays: &[IntVector]) -> Result<Vec<IntVector>> {
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let dim = rays[0].dim();
    Ok(facets(rays, dim)?.rays)
}

/// Outcome of a membership test, with a certificate either way.
#[derive(Clone, Debug)]
pub enum Containment {
    /// All facet values are nonnegative; `tight` lists the indices of the
    /// facets the vector lies on and `values` the full transcript.
    Inside {
        tight: Vec<usize>,
        values: Vec<BigInt>,
    },
    /// A violated facet together with its (negative) value.
    Outside { facet: IntVector, value: BigInt },
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Inside { .. })
    }
}

/// Tests membership of `v` against the facet description of the cone.
pub fn contains(cone: &Cone, v: &IntVector) -> Result<Containment> {
    if v.dim() != cone.dim {
        return Err(Error::DimensionMismatch {
            expected: cone.dim,
            got: v.dim(),
        });
    }
    let mut tight = Vec::new();
    let mut values = Vec::new();
    for (i, f) in cone.facets.iter().enumerate() {
        let val = f.dot(v)?;
        if val < BigInt::ZERO {
            return Ok(Containment::Outside {
                facet: f.clone(),
                value: val,
            });
        }
        if Zero::is_zero(&val) {
            tight.push(i);
        }
        values.push(val);
    }
    Ok(Containment::Inside { tight, values })
}

/// Symmetric difference of two vector sets after primitive normalization.
#[derive(Clone, Debug, Default)]
pub struct SetComparison {
    pub only_left: Vec<IntVector>,
    pub only_right: Vec<IntVector>,
}

impl SetComparison {
    pub fn is_equal(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

pub fn equal_up_to_normalization(left: &[IntVector], right: &[IntVector]) -> SetComparison {
    let l: BTreeSet<IntVector> = left.iter().map(IntVector::normalized).collect();
    let r: BTreeSet<IntVector> = right.iter().map(IntVector::normalized).collect();
    SetComparison {
        only_left: l.difference(&r).cloned().collect(),
        only_right: r.difference(&l).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn orthant_is_self_dual() {
        let basis = sorted(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])]);
        let cone = extreme_rays(&basis, 3).unwrap();
        assert_eq!(cone.rays(), basis.as_slice());
        assert_eq!(cone.lineality_dim(), 0);
        let dual = facets(&basis, 3).unwrap();
        assert_eq!(dual.facets(), basis.as_slice());
        assert_eq!(dual.rays(), basis.as_slice());
    }

    #[test]
    fn first_blowup_cone() {
        // d1 >= 0, d2 >= 0, d1 + d2 >= m1 in generator coordinates.
        let facets_in = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 1])];
        let cone = extreme_rays(&facets_in, 3).unwrap();
        let expected = vec![iv(&[0, 0, 1]), iv(&[0, 1, -1]), iv(&[1, 0, -1])];
        assert_eq!(cone.rays(), sorted(expected).as_slice());
    }

    #[test]
    fn minimal_generators_drops_scaled_and_interior() {
        let rays = vec![iv(&[1, 0]), iv(&[2, 0]), iv(&[0, 1]), iv(&[1, 1])];
        let min = minimal_generators(&rays).unwrap();
        assert_eq!(min, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn lineality_is_reported() {
        // x1 = 0 cut out by an opposite pair, plus x2 >= 0.
        let facets_in = vec![iv(&[1, 0, 0]), iv(&[-1, 0, 0]), iv(&[0, 1, 0])];
        let cone = extreme_rays(&facets_in, 3).unwrap();
        assert_eq!(cone.lineality_dim(), 1);
        assert_eq!(cone.rays().len(), 1);
        assert_eq!(cone.rays()[0], iv(&[0, 1, 0]));
    }

    #[test]
    fn non_full_span_generators_round_trip() {
        let rays = vec![iv(&[0, 0, 1]), iv(&[1, 0, 1])];
        let cone = facets(&rays, 3).unwrap();
        assert_eq!(cone.rays().len(), 2);
        for r in &rays {
            assert!(contains(&cone, r).unwrap().holds());
        }
        assert!(!contains(&cone, &iv(&[0, 1, 0])).unwrap().holds());
    }

    #[test]
    fn containment_certificates() {
        let cone = extreme_rays(&[iv(&[1, 0]), iv(&[0, 1])], 2).unwrap();
        match contains(&cone, &iv(&[2, 0])).unwrap() {
            Containment::Inside { tight, .. } => assert_eq!(tight.len(), 1),
            other => panic!("expected inside, got {other:?}"),
        }
        match contains(&cone, &iv(&[-1, 3])).unwrap() {
            Containment::Outside { facet, value } => {
                assert_eq!(facet, iv(&[1, 0]));
                assert_eq!(value, BigInt::from(-1));
            }
            other => panic!("expected outside, got {other:?}"),
        }
    }

    #[test]
    fn comparison_reports_both_sides() {
        let a = vec![iv(&[2, 0]), iv(&[0, 1])];
        let b = vec![iv(&[1, 0]), iv(&[1, 1])];
        let cmp = equal_up_to_normalization(&a, &b);
        assert_eq!(cmp.only_left, vec![iv(&[0, 1])]);
        assert_eq!(cmp.only_right, vec![iv(&[1, 1])]);
        assert!(equal_up_to_normalization(&a, &a).is_equal());
    }

    #[test]
    fn rejects_zero_and_mismatched_input() {
        assert!(extreme_rays(&[iv(&[0, 0])], 2).is_err());
        assert!(extreme_rays(&[iv(&[1, 0, 0])], 2).is_err());
    }

    // Brute-force oracle: a ray of a pointed cone is the kernel of some
    // rank d-1 subset of d-1 facets, oriented to satisfy all facets.
    fn oracle_rays(facets_in: &[IntVector], dim: usize) -> Vec<IntVector> {
        let rows: Vec<Vec<i128>> = facets_in
            .iter()
            .map(|f| f.entries().iter().map(|x| i128::from_bigint(x).unwrap()).collect())
            .collect();
        let mut found = BTreeSet::new();
        let mut idx: Vec<usize> = (0..dim - 1).collect();
        if facets_in.len() < dim - 1 {
            return Vec::new();
        }
        loop {
            let subset: Vec<&[i128]> = idx.iter().map(|&i| rows[i].as_slice()).collect();
            if let Some(ray) = kernel_ray(&subset, dim) {
                for cand in [ray.clone(), ray.iter().map(|x| -x).collect::<Vec<_>>()] {
                    if rows.iter().all(|f| {
                        f.iter().zip(cand.iter()).map(|(a, b)| a * b).sum::<i128>() >= 0
                    }) {
                        let mut v = cand.clone();
                        crate::num::reduce_primitive(&mut v);
                        found.insert(IntVector::from_i64(
                            &v.iter().map(|&x| x as i64).collect::<Vec<_>>(),
                        ));
                    }
                }
            }
            // next combination
            let mut i = dim - 1;
            loop {
                if i == 0 {
                    return found.into_iter().collect();
                }
                i -= 1;
                if idx[i] != i + rows.len() - (dim - 1) {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..dim - 1 {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    // Kernel vector of d-1 rows in dimension d via cofactor expansion,
    // provided the rows have full rank.
    fn kernel_ray(rows: &[&[i128]], dim: usize) -> Option<Vec<i128>> {
        assert_eq!(rows.len(), dim - 1);
        let mut v = vec![0i128; dim];
        for j in 0..dim {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = det(&minor);
            v[j] = if j % 2 == 0 { d } else { -d };
        }
        if v.iter().all(|&x| x == 0) {
            None
        } else {
            Some(v)
        }
    }

    fn det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0i128;
        for j in 0..n {
            if m[0][j] == 0 {
                continue;
            }
            let sub: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            acc += s * m[0][j] * det(&sub);
        }
        acc
    }

    #[test]
    fn random_pointed_cones_match_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 40 {
            let dim = rng.random_range(2..=5usize);
            let nf = rng.random_range(dim..=2 * dim + 1);
            let cand: Vec<IntVector> = (0..nf)
                .map(|_| {
                    IntVector::from_i64(
                        &(0..dim)
                            .map(|_| rng.random_range(-3..=3i64))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            if cand.iter().any(|v| v.is_zero()) {
                continue;
            }
            let refs: Vec<&IntVector> = cand.iter().collect();
            if rank_of(&refs, dim) != dim {
                continue; // not pointed
            }
            tested += 1;
            let cone = extreme_rays(&cand, dim).unwrap();
            assert_eq!(cone.lineality_dim(), 0);
            let expected = oracle_rays(&cand, dim);
            let cmp = equal_up_to_normalization(cone.rays(), &expected);
            assert!(
                cmp.is_equal(),
                "mismatch for {cand:?}: computed {:?}, oracle {:?}",
                cone.rays(),
                expected
            );

            // Double dual is the identity up to normalization.
            let redual = facets(cone.rays(), dim).unwrap();
            let back = extreme_rays(redual.facets(), dim).unwrap();
            assert!(equal_up_to_normalization(back.rays(), cone.rays()).is_equal());
        }
    }

    #[test]
    fn insertion_order_does_not_matter() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let facets_in = vec![
            iv(&[1, 0, 0, 0]),
            iv(&[0, 1, 0, 0]),
            iv(&[1, 1, 1, 0]),
            iv(&[1, 2, 1, 1]),
            iv(&[0, 0, 1, 0]),
            iv(&[0, 1, 0, -1]),
            iv(&[1, 1, -1, -1]),
        ];
        let base = extreme_rays(&facets_in, 4).unwrap();
        for _ in 0..10 {
            let mut shuffled = facets_in.clone();
            shuffled.shuffle(&mut rng);
            let cone = extreme_rays(&shuffled, 4).unwrap();
            assert!(equal_up_to_normalization(cone.rays(), base.rays()).is_equal());
            assert!(equal_up_to_normalization(cone.facets(), base.facets()).is_equal());
        }
    }
}
