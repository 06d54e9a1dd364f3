//! Linear transport of divisor classes and inequalities between catalogued
//! varieties: point-forgetting lifts, restriction maps to surfaces and
//! divisors with known effective cones, and the small-modification matrices
//! between the line blowups of P^3 and of P^1 x P^2.
//!
//! Everything is expressed in basis coordinates, where inequality rows pair
//! with class rows by the plain dot product, so pulling an inequality back is
//! the transpose action of the class transport matrix.

use crate::error::{Error, Result};
use crate::exactcone::IntVector;

/// Class transport map, one column per source basis vector.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub name: &'static str,
    pub source_rank: usize,
    pub target_rank: usize,
    /// Image of each source basis vector in target basis coordinates.
    pub columns: Vec<IntVector>,
}

impl RestrictionMap {
    fn new(name: &'static str, target_rank: usize, columns: Vec<IntVector>) -> Self {
        RestrictionMap {
            name,
            source_rank: columns.len(),
            target_rank,
            columns,
        }
    }

    /// Transports a class: the coordinate-weighted sum of the columns.
    pub fn push_class(&self, class: &IntVector) -> Result<IntVector> {
        if class.dim() != self.source_rank {
            return Err(Error::DimensionMismatch {
                expected: self.source_rank,
                got: class.dim(),
            });
        }
        let mut acc = IntVector::zero(self.target_rank);
        for (c, col) in class.entries().iter().zip(self.columns.iter()) {
            use num_traits::ToPrimitive;
            let k = c.to_i64().ok_or_else(|| Error::Invalid("coefficient too large".into()))?;
            if k != 0 {
                acc = acc.add(&col.scale(k))?;
            }
        }
        Ok(acc)
    }

    /// Pulls an inequality row back: entry `j` is the row paired with the
    /// image of the `j`-th source basis vector.
    pub fn pull_inequality(&self, target_row: &IntVector) -> Result<IntVector> {
        if target_row.dim() != self.target_rank {
            return Err(Error::DimensionMismatch {
                expected: self.target_rank,
                got: target_row.dim(),
            });
        }
        let mut entries = Vec::with_capacity(self.source_rank);
        for col in &self.columns {
            entries.push(target_row.dot(col)?);
        }
        Ok(IntVector::new(entries))
    }
}

/// Inserts a zero coefficient at the given point slot (1-based within the
/// point block); the lifted inequality ignores that multiplicity.
pub fn lift_forget_point(
    row: &IntVector,
    slot: usize,
    degree_block: usize,
) -> Result<IntVector> {
    let points_before = row.dim() - degree_block;
    if slot == 0 || slot > points_before + 1 {
        return Err(Error::Invalid(format!(
            "insertion slot {slot} out of range 1..={}",
            points_before + 1
        )));
    }
    Ok(row.insert_zero(degree_block + slot - 1))
}

/// Inserts a zero coefficient at an absolute coordinate position.
pub fn lift_at_coordinate(row: &IntVector, pos: usize) -> Result<IntVector> {
    if pos > row.dim() {
        return Err(Error::Invalid(format!("coordinate {pos} out of range")));
    }
    Ok(row.insert_zero(pos))
}

/// Drops a coordinate after checking it carries a zero coefficient.
pub fn drop_zero_coordinate(row: &IntVector, pos: usize) -> Result<IntVector> {
    use num_traits::Zero;
    if pos >= row.dim() {
        return Err(Error::Invalid(format!("coordinate {pos} out of range")));
    }
    if !row.entries()[pos].is_zero() {
        return Err(Error::Invalid(format!(
            "coordinate {pos} of {row} is not zero; cannot drop it"
        )));
    }
    Ok(row.drop_coord(pos))
}

/// The pushforward/pullback pair identifying divisor classes on the blowup
/// of P^3 in a line and `s+1` points with those on the blowup of P^1 x P^2
/// in a fibre line and `s` points. The first point on the P^3 side is the
/// one consumed by the modification.
#[derive(Clone, Debug)]
pub struct SmallModification {
    pub push: RestrictionMap,
    pub pull: RestrictionMap,
}

/// Builds the pair for `s` points on the P^1 x P^2 side.
pub fn small_modification(s: usize) -> SmallModification {
    let y_rank = s + 3;
    let z_rank = s + 3;

    // push: Y basis (H, EL, E1, ..., E_{s+1}) to Z coordinates.
    let mut push_cols = Vec::with_capacity(y_rank);
    push_cols.push(z_unit(z_rank, &[(0, 1), (1, 1), (2, -1)])); // H -> H1 + H2 - EL
    push_cols.push(z_unit(z_rank, &[(1, 1), (2, -1)])); // EL -> H2 - EL
    push_cols.push(z_unit(z_rank, &[(0, 1), (2, -1)])); // E1 -> H1 - EL
    for i in 0..s {
        push_cols.push(z_unit(z_rank, &[(3 + i, 1)]));
    }

    // pull: Z basis (H1, H2, EL, E1, ..., Es) to Y coordinates.
    let mut pull_cols = Vec::with_capacity(z_rank);
    pull_cols.push(z_unit(y_rank, &[(0, 1), (1, -1)])); // H1 -> H - EL
    pull_cols.push(z_unit(y_rank, &[(0, 1), (2, -1)])); // H2 -> H - E1
    pull_cols.push(z_unit(y_rank, &[(0, 1), (1, -1), (2, -1)])); // EL -> H - EL - E1
    for i in 0..s {
        pull_cols.push(z_unit(y_rank, &[(3 + i, 1)]));
    }

    SmallModification {
        push: RestrictionMap::new("line-blowup pushforward", z_rank, push_cols),
        pull: RestrictionMap::new("line-blowup pullback", y_rank, pull_cols),
    }
}

fn z_unit(rank: usize, entries: &[(usize, i64)]) -> IntVector {
    let mut v = vec![0i64; rank];
    for &(i, x) in entries {
        v[i] = x;
    }
    IntVector::from_i64(&v)
}

/// Catalogued restriction maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapId {
    /// N1 of the 6-point threefold to its movable bidegree (2,1) surface.
    Deg21SurfaceX126,
    /// N1 of the 5-point line blowup of P^1 x P^2 to its bidegree (2,1)
    /// surface through the line and the points.
    Deg21SurfaceZL5,
    /// N1 of the 6-point line blowup of P^3 to the quadric through the line
    /// and the points.
    QuadricYL6,
    /// N1 of the 5-point fourfold to a bidegree (1,1) divisor through the
    /// points.
    Deg11DivisorX135,
    /// Same for 6 points.
    Deg11DivisorX136,
}

pub fn restriction_map(id: MapId) -> RestrictionMap {
    match id {
        MapId::Deg21SurfaceX126 => {
            // H1 -> h1, H2 -> h1 + h2, Ei -> ei.
            let mut cols = vec![
                z_unit(8, &[(0, 1)]),
                z_unit(8, &[(0, 1), (1, 1)]),
            ];
            for i in 0..6 {
                cols.push(z_unit(8, &[(2 + i, 1)]));
            }
            RestrictionMap::new("restriction to the movable (2,1) surface", 8, cols)
        }
        MapId::Deg21SurfaceZL5 => {
            // H1 -> h1, H2 -> h1 + h2, EL -> h1, Ei -> ei.
            let mut cols = vec![
                z_unit(7, &[(0, 1)]),
                z_unit(7, &[(0, 1), (1, 1)]),
                z_unit(7, &[(0, 1)]),
            ];
            for i in 0..5 {
                cols.push(z_unit(7, &[(2 + i, 1)]));
            }
            RestrictionMap::new("restriction to the (2,1) surface through the line", 7, cols)
        }
        MapId::QuadricYL6 => {
            // H -> h1 + h2, EL -> h1, Ei -> ei.
            let mut cols = vec![
                z_unit(8, &[(0, 1), (1, 1)]),
                z_unit(8, &[(0, 1)]),
            ];
            for i in 0..6 {
                cols.push(z_unit(8, &[(2 + i, 1)]));
            }
            RestrictionMap::new("restriction to the quadric through the line", 8, cols)
        }
        MapId::Deg11DivisorX135 | MapId::Deg11DivisorX136 => {
            let s = if id == MapId::Deg11DivisorX135 { 5 } else { 6 };
            // H1 -> H - EL, H2 -> H, Ei -> Ei.
            let rank = s + 2;
            let mut cols = vec![
                z_unit(rank, &[(0, 1), (1, -1)]),
                z_unit(rank, &[(0, 1)]),
            ];
            for i in 0..s {
                cols.push(z_unit(rank, &[(2 + i, 1)]));
            }
            RestrictionMap::new("restriction to a (1,1) divisor through the points", rank, cols)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn lift_inserts_zero_slots() {
        let row = iv(&[1, 1, 1]);
        assert_eq!(lift_forget_point(&row, 2, 2).unwrap(), iv(&[1, 1, 1, 0]));
        assert_eq!(lift_forget_point(&row, 1, 2).unwrap(), iv(&[1, 1, 0, 1]));
        assert!(lift_forget_point(&row, 3, 2).is_err());
        // An inequality not involving the multiplicities lifts to itself.
        let d1 = iv(&[1, 0, 0]);
        assert_eq!(lift_forget_point(&d1, 1, 2).unwrap(), iv(&[1, 0, 0, 0]));
    }

    #[test]
    fn modification_matrices_are_inverse() {
        for s in 0..=5 {
            let phi = small_modification(s);
            let rank = s + 3;
            for j in 0..rank {
                let mut e = vec![0i64; rank];
                e[j] = 1;
                let e = iv(&e);
                let round = phi.pull.push_class(&phi.push.push_class(&e).unwrap()).unwrap();
                assert_eq!(round, e, "pull . push != id at basis vector {j}");
                let round = phi.push.push_class(&phi.pull.push_class(&e).unwrap()).unwrap();
                assert_eq!(round, e, "push . pull != id at basis vector {j}");
            }
        }
    }

    #[test]
    fn pushforward_of_hyperplane() {
        let phi = small_modification(5);
        let h = iv(&[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            phi.push.push_class(&h).unwrap(),
            iv(&[1, 1, -1, 0, 0, 0, 0, 0])
        );
    }

    #[test]
    fn deg11_restriction_moves_h1() {
        let m = restriction_map(MapId::Deg11DivisorX135);
        assert_eq!(
            m.push_class(&iv(&[1, 0, 0, 0, 0, 0, 0])).unwrap(),
            iv(&[1, -1, 0, 0, 0, 0, 0])
        );
        assert_eq!(
            m.push_class(&iv(&[0, 1, 0, 0, 0, 0, 0])).unwrap(),
            iv(&[1, 0, 0, 0, 0, 0, 0])
        );
    }

    #[test]
    fn pulling_an_inequality_is_transpose_action() {
        let m = restriction_map(MapId::Deg21SurfaceX126);
        // A target row pairs with a pushed class exactly like its pullback
        // pairs with the source class.
        let row = iv(&[1, 2, 1, 1, 1, 1, 0, 0]);
        let class = iv(&[3, 1, -1, -1, 0, -2, 0, 0]);
        let pulled = m.pull_inequality(&row).unwrap();
        let pushed = m.push_class(&class).unwrap();
        assert_eq!(pulled.dot(&class).unwrap(), row.dot(&pushed).unwrap());
    }

    #[test]
    fn dropping_requires_zero() {
        assert!(drop_zero_coordinate(&iv(&[1, 0, 2]), 1).is_ok());
        assert!(drop_zero_coordinate(&iv(&[1, 0, 2]), 2).is_err());
    }
}
