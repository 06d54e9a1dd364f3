//! Divisor and curve class groups of the catalogued varieties.
//!
//! Classes are stored in basis coordinates: a divisor row `(a1, a2, b1, ...)`
//! on a product blowup is the class `a1*H1 + a2*H2 + sum(bi * Ei)`, matching
//! the generator tables, so effective classes carry nonpositive exceptional
//! coordinates. Curve rows use the dual curve basis the same way.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactcone::IntVector;

/// Intersection lattice of a catalogued variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// Blowup of P^m x P^n in `points` general points. `m = 0` degenerates to
    /// the blowup of P^n with a single hyperplane class.
    ProductBlowup { m: u32, n: u32, points: u32 },
    /// Blowup of P^3 in a line and `points` general points.
    LineBlowupP3 { points: u32 },
    /// Blowup of P^1 x P^2 in a line inside a fibre and `points` points.
    LineBlowupP1P2 { points: u32 },
    /// A surface with an explicitly stored symmetric pairing.
    Surface(SurfaceLattice),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    pub labels: Vec<&'static str>,
    /// Symmetric Gram matrix of the basis.
    pub gram: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        match self {
            Lattice::ProductBlowup { m, n, points } => {
                (if *m > 0 { 1 } else { 0 }) + (if *n > 0 { 1 } else { 0 }) + *points as usize
            }
            Lattice::LineBlowupP3 { points } => 2 + *points as usize,
            Lattice::LineBlowupP1P2 { points } => 3 + *points as usize,
            Lattice::Surface(s) => s.labels.len(),
        }
    }

    pub fn points(&self) -> usize {
        match self {
            Lattice::ProductBlowup { points, .. }
            | Lattice::LineBlowupP3 { points }
            | Lattice::LineBlowupP1P2 { points } => *points as usize,
            Lattice::Surface(_) => 0,
        }
    }

    /// Number of leading coordinates before the point block (on line
    /// blowups this includes the line-exceptional slot).
    pub fn degree_block(&self) -> usize {
        self.rank() - self.points()
    }

    /// Number of leading hyperplane-type coordinates; everything after them
    /// pairs with `-1` against its dual curve coordinate.
    fn hyperplane_block(&self) -> usize {
        match self {
            Lattice::ProductBlowup { .. } => self.degree_block(),
            Lattice::LineBlowupP3 { .. } => 1,
            Lattice::LineBlowupP1P2 { .. } => 2,
            Lattice::Surface(_) => 0,
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        match self {
            Lattice::ProductBlowup { m, n, points } => {
                let mut l = Vec::new();
                if *m > 0 && *n > 0 {
                    l.push("H1".to_string());
                    l.push("H2".to_string());
                } else {
                    l.push("H".to_string());
                }
                for i in 1..=*points {
                    l.push(format!("E{i}"));
                }
                l
            }
            Lattice::LineBlowupP3 { points } => {
                let mut l = vec!["H".to_string(), "EL".to_string()];
                for i in 1..=*points {
                    l.push(format!("E{i}"));
                }
                l
            }
            Lattice::LineBlowupP1P2 { points } => {
                let mut l = vec!["H1".to_string(), "H2".to_string(), "EL".to_string()];
                for i in 1..=*points {
                    l.push(format!("E{i}"));
                }
                l
            }
            Lattice::Surface(s) => s.labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn check_len(&self, v: &IntVector) -> Result<()> {
        if v.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// Intersection number of a divisor row against a curve row.
    ///
    /// The pairing is diagonal on matching exceptional coordinates
    /// (`Ei . ei = -1`, and `EL . eL = -1` on line blowups) and identifies
    /// the degree blocks (`Hi . lj` is the identity on P^m x P^n, `H . l = 1`
    /// on blowups of P^3).
    pub fn pair_divisor_curve(&self, divisor: &IntVector, curve: &IntVector) -> Result<BigInt> {
        self.check_len(divisor)?;
        self.check_len(curve)?;
        match self {
            Lattice::Surface(_) => Err(Error::UnsupportedLattice),
            _ => {
                let pos = self.hyperplane_block();
                let mut acc = BigInt::ZERO;
                for i in 0..pos {
                    acc += &divisor.entries()[i] * &curve.entries()[i];
                }
                for i in pos..self.rank() {
                    acc -= &divisor.entries()[i] * &curve.entries()[i];
                }
                Ok(acc)
            }
        }
    }

    /// Stored symmetric pairing of two divisor rows on a surface.
    pub fn surface_pair(&self, a: &IntVector, b: &IntVector) -> Result<BigInt> {
        let s = match self {
            Lattice::Surface(s) => s,
            _ => return Err(Error::UnsupportedLattice),
        };
        self.check_len(a)?;
        self.check_len(b)?;
        let mut acc = BigInt::ZERO;
        for (i, row) in s.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != 0 {
                    acc += &a.entries()[i] * &b.entries()[j] * g;
                }
            }
        }
        Ok(acc)
    }

    /// Top self-intersection of a divisor on a product blowup:
    /// `d1^m * d2^n * C(m+n, n) - sum(mi^(m+n))`.
    pub fn top_self_intersection(&self, divisor: &IntVector) -> Result<BigInt> {
        let (m, n) = match self {
            Lattice::ProductBlowup { m, n, .. } => (*m, *n),
            _ => return Err(Error::UnsupportedLattice),
        };
        self.check_len(divisor)?;
        let deg = self.degree_block();
        let total = (m + n) as usize;
        let mut h_part = binom_i64((m + n) as i64, n as i64);
        let mut k = 0;
        if m > 0 {
            h_part *= divisor.entries()[k].pow(m);
            k += 1;
        }
        if n > 0 {
            h_part *= divisor.entries()[k].pow(n);
        }
        let mut e_part = BigInt::ZERO;
        for i in deg..self.rank() {
            // bi = -mi, so mi^(m+n) = (-bi)^(m+n).
            let mi = -&divisor.entries()[i];
            e_part += mi.pow(total as u32);
        }
        Ok(h_part - e_part)
    }

    /// Virtual dimension of the linear system of a divisor on a product
    /// blowup: `C(m+d1,m) * C(n+d2,n) - sum(C(m+n+mi-1, m+n)) - 1`, with
    /// binomials vanishing below the diagonal, so negative multiplicities are
    /// allowed and contribute nothing.
    pub fn virtual_dim(&self, divisor: &IntVector) -> Result<BigInt> {
        let (m, n) = match self {
            Lattice::ProductBlowup { m, n, .. } => (*m as i64, *n as i64),
            _ => return Err(Error::UnsupportedLattice),
        };
        self.check_len(divisor)?;
        let deg = self.degree_block();
        let mut acc = BigInt::one();
        let mut k = 0;
        if m > 0 {
            acc *= binom_big(&(divisor.entries()[k].clone() + m), m);
            k += 1;
        }
        if n > 0 {
            acc *= binom_big(&(divisor.entries()[k].clone() + n), n);
        }
        for i in deg..self.rank() {
            let mi = -&divisor.entries()[i];
            acc -= binom_big(&(mi + m + n - 1), m + n);
        }
        Ok(acc - 1)
    }

    /// `max(-1, vdim)`.
    pub fn expected_dim(&self, divisor: &IntVector) -> Result<BigInt> {
        let v = self.virtual_dim(divisor)?;
        Ok(if v < BigInt::from(-1) {
            BigInt::from(-1)
        } else {
            v
        })
    }

    /// Anticanonical class `(m+1)H1 + (n+1)H2 - (m+n-1) * sum(Ei)`.
    pub fn anticanonical(&self) -> Result<IntVector> {
        let (m, n, s) = match self {
            Lattice::ProductBlowup { m, n, points } => (*m as i64, *n as i64, *points),
            _ => return Err(Error::UnsupportedLattice),
        };
        if m == 0 || n == 0 {
            return Err(Error::UnsupportedLattice);
        }
        let mut v = vec![m + 1, n + 1];
        v.extend(std::iter::repeat_n(-(m + n - 1), s as usize));
        Ok(IntVector::from_i64(&v))
    }

    /// Class row of a curve of bidegree `(d1, d2)` with point multiplicities.
    pub fn curve_class(&self, d1: i64, d2: i64, mults: &[i64]) -> Result<IntVector> {
        match self {
            Lattice::ProductBlowup { points, .. } => {
                if mults.len() > *points as usize {
                    return Err(Error::Invalid("too many multiplicities".into()));
                }
                let mut v = vec![d1, d2];
                for &mi in mults {
                    v.push(-mi);
                }
                v.extend(std::iter::repeat_n(0, *points as usize - mults.len()));
                Ok(IntVector::from_i64(&v))
            }
            _ => Err(Error::UnsupportedLattice),
        }
    }
}

/// Virtual dimension on the blowup of P^3 in a line and points:
/// `C(d+3,3) - [line](d+1) - sum(C(mi+2,3)) - 1`.
///
/// Containing the line with multiplicity one imposes `d+1` conditions; higher
/// multiplicity along the line is not supported.
pub fn vdim_p3_line(d: i64, contains_line: bool, mults: &[i64]) -> Result<i64> {
    if mults.iter().any(|&m| m < 0) {
        return Err(Error::Invalid("multiplicities must be nonnegative".into()));
    }
    let mut acc = binom_i64_val(d + 3, 3);
    if contains_line {
        acc -= d + 1;
    }
    for &m in mults {
        acc -= binom_i64_val(m + 2, 3);
    }
    Ok(acc - 1)
}

fn binom_i64(a: i64, k: i64) -> BigInt {
    binom_big(&BigInt::from(a), k)
}

fn binom_i64_val(a: i64, k: i64) -> i64 {
    use num_traits::ToPrimitive;
    binom_big(&BigInt::from(a), k).to_i64().expect("small binomial")
}

/// Binomial coefficient with the convention `C(a, k) = 0` for `a < k` (in
/// particular for negative `a`), and `C(a, k) = 0` for `k < 0`.
pub fn binom_big(a: &BigInt, k: i64) -> BigInt {
    if k < 0 || a < &BigInt::from(k) {
        return BigInt::ZERO;
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= a - i;
        den *= i + 1;
    }
    num / den
}
