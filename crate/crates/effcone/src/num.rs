//! Exact coefficient arithmetic for the cone engine.
//!
//! All cone computations run over a coefficient ring that is either `i128`
//! with overflow detection or `BigInt`. The engine first tries the fixed-width
//! path and transparently promotes the whole computation to big integers when
//! any intermediate product would overflow, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Raised by the `i128` fast path when an intermediate value does not fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) trait Coeff: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Result<Self, Overflow>;
    fn gcd(&self, rhs: &Self) -> Self;
    /// Division known to be exact (divisor divides self).
    fn div_exact(&self, rhs: &Self) -> Self;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_add(*rhs).ok_or(Overflow)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*rhs).ok_or(Overflow)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*rhs).ok_or(Overflow)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), rhs.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a as i128
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(*rhs != 0 && self % rhs == 0);
        self / rhs
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        BigInt::ZERO
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self * rhs)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(!Zero::is_zero(rhs));
        self / rhs
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) fn dot<C: Coeff>(a: &[C], b: &[C]) -> Result<C, Overflow> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = C::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc.add(&x.mul(y)?)?;
    }
    Ok(acc)
}

/// Divides the vector by the gcd of its entries. Orientation is preserved.
pub(crate) fn reduce_primitive<C: Coeff>(v: &mut [C]) {
    let mut g = C::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() || g == C::one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g);
    }
}

/// `a_coeff * a + b_coeff * b`, reduced to a primitive vector.
pub(crate) fn combine<C: Coeff>(
    a_coeff: &C,
    a: &[C],
    b_coeff: &C,
    b: &[C],
) -> Result<Vec<C>, Overflow> {
    debug_assert_eq!(a.len(), b.len());
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b.iter()) {
        out.push(a_coeff.mul(x)?.add(&b_coeff.mul(y)?)?);
    }
    reduce_primitive(&mut out);
    Ok(out)
}

/// Rank of a set of row vectors, by fraction-free elimination.
///
/// Rows are reduced to primitive form after each elimination step to keep
/// intermediate entries small.
pub(crate) fn rank_of_rows<C: Coeff>(rows: &[&[C]], cols: usize) -> Result<usize, Overflow> {
    let mut basis: Vec<Vec<C>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        debug_assert_eq!(row.len(), cols);
        let mut work: Vec<C> = row.to_vec();
        for (brow, &pcol) in basis.iter().zip(pivots.iter()) {
            if work[pcol].is_zero() {
                continue;
            }
            let bp = brow[pcol].clone();
            let wp = work[pcol].clone();
            let g = bp.gcd(&wp);
            let a = bp.div_exact(&g);
            let b = wp.div_exact(&g);
            for c in 0..cols {
                work[c] = a.mul(&work[c])?.sub(&b.mul(&brow[c])?)?;
            }
            reduce_primitive(&mut work);
        }
        if let Some(pcol) = (0..cols).find(|&c| !work[c].is_zero()) {
            basis.push(work);
            pivots.push(pcol);
            if basis.len() == cols {
                break;
            }
        }
    }
    Ok(basis.len())
}

/// Primitive integer basis of the kernel `{x : row · x = 0 for all rows}`.
pub(crate) fn kernel_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    // Fraction-free row echelon form.
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut work = row.clone();
        for (brow, &pcol) in basis.iter().zip(pivots.iter()) {
            if Zero::is_zero(&work[pcol]) {
                continue;
            }
            let bp = brow[pcol].clone();
            let wp = work[pcol].clone();
            let g = Integer::gcd(&bp, &wp);
            let a = &bp / &g;
            let b = &wp / &g;
            for c in 0..cols {
                work[c] = &a * &work[c] - &b * &brow[c];
            }
            reduce_primitive(&mut work);
        }
        if let Some(pcol) = (0..cols).find(|&c| !Zero::is_zero(&work[c])) {
            basis.push(work);
            pivots.push(pcol);
        }
    }

    // Back substitution: one kernel vector per free column.
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigInt::ZERO; cols];
        v[free] = BigInt::from(1);
        // Solve pivot coordinates from the bottom row up.
        for i in (0..basis.len()).rev() {
            let pcol = pivots[i];
            let mut s = BigInt::ZERO;
            for c in (pcol + 1)..cols {
                s += &basis[i][c] * &v[c];
            }
            if Zero::is_zero(&s) {
                continue;
            }
            // v[pcol] * basis[i][pcol] + s = 0, scale v to stay integral.
            let p = basis[i][pcol].clone();
            let g = Integer::gcd(&p, &s);
            let scale = (&p / &g).abs();
            if scale != BigInt::from(1) {
                for x in v.iter_mut() {
                    *x *= &scale;
                }
                s *= &scale;
            }
            v[pcol] = -(&s / &p);
        }
        reduce_primitive(&mut v);
        kernel.push(v);
    }
    kernel
}

/// Exact `max(0, ceil(num / den))` for `den > 0`.
pub fn ceil_div_clamped(num: i64, den: i64) -> i64 {
    assert!(den > 0, "denominator must be positive");
    let q = num.div_euclid(den) + if num.rem_euclid(den) != 0 { 1 } else { 0 };
    q.max(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_reduction_keeps_orientation() {
        let mut v: Vec<i128> = vec![-4, 6, -2];
        reduce_primitive(&mut v);
        assert_eq!(v, vec![-2, 3, -1]);
    }

    #[test]
    fn rank_small() {
        let r1: Vec<i128> = vec![1, 0, 0];
        let r2: Vec<i128> = vec![0, 1, 0];
        let r3: Vec<i128> = vec![1, 1, 0];
        let rows: Vec<&[i128]> = vec![&r1, &r2, &r3];
        assert_eq!(rank_of_rows(&rows, 3).unwrap(), 2);
    }

    #[test]
    fn kernel_of_plane() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)],
        ];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(Zero::is_zero(&(&v[0] + &v[1] + &v[2])));
        assert!(Zero::is_zero(&(&v[1] + BigInt::from(2) * &v[2])));
    }

    #[test]
    fn ceil_division() {
        assert_eq!(ceil_div_clamped(3, 1), 3);
        assert_eq!(ceil_div_clamped(3, 2), 2);
        assert_eq!(ceil_div_clamped(-5, 1), 0);
        assert_eq!(ceil_div_clamped(0, 3), 0);
        assert_eq!(ceil_div_clamped(1, 3), 1);
    }
}
