//! Double description method with incremental inequality insertion.
//!
//! The state is a pair (lineality basis `B`, extreme rays `R`) describing the
//! cone cut out by the constraints processed so far: `C = span(B) + cone(R)`.
//! Constraints are inserted in input order. While a constraint is nonzero on
//! the lineality space, the space is split and a new ray appears; otherwise
//! the classic positive/zero/negative ray step runs, with adjacency decided
//! by an exact rank test on the set of processed constraints tight on both
//! rays.

use crate::num::{combine, dot, rank_of_rows, reduce_primitive, Coeff, Overflow};

pub(crate) struct DdResult<C> {
    pub rays: Vec<Vec<C>>,
    pub lineality: Vec<Vec<C>>,
}

struct RayRec<C> {
    v: Vec<C>,
    tight: Vec<u64>,
}

impl<C: Coeff> RayRec<C> {
    fn new(v: Vec<C>, words: usize) -> Self {
        RayRec {
            v,
            tight: vec![0; words],
        }
    }
    fn set_tight(&mut self, idx: usize) {
        self.tight[idx / 64] |= 1 << (idx % 64);
    }
}

fn common_tight_indices(a: &[u64], b: &[u64], upto: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, (x, y)) in a.iter().zip(b.iter()).enumerate() {
        let mut bits = x & y;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            let idx = w * 64 + t;
            if idx < upto {
                out.push(idx);
            }
            bits &= bits - 1;
        }
    }
    out
}

pub(crate) fn double_description<C: Coeff>(
    dim: usize,
    constraints: &[Vec<C>],
) -> Result<DdResult<C>, Overflow> {
    let words = constraints.len().div_ceil(64).max(1);

    // Start from the whole space: lineality = standard basis, no rays.
    let mut lineality: Vec<Vec<C>> = (0..dim)
        .map(|i| {
            let mut e = vec![C::zero(); dim];
            e[i] = C::one();
            e
        })
        .collect();
    let mut rays: Vec<RayRec<C>> = Vec::new();

    for (k, f) in constraints.iter().enumerate() {
        debug_assert_eq!(f.len(), dim);
        if f.iter().all(|x| x.is_zero()) {
            continue;
        }

        // Values of f on the lineality basis.
        let lin_vals: Vec<C> = lineality
            .iter()
            .map(|b| dot(f, b))
            .collect::<Result<_, _>>()?;

        if let Some(pivot) = lin_vals.iter().position(|v| !v.is_zero()) {
            // Split the lineality space along f.
            let mut b0 = lineality.swap_remove(pivot);
            let mut val0 = lin_vals[pivot].clone();
            let mut vals = lin_vals;
            vals.swap_remove(pivot);
            if val0.is_negative() {
                for x in b0.iter_mut() {
                    *x = x.neg()?;
                }
                val0 = val0.neg()?;
            }
            let mut new_lin = Vec::with_capacity(lineality.len());
            for (b, vb) in lineality.iter().zip(vals.iter()) {
                if vb.is_zero() {
                    new_lin.push(b.clone());
                } else {
                    let nvb = vb.neg()?;
                    new_lin.push(combine(&val0, b, &nvb, &b0)?);
                }
            }
            lineality = new_lin;

            // Project existing rays into the hyperplane f = 0; they keep
            // their tight sets (processed constraints vanish on b0) and
            // gain this one.
            for r in rays.iter_mut() {
                let vr = dot(f, &r.v)?;
                if !vr.is_zero() {
                    let nvr = vr.neg()?;
                    r.v = combine(&val0, &r.v, &nvr, &b0)?;
                }
                r.set_tight(k);
            }
            // b0 itself becomes a ray, tight on everything processed before.
            reduce_primitive(&mut b0);
            let mut rec = RayRec::new(b0, words);
            for j in 0..k {
                if !constraints[j].iter().all(|x| x.is_zero()) {
                    rec.set_tight(j);
                }
            }
            rays.push(rec);
            continue;
        }

        // f vanishes on the lineality space: classic ray step.
        let vals: Vec<C> = rays
            .iter()
            .map(|r| dot(f, &r.v))
            .collect::<Result<_, _>>()?;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                rays[i].set_tight(k);
            } else if v.is_negative() {
                neg.push(i);
            } else {
                pos.push(i);
            }
        }
        if neg.is_empty() {
            continue;
        }

        let need_rank = (dim - lineality.len()).saturating_sub(2);
        let mut newborn: Vec<RayRec<C>> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = common_tight_indices(&rays[p].tight, &rays[n].tight, k);
                if common.len() < need_rank {
                    continue;
                }
                let rows: Vec<&[C]> = common.iter().map(|&i| constraints[i].as_slice()).collect();
                if rank_of_rows(&rows, dim)? != need_rank {
                    continue;
                }
                // val_p * ray_n - val_n * ray_p lies on f = 0 inside the cone.
                let mut a = vals[p].clone();
                let mut b = vals[n].neg()?;
                let g = a.gcd(&b);
                if !g.is_zero() {
                    a = a.div_exact(&g);
                    b = b.div_exact(&g);
                }
                let v = combine(&a, &rays[n].v, &b, &rays[p].v)?;
                let mut tight = vec![0u64; words];
                for (w, (x, y)) in rays[p]
                    .tight
                    .iter()
                    .zip(rays[n].tight.iter())
                    .enumerate()
                {
                    tight[w] = x & y;
                }
                let mut rec = RayRec { v, tight };
                rec.set_tight(k);
                newborn.push(rec);
            }
        }

        let keep: Vec<bool> = vals.iter().map(|v| !v.is_negative()).collect();
        let mut kept: Vec<RayRec<C>> = Vec::with_capacity(rays.len() + newborn.len());
        for (r, k) in rays.into_iter().zip(keep) {
            if k {
                kept.push(r);
            }
        }
        kept.append(&mut newborn);
        rays = kept;
    }

    Ok(DdResult {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    })
}
