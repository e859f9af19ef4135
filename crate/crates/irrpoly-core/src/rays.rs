//! Extreme rays of pointed polyhedral cones `{x : A·x >= 0}`.
//!
//! Double description, incremental: seed with a simplicial subcone from `d`
//! independent rows, then clip with the remaining rows one at a time. The
//! adjacency test for combining rays across the new hyperplane is algebraic:
//! two rays combine iff their common tight set among processed rows has rank
//! `d − 2`. Rays are returned as primitive integer vectors in lexicographic
//! order; orientation is dictated by cone membership and never flipped.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::num::{clear_denominators, dot_int, make_primitive};

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    /// Indices of processed rows this ray is tight on, in processing order.
    tight: Vec<u32>,
}

/// Extreme rays of the cone `{x in R^d : A·x >= 0}`.
///
/// Errors with [`Error::NotPointed`] when the cone contains a line
/// (`rank A < d`). The trivial cone `{0}` yields an empty list.
pub fn extreme_rays(a: &Mat) -> Result<Vec<Vec<BigInt>>> {
    let d = a.cols();
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let (ints, _) = clear_denominators(a.row(i));
        if ints.iter().any(|c| !c.is_zero()) {
            rows.push(ints);
        }
    }

    // Greedy selection of d independent rows; failure means a lineality space.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut probe: Vec<Vec<BigInt>> = chosen.iter().map(|&j| rows[j].clone()).collect();
        probe.push(rows[i].clone());
        if Mat::from_int_rows(&probe)?.rank() > chosen.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Err(Error::NotPointed);
    }

    // Simplicial seed: rays are the columns of B^{-1} for the chosen rows B.
    let b_rows: Vec<Vec<BigInt>> = chosen.iter().map(|&j| rows[j].clone()).collect();
    let b = Mat::from_int_rows(&b_rows)?;
    let mut processed: Vec<usize> = chosen.clone();
    let chosen_set: BTreeSet<usize> = chosen.iter().copied().collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = vec![crate::num::rat(0); d];
        e[j] = crate::num::rat(1);
        let col = b.solve_cramer(&e)?;
        let (mut v, _) = clear_denominators(&col);
        make_primitive(&mut v);
        let tight = tightness(&v, &rows, &processed);
        rays.push(Ray { v, tight });
    }

    for i in 0..rows.len() {
        if chosen_set.contains(&i) {
            continue;
        }
        let row = &rows[i];
        let mut plus: Vec<Ray> = Vec::new();
        let mut zero: Vec<Ray> = Vec::new();
        let mut minus: Vec<Ray> = Vec::new();
        for r in rays.drain(..) {
            let dot = dot_int(row, &r.v);
            if dot.is_positive() {
                plus.push(r);
            } else if dot.is_zero() {
                let mut r = r;
                r.tight.push(i as u32);
                zero.push(r);
            } else {
                minus.push(r);
            }
        }
        let mut fresh: Vec<Ray> = Vec::new();
        if d >= 2 {
            for p in &plus {
                for n in &minus {
                    if !adjacent(p, n, &rows, d)? {
                        continue;
                    }
                    let dp = dot_int(row, &p.v);
                    let dn = dot_int(row, &n.v);
                    let mut v: Vec<BigInt> = (0..d)
                        .map(|j| &p.v[j] * -&dn + &n.v[j] * &dp)
                        .collect();
                    make_primitive(&mut v);
                    let mut tight = tightness(&v, &rows, &processed);
                    tight.push(i as u32);
                    fresh.push(Ray { v, tight });
                }
            }
        }
        processed.push(i);
        rays = plus;
        rays.extend(zero);
        rays.extend(fresh);
    }

    let mut out: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for r in rays {
        out.insert(r.v);
    }
    Ok(out.into_iter().collect())
}

fn tightness(v: &[BigInt], rows: &[Vec<BigInt>], processed: &[usize]) -> Vec<u32> {
    processed
        .iter()
        .filter(|&&idx| dot_int(&rows[idx], v).is_zero())
        .map(|&idx| idx as u32)
        .collect()
}

fn adjacent(p: &Ray, n: &Ray, rows: &[Vec<BigInt>], d: usize) -> Result<bool> {
    let nset: BTreeSet<u32> = n.tight.iter().copied().collect();
    let common: Vec<Vec<BigInt>> = p
        .tight
        .iter()
        .filter(|idx| nset.contains(idx))
        .map(|&idx| rows[idx as usize].clone())
        .collect();
    if common.len() + 2 < d {
        return Ok(false);
    }
    Ok(Mat::from_int_rows(&common)?.rank() == d - 2)
}
