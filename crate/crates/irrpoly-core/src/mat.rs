//! Dense rational matrices, sized for small exact geometry work.
//!
//! Determinants go through fraction-free (Bareiss) elimination on a
//! denominator-cleared integer copy, which keeps intermediate entries at
//! minor-determinant size instead of compounding rational blowup.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{clear_denominators, rat_of, sqrt_pow_upper, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(rat_of).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rat::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rat::one();
        }
        Mat {
            rows: n,
            cols: n,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Exact determinant via fraction-free elimination.
    pub fn det(&self) -> Result<Rat> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        // Clear denominators row by row; divide the scale back out at the end.
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let (ints, lambda) = clear_denominators(self.row(i));
            scale *= lambda;
            a.push(ints);
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev; // exact by the Bareiss identity
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut det = a[n - 1][n - 1].clone();
        if sign < 0 {
            det = -det;
        }
        Ok(Rat::new(det, scale))
    }

    /// Solves `A·x = rhs` for square nonsingular `A` by Cramer's rule.
    pub fn solve_cramer(&self, rhs: &[Rat]) -> Result<Vec<Rat>> {
        self.require_square()?;
        if rhs.len() != self.rows {
            return Err(Error::DimMismatch {
                expected: self.rows,
                got: rhs.len(),
            });
        }
        let d = self.det()?;
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut x = Vec::with_capacity(n);
        for j in 0..n {
            let mut m = self.clone();
            for i in 0..n {
                *m.at_mut(i, j) = rhs[i].clone();
            }
            x.push(m.det()? / &d);
        }
        Ok(x)
    }

    /// Upper bound on `|det|`: the product over rows of
    /// `(max |entry|) · √n`, with the square root certified from above.
    pub fn hadamard_bound(&self) -> Result<Rat> {
        self.require_square()?;
        let n = self.rows;
        let mut prod = Rat::one();
        for i in 0..n {
            let mut rowmax = Rat::zero();
            for j in 0..n {
                let a = self.at(i, j).abs();
                if a > rowmax {
                    rowmax = a;
                }
            }
            prod *= rowmax;
        }
        Ok(prod * sqrt_pow_upper(n as u64, n as u32)?)
    }

    /// Rank by plain Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rank_of(&mut a)
    }

    /// Any exact solution of `A·x = rhs` (free variables set to zero), or
    /// `None` when the system is inconsistent. `A` may be rectangular.
    pub fn gauss_solve(&self, rhs: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimMismatch {
                expected: self.rows,
                got: rhs.len(),
            });
        }
        let mut a: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let cols = self.cols;
        let mut pivot_col_of_row = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone();
            for v in a[r].iter_mut() {
                *v = &*v / &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=cols {
                        let sub = &f * &a[r][j];
                        a[i][j] = &a[i][j] - sub;
                    }
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == a.len() {
                break;
            }
        }
        // Inconsistent when a zero row has nonzero right-hand side.
        for i in r..a.len() {
            if !a[i][cols].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![Rat::zero(); cols];
        for (row, &c) in pivot_col_of_row.iter().enumerate() {
            x[c] = a[row][cols].clone();
        }
        Ok(Some(x))
    }

    /// One nonzero kernel vector, or `None` when the columns are
    /// linearly independent.
    pub fn kernel_vector(&self) -> Option<Vec<Rat>> {
        let nr = self.rows;
        let nc = self.cols;
        let mut m: Vec<Vec<Rat>> = (0..nr).map(|i| self.row(i).to_vec()).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0usize;
        for c in 0..nc {
            let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let pv = m[r][c].clone();
            for v in m[r].iter_mut() {
                *v = &*v / &pv;
            }
            for i in 0..nr {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..nc {
                        let sub = &f * &m[r][j];
                        m[i][j] = &m[i][j] - sub;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
            if r == nr {
                break;
            }
        }
        let pivot_cols: alloc::collections::BTreeSet<usize> =
            pivots.iter().map(|&(_, c)| c).collect();
        let free = (0..nc).find(|c| !pivot_cols.contains(c))?;
        let mut x = vec![Rat::zero(); nc];
        x[free] = Rat::one();
        for &(pr, pc) in pivots.iter().rev() {
            let mut s = Rat::zero();
            for c in pc + 1..nc {
                if !m[pr][c].is_zero() {
                    s += &m[pr][c] * &x[c];
                }
            }
            x[pc] = -s;
        }
        Some(x)
    }
}

fn rank_of(a: &mut Vec<Vec<Rat>>) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let sub = &f * &a[r][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_dim(points: &[Vec<Rat>]) -> usize {
    assert!(!points.is_empty(), "affine_dim of an empty point list");
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut work = diffs;
    rank_of(&mut work)
}
