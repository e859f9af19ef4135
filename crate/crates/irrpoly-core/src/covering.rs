//! Structured covers with few irreducible points per piece.
//!
//! Two constructions live here. [`partition_box`] splits a skew box into
//! slabs along each of the first `n − 1` rows: band widths grow geometrically
//! from both ends (1, 2, 4, …) and meet in a possibly-empty middle band, so
//! every piece holds at most two points that are irreducible in the ambient
//! box. [`cover_polytope`] triangulates a bounded polytope by pulling from
//! the lexicographically least vertex, then covers each simplex with skew
//! boxes anchored at its vertices.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::{affine_dim, Mat};
use crate::num::{big, clear_denominators, rat, rat_of, Rat};
use crate::polytope::{HPolytope, Parallelepiped};

/// Smallest `s >= 0` with `w <= 3·2^s − 3`.
pub fn slab_exponent(w: &BigInt) -> u64 {
    let mut s = 0u64;
    let mut cap = BigInt::zero(); // 3·2^0 − 3
    let three = big(3);
    while *w > cap {
        s += 1;
        cap = &three * (BigInt::one() << s) - &three;
    }
    s
}

/// One slab piece: its per-coordinate band indices and its body.
#[derive(Debug, Clone)]
pub struct SlabPiece {
    pub index: Vec<u64>,
    pub body: Parallelepiped,
}

#[derive(Debug, Clone)]
pub struct SlabCover {
    pub exponents: Vec<u64>,
    pub pieces: Vec<SlabPiece>,
}

impl SlabCover {
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }
}

/// Bands `[lo, hi]` (integer-closed) for one slabbed coordinate with
/// exponent `s`, indexed `0..=2s`: lower bands grow `1, 2, 4, …` away from
/// the bottom, the middle may be empty, and upper bands shrink toward the
/// top so that index `2s` is the band of width one next to `hi`.
fn bands(lo: &BigInt, hi: &BigInt, s: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(2 * s as usize + 1);
    for j in 0..s {
        let a = lo + (BigInt::one() << j) - 1;
        let b = lo + (BigInt::one() << (j + 1)) - 2;
        out.push((a, b));
    }
    {
        let a = lo + (BigInt::one() << s) - 1;
        let b = hi - (BigInt::one() << s) + 1;
        out.push((a, b));
    }
    for j in s + 1..=2 * s {
        let a = hi - (BigInt::one() << (2 * s + 1 - j)) + 2;
        let b = hi - (BigInt::one() << (2 * s - j)) + 1;
        out.push((a, b));
    }
    out
}

/// Splits `{lo <= A·x <= hi}` into slab pieces along rows `1..n−1`; the last
/// row keeps its full range. Pieces are emitted in lexicographic index
/// order. An empty box yields no pieces.
pub fn partition_box(bx: &Parallelepiped) -> Result<SlabCover> {
    let n = bx.dim();
    if n == 0 {
        return Err(Error::Invalid("zero-dimensional box".into()));
    }
    if bx.lo.iter().zip(&bx.hi).any(|(lo, hi)| lo > hi) {
        return Ok(SlabCover {
            exponents: vec![0; n.saturating_sub(1)],
            pieces: Vec::new(),
        });
    }
    let widths = bx.widths();
    let exponents: Vec<u64> = widths[..n - 1].iter().map(slab_exponent).collect();
    let per_coord: Vec<Vec<(BigInt, BigInt)>> = (0..n - 1)
        .map(|i| bands(&bx.lo[i], &bx.hi[i], exponents[i]))
        .collect();

    let mut pieces = Vec::new();
    let mut index = vec![0u64; n - 1];
    loop {
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for i in 0..n - 1 {
            let (a, b) = &per_coord[i][index[i] as usize];
            lo.push(a.clone());
            hi.push(b.clone());
        }
        lo.push(bx.lo[n - 1].clone());
        hi.push(bx.hi[n - 1].clone());
        pieces.push(SlabPiece {
            index: index.clone(),
            body: Parallelepiped::new(bx.a.clone(), lo, hi)?,
        });
        // odometer over band indices, last coordinate fastest
        let mut advanced = false;
        for i in (0..n - 1).rev() {
            if index[i] < 2 * exponents[i] {
                index[i] += 1;
                for v in index.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(SlabCover { exponents, pieces })
}

/// A `k`-simplex in `R^n`: `k + 1` affinely independent rational points,
/// stored lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    verts: Vec<Vec<Rat>>,
}

impl Simplex {
    pub fn new(mut verts: Vec<Vec<Rat>>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::Invalid("simplex needs at least one vertex".into()));
        }
        verts.sort();
        verts.dedup();
        let d = affine_dim(&verts);
        if verts.len() != d + 1 {
            return Err(Error::Invalid("vertices are affinely dependent".into()));
        }
        Ok(Simplex { verts })
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.verts
    }

    pub fn ambient(&self) -> usize {
        self.verts[0].len()
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    /// Barycentric coordinates of `x`, when the simplex is full-dimensional.
    pub fn barycentric(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        let n = self.ambient();
        if self.dim() != n {
            return Err(Error::LowerDimensional {
                dim: self.dim(),
                ambient: n,
            });
        }
        if x.len() != n {
            return Err(Error::DimMismatch {
                expected: n,
                got: x.len(),
            });
        }
        // rows: coordinates then the affine 1-row
        let mut rows: Vec<Vec<Rat>> = (0..n)
            .map(|r| self.verts.iter().map(|v| v[r].clone()).collect())
            .collect();
        rows.push(vec![rat(1); n + 1]);
        let mut rhs: Vec<Rat> = x.to_vec();
        rhs.push(rat(1));
        Mat::from_rows(rows)?.solve_cramer(&rhs)
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        let lambda = self.barycentric(x)?;
        Ok(lambda.iter().all(|l| !l.is_negative()))
    }

    /// Primitive integer equations `a·x = a_0` of the facet hyperplanes of a
    /// full-dimensional simplex, one per omitted vertex, oriented so the
    /// omitted vertex satisfies `a·v < a_0`.
    pub fn facet_equations(&self) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
        let n = self.ambient();
        if self.dim() != n {
            return Err(Error::LowerDimensional {
                dim: self.dim(),
                ambient: n,
            });
        }
        let mut out = Vec::with_capacity(n + 1);
        for omit in 0..=n {
            let rows: Vec<Vec<Rat>> = self
                .verts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != omit)
                .map(|(_, v)| {
                    let mut row = v.clone();
                    row.push(rat(-1));
                    row
                })
                .collect();
            let kernel = Mat::from_rows(rows)?
                .kernel_vector()
                .expect("n rows in n+1 columns always have a kernel");
            let (mut ints, _) = clear_denominators(&kernel);
            crate::num::make_primitive(&mut ints);
            let a0 = ints.pop().expect("n+1 entries");
            let at_omitted = crate::num::dot_rat(
                &ints.iter().map(rat_of).collect::<Vec<_>>(),
                &self.verts[omit],
            );
            let (a, a0) = if at_omitted > rat_of(&a0) {
                (ints.into_iter().map(|c| -c).collect(), -a0)
            } else {
                (ints, a0)
            };
            out.push((a, a0));
        }
        Ok(out)
    }
}

/// Pulling triangulation of a bounded, full-dimensional polytope: every face
/// is recursively fanned from its lexicographically least vertex, so all
/// output simplexes share the polytope's least vertex.
pub fn triangulate(p: &HPolytope) -> Result<Vec<Simplex>> {
    let verts = p.vertices()?;
    let n = p.dim();
    let d = affine_dim(&verts);
    if d < n {
        return Err(Error::LowerDimensional { dim: d, ambient: n });
    }
    let mut lists = tri_face(&verts, p, d)?;
    for l in &mut lists {
        l.sort();
    }
    lists.sort();
    lists.into_iter().map(Simplex::new).collect()
}

fn tri_face(face: &[Vec<Rat>], p: &HPolytope, d: usize) -> Result<Vec<Vec<Vec<Rat>>>> {
    if face.len() == d + 1 {
        return Ok(vec![face.to_vec()]);
    }
    let vstar = &face[0]; // face is sorted, so this is the least vertex
    let mut facets: BTreeSet<Vec<Vec<Rat>>> = BTreeSet::new();
    for i in 0..p.num_rows() {
        let (row, rhs) = p.row(i);
        let tight: Vec<Vec<Rat>> = face
            .iter()
            .filter(|v| {
                let lhs: Rat = row.iter().zip(v.iter()).map(|(c, x)| rat_of(c) * x).sum();
                lhs == rat_of(rhs)
            })
            .cloned()
            .collect();
        if !tight.is_empty() && tight.len() < face.len() && affine_dim(&tight) == d - 1 {
            facets.insert(tight);
        }
    }
    let mut out = Vec::new();
    for facet in facets {
        if facet.contains(vstar) {
            continue;
        }
        for mut sub in tri_face(&facet, p, d - 1)? {
            sub.push(vstar.clone());
            sub.sort();
            out.push(sub);
        }
    }
    Ok(out)
}

/// Positive integer vectors of length `parts` summing to `total`, in
/// lexicographic order.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let max_first = total.saturating_sub(parts as u64 - 1);
    for first in 1..=max_first {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Covers a full-dimensional simplex in `R^n` (`n >= 2`) with
/// `(n+1)·|compositions of n²−1|` skew boxes. For each vertex `v_i`, the unit
/// frame at `v_i` is spanned by the scaled edges `(v_l − v_i)/(n²−1)` toward
/// the other vertices in ascending order, and one box `{0 <= u <= y}` in that
/// frame is emitted per composition `y`. Box corners lie in the simplex, so
/// every box is contained in it; jointly the boxes exhaust it.
pub fn cover_simplex(s: &Simplex) -> Result<Vec<Parallelepiped>> {
    let n = s.ambient();
    if n < 2 {
        return Err(Error::Invalid("simplex cover needs dimension two or more".into()));
    }
    if s.dim() != n {
        return Err(Error::LowerDimensional {
            dim: s.dim(),
            ambient: n,
        });
    }
    let scale = rat((n * n - 1) as i64);
    let ys = compositions((n * n - 1) as u64, n);
    let mut out = Vec::with_capacity((n + 1) * ys.len());
    for i in 0..=n {
        let vi = &s.vertices()[i];
        let others: Vec<&Vec<Rat>> = s
            .vertices()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v)
            .collect();
        // Frame matrix M has columns (v_l − v_i)/(n²−1); constraints come
        // from rows of M^{-1}, found by solving against M transposed.
        let mt_rows: Vec<Vec<Rat>> = others
            .iter()
            .map(|v| {
                (0..n)
                    .map(|r| (&v[r] - &vi[r]) / &scale)
                    .collect::<Vec<Rat>>()
            })
            .collect();
        let mt = Mat::from_rows(mt_rows)?;
        let mut g_rows = Vec::with_capacity(n);
        let mut h_lo = Vec::with_capacity(n);
        let mut lambdas = Vec::with_capacity(n);
        for l in 0..n {
            let mut e = vec![rat(0); n];
            e[l] = rat(1);
            let r = mt.solve_cramer(&e)?;
            let offset: Rat = r.iter().zip(vi.iter()).map(|(a, b)| a * b).sum();
            let mut joint = r;
            joint.push(offset);
            let (ints, lambda) = clear_denominators(&joint);
            let h = ints[n].clone();
            g_rows.push(ints[..n].to_vec());
            h_lo.push(h);
            lambdas.push(lambda);
        }
        for y in &ys {
            let hi: Vec<BigInt> = (0..n)
                .map(|l| &h_lo[l] + &lambdas[l] * big(y[l] as i64))
                .collect();
            out.push(Parallelepiped::new(g_rows.clone(), h_lo.clone(), hi)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SimplexCover {
    pub simplex: Simplex,
    pub pieces: Vec<Parallelepiped>,
}

/// Triangulates a bounded polytope and covers each simplex. Dimension one is
/// covered directly by the integer closure of the interval.
pub fn cover_polytope(p: &HPolytope) -> Result<Vec<SimplexCover>> {
    let n = p.dim();
    if n == 0 {
        return Err(Error::Invalid("zero-dimensional polytope".into()));
    }
    if n == 1 {
        let verts = p.vertices()?;
        let lo = verts
            .iter()
            .map(|v| v[0].ceil().to_integer())
            .min()
            .expect("nonempty");
        let hi = verts
            .iter()
            .map(|v| v[0].floor().to_integer())
            .max()
            .expect("nonempty");
        let simplex = Simplex::new(verts)?;
        if hi < lo {
            return Ok(vec![SimplexCover {
                simplex,
                pieces: Vec::new(),
            }]);
        }
        let piece = Parallelepiped::new(vec![vec![BigInt::one()]], vec![lo], vec![hi])?;
        return Ok(vec![SimplexCover {
            simplex,
            pieces: vec![piece],
        }]);
    }
    triangulate(p)?
        .into_iter()
        .map(|simplex| {
            let pieces = cover_simplex(&simplex)?;
            Ok(SimplexCover { simplex, pieces })
        })
        .collect()
}
