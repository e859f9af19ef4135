//! Rational polytopes in constraint form, their lattice points, and the
//! irreducible subset of those points.
//!
//! A lattice point `x` of a set `S` is *irreducible* when it is not the
//! midpoint of two distinct points of `S`. Every vertex of the integer hull
//! is irreducible; the converse fails, which is exactly what makes the
//! irreducible count the interesting quantity.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::feas::{lp_feasible, nonneg_combination, Constraint, Feasibility};
use crate::mat::Mat;
use crate::num::{big, clear_denominators, dot_int, rat, rat_of, to_i64, Rat};

/// `{x in R^n : row_i · x <= rhs_i}` with integer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    n: usize,
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
}

impl HPolytope {
    pub fn new(n: usize) -> Self {
        HPolytope {
            n,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn from_le(rows: Vec<Vec<BigInt>>, rhs: Vec<BigInt>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.len() != rhs.len() {
            return Err(Error::DimMismatch {
                expected: rows.len(),
                got: rhs.len(),
            });
        }
        let mut p = HPolytope::new(n);
        for (row, b) in rows.into_iter().zip(rhs) {
            p.push_le(row, b)?;
        }
        Ok(p)
    }

    pub fn push_le(&mut self, row: Vec<BigInt>, rhs: BigInt) -> Result<()> {
        if row.len() != self.n {
            return Err(Error::DimMismatch {
                expected: self.n,
                got: row.len(),
            });
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        Ok(())
    }

    pub fn push_ge(&mut self, row: Vec<BigInt>, rhs: BigInt) -> Result<()> {
        self.push_le(row.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> (&[BigInt], &BigInt) {
        (&self.rows[i], &self.rhs[i])
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        let xb: Vec<BigInt> = x.iter().map(|&v| big(v)).collect();
        self.contains_big(&xb)
    }

    pub fn contains_big(&self, x: &[BigInt]) -> bool {
        x.len() == self.n
            && self
                .rows
                .iter()
                .zip(&self.rhs)
                .all(|(row, b)| dot_int(row, x) <= *b)
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        x.len() == self.n
            && self.rows.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rat = row
                    .iter()
                    .zip(x)
                    .map(|(c, v)| rat_of(c) * v)
                    .sum();
                lhs <= rat_of(b)
            })
    }

    fn constraints(&self) -> Vec<Constraint> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| Constraint::le_int(row, b))
            .collect()
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(!lp_feasible(&self.constraints())?.is_feasible())
    }

    /// A nonzero integer recession direction (`A·d <= 0`), if any exists.
    pub fn recession_direction(&self) -> Result<Option<Vec<BigInt>>> {
        let mut base: Vec<Constraint> = self
            .rows
            .iter()
            .map(|row| Constraint::le_int(row, &BigInt::zero()))
            .collect();
        for j in 0..self.n {
            for sign in [1i64, -1] {
                let mut row = vec![rat(0); self.n];
                row[j] = rat(-sign);
                base.push(Constraint::le(row, rat(-1)));
                let verdict = lp_feasible(&base)?;
                base.pop();
                if let Feasibility::Feasible(w) = verdict {
                    let (d, _) = clear_denominators(&w);
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }

    pub fn is_bounded(&self) -> Result<bool> {
        Ok(self.recession_direction()?.is_none())
    }

    /// Vertices, lexicographically sorted. Errors on empty or unbounded input.
    pub fn vertices(&self) -> Result<Vec<Vec<Rat>>> {
        if self.is_empty()? {
            return Err(Error::EmptyPolytope);
        }
        if let Some(direction) = self.recession_direction()? {
            return Err(Error::Unbounded { direction });
        }
        let m = self.rows.len();
        let n = self.n;
        let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| self.rows[i].clone()).collect();
            let mat = Mat::from_int_rows(&rows)?;
            let rhs: Vec<Rat> = subset.iter().map(|&i| rat_of(&self.rhs[i])).collect();
            if let Ok(x) = mat.solve_cramer(&rhs) {
                if self.contains_rat(&x) {
                    found.insert(x);
                }
            }
            // next n-subset of 0..m in lexicographic order
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(found.into_iter().collect());
                }
                k -= 1;
                if subset[k] + 1 <= m - (n - k) {
                    subset[k] += 1;
                    for j in k + 1..n {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// All lattice points, lexicographically sorted. Scans the integer
    /// bounding box of the vertex set, so the polytope must be bounded; the
    /// number of scanned cells must not exceed `budget`.
    pub fn enumerate_lattice(&self, budget: usize) -> Result<Vec<Vec<i64>>> {
        if self.is_empty()? {
            return Ok(Vec::new());
        }
        if let Some(direction) = self.recession_direction()? {
            return Err(Error::Unbounded { direction });
        }
        let verts = self.vertices()?;
        let n = self.n;
        let mut lo = vec![BigInt::zero(); n];
        let mut hi = vec![BigInt::zero(); n];
        for j in 0..n {
            let mut min = verts[0][j].clone();
            let mut max = verts[0][j].clone();
            for v in &verts[1..] {
                if v[j] < min {
                    min = v[j].clone();
                }
                if v[j] > max {
                    max = v[j].clone();
                }
            }
            lo[j] = min.ceil().to_integer();
            hi[j] = max.floor().to_integer();
        }
        let mut cells = BigInt::from(1u32);
        for j in 0..n {
            if hi[j] < lo[j] {
                return Ok(Vec::new());
            }
            cells *= &hi[j] - &lo[j] + 1;
        }
        if cells > BigInt::from(budget) {
            return Err(Error::Capacity {
                what: "lattice scan cells",
                limit: budget,
            });
        }
        let lo: Vec<i64> = lo
            .iter()
            .map(|v| to_i64(v).ok_or(Error::Capacity {
                what: "lattice coordinate range",
                limit: i64::MAX as usize,
            }))
            .collect::<Result<_>>()?;
        let hi: Vec<i64> = hi
            .iter()
            .map(|v| to_i64(v).ok_or(Error::Capacity {
                what: "lattice coordinate range",
                limit: i64::MAX as usize,
            }))
            .collect::<Result<_>>()?;

        // Fast membership path when rows fit machine integers; any overflow
        // falls back to exact arithmetic for that point.
        let narrow = self.narrow_rows();
        let mut out = Vec::new();
        let mut x = lo.clone();
        'scan: loop {
            let inside = match narrow.as_ref().and_then(|(rows, rhs)| {
                narrow_contains(rows, rhs, &x)
            }) {
                Some(v) => v,
                None => self.contains_int(&x),
            };
            if inside {
                out.push(x.clone());
            }
            for j in (0..n).rev() {
                if x[j] < hi[j] {
                    x[j] += 1;
                    for (slot, &reset) in x.iter_mut().zip(lo.iter()).skip(j + 1) {
                        *slot = reset;
                    }
                    continue 'scan;
                }
            }
            break;
        }
        Ok(out)
    }

    fn narrow_rows(&self) -> Option<(Vec<Vec<i128>>, Vec<i128>)> {
        let rows: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(ToPrimitive::to_i128).collect::<Option<_>>())
            .collect::<Option<_>>()?;
        let rhs: Vec<i128> = self
            .rhs
            .iter()
            .map(ToPrimitive::to_i128)
            .collect::<Option<_>>()?;
        Some((rows, rhs))
    }
}

fn narrow_contains(rows: &[Vec<i128>], rhs: &[i128], x: &[i64]) -> Option<bool> {
    for (row, b) in rows.iter().zip(rhs) {
        let mut acc: i128 = 0;
        for (c, &v) in row.iter().zip(x) {
            acc = acc.checked_add(c.checked_mul(v as i128)?)?;
        }
        if acc > *b {
            return Some(false);
        }
    }
    Some(true)
}

/// `{x : lo_i <= a_i · x <= hi_i}` for a nonsingular integer matrix `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelepiped {
    pub a: Vec<Vec<BigInt>>,
    pub lo: Vec<BigInt>,
    pub hi: Vec<BigInt>,
}

impl Parallelepiped {
    pub fn new(a: Vec<Vec<BigInt>>, lo: Vec<BigInt>, hi: Vec<BigInt>) -> Result<Self> {
        let n = a.len();
        if lo.len() != n || hi.len() != n {
            return Err(Error::DimMismatch {
                expected: n,
                got: lo.len().max(hi.len()),
            });
        }
        for row in &a {
            if row.len() != n {
                return Err(Error::DimMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        if Mat::from_int_rows(&a)?.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Parallelepiped { a, lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn to_hpolytope(&self) -> HPolytope {
        let mut p = HPolytope::new(self.dim());
        for i in 0..self.a.len() {
            p.push_le(self.a[i].clone(), self.hi[i].clone()).expect("same width");
            p.push_ge(self.a[i].clone(), self.lo[i].clone()).expect("same width");
        }
        p
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        let xb: Vec<BigInt> = x.iter().map(|&v| big(v)).collect();
        self.a.iter().zip(self.lo.iter().zip(&self.hi)).all(|(row, (lo, hi))| {
            let v = dot_int(row, &xb);
            *lo <= v && v <= *hi
        })
    }

    /// Row widths `hi_i − lo_i`.
    pub fn widths(&self) -> Vec<BigInt> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(lo, hi)| hi - lo)
            .collect()
    }
}

/// Is `x` the midpoint of no two distinct points of `set`?
pub fn is_irreducible(set: &BTreeSet<Vec<i64>>, x: &[i64]) -> bool {
    debug_assert!(set.contains(x));
    let mut mirror = vec![0i64; x.len()];
    for y in set {
        if y.as_slice() == x {
            continue;
        }
        let mut ok = true;
        for j in 0..x.len() {
            let m = 2 * x[j] as i128 - y[j] as i128;
            match i64::try_from(m) {
                Ok(v) => mirror[j] = v,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && set.contains(&mirror) {
            return false;
        }
    }
    true
}

/// The irreducible points of `points`, lexicographically sorted.
pub fn irreducible_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let set: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
    set.iter()
        .filter(|x| is_irreducible(&set, x))
        .cloned()
        .collect()
}

/// Convex-hull vertices of a planar point set via Andrew's monotone chain,
/// lexicographically sorted. Exact i128 cross products; duplicates tolerated.
pub(crate) fn hull2(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = {
        let s: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
        s.into_iter().collect()
    };
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &[i64], a: &[i64], b: &[i64]| -> i128 {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128
            - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    pts.reverse();
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let s: BTreeSet<Vec<i64>> = lower.into_iter().collect();
    s.into_iter().collect()
}

/// Vertices of the convex hull of a finite lattice set, lexicographically
/// sorted. Candidates are prefiltered to the irreducible points, then each is
/// kept iff it is not a convex combination of the remaining points.
pub fn integer_hull_vertices(points: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let set: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
    let mut out = Vec::new();
    for x in &set {
        if !is_irreducible(&set, x) {
            continue;
        }
        let cols: Vec<Vec<Rat>> = set
            .iter()
            .filter(|y| *y != x)
            .map(|y| {
                let mut col: Vec<Rat> = y.iter().map(|&v| rat(v)).collect();
                col.push(rat(1));
                col
            })
            .collect();
        let mut target: Vec<Rat> = x.iter().map(|&v| rat(v)).collect();
        target.push(rat(1));
        if nonneg_combination(&cols, &target)?.is_none() {
            out.push(x.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn bigs(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| big(v)).collect()
    }

    /// 0 <= 3x1 − x2 <= 19, 8 <= −x1 + 4x2 <= 26.
    fn skew_box() -> Parallelepiped {
        Parallelepiped::new(
            vec![bigs(&[3, -1]), bigs(&[-1, 4])],
            bigs(&[0, 8]),
            bigs(&[19, 26]),
        )
        .unwrap()
    }

    /// x1 + x2 >= 1, 2x1 − x2 <= 2, −x1 + 2x2 <= 2.
    fn small_triangle() -> HPolytope {
        let mut p = HPolytope::new(2);
        p.push_ge(bigs(&[1, 1]), big(1)).unwrap();
        p.push_le(bigs(&[2, -1]), big(2)).unwrap();
        p.push_le(bigs(&[-1, 2]), big(2)).unwrap();
        p
    }

    #[test]
    fn skew_box_lattice_and_irreducibles() {
        let p = skew_box().to_hpolytope();
        let pts = p.enumerate_lattice(1_000_000).unwrap();
        assert_eq!(pts.len(), 34);
        let irr = irreducible_points(&pts);
        let expected: Vec<Vec<i64>> = vec![
            vec![1, 3],
            vec![2, 6],
            vec![3, 7],
            vec![4, 3],
            vec![6, 8],
            vec![7, 4],
            vec![8, 5],
            vec![9, 8],
        ];
        assert_eq!(irr, expected);
        // Here every irreducible point happens to be a hull vertex too.
        assert_eq!(integer_hull_vertices(&pts).unwrap(), expected);
    }

    #[test]
    fn skew_box_vertices() {
        let v = skew_box().to_hpolytope().vertices().unwrap();
        let expected = vec![
            vec![ratio(8, 11), ratio(24, 11)],
            vec![ratio(26, 11), ratio(78, 11)],
            vec![ratio(84, 11), ratio(43, 11)],
            vec![ratio(102, 11), ratio(97, 11)],
        ];
        assert_eq!(v, expected);
    }

    #[test]
    fn triangle_irreducibles_strictly_contain_hull_vertices() {
        let p = small_triangle();
        let pts = p.enumerate_lattice(10_000).unwrap();
        assert_eq!(
            pts,
            vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 2]]
        );
        let irr = irreducible_points(&pts);
        assert_eq!(irr, pts, "all four points are irreducible");
        let hull = integer_hull_vertices(&pts).unwrap();
        assert_eq!(hull, vec![vec![0, 1], vec![1, 0], vec![2, 2]]);
    }

    #[test]
    fn empty_polytope_behaviour() {
        let mut p = HPolytope::new(1);
        p.push_le(bigs(&[1]), big(-1)).unwrap();
        p.push_ge(bigs(&[1]), big(0)).unwrap();
        assert!(p.is_empty().unwrap());
        assert!(p.enumerate_lattice(100).unwrap().is_empty());
        assert!(matches!(p.vertices(), Err(Error::EmptyPolytope)));
    }

    #[test]
    fn unbounded_polytope_reports_direction() {
        let mut p = HPolytope::new(2);
        p.push_ge(bigs(&[1, 0]), big(0)).unwrap();
        p.push_ge(bigs(&[0, 1]), big(0)).unwrap();
        match p.vertices() {
            Err(Error::Unbounded { direction }) => {
                assert!(direction.iter().any(|c| !c.is_zero()));
                // The direction must actually recede.
                assert!(direction.iter().all(|c| !c.is_negative()));
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
        assert!(matches!(
            p.enumerate_lattice(100),
            Err(Error::Unbounded { .. })
        ));
    }

    #[test]
    fn budget_guard_trips() {
        let mut p = HPolytope::new(2);
        p.push_le(bigs(&[1, 0]), big(4000)).unwrap();
        p.push_ge(bigs(&[1, 0]), big(0)).unwrap();
        p.push_le(bigs(&[0, 1]), big(4000)).unwrap();
        p.push_ge(bigs(&[0, 1]), big(0)).unwrap();
        assert!(matches!(
            p.enumerate_lattice(1000),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn degenerate_box_is_single_point() {
        let p = Parallelepiped::new(vec![bigs(&[1, 0]), bigs(&[0, 1])], bigs(&[2, 3]), bigs(&[2, 3]))
            .unwrap();
        let pts = p.to_hpolytope().enumerate_lattice(100).unwrap();
        assert_eq!(pts, vec![vec![2, 3]]);
        assert_eq!(irreducible_points(&pts), pts);
    }

    #[test]
    fn singular_box_matrix_rejected() {
        assert!(matches!(
            Parallelepiped::new(vec![bigs(&[1, 1]), bigs(&[2, 2])], bigs(&[0, 0]), bigs(&[1, 1])),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn collinear_points_have_two_hull_vertices() {
        let pts: Vec<Vec<i64>> = (0..5).map(|t| vec![t, 2 * t]).collect();
        let hull = integer_hull_vertices(&pts).unwrap();
        assert_eq!(hull, vec![vec![0, 0], vec![4, 8]]);
        assert_eq!(irreducible_points(&pts), hull);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn hull_matches_monotone_chain(
            raw in proptest::collection::vec((-6i64..=6, -6i64..=6), 1..25)
        ) {
            let pts: Vec<Vec<i64>> = raw.iter().map(|&(a, b)| vec![a, b]).collect();
            let got = integer_hull_vertices(&pts).unwrap();
            let want = hull2(&pts);
            prop_assert_eq!(got, want);
        }

        #[test]
        fn hull_vertices_are_irreducible(
            raw in proptest::collection::vec((-5i64..=5, -5i64..=5), 1..20)
        ) {
            let pts: Vec<Vec<i64>> = raw.iter().map(|&(a, b)| vec![a, b]).collect();
            let irr = irreducible_points(&pts);
            let hull = integer_hull_vertices(&pts).unwrap();
            let irr_set: BTreeSet<Vec<i64>> = irr.into_iter().collect();
            for v in &hull {
                prop_assert!(irr_set.contains(v));
            }
        }

        #[test]
        fn lattice_points_lie_inside_and_shrink_monotonically(
            b1 in 0i64..=6, b2 in 0i64..=6,
        ) {
            let mut big_p = HPolytope::new(2);
            big_p.push_le(bigs(&[1, 0]), big(b1 + 3)).unwrap();
            big_p.push_ge(bigs(&[1, 0]), big(-1)).unwrap();
            big_p.push_le(bigs(&[0, 1]), big(b2 + 3)).unwrap();
            big_p.push_ge(bigs(&[0, 1]), big(-1)).unwrap();
            let mut small_p = big_p.clone();
            small_p.push_le(bigs(&[1, 1]), big(b1)).unwrap();
            let big_set: BTreeSet<Vec<i64>> =
                big_p.enumerate_lattice(10_000).unwrap().into_iter().collect();
            let small = small_p.enumerate_lattice(10_000).unwrap();
            for x in &small {
                prop_assert!(small_p.contains_int(x));
                prop_assert!(big_set.contains(x));
            }
        }

        /// The unimodular shear (x, y) -> (x + y, y) maps the lattice set
        /// bijectively and preserves irreducibility.
        #[test]
        fn shear_preserves_counts(w1 in 0i64..=8, w2 in 0i64..=8) {
            let p = Parallelepiped::new(
                vec![bigs(&[1, 0]), bigs(&[0, 1])],
                bigs(&[0, 0]),
                bigs(&[w1, w2]),
            )
            .unwrap();
            // Shear image: rows compose with the inverse map (x,y) -> (x−y, y).
            let q = Parallelepiped::new(
                vec![bigs(&[1, -1]), bigs(&[0, 1])],
                bigs(&[0, 0]),
                bigs(&[w1, w2]),
            )
            .unwrap();
            let pl = p.to_hpolytope().enumerate_lattice(10_000).unwrap();
            let ql = q.to_hpolytope().enumerate_lattice(10_000).unwrap();
            prop_assert_eq!(pl.len(), ql.len());
            prop_assert_eq!(
                irreducible_points(&pl).len(),
                irreducible_points(&ql).len()
            );
        }
    }
}
