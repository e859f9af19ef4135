//! Threshold functions on the grid `{0..k−1}^n`: evaluation, separability
//! testing, minimal teaching sets, teaching dimension, difference-cone
//! envelopes, and integer re-coefficienting of rational cuts.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::feas::{lp_feasible, nonneg_combination, Constraint};
use crate::mat::Mat;
use crate::num::{big, clear_denominators, dot_rat, rat, rat_of, Rat};
use crate::polytope::{hull2, irreducible_points, HPolytope};
use crate::rays::extreme_rays;

/// Hard ceiling on the number of grid points any full-grid scan will touch.
pub const GRID_CAP: usize = 1_000_000;
/// Essential-point scans solve one feasibility problem per grid point.
const TEACH_CAP: usize = 4096;
/// Difference-cone generator count is quadratic in the class sizes.
const CONE_GEN_CAP: usize = 250_000;
/// Re-coefficienting runs double description with one row per grid point.
const RATIONALIZE_CAP: usize = 10_000;

fn dot_ax(a: &[BigInt], x: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (c, &v) in a.iter().zip(x) {
        acc += c * big(v);
    }
    acc
}

/// All points of `{0..k−1}^n` in lexicographic order.
pub fn grid_points(n: usize, k: u64) -> Result<Vec<Vec<i64>>> {
    if n == 0 {
        return Err(Error::Invalid("arity must be positive".into()));
    }
    if k < 2 {
        return Err(Error::Invalid("grid side must be at least 2".into()));
    }
    let total = (k as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= GRID_CAP as u128)
        .ok_or(Error::Capacity { what: "grid enumeration", limit: GRID_CAP })?;
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0i64; n];
    loop {
        out.push(cur.clone());
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if cur[j] + 1 < k as i64 {
                cur[j] += 1;
                break;
            }
            cur[j] = 0;
        }
    }
}

/// A two-class function on `{0..k−1}^n` cut out by one integer inequality:
/// class 0 is `a·x <= a0`, class 1 is the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdFn {
    n: usize,
    k: u64,
    a: Vec<BigInt>,
    a0: BigInt,
}

impl ThresholdFn {
    pub fn new(k: u64, a: Vec<BigInt>, a0: BigInt) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Invalid("arity must be positive".into()));
        }
        if k < 2 {
            return Err(Error::Invalid("grid side must be at least 2".into()));
        }
        Ok(ThresholdFn { n: a.len(), k, a, a0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.a
    }

    pub fn offset(&self) -> &BigInt {
        &self.a0
    }

    fn in_grid(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimMismatch { expected: self.n, got: x.len() });
        }
        if x.iter().any(|&v| v < 0 || v >= self.k as i64) {
            return Err(Error::OutOfGrid);
        }
        Ok(())
    }

    fn value(&self, x: &[i64]) -> bool {
        dot_ax(&self.a, x) > self.a0
    }

    /// `true` is class 1 (`a·x > a0`), `false` is class 0.
    pub fn eval(&self, x: &[i64]) -> Result<bool> {
        self.in_grid(x)?;
        Ok(self.value(x))
    }

    /// `(class 0, class 1)` grid points, each lexicographically sorted.
    pub fn classes(&self) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        let mut m0 = Vec::new();
        let mut m1 = Vec::new();
        for x in grid_points(self.n, self.k)? {
            if self.value(&x) {
                m1.push(x);
            } else {
                m0.push(x);
            }
        }
        Ok((m0, m1))
    }

    pub fn labeling(&self) -> Result<Labeling> {
        let bits = grid_points(self.n, self.k)?
            .iter()
            .map(|x| self.value(x))
            .collect();
        Ok(Labeling { n: self.n, k: self.k, bits })
    }

    /// True when `0 < a0 < a_j·(k−1)` for every coordinate: the origin then
    /// lies strictly in class 0 and every far axis corner strictly in
    /// class 1, so both classes meet every coordinate axis.
    pub fn separates_axes(&self) -> bool {
        let km1 = big(self.k as i64 - 1);
        self.a0.is_positive() && self.a.iter().all(|aj| aj * &km1 > self.a0)
    }
}

/// Reflect negative-coefficient coordinates (`x_j → k−1−x_j`) and sort the
/// coefficients into descending order. The result computes the same function
/// up to a grid symmetry, with `a_1 >= a_2 >= ... >= a_n >= 0`.
pub fn normalize_descending(f: &ThresholdFn) -> ThresholdFn {
    let km1 = big(f.k as i64 - 1);
    let mut a = f.a.clone();
    let mut a0 = f.a0.clone();
    for aj in a.iter_mut() {
        if aj.is_negative() {
            a0 -= &*aj * &km1;
            *aj = -aj.clone();
        }
    }
    a.sort_by(|x, y| y.cmp(x));
    ThresholdFn { n: f.n, k: f.k, a, a0 }
}

/// A complete 0/1 labeling of `{0..k−1}^n`, bit `i` belonging to the `i`-th
/// grid point in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    n: usize,
    k: u64,
    bits: Vec<bool>,
}

impl Labeling {
    pub fn new(n: usize, k: u64, bits: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("arity must be positive".into()));
        }
        if k < 2 {
            return Err(Error::Invalid("grid side must be at least 2".into()));
        }
        let total = (k as u128)
            .checked_pow(n as u32)
            .filter(|&t| t <= GRID_CAP as u128)
            .ok_or(Error::Capacity { what: "grid enumeration", limit: GRID_CAP })?;
        if bits.len() as u128 != total {
            return Err(Error::DimMismatch { expected: total as usize, got: bits.len() });
        }
        Ok(Labeling { n, k, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn index_of(&self, x: &[i64]) -> Result<usize> {
        if x.len() != self.n {
            return Err(Error::DimMismatch { expected: self.n, got: x.len() });
        }
        let mut idx = 0usize;
        for &v in x {
            if v < 0 || v >= self.k as i64 {
                return Err(Error::OutOfGrid);
            }
            idx = idx * self.k as usize + v as usize;
        }
        Ok(idx)
    }

    pub fn get(&self, x: &[i64]) -> Result<bool> {
        Ok(self.bits[self.index_of(x)?])
    }

    /// The labeling differing from `self` exactly at `x`.
    pub fn flipped(&self, x: &[i64]) -> Result<Labeling> {
        let idx = self.index_of(x)?;
        let mut out = self.clone();
        out.bits[idx] = !out.bits[idx];
        Ok(out)
    }

    /// Grid points carrying label `value`, lexicographically sorted.
    pub fn points_labeled(&self, value: bool) -> Result<Vec<Vec<i64>>> {
        Ok(grid_points(self.n, self.k)?
            .into_iter()
            .zip(&self.bits)
            .filter(|(_, &b)| b == value)
            .map(|(p, _)| p)
            .collect())
    }
}

/// Endpoints in one dimension, hull vertices in two, everything otherwise.
/// An inequality holds on a finite set iff it holds on the pruned set.
fn prune_for_separation(points: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    match n {
        1 => {
            let lo = points.iter().map(|p| p[0]).min();
            let hi = points.iter().map(|p| p[0]).max();
            match (lo, hi) {
                (Some(l), Some(h)) if l != h => vec![vec![l], vec![h]],
                (Some(l), _) => vec![vec![l]],
                _ => Vec::new(),
            }
        }
        2 => hull2(points),
        _ => points.to_vec(),
    }
}

/// Searches for an integer inequality realizing `lab`: `a·x <= a0` on the
/// 0-labeled points and `a·x >= a0 + 1` on the 1-labeled ones. The margin of
/// one unit makes strictness exact over integer coefficients; a rational
/// witness is cleared to integers, which preserves both sides.
pub fn is_separable(lab: &Labeling) -> Result<Option<ThresholdFn>> {
    let n = lab.n;
    let zeros = lab.points_labeled(false)?;
    let ones = lab.points_labeled(true)?;
    if ones.is_empty() {
        return Ok(Some(ThresholdFn::new(lab.k, vec![BigInt::zero(); n], BigInt::zero())?));
    }
    if zeros.is_empty() {
        return Ok(Some(ThresholdFn::new(lab.k, vec![BigInt::zero(); n], -BigInt::one())?));
    }
    let mut cons = Vec::new();
    for z in prune_for_separation(&zeros, n) {
        let mut row: Vec<Rat> = z.iter().map(|&v| rat(v)).collect();
        row.push(rat(-1));
        cons.push(Constraint::le(row, rat(0)));
    }
    for o in prune_for_separation(&ones, n) {
        let mut row: Vec<Rat> = o.iter().map(|&v| rat(v)).collect();
        row.push(rat(-1));
        cons.push(Constraint::ge(row, rat(1)));
    }
    let feas = lp_feasible(&cons)?;
    let Some(w) = feas.witness() else {
        return Ok(None);
    };
    let (ints, _) = clear_denominators(w);
    let a = ints[..n].to_vec();
    let a0 = ints[n].clone();
    let f = ThresholdFn::new(lab.k, a, a0)?;
    for (x, &want) in grid_points(n, lab.k)?.iter().zip(&lab.bits) {
        if f.value(x) != want {
            return Err(Error::Invalid("separation witness failed verification".into()));
        }
    }
    Ok(Some(f))
}

/// Is `z` a point where some other threshold function can disagree with `f`
/// while matching it everywhere else?
pub fn essential(f: &ThresholdFn, z: &[i64]) -> Result<bool> {
    f.in_grid(z)?;
    let flipped = f.labeling()?.flipped(z)?;
    Ok(is_separable(&flipped)?.is_some())
}

/// The minimal teaching set, split by class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeachingSet {
    pub t0: Vec<Vec<i64>>,
    pub t1: Vec<Vec<i64>>,
}

impl TeachingSet {
    pub fn total(&self) -> usize {
        self.t0.len() + self.t1.len()
    }
}

/// All essential points of `f`, split by class and lexicographically sorted.
/// This is the unique minimal set of points that distinguishes `f` from every
/// other threshold function on the same grid.
pub fn teaching_set(f: &ThresholdFn) -> Result<TeachingSet> {
    let grid = grid_points(f.n, f.k)?;
    if grid.len() > TEACH_CAP {
        return Err(Error::Capacity { what: "essential-point scan", limit: TEACH_CAP });
    }
    let mut work = f.labeling()?;
    let mut t0 = Vec::new();
    let mut t1 = Vec::new();
    for (i, x) in grid.iter().enumerate() {
        work.bits[i] = !work.bits[i];
        let sep = is_separable(&work)?.is_some();
        work.bits[i] = !work.bits[i];
        if sep {
            if work.bits[i] {
                t1.push(x.clone());
            } else {
                t0.push(x.clone());
            }
        }
    }
    Ok(TeachingSet { t0, t1 })
}

/// Generators of the cone spanned by all differences (class-1 point minus
/// class-0 point), deduplicated and lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepCone {
    pub generators: Vec<Vec<BigInt>>,
}

pub fn sep_cone(f: &ThresholdFn) -> Result<SepCone> {
    let (m0, m1) = f.classes()?;
    if m0.len().saturating_mul(m1.len()) > CONE_GEN_CAP {
        return Err(Error::Capacity { what: "difference cone generators", limit: CONE_GEN_CAP });
    }
    let mut set = BTreeSet::new();
    for p1 in &m1 {
        for p0 in &m0 {
            let d: Vec<BigInt> = p1.iter().zip(p0).map(|(&u, &v)| big(u - v)).collect();
            set.insert(d);
        }
    }
    Ok(SepCone { generators: set.into_iter().collect() })
}

/// Membership of rational `x` in `conv(points) ± cone`: minus the cone for
/// `nu = 0`, plus the cone for `nu = 1`. An empty point set gives an empty
/// envelope, hence `false`.
pub fn envelope_member(points: &[Vec<i64>], cone: &SepCone, nu: u8, x: &[Rat]) -> Result<bool> {
    if nu > 1 {
        return Err(Error::Invalid("class tag must be 0 or 1".into()));
    }
    if points.is_empty() {
        return Ok(false);
    }
    let dim = points[0].len();
    if x.len() != dim {
        return Err(Error::DimMismatch { expected: dim, got: x.len() });
    }
    let mut cols = Vec::with_capacity(points.len() + cone.generators.len());
    for p in points {
        let mut col: Vec<Rat> = p.iter().map(|&v| rat(v)).collect();
        col.push(rat(1));
        cols.push(col);
    }
    for g in &cone.generators {
        let mut col: Vec<Rat> = g
            .iter()
            .map(|v| if nu == 0 { -rat_of(v) } else { rat_of(v) })
            .collect();
        col.push(rat(0));
        cols.push(col);
    }
    let mut target: Vec<Rat> = x.to_vec();
    target.push(rat(1));
    Ok(nonneg_combination(&cols, &target)?.is_some())
}

/// Membership of `x` in the class-`nu` envelope of `f`: the convex hull of
/// the class shifted by the difference cone (down for class 0, up for
/// class 1).
pub fn in_f(f: &ThresholdFn, nu: u8, x: &[Rat]) -> Result<bool> {
    let (m0, m1) = f.classes()?;
    let cone = sep_cone(f)?;
    let points = if nu == 0 { &m0 } else { &m1 };
    envelope_member(points, &cone, nu, x)
}

/// Vertices of the two envelopes: class points that are not reachable as a
/// combination of the remaining class points and the cone. These coincide
/// with the per-class halves of the minimal teaching set.
pub fn envelope_vertices(f: &ThresholdFn) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let (m0, m1) = f.classes()?;
    let cone = sep_cone(f)?;
    let mut out = [Vec::new(), Vec::new()];
    for (nu, class) in [(0u8, &m0), (1u8, &m1)] {
        for t in class.iter() {
            let others: Vec<Vec<i64>> =
                class.iter().filter(|p| p.as_slice() != t.as_slice()).cloned().collect();
            let xr: Vec<Rat> = t.iter().map(|&v| rat(v)).collect();
            if !envelope_member(&others, &cone, nu, &xr)? {
                out[nu as usize].push(t.clone());
            }
        }
    }
    let [v0, v1] = out;
    Ok((v0, v1))
}

/// Does every ordered pair of distinct points `x, y` satisfy that `2x − y`
/// has a negative component? Inputs must be nonnegative integer vectors.
pub fn has_separation_property(points: &[Vec<i64>]) -> Result<bool> {
    if points.is_empty() {
        return Ok(true);
    }
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimMismatch { expected: dim, got: p.len() });
        }
        if p.iter().any(|&v| v < 0) {
            return Err(Error::NegativeComponent);
        }
    }
    for x in points {
        for y in points {
            if x == y {
                continue;
            }
            if (0..dim).all(|j| 2 * x[j] - y[j] >= 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Replaces a rational cut `a·x <= a0` by an integer one inducing the same
/// two classes on `{0..k−1}^n`. The coefficients come from an extreme ray
/// (with a strictly positive slack component) of the homogeneous cone whose
/// rows demand `b0 − b·x >= 0` on the 0-side and `b·x − b0 >= b_{n+1}` on
/// the 1-side; the lexicographically smallest such primitive ray is chosen.
pub fn rationalize(a: &[Rat], a0: &Rat, n: usize, k: u64) -> Result<(Vec<BigInt>, BigInt)> {
    if a.len() != n {
        return Err(Error::DimMismatch { expected: n, got: a.len() });
    }
    if n == 0 {
        return Err(Error::Invalid("arity must be positive".into()));
    }
    if k < 2 {
        return Err(Error::Invalid("grid side must be at least 2".into()));
    }
    let grid = grid_points(n, k)?;
    if grid.len() > RATIONALIZE_CAP {
        return Err(Error::Capacity { what: "re-coefficienting grid", limit: RATIONALIZE_CAP });
    }
    let low_side = |x: &[i64]| -> bool {
        let xr: Vec<Rat> = x.iter().map(|&v| rat(v)).collect();
        dot_rat(a, &xr) <= *a0
    };
    let mut rows = Vec::with_capacity(grid.len() + 1);
    for x in &grid {
        let mut row = Vec::with_capacity(n + 2);
        if low_side(x) {
            row.push(BigInt::one());
            row.extend(x.iter().map(|&v| big(-v)));
            row.push(BigInt::zero());
        } else {
            row.push(-BigInt::one());
            row.extend(x.iter().map(|&v| big(v)));
            row.push(-BigInt::one());
        }
        rows.push(row);
    }
    let mut slack = vec![BigInt::zero(); n + 2];
    slack[n + 1] = BigInt::one();
    rows.push(slack);
    let rays = extreme_rays(&Mat::from_int_rows(&rows)?)?;
    let ray = rays
        .iter()
        .find(|r| r[n + 1].is_positive())
        .ok_or_else(|| Error::Invalid("no strictly separating extreme ray".into()))?;
    let b = ray[1..=n].to_vec();
    let b0 = ray[0].clone();
    for x in &grid {
        if low_side(x) != (dot_ax(&b, x) <= b0) {
            return Err(Error::Invalid("re-coefficienting changed the dichotomy".into()));
        }
    }
    Ok((b, b0))
}

/// Which structural regime the slice cross-check lands in after normalizing
/// the coefficients to descending nonnegative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceRegime {
    /// One class is empty: nothing to compare.
    Vacuous,
    /// `a0 <= (k−1)·a_n`: the global teaching bound already covers this case
    /// and no slice is formed.
    SmallThreshold,
    /// The last unit vector lies outside the difference cone; every teaching
    /// point then sits on the bottom or top layer of the last coordinate.
    BoundaryLayers,
    /// The last unit vector lies inside the difference cone; per-class band
    /// counts are compared against the irreducible points of the slice.
    Slice,
}

/// Outcome of [`irr_connection_check`]: the normalized inequality, the regime
/// it falls in, and the count comparison where one applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    pub a: Vec<BigInt>,
    pub a0: BigInt,
    pub regime: SliceRegime,
    pub teaching_counts: [u64; 2],
    /// Teaching points whose head-sum `a_1x_1+…+a_{n−1}x_{n−1}` falls in the
    /// transition window `(a0 − (k−1)·a_n, a0]`.
    pub band_counts: Option<[u64; 2]>,
    pub slice_irreducible: Option<u64>,
    /// In the boundary regime: did every teaching point have its last
    /// coordinate on the grid boundary?
    pub boundary_confirmed: Option<bool>,
    pub bound_holds: Option<bool>,
}

/// Connects teaching sets to irreducible points: inside the transition
/// window of the last (smallest-coefficient) coordinate, each class
/// contributes at most as many teaching points as the slice
/// `{x : a0 − (k−1)·a_n < a_1x_1+…+a_{n−1}x_{n−1} <= a0, 0 <= x_j <= k−1}`
/// has irreducible points. The check normalizes `f`, classifies the regime,
/// and evaluates the comparison where it applies.
pub fn irr_connection_check(f: &ThresholdFn) -> Result<SliceReport> {
    let cap = match f.n {
        2 => 32,
        3 => 6,
        _ => return Err(Error::Invalid("slice check supports 2 or 3 variables".into())),
    };
    if f.k > cap {
        return Err(Error::Capacity { what: "slice-check grid side", limit: cap as usize });
    }
    let g = normalize_descending(f);
    let ts = teaching_set(&g)?;
    let counts = [ts.t0.len() as u64, ts.t1.len() as u64];
    let mut report = SliceReport {
        a: g.a.clone(),
        a0: g.a0.clone(),
        regime: SliceRegime::Vacuous,
        teaching_counts: counts,
        band_counts: None,
        slice_irreducible: None,
        boundary_confirmed: None,
        bound_holds: None,
    };
    let (m0, m1) = g.classes()?;
    if m0.is_empty() || m1.is_empty() {
        return Ok(report);
    }
    let km1 = big(g.k as i64 - 1);
    let an = g.a[g.n - 1].clone();
    let window_low = &g.a0 - &an * &km1;
    if g.a0 <= &an * &km1 {
        report.regime = SliceRegime::SmallThreshold;
        return Ok(report);
    }
    let cone = sep_cone(&g)?;
    let cols: Vec<Vec<Rat>> = cone
        .generators
        .iter()
        .map(|gen| gen.iter().map(rat_of).collect())
        .collect();
    let mut en = vec![rat(0); g.n];
    en[g.n - 1] = rat(1);
    let last_in_cone = nonneg_combination(&cols, &en)?.is_some();
    if !last_in_cone {
        report.regime = SliceRegime::BoundaryLayers;
        let on_boundary = |t: &Vec<i64>| t[g.n - 1] == 0 || t[g.n - 1] == g.k as i64 - 1;
        report.boundary_confirmed =
            Some(ts.t0.iter().all(on_boundary) && ts.t1.iter().all(on_boundary));
        return Ok(report);
    }
    report.regime = SliceRegime::Slice;
    let head = &g.a[..g.n - 1];
    let head_sum = |t: &Vec<i64>| dot_ax(head, &t[..g.n - 1]);
    let band0 = ts.t0.iter().filter(|t| head_sum(t) > window_low).count() as u64;
    let band1 = ts.t1.iter().filter(|t| head_sum(t) <= g.a0).count() as u64;
    report.band_counts = Some([band0, band1]);
    let mut slice = HPolytope::new(g.n - 1);
    slice.push_le(head.to_vec(), g.a0.clone())?;
    slice.push_ge(head.to_vec(), &window_low + BigInt::one())?;
    for j in 0..g.n - 1 {
        let mut e = vec![BigInt::zero(); g.n - 1];
        e[j] = BigInt::one();
        slice.push_ge(e.clone(), BigInt::zero())?;
        slice.push_le(e, km1.clone())?;
    }
    let lattice = slice.enumerate_lattice(GRID_CAP)?;
    let irr = irreducible_points(&lattice).len() as u64;
    report.slice_irreducible = Some(irr);
    report.bound_holds = Some(band0 <= irr && band1 <= irr);
    Ok(report)
}

// --- teaching-dimension enumeration ---------------------------------------

/// Pivot columns of the difference matrix of `points`: a coordinate subset
/// onto which projection preserves the affine dimension.
fn pivot_columns(points: &[Vec<i64>]) -> Vec<usize> {
    let m = points[0].len();
    let mut rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| (0..m).map(|j| (p[j] - points[0][j]) as i128).collect())
        .collect();
    let mut piv = Vec::new();
    let mut r = 0usize;
    for col in 0..m {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let p = rows[r][col];
        for i in r + 1..rows.len() {
            if rows[i][col] != 0 {
                let fac = rows[i][col];
                for j in 0..m {
                    rows[i][j] = rows[i][j] * p - rows[r][j] * fac;
                }
            }
        }
        piv.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    piv
}

/// Orientation of `proj[q]` against the hyperplane spanned by the points
/// `proj[c[0]], …, proj[c[d−1]]` in `d` dimensions. Zero on the hyperplane,
/// and identically zero when the spanning set is degenerate.
fn orient(c: &[usize], proj: &[Vec<i64>], q: usize) -> i128 {
    let d = c.len();
    let base = &proj[c[0]];
    let row = |i: usize, j: usize| -> i128 {
        let p = if i + 1 < d { &proj[c[i + 1]] } else { &proj[q] };
        (p[j] - base[j]) as i128
    };
    match d {
        1 => row(0, 0),
        2 => row(0, 0) * row(1, 1) - row(0, 1) * row(1, 0),
        3 => {
            row(0, 0) * (row(1, 1) * row(2, 2) - row(1, 2) * row(2, 1))
                - row(0, 1) * (row(1, 0) * row(2, 2) - row(1, 2) * row(2, 0))
                + row(0, 2) * (row(1, 0) * row(2, 1) - row(1, 1) * row(2, 0))
        }
        _ => unreachable!("enumeration is guarded to dimension at most 3"),
    }
}

fn advance_combination(comb: &mut [usize], t: usize) -> bool {
    let d = comb.len();
    let mut i = d;
    while i > 0 {
        i -= 1;
        if comb[i] + (d - i) < t {
            comb[i] += 1;
            for j in i + 1..d {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All labelings of `points` induced by an affine inequality (one side weak,
/// the other strict). Every hyperplane spanned by affinely independent
/// points is tried with both orientations; points on the hyperplane are
/// assigned every inequality-induced labeling of the touching set
/// recursively, which realizes all tie-breaking perturbations. Constant
/// labelings are included.
fn threshold_labelings(points: &[Vec<i64>]) -> BTreeSet<Vec<bool>> {
    let t = points.len();
    let mut out = BTreeSet::new();
    out.insert(vec![false; t]);
    out.insert(vec![true; t]);
    if t <= 1 {
        return out;
    }
    let piv = pivot_columns(points);
    let d = piv.len();
    if d == 0 {
        return out;
    }
    let proj: Vec<Vec<i64>> =
        points.iter().map(|p| piv.iter().map(|&c| p[c]).collect()).collect();
    let mut seen_ties: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut comb: Vec<usize> = (0..d).collect();
    loop {
        let mut signs = vec![0i8; t];
        let mut tie = Vec::new();
        let mut any = false;
        for q in 0..t {
            let s = orient(&comb, &proj, q);
            if s > 0 {
                signs[q] = 1;
                any = true;
            } else if s < 0 {
                signs[q] = -1;
                any = true;
            } else {
                tie.push(q);
            }
        }
        if any && seen_ties.insert(tie.clone()) {
            let tie_pts: Vec<Vec<i64>> = tie.iter().map(|&i| proj[i].clone()).collect();
            for sub in threshold_labelings(&tie_pts) {
                for flip in [false, true] {
                    let mut bits = vec![false; t];
                    for q in 0..t {
                        if signs[q] != 0 {
                            bits[q] = (signs[q] > 0) != flip;
                        }
                    }
                    for (r, &ti) in tie.iter().enumerate() {
                        bits[ti] = sub[r];
                    }
                    out.insert(bits);
                }
            }
        }
        if !advance_combination(&mut comb, t) {
            break;
        }
    }
    out
}

/// Exhaustive teaching-dimension search result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub n: usize,
    pub k: u64,
    /// Maximum teaching-set size over all threshold functions on the grid.
    pub sigma: u64,
    /// Number of distinct threshold functions on the grid.
    pub function_count: u64,
    /// Lexicographically smallest labeling attaining the maximum.
    pub witness_bits: Vec<bool>,
}

/// Enumerates every threshold labeling of `{0..k−1}^n`, then sizes each
/// minimal teaching set by flip membership: a point is essential iff the
/// flipped labeling is again in the enumerated family.
pub fn sigma_details(n: usize, k: u64) -> Result<SigmaReport> {
    if n == 0 {
        return Err(Error::Invalid("arity must be positive".into()));
    }
    if k < 2 {
        return Err(Error::Invalid("grid side must be at least 2".into()));
    }
    let cap: u64 = match n {
        1 => 512,
        2 => 10,
        3 => 4,
        _ => return Err(Error::Capacity { what: "teaching-dimension arity", limit: 3 }),
    };
    if k > cap {
        return Err(Error::Capacity { what: "teaching-dimension grid side", limit: cap as usize });
    }
    let pts = grid_points(n, k)?;
    let labs = threshold_labelings(&pts);
    let mut best = 0u64;
    let mut witness: Option<&Vec<bool>> = None;
    for lab in &labs {
        let mut scratch = lab.clone();
        let mut cnt = 0u64;
        for z in 0..pts.len() {
            scratch[z] = !scratch[z];
            if labs.contains(&scratch) {
                cnt += 1;
            }
            scratch[z] = !scratch[z];
        }
        if witness.is_none() || cnt > best {
            best = cnt;
            witness = Some(lab);
        }
    }
    Ok(SigmaReport {
        n,
        k,
        sigma: best,
        function_count: labs.len() as u64,
        witness_bits: witness.cloned().unwrap_or_default(),
    })
}

/// The teaching dimension: the largest minimal-teaching-set size over all
/// threshold functions on `{0..k−1}^n`.
pub fn sigma(n: usize, k: u64) -> Result<u64> {
    Ok(sigma_details(n, k)?.sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::grid_alpha_beta;
    use crate::num::ratio;

    fn bigs(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| big(v)).collect()
    }

    fn tf(k: u64, a: &[i64], a0: i64) -> ThresholdFn {
        ThresholdFn::new(k, bigs(a), big(a0)).unwrap()
    }

    /// 5x + 9y <= 103 on the 20×20 grid.
    fn wide() -> ThresholdFn {
        tf(20, &[5, 9], 103)
    }

    #[test]
    fn eval_reports_class_membership() {
        let f = wide();
        assert!(!f.eval(&[17, 2]).unwrap()); // 85 + 18 = 103, class 0
        assert!(f.eval(&[19, 1]).unwrap()); // 95 + 9 = 104, class 1
        assert!(matches!(f.eval(&[20, 0]), Err(Error::OutOfGrid)));
        assert!(matches!(f.eval(&[0, -1]), Err(Error::OutOfGrid)));
        let zero = tf(4, &[0, 0], 0);
        for x in grid_points(2, 4).unwrap() {
            assert!(!zero.eval(&x).unwrap());
        }
    }

    #[test]
    fn xor_is_not_separable() {
        let lab = Labeling::new(2, 2, vec![false, true, true, false]).unwrap();
        assert!(is_separable(&lab).unwrap().is_none());
    }

    #[test]
    fn separable_recovers_labelings() {
        let lab = wide().labeling().unwrap();
        let g = is_separable(&lab).unwrap().expect("realizable");
        assert_eq!(g.labeling().unwrap(), lab);

        let ones = Labeling::new(2, 3, vec![true; 9]).unwrap();
        let g = is_separable(&ones).unwrap().expect("realizable");
        let (m0, m1) = g.classes().unwrap();
        assert!(m0.is_empty());
        assert_eq!(m1.len(), 9);
    }

    #[test]
    fn essential_points_of_the_wide_example() {
        let f = wide();
        assert!(essential(&f, &[8, 7]).unwrap());
        assert!(!essential(&f, &[0, 0]).unwrap());
        assert!(matches!(essential(&f, &[40, 0]), Err(Error::OutOfGrid)));
    }

    #[test]
    fn teaching_set_of_the_wide_example() {
        let ts = teaching_set(&wide()).unwrap();
        assert_eq!(ts.t0, vec![vec![8, 7], vec![17, 2]]);
        assert_eq!(ts.t1, vec![vec![1, 11], vec![19, 1]]);
        assert_eq!(ts.total(), 4);
    }

    #[test]
    fn teaching_set_of_a_constant_is_the_corners() {
        let ts = teaching_set(&tf(4, &[0, 0], 0)).unwrap();
        assert_eq!(ts.t0, vec![vec![0, 0], vec![0, 3], vec![3, 0], vec![3, 3]]);
        assert!(ts.t1.is_empty());
    }

    #[test]
    fn teaching_set_in_one_dimension_is_the_boundary_pair() {
        let ts = teaching_set(&tf(5, &[1], 2)).unwrap();
        assert_eq!(ts.t0, vec![vec![2]]);
        assert_eq!(ts.t1, vec![vec![3]]);
    }

    #[test]
    fn normalization_reflects_and_sorts() {
        let g = normalize_descending(&wide());
        assert_eq!(g.coeffs(), &bigs(&[9, 5])[..]);
        assert_eq!(*g.offset(), big(103));

        let f = tf(4, &[-2, 3], 1);
        let g = normalize_descending(&f);
        assert_eq!(g.coeffs(), &bigs(&[3, 2])[..]);
        assert_eq!(*g.offset(), big(7));
        // Same class sizes and teaching-set sizes: the rewrite is a symmetry.
        let (f0, f1) = f.classes().unwrap();
        let (g0, g1) = g.classes().unwrap();
        assert_eq!(f0.len(), g0.len());
        assert_eq!(f1.len(), g1.len());
        let tf_ = teaching_set(&f).unwrap();
        let tg = teaching_set(&g).unwrap();
        assert_eq!(tf_.t0.len(), tg.t0.len());
        assert_eq!(tf_.t1.len(), tg.t1.len());
    }

    #[test]
    fn sigma_small_planes() {
        let r = sigma_details(2, 2).unwrap();
        assert_eq!(r.sigma, 4);
        assert_eq!(r.function_count, 14);
        assert_eq!(sigma(2, 3).unwrap(), 4);
        assert_eq!(sigma(2, 4).unwrap(), 4);
    }

    #[test]
    fn sigma_line_counts_step_functions() {
        let r = sigma_details(1, 5).unwrap();
        assert_eq!(r.sigma, 2);
        // Ascending and descending step functions: 2k distinct labelings.
        assert_eq!(r.function_count, 10);
        assert_eq!(sigma(1, 2).unwrap(), 2);
    }

    #[test]
    fn sigma_cube_matches_known_counts() {
        let r = sigma_details(3, 2).unwrap();
        assert_eq!(r.sigma, 8);
        assert_eq!(r.function_count, 104);
    }

    #[test]
    fn sigma_guards() {
        assert!(matches!(sigma(2, 11), Err(Error::Capacity { .. })));
        assert!(matches!(sigma(4, 2), Err(Error::Capacity { .. })));
        assert!(matches!(sigma(3, 5), Err(Error::Capacity { .. })));
        assert!(sigma(2, 1).is_err());
        assert!(sigma(0, 3).is_err());
    }

    #[test]
    fn teaching_sets_distinguish_and_are_minimal() {
        // Exhaustive over all threshold labelings of small square grids:
        // the essential points separate every pair of distinct labelings,
        // and dropping any essential point loses that property.
        for k in 2..=6u64 {
            let pts = grid_points(2, k).unwrap();
            let labs = threshold_labelings(&pts);
            let list: Vec<&Vec<bool>> = labs.iter().collect();
            for lab in &list {
                let mut scratch = (*lab).clone();
                let mut teach = Vec::new();
                for z in 0..pts.len() {
                    scratch[z] = !scratch[z];
                    if labs.contains(&scratch) {
                        teach.push(z);
                    }
                    scratch[z] = !scratch[z];
                }
                for other in &list {
                    if other == lab {
                        continue;
                    }
                    assert!(
                        teach.iter().any(|&z| other[z] != lab[z]),
                        "teaching set failed to separate a pair at k={k}"
                    );
                }
                // Minimality: flipping at an essential point yields another
                // valid labeling agreeing everywhere else, so no essential
                // point can be dropped.
                for &z in &teach {
                    scratch[z] = !scratch[z];
                    assert!(labs.contains(&scratch));
                    scratch[z] = !scratch[z];
                }
            }
        }
    }

    #[test]
    fn envelope_vertices_match_teaching_sets() {
        for f in [
            tf(5, &[1, 1], 2),
            tf(5, &[2, 3], 7),
            tf(6, &[1, 2], 4),
            tf(4, &[3, 1], 5),
        ] {
            let ts = teaching_set(&f).unwrap();
            let (v0, v1) = envelope_vertices(&f).unwrap();
            assert_eq!(v0, ts.t0);
            assert_eq!(v1, ts.t1);
        }
    }

    #[test]
    fn envelope_membership_basics() {
        let f = tf(3, &[1, 1], 1);
        assert!(f.separates_axes());
        assert!(!tf(3, &[1, 1], 3).separates_axes());
        assert!(!tf(3, &[1, 1], 0).separates_axes());
        // Class points belong to their own envelope.
        let (m0, _) = f.classes().unwrap();
        for p in &m0 {
            let xr: Vec<Rat> = p.iter().map(|&v| rat(v)).collect();
            assert!(in_f(&f, 0, &xr).unwrap());
        }
        // For an axis-separating function the two envelopes cover the whole
        // nonnegative orthant, including points beyond the grid.
        for x in 0..5i64 {
            for y in 0..5i64 {
                let xr = vec![rat(x), rat(y)];
                assert!(
                    in_f(&f, 0, &xr).unwrap() || in_f(&f, 1, &xr).unwrap(),
                    "({x},{y}) escaped both envelopes"
                );
            }
        }
        // Constant function: the empty class has an empty envelope.
        let c = tf(3, &[0, 0], -1);
        assert!(!in_f(&c, 0, &[rat(0), rat(0)]).unwrap());
    }

    #[test]
    fn teaching_pairs_leave_both_envelopes() {
        let f = tf(6, &[1, 2], 4);
        let ts = teaching_set(&f).unwrap();
        let (m0, m1) = f.classes().unwrap();
        let cone = sep_cone(&f).unwrap();
        for class in [&ts.t0, &ts.t1] {
            for x in class.iter() {
                for y in class.iter() {
                    if x == y {
                        continue;
                    }
                    let z: Vec<Rat> =
                        x.iter().zip(y).map(|(&u, &v)| rat(2 * u - v)).collect();
                    assert!(!envelope_member(&m0, &cone, 0, &z).unwrap());
                    assert!(!envelope_member(&m1, &cone, 1, &z).unwrap());
                }
            }
        }
    }

    #[test]
    fn separation_property_examples() {
        assert!(has_separation_property(&[vec![0, 2], vec![1, 0]]).unwrap());
        assert!(!has_separation_property(&[vec![0, 0], vec![1, 1]]).unwrap());
        assert!(has_separation_property(&[vec![3, 3]]).unwrap());
        assert!(has_separation_property(&[]).unwrap());
        assert!(matches!(
            has_separation_property(&[vec![-1, 0]]),
            Err(Error::NegativeComponent)
        ));
    }

    #[test]
    fn rationalize_preserves_dichotomies() {
        // All nine points of the 3×3 grid satisfy x/3 + y/7 <= 1.
        let (b, b0) = rationalize(&[ratio(1, 3), ratio(1, 7)], &rat(1), 2, 3).unwrap();
        for x in grid_points(2, 3).unwrap() {
            assert!(dot_ax(&b, &x) <= b0);
        }

        let (b, b0) = rationalize(&[rat(1), rat(1)], &rat(1), 2, 2).unwrap();
        for x in grid_points(2, 2).unwrap() {
            assert_eq!(x[0] + x[1] <= 1, dot_ax(&b, &x) <= b0);
        }
    }

    #[test]
    fn rationalize_respects_coefficient_bounds() {
        let f = wide();
        let a: Vec<Rat> = f.coeffs().iter().map(rat_of).collect();
        let (b, b0) = rationalize(&a, &rat_of(f.offset()), 2, 20).unwrap();
        for x in grid_points(2, 20).unwrap() {
            assert_eq!(f.value(&x), dot_ax(&b, &x) > b0);
        }
        let (alpha, beta) = grid_alpha_beta(2, 20).unwrap();
        for bj in &b {
            assert!(rat_of(&bj.abs()) <= alpha, "coefficient {bj} above {alpha}");
        }
        assert!(rat_of(&b0.abs()) <= beta, "offset {b0} above {beta}");
    }

    #[test]
    fn slice_check_on_the_wide_example() {
        let r = irr_connection_check(&wide()).unwrap();
        assert_eq!(r.a, bigs(&[9, 5]));
        assert_eq!(r.regime, SliceRegime::Slice);
        assert_eq!(r.teaching_counts, [2, 2]);
        assert_eq!(r.band_counts, Some([2, 2]));
        assert_eq!(r.slice_irreducible, Some(2));
        assert_eq!(r.bound_holds, Some(true));
        assert_eq!(r.boundary_confirmed, None);
    }

    #[test]
    fn slice_check_regimes() {
        // Constant 1: the 0-class is empty.
        let r = irr_connection_check(&tf(3, &[1, 1], -1)).unwrap();
        assert_eq!(r.regime, SliceRegime::Vacuous);
        assert_eq!(r.teaching_counts[0], 0);

        // a0 = 1 <= (k−1)·a_n = 2: no slice is formed.
        let r = irr_connection_check(&tf(3, &[1, 1], 1)).unwrap();
        assert_eq!(r.regime, SliceRegime::SmallThreshold);

        // Depends only on x_1, so the last unit vector is outside the cone
        // and all teaching points sit on the top or bottom row.
        let r = irr_connection_check(&tf(3, &[2, 0], 1)).unwrap();
        assert_eq!(r.regime, SliceRegime::BoundaryLayers);
        assert_eq!(r.boundary_confirmed, Some(true));
    }

    #[test]
    fn slice_check_three_variables() {
        let r = irr_connection_check(&tf(4, &[3, 2, 1], 5)).unwrap();
        assert!(matches!(
            r.regime,
            SliceRegime::Slice | SliceRegime::SmallThreshold | SliceRegime::BoundaryLayers
        ));
        if r.regime == SliceRegime::Slice {
            assert_eq!(r.bound_holds, Some(true));
        }
        assert!(matches!(
            irr_connection_check(&tf(40, &[1, 1], 3)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn labeling_roundtrip_and_flip() {
        let f = tf(3, &[1, 2], 2);
        let lab = f.labeling().unwrap();
        for x in grid_points(2, 3).unwrap() {
            assert_eq!(lab.get(&x).unwrap(), f.eval(&x).unwrap());
        }
        let flipped = lab.flipped(&[1, 1]).unwrap();
        assert_ne!(flipped.get(&[1, 1]).unwrap(), lab.get(&[1, 1]).unwrap());
        assert_eq!(flipped.flipped(&[1, 1]).unwrap(), lab);
        assert!(lab.get(&[3, 0]).is_err());
    }
}
