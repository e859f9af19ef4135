//! Randomized property suites behind the `verify` subcommand. Every failing
//! trial carries a JSON reproduction of the instance in the same shape the
//! `--input` flag accepts, so a reported case can be re-run directly.

use crate::io;
use irrpoly_core::bounds::{self, BoundInputs};
use irrpoly_core::covering::{cover_polytope, cover_simplex, partition_box, Simplex};
use irrpoly_core::mat::{affine_dim, Mat};
use irrpoly_core::num::{
    big, binomial, decimal_trunc, dot_int, dot_rat, rat, rat_of, ratio, to_i64, Rat,
};
use irrpoly_core::polytope::{irreducible_points, HPolytope, Parallelepiped};
use irrpoly_core::threshold::{
    envelope_member, envelope_vertices, grid_points, has_separation_property, rationalize,
    sep_cone, teaching_set, ThresholdFn,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Cell budget for lattice scans inside the random suites.
const SCAN_BUDGET: usize = 400_000;
/// Densest lattice population a random box may have; larger draws are
/// resampled so a single trial stays cheap.
const MAX_BOX_POINTS: usize = 2_000;

pub struct Failure {
    pub case: Value,
    pub reason: String,
}

pub struct SuiteOutcome {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub passed: u64,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    pub fn failed(&self) -> u64 {
        self.failures.len() as u64
    }

    pub fn clean(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run<F>(suite: &str, seed: u64, trials: u64, mut trial: F) -> SuiteOutcome
where
    F: FnMut(&mut ChaCha8Rng, u64) -> (Value, Result<(), String>),
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for t in 0..trials {
        let (case, outcome) = trial(&mut rng, t);
        if let Err(reason) = outcome {
            failures.push(Failure { case, reason });
        }
    }
    SuiteOutcome {
        suite: suite.to_string(),
        trials,
        seed,
        passed: trials - failures.len() as u64,
        failures,
    }
}

fn dec6(x: &Rat) -> String {
    decimal_trunc(x, 6)
}

/// Machine-integer copy of a skew box for hot membership loops; dot products
/// run in i128 so they cannot overflow at the sizes the suites generate.
struct FastPiece {
    rows: Vec<Vec<i64>>,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl FastPiece {
    fn of(p: &Parallelepiped) -> Option<FastPiece> {
        let rows = p
            .a
            .iter()
            .map(|r| r.iter().map(to_i64).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let lo = p.lo.iter().map(to_i64).collect::<Option<Vec<_>>>()?;
        let hi = p.hi.iter().map(to_i64).collect::<Option<Vec<_>>>()?;
        Some(FastPiece { rows, lo, hi })
    }

    fn contains(&self, x: &[i64]) -> bool {
        self.rows
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(row, (lo, hi))| {
                let v: i128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                *lo as i128 <= v && v <= *hi as i128
            })
    }
}

/// Containment test that prefers the machine-integer copy.
fn piece_contains(fast: &Option<FastPiece>, body: &Parallelepiped, x: &[i64]) -> bool {
    match fast {
        Some(f) => f.contains(x),
        None => body.contains_int(x),
    }
}

// ---------------------------------------------------------------------------
// Instance generators
// ---------------------------------------------------------------------------

fn random_box(rng: &mut ChaCha8Rng, n: usize) -> (Parallelepiped, Vec<Vec<i64>>) {
    loop {
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| big(rng.gen_range(-10i64..=10))).collect())
            .collect();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for _ in 0..n {
            let l = rng.gen_range(-20i64..=20);
            let w = rng.gen_range(0i64..=60);
            lo.push(big(l));
            hi.push(big(l + w));
        }
        let Ok(bx) = Parallelepiped::new(rows, lo, hi) else {
            continue;
        };
        if let Ok(points) = bx.to_hpolytope().enumerate_lattice(SCAN_BUDGET) {
            if points.len() <= MAX_BOX_POINTS {
                return (bx, points);
            }
        }
    }
}

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Simplex {
    loop {
        let verts: Vec<Vec<Rat>> = (0..=n)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-8i64..=8))).collect())
            .collect();
        if let Ok(s) = Simplex::new(verts) {
            return s;
        }
    }
}

/// Bounded, nonempty, full-dimensional plane polytope with coefficient and
/// offset magnitudes at most 8.
fn random_poly2(rng: &mut ChaCha8Rng) -> (HPolytope, Vec<Vec<i64>>) {
    loop {
        let m = rng.gen_range(3usize..=6);
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for _ in 0..m {
            loop {
                let a = rng.gen_range(-8i64..=8);
                let b = rng.gen_range(-8i64..=8);
                if a != 0 || b != 0 {
                    rows.push(vec![big(a), big(b)]);
                    break;
                }
            }
            rhs.push(big(rng.gen_range(-8i64..=8)));
        }
        let Ok(p) = HPolytope::from_le(rows, rhs) else {
            continue;
        };
        if !matches!(p.is_bounded(), Ok(true)) || !matches!(p.is_empty(), Ok(false)) {
            continue;
        }
        let Ok(verts) = p.vertices() else { continue };
        if verts.is_empty() || affine_dim(&verts) != 2 {
            continue;
        }
        let Ok(points) = p.enumerate_lattice(SCAN_BUDGET) else {
            continue;
        };
        return (p, points);
    }
}

/// Threshold function on `{0..k−1}^2` whose inequality satisfies
/// `0 < a0 < a_j(k−1)` for both coefficients.
fn random_axis_fn(rng: &mut ChaCha8Rng, k_max: u64) -> ThresholdFn {
    let k = rng.gen_range(2u64..=k_max);
    let least = if k == 2 { 2i64 } else { 1i64 };
    let a: Vec<i64> = (0..2).map(|_| rng.gen_range(least..=9)).collect();
    let cap = a.iter().map(|v| v * (k as i64 - 1)).min().expect("two coefficients");
    let a0 = rng.gen_range(1..=cap - 1);
    ThresholdFn::new(k, a.into_iter().map(big).collect(), big(a0))
        .expect("coefficients sized for the grid")
}

fn random_rational_cut(rng: &mut ChaCha8Rng, k_max: u64) -> (Vec<Rat>, Rat, u64) {
    let k = rng.gen_range(2u64..=k_max);
    let a: Vec<Rat> = (0..2)
        .map(|_| ratio(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=9)))
        .collect();
    let a0 = ratio(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=9));
    (a, a0, k)
}

// ---------------------------------------------------------------------------
// Box partition suite
// ---------------------------------------------------------------------------

pub fn suite_box_partition(seed: u64, trials: u64) -> SuiteOutcome {
    run("box-partition", seed, trials, |rng, t| {
        let n = if t % 2 == 0 { 2 } else { 3 };
        let (bx, points) = random_box(rng, n);
        let case = io::box_to_value(&bx);
        let outcome = check_box_partition(&bx, &points);
        (case, outcome)
    })
}

fn check_box_partition(bx: &Parallelepiped, points: &[Vec<i64>]) -> Result<(), String> {
    let irr = irreducible_points(points);
    let cover = partition_box(bx).map_err(|e| format!("partition failed: {e}"))?;
    let fast: Vec<Option<FastPiece>> =
        cover.pieces.iter().map(|p| FastPiece::of(&p.body)).collect();
    for (i, piece) in cover.pieces.iter().enumerate() {
        let held = irr
            .iter()
            .filter(|x| piece_contains(&fast[i], &piece.body, x))
            .count();
        if held > 2 {
            return Err(format!(
                "piece {:?} holds {held} irreducible points of the box",
                piece.index
            ));
        }
    }
    for x in points {
        let covered = cover
            .pieces
            .iter()
            .enumerate()
            .any(|(i, piece)| piece_contains(&fast[i], &piece.body, x));
        if !covered {
            return Err(format!("lattice point {x:?} missed by every piece"));
        }
    }
    let bound = bounds::box_bound(&bx.widths()).map_err(|e| format!("width bound: {e}"))?;
    if bound < rat(irr.len() as i64) {
        return Err(format!(
            "irreducible count {} exceeds the width bound {}",
            irr.len(),
            dec6(&bound)
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Simplex cover suite
// ---------------------------------------------------------------------------

pub fn suite_cover(seed: u64, trials: u64) -> SuiteOutcome {
    run("cover", seed, trials, |rng, t| {
        let n = if t % 2 == 0 { 2 } else { 3 };
        let s = random_simplex(rng, n);
        let case = simplex_case(&s);
        let outcome = check_cover(&s);
        (case, outcome)
    })
}

/// Repro record for a simplex in the same `{"A", "b"}` shape the `cover`
/// command accepts, falling back to a vertex list if the inequality form
/// cannot be built.
fn simplex_case(s: &Simplex) -> Value {
    match s.facet_equations() {
        Ok(eqs) => {
            let a: Vec<Vec<Value>> = eqs
                .iter()
                .map(|(row, _)| row.iter().map(io::int_value).collect())
                .collect();
            let b: Vec<Value> = eqs.iter().map(|(_, a0)| io::int_value(a0)).collect();
            json!({"A": a, "b": b})
        }
        Err(_) => json!({
            "vertices": s
                .vertices()
                .iter()
                .map(|v| io::rats_to_strings(v))
                .collect::<Vec<_>>(),
        }),
    }
}

fn check_cover(s: &Simplex) -> Result<(), String> {
    let n = s.ambient();
    let pieces = cover_simplex(s).map_err(|e| format!("cover failed: {e}"))?;
    let cap = BigInt::from(n as u64 + 1) * binomial((n * n) as i64 - 2, n as i64 - 1);
    if BigInt::from(pieces.len()) > cap {
        return Err(format!("{} pieces exceed the cap {cap}", pieces.len()));
    }

    // Every corner of every piece stays inside the simplex.
    for piece in &pieces {
        let rows: Vec<Vec<Rat>> = piece
            .a
            .iter()
            .map(|r| r.iter().map(rat_of).collect())
            .collect();
        let frame = Mat::from_rows(rows).map_err(|e| format!("piece frame: {e}"))?;
        for mask in 0u32..(1 << n) {
            let rhs: Vec<Rat> = (0..n)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        rat_of(&piece.hi[i])
                    } else {
                        rat_of(&piece.lo[i])
                    }
                })
                .collect();
            let corner = frame
                .solve_cramer(&rhs)
                .map_err(|e| format!("corner solve: {e}"))?;
            if !s.contains(&corner).map_err(|e| format!("membership: {e}"))? {
                return Err(format!(
                    "piece corner ({}) escapes the simplex",
                    io::rats_to_strings(&corner).join(", ")
                ));
            }
        }
    }

    // Lattice points of every shrunken vertex simplex conv{(v_i + n·v_j)/(n+1)}
    // must land in some piece.
    let fast: Vec<Option<FastPiece>> = pieces.iter().map(FastPiece::of).collect();
    let verts = s.vertices();
    let scale = rat(n as i64 + 1);
    for i in 0..=n {
        let shrunk: Vec<Vec<Rat>> = (0..=n)
            .map(|j| {
                (0..n)
                    .map(|c| (&verts[i][c] + rat(n as i64) * &verts[j][c]) / &scale)
                    .collect()
            })
            .collect();
        let inner = Simplex::new(shrunk).map_err(|e| format!("shrunken simplex: {e}"))?;
        for x in lattice_of_simplex(&inner)? {
            let covered = pieces
                .iter()
                .enumerate()
                .any(|(p, piece)| piece_contains(&fast[p], piece, &x));
            if !covered {
                return Err(format!("shrunken lattice sample {x:?} uncovered"));
            }
        }
    }
    Ok(())
}

/// Lattice points of a full-dimensional simplex via a bounding-box scan
/// against its facet inequalities.
fn lattice_of_simplex(s: &Simplex) -> Result<Vec<Vec<i64>>, String> {
    let n = s.ambient();
    let eqs = s.facet_equations().map_err(|e| format!("facets: {e}"))?;
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for v in s.vertices() {
        for (c, val) in v.iter().enumerate() {
            let f = to_i64(&val.floor().to_integer()).ok_or("coordinate overflow")?;
            let g = to_i64(&val.ceil().to_integer()).ok_or("coordinate overflow")?;
            lo[c] = lo[c].min(f);
            hi[c] = hi[c].max(g);
        }
    }
    let narrow: Option<Vec<(Vec<i64>, i64)>> = eqs
        .iter()
        .map(|(a, a0)| {
            let ai = a.iter().map(to_i64).collect::<Option<Vec<_>>>()?;
            Some((ai, to_i64(a0)?))
        })
        .collect();
    let inside = |x: &[i64]| -> bool {
        match &narrow {
            Some(rows) => rows.iter().all(|(a, a0)| {
                let v: i128 = a.iter().zip(x).map(|(&p, &q)| p as i128 * q as i128).sum();
                v <= *a0 as i128
            }),
            None => {
                let xb: Vec<BigInt> = x.iter().map(|&v| big(v)).collect();
                eqs.iter().all(|(a, a0)| dot_int(a, &xb) <= *a0)
            }
        }
    };
    let mut out = Vec::new();
    let mut x = lo.clone();
    'scan: loop {
        if inside(&x) {
            out.push(x.clone());
        }
        for j in (0..n).rev() {
            if x[j] < hi[j] {
                x[j] += 1;
                for c in j + 1..n {
                    x[c] = lo[c];
                }
                continue 'scan;
            }
        }
        break;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Plane polytope cover suite
// ---------------------------------------------------------------------------

pub fn suite_polytope(seed: u64, trials: u64) -> SuiteOutcome {
    run("polytope", seed, trials, |rng, _| {
        let (p, points) = random_poly2(rng);
        let case = io::poly_to_value(&p);
        let outcome = check_polytope(&p, &points);
        (case, outcome)
    })
}

fn check_polytope(p: &HPolytope, points: &[Vec<i64>]) -> Result<(), String> {
    let covers = cover_polytope(p).map_err(|e| format!("cover failed: {e}"))?;
    let m = p.num_rows() as u64;
    let total: usize = covers.iter().map(|c| c.pieces.len()).sum();
    let cap = bounds::eta(2, m);
    if BigInt::from(total) > cap {
        return Err(format!("piece total {total} exceeds the facet-count cap {cap}"));
    }

    for x in points {
        let covered = covers
            .iter()
            .any(|c| c.pieces.iter().any(|b| b.contains_int(x)));
        if !covered {
            return Err(format!("lattice point {x:?} uncovered"));
        }
    }
    for c in &covers {
        for b in &c.pieces {
            let inner = b
                .to_hpolytope()
                .enumerate_lattice(SCAN_BUDGET)
                .map_err(|e| format!("piece scan: {e}"))?;
            for x in &inner {
                if !p.contains_int(x) {
                    return Err(format!("piece lattice point {x:?} falls outside"));
                }
            }
        }
    }

    let (rows, rhs) = io::system_rows(p);
    let inp = BoundInputs::for_system(&rows, &rhs).map_err(|e| format!("bound inputs: {e}"))?;
    let bound = bounds::polytope_bound(&inp).map_err(|e| format!("count bound: {e}"))?;
    let irr = irreducible_points(points);
    if bound < rat(irr.len() as i64) {
        return Err(format!(
            "irreducible count {} exceeds the count bound {}",
            irr.len(),
            dec6(&bound)
        ));
    }

    // Vertex coordinates over a common denominator stay within the
    // Hadamard-style size bounds.
    let verts = p.vertices().map_err(|e| format!("vertices: {e}"))?;
    let (qb, pb) =
        bounds::vertex_coord_bounds(2, &inp.alpha, &inp.beta).map_err(|e| e.to_string())?;
    for v in &verts {
        let mut q = BigInt::one();
        for c in v {
            q = q.lcm(c.denom());
        }
        if rat_of(&q) > qb {
            return Err(format!("vertex denominator {q} exceeds {}", dec6(&qb)));
        }
        for c in v {
            let num = (c * rat_of(&q)).to_integer();
            if rat_of(&num.abs()) > pb {
                return Err(format!("vertex numerator {num} exceeds {}", dec6(&pb)));
            }
        }
    }

    // Primitive facet equations of the triangulation simplexes stay within
    // their size bounds.
    let (a0b, ajb) =
        bounds::facet_coeff_bounds(2, &inp.alpha, &inp.beta).map_err(|e| e.to_string())?;
    for c in &covers {
        let eqs = c
            .simplex
            .facet_equations()
            .map_err(|e| format!("facets: {e}"))?;
        for (arow, a0) in &eqs {
            if rat_of(&a0.abs()) > a0b {
                return Err(format!("facet offset {a0} exceeds {}", dec6(&a0b)));
            }
            for coeff in arow {
                if rat_of(&coeff.abs()) > ajb {
                    return Err(format!("facet coefficient {coeff} exceeds {}", dec6(&ajb)));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Bound dominance suite
// ---------------------------------------------------------------------------

pub fn suite_bounds(seed: u64, trials: u64) -> SuiteOutcome {
    run("bounds", seed, trials, |rng, t| {
        if t % 2 == 0 {
            let n = if t % 4 == 0 { 2 } else { 3 };
            let (bx, points) = random_box(rng, n);
            let case = io::box_to_value(&bx);
            let outcome = check_box_dominance(&bx, &points);
            (case, outcome)
        } else {
            let (p, points) = random_poly2(rng);
            let case = io::poly_to_value(&p);
            let outcome = check_poly_dominance(&p, &points);
            (case, outcome)
        }
    })
}

fn check_box_dominance(bx: &Parallelepiped, points: &[Vec<i64>]) -> Result<(), String> {
    let irr = irreducible_points(points);
    let bound = bounds::box_bound(&bx.widths()).map_err(|e| e.to_string())?;
    let slack = bound - rat(irr.len() as i64);
    if slack < Rat::zero() {
        return Err(format!("negative slack {}", dec6(&slack)));
    }
    Ok(())
}

fn check_poly_dominance(p: &HPolytope, points: &[Vec<i64>]) -> Result<(), String> {
    let irr = irreducible_points(points);
    let (rows, rhs) = io::system_rows(p);
    let inp = BoundInputs::for_system(&rows, &rhs).map_err(|e| e.to_string())?;
    let bound = bounds::polytope_bound(&inp).map_err(|e| e.to_string())?;
    let slack = bound - rat(irr.len() as i64);
    if slack < Rat::zero() {
        return Err(format!("negative slack {}", dec6(&slack)));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Teaching suite
// ---------------------------------------------------------------------------

pub fn suite_teaching(seed: u64, trials: u64, k_max: u64) -> SuiteOutcome {
    run("teaching", seed, trials, |rng, _| {
        let f = random_axis_fn(rng, k_max);
        let case = io::threshold_to_value(&f);
        let outcome = check_teaching(&f);
        (case, outcome)
    })
}

fn check_teaching(f: &ThresholdFn) -> Result<(), String> {
    let ts = teaching_set(f).map_err(|e| format!("teaching set: {e}"))?;
    let cap = bounds::teaching_vertex_bound(2, f.k()).map_err(|e| e.to_string())?;
    for (class, t) in [(0u8, &ts.t0), (1u8, &ts.t1)] {
        if rat(t.len() as i64) > cap {
            return Err(format!(
                "class {class} teaching set has {} points, cap {}",
                t.len(),
                dec6(&cap)
            ));
        }
        match has_separation_property(t) {
            Ok(true) => {}
            Ok(false) => {
                return Err(format!(
                    "class {class} teaching set lacks the separation property"
                ))
            }
            Err(e) => return Err(format!("separation check: {e}")),
        }
    }

    let (v0, v1) = envelope_vertices(f).map_err(|e| format!("envelope vertices: {e}"))?;
    if v0 != ts.t0 || v1 != ts.t1 {
        return Err("envelope vertices disagree with the teaching set".into());
    }

    // Reflected points 2x−y of distinct same-class teaching points must leave
    // both envelopes.
    let (m0, m1) = f.classes().map_err(|e| e.to_string())?;
    let cone = sep_cone(f).map_err(|e| e.to_string())?;
    for t in [&ts.t0, &ts.t1] {
        for x in t {
            for y in t {
                if x == y {
                    continue;
                }
                let refl: Vec<Rat> =
                    x.iter().zip(y).map(|(&u, &v)| rat(2 * u - v)).collect();
                if envelope_member(&m0, &cone, 0, &refl).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "reflection of {x:?} over {y:?} stays in the lower envelope"
                    ));
                }
                if envelope_member(&m1, &cone, 1, &refl).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "reflection of {x:?} over {y:?} stays in the upper envelope"
                    ));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Rationalization suite
// ---------------------------------------------------------------------------

pub fn suite_rationalize(seed: u64, trials: u64, k_max: u64) -> SuiteOutcome {
    run("rationalize", seed, trials, |rng, _| {
        let (a, a0, k) = random_rational_cut(rng, k_max);
        let case = json!({
            "n": 2,
            "k": k,
            "a": io::rats_to_strings(&a),
            "a0": io::rat_to_string(&a0),
        });
        let outcome = check_rationalize(&a, &a0, k);
        (case, outcome)
    })
}

fn check_rationalize(a: &[Rat], a0: &Rat, k: u64) -> Result<(), String> {
    let (b, b0) = rationalize(a, a0, 2, k).map_err(|e| format!("rationalize: {e}"))?;
    let pts = grid_points(2, k).map_err(|e| e.to_string())?;
    for x in &pts {
        let xr: Vec<Rat> = x.iter().map(|&v| rat(v)).collect();
        let before = dot_rat(a, &xr) > *a0;
        let xb: Vec<BigInt> = x.iter().map(|&v| big(v)).collect();
        let after = dot_int(&b, &xb) > b0;
        if before != after {
            return Err(format!("dichotomy flips at {x:?}"));
        }
    }
    let (ab, bb) = bounds::grid_alpha_beta(2, k).map_err(|e| e.to_string())?;
    for c in &b {
        if rat_of(&c.abs()) > ab {
            return Err(format!("coefficient {c} exceeds the alpha bound {}", dec6(&ab)));
        }
    }
    if rat_of(&b0.abs()) > bb {
        return Err(format!("offset {b0} exceeds the beta bound {}", dec6(&bb)));
    }
    Ok(())
}
