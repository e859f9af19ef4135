//! Exact linear feasibility over the rationals.
//!
//! [`lp_feasible`] decides a conjunction of linear constraints and returns a
//! rational witness when one exists. Two backends sit behind it:
//!
//! * Fourier–Motzkin elimination with native strict-inequality tracking, used
//!   for systems in few variables (and for anything strict). Rows are kept
//!   canonical (primitive integer coefficients) and dominated rows are pruned
//!   after every elimination step, which keeps the combinatorial growth tame
//!   on the structured systems that arise here.
//! * An exact phase-I simplex (Bland's rule, so termination is guaranteed)
//!   for weak systems in many variables — convex-combination and conic
//!   membership queries routinely carry hundreds of variables, far outside
//!   the elimination method's comfort zone.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{clear_denominators, make_primitive, rat_of, Rat};

/// Row-count cap for the elimination backend; exceeding it is a loud error
/// rather than a silent hang.
const FM_ROW_CAP: usize = 200_000;
/// Variable-count threshold above which weak systems go to the simplex.
const FM_VAR_LIMIT: usize = 8;
/// Strict systems have no simplex fallback; refuse huge ones.
const STRICT_VAR_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Lt,
    Eq,
}

/// One linear constraint `coeffs · x REL rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Le,
            rhs,
        }
    }

    pub fn lt(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Lt,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Eq,
            rhs,
        }
    }

    /// `coeffs · x >= rhs`, stored negated.
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs: coeffs.into_iter().map(|c| -c).collect(),
            rel: Rel::Le,
            rhs: -rhs,
        }
    }

    /// `coeffs · x > rhs`, stored negated.
    pub fn gt(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs: coeffs.into_iter().map(|c| -c).collect(),
            rel: Rel::Lt,
            rhs: -rhs,
        }
    }

    pub fn le_int(coeffs: &[BigInt], rhs: &BigInt) -> Self {
        Constraint::le(coeffs.iter().map(rat_of).collect(), rat_of(rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rat>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rat]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides the conjunction of `cons` over `R^n` exactly. All constraint rows
/// must share one width; the witness has that width.
pub fn lp_feasible(cons: &[Constraint]) -> Result<Feasibility> {
    let n = cons.first().map_or(0, |c| c.coeffs.len());
    for c in cons {
        if c.coeffs.len() != n {
            return Err(Error::DimMismatch {
                expected: n,
                got: c.coeffs.len(),
            });
        }
    }
    let any_strict = cons.iter().any(|c| c.rel == Rel::Lt);
    if any_strict {
        if n > STRICT_VAR_LIMIT {
            return Err(Error::Capacity {
                what: "strict system variables",
                limit: STRICT_VAR_LIMIT,
            });
        }
        return fm_feasible(cons, n);
    }
    if n <= FM_VAR_LIMIT {
        fm_feasible(cons, n)
    } else {
        simplex_feasible(cons, n)
    }
}

/// Is `target` a nonnegative combination of `cols`? Returns the coefficients.
///
/// Convexity (coefficients summing to one) is encoded by the caller appending
/// a row of ones to the columns and the target.
pub fn nonneg_combination(cols: &[Vec<Rat>], target: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if cols.is_empty() {
        return Ok(if target.iter().all(Rat::is_zero) {
            Some(Vec::new())
        } else {
            None
        });
    }
    let dim = target.len();
    for col in cols {
        if col.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: col.len(),
            });
        }
    }
    let mut cons = Vec::with_capacity(dim + cols.len());
    for i in 0..dim {
        let row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
        cons.push(Constraint::eq(row, target[i].clone()));
    }
    for j in 0..cols.len() {
        let mut row = vec![Rat::zero(); cols.len()];
        row[j] = -Rat::one();
        cons.push(Constraint::le(row, Rat::zero()));
    }
    match lp_feasible(&cons)? {
        Feasibility::Feasible(w) => Ok(Some(w)),
        Feasibility::Infeasible => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin backend
// ---------------------------------------------------------------------------

/// Canonical row `coeffs · x (≤ | <) rhs` with primitive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Row {
    coeffs: Vec<BigInt>,
    strict: bool,
    rhs: Rat,
}

enum Normalized {
    Row(Row),
    TrueConst,
    FalseConst,
}

fn normalize_row(coeffs: &[Rat], strict: bool, rhs: &Rat) -> Normalized {
    if coeffs.iter().all(Rat::is_zero) {
        let sat = if strict {
            rhs > &Rat::zero()
        } else {
            rhs >= &Rat::zero()
        };
        return if sat {
            Normalized::TrueConst
        } else {
            Normalized::FalseConst
        };
    }
    let (mut ints, lambda) = clear_denominators(coeffs);
    let g = make_primitive(&mut ints);
    // coeffs scaled by λ/g, so rhs scales the same way.
    let scaled_rhs = rhs * Rat::new(lambda, g);
    Normalized::Row(Row {
        coeffs: ints,
        strict,
        rhs: scaled_rhs,
    })
}

/// Dedups rows by coefficient vector, keeping the tightest right-hand side.
/// Returns `None` when a contradictory constant row appeared.
fn insert_row(map: &mut BTreeMap<Vec<BigInt>, (Rat, bool)>, row: Row) {
    match map.get_mut(&row.coeffs) {
        None => {
            map.insert(row.coeffs, (row.rhs, row.strict));
        }
        Some(entry) => {
            let tighter =
                row.rhs < entry.0 || (row.rhs == entry.0 && row.strict && !entry.1);
            if tighter {
                *entry = (row.rhs, row.strict);
            }
        }
    }
}

fn rows_from_map(map: BTreeMap<Vec<BigInt>, (Rat, bool)>) -> Vec<Row> {
    map.into_iter()
        .map(|(coeffs, (rhs, strict))| Row {
            coeffs,
            strict,
            rhs,
        })
        .collect()
}

fn fm_feasible(cons: &[Constraint], nvars: usize) -> Result<Feasibility> {
    let mut map = BTreeMap::new();
    for c in cons {
        let split: &[(bool, bool)] = match c.rel {
            Rel::Le => &[(false, false)],
            Rel::Lt => &[(true, false)],
            Rel::Eq => &[(false, false), (false, true)],
        };
        for &(strict, negate) in split {
            let (coeffs, rhs);
            if negate {
                coeffs = c.coeffs.iter().map(|v| -v).collect::<Vec<_>>();
                rhs = -c.rhs.clone();
            } else {
                coeffs = c.coeffs.clone();
                rhs = c.rhs.clone();
            }
            match normalize_row(&coeffs, strict, &rhs) {
                Normalized::Row(r) => insert_row(&mut map, r),
                Normalized::TrueConst => {}
                Normalized::FalseConst => return Ok(Feasibility::Infeasible),
            }
        }
    }
    let mut rows = rows_from_map(map);
    let mut remaining: Vec<usize> = (0..nvars).collect();
    let mut stack: Vec<(usize, Vec<Row>)> = Vec::new();

    while !remaining.is_empty() {
        // Cheapest variable first: fewest lower×upper combinations.
        let (pick_pos, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                pos * neg
            })
            .expect("nonempty");
        remaining.swap_remove(pick_pos);

        let (with_v, without): (Vec<Row>, Vec<Row>) =
            rows.into_iter().partition(|r| !r.coeffs[v].is_zero());
        let mut map = BTreeMap::new();
        for r in without {
            insert_row(&mut map, r);
        }
        let pos: Vec<&Row> = with_v.iter().filter(|r| r.coeffs[v].is_positive()).collect();
        let neg: Vec<&Row> = with_v.iter().filter(|r| r.coeffs[v].is_negative()).collect();
        for p in &pos {
            for q in &neg {
                // p: a·x + αv ≤ r (α>0); q: b·x − βv ≤ s (β>0).
                // β·p + α·q eliminates v.
                let alpha = &p.coeffs[v];
                let beta = -&q.coeffs[v];
                let coeffs: Vec<Rat> = (0..nvars)
                    .map(|j| rat_of(&(&p.coeffs[j] * &beta + &q.coeffs[j] * alpha)))
                    .collect();
                let rhs = &p.rhs * rat_of(&beta) + &q.rhs * rat_of(alpha);
                match normalize_row(&coeffs, p.strict || q.strict, &rhs) {
                    Normalized::Row(r) => insert_row(&mut map, r),
                    Normalized::TrueConst => {}
                    Normalized::FalseConst => return Ok(Feasibility::Infeasible),
                }
            }
        }
        stack.push((v, with_v));
        rows = rows_from_map(map);
        if rows.len() > FM_ROW_CAP {
            return Err(Error::Capacity {
                what: "elimination rows",
                limit: FM_ROW_CAP,
            });
        }
    }
    debug_assert!(rows.is_empty(), "non-constant rows with no variables left");

    // Feasible: rebuild a witness bottom-up.
    let mut x = vec![Rat::zero(); nvars];
    for (v, vrows) in stack.iter().rev() {
        let mut lo: Option<(Rat, bool)> = None;
        let mut hi: Option<(Rat, bool)> = None;
        for r in vrows {
            let cv = rat_of(&r.coeffs[*v]);
            let mut rest = Rat::zero();
            for (j, c) in r.coeffs.iter().enumerate() {
                if j != *v && !c.is_zero() {
                    rest += rat_of(c) * &x[j];
                }
            }
            let bound = (&r.rhs - rest) / &cv;
            if cv.is_positive() {
                // v ≤ bound (or <)
                let tighter = match &hi {
                    None => true,
                    Some((b, s)) => bound < *b || (bound == *b && r.strict && !s),
                };
                if tighter {
                    hi = Some((bound, r.strict));
                }
            } else {
                let tighter = match &lo {
                    None => true,
                    Some((b, s)) => bound > *b || (bound == *b && r.strict && !s),
                };
                if tighter {
                    lo = Some((bound, r.strict));
                }
            }
        }
        x[*v] = match (lo, hi) {
            (None, None) => Rat::zero(),
            (Some((l, strict)), None) => {
                if strict {
                    l + Rat::one()
                } else {
                    l
                }
            }
            (None, Some((h, strict))) => {
                if strict {
                    h - Rat::one()
                } else {
                    h
                }
            }
            (Some((l, ls)), Some((h, hs))) => {
                if l < h {
                    (&l + &h) / crate::num::rat(2)
                } else {
                    debug_assert!(l == h && !ls && !hs, "inconsistent interval survived");
                    l
                }
            }
        };
    }
    Ok(Feasibility::Feasible(x))
}

// ---------------------------------------------------------------------------
// Simplex backend (weak constraints only)
// ---------------------------------------------------------------------------

fn simplex_feasible(cons: &[Constraint], nvars: usize) -> Result<Feasibility> {
    // Presolve: a weak row with a single negative coefficient and zero rhs is
    // a sign restriction, not a real row.
    let mut nonneg = vec![false; nvars];
    let mut rows: Vec<&Constraint> = Vec::new();
    for c in cons {
        if c.rel == Rel::Le && c.rhs.is_zero() {
            let nz: Vec<usize> = (0..nvars).filter(|&j| !c.coeffs[j].is_zero()).collect();
            if nz.len() == 1 && c.coeffs[nz[0]].is_negative() {
                nonneg[nz[0]] = true;
                continue;
            }
        }
        rows.push(c);
    }
    // Column layout: one column per nonnegative variable, a (u, v) pair per
    // free variable, then one slack per inequality row.
    let mut col_of_var: Vec<(usize, Option<usize>)> = Vec::with_capacity(nvars);
    let mut ncols = 0usize;
    for j in 0..nvars {
        if nonneg[j] {
            col_of_var.push((ncols, None));
            ncols += 1;
        } else {
            col_of_var.push((ncols, Some(ncols + 1)));
            ncols += 2;
        }
    }
    let slack_base = ncols;
    let n_slacks = rows.iter().filter(|c| c.rel == Rel::Le).count();
    ncols += n_slacks;

    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
    let mut b: Vec<Rat> = Vec::with_capacity(rows.len());
    let mut slack = 0usize;
    for c in &rows {
        let mut row = vec![Rat::zero(); ncols];
        for j in 0..nvars {
            if c.coeffs[j].is_zero() {
                continue;
            }
            let (u, v) = col_of_var[j];
            row[u] = c.coeffs[j].clone();
            if let Some(v) = v {
                row[v] = -c.coeffs[j].clone();
            }
        }
        if c.rel == Rel::Le {
            row[slack_base + slack] = Rat::one();
            slack += 1;
        }
        a.push(row);
        b.push(c.rhs.clone());
    }
    match phase_one(&mut a, &mut b) {
        None => Ok(Feasibility::Infeasible),
        Some(cols) => {
            let mut x = vec![Rat::zero(); nvars];
            for j in 0..nvars {
                let (u, v) = col_of_var[j];
                x[j] = cols[u].clone();
                if let Some(v) = v {
                    x[j] -= &cols[v];
                }
            }
            Ok(Feasibility::Feasible(x))
        }
    }
}

/// Phase-I simplex for `A·y = b, y >= 0`: returns a solution vector over the
/// structural columns, or `None` when infeasible. Bland's rule throughout.
pub(crate) fn phase_one(a: &mut Vec<Vec<Rat>>, b: &mut Vec<Rat>) -> Option<Vec<Rat>> {
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    for i in 0..m {
        if b[i].is_negative() {
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
        }
    }
    // Basis starts as the implicit artificial columns ncols..ncols+m.
    let mut basis: Vec<usize> = (ncols..ncols + m).collect();
    loop {
        // Reduced cost of structural column j: sum of tableau entries over
        // rows whose basic variable is artificial.
        let mut entering = None;
        'cols: for j in 0..ncols {
            let mut red = Rat::zero();
            for i in 0..m {
                if basis[i] >= ncols {
                    red += &a[i][j];
                }
            }
            if red.is_positive() {
                entering = Some(j);
                break 'cols;
            }
        }
        let Some(e) = entering else {
            // Optimal. Feasible iff every artificial sits at zero.
            let w: Rat = (0..m)
                .filter(|&i| basis[i] >= ncols)
                .map(|i| b[i].clone())
                .sum();
            if !w.is_zero() {
                return None;
            }
            let mut x = vec![Rat::zero(); ncols];
            for i in 0..m {
                if basis[i] < ncols {
                    x[basis[i]] = b[i].clone();
                }
            }
            return Some(x);
        };
        // Ratio test with Bland tie-breaking on the leaving basic variable.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if a[i][e].is_positive() {
                let ratio = &b[i] / &a[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((l, _)) = leave else {
            // Unbounded phase-I objective cannot happen (bounded below by 0
            // and decreasing); treat defensively as infeasible.
            return None;
        };
        // Pivot on (l, e).
        let piv = a[l][e].clone();
        for v in a[l].iter_mut() {
            *v = &*v / &piv;
        }
        b[l] = &b[l] / &piv;
        for i in 0..m {
            if i != l && !a[i][e].is_zero() {
                let f = a[i][e].clone();
                for j in 0..ncols {
                    let sub = &f * &a[l][j];
                    a[i][j] = &a[i][j] - sub;
                }
                let sub = &f * &b[l];
                b[i] = &b[i] - sub;
            }
        }
        basis[l] = e;
    }
}

#[cfg(test)]
pub(crate) fn fm_feasible_for_tests(cons: &[Constraint], nvars: usize) -> Result<Feasibility> {
    fm_feasible(cons, nvars)
}

#[cfg(test)]
pub(crate) fn simplex_feasible_for_tests(cons: &[Constraint], nvars: usize) -> Result<Feasibility> {
    simplex_feasible(cons, nvars)
}
