//! Closed-form upper bounds on irreducible-point counts and on the sizes of
//! the objects the covering constructions produce.
//!
//! Every returned value is exact when the expression is rational and a
//! certified rational upper bound otherwise (logarithms and square roots are
//! rounded up), so `bound >= truth` holds unconditionally and dominance
//! checks against brute-force counts are sound.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::num::{
    binomial, factorial, log2_upper, rat, rat_of, ratio, sqrt_pow_upper, Rat,
};

/// Triangulation size factor: a bounded polytope with `m` facets triangulates
/// into at most `n! · xi(n, m)` simplexes.
pub fn xi(n: u64, m: u64) -> BigInt {
    let n = n as i64;
    let m = m as i64;
    binomial(m - (n - 1) / 2 - 1, n / 2) + binomial(m - n / 2 - 1, (n - 1) / 2)
}

/// Cover size: a bounded polytope with `m` facets is covered by at most
/// `eta(n, m)` skew boxes.
pub fn eta(n: u64, m: u64) -> BigInt {
    factorial(n) * xi(n, m) * (n as i64 + 1) * binomial(n as i64 * n as i64 - 2, n as i64 - 1)
}

/// Irreducible-point bound for a skew box from its row widths
/// (`widths[i] = hi_i − lo_i`, all nonnegative): twice the product of
/// `3 + 2·log2(1 + w/3)` over all but the last width.
pub fn box_bound(widths: &[BigInt]) -> Result<Rat> {
    if widths.is_empty() {
        return Err(Error::Invalid("box bound needs at least one width".into()));
    }
    if widths.iter().any(|w| w.is_negative()) {
        return Err(Error::Invalid("negative box width".into()));
    }
    let mut out = rat(2);
    for w in &widths[..widths.len() - 1] {
        let arg = Rat::one() + rat_of(w) / rat(3);
        out *= rat(3) + rat(2) * log2_upper(&arg)?;
    }
    Ok(out)
}

/// Exact nonnegative rational power.
fn rat_pow(base: &Rat, exp: u64) -> Rat {
    let e = u32::try_from(exp).expect("exponent fits u32");
    Rat::new(base.numer().pow(e), base.denom().pow(e))
}

/// Inputs to the closed-form bounds: dimension `n`, inequality count `m`,
/// and the coefficient magnitudes `alpha` (matrix) and `beta` (right-hand
/// side) of the defining system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInputs {
    pub n: u64,
    pub m: u64,
    pub alpha: Rat,
    pub beta: Rat,
    pub k: Option<u64>,
}

impl BoundInputs {
    pub fn new(n: u64, m: u64, alpha: Rat, beta: Rat, k: Option<u64>) -> Result<Self> {
        if n < 1 || m < 1 {
            return Err(Error::Invalid("bound inputs need n >= 1 and m >= 1".into()));
        }
        if alpha.is_negative() || beta.is_negative() {
            return Err(Error::Invalid("coefficient magnitudes must be nonnegative".into()));
        }
        if let Some(k) = k {
            if k < 2 {
                return Err(Error::Invalid("grid side must be at least 2".into()));
            }
        }
        Ok(BoundInputs { n, m, alpha, beta, k })
    }

    /// Reads `alpha` and `beta` off an integer system `A·x <= b`, clamping
    /// both to at least one so the bound formulas stay monotone.
    pub fn for_system(rows: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Invalid("bound inputs need a nonempty system".into()));
        }
        let mut alpha = BigInt::one();
        for row in rows {
            for c in row {
                if c.magnitude() > alpha.magnitude() {
                    alpha = c.abs();
                }
            }
        }
        let mut beta = BigInt::one();
        for b in rhs {
            if b.magnitude() > beta.magnitude() {
                beta = b.abs();
            }
        }
        BoundInputs::new(
            rows[0].len() as u64,
            rows.len() as u64,
            rat_of(&alpha),
            rat_of(&beta),
            None,
        )
    }

    pub fn gamma(&self) -> Rat {
        if self.alpha >= self.beta {
            self.alpha.clone()
        } else {
            self.beta.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub bound_name: String,
    pub inputs: BoundInputs,
    pub bound_value: Rat,
    pub actual_count: Option<u64>,
}

impl BoundReport {
    pub fn slack(&self) -> Option<Rat> {
        self.actual_count
            .map(|c| &self.bound_value - rat(c as i64))
    }
}

/// Irreducible-point bound for a bounded polytope `{A·x <= b}` in terms of
/// its dimension, facet count, and coefficient magnitudes:
/// `2·n!·xi·(n+1)·C(n²−2, n−1)·(3 + 2·log2(1 + (2/3)·alpha^{n²}·beta^n·(√n)^{n²+2n+2}))^{n−1}`.
pub fn polytope_bound(inp: &BoundInputs) -> Result<Rat> {
    let n = inp.n;
    if n < 2 {
        return Err(Error::Invalid("polytope bound needs dimension at least two".into()));
    }
    if inp.alpha < Rat::one() || inp.beta < Rat::one() {
        return Err(Error::Invalid("polytope bound needs alpha, beta >= 1".into()));
    }
    let count = rat(2)
        * rat_of(&factorial(n))
        * rat_of(&xi(n, inp.m))
        * rat(n as i64 + 1)
        * rat_of(&binomial((n * n) as i64 - 2, n as i64 - 1));
    let inner = Rat::one()
        + ratio(2, 3)
            * rat_pow(&inp.alpha, n * n)
            * rat_pow(&inp.beta, n)
            * sqrt_pow_upper(n, (n * n + 2 * n + 2) as u32)?;
    let factor = rat(3) + rat(2) * log2_upper(&inner)?;
    Ok(count * rat_pow(&factor, n - 1))
}

/// Width bound for cover pieces of such a polytope:
/// `2·alpha^{n²}·beta^n·(√n)^{n²+2n+2}`.
pub fn piece_width_bound(n: u64, alpha: &Rat, beta: &Rat) -> Result<Rat> {
    Ok(rat(2)
        * rat_pow(alpha, n * n)
        * rat_pow(beta, n)
        * sqrt_pow_upper(n, (n * n + 2 * n + 2) as u32)?)
}

/// Bounds on vertex coordinates written over a common denominator `q`:
/// `|q| <= alpha^n·(√n)^n` and `|p_j| <= alpha^{n−1}·beta·(√n)^n`.
pub fn vertex_coord_bounds(n: u64, alpha: &Rat, beta: &Rat) -> Result<(Rat, Rat)> {
    let root = sqrt_pow_upper(n, n as u32)?;
    Ok((
        rat_pow(alpha, n) * &root,
        rat_pow(alpha, n - 1) * beta * &root,
    ))
}

/// Bounds on primitive facet equations `a·x = a_0` of triangulation
/// simplexes: `|a_0| <= alpha^{n(n−1)}·beta^n·(√n)^{n²+n}` and
/// `|a_j| <= alpha^{n²−n+1}·beta^{n−1}·(√n)^{n²+n}`.
pub fn facet_coeff_bounds(n: u64, alpha: &Rat, beta: &Rat) -> Result<(Rat, Rat)> {
    let root = sqrt_pow_upper(n, (n * n + n) as u32)?;
    Ok((
        rat_pow(alpha, n * (n - 1)) * rat_pow(beta, n) * &root,
        rat_pow(alpha, n * n - n + 1) * rat_pow(beta, n - 1) * &root,
    ))
}

/// Coefficient-magnitude bounds for integer threshold separators on the grid
/// `{0..k−1}^n`: `alpha <= (k−1)^{n−1}·(n+1)^{(n+1)/2}/2^n` and
/// `beta <= (k−1)^n·(n+2)^{(n+2)/2}/2^{n+1}`.
pub fn grid_alpha_beta(n: u64, k: u64) -> Result<(Rat, Rat)> {
    if k < 2 {
        return Err(Error::Invalid("grid side must be at least 2".into()));
    }
    let km1 = rat(k as i64 - 1);
    let alpha = rat_pow(&km1, n - 1) * sqrt_pow_upper(n + 1, (n + 1) as u32)?
        / rat_pow(&rat(2), n);
    let beta = rat_pow(&km1, n) * sqrt_pow_upper(n + 2, (n + 2) as u32)?
        / rat_pow(&rat(2), n + 1);
    Ok((alpha, beta))
}

/// Upper bound on the per-class size of a minimal teaching set of a threshold
/// function with all-positive slack margins on the grid `{0..k−1}^n`:
/// `n·(1+log2 n)·(1+log2(k+1))^{n−2}`, with certified upper log values.
/// Exact at `n = 2`, where it collapses to the constant 4.
pub fn teaching_vertex_bound(n: u64, k: u64) -> Result<Rat> {
    if n < 2 {
        return Err(Error::Invalid("teaching vertex bound needs n >= 2".into()));
    }
    if k < 2 {
        return Err(Error::Invalid("grid side must be at least 2".into()));
    }
    let ln = log2_upper(&rat(n as i64))?;
    let lk = log2_upper(&rat(k as i64 + 1))?;
    Ok(rat(n as i64) * (Rat::one() + ln) * rat_pow(&(Rat::one() + lk), n - 2))
}

/// Irreducible-point bound for a halfspace section of the grid `{0..k−1}^n`
/// cut by `m_prime` inequalities: [`polytope_bound`] at `m = m_prime + 2n`
/// with the grid coefficient bounds substituted (clamped to at least one).
pub fn grid_bound(n: u64, k: u64, m_prime: u64) -> Result<Rat> {
    let (alpha, beta) = grid_alpha_beta(n, k)?;
    let one = Rat::one();
    let inp = BoundInputs::new(
        n,
        m_prime + 2 * n,
        if alpha > one { alpha } else { one.clone() },
        if beta > one { beta } else { one.clone() },
        Some(k),
    )?;
    polytope_bound(&inp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::slab_exponent;
    use crate::num::big;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn bigs(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| big(v)).collect()
    }

    #[test]
    fn xi_small_values() {
        assert_eq!(xi(2, 3), big(3));
        assert_eq!(xi(2, 4), big(4));
        assert_eq!(xi(3, 4), big(4));
        assert_eq!(xi(2, 10), big(10));
    }

    #[test]
    fn eta_small_values() {
        assert_eq!(eta(2, 3), big(36));
        assert_eq!(eta(2, 4), big(48));
        assert_eq!(eta(3, 4), big(2016));
    }

    #[test]
    fn eta_dominates_observed_piece_counts() {
        // Triangle: one simplex, 6 pieces; quadrilateral: two, 12 pieces.
        assert!(eta(2, 3) >= big(6));
        assert!(eta(2, 4) >= big(12));
    }

    #[test]
    fn box_bound_certified_bracket() {
        // Widths (19, 18): only the first contributes.
        // 2·(3 + 2·log2(22/3)) ≈ 17.4978.
        let v = box_bound(&bigs(&[19, 18])).unwrap();
        assert!(v > ratio(174_977, 10_000), "{v}");
        assert!(v < ratio(174_979, 10_000), "{v}");
        assert!(v >= rat(8), "must dominate the actual count 8");
    }

    #[test]
    fn box_bound_exact_cases() {
        assert_eq!(box_bound(&bigs(&[0, 7])).unwrap(), rat(6));
        // width 3: log2(2) = 1 exactly.
        assert_eq!(box_bound(&bigs(&[3, 5])).unwrap(), rat(10));
        // One-dimensional: empty product.
        assert_eq!(box_bound(&bigs(&[5])).unwrap(), rat(2));
        assert_eq!(box_bound(&bigs(&[0])).unwrap(), rat(2));
    }

    #[test]
    fn box_bound_rejects_negative_width() {
        assert!(box_bound(&bigs(&[-1, 2])).is_err());
        assert!(box_bound(&[]).is_err());
    }

    #[test]
    fn polytope_bound_triangle_bracket() {
        // n=2, m=3, alpha=beta=2:
        // 2·36·(3 + 2·log2(4099/3)) ≈ 1715.93.
        let inp = BoundInputs::new(2, 3, rat(2), rat(2), None).unwrap();
        let v = polytope_bound(&inp).unwrap();
        assert!(v > ratio(17_159, 10), "{v}");
        assert!(v < ratio(17_160, 10), "{v}");
        assert!(v >= rat(4), "must dominate the triangle's 4 irreducibles");
    }

    #[test]
    fn polytope_bound_monotone_in_alpha_beta() {
        let base = polytope_bound(&BoundInputs::new(2, 4, rat(2), rat(3), None).unwrap()).unwrap();
        let watt = polytope_bound(&BoundInputs::new(2, 4, rat(5), rat(3), None).unwrap()).unwrap();
        let bigger = polytope_bound(&BoundInputs::new(2, 4, rat(5), rat(7), None).unwrap()).unwrap();
        assert!(base <= watt);
        assert!(watt <= bigger);
    }

    #[test]
    fn polytope_bound_preconditions() {
        assert!(polytope_bound(&BoundInputs::new(1, 3, rat(2), rat(2), None).unwrap()).is_err());
        assert!(polytope_bound(&BoundInputs::new(2, 3, ratio(1, 2), rat(2), None).unwrap()).is_err());
    }

    #[test]
    fn grid_alpha_beta_values() {
        // n=2, k=20: alpha = 19·3^{3/2}/4 ≈ 24.68, beta = 361·16/8 = 722.
        let (a, b) = grid_alpha_beta(2, 20).unwrap();
        assert!(a > ratio(2_468, 100), "{a}");
        assert!(a < ratio(2_469, 100), "{a}");
        assert_eq!(b, rat(722), "even power is exact");

        let (a2, _) = grid_alpha_beta(2, 2).unwrap();
        assert!(a2 > ratio(1_299, 1_000), "{a2}");
        assert!(a2 < ratio(1_300, 1_000), "{a2}");
        assert!(grid_alpha_beta(2, 1).is_err());
    }

    #[test]
    fn grid_bound_matches_direct_substitution() {
        let (alpha, beta) = grid_alpha_beta(2, 20).unwrap();
        let inp = BoundInputs::new(2, 1 + 4, alpha, beta, Some(20)).unwrap();
        assert_eq!(grid_bound(2, 20, 1).unwrap(), polytope_bound(&inp).unwrap());
        // Small k clamps alpha up to one.
        let v = grid_bound(2, 2, 1).unwrap();
        assert!(v > Rat::zero());
    }

    #[test]
    fn teaching_vertex_bound_collapses_to_four_in_the_plane() {
        // log2(2) is exact, the exponent n-2 vanishes: 2·(1+1)·(...)^0 = 4.
        for k in [2u64, 5, 12, 100] {
            assert_eq!(teaching_vertex_bound(2, k).unwrap(), rat(4));
        }
        let v = teaching_vertex_bound(3, 4).unwrap();
        assert!(v > rat(25) && v < rat(27), "got {v}");
        assert!(teaching_vertex_bound(1, 5).is_err());
        assert!(teaching_vertex_bound(2, 1).is_err());
    }

    #[test]
    fn structural_bound_evaluators_exact_at_n2() {
        let two = rat(2);
        assert_eq!(piece_width_bound(2, &two, &two).unwrap(), rat(4096));
        let (q, p) = vertex_coord_bounds(2, &two, &two).unwrap();
        assert_eq!(q, rat(8));
        assert_eq!(p, rat(8));
        let (a0, aj) = facet_coeff_bounds(2, &two, &two).unwrap();
        assert_eq!(a0, rat(128));
        assert_eq!(aj, rat(128));
    }

    #[test]
    fn report_slack() {
        let inputs = BoundInputs::new(2, 3, rat(2), rat(2), None).unwrap();
        let report = BoundReport {
            bound_name: "triangle".into(),
            inputs,
            bound_value: rat(10),
            actual_count: Some(4),
        };
        assert_eq!(report.slack(), Some(rat(6)));
    }

    #[test]
    fn inputs_from_system_clamp_to_one() {
        let inp = BoundInputs::for_system(
            &[bigs(&[0, 0]), bigs(&[0, 0])],
            &bigs(&[0, 0]),
        )
        .unwrap();
        assert_eq!(inp.alpha, rat(1));
        assert_eq!(inp.beta, rat(1));
        let inp2 = BoundInputs::for_system(&[bigs(&[3, -7])], &bigs(&[-9])).unwrap();
        assert_eq!(inp2.alpha, rat(7));
        assert_eq!(inp2.beta, rat(9));
        assert_eq!(inp2.gamma(), rat(9));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// The slab exponent is the unique s with 3·2^{s−1}−3 < w <= 3·2^s−3.
        #[test]
        fn slab_exponent_brackets(w in 0i64..=10_000) {
            let s = slab_exponent(&big(w));
            let upper = big(3) * (BigInt::one() << s) - 3;
            prop_assert!(big(w) <= upper);
            if s > 0 {
                let lower = big(3) * (BigInt::one() << (s - 1)) - 3;
                prop_assert!(big(w) > lower);
            }
        }

        /// box_bound dominates twice the slab piece count, which in turn
        /// caps the irreducible count.
        #[test]
        fn box_bound_dominates_piece_count(w1 in 0i64..=300, w2 in 0i64..=300) {
            let widths = bigs(&[w1, w2]);
            let bound = box_bound(&widths).unwrap();
            let pieces = 2 * slab_exponent(&big(w1)) + 1;
            prop_assert!(bound >= rat(2 * pieces as i64), "w={w1}: {bound} < 2·{pieces}");
        }
    }
}
