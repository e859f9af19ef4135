//! Rational scalars and certified approximations.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator (the backing type maintains both invariants after
//! every operation). Irrational quantities used by the counting bounds are
//! never floated: [`log2_upper`] and [`sqrt_upper`] return rational upper
//! bounds certified by integer arithmetic, with relative error below `2⁻⁴⁰`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Fractional bits extracted by `log2_upper`.
const LOG2_FRAC_BITS: usize = 48;
/// Guard bits for the fixed-point residual in `log2_upper`.
const LOG2_GUARD_BITS: usize = 160;
/// Scale exponent for `sqrt_upper`: the result is within relative `2⁻⁶⁴`.
const SQRT_SCALE_BITS: usize = 64;

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(big(v))
}

/// `p/q` as a rational; panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(big(p), big(q))
}

pub fn rat_of(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn dot_int(a: &[BigInt], x: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), x.len());
    let mut acc = BigInt::zero();
    for (ai, xi) in a.iter().zip(x) {
        acc += ai * xi;
    }
    acc
}

pub fn dot_rat(a: &[Rat], x: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), x.len());
    let mut acc = Rat::zero();
    for (ai, xi) in a.iter().zip(x) {
        acc += ai * xi;
    }
    acc
}

/// Largest `e` with `2^e <= x`; requires `x >= 1`.
pub fn floor_log2(x: &Rat) -> Result<u64> {
    if x < &Rat::one() {
        return Err(Error::Invalid(String::from("floor_log2 needs x >= 1")));
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let mut e = (num.bits() - den.bits()).saturating_sub(1);
    // At most two upward corrections are needed from the bit-length estimate.
    while (den << (e + 1) as usize) <= *num {
        e += 1;
    }
    Ok(e)
}

/// Certified rational upper bound on `log₂ x` for `x >= 1`.
///
/// Exact when `x` is a power of two. Otherwise the bound is obtained by
/// square-and-extract in fixed point, rounding every step upward, so the
/// result is always `>= log₂ x` and exceeds it by less than `2⁻⁴⁷`.
pub fn log2_upper(x: &Rat) -> Result<Rat> {
    let e = floor_log2(x)?;
    let pow = Rat::from_integer(BigInt::one() << e as usize);
    if *x == pow {
        return Ok(rat(e as i64));
    }
    let guard = BigInt::one() << LOG2_GUARD_BITS;
    let two_guard: BigInt = &guard << 1usize;
    // m = x / 2^e in [1, 2); M = ceil(m · 2^guard) keeps an upper bound.
    let num = x.numer() << LOG2_GUARD_BITS;
    let den = x.denom() << e as usize;
    let mut m = num.div_ceil(&den);
    let mut frac = BigInt::zero();
    for _ in 0..LOG2_FRAC_BITS {
        frac <<= 1;
        m = (&m * &m).div_ceil(&guard);
        if m >= two_guard {
            m = m.div_ceil(&big(2));
            frac += 1;
        }
    }
    // One extra ulp covers the residual fraction that was not extracted.
    frac += 1;
    let denom = BigInt::one() << LOG2_FRAC_BITS;
    Ok(rat(e as i64) + Rat::new(frac, denom))
}

/// Certified rational upper bound on `√x` for `x >= 0`; exact on perfect
/// squares of rationals, within relative `2⁻⁶⁴` otherwise.
pub fn sqrt_upper(x: &Rat) -> Result<Rat> {
    if x.is_negative() {
        return Err(Error::Invalid(String::from("sqrt_upper needs x >= 0")));
    }
    if x.is_zero() {
        return Ok(Rat::zero());
    }
    let num = x.numer();
    let den = x.denom();
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        return Ok(Rat::new(rn, rd));
    }
    // √(p/q) = √(p·q)/q; scale by 2^s before the integer square root.
    let scaled: BigInt = (num * den) << (2 * SQRT_SCALE_BITS);
    let root = scaled.sqrt() + 1;
    Ok(Rat::new(root, den << SQRT_SCALE_BITS))
}

/// Certified upper bound on `base^(exp/2)`, i.e. `(√base)^exp`. Exact for
/// even `exp`.
pub fn sqrt_pow_upper(base: u64, exp: u32) -> Result<Rat> {
    let b = rat(base as i64);
    let whole = b.pow((exp / 2) as i32);
    if exp % 2 == 0 {
        Ok(whole)
    } else {
        Ok(whole * sqrt_upper(&b)?)
    }
}

/// `C(a, b)` with the convention that out-of-range arguments give 0.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * big(a - i) / big(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= big(i as i64);
    }
    acc
}

/// Smallest positive `λ` with `λ·row` integral, together with that integer
/// vector.
pub fn clear_denominators(row: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let mut lambda = BigInt::one();
    for v in row {
        lambda = lambda.lcm(v.denom());
    }
    let ints = row
        .iter()
        .map(|v| v.numer() * (&lambda / v.denom()))
        .collect();
    (ints, lambda)
}

/// Divides through by the gcd of the entries (sign untouched). A zero vector
/// is returned unchanged. Returns the positive gcd that was divided out.
pub fn make_primitive(v: &mut [BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return BigInt::one();
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    g
}

pub fn to_i64(v: &BigInt) -> Option<i64> {
    i64::try_from(v).ok()
}

/// Decimal rendering truncated toward zero at `digits` fractional places;
/// integers print without a fractional part.
pub fn decimal_trunc(x: &Rat, digits: u32) -> String {
    use alloc::format;
    if x.is_integer() {
        return format!("{}", x.numer());
    }
    let neg = x.is_negative();
    let mag = x.abs();
    let scale = big(10).pow(digits);
    let scaled = mag.numer() * &scale / mag.denom();
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let frac_digits = format!("{:0>width$}", frac_part, width = digits as usize);
    let sign = if neg { "-" } else { "" };
    format!("{sign}{int_part}.{frac_digits}")
}

/// Sign of a big integer as -1/0/1 for terse comparisons.
pub fn sign(v: &BigInt) -> i32 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
