//! Exact rational scalars: parsing, canonical text, decimal rendering, and
//! certified square-root over-approximation.
//!
//! Every scalar in this crate is an arbitrary-precision rational kept in
//! lowest terms with a positive denominator. Decimal text appears only as
//! *output* (tables, figures); all inputs are exact fractions.

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator always positive.
pub type Rational = BigRational;

/// Small-constant shorthand: `rat(-5, 4)` is −5/4.
///
/// Panics when `denom` is zero; use [`parse_rational`] for untrusted text.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer-valued rational shorthand.
pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parse `p` or `p/q` with optional sign into an exact rational.
///
/// Decimal and scientific notation are rejected: the pipeline is exact
/// end-to-end, and silently converting `0.1` to a binary float (or even to
/// 1/10) would hide the caller's intent. The error message suggests the
/// fraction form instead.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse(
            "empty value where a fraction was expected".into(),
        ));
    }
    if s.contains('.') || s.contains(['e', 'E']) {
        return Err(Error::Parse(format!(
            "`{s}` looks like a decimal; use an exact fraction like -5/4"
        )));
    }
    let (numer_text, denom_text) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let numer: BigInt = numer_text
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{numer_text}` is not an integer numerator")))?;
    let denom: BigInt = denom_text
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{denom_text}` is not an integer denominator")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical lowest-terms rendering: `-5/4`, `2`, `0`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

fn pow10(exp: u64) -> BigInt {
    BigInt::from(10u32).pow(exp as u32)
}

/// Decimal rendering with `sig` significant digits, rounded half away from
/// zero, trailing fractional zeros stripped: 6 significant digits turn
/// √2 into `1.41421`, 289/170 into `1.7` and −1 into `-1`.
pub fn to_decimal_significant(value: &Rational, sig: u32) -> String {
    assert!(sig >= 1, "at least one significant digit required");
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let p = value.numer().abs();
    let q = value.denom().clone();
    // Decimal exponent e with 10^e ≤ p/q < 10^(e+1).
    let mut e: i64;
    if p >= q {
        e = (&p / &q).to_string().len() as i64 - 1;
    } else {
        e = 0;
        let mut scaled = p.clone();
        while scaled < q {
            scaled *= 10;
            e -= 1;
        }
    }
    // n = round(p/q · 10^(sig−1−e)), half away from zero.
    let shift = sig as i64 - 1 - e;
    let (np, nq) = if shift >= 0 {
        (p * pow10(shift as u64), q)
    } else {
        (p, q * pow10((-shift) as u64))
    };
    let (mut n, rem) = np.div_rem(&nq);
    if &rem * 2 >= nq {
        n += 1;
    }
    if n == pow10(sig as u64) {
        // Rounding carried into a new leading digit (e.g. 9.99... → 10.0).
        n = pow10(sig as u64 - 1);
        e += 1;
    }
    let digits = n.to_string();
    debug_assert_eq!(digits.len(), sig as usize);

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if e >= sig as i64 - 1 {
        out.push_str(&digits);
        for _ in 0..(e - (sig as i64 - 1)) {
            out.push('0');
        }
    } else if e >= 0 {
        let int_len = (e + 1) as usize;
        out.push_str(&digits[..int_len]);
        let frac = digits[int_len..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        let padded = format!("{}{}", "0".repeat((-e - 1) as usize), digits);
        let frac = padded.trim_end_matches('0');
        out.push('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    }
    out
}

/// Fixed-point rendering with exactly `places` digits after the point,
/// rounded half away from zero. Used for stable-width coordinates.
pub fn to_decimal_fixed(value: &Rational, places: u32) -> String {
    let scaled = value * Rational::from_integer(pow10(places as u64));
    let (mut n, rem) = scaled.numer().div_rem(scaled.denom());
    if &rem.abs() * 2 >= *scaled.denom() {
        if scaled.is_negative() {
            n -= 1u8;
        } else {
            n += 1u8;
        }
    }
    let negative = n.is_negative();
    let mut digits = n.abs().to_string();
    let places = places as usize;
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let split = digits.len() - places;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&digits[..split]);
    if places > 0 {
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

/// Certified rational over-approximation of √x.
///
/// Returns the smallest-denominator fraction `s` with `s² ≥ x`,
/// `s² − x ≤ eps` and `s − √x ≤ eps`, together with the exact squared slack
/// `s² − x` (zero exactly when `x` is a perfect rational square). Minimizing
/// the height of `s` keeps every downstream exact computation that uses `s`
/// small, which matters because `s` feeds recurrence coefficients whose
/// denominators otherwise compound multiplicatively.
pub fn sqrt_upper_approx(x: &Rational, eps: &Rational) -> Result<(Rational, Rational)> {
    if x.is_negative() {
        return Err(Error::ParameterDomain(
            "square root of a negative value".into(),
        ));
    }
    if !eps.is_positive() {
        return Err(Error::ParameterDomain(
            "square-root tolerance must be positive".into(),
        ));
    }
    if x.is_zero() {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let numer_root = x.numer().sqrt();
    let denom_root = x.denom().sqrt();
    if &(&numer_root * &numer_root) == x.numer() && &(&denom_root * &denom_root) == x.denom() {
        return Ok((Rational::new(numer_root, denom_root), Rational::zero()));
    }

    // The acceptance region is (√x, min(√(x+eps), √x+eps)]: strictly above
    // the root, within eps on both the squared and the linear scale.
    let upper_sq = x + eps;
    let too_low = |s: &Rational| &(s * s) <= x;
    let too_high = |s: &Rational| {
        if s * s > upper_sq {
            return true;
        }
        if s > eps {
            let t = s - eps;
            if &(&t * &t) > x {
                return true;
            }
        }
        false
    };

    // Stern–Brocot walk with batched steps. Fences a/b < region ≤ c/d; the
    // first mediant that is neither too low nor too high is the unique
    // simplest fraction in the region.
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    let mut c = BigInt::one();
    let mut d = BigInt::zero();
    loop {
        let mediant = Rational::new(&a + &c, &b + &d);
        if too_low(&mediant) {
            let k = last_true(|k: &BigInt| too_low(&Rational::new(&a + k * &c, &b + k * &d)));
            a += &k * &c;
            b += &k * &d;
        } else if too_high(&mediant) {
            let k = last_true(|k: &BigInt| too_high(&Rational::new(&c + k * &a, &d + k * &b)));
            c += &k * &a;
            d += &k * &b;
        } else {
            let slack = &mediant * &mediant - x;
            return Ok((mediant, slack));
        }
    }
}

/// The simplest rational strictly between `lo` and `hi`: smallest
/// denominator, and among equal denominators the one found first on the
/// Stern–Brocot tree (smallest magnitude). Errors when the open interval is
/// empty.
///
/// The key guarantee used by root refinement: if an interval contains a
/// fraction p/q in lowest terms and its width is below 1/q², then p/q *is*
/// the simplest fraction inside (every other fraction with denominator ≤ q
/// differs from p/q by at least 1/q²), so probing the simplest member of a
/// shrinking enclosure is certain to discover any rational value it pins
/// down.
pub fn simplest_in_open(lo: &Rational, hi: &Rational) -> Result<Rational> {
    if lo >= hi {
        return Err(Error::ParameterDomain(format!(
            "empty interval ({}, {})",
            format_rational(lo),
            format_rational(hi)
        )));
    }
    if lo.is_negative() && hi.is_positive() {
        return Ok(Rational::zero());
    }
    if !hi.is_positive() {
        // Entirely nonpositive: mirror into the nonnegative case.
        return Ok(-simplest_in_open(&-hi.clone(), &-lo.clone())?);
    }
    // 0 ≤ lo < hi: walk the positive Stern–Brocot tree with batched steps.
    // Fences a/b ≤ lo and c/d ≥ hi; the first mediant strictly inside the
    // interval is the simplest fraction it contains.
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    let mut c = BigInt::one();
    let mut d = BigInt::zero();
    loop {
        let mediant = Rational::new(&a + &c, &b + &d);
        if &mediant <= lo {
            let k = last_true(|k: &BigInt| &Rational::new(&a + k * &c, &b + k * &d) <= lo);
            a += &k * &c;
            b += &k * &d;
        } else if &mediant >= hi {
            let k = last_true(|k: &BigInt| &Rational::new(&c + k * &a, &d + k * &b) >= hi);
            c += &k * &a;
            d += &k * &b;
        } else {
            return Ok(mediant);
        }
    }
}

/// Largest k ≥ 1 satisfying a monotone predicate that holds at k = 1
/// (exponential probe, then binary search).
fn last_true(pred: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut lo = BigInt::one();
    let mut hi = BigInt::from(2);
    while pred(&hi) {
        lo = hi.clone();
        hi *= 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi) / 2;
        if pred(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
