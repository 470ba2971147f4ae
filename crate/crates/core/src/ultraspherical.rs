//! The λ-parameterized three-term recurrence family C_m, its extreme-zero
//! bounds, and the containment-interval radii used by the construction.
//!
//! Monic polynomials C_m satisfy C_m = x·C_{m−1} − b_m·C_{m−2} with C_0 = 1
//! and C_1 = x. For λ > −1/2 every b_m is positive and the family is
//! orthogonal on (−1, 1); for −3/2 < λ < −1/2 the family is quasi-orthogonal:
//! all zeros stay real and simple, but the extreme pair leaves (−1, 1). The
//! two radii A₁(λ) = √(2/(2λ+3)) and A₂(λ) = 4(2+λ)/(3(2λ+3)) bound every
//! extreme zero of the family for λ in the quasi-orthogonal window.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::MonicPoly;
use crate::rational::{
    format_rational, parse_rational, rat, rat_int, sqrt_upper_approx, Rational,
};

/// Cap on the squared over-approximation error accepted when an irrational
/// radius is replaced by a rational one.
pub fn radius_slack_bound() -> Rational {
    rat(1, 1_000_000)
}

/// Validated recurrence parameter λ.
///
/// Admissible values satisfy λ > −3/2 with λ ∉ {−1, 0} and λ not a half-odd
/// integer −1/2, 1/2, 3/2, … (the excluded points make a recurrence
/// denominator vanish or degenerate the family; the half-odd exclusion is
/// enforced for all k ≥ 0 as stated, not only where a denominator vanishes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltraParams {
    lambda: Rational,
}

impl UltraParams {
    pub fn new(lambda: Rational) -> Result<Self> {
        if lambda <= rat(-3, 2) {
            return Err(Error::ParameterDomain(format!(
                "lambda = {} must exceed -3/2",
                format_rational(&lambda)
            )));
        }
        if lambda == rat_int(-1) || lambda.is_zero() {
            return Err(Error::ParameterDomain(format!(
                "lambda = {} is excluded",
                format_rational(&lambda)
            )));
        }
        // Half-odd values in lowest terms have denominator exactly 2; the
        // excluded ones are −1/2, 1/2, 3/2, … (every half-odd ≥ −1/2).
        if *lambda.denom() == BigInt::from(2) && lambda >= rat(-1, 2) {
            return Err(Error::ParameterDomain(format!(
                "lambda = {} is excluded (half-odd integers -1/2, 1/2, 3/2, ... are not admissible)",
                format_rational(&lambda)
            )));
        }
        Ok(UltraParams { lambda })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// True when λ lies in the classical orthogonal range λ > −1/2.
    pub fn is_orthogonal_range(&self) -> bool {
        self.lambda > rat(-1, 2)
    }

    /// True when λ lies in the quasi-orthogonal window (−3/2, −1/2).
    pub fn is_quasi_orthogonal_range(&self) -> bool {
        self.lambda < rat(-1, 2)
    }
}

/// Recurrence coefficient b_m = (m−1)(m−2+2λ) / (4(m−2+λ)(m−1+λ)) for m ≥ 1.
///
/// b_1 = 0 by the (m−1) factor — returned directly so the formula's
/// denominator is never touched at m = 1 (at λ = 1 it would be 0/0). For
/// m ≥ 2 the denominator factors m−2+λ and m−1+λ are nonzero for every
/// admissible λ: they vanish only at integer λ ≤ 0 or half-odd λ ≥ −1/2,
/// all of which are excluded.
pub fn recurrence_coefficient(m: usize, params: &UltraParams) -> Rational {
    assert!(m >= 1, "recurrence coefficients start at m = 1");
    if m == 1 {
        return Rational::zero();
    }
    let lambda = &params.lambda;
    let m1 = rat_int((m - 1) as i64);
    let m2 = rat_int((m - 2) as i64);
    let numer = &m1 * (&m2 + lambda * rat_int(2));
    let denom = rat_int(4) * (&m2 + lambda) * (&m1 + lambda);
    debug_assert!(!denom.is_zero(), "excluded lambda slipped through validation");
    numer / denom
}

/// Cached table of the family C_0, C_1, C_2, … for one λ.
///
/// Construction is incremental: asking for degree m extends the table to m
/// and returns a reference. The table only grows, so previously returned
/// clones stay valid.
#[derive(Debug, Clone)]
pub struct UltraTable {
    params: UltraParams,
    polys: Vec<MonicPoly>,
}

impl UltraTable {
    pub fn new(params: UltraParams) -> Self {
        UltraTable {
            params,
            polys: vec![MonicPoly::one(), MonicPoly::x()],
        }
    }

    pub fn params(&self) -> &UltraParams {
        &self.params
    }

    /// Extend the table up to degree m (no-op when already built).
    pub fn ensure(&mut self, m: usize) {
        while self.polys.len() <= m {
            let next_degree = self.polys.len();
            let b = recurrence_coefficient(next_degree, &self.params);
            let prev = &self.polys[next_degree - 1];
            let prev_prev = &self.polys[next_degree - 2];
            let next = prev.mul_x().as_poly().axpy(prev_prev.as_poly(), &-b);
            let next = MonicPoly::new(next).expect("recurrence preserves monicity");
            debug_assert!(next.is_symmetric(), "recurrence preserves symmetry");
            debug_assert_eq!(next.degree(), next_degree);
            self.polys.push(next);
        }
    }

    /// The family member of degree m.
    pub fn poly(&mut self, m: usize) -> &MonicPoly {
        self.ensure(m);
        &self.polys[m]
    }

    /// Family members built so far (degrees 0..len−1).
    pub fn built(&self) -> &[MonicPoly] {
        &self.polys
    }
}

/// One-shot construction of C_m for a given λ.
pub fn ultraspherical(m: usize, params: &UltraParams) -> MonicPoly {
    let mut table = UltraTable::new(params.clone());
    table.poly(m).clone()
}

/// Upper bounds for the largest zero of C_m, m ≥ 3: a certified rational
/// over-approximation of √((m−1)/(2λ+m)), and the exact rational
/// 1 − (2λ+1)/(m(m+2λ)). Each is ≥ the true largest zero; their minimum is
/// the sharper containment radius.
pub fn largest_zero_bounds(m: usize, params: &UltraParams) -> Result<(Rational, Rational)> {
    if m < 3 {
        return Err(Error::ParameterDomain(format!(
            "extreme-zero bounds require degree m >= 3, got {m}"
        )));
    }
    let lambda = &params.lambda;
    let two_lambda = lambda * rat_int(2);
    let m_rat = rat_int(m as i64);
    let sqrt_arg = rat_int((m - 1) as i64) / (&two_lambda + &m_rat);
    debug_assert!(sqrt_arg.is_positive(), "2λ+m > 0 for admissible λ and m ≥ 3");
    let (sqrt_bound, _slack) = sqrt_upper_approx(&sqrt_arg, &radius_slack_bound())?;
    let algebraic = Rational::one() - (&two_lambda + rat_int(1)) / (&m_rat * (&m_rat + &two_lambda));
    Ok((sqrt_bound, algebraic))
}

/// How the containment radius a is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadiusMode {
    /// λ-driven: A₁ for λ < −5/4, A₂ for −5/4 ≤ λ < −1/2, 1 for λ > −1/2.
    Auto,
    /// Always the A₁ branch (rational over-approximation of √(2/(2λ+3))).
    ForceA1,
    /// Always the A₂ branch 4(2+λ)/(3(2λ+3)).
    ForceA2,
    /// User-supplied positive rational.
    Explicit(Rational),
    /// Extreme-zero bound of the seed reference polynomial plus a
    /// user-supplied margin ε > 0.
    TheoremEpsilon(Rational),
}

impl fmt::Display for RadiusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadiusMode::Auto => write!(f, "auto"),
            RadiusMode::ForceA1 => write!(f, "a1"),
            RadiusMode::ForceA2 => write!(f, "a2"),
            RadiusMode::Explicit(v) => write!(f, "value:{}", format_rational(v)),
            RadiusMode::TheoremEpsilon(e) => write!(f, "theorem:{}", format_rational(e)),
        }
    }
}

impl FromStr for RadiusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "auto" => Ok(RadiusMode::Auto),
            "a1" => Ok(RadiusMode::ForceA1),
            "a2" => Ok(RadiusMode::ForceA2),
            _ => {
                if let Some(v) = s.strip_prefix("value:") {
                    Ok(RadiusMode::Explicit(parse_rational(v)?))
                } else if let Some(e) = s.strip_prefix("theorem:") {
                    Ok(RadiusMode::TheoremEpsilon(parse_rational(e)?))
                } else {
                    Err(Error::Parse(format!(
                        "unknown radius mode `{s}` (expected auto, a1, a2, value:P/Q, or theorem:P/Q)"
                    )))
                }
            }
        }
    }
}

/// Which rule produced the radius value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusKind {
    A1Overapprox,
    A2,
    Unit,
    Explicit,
    TheoremEpsilon,
}

impl fmt::Display for RadiusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RadiusKind::A1Overapprox => "a1-overapprox",
            RadiusKind::A2 => "a2",
            RadiusKind::Unit => "unit",
            RadiusKind::Explicit => "explicit",
            RadiusKind::TheoremEpsilon => "theorem-epsilon",
        };
        write!(f, "{name}")
    }
}

/// The chosen containment radius: its exact value, the rule that produced
/// it, and the squared over-approximation slack (0 whenever the rule's value
/// is exactly representable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRadius {
    pub value: Rational,
    pub kind: RadiusKind,
    pub slack: Rational,
}

/// Resolve a radius mode to a concrete radius.
///
/// `n` is the seed degree of the construction the radius will serve; only
/// the theorem-epsilon mode uses it (the relevant extreme zero is that of
/// the degree n−2 reference polynomial).
pub fn interval_radius(params: &UltraParams, mode: &RadiusMode, n: usize) -> Result<IntervalRadius> {
    match mode {
        RadiusMode::Auto => {
            if params.lambda < rat(-5, 4) {
                radius_a1(params)
            } else if params.lambda < rat(-1, 2) {
                Ok(radius_a2(params))
            } else {
                Ok(IntervalRadius {
                    value: Rational::one(),
                    kind: RadiusKind::Unit,
                    slack: Rational::zero(),
                })
            }
        }
        RadiusMode::ForceA1 => radius_a1(params),
        RadiusMode::ForceA2 => Ok(radius_a2(params)),
        RadiusMode::Explicit(v) => {
            if !v.is_positive() {
                return Err(Error::ParameterDomain(format!(
                    "explicit radius must be positive, got {}",
                    format_rational(v)
                )));
            }
            Ok(IntervalRadius {
                value: v.clone(),
                kind: RadiusKind::Explicit,
                slack: Rational::zero(),
            })
        }
        RadiusMode::TheoremEpsilon(eps) => {
            if !eps.is_positive() {
                return Err(Error::ParameterDomain(format!(
                    "theorem-mode margin must be positive, got {}",
                    format_rational(eps)
                )));
            }
            if n < 5 {
                return Err(Error::ParameterDomain(format!(
                    "theorem-mode radius needs seed degree n >= 5, got {n}"
                )));
            }
            let (sqrt_bound, algebraic) = largest_zero_bounds(n - 2, params)?;
            let value = sqrt_bound.min(algebraic) + eps;
            Ok(IntervalRadius {
                value,
                kind: RadiusKind::TheoremEpsilon,
                slack: Rational::zero(),
            })
        }
    }
}

fn radius_a1(params: &UltraParams) -> Result<IntervalRadius> {
    let arg = rat_int(2) / (params.lambda() * rat_int(2) + rat_int(3));
    let (value, slack) = sqrt_upper_approx(&arg, &radius_slack_bound())?;
    Ok(IntervalRadius {
        value,
        kind: RadiusKind::A1Overapprox,
        slack,
    })
}

fn radius_a2(params: &UltraParams) -> IntervalRadius {
    let lambda = params.lambda();
    let value = rat_int(4) * (rat_int(2) + lambda) / (rat_int(3) * (rat_int(3) + lambda * rat_int(2)));
    IntervalRadius {
        value,
        kind: RadiusKind::A2,
        slack: Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn params(p: i64, q: i64) -> UltraParams {
        UltraParams::new(rat(p, q)).unwrap()
    }

    fn poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_descending(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn lambda_validation() {
        assert!(UltraParams::new(rat(-5, 4)).is_ok());
        assert!(UltraParams::new(rat(-7, 5)).is_ok());
        assert!(UltraParams::new(rat(11, 10)).is_ok());
        assert!(UltraParams::new(rat_int(1)).is_ok());
        assert!(UltraParams::new(rat(-11, 8)).is_ok());

        assert!(UltraParams::new(rat(-3, 2)).is_err()); // boundary
        assert!(UltraParams::new(rat_int(-2)).is_err()); // below window
        assert!(UltraParams::new(rat_int(-1)).is_err()); // excluded point
        assert!(UltraParams::new(rat_int(0)).is_err()); // excluded point
        assert!(UltraParams::new(rat(-1, 2)).is_err()); // half-odd
        assert!(UltraParams::new(rat(1, 2)).is_err()); // half-odd
        assert!(UltraParams::new(rat(3, 2)).is_err()); // half-odd
        assert!(UltraParams::new(rat(7, 2)).is_err()); // half-odd
        // −5/4 has denominator 4, not 2: admissible.
        assert!(UltraParams::new(rat(-5, 4)).is_ok());
    }

    #[test]
    fn recurrence_coefficient_hand_values() {
        assert_eq!(recurrence_coefficient(1, &params(-5, 4)), rat_int(0));
        assert_eq!(recurrence_coefficient(1, &params(1, 1)), rat_int(0));
        // m=2: 1/(2(1+λ)) at λ=−5/4 → −2.
        assert_eq!(recurrence_coefficient(2, &params(-5, 4)), rat_int(-2));
        // m=4, λ=1: (3)(4)/(4·3·4) = 1/4.
        assert_eq!(recurrence_coefficient(4, &params(1, 1)), rat(1, 4));
        // m=3, λ=−5/4: 2(1+2λ)/(4(1+λ)(2+λ)) = 4.
        assert_eq!(recurrence_coefficient(3, &params(-5, 4)), rat_int(4));
        // m=4, λ=−5/4: −2/7 (used by the seed at n=5).
        assert_eq!(recurrence_coefficient(4, &params(-5, 4)), rat(-2, 7));
    }

    #[test]
    fn recurrence_positivity_in_orthogonal_range() {
        for lambda in [rat(1, 4), rat_int(1), rat_int(3)] {
            let p = UltraParams::new(lambda).unwrap();
            for m in 2..=12 {
                assert!(
                    recurrence_coefficient(m, &p).is_positive(),
                    "b_{m} not positive at lambda = {}",
                    p.lambda()
                );
            }
        }
    }

    #[test]
    fn family_members_match_hand_recurrence() {
        let p = params(-5, 4);
        assert_eq!(ultraspherical(0, &p).as_poly(), &Poly::one());
        assert_eq!(ultraspherical(1, &p).as_poly(), &Poly::x());
        // C₂ = x² + 2 (b₂ = −2): no real zeros in the quasi-orthogonal range.
        assert_eq!(ultraspherical(2, &p).as_poly(), &poly(&[(1, 1), (0, 1), (2, 1)]));
        // C₃ = x³ − 2x.
        assert_eq!(
            ultraspherical(3, &p).as_poly(),
            &poly(&[(1, 1), (0, 1), (-2, 1), (0, 1)])
        );
        // C₄ = x⁴ − (12/7)x² + 4/7.
        assert_eq!(
            ultraspherical(4, &p).as_poly(),
            &poly(&[(1, 1), (0, 1), (-12, 7), (0, 1), (4, 7)])
        );
    }

    #[test]
    fn family_is_symmetric_with_zero_linear_coefficient() {
        for lambda in [rat(-5, 4), rat(-3, 4), rat(1, 4), rat_int(2)] {
            let mut table = UltraTable::new(UltraParams::new(lambda).unwrap());
            for m in 0..=12 {
                let c = table.poly(m);
                assert!(c.is_symmetric());
                assert!(c.is_monic());
                assert_eq!(c.degree(), m);
                if m >= 1 {
                    // Zero coefficient at codegree 1 means the zero-sum is 0.
                    assert!(c.codegree_coeff(1).is_zero());
                }
            }
        }
    }

    #[test]
    fn extreme_zero_bounds_hand_values() {
        // m=3, λ=−5/4: algebraic bound 1 + (3/2)/(3·(1/2)) = 2.
        let (_, algebraic) = largest_zero_bounds(3, &params(-5, 4)).unwrap();
        assert_eq!(algebraic, rat_int(2));
        // m=4, λ=−1/4: 1 − (1/2)/(4·(7/2)) = 27/28.
        let (_, algebraic) = largest_zero_bounds(4, &params(-1, 4)).unwrap();
        assert_eq!(algebraic, rat(27, 28));
        // The square-root bound is certified by squaring: bound² ≥ (m−1)/(2λ+m).
        for (m, lp, lq) in [(3, -5i64, 4i64), (5, -9, 8), (8, 1, 1)] {
            let pr = params(lp, lq);
            let (sqrt_bound, _) = largest_zero_bounds(m, &pr).unwrap();
            let arg = rat_int((m - 1) as i64) / (pr.lambda() * rat_int(2) + rat_int(m as i64));
            assert!(&sqrt_bound * &sqrt_bound >= arg);
        }
        assert!(largest_zero_bounds(2, &params(-5, 4)).is_err());
    }

    #[test]
    fn radius_auto_branches() {
        // A₂ branch (−5/4 ≤ λ < −1/2).
        let cases = [
            ((-5i64, 4i64), (2i64, 1i64)),
            ((-3, 4), (10, 9)),
            ((-9, 8), (14, 9)),
            ((-7, 8), (6, 5)),
            ((-5, 8), (22, 21)),
            ((-6, 5), (16, 9)),
            ((-9, 10), (11, 9)),
            ((-3, 5), (28, 27)),
        ];
        for ((lp, lq), (vp, vq)) in cases {
            let r = interval_radius(&params(lp, lq), &RadiusMode::Auto, 5).unwrap();
            assert_eq!(r.value, rat(vp, vq), "auto radius at lambda = {lp}/{lq}");
            assert_eq!(r.kind, RadiusKind::A2);
            assert!(r.slack.is_zero());
        }
        // Unit branch (λ > −1/2).
        let r = interval_radius(&params(1, 1), &RadiusMode::Auto, 5).unwrap();
        assert_eq!(r.value, Rational::one());
        assert_eq!(r.kind, RadiusKind::Unit);
        // A₁ branch (λ < −5/4): certified over-approximation of √10 at λ=−7/5.
        let r = interval_radius(&params(-7, 5), &RadiusMode::Auto, 5).unwrap();
        assert_eq!(r.kind, RadiusKind::A1Overapprox);
        let ten = rat_int(10);
        assert!(&r.value * &r.value >= ten);
        assert!(&r.value * &r.value - &ten <= radius_slack_bound());
        assert_eq!(&r.value * &r.value - &ten, r.slack);
    }

    #[test]
    fn radius_forced_and_explicit_modes() {
        // Forced A₂ where auto would pick A₁ (λ=−11/8 < −5/4) or unit (λ=−1/4).
        let r = interval_radius(&params(-11, 8), &RadiusMode::ForceA2, 5).unwrap();
        assert_eq!(r.value, rat(10, 3));
        let r = interval_radius(&params(-1, 4), &RadiusMode::ForceA2, 5).unwrap();
        assert_eq!(r.value, rat(14, 15));
        // Forced A₁ at λ=−5/4: 2/(2λ+3) = 4 is a perfect square, so exact.
        let r = interval_radius(&params(-5, 4), &RadiusMode::ForceA1, 5).unwrap();
        assert_eq!(r.value, rat_int(2));
        assert!(r.slack.is_zero());
        // Explicit.
        let r = interval_radius(&params(1, 1), &RadiusMode::Explicit(rat(5, 3)), 5).unwrap();
        assert_eq!(r.value, rat(5, 3));
        assert_eq!(r.kind, RadiusKind::Explicit);
        assert!(interval_radius(&params(1, 1), &RadiusMode::Explicit(rat_int(0)), 5).is_err());
        assert!(interval_radius(&params(1, 1), &RadiusMode::Explicit(rat(-1, 2)), 5).is_err());
    }

    #[test]
    fn radius_theorem_epsilon_mode() {
        // n=5 → bounds for m=3; at λ=−5/4 the algebraic bound is exactly 2
        // and the square-root bound over-approximates √(2/(1/2 − 5/4 + 3))…
        // min(√-bound, 2) + ε. The √-bound at m=3 is √(2/(2λ+3)) = 2 exactly,
        // so the radius is 2 + ε.
        let r = interval_radius(&params(-5, 4), &RadiusMode::TheoremEpsilon(rat(1, 100)), 5)
            .unwrap();
        assert_eq!(r.value, rat_int(2) + rat(1, 100));
        assert_eq!(r.kind, RadiusKind::TheoremEpsilon);
        assert!(
            interval_radius(&params(-5, 4), &RadiusMode::TheoremEpsilon(rat_int(0)), 5).is_err()
        );
        assert!(
            interval_radius(&params(-5, 4), &RadiusMode::TheoremEpsilon(rat(1, 100)), 4).is_err()
        );
    }

    #[test]
    fn radius_comparisons_by_squaring() {
        // A₁ < A₂ on (−3/2, −5/4); A₁ > A₂ on (−5/4, −1/2). Compare
        // A₁² = 2/(2λ+3) with A₂² exactly — no irrational arithmetic.
        let below = [rat(-149, 100), rat(-7, 5), rat(-27, 20), rat(-13, 10), rat(-129, 100)];
        let above = [rat(-6, 5), rat(-9, 8), rat_int(-1) + rat(1, 100), rat(-3, 4), rat(-3, 5)];
        for lambda in below {
            let p = UltraParams::new(lambda).unwrap();
            let a1_sq = rat_int(2) / (p.lambda() * rat_int(2) + rat_int(3));
            let a2 = radius_a2(&p).value;
            assert!(a1_sq < &a2 * &a2, "A1 < A2 expected at lambda = {}", p.lambda());
        }
        for lambda in above {
            let p = UltraParams::new(lambda).unwrap();
            let a1_sq = rat_int(2) / (p.lambda() * rat_int(2) + rat_int(3));
            let a2 = radius_a2(&p).value;
            assert!(a1_sq > &a2 * &a2, "A1 > A2 expected at lambda = {}", p.lambda());
        }
        // Equality at λ=−5/4: both are 2.
        let p = params(-5, 4);
        let a1_sq = rat_int(2) / (p.lambda() * rat_int(2) + rat_int(3));
        let a2 = radius_a2(&p).value;
        assert_eq!(a1_sq, &a2 * &a2);
    }

    #[test]
    fn radius_mode_strings_round_trip() {
        for text in ["auto", "a1", "a2", "value:5/3", "theorem:1/100"] {
            let mode: RadiusMode = text.parse().unwrap();
            assert_eq!(mode.to_string(), text);
        }
        assert!("nope".parse::<RadiusMode>().is_err());
        assert!("value:0.5".parse::<RadiusMode>().is_err());
    }
}
