//! Dense exact-rational polynomials and the monic wrapper used throughout.
//!
//! Coefficients are stored in descending powers: index `j` holds the
//! coefficient of `x^(degree − j)`, so the codegree-2 coefficient needed by
//! the downward recurrence is an O(1) lookup. The leading coefficient is
//! kept nonzero by construction — the zero polynomial stores an empty
//! coefficient list — so every reported degree is exact.

use std::fmt;
use std::ops::Deref;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// General dense polynomial with exact rational coefficients.
///
/// Intermediates of the construction (differences like D − x·D) are not
/// monic; this type carries them, and [`MonicPoly`] re-asserts monicity at
/// module boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    /// Descending powers, leading entry nonzero; empty for the zero polynomial.
    coeffs: Vec<Rational>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The identity polynomial x.
    pub fn x() -> Self {
        Poly::from_descending(vec![Rational::one(), Rational::zero()])
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        Poly::from_descending(vec![c])
    }

    /// Build from descending-power coefficients; leading zeros are trimmed
    /// so the reported degree is exact.
    pub fn from_descending(coeffs: Vec<Rational>) -> Self {
        let mut coeffs = coeffs;
        let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in descending powers (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Leading coefficient, `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `x^(degree − j)`; zero when `j` exceeds the degree or
    /// the polynomial is zero. For j = 2 this is the coefficient driving the
    /// downward recurrence; degree-0 and degree-1 polynomials have no such
    /// term and correctly report 0.
    pub fn codegree_coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `x^power` (zero when absent).
    pub fn power_coeff(&self, power: usize) -> Rational {
        match self.degree() {
            Some(d) if power <= d => self.coeffs[d - power].clone(),
            _ => Rational::zero(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()).unwrap_or(false)
    }

    /// True when every coefficient whose codegree is odd vanishes, i.e.
    /// p(−x) = (−1)^degree · p(x). The zero polynomial counts as symmetric.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .skip(1)
            .step_by(2)
            .all(|c| c.is_zero())
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiply by x (shift all powers up by one).
    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.push(Rational::zero());
        Poly { coeffs }
    }

    /// Multiply by x^k.
    pub fn mul_x_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(std::iter::repeat_with(Rational::zero).take(k));
        Poly { coeffs }
    }

    /// self + c·other, with exact coefficients and degree re-trimmed, so a
    /// cancellation like p + (−1)·p reports the zero polynomial.
    pub fn axpy(&self, other: &Poly, c: &Rational) -> Poly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scale(c);
        }
        let top = self.degree().unwrap().max(other.degree().unwrap());
        let mut coeffs = Vec::with_capacity(top + 1);
        for power in (0..=top).rev() {
            coeffs.push(self.power_coeff(power) + c * other.power_coeff(power));
        }
        Poly::from_descending(coeffs)
    }

    /// Pointwise scalar multiple.
    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Exact formal derivative; degree-0 inputs (and zero) yield the zero
    /// polynomial.
    pub fn derivative(&self) -> Poly {
        let Some(d) = self.degree() else {
            return Poly::zero();
        };
        if d == 0 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .take(d)
            .enumerate()
            .map(|(j, c)| c * Rational::from_integer((d - j).into()))
            .collect();
        Poly { coeffs }
    }

    /// Exact Euclidean division: returns (quotient, remainder) with
    /// deg remainder < deg divisor. Division by the zero polynomial errors.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let divisor_deg = divisor
            .degree()
            .ok_or_else(|| Error::Arithmetic("division by the zero polynomial".into()))?;
        let Some(self_deg) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if self_deg < divisor_deg {
            return Ok((Poly::zero(), self.clone()));
        }
        let quot_deg = self_deg - divisor_deg;
        let mut quot = vec![Rational::zero(); quot_deg + 1];
        let mut rem = self.clone();
        while let Some(rem_deg) = rem.degree() {
            if rem_deg < divisor_deg {
                break;
            }
            let factor = rem.leading().unwrap() / divisor.leading().unwrap();
            let shift = rem_deg - divisor_deg;
            quot[quot_deg - shift] = factor.clone();
            rem = rem.axpy(&divisor.mul_x_pow(shift), &-factor);
        }
        Ok((Poly::from_descending(quot), rem))
    }

    /// Monic greatest common divisor (Euclid); gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("divisor is nonzero").1;
            a = b;
            b = r;
        }
        match a.leading() {
            Some(lead) => {
                let inv = lead.recip();
                a.scale(&inv)
            }
            None => a,
        }
    }
}

impl fmt::Display for Poly {
    /// Human-oriented rendering: `x^5 - 3x^3 + 2x`, `-18/19`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = d - j;
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !magnitude.is_one() || power == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&magnitude))?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A polynomial whose leading coefficient is exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    /// Wrap a polynomial, verifying monicity.
    pub fn new(p: Poly) -> Result<Self> {
        if p.is_monic() {
            Ok(MonicPoly(p))
        } else {
            Err(Error::Arithmetic(format!(
                "polynomial is not monic: {p}"
            )))
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        MonicPoly(Poly::one())
    }

    /// The identity polynomial x.
    pub fn x() -> Self {
        MonicPoly(Poly::x())
    }

    /// Degree (always defined: monic polynomials are nonzero).
    pub fn degree(&self) -> usize {
        self.0.degree().expect("monic polynomials are nonzero")
    }

    /// Multiply by x, staying monic.
    pub fn mul_x(&self) -> MonicPoly {
        MonicPoly(self.0.mul_x())
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }
}

impl Deref for MonicPoly {
    type Target = Poly;

    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Serialization form of a polynomial: degree plus descending lowest-terms
/// fraction strings, the canonical interchange format of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDto {
    pub degree: usize,
    pub coeffs: Vec<String>,
}

impl PolyDto {
    pub fn from_poly(p: &Poly) -> Self {
        if p.is_zero() {
            return PolyDto {
                degree: 0,
                coeffs: vec!["0".to_string()],
            };
        }
        PolyDto {
            degree: p.degree().unwrap(),
            coeffs: p.coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let p = Poly::from_descending(coeffs);
        match p.degree() {
            Some(d) if d != self.degree => Err(Error::Parse(format!(
                "declared degree {} does not match coefficients (actual degree {d})",
                self.degree
            ))),
            None if self.degree != 0 => Err(Error::Parse(format!(
                "declared degree {} does not match zero coefficients",
                self.degree
            ))),
            _ => Ok(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_descending(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn mul_x_shifts_coefficients() {
        // x² − 18/19 → x³ − (18/19)x
        let p = poly(&[(1, 1), (0, 1), (-18, 19)]);
        assert_eq!(p.mul_x(), poly(&[(1, 1), (0, 1), (-18, 19), (0, 1)]));
        // 1 → x
        assert_eq!(Poly::one().mul_x(), Poly::x());
        // x³ − (10/9)x → x⁴ − (10/9)x²
        let p = poly(&[(1, 1), (0, 1), (-10, 9), (0, 1)]);
        assert_eq!(
            p.mul_x(),
            poly(&[(1, 1), (0, 1), (-10, 9), (0, 1), (0, 1)])
        );
    }

    #[test]
    fn axpy_cancels_to_exact_zero() {
        let p = poly(&[(1, 1), (0, 1), (2, 1)]); // x² + 2
        let sum = p.axpy(&p, &rat_int(-1));
        assert!(sum.is_zero());
        assert_eq!(sum.degree(), None);
    }

    #[test]
    fn axpy_mixed_degrees() {
        // (x⁵−3x³+2x) + (−21/17)(x⁴−(12/7)x²+4/7)
        let p = poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)]);
        let q = poly(&[(1, 1), (0, 1), (-12, 7), (0, 1), (4, 7)]);
        let got = p.axpy(&q, &rat(-21, 17));
        let want = poly(&[
            (1, 1),
            (-21, 17),
            (-3, 1),
            (36, 17),
            (2, 1),
            (-12, 17),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn axpy_builds_seed_product() {
        // (x²)·q + (−1)·q with q = x³−2x gives x⁵−3x³+2x.
        let q = poly(&[(1, 1), (0, 1), (-2, 1), (0, 1)]);
        let x2q = q.mul_x().mul_x();
        let got = x2q.axpy(&q, &rat_int(-1));
        assert_eq!(got, poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)]));
    }

    #[test]
    fn eval_matches_hand_values() {
        let d5 = poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)]);
        assert_eq!(d5.eval(&rat_int(2)), rat_int(12));
        let d8 = poly(&[
            (1, 1),
            (0, 1),
            (-106, 17),
            (0, 1),
            (193, 17),
            (0, 1),
            (-116, 17),
            (0, 1),
            (12, 17),
        ]);
        assert_eq!(d8.eval(&rat_int(1)), rat_int(0));
        assert_eq!(d8.eval(&rat_int(0)), rat(12, 17));
    }

    #[test]
    fn derivative_power_rule() {
        let p = poly(&[(1, 1), (0, 1), (-18, 19)]);
        assert_eq!(p.derivative(), poly(&[(2, 1), (0, 1)]));
        let d5 = poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)]);
        assert_eq!(
            d5.derivative(),
            poly(&[(5, 1), (0, 1), (-9, 1), (0, 1), (2, 1)])
        );
        assert_eq!(Poly::x().derivative(), Poly::one());
        assert!(Poly::one().derivative().is_zero());
    }

    #[test]
    fn symmetry_detection() {
        assert!(poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)]).is_symmetric());
        assert!(!poly(&[(1, 1), (-21, 17), (-3, 1)]).is_symmetric());
        assert!(Poly::one().is_symmetric());
        assert!(Poly::zero().is_symmetric());
    }

    #[test]
    fn div_rem_is_exact_euclidean() {
        // x⁵−3x³+2x = (x²−1)(x³−2x) exactly.
        let d5 = poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)]);
        let q = poly(&[(1, 1), (0, 1), (-1, 1)]);
        let (quot, rem) = d5.div_rem(&q).unwrap();
        assert_eq!(quot, poly(&[(1, 1), (0, 1), (-2, 1), (0, 1)]));
        assert!(rem.is_zero());

        // Remainder case: x³ by x²+1 → quot x, rem −x.
        let p = poly(&[(1, 1), (0, 1), (0, 1), (0, 1)]);
        let d = poly(&[(1, 1), (0, 1), (1, 1)]);
        let (quot, rem) = p.div_rem(&d).unwrap();
        assert_eq!(quot, Poly::x());
        assert_eq!(rem, poly(&[(-1, 1), (0, 1)]));

        assert!(p.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn gcd_detects_common_factors() {
        let d5 = poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)]);
        let d5_prime = d5.derivative();
        assert_eq!(d5.gcd(&d5_prime), Poly::one());

        // x·p and p share p itself; the result is normalized monic.
        let with_x = d5.mul_x();
        assert_eq!(with_x.gcd(&d5), d5);

        // A squared factor shows up in gcd(p, p′): (x²−1)² is not squarefree.
        let sq = poly(&[(1, 1), (0, 1), (-2, 1), (0, 1), (1, 1)]);
        assert_eq!(sq.gcd(&sq.derivative()), poly(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn monic_wrapper_enforces_leading_one() {
        assert!(MonicPoly::new(poly(&[(2, 1), (0, 1)])).is_err());
        let m = MonicPoly::new(poly(&[(1, 1), (0, 1), (-18, 19)])).unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(m.codegree_coeff(2), rat(-18, 19));
    }

    #[test]
    fn dto_round_trip_is_canonical() {
        let p = poly(&[(1, 1), (0, 1), (-18, 19)]);
        let dto = PolyDto::from_poly(&p);
        assert_eq!(dto.degree, 2);
        assert_eq!(dto.coeffs, vec!["1", "0", "-18/19"]);
        let json = serde_json::to_string(&dto).unwrap();
        let back: PolyDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_poly().unwrap(), p);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn dto_rejects_inconsistent_degree() {
        let dto = PolyDto {
            degree: 3,
            coeffs: vec!["1".into(), "0".into()],
        };
        assert!(dto.to_poly().is_err());
        let dto = PolyDto {
            degree: 2,
            coeffs: vec!["0".into(), "1".into(), "0".into()],
        };
        assert!(dto.to_poly().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_rational() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..20).prop_map(|(p, q)| rat(p, q))
        }

        fn arb_poly() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(arb_rational(), 0..8).prop_map(Poly::from_descending)
        }

        proptest! {
            #[test]
            fn axpy_is_linear_under_eval(p in arb_poly(), q in arb_poly(), c in arb_rational(), t in arb_rational()) {
                let lhs = p.axpy(&q, &c).eval(&t);
                let rhs = p.eval(&t) + &c * q.eval(&t);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn mul_x_commutes_with_eval(p in arb_poly(), t in arb_rational()) {
                prop_assert_eq!(p.mul_x().eval(&t), &t * p.eval(&t));
            }

            #[test]
            fn div_rem_reconstructs(p in arb_poly(), d in arb_poly()) {
                prop_assume!(!d.is_zero());
                let (q, r) = p.div_rem(&d).unwrap();
                // p == q·d + r, checked pointwise at several points.
                for t in [rat(0, 1), rat(1, 1), rat(-2, 3), rat(5, 7)] {
                    prop_assert_eq!(p.eval(&t), q.eval(&t) * d.eval(&t) + r.eval(&t));
                }
                if let (Some(rd), Some(dd)) = (r.degree(), d.degree()) {
                    prop_assert!(rd < dd);
                }
            }

            #[test]
            fn dto_round_trip(p in arb_poly()) {
                let dto = PolyDto::from_poly(&p);
                let json = serde_json::to_string(&dto).unwrap();
                let back: PolyDto = serde_json::from_str(&json).unwrap();
                prop_assert_eq!(back.to_poly().unwrap(), p);
                prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
            }
        }
    }
}
