//! Certified real-root counting, isolation, and refinement.
//!
//! Counting rests on the classical sign-variation chain p, p′, then negated
//! remainders of successive exact divisions. The public [`sturm_chain`]
//! returns that canonical rational chain. Counting and isolation internally
//! use an equivalent chain of *primitive integer* polynomials — every member
//! is a positive rational multiple of its canonical counterpart, so every
//! pointwise sign, and therefore every variation count, is identical, while
//! evaluations avoid rational-arithmetic overhead entirely.
//!
//! Variation counts use the half-open convention: var(lo) − var(hi) is the
//! exact number of distinct real roots in (lo, hi]. The variation count is
//! right-continuous, so a *simple* root sitting exactly on an endpoint is
//! handled correctly (excluded at lo, included at hi); only a repeated
//! endpoint root breaks the count, and that case errors.
//!
//! Isolation recursively bisects, reusing the endpoint variation counts of
//! the parent interval, and splits exact rational roots out when a probe
//! point evaluates to zero. In addition, every bracket is probed at the
//! *simplest* rational it contains (smallest denominator, via the
//! Stern–Brocot tree): a rational root p/q is therefore reported exactly —
//! radius 0 — as soon as its enclosure is narrower than 1/q², instead of
//! being bisected around forever. Constructed polynomials frequently vanish
//! at 0 and ±1 exactly, and those zeros always come out exact.

use num::bigint::{BigInt, Sign};
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, simplest_in_open, Rational};

/// Canonical rational sign chain: p, p′, then each next member is the
/// negated remainder of dividing the previous two, stopping before a zero
/// remainder. For squarefree p the chain ends in a nonzero constant.
pub fn sturm_chain(p: &Poly) -> Result<Vec<Poly>> {
    if p.is_zero() {
        return Err(Error::RootFinding(
            "the zero polynomial has no sign chain".into(),
        ));
    }
    let mut chain = vec![p.clone()];
    if p.degree() == Some(0) {
        return Ok(chain);
    }
    chain.push(p.derivative());
    loop {
        let previous = &chain[chain.len() - 2];
        let current = &chain[chain.len() - 1];
        let remainder = previous.div_rem(current)?.1;
        if remainder.is_zero() {
            return Ok(chain);
        }
        chain.push(remainder.neg());
    }
}

/// Dense integer polynomial (descending powers, nonzero leading
/// coefficient). Represents a positive multiple of some rational polynomial
/// for sign purposes.
#[derive(Debug, Clone)]
pub(crate) struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Clear denominators and remove the content; `None` for the zero
    /// polynomial. The result is the unique primitive positive multiple.
    pub(crate) fn from_poly(p: &Poly) -> Option<IntPoly> {
        if p.is_zero() {
            return None;
        }
        let mut denom_lcm = BigInt::one();
        for c in p.coeffs() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let coeffs: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        Some(IntPoly::primitive(coeffs))
    }

    /// Divide out the positive content; assumes a nonzero leading entry.
    fn primitive(mut coeffs: Vec<BigInt>) -> IntPoly {
        let mut content = BigInt::zero();
        for c in &coeffs {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        if !content.is_one() && !content.is_zero() {
            for c in &mut coeffs {
                *c /= &content;
            }
        }
        IntPoly { coeffs }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Formal derivative, kept primitive. `None` for constant input.
    fn derivative(&self) -> Option<IntPoly> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .take(d)
            .enumerate()
            .map(|(j, c)| c * BigInt::from(d - j))
            .collect();
        Some(IntPoly::primitive(coeffs))
    }

    /// Sign of the value at the rational point u/v, using a shared table of
    /// powers of v (v > 0, table long enough for this member's degree).
    fn sign_at_scaled(&self, u: &BigInt, v_pows: &[BigInt]) -> Sign {
        let mut acc = self.coeffs[0].clone();
        for (j, c) in self.coeffs.iter().enumerate().skip(1) {
            acc = acc * u + c * &v_pows[j];
        }
        acc.sign()
    }

    /// Sign of the value at a rational point.
    pub(crate) fn sign_at(&self, t: &Rational) -> Sign {
        let v_pows = power_table(t.denom(), self.degree());
        self.sign_at_scaled(t.numer(), &v_pows)
    }
}

fn power_table(v: &BigInt, max_degree: usize) -> Vec<BigInt> {
    let mut pows = Vec::with_capacity(max_degree + 1);
    pows.push(BigInt::one());
    for _ in 0..max_degree {
        pows.push(pows.last().unwrap() * v);
    }
    pows
}

/// Primitive-integer counting chain, member-for-member a positive multiple
/// of the canonical chain of [`sturm_chain`].
#[derive(Debug, Clone)]
pub(crate) struct IntChain {
    members: Vec<IntPoly>,
}

impl IntChain {
    pub(crate) fn new(p: &Poly) -> Result<IntChain> {
        let first = IntPoly::from_poly(p).ok_or_else(|| {
            Error::RootFinding("the zero polynomial has no sign chain".into())
        })?;
        let mut members = vec![first];
        if let Some(derivative) = members[0].derivative() {
            members.push(derivative);
            loop {
                let previous = &members[members.len() - 2];
                let current = &members[members.len() - 1];
                match pseudo_rem_negated(previous, current) {
                    Some(next) => members.push(next),
                    None => break,
                }
            }
        }
        Ok(IntChain { members })
    }

    pub(crate) fn first(&self) -> &IntPoly {
        &self.members[0]
    }

    /// The input is squarefree exactly when the chain terminates in a
    /// constant (the last member is a multiple of gcd(p, p′)).
    pub(crate) fn is_squarefree(&self) -> bool {
        self.members.last().unwrap().degree() == 0
    }

    /// Number of sign variations of the chain at t, zeros skipped.
    pub(crate) fn variations_at(&self, t: &Rational) -> usize {
        let v_pows = power_table(t.denom(), self.members[0].degree());
        let mut variations = 0;
        let mut last = Sign::NoSign;
        for member in &self.members {
            let sign = member.sign_at_scaled(t.numer(), &v_pows);
            if sign == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && sign != last {
                variations += 1;
            }
            last = sign;
        }
        variations
    }

    /// Distinct real roots in (lo, hi], from endpoint variation counts.
    pub(crate) fn count_half_open(&self, lo: &Rational, hi: &Rational) -> usize {
        let at_lo = self.variations_at(lo);
        let at_hi = self.variations_at(hi);
        debug_assert!(at_lo >= at_hi, "variation count must be nonincreasing");
        at_lo - at_hi
    }
}

/// Positive multiple of −rem(a, b), primitive; `None` when the remainder is
/// zero. Works entirely in integers: the divisor is sign-normalized to a
/// positive leading coefficient and the dividend is scaled by that positive
/// leading coefficient at each cancellation, so the accumulated factor is
/// strictly positive and signs are preserved.
fn pseudo_rem_negated(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let divisor_degree = b.degree();
    let negate_divisor = b.coeffs[0].is_negative();
    let divisor: Vec<BigInt> = if negate_divisor {
        b.coeffs.iter().map(|c| -c).collect()
    } else {
        b.coeffs.clone()
    };
    let lead = divisor[0].clone();

    let mut rem = a.coeffs.clone();
    while rem.len() > divisor_degree {
        let top = rem[0].clone();
        // l·rem − top·x^(deg rem − deg divisor)·divisor; the leading terms
        // cancel by construction, so the new vector starts one degree lower.
        let mut next: Vec<BigInt> = rem[1..].iter().map(|c| c * &lead).collect();
        for (j, c) in divisor.iter().enumerate().skip(1) {
            next[j - 1] -= &top * c;
        }
        let leading_zeros = next.iter().take_while(|c| c.is_zero()).count();
        next.drain(..leading_zeros);
        rem = next;
        if rem.is_empty() {
            return None;
        }
    }
    for c in &mut rem {
        *c = -&*c;
    }
    Some(IntPoly::primitive(rem))
}

/// Exact number of distinct real roots of p in the half-open interval
/// (lo, hi].
///
/// A *simple* root at an endpoint is correctly excluded (at lo) or included
/// (at hi). A repeated root sitting exactly on an endpoint would corrupt
/// the variation count, so that case is rejected with the endpoint named.
pub fn count_roots(p: &Poly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::RootFinding(format!(
            "empty interval ({}, {}]",
            format_rational(lo),
            format_rational(hi)
        )));
    }
    let chain = IntChain::new(p)?;
    if !chain.is_squarefree() {
        let derivative = p.derivative();
        for (name, endpoint) in [("lower", lo), ("upper", hi)] {
            if p.eval(endpoint).is_zero() && derivative.eval(endpoint).is_zero() {
                return Err(Error::BoundaryRoot {
                    endpoint: name,
                    value: format_rational(endpoint),
                });
            }
        }
    }
    Ok(chain.count_half_open(lo, hi))
}

/// One certified real root: `low < root < high` with `p(low) ≠ 0 ≠ p(high)`,
/// or an exactly known rational root (`exact`, radius 0, low = high = value).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub low: Rational,
    pub high: Rational,
    /// Midpoint of the bracket; the root itself when `exact`.
    pub value: Rational,
    /// Half-width of the bracket; |value − root| ≤ radius.
    pub radius: Rational,
    pub exact: bool,
}

impl CertifiedRoot {
    fn from_bracket(low: Rational, high: Rational) -> CertifiedRoot {
        let value = (&low + &high) / Rational::from_integer(2.into());
        let radius = (&high - &low) / Rational::from_integer(2.into());
        CertifiedRoot {
            low,
            high,
            value,
            radius,
            exact: false,
        }
    }

    fn from_exact(value: Rational) -> CertifiedRoot {
        CertifiedRoot {
            low: value.clone(),
            high: value.clone(),
            value,
            radius: Rational::zero(),
            exact: true,
        }
    }
}

/// Certified, ascending real roots of one polynomial.
#[derive(Debug, Clone)]
pub struct RootSet {
    /// Caller-chosen identifier of the source polynomial (e.g. `"D5"`).
    pub poly_id: String,
    /// Achieved refinement tolerance: every root radius is ≤ tol.
    pub tol: Rational,
    pub roots: Vec<CertifiedRoot>,
    /// Exact sum of all roots read off the codegree-1 coefficient
    /// (−c₁/lead); 0 for symmetric polynomials.
    pub sum_hint: Rational,
}

impl RootSet {
    /// Number of certified real roots.
    pub fn real_count(&self) -> usize {
        self.roots.len()
    }
}

/// A bound beyond every real root: 1 + max |cᵢ/lead| over the non-leading
/// coefficients. Errors on the zero polynomial.
pub fn root_bound(p: &Poly) -> Result<Rational> {
    let lead = p
        .leading()
        .ok_or_else(|| Error::RootFinding("the zero polynomial has no root bound".into()))?;
    let mut largest = Rational::zero();
    for c in p.coeffs().iter().skip(1) {
        let magnitude = (c / lead).abs();
        if magnitude > largest {
            largest = magnitude;
        }
    }
    Ok(largest + Rational::one())
}

/// Isolate every real root of p in the open interval (−bound, bound) into
/// pairwise-disjoint brackets (exact rational roots come out exactly).
///
/// p must be squarefree — a repeated root is reported as an error, never
/// silently merged — and must not vanish at ±bound.
pub fn isolate(p: &Poly, bound: &Rational, poly_id: &str) -> Result<RootSet> {
    if !bound.is_positive() {
        return Err(Error::RootFinding(format!(
            "search bound must be positive, got {}",
            format_rational(bound)
        )));
    }
    if p.is_zero() {
        return Err(Error::RootFinding(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    let sum_hint = if p.degree() == Some(0) {
        Rational::zero()
    } else {
        -(p.codegree_coeff(1) / p.leading().unwrap())
    };
    if p.degree() == Some(0) {
        return Ok(RootSet {
            poly_id: poly_id.to_string(),
            tol: Rational::zero(),
            roots: Vec::new(),
            sum_hint,
        });
    }
    let chain = IntChain::new(p)?;
    if !chain.is_squarefree() {
        return Err(Error::Multiplicity(format!(
            "{poly_id} has repeated roots (gcd with derivative is nonconstant)"
        )));
    }
    let lo = -bound.clone();
    let hi = bound.clone();
    for (name, endpoint) in [("lower", &lo), ("upper", &hi)] {
        if chain.first().sign_at(endpoint) == Sign::NoSign {
            return Err(Error::BoundaryRoot {
                endpoint: name,
                value: format_rational(endpoint),
            });
        }
    }
    let mut roots = Vec::new();
    let at_lo = chain.variations_at(&lo);
    let at_hi = chain.variations_at(&hi);
    split(&chain, &lo, at_lo, &hi, at_hi, &mut roots);
    for root in roots.iter_mut() {
        upgrade_if_simplest_is_root(chain.first(), root)?;
    }
    let tol = roots
        .iter()
        .map(|r| r.radius.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(RootSet {
        poly_id: poly_id.to_string(),
        tol,
        roots,
        sum_hint,
    })
}

/// Recursive bisection on (lo, hi) with p(lo) ≠ 0 ≠ p(hi), carrying the
/// endpoint variation counts so each is computed once.
fn split(
    chain: &IntChain,
    lo: &Rational,
    var_lo: usize,
    hi: &Rational,
    var_hi: usize,
    out: &mut Vec<CertifiedRoot>,
) {
    let count = var_lo - var_hi;
    if count == 0 {
        return;
    }
    if count == 1 {
        // Exactly one root in (lo, hi]; hi is not a root, so the bracket is
        // genuinely open.
        out.push(CertifiedRoot::from_bracket(lo.clone(), hi.clone()));
        return;
    }
    let mid = (lo + hi) / Rational::from_integer(2.into());
    if chain.first().sign_at(&mid) == Sign::NoSign {
        // The probe hit a root exactly. Carve out a subinterval around it
        // containing no other root, emit the exact root, and recurse on the
        // two sides.
        let mut delta = (hi - lo) / Rational::from_integer(4.into());
        loop {
            let left = &mid - &delta;
            let right = &mid + &delta;
            if chain.first().sign_at(&left) != Sign::NoSign
                && chain.first().sign_at(&right) != Sign::NoSign
            {
                let var_left = chain.variations_at(&left);
                let var_right = chain.variations_at(&right);
                if var_left - var_right == 1 {
                    split(chain, lo, var_lo, &left, var_left, out);
                    out.push(CertifiedRoot::from_exact(mid));
                    split(chain, &right, var_right, hi, var_hi, out);
                    return;
                }
            }
            delta /= Rational::from_integer(2.into());
        }
    }
    let var_mid = chain.variations_at(&mid);
    split(chain, lo, var_lo, &mid, var_mid, out);
    split(chain, &mid, var_mid, hi, var_hi, out);
}

/// Probe the simplest rational inside a bracket; when it is the root, the
/// bracket collapses to an exact value. A bracket holds exactly one root,
/// so a vanishing probe point must be it.
fn upgrade_if_simplest_is_root(p: &IntPoly, root: &mut CertifiedRoot) -> Result<()> {
    if root.exact {
        return Ok(());
    }
    let candidate = simplest_in_open(&root.low, &root.high)?;
    if p.sign_at(&candidate) == Sign::NoSign {
        *root = CertifiedRoot::from_exact(candidate);
    }
    Ok(())
}

/// Shrink every bracket until its radius is ≤ tol, by sign bisection.
/// Whenever a bisection probe lands exactly on the root — or the simplest
/// rational inside the final bracket turns out to be the root — the root is
/// upgraded to exact (radius 0).
pub fn refine(p: &Poly, set: &mut RootSet, tol: &Rational) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::RootFinding(format!(
            "refinement tolerance must be positive, got {}",
            format_rational(tol)
        )));
    }
    let Some(int_poly) = IntPoly::from_poly(p) else {
        return Err(Error::RootFinding(
            "cannot refine roots of the zero polynomial".into(),
        ));
    };
    let two = Rational::from_integer(2.into());
    let width_target = tol * &two;
    for root in set.roots.iter_mut().filter(|r| !r.exact) {
        // The sign at the low end never changes: each step replaces the
        // endpoint whose sign matches the probe.
        let sign_low = int_poly.sign_at(&root.low);
        debug_assert!(sign_low != Sign::NoSign, "bracket endpoints are not roots");
        while &root.high - &root.low > width_target {
            let mid = (&root.low + &root.high) / &two;
            let sign_mid = int_poly.sign_at(&mid);
            if sign_mid == Sign::NoSign {
                *root = CertifiedRoot::from_exact(mid);
                break;
            }
            if sign_mid == sign_low {
                root.low = mid;
            } else {
                root.high = mid;
            }
        }
        if !root.exact {
            upgrade_if_simplest_is_root(&int_poly, root)?;
        }
        if !root.exact {
            root.value = (&root.low + &root.high) / &two;
            root.radius = (&root.high - &root.low) / &two;
        }
    }
    set.tol = tol.clone();
    Ok(())
}

/// Convenience: isolate within (−bound, bound) and refine to tol.
pub fn certified_roots(p: &Poly, bound: &Rational, poly_id: &str, tol: &Rational) -> Result<RootSet> {
    let mut set = isolate(p, bound, poly_id)?;
    refine(p, &mut set, tol)?;
    Ok(set)
}

/// Serialization form of a root set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSetDto {
    pub poly: String,
    pub tol: String,
    pub roots: Vec<RootDto>,
}

/// Serialization form of one certified root.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootDto {
    pub value: String,
    pub radius: String,
    pub exact: bool,
}

impl RootSetDto {
    pub fn from_root_set(set: &RootSet) -> Self {
        RootSetDto {
            poly: set.poly_id.clone(),
            tol: format_rational(&set.tol),
            roots: set
                .roots
                .iter()
                .map(|r| RootDto {
                    value: format_rational(&r.value),
                    radius: format_rational(&r.radius),
                    exact: r.exact,
                })
                .collect(),
        }
    }

    /// Reconstruct certified roots (brackets rebuilt as value ± radius).
    pub fn to_root_set(&self) -> Result<RootSet> {
        let tol = parse_rational(&self.tol)?;
        let mut roots = Vec::with_capacity(self.roots.len());
        for r in &self.roots {
            let value = parse_rational(&r.value)?;
            let radius = parse_rational(&r.radius)?;
            roots.push(if r.exact {
                CertifiedRoot::from_exact(value)
            } else {
                CertifiedRoot {
                    low: &value - &radius,
                    high: &value + &radius,
                    value,
                    radius,
                    exact: false,
                }
            });
        }
        Ok(RootSet {
            poly_id: self.poly.clone(),
            tol,
            roots,
            sum_hint: Rational::zero(),
        })
    }
}

/// Pretty JSON for a root set (trailing newline, deterministic).
pub fn root_set_to_json(set: &RootSet) -> String {
    let mut text = serde_json::to_string_pretty(&RootSetDto::from_root_set(set))
        .expect("root-set serialization cannot fail");
    text.push('\n');
    text
}

/// CSV rendering, one root per row, exact fraction columns.
pub fn root_set_to_csv(set: &RootSet) -> String {
    let mut out = String::from("index,value,radius,exact\n");
    for (i, r) in set.roots.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            format_rational(&r.value),
            format_rational(&r.radius),
            r.exact
        ));
    }
    out
}
