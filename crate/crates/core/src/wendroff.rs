//! Construction of the embedded sequence D_0, …, D_{n+k}.
//!
//! The seed pair is D_{n−1} = C_{n−1} and D_n = (x²−1)·C_{n−2}, whose zeros
//! strictly interlace for admissible λ. Below the seed, the three-term
//! recurrence D_m = x·D_{m−1} − ℓ_m·D_{m−2} is forced: ℓ_m is the difference
//! of codegree-2 coefficients of consecutive members, and each downward step
//! solves the recurrence for D_{m−2} until D_1 = x and D_0 = 1 emerge
//! exactly. Above the seed there is one degree of freedom per step — any
//! ℓ in (0, a·D_{m−1}(a)/D_{m−2}(a)) extends the sequence — resolved by
//! default with the σ-scheme: ℓ_{n+1} = a·D_n(a)/(σ·D_{n−1}(a)) once, then
//! the constant ℓ = (σ−1)a²/σ² forever. The σ-scheme pins the evaluation
//! ratio D_m(a)/D_{m−1}(a) at a(σ−1)/σ for every m ≥ n+1, which keeps all
//! zeros inside (−a, a).
//!
//! Everything here is exact rational arithmetic; no tolerance is consumed
//! until roots are extracted.

use std::collections::BTreeMap;

use num::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MonicPoly, Poly, PolyDto};
use crate::rational::{format_rational, parse_rational, rat, Rational};
use crate::ultraspherical::{interval_radius, IntervalRadius, RadiusMode, UltraParams, UltraTable};

/// Validated construction parameters.
#[derive(Debug, Clone)]
pub struct WendroffConfig {
    n: usize,
    k: usize,
    params: UltraParams,
    sigma: Rational,
    radius_mode: RadiusMode,
    radius: IntervalRadius,
    tol: Rational,
}

/// Default root-refinement tolerance, 10⁻⁶ (six significant figures).
pub fn default_tolerance() -> Rational {
    rat(1, 1_000_000)
}

impl WendroffConfig {
    /// Validate and resolve a full parameter set.
    ///
    /// `tol` is the downstream root-refinement target; `None` selects the
    /// default 10⁻⁶. The radius mode is resolved to a concrete radius here,
    /// so an inadmissible explicit radius fails fast.
    pub fn new(
        n: usize,
        k: usize,
        lambda: Rational,
        sigma: Rational,
        radius_mode: RadiusMode,
        tol: Option<Rational>,
    ) -> Result<Self> {
        let params = UltraParams::new(lambda)?;
        if n < 5 {
            return Err(Error::ParameterDomain(format!("n must be at least 5, got {n}")));
        }
        if k < 1 {
            return Err(Error::ParameterDomain("k must be at least 1".into()));
        }
        if sigma <= Rational::one() {
            return Err(Error::ParameterDomain(format!(
                "sigma must exceed 1, got {}",
                format_rational(&sigma)
            )));
        }
        let tol = tol.unwrap_or_else(default_tolerance);
        if !tol.is_positive() {
            return Err(Error::ParameterDomain(format!(
                "tolerance must be positive, got {}",
                format_rational(&tol)
            )));
        }
        let radius = interval_radius(&params, &radius_mode, n)?;
        Ok(WendroffConfig {
            n,
            k,
            params,
            sigma,
            radius_mode,
            radius,
            tol,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn params(&self) -> &UltraParams {
        &self.params
    }

    pub fn lambda(&self) -> &Rational {
        self.params.lambda()
    }

    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }

    pub fn radius_mode(&self) -> &RadiusMode {
        &self.radius_mode
    }

    pub fn radius(&self) -> &IntervalRadius {
        &self.radius
    }

    /// The containment radius value a.
    pub fn a(&self) -> &Rational {
        &self.radius.value
    }

    pub fn tol(&self) -> &Rational {
        &self.tol
    }
}

/// The constructed sequence: D_0..D_{n+k}, every recurrence coefficient ℓ_m
/// (m = 2..n downward, m = n+1..n+k upward), and the resolved radius.
#[derive(Debug, Clone)]
pub struct WendroffSequence {
    config: WendroffConfig,
    polys: Vec<MonicPoly>,
    ells: BTreeMap<usize, Rational>,
}

impl WendroffSequence {
    pub fn config(&self) -> &WendroffConfig {
        &self.config
    }

    /// D_m for 0 ≤ m ≤ n+k.
    pub fn poly(&self, m: usize) -> Option<&MonicPoly> {
        self.polys.get(m)
    }

    /// All members, index = degree.
    pub fn polys(&self) -> &[MonicPoly] {
        &self.polys
    }

    /// Recurrence coefficient ℓ_m (None for m < 2 — none exists).
    pub fn ell(&self, m: usize) -> Option<&Rational> {
        self.ells.get(&m)
    }

    pub fn ells(&self) -> &BTreeMap<usize, Rational> {
        &self.ells
    }

    /// Largest constructed degree, n+k.
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn a(&self) -> &Rational {
        self.config.a()
    }

    /// Serialization form.
    pub fn to_file(&self) -> SequenceFile {
        SequenceFile {
            config: SequenceConfigDto {
                n: self.config.n as u64,
                k: self.config.k as u64,
                lambda: format_rational(self.config.lambda()),
                sigma: format_rational(self.config.sigma()),
                a_mode: self.config.radius_mode().to_string(),
                tol: format_rational(self.config.tol()),
            },
            a: format_rational(self.a()),
            ells: self
                .ells
                .iter()
                .map(|(m, ell)| (*m as u64, format_rational(ell)))
                .collect(),
            polys: self.polys.iter().map(|p| PolyDto::from_poly(p)).collect(),
        }
    }

    /// Canonical pretty-printed JSON (deterministic for a fixed sequence).
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_file())
            .expect("sequence serialization cannot fail");
        text.push('\n');
        text
    }
}

/// On-disk form of a sequence:
/// `{"config": {...}, "a": "p/q", "ells": {"2": "p/q", ...}, "polys": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceFile {
    pub config: SequenceConfigDto,
    pub a: String,
    pub ells: BTreeMap<u64, String>,
    pub polys: Vec<PolyDto>,
}

/// Parameters block of [`SequenceFile`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceConfigDto {
    pub n: u64,
    pub k: u64,
    pub lambda: String,
    pub sigma: String,
    pub a_mode: String,
    pub tol: String,
}

impl SequenceFile {
    /// Parse the JSON form. This is deliberately lenient — it validates
    /// syntax, not sequence invariants — so that externally produced or
    /// tampered files can still be loaded and then *verified* honestly.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("sequence file is not valid JSON: {e}")))
    }
}

impl WendroffSequence {
    /// Reconstruct a sequence from its serialization form.
    ///
    /// This enforces *shape*: parameters must be admissible, the stored
    /// radius must match the declared mode, every polynomial must be monic
    /// of the degree its position claims, and the coefficient map must cover
    /// exactly m = 2..n+k. Semantic properties (coefficient positivity,
    /// symmetry, zero orderings) are intentionally **not** enforced here, so
    /// a tampered file loads and is then failed honestly by verification.
    pub fn from_file(file: &SequenceFile) -> Result<WendroffSequence> {
        let n = usize::try_from(file.config.n)
            .map_err(|_| Error::Parse("n does not fit a machine integer".into()))?;
        let k = usize::try_from(file.config.k)
            .map_err(|_| Error::Parse("k does not fit a machine integer".into()))?;
        let lambda = parse_rational(&file.config.lambda)?;
        let sigma = parse_rational(&file.config.sigma)?;
        let radius_mode: RadiusMode = file.config.a_mode.parse()?;
        let tol = parse_rational(&file.config.tol)?;
        let config = WendroffConfig::new(n, k, lambda, sigma, radius_mode, Some(tol))?;
        let stored_a = parse_rational(&file.a)?;
        if &stored_a != config.a() {
            return Err(Error::Parse(format!(
                "stored radius {} does not match mode {} (expected {})",
                format_rational(&stored_a),
                config.radius_mode(),
                format_rational(config.a())
            )));
        }
        let expected_count = n + k + 1;
        if file.polys.len() != expected_count {
            return Err(Error::Parse(format!(
                "expected {expected_count} polynomials for n={n}, k={k}, found {}",
                file.polys.len()
            )));
        }
        let mut polys = Vec::with_capacity(expected_count);
        for (m, dto) in file.polys.iter().enumerate() {
            let p = dto.to_poly()?;
            if p.degree() != Some(m) {
                return Err(Error::Parse(format!(
                    "polynomial at position {m} has degree {:?}, expected {m}",
                    p.degree()
                )));
            }
            let monic = MonicPoly::new(p).map_err(|_| {
                Error::Parse(format!("polynomial at position {m} is not monic"))
            })?;
            polys.push(monic);
        }
        let mut ells = BTreeMap::new();
        for (key, value) in &file.ells {
            let m = usize::try_from(*key)
                .map_err(|_| Error::Parse("coefficient index does not fit a machine integer".into()))?;
            ells.insert(m, parse_rational(value)?);
        }
        let expected_keys: Vec<usize> = (2..=n + k).collect();
        let found_keys: Vec<usize> = ells.keys().copied().collect();
        if found_keys != expected_keys {
            return Err(Error::Parse(format!(
                "coefficient map must cover exactly m = 2..{}, found {found_keys:?}",
                n + k
            )));
        }
        Ok(WendroffSequence {
            config,
            polys,
            ells,
        })
    }
}

/// Seed pair of the construction: (D_{n−1}, D_n) = (C_{n−1}, (x²−1)·C_{n−2}).
///
/// Both are monic and symmetric; D_n vanishes at ±1 by the (x²−1) factor.
pub fn seed_pair(n: usize, table: &mut UltraTable) -> Result<(MonicPoly, MonicPoly)> {
    if n < 5 {
        return Err(Error::ParameterDomain(format!(
            "seed degree n must be at least 5, got {n}"
        )));
    }
    table.ensure(n - 1);
    let d_prev = table.poly(n - 1).clone();
    let c_low = table.poly(n - 2).clone();
    let product = c_low
        .mul_x()
        .mul_x()
        .as_poly()
        .axpy(c_low.as_poly(), &-Rational::one());
    let d_top = MonicPoly::new(product).expect("(x²−1)·monic is monic");
    debug_assert_eq!(d_top.degree(), n);
    debug_assert!(d_top.is_symmetric());
    Ok((d_prev, d_top))
}

/// One downward step: from (D_m, D_{m−1}) recover ℓ_m and D_{m−2}.
///
/// ℓ_m is the codegree-2 coefficient of D_{m−1} minus that of D_m (taking
/// the coefficient as 0 below degree 2), and
/// D_{m−2} = −(1/ℓ_m)·(D_m − x·D_{m−1}). A nonpositive ℓ_m or a result of
/// the wrong degree aborts: the downward coefficients of a genuine embedded
/// sequence are provably positive, so a violation means the inputs are not
/// such a pair.
pub fn downward_step(d_hi: &MonicPoly, d_mid: &MonicPoly) -> Result<(Rational, MonicPoly)> {
    let m = d_hi.degree();
    if m < 2 || d_mid.degree() + 1 != m {
        return Err(Error::Construction {
            degree: m,
            detail: format!(
                "downward step needs consecutive degrees m >= 2, got {} and {}",
                m,
                d_mid.degree()
            ),
        });
    }
    let ell = d_mid.codegree_coeff(2) - d_hi.codegree_coeff(2);
    if !ell.is_positive() {
        return Err(Error::Construction {
            degree: m,
            detail: format!(
                "recurrence coefficient l_{m} = {} is not positive; \
                 the input pair does not extend to an embedded sequence",
                format_rational(&ell)
            ),
        });
    }
    let difference = d_hi.as_poly().axpy(&d_mid.as_poly().mul_x(), &-Rational::one());
    let low = difference.scale(&-ell.recip());
    if low.degree() != Some(m - 2) {
        return Err(Error::Construction {
            degree: m,
            detail: format!(
                "downward step produced degree {:?} where {} was required",
                low.degree(),
                m - 2
            ),
        });
    }
    let low = MonicPoly::new(low).map_err(|_| Error::Construction {
        degree: m,
        detail: "downward step produced a non-monic polynomial".into(),
    })?;
    if !low.is_symmetric() {
        return Err(Error::Construction {
            degree: m,
            detail: "downward step produced an asymmetric polynomial".into(),
        });
    }
    Ok((ell, low))
}

/// First upward step: ℓ_{n+1} = a·D_n(a) / (σ·D_{n−1}(a)) and
/// D_{n+1} = x·D_n − ℓ_{n+1}·D_{n−1}.
///
/// Requires both seed evaluations at a to be strictly positive, i.e. a must
/// exceed the largest zero of both polynomials — otherwise the radius is
/// invalid for this λ and the step errors. σ > 1 then places ℓ_{n+1}
/// strictly inside the admissible interval (0, a·D_n(a)/D_{n−1}(a)).
pub fn upward_first(
    d_top: &MonicPoly,
    d_prev: &MonicPoly,
    a: &Rational,
    sigma: &Rational,
) -> Result<(Rational, MonicPoly)> {
    let degree = d_top.degree() + 1;
    if sigma <= &Rational::one() {
        return Err(Error::ParameterDomain(format!(
            "sigma must exceed 1, got {}",
            format_rational(sigma)
        )));
    }
    let top_at_a = d_top.eval(a);
    let prev_at_a = d_prev.eval(a);
    if !top_at_a.is_positive() || !prev_at_a.is_positive() {
        return Err(Error::Construction {
            degree,
            detail: format!(
                "invalid radius a = {}: need positive evaluations but \
                 D_{}(a) = {} and D_{}(a) = {}; a must strictly exceed every zero",
                format_rational(a),
                d_top.degree(),
                format_rational(&top_at_a),
                d_prev.degree(),
                format_rational(&prev_at_a),
            ),
        });
    }
    let ell = a * &top_at_a / (sigma * &prev_at_a);
    let admissible_sup = a * &top_at_a / &prev_at_a;
    if !(ell.is_positive() && ell < admissible_sup) {
        return Err(Error::Construction {
            degree,
            detail: format!(
                "l_{degree} = {} fell outside the admissible interval (0, {})",
                format_rational(&ell),
                format_rational(&admissible_sup)
            ),
        });
    }
    let next = extend(d_top, d_prev, &ell);
    Ok((ell, next))
}

/// Later upward steps: the constant coefficient ℓ = (σ−1)a²/σ².
///
/// Identical at every application; membership in the admissible interval
/// (0, a·D_{m−1}(a)/D_{m−2}(a)) is re-checked exactly.
pub fn upward_rest(
    d_prev: &MonicPoly,
    d_prev_prev: &MonicPoly,
    a: &Rational,
    sigma: &Rational,
) -> Result<(Rational, MonicPoly)> {
    let degree = d_prev.degree() + 1;
    if sigma <= &Rational::one() {
        return Err(Error::ParameterDomain(format!(
            "sigma must exceed 1, got {}",
            format_rational(sigma)
        )));
    }
    if !a.is_positive() {
        return Err(Error::ParameterDomain(format!(
            "radius must be positive, got {}",
            format_rational(a)
        )));
    }
    let sigma_minus_one = sigma - Rational::one();
    let ell = &sigma_minus_one * a * a / (sigma * sigma);
    let prev_at_a = d_prev.eval(a);
    let prev_prev_at_a = d_prev_prev.eval(a);
    if !prev_prev_at_a.is_positive() || ell >= a * &prev_at_a / &prev_prev_at_a {
        return Err(Error::Construction {
            degree,
            detail: format!(
                "l_{degree} = {} fell outside the admissible interval",
                format_rational(&ell)
            ),
        });
    }
    let next = extend(d_prev, d_prev_prev, &ell);
    Ok((ell, next))
}

/// Upward step with a caller-chosen coefficient: any ℓ strictly inside
/// (0, a·D_{m−1}(a)/D_{m−2}(a)) extends the sequence one degree.
pub fn upward_custom(
    d_prev: &MonicPoly,
    d_prev_prev: &MonicPoly,
    a: &Rational,
    ell: &Rational,
) -> Result<(Rational, MonicPoly)> {
    let degree = d_prev.degree() + 1;
    let prev_at_a = d_prev.eval(a);
    let prev_prev_at_a = d_prev_prev.eval(a);
    if !prev_at_a.is_positive() || !prev_prev_at_a.is_positive() {
        return Err(Error::Construction {
            degree,
            detail: format!(
                "invalid radius a = {}: need positive evaluations but \
                 D_{}(a) = {} and D_{}(a) = {}",
                format_rational(a),
                d_prev.degree(),
                format_rational(&prev_at_a),
                d_prev_prev.degree(),
                format_rational(&prev_prev_at_a),
            ),
        });
    }
    let admissible_sup = a * &prev_at_a / &prev_prev_at_a;
    if !(ell.is_positive() && *ell < admissible_sup) {
        return Err(Error::ParameterDomain(format!(
            "custom coefficient l_{degree} = {} must lie strictly inside (0, {})",
            format_rational(ell),
            format_rational(&admissible_sup)
        )));
    }
    let next = extend(d_prev, d_prev_prev, ell);
    Ok((ell.clone(), next))
}

/// x·p − ℓ·q, wrapped monic (the recurrence's forward form).
fn extend(p: &MonicPoly, q: &MonicPoly, ell: &Rational) -> MonicPoly {
    let next = p.mul_x().as_poly().axpy(q.as_poly(), &-ell);
    MonicPoly::new(next).expect("x·monic − l·(lower degree) is monic")
}

/// Run the complete construction for a validated config.
pub fn build(config: &WendroffConfig) -> Result<WendroffSequence> {
    build_inner(config, None)
}

/// Run the construction with caller-chosen upward coefficients, one per
/// upward step (so exactly k of them), each validated against its
/// admissible interval.
pub fn build_with_custom_ells(
    config: &WendroffConfig,
    ells: &[Rational],
) -> Result<WendroffSequence> {
    if ells.len() != config.k {
        return Err(Error::ParameterDomain(format!(
            "expected {} upward coefficients (one per step), got {}",
            config.k,
            ells.len()
        )));
    }
    build_inner(config, Some(ells))
}

fn build_inner(config: &WendroffConfig, custom: Option<&[Rational]>) -> Result<WendroffSequence> {
    let n = config.n;
    let total = n + config.k;
    let mut table = UltraTable::new(config.params.clone());
    let (d_prev, d_top) = seed_pair(n, &mut table)?;

    let mut slots: Vec<Option<MonicPoly>> = vec![None; total + 1];
    slots[n - 1] = Some(d_prev);
    slots[n] = Some(d_top);
    let mut ells: BTreeMap<usize, Rational> = BTreeMap::new();

    // Downward: each step consumes (D_m, D_{m−1}) and yields (ℓ_m, D_{m−2}).
    for m in (2..=n).rev() {
        let hi = slots[m].as_ref().expect("filled by seed or previous step");
        let mid = slots[m - 1].as_ref().expect("filled by seed or previous step");
        let (ell, low) = downward_step(hi, mid)?;
        ells.insert(m, ell);
        slots[m - 2] = Some(low);
    }

    // The descent must terminate at the exact base pair.
    let d0 = slots[0].as_ref().expect("descent fills degree 0");
    if d0.as_poly() != &Poly::one() {
        return Err(Error::Construction {
            degree: 0,
            detail: format!("descent terminated at {} instead of 1", d0.as_poly()),
        });
    }
    let d1 = slots[1].as_ref().expect("descent fills degree 1");
    if d1.as_poly() != &Poly::x() {
        return Err(Error::Construction {
            degree: 1,
            detail: format!("descent terminated at {} instead of x", d1.as_poly()),
        });
    }

    // Upward: first step uses the σ-rule (or the first custom coefficient),
    // later steps the constant rule (or further custom coefficients).
    let a = config.a();
    for m in (n + 1)..=total {
        let prev = slots[m - 1].as_ref().expect("previous degree filled");
        let prev_prev = slots[m - 2].as_ref().expect("previous degree filled");
        let (ell, next) = match custom {
            Some(choices) => upward_custom(prev, prev_prev, a, &choices[m - n - 1])?,
            None if m == n + 1 => upward_first(prev, prev_prev, a, &config.sigma)?,
            None => upward_rest(prev, prev_prev, a, &config.sigma)?,
        };
        ells.insert(m, ell);
        slots[m] = Some(next);
    }

    let polys: Vec<MonicPoly> = slots
        .into_iter()
        .map(|slot| slot.expect("all degrees constructed"))
        .collect();
    debug_assert!(polys
        .iter()
        .enumerate()
        .all(|(m, p)| p.degree() == m && p.is_symmetric()));

    Ok(WendroffSequence {
        config: config.clone(),
        polys,
        ells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::ultraspherical::RadiusKind;
    use num::Zero;

    fn example_config() -> WendroffConfig {
        WendroffConfig::new(5, 5, rat(-5, 4), rat_int(2), RadiusMode::Auto, None).unwrap()
    }

    fn poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_descending(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn config_validation() {
        assert!(WendroffConfig::new(4, 5, rat(-5, 4), rat_int(2), RadiusMode::Auto, None).is_err());
        assert!(WendroffConfig::new(5, 0, rat(-5, 4), rat_int(2), RadiusMode::Auto, None).is_err());
        assert!(WendroffConfig::new(5, 5, rat(-5, 4), rat_int(1), RadiusMode::Auto, None).is_err());
        assert!(WendroffConfig::new(5, 5, rat(-1, 2), rat_int(2), RadiusMode::Auto, None).is_err());
        assert!(
            WendroffConfig::new(5, 5, rat(-5, 4), rat_int(2), RadiusMode::Auto, Some(rat_int(0)))
                .is_err()
        );
        let config = example_config();
        assert_eq!(config.a(), &rat_int(2));
        assert_eq!(config.radius().kind, RadiusKind::A2);
        assert_eq!(config.tol(), &rat(1, 1_000_000));
    }

    #[test]
    fn seed_matches_hand_values() {
        let params = UltraParams::new(rat(-5, 4)).unwrap();
        let mut table = UltraTable::new(params);
        let (d4, d5) = seed_pair(5, &mut table).unwrap();
        assert_eq!(
            d4.as_poly(),
            &poly(&[(1, 1), (0, 1), (-12, 7), (0, 1), (4, 7)])
        );
        assert_eq!(
            d5.as_poly(),
            &poly(&[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)])
        );
        // The top seed vanishes at ±1 by construction.
        assert!(d5.eval(&rat_int(1)).is_zero());
        assert!(d5.eval(&rat_int(-1)).is_zero());
        assert!(seed_pair(4, &mut UltraTable::new(UltraParams::new(rat(-5, 4)).unwrap())).is_err());
    }

    #[test]
    fn seed_general_lambda_closed_form() {
        // D₅ = x⁵ − ((2λ+7)/(2λ+4))x³ + (3/(2λ+4))x, checked at λ = −3/4.
        let params = UltraParams::new(rat(-3, 4)).unwrap();
        let mut table = UltraTable::new(params);
        let (_, d5) = seed_pair(5, &mut table).unwrap();
        let lambda = rat(-3, 4);
        let denom = &lambda * rat_int(2) + rat_int(4);
        let want = Poly::from_descending(vec![
            rat_int(1),
            rat_int(0),
            -(&lambda * rat_int(2) + rat_int(7)) / &denom,
            rat_int(0),
            rat_int(3) / &denom,
            rat_int(0),
        ]);
        assert_eq!(d5.as_poly(), &want);
    }

    #[test]
    fn downward_steps_match_hand_values() {
        let params = UltraParams::new(rat(-5, 4)).unwrap();
        let mut table = UltraTable::new(params);
        let (d4, d5) = seed_pair(5, &mut table).unwrap();
        let (ell5, d3) = downward_step(&d5, &d4).unwrap();
        assert_eq!(ell5, rat(9, 7));
        assert_eq!(d3.as_poly(), &poly(&[(1, 1), (0, 1), (-10, 9), (0, 1)]));
        let (ell4, d2) = downward_step(&d4, &d3).unwrap();
        assert_eq!(ell4, rat(38, 63));
        assert_eq!(d2.as_poly(), &poly(&[(1, 1), (0, 1), (-18, 19)]));
        let (ell3, d1) = downward_step(&d3, &d2).unwrap();
        assert_eq!(ell3, rat(28, 171));
        assert_eq!(d1.as_poly(), &Poly::x());
        let (ell2, d0) = downward_step(&d2, &d1).unwrap();
        assert_eq!(ell2, rat(18, 19));
        assert_eq!(d0.as_poly(), &Poly::one());
    }

    #[test]
    fn downward_step_rejects_nonpositive_ell() {
        // In the quasi-orthogonal range the classical family's own m = 2
        // coefficient is negative (b₂ = −2 at λ = −5/4): feeding (C₂, C₁)
        // into a downward step must be rejected, since the step would imply
        // ℓ₂ = β₂(C₁) − β₂(C₂) = 0 − 2 = −2 ≤ 0.
        let params = UltraParams::new(rat(-5, 4)).unwrap();
        let mut table = UltraTable::new(params);
        table.ensure(2);
        let c2 = table.poly(2).clone();
        let c1 = table.poly(1).clone();
        let err = downward_step(&c2, &c1).unwrap_err();
        match err {
            Error::Construction { degree, detail } => {
                assert_eq!(degree, 2);
                assert!(detail.contains("not positive"), "{detail}");
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn upward_first_matches_hand_values() {
        let params = UltraParams::new(rat(-5, 4)).unwrap();
        let mut table = UltraTable::new(params);
        let (d4, d5) = seed_pair(5, &mut table).unwrap();
        // D₅(2) = 12, D₄(2) = 68/7 → ℓ₆ = 2·12/(2·68/7) = 21/17.
        assert_eq!(d5.eval(&rat_int(2)), rat_int(12));
        assert_eq!(d4.eval(&rat_int(2)), rat(68, 7));
        let (ell6, d6) = upward_first(&d5, &d4, &rat_int(2), &rat_int(2)).unwrap();
        assert_eq!(ell6, rat(21, 17));
        assert_eq!(
            d6.as_poly(),
            &poly(&[(1, 1), (0, 1), (-72, 17), (0, 1), (70, 17), (0, 1), (-12, 17)])
        );
        // D₆(a) = a·D₅(a)·(1 − 1/σ) at a=2, σ=2 → 12.
        assert_eq!(d6.eval(&rat_int(2)), rat_int(12));
    }

    #[test]
    fn upward_first_rejects_degenerate_radius() {
        // At a = 1 the top seed vanishes, so the σ-rule would give ℓ = 0;
        // the radius is rejected as invalid for the scheme.
        let params = UltraParams::new(rat(-5, 4)).unwrap();
        let mut table = UltraTable::new(params);
        let (d4, d5) = seed_pair(5, &mut table).unwrap();
        let err = upward_first(&d5, &d4, &rat_int(1), &rat_int(2)).unwrap_err();
        match err {
            Error::Construction { degree, .. } => assert_eq!(degree, 6),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn upward_rest_constant_coefficient() {
        // a=2, σ=2 → ℓ = 1 for every later step; a=10/9, σ=2 → 25/81.
        let seq = build(&example_config()).unwrap();
        for m in 7..=10 {
            assert_eq!(seq.ell(m), Some(&rat_int(1)));
        }
        let config =
            WendroffConfig::new(5, 3, rat(-3, 4), rat_int(2), RadiusMode::Auto, None).unwrap();
        assert_eq!(config.a(), &rat(10, 9));
        let seq = build(&config).unwrap();
        assert_eq!(seq.ell(7), Some(&rat(25, 81)));
        assert_eq!(seq.ell(8), Some(&rat(25, 81)));
    }

    #[test]
    fn build_reproduces_the_full_example_sequence() {
        let seq = build(&example_config()).unwrap();
        assert_eq!(seq.max_degree(), 10);
        let expected: [&[(i64, i64)]; 11] = [
            &[(1, 1)],
            &[(1, 1), (0, 1)],
            &[(1, 1), (0, 1), (-18, 19)],
            &[(1, 1), (0, 1), (-10, 9), (0, 1)],
            &[(1, 1), (0, 1), (-12, 7), (0, 1), (4, 7)],
            &[(1, 1), (0, 1), (-3, 1), (0, 1), (2, 1), (0, 1)],
            &[(1, 1), (0, 1), (-72, 17), (0, 1), (70, 17), (0, 1), (-12, 17)],
            &[(1, 1), (0, 1), (-89, 17), (0, 1), (121, 17), (0, 1), (-46, 17), (0, 1)],
            &[
                (1, 1),
                (0, 1),
                (-106, 17),
                (0, 1),
                (193, 17),
                (0, 1),
                (-116, 17),
                (0, 1),
                (12, 17),
            ],
            &[
                (1, 1),
                (0, 1),
                (-123, 17),
                (0, 1),
                (282, 17),
                (0, 1),
                (-237, 17),
                (0, 1),
                (58, 17),
                (0, 1),
            ],
            &[
                (1, 1),
                (0, 1),
                (-140, 17),
                (0, 1),
                (388, 17),
                (0, 1),
                (-430, 17),
                (0, 1),
                (174, 17),
                (0, 1),
                (-12, 17),
            ],
        ];
        for (m, want) in expected.iter().enumerate() {
            assert_eq!(seq.poly(m).unwrap().as_poly(), &poly(want), "degree {m}");
        }
        let expected_ells = [
            (2, rat(18, 19)),
            (3, rat(28, 171)),
            (4, rat(38, 63)),
            (5, rat(9, 7)),
            (6, rat(21, 17)),
            (7, rat_int(1)),
            (8, rat_int(1)),
            (9, rat_int(1)),
            (10, rat_int(1)),
        ];
        assert_eq!(seq.ells().len(), expected_ells.len());
        for (m, want) in expected_ells {
            assert_eq!(seq.ell(m), Some(&want), "l_{m}");
        }
    }

    #[test]
    fn ratio_fixed_point_above_the_seed() {
        // D_m(a)/D_{m−1}(a) = a(σ−1)/σ exactly for every m ≥ n+1.
        for (lambda, sigma) in [
            (rat(-5, 4), rat_int(2)),
            (rat(-3, 4), rat(3, 2)),
            (rat(-9, 8), rat_int(3)),
        ] {
            let config =
                WendroffConfig::new(5, 6, lambda, sigma.clone(), RadiusMode::Auto, None).unwrap();
            let seq = build(&config).unwrap();
            let a = seq.a().clone();
            let want = &a * (&sigma - Rational::one()) / &sigma;
            for m in 6..=11 {
                let ratio = seq.poly(m).unwrap().eval(&a) / seq.poly(m - 1).unwrap().eval(&a);
                assert_eq!(ratio, want, "ratio at degree {m}");
            }
        }
    }

    #[test]
    fn custom_upward_coefficients() {
        let config = example_config();
        // The σ-scheme's own coefficients, fed back as custom choices,
        // rebuild the identical sequence.
        let standard = build(&config).unwrap();
        let ells: Vec<Rational> = (6..=10).map(|m| standard.ell(m).unwrap().clone()).collect();
        let custom = build_with_custom_ells(&config, &ells).unwrap();
        assert_eq!(custom.polys(), standard.polys());

        // A coefficient outside (0, sup) is rejected.
        let mut bad = ells.clone();
        bad[0] = rat_int(100);
        assert!(build_with_custom_ells(&config, &bad).is_err());
        let mut bad = ells.clone();
        bad[2] = rat_int(0);
        assert!(build_with_custom_ells(&config, &bad).is_err());
        // Wrong count is rejected.
        assert!(build_with_custom_ells(&config, &ells[..3]).is_err());

        // A different admissible choice builds fine and stays monic/symmetric.
        let mut alt = ells;
        alt[1] = rat(1, 2);
        let seq = build_with_custom_ells(&config, &alt).unwrap();
        assert_eq!(seq.ell(7), Some(&rat(1, 2)));
        assert!(seq.polys().iter().all(|p| p.is_symmetric()));
    }

    #[test]
    fn sequence_json_round_trip() {
        let seq = build(&example_config()).unwrap();
        let json = seq.to_json();
        let file = SequenceFile::from_json(&json).unwrap();
        assert_eq!(file.config.n, 5);
        assert_eq!(file.config.k, 5);
        assert_eq!(file.config.lambda, "-5/4");
        assert_eq!(file.a, "2");
        assert_eq!(file.ells.get(&5), Some(&"9/7".to_string()));
        assert_eq!(file.polys.len(), 11);
        assert_eq!(file.polys[2].coeffs, vec!["1", "0", "-18/19"]);
        // Determinism: serializing the parsed form reproduces the bytes.
        let mut round = serde_json::to_string_pretty(&file).unwrap();
        round.push('\n');
        assert_eq!(round, json);
    }

    #[test]
    fn sequence_reconstruction_from_file() {
        let seq = build(&example_config()).unwrap();
        let file = seq.to_file();
        let back = WendroffSequence::from_file(&file).unwrap();
        assert_eq!(back.polys(), seq.polys());
        assert_eq!(back.ells(), seq.ells());
        assert_eq!(back.a(), seq.a());

        // A sign-flipped coefficient still loads (semantic checks are the
        // verifier's job), carrying the tampered value through.
        let mut tampered = file.clone();
        tampered.ells.insert(7, "-1".to_string());
        let loaded = WendroffSequence::from_file(&tampered).unwrap();
        assert_eq!(loaded.ell(7), Some(&rat(-1, 1)));

        // Structural damage is rejected at load: wrong radius, non-monic
        // member, wrong member count, gap in the coefficient map.
        let mut bad = file.clone();
        bad.a = "3/2".to_string();
        assert!(matches!(
            WendroffSequence::from_file(&bad),
            Err(Error::Parse(_))
        ));

        let mut bad = file.clone();
        bad.polys[4].coeffs[0] = "2".to_string();
        assert!(matches!(
            WendroffSequence::from_file(&bad),
            Err(Error::Parse(_))
        ));

        let mut bad = file.clone();
        bad.polys.pop();
        assert!(matches!(
            WendroffSequence::from_file(&bad),
            Err(Error::Parse(_))
        ));

        let mut bad = file.clone();
        bad.ells.remove(&6);
        assert!(matches!(
            WendroffSequence::from_file(&bad),
            Err(Error::Parse(_))
        ));
    }
}
