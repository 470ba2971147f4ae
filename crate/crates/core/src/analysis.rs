//! Certified ordering, containment, and comparison checks on zero sets, and
//! whole-sequence verification.
//!
//! Every ordering verdict here is decided from certified root enclosures,
//! never from midpoint estimates: two zeros compare as soon as their
//! enclosures separate, an exact zero compares by exact arithmetic, and an
//! overlap is reported as [`Error::Undecidable`] — a refine-and-retry
//! signal, not a verdict. A decided violation always dominates an overlap
//! elsewhere in the same chain, so a `false` answer is final: refining
//! further can never flip it. [`verify_sequence`] owns the retry loop,
//! tightening the tolerance tenfold per round.

use std::cmp::Ordering;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, to_decimal_significant, Rational};
use crate::roots::{certified_roots, refine, root_bound, CertifiedRoot, RootSet};
use crate::ultraspherical::{ultraspherical, UltraParams};
use crate::wendroff::WendroffSequence;

/// Tolerance is divided by ten this many times before an undecided ordering
/// becomes a hard error.
const MAX_REFINE_ROUNDS: usize = 12;

/// One element of an ordering chain: a certified zero, or an exact rational
/// separator such as ±1 or ±a.
enum ChainItem<'a> {
    Root(&'a CertifiedRoot),
    Point(Rational),
}

impl ChainItem<'_> {
    fn low(&self) -> &Rational {
        match self {
            ChainItem::Root(r) => &r.low,
            ChainItem::Point(p) => p,
        }
    }

    fn high(&self) -> &Rational {
        match self {
            ChainItem::Root(r) => &r.high,
            ChainItem::Point(p) => p,
        }
    }

    fn is_exact(&self) -> bool {
        match self {
            ChainItem::Root(r) => r.exact,
            ChainItem::Point(_) => true,
        }
    }
}

/// Certified three-way comparison; `None` when the enclosures overlap and
/// only refinement can decide.
///
/// Exact values compare exactly. A bracketed zero lies strictly inside its
/// enclosure, so touching endpoints still separate: if `a.high == b.low`
/// and at least one side is a bracket, the underlying values differ.
fn certified_cmp(a: &ChainItem, b: &ChainItem) -> Option<Ordering> {
    if a.is_exact() && b.is_exact() {
        return Some(a.low().cmp(b.low()));
    }
    if a.high() <= b.low() {
        return Some(Ordering::Less);
    }
    if b.high() <= a.low() {
        return Some(Ordering::Greater);
    }
    None
}

enum ChainVerdict {
    Holds,
    Fails,
    Undecided,
}

/// Verdict for a strict chain: every adjacent pair must compare as `want`.
/// A decided violation dominates an undecided pair elsewhere.
fn scan_chain(items: &[ChainItem], want: Ordering) -> ChainVerdict {
    let mut undecided = false;
    for pair in items.windows(2) {
        match certified_cmp(&pair[0], &pair[1]) {
            Some(order) if order == want => {}
            Some(_) => return ChainVerdict::Fails,
            None => undecided = true,
        }
    }
    if undecided {
        ChainVerdict::Undecided
    } else {
        ChainVerdict::Holds
    }
}

fn verdict_to_result(verdict: ChainVerdict, context: &str) -> Result<bool> {
    match verdict {
        ChainVerdict::Holds => Ok(true),
        ChainVerdict::Fails => Ok(false),
        ChainVerdict::Undecided => Err(Error::Undecidable(format!(
            "{context}: certified enclosures overlap at the current tolerance; refine and retry"
        ))),
    }
}

/// True iff the zeros of the two sets strictly alternate:
/// hi₁ < lo₁ < hi₂ < lo₂ < … < hi_m (1-based, ascending), where `hi` has
/// exactly one more zero than `lo`. A count that breaks that pattern is a
/// `false` verdict, not an error. An overlap of enclosures is
/// [`Error::Undecidable`] — refine and retry.
pub fn check_interlacing(lo: &RootSet, hi: &RootSet) -> Result<bool> {
    if hi.real_count() != lo.real_count() + 1 {
        return Ok(false);
    }
    let mut items = Vec::with_capacity(hi.real_count() + lo.real_count());
    for j in 0..lo.real_count() {
        items.push(ChainItem::Root(&hi.roots[j]));
        items.push(ChainItem::Root(&lo.roots[j]));
    }
    items.push(ChainItem::Root(&hi.roots[hi.real_count() - 1]));
    verdict_to_result(
        scan_chain(&items, Ordering::Less),
        &format!("interlacing of {} and {}", lo.poly_id, hi.poly_id),
    )
}

/// Zero ordering of consecutive classical-family members in the extended
/// parameter range −3/2 < λ < −1/2, where interlacing breaks: one zero of
/// each member leaves (−1, 1) on each side, and the outermost zeros of the
/// *lower* degree are the outermost overall. With `cur` of degree n and
/// `prev` of degree n−1 (1-based indices), the verified chain is
///
/// ```text
/// prev₁ < cur₁ < −1 < cur₂ < prev₂ < … < cur_{n−1} < 1 < cur_n < prev_{n−1}
/// ```
///
/// Requires λ < −1/2 (the admissibility rules already exclude λ ≤ −3/2),
/// n ≥ 4, and full real zero counts n−1 and n.
pub fn check_quasi_ordering(
    params: &UltraParams,
    z_prev: &RootSet,
    z_cur: &RootSet,
) -> Result<bool> {
    let minus_half = -Rational::new(1.into(), 2.into());
    if params.lambda() >= &minus_half {
        return Err(Error::ParameterDomain(format!(
            "the quasi-ordering chain requires lambda in (-3/2, -1/2), got {}",
            format_rational(params.lambda())
        )));
    }
    let n = z_cur.real_count();
    if n < 4 {
        return Err(Error::ParameterDomain(format!(
            "the quasi-ordering chain requires degree at least 4, got {n} zeros"
        )));
    }
    if z_prev.real_count() != n - 1 {
        return Err(Error::ParameterDomain(format!(
            "expected consecutive zero counts {} and {n}, got {} and {n}",
            n - 1,
            z_prev.real_count()
        )));
    }
    let prev = &z_prev.roots;
    let cur = &z_cur.roots;
    let mut items = Vec::with_capacity(2 * n + 1);
    items.push(ChainItem::Root(&prev[0]));
    items.push(ChainItem::Root(&cur[0]));
    items.push(ChainItem::Point(-Rational::one()));
    for j in 2..=n - 2 {
        items.push(ChainItem::Root(&cur[j - 1]));
        items.push(ChainItem::Root(&prev[j - 1]));
    }
    items.push(ChainItem::Root(&cur[n - 2]));
    items.push(ChainItem::Point(Rational::one()));
    items.push(ChainItem::Root(&cur[n - 1]));
    items.push(ChainItem::Root(&prev[n - 2]));
    verdict_to_result(
        scan_chain(&items, Ordering::Less),
        &format!("quasi-ordering of {} and {}", z_prev.poly_id, z_cur.poly_id),
    )
}

/// Certified sign of a zero relative to 0; `None` when its enclosure
/// straddles 0 and only refinement can decide.
fn certified_sign(r: &CertifiedRoot) -> Option<Ordering> {
    if r.exact {
        return Some(r.value.cmp(&Rational::zero()));
    }
    if !r.high.is_positive() {
        return Some(Ordering::Less);
    }
    if !r.low.is_negative() {
        return Some(Ordering::Greater);
    }
    None
}

/// Partition one set's zeros (ascending) into nonpositive and nonnegative
/// sublists; an exact zero at 0 belongs to both.
fn partition_by_sign(set: &RootSet) -> Result<(Vec<&CertifiedRoot>, Vec<&CertifiedRoot>)> {
    let mut nonpos = Vec::new();
    let mut nonneg = Vec::new();
    for r in &set.roots {
        match certified_sign(r) {
            Some(Ordering::Less) => nonpos.push(r),
            Some(Ordering::Greater) => nonneg.push(r),
            Some(Ordering::Equal) => {
                nonpos.push(r);
                nonneg.push(r);
            }
            None => {
                return Err(Error::Undecidable(format!(
                    "sign of a zero of {} near 0 is undecided at the current tolerance; \
                     refine and retry",
                    set.poly_id
                )))
            }
        }
    }
    Ok((nonpos, nonneg))
}

/// Ordering of three consecutive members' zeros around the embedding degree:
/// indexing each set's zeros ascending (1-based), with sets of degrees
/// m−1, m, m+1,
///
/// - the nonpositive zeros satisfy, round by round j = 1, 2, …:
///   `y_{j,m+1} < y_{j,m} < y_{j,m−1} < y_{j+1,m+1} < …` (a set drops out
///   when its nonpositive zeros are exhausted), and
/// - the nonnegative zeros satisfy the mirrored descending chain from the
///   top: `y_{m+1,m+1} > y_{m,m} > y_{m−1,m−1} > y_{m,m+1} > …`.
///
/// Both chains are strict. Zero counts that are not consecutive
/// (m−1, m, m+1) make the pattern impossible: `false`, not an error.
pub fn check_triple_ordering(
    z_prev: &RootSet,
    z_cur: &RootSet,
    z_next: &RootSet,
) -> Result<bool> {
    if z_cur.real_count() != z_prev.real_count() + 1
        || z_next.real_count() != z_cur.real_count() + 1
    {
        return Ok(false);
    }
    let (prev_nonpos, prev_nonneg) = partition_by_sign(z_prev)?;
    let (cur_nonpos, cur_nonneg) = partition_by_sign(z_cur)?;
    let (next_nonpos, next_nonneg) = partition_by_sign(z_next)?;

    let mut ascending = Vec::new();
    let lists = [&next_nonpos, &cur_nonpos, &prev_nonpos];
    let rounds = lists.iter().map(|l| l.len()).max().unwrap_or(0);
    for j in 0..rounds {
        for list in lists {
            if let Some(&r) = list.get(j) {
                ascending.push(ChainItem::Root(r));
            }
        }
    }

    let mut descending = Vec::new();
    let lists = [&next_nonneg, &cur_nonneg, &prev_nonneg];
    let rounds = lists.iter().map(|l| l.len()).max().unwrap_or(0);
    for j in 0..rounds {
        for list in lists {
            if list.len() > j {
                descending.push(ChainItem::Root(list[list.len() - 1 - j]));
            }
        }
    }

    let context = format!(
        "triple ordering of {}, {}, {}",
        z_prev.poly_id, z_cur.poly_id, z_next.poly_id
    );
    let negative_side = scan_chain(&ascending, Ordering::Less);
    let positive_side = scan_chain(&descending, Ordering::Greater);
    match (negative_side, positive_side) {
        (ChainVerdict::Fails, _) | (_, ChainVerdict::Fails) => Ok(false),
        (ChainVerdict::Undecided, _) | (_, ChainVerdict::Undecided) => {
            verdict_to_result(ChainVerdict::Undecided, &context)
        }
        (ChainVerdict::Holds, ChainVerdict::Holds) => Ok(true),
    }
}

/// True iff every certified enclosure lies within the open interval
/// (−a, a). Conservative and error-free: an enclosure that pokes outside —
/// even if only because it is still coarse — is `false`.
pub fn check_containment(z: &RootSet, a: &Rational) -> bool {
    containment_status(z, a) == Some(true)
}

/// Three-way containment: `Some(true)` when every zero is certifiably
/// inside (−a, a), `Some(false)` when some zero is certifiably outside or
/// exactly on the boundary, `None` when an enclosure straddles ±a.
fn containment_status(z: &RootSet, a: &Rational) -> Option<bool> {
    let neg_a = -a.clone();
    let mut all_inside = true;
    for r in &z.roots {
        if r.exact {
            if r.value <= neg_a || r.value >= *a {
                return Some(false);
            }
        } else if &r.high <= &neg_a || &r.low >= a {
            // The zero is strictly below −a or strictly above a.
            return Some(false);
        } else if !(&r.low >= &neg_a && &r.high <= a) {
            all_inside = false;
        }
    }
    if all_inside {
        Some(true)
    } else {
        None
    }
}

/// Index-matched comparison of two ascending zero lists.
///
/// `deltas[i] = zeros_d[i] − zeros_c[i]` over the common ascending prefix;
/// the extreme deltas align the outermost zeros of each list, which covers
/// the top end when the counts differ (`count_mismatch` flags that case —
/// it is never silently masked). Each delta inherits the enclosure
/// uncertainty of its two operands, at most `z_d.tol + z_c.tol`.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub degree: usize,
    pub zeros_d: Vec<Rational>,
    pub zeros_c: Vec<Rational>,
    pub deltas: Vec<Rational>,
    /// Largest |delta| over the index-matched pairs and the extreme pairs.
    pub max_delta: Rational,
    /// Smallest zero of the first list minus smallest of the second.
    pub extreme_low_delta: Rational,
    /// Largest zero of the first list minus largest of the second.
    pub extreme_high_delta: Rational,
    pub count_mismatch: bool,
}

/// Compare two certified zero sets of the same nominal degree,
/// index-matched ascending.
pub fn compare(degree: usize, z_d: &RootSet, z_c: &RootSet) -> ComparisonReport {
    let zeros_d: Vec<Rational> = z_d.roots.iter().map(|r| r.value.clone()).collect();
    let zeros_c: Vec<Rational> = z_c.roots.iter().map(|r| r.value.clone()).collect();
    let common = zeros_d.len().min(zeros_c.len());
    let deltas: Vec<Rational> = (0..common).map(|i| &zeros_d[i] - &zeros_c[i]).collect();
    let extreme_low_delta = match (zeros_d.first(), zeros_c.first()) {
        (Some(d), Some(c)) => d - c,
        _ => Rational::zero(),
    };
    let extreme_high_delta = match (zeros_d.last(), zeros_c.last()) {
        (Some(d), Some(c)) => d - c,
        _ => Rational::zero(),
    };
    let max_delta = deltas
        .iter()
        .map(Signed::abs)
        .chain([extreme_low_delta.abs(), extreme_high_delta.abs()])
        .max()
        .unwrap_or_else(Rational::zero);
    ComparisonReport {
        degree,
        count_mismatch: zeros_d.len() != zeros_c.len(),
        zeros_d,
        zeros_c,
        deltas,
        max_delta,
        extreme_low_delta,
        extreme_high_delta,
    }
}

/// Serialization form of [`ComparisonReport`]: exact fraction strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReportDto {
    pub degree: usize,
    pub zeros_d: Vec<String>,
    pub zeros_c: Vec<String>,
    pub deltas: Vec<String>,
    pub max_delta: String,
    pub extreme_low_delta: String,
    pub extreme_high_delta: String,
    pub count_mismatch: bool,
}

impl ComparisonReport {
    /// Pretty JSON mirroring the fields, values as exact fractions.
    pub fn to_json(&self) -> String {
        let dto = ComparisonReportDto {
            degree: self.degree,
            zeros_d: self.zeros_d.iter().map(format_rational).collect(),
            zeros_c: self.zeros_c.iter().map(format_rational).collect(),
            deltas: self.deltas.iter().map(format_rational).collect(),
            max_delta: format_rational(&self.max_delta),
            extreme_low_delta: format_rational(&self.extreme_low_delta),
            extreme_high_delta: format_rational(&self.extreme_high_delta),
            count_mismatch: self.count_mismatch,
        };
        let mut text =
            serde_json::to_string_pretty(&dto).expect("comparison serialization cannot fail");
        text.push('\n');
        text
    }

    /// CSV table of the index-matched pairs, six significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,zero_D,zero_C,delta\n");
        for (i, delta) in self.deltas.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                i + 1,
                to_decimal_significant(&self.zeros_d[i], 6),
                to_decimal_significant(&self.zeros_c[i], 6),
                to_decimal_significant(delta, 6),
            ));
        }
        out
    }
}

/// A built sequence together with certified zero sets for every member.
#[derive(Debug, Clone)]
pub struct SequenceData {
    sequence: WendroffSequence,
    root_sets: Vec<RootSet>,
}

impl SequenceData {
    /// Isolate and refine the zeros of every member to `tol`.
    pub fn certify(sequence: WendroffSequence, tol: &Rational) -> Result<SequenceData> {
        let mut root_sets = Vec::with_capacity(sequence.max_degree() + 1);
        for m in 0..=sequence.max_degree() {
            let p = sequence.poly(m).expect("degree within range").as_poly();
            let bound = root_bound(p)?;
            root_sets.push(certified_roots(p, &bound, &format!("D{m}"), tol)?);
        }
        Ok(SequenceData {
            sequence,
            root_sets,
        })
    }

    pub fn sequence(&self) -> &WendroffSequence {
        &self.sequence
    }

    /// Certified zeros of D_m.
    pub fn root_set(&self, m: usize) -> Option<&RootSet> {
        self.root_sets.get(m)
    }

    pub fn root_sets(&self) -> &[RootSet] {
        &self.root_sets
    }

    /// Tighten every enclosure to `tol`.
    pub fn refine_all(&mut self, tol: &Rational) -> Result<()> {
        for (m, set) in self.root_sets.iter_mut().enumerate() {
            let p = self.sequence.poly(m).expect("degree within range").as_poly();
            refine(p, set, tol)?;
        }
        Ok(())
    }
}

/// Certified zeros of the classical-family member of degree m.
pub fn ultra_root_set(m: usize, params: &UltraParams, tol: &Rational) -> Result<RootSet> {
    let p = ultraspherical(m, params);
    let bound = root_bound(p.as_poly())?;
    certified_roots(p.as_poly(), &bound, &format!("C{m}"), tol)
}

/// Verification outcome for one member of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub degree: usize,
    pub monic: bool,
    pub symmetric: bool,
    pub ell_positive: bool,
    pub real_count_ok: bool,
    pub contained_in_a: bool,
    pub interlaces_predecessor: bool,
}

impl DegreeRecord {
    pub fn all_ok(&self) -> bool {
        self.monic
            && self.symmetric
            && self.ell_positive
            && self.real_count_ok
            && self.contained_in_a
            && self.interlaces_predecessor
    }
}

/// Whole-sequence verification report: one record per degree 0..n+k,
/// `overall` their conjunction, `failures` one diagnostic per false flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<DegreeRecord>,
    pub overall: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    /// Pretty JSON mirroring the fields.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        text.push('\n');
        text
    }

    /// One-line summary, e.g. `OK: 11/11 degrees verified`.
    pub fn summary_line(&self) -> String {
        let ok = self.records.iter().filter(|r| r.all_ok()).count();
        let total = self.records.len();
        let status = if self.overall { "OK" } else { "FAIL" };
        format!("{status}: {ok}/{total} degrees verified")
    }
}

/// Check every claimed property of a built (or loaded) sequence: monic,
/// symmetric, positive recurrence coefficients, full real zero count,
/// containment in (−a, a), and strict interlacing with the predecessor, for
/// every degree. Zero enclosures start at `tol` and are tightened tenfold
/// per round while any ordering stays undecided; a decided `false` is final
/// and is reported, never retried.
pub fn verify_sequence(seq: &WendroffSequence, tol: &Rational) -> Result<VerificationReport> {
    let mut data = SequenceData::certify(seq.clone(), tol)?;
    let ten = Rational::from_integer(10.into());
    let mut current_tol = tol.clone();
    let mut round = 0;
    loop {
        match try_verify(&data) {
            Err(Error::Undecidable(_)) if round < MAX_REFINE_ROUNDS => {
                round += 1;
                current_tol = current_tol / &ten;
                data.refine_all(&current_tol)?;
            }
            outcome => return outcome,
        }
    }
}

fn try_verify(data: &SequenceData) -> Result<VerificationReport> {
    let seq = data.sequence();
    let a = seq.a();
    let mut records = Vec::with_capacity(seq.max_degree() + 1);
    let mut failures = Vec::new();
    for m in 0..=seq.max_degree() {
        let poly = seq.poly(m).expect("degree within range");
        let set = data.root_set(m).expect("degree within range");
        let monic = poly.is_monic();
        let symmetric = poly.is_symmetric();
        let ell_positive = seq.ell(m).map(Signed::is_positive).unwrap_or(true);
        let real_count_ok = set.real_count() == m;
        let contained_in_a = match containment_status(set, a) {
            Some(verdict) => verdict,
            None => {
                return Err(Error::Undecidable(format!(
                    "containment of {} in (-{}, {}) is undecided at the current tolerance; \
                     refine and retry",
                    set.poly_id,
                    format_rational(a),
                    format_rational(a)
                )))
            }
        };
        let interlaces_predecessor = if m == 0 {
            true
        } else {
            check_interlacing(data.root_set(m - 1).unwrap(), set)?
        };
        if !monic {
            failures.push(format!("degree {m}: leading coefficient is not 1"));
        }
        if !symmetric {
            failures.push(format!(
                "degree {m}: an odd-codegree coefficient is nonzero"
            ));
        }
        if !ell_positive {
            failures.push(format!(
                "degree {m}: recurrence coefficient {} is not positive",
                format_rational(seq.ell(m).unwrap())
            ));
        }
        if !real_count_ok {
            failures.push(format!(
                "degree {m}: {} certified real zeros, expected {m}",
                set.real_count()
            ));
        }
        if !contained_in_a {
            failures.push(format!(
                "degree {m}: a zero lies outside (-{}, {})",
                format_rational(a),
                format_rational(a)
            ));
        }
        if !interlaces_predecessor {
            failures.push(format!(
                "degree {m}: zeros do not strictly interlace those of degree {}",
                m - 1
            ));
        }
        records.push(DegreeRecord {
            degree: m,
            monic,
            symmetric,
            ell_positive,
            real_count_ok,
            contained_in_a,
            interlaces_predecessor,
        });
    }
    let overall = records.iter().all(DegreeRecord::all_ok);
    Ok(VerificationReport {
        records,
        overall,
        failures,
    })
}
