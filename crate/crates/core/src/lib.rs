//! Exact construction and zero certification of embedded orthogonal
//! polynomial sequences.
//!
//! The crate builds, in exact rational arithmetic, a monic polynomial
//! sequence D_0, …, D_{n+k} that satisfies a three-term recurrence with
//! positive coefficients and embeds the prescribed pair
//! D_{n−1} = C_{n−1}, D_n = (x²−1)·C_{n−2} drawn from the λ-parameterized
//! reference family C_m. It then certifies the sequence's zero properties —
//! reality, simplicity, symmetry, strict interlacing, containment in
//! (−a, a) — with Sturm-chain counting and certified interval arithmetic,
//! never floating point.
//!
//! Module map:
//! - [`rational`]: exact scalars, fraction parsing, decimal rendering,
//!   certified rational square-root over-approximation.
//! - [`poly`]: dense exact polynomials and the monic wrapper.
//! - [`ultraspherical`]: the reference family C_m, extreme-zero bounds, and
//!   containment-radius selection.
//! - [`wendroff`]: the sequence construction (seed, downward closure to
//!   D_0 = 1, upward σ-scheme) and its serialization.
//! - [`roots`]: Sturm-chain root counting, isolation, and certified
//!   bisection refinement.
//! - [`analysis`]: ordering/containment verdicts on certified root sets and
//!   whole-sequence verification reports.

pub mod analysis;
pub mod error;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod ultraspherical;
pub mod wendroff;

pub use error::{Error, Result};
pub use poly::{MonicPoly, Poly, PolyDto};
pub use rational::{
    format_rational, parse_rational, rat, rat_int, sqrt_upper_approx, to_decimal_fixed,
    to_decimal_significant, Rational,
};
pub use roots::{
    certified_roots, count_roots, isolate, refine, root_bound, sturm_chain, CertifiedRoot, RootSet,
};
pub use ultraspherical::{
    interval_radius, largest_zero_bounds, recurrence_coefficient, ultraspherical, IntervalRadius,
    RadiusKind, RadiusMode, UltraParams, UltraTable,
};
pub use wendroff::{
    build, build_with_custom_ells, downward_step, seed_pair, upward_custom, upward_first,
    upward_rest, SequenceConfigDto, SequenceFile, WendroffConfig, WendroffSequence,
};

pub use analysis::{
    check_containment, check_interlacing, check_quasi_ordering, check_triple_ordering, compare,
    ultra_root_set, verify_sequence, ComparisonReport, DegreeRecord, SequenceData,
    VerificationReport,
};
