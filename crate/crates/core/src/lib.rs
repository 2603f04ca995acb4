//! Exact-arithmetic verification engine for cocycle-twisted group algebras
//! of small finite groups of Lie type.
//!
//! The crate enumerates the groups `SL2(q)`, `PSL2(q)`, `SL3(p)` and the
//! Suzuki groups `Sz(q)` as explicit matrix groups over finite fields,
//! constructs distinguished abelian subgroups of central type together with
//! a double-coset representative `tau`, and evaluates the scalar
//! `chi(y^2)` — where `y` is the image of the chosen class function `chi`
//! under the twisted coproduct applied to the double-coset sum — by three
//! independent exact methods.  When the reduced denominator of that scalar
//! shares a factor with `|M|`, the engine emits a machine-checkable
//! obstruction certificate: no integral Hopf order can contain the twisted
//! coproduct data for that setup.
//!
//! All arithmetic is exact: finite-field codes, arbitrary-precision
//! rationals ([`Rational`]) and cyclotomic numbers ([`cyclotomic::Cyclotomic`])
//! with rational coefficients.  No floating point is used anywhere.
//!
//! Core layers, bottom up:
//!
//! * [`field`] — finite fields `GF(p^m)` with dense operation tables and a
//!   canonical irreducible modulus;
//! * [`matrix`] — small square matrices of field codes with packed
//!   128-bit encodings;
//! * [`group`] — enumerated matrix groups with sorted canonical encodings
//!   and fast index arithmetic;
//! * [`subgroup`] — `subgroup` closures, abelian invariants and the
//!   central-type witness;
//! * [`catalog`] — the named subgroups, `tau` choices and obstruction
//!   setups for each group family;
//! * [`character`] — induced and tabulated class functions, fibers;
//! * [`algebra`] — sparse group-algebra and tensor vectors over a generic
//!   exact scalar;
//! * [`obstruction`] — `y`, the three evaluations of `chi(y^2)`, closed
//!   forms and certificates;
//! * [`twist`] — the two-cocycle twist on `C_e x C_e` subgroups, twist
//!   axioms and the coproduct identity used by the certificates;
//! * [`cache`] — an integrity-checked on-disk cache of enumerated groups.

pub mod algebra;
pub mod cache;
pub mod catalog;
pub mod character;
pub mod cyclotomic;
pub mod field;
pub mod group;
pub mod matrix;
pub mod obstruction;
pub mod rational;
pub mod scalar;
pub mod subgroup;
pub mod twist;

/// Exact rational scalar used throughout the engine.
pub type Rational = num_rational::BigRational;

/// Sparse group-algebra vector with rational coefficients.
pub type RationalVector = algebra::GroupAlgebraVector<Rational>;

/// Sparse group-algebra vector with cyclotomic coefficients.
pub type CyclotomicVector = algebra::GroupAlgebraVector<cyclotomic::Cyclotomic>;

/// Default cap on the order of any group the engine will enumerate.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 2_000_000;

/// Errors surfaced by the engine.
///
/// Every failure mode is explicit; in particular a structural check that
/// fails (wrong group order, method disagreement, cache corruption) is an
/// error, never a silent fallback.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The request itself is malformed or outside the supported cases.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// An internal structural invariant failed to verify.
    #[error("invariant violation: {0}")]
    Invariant(String),
    /// A resource bound (enumeration cap, loop cap) would be exceeded.
    #[error("resource bound exceeded: {0}")]
    Bound(String),
    /// A cached artifact failed its integrity check.
    #[error("cache integrity failure: {0}")]
    Cache(String),
    /// An underlying I/O operation failed.
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
