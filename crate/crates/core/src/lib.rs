//! Exact degrees of Hodge and Hurwitz-Hodge classes on moduli spaces of
//! cyclic admissible covers of rational curves.
//!
//! * [`degrees`]: closed forms on one-dimensional (4-pointed) spaces.
//! * [`tautring`]: graph formulas for `lambda_1` as divisor classes, and
//!   their intersection numbers with boundary curves.
//! * [`localization`]: the localization relations that re-derive the closed forms.
//! * [`verify`]: exhaustive sweeps tying the independent routes together.
//!
//! Formulas are generic over [`numeric::Scalar`]. [`Rational`] is the
//! arbitrary-precision default.

pub mod degrees;
pub mod error;
pub mod localization;
pub mod monodromy;
pub mod numeric;
pub mod tautring;
pub mod verify;

pub use error::{Error, Result};
pub use monodromy::{CoverInvariants, MonodromyDatum};
pub use numeric::Scalar;
pub use tautring::{BoundaryCurve, DivisorClass, DivisorSymbol};

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;
/// Fixed-width rationals; overflow follows the integer type's semantics.
pub type Rational64 = num_rational::Ratio<i64>;
pub type Rational128 = num_rational::Ratio<i128>;
