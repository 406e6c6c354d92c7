//! M-ary Sidelnikov sequences over GF(p^m) and the exact cross-correlation
//! of their constant-multiple families.
//!
//! The crate computes every quantity two or three independent ways and
//! compares the results exactly, in Z[ω]:
//!
//! * sequences — by the log congruence and by the class partition;
//! * Gauss/Jacobi sums — by direct summation and, in the semiprimitive case
//!   (p^t ≡ −1 mod k), by the pure closed forms;
//! * cyclotomic numbers — by exhaustive counting and by the semiprimitive
//!   formula;
//! * cross-correlations — by direct summation of the defining sum, by the
//!   per-shift Jacobi-sum closed form, and by cyclotomic counting with no
//!   shift loop at all.
//!
//! The [`verify`] module sweeps all of this over every odd prime power up to
//! a cap; the `verify` CLI subcommand and the acceptance test suite are thin
//! wrappers around it.

pub mod charsums;
pub mod correlation;
pub mod cycint;
pub mod cyclotomy;
pub mod distribution;
pub mod gf;
pub mod sequences;
pub mod verify;

pub use charsums::{Character, JacobiEvaluation, JacobiMethod, Semiprimitivity, ZeroConvention};
pub use correlation::{correlate, full_correlation, welch_bound, CorrelationVector};
pub use cycint::CycInt;
pub use cyclotomy::CyclotomicTable;
pub use distribution::{CorrelationDistribution, CrossCorrSpec, FamilyReport};
pub use gf::{build_field, Element, FieldSpec, FieldTable};
pub use sequences::{sidelnikov, sidelnikov_via_classes, Sequence};
